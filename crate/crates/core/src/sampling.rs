//! Uniform sampling from a conjugacy class and empirical diagnostics.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partition::CycleType;
use crate::perm::{count_peaks, Permutation};

/// Identifies the generator behind [`SeedSpec::rng`]; part of the
/// reproducibility contract.
pub const GENERATOR_ID: &str = "chacha8 (rand_chacha 0.9, seed_from_u64 + set_stream)";

/// A seed plus a substream id. Equal specs give identical sample sequences,
/// distinct streams are independent ChaCha streams under the same key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SeedSpec {
    pub seed: u64,
    pub stream: u64,
}

impl SeedSpec {
    pub fn new(seed: u64, stream: u64) -> Self {
        SeedSpec { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Draws uniform elements of `C_λ`: shuffle `1..=n`, cut the arrangement into
/// consecutive blocks with the part sizes of `λ` (largest first) and close
/// each block into a cycle. Every class element arises from exactly
/// `Π_i i^{n_i} n_i!` arrangements.
pub struct ClassSampler<R> {
    lambda: CycleType,
    parts: Vec<usize>,
    rng: R,
    arrangement: Vec<usize>,
}

impl ClassSampler<ChaCha8Rng> {
    pub fn new(lambda: &CycleType, seed: SeedSpec) -> Self {
        Self::with_rng(lambda, seed.rng())
    }
}

impl<R: Rng> ClassSampler<R> {
    pub fn with_rng(lambda: &CycleType, rng: R) -> Self {
        ClassSampler {
            lambda: lambda.clone(),
            parts: lambda.parts(),
            rng,
            arrangement: (1..=lambda.n()).collect(),
        }
    }

    /// Writes the next sample's one-line word into `word` (resized to `n`).
    pub fn sample_into(&mut self, word: &mut Vec<usize>) {
        let n = self.lambda.n();
        word.clear();
        word.resize(n, 0);
        self.arrangement.shuffle(&mut self.rng);
        let mut start = 0;
        for &len in &self.parts {
            let block = &self.arrangement[start..start + len];
            for j in 0..len {
                word[block[j] - 1] = block[(j + 1) % len];
            }
            start += len;
        }
        debug_assert_eq!(crate::perm::cycle_type_of(word), self.lambda);
    }

    pub fn sample(&mut self) -> Permutation {
        let mut word = Vec::new();
        self.sample_into(&mut word);
        Permutation::from_word_unchecked(word)
    }
}

/// One uniform draw from `C_λ` determined by `seed`.
pub fn sample_class(lambda: &CycleType, seed: SeedSpec) -> Permutation {
    ClassSampler::new(lambda, seed).sample()
}

/// Counts and histogram of an integer statistic. Mean and variance are
/// derived from the histogram, so merging is exact, associative and
/// order-independent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SampleStats {
    count: u64,
    histogram: BTreeMap<u64, u64>,
}

impl SampleStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_histogram(histogram: BTreeMap<u64, u64>) -> Self {
        let histogram: BTreeMap<u64, u64> = histogram.into_iter().filter(|&(_, c)| c > 0).collect();
        SampleStats {
            count: histogram.values().sum(),
            histogram,
        }
    }

    pub fn push(&mut self, value: u64) {
        self.count += 1;
        *self.histogram.entry(value).or_insert(0) += 1;
    }

    pub fn merge(&mut self, other: &SampleStats) {
        self.count += other.count;
        for (&k, &c) in &other.histogram {
            *self.histogram.entry(k).or_insert(0) += c;
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn histogram(&self) -> &BTreeMap<u64, u64> {
        &self.histogram
    }

    pub fn frequency(&self, k: u64) -> u64 {
        self.histogram.get(&k).copied().unwrap_or(0)
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        let s: u128 = self.histogram.iter().map(|(&k, &c)| k as u128 * c as u128).sum();
        s as f64 / self.count as f64
    }

    /// Unbiased sample variance; zero for a single observation.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as u128;
        let s: u128 = self.histogram.iter().map(|(&k, &c)| k as u128 * c as u128).sum();
        let s2: u128 = self.histogram.iter().map(|(&k, &c)| (k as u128).pow(2) * c as u128).sum();
        // n Σx² - (Σx)² is exact in integers and nonnegative.
        let num = n * s2 - s * s;
        num as f64 / (n * (n - 1)) as f64
    }
}

/// Tallies `count_peaks` over `num_samples` independent draws from `C_λ`.
pub fn run_experiment(lambda: &CycleType, num_samples: u64, seed: SeedSpec) -> Result<SampleStats> {
    if num_samples == 0 {
        return Err(Error::Domain("num_samples must be at least 1".into()));
    }
    let mut sampler = ClassSampler::new(lambda, seed);
    let mut stats = SampleStats::new();
    let mut word = Vec::with_capacity(lambda.n());
    for _ in 0..num_samples {
        sampler.sample_into(&mut word);
        stats.push(count_peaks(&word) as u64);
    }
    Ok(stats)
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / core::f64::consts::SQRT_2)
}

/// Two-sided Kolmogorov–Smirnov distance between the empirical CDF of
/// integer data and `Normal(mean, variance)` with a continuity correction:
/// the integer CDF at `k` is compared with `Φ((k + 1/2 - mean)/σ)`.
pub fn ks_distance(stats: &SampleStats, mean: f64, variance: f64) -> Result<f64> {
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(Error::Domain(format!("variance must be positive, got {variance}")));
    }
    if stats.count() == 0 {
        return Err(Error::Domain("no observations".into()));
    }
    let sigma = libm::sqrt(variance);
    let n = stats.count() as f64;
    let lo = *stats.histogram().keys().next().expect("nonempty");
    let hi = *stats.histogram().keys().next_back().expect("nonempty");
    let cdf = |k: f64| normal_cdf((k + 0.5 - mean) / sigma);
    // Left of the support the empirical CDF is zero and Φ is largest at lo-1.
    let mut d = cdf(lo as f64 - 1.0);
    let mut cum = 0u64;
    for k in lo..=hi {
        cum += stats.frequency(k);
        let diff = (cum as f64 / n - cdf(k as f64)).abs();
        if diff > d {
            d = diff;
        }
    }
    Ok(d.clamp(0.0, 1.0))
}

/// Pearson chi-square statistic of `observed` against the uniform
/// distribution on a class of `class_size` elements; unobserved elements
/// count as zero cells. Returns `(statistic, degrees of freedom)`.
pub fn chi_square_uniformity<T: Ord>(
    observed: &BTreeMap<T, u64>,
    class_size: u64,
) -> Result<(f64, u64)> {
    if class_size < 2 {
        return Err(Error::Domain("class must have at least two elements".into()));
    }
    if observed.len() as u64 > class_size {
        return Err(Error::Domain(format!(
            "{} distinct elements observed in a class of size {class_size}",
            observed.len()
        )));
    }
    let total: u64 = observed.values().sum();
    let need = class_size.saturating_mul(5);
    if total < need {
        return Err(Error::InsufficientSamples { have: total, need });
    }
    let expected = total as f64 / class_size as f64;
    let observed_part: f64 = observed
        .values()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum();
    let missing = (class_size - observed.len() as u64) as f64;
    Ok((observed_part + missing * expected, class_size - 1))
}

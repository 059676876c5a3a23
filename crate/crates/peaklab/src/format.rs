//! JSON and CSV encodings of distributions, sample histograms and MGF
//! breakdowns. Big integers and exact rationals travel as decimal strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use peaklab_core::asymptotics::PredictionBreakdown;
use peaklab_core::class_dist::PeakDistribution;
use peaklab_core::sampling::{SampleStats, GENERATOR_ID};
use peaklab_core::CycleType;

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (d != BigInt::from(0)).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn cycle_type_map(lambda: &CycleType) -> BTreeMap<u64, u64> {
    lambda.iter().map(|(p, m)| (p as u64, m as u64)).collect()
}

/// Serialized form of an exact class distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionRecord {
    pub n: u64,
    pub cycle_type: BTreeMap<u64, u64>,
    pub class_size: String,
    pub counts: BTreeMap<u64, String>,
    pub mean: String,
    pub variance: String,
}

impl DistributionRecord {
    pub fn from_distribution(dist: &PeakDistribution) -> Self {
        let lambda = dist.lambda();
        DistributionRecord {
            n: lambda.n() as u64,
            cycle_type: cycle_type_map(lambda),
            class_size: dist.total().to_string(),
            counts: dist
                .counts()
                .iter()
                .enumerate()
                .map(|(k, c)| (k as u64, c.to_string()))
                .collect(),
            mean: rational_string(&dist.mean()),
            variance: rational_string(&dist.variance()),
        }
    }

    /// Rebuilds and revalidates the distribution, including the stated
    /// class size, mean and variance.
    pub fn to_distribution(&self) -> Result<PeakDistribution, String> {
        let lambda = CycleType::new(self.cycle_type.iter().map(|(&p, &m)| (p as usize, m as usize)))
            .map_err(|e| e.to_string())?;
        if lambda.n() as u64 != self.n {
            return Err(format!("n = {} but the cycle type has size {}", self.n, lambda.n()));
        }
        let len = self.counts.keys().next_back().map_or(0, |&k| k as usize + 1);
        let mut counts = vec![BigInt::from(0); len];
        for (&k, v) in &self.counts {
            counts[k as usize] = v.parse().map_err(|_| format!("count {v:?} is not an integer"))?;
        }
        let dist = PeakDistribution::new(lambda, counts).map_err(|e| e.to_string())?;
        let checks = [
            ("class_size", &self.class_size, Some(BigRational::from_integer(dist.total()))),
            ("mean", &self.mean, Some(dist.mean())),
            ("variance", &self.variance, Some(dist.variance())),
        ];
        for (name, text, want) in checks {
            if parse_rational(text) != want {
                return Err(format!("{name} {text:?} does not match the counts"));
            }
        }
        Ok(dist)
    }
}

pub fn distribution_json(dist: &PeakDistribution) -> String {
    let mut s = serde_json::to_string_pretty(&DistributionRecord::from_distribution(dist))
        .expect("plain data serializes");
    s.push('\n');
    s
}

pub fn distribution_from_json(text: &str) -> Result<PeakDistribution, String> {
    let record: DistributionRecord = serde_json::from_str(text).map_err(|e| e.to_string())?;
    record.to_distribution()
}

/// `k,count` rows with a header.
pub fn distribution_csv(dist: &PeakDistribution) -> String {
    let mut out = String::from("k,count\n");
    for (k, c) in dist.counts().iter().enumerate() {
        writeln!(out, "{k},{c}").unwrap();
    }
    out
}

/// Reads the `k,count` rows written by [`distribution_csv`].
pub fn counts_from_csv(text: &str) -> Result<Vec<BigInt>, String> {
    let mut lines = text.lines();
    if lines.next() != Some("k,count") {
        return Err("missing k,count header".into());
    }
    let mut out = Vec::new();
    for (row, line) in lines.enumerate() {
        let (k, c) = line.split_once(',').ok_or_else(|| format!("row {}: expected k,count", row + 1))?;
        let k: usize = k.parse().map_err(|_| format!("row {}: bad k", row + 1))?;
        if k != out.len() {
            return Err(format!("row {}: expected k = {}", row + 1, out.len()));
        }
        out.push(c.parse().map_err(|_| format!("row {}: bad count", row + 1))?);
    }
    Ok(out)
}

/// Serialized sampling experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub n: u64,
    pub cycle_type: BTreeMap<u64, u64>,
    pub num_samples: u64,
    pub seed: u64,
    pub generator: String,
    pub chunk_size: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub mean: f64,
    pub variance: f64,
    /// `(n-2)/3`, the mean over all of `S_n`.
    pub reference_mean: f64,
    /// `2(n+1)/45`, the variance over all of `S_n`.
    pub reference_variance: f64,
}

impl SampleRecord {
    pub fn new(lambda: &CycleType, stats: &SampleStats, seed: u64, chunk_size: u64) -> Self {
        let n = lambda.n() as f64;
        SampleRecord {
            n: lambda.n() as u64,
            cycle_type: cycle_type_map(lambda),
            num_samples: stats.count(),
            seed,
            generator: GENERATOR_ID.to_string(),
            chunk_size,
            histogram: stats.histogram().clone(),
            mean: stats.mean(),
            variance: stats.variance(),
            reference_mean: (n - 2.0) / 3.0,
            reference_variance: 2.0 * (n + 1.0) / 45.0,
        }
    }
}

pub fn sample_json(record: &SampleRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn histogram_csv(stats: &SampleStats) -> String {
    let mut out = String::from("k,count\n");
    for (k, c) in stats.histogram() {
        writeln!(out, "{k},{c}").unwrap();
    }
    out
}

/// Serialized [`PredictionBreakdown`] with its inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MgfRecord {
    pub n: u64,
    pub cycle_type: BTreeMap<u64, u64>,
    pub s: f64,
    pub alpha1: String,
    pub mean_term: f64,
    pub s2_term: f64,
    pub log_mgf_exact: f64,
    pub residual: f64,
}

pub fn mgf_json(lambda: &CycleType, s: f64, b: &PredictionBreakdown) -> String {
    let record = MgfRecord {
        n: lambda.n() as u64,
        cycle_type: cycle_type_map(lambda),
        s,
        alpha1: rational_string(&lambda.alpha1()),
        mean_term: b.mean_term,
        s2_term: b.s2_term,
        log_mgf_exact: b.log_mgf_exact,
        residual: b.residual,
    };
    let mut out = serde_json::to_string_pretty(&record).expect("plain data serializes");
    out.push('\n');
    out
}

//! Verification suites: each check reports a measured value next to the
//! bound it is held to.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use peaklab_core::asymptotics::{
    clt_variance_exact, delta0_of_s, g_bounds_hold, g_value, gaussian_fn_dd, k_a1_expansion,
    k_product_bound, k_value, l_range_log, log_prefactor, residual_e, s2_coefficient_exact,
    sn_log_mgf_pipeline,
};
use peaklab_core::class_dist::{
    brute_force_peak_distribution, brute_force_valley_distribution, class_gf_numerator,
    class_gf_numerator_via_eulerian, class_peak_distribution, coeff_gf_value, f_value, mgf_exact,
};
use peaklab_core::eulerian::{
    eulerian_derivative_at_one, eulerian_polynomial, moments_from_peak_polynomial,
    peak_polynomial_sn, peakgen_rhs_series,
};
use peaklab_core::numbers::factorial;
use peaklab_core::partition::partitions_of;
use peaklab_core::perm::{count_descents, for_each_permutation};
use peaklab_core::roots::{count_real_roots, isolate_real_roots};
use peaklab_core::sampling::{chi_square_uniformity, ks_distance, ClassSampler, SeedSpec};
use peaklab_core::{CycleType, Dd, DensePolynomial, TruncatedSeries};

use crate::experiment::sample_parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Oracle,
    Moments,
    Residuals,
    Sampling,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["lemmas", "oracle", "moments", "residuals", "sampling", "all"];

    pub fn from_name(name: &str) -> Option<Suite> {
        Some(match name {
            "lemmas" => Suite::Lemmas,
            "oracle" => Suite::Oracle,
            "moments" => Suite::Moments,
            "residuals" => Suite::Residuals,
            "sampling" => Suite::Sampling,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: String,
    pub bound: String,
}

impl Check {
    fn new(name: &str, passed: bool, measured: impl ToString, bound: impl ToString) -> Check {
        Check {
            name: name.to_string(),
            passed,
            measured: measured.to_string(),
            bound: bound.to_string(),
        }
    }

    fn failed(name: &str, err: impl fmt::Display) -> Check {
        Check::new(name, false, format!("error: {err}"), "-")
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} measured={} bound={}", self.name, self.measured, self.bound)
    }
}

type CheckFn = fn() -> Check;

fn suite_checks(suite: Suite) -> Vec<CheckFn> {
    match suite {
        Suite::Lemmas => vec![
            g_bound_sharp,
            g_bound_weak,
            gaussian_upper_side,
            gaussian_lower_side,
            gaussian_convergence,
            k_matches_coefficients,
            k_product_large_range,
            k_a1_expansion_gap,
            delta0_threshold,
        ],
        Suite::Oracle => vec![class_vs_enumeration, class_aggregation, peak_valley_symmetry, numerator_routes],
        Suite::Moments => vec![
            sn_moments,
            eulerian_brute_force,
            eulerian_derivatives,
            peakgen_series_identity,
            real_rootedness,
            f_integrality,
            class_moment_drift,
        ],
        Suite::Residuals => vec![
            residual_decay,
            identity_residual,
            l_identity,
            small_range_decay,
            s2_clt_consistency,
            sn_pipeline,
        ],
        Suite::Sampling => vec![sampler_uniformity, sampler_vs_exact, figure_one],
        Suite::All => [Suite::Oracle, Suite::Moments, Suite::Lemmas, Suite::Residuals, Suite::Sampling]
            .into_iter()
            .flat_map(suite_checks)
            .collect(),
    }
}

/// Runs `suite`, handing each finished check to `sink`; returns whether all
/// passed.
pub fn run_suite(suite: Suite, mut sink: impl FnMut(&Check)) -> bool {
    let mut ok = true;
    for f in suite_checks(suite) {
        let c = f();
        ok &= c.passed;
        sink(&c);
    }
    ok
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn to_f64(r: &BigRational) -> f64 {
    Dd::from_rational(r).to_f64()
}

/// `|log g_{a,i}|` through the exact `g - 1`, which can be far below `1e-32`.
fn log_g(a: u64, i: u64) -> f64 {
    Dd::from_rational(&(g_value(a, i) - BigRational::one())).ln_1p().abs().to_f64()
}

fn g_bound_sharp() -> Check {
    let mut fails = 0;
    let mut worst = 0.0f64;
    for a in 1..=50u64 {
        for i in 1..=30u64 {
            if !g_bounds_hold(a, i).0 {
                fails += 1;
            }
            let lg = log_g(a, i);
            let c = 4.0 * (2.0 * a as f64).powf(-2.0 * i as f64 / 3.0);
            worst = worst.max(lg / c);
        }
    }
    Check::new(
        "g_bound_c1_4_grid",
        fails == 0,
        format!("max |log g|/(4(2a)^(-2i/3)) = {worst:.6}, {fails} of 1500 violate"),
        "<= 1",
    )
}

fn g_bound_weak() -> Check {
    let mut fails = 0;
    let mut worst = 0.0f64;
    for a in 1..=50u64 {
        for i in 1..=30u64 {
            if !g_bounds_hold(a, i).1 {
                fails += 1;
            }
            let lg = log_g(a, i);
            worst = worst.max(lg * (a * a) as f64);
        }
    }
    Check::new(
        "g_bound_inverse_square_grid",
        fails == 0,
        format!("max a^2 |log g| = {worst:.6}, {fails} of 1500 violate"),
        "<= 1",
    )
}

fn gaussian_grid_ns() -> Vec<f64> {
    (0..=10).map(|k| (1u64 << k) as f64).collect()
}

fn le(x: Dd, y: Dd) -> bool {
    x <= y + y.abs() * Dd::from_f64(1e-25)
}

fn gaussian_upper_side() -> Check {
    let ns = gaussian_grid_ns();
    let mut cases = 0;
    let mut fails = 0;
    for k in 0..=20 {
        let x = 0.5 * k as f64;
        for (j, &n) in ns.iter().enumerate() {
            let fx = gaussian_fn_dd(n, x);
            let env = (Dd::from_f64(2.0) / Dd::from_f64(0.5).exp()).powi(n as i64)
                * (-(Dd::from_f64(n).sqrt() * Dd::from_f64(x)) / Dd::from_f64(2.0)).exp();
            cases += 1;
            fails += usize::from(!le(fx, env));
            for &l in &ns[j + 1..] {
                cases += 1;
                fails += usize::from(!le(gaussian_fn_dd(l, x), fx));
            }
        }
    }
    Check::new(
        "gaussian_fn_x_nonnegative",
        fails == 0,
        format!("{fails} of {cases} inequalities violated"),
        "f_l <= f_n <= (2/sqrt e)^n e^(-sqrt(n) x/2)",
    )
}

fn gaussian_lower_side() -> Check {
    let ns = gaussian_grid_ns();
    let mut cases = 0;
    let mut fails = 0;
    for k in 0..=20 {
        let x = -0.5 * k as f64;
        let g = (-(Dd::from_f64(x * x)) / Dd::from_f64(2.0)).exp();
        for (j, &n) in ns.iter().enumerate() {
            let fx = gaussian_fn_dd(n, x);
            for &l in &ns[j + 1..] {
                let fl = gaussian_fn_dd(l, x);
                cases += 2;
                fails += usize::from(!le(fx, fl)) + usize::from(!le(fl, g));
            }
        }
    }
    Check::new(
        "gaussian_fn_x_nonpositive",
        fails == 0,
        format!("{fails} of {cases} inequalities violated"),
        "f_n <= f_l <= e^(-x^2/2)",
    )
}

fn gaussian_convergence() -> Check {
    let mut fails = 0;
    let mut last_gap = 0.0f64;
    for k in -20..=20 {
        let x = 0.5 * k as f64;
        let g = (-(Dd::from_f64(x * x)) / Dd::from_f64(2.0)).exp();
        let mut prev = f64::INFINITY;
        for j in 1..=10 {
            let n = 4f64.powi(j);
            let gap = (gaussian_fn_dd(n, x) - g).abs().to_f64();
            fails += usize::from(gap > prev);
            prev = gap;
        }
        last_gap = last_gap.max(prev);
    }
    Check::new(
        "gaussian_fn_converges",
        fails == 0,
        format!("max gap at n = 4^10: {last_gap:.3e}, {fails} non-decreasing steps"),
        "gap decreasing along n = 4^j",
    )
}

fn k_matches_coefficients() -> Check {
    let mut fails = 0;
    for m in 1..=12u64 {
        for f in 12..=40i64 {
            let f = BigInt::from(f);
            let lhs = BigRational::from_integer(coeff_gf_value(&f, m as usize));
            let Ok(k) = k_value(&f, m) else {
                fails += 1;
                continue;
            };
            let rhs = BigRational::new((&f * BigInt::from(2)).pow(m as u32), factorial(m)) * k;
            fails += usize::from(lhs != rhs);
        }
    }
    Check::new("k_vs_coefficient_gf", fails == 0, format!("{fails} of 348 differ"), "exact equality")
}

fn k_product_large_range() -> Check {
    let mut worst = 0.0f64;
    let mut fails = 0;
    let mut cases = 0;
    for n in [5usize, 10, 15, 20] {
        let start = (4f64.exp() * n as f64).ceil() as u64;
        for lambda in partitions_of(n).unwrap() {
            for a in [start, 2 * start, 10 * start] {
                cases += 1;
                match k_product_bound(&lambda, a) {
                    Ok((m, b, ok)) => {
                        fails += usize::from(!ok);
                        worst = worst.max(m / b);
                    }
                    Err(e) => return Check::failed("k_product_large_range", e),
                }
            }
        }
    }
    Check::new(
        "k_product_large_range",
        fails == 0,
        format!("max ratio {worst:.4e} over {cases} cases, {fails} violate"),
        "|log prod_(i>=2) K| <= e^4 n^2/a^2",
    )
}

fn k_a1_expansion_gap() -> Check {
    let mut fails = 0;
    let mut last = 0.0;
    for n1 in [5u64, 10, 20] {
        let mut prev = f64::INFINITY;
        for mult in [2u64, 4, 8, 16, 32, 64] {
            let a = mult * n1;
            let k = Dd::ln_rational(&k_value(&BigInt::from(a), n1).unwrap()).to_f64();
            let gap = (k - k_a1_expansion(n1, a).unwrap().ln()).abs();
            fails += usize::from(gap >= prev);
            prev = gap;
        }
        last = prev;
    }
    Check::new(
        "k_a1_expansion_gap",
        fails == 0,
        format!("gap at a = 64 n1 (n1 = 20): {last:.3e}"),
        "gap decreasing in a",
    )
}

fn delta0_threshold() -> Check {
    let (d1, d4) = match (delta0_of_s(1.0), delta0_of_s(4.0)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Check::failed("delta0_threshold", e),
    };
    // the n -> infinity limit 2 sqrt(s) of n^(1/4) log(1/t) alone caps delta0
    let cap = 1.0 / (2.0 * 2f64.exp());
    Check::new(
        "delta0_threshold",
        d1 > 0.0 && d1 <= cap && d4 < d1,
        format!("delta0(1) = {d1:.6}, delta0(4) = {d4:.6}"),
        format!("0 < delta0(4) < delta0(1) <= {cap:.6}"),
    )
}

fn class_vs_enumeration() -> Check {
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in 1..=8 {
        for lambda in partitions_of(n).unwrap() {
            cases += 1;
            let same = match (class_peak_distribution(&lambda), brute_force_peak_distribution(&lambda)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            };
            if !same {
                bad.push(lambda.to_string());
            }
        }
    }
    Check::new(
        "class_distribution_vs_enumeration",
        bad.is_empty(),
        format!("{} of {cases} classes differ {bad:?}", bad.len()),
        "exact equality for every class with n <= 8",
    )
}

fn class_aggregation() -> Check {
    let mut fails = 0;
    for n in 1..=8 {
        let w = peak_polynomial_sn(n).unwrap();
        let mut total = vec![BigInt::zero(); n + 1];
        for lambda in partitions_of(n).unwrap() {
            for (k, c) in class_peak_distribution(&lambda).unwrap().counts().iter().enumerate() {
                total[k] += c;
            }
        }
        for (k, c) in total.into_iter().enumerate() {
            fails += usize::from(BigRational::from_integer(c) != w.coeff(k + 1));
        }
    }
    Check::new("classes_sum_to_sn", fails == 0, format!("{fails} coefficients differ"), "exact equality, n <= 8")
}

fn peak_valley_symmetry() -> Check {
    let mut fails = 0;
    let mut cases = 0;
    for n in 1..=8 {
        for lambda in partitions_of(n).unwrap() {
            cases += 1;
            let p = brute_force_peak_distribution(&lambda).unwrap();
            let v = brute_force_valley_distribution(&lambda).unwrap();
            fails += usize::from(p.counts() != v.counts());
        }
    }
    Check::new(
        "peak_valley_symmetry",
        fails == 0,
        format!("{fails} of {cases} classes differ"),
        "equal distributions, n <= 8",
    )
}

fn numerator_routes() -> Check {
    let mut fails = 0;
    for n in 1..=9 {
        for lambda in partitions_of(n).unwrap() {
            let a = DensePolynomial::from_integers(class_gf_numerator(&lambda));
            fails += usize::from(class_gf_numerator_via_eulerian(&lambda).ok() != Some(a));
        }
    }
    Check::new(
        "class_numerator_two_routes",
        fails == 0,
        format!("{fails} classes differ"),
        "difference and Eulerian routes agree, n <= 9",
    )
}

fn sn_moments() -> Check {
    let mut fails = 0;
    for n in 4..=60u64 {
        let w = peak_polynomial_sn(n as usize).unwrap();
        let (mean, var) = moments_from_peak_polynomial(&w).unwrap();
        fails += usize::from(mean != rat(n as i64 - 2, 3) || var != rat(2 * (n as i64 + 1), 45));
    }
    Check::new(
        "sn_moments_from_peak_polynomial",
        fails == 0,
        format!("{fails} of 57 values of n differ"),
        "((n-2)/3, 2(n+1)/45) exactly, 4 <= n <= 60",
    )
}

fn brute_force_eulerian(n: usize) -> DensePolynomial {
    let mut counts = vec![0u64; n + 1];
    for_each_permutation(n, |w| counts[count_descents(w) + 1] += 1);
    DensePolynomial::from_integers(counts)
}

fn eulerian_brute_force() -> Check {
    let bad: Vec<usize> = (1..=9)
        .filter(|&n| eulerian_polynomial(n).ok() != Some(brute_force_eulerian(n)))
        .collect();
    Check::new(
        "eulerian_vs_enumeration",
        bad.is_empty(),
        format!("differs for n in {bad:?}"),
        "exact equality, n <= 9",
    )
}

fn eulerian_derivatives() -> Check {
    let mut fails = 0;
    for n in 1..=40usize {
        let a = eulerian_polynomial(n).unwrap();
        for p in 0..=4u32 {
            let sym = a.nth_derivative(p as usize).eval(&BigRational::one());
            fails += usize::from(eulerian_derivative_at_one(n as u64, p).ok() != Some(sym));
        }
    }
    Check::new(
        "eulerian_derivatives_at_one",
        fails == 0,
        format!("{fails} of 200 differ"),
        "closed form = symbolic derivative, n <= 40, p <= 4",
    )
}

fn peakgen_series_identity() -> Check {
    let mut fails = 0;
    for n in 1..=30usize {
        let order = n + 2;
        let t = TruncatedSeries::from_poly(&DensePolynomial::x(), order);
        let one_plus_t = &TruncatedSeries::one(order) + &t;
        let q = &t.scale(&rat(4, 1)) * &one_plus_t.pow(2).inverse().unwrap();
        let w = TruncatedSeries::from_poly(&peak_polynomial_sn(n).unwrap(), order);
        let lhs = w.compose(&q).unwrap();
        fails += usize::from(lhs != peakgen_rhs_series(n, order));
    }
    Check::new(
        "peakgen_series_identity",
        fails == 0,
        format!("{fails} of 30 differ"),
        "W_n(4t/(1+t)^2) = (2/(1+t))^(n+1) A_n(t), n <= 30",
    )
}

fn real_rootedness() -> Check {
    let width = rat(1, 1_000_000_000);
    let mut fails = Vec::new();
    let mut located = 0;
    for n in 4..=24usize {
        let w = peak_polynomial_sn(n).unwrap();
        let q = DensePolynomial::from_coeffs(w.coeffs()[1..].to_vec());
        let deg = q.degree().unwrap_or(0);
        let roots = isolate_real_roots(&q, &width).unwrap_or_default();
        let ok = count_real_roots(&q) == deg
            && roots.len() == deg
            && roots.iter().all(|(lo, hi)| {
                hi < &BigRational::zero() && (hi - lo) <= width && q.eval(lo) * q.eval(hi) < BigRational::zero()
            });
        // the root t = 0 of W_n plus the negative roots of W_n/t
        located += roots.len() + 1;
        if !ok || roots.len() + 1 != (n + 1) / 2 {
            fails.push(n);
        }
    }
    Check::new(
        "peak_polynomial_real_roots",
        fails.is_empty(),
        format!("{located} roots located, failures at n = {fails:?}"),
        "floor((n+1)/2) real roots, width <= 1e-9, 4 <= n <= 24",
    )
}

fn f_integrality() -> Check {
    let mut fails = 0;
    for a in 1..=50 {
        for i in 1..=30 {
            let f = f_value(a, i);
            fails += usize::from(!(f.is_integer() && f > BigRational::zero()));
        }
    }
    Check::new("f_positive_integer", fails == 0, format!("{fails} of 1500 fail"), "f_(a,i) in Z_+")
}

fn class_moment_drift() -> Check {
    let mut parts = Vec::new();
    for n in [12usize, 24, 36, 48, 60] {
        let lambda = CycleType::new([(2, n / 2)]).unwrap();
        let d = class_peak_distribution(&lambda).unwrap();
        let dm = to_f64(&(d.mean() - rat(n as i64 - 2, 3)));
        let dv = to_f64(&(d.variance() - rat(2 * (n as i64 + 1), 45)));
        parts.push(format!("n={n}: {dm:+.4}/{dv:+.4}"));
    }
    Check::new("derangement_moment_drift", true, parts.join(" "), "recorded only")
}

fn residual_decay() -> Check {
    let mut vals = Vec::new();
    for n in [16usize, 64, 144, 256] {
        let lambda = CycleType::new([(2, n / 2)]).unwrap();
        match residual_e(&lambda, 1.0) {
            Ok(b) => vals.push(b.residual.abs() * (n as f64).powf(0.25)),
            Err(e) => return Check::failed("residual_scaled_decay", e),
        }
    }
    let ok = vals[1..].iter().all(|v| *v <= 2.0 * vals[0]);
    Check::new(
        "residual_scaled_decay",
        ok,
        format!("|E| n^(1/4) = {vals:.5?} at n = 16, 64, 144, 256"),
        format!("<= {:.5}", 2.0 * vals[0]),
    )
}

fn identity_residual() -> Check {
    let mut worst = 0.0f64;
    for n in [1usize, 5, 50] {
        match residual_e(&CycleType::identity(n).unwrap(), 1.3) {
            Ok(b) => worst = worst.max(b.residual.abs()),
            Err(e) => return Check::failed("identity_residual", e),
        }
    }
    Check::new("identity_residual", worst < 1e-15, format!("{worst:.3e}"), "< 1e-15")
}

fn l_identity() -> Check {
    let mut worst = 0.0f64;
    let classes: Vec<CycleType> = [8usize, 12, 16, 20]
        .iter()
        .map(|&n| CycleType::new([(2, n / 2)]).unwrap())
        .chain([CycleType::new([(3, 4), (1, 2)]).unwrap(), CycleType::cycle(11).unwrap()])
        .collect();
    for lambda in &classes {
        let n = lambda.n() as u64;
        let l = match l_range_log(lambda, 1.0, 1.0, None) {
            Ok(l) => l,
            Err(e) => return Check::failed("l_range_identity", e),
        };
        let lhs = Dd::from_f64((n + 1) as f64) * log_prefactor(n, Dd::ONE) + l;
        let rhs = mgf_exact(lambda, 1.0).unwrap().ln() - Dd::ONE / Dd::from_f64(n as f64).sqrt();
        worst = worst.max((lhs - rhs).exp_m1().abs().to_f64());
    }
    Check::new(
        "l_range_identity",
        worst < 1e-9,
        format!("max relative gap {worst:.3e}"),
        "< 1e-9",
    )
}

fn small_range_decay() -> Check {
    let n = 64usize;
    let lambda = CycleType::new([(2, n / 2)]).unwrap();
    let delta = delta0_of_s(1.0).unwrap() / 2.0;
    let cut = delta * (n as f64).powf(1.25);
    match (l_range_log(&lambda, 1.0, 1.0, Some(cut)), l_range_log(&lambda, 1.0, 1.0, None)) {
        (Ok(small), Ok(all)) => {
            let ratio = (small - all).exp().to_f64();
            Check::new("l_small_range_share", ratio < 1e-3, format!("{ratio:.3e}"), "< 1e-3")
        }
        (Err(e), _) | (_, Err(e)) => Check::failed("l_small_range_share", e),
    }
}

fn s2_clt_consistency() -> Check {
    let mut fails = 0;
    for k in 0..=4 {
        let a = rat(k, 4);
        fails += usize::from(
            clt_variance_exact(&a).ok() != Some(s2_coefficient_exact(&a) * rat(2, 1)),
        );
    }
    Check::new(
        "s2_coefficient_is_half_variance",
        fails == 0,
        format!("{fails} of 5 differ"),
        "exact equality",
    )
}

fn sn_pipeline() -> Check {
    let mut gaps = Vec::new();
    for j in 1..=10 {
        let n = 1u64 << (2 * j);
        gaps.push((sn_log_mgf_pipeline(n, 1.0).unwrap() - 1.0 / 45.0).abs());
    }
    let ok = gaps.windows(2).all(|w| w[1] < w[0]);
    Check::new(
        "sn_log_mgf_pipeline",
        ok,
        format!("gap {:.3e} at n = 4 and {:.3e} at n = 4^10", gaps[0], gaps[9]),
        "decreasing along n = 4^j",
    )
}

fn sampler_uniformity() -> Check {
    let mut worst = Vec::new();
    let mut ok = true;
    for lambda in partitions_of(4).unwrap() {
        let size = lambda.class_size().to_u64().unwrap();
        if size < 2 {
            continue;
        }
        let mut sampler = ClassSampler::new(&lambda, SeedSpec::new(4, 0));
        let mut seen: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for _ in 0..100_000 {
            *seen.entry(sampler.sample().word().to_vec()).or_default() += 1;
        }
        match chi_square_uniformity(&seen, size) {
            Ok((stat, dof)) => {
                let crit = ChiSquared::new(dof as f64).unwrap().inverse_cdf(0.999);
                ok &= stat < crit;
                worst.push(format!("{lambda}: {stat:.2}/{crit:.2}"));
            }
            Err(e) => return Check::failed("sampler_uniformity_s4", e),
        }
    }
    Check::new("sampler_uniformity_s4", ok, worst.join(", "), "chi-square < 99.9% quantile")
}

fn sampler_vs_exact() -> Check {
    let lambda = CycleType::new([(3, 2), (2, 1)]).unwrap();
    let draws = 100_000u64;
    let stats = match sample_parallel(&lambda, draws, 17, 1) {
        Ok(s) => s,
        Err(e) => return Check::failed("sampler_vs_exact", e),
    };
    let dist = class_peak_distribution(&lambda).unwrap();
    let total = dist.total().to_f64().unwrap();
    let mut worst = 0.0f64;
    for (k, c) in dist.counts().iter().enumerate() {
        let p = c.to_f64().unwrap() / total;
        let se = (p * (1.0 - p) / draws as f64).sqrt().max(1e-12);
        let emp = stats.frequency(k as u64) as f64 / draws as f64;
        worst = worst.max((emp - p).abs() / se);
    }
    Check::new(
        "sampler_vs_exact_3^2_2^1",
        worst <= 4.0,
        format!("max deviation {worst:.3} standard errors"),
        "<= 4",
    )
}

fn figure_one() -> Check {
    let lambda = CycleType::new([(2, 250), (4, 125)]).unwrap();
    let threads = crate::config::threads().unwrap_or(1);
    let stats = match sample_parallel(&lambda, 100_000, 1, threads) {
        Ok(s) => s,
        Err(e) => return Check::failed("figure_one", e),
    };
    let (mean, var) = (stats.mean(), stats.variance());
    let ks = ks_distance(&stats, 332.67, 44.49).unwrap_or(1.0);
    Check::new(
        "figure_one_2^250_4^125",
        (331.7..=333.7).contains(&mean) && (42.0..=47.0).contains(&var) && ks < 0.015,
        format!("mean {mean:.4}, variance {var:.4}, ks {ks:.5}"),
        "mean in [331.7, 333.7], variance in [42, 47], ks < 0.015",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert!(Suite::from_name(name).is_some());
        }
        assert!(Suite::from_name("nope").is_none());
    }

    #[test]
    fn lemma_and_residual_suites_pass() {
        for suite in [Suite::Lemmas, Suite::Residuals] {
            let mut lines = Vec::new();
            let ok = run_suite(suite, |c| lines.push(c.to_string()));
            assert!(ok, "{lines:#?}");
        }
    }

    #[test]
    fn check_lines_are_single_line() {
        let c = Check::new("x", false, "1.0", "<= 2");
        assert_eq!(c.to_string(), "FAIL x measured=1.0 bound=<= 2");
    }
}

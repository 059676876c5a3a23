//! Saddle-point parameter, correction factors and Gaussian predictions for
//! the moment generating function `E[e^{-s p(π)/√n}]` over a conjugacy class.
//!
//! With `u = e^{-s/√n}` the parameter `t` solves `4t/(1+t)^2 = u`. Writing
//! `r = √(1-u)` one has `t = (1-r)/(1+r)`, `(1-t)/(1+t) = r` and
//! `log(1/t) = 2 atanh r`; everything below is evaluated through `r` to avoid
//! cancellation when `t` is close to 1.

use alloc::format;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::class_dist::{class_peak_distribution, coeff_gf_value, f_integer, f_value};
use crate::dd::{log_add_exp, Dd};
use crate::error::{Error, Result};
use crate::numbers::{binomial_u64, factorial};
use crate::partition::CycleType;

/// The constant in the exponential bound on `g_{a,i}`.
pub const C1: f64 = 4.0;

/// Relative size below which the summand of `L_{[lo,∞)}` is dropped.
pub const L_TRUNCATION: f64 = 1e-30;

/// Largest tolerated relative tail estimate for `L_{[lo,∞)}`.
pub const L_TAIL_TOLERANCE: f64 = 1e-20;

const L_MAX_TERMS: u64 = 10_000_000;

fn check_s(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("s must be a positive real, got {s}")))
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(())
}

/// `r = √(1 - e^{-s/√n})` in double-double precision.
fn r_dd(n: u64, s: Dd) -> Dd {
    let x = s / Dd::from_f64(n as f64).sqrt();
    (-(-x).exp_m1()).sqrt()
}

/// `(t, log(1/t))` in double-double precision.
pub fn t_and_log_inv_dd(n: u64, s: Dd) -> (Dd, Dd) {
    let r = r_dd(n, s);
    let one_minus_r = Dd::ONE - r;
    let t = one_minus_r / (Dd::ONE + r);
    let log_inv = (r.ldexp(1) / one_minus_r).ln_1p();
    (t, log_inv)
}

/// The solution `t ∈ (0, 1)` of `4t/(1+t)^2 = e^{-s/√n}`.
pub fn t_of_s(n: u64, s: f64) -> Result<f64> {
    check_n(n)?;
    check_s(s)?;
    Ok(t_and_log_inv_dd(n, Dd::from_f64(s)).0.to_f64())
}

/// `log(1/t(s, n))`, accurate even when `t` is within rounding of 1.
pub fn log_inv_t(n: u64, s: f64) -> Result<f64> {
    check_n(n)?;
    check_s(s)?;
    Ok(t_and_log_inv_dd(n, Dd::from_f64(s)).1.to_f64())
}

/// Large-`n` expansion
/// `1 - 2√s/n^{1/4} + 2s/√n - (3/2)s^{3/2}/n^{3/4} + s^2/n` of `t(s, n)`.
pub fn t_asymp_expansion(n: u64, s: f64) -> f64 {
    let q = libm::pow(n as f64, -0.25);
    let rs = libm::sqrt(s);
    1.0 - 2.0 * rs * q + 2.0 * s * q * q - 1.5 * s * rs * q * q * q + s * s * q.powi(4)
}

fn tail_sup_factor(s: f64) -> f64 {
    2.0 * libm::sqrt(s)
}

/// `n^{1/4} log(1/t(s, n))`.
fn scaled_log_inv(n: u64, s: f64) -> f64 {
    libm::pow(n as f64, 0.25) * t_and_log_inv_dd(n, Dd::from_f64(s)).1.to_f64()
}

/// The threshold `δ₀(s) = [sup_n n^{1/4} log(1/t) e^{c₁/4 + 1}]^{-1}`.
///
/// The supremum is the maximum over `n = 1..N` together with the limit
/// `2√s` as `n → ∞`; `N` doubles until the maximum moves by less than `1e-9`.
pub fn delta0_of_s(s: f64) -> Result<f64> {
    check_s(s)?;
    let mut grid = 64u64;
    let mut best = tail_sup_factor(s);
    for n in 1..=grid {
        best = best.max(scaled_log_inv(n, s));
    }
    loop {
        let mut next = best;
        for n in grid + 1..=2 * grid {
            next = next.max(scaled_log_inv(n, s));
        }
        grid *= 2;
        let moved = next - best;
        best = next;
        if moved < 1e-9 || grid >= 1 << 22 {
            break;
        }
    }
    Ok(1.0 / (best * libm::exp(C1 / 4.0 + 1.0)))
}

/// Saddle-point data attached to one `(s, n)` pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticParams {
    pub s: f64,
    pub n: u64,
    pub t: f64,
    pub delta0: f64,
    pub c1: f64,
}

impl AsymptoticParams {
    pub fn new(n: u64, s: f64) -> Result<Self> {
        Ok(AsymptoticParams {
            s,
            n,
            t: t_of_s(n, s)?,
            delta0: delta0_of_s(s)?,
            c1: C1,
        })
    }
}

/// `g_{a,i} = f_{a,i} · 2i / (2a)^i`.
pub fn g_value(a: u64, i: u64) -> BigRational {
    let denom = BigInt::from(2 * a).pow(i as u32);
    f_value(a, i) * BigRational::new(BigInt::from(2 * i), denom)
}

/// `K = Σ_ν 2^{-m} C(m, ν) (f-ν+1)(f-ν+2)...(f-ν+m-1) / f^{m-1}`.
///
/// The product is the factorial ratio `(f-ν+m-1)!/(f-ν)!` written so that
/// it stays meaningful when `f < m`: it vanishes whenever it crosses zero.
pub fn k_value(f: &BigInt, m: u64) -> Result<BigRational> {
    if m == 0 {
        return Ok(BigRational::one());
    }
    if !f.is_positive() {
        return Err(Error::Domain(format!("K needs f >= 1, got {f}")));
    }
    let mut total = BigInt::zero();
    for nu in 0..=m {
        let base = f - BigInt::from(nu);
        let mut prod = BigInt::one();
        for j in 1..m {
            prod *= &base + BigInt::from(j);
        }
        total += prod * binomial_u64(m, nu);
    }
    let denom = (BigInt::one() << m as usize) * f.pow((m - 1) as u32);
    Ok(BigRational::new(total, denom))
}

/// `exp{n₁³/(12a²) - 3n₁⁵/(160a⁴)}`, the expansion of `K_{a,1}` for
/// `a >= 2 n₁`.
pub fn k_a1_expansion(n1: u64, a: u64) -> Result<f64> {
    if n1 == 0 || a < 2 * n1 {
        return Err(Error::Domain(format!(
            "expansion of K_(a,1) needs a >= 2 n1 >= 2, got n1 = {n1}, a = {a}"
        )));
    }
    let (n1, a) = (n1 as f64, a as f64);
    let a2 = a * a;
    Ok(libm::exp(n1.powi(3) / (12.0 * a2) - 3.0 * n1.powi(5) / (160.0 * a2 * a2)))
}

/// `Π_i g_{a,i}^{n_i} K_{a,i}`, as the exact rational
/// `Π_i n_i! i^{n_i} E_{n_i}(f_{a,i}) / (2a)^n`.
pub fn correction_product(lambda: &CycleType, a: u64) -> BigRational {
    let mut num = BigInt::one();
    for (i, m) in lambda.iter() {
        let f = f_integer(&BigInt::from(a), i as u64);
        num *= factorial(m as u64) * BigInt::from(i).pow(m as u32) * coeff_gf_value(&f, m);
    }
    BigRational::new(num, BigInt::from(2 * a).pow(lambda.n() as u32))
}

/// `log` of the `a`-th summand `a^n t^a Π_i g^{n_i} K` of `L`, with the
/// `a`-independent part `Σ_i log(n_i! i^{n_i}) - n log 2` passed in.
fn log_summand(lambda: &CycleType, a: u64, log_t: Dd, constant: Dd) -> Dd {
    let mut acc = constant + log_t * Dd::from_f64(a as f64);
    let big_a = BigInt::from(a);
    for (i, m) in lambda.iter() {
        let f = f_integer(&big_a, i as u64);
        acc += Dd::ln_biguint(coeff_gf_value(&f, m).magnitude());
    }
    acc
}

/// `log L_{[lo, hi]}` for
/// `L_A = (log^{n+1}(1/t)/n!) Σ_{a ∈ A} a^n t^a Π_i g_{a,i}^{n_i} K_{a,i}`,
/// with `hi = None` meaning `+∞`. An empty range gives `-∞`.
pub fn l_range_log(lambda: &CycleType, s: f64, lo: f64, hi: Option<f64>) -> Result<Dd> {
    check_s(s)?;
    if !(lo >= 1.0) {
        return Err(Error::Domain(format!("the range must start at lo >= 1, got {lo}")));
    }
    let n = lambda.n() as u64;
    let first = libm::ceil(lo) as u64;
    let last = match hi {
        Some(h) if h < lo => return Ok(Dd::from_f64(f64::NEG_INFINITY)),
        Some(h) => Some(libm::floor(h) as u64),
        None => None,
    };
    let (_, log_inv) = t_and_log_inv_dd(n, Dd::from_f64(s));
    let log_t = -log_inv;
    let mut constant = -Dd::LN_2 * Dd::from_f64(n as f64);
    for (i, m) in lambda.iter() {
        let c = factorial(m as u64) * BigInt::from(i).pow(m as u32);
        constant += Dd::ln_biguint(c.magnitude());
    }

    let mut acc = Dd::from_f64(f64::NEG_INFINITY);
    let mut max_term = acc;
    let mut prev = acc;
    let mut a = first;
    let mut tail = Dd::from_f64(f64::NEG_INFINITY);
    loop {
        if last.is_some_and(|l| a > l) {
            break;
        }
        if a - first > L_MAX_TERMS {
            return Err(Error::Precision(format!(
                "L did not converge within {L_MAX_TERMS} terms"
            )));
        }
        let term = log_summand(lambda, a, log_t, constant);
        acc = log_add_exp(acc, term);
        if term > max_term {
            max_term = term;
        }
        if last.is_none() && term < prev && (term - max_term).to_f64() < libm::log(L_TRUNCATION)
        {
            // Ratio of consecutive terms, and the ratio t (1 + 1/a)^n of the
            // dominant a^n t^a part; the larger one bounds the geometric tail.
            let observed = (term - prev).to_f64();
            let dominant = (log_t + Dd::from_f64(n as f64) * Dd::from_f64(1.0 / a as f64).ln_1p())
                .to_f64();
            let log_ratio = observed.max(dominant);
            if log_ratio < 0.0 {
                let ratio = libm::exp(log_ratio);
                tail = term + Dd::from_f64(libm::log(ratio / (1.0 - ratio)));
                break;
            }
        }
        prev = term;
        a += 1;
    }
    if acc.to_f64() == f64::NEG_INFINITY {
        return Ok(acc);
    }
    if tail.to_f64() != f64::NEG_INFINITY {
        let rel = (tail - acc).to_f64();
        if rel > libm::log(L_TAIL_TOLERANCE) {
            return Err(Error::Precision(format!(
                "tail of L estimated at relative size e^{rel:.1}"
            )));
        }
    }
    let log_fact = Dd::ln_biguint(factorial(n).magnitude());
    Ok(acc + Dd::from_f64((n + 1) as f64) * log_inv.ln() - log_fact)
}

/// `L_{[lo, hi]}` (see [`l_range_log`]).
pub fn l_range(lambda: &CycleType, s: f64, lo: f64, hi: Option<f64>) -> Result<Dd> {
    Ok(l_range_log(lambda, s, lo, hi)?.exp())
}

/// `log (2(1-t)/((1+t) log(1/t)))`, i.e. `log(r / atanh r)`.
pub fn log_prefactor(n: u64, s: Dd) -> Dd {
    let r = r_dd(n, s);
    let (_, log_inv) = t_and_log_inv_dd(n, s);
    (r.ldexp(1) / log_inv).ln()
}

/// `(n+1) log(2(1-t)/((1+t) log(1/t))) + s(n+1)/(3√n)`, the quantity whose
/// limit is `s²/45` for the whole symmetric group.
pub fn sn_log_mgf_pipeline(n: u64, s: f64) -> Result<f64> {
    check_n(n)?;
    check_s(s)?;
    let sd = Dd::from_f64(s);
    let np1 = Dd::from_f64((n + 1) as f64);
    let v = np1 * log_prefactor(n, sd) + sd * np1 / (Dd::from_f64(3.0) * Dd::from_f64(n as f64).sqrt());
    Ok(v.to_f64())
}

/// `1/45 + α³/18 - 3α⁵/10 + 2α⁶/9`, the coefficient of `s²`.
pub fn s2_coefficient_exact(alpha: &BigRational) -> BigRational {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let a3 = alpha.pow(3);
    let a5 = alpha.pow(5);
    let a6 = alpha.pow(6);
    q(1, 45) + a3 * q(1, 18) - a5 * q(3, 10) + a6 * q(2, 9)
}

/// `2/45 + α³/9 - 3α⁵/5 + 4α⁶/9`.
pub fn clt_variance_exact(alpha: &BigRational) -> Result<BigRational> {
    if alpha.is_negative() || alpha > &BigRational::one() {
        return Err(Error::Domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(s2_coefficient_exact(alpha) * BigRational::from_integer(2.into()))
}

pub fn clt_variance(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(2.0 / 45.0 + alpha.powi(3) / 9.0 - 0.6 * alpha.powi(5) + 4.0 * alpha.powi(6) / 9.0)
}

fn mean_term_dd(n: u64, alpha: Dd, s: Dd) -> Dd {
    let a3 = alpha.powi(3);
    -(Dd::ONE - a3) * s * Dd::from_f64(n as f64).sqrt() / Dd::from_f64(3.0)
}

fn s2_term_dd(alpha: Dd, s: Dd) -> Dd {
    let c = Dd::ONE / Dd::from_f64(45.0) + alpha.powi(3) / Dd::from_f64(18.0)
        - Dd::from_f64(3.0) * alpha.powi(5) / Dd::from_f64(10.0)
        + Dd::from_f64(2.0) * alpha.powi(6) / Dd::from_f64(9.0);
    c * s * s
}

/// Exponent of [`mgf_prediction`].
pub fn mgf_prediction_log(n: u64, alpha1: f64, s: f64) -> Result<f64> {
    check_n(n)?;
    check_s(s)?;
    if !(0.0..=1.0).contains(&alpha1) {
        return Err(Error::Domain(format!("alpha1 must lie in [0, 1], got {alpha1}")));
    }
    let (a, sd) = (Dd::from_f64(alpha1), Dd::from_f64(s));
    Ok((mean_term_dd(n, a, sd) + s2_term_dd(a, sd)).to_f64())
}

/// `exp{-((1-α₁³)/3) s√n + (1/45 + α₁³/18 - 3α₁⁵/10 + 2α₁⁶/9) s²}`.
pub fn mgf_prediction(n: u64, alpha1: f64, s: f64) -> Result<f64> {
    Ok(libm::exp(mgf_prediction_log(n, alpha1, s)?))
}

/// Exact log-MGF of a class against the two predicted terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PredictionBreakdown {
    pub mean_term: f64,
    pub s2_term: f64,
    pub log_mgf_exact: f64,
    pub residual: f64,
}

/// `E_{λ,s} = log E[e^{-s p/√n}] - mean_term - s2_term` over `C_λ`.
pub fn residual_e(lambda: &CycleType, s: f64) -> Result<PredictionBreakdown> {
    check_s(s)?;
    let dist = class_peak_distribution(lambda)?;
    let n = lambda.n() as u64;
    let alpha = Dd::from_rational(&lambda.alpha1());
    let sd = Dd::from_f64(s);
    let mean_term = mean_term_dd(n, alpha, sd);
    let s2_term = s2_term_dd(alpha, sd);
    let log_mgf = dist.log_mgf(sd);
    Ok(PredictionBreakdown {
        mean_term: mean_term.to_f64(),
        s2_term: s2_term.to_f64(),
        log_mgf_exact: log_mgf.to_f64(),
        residual: (log_mgf - mean_term - s2_term).to_f64(),
    })
}

/// `f_n(x) = (1 + x/√n)^n e^{-√n x}` for `x >= -√n`, and 0 below.
pub fn gaussian_fn(n: f64, x: f64) -> f64 {
    let rn = libm::sqrt(n);
    if x <= -rn {
        return 0.0;
    }
    libm::exp(n * libm::log1p(x / rn) - rn * x)
}

/// [`gaussian_fn`] in double-double precision.
pub fn gaussian_fn_dd(n: f64, x: f64) -> Dd {
    let rn = Dd::from_f64(n).sqrt();
    let xd = Dd::from_f64(x);
    if xd <= -rn {
        return Dd::ZERO;
    }
    (Dd::from_f64(n) * (xd / rn).ln_1p() - rn * xd).exp()
}

/// Whether `e^{-c} <= g_{a,i} <= e^{c}`, comparing `g - 1` with
/// `expm1(±c)` at double-double precision with a relative slack of `1e-25`.
pub fn g_within(a: u64, i: u64, c: Dd) -> bool {
    let gm1 = Dd::from_rational(&(g_value(a, i) - BigRational::one()));
    log_within(gm1, c)
}

/// Whether `x - 1 = gm1` satisfies `|log x| <= c`, with slack.
fn log_within(gm1: Dd, c: Dd) -> bool {
    let slack = Dd::from_f64(1e-25);
    let upper = c.exp_m1();
    let lower = (-c).exp_m1();
    gm1 <= upper + upper.abs() * slack && gm1 >= lower - lower.abs() * slack
}

/// The exponent `c₁ (2a)^{-2i/3}` of the sharp bound on `g_{a,i}`.
pub fn g_bound_exponent(a: u64, i: u64) -> Dd {
    let base = Dd::from_f64((2 * a) as f64);
    Dd::from_f64(C1) * base.powf(Dd::from_f64(-2.0 * i as f64) / Dd::from_f64(3.0))
}

/// Both forms of the bound on `g_{a,i}`: `(sharp, weak)` with exponents
/// `c₁(2a)^{-2i/3}` and `1/a²`.
pub fn g_bounds_hold(a: u64, i: u64) -> (bool, bool) {
    let weak = Dd::ONE / Dd::from_f64((a * a) as f64);
    (g_within(a, i, g_bound_exponent(a, i)), g_within(a, i, weak))
}

/// `Π_{i>=2} K_{a,i}` as an exact rational.
pub fn k_product_higher(lambda: &CycleType, a: u64) -> Result<BigRational> {
    let big_a = BigInt::from(a);
    let mut out = BigRational::one();
    for (i, m) in lambda.iter().filter(|&(i, _)| i >= 2) {
        let f = f_integer(&big_a, i as u64);
        out *= k_value(&f, m as u64)?;
    }
    Ok(out)
}

/// `(|log Π_{i>=2} K_{a,i}|, e⁴ n²/a²)` for `a >= max(e⁴, 2) n`; the first
/// should not exceed the second.
pub fn k_product_bound(lambda: &CycleType, a: u64) -> Result<(f64, f64, bool)> {
    let n = lambda.n() as f64;
    let e4 = libm::exp(4.0);
    if (a as f64) < e4.max(2.0) * n {
        return Err(Error::Domain(format!(
            "the K product bound needs a >= e^4 n, got a = {a}, n = {n}"
        )));
    }
    let prod = k_product_higher(lambda, a)?;
    let bound = Dd::from_f64(4.0).exp() * Dd::from_f64(n * n) / Dd::from_f64((a * a) as f64);
    let pm1 = Dd::from_rational(&(&prod - BigRational::one()));
    let measured = pm1.ln_1p().abs();
    Ok((measured.to_f64(), bound.to_f64(), log_within(pm1, bound)))
}

/// Largest `|E_{λ,s}| n^{1/4}` over a family of classes.
pub fn residual_scaled_sup(classes: &[CycleType], s: f64) -> Result<f64> {
    let mut out = 0.0f64;
    for lambda in classes {
        let e = residual_e(lambda, s)?;
        out = out.max(e.residual.abs() * libm::pow(lambda.n() as f64, 0.25));
    }
    Ok(out)
}

/// Integer `a` at which `L`'s summand peaks, approximately `n / log(1/t)`.
pub fn l_summand_peak(n: u64, s: f64) -> Result<u64> {
    let li = log_inv_t(n, s)?;
    Ok((n as f64 / li).round().max(1.0).to_u64().unwrap_or(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use crate::class_dist::mgf_exact;
    use crate::numbers::factorial;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn t_at_u_eight_ninths() {
        // s/√n = ln(9/8): u = 8/9, 8t² - 20t + 8 = 0, t = 1/2.
        let s = libm::log(9.0 / 8.0);
        let t = t_of_s(1, s).unwrap();
        assert!((t - 0.5).abs() < 1e-15, "{t}");
        let s4 = 2.0 * s;
        assert!((t_of_s(4, s4).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn t_solves_defining_equation() {
        for &n in &[1u64, 10, 1000, 1_000_000, 1_000_000_000_000] {
            for &s in &[1e-6, 0.1, 1.0, 5.0] {
                let t = t_of_s(n, s).unwrap();
                assert!(t > 0.0 && t < 1.0);
                let lhs = 4.0 * t / ((1.0 + t) * (1.0 + t));
                let u = libm::exp(-s / libm::sqrt(n as f64));
                assert!(((lhs - u) / u).abs() < 1e-15, "n={n} s={s}");
            }
        }
        assert!(t_of_s(1, 1e-12).unwrap() > 0.99);
        assert!(t_of_s(1, 0.0).is_err());
    }

    #[test]
    fn t_matches_expansion() {
        let n = 10_000;
        let t = t_of_s(n, 1.0).unwrap();
        assert!((t - t_asymp_expansion(n, 1.0)).abs() < 5e-5);
    }

    #[test]
    fn log_inv_t_is_accurate_near_one() {
        let n = 1u64 << 40;
        let direct = -libm::log(t_of_s(n, 1.0).unwrap());
        let careful = log_inv_t(n, 1.0).unwrap();
        assert!(((direct - careful) / careful).abs() < 1e-9);
    }

    #[test]
    fn delta0_examples() {
        let d1 = delta0_of_s(1.0).unwrap();
        assert!(d1 > 0.0);
        assert!(d1 <= 1.0 / (2.0 * libm::exp(2.0)));
        assert!(delta0_of_s(4.0).unwrap() < d1);
        for &s in &[0.01, 0.5, 2.0, 10.0] {
            assert!(delta0_of_s(s).unwrap() > 0.0);
        }
    }

    #[test]
    fn g_examples() {
        for a in 1..20 {
            assert_eq!(g_value(a, 1), BigRational::one());
            assert_eq!(g_value(a, 2), BigRational::one());
        }
        assert_eq!(g_value(1, 3), q(3, 4));
    }

    #[test]
    fn k_examples() {
        for f in 1..30i64 {
            let f = BigInt::from(f);
            assert_eq!(k_value(&f, 0).unwrap(), BigRational::one());
            assert_eq!(k_value(&f, 1).unwrap(), BigRational::one());
            assert_eq!(k_value(&f, 2).unwrap(), BigRational::one());
        }
        assert_eq!(k_value(&BigInt::one(), 3).unwrap(), q(3, 2));
        assert!(k_value(&BigInt::zero(), 3).is_err());
    }

    #[test]
    fn k_matches_coefficient_generating_function() {
        for m in 1..=12u64 {
            for f in 12..=40i64 {
                let f = BigInt::from(f);
                let e = BigRational::from_integer(coeff_gf_value(&f, m as usize));
                let pred = BigRational::new((&f * BigInt::from(2)).pow(m as u32), factorial(m))
                    * k_value(&f, m).unwrap();
                assert_eq!(e, pred, "m={m} f={f}");
            }
        }
        // Also below the f >= m range, where the rising product vanishes.
        for m in 1..=12u64 {
            for f in 1..m as i64 {
                let f = BigInt::from(f);
                let e = BigRational::from_integer(coeff_gf_value(&f, m as usize));
                let pred = BigRational::new((&f * BigInt::from(2)).pow(m as u32), factorial(m))
                    * k_value(&f, m).unwrap();
                assert_eq!(e, pred, "m={m} f={f}");
            }
        }
    }

    #[test]
    fn k_a1_expansion_examples() {
        let v = k_a1_expansion(1, 1000).unwrap();
        assert!((v - 1.0).abs() < 1e-6);
        let v = k_a1_expansion(10, 10_000).unwrap();
        let expect = libm::exp(1000.0 / 12e8 - 3e5 / 160e16);
        assert!((v - expect).abs() < 1e-15);
        assert!((v - 1.000_000_833_333).abs() < 1e-11);
        assert!(k_a1_expansion(10, 19).is_err());

        let n1 = 10u64;
        let mut last = f64::INFINITY;
        for a in [20u64, 40, 80, 160, 320, 640] {
            let k = Dd::from_rational(&k_value(&BigInt::from(a), n1).unwrap()).ln();
            let gap = (k.to_f64() - libm::log(k_a1_expansion(n1, a).unwrap())).abs();
            assert!(gap < last, "a={a}");
            last = gap;
        }
    }

    #[test]
    fn correction_product_matches_g_and_k() {
        let lambda = CycleType::new([(1, 2), (2, 1), (3, 2)]).unwrap();
        for a in 1..8u64 {
            let mut direct = BigRational::one();
            for (i, m) in lambda.iter() {
                let f = f_integer(&BigInt::from(a), i as u64);
                direct *= g_value(a, i as u64).pow(m as i32) * k_value(&f, m as u64).unwrap();
            }
            assert_eq!(direct, correction_product(&lambda, a));
        }
    }

    #[test]
    fn l_range_empty_is_zero() {
        let lambda = CycleType::cycle(5).unwrap();
        assert_eq!(l_range(&lambda, 1.0, 10.0, Some(3.0)).unwrap(), Dd::ZERO);
    }

    #[test]
    fn l_range_identity() {
        let classes = [
            CycleType::identity(4).unwrap(),
            CycleType::cycle(7).unwrap(),
            CycleType::new([(2, 4), (1, 2)]).unwrap(),
            CycleType::new([(3, 3), (2, 1), (1, 1)]).unwrap(),
        ];
        for lambda in &classes {
            let n = lambda.n() as u64;
            for &s in &[0.5, 1.0, 2.0] {
                let l = l_range_log(lambda, s, 1.0, None).unwrap();
                let lhs = Dd::from_f64((n + 1) as f64) * log_prefactor(n, Dd::from_f64(s)) + l;
                let rhs = mgf_exact(lambda, s).unwrap().ln()
                    - Dd::from_f64(s) / Dd::from_f64(n as f64).sqrt();
                assert!((lhs - rhs).abs().to_f64() < 1e-12, "{lambda} s={s}");
            }
        }
    }

    #[test]
    fn l_range_splits_additively() {
        let lambda = CycleType::new([(2, 3), (1, 1)]).unwrap();
        let all = l_range(&lambda, 1.0, 1.0, None).unwrap();
        let left = l_range(&lambda, 1.0, 1.0, Some(10.0)).unwrap();
        let right = l_range(&lambda, 1.0, 11.0, None).unwrap();
        assert!(((left + right - all) / all).abs().to_f64() < 1e-25);
    }

    #[test]
    fn small_range_is_negligible() {
        let n = 64usize;
        let lambda = CycleType::new([(2, n / 2)]).unwrap();
        let delta = delta0_of_s(1.0).unwrap() / 2.0;
        let cut = delta * libm::pow(n as f64, 1.25);
        let small = l_range_log(&lambda, 1.0, 1.0, Some(cut)).unwrap();
        let all = l_range_log(&lambda, 1.0, 1.0, None).unwrap();
        assert!((small - all).to_f64() < libm::log(1e-3));
    }

    #[test]
    fn prediction_examples() {
        let (n, s) = (100, 1.0);
        let v = mgf_prediction(n, 0.0, s).unwrap();
        assert!((v - libm::exp(-10.0 / 3.0 + 1.0 / 45.0)).abs() < 1e-15);
        assert_eq!(mgf_prediction(n, 1.0, 2.5).unwrap(), 1.0);
        let v = mgf_prediction(n, 0.5, s).unwrap();
        let e = -35.0 / 12.0 + (1.0 / 45.0 + 1.0 / 144.0 - 3.0 / 320.0 + 1.0 / 288.0);
        assert!(((v - libm::exp(e)) / v).abs() < 1e-14);
    }

    #[test]
    fn clt_variance_examples() {
        assert_eq!(clt_variance_exact(&q(0, 1)).unwrap(), q(2, 45));
        assert_eq!(clt_variance_exact(&q(1, 1)).unwrap(), q(0, 1));
        assert_eq!(clt_variance_exact(&q(1, 2)).unwrap(), q(67, 1440));
        assert!((clt_variance(0.5).unwrap() - 67.0 / 1440.0).abs() < 1e-16);
        assert!(clt_variance(1.5).is_err());
        assert!(clt_variance_exact(&q(-1, 2)).is_err());
        for k in 0..=4 {
            let a = q(k, 4);
            assert_eq!(s2_coefficient_exact(&a) * q(2, 1), clt_variance_exact(&a).unwrap());
        }
    }

    #[test]
    fn residual_examples() {
        let e = residual_e(&CycleType::identity(9).unwrap(), 1.0).unwrap();
        assert!(e.residual.abs() < 1e-30);
        assert!(e.log_mgf_exact.abs() < 1e-30);

        let s = 1.0;
        let e = residual_e(&CycleType::cycle(3).unwrap(), s).unwrap();
        let r3 = libm::sqrt(3.0);
        let hand = libm::log((1.0 + libm::exp(-s / r3)) / 2.0) + s * r3 / 3.0 - s * s / 45.0;
        assert!((e.residual - hand).abs() < 1e-14);
    }

    #[test]
    fn gaussian_fn_examples() {
        assert_eq!(gaussian_fn(7.0, 0.0), 1.0);
        assert_eq!(gaussian_fn(4.0, -2.0), 0.0);
        assert_eq!(gaussian_fn(4.0, -3.0), 0.0);
        assert!((gaussian_fn(4.0, 2.0) - 16.0 * libm::exp(-4.0)).abs() < 1e-15);
        assert!((gaussian_fn_dd(4.0, 2.0).to_f64() - 0.293_050_222_219_5).abs() < 1e-12);
    }

    #[test]
    fn gaussian_fn_lemma_grid() {
        let ns: Vec<f64> = (0..=10).map(|k| (1u64 << k) as f64).collect();
        let slack = Dd::from_f64(1e-25);
        let le = |x: Dd, y: Dd| x <= y + y.abs() * slack;
        for k in 0..=20 {
            let x = 0.5 * k as f64;
            for (j, &n) in ns.iter().enumerate() {
                let fnx = gaussian_fn_dd(n, x);
                let env = (Dd::from_f64(2.0) / Dd::from_f64(0.5).exp()).powi(n as i64)
                    * (-(Dd::from_f64(n).sqrt() * Dd::from_f64(x)) / Dd::from_f64(2.0)).exp();
                assert!(le(fnx, env), "n={n} x={x}");
                let gauss = (-(Dd::from_f64(x * x)) / Dd::from_f64(2.0)).exp();
                let fneg = gaussian_fn_dd(n, -x);
                assert!(le(fneg, gauss), "n={n} x=-{x}");
                for &l in &ns[j + 1..] {
                    assert!(le(gaussian_fn_dd(l, x), fnx), "l={l} n={n} x={x}");
                    assert!(le(fneg, gaussian_fn_dd(l, -x)), "l={l} n={n} x=-{x}");
                }
            }
        }
    }

    #[test]
    fn gaussian_fn_converges() {
        for k in -20..=20 {
            let x = 0.5 * k as f64;
            let g = libm::exp(-x * x / 2.0);
            let mut last = f64::INFINITY;
            for j in 1..=10 {
                let n = libm::pow(4.0, j as f64);
                let gap = (gaussian_fn(n, x) - g).abs();
                assert!(gap <= last, "x={x} j={j}");
                last = gap;
            }
        }
    }

    #[test]
    fn g_bounds() {
        for a in 1..=50 {
            for i in 1..=30 {
                let (sharp, weak) = g_bounds_hold(a, i);
                assert!(sharp, "a={a} i={i}");
                assert!(weak, "a={a} i={i}");
            }
        }
    }

    #[test]
    fn k_product_bound_holds() {
        let lambdas = [
            CycleType::cycle(20).unwrap(),
            CycleType::new([(2, 10)]).unwrap(),
            CycleType::new([(3, 4), (2, 2), (1, 4)]).unwrap(),
            CycleType::new([(5, 2), (4, 1), (2, 3)]).unwrap(),
        ];
        for lambda in &lambdas {
            let n = lambda.n() as u64;
            let start = (libm::exp(4.0) * n as f64).ceil() as u64;
            for a in [start, start + 1, 2 * start, 10 * start] {
                let (m, b, ok) = k_product_bound(lambda, a).unwrap();
                assert!(ok && m <= b, "{lambda} a={a}: {m} > {b}");
            }
            assert!(k_product_bound(lambda, start - 1).is_err());
        }
    }

    #[test]
    fn sn_pipeline_tends_to_s2_over_45() {
        for &s in &[0.5, 1.0, 2.0] {
            let mut last = f64::INFINITY;
            for j in 1..=12 {
                let n = 1u64 << (2 * j);
                let gap = (sn_log_mgf_pipeline(n, s).unwrap() - s * s / 45.0).abs();
                assert!(gap < last, "s={s} n={n}");
                last = gap;
            }
            assert!(last < 1e-2);
        }
    }
}

//! Exact distribution of peaks over a single conjugacy class.
//!
//! The class generating function is
//!
//! ```text
//! Σ_{π ∈ C_λ} q^{p(π)+1} = 2 ((1-t)/(1+t))^{n+1} Σ_{a≥1} t^a Π_i [x^{n_i}] ((1+x)/(1-x))^{f_{a,i}}
//! ```
//!
//! with `q = 4t/(1+t)^2` and `f_{a,i} = (1/2i) Σ_{d | i, d odd} μ(d) (2a)^{i/d}`.
//! The summand `P(a) = Π_i E_{n_i}(f_{a,i})` is a polynomial of degree `n` in
//! `a`, so the sum over `a` has a closed rational form and both sides become
//! polynomials in `t` after multiplying by `(1+t)^{n+1}`. Matching
//! coefficients in increasing degree yields the counts `N_k`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dd::{log_add_exp, Dd};
use crate::error::{check_limit, Error, Result};
use crate::eulerian::eulerian_coeffs;
use crate::numbers::{binomial_row, moebius, stirling2_row};
use crate::partition::CycleType;
use crate::perm::{count_peaks, count_valleys, cycle_type_of, for_each_permutation};
use crate::poly::DensePolynomial;

/// Default bound on `n` for [`class_peak_distribution`].
pub const EXACT_MAX_N: usize = 300;
pub const COEFF_GF_MAX_M: u64 = 2000;
pub const BRUTE_FORCE_MAX_N: usize = 10;

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Odd divisors of `i` with their Möbius values, skipping `μ(d) = 0`.
fn odd_moebius_divisors(i: u64) -> impl Iterator<Item = (u64, i8)> {
    (1..=i)
        .filter(move |d| d % 2 == 1 && i % d == 0)
        .map(|d| (d, moebius(d)))
        .filter(|&(_, mu)| mu != 0)
}

/// `2i · f_{a,i}` as an integer.
fn f_numerator(a: &BigInt, i: u64) -> BigInt {
    let two_a: BigInt = a * 2;
    odd_moebius_divisors(i).fold(BigInt::zero(), |acc, (d, mu)| {
        let p = two_a.pow((i / d) as u32);
        if mu > 0 {
            acc + p
        } else {
            acc - p
        }
    })
}

/// `f_{a,i}` as an exact rational.
pub fn f_value(a: u64, i: u64) -> BigRational {
    assert!(a >= 1 && i >= 1, "f_value requires a, i >= 1");
    BigRational::new(f_numerator(&BigInt::from(a), i), BigInt::from(2 * i))
}

/// `f_{a,i}` for any integer `a >= 0`, which is always an integer.
pub(crate) fn f_integer(a: &BigInt, i: u64) -> BigInt {
    let (q, r) = f_numerator(a, i).div_rem(&BigInt::from(2 * i));
    debug_assert!(r.is_zero(), "f_(a,{i}) must be integral");
    q
}

/// `F_i(a) = (1/2i) Σ_{d | i, d odd} μ(d) (2a)^{i/d}` as a polynomial in `a`.
pub fn f_poly(i: u64) -> DensePolynomial {
    assert!(i >= 1, "f_poly requires i >= 1");
    let mut coeffs = vec![BigRational::zero(); i as usize + 1];
    for (d, mu) in odd_moebius_divisors(i) {
        let e = (i / d) as usize;
        coeffs[e] += int(BigInt::from(mu) * BigInt::from(2).pow(e as u32)) / int(2 * i);
    }
    DensePolynomial::from_coeffs(coeffs)
}

/// `E_m(f) = [x^m] ((1+x)/(1-x))^f` as a polynomial in `f`.
///
/// `G = ((1+x)/(1-x))^f` satisfies `(1 - x^2) G' = 2f G`, which gives
/// `(m+1) E_{m+1} = 2f E_m + (m-1) E_{m-1}`.
pub fn coeff_gf_poly(m: u64) -> Result<DensePolynomial> {
    check_limit("coefficient index m", m, COEFF_GF_MAX_M)?;
    let two_f = DensePolynomial::monomial(int(2), 1);
    let mut prev = DensePolynomial::zero();
    let mut cur = DensePolynomial::one();
    for j in 0..m {
        let next = (&(&two_f * &cur) + &prev.scale(&int(j as i64 - 1))).scale(&(int(1) / int(j + 1)));
        prev = core::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `E_m(f)` for an integer `f`, by the same recurrence in integers.
pub fn coeff_gf_value(f: &BigInt, m: usize) -> BigInt {
    let two_f: BigInt = f * 2;
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for j in 0..m {
        let num = &two_f * &cur + &prev * (j as i64 - 1);
        let (q, r) = num.div_rem(&BigInt::from(j + 1));
        debug_assert!(r.is_zero());
        prev = core::mem::replace(&mut cur, q);
    }
    cur
}

/// Peak counts `N_k = #{π ∈ C_λ : p(π) = k}` for `0 <= k <= ⌊(n-1)/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeakDistribution {
    lambda: CycleType,
    counts: Vec<BigInt>,
}

impl PeakDistribution {
    /// Validates the support and total mass against the class size.
    pub fn new(lambda: CycleType, counts: Vec<BigInt>) -> Result<Self> {
        let slots = max_peaks(lambda.n()) + 1;
        if counts.len() > slots {
            if counts[slots..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Inconsistent(format!(
                    "peak counts beyond k = {} for n = {}",
                    slots - 1,
                    lambda.n()
                )));
            }
        }
        let mut counts = counts;
        counts.resize(slots, BigInt::zero());
        if counts.iter().any(|c| c.sign() == Sign::Minus) {
            return Err(Error::Inconsistent("negative peak count".into()));
        }
        let total: BigInt = counts.iter().sum();
        if total != lambda.class_size() {
            return Err(Error::Inconsistent(format!(
                "peak counts sum to {total}, class size is {}",
                lambda.class_size()
            )));
        }
        Ok(PeakDistribution { lambda, counts })
    }

    pub fn lambda(&self) -> &CycleType {
        &self.lambda
    }

    /// `counts()[k] = N_k`.
    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn count(&self, k: usize) -> BigInt {
        self.counts.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    pub fn mean(&self) -> BigRational {
        let s: BigInt = self.counts.iter().enumerate().map(|(k, c)| c * k).sum();
        BigRational::new(s, self.total())
    }

    pub fn variance(&self) -> BigRational {
        let total = self.total();
        let s2: BigInt = self.counts.iter().enumerate().map(|(k, c)| c * (k * k)).sum();
        let mean = self.mean();
        BigRational::new(s2, total) - &mean * &mean
    }

    /// `ln E[e^{-s p(π)/√n}]` in double-double precision.
    pub fn log_mgf(&self, s: Dd) -> Dd {
        let n = self.lambda.n();
        let step = s / Dd::from_f64(n as f64).sqrt();
        let ln_total = Dd::ln_biguint(self.total().magnitude());
        let mut acc = Dd::from_f64(f64::NEG_INFINITY);
        for (k, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = Dd::ln_biguint(c.magnitude()) - step * Dd::from_f64(k as f64);
            acc = log_add_exp(acc, term);
        }
        acc - ln_total
    }

    pub fn mgf(&self, s: Dd) -> Dd {
        self.log_mgf(s).exp()
    }
}

pub fn max_peaks(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

/// `P(a) = Π_i E_{n_i}(f_{a,i})`.
pub fn class_summand(lambda: &CycleType, a: &BigInt) -> BigInt {
    lambda.iter().fold(BigInt::one(), |acc, (i, m)| {
        acc * coeff_gf_value(&f_integer(a, i as u64), m)
    })
}

/// `P(a)` as a polynomial in `a`, assembled from [`f_poly`] and
/// [`coeff_gf_poly`].
pub fn class_summand_poly(lambda: &CycleType) -> Result<DensePolynomial> {
    let mut acc = DensePolynomial::one();
    for (i, m) in lambda.iter() {
        acc = &acc * &coeff_gf_poly(m as u64)?.compose(&f_poly(i as u64));
    }
    Ok(acc)
}

/// `(1+t)^{n+1}` times the right-hand side of the class generating function,
/// an integer polynomial of degree at most `n`.
///
/// Writing `P(a) = Σ_k Δ^k P(0) C(a, k)` and using
/// `Σ_a C(a, k) t^a = t^k / (1-t)^{k+1}`, this is
/// `2 Σ_k Δ^k P(0) t^k (1-t)^{n-k}`.
pub fn class_gf_numerator(lambda: &CycleType) -> Vec<BigInt> {
    let n = lambda.n();
    let mut diffs: Vec<BigInt> = (0..=n)
        .map(|a| class_summand(lambda, &BigInt::from(a)))
        .collect();
    for k in 1..=n {
        for j in (k..=n).rev() {
            let prev = diffs[j - 1].clone();
            diffs[j] -= prev;
        }
    }
    let mut out = vec![BigInt::zero(); n + 1];
    for (k, d) in diffs.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let d2: BigInt = d * 2;
        for (j, b) in binomial_row(n - k).into_iter().enumerate() {
            let term = &d2 * b;
            if j % 2 == 0 {
                out[k + j] += term;
            } else {
                out[k + j] -= term;
            }
        }
    }
    out
}

/// Same polynomial as [`class_gf_numerator`] through the Eulerian route:
/// with `P(a) = Σ_m c_m a^m` and `Σ_{a≥1} a^m t^a = A_m(t)/(1-t)^{m+1}`,
/// it equals `2 Σ_m c_m A_m(t) (1-t)^{n-m}`. Slower; kept as a cross-check.
pub fn class_gf_numerator_via_eulerian(lambda: &CycleType) -> Result<DensePolynomial> {
    let n = lambda.n();
    let p = class_summand_poly(lambda)?;
    let one_minus_t = DensePolynomial::from_integers([1, -1]);
    let mut acc = DensePolynomial::zero();
    for (m, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let a_m = if m == 0 {
            // Σ_{a≥1} t^a = t/(1-t), i.e. "A_0(t)" = t.
            DensePolynomial::x()
        } else {
            DensePolynomial::from_integers(eulerian_coeffs(m))
        };
        let term = &a_m * &one_minus_t.pow((n - m) as u32);
        acc = &acc + &term.scale(&(c * int(2)));
    }
    Ok(acc)
}

/// Exact peak distribution of the conjugacy class `C_λ`.
pub fn class_peak_distribution(lambda: &CycleType) -> Result<PeakDistribution> {
    class_peak_distribution_with_limit(lambda, EXACT_MAX_N)
}

pub fn class_peak_distribution_with_limit(
    lambda: &CycleType,
    max_n: usize,
) -> Result<PeakDistribution> {
    let n = lambda.n();
    check_limit("exact-mode n", n as u64, max_n as u64)?;
    let mut residual = class_gf_numerator(lambda);
    // Left side times (1+t)^{n+1}: Σ_k N_k 4^{k+1} t^{k+1} (1+t)^{n-2k-1}.
    let kmax = max_peaks(n);
    let mut counts = vec![BigInt::zero(); kmax + 1];
    let mut four_pow = BigInt::one();
    for k in 0..=kmax {
        four_pow *= 4;
        let deg = k + 1;
        let (nk, r) = residual[deg].div_rem(&four_pow);
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!(
                "coefficient of t^{deg} not divisible by 4^{deg} for {lambda}"
            )));
        }
        if !nk.is_zero() {
            let scaled = &nk * &four_pow;
            for (j, b) in binomial_row(n - 2 * k - 1).into_iter().enumerate() {
                residual[deg + j] -= &scaled * b;
            }
        }
        counts[k] = nk;
    }
    if let Some(bad) = residual.iter().position(|c| !c.is_zero()) {
        return Err(Error::Inconsistent(format!(
            "class generating identity leaves a nonzero residual at t^{bad} for {lambda}"
        )));
    }
    PeakDistribution::new(lambda.clone(), counts)
}

/// Ground truth by enumerating all of `S_n`.
pub fn brute_force_peak_distribution(lambda: &CycleType) -> Result<PeakDistribution> {
    brute_force_tally(lambda, count_peaks)
}

/// Distribution of valleys over `C_λ`, by enumeration.
pub fn brute_force_valley_distribution(lambda: &CycleType) -> Result<PeakDistribution> {
    brute_force_tally(lambda, count_valleys)
}

fn brute_force_tally(lambda: &CycleType, stat: fn(&[usize]) -> usize) -> Result<PeakDistribution> {
    let n = lambda.n();
    check_limit("brute-force n", n as u64, BRUTE_FORCE_MAX_N as u64)?;
    let mut counts = vec![0u64; max_peaks(n) + 1];
    for_each_permutation(n, |w| {
        if cycle_type_of(w) == *lambda {
            counts[stat(w)] += 1;
        }
    });
    PeakDistribution::new(lambda.clone(), counts.into_iter().map(BigInt::from).collect())
}

/// `E[e^{-s p(π)/√n}]` over `C_λ`, evaluated in double-double precision from
/// the exact counts.
pub fn mgf_exact(lambda: &CycleType, s: f64) -> Result<Dd> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::Domain(format!("s must be a nonnegative real, got {s}")));
    }
    Ok(class_peak_distribution(lambda)?.mgf(Dd::from_f64(s)))
}

/// Coefficients `b_k` of `p` in the falling-factorial basis,
/// `p(a) = Σ_k b_k a(a-1)...(a-k+1)`, via `a^m = Σ_k S(m, k) a(a-1)...(a-k+1)`.
pub fn falling_factorial_coefficients(p: &DensePolynomial) -> Vec<BigRational> {
    let deg = p.degree().map_or(0, |d| d + 1);
    let mut out = vec![BigRational::zero(); deg];
    for (m, c) in p.coeffs().iter().enumerate() {
        for (k, s) in stirling2_row(m).into_iter().enumerate() {
            out[k] += c * int(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn ct(pairs: &[(usize, usize)]) -> CycleType {
        CycleType::new(pairs.iter().copied()).unwrap()
    }

    fn counts(d: &PeakDistribution) -> Vec<i64> {
        d.counts().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn f_examples() {
        for a in 1..=20u64 {
            assert_eq!(f_value(a, 1), int(a));
            assert_eq!(f_value(a, 2), int(a * a));
        }
        assert_eq!(f_value(1, 3), int(1));
        assert_eq!(f_value(1, 6), int(5));
    }

    #[test]
    fn f_poly_examples() {
        assert_eq!(f_poly(1), DensePolynomial::x());
        let expect = DensePolynomial::from_coeffs(alloc::vec![int(0), int(-2) / int(6), int(0), int(8) / int(6)]);
        assert_eq!(f_poly(3), expect);
        assert_eq!(f_poly(6).eval(&int(1)), int(5));
        for i in 1..=12u64 {
            let p = f_poly(i);
            assert_eq!(p.degree(), Some(i as usize));
            assert_eq!(p.leading_coeff().unwrap(), &(int(BigInt::from(2).pow(i as u32)) / int(2 * i)));
            for a in 1..=6u64 {
                assert_eq!(p.eval(&int(a)), f_value(a, i));
            }
        }
    }

    #[test]
    fn f_values_are_positive_integers() {
        for a in 1..=50u64 {
            for i in 1..=30u64 {
                let f = f_value(a, i);
                assert!(f.is_integer() && f > int(0), "a={a} i={i}");
            }
        }
    }

    /// `[x^m] ((1+x)/(1-x))^f = Σ_k C(f,k) C(f-1+m-k, m-k)` for a positive
    /// integer `f`.
    fn coeff_by_binomials(f: u64, m: u64) -> BigInt {
        use crate::numbers::binomial_u64;
        (0..=m)
            .map(|k| binomial_u64(f, k) * binomial_u64(f - 1 + m - k, m - k))
            .sum()
    }

    #[test]
    fn coeff_gf_examples() {
        assert_eq!(coeff_gf_poly(0).unwrap(), DensePolynomial::one());
        assert_eq!(coeff_gf_poly(1).unwrap(), DensePolynomial::monomial(int(2), 1));
        assert_eq!(coeff_gf_poly(2).unwrap(), DensePolynomial::monomial(int(2), 2));
        assert!(coeff_gf_poly(2001).is_err());
    }

    #[test]
    fn coeff_gf_matches_binomial_expansion() {
        for m in 0..=15u64 {
            let p = coeff_gf_poly(m).unwrap();
            assert_eq!(p.degree(), Some(m as usize));
            for f in 1..=12u64 {
                let expect = coeff_by_binomials(f, m);
                assert_eq!(p.eval(&int(f)), int(expect.clone()), "m={m} f={f}");
                assert_eq!(coeff_gf_value(&BigInt::from(f), m as usize), expect);
            }
        }
    }

    #[test]
    fn class_examples() {
        assert_eq!(counts(&class_peak_distribution(&ct(&[(1, 6)])).unwrap()), [1, 0, 0]);
        assert_eq!(counts(&class_peak_distribution(&ct(&[(3, 1)])).unwrap()), [1, 1]);
        assert_eq!(counts(&class_peak_distribution(&ct(&[(2, 1), (1, 1)])).unwrap()), [2, 1]);
        assert_eq!(counts(&class_peak_distribution(&ct(&[(1, 1)])).unwrap()), [1]);
    }

    #[test]
    fn single_point_numerator() {
        // λ = 1^1: P(a) = 2a, right side times (1+t)^2 is 4t.
        assert_eq!(class_gf_numerator(&ct(&[(1, 1)])), [0, 4].map(BigInt::from).to_vec());
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_peak_distribution(&ct(&[(2, 2)])).unwrap().total(), BigInt::from(3));
        assert_eq!(counts(&brute_force_peak_distribution(&ct(&[(1, 5)])).unwrap()), [1, 0, 0]);
        assert_eq!(counts(&brute_force_peak_distribution(&ct(&[(3, 1)])).unwrap()), [1, 1]);
        assert!(brute_force_peak_distribution(&ct(&[(11, 1)])).is_err());
    }

    #[test]
    fn exact_matches_brute_force_up_to_seven() {
        for n in 1..=7 {
            for lambda in partitions_of(n).unwrap() {
                assert_eq!(
                    class_peak_distribution(&lambda).unwrap(),
                    brute_force_peak_distribution(&lambda).unwrap(),
                    "{lambda}"
                );
            }
        }
    }

    #[test]
    fn numerator_routes_agree() {
        for n in 1..=9 {
            for lambda in partitions_of(n).unwrap() {
                let fast = DensePolynomial::from_integers(class_gf_numerator(&lambda));
                assert_eq!(fast, class_gf_numerator_via_eulerian(&lambda).unwrap(), "{lambda}");
            }
        }
    }

    #[test]
    fn summand_polynomial_has_degree_n() {
        for n in 1..=8 {
            for lambda in partitions_of(n).unwrap() {
                let p = class_summand_poly(&lambda).unwrap();
                assert_eq!(p.degree(), Some(n), "{lambda}");
                for a in 0..=5i64 {
                    assert_eq!(p.eval(&int(a)), int(class_summand(&lambda, &BigInt::from(a))));
                }
            }
        }
    }

    #[test]
    fn falling_factorial_basis_matches_forward_differences() {
        let lambda = ct(&[(2, 1), (1, 2)]);
        let p = class_summand_poly(&lambda).unwrap();
        let ff = falling_factorial_coefficients(&p);
        // Δ^k P(0) = k! · b_k
        let mut vals: Vec<BigInt> = (0..=4).map(|a| class_summand(&lambda, &BigInt::from(a))).collect();
        for k in 1..=4 {
            for j in (k..=4).rev() {
                let prev = vals[j - 1].clone();
                vals[j] -= prev;
            }
        }
        let mut kf = BigInt::one();
        for k in 0..=4usize {
            if k > 0 {
                kf *= k;
            }
            assert_eq!(int(vals[k].clone()), &ff[k] * int(kf.clone()));
        }
    }

    #[test]
    fn guard() {
        assert!(class_peak_distribution(&ct(&[(1, 301)])).is_err());
        assert!(class_peak_distribution_with_limit(&ct(&[(2, 10)]), 10).is_err());
    }

    #[test]
    fn mgf_examples() {
        for s in [0.1, 1.0, 7.5] {
            let v = mgf_exact(&ct(&[(1, 9)]), s).unwrap();
            assert!((v - Dd::ONE).abs().to_f64() < 1e-30);
        }
        let near0 = mgf_exact(&ct(&[(3, 1)]), 1e-12).unwrap();
        assert!((near0.to_f64() - 1.0).abs() < 1e-12);
        let s = 3f64.sqrt() * core::f64::consts::LN_2;
        let v = mgf_exact(&ct(&[(3, 1)]), s).unwrap();
        assert!((v.to_f64() - 0.75).abs() < 1e-15);
        assert!(mgf_exact(&ct(&[(3, 1)]), -1.0).is_err());
    }

    #[test]
    fn moments_of_distribution() {
        let d = class_peak_distribution(&ct(&[(3, 1)])).unwrap();
        assert_eq!(d.mean(), int(1) / int(2));
        assert_eq!(d.variance(), int(1) / int(4));
    }

    #[test]
    fn rejects_wrong_mass() {
        let r = PeakDistribution::new(ct(&[(3, 1)]), alloc::vec![BigInt::from(1), BigInt::from(2)]);
        assert!(matches!(r, Err(Error::Inconsistent(_))));
    }
}

//! Eulerian polynomials `A_n(t) = Σ_{π ∈ S_n} t^{d(π)+1}` and peak
//! polynomials `W_n(t) = Σ_{π ∈ S_n} t^{p(π)+1}` of the full symmetric group.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_limit, Error, Result};
use crate::numbers::{binomial_row, binomial_u64, factorial, stirling2_row};
use crate::perm::{count_peaks, for_each_permutation};
use crate::poly::DensePolynomial;
use crate::series::TruncatedSeries;

pub const EULERIAN_MAX_N: u64 = 2000;
pub const PEAK_POLY_MAX_N: u64 = 500;

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Integer coefficients of `A_n(t)`, from
/// `A_n(t) = Σ_k k! S(n, k) t^k (1 - t)^{n-k}`.
pub(crate) fn eulerian_coeffs(n: usize) -> Vec<BigInt> {
    let stirling = stirling2_row(n);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    let mut k_fact = BigInt::one();
    for (k, s) in stirling.iter().enumerate() {
        if k > 0 {
            k_fact *= k;
        }
        if s.is_zero() {
            continue;
        }
        let weight = &k_fact * s;
        for (j, b) in binomial_row(n - k).into_iter().enumerate() {
            let term = &weight * b;
            if j % 2 == 0 {
                coeffs[k + j] += term;
            } else {
                coeffs[k + j] -= term;
            }
        }
    }
    coeffs
}

/// `A_n(t)` normalized so that `A_n(1) = n!` and `A_n(0) = 0`.
pub fn eulerian_polynomial(n: usize) -> Result<DensePolynomial> {
    if n == 0 {
        return Err(Error::Domain("eulerian_polynomial requires n >= 1".into()));
    }
    check_limit("eulerian n", n as u64, EULERIAN_MAX_N)?;
    Ok(DensePolynomial::from_integers(eulerian_coeffs(n)))
}

/// `A_n^{(p)}(1)` for `0 <= p <= 4` from the closed forms, including their
/// cutoffs for small `n`.
pub fn eulerian_derivative_at_one(n: u64, p: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let nf = int(factorial(n));
    let x = int(n);
    let poly = |cs: &[i64], den: i64| -> BigRational {
        let v = cs.iter().fold(BigRational::zero(), |acc, &c| acc * &x + int(c));
        v / int(den)
    };
    let value = match p {
        0 => BigRational::one(),
        1 => poly(&[1, 1], 2),
        2 if n >= 2 => poly(&[3, 1, -2], 12),
        3 if n >= 3 => poly(&[1, -2, -1, 2], 8),
        4 if n >= 4 => poly(&[15, -90, 125, 78, -152], 240),
        2..=4 => BigRational::zero(),
        _ => return Err(Error::UnsupportedOrder(p)),
    };
    Ok(nf * value)
}

/// `[t^j] (1 + t)^{-m} = (-1)^j C(m + j - 1, j)`.
fn inv_one_plus_t_pow(m: u64, order: usize) -> Vec<BigInt> {
    (0..order)
        .map(|j| {
            let c = binomial_u64(m + j as u64 - 1, j as u64);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// Coefficients of `(4t / (1+t)^2)^{j}` below `order`.
fn q_power(j: usize, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order];
    if j >= order {
        return out;
    }
    let four_j = BigInt::from(4).pow(j as u32);
    for (d, c) in inv_one_plus_t_pow(2 * j as u64, order - j).into_iter().enumerate() {
        out[j + d] = &four_j * c;
    }
    out
}

/// The right-hand side `(2/(1+t))^{n+1} A_n(t)` of the peak/descent identity,
/// as a series to order `order`.
pub fn peakgen_rhs_series(n: usize, order: usize) -> TruncatedSeries {
    let a = eulerian_coeffs(n);
    let inv = inv_one_plus_t_pow(n as u64 + 1, order);
    let two_pow = BigInt::from(2).pow(n as u32 + 1);
    let mut out = vec![BigInt::zero(); order];
    for (i, ai) in a.iter().enumerate().take(order) {
        if ai.is_zero() {
            continue;
        }
        let scaled = ai * &two_pow;
        for (j, c) in inv.iter().take(order - i).enumerate() {
            out[i + j] += &scaled * c;
        }
    }
    TruncatedSeries::from_coeffs(out.into_iter().map(int).collect(), order)
}

/// `W_n(t)`, recovered from `W_n(4t/(1+t)^2) = (2/(1+t))^{n+1} A_n(t)` by
/// triangular solving in increasing powers of `t`, with the whole residual
/// checked afterwards.
pub fn peak_polynomial_sn(n: usize) -> Result<DensePolynomial> {
    if n == 0 {
        return Err(Error::Domain("peak_polynomial_sn requires n >= 1".into()));
    }
    check_limit("peak polynomial n", n as u64, PEAK_POLY_MAX_N)?;
    let order = n + 2;
    let rhs = peakgen_rhs_series(n, order);
    let mut residual: Vec<BigInt> = rhs.coeffs().iter().map(|c| c.to_integer()).collect();
    let max_k = (n - 1) / 2;
    let mut w = vec![BigInt::zero(); max_k + 2];
    for k in 0..=max_k {
        let deg = k + 1;
        let basis = q_power(deg, order);
        let lead = &basis[deg];
        if (&residual[deg] % lead) != BigInt::zero() {
            return Err(Error::Inconsistent(format!(
                "coefficient of t^{deg} is not divisible by 4^{deg}"
            )));
        }
        let coeff = &residual[deg] / lead;
        if !coeff.is_zero() {
            for (r, b) in residual.iter_mut().zip(&basis).skip(deg) {
                *r -= &coeff * b;
            }
        }
        w[deg] = coeff;
    }
    if let Some(bad) = residual.iter().position(|c| !c.is_zero()) {
        return Err(Error::Inconsistent(format!(
            "peak generating identity leaves a nonzero residual at t^{bad}"
        )));
    }
    Ok(DensePolynomial::from_integers(w))
}

/// Mean and variance of `p(π)` from a generating polynomial
/// `Σ_π t^{p(π)+1}`.
pub fn moments_from_peak_polynomial(w: &DensePolynomial) -> Result<(BigRational, BigRational)> {
    let one = BigRational::one();
    let total = w.eval(&one);
    if total.is_zero() {
        return Err(Error::Domain("empty generating polynomial".into()));
    }
    let d1 = w.derivative().eval(&one) / &total;
    let d2 = w.nth_derivative(2).eval(&one) / &total;
    let mean = &d1 - &one;
    let variance = &d2 + &d1 - &d1 * &d1;
    Ok((mean, variance))
}

/// Exact mean and variance of the number of peaks of a uniform element of
/// `S_n`: `((n-2)/3, 2(n+1)/45)` when `n >= 4`, enumerated otherwise.
pub fn sn_peak_moments(n: u64) -> Result<(BigRational, BigRational)> {
    match n {
        0 => Err(Error::Domain("n must be at least 1".into())),
        1..=3 => {
            let mut counts = vec![0u64; n as usize];
            for_each_permutation(n as usize, |w| counts[count_peaks(w)] += 1);
            let w = DensePolynomial::from_integers(
                core::iter::once(0u64).chain(counts.iter().copied()),
            );
            moments_from_peak_polynomial(&w)
        }
        _ => Ok(sn_peak_moments_closed_form(n)),
    }
}

pub fn sn_peak_moments_closed_form(n: u64) -> (BigRational, BigRational) {
    let x = int(n);
    (
        (&x - int(2)) / int(3),
        (int(2) * (&x + int(1))) / int(45),
    )
}

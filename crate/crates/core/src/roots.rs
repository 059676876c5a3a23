//! Real-root isolation for rational polynomials with Sturm sequences and
//! exact bisection.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::DensePolynomial;

/// Remainder of `a` divided by `b` (`b` nonzero).
pub fn poly_rem(a: &DensePolynomial, b: &DensePolynomial) -> DensePolynomial {
    let db = b.degree().expect("division by the zero polynomial");
    let lead = b.leading_coeff().expect("nonzero").clone();
    let mut r: Vec<BigRational> = a.coeffs().to_vec();
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let factor = &r[top] / &lead;
        if !factor.is_zero() {
            for (j, c) in b.coeffs().iter().enumerate() {
                r[top - db + j] -= &factor * c;
            }
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    DensePolynomial::from_coeffs(r)
}

/// Canonical Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &DensePolynomial) -> Vec<DensePolynomial> {
    let mut seq = Vec::new();
    if p.is_zero() {
        return seq;
    }
    seq.push(p.clone());
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let k = seq.len();
        let r = poly_rem(&seq[k - 2], &seq[k - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[DensePolynomial], x: &BigRational) -> usize {
    variations(seq.iter().map(|p| sign(&p.eval(x))))
}

fn variations_at_neg_infinity(seq: &[DensePolynomial]) -> usize {
    variations(seq.iter().map(|p| {
        let s = sign(p.leading_coeff().expect("nonzero"));
        if p.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

fn variations_at_pos_infinity(seq: &[DensePolynomial]) -> usize {
    variations(seq.iter().map(|p| sign(p.leading_coeff().expect("nonzero"))))
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &DensePolynomial) -> usize {
    let seq = sturm_sequence(p);
    if seq.is_empty() {
        return 0;
    }
    variations_at_neg_infinity(&seq) - variations_at_pos_infinity(&seq)
}

/// Number of distinct roots of `p` in the half-open interval `(a, b]`.
pub fn count_roots_in(seq: &[DensePolynomial], a: &BigRational, b: &BigRational) -> usize {
    variations_at(seq, a).saturating_sub(variations_at(seq, b))
}

/// Cauchy bound: every root `z` satisfies `|z| < 1 + max |c_k / c_lead|`.
pub fn cauchy_bound(p: &DensePolynomial) -> BigRational {
    let lead = p.leading_coeff().expect("nonzero polynomial").abs();
    let deg = p.degree().unwrap_or(0);
    let m = p.coeffs()[..deg]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    m + BigRational::one()
}

/// Isolating intervals `(lo, hi]` of width at most `width`, one per distinct
/// real root of `p` in `(a, b]`, in increasing order.
pub fn isolate_roots_in(
    p: &DensePolynomial,
    a: &BigRational,
    b: &BigRational,
    width: &BigRational,
) -> Result<Vec<(BigRational, BigRational)>> {
    if p.is_zero() {
        return Err(Error::Domain("the zero polynomial has no isolated roots".into()));
    }
    let seq = sturm_sequence(p);
    let mut out = Vec::new();
    let mut stack = alloc::vec![(a.clone(), b.clone())];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        let c = count_roots_in(&seq, &lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 && &(&hi - &lo) <= width {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        // Upper half first so the lower half is processed first.
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    Ok(out)
}

/// Isolating intervals of width at most `width` for every distinct real root.
pub fn isolate_real_roots(
    p: &DensePolynomial,
    width: &BigRational,
) -> Result<Vec<(BigRational, BigRational)>> {
    let bound = cauchy_bound(p);
    isolate_roots_in(p, &-bound.clone(), &bound, width)
}

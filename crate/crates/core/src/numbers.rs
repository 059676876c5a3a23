//! Classical combinatorial numbers over exact integers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_limit, Result};

/// Default upper bound on `n` accepted by [`stirling2`].
pub const STIRLING_MAX_N: u64 = 10_000;

/// Stirling number of the second kind `S(n, k)`; zero when `k > n`.
pub fn stirling2(n: u64, k: u64) -> Result<BigInt> {
    stirling2_with_limit(n, k, STIRLING_MAX_N)
}

pub fn stirling2_with_limit(n: u64, k: u64, max_n: u64) -> Result<BigInt> {
    check_limit("stirling n", n, max_n)?;
    if k > n {
        return Ok(BigInt::zero());
    }
    // Row-by-row S(m, j) = j S(m-1, j) + S(m-1, j-1), keeping columns 0..=k.
    let k = k as usize;
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for m in 1..=n as usize {
        let top = m.min(k);
        for j in (1..=top).rev() {
            let prev = core::mem::take(&mut row[j]);
            row[j] = prev * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    Ok(row.swap_remove(k))
}

/// The full row `S(n, 0), ..., S(n, n)`.
pub fn stirling2_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::zero(); n + 1];
    row[0] = BigInt::one();
    for m in 1..=n {
        for j in (1..=m).rev() {
            let prev = core::mem::take(&mut row[j]);
            row[j] = prev * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row
}

/// Möbius function by trial division.
///
/// # Panics
/// If `d == 0`.
pub fn moebius(d: u64) -> i8 {
    assert!(d >= 1, "moebius is defined on positive integers");
    let mut d = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= d {
        if d % p == 0 {
            d /= p;
            if d % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `x (x-1) ... (x-k+1)` for an arbitrary integer `x`.
pub fn falling_factorial(x: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut cur = x.clone();
    for _ in 0..k {
        acc *= &cur;
        cur -= 1;
    }
    acc
}

/// Generalized binomial coefficient `C(x, k)` for any integer `x`
/// (negative `x` allowed) and `k >= 0`.
pub fn binomial(x: &BigInt, k: u64) -> BigInt {
    falling_factorial(x, k) / factorial(k)
}

pub fn binomial_u64(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Row `C(m, 0), ..., C(m, m)` of Pascal's triangle.
pub fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..m {
        c = c * (m - j) / (j + 1);
        row.push(c.clone());
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling_u(a: u64, k: u64) -> BigInt {
        falling_factorial(&BigInt::from(a), k)
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(5, 5).unwrap(), BigInt::from(1));
        assert_eq!(stirling2(5, 4).unwrap(), BigInt::from(10));
        assert_eq!(stirling2(4, 2).unwrap(), BigInt::from(7));
        assert_eq!(stirling2(3, 7).unwrap(), BigInt::zero());
        assert_eq!(stirling2(0, 0).unwrap(), BigInt::one());
        assert_eq!(stirling2(6, 0).unwrap(), BigInt::zero());
    }

    #[test]
    fn stirling_guard() {
        assert!(stirling2(10_001, 3).is_err());
        assert!(stirling2_with_limit(50, 3, 40).is_err());
    }

    #[test]
    fn stirling_row_agrees_with_single_values() {
        let row = stirling2_row(12);
        for (k, v) in row.iter().enumerate() {
            assert_eq!(*v, stirling2(12, k as u64).unwrap());
        }
    }

    #[test]
    fn powers_expand_in_falling_factorials() {
        for n in 0..=50u64 {
            let row = stirling2_row(n as usize);
            for a in 0..=10u64 {
                let sum: BigInt = row
                    .iter()
                    .enumerate()
                    .map(|(k, s)| s * falling_u(a, k as u64))
                    .sum();
                assert_eq!(sum, BigInt::from(a).pow(n as u32), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn stirling_n_minus_two_closed_form() {
        for n in 2..=50u64 {
            let expect = binomial_u64(n, 4) * 2 + binomial_u64(n + 1, 4);
            assert_eq!(stirling2(n, n - 2).unwrap(), expect, "n={n}");
        }
    }

    #[test]
    fn stirling_n_minus_three_and_four_closed_forms() {
        for n in 4..=40u64 {
            let s3 = binomial_u64(n, 6) * 6 + binomial_u64(n + 1, 6) * 8 + binomial_u64(n + 2, 6);
            assert_eq!(stirling2(n, n - 3).unwrap(), s3, "n={n}");
            let s4 = binomial_u64(n, 8) * 24
                + binomial_u64(n + 1, 8) * 58
                + binomial_u64(n + 2, 8) * 22
                + binomial_u64(n + 3, 8);
            assert_eq!(stirling2(n, n - 4).unwrap(), s4, "n={n}");
        }
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(2), -1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(97), -1);
        assert_eq!(moebius(98), 0);
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn moebius_multiplicative_on_coprime_pairs() {
        for a in 1..=1000u64 {
            for b in (1..=1000u64).step_by(7) {
                if gcd(a, b) == 1 {
                    assert_eq!(moebius(a * b), moebius(a) * moebius(b), "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial(&BigInt::from(-1), 0), BigInt::one());
        assert_eq!(binomial(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binomial(&BigInt::from(-3), 2), BigInt::from(6));
        assert_eq!(binomial(&BigInt::from(5), 7), BigInt::zero());
        assert_eq!(binomial_u64(10, 3), BigInt::from(120));
        assert_eq!(binomial_row(4), [1, 4, 6, 4, 1].map(BigInt::from).to_vec());
    }
}

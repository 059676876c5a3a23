//! Integer partitions viewed as cycle types of permutations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{check_limit, Error, Result};
use crate::numbers::factorial;

/// A partition `1^{n_1} 2^{n_2} ...` of `n`, identifying a conjugacy class of
/// `S_n`. Only parts with positive multiplicity are stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    n: usize,
    mults: BTreeMap<usize, usize>,
}

impl CycleType {
    /// Builds a cycle type from `(part, multiplicity)` pairs. Repeated parts
    /// accumulate.
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut mults = BTreeMap::new();
        let mut n = 0usize;
        for (part, mult) in pairs {
            if part == 0 {
                return Err(Error::InvalidCycleType("parts must be at least 1".into()));
            }
            if mult == 0 {
                return Err(Error::InvalidCycleType(format!(
                    "part {part} has zero multiplicity"
                )));
            }
            let add = part
                .checked_mul(mult)
                .ok_or_else(|| Error::InvalidCycleType("size overflow".into()))?;
            n = n
                .checked_add(add)
                .ok_or_else(|| Error::InvalidCycleType("size overflow".into()))?;
            *mults.entry(part).or_insert(0) += mult;
        }
        if n == 0 {
            return Err(Error::InvalidCycleType("empty partition".into()));
        }
        Ok(CycleType { n, mults })
    }

    /// From a list of cycle lengths in any order.
    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        Self::new(parts.iter().map(|&p| (p, 1)))
    }

    /// The class `1^n` of the identity.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new([(1, n)])
    }

    /// The class of `n`-cycles.
    pub fn cycle(n: usize) -> Result<Self> {
        Self::new([(n, 1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiplicity `n_i` of part `i` (zero when absent).
    pub fn mult(&self, part: usize) -> usize {
        self.mults.get(&part).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs in increasing part order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mults.iter().map(|(&p, &m)| (p, m))
    }

    /// Parts in non-increasing order, repeated by multiplicity.
    pub fn parts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.num_cycles());
        for (&p, &m) in self.mults.iter().rev() {
            out.extend(core::iter::repeat_n(p, m));
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.mults.values().sum()
    }

    pub fn fixed_points(&self) -> usize {
        self.mult(1)
    }

    /// Density of fixed points `n_1 / n`.
    pub fn alpha1(&self) -> BigRational {
        BigRational::new(self.fixed_points().into(), self.n.into())
    }

    /// `|C_λ| = n! / Π_i i^{n_i} n_i!`.
    pub fn class_size(&self) -> BigInt {
        let denom = self.iter().fold(BigInt::from(1), |acc, (i, m)| {
            acc * BigInt::from(i).pow(m as u32) * factorial(m as u64)
        });
        factorial(self.n as u64) / denom
    }
}

pub fn class_size(lambda: &CycleType) -> BigInt {
    lambda.class_size()
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (p, m)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}^{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType({self})")
    }
}

/// Default upper bound for [`partitions_of`].
pub const PARTITIONS_MAX_N: usize = 30;

/// All partitions of `n` in decreasing lexicographic order of their part
/// lists: `[n], [n-1, 1], ..., [1, ..., 1]`.
pub fn partitions_of(n: usize) -> Result<Partitions> {
    partitions_of_with_limit(n, PARTITIONS_MAX_N)
}

pub fn partitions_of_with_limit(n: usize, max_n: usize) -> Result<Partitions> {
    check_limit("partition n", n as u64, max_n as u64)?;
    if n == 0 {
        return Err(Error::Domain("partitions_of requires n >= 1".into()));
    }
    Ok(Partitions {
        next: Some(alloc::vec![n]),
    })
}

#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = CycleType;

    fn next(&mut self) -> Option<CycleType> {
        let current = self.next.take()?;
        let out = CycleType::from_parts(&current).expect("nonempty partition");
        if let Some(k) = current.iter().rposition(|&p| p > 1) {
            let mut succ = current[..=k].to_vec();
            let mut rem = current.len() - k;
            succ[k] -= 1;
            let v = succ[k];
            while rem > v {
                succ.push(v);
                rem -= v;
            }
            if rem > 0 {
                succ.push(rem);
            }
            self.next = Some(succ);
        }
        Some(out)
    }
}

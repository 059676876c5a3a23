//! Permutations in one-line notation and their peak, valley and descent
//! statistics.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::partition::CycleType;

/// A permutation of `{1, ..., n}` stored as its one-line word
/// `π(1) π(2) ... π(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn from_word(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut seen = vec![false; n + 1];
        for (pos, &v) in word.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} at position {} is outside 1..={n}",
                    pos + 1
                )));
            }
            if core::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation { word })
    }

    /// Caller guarantees `word` is a permutation of `1..=n`.
    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_word(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The longest element `n ... 2 1`.
    pub fn reversed(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `π(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn cycle_type(&self) -> CycleType {
        cycle_type_of(&self.word)
    }

    pub fn count_peaks(&self) -> usize {
        count_peaks(&self.word)
    }

    pub fn count_valleys(&self) -> usize {
        count_valleys(&self.word)
    }

    pub fn count_descents(&self) -> usize {
        count_descents(&self.word)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.word.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// Interior positions `2 <= i <= n-1` with `w(i-1) < w(i) > w(i+1)`.
pub fn count_peaks(word: &[usize]) -> usize {
    word.windows(3).filter(|w| w[0] < w[1] && w[1] > w[2]).count()
}

pub fn count_valleys(word: &[usize]) -> usize {
    word.windows(3).filter(|w| w[0] > w[1] && w[1] < w[2]).count()
}

pub fn count_descents(word: &[usize]) -> usize {
    word.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Cycle type of a one-line word over `1..=n`.
pub fn cycle_type_of(word: &[usize]) -> CycleType {
    let n = word.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = word[j] - 1;
            len += 1;
        }
        lengths.push(len);
    }
    CycleType::from_parts(&lengths).expect("nonempty word")
}

/// Rearranges `a` into the lexicographically next permutation; returns
/// `false` (leaving `a` sorted ascending) after the last one.
pub fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        a.reverse();
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| a[j] > a[i]).expect("pivot exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Calls `f` on every word of `S_n` in lexicographic order.
pub fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut f: F) {
    let mut word: Vec<usize> = (1..=n).collect();
    loop {
        f(&word);
        if !next_permutation(&mut word) {
            break;
        }
    }
}

//! Dense sets of positive integers backed by a bitmap.
//!
//! Bit `v` of the bitmap is set iff `v` is a member; bit 0 is never set.
//! The one non-trivial operation is the shifted intersection used by the
//! verifier: for a shift `a`, the members `x` with both `x` and `x + a` in
//! the set, computed one 64-bit word at a time.

use std::fmt;

use serde::{Deserialize, Serialize};

const WORD: usize = 64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("integer sets hold positive integers only (got 0)")]
pub struct ZeroElement;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntSet {
    words: Vec<u64>,
    len: usize,
}

impl IntSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// An empty set with room for elements up to `max` without reallocating.
    pub fn with_capacity(max: u32) -> Self {
        Self {
            words: Vec::with_capacity(max as usize / WORD + 1),
            len: 0,
        }
    }

    pub fn from_range(lo: u32, hi: u32) -> Result<Self, ZeroElement> {
        let mut set = Self::with_capacity(hi);
        for v in lo..=hi {
            set.insert(v)?;
        }
        Ok(set)
    }

    /// Returns `true` if `v` was newly inserted.
    pub fn insert(&mut self, v: u32) -> Result<bool, ZeroElement> {
        if v == 0 {
            return Err(ZeroElement);
        }
        let (w, b) = split(v as usize);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        Ok(fresh)
    }

    pub fn contains(&self, v: u32) -> bool {
        let (w, b) = split(v as usize);
        v != 0 && self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn min(&self) -> Option<u32> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<u32> {
        let (w, word) = self.words.iter().enumerate().rev().find(|(_, &x)| x != 0)?;
        Some((w * WORD + (WORD - 1 - word.leading_zeros() as usize)) as u32)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.words.iter().enumerate().all(|(i, &w)| {
            let o = other.words.get(i).copied().unwrap_or(0);
            w & !o == 0
        })
    }

    pub fn is_disjoint(&self, other: &IntSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & b == 0)
    }

    /// Calls `f(x)` in ascending order for every `x >= from` such that both
    /// `x` and `x + shift` are members. Stops early when `f` returns `false`.
    ///
    /// Returns `false` iff `f` asked to stop.
    pub fn for_each_shifted_match<F>(&self, shift: u32, from: u32, mut f: F) -> bool
    where
        F: FnMut(u32) -> bool,
    {
        let Some(max) = self.max() else {
            return true;
        };
        if shift >= max || from > max - shift {
            return true;
        }
        // Candidates x lie in [from, max - shift].
        let hi = (max - shift) as usize;
        let (w_lo, b_lo) = split(from as usize);
        let (w_hi, b_hi) = split(hi);
        let (offset, bit) = split(shift as usize);
        for w in w_lo..=w_hi {
            // Word of the set shifted down by `shift`: bits x..x+63 hold x+shift..
            let low = self.words.get(w + offset).copied().unwrap_or(0);
            let shifted = if bit == 0 {
                low
            } else {
                let high = self.words.get(w + offset + 1).copied().unwrap_or(0);
                (low >> bit) | (high << (WORD - bit))
            };
            let mut hits = self.words[w] & shifted;
            if w == w_lo {
                hits &= u64::MAX << b_lo;
            }
            if w == w_hi && b_hi < WORD - 1 {
                hits &= (1u64 << (b_hi + 1)) - 1;
            }
            while hits != 0 {
                let b = hits.trailing_zeros() as usize;
                hits &= hits - 1;
                if !f((w * WORD + b) as u32) {
                    return false;
                }
            }
        }
        true
    }
}

fn split(v: usize) -> (usize, usize) {
    (v / WORD, v % WORD)
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.current == 0 {
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
        let b = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some((self.index * WORD + b) as u32)
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = u32;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl TryFrom<&[u32]> for IntSet {
    type Error = ZeroElement;

    fn try_from(values: &[u32]) -> Result<Self, ZeroElement> {
        let mut set = IntSet::with_capacity(values.iter().copied().max().unwrap_or(0));
        for &v in values {
            set.insert(v)?;
        }
        Ok(set)
    }
}

impl<const N: usize> TryFrom<[u32; N]> for IntSet {
    type Error = ZeroElement;

    fn try_from(values: [u32; N]) -> Result<Self, ZeroElement> {
        IntSet::try_from(&values[..])
    }
}

impl Extend<u32> for IntSet {
    /// Zeros are skipped.
    fn extend<I: IntoIterator<Item = u32>>(&mut self, iter: I) {
        for v in iter {
            let _ = self.insert(v);
        }
    }
}

impl Serialize for IntSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<u32>::deserialize(deserializer)?;
        IntSet::try_from(values.as_slice()).map_err(serde::de::Error::custom)
    }
}

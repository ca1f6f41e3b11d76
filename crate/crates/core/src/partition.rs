use serde::{Deserialize, Serialize};

use crate::intset::IntSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("a partition needs at least one subset")]
    NoSubsets,
    #[error("partition order must be positive")]
    ZeroOrder,
    #[error("subset {index} is empty")]
    EmptySubset { index: usize },
    #[error("integer {value} appears in subsets {first} and {second}")]
    Duplicate {
        value: u32,
        first: usize,
        second: usize,
    },
    #[error("integer {value} in subset {index} exceeds the order {n}")]
    OutOfRange { value: u32, index: usize, n: u32 },
    #[error("integer {value} is not covered by any subset")]
    Missing { value: u32 },
}

/// A partition of `{1, ..., n}` into `s` labelled, non-empty subsets.
///
/// Subsets are 1-indexed in all public APIs; subset 1 carries the extra
/// seed condition, so the order of subsets is part of the value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    n: u32,
    subsets: Vec<IntSet>,
}

impl Partition {
    pub fn new(n: u32, subsets: Vec<IntSet>) -> Result<Self, PartitionError> {
        if subsets.is_empty() {
            return Err(PartitionError::NoSubsets);
        }
        if n == 0 {
            return Err(PartitionError::ZeroOrder);
        }
        // owner[v] = 1-based subset index, 0 = unseen
        let mut owner = vec![0usize; n as usize + 1];
        for (i, set) in subsets.iter().enumerate() {
            let index = i + 1;
            if set.is_empty() {
                return Err(PartitionError::EmptySubset { index });
            }
            for v in set {
                if v > n {
                    return Err(PartitionError::OutOfRange { value: v, index, n });
                }
                match owner[v as usize] {
                    0 => owner[v as usize] = index,
                    first => {
                        return Err(PartitionError::Duplicate {
                            value: v,
                            first,
                            second: index,
                        })
                    }
                }
            }
        }
        if let Some(value) = (1..=n).find(|&v| owner[v as usize] == 0) {
            return Err(PartitionError::Missing { value });
        }
        Ok(Self { n, subsets })
    }

    /// Number of subsets.
    pub fn s(&self) -> usize {
        self.subsets.len()
    }

    /// The order: the partition covers exactly `1..=n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn subsets(&self) -> &[IntSet] {
        &self.subsets
    }

    /// Subset by 1-based index.
    pub fn subset(&self, index: usize) -> Option<&IntSet> {
        index.checked_sub(1).and_then(|i| self.subsets.get(i))
    }

    /// 1-based index of the subset holding `v`.
    pub fn subset_of(&self, v: u32) -> Option<usize> {
        self.subsets
            .iter()
            .position(|s| s.contains(v))
            .map(|i| i + 1)
    }

    pub fn into_subsets(self) -> Vec<IntSet> {
        self.subsets
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u32,
            subsets: Vec<IntSet>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Partition::new(raw.n, raw.subsets).map_err(serde::de::Error::custom)
    }
}

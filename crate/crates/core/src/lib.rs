//! Weak Schur partitions: an iterative construction, an independent
//! verifier, and an exhaustive search for small weak Schur numbers.
//!
//! A partition of `{1, ..., n}` into `s` subsets is a weak Schur partition
//! when no subset contains distinct `a`, `b`, `c` with `a + b = c`. Starting
//! from a partition of order 21 into three subsets, [`constructor::iterate`]
//! produces partitions of orders 62, 185, 554, 1661, ... into 4, 5, 6, 7, ...
//! subsets, each of which [`verifier::verify`] can check.
//!
//! ```
//! use wschur::{base_partition, iterate, verify, ConditionSet};
//!
//! let chain = iterate(&base_partition(), 2).unwrap();
//! let (p5, _trace) = chain.last().unwrap();
//! assert_eq!(p5.n(), 185);
//! assert!(verify(p5, ConditionSet::ALL).is_empty());
//! ```

pub mod bound;
pub mod constructor;
pub mod format;
pub mod intset;
pub mod partition;
pub mod report;
pub mod search;
pub mod verifier;

pub use bound::{bound, bound_by_recurrence, bound_table, BoundError, BoundSequence, OrderInt};
pub use constructor::{
    base_partition, construct_step, iterate, step_hazards, validate_seed, ConstructError,
    ConstructionTrace,
};
pub use format::{parse_partition, serialize_partition, ParseError, FORMAT_VERSION};
pub use intset::IntSet;
pub use partition::{Partition, PartitionError};
pub use report::{Condition, ConditionSet, Violation, ViolationKind, ViolationReport};
pub use search::{compute_ws, decide, find_seeds, SearchMode, SearchResult, SeedSearch};
pub use verifier::{
    condition2_violations, condition3_violations, is_strongly_sum_free, is_weakly_sum_free,
    strong_violations, verify, verify_first, weak_violations, weak_violations_naive,
};

/// Exact orders; never overflow.
pub type BigOrder = num_bigint::BigUint;
/// Checked 64-bit orders; exact up to `s = 40`.
pub type Order64 = u64;
pub type BigBoundSequence = BoundSequence<BigOrder>;
pub type BoundSequence64 = BoundSequence<Order64>;

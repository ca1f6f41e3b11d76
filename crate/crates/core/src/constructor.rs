//! The iterative construction: from a partition of `1..=m` into `s` subsets
//! satisfying the three seed conditions, build one of `1..=3m-1` into `s + 1`
//! subsets that satisfies them again.
//!
//! With `r(a) = 3m + 4 - a` (the reflection):
//!
//! * subset 1 gains `m + 2`, `2m + 2` and `r(a)` for each `a > 4` in it;
//! * subset `i` for `2 <= i <= s` gains `r(a)` for each `a > 4` in it;
//! * the new subset `s + 1` is `{m + 1} ∪ {m + 3, ..., 2m + 1} ∪ {2m + 3}`.
//!
//! The reflection maps `5..=m` onto `2m + 4..=3m - 1`, so together with the
//! new subset and the two injected values every integer up to `3m - 1` is
//! placed exactly once.

use serde::Serialize;

use crate::intset::IntSet;
use crate::partition::Partition;
use crate::report::{ConditionSet, Violation, ViolationKind, ViolationReport};
use crate::verifier::{verify, DOUBLE_EXEMPT_MAX};

/// Smallest order a construction step accepts: below it `2m + 3 > 3m - 1`.
pub const MIN_SEED_ORDER: u32 = 4;

/// Where every new element of one construction step came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub input_order: u32,
    pub output_order: u32,
    /// `[m + 2, 2m + 2]`, both placed in subset 1.
    pub injected: [u32; 2],
    /// For subset `i` (index `i - 1`), the reflected values added, ascending.
    pub reflected_per_subset: Vec<Vec<u32>>,
    pub new_subset: IntSet,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructError {
    #[error("seed does not satisfy the construction precondition: {0}")]
    Precondition(Violation),
    #[error("seed order {0} is below the minimum of {MIN_SEED_ORDER}")]
    OrderTooSmall(u32),
    #[error("order {0} overflows the element type")]
    Overflow(u32),
    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<ConstructError>,
    },
    #[error("step {step}: output fails re-validation: {violation}")]
    Revalidation { step: usize, violation: Violation },
}

/// The order-21 partition into three subsets that starts the chain:
/// `{1, 2, 4, 8, 18}`, `{3, 5, 6, 7, 19, 20, 21}`, `{9, ..., 17}`.
pub fn base_partition() -> Partition {
    let s1 = IntSet::try_from([1, 2, 4, 8, 18]).unwrap();
    let s2 = IntSet::try_from([3, 5, 6, 7, 19, 20, 21]).unwrap();
    let s3 = IntSet::from_range(9, 17).unwrap();
    Partition::new(21, vec![s1, s2, s3]).expect("base partition is well formed")
}

fn check_precondition(p: &Partition) -> Result<(), ConstructError> {
    if p.n() < MIN_SEED_ORDER {
        return Err(ConstructError::OrderTooSmall(p.n()));
    }
    // 3m + 4 must fit
    if p.n() > (u32::MAX - 4) / 3 {
        return Err(ConstructError::Overflow(p.n()));
    }
    let report = verify(p, ConditionSet::ALL);
    match report.violations.into_iter().next() {
        Some(v) => Err(ConstructError::Precondition(v)),
        None => Ok(()),
    }
}

/// One construction step. `p` must satisfy all three seed conditions.
pub fn construct_step(p: &Partition) -> Result<(Partition, ConstructionTrace), ConstructError> {
    check_precondition(p)?;
    Ok(apply_step(p))
}

fn apply_step(p: &Partition) -> (Partition, ConstructionTrace) {
    let m = p.n();
    let output_order = 3 * m - 1;
    let mirror = 3 * m + 4;
    let injected = [m + 2, 2 * m + 2];

    let mut subsets = Vec::with_capacity(p.s() + 1);
    let mut reflected_per_subset = Vec::with_capacity(p.s());
    for (i, set) in p.subsets().iter().enumerate() {
        let mut grown = IntSet::with_capacity(output_order);
        grown.extend(set.iter());
        if i == 0 {
            grown.extend(injected);
        }
        let mut reflected: Vec<u32> = set
            .iter()
            .filter(|&a| a > DOUBLE_EXEMPT_MAX)
            .map(|a| mirror - a)
            .collect();
        reflected.reverse();
        grown.extend(reflected.iter().copied());
        subsets.push(grown);
        reflected_per_subset.push(reflected);
    }

    let mut new_subset = IntSet::with_capacity(2 * m + 3);
    new_subset.extend([m + 1, 2 * m + 3]);
    new_subset.extend(m + 3..=2 * m + 1);
    subsets.push(new_subset.clone());

    let next = Partition::new(output_order, subsets)
        .expect("a construction step from a seed of order >= 4 is a partition of 1..=3m-1");
    let trace = ConstructionTrace {
        input_order: m,
        output_order,
        injected,
        reflected_per_subset,
        new_subset,
    };
    (next, trace)
}

/// Applies `steps` construction steps starting from `seed`, re-verifying all
/// three conditions on every output before it is used again.
pub fn iterate(
    seed: &Partition,
    steps: usize,
) -> Result<Vec<(Partition, ConstructionTrace)>, ConstructError> {
    let mut chain: Vec<(Partition, ConstructionTrace)> = Vec::with_capacity(steps);
    for step in 1..=steps {
        let current = chain.last().map_or(seed, |(p, _)| p);
        let (next, trace) = if step == 1 {
            construct_step(current).map_err(|e| ConstructError::AtStep {
                step,
                source: Box::new(e),
            })?
        } else {
            // `current` was verified at the end of the previous step
            if current.n() > (u32::MAX - 4) / 3 {
                return Err(ConstructError::AtStep {
                    step,
                    source: Box::new(ConstructError::Overflow(current.n())),
                });
            }
            apply_step(current)
        };
        let report = verify(&next, ConditionSet::ALL);
        if let Some(violation) = report.violations.into_iter().next() {
            return Err(ConstructError::Revalidation { step, violation });
        }
        chain.push((next, trace));
    }
    Ok(chain)
}

/// Checks whether `p` can start the construction: all three conditions, an
/// order of at least 4, and an advisory `seed-advisory` entry when 5 is in
/// subset 1. With 5 in subset 1 a single step is still valid, but the step
/// reflects 5 to `3m - 1`, the new order, inside subset 1, so the output
/// fails the membership half of condition 3.
pub fn validate_seed(p: &Partition) -> ViolationReport {
    let mut report = verify(p, ConditionSet::ALL);
    if p.n() < MIN_SEED_ORDER {
        report
            .violations
            .push(Violation::new(ViolationKind::OrderTooSmall, None, &[p.n()]));
    }
    let smallest_reflected = DOUBLE_EXEMPT_MAX + 1;
    if p.subsets()[0].contains(smallest_reflected) {
        report.violations.push(Violation::new(
            ViolationKind::SeedAdvisory,
            Some(1),
            &[smallest_reflected],
        ));
    }
    report
}

/// Seed patterns allowed by the three conditions that still make the output
/// of one construction step fail them:
///
/// * `half-injection`: `a = (n + 2) / 2 > 4` in subset 1. The step injects
///   `2a` and `2n + 2` and reflects `a` to `3n + 4 - a = a + (2n + 2)`.
/// * `difference-three`: `b > 4` and `b - 3` in subset 1, or `b = n + 2` and
///   `n - 1` in subset 1. The reflected or injected partner of `b` plus
///   `b - 3` is `3n + 1`, the next `n + 2`.
///
/// With neither pattern, no seed advisory and the three conditions, the
/// step output satisfies the three conditions again.
pub fn step_hazards(p: &Partition) -> Vec<Violation> {
    let n = p.n();
    let first = &p.subsets()[0];
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        let half = n / 2 + 1;
        if half > DOUBLE_EXEMPT_MAX && first.contains(half) {
            out.push(Violation::new(
                ViolationKind::HalfInjection,
                Some(1),
                &[half, n + 2],
            ));
        }
    }
    let injected = n + 2;
    for b in first
        .iter()
        .chain([injected])
        .filter(|&b| b > DOUBLE_EXEMPT_MAX)
    {
        if first.contains(b - 3) {
            out.push(Violation::new(
                ViolationKind::DifferenceThree,
                Some(1),
                &[b - 3, b],
            ));
        }
    }
    out
}

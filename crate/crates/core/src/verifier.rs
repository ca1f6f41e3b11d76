//! Sum-freeness checks and the inductive seed conditions.
//!
//! The fast enumerators walk each element `a` once and intersect the set with
//! itself shifted down by `a`, a word at a time, so a subset of `1..=n` costs
//! `O(|S| * n / 64)`. [`weak_violations_naive`] is the quadratic reference
//! they are tested against.

use rayon::prelude::*;

use crate::intset::IntSet;
use crate::partition::Partition;
use crate::report::{Condition, ConditionSet, Violation, ViolationKind, ViolationReport};

/// Smallest `a` for which the pair `a, 2a` is forbidden in one subset.
pub const DOUBLE_EXEMPT_MAX: u32 = 4;

/// Sizes above which per-subset work is spread over the rayon pool.
const PARALLEL_MIN_ORDER: u32 = 4096;

/// Visits every `(a, b)` with `a < b` (or `a <= b` when `strong`) and
/// `a, b, a + b` all in `set`. Returns `false` iff `f` stopped the walk.
fn for_each_sum<F>(set: &IntSet, strong: bool, mut f: F) -> bool
where
    F: FnMut(u32, u32) -> bool,
{
    let Some(max) = set.max() else {
        return true;
    };
    for a in set {
        let from = if strong { a } else { a + 1 };
        // a + from > max: no partner left for a or anything above it
        if a > max.saturating_sub(from) {
            break;
        }
        if !set.for_each_shifted_match(a, from, |b| f(a, b)) {
            return false;
        }
    }
    true
}

fn collect_sums(
    set: &IntSet,
    strong: bool,
    kind: ViolationKind,
    index: Option<usize>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for_each_sum(set, strong, |a, b| {
        out.push(Violation::sum(kind, index, a, b));
        true
    });
    out
}

fn first_sum(
    set: &IntSet,
    strong: bool,
    kind: ViolationKind,
    index: Option<usize>,
) -> Option<Violation> {
    let mut found = None;
    for_each_sum(set, strong, |a, b| {
        found = Some(Violation::sum(kind, index, a, b));
        false
    });
    found
}

/// Every `a < b` with `a + b` in the set. Empty iff the set is weakly sum-free.
pub fn weak_violations(set: &IntSet) -> Vec<Violation> {
    collect_sums(set, false, ViolationKind::WeakSum, None)
}

/// Every `a <= b` with `a + b` in the set. Empty iff the set is strongly sum-free.
pub fn strong_violations(set: &IntSet) -> Vec<Violation> {
    collect_sums(set, true, ViolationKind::StrongSum, None)
}

pub fn is_weakly_sum_free(set: &IntSet) -> bool {
    first_sum(set, false, ViolationKind::WeakSum, None).is_none()
}

pub fn is_strongly_sum_free(set: &IntSet) -> bool {
    first_sum(set, true, ViolationKind::StrongSum, None).is_none()
}

/// Reference enumeration of weak violations: every pair of members, looked
/// up in a plain membership table. Same output as [`weak_violations`].
pub fn weak_violations_naive(set: &IntSet) -> Vec<Violation> {
    let elements: Vec<u32> = set.iter().collect();
    let max = elements.last().copied().unwrap_or(0) as usize;
    let mut member = vec![false; max + 1];
    for &v in &elements {
        member[v as usize] = true;
    }
    let mut out = Vec::new();
    for (i, &a) in elements.iter().enumerate() {
        for &b in &elements[i + 1..] {
            if member.get((a + b) as usize).copied().unwrap_or(false) {
                out.push(Violation::new(ViolationKind::WeakSum, None, &[a, b, a + b]));
            }
        }
    }
    out
}

fn doubles(set: &IntSet, index: usize, first_only: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    for a in set.iter().filter(|&a| a > DOUBLE_EXEMPT_MAX) {
        let Some(double) = a.checked_mul(2) else {
            break;
        };
        if set.contains(double) {
            out.push(Violation::new(
                ViolationKind::DoubleElement,
                Some(index),
                &[a, double],
            ));
            if first_only {
                break;
            }
        }
    }
    out
}

/// Condition 2: every `(a, 2a)` with `a > 4` sharing a subset.
pub fn condition2_violations(p: &Partition) -> Vec<Violation> {
    p.subsets()
        .iter()
        .enumerate()
        .flat_map(|(i, set)| doubles(set, i + 1, false))
        .collect()
}

fn condition3(n: u32, first: &IntSet, first_only: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    if first.contains(n) {
        out.push(Violation::new(
            ViolationKind::Condition3Membership,
            Some(1),
            &[n],
        ));
        if first_only {
            return out;
        }
    }
    let mut extended = first.clone();
    extended.insert(n + 2).expect("n + 2 is positive");
    if first_only {
        out.extend(first_sum(
            &extended,
            false,
            ViolationKind::Condition3Sumfree,
            Some(1),
        ));
    } else {
        out.extend(collect_sums(
            &extended,
            false,
            ViolationKind::Condition3Sumfree,
            Some(1),
        ));
    }
    out
}

/// Condition 3: subset 1 together with `n + 2` is weakly sum-free, and `n` is
/// not in subset 1. Every weak triple of the extended subset is reported.
pub fn condition3_violations(p: &Partition) -> Vec<Violation> {
    condition3(p.n(), &p.subsets()[0], false)
}

/// Structural checks on raw subsets: disjoint, non-empty, covering exactly `1..=n`.
pub fn well_formed_violations(n: u32, subsets: &[IntSet]) -> Vec<Violation> {
    let mut out = Vec::new();
    if subsets.is_empty() || n == 0 {
        out.push(Violation::new(ViolationKind::NotAPartition, None, &[]));
        return out;
    }
    let mut seen = IntSet::with_capacity(n);
    for (i, set) in subsets.iter().enumerate() {
        if set.is_empty() {
            out.push(Violation::new(ViolationKind::EmptySubset, Some(i + 1), &[]));
        }
        for v in set {
            // duplicates and out-of-range values
            if v > n || !seen.insert(v).expect("members are positive") {
                out.push(Violation::new(
                    ViolationKind::NotAPartition,
                    Some(i + 1),
                    &[v],
                ));
            }
        }
    }
    out.extend(
        (1..=n)
            .filter(|&v| !seen.contains(v))
            .map(|v| Violation::new(ViolationKind::NotAPartition, None, &[v])),
    );
    out
}

fn weak_per_subset(subsets: &[IntSet], n: u32, first_only: bool) -> Vec<Violation> {
    let check = |(i, set): (usize, &IntSet)| {
        if first_only {
            first_sum(set, false, ViolationKind::WeakSum, Some(i + 1))
                .into_iter()
                .collect()
        } else {
            collect_sums(set, false, ViolationKind::WeakSum, Some(i + 1))
        }
    };
    let per_subset: Vec<Vec<Violation>> = if n >= PARALLEL_MIN_ORDER {
        subsets.par_iter().enumerate().map(check).collect()
    } else {
        subsets.iter().enumerate().map(check).collect()
    };
    per_subset.into_iter().flatten().collect()
}

fn run(n: u32, subsets: &[IntSet], which: ConditionSet, first_only: bool) -> ViolationReport {
    let mut report = ViolationReport::default();
    let done = |r: &ViolationReport| first_only && !r.violations.is_empty();

    // Well-formedness always gates the other checks.
    report.checked_conditions.insert(Condition::WellFormed);
    report.violations = well_formed_violations(n, subsets);
    if !report.violations.is_empty() {
        report
            .skipped_conditions
            .extend(which.conditions().filter(|&c| c != Condition::WellFormed));
        if first_only {
            report.violations.truncate(1);
        }
        report.sort();
        return report;
    }
    if which.weak_sum_free {
        report.checked_conditions.insert(Condition::WeakSumFree);
        report
            .violations
            .extend(weak_per_subset(subsets, n, first_only));
    }
    if which.no_double && !done(&report) {
        report.checked_conditions.insert(Condition::NoDouble);
        for (i, set) in subsets.iter().enumerate() {
            report.violations.extend(doubles(set, i + 1, first_only));
            if done(&report) {
                break;
            }
        }
    }
    if which.seed_extension && !done(&report) {
        report.checked_conditions.insert(Condition::SeedExtension);
        report
            .violations
            .extend(condition3(n, &subsets[0], first_only));
    }
    if first_only {
        report.violations.truncate(1);
    }
    report.sort();
    report
}

/// Checks `p` against the selected conditions. The report is empty iff every
/// selected condition holds.
pub fn verify(p: &Partition, which: ConditionSet) -> ViolationReport {
    run(p.n(), p.subsets(), which, false)
}

/// Like [`verify`] but stops at the first violation found.
pub fn verify_first(p: &Partition, which: ConditionSet) -> ViolationReport {
    run(p.n(), p.subsets(), which, true)
}

/// Verifies subsets that have not been assembled into a [`Partition`];
/// structural problems become `not-a-partition` / `empty-subset` violations.
pub fn verify_subsets(n: u32, subsets: &[IntSet], which: ConditionSet) -> ViolationReport {
    run(n, subsets, which, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> IntSet {
        IntSet::try_from(v).unwrap()
    }

    fn triples(v: &[Violation]) -> Vec<Vec<u32>> {
        v.iter().map(|x| x.witness.to_vec()).collect()
    }

    fn p3_21() -> Partition {
        Partition::new(
            21,
            vec![
                set(&[1, 2, 4, 8, 18]),
                set(&[3, 5, 6, 7, 19, 20, 21]),
                IntSet::from_range(9, 17).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn weak_examples() {
        assert_eq!(
            triples(&weak_violations(&set(&[1, 2, 3]))),
            vec![vec![1, 2, 3]]
        );
        assert!(weak_violations(&IntSet::from_range(9, 17).unwrap()).is_empty());
        assert!(weak_violations(&set(&[1, 2, 4, 8, 18, 23])).is_empty());
        assert!(weak_violations(&IntSet::new()).is_empty());
        assert!(weak_violations(&set(&[5])).is_empty());
        // a + a = 2a is allowed
        assert!(weak_violations(&set(&[2, 4])).is_empty());
    }

    #[test]
    fn naive_examples() {
        assert_eq!(
            triples(&weak_violations_naive(&set(&[1, 2, 3]))),
            vec![vec![1, 2, 3]]
        );
        assert!(weak_violations_naive(&IntSet::from_range(9, 17).unwrap()).is_empty());
        assert!(weak_violations_naive(&set(&[1, 2, 4, 8, 18, 23])).is_empty());
        assert!(weak_violations_naive(&IntSet::new()).is_empty());
        assert!(weak_violations_naive(&set(&[5])).is_empty());
    }

    #[test]
    fn strong_examples() {
        assert_eq!(
            triples(&strong_violations(&set(&[1, 2]))),
            vec![vec![1, 1, 2]]
        );
        assert!(strong_violations(&IntSet::from_range(9, 17).unwrap()).is_empty());
        // 10 is the smallest set of consecutive integers starting at 9 that fails
        assert_eq!(
            triples(&strong_violations(&IntSet::from_range(9, 18).unwrap())),
            vec![vec![9, 9, 18]]
        );
    }

    #[test]
    fn strong_new_subset_of_first_step() {
        let mut s = set(&[22, 45]);
        s.extend(24..=43);
        // brute force over all pairs
        let members: Vec<u32> = s.iter().collect();
        let brute = members
            .iter()
            .flat_map(|&a| members.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a <= b && s.contains(a + b))
            .count();
        assert_eq!(brute, 0);
        assert!(strong_violations(&s).is_empty());
    }

    #[test]
    fn condition2_examples() {
        assert!(condition2_violations(&p3_21()).is_empty());
        let p = Partition::new(10, vec![set(&[5, 10]), set(&[1, 2, 3, 4, 6, 7, 8, 9])]).unwrap();
        let v = condition2_violations(&p);
        assert_eq!(triples(&v), vec![vec![5, 10]]);
        assert_eq!(v[0].subset_index, Some(1));
        let p = Partition::new(8, vec![set(&[4, 8]), set(&[1, 2, 3, 5, 6, 7])]).unwrap();
        assert!(condition2_violations(&p).is_empty());
    }

    #[test]
    fn condition3_examples() {
        assert!(condition3_violations(&p3_21()).is_empty());
        let p = Partition::new(3, vec![set(&[1, 2, 3])]).unwrap();
        let kinds: Vec<_> = condition3_violations(&p).iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::Condition3Membership));
        // S1 = {2, 5}, n = 5: 5 in S1 and 2 + 5 = 7 = n + 2
        let p = Partition::new(5, vec![set(&[2, 5]), set(&[1, 3, 4])]).unwrap();
        let v = condition3_violations(&p);
        assert_eq!(v.len(), 2);
        assert!(v
            .iter()
            .any(|x| x.kind == ViolationKind::Condition3Membership && x.witness[..] == [5]));
        assert!(v
            .iter()
            .any(|x| x.kind == ViolationKind::Condition3Sumfree && x.witness[..] == [2, 5, 7]));
    }

    #[test]
    fn base_partition_passes_everything() {
        let r = verify(&p3_21(), ConditionSet::ALL);
        assert!(r.is_empty(), "{r}");
        assert_eq!(r.checked_conditions.len(), 4);
    }

    #[test]
    fn malformed_skips_conditions() {
        let r = verify_subsets(4, &[set(&[1, 2, 3]), set(&[3])], ConditionSet::ALL);
        assert!(r.checked_conditions.contains(&Condition::WellFormed));
        assert!(!r.checked_conditions.contains(&Condition::WeakSumFree));
        assert!(r.skipped_conditions.contains(&Condition::WeakSumFree));
        let kinds: Vec<_> = r.violations.iter().map(|v| v.kind).collect();
        assert!(kinds.iter().all(|&k| k == ViolationKind::NotAPartition));
        // duplicate 3 and missing 4
        assert_eq!(r.violations.len(), 2);
        let r = verify_subsets(2, &[set(&[1, 2]), IntSet::new()], ConditionSet::WEAK);
        assert_eq!(r.violations[0].kind, ViolationKind::EmptySubset);
    }

    #[test]
    fn first_only_matches_emptiness() {
        let p = Partition::new(6, vec![set(&[1, 2, 3, 4, 5, 6])]).unwrap();
        let full = verify(&p, ConditionSet::ALL);
        let first = verify_first(&p, ConditionSet::ALL);
        assert!(full.violations.len() > 1);
        assert_eq!(first.violations.len(), 1);
        assert!(verify_first(&p3_21(), ConditionSet::ALL).is_empty());
    }

    #[test]
    fn report_is_sorted_by_subset_then_c_then_a() {
        let p = Partition::new(7, vec![set(&[1, 2, 3, 4, 5, 6, 7])]).unwrap();
        let r = verify(&p, ConditionSet::WEAK);
        let keys: Vec<(u32, u32)> = r
            .violations
            .iter()
            .map(|v| (v.witness[2], v.witness[0]))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(r.violations.len(), 9);
    }
}

use std::collections::BTreeSet;

use wschur::bound::next_order;
use wschur::search::DEFAULT_BUDGET;
use wschur::{
    base_partition, bound, construct_step, find_seeds, iterate, parse_partition, step_hazards,
    strong_violations, validate_seed, verify, ConditionSet, ConstructError, IntSet, Partition,
    ViolationKind,
};

#[test]
fn chain_to_twelve_subsets_satisfies_every_condition() {
    let seed = base_partition();
    let chain = iterate(&seed, 9).unwrap();
    let orders: Vec<u32> = chain.iter().map(|(p, _)| p.n()).collect();
    assert_eq!(
        orders,
        vec![62, 185, 554, 1661, 4982, 14945, 44834, 134501, 403502]
    );

    let mut previous = &seed;
    for (k, (p, trace)) in chain.iter().enumerate() {
        let m = previous.n();
        assert_eq!(p.n(), 3 * m - 1);
        assert_eq!(p.s(), previous.s() + 1);
        assert!(verify(p, ConditionSet::ALL).is_empty(), "step {}", k + 1);
        assert_eq!(bound::<u64>(p.s() as u32).unwrap(), u64::from(p.n()));

        // injected values sit in subset 1
        assert_eq!(trace.injected, [m + 2, 2 * m + 2]);
        assert!(trace.injected.iter().all(|&v| p.subsets()[0].contains(v)));

        // subsets only grow
        for (old, new) in previous.subsets().iter().zip(p.subsets()) {
            assert!(old.is_subset(new));
        }

        // reflections of 5..=m are exactly 2m+4..=3m-1, each in one subset
        let reflected: Vec<u32> = trace
            .reflected_per_subset
            .iter()
            .flatten()
            .copied()
            .collect();
        let unique: BTreeSet<u32> = reflected.iter().copied().collect();
        assert_eq!(reflected.len(), unique.len());
        assert_eq!(unique, (2 * m + 4..=3 * m - 1).collect());
        for (i, values) in trace.reflected_per_subset.iter().enumerate() {
            for &r in values {
                assert!(previous.subsets()[i].contains(3 * m + 4 - r));
                assert_eq!(p.subset_of(r), Some(i + 1));
            }
        }

        // new subset is strongly sum-free and is the last subset
        assert!(strong_violations(&trace.new_subset).is_empty());
        assert_eq!(p.subsets().last().unwrap(), &trace.new_subset);

        // 3m - 1 lands with 5, i.e. in subset 2 along the base chain
        assert_eq!(p.subset_of(3 * m - 1), Some(2));

        previous = p;
    }
}

#[test]
fn closed_form_matches_step_arithmetic_past_the_materialised_chain() {
    // Partitions past s = 12 are too large to build here; the orders a step
    // produces are still 3m - 1, so compare against that map.
    let mut m = 21u64;
    for s in 3..=20u32 {
        assert_eq!(bound::<u64>(s).unwrap(), m, "s = {s}");
        m = next_order(&m).unwrap();
    }
}

#[test]
fn iterate_reports_the_failing_step() {
    let bad = Partition::new(3, vec![IntSet::try_from([1, 2, 3]).unwrap()]).unwrap();
    match iterate(&bad, 2) {
        Err(ConstructError::AtStep { step: 1, .. }) => {}
        other => panic!("unexpected {other:?}"),
    }
}

/// Every 3-colouring of `1..=n` as a partition, skipping ones with an empty colour.
fn all_three_partitions(n: u32) -> impl Iterator<Item = Partition> {
    (0..3u32.pow(n)).filter_map(move |mut code| {
        let mut subsets = vec![IntSet::new(); 3];
        for v in 1..=n {
            subsets[(code % 3) as usize].insert(v).unwrap();
            code /= 3;
        }
        Partition::new(n, subsets).ok()
    })
}

/// Seeds with 5 in subset 1: one step works, the output is no longer a seed.
#[test]
fn advisory_seeds_break_after_one_step() {
    let mut checked = 0;
    for n in 5..=9 {
        for p in all_three_partitions(n) {
            let report = validate_seed(&p);
            if report.is_empty() || !report.is_clean_except_advisory() {
                continue;
            }
            assert!(p.subsets()[0].contains(5));
            assert!(report
                .violations
                .iter()
                .all(|v| v.kind == ViolationKind::SeedAdvisory));
            let (next, _) = construct_step(&p).unwrap();
            let after = verify(&next, ConditionSet::ALL);
            assert!(after
                .violations
                .iter()
                .any(|v| v.kind == ViolationKind::Condition3Membership && v.witness[..] == [next.n()]));
            assert!(matches!(
                iterate(&p, 2),
                Err(ConstructError::Revalidation { step: 1, .. })
            ));
            checked += 1;
        }
    }
    assert!(checked > 0);
}

/// Seeds satisfying all three conditions survive a step exactly when they
/// carry none of the hazard patterns.
#[test]
fn searched_seeds_survive_a_step_iff_hazard_free() {
    let mut failures = 0;
    for s in 2..=3usize {
        for n in 4..=23u32 {
            let r = find_seeds(s, n, 10_000, DEFAULT_BUDGET).unwrap();
            assert!(r.complete);
            assert_eq!(r.rejected_by_verifier, 0);
            for seed in &r.seeds {
                let (next, _) = construct_step(seed).unwrap();
                assert_eq!(next.n(), 3 * n - 1);
                let passes = verify(&next, ConditionSet::ALL).is_empty();
                assert_eq!(passes, step_hazards(seed).is_empty(), "{seed:?}");
                failures += usize::from(!passes);
            }
        }
    }
    assert!(failures > 0);
}

#[test]
fn base_chain_is_hazard_free() {
    assert!(step_hazards(&base_partition()).is_empty());
    for (p, _) in iterate(&base_partition(), 6).unwrap() {
        assert!(step_hazards(&p).is_empty(), "order {}", p.n());
    }
}

#[test]
fn hazard_counterexamples() {
    let parse = |t: &str| parse_partition(t).unwrap();
    // (m + 2) / 2 = 11 in subset 1
    let half =
        parse("wsp 1\ns=3 n=20\n1: 1 2 4 8 11\n2: 3 5 6 7 18 19 20\n3: 9 10 12 13 14 15 16 17\n");
    assert!(validate_seed(&half).is_empty());
    let hz = step_hazards(&half);
    // 8 = 11 - 3 as well
    let hz: Vec<_> = hz.iter().map(|v| (v.kind, v.witness.to_vec())).collect();
    assert_eq!(
        hz,
        vec![
            (ViolationKind::HalfInjection, vec![11, 22]),
            (ViolationKind::DifferenceThree, vec![8, 11])
        ]
    );
    let (next, _) = construct_step(&half).unwrap();
    let report = verify(&next, ConditionSet::ALL);
    assert!(report
        .violations
        .iter()
        .any(|v| v.kind == ViolationKind::WeakSum && v.witness[..] == [11, 42, 53]));
    assert!(report
        .violations
        .iter()
        .any(|v| v.kind == ViolationKind::DoubleElement && v.witness[..] == [11, 22]));

    // 4 = 7 - 3 in subset 1
    let diff =
        parse("wsp 1\ns=3 n=19\n1: 1 2 4 7 10 16\n2: 3 5 6 17 18 19\n3: 8 9 11 12 13 14 15\n");
    assert!(validate_seed(&diff).is_empty());
    assert!(step_hazards(&diff)
        .iter()
        .all(|v| v.kind == ViolationKind::DifferenceThree));
    let (next, _) = construct_step(&diff).unwrap();
    let report = verify(&next, ConditionSet::ALL);
    assert!(report
        .violations
        .iter()
        .all(|v| v.kind == ViolationKind::Condition3Sumfree));
    assert!(report.violations.iter().any(|v| v.witness[..] == [4, 54, 58]));
}

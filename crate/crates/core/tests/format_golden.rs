use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use wschur::{base_partition, iterate, parse_partition, serialize_partition, IntSet, Partition};

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn base_partition_golden() {
    let text = data("p3_21.wsp");
    let p = parse_partition(&text).unwrap();
    assert_eq!(p, base_partition());
    assert_eq!(serialize_partition(&p), text);
    assert!(text.contains("\n2: 3 5 6 7 19 20 21\n"));
}

#[test]
fn first_step_golden() {
    let (p4, _) = iterate(&base_partition(), 1).unwrap().remove(0);
    assert_eq!(serialize_partition(&p4), data("p4_62.wsp"));
}

#[test]
fn every_golden_file_round_trips() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "wsp") {
            let text = fs::read_to_string(&path).unwrap();
            let p = parse_partition(&text).unwrap();
            let canonical = serialize_partition(&p);
            assert_eq!(
                parse_partition(&canonical).unwrap(),
                p,
                "{}",
                path.display()
            );
            // canonical form is a fixed point
            assert_eq!(
                serialize_partition(&parse_partition(&canonical).unwrap()),
                canonical
            );
            seen += 1;
        }
    }
    assert!(seen >= 4);
}

#[test]
fn comments_are_dropped_on_serialize() {
    let text = data("p2_8_commented.wsp");
    let out = serialize_partition(&parse_partition(&text).unwrap());
    assert_eq!(out, "wsp 1\ns=2 n=8\n1: 1 2 4 8\n2: 3 5 6 7\n");
}

#[test]
fn seven_subset_chain_round_trips_bytewise() {
    let chain = iterate(&base_partition(), 4).unwrap();
    let p7 = &chain[3].0;
    assert_eq!(p7.n(), 1661);
    let text = serialize_partition(p7);
    let again = serialize_partition(&parse_partition(&text).unwrap());
    assert_eq!(text, again);
}

/// Random partitions of `1..=n`: each integer gets a colour, empty colours dropped.
fn arb_partition() -> impl Strategy<Value = Partition> {
    (1u32..300, 1usize..8).prop_flat_map(|(n, s)| {
        proptest::collection::vec(0..s, n as usize).prop_map(move |colours| {
            let mut subsets = vec![IntSet::new(); s];
            for (v, c) in colours.into_iter().enumerate() {
                subsets[c].insert(v as u32 + 1).unwrap();
            }
            subsets.retain(|x| !x.is_empty());
            Partition::new(n, subsets).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn parse_inverts_serialize(p in arb_partition()) {
        let text = serialize_partition(&p);
        prop_assert_eq!(parse_partition(&text).unwrap(), p);
    }
}

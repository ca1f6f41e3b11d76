//! Text and JSON layouts shared by the subcommands.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wschur::bound::literature_for;
use wschur::{BoundSequence, ConstructionTrace, IntSet, SearchMode, SearchResult};

/// A JSON number when the order fits in `u64`, otherwise its decimal string.
pub fn order_json(order: &BigUint) -> Value {
    match order.to_u64() {
        Some(v) => json!(v),
        None => json!(order.to_string()),
    }
}

/// Ascending values with runs of three or more written `lo-hi`.
pub fn compress<I: IntoIterator<Item = u32>>(values: I) -> String {
    let mut parts = Vec::new();
    let mut run: Option<(u32, u32)> = None;
    let flush = |parts: &mut Vec<String>, (lo, hi): (u32, u32)| match hi - lo {
        0 => parts.push(lo.to_string()),
        1 => {
            parts.push(lo.to_string());
            parts.push(hi.to_string());
        }
        _ => parts.push(format!("{lo}-{hi}")),
    };
    for v in values {
        run = match run {
            Some((lo, hi)) if v == hi + 1 => Some((lo, v)),
            Some(r) => {
                flush(&mut parts, r);
                Some((v, v))
            }
            None => Some((v, v)),
        };
    }
    if let Some(r) = run {
        flush(&mut parts, r);
    }
    parts.join(" ")
}

fn set(s: &IntSet) -> String {
    compress(s.iter())
}

pub fn trace(step: usize, s_out: usize, t: &ConstructionTrace) -> String {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "step {step}: order {} -> {}, subsets {} -> {s_out}",
        t.input_order,
        t.output_order,
        s_out - 1
    );
    let _ = writeln!(
        text,
        "  subset 1 gains {} and {}",
        t.injected[0], t.injected[1]
    );
    for (i, reflected) in t.reflected_per_subset.iter().enumerate() {
        if !reflected.is_empty() {
            let _ = writeln!(
                text,
                "  subset {} reflected: {}",
                i + 1,
                compress(reflected.iter().copied())
            );
        }
    }
    let _ = writeln!(text, "  new subset {s_out}: {}", set(&t.new_subset));
    text
}

fn literature_cell(s: u32) -> String {
    literature_for(s)
        .map(|l| format!("{} ({})", l.order, l.note))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn table_text(table: &BoundSequence<BigUint>, markdown: bool) -> String {
    let mut text = String::new();
    if markdown {
        text.push_str("| s | this construction | literature |\n|---:|---:|---|\n");
        for (s, order) in table.iter() {
            let _ = writeln!(text, "| {s} | {order} | {} |", literature_cell(s));
        }
    } else {
        let width = table
            .orders
            .last()
            .map_or(1, |o| o.to_string().len())
            .max("this construction".len());
        let _ = writeln!(
            text,
            "{:>3}  {:>width$}  literature",
            "s", "this construction"
        );
        for (s, order) in table.iter() {
            let line = format!(
                "{s:>3}  {:>width$}  {}",
                order.to_string(),
                literature_cell(s)
            );
            let _ = writeln!(text, "{}", line.trim_end());
        }
    }
    text
}

pub fn table_json(table: &BoundSequence<BigUint>) -> Value {
    let rows: Vec<Value> = table
        .iter()
        .map(|(s, order)| {
            json!({
                "s": s,
                "order": order_json(order),
                "source": "this construction",
                "literature": literature_for(s).map(|l| json!({
                    "order": l.order,
                    "kind": l.kind,
                    "note": l.note,
                    "source": "literature",
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "rows": rows })
}

pub fn search_summary(r: &SearchResult) -> String {
    match r.mode {
        SearchMode::Exact => format!(
            "WS({}) = {} (exact: no partition of 1..{}; {} nodes; source: {})\n",
            r.s,
            r.best_n,
            r.best_n + 1,
            r.nodes_visited,
            r.source
        ),
        SearchMode::Capped => format!(
            "WS({}) >= {} (lower bound only: {}; {} nodes; source: {})\n",
            r.s,
            r.best_n,
            if r.budget_exhausted {
                "node budget exhausted"
            } else {
                "cap reached"
            },
            r.nodes_visited,
            r.source
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compress_runs() {
        assert_eq!(compress([22, 24, 25, 26, 27, 45]), "22 24-27 45");
        assert_eq!(compress([1, 2, 4]), "1 2 4");
        assert_eq!(compress([]), "");
    }

    #[test]
    fn big_orders_become_strings() {
        assert_eq!(order_json(&BigUint::from(554u32)), json!(554));
        let big: BigUint = BigUint::from(u64::MAX) + 1u32;
        assert_eq!(order_json(&big), json!("18446744073709551616"));
    }
}

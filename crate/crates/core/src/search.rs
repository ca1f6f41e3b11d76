//! Exhaustive backtracking over colourings of `1..=n`.
//!
//! Integers are coloured in increasing order. Each colour keeps a bitmap of
//! its members and a bitmap of the sums `a + b` (`a != b`) of its members;
//! `v` may take colour `c` iff `v` is not among those sums and the optional
//! seed conditions allow it. Only current violations are pruned, which is
//! both sound and complete.
//!
//! Colours are interchangeable, so a new colour is only opened in first-use
//! order. When condition 3 is requested colour 0 (subset 1) is distinguished
//! and the symmetry is broken among the remaining colours only.
//!
//! Budgets count nodes (colour assignments tried), so every result, including
//! `nodes_visited`, is reproducible.

use serde::Serialize;

use crate::constructor::{validate_seed, MIN_SEED_ORDER};
use crate::intset::IntSet;
use crate::partition::Partition;
use crate::report::ConditionSet;
use crate::verifier::DOUBLE_EXEMPT_MAX;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("node budget exhausted after {nodes_visited} nodes")]
pub struct BudgetExhausted {
    pub nodes_visited: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decided {
    /// `None` means infeasibility was proven by exhausting the tree.
    pub witness: Option<Partition>,
    pub nodes_visited: u64,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(max: usize) -> Self {
        Bits(vec![0; max / 64 + 1])
    }

    fn get(&self, v: usize) -> bool {
        self.0.get(v / 64).is_some_and(|w| w >> (v % 64) & 1 == 1)
    }

    fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn clear(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    /// `self |= other << shift`, dropping bits past the end.
    fn or_shifted(&mut self, other: &Bits, shift: usize) {
        let (offset, bit) = (shift / 64, shift % 64);
        for i in (offset..self.0.len()).rev() {
            let src = i - offset;
            let mut w = other.0[src] << bit;
            if bit != 0 && src > 0 {
                w |= other.0[src - 1] >> (64 - bit);
            }
            self.0[i] |= w;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    /// Stop at the first colouring, pad it to `s` subsets afterwards.
    First,
    /// Collect colourings using all `s` colours.
    Enumerate { limit: usize },
}

struct Searcher {
    n: usize,
    s: usize,
    constraints: ConditionSet,
    /// Reject colourings with 5 in colour 0 (seed search only).
    forbid_five_in_first: bool,
    goal: Goal,
    budget: u64,
    nodes: u64,
    colour: Vec<usize>,
    members: Vec<Bits>,
    sums: Vec<Bits>,
    counts: Vec<usize>,
    found: Vec<Vec<usize>>,
}

enum Flow {
    Continue,
    Stop,
    OutOfBudget,
}

impl Searcher {
    fn new(s: usize, n: usize, constraints: ConditionSet, goal: Goal, budget: u64) -> Self {
        Self {
            n,
            s,
            constraints,
            forbid_five_in_first: false,
            goal,
            budget,
            nodes: 0,
            colour: vec![usize::MAX; n + 1],
            members: vec![Bits::new(n + 2); s],
            sums: vec![Bits::new(n); s],
            counts: vec![0; s],
            found: Vec::new(),
        }
    }

    fn special_first(&self) -> bool {
        self.constraints.seed_extension
    }

    fn allowed(&self, v: usize, c: usize) -> bool {
        if self.constraints.weak_sum_free && self.sums[c].get(v) {
            return false;
        }
        if self.constraints.no_double
            && v.is_multiple_of(2)
            && v / 2 > DOUBLE_EXEMPT_MAX as usize
            && self.members[c].get(v / 2)
        {
            return false;
        }
        if c == 0 && self.special_first() {
            if v == self.n {
                return false;
            }
            let partner = self.n + 2 - v;
            if partner != v && self.members[0].get(partner) {
                return false;
            }
        }
        if c == 0 && self.forbid_five_in_first && v == DOUBLE_EXEMPT_MAX as usize + 1 {
            return false;
        }
        true
    }

    /// Colours `v` may take: existing ones plus the next unopened one.
    fn candidates(&self) -> std::ops::Range<usize> {
        let opened = self.counts.iter().take_while(|&&k| k > 0).count();
        if self.special_first() {
            let opened_rest = self.counts[1..].iter().take_while(|&&k| k > 0).count();
            0..(2 + opened_rest).min(self.s)
        } else {
            0..(opened + 1).min(self.s)
        }
    }

    fn leaf(&mut self) -> Flow {
        if self.special_first() && self.counts[0] == 0 {
            return Flow::Continue;
        }
        match self.goal {
            Goal::First => {
                self.found.push(self.colour.clone());
                Flow::Stop
            }
            Goal::Enumerate { limit } => {
                if self.counts.iter().all(|&k| k > 0) {
                    self.found.push(self.colour.clone());
                    if self.found.len() >= limit {
                        return Flow::Stop;
                    }
                }
                Flow::Continue
            }
        }
    }

    fn search(&mut self, v: usize) -> Flow {
        if v > self.n {
            return self.leaf();
        }
        for c in self.candidates() {
            if !self.allowed(v, c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Flow::OutOfBudget;
            }
            let saved = self.sums[c].clone();
            let members = &self.members[c];
            self.sums[c].or_shifted(members, v);
            self.members[c].set(v);
            self.counts[c] += 1;
            self.colour[v] = c;

            let flow = self.search(v + 1);

            self.colour[v] = usize::MAX;
            self.counts[c] -= 1;
            self.members[c].clear(v);
            self.sums[c] = saved;
            match flow {
                Flow::Continue => {}
                stop => return stop,
            }
        }
        Flow::Continue
    }
}

fn to_partition(n: usize, s: usize, colour: &[usize]) -> Partition {
    let mut subsets = vec![IntSet::with_capacity(n as u32); s];
    for (v, &c) in colour.iter().enumerate().skip(1) {
        subsets[c].insert(v as u32).expect("v >= 1");
    }
    pad(&mut subsets);
    Partition::new(n as u32, subsets).expect("search colourings cover 1..=n")
}

/// Fills empty subsets by moving out the largest element of the first subset
/// holding two or more. Subsets of sum-free sets stay sum-free and the moved
/// singleton satisfies every condition, so no check is invalidated.
fn pad(subsets: &mut [IntSet]) {
    while let Some(empty) = subsets.iter().position(IntSet::is_empty) {
        let donor = subsets
            .iter()
            .position(|s| s.len() >= 2)
            .expect("n >= s leaves a subset with two elements");
        let v = subsets[donor].max().unwrap();
        let rest: Vec<u32> = subsets[donor].iter().filter(|&x| x != v).collect();
        subsets[donor] = IntSet::try_from(rest.as_slice()).unwrap();
        subsets[empty].insert(v).unwrap();
    }
}

/// Finds a partition of `1..=n` into `s` non-empty subsets meeting
/// `constraints`, or proves there is none.
pub fn decide(
    s: usize,
    n: u32,
    constraints: ConditionSet,
    budget: u64,
) -> Result<Decided, BudgetExhausted> {
    assert!(s >= 1 && n >= 1, "decide needs s >= 1 and n >= 1");
    if (n as usize) < s {
        return Ok(Decided {
            witness: None,
            nodes_visited: 0,
        });
    }
    let mut searcher = Searcher::new(s, n as usize, constraints, Goal::First, budget);
    match searcher.search(1) {
        Flow::OutOfBudget => Err(BudgetExhausted {
            nodes_visited: searcher.nodes,
        }),
        _ => Ok(Decided {
            witness: searcher
                .found
                .first()
                .map(|c| to_partition(n as usize, s, c)),
            nodes_visited: searcher.nodes,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Infeasibility at `best_n + 1` was proven.
    Exact,
    /// Stopped at the cap or the budget.
    Capped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub s: usize,
    pub mode: SearchMode,
    pub best_n: u32,
    pub witness: Option<Partition>,
    pub exhausted: bool,
    pub nodes_visited: u64,
    /// The scan stopped because the node budget ran out (as opposed to the cap).
    pub budget_exhausted: bool,
    /// Always `"search"`: these values are computed, not quoted.
    pub source: &'static str,
}

/// Largest `n <= cap` admitting a weak Schur partition into `s` subsets,
/// found by deciding `n = s, s + 1, ...` in turn. The budget is shared by
/// all the calls.
pub fn compute_ws(s: usize, cap: u32, budget: u64) -> SearchResult {
    assert!(s >= 1, "compute_ws needs s >= 1");
    let mut result = SearchResult {
        s,
        mode: SearchMode::Capped,
        best_n: 0,
        witness: None,
        exhausted: false,
        nodes_visited: 0,
        budget_exhausted: false,
        source: "search",
    };
    let start = u32::try_from(s).unwrap_or(u32::MAX);
    for n in start..=cap.saturating_add(1) {
        let remaining = budget - result.nodes_visited;
        match decide(s, n, ConditionSet::WEAK, remaining) {
            Err(e) => {
                result.nodes_visited += e.nodes_visited.min(remaining);
                result.budget_exhausted = true;
                return result;
            }
            Ok(d) => {
                result.nodes_visited += d.nodes_visited;
                match d.witness {
                    Some(w) if n <= cap => {
                        result.best_n = n;
                        result.witness = Some(w);
                    }
                    // feasible beyond the cap: the cap is the limit
                    Some(_) => return result,
                    None => {
                        result.exhausted = true;
                        result.mode = SearchMode::Exact;
                        return result;
                    }
                }
            }
        }
    }
    result
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedSearch {
    pub seeds: Vec<Partition>,
    pub nodes_visited: u64,
    /// Whether the whole tree was explored (so `seeds` is every canonical seed).
    pub complete: bool,
    /// Search outputs the independent seed check refused; nonzero means a bug.
    pub rejected_by_verifier: usize,
}

/// Up to `limit` partitions of `1..=n` into exactly `s` subsets that pass
/// [`validate_seed`] with no violations and no advisory. One representative
/// per permutation of subsets `2..=s`.
pub fn find_seeds(
    s: usize,
    n: u32,
    limit: usize,
    budget: u64,
) -> Result<SeedSearch, BudgetExhausted> {
    assert!(s >= 1 && n >= 1, "find_seeds needs s >= 1 and n >= 1");
    let empty = SeedSearch {
        seeds: vec![],
        nodes_visited: 0,
        complete: true,
        rejected_by_verifier: 0,
    };
    if (n as usize) < s || n < MIN_SEED_ORDER || limit == 0 {
        return Ok(SeedSearch {
            complete: limit > 0,
            ..empty
        });
    }
    let mut searcher = Searcher::new(
        s,
        n as usize,
        ConditionSet::ALL,
        Goal::Enumerate { limit },
        budget,
    );
    searcher.forbid_five_in_first = true;
    let flow = searcher.search(1);
    if let Flow::OutOfBudget = flow {
        return Err(BudgetExhausted {
            nodes_visited: searcher.nodes,
        });
    }
    let mut out = SeedSearch {
        complete: matches!(flow, Flow::Continue),
        nodes_visited: searcher.nodes,
        ..empty
    };
    for colour in &searcher.found {
        let p = to_partition(n as usize, s, colour);
        if validate_seed(&p).is_empty() {
            out.seeds.push(p);
        } else {
            out.rejected_by_verifier += 1;
        }
    }
    Ok(out)
}

//! Violations and the reports that collect them.

use std::collections::BTreeSet;
use std::fmt;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `a + b = c` with `a < b`, all three in one subset.
    WeakSum,
    /// `a + b = c` with `a <= b`; only produced by the strong check.
    StrongSum,
    /// `a` and `2a` in one subset with `a > 4`.
    DoubleElement,
    NotAPartition,
    EmptySubset,
    /// Subset 1 together with `n + 2` is not weakly sum-free.
    Condition3Sumfree,
    /// `n` is a member of subset 1.
    Condition3Membership,
    /// Order below 4: the new subset of a construction step would overshoot `3n - 1`.
    OrderTooSmall,
    /// `5` in subset 1: the step reflects it to `3n - 1`, the new order, inside subset 1.
    SeedAdvisory,
    /// `a = (n + 2) / 2 > 4` in subset 1: after a step, `a + (2n + 2) = 3n + 4 - a`
    /// and `a, 2a = n + 2` share subset 1.
    HalfInjection,
    /// `b - 3` and `b > 4` in subset 1 plus `n + 2`: after a step,
    /// `(b - 3) + (3n + 4 - b)` is the new `n + 2`.
    DifferenceThree,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::WeakSum => "weak-sum",
            Self::StrongSum => "strong-sum",
            Self::DoubleElement => "double-element",
            Self::NotAPartition => "not-a-partition",
            Self::EmptySubset => "empty-subset",
            Self::Condition3Sumfree => "condition3-sumfree",
            Self::Condition3Membership => "condition3-membership",
            Self::OrderTooSmall => "order-too-small",
            Self::SeedAdvisory => "seed-advisory",
            Self::HalfInjection => "half-injection",
            Self::DifferenceThree => "difference-three",
        }
    }

    pub fn is_advisory(self) -> bool {
        self == Self::SeedAdvisory
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// 1-based subset index, when the violation belongs to one subset.
    pub subset_index: Option<usize>,
    /// Up to three integers; `(a, b, c)` for sums, `(a, 2a)` for doubles.
    pub witness: ArrayVec<u32, 3>,
}

impl Violation {
    pub fn sum(kind: ViolationKind, subset_index: Option<usize>, a: u32, b: u32) -> Self {
        Self::new(kind, subset_index, &[a, b, a + b])
    }

    /// # Panics
    ///
    /// If `witness` has more than three entries.
    pub fn new(kind: ViolationKind, subset_index: Option<usize>, witness: &[u32]) -> Self {
        Self {
            kind,
            subset_index,
            witness: witness
                .try_into()
                .expect("a witness has at most three integers"),
        }
    }

    /// Key for the deterministic report order: subset, then `c`, then `a`.
    fn sort_key(&self) -> (usize, u32, u32, ViolationKind) {
        let c = self.witness.last().copied().unwrap_or(0);
        let a = self.witness.first().copied().unwrap_or(0);
        (self.subset_index.unwrap_or(0), c, a, self.kind)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(i) = self.subset_index {
            write!(f, " in subset {i}")?;
        }
        match (self.kind, self.witness.as_slice()) {
            (ViolationKind::WeakSum | ViolationKind::StrongSum, [a, b, c]) => {
                write!(f, ": {a} + {b} = {c}")
            }
            (ViolationKind::DoubleElement, [a, b]) => write!(f, ": {a} and {b} = 2*{a}"),
            (_, []) => Ok(()),
            (_, w) => {
                let w: Vec<String> = w.iter().map(u32::to_string).collect();
                write!(f, ": {}", w.join(" "))
            }
        }
    }
}

/// Which checks a verification run evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    WellFormed,
    /// Condition 1: every subset weakly sum-free.
    WeakSumFree,
    /// Condition 2: no `a, 2a` in a subset with `a > 4`.
    NoDouble,
    /// Condition 3: subset 1 plus `n + 2` weakly sum-free and `n` not in subset 1.
    SeedExtension,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Self::WellFormed => "well-formed",
            Self::WeakSumFree => "weak-sum-free",
            Self::NoDouble => "no-double",
            Self::SeedExtension => "seed-extension",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConditionSet {
    pub well_formed: bool,
    pub weak_sum_free: bool,
    pub no_double: bool,
    pub seed_extension: bool,
}

impl ConditionSet {
    pub const ALL: Self = Self {
        well_formed: true,
        weak_sum_free: true,
        no_double: true,
        seed_extension: true,
    };

    /// Well-formedness plus Condition 1: certifies a lower-bound witness.
    pub const WEAK: Self = Self {
        well_formed: true,
        weak_sum_free: true,
        no_double: false,
        seed_extension: false,
    };

    pub const NONE: Self = Self {
        well_formed: false,
        weak_sum_free: false,
        no_double: false,
        seed_extension: false,
    };

    /// Parses `all` or a comma list of condition numbers `1,2,3`. Well-formedness is always included.
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("all") {
            return Some(Self::ALL);
        }
        let mut set = Self {
            well_formed: true,
            ..Self::NONE
        };
        for part in text.split(',') {
            match part.trim() {
                "1" => set.weak_sum_free = true,
                "2" => set.no_double = true,
                "3" => set.seed_extension = true,
                _ => return None,
            }
        }
        Some(set)
    }

    pub fn is_empty(&self) -> bool {
        !(self.well_formed || self.weak_sum_free || self.no_double || self.seed_extension)
    }

    pub fn conditions(&self) -> impl Iterator<Item = Condition> {
        [
            (self.well_formed, Condition::WellFormed),
            (self.weak_sum_free, Condition::WeakSumFree),
            (self.no_double, Condition::NoDouble),
            (self.seed_extension, Condition::SeedExtension),
        ]
        .into_iter()
        .filter_map(|(on, c)| on.then_some(c))
    }
}

impl Default for ConditionSet {
    fn default() -> Self {
        Self::ALL
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
    pub checked_conditions: BTreeSet<Condition>,
    /// Requested conditions not evaluated because the partition was malformed.
    pub skipped_conditions: BTreeSet<Condition>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// No violations other than advisories.
    pub fn is_clean_except_advisory(&self) -> bool {
        self.violations.iter().all(|v| v.kind.is_advisory())
    }

    pub fn first_failure(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub(crate) fn sort(&mut self) {
        self.violations.sort_by_key(Violation::sort_key);
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let checked: Vec<&str> = self.checked_conditions.iter().map(|c| c.label()).collect();
        writeln!(f, "checked: {}", checked.join(", "))?;
        if !self.skipped_conditions.is_empty() {
            let skipped: Vec<&str> = self.skipped_conditions.iter().map(|c| c.label()).collect();
            writeln!(f, "skipped (malformed input): {}", skipped.join(", "))?;
        }
        if self.violations.is_empty() {
            writeln!(f, "no violations")
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

//! Lower bounds on the weak Schur numbers produced by iterating the
//! construction from the order-21 base partition.
//!
//! The normative definition is the recurrence `m(3) = 21`,
//! `m(s + 1) = 3 m(s) - 1`; the closed form `(41 * 3^(s-3) + 1) / 2` is
//! computed independently and the two are cross-checked in tests. Both are
//! generic over the integer type so callers can pick `u64` (checked, errors
//! on overflow) or `BigUint` (exact for any `s`).

use std::fmt::{Debug, Display};

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Num};
use serde::Serialize;

/// Subset count of the base partition.
pub const BASE_S: u32 = 3;
/// Order of the base partition.
pub const BASE_ORDER: u32 = 21;

/// Integer types an order can be computed in.
pub trait OrderInt:
    Clone + Ord + Debug + Display + Num + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive
{
}

impl<T> OrderInt for T where
    T: Clone + Ord + Debug + Display + Num + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive
{
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("the construction starts at s = {BASE_S}; got s = {0}")]
    BelowBase(u32),
    #[error("order for s = {0} does not fit in the chosen integer type")]
    Overflow(u32),
}

fn lit<T: OrderInt>(v: u32) -> T {
    T::from_u32(v).expect("every order type holds small constants")
}

/// `3m - 1`, checked.
pub fn next_order<T: OrderInt>(m: &T) -> Option<T> {
    m.checked_mul(&lit(3))?.checked_sub(&T::one())
}

/// Closed form `(41 * 3^(s-3) + 1) / 2`.
pub fn bound<T: OrderInt>(s: u32) -> Result<T, BoundError> {
    if s < BASE_S {
        return Err(BoundError::BelowBase(s));
    }
    let three: T = lit(3);
    let mut power = T::one();
    for _ in BASE_S..s {
        power = power.checked_mul(&three).ok_or(BoundError::Overflow(s))?;
    }
    // 3^k is odd, so (41 * 3^k + 1) / 2 = 20 * 3^k + (3^k + 1) / 2 with no
    // intermediate larger than the result.
    let half_up = power
        .checked_add(&T::one())
        .ok_or(BoundError::Overflow(s))?
        / lit(2);
    power
        .checked_mul(&lit(20))
        .and_then(|x| x.checked_add(&half_up))
        .ok_or(BoundError::Overflow(s))
}

/// The same value by running the recurrence from `m(3) = 21`.
pub fn bound_by_recurrence<T: OrderInt>(s: u32) -> Result<T, BoundError> {
    if s < BASE_S {
        return Err(BoundError::BelowBase(s));
    }
    let mut m: T = lit(BASE_ORDER);
    for _ in BASE_S..s {
        m = next_order(&m).ok_or(BoundError::Overflow(s))?;
    }
    Ok(m)
}

/// Orders of the constructed chain: `orders[k]` is the order for `start_s + k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSequence<T> {
    pub start_s: u32,
    pub orders: Vec<T>,
}

impl<T: OrderInt> BoundSequence<T> {
    pub fn get(&self, s: u32) -> Option<&T> {
        s.checked_sub(self.start_s)
            .and_then(|k| self.orders.get(k as usize))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &T)> {
        (self.start_s..).zip(&self.orders)
    }

    /// Whether `orders[k + 1] = 3 orders[k] - 1` holds throughout.
    pub fn follows_recurrence(&self) -> bool {
        self.orders
            .windows(2)
            .all(|w| next_order(&w[0]).as_ref() == Some(&w[1]))
    }
}

/// Orders for `s = 3..=s_max`.
pub fn bound_table<T: OrderInt>(s_max: u32) -> Result<BoundSequence<T>, BoundError> {
    if s_max < BASE_S {
        return Err(BoundError::BelowBase(s_max));
    }
    let mut orders = Vec::with_capacity((s_max - BASE_S + 1) as usize);
    let mut m: T = lit(BASE_ORDER);
    orders.push(m.clone());
    for s in BASE_S + 1..=s_max {
        m = next_order(&m).ok_or(BoundError::Overflow(s))?;
        orders.push(m.clone());
    }
    Ok(BoundSequence {
        start_s: BASE_S,
        orders,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionKind {
    Weak,
    Strong,
}

/// A previously published partition order, shown next to the constructed
/// bounds for comparison. None of these are reproduced here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LiteratureOrder {
    pub s: u32,
    pub order: u64,
    pub kind: PartitionKind,
    pub note: &'static str,
}

pub const LITERATURE: &[LiteratureOrder] = &[
    LiteratureOrder {
        s: 6,
        order: 536,
        kind: PartitionKind::Strong,
        note: "strong Schur partition",
    },
    LiteratureOrder {
        s: 6,
        order: 572,
        kind: PartitionKind::Weak,
        note: "weak partition, non-repeating construction",
    },
    LiteratureOrder {
        s: 6,
        order: 642,
        kind: PartitionKind::Weak,
        note: "weak partition via linear Ramsey graphs",
    },
    LiteratureOrder {
        s: 7,
        order: 1680,
        kind: PartitionKind::Strong,
        note: "strong Schur partition",
    },
    LiteratureOrder {
        s: 7,
        order: 2146,
        kind: PartitionKind::Weak,
        note: "weak partition via linear Ramsey graphs",
    },
];

pub fn literature_for(s: u32) -> impl Iterator<Item = &'static LiteratureOrder> {
    LITERATURE.iter().filter(move |l| l.s == s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn published_bounds() {
        let want = [(3, 21u64), (4, 62), (5, 185), (6, 554), (7, 1661)];
        for (s, m) in want {
            assert_eq!(bound::<u64>(s).unwrap(), m);
            assert_eq!(bound_by_recurrence::<u64>(s).unwrap(), m);
        }
    }

    #[test]
    fn twelve_subsets() {
        // (41 * 3^9 + 1) / 2 = (41 * 19683 + 1) / 2
        assert_eq!(41 * 19683 + 1, 807_004);
        assert_eq!(bound::<u64>(12).unwrap(), 403_502);
        assert_eq!(bound::<u32>(12).unwrap(), 403_502);
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for s in 3..=40 {
            assert_eq!(
                bound::<u64>(s).unwrap(),
                bound_by_recurrence::<u64>(s).unwrap(),
                "s = {s}"
            );
        }
        for s in 3..=120 {
            assert_eq!(
                bound::<BigUint>(s).unwrap(),
                bound_by_recurrence::<BigUint>(s).unwrap()
            );
        }
    }

    #[test]
    fn overflow_is_explicit() {
        assert_eq!(bound::<u32>(30), Err(BoundError::Overflow(30)));
        assert_eq!(
            bound_by_recurrence::<u64>(60),
            Err(BoundError::Overflow(60))
        );
        assert_eq!(bound::<u64>(41), Err(BoundError::Overflow(41)));
        let big = bound::<BigUint>(60).unwrap();
        assert!(big > BigUint::from(u64::MAX));
        // largest s whose order fits in u64 agrees with the exact value
        let last = (3..)
            .take_while(|&s| bound_by_recurrence::<u64>(s).is_ok())
            .last()
            .unwrap();
        assert_eq!(
            BigUint::from(bound_by_recurrence::<u64>(last).unwrap()),
            bound::<BigUint>(last).unwrap()
        );
        assert!(bound::<BigUint>(last + 1).unwrap() > BigUint::from(u64::MAX));
    }

    #[test]
    fn below_base() {
        assert_eq!(bound::<u64>(2), Err(BoundError::BelowBase(2)));
        assert!(bound_table::<u64>(1).is_err());
    }

    #[test]
    fn table() {
        let t = bound_table::<u64>(7).unwrap();
        assert_eq!(t.orders, vec![21, 62, 185, 554, 1661]);
        assert!(t.follows_recurrence());
        assert_eq!(t.get(6), Some(&554));
        assert_eq!(t.get(2), None);
        assert!(literature_for(6).any(|l| l.order == 642));
        assert!(literature_for(7).any(|l| l.order == 2146));
    }
}

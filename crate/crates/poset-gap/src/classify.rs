//! Structural gap classification.
//!
//! A poset has gap 0 exactly when it contains no X-shaped subposet (five
//! elements `a, b < c < d, e` with `a, b` incomparable and `d, e`
//! incomparable), equivalently when every crossing number is zero. It has gap
//! 1 exactly when it is an X-orchid: the elements that are centers of
//! X-shaped subposets form one nonempty saturated chain whose top is covered
//! by exactly two elements and whose bottom covers exactly two elements,
//! equivalently when the crossing-one elements form a saturated chain and all
//! other crossings are zero.
//!
//! The structural detectors and the crossing-number tests are deliberately
//! independent implementations; the verification harness checks that they
//! agree with each other and with the gap on every input it visits.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chains::{compute_metrics, ChainMetrics};
use crate::gap::gap;
use crate::poset::{bits, Poset};

/// An embedded X-shaped subposet: `a, b < c < d, e` with `a ∥ b` and `d ∥ e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct XWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
}

impl XWitness {
    /// Re-check the witness conditions against the order relation.
    pub fn is_valid(&self, p: &Poset) -> bool {
        let XWitness { a, b, c, d, e } = *self;
        let distinct = {
            let mut ids = [a, b, c, d, e];
            ids.sort_unstable();
            ids.windows(2).all(|w| w[0] != w[1])
        };
        distinct
            && p.less_than(a, c)
            && p.less_than(b, c)
            && p.less_than(c, d)
            && p.less_than(c, e)
            && p.incomparable(a, b)
            && p.incomparable(d, e)
    }
}

/// The stalk of an X-orchid: the saturated chain of X-centers together with
/// the two covers above its top and the two elements below its bottom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrchidStalk {
    pub chain: Vec<usize>,
    pub up_pair: (usize, usize),
    pub down_pair: (usize, usize),
}

impl OrchidStalk {
    /// Re-check the stalk conditions against the order relation.
    pub fn is_valid(&self, p: &Poset) -> bool {
        !self.chain.is_empty()
            && self.chain.windows(2).all(|w| p.covers(w[0], w[1]))
            && {
                let top = *self.chain.last().unwrap();
                let bottom = self.chain[0];
                p.covers_above(top) == (1u64 << self.up_pair.0) | (1u64 << self.up_pair.1)
                    && p.covers_below(bottom)
                        == (1u64 << self.down_pair.0) | (1u64 << self.down_pair.1)
                    && self.up_pair.0 != self.up_pair.1
                    && self.down_pair.0 != self.down_pair.1
            }
    }
}

/// Gap classes distinguished by the structure theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GapClass {
    Zero,
    One,
    AtLeastTwo,
}

/// Classification outcome with structural witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub gap_class: GapClass,
    /// Present for `One` and `AtLeastTwo`.
    pub x_witness: Option<XWitness>,
    /// Present for `One`.
    pub stalk: Option<OrchidStalk>,
}

/// Least incomparable pair `(i, j)` with both elements in `mask`, by index.
fn least_incomparable_pair(p: &Poset, mask: u64) -> Option<(usize, usize)> {
    for i in bits(mask) {
        let partners = mask & p.incomparable_mask(i) & !((1u64 << i) | ((1u64 << i) - 1));
        if partners != 0 {
            return Some((i, partners.trailing_zeros() as usize));
        }
    }
    None
}

/// Find the lexicographically least X-shaped subposet, as the tuple
/// `(a, b, c, d, e)`, or `None` if the poset is X-avoiding.
///
/// For each candidate center the least incomparable pair strictly below and
/// strictly above are combined, then the best center wins.
pub fn find_x_witness(p: &Poset) -> Option<XWitness> {
    (0..p.len())
        .filter_map(|c| {
            let (a, b) = least_incomparable_pair(p, p.below(c))?;
            let (d, e) = least_incomparable_pair(p, p.above(c))?;
            Some(XWitness { a, b, c, d, e })
        })
        .min_by_key(|w| (w.a, w.b, w.c, w.d, w.e))
}

/// Mask of elements that are the center of at least one X-shaped subposet.
fn x_center_mask(p: &Poset) -> u64 {
    let mut mask = 0u64;
    for c in 0..p.len() {
        if least_incomparable_pair(p, p.below(c)).is_some()
            && least_incomparable_pair(p, p.above(c)).is_some()
        {
            mask |= 1u64 << c;
        }
    }
    mask
}

/// Is `mask` a nonempty saturated chain? Returns it bottom-up if so.
fn as_saturated_chain(p: &Poset, mask: u64) -> Option<Vec<usize>> {
    if mask == 0 {
        return None;
    }
    let mut elems: Vec<usize> = bits(mask).collect();
    elems.sort_by_key(|&v| (p.below(v).count_ones(), v));
    elems.windows(2).all(|w| p.covers(w[0], w[1])).then_some(elems)
}

/// Structural X-orchid detector.
///
/// The set of X-centers must form one nonempty saturated chain, the top of
/// the chain must be covered by exactly two elements, and the bottom must
/// cover exactly two elements. (Any chain with those end conditions consists
/// of X-centers, so requiring the center set to be exactly the chain captures
/// both the "every X is centered on the chain" condition and its converse.)
pub fn find_orchid_stalk(p: &Poset) -> Option<OrchidStalk> {
    let chain = as_saturated_chain(p, x_center_mask(p))?;
    let top = *chain.last().unwrap();
    let bottom = chain[0];
    let up = p.covers_above(top);
    let down = p.covers_below(bottom);
    if up.count_ones() != 2 || down.count_ones() != 2 {
        return None;
    }
    let mut ups = bits(up);
    let mut downs = bits(down);
    Some(OrchidStalk {
        chain,
        up_pair: (ups.next().unwrap(), ups.next().unwrap()),
        down_pair: (downs.next().unwrap(), downs.next().unwrap()),
    })
}

/// X-avoidance, structural route: no witness exists.
pub fn is_x_avoiding_structural(p: &Poset) -> bool {
    find_x_witness(p).is_none()
}

/// X-avoidance, counting route: every crossing number is zero.
pub fn is_x_avoiding_by_crossings(metrics: &ChainMetrics) -> bool {
    metrics.all_crossings_zero()
}

/// X-avoidance via both routes, which must agree.
pub fn is_x_avoiding(p: &Poset) -> bool {
    let structural = is_x_avoiding_structural(p);
    let counting = is_x_avoiding_by_crossings(&compute_metrics(p));
    assert_eq!(structural, counting, "X-avoidance detectors disagree");
    structural
}

/// X-orchid, structural route: the center chain with its end conditions.
pub fn is_x_orchid_structural(p: &Poset) -> bool {
    find_orchid_stalk(p).is_some()
}

/// X-orchid, counting route: the crossing-one elements are nonempty and form
/// a saturated chain, and every other crossing number is zero.
pub fn is_x_orchid_by_crossings(p: &Poset, metrics: &ChainMetrics) -> bool {
    let ones = metrics.crossing_one_elements();
    let mask = ones.iter().fold(0u64, |m, &v| m | 1u64 << v);
    let chain_ok = as_saturated_chain(p, mask).is_some();
    chain_ok
        && (0..p.len()).all(|v| {
            mask >> v & 1 == 1 || metrics.crossing(v).is_zero()
        })
}

/// X-orchid via both routes, which must agree.
pub fn is_x_orchid(p: &Poset) -> bool {
    let structural = is_x_orchid_structural(p);
    let counting = is_x_orchid_by_crossings(p, &compute_metrics(p));
    assert_eq!(structural, counting, "X-orchid detectors disagree");
    structural
}

/// Classify the gap as zero, one, or at least two, with witnesses.
pub fn classify(p: &Poset) -> Classification {
    let g = gap(p).gap;
    let gap_class = if g == BigInt::zero() {
        GapClass::Zero
    } else if g == BigInt::one() {
        GapClass::One
    } else {
        GapClass::AtLeastTwo
    };
    let x_witness = match gap_class {
        GapClass::Zero => None,
        _ => find_x_witness(p),
    };
    let stalk = match gap_class {
        GapClass::One => find_orchid_stalk(p),
        _ => None,
    };
    Classification { gap_class, x_witness, stalk }
}

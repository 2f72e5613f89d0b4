//! Finite posets as bitset relation matrices.
//!
//! The strict order is the source of truth; the Hasse (cover) relation is
//! always derived from it by transitive reduction. Rows are `u64` masks, so
//! posets are capped at [`MAX_ELEMENTS`] elements. All operations are pure;
//! a [`Poset`] never changes after construction.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Largest supported number of elements. One relation row fits a machine word.
pub const MAX_ELEMENTS: usize = 64;

/// Iterate over the set bits of a mask, ascending.
pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    std::iter::successors(Some(mask), |&m| Some(m & (m - 1)))
        .take_while(|&m| m != 0)
        .map(|m| m.trailing_zeros() as usize)
}

/// A finite poset on densely indexed elements `0..n`.
///
/// `up[i]` holds the strict order as a bitmask: bit `j` is set iff `i < j`.
/// `covers_up[i]` holds the Hasse diagram: bit `j` is set iff `j` covers `i`.
/// Labels are for I/O only; all algorithms work on indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    up: Vec<u64>,
    down: Vec<u64>,
    covers_up: Vec<u64>,
    covers_down: Vec<u64>,
}

/// Build a poset from labels and strict-order relation pairs.
///
/// The input pairs may be any strict relations (not just covers); the
/// transitive closure is taken and the cover relation re-derived. Rejects
/// duplicate labels, pairs naming undeclared labels, and relation sets whose
/// closure would force `i < i`.
pub fn build_poset<S: AsRef<str>>(names: &[S], relations: &[(S, S)]) -> Result<Poset> {
    let n = names.len();
    if n > MAX_ELEMENTS {
        return Err(Error::SizeTooLarge { n, max: MAX_ELEMENTS });
    }
    let mut index: HashMap<&str, usize> = HashMap::with_capacity(n);
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.as_ref(), i).is_some() {
            return Err(Error::DuplicateLabel(name.as_ref().to_string()));
        }
    }
    let mut up = vec![0u64; n];
    for (lo, hi) in relations {
        let &i = index
            .get(lo.as_ref())
            .ok_or_else(|| Error::UnknownLabel(lo.as_ref().to_string()))?;
        let &j = index
            .get(hi.as_ref())
            .ok_or_else(|| Error::UnknownLabel(hi.as_ref().to_string()))?;
        up[i] |= 1u64 << j;
    }
    let names = names.iter().map(|s| s.as_ref().to_string()).collect();
    Poset::from_raw_relation(names, up)
}

impl Poset {
    /// Close the given relation, reject cycles, and derive covers.
    pub(crate) fn from_raw_relation(names: Vec<String>, mut up: Vec<u64>) -> Result<Poset> {
        transitive_closure(&mut up);
        let n = names.len();
        for i in 0..n {
            if up[i] >> i & 1 == 1 {
                return Err(Error::CycleDetected(names[i].clone()));
            }
        }
        Ok(Poset::from_closed(names, up))
    }

    /// Assemble from an already transitively closed, irreflexive relation.
    pub(crate) fn from_closed(names: Vec<String>, up: Vec<u64>) -> Poset {
        let covers_up = transitive_reduction(&up);
        Poset {
            down: transpose(&up),
            covers_down: transpose(&covers_up),
            names,
            up,
            covers_up,
        }
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Label of element `v`.
    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of the element with the given label, if declared.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    /// Strict order: is `i < j`?
    pub fn less_than(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    /// Hasse relation: does `j` cover `i`?
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.covers_up[i] >> j & 1 == 1
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less_than(i, j) || self.less_than(j, i)
    }

    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.comparable(i, j)
    }

    /// Mask of elements strictly above `v`.
    pub fn above(&self, v: usize) -> u64 {
        self.up[v]
    }

    /// Mask of elements strictly below `v`.
    pub fn below(&self, v: usize) -> u64 {
        self.down[v]
    }

    /// Mask of elements covering `v`.
    pub fn covers_above(&self, v: usize) -> u64 {
        self.covers_up[v]
    }

    /// Mask of elements covered by `v`.
    pub fn covers_below(&self, v: usize) -> u64 {
        self.covers_down[v]
    }

    /// Mask of elements incomparable to `v`.
    pub fn incomparable_mask(&self, v: usize) -> u64 {
        self.full_mask() & !(self.up[v] | self.down[v] | (1u64 << v))
    }

    pub(crate) fn full_mask(&self) -> u64 {
        match self.len() {
            0 => 0,
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    pub fn is_maximal(&self, v: usize) -> bool {
        self.up[v] == 0
    }

    pub fn is_minimal(&self, v: usize) -> bool {
        self.down[v] == 0
    }

    /// Indices of maximal elements, ascending.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_maximal(v)).collect()
    }

    /// Indices of minimal elements, ascending.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_minimal(v)).collect()
    }

    /// Number of edges in the Hasse diagram.
    pub fn edge_count(&self) -> usize {
        self.covers_up.iter().map(|row| row.count_ones() as usize).sum()
    }

    /// Cover pairs `(lower, upper)` in lexicographic index order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::with_capacity(self.edge_count());
        for i in 0..self.len() {
            for j in bits(self.covers_up[i]) {
                pairs.push((i, j));
            }
        }
        pairs
    }

    /// Strict-order pairs `(lower, upper)` in lexicographic index order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            for j in bits(self.up[i]) {
                pairs.push((i, j));
            }
        }
        pairs
    }

    /// Induced subposet with element `v` removed.
    ///
    /// The remaining order is the restriction of the strict order; covers are
    /// re-derived from it, so deleting an interior element can introduce cover
    /// edges that were not covers before.
    pub fn delete_element(&self, v: usize) -> Result<Poset> {
        let n = self.len();
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        let keep_low = (1u64 << v) - 1;
        let names = (0..n).filter(|&i| i != v).map(|i| self.names[i].clone()).collect();
        let up = (0..n)
            .filter(|&i| i != v)
            .map(|i| {
                let row = self.up[i];
                (row & keep_low) | ((row & !keep_low & !(1u64 << v)) >> 1)
            })
            .collect();
        Ok(Poset::from_closed(names, up))
    }

    /// Order-theoretic dual: both matrices transposed, labels unchanged.
    pub fn dual(&self) -> Poset {
        Poset {
            names: self.names.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            covers_up: self.covers_down.clone(),
            covers_down: self.covers_up.clone(),
        }
    }

    /// Disjoint union: block-diagonal order, no cross relations.
    ///
    /// Labels from `other` that collide with earlier labels get `'` appended
    /// until unique.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset> {
        let n = self.len() + other.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeTooLarge { n, max: MAX_ELEMENTS });
        }
        let mut names = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        let shift = self.len();
        let mut up = self.up.clone();
        up.extend(other.up.iter().map(|row| row << shift));
        Ok(Poset::from_closed(names, up))
    }

    /// Rebuild with elements renumbered so old element `perm[i]` becomes `i`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        debug_assert_eq!(perm.len(), self.len());
        let names = perm.iter().map(|&old| self.names[old].clone()).collect();
        let mut inverse = vec![0usize; self.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let up = perm
            .iter()
            .map(|&old| {
                let mut row = 0u64;
                for j in bits(self.up[old]) {
                    row |= 1u64 << inverse[j];
                }
                row
            })
            .collect();
        Poset::from_closed(names, up)
    }
}

/// In-place Floyd–Warshall closure over bitset rows.
fn transitive_closure(up: &mut [u64]) {
    let n = up.len();
    for k in 0..n {
        let row_k = up[k];
        for i in 0..n {
            if up[i] >> k & 1 == 1 {
                up[i] |= row_k;
            }
        }
    }
}

/// Covers of a closed strict order: `j` covers `i` iff `i < j` with nothing between.
fn transitive_reduction(up: &[u64]) -> Vec<u64> {
    up.iter()
        .map(|&row| {
            let mut two_step = 0u64;
            for k in bits(row) {
                two_step |= up[k];
            }
            row & !two_step
        })
        .collect()
}

fn transpose(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let mut out = vec![0u64; n];
    for (i, &row) in rows.iter().enumerate() {
        for j in bits(row) {
            out[j] |= 1u64 << i;
        }
    }
    out
}

/// Deterministic labels for generated posets: `a..z`, then `a1..z1`, ...
pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            let letter = (b'a' + (i % 26) as u8) as char;
            match i / 26 {
                0 => letter.to_string(),
                k => format!("{letter}{k}"),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn x_poset() -> Poset {
        build_poset(&["a", "b", "c", "d", "e"], &[("a", "c"), ("b", "c"), ("c", "d"), ("c", "e")])
            .unwrap()
    }

    #[test]
    fn x_poset_covers_and_extremes() {
        let p = x_poset();
        assert_eq!(p.edge_count(), 4);
        assert_eq!(p.cover_pairs(), vec![(0, 2), (1, 2), (2, 3), (2, 4)]);
        assert_eq!(p.maximal_elements(), vec![3, 4]);
        assert_eq!(p.minimal_elements(), vec![0, 1]);
        // Transitivity fills in a < d etc.
        assert!(p.less_than(0, 3));
        assert!(p.incomparable(0, 1));
        assert!(p.incomparable(3, 4));
    }

    #[test]
    fn singleton() {
        let p = build_poset(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.edge_count(), 0);
        assert_eq!(p.maximal_elements(), vec![0]);
        assert_eq!(p.minimal_elements(), vec![0]);
    }

    #[test]
    fn redundant_pair_reduced() {
        let p = build_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert!(p.less_than(0, 2));
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            build_poset(&["a", "a"], &[]),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert_eq!(
            build_poset(&["a"], &[("a", "b")]),
            Err(Error::UnknownLabel("b".into()))
        );
        assert_eq!(
            build_poset(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::CycleDetected("a".into()))
        );
        assert_eq!(
            build_poset(&["a"], &[("a", "a")]),
            Err(Error::CycleDetected("a".into()))
        );
    }

    #[test]
    fn delete_interior_element_induces_order() {
        let p = build_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let q = p.delete_element(1).unwrap();
        assert_eq!(q.names(), &["a".to_string(), "c".to_string()]);
        assert!(q.less_than(0, 1));
        // a < c becomes a cover once b is gone.
        assert!(q.covers(0, 1));
    }

    #[test]
    fn delete_top_of_two_chain() {
        let p = build_poset(&["a", "b"], &[("a", "b")]).unwrap();
        let q = p.delete_element(1).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.edge_count(), 0);
    }

    #[test]
    fn delete_out_of_range() {
        let p = build_poset(&["a"], &[]).unwrap();
        assert_eq!(p.delete_element(1), Err(Error::IndexOutOfRange { index: 1, n: 1 }));
    }

    #[test]
    fn dual_is_involution_and_swaps_extremes() {
        let p = x_poset();
        let d = p.dual();
        assert_eq!(d.maximal_elements(), p.minimal_elements());
        assert_eq!(d.minimal_elements(), p.maximal_elements());
        assert_eq!(d.edge_count(), p.edge_count());
        assert_eq!(d.dual(), p);

        let chain = build_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let rev = chain.dual();
        assert!(rev.less_than(2, 0));
    }

    #[test]
    fn disjoint_union_blocks() {
        let s = build_poset(&["a"], &[]).unwrap();
        let two = s.disjoint_union(&s).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two.edge_count(), 0);
        assert_eq!(two.names(), &["a".to_string(), "a'".to_string()]);

        let x = x_poset();
        let xx = x.disjoint_union(&x).unwrap();
        assert_eq!(xx.len(), 10);
        assert_eq!(xx.edge_count(), 8);
        assert!(xx.incomparable(0, 7));

        let chain3 = build_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let anti2 = build_poset(&["x", "y"], &[]).unwrap();
        let u = chain3.disjoint_union(&anti2).unwrap();
        assert_eq!(u.len(), 5);
        assert_eq!(u.edge_count(), 2);
    }

    #[test]
    fn rebuild_from_relation_pairs_is_identity() {
        let p = x_poset();
        let pairs: Vec<(String, String)> = p
            .relation_pairs()
            .into_iter()
            .map(|(i, j)| (p.name(i).to_string(), p.name(j).to_string()))
            .collect();
        let q = build_poset(p.names(), &pairs).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn size_cap_enforced() {
        let names: Vec<String> = (0..65).map(|i| format!("e{i}")).collect();
        assert!(matches!(
            build_poset(&names, &[]),
            Err(Error::SizeTooLarge { n: 65, max: 64 })
        ));
    }

    #[test]
    fn default_labels_shape() {
        let labels = default_labels(28);
        assert_eq!(labels[0], "a");
        assert_eq!(labels[25], "z");
        assert_eq!(labels[26], "a1");
        assert_eq!(labels[27], "b1");
    }
}

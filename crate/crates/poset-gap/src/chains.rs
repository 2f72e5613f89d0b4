//! Maximal-chain counts and crossing numbers.
//!
//! For an element `v`, `uc(v)` counts the saturated chains from `v` up to a
//! maximal element and `dc(v)` the saturated chains from a minimal element up
//! to `v` (each includes `v` itself, so both are at least 1). The crossing
//! number of `v` is `(uc(v) - 1) * (dc(v) - 1)`, and `uc(v) * dc(v)` is the
//! number of maximal chains passing through `v`. Counts grow exponentially
//! with the poset size, so everything is kept in arbitrary precision.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poset::{bits, Poset};

/// Default cap on explicit chain enumeration (overridable per call).
pub const DEFAULT_CHAIN_CAP: u64 = 1_000_000;

/// Per-element chain counts of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMetrics {
    uc: Vec<BigUint>,
    dc: Vec<BigUint>,
    crossing: Vec<BigUint>,
    total: BigUint,
}

impl ChainMetrics {
    /// Number of maximal chains above `v` (counting the chain `{v}` upward).
    pub fn uc(&self, v: usize) -> &BigUint {
        &self.uc[v]
    }

    /// Number of maximal chains below `v`.
    pub fn dc(&self, v: usize) -> &BigUint {
        &self.dc[v]
    }

    /// Crossing number `(uc(v) - 1) * (dc(v) - 1)`.
    pub fn crossing(&self, v: usize) -> &BigUint {
        &self.crossing[v]
    }

    /// Number of maximal chains of the whole poset.
    pub fn total_maximal_chains(&self) -> &BigUint {
        &self.total
    }

    /// Number of maximal chains passing through `v`, i.e. `uc(v) * dc(v)`.
    pub fn chains_through(&self, v: usize) -> BigUint {
        &self.uc[v] * &self.dc[v]
    }

    pub fn len(&self) -> usize {
        self.uc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.uc.is_empty()
    }

    pub fn all_crossings_zero(&self) -> bool {
        self.crossing.iter().all(Zero::is_zero)
    }

    /// Elements with crossing number exactly one, ascending.
    pub fn crossing_one_elements(&self) -> Vec<usize> {
        let one = BigUint::one();
        (0..self.len()).filter(|&v| self.crossing[v] == one).collect()
    }
}

/// Indices in a topological order (minimal elements first).
///
/// The size of the down-set strictly increases along the order, so sorting by
/// it (ties by index) is a valid and deterministic linear extension.
pub(crate) fn topological_order(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&v| (p.below(v).count_ones(), v));
    order
}

/// Compute `uc`, `dc`, crossing numbers, and the total maximal-chain count
/// with one upward and one downward pass over a topological order.
pub fn compute_metrics(p: &Poset) -> ChainMetrics {
    let n = p.len();
    let order = topological_order(p);
    let mut uc = vec![BigUint::zero(); n];
    let mut dc = vec![BigUint::zero(); n];
    for &v in order.iter().rev() {
        uc[v] = if p.is_maximal(v) {
            BigUint::one()
        } else {
            bits(p.covers_above(v)).map(|w| uc[w].clone()).sum()
        };
    }
    for &v in &order {
        dc[v] = if p.is_minimal(v) {
            BigUint::one()
        } else {
            bits(p.covers_below(v)).map(|u| dc[u].clone()).sum()
        };
    }
    let crossing = (0..n)
        .map(|v| (&uc[v] - 1u32) * (&dc[v] - 1u32))
        .collect();
    let total = p.minimal_elements().iter().map(|&m| uc[m].clone()).sum();
    ChainMetrics { uc, dc, crossing, total }
}

/// List every maximal chain as an index sequence from a minimal to a maximal
/// element, lexicographically ordered.
///
/// Refuses posets with more than `DEFAULT_CHAIN_CAP` maximal chains; use
/// [`enumerate_maximal_chains_capped`] to choose the cap.
pub fn enumerate_maximal_chains(p: &Poset) -> Result<Vec<Vec<usize>>> {
    enumerate_maximal_chains_capped(p, DEFAULT_CHAIN_CAP)
}

pub fn enumerate_maximal_chains_capped(p: &Poset, cap: u64) -> Result<Vec<Vec<usize>>> {
    let total = compute_metrics(p).total;
    if total > BigUint::from(cap) {
        return Err(Error::TooManyChains { count: total, cap });
    }
    let mut chains = Vec::new();
    let mut path = Vec::new();
    for m in p.minimal_elements() {
        descend(p, m, &mut path, &mut chains);
    }
    Ok(chains)
}

fn descend(p: &Poset, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    path.push(v);
    if p.is_maximal(v) {
        out.push(path.clone());
    } else {
        for w in bits(p.covers_above(v)) {
            descend(p, w, path, out);
        }
    }
    path.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn x_poset() -> Poset {
        build_poset(&["a", "b", "c", "d", "e"], &[("a", "c"), ("b", "c"), ("c", "d"), ("c", "e")])
            .unwrap()
    }

    fn chain(k: usize) -> Poset {
        let names: Vec<String> = crate::poset::default_labels(k);
        let rels: Vec<(String, String)> =
            (1..k).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
        build_poset(&names, &rels).unwrap()
    }

    /// Independent oracle: filter all index subsets for saturated chains from
    /// a minimal to a maximal element. Only usable for small posets.
    fn oracle_maximal_chains(p: &Poset) -> Vec<Vec<usize>> {
        let n = p.len();
        assert!(n <= 16);
        let mut found = Vec::new();
        for mask in 1u32..1 << n {
            let mut elems: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            elems.sort_by_key(|&v| p.below(v).count_ones());
            let is_chain = elems.windows(2).all(|w| p.covers(w[0], w[1]));
            if is_chain && p.is_minimal(elems[0]) && p.is_maximal(*elems.last().unwrap()) {
                found.push(elems);
            }
        }
        found.sort();
        found
    }

    #[test]
    fn x_poset_metrics_match_oracle() {
        let p = x_poset();
        let m = compute_metrics(&p);
        let oracle = oracle_maximal_chains(&p);
        // Frozen from the oracle: chains a<c<d, a<c<e, b<c<d, b<c<e.
        assert_eq!(oracle, vec![vec![0, 2, 3], vec![0, 2, 4], vec![1, 2, 3], vec![1, 2, 4]]);
        assert_eq!(m.total_maximal_chains(), &big(4));
        assert_eq!(m.uc(2), &big(2));
        assert_eq!(m.dc(2), &big(2));
        assert_eq!(m.crossing(2), &big(1));
        for v in [0, 1, 3, 4] {
            assert_eq!(m.crossing(v), &big(0));
        }
        assert_eq!(m.chains_through(2), big(4));
        assert_eq!(m.chains_through(0), big(2));
        assert_eq!(enumerate_maximal_chains(&p).unwrap(), oracle);
    }

    #[test]
    fn chain_has_unique_maximal_chain() {
        let p = chain(5);
        let m = compute_metrics(&p);
        for v in 0..5 {
            assert_eq!(m.uc(v), &big(1));
            assert_eq!(m.dc(v), &big(1));
            assert_eq!(m.crossing(v), &big(0));
            assert_eq!(m.chains_through(v), big(1));
        }
        assert_eq!(m.total_maximal_chains(), &big(1));
        assert_eq!(enumerate_maximal_chains(&p).unwrap(), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn antichain_chains_are_singletons() {
        let p = build_poset(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(
            enumerate_maximal_chains(&p).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        let m = compute_metrics(&p);
        assert_eq!(m.total_maximal_chains(), &big(3));
    }

    #[test]
    fn chain_cap_guard() {
        // Stacked diamonds double the chain count per diamond.
        let mut names = vec!["b0".to_string()];
        let mut rels: Vec<(String, String)> = Vec::new();
        for i in 0..8 {
            let l = format!("l{i}");
            let r = format!("r{i}");
            let t = format!("b{}", i + 1);
            let b = format!("b{i}");
            for mid in [&l, &r] {
                rels.push((b.clone(), mid.clone()));
                rels.push((mid.clone(), t.clone()));
            }
            names.extend([l, r, t]);
        }
        let p = build_poset(&names, &rels).unwrap();
        let m = compute_metrics(&p);
        assert_eq!(m.total_maximal_chains(), &big(256));
        assert!(matches!(
            enumerate_maximal_chains_capped(&p, 100),
            Err(Error::TooManyChains { .. })
        ));
        assert_eq!(enumerate_maximal_chains_capped(&p, 256).unwrap().len(), 256);
    }

    #[test]
    fn metrics_agree_with_oracle_on_mixed_shapes() {
        let posets = [
            build_poset(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
                .unwrap(),
            build_poset(
                &["a", "b", "c", "d", "e", "f"],
                &[("a", "c"), ("b", "c"), ("c", "d"), ("d", "e"), ("d", "f")],
            )
            .unwrap(),
            chain(1),
        ];
        for p in posets {
            let m = compute_metrics(&p);
            let chains = oracle_maximal_chains(&p);
            assert_eq!(m.total_maximal_chains(), &big(chains.len() as u64));
            assert_eq!(enumerate_maximal_chains(&p).unwrap(), chains);
            for v in 0..p.len() {
                let through = chains.iter().filter(|c| c.contains(&v)).count();
                assert_eq!(m.chains_through(v), big(through as u64));
            }
        }
    }
}

//! Facet counts of the two poset polytopes and the gap between them.
//!
//! The order polytope of a poset has one facet per maximal element, minimal
//! element, and Hasse edge; the chain polytope has one facet per maximal
//! chain and per element. The gap is the chain-polytope facet count minus the
//! order-polytope facet count. It is never negative, it drops by a computable
//! amount when a minimal element is deleted, and for every maximal antichain
//! it is squeezed between two sums over the antichain.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::chains::{compute_metrics, ChainMetrics};
use crate::error::{Error, Result};
use crate::io::serde_big;
use crate::poset::{bits, Poset};

/// Default cap on maximal-antichain enumeration (overridable per call).
pub const DEFAULT_ANTICHAIN_CAP: usize = 1_000_000;

/// The five counts entering the facet formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapTerms {
    pub maxx: usize,
    pub minn: usize,
    pub edges: usize,
    #[serde(with = "serde_big::uint")]
    pub maxchains: BigUint,
    pub n: usize,
}

/// Facet counts of both polytopes and their difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub order_facets: usize,
    #[serde(with = "serde_big::uint")]
    pub chain_facets: BigUint,
    /// Kept signed so a buggy build reports a negative gap instead of
    /// panicking on subtraction.
    #[serde(with = "serde_big::int")]
    pub gap: BigInt,
    pub terms: GapTerms,
}

/// The two antichain bounds on the gap, for one maximal antichain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub antichain: Vec<usize>,
    #[serde(with = "serde_big::uint")]
    pub lower: BigUint,
    #[serde(with = "serde_big::uint")]
    pub upper: BigUint,
    #[serde(with = "serde_big::int")]
    pub gap: BigInt,
    pub holds: bool,
}

/// How the gap changes when a minimal, nonmaximal element is deleted.
///
/// The covers of `alpha` split into `betas` (elements covering at least two
/// elements, i.e. still not minimal after the deletion) and `gammas`
/// (elements covering only `alpha`, which become minimal). The predicted
/// change is `sum(uc(beta)) - betas.len()`, with `uc` evaluated in the
/// original poset; deleting a minimal element below `beta` cannot change the
/// chains above it, so evaluating in the reduced poset agrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionDelta {
    pub alpha: usize,
    pub betas: Vec<usize>,
    pub gammas: Vec<usize>,
    #[serde(with = "serde_big::int")]
    pub predicted_delta: BigInt,
    #[serde(with = "serde_big::int")]
    pub actual_delta: BigInt,
}

/// Facet count of the order polytope: `maxx + minn + edges`.
pub fn order_polytope_facets(p: &Poset) -> usize {
    p.maximal_elements().len() + p.minimal_elements().len() + p.edge_count()
}

/// Facet count of the chain polytope: `maxchains + n`.
pub fn chain_polytope_facets(p: &Poset) -> BigUint {
    compute_metrics(p).total_maximal_chains() + BigUint::from(p.len())
}

/// Gap report with all constituent terms.
pub fn gap(p: &Poset) -> GapReport {
    gap_with_metrics(p, &compute_metrics(p))
}

pub fn gap_with_metrics(p: &Poset, metrics: &ChainMetrics) -> GapReport {
    let terms = GapTerms {
        maxx: p.maximal_elements().len(),
        minn: p.minimal_elements().len(),
        edges: p.edge_count(),
        maxchains: metrics.total_maximal_chains().clone(),
        n: p.len(),
    };
    let order_facets = terms.maxx + terms.minn + terms.edges;
    let chain_facets = &terms.maxchains + BigUint::from(terms.n);
    let gap = BigInt::from(chain_facets.clone()) - BigInt::from(order_facets);
    GapReport { order_facets, chain_facets, gap, terms }
}

/// Convenience accessor for just the gap value.
pub fn gap_value(p: &Poset) -> BigInt {
    gap(p).gap
}

/// Analyze the deletion of a minimal, nonmaximal element `alpha`.
pub fn deletion_delta(p: &Poset, alpha: usize) -> Result<DeletionDelta> {
    let n = p.len();
    if alpha >= n {
        return Err(Error::IndexOutOfRange { index: alpha, n });
    }
    if !p.is_minimal(alpha) {
        return Err(Error::NotMinimal(p.name(alpha).to_string()));
    }
    if p.is_maximal(alpha) {
        return Err(Error::IsIsolated(p.name(alpha).to_string()));
    }
    let mut betas = Vec::new();
    let mut gammas = Vec::new();
    for w in bits(p.covers_above(alpha)) {
        if p.covers_below(w).count_ones() >= 2 {
            betas.push(w);
        } else {
            gammas.push(w);
        }
    }
    let metrics = compute_metrics(p);
    let uc_sum: BigUint = betas.iter().map(|&b| metrics.uc(b).clone()).sum();
    let predicted_delta = BigInt::from(uc_sum) - BigInt::from(betas.len());
    let reduced = p.delete_element(alpha)?;
    let actual_delta = gap_with_metrics(p, &metrics).gap - gap(&reduced).gap;
    Ok(DeletionDelta { alpha, betas, gammas, predicted_delta, actual_delta })
}

/// All maximal antichains, as ascending index sets in lexicographic order.
///
/// Antichains are exactly the cliques of the incomparability graph, so this
/// runs Bron–Kerbosch with pivoting over bitmask vertex sets.
pub fn enumerate_maximal_antichains(p: &Poset) -> Result<Vec<Vec<usize>>> {
    enumerate_maximal_antichains_capped(p, DEFAULT_ANTICHAIN_CAP)
}

pub fn enumerate_maximal_antichains_capped(p: &Poset, cap: usize) -> Result<Vec<Vec<usize>>> {
    let incomp: Vec<u64> = (0..p.len()).map(|v| p.incomparable_mask(v)).collect();
    let mut found: Vec<u64> = Vec::new();
    bron_kerbosch(&incomp, 0, p.full_mask(), 0, cap, &mut found)?;
    let mut sets: Vec<Vec<usize>> = found.into_iter().map(|m| bits(m).collect()).collect();
    sets.sort();
    Ok(sets)
}

fn bron_kerbosch(
    adj: &[u64],
    r: u64,
    mut p: u64,
    mut x: u64,
    cap: usize,
    out: &mut Vec<u64>,
) -> Result<()> {
    if p == 0 && x == 0 {
        if out.len() >= cap {
            return Err(Error::TooManyAntichains { cap });
        }
        out.push(r);
        return Ok(());
    }
    // Pivot on the vertex with the most candidate neighbours.
    let pivot = bits(p | x)
        .max_by_key(|&u| (adj[u] & p).count_ones())
        .expect("p | x is nonempty");
    let mut todo = p & !adj[pivot];
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        let bit = 1u64 << v;
        todo &= !bit;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], cap, out)?;
        p &= !bit;
        x |= bit;
    }
    Ok(())
}

/// One [`BoundsReport`] per maximal antichain. Metrics are computed once and
/// reused across antichains.
pub fn bounds(p: &Poset) -> Result<Vec<BoundsReport>> {
    bounds_capped(p, DEFAULT_ANTICHAIN_CAP)
}

pub fn bounds_capped(p: &Poset, cap: usize) -> Result<Vec<BoundsReport>> {
    let metrics = compute_metrics(p);
    let gap = gap_with_metrics(p, &metrics).gap;
    Ok(enumerate_maximal_antichains_capped(p, cap)?
        .into_iter()
        .map(|antichain| bounds_for_antichain(&metrics, &gap, antichain))
        .collect())
}

/// Bounds for one antichain: lower is the sum of crossing numbers, upper is
/// the sum of `uc * dc - 1`.
pub fn bounds_for_antichain(
    metrics: &ChainMetrics,
    gap: &BigInt,
    antichain: Vec<usize>,
) -> BoundsReport {
    let lower: BigUint = antichain.iter().map(|&v| metrics.crossing(v).clone()).sum();
    let upper: BigUint = antichain
        .iter()
        .map(|&v| metrics.chains_through(v) - BigUint::one())
        .sum();
    let holds = BigInt::from(lower.clone()) <= *gap && *gap <= BigInt::from(upper.clone());
    BoundsReport { antichain, lower, upper, gap: gap.clone(), holds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    fn x_poset() -> Poset {
        build_poset(&["a", "b", "c", "d", "e"], &[("a", "c"), ("b", "c"), ("c", "d"), ("c", "e")])
            .unwrap()
    }

    fn chain(k: usize) -> Poset {
        let names = crate::poset::default_labels(k);
        let rels: Vec<(String, String)> =
            (1..k).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
        build_poset(&names, &rels).unwrap()
    }

    /// Independent oracle: all maximal antichains by scanning every subset.
    fn oracle_maximal_antichains(p: &Poset) -> Vec<Vec<usize>> {
        let n = p.len();
        assert!(n <= 16);
        let is_antichain = |mask: u32| -> bool {
            let elems: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            elems
                .iter()
                .enumerate()
                .all(|(i, &u)| elems[i + 1..].iter().all(|&v| p.incomparable(u, v)))
        };
        let mut out = Vec::new();
        for mask in 1u32..1 << n {
            if !is_antichain(mask) {
                continue;
            }
            let maximal =
                (0..n).all(|v| mask >> v & 1 == 1 || !is_antichain(mask | 1 << v));
            if maximal {
                out.push((0..n).filter(|&v| mask >> v & 1 == 1).collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn antichain_facets_are_twice_n() {
        for n in 1..6 {
            let p = build_poset(&crate::poset::default_labels(n), &[]).unwrap();
            assert_eq!(order_polytope_facets(&p), 2 * n);
            assert_eq!(chain_polytope_facets(&p), BigUint::from(2 * n));
            assert_eq!(gap_value(&p), BigInt::from(0));
        }
    }

    #[test]
    fn x_poset_gap_is_one() {
        let report = gap(&x_poset());
        assert_eq!(report.chain_facets, BigUint::from(9u32));
        assert_eq!(report.order_facets, 8);
        assert_eq!(report.gap, BigInt::from(1));
        assert_eq!(report.terms.maxchains, BigUint::from(4u32));
        assert_eq!(report.terms.edges, 4);
    }

    #[test]
    fn x_poset_maximal_antichains() {
        let p = x_poset();
        let oracle = oracle_maximal_antichains(&p);
        // Frozen from the subset-scan oracle: {a,b}, {c}, {d,e}.
        assert_eq!(oracle, vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert_eq!(enumerate_maximal_antichains(&p).unwrap(), oracle);
    }

    #[test]
    fn chain_and_antichain_maximal_antichains() {
        let p = chain(4);
        assert_eq!(
            enumerate_maximal_antichains(&p).unwrap(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        let a = build_poset(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(enumerate_maximal_antichains(&a).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn antichain_cap_guard() {
        let a = build_poset(&crate::poset::default_labels(6), &[]).unwrap();
        assert!(matches!(
            enumerate_maximal_antichains_capped(&a, 0),
            Err(Error::TooManyAntichains { cap: 0 })
        ));
    }

    #[test]
    fn bounds_on_x_poset() {
        let p = x_poset();
        let reports = bounds(&p).unwrap();
        assert_eq!(reports.len(), 3);
        let by_antichain = |a: &[usize]| {
            reports.iter().find(|r| r.antichain == a).unwrap().clone()
        };
        let center = by_antichain(&[2]);
        assert_eq!(center.lower, BigUint::from(1u32));
        assert_eq!(center.upper, BigUint::from(3u32));
        assert!(center.holds);
        let bottom = by_antichain(&[0, 1]);
        assert_eq!(bottom.lower, BigUint::from(0u32));
        assert_eq!(bottom.upper, BigUint::from(2u32));
        assert!(bottom.holds);
    }

    #[test]
    fn bounds_collapse_on_chains() {
        for report in bounds(&chain(5)).unwrap() {
            assert_eq!(report.lower, BigUint::from(0u32));
            assert_eq!(report.upper, BigUint::from(0u32));
            assert_eq!(report.gap, BigInt::from(0));
            assert!(report.holds);
        }
    }

    #[test]
    fn deletion_delta_on_x_poset() {
        let p = x_poset();
        let d = deletion_delta(&p, 0).unwrap();
        assert_eq!(d.betas, vec![2]);
        assert!(d.gammas.is_empty());
        assert_eq!(d.predicted_delta, BigInt::from(1));
        assert_eq!(d.actual_delta, BigInt::from(1));
    }

    #[test]
    fn deletion_delta_on_two_chain_bottom() {
        let p = chain(2);
        let d = deletion_delta(&p, 0).unwrap();
        assert!(d.betas.is_empty());
        assert_eq!(d.gammas, vec![1]);
        assert_eq!(d.predicted_delta, BigInt::from(0));
        assert_eq!(d.actual_delta, BigInt::from(0));
    }

    #[test]
    fn deletion_delta_errors() {
        let p = chain(2);
        assert_eq!(deletion_delta(&p, 1), Err(Error::NotMinimal("b".into())));
        let single = build_poset(&["a"], &[]).unwrap();
        assert_eq!(deletion_delta(&single, 0), Err(Error::IsIsolated("a".into())));
    }

    #[test]
    fn gap_additive_over_disjoint_union() {
        let p = x_poset();
        let q = chain(3);
        let u = p.disjoint_union(&q).unwrap();
        assert_eq!(gap_value(&u), gap_value(&p) + gap_value(&q));
    }
}

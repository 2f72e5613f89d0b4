//! Poset generation: exhaustive enumeration of all labeled posets of a given
//! size, optional isomorphism dedupe via canonical forms, and seeded random
//! posets.
//!
//! Labeled enumeration extends each transitively closed order on `k`
//! elements by one new element, choosing a down-set `D` (elements below the
//! new one) and an up-set `U` (elements above it) with `D x U` already in the
//! order. Every labeled poset on `k + 1` elements arises from exactly one
//! such triple, so each is produced exactly once and in a deterministic
//! order.

use std::collections::HashSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poset::{bits, default_labels, Poset, MAX_ELEMENTS};

/// Practical caps: labeled enumeration is feasible through `n = 7`
/// (6,129,859 posets), canonical dedupe scans `n!` permutations per poset.
pub const MAX_LABELED_N: usize = 7;
pub const MAX_CANONICAL_N: usize = 6;

/// Whether enumeration yields every labeled poset or one representative per
/// isomorphism class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DedupeMode {
    Labeled,
    Canonical,
}

/// All transitively closed strict orders on `k` labeled elements, as bitmask
/// row matrices.
fn closed_orders(k: usize) -> Vec<Vec<u64>> {
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..k {
        level = level.iter().flat_map(|up| extensions(up)).collect();
    }
    level
}

/// Every closed order obtained by appending one element to `up`.
fn extensions(up: &[u64]) -> Vec<Vec<u64>> {
    let k = up.len();
    let new_bit = 1u64 << k;
    let mut down = vec![0u64; k];
    for (i, &row) in up.iter().enumerate() {
        for j in bits(row) {
            down[j] |= 1u64 << i;
        }
    }
    let down_closed: Vec<u64> = (0..1u64 << k)
        .filter(|&d| bits(d).all(|i| down[i] & !d == 0))
        .collect();
    let up_closed: Vec<u64> = (0..1u64 << k)
        .filter(|&u| bits(u).all(|i| up[i] & !u == 0))
        .collect();
    let mut out = Vec::new();
    for &d in &down_closed {
        for &u in &up_closed {
            if d & u != 0 || bits(d).any(|i| u & !up[i] != 0) {
                continue;
            }
            let mut rows: Vec<u64> = up
                .iter()
                .enumerate()
                .map(|(i, &row)| if d >> i & 1 == 1 { row | new_bit } else { row })
                .collect();
            rows.push(u);
            out.push(rows);
        }
    }
    out
}

/// Stream every poset on `n` labeled elements (deterministic order), or one
/// representative per isomorphism class in canonical mode.
pub fn enumerate_posets(
    n: usize,
    dedupe: DedupeMode,
) -> Result<Box<dyn Iterator<Item = Poset> + Send>> {
    let cap = match dedupe {
        DedupeMode::Labeled => MAX_LABELED_N,
        DedupeMode::Canonical => MAX_CANONICAL_N,
    };
    if n > cap {
        return Err(Error::SizeTooLarge { n, max: cap });
    }
    let labels = default_labels(n);
    let parents = closed_orders(n.saturating_sub(1));
    let labeled = parents.into_iter().flat_map(move |up| {
        let labels = labels.clone();
        let rows = if n == 0 { vec![up] } else { extensions(&up) };
        rows.into_iter().map(move |rows| Poset::from_closed(labels.clone(), rows))
    });
    match dedupe {
        DedupeMode::Labeled => Ok(Box::new(labeled)),
        DedupeMode::Canonical => {
            let mut seen: HashSet<Vec<u8>> = HashSet::new();
            Ok(Box::new(labeled.filter(move |p| {
                seen.insert(canonical_form(p).expect("size checked above"))
            })))
        }
    }
}

/// Count posets per size without materializing them.
pub fn count_posets(n: usize, dedupe: DedupeMode) -> Result<u64> {
    Ok(enumerate_posets(n, dedupe)?.count() as u64)
}

/// Isomorphism-invariant byte string: the lexicographically least relation
/// matrix over all relabelings, packed row-major behind a length byte.
///
/// Scans all `n!` permutations, so it is limited to small posets.
pub fn canonical_form(p: &Poset) -> Result<Vec<u8>> {
    let n = p.len();
    if n > MAX_CANONICAL_N {
        return Err(Error::SizeTooLarge { n, max: MAX_CANONICAL_N });
    }
    let mut best = u64::MAX;
    let mut perm: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut perm, &mut |perm| {
        let mut code = 0u64;
        for i in 0..n {
            for j in 0..n {
                if p.less_than(perm[i], perm[j]) {
                    code |= 1u64 << (i * n + j);
                }
            }
        }
        best = best.min(code);
    });
    let mut bytes = vec![n as u8];
    bytes.extend_from_slice(&best.to_le_bytes()[..(n * n + 7) / 8]);
    Ok(bytes)
}

/// Heap's algorithm; calls `f` with each permutation of the slice.
fn for_each_permutation(items: &mut [usize], f: &mut impl FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k {
            go(k - 1, items, f);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    go(items.len(), items, f);
}

/// Seeded random poset: sample each upper-triangular pair with the given
/// probability under a uniformly random permutation of the elements, then
/// close transitively. Deterministic for a fixed seed.
pub fn random_poset(n: usize, edge_probability: f64, seed: u64) -> Poset {
    assert!(n <= MAX_ELEMENTS, "random_poset supports at most {MAX_ELEMENTS} elements");
    assert!(
        (0.0..=1.0).contains(&edge_probability),
        "edge probability must lie in [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut up = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_probability) {
                up[perm[i]] |= 1u64 << perm[j];
            }
        }
    }
    Poset::from_raw_relation(default_labels(n), up)
        .expect("sampled relation is acyclic by construction")
}

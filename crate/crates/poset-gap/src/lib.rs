//! Facet counts of the two polytopes attached to a finite poset, and the gap
//! between them.
//!
//! Every finite poset `P` on `n` elements carries an order polytope (monotone
//! `[0,1]`-labelings) and a chain polytope (`[0,1]`-labelings whose sums along
//! chains stay below 1). Both are `n`-dimensional, and their facets are
//! counted by simple poset statistics:
//!
//! * order polytope: `maxx(P) + minn(P) + edges(P)` — maximal elements,
//!   minimal elements, and Hasse-diagram edges;
//! * chain polytope: `maxchains(P) + n` — maximal chains plus elements.
//!
//! The chain polytope never has fewer facets; the difference is the **gap**.
//! This crate computes the gap from the counting formulas, the per-element
//! chain counts `uc`/`dc` and **crossing numbers** `(uc-1)(dc-1)` that bound
//! it, and the structural classification of gap-0 posets (X-avoiding) and
//! gap-1 posets (X-orchids). An enumeration harness re-verifies every one of
//! those identities over all small posets and seeded random posets.
//!
//! ```
//! use poset_gap::{build_poset, classify, gap, GapClass};
//!
//! // Two incomparable elements below a center, two above: the X poset.
//! let x = build_poset(
//!     &["a", "b", "c", "d", "e"],
//!     &[("a", "c"), ("b", "c"), ("c", "d"), ("c", "e")],
//! )?;
//!
//! let report = gap(&x);
//! assert_eq!(report.chain_facets, 9u32.into());  // 4 maximal chains + 5 elements
//! assert_eq!(report.order_facets, 8);            // 2 maximal + 2 minimal + 4 edges
//! assert_eq!(report.gap, 1.into());
//!
//! assert_eq!(classify(&x).gap_class, GapClass::One);
//! # Ok::<(), poset_gap::Error>(())
//! ```

pub mod chains;
pub mod classify;
pub mod enumerate;
mod error;
pub mod gap;
pub mod io;
pub mod poset;
pub mod verify;

pub use chains::{
    compute_metrics, enumerate_maximal_chains, enumerate_maximal_chains_capped, ChainMetrics,
    DEFAULT_CHAIN_CAP,
};
pub use classify::{
    classify, find_orchid_stalk, find_x_witness, is_x_avoiding, is_x_avoiding_by_crossings,
    is_x_avoiding_structural, is_x_orchid, is_x_orchid_by_crossings, is_x_orchid_structural,
    Classification, GapClass, OrchidStalk, XWitness,
};
pub use enumerate::{
    canonical_form, count_posets, enumerate_posets, random_poset, DedupeMode, MAX_CANONICAL_N,
    MAX_LABELED_N,
};
pub use error::{Error, Result};
pub use gap::{
    bounds, bounds_capped, chain_polytope_facets, deletion_delta, enumerate_maximal_antichains,
    enumerate_maximal_antichains_capped, gap, gap_value, gap_with_metrics, order_polytope_facets,
    BoundsReport, DeletionDelta, GapReport, GapTerms, DEFAULT_ANTICHAIN_CAP,
};
pub use io::{
    export_dot, parse_poset_auto, parse_poset_json, parse_poset_text, serialize_poset_json,
    serialize_poset_text, PosetDocument,
};
pub use poset::{build_poset, Poset, MAX_ELEMENTS};
pub use verify::{
    run_check, run_checks, sample_maximal_antichains, sweep, verify_all, CheckKind, CheckOptions,
    CheckStats, EnumerationConfig, Outcome, VerificationReport, Violation, ALL_CHECKS,
    RANDOM_SWEEP_CHECKS,
};

// The guide chapters under book/src/ double as doc-tests so their snippets
// can never drift from the crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/posets.md")]
    mod posets {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/gap.md")]
    mod gap {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

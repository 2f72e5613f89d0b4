//! The verification harness: run every structural identity of the library as
//! a checkable predicate over enumerated or random posets and aggregate the
//! outcomes.
//!
//! Checks are data, not assertions: a failed check becomes a [`Violation`]
//! carrying the full text serialization of the offending poset, so any
//! failure can be replayed as a unit test by pasting one string.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::iter::{IntoParallelIterator, ParallelBridge, ParallelIterator};
use serde::Serialize;

use crate::chains::{compute_metrics, enumerate_maximal_chains_capped, DEFAULT_CHAIN_CAP};
use crate::classify::{find_orchid_stalk, find_x_witness, is_x_orchid_by_crossings};
use crate::enumerate::{enumerate_posets, DedupeMode};
use crate::error::{Error, Result};
use crate::gap::{
    bounds_for_antichain, deletion_delta, enumerate_maximal_antichains_capped, gap_with_metrics,
    DEFAULT_ANTICHAIN_CAP,
};
use crate::io::serialize_poset_text;
use crate::poset::Poset;

/// Parameters for [`verify_all`] and the random generator.
#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    pub max_n: usize,
    pub dedupe: DedupeMode,
    pub seed: u64,
    pub count: usize,
    pub edge_probability: f64,
    pub workers: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_n: 5,
            dedupe: DedupeMode::Labeled,
            seed: 0,
            count: 0,
            edge_probability: 0.3,
            workers: 1,
        }
    }
}

/// The individual checks the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Deleting a minimal nonmaximal element changes the gap by
    /// `sum(uc(beta)) - s` over the covers that cover two or more elements.
    DeletionDelta,
    /// For every maximal antichain, the gap lies between the crossing-number
    /// sum and the `uc * dc - 1` sum.
    AntichainBounds,
    /// Gap 0, no X-shaped subposet, and all-zero crossing numbers coincide.
    GapZeroEquivalence,
    /// Gap 1, the structural orchid detector, and the crossing-number orchid
    /// detector coincide.
    GapOneEquivalence,
    /// The chain-count DP agrees with explicit chain enumeration.
    MetricsVsEnumeration,
    /// For every maximal antichain, `sum(uc * dc)` equals the number of
    /// maximal chains.
    AntichainIdentity,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::DeletionDelta => "deletion_delta",
            CheckKind::AntichainBounds => "antichain_bounds",
            CheckKind::GapZeroEquivalence => "gap_zero_equivalence",
            CheckKind::GapOneEquivalence => "gap_one_equivalence",
            CheckKind::MetricsVsEnumeration => "metrics_vs_enumeration",
            CheckKind::AntichainIdentity => "antichain_identity",
        }
    }
}

/// Everything, for exhaustive verification.
pub const ALL_CHECKS: [CheckKind; 6] = [
    CheckKind::DeletionDelta,
    CheckKind::AntichainBounds,
    CheckKind::GapZeroEquivalence,
    CheckKind::GapOneEquivalence,
    CheckKind::MetricsVsEnumeration,
    CheckKind::AntichainIdentity,
];

/// The subset used for random sweeps, where explicit chain enumeration may
/// be too large to be worthwhile.
pub const RANDOM_SWEEP_CHECKS: [CheckKind; 4] = [
    CheckKind::DeletionDelta,
    CheckKind::AntichainBounds,
    CheckKind::GapZeroEquivalence,
    CheckKind::GapOneEquivalence,
];

/// Enumeration caps and the sampling fallback used when a poset has more
/// maximal antichains than the cap.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub chain_cap: u64,
    pub antichain_cap: usize,
    /// How many random maximal antichains to draw when enumeration overflows.
    pub antichain_samples: usize,
    pub sample_seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            chain_cap: DEFAULT_CHAIN_CAP,
            antichain_cap: DEFAULT_ANTICHAIN_CAP,
            antichain_samples: 64,
            sample_seed: 0x9e3779b9,
        }
    }
}

/// Outcome of one check on one poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// The check could not run (enumeration above cap); not a violation.
    Skipped(String),
}

/// Pass/fail/skip tallies for one named check.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckStats {
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
}

/// A failed check, with the poset serialized for replay.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub poset: String,
    pub check: String,
    pub details: String,
}

/// Aggregated results of a verification run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub posets_checked: BTreeMap<usize, u64>,
    pub checks: BTreeMap<String, CheckStats>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.violations.is_empty() && self.checks.values().all(|s| s.fail == 0)
    }

    pub fn total_posets(&self) -> u64 {
        self.posets_checked.values().sum()
    }

    fn merge(mut self, other: VerificationReport) -> VerificationReport {
        for (n, count) in other.posets_checked {
            *self.posets_checked.entry(n).or_default() += count;
        }
        for (name, stats) in other.checks {
            let entry = self.checks.entry(name).or_default();
            entry.pass += stats.pass;
            entry.fail += stats.fail;
            entry.skipped += stats.skipped;
        }
        self.violations.extend(other.violations);
        self
    }

    pub fn record(&mut self, p: &Poset, kind: CheckKind, outcome: &Outcome) {
        let stats = self.checks.entry(kind.name().to_string()).or_default();
        match outcome {
            Outcome::Pass => stats.pass += 1,
            Outcome::Skipped(_) => stats.skipped += 1,
            Outcome::Fail(details) => {
                stats.fail += 1;
                self.violations.push(Violation {
                    poset: serialize_poset_text(p),
                    check: kind.name().to_string(),
                    details: details.clone(),
                });
            }
        }
    }

    /// Human-readable rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::from("posets checked:");
        for (n, count) in &self.posets_checked {
            out.push_str(&format!(" n={n}: {count}"));
        }
        out.push_str(&format!("  (total {})\n", self.total_posets()));
        out.push_str(&format!("{:<24} {:>10} {:>8} {:>8}\n", "check", "pass", "fail", "skipped"));
        for (name, stats) in &self.checks {
            out.push_str(&format!(
                "{:<24} {:>10} {:>8} {:>8}\n",
                name, stats.pass, stats.fail, stats.skipped
            ));
        }
        if self.violations.is_empty() {
            out.push_str("violations: none\n");
        } else {
            out.push_str(&format!("violations: {}\n", self.violations.len()));
            for v in &self.violations {
                out.push_str(&format!("--- {} ---\n{}{}\n", v.check, v.poset, v.details));
            }
        }
        out
    }
}

/// Run one check against one poset.
pub fn run_check(p: &Poset, kind: CheckKind, opts: &CheckOptions) -> Outcome {
    match kind {
        CheckKind::DeletionDelta => check_deletion_delta(p),
        CheckKind::AntichainBounds => check_antichain_bounds(p, opts),
        CheckKind::GapZeroEquivalence => check_gap_zero(p),
        CheckKind::GapOneEquivalence => check_gap_one(p),
        CheckKind::MetricsVsEnumeration => check_metrics_vs_enumeration(p, opts),
        CheckKind::AntichainIdentity => check_antichain_identity(p, opts),
    }
}

/// Run a set of checks against one poset, producing a one-poset report.
pub fn run_checks(p: &Poset, kinds: &[CheckKind], opts: &CheckOptions) -> VerificationReport {
    let mut report = VerificationReport::default();
    *report.posets_checked.entry(p.len()).or_default() += 1;
    for &kind in kinds {
        let outcome = run_check(p, kind, opts);
        report.record(p, kind, &outcome);
    }
    report
}

/// Exhaustively verify every check over all posets with sizes `1..=max_n`.
///
/// Verification of independent posets runs on a worker pool of
/// `config.workers` threads; the aggregated report does not depend on the
/// schedule (violations are sorted at the end).
pub fn verify_all(config: &EnumerationConfig) -> Result<VerificationReport> {
    let opts = CheckOptions::default();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .expect("worker pool construction");
    let mut report = VerificationReport::default();
    for n in 1..=config.max_n {
        let stream = enumerate_posets(n, config.dedupe)?;
        let partial = pool.install(|| {
            stream
                .par_bridge()
                .map(|p| run_checks(&p, &ALL_CHECKS, &opts))
                .reduce(VerificationReport::default, VerificationReport::merge)
        });
        report = report.merge(partial);
    }
    report.violations.sort();
    Ok(report)
}

fn check_deletion_delta(p: &Poset) -> Outcome {
    for alpha in p.minimal_elements() {
        if p.is_maximal(alpha) {
            continue;
        }
        let dd = deletion_delta(p, alpha).expect("alpha is minimal and nonmaximal");
        if dd.predicted_delta != dd.actual_delta {
            return Outcome::Fail(format!(
                "deleting `{}`: predicted gap change {} but observed {}",
                p.name(alpha),
                dd.predicted_delta,
                dd.actual_delta
            ));
        }
    }
    Outcome::Pass
}

/// Maximal antichains for checking: full enumeration when it fits the cap,
/// otherwise a seeded sample of greedily completed antichains.
fn antichains_for_check(p: &Poset, opts: &CheckOptions) -> Vec<Vec<usize>> {
    match enumerate_maximal_antichains_capped(p, opts.antichain_cap) {
        Ok(all) => all,
        Err(_) => sample_maximal_antichains(p, opts.antichain_samples, opts.sample_seed),
    }
}

/// Draw maximal antichains by greedy completion over shuffled element orders.
pub fn sample_maximal_antichains(p: &Poset, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: HashSet<Vec<usize>> = HashSet::new();
    let mut order: Vec<usize> = (0..p.len()).collect();
    for _ in 0..count {
        order.shuffle(&mut rng);
        let mut antichain: Vec<usize> = Vec::new();
        for &v in &order {
            if antichain.iter().all(|&u| p.incomparable(u, v)) {
                antichain.push(v);
            }
        }
        antichain.sort_unstable();
        out.insert(antichain);
    }
    let mut sets: Vec<Vec<usize>> = out.into_iter().collect();
    sets.sort();
    sets
}

fn check_antichain_bounds(p: &Poset, opts: &CheckOptions) -> Outcome {
    let metrics = compute_metrics(p);
    let gap = gap_with_metrics(p, &metrics).gap;
    for antichain in antichains_for_check(p, opts) {
        let report = bounds_for_antichain(&metrics, &gap, antichain);
        if report.lower > report.upper {
            return Outcome::Fail(format!(
                "antichain {:?}: lower bound {} exceeds upper bound {}",
                report.antichain, report.lower, report.upper
            ));
        }
        if !report.holds {
            return Outcome::Fail(format!(
                "antichain {:?}: gap {} outside [{}, {}]",
                report.antichain, report.gap, report.lower, report.upper
            ));
        }
    }
    Outcome::Pass
}

fn check_gap_zero(p: &Poset) -> Outcome {
    let metrics = compute_metrics(p);
    let gap_is_zero = gap_with_metrics(p, &metrics).gap == BigInt::zero();
    let witness = find_x_witness(p);
    if let Some(w) = witness {
        if !w.is_valid(p) {
            return Outcome::Fail(format!("returned X-witness {w:?} fails its own conditions"));
        }
    }
    let avoiding = witness.is_none();
    let crossings_zero = metrics.all_crossings_zero();
    if gap_is_zero != avoiding || avoiding != crossings_zero {
        return Outcome::Fail(format!(
            "gap==0 is {gap_is_zero}, X-avoiding is {avoiding}, all-crossings-zero is {crossings_zero}"
        ));
    }
    Outcome::Pass
}

fn check_gap_one(p: &Poset) -> Outcome {
    let metrics = compute_metrics(p);
    let gap_is_one = gap_with_metrics(p, &metrics).gap == BigInt::one();
    let stalk = find_orchid_stalk(p);
    if let Some(s) = &stalk {
        if !s.is_valid(p) {
            return Outcome::Fail(format!("returned stalk {s:?} fails its own conditions"));
        }
    }
    let structural = stalk.is_some();
    let counting = is_x_orchid_by_crossings(p, &metrics);
    if gap_is_one != structural || structural != counting {
        return Outcome::Fail(format!(
            "gap==1 is {gap_is_one}, structural orchid is {structural}, crossing orchid is {counting}"
        ));
    }
    Outcome::Pass
}

fn check_metrics_vs_enumeration(p: &Poset, opts: &CheckOptions) -> Outcome {
    let metrics = compute_metrics(p);
    let chains = match enumerate_maximal_chains_capped(p, opts.chain_cap) {
        Ok(chains) => chains,
        Err(Error::TooManyChains { count, cap }) => {
            return Outcome::Skipped(format!("{count} maximal chains exceed cap {cap}"))
        }
        Err(e) => return Outcome::Fail(format!("chain enumeration failed: {e}")),
    };
    if metrics.total_maximal_chains() != &BigUint::from(chains.len()) {
        return Outcome::Fail(format!(
            "DP total {} but {} chains enumerated",
            metrics.total_maximal_chains(),
            chains.len()
        ));
    }
    for v in 0..p.len() {
        let ups: HashSet<&[usize]> = chains
            .iter()
            .filter_map(|c| c.iter().position(|&x| x == v).map(|i| &c[i..]))
            .collect();
        let downs: HashSet<&[usize]> = chains
            .iter()
            .filter_map(|c| c.iter().position(|&x| x == v).map(|i| &c[..=i]))
            .collect();
        let through = chains.iter().filter(|c| c.contains(&v)).count();
        if metrics.uc(v) != &BigUint::from(ups.len())
            || metrics.dc(v) != &BigUint::from(downs.len())
            || metrics.chains_through(v) != BigUint::from(through)
        {
            return Outcome::Fail(format!(
                "element `{}`: DP (uc, dc, through) = ({}, {}, {}) but enumeration gives ({}, {}, {})",
                p.name(v),
                metrics.uc(v),
                metrics.dc(v),
                metrics.chains_through(v),
                ups.len(),
                downs.len(),
                through
            ));
        }
    }
    Outcome::Pass
}

fn check_antichain_identity(p: &Poset, opts: &CheckOptions) -> Outcome {
    let metrics = compute_metrics(p);
    for antichain in antichains_for_check(p, opts) {
        let through: BigUint = antichain.iter().map(|&v| metrics.chains_through(v)).sum();
        if &through != metrics.total_maximal_chains() {
            return Outcome::Fail(format!(
                "antichain {:?}: sum of chains through members is {} but the poset has {} maximal chains",
                antichain,
                through,
                metrics.total_maximal_chains()
            ));
        }
    }
    Outcome::Pass
}

/// Check a batch of posets in parallel with the given checks.
pub fn sweep(
    posets: Vec<Poset>,
    kinds: &[CheckKind],
    opts: &CheckOptions,
    workers: usize,
) -> VerificationReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("worker pool construction");
    let mut report = pool.install(|| {
        posets
            .into_par_iter()
            .map(|p| run_checks(&p, kinds, opts))
            .reduce(VerificationReport::default, VerificationReport::merge)
    });
    report.violations.sort();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::random_poset;
    use crate::poset::build_poset;

    #[test]
    fn verify_tiny_sizes_clean() {
        let config = EnumerationConfig { max_n: 3, ..EnumerationConfig::default() };
        let report = verify_all(&config).unwrap();
        assert!(report.all_passed(), "{}", report.render_text());
        assert_eq!(report.posets_checked.get(&1), Some(&1));
        assert_eq!(report.posets_checked.get(&2), Some(&3));
        assert_eq!(report.posets_checked.get(&3), Some(&19));
        assert_eq!(report.total_posets(), 23);
        for kind in ALL_CHECKS {
            let stats = report.checks.get(kind.name()).unwrap();
            assert_eq!(stats.pass, 23);
            assert_eq!(stats.fail, 0);
        }
    }

    #[test]
    fn verify_singleton_trivially_passes() {
        let config = EnumerationConfig { max_n: 1, ..EnumerationConfig::default() };
        let report = verify_all(&config).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.total_posets(), 1);
    }

    #[test]
    fn workers_do_not_change_the_report() {
        let one = verify_all(&EnumerationConfig { max_n: 4, workers: 1, ..Default::default() })
            .unwrap();
        let four = verify_all(&EnumerationConfig { max_n: 4, workers: 4, ..Default::default() })
            .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn sampled_antichains_are_maximal() {
        let p = random_poset(12, 0.25, 99);
        for antichain in sample_maximal_antichains(&p, 32, 7) {
            for (i, &u) in antichain.iter().enumerate() {
                for &v in &antichain[i + 1..] {
                    assert!(p.incomparable(u, v));
                }
            }
            for v in 0..p.len() {
                if !antichain.contains(&v) {
                    assert!(antichain.iter().any(|&u| p.comparable(u, v)));
                }
            }
        }
    }

    #[test]
    fn violations_carry_replayable_posets() {
        // Force a fail by checking a deliberately wrong predicate through the
        // public surface: antichain bounds with a corrupted gap are not
        // reachable, so instead check that `record` round-trips.
        let p = build_poset(&["a", "b"], &[("a", "b")]).unwrap();
        let mut report = VerificationReport::default();
        report.record(&p, CheckKind::AntichainBounds, &Outcome::Fail("synthetic".into()));
        assert!(!report.all_passed());
        let replay = crate::io::parse_poset_text(&report.violations[0].poset).unwrap();
        assert_eq!(replay, p);
    }

    #[test]
    fn random_sweep_small_clean() {
        let opts = CheckOptions::default();
        let posets: Vec<Poset> =
            (0..200).map(|i| random_poset(1 + (i % 10) as usize, 0.3, 1000 + i)).collect();
        let report = sweep(posets, &RANDOM_SWEEP_CHECKS, &opts, 2);
        assert!(report.all_passed(), "{}", report.render_text());
        assert_eq!(report.total_posets(), 200);
    }
}

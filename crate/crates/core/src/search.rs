//! Enumeration and sampling of sign distributions on a fixed triangulation.
//!
//! Every visited distribution is analyzed and checked against all
//! restrictions. Distributions `sigma` and `-sigma` give the same
//! hypersurface, so only representatives with `+1` at the first vertex are
//! visited. A failed restriction or a topology anomaly stops the run and is
//! returned as a [`Reproducer`].

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lattice::Triangulation;
use crate::patchwork::{OrthantComplex, PatchworkComplex, SignDistribution};
use crate::restrictions::{check_all, RestrictionReport};
use crate::topology::{analyze, TopologyReport};

/// Default bound on `2^(#vertices)` in exhaustive mode, as a power of two.
pub const DEFAULT_CAP_LOG2: u32 = 26;
/// Default number of evaluations for hill climbing.
pub const DEFAULT_BUDGET: u64 = 20_000;
const SHARD: u64 = 1 << 12;
const CHAINS: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, samples: u64 },
    HillClimb { seed: u64, budget: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    MaxComponents,
    #[serde(rename = "max-p-n")]
    MaxPMinusN,
    #[serde(rename = "min-p-n")]
    MinPMinusN,
    /// Tight or violated restrictions rank first.
    ViolationHunt,
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-components" => Ok(Objective::MaxComponents),
            "max-p-n" => Ok(Objective::MaxPMinusN),
            "min-p-n" => Ok(Objective::MinPMinusN),
            "violation-hunt" => Ok(Objective::ViolationHunt),
            _ => invalid(format!("unknown objective {s:?}")),
        }
    }
}

impl Objective {
    pub fn score(self, r: &TopologyReport, rr: &RestrictionReport) -> i64 {
        let pn = r.p_minus_n().unwrap_or(0);
        match self {
            Objective::MaxComponents => r.component_count() as i64,
            Objective::MaxPMinusN => pn,
            Objective::MinPMinusN => -pn,
            Objective::ViolationHunt => {
                let min_slack = rr.entries.iter().filter(|e| e.applicable).filter_map(|e| e.slack).min().unwrap_or(0);
                rr.failures().count() as i64 * 1_000_000 - min_slack
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub triangulation: Triangulation,
    pub mode: Mode,
    pub objective: Objective,
    /// Number of best instances to keep.
    pub keep: usize,
    pub cap_log2: u32,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub filters: Filters,
}

/// Conditions an instance must meet to enter the best list. Scoring and
/// statistics still cover every visited instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Filters {
    pub min_components: Option<usize>,
    /// Keep only M-curves and M-surfaces.
    pub maximal_only: bool,
}

impl Filters {
    pub fn accepts(&self, r: &TopologyReport) -> bool {
        self.min_components.is_none_or(|m| r.component_count() >= m) && (!self.maximal_only || r.is_m())
    }
}

impl SearchTask {
    pub fn new(triangulation: Triangulation, mode: Mode, objective: Objective) -> Self {
        SearchTask { triangulation, mode, objective, keep: 5, cap_log2: DEFAULT_CAP_LOG2, workers: None, filters: Filters::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    /// Position in the enumeration (exhaustive) or evaluation counter.
    pub index: u64,
    pub score: i64,
    pub signs: SignDistribution,
    pub report: TopologyReport,
    pub restrictions: RestrictionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reproducer {
    pub index: u64,
    pub signs: SignDistribution,
    pub messages: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchStats {
    pub visited: u64,
    /// Component count to number of visited classes.
    pub components: BTreeMap<usize, u64>,
    /// `p - n mod 8` for curves; empty for surfaces.
    pub p_minus_n_mod8: BTreeMap<i64, u64>,
    pub m_curves: u64,
    pub m1_curves: u64,
    pub max_components: usize,
}

impl SearchStats {
    fn record(&mut self, r: &TopologyReport) {
        self.visited += 1;
        let c = r.component_count();
        *self.components.entry(c).or_default() += 1;
        if let Some(pn) = r.p_minus_n() {
            *self.p_minus_n_mod8.entry(pn.rem_euclid(8)).or_default() += 1;
        }
        self.m_curves += (r.a_defect == 0) as u64;
        self.m1_curves += (r.a_defect == 1) as u64;
        self.max_components = self.max_components.max(c);
    }

    fn merge(&mut self, o: SearchStats) {
        self.visited += o.visited;
        for (k, v) in o.components {
            *self.components.entry(k).or_default() += v;
        }
        for (k, v) in o.p_minus_n_mod8 {
            *self.p_minus_n_mod8.entry(k).or_default() += v;
        }
        self.m_curves += o.m_curves;
        self.m1_curves += o.m1_curves;
        self.max_components = self.max_components.max(o.max_components);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub mode: Mode,
    pub objective: Objective,
    pub vertices: usize,
    pub best: Vec<Instance>,
    pub stats: SearchStats,
    /// Empty on a correct build.
    pub anomalies: Vec<Reproducer>,
}

/// The distribution differing from the one of `p` exactly at base vertex `v`;
/// only pieces of cells incident to copies of `v` are recomputed.
pub fn flip_neighborhood(p: &PatchworkComplex, v: usize) -> PatchworkComplex {
    let mut q = p.clone();
    q.flip(v);
    q
}

/// Sign vector of a class index: bit `k` set means `-1` at vertex `k + 1`.
fn signs_of(k: usize, bits: u64) -> Vec<i8> {
    let mut s = vec![1i8; k];
    for (i, x) in s.iter_mut().enumerate().skip(1) {
        if bits >> (i - 1) & 1 == 1 {
            *x = -1;
        }
    }
    s
}

fn canonical(mut s: Vec<i8>) -> Vec<i8> {
    if s[0] < 0 {
        s.iter_mut().for_each(|x| *x = -*x);
    }
    s
}

struct Partial {
    stats: SearchStats,
    best: Vec<Instance>,
    anomalies: Vec<Reproducer>,
}

struct Worker<'a> {
    objective: Objective,
    keep: usize,
    filters: Filters,
    stop: &'a AtomicBool,
    out: Partial,
}

impl Worker<'_> {
    fn new<'a>(task: &SearchTask, stop: &'a AtomicBool) -> Worker<'a> {
        Worker {
            objective: task.objective,
            keep: task.keep,
            filters: task.filters,
            stop,
            out: Partial { stats: SearchStats::default(), best: Vec::new(), anomalies: Vec::new() },
        }
    }

    /// Analyzes one complex; returns its score, or `None` after an anomaly.
    fn visit(&mut self, index: u64, p: &PatchworkComplex) -> Result<Option<i64>> {
        let r = analyze(p)?;
        let rr = check_all(&r)?;
        self.out.stats.record(&r);
        let mut messages = r.anomalies.clone();
        messages.extend(rr.failures().filter(|_| rr.critical).map(|e| format!("{} failed: {}", e.name, e.detail)));
        if !messages.is_empty() {
            self.out.anomalies.push(Reproducer { index, signs: p.signed().distribution(), messages });
            self.stop.store(true, Ordering::Relaxed);
            return Ok(None);
        }
        let score = self.objective.score(&r, &rr);
        if !self.filters.accepts(&r) {
            return Ok(Some(score));
        }
        let beats = self.out.best.len() < self.keep
            || self.out.best.last().is_some_and(|w| score > w.score);
        if !beats {
            return Ok(Some(score));
        }
        let signs = p.signed().distribution();
        if !self.out.best.iter().any(|b| b.signs == signs) {
            self.out.best.push(Instance { index, score, signs, report: r, restrictions: rr });
            sort_best(&mut self.out.best);
            self.out.best.truncate(self.keep);
        }
        Ok(Some(score))
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

fn sort_best(best: &mut [Instance]) {
    best.sort_by(|a, b| b.score.cmp(&a.score).then(a.index.cmp(&b.index)));
}

fn exhaustive_shard(task: &SearchTask, g: &Arc<OrthantComplex>, lo: u64, hi: u64, stop: &AtomicBool) -> Result<Partial> {
    let k = g.base_vertices().len();
    let mut w = Worker::new(task, stop);
    // Gray code inside the shard: consecutive classes differ at one vertex
    let gray = |i: u64| i ^ (i >> 1);
    let mut p = PatchworkComplex::from_base_signs(g.clone(), signs_of(k, gray(lo)))?;
    for i in lo..hi {
        if i > lo {
            let changed = (gray(i) ^ gray(i - 1)).trailing_zeros() as usize;
            p.flip(changed + 1);
        }
        if w.visit(gray(i), &p)?.is_none() || w.stopped() {
            break;
        }
    }
    Ok(w.out)
}

fn random_shard(task: &SearchTask, g: &Arc<OrthantComplex>, seed: u64, shard: u64, count: u64, stop: &AtomicBool) -> Result<Partial> {
    let k = g.base_vertices().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    let mut w = Worker::new(task, stop);
    for i in 0..count {
        let s = canonical((0..k).map(|_| if rng.gen() { 1 } else { -1 }).collect());
        let p = PatchworkComplex::from_base_signs(g.clone(), s)?;
        if w.visit(shard * SHARD + i, &p)?.is_none() || w.stopped() {
            break;
        }
    }
    Ok(w.out)
}

/// One restarting hill climber: single-vertex flips, sideways moves allowed,
/// restart after `4k` steps without improvement.
fn climb(task: &SearchTask, g: &Arc<OrthantComplex>, seed: u64, chain: u64, budget: u64, stop: &AtomicBool) -> Result<Partial> {
    let k = g.base_vertices().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chain);
    let mut w = Worker::new(task, stop);
    let mut evals = 0u64;
    let index = |e: u64| chain * budget + e;
    'restart: while evals < budget && !w.stopped() {
        let s = canonical((0..k).map(|_| if rng.gen() { 1 } else { -1 }).collect());
        let mut cur = PatchworkComplex::from_base_signs(g.clone(), s)?;
        let Some(mut score) = w.visit(index(evals), &cur)? else { break };
        evals += 1;
        let mut stale = 0;
        while evals < budget && !w.stopped() {
            // vertex 0 stays at +1
            let v = rng.gen_range(1..k);
            let next = flip_neighborhood(&cur, v);
            let Some(s) = w.visit(index(evals), &next)? else { break 'restart };
            evals += 1;
            if s > score {
                stale = 0;
            } else {
                stale += 1;
            }
            if s >= score {
                score = s;
                cur = next;
            }
            if stale > 4 * k {
                continue 'restart;
            }
        }
    }
    Ok(w.out)
}

pub fn run(task: &SearchTask) -> Result<SearchResult> {
    match task.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(|| run_in_pool(task)),
        None => run_in_pool(task),
    }
}

fn run_in_pool(task: &SearchTask) -> Result<SearchResult> {
    let g = OrthantComplex::new(&task.triangulation)?;
    let k = g.base_vertices().len();
    let stop = AtomicBool::new(false);
    let partials: Vec<Result<Partial>> = match task.mode {
        Mode::Exhaustive => {
            if k as u32 > task.cap_log2 {
                return Err(Error::CapExceeded { vertices: k, cap_log2: task.cap_log2 });
            }
            let total = 1u64 << (k - 1);
            let shards: Vec<u64> = (0..total.div_ceil(SHARD)).collect();
            shards
                .par_iter()
                .map(|&s| exhaustive_shard(task, &g, s * SHARD, ((s + 1) * SHARD).min(total), &stop))
                .collect()
        }
        Mode::Random { seed, samples } => {
            let shards: Vec<u64> = (0..samples.div_ceil(SHARD)).collect();
            shards
                .par_iter()
                .map(|&s| random_shard(task, &g, seed, s, SHARD.min(samples - s * SHARD), &stop))
                .collect()
        }
        Mode::HillClimb { seed, budget } => {
            let chains: Vec<u64> = (0..CHAINS.min(budget.max(1))).collect();
            let n = chains.len() as u64;
            chains
                .par_iter()
                .map(|&c| climb(task, &g, seed, c, budget / n + u64::from(c < budget % n), &stop))
                .collect()
        }
    };
    let mut stats = SearchStats::default();
    let mut best = Vec::new();
    let mut anomalies = Vec::new();
    for p in partials {
        let p = p?;
        stats.merge(p.stats);
        best.extend(p.best);
        anomalies.extend(p.anomalies);
    }
    sort_best(&mut best);
    let mut seen = Vec::new();
    best.retain(|b| {
        let fresh = !seen.contains(&b.signs);
        if fresh {
            seen.push(b.signs.clone());
        }
        fresh
    });
    best.truncate(task.keep);
    anomalies.sort_by_key(|a| a.index);
    Ok(SearchResult { mode: task.mode, objective: task.objective, vertices: k, best, stats, anomalies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::convex_triangulation;

    #[test]
    fn conics_exhaustively() {
        let t = convex_triangulation(2, 2).unwrap();
        let r = run(&SearchTask::new(t, Mode::Exhaustive, Objective::MaxComponents)).unwrap();
        assert_eq!(r.stats.visited, 32);
        assert_eq!(r.stats.max_components, 1);
        assert_eq!(r.stats.components.values().sum::<u64>(), 32);
        assert!(r.anomalies.is_empty());
        assert_eq!(r.best[0].score, 1);
        assert_eq!(r.best[0].signs.iter().next().unwrap().1, 1);
    }

    #[test]
    fn gray_order_matches_rebuilds() {
        let t = convex_triangulation(2, 3).unwrap();
        let g = OrthantComplex::new(&t).unwrap();
        let stop = AtomicBool::new(false);
        let task = SearchTask { keep: 1000, ..SearchTask::new(t, Mode::Exhaustive, Objective::MaxComponents) };
        let part = exhaustive_shard(&task, &g, 0, 512, &stop).unwrap();
        for inst in part.best.iter().take(50) {
            let fresh = PatchworkComplex::from_base_signs(g.clone(), signs_of(10, inst.index)).unwrap();
            assert_eq!(fresh.signed().distribution(), inst.signs);
        }
    }

    #[test]
    fn filters_restrict_the_best_list() {
        let t = convex_triangulation(2, 4).unwrap();
        let filters = Filters { min_components: Some(3), maximal_only: false };
        let task = SearchTask { keep: 1000, filters, ..SearchTask::new(t, Mode::Random { seed: 3, samples: 2000 }, Objective::MinPMinusN) };
        let r = run(&task).unwrap();
        assert!(!r.best.is_empty());
        assert!(r.best.iter().all(|b| b.report.component_count() >= 3));
        assert_eq!(r.stats.visited, 2000);
    }

    #[test]
    fn cap_is_enforced() {
        let t = convex_triangulation(2, 6).unwrap();
        let task = SearchTask { cap_log2: 20, ..SearchTask::new(t, Mode::Exhaustive, Objective::MaxComponents) };
        assert!(matches!(run(&task), Err(Error::CapExceeded { vertices: 28, cap_log2: 20 })));
    }

    #[test]
    fn deterministic_given_seed() {
        let t = convex_triangulation(2, 4).unwrap();
        let task = SearchTask::new(t, Mode::Random { seed: 7, samples: 5000 }, Objective::MaxPMinusN);
        let (a, b) = (run(&task).unwrap(), run(&task).unwrap());
        assert_eq!(a.stats, b.stats);
        assert_eq!(a.best.iter().map(|i| i.index).collect::<Vec<_>>(), b.best.iter().map(|i| i.index).collect::<Vec<_>>());
        let single = run(&SearchTask { workers: Some(1), ..task }).unwrap();
        assert_eq!(single.stats, a.stats);
    }

    #[test]
    fn hill_climb_finds_quartic_m_curves() {
        let t = convex_triangulation(2, 4).unwrap();
        let r = run(&SearchTask::new(t, Mode::HillClimb { seed: 1, budget: 3000 }, Objective::MaxComponents)).unwrap();
        assert_eq!(r.stats.visited, 3000);
        assert_eq!(r.best[0].report.component_count(), 4);
    }

    #[test]
    fn flip_is_an_involution() {
        let g = OrthantComplex::new(&convex_triangulation(2, 5).unwrap()).unwrap();
        let p = PatchworkComplex::from_base_signs(g, signs_of(21, 0x5a5a5)).unwrap();
        for v in 0..21 {
            let q = flip_neighborhood(&p, v);
            assert_ne!(q, p);
            assert_eq!(flip_neighborhood(&q, v), p);
        }
    }
}

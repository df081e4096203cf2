//! Exact branch-and-bound searches over partitions and partial spreads.
//!
//! Every search covers the lowest undecided point first. Candidate blocks for a
//! point are the subspaces whose least point is that point, since every lower
//! point is already decided. Point sets are bit masks precomputed per block.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{gaussian_binomial, PointSet, Space, Subspace};
use crate::gf::FieldSpec;
use crate::partition::SubspacePartition;
use crate::spreadlab::{find_subspace_through, find_subspace_within, PartialSpread};

/// Largest number of candidate blocks a search will precompute.
pub const BLOCK_LIMIT: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchKind {
    /// Fewest parts with largest part-dimension exactly t.
    MinPartitionMaxDim,
    /// Most parts with smallest part-dimension exactly t.
    MaxPartitionMinDim,
    MaxPartialSpread,
    MinMaximalSpread,
    TargetMaximalSpread { target: u64 },
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchKind::MinPartitionMaxDim => write!(f, "min-partition"),
            SearchKind::MaxPartitionMinDim => write!(f, "max-partition"),
            SearchKind::MaxPartialSpread => write!(f, "max-partial-spread"),
            SearchKind::MinMaximalSpread => write!(f, "min-maximal-spread"),
            SearchKind::TargetMaximalSpread { target } => write!(f, "maximal-spread-of-size-{target}"),
        }
    }
}

/// Node limit first, wall clock second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
    pub time: Option<Duration>,
}

impl Budget {
    pub fn nodes(nodes: u64) -> Self {
        Budget { nodes, time: None }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(100_000_000)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Fix the first t-space to the canonical one.
    pub symmetry: bool,
    /// Worker count; node counts are reproducible only with 1.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: Budget::default(), symmetry: true, threads: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct SearchProblem {
    pub kind: SearchKind,
    /// Ambient dimension (n for partitions, N for spreads).
    pub n: usize,
    pub t: usize,
    pub field: FieldSpec,
    pub options: SearchOptions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Exact,
    BudgetExceeded,
    Infeasible,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Exact => "exact",
            SearchStatus::BudgetExceeded => "budget-exceeded",
            SearchStatus::Infeasible => "infeasible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Partition(SubspacePartition),
    Spread(PartialSpread),
}

impl Certificate {
    pub fn len(&self) -> usize {
        match self {
            Certificate::Partition(p) => p.len(),
            Certificate::Spread(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub kind: SearchKind,
    pub n: usize,
    pub t: usize,
    pub q: usize,
    pub status: SearchStatus,
    /// Exact optimum, or the best value seen when the budget ran out.
    pub optimum: Option<u64>,
    pub certificate: Option<Certificate>,
    pub nodes: u64,
    /// Proven bounds on the optimum.
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    /// What the exhausted part of the tree establishes.
    pub proof: String,
}

impl SearchResult {
    pub fn is_exact(&self) -> bool {
        self.status == SearchStatus::Exact
    }
}

pub fn min_partition_size(n: usize, t: usize, field: &FieldSpec, options: SearchOptions) -> Result<SearchResult> {
    solve(&problem(SearchKind::MinPartitionMaxDim, n, t, field, options))
}

pub fn max_partition_size(n: usize, t: usize, field: &FieldSpec, options: SearchOptions) -> Result<SearchResult> {
    solve(&problem(SearchKind::MaxPartitionMinDim, n, t, field, options))
}

pub fn max_partial_spread_size(n: usize, t: usize, field: &FieldSpec, options: SearchOptions) -> Result<SearchResult> {
    solve(&problem(SearchKind::MaxPartialSpread, n, t, field, options))
}

pub fn min_maximal_spread_size(n: usize, t: usize, field: &FieldSpec, options: SearchOptions) -> Result<SearchResult> {
    solve(&problem(SearchKind::MinMaximalSpread, n, t, field, options))
}

pub fn find_maximal_spread_of_size(
    n: usize,
    t: usize,
    target: u64,
    field: &FieldSpec,
    options: SearchOptions,
) -> Result<SearchResult> {
    solve(&problem(SearchKind::TargetMaximalSpread { target }, n, t, field, options))
}

fn problem(kind: SearchKind, n: usize, t: usize, field: &FieldSpec, options: SearchOptions) -> SearchProblem {
    SearchProblem { kind, n, t, field: field.clone(), options }
}

pub fn solve(problem: &SearchProblem) -> Result<SearchResult> {
    let SearchProblem { kind, n, t, ref field, options } = *problem;
    if options.budget.nodes == 0 || options.threads == 0 {
        return Err(Error::OutOfRange("budget and thread count must be positive".into()));
    }
    match kind {
        SearchKind::MinPartitionMaxDim | SearchKind::MaxPartitionMinDim if !(1 < t && t < n) => {
            return Err(Error::OutOfRange(format!("partition searches need 1 < t < n, got n={n}, t={t}")))
        }
        SearchKind::TargetMaximalSpread { target: 0 } => {
            return Err(Error::OutOfRange("target size must be at least 1".into()))
        }
        _ if t == 0 || t > n => return Err(Error::BadDimension { n, d: t }),
        _ => {}
    }
    let space = Space::new(n, field.clone())?;
    let dims: Vec<usize> = match kind {
        SearchKind::MinPartitionMaxDim => (1..=t).rev().collect(),
        SearchKind::MaxPartitionMinDim => (t..=n).collect(),
        _ => vec![t],
    };
    let model = Model::new(space, t, &dims)?;
    let shared = Shared::new(options.budget);
    let mut result = match kind {
        SearchKind::MinPartitionMaxDim => model.optimize(Mode::MinParts, options, &shared),
        SearchKind::MaxPartitionMinDim => model.optimize(Mode::MaxParts, options, &shared),
        SearchKind::MaxPartialSpread => model.optimize(Mode::MaxSpread, options, &shared),
        SearchKind::TargetMaximalSpread { target } => model.optimize(Mode::Target(target), options, &shared),
        SearchKind::MinMaximalSpread => model.min_maximal(options, &shared),
    };
    result.kind = kind;
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    MinParts,
    MaxParts,
    MaxSpread,
    Target(u64),
}

impl Mode {
    fn minimizes(self) -> bool {
        self == Mode::MinParts
    }

    fn allows_holes(self) -> bool {
        matches!(self, Mode::MaxSpread | Mode::Target(_))
    }
}

struct Model {
    space: Arc<Space>,
    t: usize,
    words: usize,
    theta_t: u64,
    subspaces: Vec<Subspace>,
    dims: Vec<usize>,
    masks: Vec<u64>,
    /// Block indices by least point, in candidate order.
    through: Vec<Vec<u32>>,
    /// Index of the canonical first t-space.
    first_t: u32,
}

impl Model {
    fn new(space: Arc<Space>, t: usize, dims: &[usize]) -> Result<Self> {
        let q = space.q() as u64;
        let total: BigUint = dims.iter().map(|&d| gaussian_binomial(space.n(), d, q)).sum::<Result<BigUint>>()?;
        if total > BigUint::from(BLOCK_LIMIT) {
            return Err(Error::TooLarge(format!("{total} candidate subspaces exceed the limit {BLOCK_LIMIT}")));
        }
        let words = space.num_points().div_ceil(64);
        let mut model = Model {
            t,
            words,
            theta_t: space.theta(t) as u64,
            subspaces: Vec::new(),
            dims: Vec::new(),
            masks: Vec::new(),
            through: vec![Vec::new(); space.num_points()],
            first_t: u32::MAX,
            space,
        };
        for &d in dims {
            for w in model.space.subspaces(d)? {
                let idx = model.subspaces.len() as u32;
                if d == t && model.first_t == u32::MAX {
                    model.first_t = idx;
                }
                let pts = model.space.point_indices(&w);
                let mut mask = vec![0u64; words];
                for &p in &pts {
                    mask[p / 64] |= 1 << (p % 64);
                }
                model.masks.extend_from_slice(&mask);
                model.through[*pts.iter().min().expect("nonzero subspace")].push(idx);
                model.subspaces.push(w);
                model.dims.push(d);
            }
        }
        Ok(model)
    }

    fn mask(&self, b: u32) -> &[u64] {
        let s = b as usize * self.words;
        &self.masks[s..s + self.words]
    }

    fn total(&self) -> u64 {
        self.space.num_points() as u64
    }

    fn certificate(&self, mode: Mode, chosen: &[u32]) -> Certificate {
        let parts: Vec<Subspace> = chosen.iter().map(|&b| self.subspaces[b as usize].clone()).collect();
        if mode.allows_holes() {
            Certificate::Spread(PartialSpread::new(self.space.clone(), self.t, parts).expect("disjoint t-spaces"))
        } else {
            Certificate::Partition(SubspacePartition::validate(self.space.clone(), parts).expect("exact cover"))
        }
    }

    /// Root bound on the objective: ⌈θ_n/θ_t⌉ for minima, ⌊θ_n/θ_t⌋ for maxima.
    fn root_bound(&self, mode: Mode) -> u64 {
        match mode {
            Mode::MinParts => self.total().div_ceil(self.theta_t),
            Mode::Target(s) => s,
            _ => self.total() / self.theta_t,
        }
    }

    fn optimize(&self, mode: Mode, options: SearchOptions, shared: &Shared) -> SearchResult {
        let root = Engine::root(self, mode, options.symmetry, shared, 0);
        let outcome = if options.threads == 1 {
            let mut e = root;
            e.dfs();
            Outcome { best: e.best, aborted: shared.aborted.load(Ordering::Relaxed) }
        } else {
            self.parallel(root, options.threads)
        };
        self.summarize(mode, outcome, shared)
    }

    fn parallel(&self, root: Engine<'_>, threads: usize) -> Outcome {
        let branches = root.branches();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        let found: Vec<Option<(u64, Vec<u32>)>> = pool.install(|| {
            branches
                .into_par_iter()
                .enumerate()
                .map(|(i, mut e)| {
                    e.branch = i;
                    e.dfs();
                    e.best
                })
                .collect()
        });
        let mode = root.mode;
        let mut best: Option<(u64, Vec<u32>)> = None;
        for cand in found.into_iter().flatten() {
            let better = match &best {
                None => true,
                Some((v, _)) if mode.minimizes() => cand.0 < *v,
                Some((v, _)) => cand.0 > *v,
            };
            if better {
                best = Some(cand);
            }
        }
        Outcome { best, aborted: root.shared.aborted.load(Ordering::Relaxed) }
    }

    fn summarize(&self, mode: Mode, outcome: Outcome, shared: &Shared) -> SearchResult {
        let nodes = shared.nodes.load(Ordering::Relaxed);
        let optimum = outcome.best.as_ref().map(|b| b.0);
        let certificate = outcome.best.as_ref().map(|(_, c)| self.certificate(mode, c));
        let bound = self.root_bound(mode);
        let (n, t) = (self.space.n(), self.t);
        let (status, lower, upper, proof) = if outcome.aborted {
            let (lower, upper) = match mode {
                Mode::MinParts => (Some(bound), optimum),
                Mode::Target(_) => (None, None),
                _ => (optimum, Some(bound)),
            };
            let proof = match optimum {
                Some(v) => format!("budget exhausted after {nodes} nodes; best value found {v}"),
                None => format!("budget exhausted after {nodes} nodes; nothing found"),
            };
            (SearchStatus::BudgetExceeded, lower, upper, proof)
        } else if let Some(v) = optimum {
            let proof = match mode {
                Mode::MinParts if v == bound => format!("{v} meets the counting bound ⌈θ_{n}/θ_{t}⌉"),
                Mode::MinParts => format!("exhausted: no partition with largest part-dimension {t} has fewer than {v} parts"),
                Mode::MaxParts if v == bound => format!("{v} meets the counting bound ⌊θ_{n}/θ_{t}⌋"),
                Mode::MaxParts => format!("exhausted: no partition with smallest part-dimension {t} has more than {v} parts"),
                Mode::MaxSpread if v == bound => format!("{v} meets the counting bound ⌊θ_{n}/θ_{t}⌋"),
                Mode::MaxSpread => format!("exhausted: no partial {t}-spread has more than {v} members"),
                Mode::Target(s) => format!("found a maximal partial {t}-spread of size {s}"),
            };
            (SearchStatus::Exact, optimum, optimum, proof)
        } else {
            let proof = match mode {
                Mode::Target(s) => format!("exhausted: no maximal partial {t}-spread of size {s} exists"),
                _ => format!("exhausted: no admissible configuration exists in V({n})"),
            };
            (SearchStatus::Infeasible, None, None, proof)
        };
        SearchResult {
            kind: SearchKind::MaxPartialSpread,
            n,
            t,
            q: self.space.q(),
            status,
            optimum,
            certificate,
            nodes,
            lower,
            upper,
            proof,
        }
    }

    /// Iterative deepening over the size of a maximal partial spread.
    fn min_maximal(&self, options: SearchOptions, shared: &Shared) -> SearchResult {
        let cap = self.root_bound(Mode::MaxSpread);
        for s in 1..=cap {
            let mut r = self.optimize(Mode::Target(s), options, shared);
            match r.status {
                SearchStatus::Infeasible => continue,
                SearchStatus::Exact => {
                    r.proof = format!(
                        "sizes 1..{} exhausted without a maximal partial {}-spread; found one of size {s}",
                        s - 1,
                        self.t
                    );
                    return r;
                }
                SearchStatus::BudgetExceeded => {
                    r.optimum = None;
                    r.lower = Some(s);
                    r.upper = Some(cap);
                    r.proof = format!("no maximal partial {}-spread of size ≤ {} exists; size {s} unfinished", self.t, s - 1);
                    return r;
                }
            }
        }
        let mut r = self.summarize(Mode::Target(cap), Outcome { best: None, aborted: false }, shared);
        r.proof = format!("exhausted all sizes 1..{cap}");
        r
    }
}

struct Outcome {
    best: Option<(u64, Vec<u32>)>,
    aborted: bool,
}

struct Shared {
    nodes: AtomicU64,
    budget: u64,
    deadline: Option<Instant>,
    aborted: AtomicBool,
    /// Best objective seen by any worker, `u64::MAX` or 0 when unset.
    global_min: AtomicU64,
    global_max: AtomicU64,
    /// Lowest branch that reached the root bound.
    done_at: AtomicUsize,
}

impl Shared {
    fn new(budget: Budget) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            budget: budget.nodes,
            deadline: budget.time.map(|d| Instant::now() + d),
            aborted: AtomicBool::new(false),
            global_min: AtomicU64::new(u64::MAX),
            global_max: AtomicU64::new(0),
            done_at: AtomicUsize::new(usize::MAX),
        }
    }
}

#[derive(Clone)]
struct Engine<'a> {
    model: &'a Model,
    shared: &'a Shared,
    mode: Mode,
    branch: usize,
    decided: Vec<u64>,
    decided_count: u64,
    holes: PointSet,
    hole_count: u64,
    chosen: Vec<u32>,
    t_parts: u64,
    best: Option<(u64, Vec<u32>)>,
    root_bound: u64,
}

impl<'a> Engine<'a> {
    fn root(model: &'a Model, mode: Mode, symmetry: bool, shared: &'a Shared, branch: usize) -> Self {
        let mut e = Engine {
            model,
            shared,
            mode,
            branch,
            decided: vec![0; model.words],
            decided_count: 0,
            holes: PointSet::new(model.space.num_points()),
            hole_count: 0,
            chosen: Vec::new(),
            t_parts: 0,
            best: None,
            root_bound: model.root_bound(mode),
        };
        if symmetry {
            e.place(model.first_t);
        }
        e
    }

    fn place(&mut self, b: u32) {
        for (d, m) in self.decided.iter_mut().zip(self.model.mask(b)) {
            *d |= m;
        }
        self.decided_count += self.model.space.theta(self.model.dims[b as usize]) as u64;
        self.chosen.push(b);
        if self.model.dims[b as usize] == self.model.t {
            self.t_parts += 1;
        }
    }

    fn unplace(&mut self) {
        let b = self.chosen.pop().expect("placed block");
        for (d, m) in self.decided.iter_mut().zip(self.model.mask(b)) {
            *d &= !m;
        }
        self.decided_count -= self.model.space.theta(self.model.dims[b as usize]) as u64;
        if self.model.dims[b as usize] == self.model.t {
            self.t_parts -= 1;
        }
    }

    fn mark_hole(&mut self, p: usize) {
        self.decided[p / 64] |= 1 << (p % 64);
        self.decided_count += 1;
        self.holes.insert(p);
        self.hole_count += 1;
    }

    fn unmark_hole(&mut self, p: usize) {
        self.decided[p / 64] &= !(1 << (p % 64));
        self.decided_count -= 1;
        self.holes.remove(p);
        self.hole_count -= 1;
    }

    fn fits(&self, b: u32) -> bool {
        self.decided.iter().zip(self.model.mask(b)).all(|(d, m)| d & m == 0)
    }

    fn anchor(&self) -> usize {
        for (k, &w) in self.decided.iter().enumerate() {
            if w != !0 {
                return k * 64 + (!w).trailing_zeros() as usize;
            }
        }
        unreachable!("anchor requested with every point decided")
    }

    fn count(&self) -> u64 {
        self.chosen.len() as u64
    }

    fn hole_budget(&self) -> u64 {
        match self.mode {
            Mode::Target(s) => self.model.total().saturating_sub(s * self.model.theta_t),
            _ => u64::MAX,
        }
    }

    /// True when the search must unwind: budget spent, or a lower branch already
    /// reached the root bound.
    fn tick(&self) -> bool {
        let n = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.shared.budget {
            self.shared.aborted.store(true, Ordering::Relaxed);
        }
        if n.is_multiple_of(4096) {
            if let Some(deadline) = self.shared.deadline {
                if Instant::now() >= deadline {
                    self.shared.aborted.store(true, Ordering::Relaxed);
                }
            }
        }
        self.shared.aborted.load(Ordering::Relaxed) || self.shared.done_at.load(Ordering::Relaxed) < self.branch
    }

    fn record(&mut self, value: u64) -> bool {
        let better = match &self.best {
            None => true,
            Some((v, _)) if self.mode.minimizes() => value < *v,
            Some((v, _)) => value > *v,
        };
        if better {
            self.best = Some((value, self.chosen.clone()));
            if self.mode.minimizes() {
                self.shared.global_min.fetch_min(value, Ordering::Relaxed);
            } else {
                self.shared.global_max.fetch_max(value + 1, Ordering::Relaxed);
            }
        }
        if value == self.root_bound {
            self.shared.done_at.fetch_min(self.branch, Ordering::Relaxed);
            return true;
        }
        false
    }

    /// Prune test on an optimistic bound. Ties with the global best are kept so
    /// each branch still finds its own first optimal certificate.
    fn pruned(&self, bound: u64) -> bool {
        if self.mode.minimizes() {
            let local = self.best.as_ref().is_some_and(|(v, _)| bound >= *v);
            local || bound > self.shared.global_min.load(Ordering::Relaxed)
        } else {
            let local = self.best.as_ref().is_some_and(|(v, _)| bound <= *v);
            let g = self.shared.global_max.load(Ordering::Relaxed);
            local || (g > 0 && bound < g - 1)
        }
    }

    /// Returns true to unwind the whole search.
    fn dfs(&mut self) -> bool {
        if self.tick() {
            return true;
        }
        let rem = self.model.total() - self.decided_count;
        let count = self.count();
        let tt = self.model.theta_t;
        match self.mode {
            Mode::MinParts => {
                if rem == 0 {
                    return self.t_parts > 0 && self.record(count);
                }
                if self.pruned(count + rem.div_ceil(tt)) {
                    return false;
                }
            }
            Mode::MaxParts | Mode::MaxSpread => {
                if rem == 0 {
                    return (self.mode == Mode::MaxSpread || self.t_parts > 0) && self.record(count);
                }
                if self.pruned(count + rem / tt) {
                    return false;
                }
            }
            Mode::Target(s) => {
                if count == s {
                    return self.leaf_is_maximal() && self.record(count);
                }
                if count + rem / tt < s {
                    return false;
                }
            }
        }
        let p = self.anchor();
        for i in 0..self.model.through[p].len() {
            let b = self.model.through[p][i];
            if !self.fits(b) {
                continue;
            }
            self.place(b);
            let stop = self.dfs();
            self.unplace();
            if stop {
                return true;
            }
        }
        if self.mode.allows_holes() && self.hole_count < self.hole_budget() {
            self.mark_hole(p);
            let dead = self.closes_hole_space(p);
            let stop = !dead && self.dfs();
            self.unmark_hole(p);
            if stop {
                return true;
            }
        }
        false
    }

    /// Holes are permanent, so a t-space inside them rules out maximality. Only
    /// t-spaces through the newest hole `p` need checking.
    fn closes_hole_space(&self, p: usize) -> bool {
        matches!(self.mode, Mode::Target(_)) && find_subspace_through(&self.model.space, &self.holes, p, self.model.t).is_some()
    }

    /// Every undecided point becomes a hole; maximal iff no t-space fits in them.
    fn leaf_is_maximal(&self) -> bool {
        let mut covered = self.decided.clone();
        for (c, h) in covered.iter_mut().zip(self.holes.words()) {
            *c &= !h;
        }
        let holes = PointSet::from_words(self.model.space.num_points(), covered).complement();
        find_subspace_within(&self.model.space, &holes, self.model.t).is_none()
    }

    /// Children of the root, in the order the sequential search visits them.
    fn branches(&self) -> Vec<Engine<'a>> {
        let mut out = Vec::new();
        if self.decided_count == self.model.total() {
            out.push(self.clone());
            return out;
        }
        let p = self.anchor();
        for &b in &self.model.through[p] {
            if self.fits(b) {
                let mut e = self.clone();
                e.place(b);
                out.push(e);
            }
        }
        if self.mode.allows_holes() && self.hole_count < self.hole_budget() {
            let mut e = self.clone();
            e.mark_hole(p);
            let dead = e.closes_hole_space(p);
            if !dead {
                out.push(e);
            }
        }
        out
    }
}

/// Size of a certificate as a `u64`, for cross-checks.
pub fn certificate_size(r: &SearchResult) -> Option<u64> {
    r.certificate.as_ref().and_then(|c| c.len().to_u64())
}

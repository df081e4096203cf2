//! The reproduction battery: every acceptance criterion as a list of checks,
//! each reported as `PASS|FAIL|SKIP <name> <value> <expected> <millis>`.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::{desarguesian_spread, embedded_spread_maximal, pi_big_m, pi_m};
use crate::formulas::{self, check_relations};
use crate::geometry::{gaussian_binomial, Space, Subspace};
use crate::gf::{FieldElement, FieldSpec};
use crate::partition::SubspacePartition;
use crate::search::{self, Budget, Certificate, SearchOptions, SearchResult, SearchStatus};
use crate::spreadlab::{PartialSpread, DEFAULT_BLOCKING_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub outcome: Outcome,
    pub name: String,
    pub value: String,
    pub expected: String,
    pub millis: u128,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clean = |s: &str| if s.is_empty() { "-".to_string() } else { s.replace(' ', "_") };
        write!(f, "{} {} {} {} {}", self.outcome, self.name, clean(&self.value), clean(&self.expected), self.millis)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Skip stretch items.
    pub quick: bool,
    /// Node budget for stretch searches; the exact searches always get 10^8.
    pub stretch_nodes: u64,
    pub seed: u64,
    pub threads: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { quick: false, stretch_nodes: 100_000_000, seed: 20_240_601, threads: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub index: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub millis: u128,
}

impl CriterionReport {
    pub fn outcome(&self) -> Outcome {
        if self.checks.iter().any(|c| c.outcome == Outcome::Fail) {
            Outcome::Fail
        } else if self.checks.iter().all(|c| c.outcome == Outcome::Skip) {
            Outcome::Skip
        } else {
            Outcome::Pass
        }
    }

    pub fn summary_line(&self) -> String {
        let count = |o| self.checks.iter().filter(|c| c.outcome == o).count();
        format!(
            "{} criterion-{} {} pass={} fail={} skip={} {}ms",
            self.outcome(),
            self.index,
            self.title.replace(' ', "-"),
            count(Outcome::Pass),
            count(Outcome::Fail),
            count(Outcome::Skip),
            self.millis
        )
    }
}

pub const CRITERIA: usize = 9;

const EXACT_NODES: u64 = 100_000_000;

type SearchFn = fn(usize, usize, &FieldSpec, SearchOptions) -> crate::Result<SearchResult>;

pub fn run_criterion(index: usize, opts: &SuiteOptions) -> CriterionReport {
    let start = Instant::now();
    let (title, checks) = match index {
        1 => ("formula values", formula_values()),
        2 => ("relations", relations()),
        3 => ("constructions", constructions()),
        4 => ("identity suites", identity_suites()),
        5 => ("search oracles", search_oracles(opts)),
        6 => ("glynn bound", glynn_bound(opts)),
        7 => ("embedded spreads", embedded_spreads()),
        8 => ("stretch pipeline", stretch(opts)),
        9 => ("property suites", property_suites(opts)),
        _ => panic!("criteria are numbered 1..={CRITERIA}"),
    };
    CriterionReport { index, title, checks, millis: start.elapsed().as_millis() }
}

/// All criteria in dependency order.
pub fn run_all(opts: &SuiteOptions) -> Vec<CriterionReport> {
    (1..=CRITERIA).map(|i| run_criterion(i, opts)).collect()
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: Vec::new() }
    }

    /// Runs `f`, which yields `(value, expected, ok)`, and fails it if it overran `limit`.
    fn check(&mut self, name: &str, limit: Duration, f: impl FnOnce() -> (String, String, bool)) {
        let start = Instant::now();
        let (value, expected, ok) = f();
        let took = start.elapsed();
        let (outcome, expected) = if !ok {
            (Outcome::Fail, expected)
        } else if took > limit {
            (Outcome::Fail, format!("{expected} within {}ms", limit.as_millis()))
        } else {
            (Outcome::Pass, expected)
        };
        self.checks.push(Check { outcome, name: name.into(), value, expected, millis: took.as_millis() });
    }

    fn skip(&mut self, name: &str, value: String, expected: String, millis: u128) {
        self.checks.push(Check { outcome: Outcome::Skip, name: name.into(), value, expected, millis });
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn gf(q: u64) -> FieldSpec {
    FieldSpec::of_order(q).expect("prime power")
}

fn formula_values() -> Vec<Check> {
    type F = fn(u32, u32, u64) -> crate::Result<formulas::ExtremalValue>;
    let cases: [(&str, F, u32, u32, u64, u64); 11] = [
        ("sigma", formulas::sigma, 5, 2, 2, 13),
        ("rho", formulas::rho, 5, 2, 2, 9),
        ("sigma", formulas::sigma, 7, 3, 2, 21),
        ("rho", formulas::rho, 7, 3, 2, 17),
        ("sigma", formulas::sigma, 8, 3, 2, 41),
        ("rho", formulas::rho, 8, 3, 2, 33),
        ("sigma", formulas::sigma, 5, 2, 3, 37),
        ("rho", formulas::rho, 5, 2, 3, 28),
        ("tau", formulas::tau, 5, 2, 2, 5),
        ("tau", formulas::tau, 6, 2, 2, 13),
        ("tau", formulas::tau, 8, 3, 2, 9),
    ];
    let mut r = Recorder::new();
    for (name, f, n, t, q, want) in cases {
        r.check(&format!("{name}_{q}({n},{t})"), secs(1), || {
            let v = f(n, t, q).map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
            (v.clone(), want.to_string(), v == want.to_string())
        });
    }
    r.checks
}

fn relations() -> Vec<Check> {
    let mut r = Recorder::new();
    r.check("relations(n≤24,q∈{2,3,4,5})", secs(5), || {
        let mut total = 0;
        let mut failed = Vec::new();
        for q in [2u64, 3, 4, 5] {
            for n in 4..=24u32 {
                for t in 2..=n / 2 {
                    total += 1;
                    match check_relations(n, t, q) {
                        Ok(rep) if rep.all_hold() => {}
                        _ => failed.push(format!("({n},{t},{q})")),
                    }
                }
            }
        }
        (format!("{} of {total} hold", total - failed.len()), format!("{total} of {total} hold"), failed.is_empty())
    });
    r.checks
}

/// `size:(m_3,m_2,m_1)`.
fn profile(p: &SubspacePartition) -> String {
    let ty = p.partition_type();
    let m: Vec<String> = [3, 2, 1].iter().map(|&d| ty.m(d).to_string()).collect();
    format!("{}:({})", p.len(), m.join(","))
}

fn constructions() -> Vec<Check> {
    let mut r = Recorder::new();
    let f2 = gf(2);
    r.check("pi_m(5,2,2)", secs(1), || match pi_m(5, 2, &f2) {
        Ok(c) => {
            let got = profile(&c.partition);
            (got.clone(), "9:(1,8,0)".into(), got == "9:(1,8,0)")
        }
        Err(e) => (e.to_string(), "9:(1,8,0)".into(), false),
    });
    r.check("pi_M(5,2,2)", secs(1), || match pi_big_m(5, 2, &f2) {
        Ok(c) => {
            let got = profile(&c.partition);
            (got.clone(), "13:(0,9,4)".into(), got == "13:(0,9,4)")
        }
        Err(e) => (e.to_string(), "13:(0,9,4)".into(), false),
    });
    r.check("pi_M(8,3,2)", secs(1), || match pi_big_m(8, 3, &f2) {
        Ok(c) => (c.partition.len().to_string(), "41".into(), c.partition.len() == 41),
        Err(e) => (e.to_string(), "41".into(), false),
    });
    r.checks
}

fn identity_suites() -> Vec<Check> {
    let f2 = gf(2);
    let mut r = Recorder::new();
    let start = Instant::now();
    let cases: Vec<(&str, crate::Result<SubspacePartition>)> = vec![
        ("pi_m(5,2,2)", pi_m(5, 2, &f2).map(|c| c.partition)),
        ("pi_M(5,2,2)", pi_big_m(5, 2, &f2).map(|c| c.partition)),
        ("pi_M(7,3,2)", pi_big_m(7, 3, &f2).map(|c| c.partition)),
        ("spread(4,2,2)", desarguesian_spread(2, 2, &f2)),
    ];
    for (name, p) in cases {
        r.check(&format!("identities_{name}"), secs(10), || match p {
            Ok(p) => {
                let rep = p.check_all();
                let checks: usize = rep.packing.iter().map(|k| k.checks.len()).sum();
                let value = format!(
                    "size@{}-{}_hyperplanes,{checks}_packing_checks",
                    rep.hyperplanes,
                    rep.size_identity_failures.len()
                );
                let ok = rep.size_identity_failures.is_empty() && rep.packing.iter().all(|k| k.all_hold());
                (value, "all hold".into(), ok)
            }
            Err(e) => (e.to_string(), "all hold".into(), false),
        });
    }
    let total = start.elapsed();
    r.check("identities_total", secs(10), || (format!("{}ms", total.as_millis()), "under 10s".into(), true));
    r.checks
}

fn exact_opts(opts: &SuiteOptions) -> SearchOptions {
    SearchOptions { budget: Budget::nodes(EXACT_NODES), symmetry: true, threads: opts.threads }
}

fn report(r: &SearchResult) -> String {
    match r.optimum {
        Some(v) if r.status == SearchStatus::Exact => v.to_string(),
        Some(v) => format!("{}:{v}", r.status),
        None => r.status.to_string(),
    }
}

/// The certificate re-validates and has the reported size.
fn certificate_ok(r: &SearchResult) -> bool {
    match (&r.certificate, r.optimum) {
        (Some(Certificate::Partition(p)), Some(v)) => {
            p.len() as u64 == v && SubspacePartition::validate(p.space().clone(), p.parts().to_vec()).is_ok()
        }
        (Some(Certificate::Spread(s)), Some(v)) => {
            s.len() as u64 == v && PartialSpread::new(s.space().clone(), s.t(), s.members().to_vec()).is_ok()
        }
        (None, None) => true,
        _ => false,
    }
}

fn search_oracles(opts: &SuiteOptions) -> Vec<Check> {
    let f2 = gf(2);
    let o = exact_opts(opts);
    let limit = secs(600);
    let mut r = Recorder::new();
    let mut spread_max = None;
    let searches: [(&str, SearchFn, usize, &str); 5] = [
        ("min_partition_size(5,2,2)", search::min_partition_size, 5, "13"),
        ("max_partition_size(5,2,2)", search::max_partition_size, 5, "9"),
        ("max_partition_size(3,2,2)", search::max_partition_size, 3, "infeasible"),
        ("min_maximal_spread_size(5,2,2)", search::min_maximal_spread_size, 5, "5"),
        ("max_partial_spread_size(5,2,2)", search::max_partial_spread_size, 5, "9"),
    ];
    for (name, f, n, want) in searches {
        r.check(name, limit, || match f(n, 2, &f2, o) {
            Ok(res) => {
                if name.starts_with("max_partial") {
                    spread_max = res.optimum.filter(|_| res.is_exact());
                }
                let v = report(&res);
                let ok = v == want && res.nodes <= EXACT_NODES && certificate_ok(&res);
                (v, want.into(), ok)
            }
            Err(e) => (e.to_string(), want.into(), false),
        });
    }
    r.check("sigma_cross_check(5,2,2)", secs(1), || {
        let theta = formulas::theta(5, 2);
        let got = spread_max.map(|m| theta - BigUint::from(2 * m));
        let v = got.map(|g| g.to_string()).unwrap_or_else(|| "unavailable".into());
        (v.clone(), "13".into(), v == "13")
    });
    r.checks
}

/// Every size-4 partial 2-spread of V(4,2), by brute force over line quadruples.
fn all_partial_spreads(space: &std::sync::Arc<Space>, t: usize, size: usize) -> Vec<Vec<Subspace>> {
    let lines: Vec<Subspace> = space.subspaces(t).expect("t ≤ n").collect();
    let masks: Vec<_> = lines.iter().map(|w| space.points_of(w)).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(
        masks: &[crate::geometry::PointSet],
        from: usize,
        size: usize,
        stack: &mut Vec<usize>,
        covered: crate::geometry::PointSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        if stack.len() == size {
            out.push(stack.clone());
            return;
        }
        for i in from..masks.len() {
            if masks[i].is_disjoint(&covered) {
                let mut c = covered.clone();
                c.union_with(&masks[i]);
                stack.push(i);
                rec(masks, i + 1, size, stack, c, out);
                stack.pop();
            }
        }
    }
    let mut idx = Vec::new();
    rec(&masks, 0, size, &mut stack, crate::geometry::PointSet::new(space.num_points()), &mut idx);
    for combo in idx {
        out.push(combo.into_iter().map(|i| lines[i].clone()).collect());
    }
    out
}

fn glynn_bound(opts: &SuiteOptions) -> Vec<Check> {
    let f2 = gf(2);
    let o = exact_opts(opts);
    let mut r = Recorder::new();
    let limit = secs(60);
    let mut none_small = true;
    for s in 1..=3u64 {
        r.check(&format!("no_maximal_2-spread_of_size_{s}_in_V(4,2)"), limit, || {
            match search::find_maximal_spread_of_size(4, 2, s, &f2, o) {
                Ok(res) => {
                    let ok = res.status == SearchStatus::Infeasible;
                    none_small &= ok;
                    (res.status.to_string(), "infeasible".into(), ok)
                }
                Err(e) => (e.to_string(), "infeasible".into(), false),
            }
        });
    }
    r.check("size_4_maximality_agrees_with_search", limit, || {
        let space = Space::new(4, f2.clone()).expect("V(4,2)");
        let all = all_partial_spreads(&space, 2, 4);
        let maximal = all
            .iter()
            .filter(|m| PartialSpread::new(space.clone(), 2, (*m).clone()).expect("disjoint").is_maximal().is_maximal())
            .count();
        let searched = search::find_maximal_spread_of_size(4, 2, 4, &f2, o);
        let search_says_none = matches!(&searched, Ok(res) if res.status == SearchStatus::Infeasible);
        let search_found = matches!(&searched, Ok(res) if res.status == SearchStatus::Exact);
        let ok = (maximal == 0 && search_says_none) || (maximal > 0 && search_found);
        (format!("{maximal}_of_{}_maximal", all.len()), "agreement with search".into(), ok)
    });
    r.check("tau_2(4,2)≥2q", limit, || match search::min_maximal_spread_size(4, 2, &f2, o) {
        Ok(res) => {
            let v = report(&res);
            let ok = none_small && res.is_exact() && res.optimum.is_some_and(|v| v >= 4);
            (v, "≥4".into(), ok)
        }
        Err(e) => (e.to_string(), "≥4".into(), false),
    });
    r.checks
}

fn embedded_spreads() -> Vec<Check> {
    let mut r = Recorder::new();
    for q in [2u64, 3] {
        let want = formulas::tau(5, 2, q).ok().and_then(|v| v.as_u64()).unwrap_or(0);
        r.check(&format!("embedded_spread_maximal(4,2,{q})"), secs(60), || match embedded_spread_maximal(4, 2, &gf(q)) {
            Ok(s) => {
                let maximal = s.is_maximal().is_maximal();
                let v = format!("{}{}", s.len(), if maximal { "" } else { ":not-maximal" });
                (v, want.to_string(), maximal && s.len() as u64 == want && want == q * q + 1)
            }
            Err(e) => (e.to_string(), want.to_string(), false),
        });
    }
    r.checks
}

fn stretch(opts: &SuiteOptions) -> Vec<Check> {
    let mut r = Recorder::new();
    let name = "find_maximal_spread_of_size(6,2,13)+induced_partition";
    if opts.quick {
        r.skip(name, "quick".into(), "≥13".into(), 0);
        return r.checks;
    }
    let start = Instant::now();
    let o = SearchOptions { budget: Budget::nodes(opts.stretch_nodes), symmetry: true, threads: opts.threads };
    let res = match search::find_maximal_spread_of_size(6, 2, 13, &gf(2), o) {
        Ok(res) => res,
        Err(e) => {
            r.checks.push(Check {
                outcome: Outcome::Fail,
                name: name.into(),
                value: e.to_string(),
                expected: "≥13".into(),
                millis: start.elapsed().as_millis(),
            });
            return r.checks;
        }
    };
    let spread = match (&res.status, &res.certificate) {
        (SearchStatus::Exact, Some(Certificate::Spread(s))) => s.clone(),
        _ => {
            r.skip(name, res.status.to_string(), "≥13".into(), start.elapsed().as_millis());
            return r.checks;
        }
    };
    r.check(name, Duration::MAX, || {
        if !spread.is_maximal().is_maximal() || spread.len() != 13 {
            return ("certificate not a maximal 13-spread".into(), "≥13".into(), false);
        }
        let b = match spread.find_trivial_blocking_subspace(5, DEFAULT_BLOCKING_LIMIT) {
            Ok(Some(b)) => b,
            Ok(None) => return ("no 5-dim blocking subspace".into(), "≥13".into(), false),
            Err(e) => return (e.to_string(), "≥13".into(), false),
        };
        match spread.induced_partition(&b) {
            Ok(p) => (p.len().to_string(), "≥13".into(), p.len() >= 13 && p.max_dim() <= 2),
            Err(e) => (e.to_string(), "≥13".into(), false),
        }
    });
    if let Some(c) = r.checks.last_mut() {
        c.millis = start.elapsed().as_millis();
    }
    r.checks
}

/// Field axioms checked exhaustively.
pub fn field_axioms_hold(f: &FieldSpec) -> bool {
    let els: Vec<FieldElement> = f.elements().collect();
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    for &a in &els {
        if f.add(a, zero) != a || f.mul(a, one) != a || f.add(a, f.neg(a)) != zero {
            return false;
        }
        if !a.is_zero() && f.inv(a).ok().map(|i| f.mul(a, i)) != Some(one) {
            return false;
        }
        for &b in &els {
            if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                return false;
            }
            for &c in &els {
                if f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))
                    || f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))
                    || f.add(f.add(a, b), c) != f.add(a, f.add(b, c))
                {
                    return false;
                }
            }
        }
    }
    true
}

fn property_suites(opts: &SuiteOptions) -> Vec<Check> {
    let mut r = Recorder::new();
    let minute = secs(60);
    r.check("field_axioms(q≤16)", minute, || {
        let qs: Vec<u64> = (2..=16).filter(|&q| crate::gf::prime_power(q).is_some()).collect();
        let bad: Vec<u64> = qs.iter().copied().filter(|&q| !field_axioms_hold(&gf(q))).collect();
        (format!("{}_of_{}_fields", qs.len() - bad.len(), qs.len()), format!("{}_of_{}_fields", qs.len(), qs.len()), bad.is_empty())
    });
    r.check("subspace_counts(n≤6,q∈{2,3})", minute, || {
        let mut checked = 0;
        for q in [2u64, 3] {
            for n in 1..=6 {
                let space = Space::new(n, gf(q)).expect("small space");
                for d in 0..=n {
                    checked += 1;
                    let count = space.subspaces(d).expect("d ≤ n").count();
                    if BigUint::from(count) != gaussian_binomial(n, d, q).expect("small") {
                        return (format!("mismatch at ({n},{d},{q})"), "all equal".into(), false);
                    }
                }
            }
        }
        (format!("{checked}_counts_equal"), "all equal".into(), true)
    });
    r.check("hyperplane_duality(n≤5)", minute, || {
        for q in [2u64, 3] {
            for n in 2..=5 {
                let space = Space::new(n, gf(q)).expect("small space");
                let functionals: Vec<Subspace> = space.hyperplanes().map(|h| space.annihilator(&h)).collect();
                for d in 1..n {
                    let want = formulas::h(n as u32, d as u32, q);
                    for w in space.subspaces(d).expect("d ≤ n") {
                        let through = functionals
                            .iter()
                            .filter(|f| w.rows().all(|row| space.dot(f.row(0), row).is_zero()))
                            .count();
                        if BigUint::from(through) != want {
                            return (format!("({n},{d},{q}) {w}: {through}"), want.to_string(), false);
                        }
                    }
                }
            }
        }
        ("all".into(), "h_q(n,d)".into(), true)
    });
    let mut encountered: Vec<SubspacePartition> = Vec::new();
    r.check("congruence_on_encountered_partitions", minute, || {
        let f2 = gf(2);
        let mut parts: Vec<SubspacePartition> = Vec::new();
        for (n, t) in [(4, 2), (5, 2), (6, 2), (7, 3), (8, 3)] {
            for c in [pi_m(n, t, &f2), pi_big_m(n, t, &f2)].into_iter().flatten() {
                parts.push(c.partition);
            }
        }
        for q in [2u64, 3] {
            parts.extend(desarguesian_spread(2, 2, &gf(q)));
            parts.extend(pi_big_m(5, 2, &gf(q)).map(|c| c.partition));
        }
        let o = exact_opts(opts);
        for res in [search::min_partition_size(5, 2, &f2, o), search::max_partition_size(5, 2, &f2, o)].into_iter().flatten() {
            if let Some(Certificate::Partition(p)) = res.certificate {
                parts.push(p);
            }
        }
        let bad = parts.iter().filter(|p| !p.size_congruence_holds()).count();
        encountered = parts;
        (format!("{}_of_{}", encountered.len() - bad, encountered.len()), "all".into(), bad == 0)
    });
    r.check("determinism", minute, || {
        let f2 = gf(2);
        let again = |f: &dyn Fn() -> Option<SubspacePartition>| f() == f();
        let constructions = again(&|| pi_big_m(8, 3, &f2).ok().map(|c| c.partition))
            && again(&|| pi_m(7, 3, &f2).ok().map(|c| c.partition))
            && again(&|| desarguesian_spread(3, 2, &gf(3)).ok());
        let o = SearchOptions { threads: 1, ..exact_opts(opts) };
        let run = || {
            let a = search::min_partition_size(4, 2, &f2, o).ok()?;
            let b = search::max_partial_spread_size(5, 2, &f2, o).ok()?;
            let c = search::min_maximal_spread_size(5, 2, &f2, o).ok()?;
            Some([(a.nodes, a.certificate), (b.nodes, b.certificate), (c.nodes, c.certificate)])
        };
        let searches = run().is_some() && run() == run();
        let greedy = {
            let empty = PartialSpread::empty(Space::new(5, f2.clone()).expect("V(5,2)"), 2).expect("empty");
            empty.greedy_complete() == empty.greedy_complete()
        };
        let ok = constructions && searches && greedy;
        (format!("constructions={constructions},searches={searches},greedy={greedy}"), "all true".into(), ok)
    });
    r.check(&format!("random_modular_law(seed={})", opts.seed), minute, || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut tried = 0;
        for q in [2u64, 3, 4] {
            let space = Space::new(5, gf(q)).expect("V(5,q)");
            for _ in 0..200 {
                let (da, db) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
                let mut random = |dim: usize| {
                    let rows: Vec<Vec<u32>> =
                        (0..dim).map(|_| (0..5).map(|_| rng.gen_range(0..q as u32)).collect()).collect();
                    let vecs: Vec<_> = rows.iter().map(|r| space.vector(r).expect("in range")).collect();
                    space.span(&vecs).expect("valid vectors")
                };
                let (a, b) = (random(da), random(db));
                let sum = space.sum(&a, &b).expect("same ambient");
                let meet = space.intersect(&a, &b).expect("same ambient");
                tried += 1;
                if sum.dim() + meet.dim() != a.dim() + b.dim() {
                    return (format!("failed on {a} and {b}"), "dim(A+B)+dim(A∩B)=dim A+dim B".into(), false);
                }
            }
        }
        (format!("{tried}_pairs"), "dim(A+B)+dim(A∩B)=dim A+dim B".into(), true)
    });
    r.checks
}

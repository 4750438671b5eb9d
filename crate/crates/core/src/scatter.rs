//! Scattered sets and basic local sentences.
//!
//! A basic local sentence asks for `s` vertices at pairwise distance more
//! than `2r`, each satisfying a predicate of its own neighborhood. Checking
//! one marks every vertex satisfying the predicate red, then looks for an
//! `r`-scattered set of `s` red vertices: greedily first, and when that
//! falls short, by exact maximum independent set on the conflict graph of
//! red vertices (adjacent when their distance in `g` is at most `2r`).

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, BfsScratch, Graph};
use crate::iso::{brute_force_embed, colorful_contains, Pattern, TrialConfig};
use crate::seed::Seed;

/// Default branch-and-bound node budget per conflict component.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
/// Largest `C(n, s)` [`brute_force_sentence`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

/// The neighborhood property a witness must satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredicateKind {
    /// `G[N_r(v)]` contains the pattern as a subgraph (not necessarily
    /// through `v`).
    ContainsPattern { pattern: Pattern, r: usize },
    /// `v` has at least `t` neighbors inside `G[N_r(v)]`.
    MinDegreeInBall { t: usize, r: usize },
    /// `|E(N_r(v))| − |N_r(v)| ≥ m`.
    SurplusAtLeast { m: i64, r: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPredicate {
    pub kind: PredicateKind,
    /// Balls with at least this edge surplus are evaluated by the plain
    /// exhaustive routine.
    pub surplus_threshold: i64,
}

impl LocalPredicate {
    pub fn contains_pattern(pattern: Pattern, r: usize) -> Self {
        let surplus_threshold = pattern.size() as i64 + 2;
        LocalPredicate {
            kind: PredicateKind::ContainsPattern { pattern, r },
            surplus_threshold,
        }
    }

    pub fn min_degree_in_ball(t: usize, r: usize) -> Self {
        LocalPredicate {
            kind: PredicateKind::MinDegreeInBall { t, r },
            surplus_threshold: t as i64 + 2,
        }
    }

    pub fn surplus_at_least(m: i64, r: usize) -> Self {
        LocalPredicate {
            kind: PredicateKind::SurplusAtLeast { m, r },
            surplus_threshold: m + 2,
        }
    }

    pub fn radius(&self) -> usize {
        match self.kind {
            PredicateKind::ContainsPattern { r, .. }
            | PredicateKind::MinDegreeInBall { r, .. }
            | PredicateKind::SurplusAtLeast { r, .. } => r,
        }
    }
}

/// `∃ x_1 … x_s`, pairwise at distance `> 2r`, each satisfying `pred`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicLocalSentence {
    pub s: usize,
    pub r: usize,
    pub pred: LocalPredicate,
}

impl BasicLocalSentence {
    pub fn new(s: usize, r: usize, pred: LocalPredicate) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParameter("witness count s must be at least 1".into()));
        }
        Ok(BasicLocalSentence { s, r, pred })
    }
}

/// JSON form of a predicate. Patterns are edge-list file paths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PredicateSpec {
    ContainsPattern {
        pattern: String,
        radius: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        surplus_threshold: Option<i64>,
    },
    MinDegreeInBall {
        t: usize,
        radius: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        surplus_threshold: Option<i64>,
    },
    SurplusAtLeast {
        m: i64,
        radius: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        surplus_threshold: Option<i64>,
    },
}

/// JSON form of a sentence, e.g.
/// `{"s":2,"r":1,"pred":{"type":"contains_pattern","pattern":"tri.el","radius":1}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SentenceSpec {
    pub s: usize,
    pub r: usize,
    pub pred: PredicateSpec,
}

impl SentenceSpec {
    /// Loads referenced patterns; relative paths are taken from `base`.
    pub fn resolve(&self, base: &Path) -> Result<BasicLocalSentence> {
        let (mut pred, threshold) = match &self.pred {
            PredicateSpec::ContainsPattern {
                pattern,
                radius,
                surplus_threshold,
            } => {
                let h = Graph::load(base.join(pattern))?;
                (LocalPredicate::contains_pattern(Pattern::new(h)?, *radius), *surplus_threshold)
            }
            PredicateSpec::MinDegreeInBall {
                t,
                radius,
                surplus_threshold,
            } => (LocalPredicate::min_degree_in_ball(*t, *radius), *surplus_threshold),
            PredicateSpec::SurplusAtLeast {
                m,
                radius,
                surplus_threshold,
            } => (LocalPredicate::surplus_at_least(*m, *radius), *surplus_threshold),
        };
        if let Some(t) = threshold {
            pred.surplus_threshold = t;
        }
        BasicLocalSentence::new(self.s, self.r, pred)
    }

    pub fn load(path: &Path) -> Result<BasicLocalSentence> {
        let spec: SentenceSpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        spec.resolve(path.parent().unwrap_or(Path::new(".")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterResult {
    pub found: bool,
    /// Pairwise more than `2r` apart; at least `s` long when `found`.
    pub set: Vec<usize>,
    pub greedy_size: usize,
    pub used_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceCheck {
    pub holds: bool,
    /// `s` witnesses when the sentence holds.
    pub witnesses: Option<Vec<usize>>,
    pub red_count: usize,
    pub scatter: ScatterResult,
}

/// Evaluates `pred` on `G[N_r(v)]` exactly.
///
/// Pattern containment in low-surplus balls goes through color-coding; a
/// negative answer there is confirmed by exhaustive search, so the result
/// never depends on the random colorings.
pub fn eval_local_predicate(g: &Graph, v: usize, pred: &LocalPredicate) -> Result<bool> {
    g.check_vertex(v)?;
    let mut scratch = BfsScratch::new(g.n());
    Ok(eval_with(g, v, pred, &mut scratch))
}

fn eval_with(g: &Graph, v: usize, pred: &LocalPredicate, scratch: &mut BfsScratch) -> bool {
    let r = pred.radius();
    let ball = scratch.explore(g, v, r).to_vec();
    let size = ball.len() as i64;
    let surplus = scratch.visited_edge_count(g) as i64 - size;
    match &pred.kind {
        PredicateKind::MinDegreeInBall { t, r } => {
            let inside = if *r == 0 { 0 } else { g.degree(v) };
            inside >= *t
        }
        PredicateKind::SurplusAtLeast { m, .. } => surplus >= *m,
        PredicateKind::ContainsPattern { pattern, .. } => {
            if ball.len() < pattern.size() {
                return false;
            }
            let sub = induced_subgraph(g, &ball).expect("ball vertices are valid").graph;
            if surplus >= pred.surplus_threshold {
                return brute_force_embed(&sub, pattern.graph()).is_some();
            }
            let cfg = TrialConfig::default();
            let hit = colorful_contains(&sub, pattern, &cfg, Seed::new(v as u64)).unwrap_or(false);
            hit || brute_force_embed(&sub, pattern.graph()).is_some()
        }
    }
}

/// Red vertices in ascending order, kept when no earlier kept vertex lies
/// within distance `2r`.
pub fn greedy_scattered(g: &Graph, red: &[usize], r: usize) -> Vec<usize> {
    let mut red = red.to_vec();
    red.sort_unstable();
    red.dedup();
    let mut chosen = vec![false; g.n()];
    let mut out = Vec::new();
    let mut scratch = BfsScratch::new(g.n());
    for v in red {
        if !scratch.explore(g, v, 2 * r).iter().any(|&w| chosen[w]) {
            chosen[v] = true;
            out.push(v);
        }
    }
    out
}

/// Whether every pair of `set` is more than `2r` apart in `g`.
pub fn is_scattered(g: &Graph, set: &[usize], r: usize) -> bool {
    let mut member = vec![false; g.n()];
    for &v in set {
        if v >= g.n() || member[v] {
            return false;
        }
        member[v] = true;
    }
    let mut scratch = BfsScratch::new(g.n());
    set.iter()
        .all(|&v| scratch.explore(g, v, 2 * r).iter().all(|&w| w == v || !member[w]))
}

/// Decides whether `red` contains an `r`-scattered set of size `s`.
pub fn exact_scattered(g: &Graph, red: &[usize], r: usize, s: usize) -> Result<ScatterResult> {
    exact_scattered_with_budget(g, red, r, s, DEFAULT_NODE_BUDGET)
}

/// [`exact_scattered`] with an explicit per-component node budget; running
/// out gives [`Error::Undecided`].
pub fn exact_scattered_with_budget(g: &Graph, red: &[usize], r: usize, s: usize, budget: u64) -> Result<ScatterResult> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    for &v in red {
        g.check_vertex(v)?;
    }
    let greedy = greedy_scattered(g, red, r);
    let greedy_size = greedy.len();
    let result = if greedy_size >= s {
        ScatterResult {
            found: true,
            set: greedy,
            greedy_size,
            used_exact: false,
        }
    } else {
        let set = max_scattered_with_budget(g, red, r, budget)?;
        ScatterResult {
            found: set.len() >= s,
            set,
            greedy_size,
            used_exact: true,
        }
    };
    assert!(is_scattered(g, &result.set, r), "scattered set failed distance recheck");
    Ok(result)
}

/// A maximum `r`-scattered subset of `red`, sorted.
pub fn max_scattered(g: &Graph, red: &[usize], r: usize) -> Result<Vec<usize>> {
    max_scattered_with_budget(g, red, r, DEFAULT_NODE_BUDGET)
}

pub fn max_scattered_with_budget(g: &Graph, red: &[usize], r: usize, budget: u64) -> Result<Vec<usize>> {
    let mut red = red.to_vec();
    red.sort_unstable();
    red.dedup();
    for &v in &red {
        g.check_vertex(v)?;
    }
    let conflict = conflict_graph(g, &red, r);
    let comps = conflict.components();
    let parts: Vec<Vec<usize>> = comps
        .par_iter()
        .map(|comp| {
            let local = induced_subgraph(&conflict, comp).expect("component vertices are valid");
            let best = max_independent_set(&local.graph, budget)?;
            Ok(best.into_iter().map(|i| red[local.original[i]]).collect())
        })
        .collect::<Result<_>>()?;
    let mut set: Vec<usize> = parts.into_iter().flatten().collect();
    set.sort_unstable();
    assert!(is_scattered(g, &set, r), "scattered set failed distance recheck");
    Ok(set)
}

/// Graph on positions of `red` (sorted, distinct), adjacent when at
/// distance at most `2r` in `g`.
fn conflict_graph(g: &Graph, red: &[usize], r: usize) -> Graph {
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in red.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<(usize, usize)> = red
        .par_iter()
        .enumerate()
        .map_init(
            || BfsScratch::new(g.n()),
            |scratch, (i, &v)| {
                scratch
                    .explore(g, v, 2 * r)
                    .iter()
                    .map(|&w| index[w])
                    .filter(|&j| j != usize::MAX && j > i)
                    .map(|j| (i, j))
                    .collect::<Vec<_>>()
            },
        )
        .flatten()
        .collect();
    Graph::from_simple_edges(red.len(), &edges)
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    64 * k + b
                })
            })
        })
    }
}

struct Mis {
    closed: Vec<Bits>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

/// Maximum independent set by branch and bound: vertices of degree at most
/// one among the candidates are taken outright, otherwise branch on a
/// maximum-degree candidate; prune when even taking every candidate cannot
/// beat the incumbent.
fn max_independent_set(g: &Graph, budget: u64) -> Result<Vec<usize>> {
    let n = g.n();
    let closed = (0..n)
        .map(|v| {
            let mut b = Bits::empty(n);
            b.insert(v);
            for &w in g.neighbors(v) {
                b.insert(w);
            }
            b
        })
        .collect();
    let mut mis = Mis {
        closed,
        best: Vec::new(),
        nodes: 0,
        budget,
    };
    let mut current = Vec::new();
    mis.search(Bits::full(n), &mut current)?;
    let mut best = mis.best;
    best.sort_unstable();
    Ok(best)
}

impl Mis {
    fn search(&mut self, mut cand: Bits, current: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Undecided { budget: self.budget });
        }
        let depth = current.len();
        loop {
            let mut pick = None;
            let mut branch = None;
            for v in cand.iter() {
                let deg = self.closed[v].and_count(&cand) - 1;
                if deg <= 1 {
                    pick = Some(v);
                    break;
                }
                if branch.is_none_or(|(_, d)| deg > d) {
                    branch = Some((v, deg));
                }
            }
            if let Some(v) = pick {
                current.push(v);
                cand = cand.minus(&self.closed[v]);
                continue;
            }
            match branch {
                None => {
                    if current.len() > self.best.len() {
                        self.best = current.clone();
                    }
                }
                Some((v, _)) => {
                    if current.len() + cand.len() > self.best.len() {
                        current.push(v);
                        self.search(cand.minus(&self.closed[v]), current)?;
                        current.pop();
                        if current.len() + cand.len() - 1 > self.best.len() {
                            let mut rest = cand.clone();
                            rest.remove(v);
                            self.search(rest, current)?;
                        }
                    }
                }
            }
            break;
        }
        current.truncate(depth);
        Ok(())
    }
}

/// Red-colors the vertices satisfying the predicate, then looks for `s`
/// red vertices pairwise more than `2r` apart.
pub fn check_sentence(g: &Graph, sent: &BasicLocalSentence) -> Result<SentenceCheck> {
    check_sentence_with_budget(g, sent, DEFAULT_NODE_BUDGET)
}

pub fn check_sentence_with_budget(g: &Graph, sent: &BasicLocalSentence, budget: u64) -> Result<SentenceCheck> {
    let red = red_vertices(g, &sent.pred);
    if red.is_empty() {
        return Ok(SentenceCheck {
            holds: false,
            witnesses: None,
            red_count: 0,
            scatter: ScatterResult {
                found: false,
                set: Vec::new(),
                greedy_size: 0,
                used_exact: false,
            },
        });
    }
    let scatter = exact_scattered_with_budget(g, &red, sent.r, sent.s, budget)?;
    let witnesses = scatter.found.then(|| scatter.set[..sent.s].to_vec());
    Ok(SentenceCheck {
        holds: scatter.found,
        witnesses,
        red_count: red.len(),
        scatter,
    })
}

/// Vertices satisfying `pred`, ascending.
pub fn red_vertices(g: &Graph, pred: &LocalPredicate) -> Vec<usize> {
    (0..g.n())
        .into_par_iter()
        .map_init(
            || BfsScratch::new(g.n()),
            |scratch, v| eval_with(g, v, pred, scratch).then_some(v),
        )
        .flatten()
        .collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Tries every `s`-subset of `V(g)`. Refuses when `C(n, s)` exceeds
/// [`BRUTE_FORCE_LIMIT`].
pub fn brute_force_sentence(g: &Graph, sent: &BasicLocalSentence) -> Result<bool> {
    let n = g.n();
    if sent.s > n {
        return Ok(false);
    }
    let subsets = binomial(n, sent.s);
    if subsets > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(format!("C({n}, {}) = {subsets} subsets", sent.s)));
    }
    let mut scratch = BfsScratch::new(n);
    let sat: Vec<bool> = (0..n).map(|v| eval_with(g, v, &sent.pred, &mut scratch)).collect();
    let near: Vec<Vec<bool>> = (0..n)
        .map(|v| {
            let mut row = vec![false; n];
            for &w in scratch.explore(g, v, 2 * sent.r) {
                row[w] = true;
            }
            row
        })
        .collect();
    let mut pick = Vec::with_capacity(sent.s);
    Ok(subsets_ok(n, sent.s, 0, &mut pick, &mut |set| {
        set.iter().all(|&v| sat[v]) && set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| !near[a][b]))
    }))
}

fn subsets_ok(n: usize, s: usize, from: usize, pick: &mut Vec<usize>, ok: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if pick.len() == s {
        return ok(pick);
    }
    for v in from..n {
        pick.push(v);
        let hit = subsets_ok(n, s, v + 1, pick, ok);
        pick.pop();
        if hit {
            return true;
        }
    }
    false
}

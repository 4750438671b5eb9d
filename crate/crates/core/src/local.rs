//! Exact local-structure statistics of a graph and the evaluated right-hand
//! sides of the probability bounds they are compared against.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{gen_er, BfsScratch, ErParams, Graph};
use crate::seed::Seed;

/// Longest cycle length [`count_cycles`] accepts.
pub const MAX_CYCLE_LEN: usize = 8;
/// Largest subset size [`count_dense_subgraphs`] accepts.
pub const MAX_DENSE_SIZE: usize = 6;

/// Size and edge surplus of one `r`-ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallStats {
    pub v: usize,
    pub r: usize,
    pub size: usize,
    pub edge_count: usize,
    /// `edge_count − size`; −1 exactly when the ball induces a tree.
    pub surplus: i64,
}

/// Distribution of ball surpluses over all vertices for one radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurplusProfile {
    pub r: usize,
    pub histogram: BTreeMap<i64, usize>,
    /// `None` only for the empty graph.
    pub max_surplus: Option<i64>,
}

impl SurplusProfile {
    /// Number of vertices whose ball has surplus at least `m`.
    pub fn count_at_least(&self, m: i64) -> usize {
        self.histogram.range(m..).map(|(_, c)| c).sum()
    }
}

/// An observed quantity compared against an upper bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub observed: f64,
    pub bound: f64,
    pub satisfied: bool,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        BoundCheck {
            name: name.into(),
            observed,
            bound,
            satisfied: observed <= bound,
        }
    }
}

/// Largest ball against `ln(n)^{2r} · d^r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NhoodCheck {
    pub max: usize,
    pub bound: f64,
    pub ok: bool,
}

/// Exact count of dense `k`-subsets plus the expectation bound for `G(n, d/n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseCount {
    pub count: u64,
    pub bound: f64,
}

/// Monte Carlo estimate of the probability that vertices 0 and 1 are joined
/// by a path of length at most `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathEstimate {
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    pub std_err: f64,
    /// `d / n`.
    pub lower: f64,
    /// `2 d^r / n`; only claimed for `d ≥ 2`.
    pub upper: f64,
}

/// `|E(g[s])| − |s|`. Duplicates in `s` are ignored.
pub fn edge_surplus(g: &Graph, s: &[usize]) -> Result<i64> {
    if s.is_empty() {
        return Err(Error::InvalidParameter("edge surplus of an empty set".into()));
    }
    for &v in s {
        g.check_vertex(v)?;
    }
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    Ok(g.edges_within_sorted(&set) as i64 - set.len() as i64)
}

fn ball_stats_with(g: &Graph, scratch: &mut BfsScratch, v: usize, r: usize) -> BallStats {
    let size = scratch.explore(g, v, r).len();
    let edge_count = scratch.visited_edge_count(g);
    BallStats {
        v,
        r,
        size,
        edge_count,
        surplus: edge_count as i64 - size as i64,
    }
}

pub fn ball_stats(g: &Graph, v: usize, r: usize) -> Result<BallStats> {
    g.check_vertex(v)?;
    Ok(ball_stats_with(g, &mut BfsScratch::new(g.n()), v, r))
}

/// Ball statistics for every vertex, in vertex order.
pub fn all_ball_stats(g: &Graph, r: usize) -> Vec<BallStats> {
    (0..g.n())
        .into_par_iter()
        .map_init(|| BfsScratch::new(g.n()), |s, v| ball_stats_with(g, s, v, r))
        .collect()
}

pub fn surplus_profile(g: &Graph, r: usize) -> SurplusProfile {
    let mut histogram = BTreeMap::new();
    for st in all_ball_stats(g, r) {
        *histogram.entry(st.surplus).or_insert(0) += 1;
    }
    let max_surplus = histogram.keys().next_back().copied();
    SurplusProfile {
        r,
        histogram,
        max_surplus,
    }
}

/// `ln(n)^{2r} · d^r`, or `+∞` when `n < 2`.
pub fn nhood_bound(n: usize, d: f64, r: usize) -> f64 {
    if n < 2 {
        return f64::INFINITY;
    }
    (n as f64).ln().powi(2 * r as i32) * d.powi(r as i32)
}

pub fn max_ball_size(g: &Graph, r: usize, d: f64) -> NhoodCheck {
    let max = (0..g.n())
        .into_par_iter()
        .map_init(|| BfsScratch::new(g.n()), |s, v| s.explore(g, v, r).len())
        .max()
        .unwrap_or(0);
    let bound = nhood_bound(g.n(), d, r);
    NhoodCheck {
        max,
        bound,
        ok: max as f64 <= bound,
    }
}

/// Number of simple cycles of length exactly `k`, each counted once.
///
/// A cycle is found only from its minimum vertex `s`, walking through
/// vertices larger than `s`, and only in the direction where the second
/// vertex is smaller than the last.
pub fn count_cycles(g: &Graph, k: usize) -> Result<u64> {
    if !(3..=MAX_CYCLE_LEN).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "cycle length {k} outside 3..={MAX_CYCLE_LEN}"
        )));
    }
    Ok((0..g.n())
        .into_par_iter()
        .map_init(
            || (Vec::with_capacity(k), vec![false; g.n()]),
            |(path, on_path), s| {
                path.clear();
                path.push(s);
                on_path[s] = true;
                let c = extend_cycle(g, k, s, path, on_path);
                on_path[s] = false;
                c
            },
        )
        .sum())
}

fn extend_cycle(g: &Graph, k: usize, s: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> u64 {
    let last = *path.last().expect("nonempty path");
    if path.len() == k {
        return u64::from(path[1] < last && g.has_edge(last, s));
    }
    let mut count = 0;
    for &w in g.neighbors(last) {
        if w > s && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            count += extend_cycle(g, k, s, path, on_path);
            on_path[w] = false;
            path.pop();
        }
    }
    count
}

/// `C(n,k) · (k−1)!/2 · (d/n)^k`, the expected number of `k`-cycles in
/// `G(n, d/n)`.
pub fn expected_cycles(n: usize, d: f64, k: usize) -> f64 {
    let p = d / n as f64;
    let mut falling = 1.0;
    for i in 0..k {
        falling *= (n - i.min(n)) as f64;
    }
    // C(n,k)·(k−1)!/2 = n(n−1)…(n−k+1) / (2k)
    falling / (2.0 * k as f64) * p.powi(k as i32)
}

/// `k^{2k+2m} · d^{k+m} / n^m`.
pub fn dense_bound(n: usize, d: f64, k: usize, m: usize) -> f64 {
    (k as f64).powi((2 * k + 2 * m) as i32) * d.powi((k + m) as i32) / (n as f64).powi(m as i32)
}

/// A connected vertex set with the number of edges it induces.
struct Piece {
    vertices: Vec<usize>,
    edges: usize,
}

impl Piece {
    fn surplus(&self) -> i64 {
        self.edges as i64 - self.vertices.len() as i64
    }
}

/// Number of `k`-vertex subsets inducing at least `k + m` edges, with the
/// expectation bound evaluated for density `d`.
///
/// Every such subset splits uniquely into the set `C` of vertices that have a
/// neighbor inside the subset and a set of `k − |C|` isolated vertices. `C`
/// is a union of pairwise non-adjacent connected pieces, at least one of
/// which has surplus ≥ 0, and the isolated part is an independent set
/// outside the closed neighborhood of `C`. The pieces are enumerated with
/// ESU and the isolated part is counted in closed form.
pub fn count_dense_subgraphs(g: &Graph, k: usize, m: usize, d: f64) -> Result<DenseCount> {
    if k == 0 || k > MAX_DENSE_SIZE {
        return Err(Error::TooLarge(format!(
            "subset size {k} outside 1..={MAX_DENSE_SIZE}"
        )));
    }
    let bound = dense_bound(g.n(), d, k, m);
    let target = k + m;
    if target > k * (k - 1) / 2 {
        return Ok(DenseCount { count: 0, bound });
    }

    // Pieces of size ≥ 2: dense ones (surplus ≥ 0) and trees small enough to
    // sit beside a dense piece (a dense piece has at least 3 vertices).
    let mut dense = Vec::new();
    let mut trees = Vec::new();
    connected_sets(g, k, |vertices, edges| {
        let piece = Piece {
            vertices: vertices.to_vec(),
            edges,
        };
        if piece.surplus() >= 0 {
            dense.push(piece);
        } else if vertices.len() + 3 <= k {
            trees.push(piece);
        }
    });
    for list in [&mut dense, &mut trees] {
        list.iter_mut().for_each(|p| p.vertices.sort_unstable());
        list.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    }

    let ctx = Combine {
        g,
        k,
        target,
        dense: &dense,
        trees: &trees,
    };
    let mut count = 0;
    let mut chosen = Vec::new();
    for (i, d) in dense.iter().enumerate() {
        chosen.push(d);
        count += ctx.extend(&mut chosen, i + 1, 0);
        chosen.pop();
    }
    Ok(DenseCount { count, bound })
}

struct Combine<'a> {
    g: &'a Graph,
    k: usize,
    target: usize,
    dense: &'a [Piece],
    trees: &'a [Piece],
}

impl<'a> Combine<'a> {
    /// Counts completions of `chosen` using dense pieces from index `next_dense`
    /// and trees from index `next_tree`. Dense pieces are chosen before trees
    /// so each decomposition is produced once.
    fn extend(&self, chosen: &mut Vec<&'a Piece>, next_dense: usize, next_tree: usize) -> u64 {
        let size: usize = chosen.iter().map(|p| p.vertices.len()).sum();
        let edges: usize = chosen.iter().map(|p| p.edges).sum();
        let mut count = 0;
        if edges >= self.target {
            count += self.isolated_completions(chosen, self.k - size);
        }
        let room = self.k - size;
        if next_tree == 0 {
            for i in next_dense..self.dense.len() {
                let p = &self.dense[i];
                if p.vertices.len() <= room && self.compatible(chosen, p) {
                    chosen.push(p);
                    count += self.extend(chosen, i + 1, 0);
                    chosen.pop();
                }
            }
        }
        for i in next_tree..self.trees.len() {
            let p = &self.trees[i];
            if p.vertices.len() <= room && self.compatible(chosen, p) {
                chosen.push(p);
                count += self.extend(chosen, self.dense.len(), i + 1);
                chosen.pop();
            }
        }
        count
    }

    /// Disjoint from and non-adjacent to every chosen piece.
    fn compatible(&self, chosen: &[&Piece], p: &Piece) -> bool {
        chosen.iter().all(|q| {
            p.vertices.iter().all(|&u| {
                q.vertices.binary_search(&u).is_err()
                    && self
                        .g
                        .neighbors(u)
                        .iter()
                        .all(|w| q.vertices.binary_search(w).is_err())
            })
        })
    }

    /// Independent `j`-sets avoiding the closed neighborhood of the chosen
    /// pieces.
    fn isolated_completions(&self, chosen: &[&Piece], j: usize) -> u64 {
        if j == 0 {
            return 1;
        }
        let g = self.g;
        let mut closed: Vec<usize> = chosen
            .iter()
            .flat_map(|p| p.vertices.iter().flat_map(|&u| std::iter::once(u).chain(g.neighbors(u).iter().copied())))
            .collect();
        closed.sort_unstable();
        closed.dedup();
        let free = (g.n() - closed.len()) as u64;
        match j {
            1 => free,
            2 => {
                let touching: usize =
                    closed.iter().map(|&x| g.degree(x)).sum::<usize>() - g.edges_within_sorted(&closed);
                let free_edges = (g.m() - touching) as u64;
                free * free.saturating_sub(1) / 2 - free_edges
            }
            // Some piece has surplus ≥ 0 and the pieces span k − j vertices,
            // so k + m ≤ C(k−j, 2) which forces j ≤ 2 for k ≤ 7.
            _ => unreachable!("isolated part of size {j} with k = {}", self.k),
        }
    }
}

/// ESU enumeration of connected induced subsets with 2..=`k` vertices.
/// `visit` receives each subset once together with its induced edge count.
fn connected_sets(g: &Graph, k: usize, mut visit: impl FnMut(&[usize], usize)) {
    let mut sub = Vec::with_capacity(k);
    for v in 0..g.n() {
        sub.clear();
        sub.push(v);
        let ext: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        esu_extend(g, k, v, &mut sub, 0, ext, &mut visit);
    }
}

fn esu_extend(
    g: &Graph,
    k: usize,
    root: usize,
    sub: &mut Vec<usize>,
    edges: usize,
    mut ext: Vec<usize>,
    visit: &mut impl FnMut(&[usize], usize),
) {
    if sub.len() >= 2 {
        visit(sub, edges);
    }
    if sub.len() == k {
        return;
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &u in g.neighbors(w) {
            if u > root
                && !sub.contains(&u)
                && !next.contains(&u)
                && u != w
                && !sub.iter().any(|&s| g.has_edge(s, u))
            {
                next.push(u);
            }
        }
        let added = sub.iter().filter(|&&s| g.has_edge(s, w)).count();
        sub.push(w);
        esu_extend(g, k, root, sub, edges + added, next, visit);
        sub.pop();
    }
}

/// Fraction of `trials` sampled `G(n, d/n)` graphs in which vertices 0 and 1
/// are at distance at most `r`. Trial `t` samples from `seed.derive(t)`.
pub fn estimate_path_prob(params: ErParams, r: usize, trials: u64, seed: Seed) -> Result<PathEstimate> {
    params.validate()?;
    if params.n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    if trials == 0 || r == 0 {
        return Err(Error::InvalidParameter("trials and r must be at least 1".into()));
    }
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<u64> {
            let g = gen_er(params, seed.derive(t))?;
            Ok(u64::from(path_within(&g, 0, 1, r)))
        })
        .sum::<Result<u64>>()?;
    let estimate = hits as f64 / trials as f64;
    let n = params.n as f64;
    Ok(PathEstimate {
        hits,
        trials,
        estimate,
        std_err: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        lower: params.d / n,
        upper: 2.0 * params.d.powi(r as i32) / n,
    })
}

/// Whether `dist(a, b) ≤ r`.
pub fn path_within(g: &Graph, a: usize, b: usize, r: usize) -> bool {
    let mut scratch = BfsScratch::new(g.n());
    scratch.explore(g, a, r);
    scratch.distance(b).is_some()
}

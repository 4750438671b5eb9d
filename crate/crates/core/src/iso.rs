//! Subgraph isomorphism for small-radius patterns.
//!
//! Every occurrence of a connected pattern of radius `r` lies inside the
//! `r`-ball around the image of a pattern center. [`find_subgraph`] scans
//! those balls and searches each one by color-coding: a random `h`-coloring
//! of the ball, a dynamic program over a rooted spanning tree of the pattern
//! that records which color sets can host each subtree, and an
//! output-sensitive walk of the tables that lists every colorful tree
//! embedding. Remaining pattern edges are then checked directly. When some
//! ball is larger than the configured cap the whole graph goes to the exact
//! backtracking search instead.

use std::collections::{BTreeSet, HashSet};
use std::ops::ControlFlow;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, BfsScratch, Graph};
use crate::local::nhood_bound;
use crate::seed::Seed;

/// Largest pattern the color-coding tables support (color sets are `u32`
/// masks).
pub const MAX_PATTERN_SIZE: usize = 20;
/// Default cap on embeddings reported for one ball.
pub const DEFAULT_MAX_EMBEDDINGS: usize = 1_000_000;

/// A connected pattern graph with its radius and a center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    graph: Graph,
    radius: usize,
    center: usize,
}

impl Pattern {
    pub fn new(graph: Graph) -> Result<Self> {
        let ecc = eccentricities(&graph)?;
        let (center, &radius) = ecc
            .iter()
            .enumerate()
            .min_by_key(|&(v, e)| (*e, v))
            .expect("nonempty pattern");
        Ok(Pattern { graph, radius, center })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn size(&self) -> usize {
        self.graph.n()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Smallest-id vertex of minimum eccentricity.
    pub fn center(&self) -> usize {
        self.center
    }
}

fn eccentricities(h: &Graph) -> Result<Vec<usize>> {
    if h.n() == 0 || !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut scratch = BfsScratch::new(h.n());
    Ok((0..h.n())
        .map(|v| {
            let order = scratch.explore(h, v, usize::MAX);
            let last = *order.last().expect("source visited");
            scratch.distance(last).expect("visited")
        })
        .collect())
}

/// Minimum eccentricity of a connected graph.
pub fn radius(h: &Graph) -> Result<usize> {
    Ok(eccentricities(h)?.into_iter().min().expect("nonempty"))
}

/// A connected spanning subgraph of a pattern: a spanning tree plus at most
/// two further edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCore {
    #[serde(skip)]
    pub core: Graph,
    pub tree_edges: Vec<(usize, usize)>,
    pub extra_edges: Vec<(usize, usize)>,
}

/// The whole pattern when it has at most `|V|+1` edges; otherwise the BFS
/// tree from vertex 0 plus the two lexicographically smallest non-tree edges.
pub fn pattern_core(p: &Pattern) -> PatternCore {
    let h = p.graph();
    let n = h.n();
    let mut seen = vec![false; n];
    let mut queue = vec![0];
    seen[0] = true;
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    let mut i = 0;
    while i < queue.len() {
        let u = queue[i];
        i += 1;
        for &w in h.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                tree_edges.push((u.min(w), u.max(w)));
                queue.push(w);
            }
        }
    }
    tree_edges.sort_unstable();
    let mut extra_edges: Vec<(usize, usize)> = h
        .edges()
        .filter(|e| tree_edges.binary_search(e).is_err())
        .collect();
    extra_edges.truncate(2);
    let core = Graph::from_simple_edges(n, &[tree_edges.as_slice(), extra_edges.as_slice()].concat());
    PatternCore {
        core,
        tree_edges,
        extra_edges,
    }
}

/// An injective map from pattern vertices to graph vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Injective and edge-preserving from `h` into `g`.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        if self.map.len() != h.n() || self.map.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let distinct: BTreeSet<_> = self.map.iter().collect();
        distinct.len() == self.map.len() && h.edges().all(|(a, b)| g.has_edge(self.map[a], self.map[b]))
    }

    /// `{"pattern vertex": graph vertex}` as JSON.
    pub fn to_json_map(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.map
                .iter()
                .enumerate()
                .map(|(a, &v)| (a.to_string(), serde_json::Value::from(v)))
                .collect(),
        )
    }
}

/// Neighborhood-size threshold above which [`find_subgraph`] falls back to
/// exact search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum BallCap {
    Unbounded,
    Fixed(usize),
    /// `ln(n)^{2r} · d^r` for the searched graph's `n` and the pattern
    /// radius `r`.
    NhoodBound { d: f64 },
}

impl BallCap {
    pub fn resolve(&self, n: usize, r: usize) -> f64 {
        match *self {
            BallCap::Unbounded => f64::INFINITY,
            BallCap::Fixed(c) => c as f64,
            BallCap::NhoodBound { d } => nhood_bound(n, d, r),
        }
    }
}

/// Monte Carlo knobs for color-coding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    /// Target probability of missing a given occurrence.
    pub epsilon: f64,
    /// Colorings per ball; `None` means `⌈e^h · ln(1/ε)⌉`.
    pub trials: Option<u64>,
    pub ball_cap: BallCap,
    pub max_embeddings: usize,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            epsilon: 0.01,
            trials: None,
            ball_cap: BallCap::Unbounded,
            max_embeddings: DEFAULT_MAX_EMBEDDINGS,
        }
    }
}

impl TrialConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        TrialConfig {
            epsilon,
            ..Default::default()
        }
    }

    /// A fixed coloring is colorful on a given occurrence with probability
    /// `h!/h^h ≥ e^{-h}`, so `e^h · ln(1/ε)` trials miss it with probability
    /// at most `ε`.
    pub fn trials_for(&self, h: usize) -> u64 {
        self.trials.unwrap_or_else(|| {
            let t = ((h as f64).exp() * (1.0 / self.epsilon).ln()).ceil();
            (t as u64).max(1)
        })
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon {} not in (0, 1)",
                self.epsilon
            )));
        }
        if self.trials == Some(0) {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// A spanning tree of the pattern rooted at one vertex.
struct RootedTree {
    root: usize,
    children: Vec<Vec<usize>>,
    /// Children before parents.
    post_order: Vec<usize>,
}

impl RootedTree {
    fn new(n: usize, edges: &[(usize, usize)], root: usize) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut order = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            let mut next: Vec<usize> = adj[u].iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_unstable();
            for &w in &next {
                seen[w] = true;
                order.push(w);
            }
            children[u] = next;
        }
        debug_assert_eq!(order.len(), n, "tree must span the pattern");
        order.reverse();
        RootedTree {
            root,
            children,
            post_order: order,
        }
    }
}

/// Color-coding search for one pattern tree plus a list of edges checked
/// after the tree is placed.
struct ColorCoder {
    h: usize,
    tree: RootedTree,
    check: Vec<(usize, usize)>,
}

/// `tables[t][i][v]`: color sets that host `t` at `v` together with the
/// subtrees of children `i..`, sorted.
type Tables = Vec<Vec<Vec<Vec<u32>>>>;

struct Obligation {
    node: usize,
    child: usize,
    at: usize,
    mask: u32,
}

impl ColorCoder {
    fn new(h: usize, tree_edges: &[(usize, usize)], root: usize, check: Vec<(usize, usize)>) -> Self {
        ColorCoder {
            h,
            tree: RootedTree::new(h, tree_edges, root),
            check,
        }
    }

    fn tables(&self, g: &Graph, colors: &[u8]) -> Tables {
        let n = g.n();
        let mut tables: Tables = vec![Vec::new(); self.h];
        let mut scratch = Vec::new();
        for &t in &self.tree.post_order {
            let kids = &self.tree.children[t];
            let mut levels = vec![vec![Vec::new(); n]; kids.len() + 1];
            for v in 0..n {
                levels[kids.len()][v].push(1u32 << colors[v]);
            }
            for i in (0..kids.len()).rev() {
                let c = kids[i];
                #[allow(clippy::needless_range_loop)]
                for v in 0..n {
                    scratch.clear();
                    for &a in &levels[i + 1][v] {
                        for &u in g.neighbors(v) {
                            for &b in &tables[c][0][u] {
                                if a & b == 0 {
                                    scratch.push(a | b);
                                }
                            }
                        }
                    }
                    scratch.sort_unstable();
                    scratch.dedup();
                    levels[i][v] = scratch.clone();
                }
            }
            tables[t] = levels;
        }
        tables
    }

    /// Calls `visit` with every colorful embedding of the tree (rooted at
    /// `anchor` when given) that also maps the check edges onto edges.
    fn enumerate(
        &self,
        g: &Graph,
        colors: &[u8],
        anchor: Option<usize>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if g.n() < self.h {
            return ControlFlow::Continue(());
        }
        let tables = self.tables(g, colors);
        let full = if self.h == 32 { u32::MAX } else { (1u32 << self.h) - 1 };
        let root = self.tree.root;
        let mut assign = vec![usize::MAX; self.h];
        let starts: Vec<usize> = match anchor {
            Some(v) => vec![v],
            None => (0..g.n()).collect(),
        };
        for v in starts {
            if tables[root][0][v].binary_search(&full).is_ok() {
                assign[root] = v;
                let mut stack = vec![Obligation {
                    node: root,
                    child: 0,
                    at: v,
                    mask: full,
                }];
                self.walk(g, colors, &tables, &mut stack, &mut assign, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn walk(
        &self,
        g: &Graph,
        colors: &[u8],
        tables: &Tables,
        stack: &mut Vec<Obligation>,
        assign: &mut [usize],
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(ob) = stack.pop() else {
            if self.check.iter().all(|&(a, b)| g.has_edge(assign[a], assign[b])) {
                visit(assign)?;
            }
            return ControlFlow::Continue(());
        };
        let kids = &self.tree.children[ob.node];
        let result = if ob.child == kids.len() {
            debug_assert_eq!(ob.mask, 1 << colors[ob.at]);
            self.walk(g, colors, tables, stack, assign, visit)
        } else {
            let c = kids[ob.child];
            let rest_tables = &tables[ob.node][ob.child + 1][ob.at];
            let mut flow = ControlFlow::Continue(());
            'outer: for &u in g.neighbors(ob.at) {
                for &b in &tables[c][0][u] {
                    if b & !ob.mask != 0 || rest_tables.binary_search(&(ob.mask ^ b)).is_err() {
                        continue;
                    }
                    assign[c] = u;
                    stack.push(Obligation {
                        node: ob.node,
                        child: ob.child + 1,
                        at: ob.at,
                        mask: ob.mask ^ b,
                    });
                    stack.push(Obligation {
                        node: c,
                        child: 0,
                        at: u,
                        mask: b,
                    });
                    flow = self.walk(g, colors, tables, stack, assign, visit);
                    stack.pop();
                    stack.pop();
                    if flow.is_break() {
                        break 'outer;
                    }
                }
            }
            flow
        };
        stack.push(ob);
        result
    }
}

fn random_colors(n: usize, h: usize, rng: &mut impl Rng) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..h) as u8).collect()
}

fn check_pattern_size(h: usize) -> Result<()> {
    if h > MAX_PATTERN_SIZE {
        return Err(Error::TooLarge(format!(
            "pattern with {h} vertices exceeds {MAX_PATTERN_SIZE}"
        )));
    }
    Ok(())
}

/// All embeddings of the core into `gsub` found by `cfg.trials_for(h)`
/// independent colorings (stream 0 of `seed`), deduplicated and sorted.
///
/// Each returned embedding is verified. An occurrence is missed with
/// probability at most `cfg.epsilon`.
pub fn colorful_search(gsub: &Graph, core: &PatternCore, cfg: &TrialConfig, seed: Seed) -> Result<Vec<Embedding>> {
    cfg.validate()?;
    let h = core.core.n();
    check_pattern_size(h)?;
    if let BallCap::Fixed(cap) = cfg.ball_cap {
        if gsub.n() > cap {
            return Err(Error::BallTooLarge {
                size: gsub.n(),
                cap: cap as f64,
            });
        }
    }
    if h == 0 {
        return Ok(vec![Embedding { map: Vec::new() }]);
    }
    let coder = ColorCoder::new(h, &core.tree_edges, 0, core.extra_edges.clone());
    let mut rng = seed.rng(0);
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let mut overflow = false;
    for _ in 0..cfg.trials_for(h) {
        let colors = random_colors(gsub.n(), h, &mut rng);
        let flow = coder.enumerate(gsub, &colors, None, &mut |map| {
            found.insert(map.to_vec());
            if found.len() > cfg.max_embeddings {
                overflow = true;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if flow.is_break() {
            break;
        }
    }
    if overflow {
        return Err(Error::EmbeddingOverflow {
            cap: cfg.max_embeddings,
        });
    }
    let mut out: Vec<Embedding> = found.into_iter().map(|map| Embedding { map }).collect();
    out.sort_unstable();
    assert!(out.iter().all(|e| e.verify(gsub, &core.core)), "unsound core embedding");
    Ok(out)
}

/// Whether some coloring among `cfg.trials_for(h)` (stream 0 of `seed`)
/// exposes a colorful copy of `h` anywhere in `g`. One-sided: `true` is
/// always correct.
pub(crate) fn colorful_contains(g: &Graph, h: &Pattern, cfg: &TrialConfig, seed: Seed) -> Result<bool> {
    cfg.validate()?;
    let size = h.size();
    check_pattern_size(size)?;
    if g.n() < size {
        return Ok(false);
    }
    let core = pattern_core(h);
    let check: Vec<(usize, usize)> = h
        .graph()
        .edges()
        .filter(|e| core.tree_edges.binary_search(e).is_err())
        .collect();
    let coder = ColorCoder::new(size, &core.tree_edges, 0, check);
    let mut rng = seed.rng(0);
    for _ in 0..cfg.trials_for(size) {
        let colors = random_colors(g.n(), size, &mut rng);
        if coder.enumerate(g, &colors, None, &mut |_| ControlFlow::Break(())).is_break() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Searches `g` for a subgraph isomorphic to `h`.
///
/// If some `r`-ball (r the pattern radius) exceeds the resolved cap, the
/// answer comes from [`brute_force_embed`]. Otherwise each vertex's ball is
/// searched by color-coding with the pattern center pinned to that vertex,
/// using stream `v` of `seed` for vertex `v`; the embedding found around the
/// smallest vertex is returned. A `None` may be a miss, with probability at
/// most `cfg.epsilon` per occurrence.
pub fn find_subgraph(g: &Graph, h: &Pattern, cfg: &TrialConfig, seed: Seed) -> Result<Option<Embedding>> {
    cfg.validate()?;
    let size = h.size();
    check_pattern_size(size)?;
    if g.n() < size {
        return Ok(None);
    }
    let r = h.radius();
    let cap = cfg.ball_cap.resolve(g.n(), r);
    if cap.is_finite() {
        let largest = (0..g.n())
            .into_par_iter()
            .map_init(|| BfsScratch::new(g.n()), |s, v| s.explore(g, v, r).len())
            .max()
            .unwrap_or(0);
        if largest as f64 > cap {
            return Ok(brute_force_embed(g, h.graph()));
        }
    }

    let core = pattern_core(h);
    let check: Vec<(usize, usize)> = h
        .graph()
        .edges()
        .filter(|e| core.tree_edges.binary_search(e).is_err())
        .collect();
    let coder = ColorCoder::new(size, &core.tree_edges, h.center(), check);
    let trials = cfg.trials_for(size);
    let found = (0..g.n()).into_par_iter().map_init(
        || BfsScratch::new(g.n()),
        |scratch, v| {
            let ball = scratch.explore(g, v, r).to_vec();
            if ball.len() < size {
                return None;
            }
            let sub = induced_subgraph(g, &ball).expect("ball vertices are valid");
            let anchor = sub.local(v).expect("center in ball");
            let mut rng = seed.rng(v as u64);
            let mut hit = None;
            for _ in 0..trials {
                let colors = random_colors(sub.graph.n(), size, &mut rng);
                let flow = coder.enumerate(&sub.graph, &colors, Some(anchor), &mut |map| {
                    hit = Some(map.iter().map(|&x| sub.original[x]).collect::<Vec<_>>());
                    ControlFlow::Break(())
                });
                if flow.is_break() {
                    break;
                }
            }
            hit
        },
    );
    let found = found.find_map_first(|x| x).map(|map| Embedding { map });
    if let Some(e) = &found {
        assert!(e.verify(g, h.graph()), "unsound embedding");
    }
    Ok(found)
}

/// Finds vertex-disjoint embeddings of every part.
///
/// Each round colors `V(g)` uniformly with one color per part and searches
/// part `i` inside color class `i`, so any embeddings found are disjoint.
/// Runs at most `⌈c^h · ln(1/ε)⌉` rounds for `c` parts with `h` vertices in
/// total; round `i` uses stream `i` of `seed`. `None` may be a miss.
pub fn find_subgraph_multi(
    g: &Graph,
    parts: &[Pattern],
    cfg: &TrialConfig,
    seed: Seed,
) -> Result<Option<Vec<Embedding>>> {
    cfg.validate()?;
    if parts.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let total: usize = parts.iter().map(Pattern::size).sum();
    if total > g.n() {
        return Ok(None);
    }
    if parts.len() == 1 {
        return Ok(find_subgraph(g, &parts[0], cfg, seed.derive(0))?.map(|e| vec![e]));
    }
    // A part that does not occur at all cannot occur in a color class.
    for part in parts {
        if brute_force_embed(g, part.graph()).is_none() {
            return Ok(None);
        }
    }
    let c = parts.len();
    let rounds = ((c as f64).powi(total as i32) * (1.0 / cfg.epsilon).ln()).ceil().max(1.0) as u64;
    for round in 0..rounds {
        let mut rng = seed.rng(round);
        let class: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(0..c)).collect();
        let round_seed = seed.derive(round);
        let mut found = Vec::with_capacity(c);
        for (i, part) in parts.iter().enumerate() {
            let members: Vec<usize> = (0..g.n()).filter(|&v| class[v] == i).collect();
            let sub = induced_subgraph(g, &members)?;
            match find_subgraph(&sub.graph, part, cfg, round_seed.derive(i as u64))? {
                Some(e) => found.push(Embedding {
                    map: e.map.iter().map(|&x| sub.original[x]).collect(),
                }),
                None => break,
            }
        }
        if found.len() == c {
            let mut used = HashSet::new();
            assert!(
                found.iter().zip(parts).all(|(e, p)| e.verify(g, p.graph()))
                    && found.iter().flat_map(|e| &e.map).all(|&v| used.insert(v)),
                "unsound disjoint embedding"
            );
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Exact search for an embedding of `h` (connected or not) into `g` by
/// backtracking with degree and adjacency pruning.
pub fn brute_force_embed(g: &Graph, h: &Graph) -> Option<Embedding> {
    if h.n() > g.n() {
        return None;
    }
    let order = search_order(h);
    // anchor[i]: an earlier-placed neighbor of order[i], if any
    let pos: Vec<usize> = {
        let mut p = vec![0; h.n()];
        for (i, &a) in order.iter().enumerate() {
            p[a] = i;
        }
        p
    };
    let anchor: Vec<Option<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &a)| h.neighbors(a).iter().copied().filter(|&b| pos[b] < i).min_by_key(|&b| pos[b]))
        .collect();
    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    backtrack(g, h, &order, &anchor, 0, &mut map, &mut used).then_some(Embedding { map })
}

/// Pattern vertices component by component (largest first), each in BFS
/// order from its highest-degree vertex.
fn search_order(h: &Graph) -> Vec<usize> {
    let mut comps = h.components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut order = Vec::with_capacity(h.n());
    let mut seen = vec![false; h.n()];
    for comp in comps {
        let start = *comp
            .iter()
            .max_by_key(|&&v| (h.degree(v), std::cmp::Reverse(v)))
            .expect("nonempty component");
        let base = order.len();
        order.push(start);
        seen[start] = true;
        let mut i = base;
        while i < order.len() {
            let u = order[i];
            i += 1;
            let mut next: Vec<usize> = h.neighbors(u).iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_by_key(|&w| (std::cmp::Reverse(h.degree(w)), w));
            for w in next {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

fn backtrack(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    anchor: &[Option<usize>],
    i: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == order.len() {
        return true;
    }
    let a = order[i];
    let fits = |v: usize, map: &[usize], used: &[bool]| {
        !used[v]
            && g.degree(v) >= h.degree(a)
            && h
                .neighbors(a)
                .iter()
                .all(|&b| map[b] == usize::MAX || g.has_edge(map[b], v))
    };
    let candidates: Box<dyn Iterator<Item = usize>> = match anchor[i] {
        Some(b) => Box::new(g.neighbors(map[b]).to_vec().into_iter()),
        None => Box::new(0..g.n()),
    };
    for v in candidates {
        if fits(v, map, used) {
            map[a] = v;
            used[v] = true;
            if backtrack(g, h, order, anchor, i + 1, map, used) {
                return true;
            }
            used[v] = false;
            map[a] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e.iter().copied()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn petersen() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        Graph::from_edges(10, e).unwrap()
    }

    #[test]
    fn radius_examples() {
        assert_eq!(radius(&path(5)).unwrap(), 2);
        assert_eq!(radius(&cycle(6)).unwrap(), 3);
        assert_eq!(radius(&complete(4)).unwrap(), 1);
        assert!(matches!(radius(&g(3, &[(0, 1)])), Err(Error::Disconnected)));
        assert_eq!(Pattern::new(path(5)).unwrap().center(), 2);
    }

    #[test]
    fn core_examples() {
        let tri = pattern_core(&Pattern::new(complete(3)).unwrap());
        assert_eq!(tri.core, complete(3));
        assert_eq!(tri.extra_edges.len(), 1);

        let p4 = pattern_core(&Pattern::new(path(4)).unwrap());
        assert_eq!(p4.core, path(4));
        assert!(p4.extra_edges.is_empty());

        let k4 = pattern_core(&Pattern::new(complete(4)).unwrap());
        assert_eq!(k4.tree_edges, vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(k4.extra_edges, vec![(1, 2), (1, 3)]);
        assert_eq!(k4.core.m(), 5);
    }

    #[test]
    fn colorful_search_triangle_in_triangle() {
        let core = pattern_core(&Pattern::new(complete(3)).unwrap());
        let cfg = TrialConfig::with_epsilon(1e-6);
        let found = colorful_search(&complete(3), &core, &cfg, Seed::new(1)).unwrap();
        assert_eq!(found.len(), 6);
    }

    #[test]
    fn colorful_search_paths_in_c5() {
        let core = pattern_core(&Pattern::new(path(3)).unwrap());
        let cfg = TrialConfig {
            trials: Some(1),
            ..Default::default()
        };
        let c5 = cycle(5);
        for s in 0..20 {
            for e in colorful_search(&c5, &core, &cfg, Seed::new(s)).unwrap() {
                assert!(e.verify(&c5, &path(3)));
            }
        }
        let all = colorful_search(&c5, &core, &TrialConfig::with_epsilon(1e-9), Seed::new(0)).unwrap();
        assert_eq!(all.len(), 10);
    }

    #[test]
    fn colorful_search_no_triangle_in_tree() {
        let core = pattern_core(&Pattern::new(complete(3)).unwrap());
        let tree = g(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]);
        assert!(colorful_search(&tree, &core, &TrialConfig::default(), Seed::new(3))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn colorful_search_caps() {
        let core = pattern_core(&Pattern::new(path(2)).unwrap());
        let cfg = TrialConfig {
            max_embeddings: 3,
            ..Default::default()
        };
        assert!(matches!(
            colorful_search(&complete(4), &core, &cfg, Seed::new(0)),
            Err(Error::EmbeddingOverflow { cap: 3 })
        ));
        let cfg = TrialConfig {
            ball_cap: BallCap::Fixed(3),
            ..Default::default()
        };
        assert!(matches!(
            colorful_search(&complete(4), &core, &cfg, Seed::new(0)),
            Err(Error::BallTooLarge { .. })
        ));
    }

    #[test]
    fn find_examples() {
        let cfg = TrialConfig::default();
        let p3 = Pattern::new(path(3)).unwrap();
        let e = find_subgraph(&cycle(5), &p3, &cfg, Seed::new(0)).unwrap().unwrap();
        assert!(e.verify(&cycle(5), &path(3)));

        let tri = Pattern::new(complete(3)).unwrap();
        let tree = g(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]);
        assert_eq!(find_subgraph(&tree, &tri, &cfg, Seed::new(0)).unwrap(), None);

        let c5 = Pattern::new(cycle(5)).unwrap();
        let e = find_subgraph(&petersen(), &c5, &cfg, Seed::new(2)).unwrap().unwrap();
        assert!(e.verify(&petersen(), &cycle(5)));
    }

    #[test]
    fn find_is_deterministic() {
        let cfg = TrialConfig::default();
        let p = Pattern::new(path(4)).unwrap();
        let a = find_subgraph(&petersen(), &p, &cfg, Seed::new(9)).unwrap();
        let b = find_subgraph(&petersen(), &p, &cfg, Seed::new(9)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_some());
    }

    #[test]
    fn find_falls_back_on_large_balls() {
        let cfg = TrialConfig {
            ball_cap: BallCap::Fixed(2),
            trials: Some(1),
            ..Default::default()
        };
        let k4 = Pattern::new(complete(4)).unwrap();
        let e = find_subgraph(&complete(6), &k4, &cfg, Seed::new(0)).unwrap().unwrap();
        assert!(e.verify(&complete(6), &complete(4)));
    }

    #[test]
    fn multi_examples() {
        let cfg = TrialConfig::default();
        let edge = Pattern::new(path(2)).unwrap();
        let two_edges = g(4, &[(0, 1), (2, 3)]);
        let found = find_subgraph_multi(&two_edges, &[edge.clone(), edge], &cfg, Seed::new(5))
            .unwrap()
            .unwrap();
        assert_eq!(found.len(), 2);

        let tri = Pattern::new(complete(3)).unwrap();
        assert_eq!(
            find_subgraph_multi(&complete(3), &[tri.clone(), tri], &cfg, Seed::new(5)).unwrap(),
            None
        );
        assert_eq!(find_subgraph_multi(&complete(3), &[], &cfg, Seed::new(5)).unwrap(), Some(vec![]));
    }

    #[test]
    fn brute_force_examples() {
        assert!(brute_force_embed(&complete(3), &complete(3)).is_some());
        assert!(brute_force_embed(&cycle(4), &complete(3)).is_none());
        let e = brute_force_embed(&petersen(), &cycle(5)).unwrap();
        assert!(e.verify(&petersen(), &cycle(5)));
        assert!(brute_force_embed(&petersen(), &cycle(3)).is_none());
        assert!(brute_force_embed(&petersen(), &cycle(4)).is_none());
        // disconnected pattern: two disjoint triangles need six vertices
        let two_tri = g(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(brute_force_embed(&complete(5), &two_tri).is_none());
        assert!(brute_force_embed(&complete(6), &two_tri).is_some());
    }

    #[test]
    fn embedding_json() {
        let e = Embedding { map: vec![4, 2] };
        assert_eq!(e.to_json_map().to_string(), r#"{"0":4,"1":2}"#);
    }
}

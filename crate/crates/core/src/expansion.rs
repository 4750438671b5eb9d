//! Low-degree orientation, transitive fraternal augmentation and
//! p-centered colorings.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default limit on color subsets examined by [`verify_p_centered`].
pub const DEFAULT_SUBSET_CAP: usize = 1_000_000;
/// Default arc cap, as a multiple of the input edge count.
pub const DEFAULT_ARC_FACTOR: usize = 50;

/// A directed graph without self-arcs or repeated arcs. Both `(u, v)` and
/// `(v, u)` may be present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arcs: usize,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            arcs: 0,
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut d = Digraph::new(n);
        d.add_new_arcs(&list);
        Ok(d)
    }

    /// Adds arcs known to be absent, distinct and loop-free.
    fn add_new_arcs(&mut self, arcs: &[(usize, usize)]) {
        for &(u, v) in arcs {
            debug_assert!(u != v && !self.has_arc(u, v));
            self.out[u].push(v);
            self.inn[v].push(u);
        }
        for list in self.out.iter_mut().chain(self.inn.iter_mut()) {
            list.sort_unstable();
        }
        self.arcs += arcs.len();
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn max_in_degree(&self) -> usize {
        self.inn.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    /// The simple graph obtained by forgetting directions.
    pub fn underlying(&self) -> Graph {
        let mut edges: Vec<(usize, usize)> = self.arcs().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        Graph::from_simple_edges(self.n(), &edges)
    }
}

/// One augmentation step's size and maximum in-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    /// 1 for the oriented input graph.
    pub step: usize,
    pub arcs: usize,
    pub max_indegree: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentationTrace {
    pub records: Vec<StepRecord>,
}

impl AugmentationTrace {
    fn push(&mut self, step: usize, d: &Digraph) {
        self.records.push(StepRecord {
            step,
            arcs: d.arc_count(),
            max_indegree: d.max_in_degree(),
        });
    }

    /// `step,arcs,max_indegree` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("step,arcs,max_indegree\n");
        for r in &self.records {
            let _ = writeln!(s, "{},{},{}", r.step, r.arcs, r.max_indegree);
        }
        s
    }
}

/// Orients each edge from the endpoint with the larger `(degree, id)` key
/// to the smaller, with degrees taken in the graph formed by `edges`.
fn orient_by_degree(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    edges
        .iter()
        .map(|&(u, v)| if (deg[u], u) > (deg[v], v) { (u, v) } else { (v, u) })
        .collect()
}

pub fn low_degree_orientation(g: &Graph) -> Digraph {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut d = Digraph::new(g.n());
    d.add_new_arcs(&orient_by_degree(g.n(), &edges));
    d
}

/// One transitive fraternal augmentation.
///
/// From the arcs of `d` alone it collects the missing transitive arcs
/// `(x, y)` for every `x → z → y`, and the fraternal pairs `{x, y}` for
/// every `x → z ← y` that are joined neither in `d` nor by a new transitive
/// arc. The fraternal pairs form a graph that is oriented by its own
/// low-degree orientation. Both arc sets are then added together.
pub fn tfa_step(d: &Digraph) -> Digraph {
    let n = d.n();
    let mut transitive: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|z| {
            d.in_neighbors(z).iter().flat_map(move |&x| {
                d.out_neighbors(z)
                    .iter()
                    .filter(move |&&y| x != y && !d.has_arc(x, y))
                    .map(move |&y| (x, y))
            })
        })
        .collect();
    transitive.sort_unstable();
    transitive.dedup();
    let joined_by_new = |x: usize, y: usize| {
        transitive.binary_search(&(x, y)).is_ok() || transitive.binary_search(&(y, x)).is_ok()
    };

    let mut fraternal: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|z| {
            let ins = d.in_neighbors(z);
            ins.iter().enumerate().flat_map(move |(i, &x)| {
                ins[i + 1..]
                    .iter()
                    .filter(move |&&y| !d.has_arc(x, y) && !d.has_arc(y, x))
                    .map(move |&y| (x, y))
            })
        })
        .collect();
    fraternal.sort_unstable();
    fraternal.dedup();
    fraternal.retain(|&(x, y)| !joined_by_new(x, y));

    let mut next = d.clone();
    let mut added = transitive;
    added.extend(orient_by_degree(n, &fraternal));
    next.add_new_arcs(&added);
    next
}

/// Options shared by the augmentation loop.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentOptions {
    /// Abort once an augmented digraph has more arcs than this. `None`
    /// means `DEFAULT_ARC_FACTOR · |E(g)|`.
    pub arc_cap: Option<usize>,
}

impl AugmentOptions {
    fn cap_for(&self, g: &Graph) -> usize {
        self.arc_cap.unwrap_or(DEFAULT_ARC_FACTOR * g.m())
    }
}

/// Orients `g` and applies `steps` augmentations, recording every digraph
/// of the sequence.
pub fn tfa_run(g: &Graph, steps: usize, opts: AugmentOptions) -> Result<(Digraph, AugmentationTrace)> {
    let cap = opts.cap_for(g);
    let mut d = low_degree_orientation(g);
    let mut trace = AugmentationTrace::default();
    trace.push(1, &d);
    for i in 2..=steps + 1 {
        d = tfa_step(&d);
        if d.arc_count() > cap {
            return Err(Error::ArcExplosion {
                step: i,
                arcs: d.arc_count(),
                cap,
            });
        }
        trace.push(i, &d);
    }
    Ok((d, trace))
}

/// A vertex coloring. Serializes as a JSON array of colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Coloring {
    colors: Vec<usize>,
    palette_size: usize,
}

impl From<Vec<usize>> for Coloring {
    fn from(colors: Vec<usize>) -> Self {
        let mut distinct = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        Coloring {
            palette_size: distinct.len(),
            colors,
        }
    }
}

impl From<Coloring> for Vec<usize> {
    fn from(c: Coloring) -> Self {
        c.colors
    }
}

impl Coloring {
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Colors vertices in order of decreasing degree (ties by increasing id),
/// each with the smallest color absent among its colored neighbors.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut colors = vec![usize::MAX; n];
    let mut seen = vec![usize::MAX; n + 1];
    for (step, &v) in order.iter().enumerate() {
        for &u in g.neighbors(v) {
            let c = colors[u];
            if c != usize::MAX {
                seen[c] = step;
            }
        }
        colors[v] = (0..).find(|&c| seen[c] != step).expect("a free color exists");
    }
    Coloring::from(colors)
}

/// A color set together with a connected component of the subgraph it
/// induces in which no color appears exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenteredWitness {
    pub colors: Vec<usize>,
    pub component: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenteredCheck {
    pub ok: bool,
    pub witness: Option<CenteredWitness>,
    pub subsets_examined: usize,
}

/// Decides whether `c` is a `p`-centered coloring of `g`.
///
/// A violating component uses a color set that is connected in the color
/// graph (colors adjacent when some edge joins their classes) and is itself
/// a component of the subgraph induced by that smaller color set. Only
/// such connected color sets of size at most `p` are examined, in order of
/// size and then lexicographically; the first violation found is the
/// lexicographically smallest violating color set overall. More than `cap`
/// candidate sets is an error rather than a guess.
pub fn verify_p_centered(g: &Graph, c: &Coloring, p: usize, cap: usize) -> Result<CenteredCheck> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    if c.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "coloring has {} entries for {} vertices",
            c.len(),
            g.n()
        )));
    }
    let mut palette: Vec<usize> = c.colors().to_vec();
    palette.sort_unstable();
    palette.dedup();
    let index: Vec<usize> = c
        .colors()
        .iter()
        .map(|col| palette.binary_search(col).expect("color in palette"))
        .collect();
    let k = palette.len();
    let mut classes = vec![Vec::new(); k];
    for (v, &ci) in index.iter().enumerate() {
        classes[ci].push(v);
    }
    let mut color_adj = vec![Vec::new(); k];
    for (u, v) in g.edges() {
        let (a, b) = (index[u], index[v]);
        if a != b {
            color_adj[a].push(b);
            color_adj[b].push(a);
        }
    }
    for list in &mut color_adj {
        list.sort_unstable();
        list.dedup();
    }

    let mut sets = Vec::new();
    let mut overflow = false;
    for a in 0..k {
        let ext: Vec<usize> = color_adj[a].iter().copied().filter(|&b| b > a).collect();
        connected_color_sets(&color_adj, p, a, &mut vec![a], ext, &mut |s| {
            if sets.len() >= cap {
                overflow = true;
                false
            } else {
                let mut s = s.to_vec();
                s.sort_unstable();
                sets.push(s);
                true
            }
        });
        if overflow {
            return Err(Error::TooManySubsets { cap });
        }
    }
    sets.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let examined = sets.len();
    let witness = sets
        .par_iter()
        .map_init(
            || Marks::new(g.n()),
            |marks, set| violating_component(g, &index, &classes, set, marks).map(|comp| (set, comp)),
        )
        .find_map_first(|x| x);
    Ok(CenteredCheck {
        ok: witness.is_none(),
        witness: witness.map(|(set, component)| CenteredWitness {
            colors: set.iter().map(|&i| palette[i]).collect(),
            component,
        }),
        subsets_examined: examined,
    })
}

/// ESU over the color graph. `visit` returns `false` to stop.
fn connected_color_sets(
    adj: &[Vec<usize>],
    p: usize,
    root: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if !visit(sub) {
        return false;
    }
    if sub.len() == p {
        return true;
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &u in &adj[w] {
            if u > root
                && !sub.contains(&u)
                && !next.contains(&u)
                && !sub.iter().any(|&s| adj[s].binary_search(&u).is_ok())
            {
                next.push(u);
            }
        }
        sub.push(w);
        let go_on = connected_color_sets(adj, p, root, sub, next, visit);
        sub.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Epoch-stamped visit marks, one per vertex.
struct Marks {
    stamp: Vec<u32>,
    epoch: u32,
}

impl Marks {
    fn new(n: usize) -> Self {
        Marks { stamp: vec![0; n], epoch: 0 }
    }

    fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    /// Marks `v`, returning whether it was unmarked.
    fn insert(&mut self, v: usize) -> bool {
        std::mem::replace(&mut self.stamp[v], self.epoch) != self.epoch
    }
}

/// The first component (by minimum vertex) of the subgraph induced by the
/// color classes in `set` in which no color appears exactly once.
fn violating_component(
    g: &Graph,
    index: &[usize],
    classes: &[Vec<usize>],
    set: &[usize],
    marks: &mut Marks,
) -> Option<Vec<usize>> {
    let pos = |ci: usize| set.iter().position(|&s| s == ci);
    let mut members: Vec<usize> = set.iter().flat_map(|&ci| classes[ci].iter().copied()).collect();
    members.sort_unstable();
    marks.reset();
    let mut counts = vec![0usize; set.len()];
    for &s in &members {
        if !marks.insert(s) {
            continue;
        }
        counts.fill(0);
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            counts[pos(index[u]).expect("member color")] += 1;
            for &w in g.neighbors(u) {
                if pos(index[w]).is_some() && marks.insert(w) {
                    comp.push(w);
                }
            }
        }
        if !counts.contains(&1) {
            comp.sort_unstable();
            return Some(comp);
        }
    }
    None
}

/// Options for [`compute_p_centered`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PccOptions {
    pub subset_cap: usize,
    pub augment: AugmentOptions,
}

impl Default for PccOptions {
    fn default() -> Self {
        PccOptions {
            subset_cap: DEFAULT_SUBSET_CAP,
            augment: AugmentOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PccResult {
    pub coloring: Coloring,
    /// Index `i` of the digraph whose greedy coloring was accepted.
    pub steps_used: usize,
    pub trace: AugmentationTrace,
}

/// Orient, greedily color the underlying graph, verify; augment and repeat
/// until a `p`-centered coloring of `g` is found or `max_steps` digraphs
/// have been tried.
pub fn compute_p_centered(g: &Graph, p: usize, max_steps: usize, opts: PccOptions) -> Result<PccResult> {
    if p == 0 || max_steps == 0 {
        return Err(Error::InvalidParameter("p and max_steps must be at least 1".into()));
    }
    let cap = opts.augment.cap_for(g);
    let mut d = low_degree_orientation(g);
    let mut trace = AugmentationTrace::default();
    for i in 1..=max_steps {
        if i > 1 {
            d = tfa_step(&d);
            if d.arc_count() > cap {
                return Err(Error::ArcExplosion {
                    step: i,
                    arcs: d.arc_count(),
                    cap,
                });
            }
        }
        trace.push(i, &d);
        let coloring = greedy_coloring(&d.underlying());
        if verify_p_centered(g, &coloring, p, opts.subset_cap)?.ok {
            return Ok(PccResult {
                coloring,
                steps_used: i,
                trace,
            });
        }
    }
    Err(Error::StepsExhausted { steps: max_steps })
}

//! Undirected simple graphs with sorted adjacency and an optional arrival
//! order.
//!
//! Vertices are the contiguous ids `0..n`. A [`Graph`] is immutable once
//! built; every constructor validates the simple-graph invariants.

mod bfs;
mod generate;
mod io;

pub use bfs::{bfs_ball, Ball, BfsScratch};
pub use generate::{gen_ba, gen_er, BaParams, ErParams};
pub use io::{read_edgelist, write_edgelist, GraphRecord};

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    arrival: Option<Vec<usize>>,
}

/// A graph induced on a vertex subset, relabeled contiguously.
///
/// `original[i]` is the id in the parent graph of vertex `i`; it is sorted
/// ascending.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    pub original: Vec<usize>,
}

impl Induced {
    /// Local id of a parent-graph vertex, if it was kept.
    pub fn local(&self, v: usize) -> Option<usize> {
        self.original.binary_search(&v).ok()
    }
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            arrival: None,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range ids. Edges may be given in either orientation.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            check_vertex(n, u)?;
            check_vertex(n, v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            edge_count,
            arrival: None,
        })
    }

    /// Builds from edges already known to be simple and distinct.
    pub(crate) fn from_simple_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut adj: Vec<Vec<usize>> = deg.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(u, l)| l.windows(2).all(|w| w[0] < w[1]) && !l.contains(&u)));
        Graph {
            adj,
            edge_count: edges.len(),
            arrival: None,
        }
    }

    /// Attaches an arrival order. `order[i]` is the vertex that arrived
    /// `i`-th; it must be a permutation of `0..n`.
    pub fn with_arrival(mut self, order: Vec<usize>) -> Result<Self> {
        let n = self.n();
        if order.len() != n {
            return Err(Error::InvalidParameter(format!(
                "arrival order has {} entries, expected {n}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            check_vertex(n, v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} appears twice in arrival order"
                )));
            }
        }
        self.arrival = Some(order);
        Ok(self)
    }

    /// Attaches the identity arrival order.
    pub fn with_identity_arrival(mut self) -> Self {
        self.arrival = Some((0..self.n()).collect());
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn arrival(&self) -> Option<&[usize]> {
        self.arrival.as_deref()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v < u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        check_vertex(self.n(), v)
    }

    /// Number of edges with both endpoints in `set`. `set` must be sorted
    /// and duplicate-free.
    pub(crate) fn edges_within_sorted(&self, set: &[usize]) -> usize {
        let inside: usize = set
            .iter()
            .map(|&u| {
                self.adj[u]
                    .iter()
                    .filter(|v| set.binary_search(v).is_ok())
                    .count()
            })
            .sum();
        inside / 2
    }

    /// Whether the graph is connected. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n()
    }

    /// Connected components as sorted vertex lists, ordered by minimum id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

fn check_vertex(n: usize, v: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n })
    }
}

/// The subgraph induced by `s`, relabeled in ascending order of original id.
/// Duplicates in `s` are ignored. The arrival order, if any, is restricted to
/// the kept vertices.
pub fn induced_subgraph(g: &Graph, s: &[usize]) -> Result<Induced> {
    for &v in s {
        g.check_vertex(v)?;
    }
    let mut original = s.to_vec();
    original.sort_unstable();
    original.dedup();
    Ok(induce_sorted(g, original))
}

pub(crate) fn induce_sorted(g: &Graph, original: Vec<usize>) -> Induced {
    let mut edges = Vec::new();
    for (i, &u) in original.iter().enumerate() {
        for &v in g.neighbors(u) {
            if v > u {
                if let Ok(j) = original.binary_search(&v) {
                    edges.push((i, j));
                }
            }
        }
    }
    let mut graph = Graph::from_simple_edges(original.len(), &edges);
    if let Some(order) = g.arrival() {
        graph.arrival = Some(
            order
                .iter()
                .filter_map(|v| original.binary_search(v).ok())
                .collect(),
        );
    }
    Induced { graph, original }
}

/// Deletes the `⌊q·n⌋` earliest-arriving vertices and their edges.
pub fn strip_early_vertices(g: &Graph, q: f64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("fraction {q} not in [0, 1]")));
    }
    let order = g.arrival().ok_or(Error::MissingArrival)?;
    let n = g.n();
    // The small offset absorbs representation error in decimal fractions
    // such as 0.29 * 100.
    let k = ((q * n as f64 + 1e-9).floor() as usize).min(n);
    let mut keep = vec![true; n];
    for &v in &order[..k] {
        keep[v] = false;
    }
    let kept: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
    Ok(induce_sorted(g, kept).graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn from_edges_rejects_invalid_input() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn edges_are_lexicographic_and_counted_once() {
        let g = Graph::from_edges(4, [(3, 0), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.m(), 3);
        let deg_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(deg_sum, 2 * g.m());
    }

    #[test]
    fn induced_examples() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let tri = induced_subgraph(&k4, &[3, 1, 0]).unwrap();
        assert_eq!(tri.graph.n(), 3);
        assert_eq!(tri.graph.m(), 3);
        assert_eq!(tri.original, vec![0, 1, 3]);
        assert_eq!(tri.local(3), Some(2));

        let empty = induced_subgraph(&k4, &[]).unwrap();
        assert_eq!((empty.graph.n(), empty.graph.m()), (0, 0));

        let c5 = cycle(5);
        let e = induced_subgraph(&c5, &[2, 3]).unwrap();
        assert_eq!(e.graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);

        assert!(induced_subgraph(&c5, &[5]).is_err());
    }

    #[test]
    fn strip_examples() {
        let g = cycle(10).with_identity_arrival();
        assert_eq!(strip_early_vertices(&g, 0.0).unwrap(), g);
        let all = strip_early_vertices(&g, 1.0).unwrap();
        assert_eq!(all.n(), 0);
        let part = strip_early_vertices(&g, 0.3).unwrap();
        // vertices 3..10 remain: the path 3-4-...-9
        assert_eq!(part.n(), 7);
        assert_eq!(part.m(), 6);
        assert_eq!(part.arrival(), Some(&(0..7).collect::<Vec<_>>()[..]));

        assert!(matches!(strip_early_vertices(&cycle(4), 0.5), Err(Error::MissingArrival)));
        assert!(strip_early_vertices(&g, 1.5).is_err());
    }

    #[test]
    fn strip_respects_custom_arrival() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)])
            .unwrap()
            .with_arrival(vec![3, 2, 1, 0])
            .unwrap();
        let h = strip_early_vertices(&g, 0.5).unwrap();
        // 3 and 2 removed; 0-1 remains, arrival 1 then 0
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(h.arrival(), Some(&[1, 0][..]));
    }

    #[test]
    fn strip_floor_on_decimal_fraction() {
        let g = Graph::empty(100).with_identity_arrival();
        assert_eq!(strip_early_vertices(&g, 0.29).unwrap().n(), 71);
        assert_eq!(strip_early_vertices(&g, 0.1).unwrap().n(), 90);
    }

    #[test]
    fn arrival_must_be_permutation() {
        assert!(Graph::empty(3).with_arrival(vec![0, 0, 1]).is_err());
        assert!(Graph::empty(3).with_arrival(vec![0, 1]).is_err());
    }
}

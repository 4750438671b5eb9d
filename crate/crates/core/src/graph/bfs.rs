use super::Graph;
use crate::error::Result;

/// The `r`-neighborhood of a vertex with exact distances.
///
/// `vertices` is in BFS order, so `vertices[0]` is the center and distances
/// are non-decreasing; `dist[i]` is the distance of `vertices[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub center: usize,
    pub radius: usize,
    pub vertices: Vec<usize>,
    pub dist: Vec<usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex ids sorted ascending.
    pub fn sorted_vertices(&self) -> Vec<usize> {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v
    }
}

/// Reusable BFS state. Marks are epoch-stamped so repeated searches cost
/// time proportional to the explored region only.
#[derive(Clone, Debug)]
pub struct BfsScratch {
    stamp: Vec<u32>,
    dist: Vec<u32>,
    epoch: u32,
    order: Vec<usize>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        BfsScratch {
            stamp: vec![0; n],
            dist: vec![0; n],
            epoch: 0,
            order: Vec::new(),
        }
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    /// Runs a BFS from `v` to depth `r` and returns the visited vertices in
    /// BFS order. Distances stay queryable through [`Self::distance`] until
    /// the next search.
    pub fn explore(&mut self, g: &Graph, v: usize, r: usize) -> &[usize] {
        if self.stamp.len() < g.n() {
            self.stamp.resize(g.n(), 0);
            self.dist.resize(g.n(), 0);
        }
        self.next_epoch();
        self.order.clear();
        self.order.push(v);
        self.stamp[v] = self.epoch;
        self.dist[v] = 0;
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            let du = self.dist[u];
            if du as usize >= r {
                continue;
            }
            for &w in g.neighbors(u) {
                if self.stamp[w] != self.epoch {
                    self.stamp[w] = self.epoch;
                    self.dist[w] = du + 1;
                    self.order.push(w);
                }
            }
        }
        &self.order
    }

    /// Distance from the last search's source, if `v` was reached.
    #[inline]
    pub fn distance(&self, v: usize) -> Option<usize> {
        (self.stamp[v] == self.epoch).then(|| self.dist[v] as usize)
    }

    /// Vertices reached by the last search, in BFS order.
    pub fn visited(&self) -> &[usize] {
        &self.order
    }

    /// Edges of the subgraph induced by the last search's visited set.
    pub fn visited_edge_count(&self, g: &Graph) -> usize {
        let twice: usize = self
            .order
            .iter()
            .map(|&u| {
                g.neighbors(u)
                    .iter()
                    .filter(|&&w| self.stamp[w] == self.epoch)
                    .count()
            })
            .sum();
        twice / 2
    }
}

/// `N_r(v)`: all vertices within distance `r` of `v`, with distances.
pub fn bfs_ball(g: &Graph, v: usize, r: usize) -> Result<Ball> {
    g.check_vertex(v)?;
    let mut scratch = BfsScratch::new(g.n());
    let vertices = scratch.explore(g, v, r).to_vec();
    let dist = vertices
        .iter()
        .map(|&u| scratch.distance(u).expect("visited"))
        .collect();
    Ok(Ball {
        center: v,
        radius: r,
        vertices,
        dist,
    })
}

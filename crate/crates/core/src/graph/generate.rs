use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::seed::Seed;

/// Erdős–Rényi parameters: `n` vertices, edge probability `d / n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErParams {
    pub n: usize,
    pub d: f64,
}

impl ErParams {
    pub fn new(n: usize, d: f64) -> Result<Self> {
        let p = ErParams { n, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.d.is_finite() || self.d < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "density d = {} must be a finite non-negative number",
                self.d
            )));
        }
        if self.d > self.n as f64 {
            return Err(Error::InvalidParameter(format!(
                "density d = {} exceeds n = {} (edge probability above 1)",
                self.d, self.n
            )));
        }
        Ok(())
    }

    /// Edge probability `d / n` (0 for the empty graph).
    pub fn p(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.d / self.n as f64
        }
    }
}

/// Preferential-attachment parameters: `n` final vertices, `d` edges per
/// arriving vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaParams {
    pub n: usize,
    pub d: usize,
}

impl BaParams {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        let p = BaParams { n, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidParameter("attachment count d must be at least 1".into()));
        }
        if self.n < self.d + 1 {
            return Err(Error::InvalidParameter(format!(
                "n = {} must be at least d + 1 = {}",
                self.n,
                self.d + 1
            )));
        }
        Ok(())
    }

    /// `C(d+1, 2) + d·(n−d−1)`, the edge count forced by the construction.
    pub fn edge_count(&self) -> usize {
        self.d * (self.d + 1) / 2 + self.d * (self.n - self.d - 1)
    }
}

/// Samples `G(n, d/n)`. Uses stream 0 of `seed`.
///
/// Pairs are visited in the order `(0,1), (0,2), (1,2), (0,3), …` and the
/// gap to the next present pair is drawn from the geometric distribution,
/// which yields exactly independent Bernoulli(p) pairs in `O(n + m)` time.
pub fn gen_er(params: ErParams, seed: Seed) -> Result<Graph> {
    params.validate()?;
    let n = params.n;
    let p = params.p();
    let mut edges = Vec::new();
    if n >= 2 && p > 0.0 {
        if p >= 1.0 {
            for v in 1..n {
                edges.extend((0..v).map(|w| (w, v)));
            }
        } else {
            let mut rng = seed.rng(0);
            let log_q = (-p).ln_1p();
            let (mut v, mut w) = (1usize, -1i64);
            while v < n {
                let r: f64 = rng.gen();
                let skip = ((-r).ln_1p() / log_q).floor();
                // A skip past every remaining pair ends the scan.
                if skip >= (n * n) as f64 {
                    break;
                }
                w += 1 + skip as i64;
                while w >= v as i64 && v < n {
                    w -= v as i64;
                    v += 1;
                }
                if v < n {
                    edges.push((w as usize, v));
                }
            }
        }
    }
    Ok(Graph::from_simple_edges(n, &edges).with_identity_arrival())
}

/// Samples a preferential-attachment graph. Uses stream 0 of `seed`.
///
/// Starts from the complete graph on `0..=d`; each later vertex `i` picks
/// `d` distinct earlier vertices with probability proportional to their
/// current degree (repeated draws, duplicates rejected). The arrival order
/// is the insertion order.
pub fn gen_ba(params: BaParams, seed: Seed) -> Result<Graph> {
    params.validate()?;
    let BaParams { n, d } = params;
    let mut rng = seed.rng(0);
    let mut edges = Vec::with_capacity(params.edge_count());
    // Every edge contributes both endpoints, so a uniform pick from this list
    // is a degree-proportional pick of a vertex.
    let mut endpoints = Vec::with_capacity(2 * params.edge_count());
    for v in 1..=d {
        for u in 0..v {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut targets = Vec::with_capacity(d);
    for i in (d + 1)..n {
        targets.clear();
        while targets.len() < d {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, i));
            endpoints.push(t);
            endpoints.push(i);
        }
    }
    Ok(Graph::from_simple_edges(n, &edges).with_identity_arrival())
}

//! Independent reference implementations for the integration suites. Every
//! routine here is deliberately naive: all-pairs distances by
//! Floyd–Warshall, subsets by enumeration, embeddings by trying every
//! injective map.

#![allow(dead_code)]

use rand::Rng;
use sparse_local::graph::{gen_er, ErParams};
use sparse_local::{Graph, Seed};

pub const INF: usize = usize::MAX / 4;

pub fn er(n: usize, d: f64, seed: u64) -> Graph {
    gen_er(ErParams::new(n, d.min(n as f64)).unwrap(), Seed::new(seed)).unwrap()
}

/// Uniform `G(n, p)` drawn pair by pair, independent of the library's
/// skipping sampler.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// A random connected graph on `h` vertices: a random recursive tree plus
/// each remaining pair with probability `extra`.
pub fn connected_pattern(h: usize, extra: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..h {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..h {
        for v in u + 1..h {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(h, edges).unwrap()
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

pub fn floyd(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for v in from..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, k, v + 1, cur, f);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), f);
}

/// Calls `f` on every permutation of `items`.
pub fn for_each_permutation(items: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
        if i == items.len() {
            f(items);
            return;
        }
        for j in i..items.len() {
            items.swap(i, j);
            rec(items, i + 1, f);
            items.swap(i, j);
        }
    }
    rec(items, 0, f);
}

/// `k`-cycles: for each `k`-subset, the Hamiltonian cycles of the subset
/// written from its minimum with the second vertex below the last.
pub fn cycles_by_subsets(g: &Graph, k: usize) -> u64 {
    let a = adjacency_matrix(g);
    let mut count = 0;
    for_each_subset(g.n(), k, &mut |s| {
        let mut rest = s[1..].to_vec();
        for_each_permutation(&mut rest, &mut |perm| {
            if perm[0] > perm[k - 2] {
                return;
            }
            let mut ok = a[s[0]][perm[0]] && a[perm[k - 2]][s[0]];
            for w in perm.windows(2) {
                ok &= a[w[0]][w[1]];
            }
            count += u64::from(ok);
        });
    });
    count
}

pub fn induced_edges(a: &[Vec<bool>], s: &[usize]) -> usize {
    let mut e = 0;
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            e += usize::from(a[u][v]);
        }
    }
    e
}

/// `k`-subsets inducing at least `k + m` edges.
pub fn dense_by_subsets(g: &Graph, k: usize, m: usize) -> u64 {
    let a = adjacency_matrix(g);
    let mut count = 0;
    for_each_subset(g.n(), k, &mut |s| count += u64::from(induced_edges(&a, s) >= k + m));
    count
}

/// Every injective edge-preserving map from `h` into `g`, by trying all
/// ordered `|h|`-tuples.
pub fn all_embeddings(g: &Graph, h: &Graph) -> Vec<Vec<usize>> {
    let a = adjacency_matrix(g);
    let he: Vec<(usize, usize)> = h.edges().collect();
    let mut out = Vec::new();
    for_each_subset(g.n(), h.n(), &mut |s| {
        let mut s = s.to_vec();
        for_each_permutation(&mut s, &mut |map| {
            if he.iter().all(|&(x, y)| a[map[x]][map[y]]) {
                out.push(map.to_vec());
            }
        });
    });
    out.sort();
    out
}

/// Whether `h` embeds into `g`, by extending partial maps one pattern
/// vertex at a time in id order (no ordering heuristics, no degree
/// pruning).
pub fn embeds(g: &Graph, h: &Graph) -> bool {
    fn rec(a: &[Vec<bool>], h: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let x = map.len();
        if x == h.n() {
            return true;
        }
        for v in 0..a.len() {
            if used[v] || !h.neighbors(x).iter().filter(|&&y| y < x).all(|&y| a[map[y]][v]) {
                continue;
            }
            used[v] = true;
            map.push(v);
            if rec(a, h, map, used) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
        false
    }
    if h.n() > g.n() {
        return false;
    }
    let a = adjacency_matrix(g);
    rec(&a, h, &mut Vec::new(), &mut vec![false; g.n()])
}

/// Size of a largest subset of `red` with pairwise distance above `2r`:
/// include/exclude recursion over `red` in order, on a u64 bitmask.
pub fn max_scattered_size(g: &Graph, red: &[usize], r: usize) -> usize {
    assert!(red.len() <= 64);
    let d = floyd(g);
    let conflict: Vec<u64> = red
        .iter()
        .map(|&u| {
            red.iter()
                .enumerate()
                .filter(|&(_, &v)| d[u][v] <= 2 * r)
                .fold(0u64, |m, (j, _)| m | 1u64 << j)
        })
        .collect();
    // conflict[i] contains i itself, so taking i drops it from the candidates
    fn grow(cand: u64, size: usize, conflict: &[u64], best: &mut usize) {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        if cand == 0 {
            *best = size;
            return;
        }
        let i = cand.trailing_zeros() as usize;
        let rest = cand & !(1u64 << i);
        grow(cand & !conflict[i], size + 1, conflict, best);
        if conflict[i] & rest != 0 {
            grow(rest, size, conflict, best);
        }
    }
    let all = if red.len() == 64 { u64::MAX } else { (1u64 << red.len()) - 1 };
    let mut best = 0;
    grow(all, 0, &conflict, &mut best);
    best
}

/// Reference predicate semantics on an explicit ball.
#[derive(Clone, Debug)]
pub enum RefPredicate {
    Pattern(Graph, usize),
    Degree(usize, usize),
    Surplus(i64, usize),
}

pub fn ref_predicate(g: &Graph, dist: &[Vec<usize>], v: usize, pred: &RefPredicate) -> bool {
    let radius = match pred {
        RefPredicate::Pattern(_, r) | RefPredicate::Degree(_, r) | RefPredicate::Surplus(_, r) => *r,
    };
    let ball: Vec<usize> = (0..g.n()).filter(|&w| dist[v][w] <= radius).collect();
    let a = adjacency_matrix(g);
    match pred {
        RefPredicate::Degree(t, _) => ball.iter().filter(|&&w| a[v][w]).count() >= *t,
        RefPredicate::Surplus(m, _) => induced_edges(&a, &ball) as i64 - ball.len() as i64 >= *m,
        RefPredicate::Pattern(h, _) => {
            let sub = sparse_local::graph::induced_subgraph(g, &ball).unwrap().graph;
            embeds(&sub, h)
        }
    }
}

/// Whether `s` vertices pairwise more than `2r` apart all satisfy `pred`,
/// by enumerating `s`-tuples in increasing order.
pub fn ref_sentence(g: &Graph, s: usize, r: usize, pred: &RefPredicate) -> bool {
    let dist = floyd(g);
    let sat: Vec<bool> = (0..g.n()).map(|v| ref_predicate(g, &dist, v, pred)).collect();
    let mut found = false;
    for_each_subset(g.n(), s, &mut |set| {
        if found || !set.iter().all(|&v| sat[v]) {
            return;
        }
        found = set
            .iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| dist[a][b] > 2 * r));
    });
    found
}

/// Every member of `set` lies in `red` and all pairs are more than `2r`
/// apart under `dist`.
pub fn scattered_in(dist: &[Vec<usize>], red: &[usize], set: &[usize], r: usize) -> bool {
    set.iter().all(|a| red.contains(a))
        && (0..set.len()).all(|i| (i + 1..set.len()).all(|j| dist[set[i]][set[j]] > 2 * r))
}

/// Straight from the definition: for every set of at most `p` colors, each
/// connected component of the subgraph induced by those classes has some
/// color appearing on exactly one of its vertices.
pub fn ref_p_centered(g: &Graph, colors: &[usize], p: usize) -> bool {
    let mut palette: Vec<usize> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let mut ok = true;
    for size in 1..=p.min(palette.len()) {
        for_each_subset(palette.len(), size, &mut |pick| {
            if !ok {
                return;
            }
            let chosen: Vec<usize> = pick.iter().map(|&i| palette[i]).collect();
            let verts: Vec<usize> = (0..g.n()).filter(|&v| chosen.contains(&colors[v])).collect();
            let mut seen = vec![false; g.n()];
            for &s in &verts {
                if seen[s] {
                    continue;
                }
                seen[s] = true;
                let mut comp = vec![s];
                let mut i = 0;
                while i < comp.len() {
                    for &w in g.neighbors(comp[i]) {
                        if !seen[w] && chosen.contains(&colors[w]) {
                            seen[w] = true;
                            comp.push(w);
                        }
                    }
                    i += 1;
                }
                let unique = chosen
                    .iter()
                    .any(|&c| comp.iter().filter(|&&v| colors[v] == c).count() == 1);
                if !unique {
                    ok = false;
                    return;
                }
            }
        });
    }
    ok
}

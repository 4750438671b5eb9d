//! Edge-list text format and its JSON mirror.
//!
//! ```text
//! n m
//! u v        (m lines, u < v, 0-based)
//! #arrival   (optional)
//! id         (n lines, earliest arrival first)
//! ```

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// JSON form of a graph, field for field the same content as the edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub m: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrival: Option<Vec<usize>>,
}

impl From<&Graph> for GraphRecord {
    fn from(g: &Graph) -> Self {
        GraphRecord {
            n: g.n(),
            m: g.m(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            arrival: g.arrival().map(<[usize]>::to_vec),
        }
    }
}

impl TryFrom<GraphRecord> for Graph {
    type Error = Error;

    fn try_from(rec: GraphRecord) -> Result<Graph> {
        if rec.edges.len() != rec.m {
            return Err(Error::InvalidParameter(format!(
                "record declares {} edges but lists {}",
                rec.m,
                rec.edges.len()
            )));
        }
        let g = Graph::from_edges(rec.n, rec.edges.iter().map(|e| (e[0], e[1])))?;
        match rec.arrival {
            Some(order) => g.with_arrival(order),
            None => Ok(g),
        }
    }
}

/// Writes `g` in edge-list format. Output is a pure function of the graph.
pub fn write_edgelist<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    writeln!(w, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    if let Some(order) = g.arrival() {
        writeln!(w, "#arrival")?;
        for v in order {
            writeln!(w, "{v}")?;
        }
    }
    w.flush()?;
    Ok(())
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let bad = |msg: &str| Error::Parse {
        line: lineno,
        msg: format!("{msg}: {line:?}"),
    };
    let mut it = line.split_ascii_whitespace();
    let a = it.next().ok_or_else(|| bad("expected two integers"))?;
    let b = it.next().ok_or_else(|| bad("expected two integers"))?;
    if it.next().is_some() {
        return Err(bad("trailing tokens"));
    }
    let a = a.parse().map_err(|_| bad("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| bad("not a non-negative integer"))?;
    Ok((a, b))
}

/// Reads a graph in edge-list format.
pub fn read_edgelist<R: BufRead>(r: R) -> Result<Graph> {
    let mut lines = r
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)))
        .filter(|l| !matches!(l, Ok((_, s)) if s.trim().is_empty()));

    let (hline, header) = lines.next().transpose()?.ok_or(Error::Parse {
        line: 1,
        msg: "missing header line \"n m\"".into(),
    })?;
    let (n, m) = parse_pair(&header, hline)?;

    let mut edges = Vec::with_capacity(m);
    let mut seen_in_line = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = lines.next().transpose()?.ok_or(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges but fewer were given"),
        })?;
        let (u, v) = parse_pair(&line, lineno)?;
        let at = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                line: lineno,
                msg: other.to_string(),
            },
        };
        if u == v {
            return Err(at(Error::SelfLoop(u)));
        }
        if u >= n || v >= n {
            return Err(at(Error::VertexOutOfRange { vertex: u.max(v), n }));
        }
        edges.push((u, v));
        seen_in_line.push(lineno);
    }
    let g = Graph::from_edges(n, edges.iter().copied()).map_err(|e| match e {
        Error::DuplicateEdge(a, b) => {
            let lineno = edges
                .iter()
                .zip(&seen_in_line)
                .filter(|(&(u, v), _)| (u.min(v), u.max(v)) == (a, b))
                .nth(1)
                .map_or(hline, |(_, &l)| l);
            Error::Parse {
                line: lineno,
                msg: format!("duplicate edge {{{a}, {b}}}"),
            }
        }
        other => other,
    })?;

    match lines.next().transpose()? {
        None => Ok(g),
        Some((lineno, line)) if line.trim() == "#arrival" => {
            let mut order = Vec::with_capacity(n);
            for item in lines {
                let (lineno, line) = item?;
                for tok in line.split_ascii_whitespace() {
                    let v = tok.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("bad arrival id {tok:?}"),
                    })?;
                    order.push(v);
                }
            }
            g.with_arrival(order).map_err(|e| Error::Parse {
                line: lineno,
                msg: e.to_string(),
            })
        }
        Some((lineno, line)) => Err(Error::Parse {
            line: lineno,
            msg: format!("unexpected content after {m} edges: {line:?}"),
        }),
    }
}

impl Graph {
    pub fn load(path: impl AsRef<Path>) -> Result<Graph> {
        let f = std::fs::File::open(path)?;
        read_edgelist(std::io::BufReader::new(f))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let f = std::fs::File::create(path)?;
        write_edgelist(self, std::io::BufWriter::new(f))
    }

    pub fn to_edgelist_string(&self) -> String {
        let mut buf = Vec::new();
        write_edgelist(self, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ASCII output")
    }

    pub fn from_edgelist_str(s: &str) -> Result<Graph> {
        read_edgelist(s.as_bytes())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&GraphRecord::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        serde_json::from_str::<GraphRecord>(s)?.try_into()
    }
}

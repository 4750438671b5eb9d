//! Seeded experiment pipelines.
//!
//! Each experiment samples graphs for every size in `params.n`, `trials`
//! graphs per size, computes one or more statistics per graph and
//! summarizes them. Trial `t` of size index `i` uses stream
//! `i · trials + t` of the master seed; the derived seed is written to
//! every row so a single row can be recomputed from it.
//!
//! CSV columns: `kind,n,trial,stream,graph_seed,statistic,value,error`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{compute_p_centered, tfa_run, AugmentOptions, PccOptions, DEFAULT_SUBSET_CAP};
use crate::graph::{gen_ba, gen_er, strip_early_vertices, BaParams, ErParams, Graph};
use crate::iso::{brute_force_embed, find_subgraph, Pattern, TrialConfig};
use crate::local::{
    count_cycles, count_dense_subgraphs, dense_bound, estimate_path_prob, expected_cycles, max_ball_size,
    nhood_bound, surplus_profile, BoundCheck,
};
use crate::scatter::{brute_force_sentence, check_sentence, BasicLocalSentence, LocalPredicate};
use crate::seed::{Seed, RNG_ALGORITHM};
use crate::stats::{linear_fit, mean, spearman, std_err, LinearFit};

/// Largest `n` for which sentence benches also run the exhaustive oracle.
const SENTENCE_ORACLE_MAX_N: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Cycles,
    Surplus,
    Nhood,
    Path,
    TfaBa,
    PccBa,
    TruncatedBa,
    FindhBench,
    SentenceBench,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 9] = [
        ExperimentKind::Cycles,
        ExperimentKind::Surplus,
        ExperimentKind::Nhood,
        ExperimentKind::Path,
        ExperimentKind::TfaBa,
        ExperimentKind::PccBa,
        ExperimentKind::TruncatedBa,
        ExperimentKind::FindhBench,
        ExperimentKind::SentenceBench,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Cycles => "cycles",
            ExperimentKind::Surplus => "surplus",
            ExperimentKind::Nhood => "nhood",
            ExperimentKind::Path => "path",
            ExperimentKind::TfaBa => "tfa-ba",
            ExperimentKind::PccBa => "pcc-ba",
            ExperimentKind::TruncatedBa => "truncated-ba",
            ExperimentKind::FindhBench => "findh-bench",
            ExperimentKind::SentenceBench => "sentence-bench",
        }
    }

    fn default_model(self) -> Model {
        match self {
            ExperimentKind::TfaBa | ExperimentKind::PccBa | ExperimentKind::TruncatedBa => Model::Ba,
            _ => Model::Er,
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown experiment kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Er,
    Ba,
}

impl Model {
    /// Samples a graph from stream 0 of `seed`.
    pub fn generate(self, n: usize, d: f64, seed: Seed) -> Result<Graph> {
        match self {
            Model::Er => gen_er(ErParams::new(n, d)?, seed),
            Model::Ba => {
                if d.fract() != 0.0 || d < 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "preferential attachment needs a positive integer d, got {d}"
                    )));
                }
                gen_ba(BaParams::new(n, d as usize)?, seed)
            }
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "er" => Ok(Model::Er),
            "ba" => Ok(Model::Ba),
            _ => Err(Error::InvalidParameter(format!("unknown model {s:?}"))),
        }
    }
}

/// Pipeline parameters. Fields a pipeline does not use are ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    pub model: Model,
    /// Graph sizes, in order.
    pub n: Vec<usize>,
    pub d: f64,
    /// Graphs per size; Monte Carlo samples for `path`.
    pub trials: u64,
    pub r: usize,
    pub k: usize,
    pub m: usize,
    pub p: usize,
    /// Fraction of earliest vertices removed by `truncated-ba`.
    pub q: f64,
    /// Witness count for `sentence-bench`.
    pub s: usize,
    /// Augmentation steps for `tfa-ba`.
    pub steps: usize,
    /// Step limit for the coloring pipelines.
    pub max_steps: usize,
    pub epsilon: f64,
    /// Arc cap as a multiple of `|E|`.
    pub arc_factor: usize,
    pub subset_cap: usize,
}

/// A pipeline name, its parameters and the master seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub params: ExperimentParams,
    pub seed: Seed,
}

fn range(from: usize, to: usize, step: usize) -> Vec<usize> {
    (from..=to).step_by(step).collect()
}

impl ExperimentSpec {
    /// Defaults for `kind`: the desk-scale protocol each pipeline exists to
    /// run.
    pub fn preset(kind: ExperimentKind, seed: Seed) -> Self {
        let mut p = ExperimentParams {
            model: kind.default_model(),
            n: vec![500],
            d: 2.0,
            trials: 100,
            r: 1,
            k: 3,
            m: 1,
            p: 3,
            q: 0.1,
            s: 2,
            steps: 3,
            max_steps: 10,
            epsilon: 0.01,
            arc_factor: 1000,
            subset_cap: DEFAULT_SUBSET_CAP,
        };
        match kind {
            ExperimentKind::Cycles => {
                p.n = vec![2000];
                p.d = 3.0;
                p.trials = 200;
            }
            ExperimentKind::Surplus => {
                p.trials = 200;
                p.k = 4;
                p.r = 2;
            }
            ExperimentKind::Nhood => {
                p.n = vec![10_000];
                p.d = 3.0;
            }
            ExperimentKind::Path => {
                p.r = 3;
                p.trials = 20_000;
            }
            ExperimentKind::TfaBa | ExperimentKind::PccBa => {
                p.n = range(500, 3000, 500);
                p.trials = 10;
            }
            ExperimentKind::TruncatedBa => {
                p.n = range(5000, 30_000, 5000);
                p.trials = 10;
            }
            ExperimentKind::FindhBench => {
                p.n = vec![40];
                p.d = 3.0;
                p.k = 4;
            }
            ExperimentKind::SentenceBench => {
                p.n = vec![40];
            }
        }
        ExperimentSpec {
            kind,
            params: p,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if p.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if p.n.is_empty() {
            return bad("at least one graph size is required".into());
        }
        let er_only = matches!(
            self.kind,
            ExperimentKind::Cycles | ExperimentKind::Surplus | ExperimentKind::Nhood | ExperimentKind::Path
        );
        if er_only && p.model != Model::Er {
            return bad(format!("{} compares against G(n, d/n) bounds; use model er", self.kind));
        }
        if self.kind == ExperimentKind::TruncatedBa && !(0.0..=1.0).contains(&p.q) {
            return bad(format!("q = {} not in [0, 1]", p.q));
        }
        if self.kind == ExperimentKind::SentenceBench && p.s == 0 {
            return bad("s must be at least 1".into());
        }
        if matches!(self.kind, ExperimentKind::PccBa | ExperimentKind::TruncatedBa) && (p.p == 0 || p.max_steps == 0) {
            return bad("p and max_steps must be at least 1".into());
        }
        for &n in &p.n {
            match p.model {
                Model::Er => {
                    ErParams::new(n, p.d)?;
                }
                Model::Ba => {
                    if p.d.fract() != 0.0 || p.d < 1.0 {
                        return bad(format!("preferential attachment needs a positive integer d, got {}", p.d));
                    }
                    BaParams::new(n, p.d as usize)?;
                }
            }
        }
        Ok(())
    }
}

/// One statistic of one trial. `value` is absent when the trial failed, in
/// which case `error` says why.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub kind: ExperimentKind,
    pub n: usize,
    pub trial: u64,
    pub stream: u64,
    pub graph_seed: u64,
    pub statistic: String,
    pub value: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub statistic: String,
    pub count: usize,
    pub errors: usize,
    /// `None` when every trial failed.
    pub mean: Option<f64>,
    pub std_err: Option<f64>,
    /// Analytic reference value for this size, where one exists.
    pub reference: Option<f64>,
}

/// A statistic regressed on `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    pub statistic: String,
    /// `None` when either variable is constant.
    pub spearman: Option<f64>,
    pub fit: LinearFit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Versions {
    pub crate_version: String,
    pub rng: String,
}

impl Default for Versions {
    fn default() -> Self {
        Versions {
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            rng: RNG_ALGORITHM.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub rows: Vec<Row>,
    pub summary: Vec<SummaryRow>,
    pub checks: Vec<BoundCheck>,
    pub trends: Vec<Trend>,
    pub versions: Versions,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn trend(&self, statistic: &str) -> Option<&Trend> {
        self.trends.iter().find(|t| t.statistic == statistic)
    }

    /// Successful values of `statistic` at size `n`, in trial order.
    pub fn values(&self, n: usize, statistic: &str) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.n == n && r.statistic == statistic)
            .filter_map(|r| r.value)
            .collect()
    }

    pub fn summary_for(&self, n: usize, statistic: &str) -> Option<&SummaryRow> {
        self.summary.iter().find(|s| s.n == n && s.statistic == statistic)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes `<stem>.csv` and `<stem>.json`.
    pub fn write(&self, stem: &Path) -> Result<()> {
        std::fs::write(stem.with_extension("csv"), self.to_csv()?)?;
        std::fs::write(stem.with_extension("json"), self.to_json()?)?;
        Ok(())
    }
}

/// A trial's successful statistics, or the error that stopped it.
type Outcome = std::result::Result<Vec<(&'static str, f64)>, Error>;

struct Job {
    n: usize,
    trial: u64,
    stream: u64,
    seed: Seed,
}

/// Runs the pipeline named by `spec.kind`. Deterministic for a given spec:
/// trials run in parallel but rows come out in `(n, trial)` order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let p = &spec.params;
    let rows = if spec.kind == ExperimentKind::Path {
        path_rows(spec)
    } else {
        let jobs: Vec<Job> = p
            .n
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| {
                (0..p.trials).map(move |t| {
                    let stream = i as u64 * p.trials + t;
                    Job {
                        n,
                        trial: t,
                        stream,
                        seed: spec.seed.derive(stream),
                    }
                })
            })
            .collect();
        let outcomes: Vec<Outcome> = jobs.par_iter().map(|job| run_trial(spec, job.n, job.seed)).collect();
        jobs.iter()
            .zip(outcomes)
            .flat_map(|(job, outcome)| {
                let row = |statistic: &str, value, error| Row {
                    kind: spec.kind,
                    n: job.n,
                    trial: job.trial,
                    stream: job.stream,
                    graph_seed: job.seed.master,
                    statistic: statistic.to_string(),
                    value,
                    error,
                };
                match outcome {
                    Ok(stats) => stats.into_iter().map(|(s, v)| row(s, Some(v), None)).collect(),
                    Err(e) => vec![row(primary_statistic(spec.kind), None, Some(e.to_string()))],
                }
            })
            .collect()
    };
    Ok(summarize(spec, rows))
}

fn primary_statistic(kind: ExperimentKind) -> &'static str {
    match kind {
        ExperimentKind::Cycles => "cycles",
        ExperimentKind::Surplus => "dense_count",
        ExperimentKind::Nhood => "max_ball_size",
        ExperimentKind::Path => "path_prob",
        ExperimentKind::TfaBa => "max_indegree",
        ExperimentKind::PccBa | ExperimentKind::TruncatedBa => "palette",
        ExperimentKind::FindhBench => "found",
        ExperimentKind::SentenceBench => "holds",
    }
}

/// Statistics of one sampled graph. The graph comes from stream 0 of
/// `seed`; randomized searches use `seed.derive(1)`.
fn run_trial(spec: &ExperimentSpec, n: usize, seed: Seed) -> Outcome {
    let p = &spec.params;
    let g = p.model.generate(n, p.d, seed)?;
    let flag = |b: bool| if b { 1.0 } else { 0.0 };
    Ok(match spec.kind {
        ExperimentKind::Cycles => vec![("cycles", count_cycles(&g, p.k)? as f64)],
        ExperimentKind::Surplus => {
            let dense = count_dense_subgraphs(&g, p.k, p.m, p.d)?;
            let profile = surplus_profile(&g, p.r);
            vec![
                ("dense_count", dense.count as f64),
                ("max_ball_surplus", profile.max_surplus.unwrap_or(0) as f64),
            ]
        }
        ExperimentKind::Nhood => {
            let check = max_ball_size(&g, p.r, p.d);
            vec![("max_ball_size", check.max as f64), ("exceeds_bound", flag(!check.ok))]
        }
        ExperimentKind::Path => unreachable!("path experiments aggregate inside one row"),
        ExperimentKind::TfaBa => {
            let opts = AugmentOptions {
                arc_cap: Some(p.arc_factor.saturating_mul(g.m())),
            };
            let (_, trace) = tfa_run(&g, p.steps, opts)?;
            let last = trace.records.last().expect("trace holds the input digraph");
            vec![("max_indegree", last.max_indegree as f64), ("arcs", last.arcs as f64)]
        }
        ExperimentKind::PccBa | ExperimentKind::TruncatedBa => {
            let g = if spec.kind == ExperimentKind::TruncatedBa {
                strip_early_vertices(&g, p.q)?
            } else {
                g
            };
            let opts = PccOptions {
                subset_cap: p.subset_cap,
                augment: AugmentOptions {
                    arc_cap: Some(p.arc_factor.saturating_mul(g.m())),
                },
            };
            let res = compute_p_centered(&g, p.p, p.max_steps, opts)?;
            vec![
                ("palette", res.coloring.palette_size() as f64),
                ("steps_used", res.steps_used as f64),
                ("vertices", g.n() as f64),
            ]
        }
        ExperimentKind::FindhBench => {
            let h = bench_pattern(p.k)?;
            let cfg = TrialConfig::with_epsilon(p.epsilon);
            let found = find_subgraph(&g, &h, &cfg, seed.derive(1))?;
            if let Some(e) = &found {
                if !e.verify(&g, h.graph()) {
                    return Err(Error::InvalidParameter("reported embedding does not verify".into()));
                }
            }
            let oracle = brute_force_embed(&g, h.graph()).is_some();
            vec![
                ("found", flag(found.is_some())),
                ("oracle", flag(oracle)),
                ("false_positive", flag(found.is_some() && !oracle)),
                ("miss", flag(found.is_none() && oracle)),
            ]
        }
        ExperimentKind::SentenceBench => {
            let sent = BasicLocalSentence::new(p.s, p.r, LocalPredicate::surplus_at_least(0, p.r))?;
            let out = check_sentence(&g, &sent)?;
            let mut stats = vec![
                ("holds", flag(out.holds)),
                ("red_count", out.red_count as f64),
                ("used_exact", flag(out.scatter.used_exact)),
            ];
            if n <= SENTENCE_ORACLE_MAX_N {
                let brute = brute_force_sentence(&g, &sent)?;
                stats.push(("disagrees", flag(brute != out.holds)));
            }
            stats
        }
    })
}

/// The `k`-cycle for `k ≥ 3`, else the path on `k` vertices.
fn bench_pattern(k: usize) -> Result<Pattern> {
    let h = if k >= 3 {
        Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))?
    } else {
        Graph::from_edges(k, (1..k).map(|i| (i - 1, i)))?
    };
    Pattern::new(h)
}

/// One row per size: the Monte Carlo estimate over `trials` graphs, which
/// come from `derive(t)` of the row's seed.
fn path_rows(spec: &ExperimentSpec) -> Vec<Row> {
    let p = &spec.params;
    p.n.iter()
        .enumerate()
        .map(|(i, &n)| {
            let seed = spec.seed.derive(i as u64);
            let res = ErParams::new(n, p.d).and_then(|params| estimate_path_prob(params, p.r, p.trials, seed));
            let (value, error) = match res {
                Ok(est) => (Some(est.estimate), None),
                Err(e) => (None, Some(e.to_string())),
            };
            Row {
                kind: spec.kind,
                n,
                trial: 0,
                stream: i as u64,
                graph_seed: seed.master,
                statistic: "path_prob".into(),
                value,
                error,
            }
        })
        .collect()
}

fn reference(spec: &ExperimentSpec, n: usize, statistic: &str) -> Option<f64> {
    let p = &spec.params;
    match (spec.kind, statistic) {
        (ExperimentKind::Cycles, "cycles") => Some(expected_cycles(n, p.d, p.k)),
        (ExperimentKind::Surplus, "dense_count") => Some(dense_bound(n, p.d, p.k, p.m)),
        (ExperimentKind::Nhood, "max_ball_size") => Some(nhood_bound(n, p.d, p.r)),
        _ => None,
    }
}

fn summarize(spec: &ExperimentSpec, rows: Vec<Row>) -> ExperimentReport {
    let p = &spec.params;
    let mut stat_order: Vec<&str> = Vec::new();
    for r in &rows {
        if !stat_order.contains(&r.statistic.as_str()) {
            stat_order.push(&r.statistic);
        }
    }
    let mut summary = Vec::new();
    for &n in &p.n {
        for &stat in &stat_order {
            let picked: Vec<&Row> = rows.iter().filter(|r| r.n == n && r.statistic == stat).collect();
            let values: Vec<f64> = picked.iter().filter_map(|r| r.value).collect();
            summary.push(SummaryRow {
                n,
                statistic: stat.to_string(),
                count: values.len(),
                errors: picked.len() - values.len(),
                mean: (!values.is_empty()).then(|| mean(&values)),
                std_err: (!values.is_empty()).then(|| std_err(&values)),
                reference: reference(spec, n, stat),
            });
        }
    }

    let mut trends = Vec::new();
    let distinct_n: std::collections::BTreeSet<usize> = p.n.iter().copied().collect();
    if distinct_n.len() >= 2 {
        for &stat in &stat_order {
            let (xs, ys): (Vec<f64>, Vec<f64>) = rows
                .iter()
                .filter(|r| r.statistic == stat)
                .filter_map(|r| r.value.map(|v| (r.n as f64, v)))
                .unzip();
            if xs.len() >= 3 {
                trends.push(Trend {
                    statistic: stat.to_string(),
                    spearman: Some(spearman(&xs, &ys)).filter(|r| !r.is_nan()),
                    fit: linear_fit(&xs, &ys),
                });
            }
        }
    }

    let mut report = ExperimentReport {
        spec: spec.clone(),
        rows,
        summary,
        checks: Vec::new(),
        trends,
        versions: Versions::default(),
    };
    report.checks = checks(&report);
    report
}

fn at_least(name: String, observed: f64, bound: f64) -> BoundCheck {
    BoundCheck {
        name,
        observed,
        bound,
        satisfied: observed >= bound,
    }
}

fn by_n<'a>(report: &'a ExperimentReport, stat: &'a str) -> impl Iterator<Item = &'a SummaryRow> {
    report.spec.params.n.iter().filter_map(move |&n| report.summary_for(n, stat))
}

fn checks(report: &ExperimentReport) -> Vec<BoundCheck> {
    let spec = &report.spec;
    let p = &spec.params;
    let mut out = Vec::new();
    let errors: usize = report.summary.iter().map(|s| s.errors).sum();
    out.push(BoundCheck::new("failed trials", errors as f64, 0.0));
    match spec.kind {
        ExperimentKind::Cycles => {
            for s in by_n(report, "cycles") {
                if let (Some(m), Some(se), Some(expected)) = (s.mean, s.std_err, s.reference) {
                    out.push(BoundCheck::new(
                        format!("n={}: |mean - expected| within 4 SE", s.n),
                        (m - expected).abs(),
                        4.0 * se,
                    ));
                }
            }
        }
        ExperimentKind::Surplus => {
            for s in by_n(report, "dense_count") {
                if let (Some(m), Some(se), Some(bound)) = (s.mean, s.std_err, s.reference) {
                    out.push(BoundCheck::new(
                        format!("n={}: mean dense count below bound + 4 SE", s.n),
                        m,
                        bound + 4.0 * se,
                    ));
                }
            }
        }
        ExperimentKind::Nhood => {
            for s in by_n(report, "exceeds_bound") {
                if let Some(m) = s.mean {
                    out.push(BoundCheck::new(
                        format!("n={}: samples above ball-size bound", s.n),
                        m * s.count as f64,
                        0.0,
                    ));
                }
            }
        }
        ExperimentKind::Path => {
            for s in by_n(report, "path_prob") {
                if let Some(m) = s.mean {
                    let lower = p.d / s.n as f64;
                    let upper = 2.0 * p.d.powi(p.r as i32) / s.n as f64;
                    out.push(at_least(format!("n={}: estimate at least d/n", s.n), m, lower));
                    out.push(BoundCheck::new(format!("n={}: estimate at most 2d^r/n", s.n), m, upper));
                }
            }
        }
        ExperimentKind::TfaBa => match p.model {
            Model::Ba => {
                if let Some(t) = report.trend("max_indegree") {
                    let rho = t.spearman.unwrap_or(0.0);
                    out.push(BoundCheck {
                        name: "max_indegree Spearman rho vs n above 0.8".into(),
                        observed: rho,
                        bound: 0.8,
                        satisfied: rho > 0.8,
                    });
                }
            }
            Model::Er => {
                let means: Vec<f64> = by_n(report, "max_indegree").filter_map(|s| s.mean).collect();
                if let Some(&base) = means.first() {
                    let worst = means.iter().map(|m| (m - base).abs()).fold(0.0, f64::max);
                    out.push(BoundCheck::new("max_indegree mean within 2 of first size".to_string(), worst, 2.0));
                }
            }
        },
        ExperimentKind::PccBa => {
            if let Some(t) = report.trend("palette") {
                out.push(BoundCheck {
                    name: "palette slope t-statistic above 2".into(),
                    observed: t.fit.t,
                    bound: 2.0,
                    satisfied: t.fit.t > 2.0,
                });
            }
        }
        ExperimentKind::TruncatedBa => {
            if let Some(t) = report.trend("palette") {
                out.push(BoundCheck {
                    name: "palette slope |t| below 2".into(),
                    observed: t.fit.t.abs(),
                    bound: 2.0,
                    satisfied: t.fit.t.abs() < 2.0,
                });
            }
        }
        ExperimentKind::FindhBench => {
            let fp: f64 = report.rows.iter().filter(|r| r.statistic == "false_positive").filter_map(|r| r.value).sum();
            out.push(BoundCheck::new("false positives", fp, 0.0));
            let misses: f64 = report.rows.iter().filter(|r| r.statistic == "miss").filter_map(|r| r.value).sum();
            let present: f64 = report.rows.iter().filter(|r| r.statistic == "oracle").filter_map(|r| r.value).sum();
            let rate = if present > 0.0 { misses / present } else { 0.0 };
            out.push(BoundCheck::new("miss rate", rate, 0.05));
        }
        ExperimentKind::SentenceBench => {
            let dis: f64 = report.rows.iter().filter(|r| r.statistic == "disagrees").filter_map(|r| r.value).sum();
            out.push(BoundCheck::new("disagreements with exhaustive check", dis, 0.0));
        }
    }
    out
}

/// Mean of `statistic` per size, in `params.n` order.
pub fn means_by_n(report: &ExperimentReport, statistic: &str) -> BTreeMap<usize, f64> {
    report
        .summary
        .iter()
        .filter(|s| s.statistic == statistic)
        .filter_map(|s| Some((s.n, s.mean?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(kind: ExperimentKind) -> ExperimentSpec {
        let mut spec = ExperimentSpec::preset(kind, Seed::new(42));
        let p = &mut spec.params;
        p.trials = 4;
        p.n = match kind {
            ExperimentKind::TfaBa | ExperimentKind::PccBa | ExperimentKind::TruncatedBa => vec![60, 80, 100],
            ExperimentKind::FindhBench | ExperimentKind::SentenceBench => vec![20],
            _ => vec![200],
        };
        spec
    }

    #[test]
    fn every_kind_runs_and_reproduces() {
        for kind in ExperimentKind::ALL {
            let spec = small(kind);
            let a = run_experiment(&spec).unwrap();
            let b = run_experiment(&spec).unwrap();
            assert_eq!(a, b, "{kind}");
            assert!(a.rows.iter().all(|r| r.error.is_none()), "{kind}: {:?}", a.rows);
            assert!(!a.checks.is_empty());
        }
    }

    #[test]
    fn rows_recompute_from_their_seed() {
        let spec = small(ExperimentKind::Cycles);
        let report = run_experiment(&spec).unwrap();
        for row in &report.rows {
            let g = gen_er(ErParams::new(row.n, spec.params.d).unwrap(), Seed::new(row.graph_seed)).unwrap();
            assert_eq!(row.value, Some(count_cycles(&g, spec.params.k).unwrap() as f64));
            assert_eq!(Seed::new(row.graph_seed), spec.seed.derive(row.stream));
        }
    }

    #[test]
    fn errors_are_recorded_per_row() {
        let mut spec = small(ExperimentKind::TfaBa);
        spec.params.arc_factor = 1;
        let report = run_experiment(&spec).unwrap();
        assert!(report.rows.iter().all(|r| r.value.is_none() && r.error.is_some()));
        assert!(!report.check("failed trials").unwrap().satisfied);
    }

    #[test]
    fn invalid_specs() {
        let mut spec = small(ExperimentKind::Cycles);
        spec.params.trials = 0;
        assert!(run_experiment(&spec).is_err());
        let mut spec = small(ExperimentKind::Cycles);
        spec.params.model = Model::Ba;
        assert!(run_experiment(&spec).is_err());
        let mut spec = small(ExperimentKind::TfaBa);
        spec.params.n.clear();
        assert!(run_experiment(&spec).is_err());
        let mut spec = small(ExperimentKind::PccBa);
        spec.params.d = 2.5;
        assert!(run_experiment(&spec).is_err());
        assert!("nope".parse::<ExperimentKind>().is_err());
        assert_eq!("tfa-ba".parse::<ExperimentKind>().unwrap(), ExperimentKind::TfaBa);
    }

    #[test]
    fn csv_layout() {
        let report = run_experiment(&small(ExperimentKind::Nhood)).unwrap();
        let csv = report.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("kind,n,trial,stream,graph_seed,statistic,value,error"));
        assert!(lines.next().unwrap().starts_with("nhood,200,0,0,"));
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn json_roundtrip() {
        let report = run_experiment(&small(ExperimentKind::Surplus)).unwrap();
        let back: ExperimentReport = serde_json::from_str(&report.to_json().unwrap()).unwrap();
        assert_eq!(back.spec, report.spec);
        assert_eq!(back.rows, report.rows);
    }
}

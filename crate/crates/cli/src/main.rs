//! `sparse-local`: command-line front end.
//!
//! Exit status is 0 on success, 1 when the computation reports an error
//! and 2 for malformed command lines. `SPARSE_LOCAL_THREADS` caps the
//! worker pool.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sparse_local::expansion::{compute_p_centered, tfa_run, AugmentOptions, PccOptions, DEFAULT_SUBSET_CAP};
use sparse_local::experiment::{run_experiment, ExperimentKind, ExperimentSpec, Model};
use sparse_local::iso::{find_subgraph, BallCap, Pattern, TrialConfig};
use sparse_local::local::{count_cycles, count_dense_subgraphs, max_ball_size, surplus_profile};
use sparse_local::scatter::{check_sentence, exact_scattered, SentenceSpec};
use sparse_local::{Graph, Seed};

#[derive(Parser)]
#[command(name = "sparse-local", version, about = "Local-structure algorithms for sparse random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Er,
    Ba,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Er => Model::Er,
            ModelArg::Ba => Model::Ba,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random graph and write it as an edge list (or JSON).
    Gen {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// `json` writes the JSON record instead of the edge list.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print size, ball surplus, ball size and optional cycle / dense counts.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Also count `k`-cycles, and dense `k`-sets when `--m` is given.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Density used for the reference bounds; defaults to the average
        /// degree.
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run transitive fraternal augmentations and write the step trace.
    Augment {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        /// Arc cap as a multiple of the edge count.
        #[arg(long)]
        arc_factor: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Compute a p-centered coloring.
    Pcc {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 10)]
        max_steps: usize,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        subset_cap: usize,
        #[arg(long)]
        arc_factor: Option<usize>,
        /// Write the coloring as a JSON array.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for a subgraph isomorphic to a pattern.
    FindSubgraph {
        #[command(flatten)]
        input: Input,
        /// Pattern graph (edge list or JSON); must be connected.
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        /// Colorings per ball instead of the count implied by epsilon.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fall back to exhaustive search when a ball exceeds this many
        /// vertices.
        #[arg(long)]
        ball_cap: Option<usize>,
    },
    /// Decide whether a vertex set contains an r-scattered subset of size s.
    Scattered {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        /// Comma-separated vertex ids; every vertex when absent.
        #[arg(long, value_delimiter = ',')]
        red: Option<Vec<usize>>,
    },
    /// Evaluate a basic local sentence given as JSON.
    CheckSentence {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        sentence: PathBuf,
    },
    /// Run an experiment pipeline and write CSV and JSON reports.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct Input {
    /// Graph file: edge list, or JSON when the name ends in `.json`.
    #[arg(long = "in")]
    path: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    kind: String,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// One or more comma-separated sizes.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    arc_factor: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output stem: writes `<out>.csv` and `<out>.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write only this format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn load_graph(path: &Path) -> Result<Graph> {
    let g = if path.extension().is_some_and(|e| e == "json") {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Graph::from_json(&text)?
    } else {
        Graph::load(path)?
    };
    Ok(g)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            model,
            n,
            d,
            seed,
            out,
            format,
        } => {
            let g = Model::from(model).generate(n, d, Seed::new(seed))?;
            let text = match format {
                Some(Format::Json) => g.to_json()? + "\n",
                _ => g.to_edgelist_string(),
            };
            emit(out.as_deref(), &text)
        }
        Command::Analyze {
            input,
            r,
            k,
            m,
            d,
            format,
        } => {
            let g = load_graph(&input.path)?;
            let d = d.unwrap_or(if g.n() == 0 { 0.0 } else { 2.0 * g.m() as f64 / g.n() as f64 });
            let profile = surplus_profile(&g, r);
            let balls = max_ball_size(&g, r, d);
            let mut v = json!({
                "n": g.n(),
                "m": g.m(),
                "r": r,
                "d": d,
                "max_ball_surplus": profile.max_surplus,
                "max_ball_size": balls.max,
                "ball_size_bound": balls.bound,
            });
            if let Some(k) = k {
                v["k"] = json!(k);
                v["cycles"] = json!(count_cycles(&g, k)?);
                if let Some(m) = m {
                    let dense = count_dense_subgraphs(&g, k, m, d)?;
                    v["m_surplus"] = json!(m);
                    v["dense_count"] = json!(dense.count);
                    v["dense_bound"] = json!(dense.bound);
                }
            }
            let text = if format == Some(Format::Json) {
                serde_json::to_string_pretty(&v)? + "\n"
            } else {
                let mut s = String::new();
                for (key, val) in v.as_object().expect("object literal") {
                    writeln!(s, "{key}={val}")?;
                }
                s
            };
            emit(None, &text)
        }
        Command::Augment {
            input,
            steps,
            arc_factor,
            out,
            format,
        } => {
            let g = load_graph(&input.path)?;
            let opts = AugmentOptions {
                arc_cap: arc_factor.map(|f| f.saturating_mul(g.m())),
            };
            let (_, trace) = tfa_run(&g, steps, opts)?;
            let text = if format == Some(Format::Json) {
                serde_json::to_string_pretty(&trace)? + "\n"
            } else {
                trace.to_csv()
            };
            emit(out.as_deref(), &text)
        }
        Command::Pcc {
            input,
            p,
            max_steps,
            subset_cap,
            arc_factor,
            out,
        } => {
            let g = load_graph(&input.path)?;
            let opts = PccOptions {
                subset_cap,
                augment: AugmentOptions {
                    arc_cap: arc_factor.map(|f| f.saturating_mul(g.m())),
                },
            };
            let res = compute_p_centered(&g, p, max_steps, opts)?;
            println!("palette_size={}", res.coloring.palette_size());
            println!("steps_used={}", res.steps_used);
            if let Some(path) = out {
                emit(Some(&path), &(serde_json::to_string(&res.coloring)? + "\n"))?;
            }
            Ok(())
        }
        Command::FindSubgraph {
            input,
            pattern,
            epsilon,
            trials,
            seed,
            ball_cap,
        } => {
            let g = load_graph(&input.path)?;
            let h = Pattern::new(load_graph(&pattern)?).context("pattern must be connected and nonempty")?;
            let cfg = TrialConfig {
                epsilon,
                trials,
                ball_cap: ball_cap.map_or(BallCap::Unbounded, BallCap::Fixed),
                ..TrialConfig::default()
            };
            match find_subgraph(&g, &h, &cfg, Seed::new(seed))? {
                Some(e) => println!("{}", json!({"found": true, "embedding": e.to_json_map()})),
                None => println!("{}", json!({"found": false})),
            }
            Ok(())
        }
        Command::Scattered { input, r, s, red } => {
            let g = load_graph(&input.path)?;
            let red = red.unwrap_or_else(|| (0..g.n()).collect());
            let res = exact_scattered(&g, &red, r, s)?;
            println!("{}", serde_json::to_string(&res)?);
            Ok(())
        }
        Command::CheckSentence { input, sentence } => {
            let g = load_graph(&input.path)?;
            let sent = SentenceSpec::load(&sentence)?;
            let res = check_sentence(&g, &sent)?;
            println!(
                "{}",
                json!({"holds": res.holds, "witnesses": res.witnesses, "red_count": res.red_count})
            );
            Ok(())
        }
        Command::Experiment(args) => experiment(args),
    }
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let kind: ExperimentKind = a.kind.parse()?;
    let mut spec = ExperimentSpec::preset(kind, Seed::new(a.seed));
    let p = &mut spec.params;
    if let Some(v) = a.model {
        p.model = v.into();
    }
    if let Some(v) = a.n {
        p.n = v;
    }
    macro_rules! set {
        ($($field:ident),*) => {$(if let Some(v) = a.$field { p.$field = v; })*};
    }
    set!(d, trials, r, k, m, p, q, s, steps, max_steps, epsilon, arc_factor);

    let report = run_experiment(&spec)?;
    for s in &report.summary {
        let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6}"));
        let reference = s.reference.map(|r| format!(" reference={r:.6}")).unwrap_or_default();
        println!(
            "n={} {} mean={} se={} count={} errors={}{reference}",
            s.n,
            s.statistic,
            fmt(s.mean),
            fmt(s.std_err),
            s.count,
            s.errors
        );
    }
    for t in &report.trends {
        let rho = t.spearman.map_or("-".to_string(), |r| format!("{r:.4}"));
        println!("trend {} spearman={rho} slope={:.6e} t={:.3}", t.statistic, t.fit.slope, t.fit.t);
    }
    for c in &report.checks {
        let tag = if c.satisfied { "PASS" } else { "FAIL" };
        println!("{tag} {} (observed {:.6}, bound {:.6})", c.name, c.observed, c.bound);
    }
    if let Some(stem) = a.out {
        match a.format {
            Some(Format::Csv) => std::fs::write(stem.with_extension("csv"), report.to_csv()?)?,
            Some(Format::Json) => std::fs::write(stem.with_extension("json"), report.to_json()? + "\n")?,
            None => report.write(&stem)?,
        }
    }
    Ok(())
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("SPARSE_LOCAL_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("SPARSE_LOCAL_THREADS={v:?} is not a thread count"))?;
        if n == 0 {
            bail!("SPARSE_LOCAL_THREADS must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors and prints the synopsis
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

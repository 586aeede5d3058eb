use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use bidim::geometry::{build_arrangement, collinear_triples, fatness, xi, Arrangement, SimplePolygon};
use bidim::graph::Multigraph;
use bidim::gridminor::{bg_exact_small, bg_lower};
use bidim::harness::{self, experiment_ratio, verify, write_csv, ExperimentConfig, Family, Instance};
use bidim::intersect::{
    check_bundle, contact_points, intersection_graph, model_fat_convex, model_rho_convex, planarize, RhoOptions,
};
use bidim::minor::{validate_c_contraction, validate_distance_minor, validate_minor_model, MinorModel};
use bidim::solver::winwin_vc;
use bidim::treewidth::{treewidth_exact, treewidth_lower, treewidth_upper};
use bidim::{Error, Limits};

#[derive(Parser)]
#[command(
    name = "bidim",
    version,
    about = "Intersection graphs, minor certificates and grid-minor experiments"
)]
struct Cli {
    /// Default seed for generators and randomized searches.
    #[arg(long, global = true, env = harness::SEED_ENV, default_value_t = 0)]
    seed: u64,
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instances of a family.
    Gen(GenArgs),
    /// Geometry checks on an arrangement or a body collection.
    Geom {
        #[command(subcommand)]
        op: GeomOp,
    },
    /// Intersection graph of an arrangement.
    Build {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Planarize an arrangement and check the resulting bundle.
    Planarize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Model bodies by polysegments.
    Model(ModelArgs),
    /// Treewidth of a graph.
    Tw(TwArgs),
    /// Largest grid minor of a graph.
    Bg(BgArgs),
    /// Run a lemma suite (1, 3, 4, 5, 6, 7) or validate a model file.
    Verify(VerifyArgs),
    /// Solve a problem on an intersection graph.
    Solve {
        #[command(subcommand)]
        problem: SolveProblem,
    },
    /// Run an experiment.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
}

#[derive(Args, Clone)]
struct FamilyArgs {
    #[arg(long, default_value = "segments")]
    family: Family,
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Largest crossing parameter for arrangement families.
    #[arg(long)]
    xi: Option<usize>,
    #[arg(long, default_value_t = 2)]
    rho: usize,
    #[arg(long, default_value_t = 1.5)]
    alpha: f64,
    #[arg(long, default_value_t = 4)]
    h: usize,
    /// Grid side for the triangulated-grid family.
    #[arg(long, default_value_t = 3)]
    k: usize,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Directory for `instance-<i>.json`; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GeomOp {
    /// Check general position and arrangement validity.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Crossing parameter of an arrangement.
    Xi {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Fatness of a body collection.
    Fatness {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Model rho-convex bodies with this rho.
    #[arg(long, conflicts_with = "fat")]
    rho_convex: Option<usize>,
    /// Model fat convex bodies.
    #[arg(long, requires = "h")]
    fat: bool,
    /// Vertices of the forbidden subgraph for --fat.
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TwArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, group = "mode")]
    exact: bool,
    #[arg(long, group = "mode")]
    upper: bool,
    #[arg(long, group = "mode")]
    lower: bool,
    #[arg(long, default_value_t = bidim::config::DEFAULT_TW_EXACT_CAP)]
    cap: usize,
    /// Write the decomposition here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BgArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, group = "mode")]
    exact: bool,
    #[arg(long, group = "mode")]
    lower: bool,
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    #[arg(long, default_value_t = bidim::config::DEFAULT_BG_EXACT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Lemma number, or a model JSON file.
    target: String,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// For model files: also check the distance conditions.
    #[arg(long)]
    distance: bool,
    /// For model files: check a c-contraction with this c.
    #[arg(long)]
    c: Option<usize>,
}

#[derive(Subcommand)]
enum SolveProblem {
    /// Vertex cover of size at most k.
    Vc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        xi: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExperimentKind {
    /// Treewidth against grid minors, one CSV row per instance.
    Ratio {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Write CSV rows (to --out, or standard output).
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command: pass or a found violation.
enum Outcome {
    Pass,
    Violation,
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)?;
    if path == Path::new("-") {
        println!("{text}");
    } else {
        fs::write(path, text + "\n")?;
    }
    Ok(())
}

fn load_arrangement(v: Value) -> Result<Arrangement, Error> {
    match v.get("arrangement") {
        Some(inner) => Ok(serde_json::from_value(inner.clone())?),
        None => Ok(serde_json::from_value(v)?),
    }
}

fn load_bodies(v: Value) -> Result<Vec<SimplePolygon>, Error> {
    match v.get("bodies") {
        Some(inner) => Ok(serde_json::from_value(inner.clone())?),
        None => Ok(serde_json::from_value(v)?),
    }
}

fn load_graph(v: Value) -> Result<Multigraph, Error> {
    match v.get("gb") {
        Some(inner) => Ok(serde_json::from_value(inner.clone())?),
        None => Ok(serde_json::from_value(v)?),
    }
}

fn config(seed: u64, f: &FamilyArgs, trials: usize) -> ExperimentConfig {
    ExperimentConfig {
        seed,
        family: f.family,
        n: f.n,
        xi: f.xi,
        rho: f.rho,
        alpha: f.alpha,
        h: f.h,
        k: f.k,
        trials,
        limits: Limits::default(),
        out: None,
    }
}

/// Prints `value` as JSON, or `text` otherwise.
fn show<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<(), Error> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        println!("{}", text());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let json = cli.json;
    match cli.command {
        Command::Gen(args) => {
            let cfg = config(cli.seed, &args.family, args.count);
            let instances = (0..args.count)
                .map(|i| harness::gen(&cfg, i))
                .collect::<Result<Vec<Instance>, _>>()?;
            match args.out {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    for (i, inst) in instances.iter().enumerate() {
                        write_json(&dir.join(format!("instance-{i}.json")), inst)?;
                    }
                }
                None if instances.len() == 1 => write_json(Path::new("-"), &instances[0])?,
                None => write_json(Path::new("-"), &instances)?,
            }
            Ok(Outcome::Pass)
        }
        Command::Geom { op } => match op {
            GeomOp::Validate { input } => {
                let v = read_json(&input)?;
                let arr = load_arrangement(v)?;
                let corners: Vec<_> = arr
                    .polysegments()
                    .iter()
                    .flat_map(|p| p.points().iter().cloned())
                    .collect();
                let triples = collinear_triples(&corners);
                let rebuilt = build_arrangement(arr.polysegments().to_vec());
                let report = serde_json::json!({
                    "polysegments": arr.len(),
                    "crossings": arr.crossings().len(),
                    "collinear_corner_triples": triples.len(),
                    "arrangement_valid": rebuilt.is_ok(),
                });
                show(json, &report, || {
                    format!(
                        "{} polysegments, {} crossings, {} collinear corner triples",
                        arr.len(),
                        arr.crossings().len(),
                        triples.len()
                    )
                })?;
                Ok(if triples.is_empty() && rebuilt.is_ok() {
                    Outcome::Pass
                } else {
                    Outcome::Violation
                })
            }
            GeomOp::Xi { input } => {
                let arr = load_arrangement(read_json(&input)?)?;
                let value = xi(&arr);
                show(
                    json,
                    &serde_json::json!({ "xi": value, "crossing_counts": arr.crossing_counts() }),
                    || format!("xi = {value}"),
                )?;
                Ok(Outcome::Pass)
            }
            GeomOp::Fatness { input } => {
                let bodies = load_bodies(read_json(&input)?)?;
                let report = fatness(&bodies)?;
                show(json, &report, || {
                    format!(
                        "R = {:.9}, r = {:.9}, alpha = {:.9}",
                        report.big_r, report.r, report.alpha
                    )
                })?;
                Ok(Outcome::Pass)
            }
        },
        Command::Build { from, out } => {
            let arr = load_arrangement(read_json(&from)?)?;
            let g = intersection_graph(&arr);
            match out {
                Some(path) => write_json(&path, &g)?,
                None => write_json(Path::new("-"), &g)?,
            }
            Ok(Outcome::Pass)
        }
        Command::Planarize { input, out } => {
            let arr = load_arrangement(read_json(&input)?)?;
            let bundle = planarize(&arr)?;
            let check = check_bundle(&bundle, &arr)?;
            if let Some(path) = out {
                write_json(&path, &bundle)?;
            }
            show(json, &check, || format!("{check:?}"))?;
            Ok(if check.passed() {
                Outcome::Pass
            } else {
                Outcome::Violation
            })
        }
        Command::Model(args) => {
            let bodies = load_bodies(read_json(&args.input)?)?;
            let contacts = contact_points(&bodies, cli.seed)?;
            let (arrangement, report, ok) = if let Some(rho) = args.rho_convex {
                let m = model_rho_convex(&bodies, &contacts, RhoOptions::new(rho))?;
                let report = serde_json::json!({
                    "rho": m.rho, "delta": m.delta, "lengths": m.lengths, "length_bound": m.length_bound,
                    "xi": m.xi(), "crossing_bound": m.crossing_bound,
                    "within_length_bound": m.within_length_bound(),
                    "within_crossing_bound": m.within_crossing_bound(),
                });
                let ok = m.within_crossing_bound();
                (m.arrangement, report, ok)
            } else if args.fat {
                let h = args.h.ok_or_else(|| Error::Invalid("--fat needs --h".into()))?;
                let m = model_fat_convex(&bodies, &contacts, h)?;
                let report = serde_json::json!({
                    "alpha": m.alpha, "delta": m.delta, "h": m.h,
                    "degree_bound": m.degree_bound, "degree_check": m.degree_check,
                    "xi": xi(&m.arrangement),
                });
                let ok = m.degree_check;
                (m.arrangement, report, ok)
            } else {
                return Err(Error::Invalid("choose --rho-convex R or --fat --h H".into()));
            };
            let same = intersection_graph(&arrangement) == bidim::intersect::body_intersection_graph(&bodies);
            if let Some(path) = args.out {
                write_json(&path, &arrangement)?;
            }
            let mut report = report;
            report["touch_equivalent"] = Value::Bool(same);
            show(json, &report, || report.to_string())?;
            Ok(if ok && same { Outcome::Pass } else { Outcome::Violation })
        }
        Command::Tw(args) => {
            let g = load_graph(read_json(&args.input)?)?;
            let (value, decomposition) = if args.lower {
                (treewidth_lower(&g), None)
            } else if args.upper {
                let (w, d) = treewidth_upper(&g);
                (w, Some(d))
            } else {
                let (w, d) = treewidth_exact(&g, args.cap)?;
                (w, Some(d))
            };
            if let (Some(path), Some(d)) = (args.out, &decomposition) {
                write_json(&path, d)?;
            }
            let kind = if args.lower {
                "lower"
            } else if args.upper {
                "upper"
            } else {
                "exact"
            };
            show(json, &serde_json::json!({ "treewidth": value, "kind": kind }), || {
                format!("tw {kind} = {value}")
            })?;
            Ok(Outcome::Pass)
        }
        Command::Bg(args) => {
            let g = load_graph(read_json(&args.input)?)?;
            let (value, kind, model) = if args.lower {
                let found = bg_lower(&g, args.kmax, &Limits::default(), cli.seed)?;
                (found.k, "lower", found.model)
            } else {
                (bg_exact_small(&g, args.cap)?, "exact", None)
            };
            let report = serde_json::json!({ "bg": value, "kind": kind, "model": model });
            show(json, &report, || format!("bg {kind} = {value}"))?;
            Ok(Outcome::Pass)
        }
        Command::Verify(args) => {
            if let Ok(lemma) = args.target.parse::<u8>() {
                let cfg = ExperimentConfig {
                    seed: cli.seed,
                    trials: args.trials,
                    ..ExperimentConfig::default()
                };
                let report = verify(lemma, &cfg)?;
                show(json, &report, || {
                    let mut s = format!(
                        "lemma {}: {} ({} cases, {} violations)",
                        report.lemma,
                        if report.passed() { "pass" } else { "FAIL" },
                        report.cases,
                        report.violations
                    );
                    for line in report.notes.iter().chain(&report.failures) {
                        s.push_str("\n  ");
                        s.push_str(line);
                    }
                    s
                })?;
                return Ok(if report.passed() {
                    Outcome::Pass
                } else {
                    Outcome::Violation
                });
            }
            let mut value = read_json(Path::new(&args.target))?;
            // Reports from `bg --lower` carry the model under "model".
            if value.get("source").is_none() {
                if let Some(inner) = value.get_mut("model") {
                    value = inner.take();
                }
            }
            let model: MinorModel = serde_json::from_value(value)?;
            let result = match (args.c, args.distance) {
                (Some(c), _) => validate_c_contraction(&model, c),
                (None, true) => validate_distance_minor(&model)?,
                (None, false) => validate_minor_model(&model),
            };
            let report = serde_json::json!({ "valid": result.is_ok(), "violation": result.as_ref().err().map(|v| v.to_string()) });
            show(json, &report, || match &result {
                Ok(()) => "valid".to_string(),
                Err(v) => format!("invalid: {v}"),
            })?;
            Ok(if result.is_ok() {
                Outcome::Pass
            } else {
                Outcome::Violation
            })
        }
        Command::Solve {
            problem: SolveProblem::Vc { k, xi, input, report },
        } => {
            let gb = load_graph(read_json(&input)?)?;
            let outcome = winwin_vc(&gb, xi, k, &Limits::default())?;
            if let Some(path) = report {
                write_json(&path, &outcome)?;
            }
            show(json, &outcome, || {
                format!(
                    "{} via {} (r_min {}, t_threshold {}, tw in [{}, {}])",
                    if outcome.is_yes() { "YES" } else { "NO" },
                    outcome.route.as_str(),
                    outcome.r_min,
                    outcome.t_threshold,
                    outcome.tw_lower,
                    outcome.tw_upper
                )
            })?;
            Ok(Outcome::Pass)
        }
        Command::Experiment {
            kind:
                ExperimentKind::Ratio {
                    family,
                    trials,
                    csv,
                    out,
                },
        } => {
            let cfg = config(cli.seed, &family, trials);
            let rows = experiment_ratio(&cfg)?;
            let summary = rows.last().expect("summary row");
            let failed = rows
                .iter()
                .any(|r| r.chain_pass == Some(false) || r.planarization_ok == Some(false));
            if csv || out.is_some() {
                match &out {
                    Some(path) => write_csv(&rows, fs::File::create(path)?)?,
                    None => write_csv(&rows, io::stdout().lock())?,
                }
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else if !csv || out.is_some() {
                let errors = rows.iter().filter(|r| r.error.is_some()).count();
                println!(
                    "{} instances, {} errors, max certified ratio {:?}, chain pass rate {:?}",
                    rows.len() - 1,
                    errors,
                    summary.ratio,
                    summary.pass_rate
                );
            }
            io::stdout().flush()?;
            Ok(if failed { Outcome::Violation } else { Outcome::Pass })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use patchwork::interface::{
    analyze_document, build_document, example, examples, invariants, regularity_document, reproducer_id, to_json, validate_document,
    ApiError, PatchworkDocument, RegularityOp,
};
use patchwork::regularity::convex_triangulation;
use patchwork::search::{run, Filters, Mode, Objective, SearchResult, SearchTask, DEFAULT_BUDGET, DEFAULT_CAP_LOG2};

mod serve;

#[derive(Parser)]
#[command(name = "patchwork", version, about = "Combinatorial patchworking of real algebraic curves and surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the cells of a document subdivide its polytope.
    Validate { document: PathBuf },
    /// Convexity of a subdivision: certificate check, star-move convexification, or maximal convex refinement.
    Regularity {
        #[arg(value_enum)]
        op: RegOp,
        document: PathBuf,
    },
    /// Build the hypersurface; optionally write an SVG chart (curves) or an OBJ mesh with sidecar (surfaces).
    Build {
        document: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Topology and restriction reports.
    Analyze {
        document: PathBuf,
        /// Print the restriction table instead of JSON.
        #[arg(long)]
        check: bool,
    },
    /// Invariants of a nonsingular complex hypersurface of degree d in CP^n.
    Invariants {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Search sign distributions on a fixed triangulation.
    Search {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, required_unless_present = "triangulation")]
        degree: Option<i64>,
        /// Use the triangulation of this document instead of the convex one.
        #[arg(long)]
        triangulation: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SearchMode::Hillclimb)]
        mode: SearchMode,
        #[arg(long, env = "PATCHWORK_SEED", default_value_t = 42)]
        seed: u64,
        /// Evaluations for hill climbing; accepts forms like 1e6.
        #[arg(long, value_parser = parse_count, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_parser = parse_count, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value = "max-components")]
        objective: Objective,
        /// Exhaustive mode refuses more than 2^cap sign vectors.
        #[arg(long, env = "PATCHWORK_CAP", default_value_t = DEFAULT_CAP_LOG2)]
        cap: u32,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = 5)]
        keep: usize,
        /// Keep only instances with at least this many components.
        #[arg(long)]
        min_components: Option<usize>,
        /// Keep only M-curves and M-surfaces.
        #[arg(long)]
        maximal_only: bool,
        /// Directory for the best instances and an index.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the packaged documents, or print one.
    Examples { id: Option<String> },
    /// Serve the JSON API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RegOp {
    Check,
    Convexify,
    Refine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Exhaustive,
    Random,
    Hillclimb,
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
        _ => Err(format!("{s} is not a nonnegative integer")),
    }
}

fn read_document(path: &Path) -> Result<PatchworkDocument, ApiError> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| ApiError::bad_request("io", format!("{}: {e}", path.display()), None))?;
    PatchworkDocument::parse(&text)
}

fn write(path: &Path, text: &str) -> Result<(), ApiError> {
    std::fs::write(path, text).map_err(|e| ApiError::bad_request("io", format!("{}: {e}", path.display()), None))
}

/// Outcome of a command: text for stdout and whether an anomaly was found.
struct Outcome {
    stdout: String,
    anomaly: bool,
    invalid: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, anomaly: false, invalid: false }
    }
}

fn restriction_table(a: &patchwork::interface::Analysis) -> String {
    let t = &a.topology;
    let mut s = format!("degree {} in RP^{}: {} components, b_total {}, a {}\n", t.degree, t.dim, t.component_count(), t.b_total, t.a_defect);
    for e in &a.restrictions.entries {
        let status = match e.status {
            patchwork::restrictions::Status::Pass => "pass",
            patchwork::restrictions::Status::Fail => "FAIL",
            patchwork::restrictions::Status::NotApplicable => "n/a",
        };
        let slack = e.slack.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        s.push_str(&format!("{:<28} {:<5} {:>6}  {}\n", e.name, status, slack, e.detail));
    }
    for msg in &t.anomalies {
        s.push_str(&format!("anomaly: {msg}\n"));
    }
    s
}

fn search_summary(r: &SearchResult) -> serde_json::Value {
    let best: Vec<_> = r
        .best
        .iter()
        .map(|b| {
            serde_json::json!({
                "index": b.index,
                "score": b.score,
                "components": b.report.component_count(),
                "pMinusN": b.report.p_minus_n(),
                "aDefect": b.report.a_defect,
            })
        })
        .collect();
    serde_json::json!({
        "mode": r.mode,
        "objective": r.objective,
        "vertices": r.vertices,
        "stats": r.stats,
        "best": best,
        "anomalies": r.anomalies,
    })
}

fn execute(command: Command) -> Result<Outcome, ApiError> {
    match command {
        Command::Validate { document } => {
            let report = validate_document(&read_document(&document)?)?;
            Ok(Outcome { invalid: !report.is_valid(), ..Outcome::ok(to_json(&report)) })
        }
        Command::Regularity { op, document } => {
            let op = match op {
                RegOp::Check => RegularityOp::Check,
                RegOp::Convexify => RegularityOp::Convexify,
                RegOp::Refine => RegularityOp::Refine,
            };
            Ok(Outcome::ok(to_json(&regularity_document(&read_document(&document)?, op)?)))
        }
        Command::Build { document, svg, obj } => {
            let out = build_document(&read_document(&document)?)?;
            if let Some(path) = svg {
                let text = out.svg.as_deref().ok_or_else(|| ApiError::bad_request("no_svg", "SVG charts are drawn for curves only", None))?;
                write(&path, text)?;
            }
            if let Some(path) = obj {
                let text = out.obj.as_deref().ok_or_else(|| ApiError::bad_request("no_obj", "OBJ meshes are written for surfaces only", None))?;
                write(&path, text)?;
                write(&path.with_extension("json"), &to_json(&out.sidecar))?;
            }
            Ok(Outcome::ok(to_json(&out)))
        }
        Command::Analyze { document, check } => {
            let doc = read_document(&document)?;
            let a = analyze_document(&doc)?;
            let anomaly = a.is_anomalous();
            if anomaly {
                eprintln!("anomaly in document {}: {}", reproducer_id(&doc), a.anomaly_summary());
            }
            let stdout = if check { restriction_table(&a) } else { to_json(&a) };
            Ok(Outcome { anomaly, ..Outcome::ok(stdout) })
        }
        Command::Invariants { n, d } => Ok(Outcome::ok(to_json(&*invariants(n, d)?))),
        Command::Search { dim, degree, triangulation, mode, seed, budget, samples, objective, cap, workers, keep, min_components, maximal_only, out } => {
            let t = match triangulation {
                Some(path) => read_document(&path)?.triangulation()?,
                None => convex_triangulation(dim as i64, degree.expect("clap requires a degree"))?,
            };
            let mode = match mode {
                SearchMode::Exhaustive => Mode::Exhaustive,
                SearchMode::Random => Mode::Random { seed, samples },
                SearchMode::Hillclimb => Mode::HillClimb { seed, budget },
            };
            let filters = Filters { min_components, maximal_only };
            let task = SearchTask { keep, cap_log2: cap, workers, filters, ..SearchTask::new(t.clone(), mode, objective) };
            let result = run(&task)?;
            if let Some(dir) = out {
                write_results(&dir, &t, &result)?;
            }
            Ok(Outcome { anomaly: !result.anomalies.is_empty(), ..Outcome::ok(to_json(&search_summary(&result))) })
        }
        Command::Examples { id } => match id {
            None => Ok(Outcome::ok(to_json(&examples()))),
            Some(id) => example(&id)
                .map(|d| Outcome::ok(d.to_json()))
                .ok_or_else(|| ApiError::bad_request("not_found", format!("no example {id:?}"), None)),
        },
        Command::Serve { port, host } => {
            serve::serve(&host, port).map_err(|e| ApiError::bad_request("io", e.to_string(), None))?;
            Ok(Outcome::ok(String::new()))
        }
    }
}

fn write_results(dir: &Path, t: &patchwork::lattice::Triangulation, r: &SearchResult) -> Result<(), ApiError> {
    std::fs::create_dir_all(dir).map_err(|e| ApiError::bad_request("io", format!("{}: {e}", dir.display()), None))?;
    let mut files = Vec::new();
    for (rank, b) in r.best.iter().enumerate() {
        let name = format!("best-{rank:02}.json");
        let doc = PatchworkDocument::from_parts(t, b.signs.clone())
            .with_metadata("score", b.score)
            .with_metadata("index", b.index)
            .with_metadata("components", b.report.component_count());
        write(&dir.join(&name), &doc.to_json())?;
        files.push(name);
    }
    for (k, a) in r.anomalies.iter().enumerate() {
        let name = format!("reproducer-{k:02}.json");
        let doc = PatchworkDocument::from_parts(t, a.signs.clone()).with_metadata("messages", a.messages.clone());
        write(&dir.join(&name), &doc.to_json())?;
        files.push(name);
    }
    let mut index = search_summary(r);
    index["files"] = serde_json::json!(files);
    write(&dir.join("index.json"), &to_json(&index))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.anomaly {
                ExitCode::from(2)
            } else if out.invalid {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprint!("{}", to_json(&e));
            ExitCode::from(if e.is_anomaly() { 2 } else { 1 })
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ncclab_core::catalog::{build_all, parse_catalog, shipped_entries, CatalogEntry};
use ncclab_core::isomorph::find_isomorphism;
use ncclab_core::sweep::{search, verify_built, SWEEP_ORDERS};
use ncclab_core::{kset, ConstructionExpr, DecompositionReport, Error, Group, KSet, DEFAULT_CAP};

const EXIT_VERIFY: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "ncclab", version, about = "Normal subgroups as unions of conjugacy classes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: available parallelism). 1 gives a serial run.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest group order any construction may reach.
    #[arg(long, global = true, env = "NCCLAB_CAP")]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List every proper normal subgroup with its class count, then K.
    Ncc { expr: String },
    /// Print K, the set of class counts of proper normal subgroups.
    Kset { expr: String },
    /// Report catalog groups whose K equals the given set.
    Search {
        /// Catalog file (default: the built-in catalog).
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Comma-separated orders to sweep (default: every order in the catalog).
        #[arg(long, value_delimiter = ',')]
        orders: Vec<usize>,
        /// Target K-set as a comma-separated list.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        x: Vec<usize>,
        /// Skip perfect groups.
        #[arg(long)]
        nonperfect_only: bool,
    },
    /// Run the full catalog check and {1,2,3} classification sweep.
    Verify {
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Sweep for this K-set instead; the classification check is skipped.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        x: Vec<usize>,
    },
    /// Decide whether two constructions give isomorphic groups.
    Iso { expr1: String, expr2: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: if e.is_resource_limit() { EXIT_CAP } else { EXIT_INPUT },
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let workers = match cli.workers {
        Some(0) => return Err(Failure::input("--workers must be at least 1")),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let cap = match cli.cap {
        Some(0) => return Err(Failure::input("cap must be at least 1")),
        Some(c) => c,
        None => DEFAULT_CAP,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::input(e.to_string()))?;
    let format = cli.format;
    pool.install(|| match cli.command {
        Command::Ncc { expr } => cmd_ncc(&expr, cap, format),
        Command::Kset { expr } => cmd_kset(&expr, cap, format),
        Command::Search {
            catalog,
            orders,
            x,
            nonperfect_only,
        } => cmd_search(catalog, &orders, &x, nonperfect_only, cap, format),
        Command::Verify { catalog, x } => cmd_verify(catalog, &x, cap, format),
        Command::Iso { expr1, expr2 } => cmd_iso(&expr1, &expr2, cap, format),
    })
}

fn build_expr(text: &str, cap: usize) -> Result<Group, Failure> {
    let expr: ConstructionExpr = text.parse().map_err(|e: Error| Failure {
        code: EXIT_INPUT,
        message: format!("{text:?}: {e}"),
    })?;
    Ok(expr.build(cap)?)
}

fn parse_x(values: &[usize]) -> Result<KSet, Failure> {
    if values.contains(&0) {
        return Err(Failure::input("--x values must be positive"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != values.len() {
        return Err(Failure::input("--x values must be distinct"));
    }
    Ok(KSet::new(sorted)?)
}

fn load_catalog(path: Option<PathBuf>) -> Result<Vec<CatalogEntry>, Failure> {
    let Some(path) = path else {
        return Ok(shipped_entries());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_catalog(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn cmd_ncc(expr: &str, cap: usize, format: Format) -> Result<u8, Failure> {
    let report = DecompositionReport::new(&build_expr(expr, cap)?);
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json_lines()),
    }
    Ok(0)
}

fn cmd_kset(expr: &str, cap: usize, format: Format) -> Result<u8, Failure> {
    let k = kset(&build_expr(expr, cap)?);
    match format {
        Format::Text => println!("K = {k}"),
        Format::Json => println!("{}", json!({ "kset": k })),
    }
    Ok(0)
}

fn cmd_search(
    catalog: Option<PathBuf>,
    orders: &[usize],
    x: &[usize],
    nonperfect_only: bool,
    cap: usize,
    format: Format,
) -> Result<u8, Failure> {
    if orders.contains(&0) {
        return Err(Failure::input("--orders values must be positive"));
    }
    let x = parse_x(x)?;
    let entries = load_catalog(catalog)?;
    let built = build_all(&entries, cap);
    for b in &built {
        if let Err(e) = &b.group {
            let mut f = Failure::from(e.clone());
            f.message = format!("{}: {}", b.entry.label, f.message);
            return Err(f);
        }
    }
    for hit in search(&built, orders, &x, nonperfect_only) {
        match format {
            Format::Text => {
                let gap = hit
                    .gap_id
                    .map(|(n, i)| format!(" gap=({n},{i})"))
                    .unwrap_or_default();
                println!("{} order={} K={}{gap}", hit.label, hit.order, hit.kset);
            }
            Format::Json => println!("{}", serde_json::to_string(&hit).expect("serializable")),
        }
    }
    Ok(0)
}

fn cmd_verify(catalog: Option<PathBuf>, x: &[usize], cap: usize, format: Format) -> Result<u8, Failure> {
    let x = parse_x(x)?;
    let entries = load_catalog(catalog)?;
    let built = build_all(&entries, cap);
    let report = verify_built(&built, &x, cap);
    let failed = report.failures().count();
    match format {
        Format::Text => {
            for c in &report.checks {
                println!("{c}");
            }
            if failed == 0 {
                println!("verify: {} checks passed over orders {SWEEP_ORDERS:?}", report.checks.len());
            } else {
                println!("FAIL verify: {failed} of {} checks failed", report.checks.len());
            }
        }
        Format::Json => {
            for c in &report.checks {
                let mut v = serde_json::to_value(c).expect("serializable");
                v["kind"] = json!("check");
                println!("{v}");
            }
            for h in &report.hits {
                let mut v = serde_json::to_value(h).expect("serializable");
                v["kind"] = json!("hit");
                println!("{v}");
            }
            println!(
                "{}",
                json!({ "kind": "summary", "passed": failed == 0, "checks": report.checks.len(), "failed": failed })
            );
        }
    }
    let capped = built
        .iter()
        .any(|b| b.group.as_ref().is_err_and(Error::is_resource_limit));
    Ok(match (failed, capped) {
        (0, _) => 0,
        (_, true) => EXIT_CAP,
        _ => EXIT_VERIFY,
    })
}

fn cmd_iso(a: &str, b: &str, cap: usize, format: Format) -> Result<u8, Failure> {
    let (ga, gb) = (build_expr(a, cap)?, build_expr(b, cap)?);
    let iso = find_isomorphism(&ga, &gb);
    match format {
        Format::Text => println!("{}", if iso.is_some() { "isomorphic" } else { "not isomorphic" }),
        Format::Json => println!("{}", json!({ "isomorphic": iso.is_some(), "order": [ga.order(), gb.order()] })),
    }
    Ok(0)
}

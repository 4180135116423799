//! `prym`: rational point counts of Prym varieties of unramified double
//! covers of hyperelliptic curves, and the bounds they are checked against.

use clap::{Args, Parser, Subcommand};
use prym_cli::config::{parse_primes, parse_resolution, FileConfig};
use prym_cli::pipeline::{
    analyze_cover, analyze_curve, prym_extension_orders, VerifyDepth,
};
use prym_cli::render::{pretty_cover, pretty_curve};
use prym_cli::selftest::run_selftest;
use prym_cli::sweep::{render_csv, render_json, sweep, OutputFormat, SweepConfig};
use prym_core::curves::{validate_cover, HyperellipticCurve};
use prym_core::finite_fields::{FieldDesc, Poly, DEFAULT_BUDGET};
use prym_core::polytope::{
    exact_min, grid_tolerance, lemma3_bound, lemma4_max, oracle_extrema, PolytopeProblem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "prym",
    version,
    about = "Prym variety point counts for unramified double covers of hyperelliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one cover u^2 = f1, v^2 = f2 of the curve y^2 = f1*f2
    AnalyzeCover(AnalyzeCoverArgs),
    /// Jacobian bounds for one hyperelliptic curve y^2 = f (pass f via --f1)
    AnalyzeCurve(AnalyzeCurveArgs),
    /// Enumerate cover families and emit one bounds row per cover
    Sweep(SweepArgs),
    /// Cross-check the product floor/ceiling against exact and grid extrema
    LemmaCheck(LemmaCheckArgs),
    /// Closed-form example corpus plus the pinned golden micro-sweep
    Selftest,
}

#[derive(Args)]
struct AnalyzeCoverArgs {
    /// Base field prime
    #[arg(long)]
    p: Option<u64>,
    /// Coefficients of f1, ascending, e.g. 1,1,0,0,1
    #[arg(long)]
    f1: Option<String>,
    /// Coefficients of f2, ascending
    #[arg(long)]
    f2: Option<String>,
    /// Also print #Pr over F_{q^n} for n up to this value
    #[arg(long)]
    extension: Option<usize>,
    /// Max field elements enumerated per count
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum)]
    verify_depth: Option<VerifyDepth>,
    /// Report format: pretty text by default, or the full report as json
    #[arg(long, value_enum)]
    format: Option<ReportFormat>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value file supplying defaults for the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeCurveArgs {
    #[arg(long)]
    p: Option<u64>,
    /// Coefficients of f, ascending (the curve is y^2 = f)
    #[arg(long)]
    f1: Option<String>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum)]
    verify_depth: Option<VerifyDepth>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated odd primes, e.g. 3,5
    #[arg(long)]
    p: Option<String>,
    /// Degree of f1 (even, >= 2)
    #[arg(long)]
    deg1: Option<usize>,
    /// Degree of f2 (even, >= 2)
    #[arg(long)]
    deg2: Option<usize>,
    /// Cap per (prime, degrees) cell; a seeded shuffle picks the subset when
    /// the family is larger
    #[arg(long)]
    max_covers: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    verify_depth: Option<VerifyDepth>,
    #[arg(long)]
    budget: Option<u64>,
    /// Write rows here; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Worker threads (0 = automatic)
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct LemmaCheckArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random problems in the table
    #[arg(long)]
    count: Option<usize>,
    /// Oracle grid step, e.g. 1/64
    #[arg(long)]
    resolution: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ReportFormat {
    Pretty,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pretty" => Ok(ReportFormat::Pretty),
            "json" => Ok(ReportFormat::Json),
            _ => Err(format!("expected pretty or json, got {s:?}")),
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, String> {
    match path {
        Some(p) => FileConfig::load(p),
        None => Ok(FileConfig::default()),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("missing --{flag} (flag or config key)"))
}

fn parse_poly(field: &FieldDesc, s: &str, which: &str) -> Result<Poly, String> {
    Poly::parse(field, s).map_err(|e| format!("{which}: {e}"))
}

fn cmd_analyze_cover(args: AnalyzeCoverArgs) -> Result<(), String> {
    let cfg = load_config(&args.config)?;
    let p = required(cfg.pick_opt(args.p, "p")?, "p")?;
    let f1 = required(
        args.f1.or_else(|| cfg.get("f1").map(String::from)),
        "f1",
    )?;
    let f2 = required(
        args.f2.or_else(|| cfg.get("f2").map(String::from)),
        "f2",
    )?;
    let extension = cfg.pick_opt(args.extension, "extension")?;
    let budget = cfg.pick(args.budget, "budget", DEFAULT_BUDGET)?;
    let depth = cfg.pick(args.verify_depth, "verify-depth", VerifyDepth::Standard)?;
    let format = cfg.pick(args.format, "format", ReportFormat::Pretty)?;

    let field = FieldDesc::prime(p).map_err(|e| e.to_string())?;
    let f1 = parse_poly(&field, &f1, "f1")?;
    let f2 = parse_poly(&field, &f2, "f2")?;
    let cov = validate_cover(f1, f2).map_err(|e| format!("cover rejected: {e}"))?;
    let analysis = analyze_cover(&cov, budget, depth).map_err(|e| e.to_string())?;
    let extensions = match extension {
        Some(upto) => prym_extension_orders(&analysis.l_pr, upto).map_err(|e| e.to_string())?,
        None => Vec::new(),
    };
    let text = match format {
        ReportFormat::Pretty => pretty_cover(&analysis, &extensions),
        ReportFormat::Json => {
            let mut v = serde_json::to_value(&analysis.report).map_err(|e| e.to_string())?;
            if !extensions.is_empty() {
                let exts: Vec<serde_json::Value> = extensions
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "n": e.n,
                            "order": e.order.to_string(),
                            "rel_err": e.rel_err,
                        })
                    })
                    .collect();
                v["extensions"] = serde_json::Value::Array(exts);
            }
            serde_json::to_string_pretty(&v).map_err(|e| e.to_string())? + "\n"
        }
    };
    emit(&text, &args.out)?;
    if !analysis.clean() {
        return Err("analysis completed with violated checks (see report)".into());
    }
    Ok(())
}

fn cmd_analyze_curve(args: AnalyzeCurveArgs) -> Result<(), String> {
    let cfg = load_config(&args.config)?;
    let p = required(cfg.pick_opt(args.p, "p")?, "p")?;
    let f = required(
        args.f1.or_else(|| cfg.get("f1").map(String::from)),
        "f1",
    )?;
    let budget = cfg.pick(args.budget, "budget", DEFAULT_BUDGET)?;
    let depth = cfg.pick(args.verify_depth, "verify-depth", VerifyDepth::Standard)?;

    let field = FieldDesc::prime(p).map_err(|e| e.to_string())?;
    let f = parse_poly(&field, &f, "f1")?;
    let curve = HyperellipticCurve::new(f).map_err(|e| format!("curve rejected: {e}"))?;
    let analysis = analyze_curve(&curve, budget, depth).map_err(|e| e.to_string())?;
    emit(&pretty_curve(&analysis), &args.out)?;
    if !(analysis.thm5_ok && analysis.weil_ok && analysis.deep_counts_ok.unwrap_or(true)) {
        return Err("analysis completed with violated checks (see report)".into());
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), String> {
    let cfg = load_config(&args.config)?;
    let primes = match args.p.or_else(|| cfg.get("p").map(String::from)) {
        Some(list) => parse_primes(&list)?,
        None => vec![3, 5],
    };
    let config = SweepConfig {
        primes,
        deg_f1: cfg.pick(args.deg1, "deg1", 4)?,
        deg_f2: cfg.pick(args.deg2, "deg2", 2)?,
        max_covers: cfg.pick(args.max_covers, "max-covers", 200)?,
        seed: cfg.pick(args.seed, "seed", 0)?,
        verify_depth: cfg.pick(args.verify_depth, "verify-depth", VerifyDepth::Standard)?,
        budget: cfg.pick(args.budget, "budget", DEFAULT_BUDGET)?,
        jobs: cfg.pick(args.jobs, "jobs", 0)?,
    };
    let format = cfg.pick(args.format, "format", OutputFormat::Csv)?;
    let out = match args.out {
        Some(path) => Some(path),
        None => cfg.get("out").map(PathBuf::from),
    };

    let start = Instant::now();
    let (summary, rows) = sweep(&config).map_err(|e| e.to_string())?;
    let body = match format {
        OutputFormat::Csv => render_csv(&rows),
        OutputFormat::Json => render_json(&rows),
    };
    match &out {
        Some(path) => {
            std::fs::write(path, &body)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            print!("{summary}");
            println!("rows written to {} in {:.1?}", path.display(), start.elapsed());
        }
        None => {
            print!("{body}");
            eprint!("{summary}");
        }
    }
    if summary.violations > 0 {
        return Err(format!("{} violations recorded", summary.violations));
    }
    Ok(())
}

fn cmd_lemma_check(args: LemmaCheckArgs) -> Result<(), String> {
    let cfg = load_config(&args.config)?;
    let seed = cfg.pick(args.seed, "seed", 11)?;
    let count = cfg.pick(args.count, "count", 12)?;
    let resolution = match args.resolution.or_else(|| cfg.get("resolution").map(String::from)) {
        Some(s) => parse_resolution(&s)?,
        None => 1.0 / 64.0,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    println!(
        "{:>8} {:>5} {:>8} {:>5} {:>12} {:>12} {:>12} {:>12} {:>12}  verdict",
        "a", "gamma", "b", "delta", "lemma3", "exact_min", "oracle_min", "oracle_max", "lemma4"
    );
    let mut failures = 0usize;
    for _ in 0..count {
        let a = rng.gen_range(1.01..4.0);
        let gamma = rng.gen_range(0usize..=4);
        let b = if gamma == 0 {
            0.0
        } else {
            rng.gen_range(-(gamma as f64)..=gamma as f64)
        };
        let p = PolytopeProblem::new(a, gamma, b).map_err(|e| e.to_string())?;
        let floor = lemma3_bound(&p);
        let emin = exact_min(&p).map_err(|e| e.to_string())?.value;
        let (olo, ohi) = oracle_extrema(&p, resolution).map_err(|e| e.to_string())?;
        let (ceiling, _) = lemma4_max(&p);
        let gap = grid_tolerance(&p, resolution);
        let ok = floor <= emin + 1e-9
            && emin <= olo + 1e-9
            && olo <= emin + gap + 1e-9
            && ohi <= ceiling + 1e-9
            && ceiling <= ohi + gap + 1e-9;
        if !ok {
            failures += 1;
        }
        println!(
            "{:>8.4} {:>5} {:>8.4} {:>5} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}  {}",
            p.a(),
            p.gamma(),
            p.b(),
            p.delta(),
            floor,
            emin,
            olo,
            ohi,
            ceiling,
            if ok { "ok" } else { "FAIL" }
        );
    }
    if failures > 0 {
        return Err(format!("{failures} of {count} problems violated the chain"));
    }
    println!("chain floor <= exact <= grid <= ceiling held on all {count} problems");
    Ok(())
}

fn cmd_selftest() -> Result<(), String> {
    let start = Instant::now();
    let msg = run_selftest()?;
    println!("{msg} in {:.1?}", start.elapsed());
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::AnalyzeCover(args) => cmd_analyze_cover(args),
        Cmd::AnalyzeCurve(args) => cmd_analyze_curve(args),
        Cmd::Sweep(args) => cmd_sweep(args),
        Cmd::LemmaCheck(args) => cmd_lemma_check(args),
        Cmd::Selftest => cmd_selftest(),
    };
    if let Err(msg) = result {
        eprintln!("error: {msg}");
        std::process::exit(1);
    }
}

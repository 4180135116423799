//! Family sweeps: enumerate monic squarefree coprime pairs (f1, f2) in
//! lexicographic order, run the pipeline on each cover in parallel, and emit
//! deterministic CSV/JSON rows plus an aggregate summary.

use crate::pipeline::{analyze_cover, CoverAnalysis, VerifyDepth};
use prym_core::bounds::{BoundsReport, CSV_HEADER};
use prym_core::curves::{validate_cover, DoubleCoverSpec};
use prym_core::finite_fields::{FieldDesc, FieldError, Poly, DEFAULT_BUDGET};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("config rejected: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(format!("expected csv or json, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub primes: Vec<u64>,
    pub deg_f1: usize,
    pub deg_f2: usize,
    /// Cap per (prime, degrees) cell; truncation below the full family size
    /// picks a seeded random subset.
    pub max_covers: usize,
    pub seed: u64,
    pub verify_depth: VerifyDepth,
    pub budget: u64,
    /// Worker threads; 0 lets the pool pick.
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            primes: vec![3, 5],
            deg_f1: 4,
            deg_f2: 2,
            max_covers: 200,
            seed: 0,
            verify_depth: VerifyDepth::Standard,
            budget: DEFAULT_BUDGET,
            jobs: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.primes.is_empty() {
            return Err(SweepError::BadConfig("no primes given".into()));
        }
        for &p in &self.primes {
            if p % 2 == 0 {
                return Err(SweepError::BadConfig(format!("prime {p} is even")));
            }
        }
        for (name, deg) in [("deg1", self.deg_f1), ("deg2", self.deg_f2)] {
            if deg < 2 || deg % 2 != 0 {
                return Err(SweepError::BadConfig(format!(
                    "{name} = {deg}: factor degrees must be even and at least 2"
                )));
            }
        }
        if self.max_covers == 0 {
            return Err(SweepError::BadConfig("max-covers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Monic polynomials of the given degree in ascending lexicographic order of
/// the coefficient vector (c_0, ..., c_{deg-1}), constant term most
/// significant.
fn monic_polys(field: &FieldDesc, deg: usize) -> Vec<Poly> {
    let p = field.order();
    let total = p.pow(deg as u32);
    (0..total)
        .map(|counter| {
            let mut idx = vec![0u128; deg + 1];
            idx[deg] = 1;
            let mut rest = counter;
            for j in (0..deg).rev() {
                idx[j] = rest % p;
                rest /= p;
            }
            Poly::from_indices(field, &idx)
        })
        .collect()
}

/// All valid covers for one cell in lexicographic order on (f1, f2), then a
/// seeded shuffle and truncation when the family exceeds `max`. Returns the
/// kept covers and the full family size.
pub fn enumerate_covers(
    p: u64,
    deg_f1: usize,
    deg_f2: usize,
    max: usize,
    seed: u64,
) -> Result<(Vec<DoubleCoverSpec>, usize), SweepError> {
    let field = FieldDesc::prime(p)?;
    let f1s = monic_polys(&field, deg_f1);
    let f2s = monic_polys(&field, deg_f2);
    let mut covers = Vec::new();
    for f1 in &f1s {
        for f2 in &f2s {
            if let Ok(cov) = validate_cover(f1.clone(), f2.clone()) {
                covers.push(cov);
            }
        }
    }
    let total = covers.len();
    if total > max {
        // mix the prime in so cells truncate independently
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p.wrapping_mul(0x9E3779B97F4A7C15)));
        covers.shuffle(&mut rng);
        covers.truncate(max);
    }
    Ok((covers, total))
}

/// One output row plus everything the aggregator needs.
#[derive(Debug, Clone)]
pub struct CoverRow {
    pub prime: u64,
    pub f1: String,
    pub f2: String,
    pub csv: String,
    pub report: BoundsReport,
    pub clean: bool,
}

#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub covers_processed: usize,
    pub covers_skipped: usize,
    pub violations: usize,
    pub tightness_min: f64,
    pub tightness_mean: f64,
    pub tightness_max: f64,
    /// Covers where the deviation lower bound certifiably beats the Weil
    /// floor strictly.
    pub beats_weil_lower: usize,
    /// Covers where the deviation upper bound certifiably beats the Weil
    /// ceiling strictly.
    pub beats_weil_upper: usize,
    pub thm5_wins_vs_lmd: usize,
    pub thm5_losses_vs_lmd: usize,
    pub thm5_ties_vs_lmd: usize,
    /// (|D|, covers, mean tightness) per deviation magnitude, ascending.
    pub tightness_by_abs_d: Vec<(u128, usize, f64)>,
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            w,
            "covers: {} processed, {} skipped, {} violations",
            self.covers_processed, self.covers_skipped, self.violations
        )?;
        writeln!(
            w,
            "tightness thm2_hi/thm2_lo: min {:.4}  mean {:.4}  max {:.4}",
            self.tightness_min, self.tightness_mean, self.tightness_max
        )?;
        writeln!(
            w,
            "deviation bound strictly beats Weil: lower side {} / upper side {} of {}",
            self.beats_weil_lower, self.beats_weil_upper, self.covers_processed
        )?;
        writeln!(
            w,
            "thm5 vs LMD lower bound: {} wins, {} losses, {} ties",
            self.thm5_wins_vs_lmd, self.thm5_losses_vs_lmd, self.thm5_ties_vs_lmd
        )?;
        writeln!(w, "mean tightness by |D| (smaller |D| should be tighter):")?;
        for (abs_d, count, mean) in &self.tightness_by_abs_d {
            writeln!(w, "  |D| = {abs_d:>3}: {mean:.4}  ({count} covers)")?;
        }
        Ok(())
    }
}

fn analysis_row(prime: u64, a: &CoverAnalysis) -> CoverRow {
    CoverRow {
        prime,
        f1: a.f1.clone(),
        f2: a.f2.clone(),
        csv: a.report.csv_row(),
        report: a.report.clone(),
        clean: a.clean(),
    }
}

/// Run the sweep. Rows come back sorted (by CSV line, then identity) so
/// output is deterministic no matter how the pool schedules covers; any
/// check failure is counted in `violations` and the affected rows are still
/// emitted for inspection.
pub fn sweep(config: &SweepConfig) -> Result<(SweepSummary, Vec<CoverRow>), SweepError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;

    let mut rows: Vec<CoverRow> = Vec::new();
    let mut skipped = 0usize;
    let mut violations = 0usize;

    for &p in &config.primes {
        let (covers, _total) =
            enumerate_covers(p, config.deg_f1, config.deg_f2, config.max_covers, config.seed)?;
        let results: Vec<_> = pool.install(|| {
            covers
                .par_iter()
                .map(|cov| analyze_cover(cov, config.budget, config.verify_depth))
                .collect()
        });
        for (cov, result) in covers.iter().zip(results) {
            match result {
                Ok(a) => {
                    let row = analysis_row(p, &a);
                    if !row.clean {
                        violations += 1;
                        eprintln!(
                            "violation: cover f1 = {}; f2 = {} over F_{p} failed a check",
                            row.f1, row.f2
                        );
                    }
                    rows.push(row);
                }
                Err(e) if e.is_budget() => {
                    skipped += 1;
                    eprintln!(
                        "skipping cover f1 = {}; f2 = {} over F_{p}: {e}",
                        crate::pipeline::poly_string(cov.f1()),
                        crate::pipeline::poly_string(cov.f2()),
                    );
                }
                Err(e) => {
                    violations += 1;
                    eprintln!(
                        "violation: cover f1 = {}; f2 = {} over F_{p}: {e}",
                        crate::pipeline::poly_string(cov.f1()),
                        crate::pipeline::poly_string(cov.f2()),
                    );
                }
            }
        }
    }

    rows.sort_by(|a, b| {
        (&a.csv, a.prime, &a.f1, &a.f2).cmp(&(&b.csv, b.prime, &b.f1, &b.f2))
    });

    let processed = rows.len();
    let mut t_min = f64::INFINITY;
    let mut t_max = f64::NEG_INFINITY;
    let mut t_sum = 0.0;
    let mut beats_lower = 0usize;
    let mut beats_upper = 0usize;
    let mut wins = 0usize;
    let mut losses = 0usize;
    let mut ties = 0usize;
    let mut buckets: BTreeMap<u128, (usize, f64)> = BTreeMap::new();
    for row in &rows {
        let r = &row.report;
        t_min = t_min.min(r.tightness_thm2);
        t_max = t_max.max(r.tightness_thm2);
        t_sum += r.tightness_thm2;
        if r.thm2_lower.lo > r.weil_lower.hi {
            beats_lower += 1;
        }
        if r.thm2_upper.hi < r.weil_upper.lo {
            beats_upper += 1;
        }
        if r.thm5_lower.lo > r.lmd_lower.hi {
            wins += 1;
        } else if r.thm5_lower.hi < r.lmd_lower.lo {
            losses += 1;
        } else {
            ties += 1;
        }
        let bucket = buckets.entry(r.d.unsigned_abs()).or_insert((0, 0.0));
        bucket.0 += 1;
        bucket.1 += r.tightness_thm2;
    }

    let summary = SweepSummary {
        covers_processed: processed,
        covers_skipped: skipped,
        violations,
        tightness_min: if processed == 0 { 0.0 } else { t_min },
        tightness_mean: if processed == 0 { 0.0 } else { t_sum / processed as f64 },
        tightness_max: if processed == 0 { 0.0 } else { t_max },
        beats_weil_lower: beats_lower,
        beats_weil_upper: beats_upper,
        thm5_wins_vs_lmd: wins,
        thm5_losses_vs_lmd: losses,
        thm5_ties_vs_lmd: ties,
        tightness_by_abs_d: buckets
            .into_iter()
            .map(|(d, (count, sum))| (d, count, sum / count as f64))
            .collect(),
    };
    Ok((summary, rows))
}

pub fn render_csv(rows: &[CoverRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv);
        out.push('\n');
    }
    out
}

/// Columns whose CSV cells are arbitrary-size integers; they stay strings in
/// JSON, like in the report serialization.
const STRING_COLUMNS: &[&str] = &["prym_order", "jac_order"];

/// JSON rows mirror the 18 CSV columns exactly: same keys, same order, same
/// cell values; empty cells become null, order columns stay strings.
pub fn render_json(rows: &[CoverRow]) -> String {
    let headers: Vec<&str> = CSV_HEADER.split(',').collect();
    let mut out = String::from("[");
    for (i, row) in rows.iter().enumerate() {
        out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
        for (j, (key, cell)) in headers.iter().zip(row.csv.split(',')).enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("\"{key}\": "));
            if cell.is_empty() {
                out.push_str("null");
            } else if STRING_COLUMNS.contains(key) {
                out.push_str(&format!("\"{cell}\""));
            } else {
                out.push_str(cell);
            }
        }
        out.push('}');
    }
    out.push_str("\n]\n");
    out
}

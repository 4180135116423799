//! Fast self-check: a corpus of closed-form examples across the stack plus a
//! pinned micro-sweep compared line by line against a golden CSV compiled
//! into the binary.

use crate::pipeline::VerifyDepth;
use crate::sweep::{render_csv, sweep, SweepConfig};
use prym_core::bounds::{delta_flag, thm2_lower_raw, thm2_upper_raw, weil_interval};
use prym_core::curves::{count_cover_points, count_curve_points, validate_cover, HyperellipticCurve};
use prym_core::finite_fields::{FieldDesc, Poly, DEFAULT_BUDGET};
use prym_core::polytope::{exact_min, lemma3_bound, lemma4_max, oracle_extrema, PolytopeProblem};

/// Golden output of `selftest_config()`; regenerating it requires a
/// deliberate rebuild, so drift cannot pass silently.
pub const GOLDEN_SELFTEST: &str = include_str!("../golden/selftest.csv");

/// The pinned micro-sweep behind the golden file.
pub fn selftest_config() -> SweepConfig {
    SweepConfig {
        primes: vec![3],
        deg_f1: 4,
        deg_f2: 2,
        max_covers: 10,
        seed: 7,
        verify_depth: VerifyDepth::Full,
        budget: DEFAULT_BUDGET,
        jobs: 0,
    }
}

fn check(name: &str, ok: bool) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("selftest: example {name:?} failed"))
    }
}

fn closed_form_corpus() -> Result<usize, String> {
    let mut ran = 0;
    let mut run = |name: &str, ok: bool| -> Result<(), String> {
        ran += 1;
        check(name, ok)
    };

    let f3 = FieldDesc::prime(3).map_err(|e| e.to_string())?;
    let f1 = Poly::parse(&f3, "1,0,0,0,1").map_err(|e| e.to_string())?;
    let f2 = Poly::parse(&f3, "2,0,1").map_err(|e| e.to_string())?;
    run("x^4+1 over F_3 is squarefree of degree 4", {
        f1.is_squarefree() && f1.degree() == Some(4)
    })?;
    run("(1+x)^2 over F_3 is not squarefree", {
        !Poly::parse(&f3, "1,2,1").map_err(|e| e.to_string())?.is_squarefree()
    })?;
    run("y^2 = x^4 + 1 over F_3 has 4 points", {
        let curve = HyperellipticCurve::new(f1.clone()).map_err(|e| e.to_string())?;
        count_curve_points(&curve, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())? == 4
    })?;
    run("the cover u^2 = x^4+1, v^2 = x^2+2 over F_3 has only the 4 infinite points", {
        let cov = validate_cover(f1, f2).map_err(|e| e.to_string())?;
        count_cover_points(&cov, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())? == 4
    })?;

    run("delta(D=0, q=5) = 0", delta_flag(0, 5) == 0)?;
    run("delta(D=3, q=5) = 1", delta_flag(3, 5) == 1)?;
    run("delta(D=6, q=9) = 0", delta_flag(6, 9) == 0)?;
    run("thm2 lower (q=7, g=2, D=0) = 6", {
        let b = thm2_lower_raw(7, 2, 0).map_err(|e| e.to_string())?;
        b.lo == 6.0 && b.hi == 6.0
    })?;
    run("thm2 upper (q=9, g=2, D=6) = 16", {
        let b = thm2_upper_raw(9, 2, 6).map_err(|e| e.to_string())?;
        b.lo == 16.0 && b.hi == 16.0
    })?;
    run("weil interval (q=9, dim 1) = [4, 16]", {
        let (lo, hi) = weil_interval(9, 1);
        lo.lo == 4.0 && lo.hi == 4.0 && hi.lo == 16.0 && hi.hi == 16.0
    })?;

    let p = PolytopeProblem::new(2.0, 2, 0.0).map_err(|e| e.to_string())?;
    run("product floor (a=2, gamma=2, b=0) = 3", (lemma3_bound(&p) - 3.0).abs() < 1e-12)?;
    run("exact minimum there is 3 at (1, -1)", {
        let e = exact_min(&p).map_err(|e| e.to_string())?;
        e.value == 3.0 && e.n == 1 && e.m == 1
    })?;
    run("product ceiling (a=2, gamma=3, b=0) = 8 at the origin", {
        lemma4_max(&PolytopeProblem::new(2.0, 3, 0.0).map_err(|e| e.to_string())?)
            == (8.0, vec![0.0, 0.0, 0.0])
    })?;
    run("oracle on the single-point slice gamma=1 returns a-b twice", {
        let p1 = PolytopeProblem::new(2.0, 1, 1.0).map_err(|e| e.to_string())?;
        oracle_extrema(&p1, 0.25).map_err(|e| e.to_string())? == (1.0, 1.0)
    })?;

    Ok(ran)
}

/// Line-by-line comparison; the first differing row is named in the error.
pub fn compare_golden(got: &str, want: &str) -> Result<(), String> {
    let got_lines: Vec<&str> = got.lines().collect();
    let want_lines: Vec<&str> = want.lines().collect();
    for (i, (g, w)) in got_lines.iter().zip(&want_lines).enumerate() {
        if g != w {
            return Err(format!(
                "selftest: golden mismatch at line {}:\n  expected: {w}\n  got:      {g}",
                i + 1
            ));
        }
    }
    if got_lines.len() != want_lines.len() {
        return Err(format!(
            "selftest: golden has {} lines, regenerated output has {}",
            want_lines.len(),
            got_lines.len()
        ));
    }
    Ok(())
}

/// Run the whole self-check; Ok carries a one-line summary.
pub fn run_selftest() -> Result<String, String> {
    let examples = closed_form_corpus()?;
    let config = selftest_config();
    let (summary, rows) = sweep(&config).map_err(|e| format!("selftest sweep: {e}"))?;
    if summary.violations != 0 || summary.covers_processed != config.max_covers {
        return Err(format!(
            "selftest: micro-sweep expected {} clean covers, got {} with {} violations",
            config.max_covers, summary.covers_processed, summary.violations
        ));
    }
    compare_golden(&render_csv(&rows), GOLDEN_SELFTEST)?;
    Ok(format!(
        "selftest: PASS ({examples} closed-form examples, {} golden rows)",
        rows.len()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes() {
        let msg = run_selftest().unwrap();
        assert!(msg.contains("PASS"));
    }

    #[test]
    fn corrupted_golden_names_the_row() {
        // the golden is compiled in, so corruption is simulated on a copy
        let config = selftest_config();
        let (_, rows) = sweep(&config).unwrap();
        let good = render_csv(&rows);
        let mut doctored: Vec<String> = good.lines().map(String::from).collect();
        doctored[3] = doctored[3].replace(char::is_numeric, "9");
        let err = compare_golden(&good, &(doctored.join("\n") + "\n")).unwrap_err();
        assert!(err.contains("line 4"), "unexpected diff message: {err}");
        let err = compare_golden(&good, &(good.clone() + "extra\n")).unwrap_err();
        assert!(err.contains("lines"));
    }
}

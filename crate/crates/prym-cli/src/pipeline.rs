//! Per-object pipeline: count points, fit L-polynomials, split off the Prym
//! factor, evaluate every bound, and run the cross-checks that make a row
//! trustworthy.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use prym_core::bounds::{
    build_report, lmd_bounds, thm5_bounds, weil_interval, BoundInterval, BoundsError, BoundsReport,
    CoverStats,
};
use prym_core::curves::{
    count_curve_points, cover_count_series, curve_count_series, CurveError, DoubleCoverSpec,
    HyperellipticCurve, PointCountSeries,
};
use prym_core::finite_fields::{FieldError, Poly};
use prym_core::lfunctions::{
    counts_from_l, group_order, group_order_ext, l_from_counts, prym_l, prym_order,
    trace_difference, weil_product_count, LError, LPolynomial,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid input: {0}")]
    Curve(#[from] CurveError),
    #[error("count data rejected: {0}")]
    L(#[from] LError),
    #[error("bound hypothesis violated: {0}")]
    Bounds(#[from] BoundsError),
    #[error("cross-check failed: {0}")]
    Check(String),
}

impl PipelineError {
    /// Budget exhaustion is a resource condition, not a finding; sweeps skip
    /// such covers instead of flagging them.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            PipelineError::Curve(CurveError::Field(FieldError::BudgetExceeded { .. }))
        )
    }
}

/// How far counting goes: `Standard` counts exactly what the L-polynomial
/// fits need; `Full` keeps counting to twice that depth and checks the fitted
/// polynomial predicts every extra count, then re-derives the extension
/// orders of the Prym factor through the Frobenius-angle product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VerifyDepth {
    Standard,
    Full,
}

impl std::str::FromStr for VerifyDepth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "standard" => Ok(VerifyDepth::Standard),
            "full" => Ok(VerifyDepth::Full),
            _ => Err(format!("expected standard or full, got {s:?}")),
        }
    }
}

/// One fiber-product factor u^2 = f_i together with its own bound check.
#[derive(Debug, Clone)]
pub struct AuxFactor {
    pub poly: String,
    pub genus: usize,
    pub n1: u128,
    pub l: LPolynomial,
    pub jac: BigUint,
    /// Theorem-5 sandwich verdict; None for genus 0 where there is nothing
    /// to bound.
    pub thm5_ok: Option<bool>,
}

/// Everything the pipeline established about one cover.
#[derive(Debug, Clone)]
pub struct CoverAnalysis {
    pub f1: String,
    pub f2: String,
    pub counts_x: Vec<u128>,
    pub counts_y: Vec<u128>,
    pub l_x: LPolynomial,
    pub l_y: LPolynomial,
    pub l_pr: LPolynomial,
    pub report: BoundsReport,
    pub aux: Vec<AuxFactor>,
    /// L_Pr == product of the factor L-polynomials, coefficient-exact.
    pub fiber_ok: bool,
    /// Full mode only: deeper brute-force counts match counts_from_l.
    pub deep_counts_ok: Option<bool>,
    /// Full mode only: group_order_ext matches the Weil product form.
    pub ext_orders_ok: Option<bool>,
}

impl CoverAnalysis {
    /// True when every recorded verdict holds; sweeps count the rest as
    /// violations.
    pub fn clean(&self) -> bool {
        let r = &self.report;
        r.sandwich_ok
            && r.gonality_ok.unwrap_or(true)
            && r.thm5_ok
            && r.weil_prym_ok
            && r.weil_jx_ok
            && r.weil_jy_ok
            && r.order_product_ok
            && self.fiber_ok
            && self.aux.iter().all(|a| a.thm5_ok.unwrap_or(true))
            && self.deep_counts_ok.unwrap_or(true)
            && self.ext_orders_ok.unwrap_or(true)
    }
}

/// Bounds on the Jacobian of one hyperelliptic curve (no cover involved).
#[derive(Debug, Clone)]
pub struct CurveAnalysis {
    pub f: String,
    pub q: u128,
    pub genus: usize,
    pub counts: Vec<u128>,
    pub l: LPolynomial,
    pub jac: BigUint,
    pub delta5: u8,
    pub thm5_lower: BoundInterval,
    pub thm5_upper: BoundInterval,
    pub thm5_ok: bool,
    pub weil_lower: BoundInterval,
    pub weil_upper: BoundInterval,
    pub weil_ok: bool,
    pub lmd_lower: BoundInterval,
    pub lmd_upper: Option<BoundInterval>,
    pub deep_counts_ok: Option<bool>,
}

pub fn poly_string(f: &Poly) -> String {
    f.residues()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn truncated(series: &PointCountSeries, upto: usize) -> PointCountSeries {
    PointCountSeries {
        q: series.q,
        counts: series.counts[..upto].to_vec(),
    }
}

/// Fitted counts beyond the fitting depth must be reproduced exactly.
fn deep_counts_match(l: &LPolynomial, series: &PointCountSeries, fitted: usize) -> bool {
    (fitted + 1..=series.len()).all(|n| counts_from_l(l, n) == BigInt::from(series.n(n)))
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0u32); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn analyze_factor(
    f: &Poly,
    budget: u64,
    depth: VerifyDepth,
) -> Result<AuxFactor, PipelineError> {
    let curve = HyperellipticCurve::new(f.clone())?;
    let genus = curve.genus();
    let upto = match depth {
        VerifyDepth::Standard => genus,
        VerifyDepth::Full => 2 * genus,
    };
    let series = curve_count_series(&curve, upto.max(1), budget)?;
    let l = l_from_counts(&truncated(&series, genus), genus)?;
    let jac = group_order(&l);
    let thm5_ok = if genus >= 1 {
        let (lo, hi, _) = thm5_bounds(series.q, genus, series.n(1))?;
        Some(lo.certainly_at_most(&jac) && hi.certainly_at_least(&jac))
    } else {
        None
    };
    Ok(AuxFactor {
        poly: poly_string(f),
        genus,
        n1: series.n(1),
        l,
        jac,
        thm5_ok,
    })
}

/// Run the whole pipeline on one validated cover.
pub fn analyze_cover(
    cov: &DoubleCoverSpec,
    budget: u64,
    depth: VerifyDepth,
) -> Result<CoverAnalysis, PipelineError> {
    let g = cov.genus_x();
    let gy = cov.genus_y();
    let (depth_x, depth_y) = match depth {
        VerifyDepth::Standard => (g, gy),
        VerifyDepth::Full => (2 * g, 2 * gy),
    };
    let x_series = curve_count_series(cov.base(), depth_x, budget)?;
    let y_series = cover_count_series(cov, depth_y, budget)?;

    let l_x = l_from_counts(&truncated(&x_series, g), g)?;
    let l_y = l_from_counts(&truncated(&y_series, gy), gy)?;
    let l_pr = prym_l(&l_y, &l_x)?;

    let nx = x_series.n(1);
    let ny = y_series.n(1);
    let d = BigInt::from(ny as i128 - nx as i128);
    if trace_difference(&l_pr) != d {
        return Err(PipelineError::Check(format!(
            "c1 of the Prym factor is {}, expected NY - NX = {}",
            trace_difference(&l_pr),
            d
        )));
    }

    let pr = prym_order(&l_pr);
    let jx = group_order(&l_x);
    let jy = group_order(&l_y);
    let stats = CoverStats::new(x_series.q, g, nx, ny, Some(2))?;
    let report = build_report(&stats, &pr, &jx, &jy);

    let aux = vec![
        analyze_factor(cov.f1(), budget, depth)?,
        analyze_factor(cov.f2(), budget, depth)?,
    ];
    let product = convolve(aux[0].l.coeffs(), aux[1].l.coeffs());
    let fiber_ok = product == l_pr.coeffs();

    let (deep_counts_ok, ext_orders_ok) = match depth {
        VerifyDepth::Standard => (None, None),
        VerifyDepth::Full => {
            let deep = deep_counts_match(&l_x, &x_series, g)
                && deep_counts_match(&l_y, &y_series, gy);
            let mut ext = true;
            for n in 1..=3 {
                let exact = group_order_ext(&l_pr, n)?;
                let exact = exact.to_f64().unwrap_or(f64::INFINITY);
                let product = weil_product_count(&l_pr, n);
                if (product - exact).abs() > 1e-9 * exact.max(1.0) {
                    ext = false;
                }
            }
            (Some(deep), Some(ext))
        }
    };

    Ok(CoverAnalysis {
        f1: poly_string(cov.f1()),
        f2: poly_string(cov.f2()),
        counts_x: x_series.counts.clone(),
        counts_y: y_series.counts.clone(),
        l_x,
        l_y,
        l_pr,
        report,
        aux,
        fiber_ok,
        deep_counts_ok,
        ext_orders_ok,
    })
}

/// Jacobian bounds for a standalone hyperelliptic curve (genus >= 1). The
/// curve is hyperelliptic by construction, so the gonality bound runs with
/// d = 2.
pub fn analyze_curve(
    curve: &HyperellipticCurve,
    budget: u64,
    depth: VerifyDepth,
) -> Result<CurveAnalysis, PipelineError> {
    let genus = curve.genus();
    if genus < 1 {
        return Err(PipelineError::Check(
            "genus 0: the Jacobian is trivial and no bound applies".into(),
        ));
    }
    let upto = match depth {
        VerifyDepth::Standard => genus,
        VerifyDepth::Full => 2 * genus,
    };
    let series = curve_count_series(curve, upto, budget)?;
    let l = l_from_counts(&truncated(&series, genus), genus)?;
    let jac = group_order(&l);
    let q = series.q;
    let n1 = series.n(1);
    let (thm5_lower, thm5_upper, delta5) = thm5_bounds(q, genus, n1)?;
    let thm5_ok = thm5_lower.certainly_at_most(&jac) && thm5_upper.certainly_at_least(&jac);
    let (weil_lower, weil_upper) = weil_interval(q, genus);
    let weil_ok = weil_lower.certainly_at_most(&jac) && weil_upper.certainly_at_least(&jac);
    let (lmd_lower, lmd_upper) = lmd_bounds(q, genus, n1, Some(2));
    let deep_counts_ok = match depth {
        VerifyDepth::Standard => None,
        VerifyDepth::Full => Some(deep_counts_match(&l, &series, genus)),
    };
    Ok(CurveAnalysis {
        f: poly_string(curve.f()),
        q,
        genus,
        counts: series.counts.clone(),
        l,
        jac,
        delta5,
        thm5_lower,
        thm5_upper,
        thm5_ok,
        weil_lower,
        weil_upper,
        weil_ok,
        lmd_lower,
        lmd_upper,
        deep_counts_ok,
    })
}

/// Prym group orders over extensions, each checked against the numerical
/// product over the Frobenius angles.
#[derive(Debug, Clone)]
pub struct ExtensionOrder {
    pub n: usize,
    pub order: BigUint,
    pub weil_product: f64,
    pub rel_err: f64,
}

pub fn prym_extension_orders(
    l_pr: &LPolynomial,
    upto: usize,
) -> Result<Vec<ExtensionOrder>, PipelineError> {
    (1..=upto)
        .map(|n| {
            let order = group_order_ext(l_pr, n)?;
            let weil_product = weil_product_count(l_pr, n);
            let exact = order.to_f64().unwrap_or(f64::INFINITY);
            let rel_err = (weil_product - exact).abs() / exact.max(1.0);
            Ok(ExtensionOrder {
                n,
                order,
                weil_product,
                rel_err,
            })
        })
        .collect()
}

/// Brute-force N_n for the base curve of a cover; exposed for verification
/// suites that want counts the L-polynomial never saw.
pub fn brute_curve_count(
    curve: &HyperellipticCurve,
    n: usize,
    budget: u64,
) -> Result<u128, PipelineError> {
    Ok(count_curve_points(curve, n, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use prym_core::curves::validate_cover;
    use prym_core::finite_fields::{FieldDesc, DEFAULT_BUDGET};

    fn cover(p: u64, f1: &str, f2: &str) -> DoubleCoverSpec {
        let field = FieldDesc::prime(p).unwrap();
        validate_cover(
            Poly::parse(&field, f1).unwrap(),
            Poly::parse(&field, f2).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn f5_example_cover() {
        let cov = cover(5, "1,1,0,0,1", "2,0,1");
        let a = analyze_cover(&cov, DEFAULT_BUDGET, VerifyDepth::Standard).unwrap();
        assert_eq!(a.report.g, 2);
        assert_eq!(a.l_pr.d(), 1);
        assert!(a.clean());
        assert!(a.fiber_ok);
        // Prym order times Jacobian order is the cover Jacobian order
        assert_eq!(
            &a.report.prym_order * &a.report.jac_order,
            a.report.jy_order
        );
    }

    #[test]
    fn full_mode_checks_pass_over_f3() {
        let cov = cover(3, "1,0,0,0,1", "2,0,1");
        let a = analyze_cover(&cov, DEFAULT_BUDGET, VerifyDepth::Full).unwrap();
        assert_eq!(a.deep_counts_ok, Some(true));
        assert_eq!(a.ext_orders_ok, Some(true));
        assert_eq!(a.counts_y.len(), 2 * cov.genus_y());
        assert!(a.clean());
    }

    #[test]
    fn c1_matches_count_difference() {
        let cov = cover(3, "0,1,0,1,1", "1,0,1");
        let a = analyze_cover(&cov, DEFAULT_BUDGET, VerifyDepth::Standard).unwrap();
        let d = a.counts_y[0] as i128 - a.counts_x[0] as i128;
        assert_eq!(trace_difference(&a.l_pr), BigInt::from(d));
        assert_eq!(a.report.d, d);
    }

    #[test]
    fn curve_analysis_genus_two() {
        let field = FieldDesc::prime(5).unwrap();
        let f = Poly::parse(&field, "1,1,0,0,0,0,1").unwrap();
        let curve = HyperellipticCurve::new(f).unwrap();
        let a = analyze_curve(&curve, DEFAULT_BUDGET, VerifyDepth::Full).unwrap();
        assert_eq!(a.genus, 2);
        assert!(a.thm5_ok);
        assert!(a.weil_ok);
        assert_eq!(a.deep_counts_ok, Some(true));
        assert!(a.lmd_upper.is_some());
    }

    #[test]
    fn genus_zero_curve_rejected() {
        let field = FieldDesc::prime(5).unwrap();
        let f = Poly::parse(&field, "1,1,1").unwrap();
        let curve = HyperellipticCurve::new(f).unwrap();
        let err = analyze_curve(&curve, DEFAULT_BUDGET, VerifyDepth::Standard).unwrap_err();
        assert!(err.to_string().contains("genus 0"));
    }

    #[test]
    fn extension_orders_track_the_product_form() {
        let cov = cover(5, "1,1,0,0,1", "2,0,1");
        let a = analyze_cover(&cov, DEFAULT_BUDGET, VerifyDepth::Standard).unwrap();
        let exts = prym_extension_orders(&a.l_pr, 3).unwrap();
        assert_eq!(exts.len(), 3);
        for e in &exts {
            assert!(e.rel_err <= 1e-9, "n = {}: rel err {}", e.n, e.rel_err);
        }
        assert_eq!(exts[0].order, a.report.prym_order);
    }

    #[test]
    fn budget_errors_are_classified() {
        let cov = cover(3, "1,0,0,0,1", "2,0,1");
        let err = analyze_cover(&cov, 10, VerifyDepth::Standard).unwrap_err();
        assert!(err.is_budget(), "got {err}");
    }
}

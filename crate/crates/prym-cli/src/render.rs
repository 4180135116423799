//! Human-readable reports for single-object analyses.

use crate::pipeline::{CoverAnalysis, CurveAnalysis, ExtensionOrder};
use prym_core::bounds::BoundInterval;
use prym_core::lfunctions::LPolynomial;
use std::fmt::Write;

fn interval(b: &BoundInterval) -> String {
    if b.lo == b.hi {
        format!("{}", b.lo)
    } else {
        format!("[{}, {}]", b.lo, b.hi)
    }
}

fn opt_interval(b: &Option<BoundInterval>) -> String {
    match b {
        Some(b) => interval(b),
        None => "-".into(),
    }
}

fn coeff_line(l: &LPolynomial) -> String {
    l.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn counts_line(counts: &[u128]) -> String {
    counts
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "VIOLATED"
    }
}

pub fn pretty_cover(a: &CoverAnalysis, extensions: &[ExtensionOrder]) -> String {
    let r = &a.report;
    let mut s = String::new();
    let _ = writeln!(s, "cover over F_{}: y^2 = f1*f2, u^2 = f1, v^2 = f2", r.q);
    let _ = writeln!(s, "  f1 = {}", a.f1);
    let _ = writeln!(s, "  f2 = {}", a.f2);
    let _ = writeln!(
        s,
        "  g(X) = {}, g(Y) = {}, dim Pr = {}",
        r.g,
        2 * r.g - 1,
        r.g - 1
    );
    let _ = writeln!(s, "point counts over F_{{{}^n}}", r.q);
    let _ = writeln!(s, "  X: {}", counts_line(&a.counts_x));
    let _ = writeln!(s, "  Y: {}", counts_line(&a.counts_y));
    let _ = writeln!(s, "L-polynomial coefficients (ascending)");
    let _ = writeln!(s, "  L_X : {}", coeff_line(&a.l_x));
    let _ = writeln!(s, "  L_Y : {}", coeff_line(&a.l_y));
    let _ = writeln!(s, "  L_Pr: {}", coeff_line(&a.l_pr));
    let _ = writeln!(s, "group orders");
    let _ = writeln!(
        s,
        "  #J_X = {}   #J_Y = {}   #Pr = {}   (#Pr * #J_X == #J_Y: {})",
        r.jac_order,
        r.jy_order,
        r.prym_order,
        verdict(r.order_product_ok)
    );
    let _ = writeln!(s, "bounds on #Pr   (D = {}, delta = {})", r.d, r.delta);
    let _ = writeln!(s, "  deviation lower   {}", interval(&r.thm2_lower));
    let _ = writeln!(s, "  deviation upper   {}", interval(&r.thm2_upper));
    let _ = writeln!(
        s,
        "  weil              [{}, {}]",
        r.weil_lower.lo, r.weil_upper.hi
    );
    let _ = writeln!(
        s,
        "  gonality (d = 2)  lower {}  upper {}",
        opt_interval(&r.thm2_iii_lower),
        opt_interval(&r.thm2_iii_upper)
    );
    let _ = writeln!(
        s,
        "  sandwich: {}   weil containment: {}   gonality: {}   tightness: {:.4}",
        verdict(r.sandwich_ok),
        verdict(r.weil_prym_ok),
        verdict(r.gonality_ok.unwrap_or(true)),
        r.tightness_thm2
    );
    let _ = writeln!(s, "bounds on #J_X  (delta5 = {})", r.delta5);
    let _ = writeln!(s, "  thm5 lower        {}", interval(&r.thm5_lower));
    let _ = writeln!(s, "  thm5 upper        {}", interval(&r.thm5_upper));
    let _ = writeln!(
        s,
        "  weil              [{}, {}]",
        r.weil_jx_lower.lo, r.weil_jx_upper.hi
    );
    let _ = writeln!(
        s,
        "  lmd lower {}   lmd upper {}   (reported, not asserted)",
        interval(&r.lmd_lower),
        opt_interval(&r.lmd_upper)
    );
    let _ = writeln!(
        s,
        "  thm5 sandwich: {}   weil containment (J_X: {}, J_Y: {})",
        verdict(r.thm5_ok),
        verdict(r.weil_jx_ok),
        verdict(r.weil_jy_ok)
    );
    let _ = writeln!(s, "fiber product");
    for factor in &a.aux {
        let _ = writeln!(
            s,
            "  u^2 = {} : genus {}, N_1 = {}, #J = {}, L = {}{}",
            factor.poly,
            factor.genus,
            factor.n1,
            factor.jac,
            coeff_line(&factor.l),
            match factor.thm5_ok {
                Some(ok) => format!("   thm5: {}", verdict(ok)),
                None => String::new(),
            }
        );
    }
    let _ = writeln!(
        s,
        "  L_Pr == product of factor L-polynomials: {}",
        verdict(a.fiber_ok)
    );
    if let Some(deep) = a.deep_counts_ok {
        let _ = writeln!(
            s,
            "deep verification: brute-force counts match the fitted L: {}",
            verdict(deep)
        );
    }
    if let Some(ext) = a.ext_orders_ok {
        let _ = writeln!(
            s,
            "deep verification: extension orders match the Frobenius product: {}",
            verdict(ext)
        );
    }
    if !extensions.is_empty() {
        let _ = writeln!(s, "Prym orders over extensions");
        for e in extensions {
            let _ = writeln!(
                s,
                "  #Pr(F_{{{}^{}}}) = {}   (angle product {:.6}, rel err {:.3e})",
                r.q, e.n, e.order, e.weil_product, e.rel_err
            );
        }
    }
    s
}

pub fn pretty_curve(a: &CurveAnalysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "curve over F_{}: y^2 = f", a.q);
    let _ = writeln!(s, "  f = {}", a.f);
    let _ = writeln!(s, "  genus = {}", a.genus);
    let _ = writeln!(s, "point counts over F_{{{}^n}}", a.q);
    let _ = writeln!(s, "  X: {}", counts_line(&a.counts));
    let _ = writeln!(s, "L-polynomial coefficients (ascending)");
    let _ = writeln!(s, "  L_X: {}", coeff_line(&a.l));
    let _ = writeln!(s, "bounds on #J_X = {}  (delta5 = {})", a.jac, a.delta5);
    let _ = writeln!(s, "  thm5 lower        {}", interval(&a.thm5_lower));
    let _ = writeln!(s, "  thm5 upper        {}", interval(&a.thm5_upper));
    let _ = writeln!(
        s,
        "  weil              [{}, {}]",
        a.weil_lower.lo, a.weil_upper.hi
    );
    let _ = writeln!(
        s,
        "  lmd lower {}   lmd upper {}   (reported, not asserted)",
        interval(&a.lmd_lower),
        opt_interval(&a.lmd_upper)
    );
    let _ = writeln!(
        s,
        "  thm5 sandwich: {}   weil containment: {}",
        verdict(a.thm5_ok),
        verdict(a.weil_ok)
    );
    if let Some(deep) = a.deep_counts_ok {
        let _ = writeln!(
            s,
            "deep verification: brute-force counts match the fitted L: {}",
            verdict(deep)
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{analyze_cover, analyze_curve, prym_extension_orders, VerifyDepth};
    use prym_core::curves::{validate_cover, HyperellipticCurve};
    use prym_core::finite_fields::{FieldDesc, Poly, DEFAULT_BUDGET};

    #[test]
    fn cover_report_mentions_everything() {
        let field = FieldDesc::prime(5).unwrap();
        let cov = validate_cover(
            Poly::parse(&field, "1,1,0,0,1").unwrap(),
            Poly::parse(&field, "2,0,1").unwrap(),
        )
        .unwrap();
        let a = analyze_cover(&cov, DEFAULT_BUDGET, VerifyDepth::Standard).unwrap();
        let exts = prym_extension_orders(&a.l_pr, 2).unwrap();
        let text = pretty_cover(&a, &exts);
        for needle in [
            "f1 = 1,1,0,0,1",
            "g(X) = 2",
            "dim Pr = 1",
            "L_Pr:",
            "sandwich: ok",
            "thm5 sandwich: ok",
            "fiber product",
            "#Pr(F_{5^2})",
            "delta",
        ] {
            assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
        }
        assert!(!text.contains("VIOLATED"));
    }

    #[test]
    fn curve_report_mentions_everything() {
        let field = FieldDesc::prime(7).unwrap();
        let f = Poly::parse(&field, "3,1,0,0,0,0,1").unwrap();
        let curve = HyperellipticCurve::new(f).unwrap();
        let a = analyze_curve(&curve, DEFAULT_BUDGET, VerifyDepth::Standard).unwrap();
        let text = pretty_curve(&a);
        for needle in ["curve over F_7", "genus = 2", "thm5 lower", "lmd lower"] {
            assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
        }
    }
}

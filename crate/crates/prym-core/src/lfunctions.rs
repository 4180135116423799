//! L-polynomials from point counts: Newton-identity reconstruction, functional
//! equation, exact divisibility L_X | L_Y, group orders over extensions, and
//! advisory numeric root diagnostics. All coefficient arithmetic is exact.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::PointCountSeries;

#[derive(Debug, Error)]
pub enum LError {
    #[error("c_0 must be 1")]
    BadLeadingCoefficient,
    #[error("coefficient vector has length {have}, need 2d+1 = {need}")]
    BadLength { have: usize, need: usize },
    #[error("functional equation fails at index {0}")]
    FunctionalEquation(usize),
    #[error("L(1) = {0} is not a positive group order")]
    NonPositiveOrder(BigInt),
    #[error("need exactly {need} point counts, got {have}")]
    WrongCountLength { have: usize, need: usize },
    #[error("inconsistent counts: {0}")]
    InconsistentCounts(String),
    #[error("L-polynomials over different base fields")]
    MismatchedQ,
    #[error("divisor dimension exceeds dividend dimension")]
    DimensionOrder,
    #[error("not a sub-L-polynomial: division leaves a remainder")]
    NotSubLPolynomial,
    #[error("internal arithmetic failure: {0}")]
    Internal(String),
}

/// Numerator of the zeta function of a dimension-d abelian variety over F_q:
/// integer coefficients c_0..c_{2d} with c_0 = 1 and the functional equation
/// c_{2d-i} = q^{d-i} c_i. Reciprocal roots have modulus sqrt(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    q: u128,
    d: usize,
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct LPolynomialWire {
    q: u128,
    d: usize,
    coeffs: Vec<String>,
}

impl Serialize for LPolynomial {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        LPolynomialWire {
            q: self.q,
            d: self.d,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = LPolynomialWire::deserialize(de)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        LPolynomial::new(wire.q, wire.d, coeffs).map_err(serde::de::Error::custom)
    }
}

impl LPolynomial {
    pub fn new(q: u128, d: usize, coeffs: Vec<BigInt>) -> Result<LPolynomial, LError> {
        if coeffs.len() != 2 * d + 1 {
            return Err(LError::BadLength {
                have: coeffs.len(),
                need: 2 * d + 1,
            });
        }
        if !coeffs[0].is_one() {
            return Err(LError::BadLeadingCoefficient);
        }
        let qb = BigInt::from(q);
        for i in 0..=d {
            let expect = qb.pow((d - i) as u32) * &coeffs[i];
            if coeffs[2 * d - i] != expect {
                return Err(LError::FunctionalEquation(i));
            }
        }
        let at_one: BigInt = coeffs.iter().sum();
        if at_one < BigInt::one() {
            return Err(LError::NonPositiveOrder(at_one));
        }
        Ok(LPolynomial { q, d, coeffs })
    }

    /// The constant polynomial 1 (dimension-0 variety).
    pub fn one(q: u128) -> LPolynomial {
        LPolynomial {
            q,
            d: 0,
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn q(&self) -> u128 {
        self.q
    }

    /// Half-degree: the dimension of the abelian variety.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// c_i, zero beyond degree 2d.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Power sums p_1..p_upto of the reciprocal roots, by the exact recurrence
    /// p_n = -n c_n - sum_{j=1}^{min(n-1,2d)} c_j p_{n-j}.
    fn root_power_sums(&self, upto: usize) -> Vec<BigInt> {
        let deg = 2 * self.d;
        let mut p: Vec<BigInt> = Vec::with_capacity(upto);
        for n in 1..=upto {
            let mut s = if n <= deg {
                -BigInt::from(n as u64) * &self.coeffs[n]
            } else {
                BigInt::zero()
            };
            for j in 1..=(n - 1).min(deg) {
                s -= &self.coeffs[j] * &p[n - j - 1];
            }
            p.push(s);
        }
        p
    }
}

/// p_n = q^n + 1 - N_n for each supplied count.
pub fn power_sums(counts: &PointCountSeries) -> Vec<BigInt> {
    let q = BigInt::from(counts.q);
    counts
        .counts
        .iter()
        .enumerate()
        .map(|(i, &nn)| q.pow(i as u32 + 1) + 1 - BigInt::from(nn))
        .collect()
}

/// Newton step: e_k for k = 1..=kmax from e_0 = 1 and power sums p_1.., with
/// the mandatory exact division by k.
fn newton_elementary(p: &[BigInt], kmax: usize) -> Result<Vec<BigInt>, String> {
    let mut e: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=kmax {
        let mut s = BigInt::zero();
        for j in 1..=k {
            let term = &e[k - j] * &p[j - 1];
            if j % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        let kb = BigInt::from(k as u64);
        let (quot, rem) = num_integer::Integer::div_rem(&s, &kb);
        if !rem.is_zero() {
            return Err(format!("Newton division by {k} is not exact"));
        }
        e.push(quot);
    }
    Ok(e)
}

/// Fit the L-polynomial of a dimension-d variety from N_1..N_d, completing
/// c_{d+1}..c_{2d} by the functional equation. Counts that violate the Weil
/// bounds, or make any Newton division inexact, are rejected as inconsistent.
pub fn l_from_counts(counts: &PointCountSeries, d: usize) -> Result<LPolynomial, LError> {
    if counts.len() != d {
        return Err(LError::WrongCountLength {
            have: counts.len(),
            need: d,
        });
    }
    let q = counts.q;
    if d == 0 {
        return Ok(LPolynomial::one(q));
    }
    let p = power_sums(counts);
    // Weil gate on inputs: |p_n| <= 2d sqrt(q^n)
    let qb = BigInt::from(q);
    for (i, pn) in p.iter().enumerate() {
        let bound = BigInt::from((2 * d) as u64).pow(2) * qb.pow(i as u32 + 1);
        if pn * pn > bound {
            return Err(LError::InconsistentCounts(format!(
                "power sum p_{} = {} exceeds the Weil bound",
                i + 1,
                pn
            )));
        }
    }
    let e = newton_elementary(&p, d).map_err(LError::InconsistentCounts)?;
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); 2 * d + 1];
    for (k, ek) in e.iter().enumerate() {
        coeffs[k] = if k % 2 == 0 { ek.clone() } else { -ek };
    }
    for i in 0..d {
        coeffs[2 * d - i] = qb.pow((d - i) as u32) * &coeffs[i];
    }
    // Weil gate on outputs: |c_i| <= binom(2d, i) q^{i/2}
    for (i, ci) in coeffs.iter().enumerate() {
        let binom = num_integer::binomial(BigInt::from(2 * d as u64), BigInt::from(i as u64));
        if ci * ci > binom.pow(2) * qb.pow(i as u32) {
            return Err(LError::InconsistentCounts(format!(
                "coefficient c_{i} exceeds the Weil bound"
            )));
        }
    }
    LPolynomial::new(q, d, coeffs)
}

/// N_n = q^n + 1 - p_n, exactly.
pub fn counts_from_l(l: &LPolynomial, n: usize) -> BigInt {
    assert!(n >= 1);
    let pn = l.root_power_sums(n).pop().unwrap();
    BigInt::from(l.q).pow(n as u32) + 1 - pn
}

/// L(1), the order of the group of rational points.
pub fn group_order(l: &LPolynomial) -> BigUint {
    let s: BigInt = l.coeffs.iter().sum();
    // positivity is a constructor invariant
    s.to_biguint().expect("L(1) >= 1")
}

/// The order over F_{q^n}: prod (1 - omega^n), computed exactly by feeding the
/// power sums P_m = p_{nm} through Newton and evaluating at 1. No roots are
/// ever extracted.
pub fn group_order_ext(l: &LPolynomial, n: usize) -> Result<BigUint, LError> {
    assert!(n >= 1);
    let deg = 2 * l.d;
    if deg == 0 {
        return Ok(BigUint::one());
    }
    let p = l.root_power_sums(deg * n);
    let big_p: Vec<BigInt> = (1..=deg).map(|m| p[n * m - 1].clone()).collect();
    let e = newton_elementary(&big_p, deg).map_err(LError::Internal)?;
    let mut order = BigInt::zero();
    for (k, ek) in e.iter().enumerate() {
        if k % 2 == 0 {
            order += ek;
        } else {
            order -= ek;
        }
    }
    order
        .to_biguint()
        .ok_or_else(|| LError::Internal(format!("nonpositive extension order {order}")))
}

/// Exact quotient L_Y / L_X; errors if the division leaves a remainder.
pub fn prym_l(l_y: &LPolynomial, l_x: &LPolynomial) -> Result<LPolynomial, LError> {
    if l_y.q != l_x.q {
        return Err(LError::MismatchedQ);
    }
    if l_x.d > l_y.d {
        return Err(LError::DimensionOrder);
    }
    let dq = 2 * (l_y.d - l_x.d);
    // constant-term division: c_0(L_X) = 1, so quotient coefficients are
    // forced one by one
    let mut quot: Vec<BigInt> = Vec::with_capacity(dq + 1);
    for i in 0..=dq {
        let mut v = l_y.coeff(i);
        for j in 1..=i.min(2 * l_x.d) {
            v -= &l_x.coeffs[j] * &quot[i - j];
        }
        quot.push(v);
    }
    // verify the full product, not just the leading window
    let mut prod = vec![BigInt::zero(); dq + 2 * l_x.d + 1];
    for (i, a) in quot.iter().enumerate() {
        for (j, b) in l_x.coeffs.iter().enumerate() {
            prod[i + j] += a * b;
        }
    }
    if prod != l_y.coeffs {
        return Err(LError::NotSubLPolynomial);
    }
    LPolynomial::new(l_y.q, l_y.d - l_x.d, quot)
}

/// L_Pr(1) = #Pr(F_q); by construction equals #J_Y / #J_X exactly.
pub fn prym_order(l_pr: &LPolynomial) -> BigUint {
    group_order(l_pr)
}

/// c_1(L_Pr) = #Y(F_q) - #X(F_q), the trace difference of the cover.
pub fn trace_difference(l_pr: &LPolynomial) -> BigInt {
    l_pr.coeff(1)
}

/// Reciprocal roots by Durand-Kerner on the monic reversal
/// R(T) = sum c_i T^{2d-i}. Advisory diagnostics only; nothing exact
/// depends on these.
pub fn frobenius_roots(l: &LPolynomial) -> Vec<Complex64> {
    let deg = 2 * l.d;
    if deg == 0 {
        return vec![];
    }
    let coeffs: Vec<f64> = l.coeffs.iter().map(|c| c.to_f64().unwrap()).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in &coeffs {
            acc = acc * z + Complex64::new(*c, 0.0);
        }
        acc
    };
    let r = (l.q as f64).sqrt();
    let mut z: Vec<Complex64> = (0..deg)
        .map(|j| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / deg as f64 + 0.5))
        .collect();
    let tol = 1e-13 * r;
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for j in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for k in 0..deg {
                if k != j {
                    denom *= z[j] - z[k];
                }
            }
            let step = eval(z[j]) / denom;
            z[j] -= step;
            moved = moved.max(step.norm());
        }
        if moved < tol {
            break;
        }
    }
    z
}

/// Frobenius angles theta_1..theta_d in [0, pi], averaged over conjugate
/// pairs, ascending.
pub fn frobenius_angles(l: &LPolynomial) -> Vec<f64> {
    let mut args: Vec<f64> = frobenius_roots(l).iter().map(|z| z.arg().abs()).collect();
    args.sort_by(|a, b| a.partial_cmp(b).unwrap());
    args.chunks(2).map(|c| (c[0] + c[1]) / 2.0).collect()
}

/// The Weil product prod_{i=1..d} (q^n + 1 - 2 sqrt(q^n) cos(n theta_i)),
/// evaluated in floating point from the numeric angles. Cross-check against
/// `group_order_ext`, never a replacement for it.
pub fn weil_product_count(l: &LPolynomial, n: usize) -> f64 {
    let qn = (l.q as f64).powi(n as i32);
    frobenius_angles(l)
        .iter()
        .map(|th| qn + 1.0 - 2.0 * qn.sqrt() * (n as f64 * th).cos())
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{
        count_curve_points, curve_count_series, validate_cover_relaxed, HyperellipticCurve,
    };
    use crate::finite_fields::{FieldDesc, Poly, DEFAULT_BUDGET};

    fn poly(p: u64, s: &str) -> Poly {
        let f = FieldDesc::prime(p).unwrap();
        Poly::parse(&f, s).unwrap()
    }

    fn curve_l(p: u64, s: &str) -> LPolynomial {
        let x = HyperellipticCurve::new(poly(p, s)).unwrap();
        let g = x.genus();
        let counts = curve_count_series(&x, g, DEFAULT_BUDGET).unwrap();
        l_from_counts(&counts, g).unwrap()
    }

    #[test]
    fn dimension_zero() {
        let l = LPolynomial::one(7);
        assert_eq!(group_order(&l), BigUint::one());
        for n in 1..=4 {
            assert_eq!(counts_from_l(&l, n), BigInt::from(7u64).pow(n as u32) + 1);
        }
        assert_eq!(group_order_ext(&l, 3).unwrap(), BigUint::one());
    }

    #[test]
    fn supersingular_trace_zero() {
        let counts = PointCountSeries {
            q: 7,
            counts: vec![8],
        };
        assert_eq!(power_sums(&counts), vec![BigInt::zero()]);
        let l = l_from_counts(&counts, 1).unwrap();
        assert_eq!(l.coeffs(), &[BigInt::from(1), BigInt::from(0), BigInt::from(7)]);
        // p_2 = -2q, so N_2 = q^2 + 1 + 2q
        assert_eq!(counts_from_l(&l, 2), BigInt::from(49 + 1 + 14));
        assert_eq!(group_order(&l), BigUint::from(8u32));
        assert_eq!(group_order_ext(&l, 1).unwrap(), group_order(&l));
        // omega^2 = -q for both roots, so the order over F_{q^2} is (q+1)^2
        assert_eq!(group_order_ext(&l, 2).unwrap(), BigUint::from(64u32));
        assert_eq!(trace_difference(&l), BigInt::zero());
    }

    #[test]
    fn genus_zero_power_sums_vanish() {
        let x = HyperellipticCurve::new(poly(3, "2,0,1")).unwrap();
        let counts = curve_count_series(&x, 4, DEFAULT_BUDGET).unwrap();
        assert!(power_sums(&counts).iter().all(|p| p.is_zero()));
    }

    #[test]
    fn sextic_functional_equation_c4() {
        // genus-2 curve over F_3; c_4 = q^2 c_0 = 9 is forced
        let l = curve_l(3, "1,1,0,0,0,0,1");
        assert_eq!(l.d(), 2);
        assert_eq!(l.coeff(4), BigInt::from(9));
    }

    #[test]
    fn fitted_l_predicts_deeper_counts() {
        // fit from N_1..N_g, then check N_{g+1}..N_{2g} against brute force
        for (p, s) in [(5, "1,1,0,0,0,0,1"), (3, "2,2,0,1,1,0,2"), (7, "1,1,0,0,1")] {
            let x = HyperellipticCurve::new(poly(p, s)).unwrap();
            let g = x.genus();
            let counts = curve_count_series(&x, g, DEFAULT_BUDGET).unwrap();
            let l = l_from_counts(&counts, g).unwrap();
            for n in 1..=2 * g {
                let predicted = counts_from_l(&l, n);
                let brute = count_curve_points(&x, n, DEFAULT_BUDGET).unwrap();
                assert_eq!(predicted, BigInt::from(brute), "p={p} f={s} n={n}");
            }
        }
    }

    #[test]
    fn group_order_within_weil_interval() {
        let l = curve_l(3, "1,1,0,0,0,0,1");
        let order = group_order(&l).to_f64().unwrap();
        let s = 3f64.sqrt();
        assert!((s - 1.0).powi(4) <= order && order <= (s + 1.0).powi(4));
    }

    #[test]
    fn extension_orders_match_base_change() {
        // the reciprocal roots of the base-changed curve are omega^n, so
        // refitting L over F_{q^n} and evaluating at 1 must agree
        let x = HyperellipticCurve::new(poly(5, "1,1,0,0,0,0,1")).unwrap();
        let counts = curve_count_series(&x, 2, DEFAULT_BUDGET).unwrap();
        let l = l_from_counts(&counts, 2).unwrap();
        for n in 2..=3 {
            let shifted = PointCountSeries {
                q: 5u128.pow(n),
                counts: vec![
                    count_curve_points(&x, n as usize, DEFAULT_BUDGET).unwrap(),
                    count_curve_points(&x, 2 * n as usize, DEFAULT_BUDGET).unwrap(),
                ],
            };
            let ln = l_from_counts(&shifted, 2).unwrap();
            assert_eq!(
                group_order_ext(&l, n as usize).unwrap(),
                group_order(&ln),
                "n={n}"
            );
        }
    }

    #[test]
    fn prym_division_identities() {
        let lx = curve_l(5, "1,1,0,0,0,0,1");
        assert_eq!(prym_l(&lx, &lx).unwrap(), LPolynomial::one(5));
        // constructed product: L_X * (1 + qT^2)
        let factor = LPolynomial::new(5, 1, vec![1.into(), 0.into(), 5.into()]).unwrap();
        let mut prod = vec![BigInt::zero(); 2 * 3 + 1];
        for (i, a) in lx.coeffs().iter().enumerate() {
            for (j, b) in factor.coeffs().iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let ly = LPolynomial::new(5, 3, prod).unwrap();
        assert_eq!(prym_l(&ly, &lx).unwrap(), factor);
        assert_eq!(
            group_order(&ly),
            group_order(&lx) * group_order(&factor),
            "orders multiply"
        );
        // an unrelated quartic does not divide it
        let other = curve_l(5, "2,0,1,0,1,0,1");
        if other != lx {
            assert!(matches!(
                prym_l(&ly, &other),
                Err(LError::NotSubLPolynomial)
            ));
        }
        assert!(matches!(
            prym_l(&lx, &curve_l(3, "1,1,0,0,0,0,1")),
            Err(LError::MismatchedQ)
        ));
    }

    #[test]
    fn cover_divisibility_and_trace() {
        // full pipeline on one cover: L_X | L_Y, dimension bookkeeping,
        // trace difference = N_1(Y) - N_1(X)
        let cov = validate_cover_relaxed(poly(5, "1,1,0,0,1"), poly(5, "2,0,1"), 2).unwrap();
        let g = cov.genus_x();
        let gy = cov.genus_y();
        let lx = l_from_counts(
            &curve_count_series(cov.base(), g, DEFAULT_BUDGET).unwrap(),
            g,
        )
        .unwrap();
        let ly = l_from_counts(
            &crate::curves::cover_count_series(&cov, gy, DEFAULT_BUDGET).unwrap(),
            gy,
        )
        .unwrap();
        let lpr = prym_l(&ly, &lx).unwrap();
        assert_eq!(lpr.d(), g - 1);
        let n1y = crate::curves::count_cover_points(&cov, 1, DEFAULT_BUDGET).unwrap();
        let n1x = count_curve_points(cov.base(), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            trace_difference(&lpr),
            BigInt::from(n1y) - BigInt::from(n1x)
        );
        assert_eq!(
            prym_order(&lpr) * group_order(&lx),
            group_order(&ly),
            "orders divide exactly"
        );
    }

    #[test]
    fn constructor_rejections() {
        assert!(matches!(
            LPolynomial::new(5, 1, vec![2.into(), 0.into(), 10.into()]),
            Err(LError::BadLeadingCoefficient)
        ));
        assert!(matches!(
            LPolynomial::new(5, 1, vec![1.into(), 0.into(), 7.into()]),
            Err(LError::FunctionalEquation(0))
        ));
        assert!(matches!(
            LPolynomial::new(5, 1, vec![1.into(), 0.into()]),
            Err(LError::BadLength { have: 2, need: 3 })
        ));
        // L(1) = 1 - 5 + 5... pick c_1 = -6: 1 - 6 + 5 = 0, not a group order
        assert!(matches!(
            LPolynomial::new(5, 1, vec![1.into(), (-6).into(), 5.into()]),
            Err(LError::NonPositiveOrder(_))
        ));
    }

    #[test]
    fn inconsistent_counts_rejected() {
        // N_1 = q + 1 + 100 violates |p_1| <= 2 sqrt(q)
        let counts = PointCountSeries {
            q: 7,
            counts: vec![108],
        };
        assert!(matches!(
            l_from_counts(&counts, 1),
            Err(LError::InconsistentCounts(_))
        ));
        // parity obstruction: an elliptic curve over F_7 cannot have N_1 odd
        // with... actually any N_1 within the Weil range fits d = 1, so use a
        // d = 2 vector whose Newton step still divides; inexactness instead
        // shows up through the Weil gate on c_2. Feed maximally skewed counts.
        let counts = PointCountSeries {
            q: 3,
            counts: vec![7, 1],
        };
        // p_1 = -3, p_2 = 9; e_2 = (e_1 p_1 - p_2)/2 = (9 - 9)/2 = 0: passes
        // Newton, passes gates; verify it builds, then break it harder
        assert!(l_from_counts(&counts, 2).is_ok());
        // p_1 = 4, p_2 = -11: 2 e_2 = p_1^2 - p_2 = 27 is odd, so the Newton
        // division cannot be exact and no abelian surface has these counts
        let counts = PointCountSeries {
            q: 3,
            counts: vec![0, 21],
        };
        assert!(matches!(
            l_from_counts(&counts, 2),
            Err(LError::InconsistentCounts(_))
        ));
    }

    #[test]
    fn wrong_count_length() {
        let counts = PointCountSeries {
            q: 7,
            counts: vec![8, 50],
        };
        assert!(matches!(
            l_from_counts(&counts, 1),
            Err(LError::WrongCountLength { have: 2, need: 1 })
        ));
    }

    #[test]
    fn advisory_root_diagnostics() {
        for (p, s) in [(5, "1,1,0,0,0,0,1"), (3, "1,1,0,0,0,0,1")] {
            let l = curve_l(p, s);
            let sq = (p as f64).sqrt();
            for z in frobenius_roots(&l) {
                assert!(
                    (z.norm() - sq).abs() <= 1e-6 * sq,
                    "|omega| = {} vs sqrt(q) = {sq}",
                    z.norm()
                );
            }
            let angles = frobenius_angles(&l);
            assert_eq!(angles.len(), l.d());
            assert!(angles.windows(2).all(|w| w[0] <= w[1]));
            // Weil product formula reproduces the exact orders
            for n in 1..=3 {
                let exact = group_order_ext(&l, n).unwrap().to_f64().unwrap();
                let approx = weil_product_count(&l, n);
                assert!(
                    (approx - exact).abs() <= 1e-9 * exact,
                    "n={n}: {approx} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let l = curve_l(3, "1,1,0,0,0,0,1");
        let json = serde_json::to_string(&l).unwrap();
        assert!(json.contains("\"coeffs\""));
        assert!(json.contains("\"q\":3"));
        let back: LPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, l);
        // deserialization re-validates invariants
        let bad = r#"{"q":3,"d":1,"coeffs":["1","0","7"]}"#;
        assert!(serde_json::from_str::<LPolynomial>(bad).is_err());
    }
}

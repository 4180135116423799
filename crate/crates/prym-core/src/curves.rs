//! Hyperelliptic curves y^2 = f(x) with squarefree even-degree f, their
//! unramified double covers cut out by coprime factorizations f = f1*f2, and
//! exact point counts over extension fields.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_fields::{Embedding, FieldDesc, FieldElement, FieldError, Legendre, Poly};

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("zero polynomial does not define a curve")]
    ZeroPolynomial,
    #[error("ramified at infinity: {which} has odd degree {degree}")]
    OddDegree { which: &'static str, degree: usize },
    #[error("{which} has degree {degree}, need at least 2")]
    DegreeTooSmall { which: &'static str, degree: usize },
    #[error("singular model: {which} is not squarefree")]
    NotSquarefree { which: &'static str },
    #[error("ramified at a finite place: gcd(f1, f2) is not constant")]
    RamifiedAtFinitePlace,
    #[error("factors live over different fields")]
    MismatchedFields,
    #[error("genus {genus} below the minimum {min} for this analysis")]
    GenusTooSmall { genus: usize, min: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// y^2 = f(x) with f squarefree of even degree 2m >= 2; the smooth projective
/// model has genus m - 1 and 0 or 2 points at infinity.
#[derive(Clone, Debug)]
pub struct HyperellipticCurve {
    field: FieldDesc,
    f: Poly,
}

impl HyperellipticCurve {
    pub fn new(f: Poly) -> Result<HyperellipticCurve, CurveError> {
        let degree = match f.degree() {
            None => return Err(CurveError::ZeroPolynomial),
            Some(d) => d,
        };
        if degree % 2 != 0 {
            return Err(CurveError::OddDegree { which: "f", degree });
        }
        if degree < 2 {
            return Err(CurveError::DegreeTooSmall { which: "f", degree });
        }
        if !f.is_squarefree() {
            return Err(CurveError::NotSquarefree { which: "f" });
        }
        Ok(HyperellipticCurve {
            field: f.field().clone(),
            f,
        })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.f.degree().unwrap() / 2 - 1
    }
}

/// An unramified double cover Y -> X: X is y^2 = f1*f2 and Y carries
/// u^2 = f1(x), v^2 = f2(x).
#[derive(Clone, Debug)]
pub struct DoubleCoverSpec {
    base: HyperellipticCurve,
    f1: Poly,
    f2: Poly,
}

impl DoubleCoverSpec {
    pub fn base(&self) -> &HyperellipticCurve {
        &self.base
    }

    pub fn f1(&self) -> &Poly {
        &self.f1
    }

    pub fn f2(&self) -> &Poly {
        &self.f2
    }

    pub fn field(&self) -> &FieldDesc {
        self.base.field()
    }

    pub fn genus_x(&self) -> usize {
        self.base.genus()
    }

    pub fn genus_y(&self) -> usize {
        2 * self.base.genus() - 1
    }
}

fn check_factor(f: &Poly, which: &'static str) -> Result<(), CurveError> {
    let degree = match f.degree() {
        None => return Err(CurveError::ZeroPolynomial),
        Some(d) => d,
    };
    if degree % 2 != 0 {
        return Err(CurveError::OddDegree { which, degree });
    }
    if degree < 2 {
        return Err(CurveError::DegreeTooSmall { which, degree });
    }
    if !f.is_squarefree() {
        return Err(CurveError::NotSquarefree { which });
    }
    Ok(())
}

/// Checks the unramifiedness hypotheses for f = f1*f2 and requires genus >= 2.
pub fn validate_cover(f1: Poly, f2: Poly) -> Result<DoubleCoverSpec, CurveError> {
    validate_cover_relaxed(f1, f2, 2)
}

/// Same checks with a caller-chosen genus floor (>= 1 keeps g_Y = 2g - 1
/// meaningful; genus-1 covers serve as cross-checks).
pub fn validate_cover_relaxed(
    f1: Poly,
    f2: Poly,
    min_genus: usize,
) -> Result<DoubleCoverSpec, CurveError> {
    if f1.field() != f2.field() {
        return Err(CurveError::MismatchedFields);
    }
    check_factor(&f1, "f1")?;
    check_factor(&f2, "f2")?;
    if f1.gcd(&f2).degree() != Some(0) {
        return Err(CurveError::RamifiedAtFinitePlace);
    }
    let f = f1.mul(&f2);
    // coprime squarefree factors leave the product squarefree, but check anyway
    let base = HyperellipticCurve::new(f)?;
    let genus = base.genus();
    if genus < min_genus {
        return Err(CurveError::GenusTooSmall {
            genus,
            min: min_genus,
        });
    }
    Ok(DoubleCoverSpec { base, f1, f2 })
}

/// Counts N_1..N_B for a fixed object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCountSeries {
    pub q: u128,
    pub counts: Vec<u128>,
}

impl PointCountSeries {
    /// N_n (1-based).
    pub fn n(&self, n: usize) -> u128 {
        self.counts[n - 1]
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// The extension F_{q^n} = F_{p^{k*n}} built directly over the prime field,
/// the embedding of the base field, and the squares table of the big field.
struct CountingField {
    big: FieldDesc,
    emb: Embedding,
    is_sq: Vec<bool>,
}

impl CountingField {
    fn build(base: &FieldDesc, n: usize, budget: u64) -> Result<CountingField, CurveError> {
        let kn = base.k() * n;
        let big = if kn == base.k() {
            base.clone()
        } else {
            let m = crate::finite_fields::find_irreducible(base.p(), kn, 0)?;
            FieldDesc::with_modulus(base.p(), m.residues())?
        };
        let order = big.order();
        if order > budget as u128 {
            return Err(CurveError::Field(FieldError::BudgetExceeded {
                order,
                budget,
            }));
        }
        let emb = Embedding::new(base, &big, budget)?;
        let mut is_sq = vec![false; order as usize];
        for y in big.elements(budget)? {
            is_sq[y.mul(&y).index() as usize] = true;
        }
        Ok(CountingField { big, emb, is_sq })
    }

    fn lift(&self, f: &Poly) -> Vec<FieldElement> {
        f.coeffs().iter().map(|c| self.emb.map(c)).collect()
    }

    /// s(c): 1 if c = 0, 2 if c is a nonzero square, 0 otherwise; this is the
    /// number of solutions u of u^2 = c.
    fn s(&self, c: &FieldElement) -> u128 {
        if c.is_zero() {
            1
        } else if self.is_sq[c.index() as usize] {
            2
        } else {
            0
        }
    }

    fn lc_is_square(&self, lifted: &[FieldElement]) -> bool {
        lifted.last().map(|c| c.is_square()) == Some(Legendre::Square)
    }
}

fn horner(coeffs: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = x.field().zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// N_n(X) = sum over x in F_{q^n} of s(f(x)), plus 2 points at infinity when
/// lc(f) is a square in F_{q^n}.
pub fn count_curve_points(
    x: &HyperellipticCurve,
    n: usize,
    budget: u64,
) -> Result<u128, CurveError> {
    assert!(n >= 1);
    let cf = CountingField::build(x.field(), n, budget)?;
    let fc = cf.lift(x.f());
    let mut total: u128 = 0;
    for pt in cf.big.elements(budget)? {
        total += cf.s(&horner(&fc, &pt));
    }
    if cf.lc_is_square(&fc) {
        total += 2;
    }
    Ok(total)
}

/// N_n(Y) = sum over x of s(f1(x))*s(f2(x)), plus 4 points at infinity when
/// both leading coefficients are squares in F_{q^n}.
pub fn count_cover_points(
    cov: &DoubleCoverSpec,
    n: usize,
    budget: u64,
) -> Result<u128, CurveError> {
    assert!(n >= 1);
    let cf = CountingField::build(cov.field(), n, budget)?;
    let f1 = cf.lift(cov.f1());
    let f2 = cf.lift(cov.f2());
    let mut total: u128 = 0;
    for pt in cf.big.elements(budget)? {
        let s1 = cf.s(&horner(&f1, &pt));
        if s1 == 0 {
            continue;
        }
        total += s1 * cf.s(&horner(&f2, &pt));
    }
    if cf.lc_is_square(&f1) && cf.lc_is_square(&f2) {
        total += 4;
    }
    Ok(total)
}

/// N_1..N_upto for the curve.
pub fn curve_count_series(
    x: &HyperellipticCurve,
    upto: usize,
    budget: u64,
) -> Result<PointCountSeries, CurveError> {
    let counts = (1..=upto)
        .map(|n| count_curve_points(x, n, budget))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointCountSeries {
        q: x.field().order(),
        counts,
    })
}

/// N_1..N_upto for the cover.
pub fn cover_count_series(
    cov: &DoubleCoverSpec,
    upto: usize,
    budget: u64,
) -> Result<PointCountSeries, CurveError> {
    let counts = (1..=upto)
        .map(|n| count_cover_points(cov, n, budget))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointCountSeries {
        q: cov.field().order(),
        counts,
    })
}

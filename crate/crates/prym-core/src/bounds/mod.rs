//! Bounds on the group orders attached to a double cover: the deviation
//! bounds for the Prym order, the analogous Jacobian bounds, the classical
//! Weil interval, and the Lachaud/Martin-Deschamps class-number floor.
//!
//! Every quantity is reported as a [`BoundInterval`] whose ends are rounded
//! outward, so an inequality checked against the conservative end can never
//! be an artifact of rounding. Expressions that happen to be rational
//! (integral exponents, square q) are evaluated exactly and collapse to
//! point intervals, which is what makes the boundary equality cases (for
//! instance `D = 2(g-1)sqrt(q)`) come out as equalities rather than
//! near-misses.

mod interval;

pub use interval::BoundInterval;

use interval::Enclosure;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("genus {genus} is below {min}, the bound is vacuous there")]
    GenusTooSmall { genus: usize, min: usize },
    #[error("field size {0} is too small, the formulas need q >= 3")]
    QTooSmall(u128),
    #[error("deviation {dev} is outside the Weil range (dev^2 must be <= {bound})")]
    DeviationOutOfRange { dev: i128, bound: u128 },
    #[error("gonality must be a positive integer, got {0}")]
    BadGonality(u32),
    #[error("no gonality was supplied")]
    MissingGonality,
}

/// Decides whether D/(2 sqrt q) is an integer, by integer arithmetic alone:
/// it is iff D = 0, or q is a perfect square whose doubled root divides D.
/// Returns 0 in that case and 1 otherwise.
pub fn delta_flag(dev: i128, q: u128) -> u8 {
    if dev == 0 {
        return 0;
    }
    let s = q.isqrt();
    if s * s == q && dev % (2 * s as i128) == 0 {
        return 0;
    }
    1
}

fn check_qg(q: u128, g: usize, min_g: usize) -> Result<(), BoundsError> {
    if q < 3 {
        return Err(BoundsError::QTooSmall(q));
    }
    if g < min_g {
        return Err(BoundsError::GenusTooSmall { genus: g, min: min_g });
    }
    Ok(())
}

fn to_i128(v: u128, what: &str) -> i128 {
    i128::try_from(v).unwrap_or_else(|_| panic!("{what} does not fit i128"))
}

/// Point counts of one double cover, validated once so the bound formulas
/// can be evaluated without further checks.
#[derive(Debug, Clone)]
pub struct CoverStats {
    q: u128,
    g: usize,
    nx: u128,
    ny: u128,
    d_gonality: Option<u32>,
}

impl CoverStats {
    /// Requires q >= 3, g >= 2, a positive gonality when one is given, and
    /// |NY - NX| <= 2(g-1) sqrt q; the last is forced for genuine point
    /// counts, so a violation means the inputs do not come from a cover.
    pub fn new(
        q: u128,
        g: usize,
        nx: u128,
        ny: u128,
        d_gonality: Option<u32>,
    ) -> Result<Self, BoundsError> {
        check_qg(q, g, 2)?;
        if d_gonality == Some(0) {
            return Err(BoundsError::BadGonality(0));
        }
        let dev = to_i128(ny, "point count") - to_i128(nx, "point count");
        let bound = 4 * ((g - 1) as u128).pow(2) * q;
        if dev.unsigned_abs().checked_pow(2).map_or(true, |v| v > bound) {
            return Err(BoundsError::DeviationOutOfRange { dev, bound });
        }
        Ok(CoverStats { q, g, nx, ny, d_gonality })
    }

    pub fn q(&self) -> u128 {
        self.q
    }

    /// Genus of the base curve.
    pub fn g(&self) -> usize {
        self.g
    }

    pub fn nx(&self) -> u128 {
        self.nx
    }

    pub fn ny(&self) -> u128 {
        self.ny
    }

    /// The deviation D = NY - NX.
    pub fn d(&self) -> i128 {
        to_i128(self.ny, "point count") - to_i128(self.nx, "point count")
    }

    pub fn gonality(&self) -> Option<u32> {
        self.d_gonality
    }

    pub fn delta(&self) -> u8 {
        delta_flag(self.d(), self.q)
    }
}

/// Shared engine for the deviation lower bounds: encloses
/// ((sqrt q + 1)/(sqrt q - 1))^(n/(2 sqrt q) + c) * (q-1)^gamma.
///
/// When the exponent is an integer (always the case for square q with
/// 2 sqrt q dividing n) the value is rational and the result is exact;
/// otherwise both ends are computed in log space with directed rounding.
fn deviation_power(q: u128, gamma: usize, n: i128, c: i128) -> BoundInterval {
    let scale = BigInt::from(q - 1).pow(gamma as u32);
    if n == 0 && c == 0 {
        return BoundInterval::from_ratio(&BigRational::from_integer(scale));
    }
    let s = q.isqrt();
    if s * s == q {
        let step = 2 * s as i128;
        if n % step == 0 {
            let ti = n / step + c;
            let base = BigRational::new(BigInt::from(s + 1), BigInt::from(s - 1));
            let val = base.pow(i32::try_from(ti).expect("small exponent"))
                * BigRational::from_integer(scale);
            return BoundInterval::from_ratio(&val);
        }
    }
    let sq = if s * s == q {
        Enclosure::from_u128(s)
    } else {
        Enclosure::from_u128(q).sqrt()
    };
    let one = Enclosure::from_u128(1);
    let base = sq.add(&one).div(&sq.sub(&one));
    let t = Enclosure::from_i128(n)
        .div(&sq.mul(&Enclosure::from_u128(2)))
        .add(&Enclosure::from_i128(c));
    t.mul(&base.ln())
        .exp()
        .mul(&Enclosure::from_bigint(&scale))
        .to_interval()
}

/// (q + 1 + dev/gamma)^gamma, always a rational value, evaluated exactly.
fn deviation_upper(q: u128, gamma: usize, dev: i128) -> Result<BoundInterval, BoundsError> {
    let num = (BigInt::from(q) + 1u32) * BigInt::from(gamma) + BigInt::from(dev);
    if num <= BigInt::zero() {
        return Err(BoundsError::DeviationOutOfRange {
            dev,
            bound: 4 * (gamma as u128).pow(2) * q,
        });
    }
    let val = BigRational::new(num.pow(gamma as u32), BigInt::from(gamma).pow(gamma as u32));
    Ok(BoundInterval::from_ratio(&val))
}

/// Lower bound ((sqrt q + 1)/(sqrt q - 1))^(D/(2 sqrt q) - 2 delta) (q-1)^(g-1)
/// for the Prym order of a validated cover.
pub fn thm2_lower(s: &CoverStats) -> BoundInterval {
    thm2_lower_raw(s.q, s.g, s.d()).expect("stats were validated")
}

/// Upper bound (q + 1 + D/(g-1))^(g-1) for the Prym order.
pub fn thm2_upper(s: &CoverStats) -> BoundInterval {
    thm2_upper_raw(s.q, s.g, s.d()).expect("stats were validated")
}

/// Formula-level variant of [`thm2_lower`] for synthetic (q, g, D) grids;
/// deliberately does not require |D| <= 2(g-1) sqrt q.
pub fn thm2_lower_raw(q: u128, g: usize, dev: i128) -> Result<BoundInterval, BoundsError> {
    thm2_lower_raw_with_delta(q, g, dev, delta_flag(dev, q))
}

/// Same formula with the integrality flag pinned by the caller. Pinning
/// delta = 0 gives the pure deviation term, which dominates the Weil floor
/// on the whole admissible range; the honest flag costs a factor
/// base^(2 delta) and can dip below it.
pub fn thm2_lower_raw_with_delta(
    q: u128,
    g: usize,
    dev: i128,
    delta: u8,
) -> Result<BoundInterval, BoundsError> {
    check_qg(q, g, 2)?;
    Ok(deviation_power(q, g - 1, dev, -2 * delta as i128))
}

/// Formula-level variant of [`thm2_upper`].
pub fn thm2_upper_raw(q: u128, g: usize, dev: i128) -> Result<BoundInterval, BoundsError> {
    check_qg(q, g, 2)?;
    deviation_upper(q, g - 1, dev)
}

/// Gonality bounds for the Prym order:
/// lower ((sqrt q - 1)/(sqrt q + 1))^(d(q+1)/(2 sqrt q) + 2) (q-1)^(g-1),
/// upper e^d (q+1)^(g-1).
pub fn thm2_gonality(s: &CoverStats) -> Result<(BoundInterval, BoundInterval), BoundsError> {
    let d = s.d_gonality.ok_or(BoundsError::MissingGonality)?;
    thm2_gonality_raw(s.q, s.g, d)
}

/// Formula-level variant of [`thm2_gonality`].
pub fn thm2_gonality_raw(
    q: u128,
    g: usize,
    d: u32,
) -> Result<(BoundInterval, BoundInterval), BoundsError> {
    check_qg(q, g, 2)?;
    if d == 0 {
        return Err(BoundsError::BadGonality(0));
    }
    let lower = deviation_power(q, g - 1, -(d as i128) * (to_i128(q, "field size") + 1), -2);
    Ok((lower, gonality_upper_raw(q, g, d)))
}

/// e^d (q+1)^(g-1); d = 0 is allowed here so the e^0 = 1 limit is testable.
fn gonality_upper_raw(q: u128, g: usize, d: u32) -> BoundInterval {
    let scale = (BigInt::from(q) + 1u32).pow((g - 1) as u32);
    if d == 0 {
        return BoundInterval::from_ratio(&BigRational::from_integer(scale));
    }
    Enclosure::e()
        .powi(d as usize)
        .mul(&Enclosure::from_bigint(&scale))
        .to_interval()
}

/// Weil interval ((sqrt q - 1)^(2 dim), (sqrt q + 1)^(2 dim)) for the order
/// of a dim-dimensional abelian variety; exact for square q.
pub fn weil_interval(q: u128, dim: usize) -> (BoundInterval, BoundInterval) {
    assert!(q >= 2, "field size too small");
    if dim == 0 {
        return (BoundInterval::point(1.0), BoundInterval::point(1.0));
    }
    let s = q.isqrt();
    if s * s == q {
        let lo = BigInt::from(s - 1).pow(2 * dim as u32);
        let hi = BigInt::from(s + 1).pow(2 * dim as u32);
        (
            BoundInterval::from_ratio(&BigRational::from_integer(lo)),
            BoundInterval::from_ratio(&BigRational::from_integer(hi)),
        )
    } else {
        let sq = Enclosure::from_u128(q).sqrt();
        let one = Enclosure::from_u128(1);
        (
            sq.sub(&one).powi(2 * dim).to_interval(),
            sq.add(&one).powi(2 * dim).to_interval(),
        )
    }
}

/// Jacobian-order bounds from the deviation NX - (q+1) of the curve itself:
/// lower ((sqrt q + 1)/(sqrt q - 1))^(dev/(2 sqrt q) - 2 delta) (q-1)^g,
/// upper (q + 1 + dev/g)^g, plus the delta used.
pub fn thm5_bounds(
    q: u128,
    g: usize,
    nx: u128,
) -> Result<(BoundInterval, BoundInterval, u8), BoundsError> {
    check_qg(q, g, 1)?;
    let dev = to_i128(nx, "point count") - (to_i128(q, "field size") + 1);
    let bound = 4 * (g as u128).pow(2) * q;
    if dev.unsigned_abs().checked_pow(2).map_or(true, |v| v > bound) {
        return Err(BoundsError::DeviationOutOfRange { dev, bound });
    }
    let delta = delta_flag(dev, q);
    let lower = deviation_power(q, g, dev, -2 * delta as i128);
    let upper = deviation_upper(q, g, dev)?;
    Ok((lower, upper, delta))
}

/// Class-number floor (sqrt q - 1)^2 (q^(g-1) - 1)/g (NX + q - 1)/(q - 1),
/// and, when a gonality d is supplied, the report-only ceiling
/// (e/q)(2g sqrt e)^(d-1) q^g. For g = 1 the floor degenerates to exactly 0.
pub fn lmd_bounds(
    q: u128,
    g: usize,
    nx: u128,
    gonality: Option<u32>,
) -> (BoundInterval, Option<BoundInterval>) {
    assert!(q >= 3 && g >= 1, "lmd_bounds needs q >= 3 and g >= 1");
    let upper = gonality.map(|d| {
        assert!(d >= 1, "gonality must be positive");
        let scale = BigInt::from(2 * g as u128).pow(d - 1) * BigInt::from(q).pow(g as u32 - 1);
        Enclosure::e()
            .sqrt()
            .powi(d as usize + 1)
            .mul(&Enclosure::from_bigint(&scale))
            .to_interval()
    });
    if g == 1 {
        return (BoundInterval::point(0.0), upper);
    }
    let factor = BigRational::new(BigInt::from(q).pow(g as u32 - 1) - 1u32, BigInt::from(g))
        * BigRational::new(BigInt::from(nx + q - 1), BigInt::from(q - 1));
    let s = q.isqrt();
    let lower = if s * s == q {
        let head = BigRational::from_integer(BigInt::from((s - 1) * (s - 1)));
        BoundInterval::from_ratio(&(head * factor))
    } else {
        let sq = Enclosure::from_u128(q).sqrt();
        let one = Enclosure::from_u128(1);
        sq.sub(&one)
            .powi(2)
            .mul(&Enclosure::from_ratio(&factor))
            .to_interval()
    };
    (lower, upper)
}

mod big_str {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::from_str(&s).map_err(Error::custom)
    }
}

/// Every bound evaluated for one cover, together with the verdicts of the
/// conservative-end comparisons. Orders serialize as decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub q: u128,
    pub g: usize,
    pub nx: u128,
    pub ny: u128,
    pub d: i128,
    pub delta: u8,
    #[serde(with = "big_str")]
    pub prym_order: BigUint,
    pub thm2_lower: BoundInterval,
    pub thm2_upper: BoundInterval,
    /// The deviation term alone, with the integrality discount removed.
    pub thm2_lower_delta0: BoundInterval,
    pub thm2_iii_lower: Option<BoundInterval>,
    pub thm2_iii_upper: Option<BoundInterval>,
    /// Weil interval for the Prym order (dimension g-1).
    pub weil_lower: BoundInterval,
    pub weil_upper: BoundInterval,
    #[serde(with = "big_str")]
    pub jac_order: BigUint,
    #[serde(with = "big_str")]
    pub jy_order: BigUint,
    pub delta5: u8,
    pub thm5_lower: BoundInterval,
    pub thm5_upper: BoundInterval,
    pub weil_jx_lower: BoundInterval,
    pub weil_jx_upper: BoundInterval,
    pub weil_jy_lower: BoundInterval,
    pub weil_jy_upper: BoundInterval,
    pub lmd_lower: BoundInterval,
    pub lmd_upper: Option<BoundInterval>,
    pub tightness_thm2: f64,
    pub tightness_thm5: f64,
    pub sandwich_ok: bool,
    pub gonality_ok: Option<bool>,
    pub thm5_ok: bool,
    pub weil_prym_ok: bool,
    pub weil_jx_ok: bool,
    pub weil_jy_ok: bool,
    pub order_product_ok: bool,
    pub lower_dominates_weil: bool,
    pub upper_dominates_weil: bool,
    pub stripped_lower_dominates_weil: bool,
}

pub const CSV_HEADER: &str = "q,g,NX,NY,D,delta,prym_order,thm2_lo,thm2_hi,weil_lo,weil_hi,\
thm2iii_lo,thm2iii_hi,jac_order,thm5_lo,thm5_hi,lmd_lo,lmd_hi";

impl BoundsReport {
    /// One CSV row under [`CSV_HEADER`]. Bound columns carry the outer
    /// interval end (lower bounds their lo, upper bounds their hi), so a
    /// reader comparing the row against exact orders stays conservative.
    pub fn csv_row(&self) -> String {
        let lo = |iv: Option<BoundInterval>| iv.map(|v| v.lo.to_string()).unwrap_or_default();
        let hi = |iv: Option<BoundInterval>| iv.map(|v| v.hi.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.q,
            self.g,
            self.nx,
            self.ny,
            self.d,
            self.delta,
            self.prym_order,
            self.thm2_lower.lo,
            self.thm2_upper.hi,
            self.weil_lower.lo,
            self.weil_upper.hi,
            lo(self.thm2_iii_lower),
            hi(self.thm2_iii_upper),
            self.jac_order,
            self.thm5_lower.lo,
            self.thm5_upper.hi,
            self.lmd_lower.lo,
            hi(self.lmd_upper),
        )
    }
}

/// Evaluates every bound for one cover and checks each against the exact
/// orders on conservative interval ends.
///
/// Panics if a provably true containment fails, which would mean an
/// arithmetic bug rather than bad data: the upper bound never exceeds the
/// Weil ceiling on the admissible deviation range, the delta-free lower
/// bound never drops below the Weil floor, and with delta = 0 the honest
/// lower bound does not either. With delta = 1 the lower bound genuinely can
/// dip below the Weil floor (the discount is a fixed factor while the floor
/// is attained only at the range edge), so that comparison is reported, not
/// asserted.
pub fn build_report(
    stats: &CoverStats,
    prym_order: &BigUint,
    jx_order: &BigUint,
    jy_order: &BigUint,
) -> BoundsReport {
    let (q, g) = (stats.q(), stats.g());
    let dev = stats.d();
    let delta = stats.delta();
    let t2_lower = thm2_lower(stats);
    let t2_upper = thm2_upper(stats);
    let t2_lower_delta0 = thm2_lower_raw_with_delta(q, g, dev, 0).expect("stats were validated");
    let (weil_lower, weil_upper) = weil_interval(q, g - 1);
    let iii = stats
        .gonality()
        .map(|_| thm2_gonality(stats).expect("gonality is present"));
    let (t5_lower, t5_upper, delta5) =
        thm5_bounds(q, g, stats.nx()).expect("genuine point counts stay in the Weil range");
    let (weil_jx_lower, weil_jx_upper) = weil_interval(q, g);
    let (weil_jy_lower, weil_jy_upper) = weil_interval(q, 2 * g - 1);
    let (lmd_lower, lmd_upper) = lmd_bounds(q, g, stats.nx(), stats.gonality());

    let upper_dominates_weil = t2_upper.certainly_le(&weil_upper);
    let stripped_lower_dominates_weil = t2_lower_delta0.certainly_ge(&weil_lower);
    let lower_dominates_weil = t2_lower.certainly_ge(&weil_lower);
    assert!(
        upper_dominates_weil,
        "upper bound escaped the Weil ceiling at q={q} g={g} D={dev}"
    );
    assert!(
        stripped_lower_dominates_weil,
        "delta-free lower bound fell below the Weil floor at q={q} g={g} D={dev}"
    );
    if delta == 0 {
        assert!(
            lower_dominates_weil,
            "lower bound fell below the Weil floor with delta = 0 at q={q} g={g} D={dev}"
        );
    }

    let sandwich_ok =
        t2_lower.certainly_at_most(prym_order) && t2_upper.certainly_at_least(prym_order);
    let gonality_ok = iii
        .as_ref()
        .map(|(lo, hi)| lo.certainly_at_most(prym_order) && hi.certainly_at_least(prym_order));
    let thm5_ok = t5_lower.certainly_at_most(jx_order) && t5_upper.certainly_at_least(jx_order);
    let weil_prym_ok =
        weil_lower.certainly_at_most(prym_order) && weil_upper.certainly_at_least(prym_order);
    let weil_jx_ok =
        weil_jx_lower.certainly_at_most(jx_order) && weil_jx_upper.certainly_at_least(jx_order);
    let weil_jy_ok =
        weil_jy_lower.certainly_at_most(jy_order) && weil_jy_upper.certainly_at_least(jy_order);
    let order_product_ok = prym_order * jx_order == *jy_order;

    BoundsReport {
        q,
        g,
        nx: stats.nx(),
        ny: stats.ny(),
        d: dev,
        delta,
        prym_order: prym_order.clone(),
        thm2_lower: t2_lower,
        thm2_upper: t2_upper,
        thm2_lower_delta0: t2_lower_delta0,
        thm2_iii_lower: iii.map(|(lo, _)| lo),
        thm2_iii_upper: iii.map(|(_, hi)| hi),
        weil_lower,
        weil_upper,
        jac_order: jx_order.clone(),
        jy_order: jy_order.clone(),
        delta5,
        thm5_lower: t5_lower,
        thm5_upper: t5_upper,
        weil_jx_lower,
        weil_jx_upper,
        weil_jy_lower,
        weil_jy_upper,
        lmd_lower,
        lmd_upper,
        tightness_thm2: t2_upper.hi / t2_lower.lo,
        tightness_thm5: t5_upper.hi / t5_lower.lo,
        sandwich_ok,
        gonality_ok,
        thm5_ok,
        weil_prym_ok,
        weil_jx_ok,
        weil_jy_ok,
        order_product_ok,
        lower_dominates_weil,
        upper_dominates_weil,
        stripped_lower_dominates_weil,
    }
}

//! Directed-rounding enclosures backing every bound evaluation.
//!
//! Formulas involving sqrt(q), ln, exp, and Euler's constant are evaluated
//! twice at 256-bit precision, once rounding every step toward -inf and once
//! toward +inf. The resulting [`Enclosure`] brackets the exact real value,
//! and collapsing it to `f64` keeps the bracket by nudging each end outward.

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub(crate) const PREC: usize = 256;

const DOWN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn bf_cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    let c = a.cmp(b).expect("NaN in enclosure arithmetic");
    c.cmp(&0)
}

/// Two-sided 256-bit enclosure of a real number: `lo <= value <= hi`.
///
/// Each operation rounds the left end down and the right end up, so the
/// invariant survives arbitrary composition.
#[derive(Debug, Clone)]
pub(crate) struct Enclosure {
    lo: BigFloat,
    hi: BigFloat,
}

impl Enclosure {
    fn make(lo: BigFloat, hi: BigFloat) -> Self {
        debug_assert!(bf_cmp(&lo, &hi) != Ordering::Greater);
        Enclosure { lo, hi }
    }

    pub fn from_u128(v: u128) -> Self {
        let x = BigFloat::from_u128(v, PREC);
        Enclosure::make(x.clone(), x)
    }

    pub fn from_i128(v: i128) -> Self {
        let x = BigFloat::from_i128(v, PREC);
        Enclosure::make(x.clone(), x)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let s = n.to_string();
        let lo = with_cc(|cc| BigFloat::parse(&s, Radix::Dec, PREC, DOWN, cc));
        let hi = with_cc(|cc| BigFloat::parse(&s, Radix::Dec, PREC, UP, cc));
        Enclosure::make(lo, hi)
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Enclosure::from_bigint(r.numer()).div(&Enclosure::from_bigint(r.denom()))
    }

    /// Euler's constant e; the only place its digits enter the crate.
    pub fn e() -> Self {
        let lo = with_cc(|cc| cc.e(PREC, DOWN));
        let hi = with_cc(|cc| cc.e(PREC, UP));
        Enclosure::make(lo, hi)
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        Enclosure::make(self.lo.add(&o.lo, PREC, DOWN), self.hi.add(&o.hi, PREC, UP))
    }

    pub fn sub(&self, o: &Enclosure) -> Enclosure {
        Enclosure::make(self.lo.sub(&o.hi, PREC, DOWN), self.hi.sub(&o.lo, PREC, UP))
    }

    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in pairs {
            let d = a.mul(b, PREC, DOWN);
            let u = a.mul(b, PREC, UP);
            lo = Some(match lo {
                Some(x) if bf_cmp(&x, &d) != Ordering::Greater => x,
                _ => d,
            });
            hi = Some(match hi {
                Some(x) if bf_cmp(&x, &u) != Ordering::Less => x,
                _ => u,
            });
        }
        Enclosure::make(lo.unwrap(), hi.unwrap())
    }

    pub fn div(&self, o: &Enclosure) -> Enclosure {
        let pos = o.lo.is_positive() && !o.lo.is_zero();
        let neg = o.hi.is_negative() && !o.hi.is_zero();
        assert!(pos || neg, "division by an interval containing zero");
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in pairs {
            let d = a.div(b, PREC, DOWN);
            let u = a.div(b, PREC, UP);
            lo = Some(match lo {
                Some(x) if bf_cmp(&x, &d) != Ordering::Greater => x,
                _ => d,
            });
            hi = Some(match hi {
                Some(x) if bf_cmp(&x, &u) != Ordering::Less => x,
                _ => u,
            });
        }
        Enclosure::make(lo.unwrap(), hi.unwrap())
    }

    pub fn sqrt(&self) -> Enclosure {
        assert!(!self.lo.is_negative(), "sqrt of an interval below zero");
        Enclosure::make(self.lo.sqrt(PREC, DOWN), self.hi.sqrt(PREC, UP))
    }

    pub fn ln(&self) -> Enclosure {
        assert!(
            self.lo.is_positive() && !self.lo.is_zero(),
            "ln of an interval touching zero"
        );
        let lo = with_cc(|cc| self.lo.ln(PREC, DOWN, cc));
        let hi = with_cc(|cc| self.hi.ln(PREC, UP, cc));
        Enclosure::make(lo, hi)
    }

    pub fn exp(&self) -> Enclosure {
        let lo = with_cc(|cc| self.lo.exp(PREC, DOWN, cc));
        let hi = with_cc(|cc| self.hi.exp(PREC, UP, cc));
        Enclosure::make(lo, hi)
    }

    /// Integer power of a nonnegative interval.
    pub fn powi(&self, n: usize) -> Enclosure {
        assert!(!self.lo.is_negative(), "powi needs a nonnegative interval");
        Enclosure::make(self.lo.powi(n, PREC, DOWN), self.hi.powi(n, PREC, UP))
    }

    pub fn to_interval(&self) -> BoundInterval {
        BoundInterval::new(f64_directed(&self.lo, true), f64_directed(&self.hi, false))
    }
}

/// Largest f64 not above `x` (down = true) or smallest not below it.
fn f64_directed(x: &BigFloat, down: bool) -> f64 {
    assert!(!x.is_nan() && !x.is_inf(), "non-finite enclosure end");
    if x.is_zero() {
        return 0.0;
    }
    let rm = if down { DOWN } else { UP };
    let s = with_cc(|cc| x.format(Radix::Dec, rm, cc)).expect("decimal format");
    let mut v: f64 = s.parse().expect("parse of formatted float");
    // The decimal round trip is off by at most one ulp; fix the direction
    // exactly by comparing against the original.
    loop {
        let back = BigFloat::from_f64(v, PREC);
        match (down, bf_cmp(&back, x)) {
            (true, Ordering::Greater) => v = v.next_down(),
            (false, Ordering::Less) => v = v.next_up(),
            _ => return v,
        }
    }
}

/// Closed `f64` interval certified to contain the exact value of a bound
/// formula. `lo` is rounded toward -inf and `hi` toward +inf, so testing an
/// inequality against the conservative end can never claim more than the
/// exact arithmetic would.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub lo: f64,
    pub hi: f64,
}

impl BoundInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo.is_finite() && hi.is_finite(), "bound overflows f64");
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        BoundInterval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        BoundInterval::new(v, v)
    }

    /// Tightest f64 interval around an exact rational value.
    pub fn from_ratio(r: &BigRational) -> Self {
        Enclosure::from_ratio(r).to_interval()
    }

    /// Precision contract: the two ends agree to twelve decimal digits.
    pub fn width_ok(&self) -> bool {
        self.hi - self.lo <= 1e-12 * self.hi.abs().max(1.0)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// True value of `self` is at most `other`'s, checked on conservative ends.
    pub fn certainly_le(&self, other: &BoundInterval) -> bool {
        self.hi <= other.lo
    }

    /// True value of `self` is at least `other`'s, checked on conservative ends.
    pub fn certainly_ge(&self, other: &BoundInterval) -> bool {
        self.lo >= other.hi
    }

    /// Exact check that the value this interval encloses is <= n.
    pub fn certainly_at_most(&self, n: &BigUint) -> bool {
        cmp_f64_uint(self.hi, n) != Ordering::Greater
    }

    /// Exact check that the value this interval encloses is >= n.
    pub fn certainly_at_least(&self, n: &BigUint) -> bool {
        cmp_f64_uint(self.lo, n) != Ordering::Less
    }

    pub fn contains_uint(&self, n: &BigUint) -> bool {
        cmp_f64_uint(self.lo, n) != Ordering::Greater && cmp_f64_uint(self.hi, n) != Ordering::Less
    }
}

fn cmp_f64_uint(x: f64, n: &BigUint) -> Ordering {
    let xr = BigRational::from_float(x).expect("finite interval end");
    xr.cmp(&BigRational::from_integer(BigInt::from(n.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i128, d: i128) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn as_rat(x: f64) -> BigRational {
        BigRational::from_float(x).expect("finite")
    }

    #[test]
    fn integer_points_are_exact() {
        for v in [0u128, 1, 2, 16, 10_000_000_019, 1 << 52] {
            let iv = Enclosure::from_u128(v).to_interval();
            assert_eq!(iv.lo, iv.hi);
            assert_eq!(as_rat(iv.lo), BigRational::from_integer(BigInt::from(v)));
        }
        let iv = Enclosure::from_i128(-37).to_interval();
        assert_eq!(iv, BoundInterval::point(-37.0));
        // beyond 2^53 the f64 ends must bracket the integer, not equal it
        let big = u64::MAX as u128;
        let iv = Enclosure::from_u128(big).to_interval();
        let n = BigRational::from_integer(BigInt::from(big));
        assert!(as_rat(iv.lo) < n && n < as_rat(iv.hi));
        assert!(iv.lo < iv.hi);
        assert!(iv.width_ok());
    }

    #[test]
    fn random_rationals_stay_bracketed() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..300 {
            let n = rng.gen_range(-1_000_000_000_000_000_000i128..=1_000_000_000_000_000_000);
            let d = rng.gen_range(1i128..=1_000_000_000);
            let r = rat(n, d);
            let iv = BoundInterval::from_ratio(&r);
            assert!(as_rat(iv.lo) <= r, "lo end drifted above {r}");
            assert!(as_rat(iv.hi) >= r, "hi end drifted below {r}");
            assert!(iv.width_ok(), "loose interval for {r}: {iv:?}");
        }
    }

    #[test]
    fn sqrt_two_brackets() {
        let iv = Enclosure::from_u128(2).sqrt().to_interval();
        let two = BigRational::from_integer(BigInt::from(2));
        assert!(as_rat(iv.lo).pow(2) <= two);
        assert!(as_rat(iv.hi).pow(2) >= two);
        assert!(iv.lo < iv.hi);
        assert!(iv.width_ok());
    }

    #[test]
    fn log_exp_round_trip_contains_input() {
        let x = Enclosure::from_ratio(&rat(7, 3));
        let back = x.ln().exp().to_interval();
        assert!(back.contains(7.0 / 3.0));
        assert!(back.width_ok());

        let zero = Enclosure::from_u128(1).ln().to_interval();
        assert_eq!(zero, BoundInterval::point(0.0));
    }

    #[test]
    fn euler_constant_digits() {
        let iv = Enclosure::e().to_interval();
        // 2.71828182845904523536028747135266249775... truncated and bumped
        let below = rat(271828182845904523536028747135, 1) / rat(10i128.pow(29), 1);
        let above = rat(271828182845904523536028747136, 1) / rat(10i128.pow(29), 1);
        assert!(as_rat(iv.lo) <= above);
        assert!(as_rat(iv.hi) >= below);
        assert!(iv.width_ok());
    }

    #[test]
    fn mul_handles_mixed_signs() {
        let a = Enclosure::from_i128(-2).add(&Enclosure::from_u128(0)); // [-2, -2]
        let b = Enclosure::from_i128(3);
        let ab = a.mul(&b).to_interval();
        assert_eq!(ab, BoundInterval::point(-6.0));

        // [-2, 3] * [-5, 7] = [-15, 21]
        let lo2 = Enclosure {
            lo: BigFloat::from_i128(-2, PREC),
            hi: BigFloat::from_i128(3, PREC),
        };
        let hi2 = Enclosure {
            lo: BigFloat::from_i128(-5, PREC),
            hi: BigFloat::from_i128(7, PREC),
        };
        let prod = lo2.mul(&hi2).to_interval();
        assert_eq!(prod, BoundInterval::new(-15.0, 21.0));
    }

    #[test]
    fn div_brackets_one_third() {
        let iv = Enclosure::from_u128(1)
            .div(&Enclosure::from_u128(3))
            .to_interval();
        let third = rat(1, 3);
        assert!(as_rat(iv.lo) <= third && third <= as_rat(iv.hi));
        assert!(iv.lo < iv.hi); // not representable, so the bracket is proper
        assert!(iv.width_ok());
    }

    #[test]
    #[should_panic(expected = "containing zero")]
    fn div_through_zero_panics() {
        let z = Enclosure {
            lo: BigFloat::from_i128(-1, PREC),
            hi: BigFloat::from_i128(1, PREC),
        };
        let _ = Enclosure::from_u128(1).div(&z);
    }

    #[test]
    fn powi_matches_exact_rational_power() {
        let base = rat(7, 5);
        let iv = Enclosure::from_ratio(&base).powi(11).to_interval();
        let exact = base.pow(11);
        assert!(as_rat(iv.lo) <= exact && exact <= as_rat(iv.hi));
        assert!(iv.width_ok());
        // power zero is the exact point 1
        let one = Enclosure::from_ratio(&rat(9, 7)).powi(0).to_interval();
        assert_eq!(one, BoundInterval::point(1.0));
    }

    #[test]
    fn integer_comparisons_are_exact() {
        let sixteen = BigUint::from(16u32);
        assert!(BoundInterval::point(16.0).contains_uint(&sixteen));
        assert!(BoundInterval::point(16.0).certainly_at_most(&sixteen));
        assert!(BoundInterval::point(16.0).certainly_at_least(&sixteen));
        assert!(!BoundInterval::new(16.0f64.next_up(), 17.0).contains_uint(&sixteen));
        assert!(!BoundInterval::new(15.0, 16.0f64.next_down()).contains_uint(&sixteen));
        // a huge integer that f64 cannot represent exactly still compares correctly
        let big = BigUint::from(1u128 << 100) + BigUint::one();
        let below = (1u128 << 100) as f64;
        assert_eq!(cmp_f64_uint(below, &big), Ordering::Less);
    }

    #[test]
    fn conservative_interval_comparisons() {
        let a = BoundInterval::new(1.0, 2.0);
        let b = BoundInterval::new(2.0, 3.0);
        assert!(a.certainly_le(&b));
        assert!(b.certainly_ge(&a));
        assert!(!b.certainly_le(&a));
        let overlap = BoundInterval::new(1.5, 2.5);
        assert!(!a.certainly_le(&overlap) || a.hi <= overlap.lo);
    }

    #[test]
    fn enclosure_signs_and_zero() {
        assert!(Enclosure::from_u128(0).to_interval() == BoundInterval::point(0.0));
        let neg = Enclosure::from_i128(-5);
        assert!(neg.lo.is_negative());
        let sum = neg.add(&Enclosure::from_u128(5)).to_interval();
        assert_eq!(sum, BoundInterval::point(0.0));
        assert!(as_rat(sum.lo).is_zero());
    }
}

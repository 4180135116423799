//! Extremal values of prod(a - x_k) on the slice of the box [-1,1]^gamma cut
//! by sum(x_k) = b.
//!
//! The closed-form floor and ceiling are the two halves of the deviation
//! bounds: the floor ((a-1)/(a+1))^((b+2 delta)/2) (a^2-1)^(gamma/2) and the
//! ceiling (a - b/gamma)^gamma. Alongside them sit an exact minimizer search
//! over the extremal candidates and a dense-grid oracle, so the chain
//! floor <= exact minimum <= grid min <= grid max <= ceiling
//! is checkable instead of trusted.

use rayon::prelude::*;
use thiserror::Error;

/// Slack allowed on the dependent coordinate when classifying grid samples
/// as feasible; keeps boundary vertices from being lost to rounding.
const FEAS_SLACK: f64 = 1e-12;

/// Cap on the number of grid samples the oracle will evaluate.
const ORACLE_BUDGET: usize = 100_000_000;

/// Largest gamma the oracle accepts; beyond it even coarse grids explode.
const ORACLE_MAX_GAMMA: usize = 6;

#[derive(Debug, Error, PartialEq)]
pub enum PolytopeError {
    #[error("a must be a finite real > 1, got {0}")]
    BadA(f64),
    #[error("b must be finite with |b| <= gamma, got b = {b} for gamma = {gamma}")]
    BadB { b: f64, gamma: usize },
    #[error("the oracle supports gamma <= {max}, got {gamma}")]
    GammaTooLarge { gamma: usize, max: usize },
    #[error("oracle resolution must lie in [1/256, 2], got {0}")]
    BadResolution(f64),
    #[error("oracle grid of {samples} samples exceeds the budget of {budget}")]
    OracleBudget { samples: usize, budget: usize },
    #[error("no feasible extremal candidate; the problem data are inconsistent")]
    NoCandidate,
}

/// One instance of the slice problem: minimize or maximize prod(a - x_k)
/// over x in [-1,1]^gamma with sum(x_k) = b.
///
/// Requires a > 1: the source application always has a = (q+1)/(2 sqrt q),
/// and a <= 1 would let factors vanish or change sign on the box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolytopeProblem {
    a: f64,
    gamma: usize,
    b: f64,
}

impl PolytopeProblem {
    pub fn new(a: f64, gamma: usize, b: f64) -> Result<Self, PolytopeError> {
        if !(a.is_finite() && a > 1.0) {
            return Err(PolytopeError::BadA(a));
        }
        if !(b.is_finite() && b.abs() <= gamma as f64) {
            return Err(PolytopeError::BadB { b, gamma });
        }
        Ok(PolytopeProblem { a, gamma, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Fractional part of b, in [0, 1).
    pub fn frac(&self) -> f64 {
        self.b - self.b.floor()
    }

    /// 0 iff b is an integer (decided on the exact binary value of b).
    pub fn delta(&self) -> u8 {
        u8::from(self.b != self.b.floor())
    }

    #[cfg(test)]
    fn product(&self, coords: impl IntoIterator<Item = f64>) -> f64 {
        coords.into_iter().map(|x| self.a - x).product()
    }
}

/// An extremal candidate: n coordinates at +1, m at -1, and at most one
/// interior coordinate beta.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalPoint {
    pub n: usize,
    pub m: usize,
    pub beta: Option<f64>,
    pub value: f64,
}

impl ExtremalPoint {
    /// The coordinates in canonical order (1, ..., 1, -1, ..., -1, beta).
    pub fn coordinates(&self) -> Vec<f64> {
        let mut c = Vec::with_capacity(self.n + self.m + usize::from(self.beta.is_some()));
        c.extend(std::iter::repeat(1.0).take(self.n));
        c.extend(std::iter::repeat(-1.0).take(self.m));
        c.extend(self.beta);
        c
    }
}

/// Closed-form floor ((a-1)/(a+1))^((b+2 delta)/2) (a^2-1)^(gamma/2);
/// gamma = 0 (forcing b = 0) gives the empty product 1.
pub fn lemma3_bound(p: &PolytopeProblem) -> f64 {
    if p.gamma == 0 {
        return 1.0;
    }
    let ratio = (p.a - 1.0) / (p.a + 1.0);
    let exponent = (p.b + 2.0 * p.delta() as f64) / 2.0;
    ratio.powf(exponent) * (p.a * p.a - 1.0).powf(p.gamma as f64 / 2.0)
}

/// Closed-form ceiling (a - b/gamma)^gamma, attained at the uniform point;
/// gamma = 0 gives (1, empty point).
pub fn lemma4_max(p: &PolytopeProblem) -> (f64, Vec<f64>) {
    if p.gamma == 0 {
        return (1.0, Vec::new());
    }
    let u = p.b / p.gamma as f64;
    ((p.a - u).powi(p.gamma as i32), vec![u; p.gamma])
}

/// Exact minimum of the product over the slice, found by enumerating every
/// extremal candidate: the pure +-1 vertex when b is an integer of the right
/// parity, and each point with one interior coordinate beta = b - (n - m),
/// |beta| < 1. Ties go to the candidate with the smallest n.
///
/// When b is an integer but gamma - b is odd, the pure vertex is infeasible
/// and only interior candidates remain; the closed-form floor still uses
/// delta = 0 there, so it undershoots the true minimum. That gap is real and
/// is reported by the callers, not patched over.
pub fn exact_min(p: &PolytopeProblem) -> Result<ExtremalPoint, PolytopeError> {
    let gamma = p.gamma;
    let mut best: Option<ExtremalPoint> = None;
    let mut offer = |cand: ExtremalPoint| {
        let better = match &best {
            None => true,
            Some(cur) => {
                cand.value < cur.value || (cand.value == cur.value && cand.n < cur.n)
            }
        };
        if better {
            best = Some(cand);
        }
    };

    if p.delta() == 0 {
        let bi = p.b as i64;
        if (gamma as i64 - bi).rem_euclid(2) == 0 {
            let n = ((gamma as i64 + bi) / 2) as usize;
            let m = gamma - n;
            offer(ExtremalPoint {
                n,
                m,
                beta: None,
                value: (p.a - 1.0).powi(n as i32) * (p.a + 1.0).powi(m as i32),
            });
        }
    }
    for n in 0..gamma {
        let m = gamma - 1 - n;
        let beta = p.b - (n as f64 - m as f64);
        if beta.abs() < 1.0 {
            offer(ExtremalPoint {
                n,
                m,
                beta: Some(beta),
                value: (p.a - 1.0).powi(n as i32)
                    * (p.a + 1.0).powi(m as i32)
                    * (p.a - beta),
            });
        }
    }
    best.ok_or(PolytopeError::NoCandidate)
}

/// Worst-case drift of the product between neighboring grid samples:
/// gamma * resolution * (a+1)^gamma / (a-1) bounds how far the grid min/max
/// can sit from the true extrema.
pub fn grid_tolerance(p: &PolytopeProblem, resolution: f64) -> f64 {
    p.gamma as f64 * resolution * (p.a + 1.0).powi(p.gamma as i32) / (p.a - 1.0)
}

/// Brute-force extrema over the grid with the given step: the free
/// coordinates x_1..x_(gamma-1) run over the grid on [-1,1] and the last
/// coordinate is solved from the slice equation (samples pushing it off the
/// box are skipped). Returns (min, max) over all feasible samples.
pub fn oracle_extrema(
    p: &PolytopeProblem,
    resolution: f64,
) -> Result<(f64, f64), PolytopeError> {
    if p.gamma > ORACLE_MAX_GAMMA {
        return Err(PolytopeError::GammaTooLarge {
            gamma: p.gamma,
            max: ORACLE_MAX_GAMMA,
        });
    }
    if !(resolution >= 1.0 / 256.0 && resolution <= 2.0) {
        return Err(PolytopeError::BadResolution(resolution));
    }
    if p.gamma == 0 {
        return Ok((1.0, 1.0));
    }
    let free = p.gamma - 1;
    if free == 0 {
        // the slice is the single point x = (b)
        let v = p.a - p.b;
        return Ok((v, v));
    }
    let steps = (2.0 / resolution).round() as usize;
    let samples = (steps + 1)
        .checked_pow(free as u32)
        .filter(|&s| s <= ORACLE_BUDGET)
        .ok_or(PolytopeError::OracleBudget {
            samples: usize::MAX,
            budget: ORACLE_BUDGET,
        })?;
    let _ = samples;

    let (a, b) = (p.a, p.b);
    let (lo, hi) = (0..=steps)
        .into_par_iter()
        .map(|i0| {
            let x0 = -1.0 + i0 as f64 * resolution;
            let mut idx = vec![0usize; free - 1];
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            loop {
                let mut sum = x0;
                let mut prod = a - x0;
                for &i in &idx {
                    let x = -1.0 + i as f64 * resolution;
                    sum += x;
                    prod *= a - x;
                }
                let last = b - sum;
                if last.abs() <= 1.0 + FEAS_SLACK {
                    let v = prod * (a - last);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return (lo, hi);
                    }
                    idx[k] += 1;
                    if idx[k] <= steps {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        })
        .reduce(
            || (f64::INFINITY, f64::NEG_INFINITY),
            |x, y| (x.0.min(y.0), x.1.max(y.1)),
        );
    if !lo.is_finite() {
        // endpoints of the grid always give a feasible sample when |b| <= gamma
        return Err(PolytopeError::NoCandidate);
    }
    Ok((lo, hi))
}

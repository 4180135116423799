//! Exact arithmetic in F_p and F_{p^k} for odd p: quadratic-residue tests,
//! irreducible-modulus discovery, field enumeration and subfield embeddings.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

mod poly;
pub use poly::{find_irreducible, is_irreducible, Poly};

/// Default cap on the number of field elements any single enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    MismatchedFields,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("field of order {order} exceeds the enumeration budget of {budget} elements")]
    BudgetExceeded { order: u128, budget: u64 },
    #[error("irreducibility test requires a polynomial over a prime field")]
    NotPrimeField,
    #[error("cannot embed degree-{small} field into degree-{big} field (not a subfield)")]
    IncompatibleDegrees { small: usize, big: usize },
    #[error("subfield modulus has no root in the target field")]
    NoRoot,
    #[error("cannot parse {0:?} as a polynomial")]
    BadPolynomial(String),
}

/// Deterministic Miller-Rabin, exact for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let powmod = |mut b: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = ((acc as u128 * b as u128) % n as u128) as u64;
            }
            b = ((b as u128 * b as u128) % n as u128) as u64;
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Arithmetic on polynomials over F_p, represented as ascending coefficient
/// vectors with no trailing zeros (the zero polynomial is the empty vector).
pub(crate) mod fp {
    pub fn addp(a: u64, b: u64, p: u64) -> u64 {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    pub fn subp(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    pub fn mulp(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn powp(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulp(acc, b, p);
            }
            b = mulp(b, b, p);
            e >>= 1;
        }
        acc
    }

    pub fn invp(a: u64, p: u64) -> u64 {
        debug_assert!(a % p != 0);
        powp(a, p - 2, p)
    }

    pub fn norm(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = subp(x, y, p);
        }
        norm(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = addp(out[i + j], mulp(x, y, p), p);
            }
        }
        norm(out)
    }

    pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
        norm(a.iter().map(|&x| mulp(x, c, p)).collect())
    }

    /// Quotient and remainder; divisor must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let db = b.len() - 1;
        let inv_lead = invp(b[db], p);
        let mut rem: Vec<u64> = norm(a.to_vec());
        if rem.len() <= db {
            return (vec![], rem);
        }
        let mut quot = vec![0u64; rem.len() - db];
        while rem.len() > db {
            let dr = rem.len() - 1;
            let c = mulp(rem[dr], inv_lead, p);
            if c != 0 {
                quot[dr - db] = c;
                for j in 0..=db {
                    rem[dr - db + j] = subp(rem[dr - db + j], mulp(c, b[j], p), p);
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (norm(quot), rem)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    /// Monic gcd.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r0 = norm(a.to_vec());
        let mut r1 = norm(b.to_vec());
        while !r1.is_empty() {
            let r = rem(&r0, &r1, p);
            r0 = r1;
            r1 = r;
        }
        if let Some(&lead) = r0.last() {
            if lead != 1 {
                return scale(&r0, invp(lead, p), p);
            }
        }
        r0
    }

    /// Returns (g, s) with s*a = g (mod m), g the monic gcd of a and m.
    pub fn ext_gcd(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r0 = norm(a.to_vec());
        let mut r1 = norm(m.to_vec());
        let mut s0: Vec<u64> = vec![1];
        let mut s1: Vec<u64> = vec![];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if let Some(&lead) = r0.last() {
            if lead != 1 {
                let c = invp(lead, p);
                return (scale(&r0, c, p), scale(&s0, c, p));
            }
        }
        (r0, s0)
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), m, p)
    }

    /// h^e mod m for a machine-word exponent.
    pub fn powmod(h: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(h, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin test: m irreducible over F_p iff x^{p^k} = x (mod m) and
    /// gcd(x^{p^{k/r}} - x, m) = 1 for every prime r dividing k.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = m.len() - 1;
        debug_assert!(k >= 1 && *m.last().unwrap() == 1);
        if k == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        // x^{p^j} is j applications of the Frobenius h -> h^p.
        let frob_iter = |mut h: Vec<u64>, times: usize| -> Vec<u64> {
            for _ in 0..times {
                h = powmod(&h, p, m, p);
            }
            h
        };
        let mut rs = vec![];
        let mut n = k;
        let mut r = 2;
        while r * r <= n {
            if n % r == 0 {
                rs.push(r);
                while n % r == 0 {
                    n /= r;
                }
            }
            r += 1;
        }
        if n > 1 {
            rs.push(n);
        }
        for &r in &rs {
            let h = frob_iter(x.clone(), k / r);
            let g = gcd(&sub(&h, &x, p), m, p);
            if g.len() != 1 {
                return false;
            }
        }
        let h = frob_iter(x.clone(), k);
        sub(&h, &x, p).is_empty()
    }
}

#[derive(Debug)]
struct FieldInner {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
}

/// A finite field F_{p^k} of odd characteristic, presented as F_p[t]/(modulus).
/// Cheap to clone; all element operations go through a shared descriptor.
#[derive(Clone, Debug)]
pub struct FieldDesc {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}
impl Eq for FieldDesc {}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "{}", self.inner.p)
        } else {
            write!(f, "{}^{}", self.inner.p, self.inner.k)
        }
    }
}

impl FieldDesc {
    /// The prime field F_p. The modulus is the identity polynomial x.
    pub fn prime(p: u64) -> Result<FieldDesc, FieldError> {
        if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        Ok(FieldDesc {
            inner: Arc::new(FieldInner {
                p,
                k: 1,
                modulus: vec![0, 1],
            }),
        })
    }

    /// F_{p^k} with the first irreducible modulus in lexicographic order.
    pub fn extension(p: u64, k: usize) -> Result<FieldDesc, FieldError> {
        let m = find_irreducible(p, k, 0)?;
        Self::with_modulus(p, m.residues())
    }

    /// F_{p^k} with an explicitly chosen monic irreducible modulus
    /// (ascending coefficients, length k+1).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<FieldDesc, FieldError> {
        if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        if modulus.len() < 2 {
            return Err(FieldError::BadDegree);
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(FieldError::NotMonic);
        }
        if !fp::is_irreducible(&modulus, p) {
            let s = modulus
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            return Err(FieldError::NotIrreducible(s));
        }
        let k = modulus.len() - 1;
        Ok(FieldDesc {
            inner: Arc::new(FieldInner { p, k, modulus }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn k(&self) -> usize {
        self.inner.k
    }

    /// Field order p^k.
    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..self.inner.k {
            acc = acc.checked_mul(self.inner.p as u128).expect("field order overflow");
        }
        acc
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.inner.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.element(&[1])
    }

    /// Element from ascending residue coefficients (padded/reduced as needed).
    pub fn element(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.inner.k, "coefficient vector too long");
        let mut c = vec![0u64; self.inner.k];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v % self.inner.p;
        }
        FieldElement {
            field: self.clone(),
            coeffs: c,
        }
    }

    /// The element whose base-p digit expansion is `idx` (inverse of `FieldElement::index`).
    pub fn from_index(&self, idx: u128) -> FieldElement {
        debug_assert!(idx < self.order());
        let p = self.inner.p as u128;
        let mut c = vec![0u64; self.inner.k];
        let mut v = idx;
        for slot in c.iter_mut() {
            *slot = (v % p) as u64;
            v /= p;
        }
        FieldElement {
            field: self.clone(),
            coeffs: c,
        }
    }

    /// Iterator over all p^k elements in index order. Errors when the field
    /// order exceeds `budget`.
    pub fn elements(&self, budget: u64) -> Result<Elements, FieldError> {
        let order = self.order();
        if order > budget as u128 {
            return Err(FieldError::BudgetExceeded { order, budget });
        }
        Ok(Elements {
            field: self.clone(),
            next: 0,
            order,
        })
    }
}

/// Enumeration stream over a full field.
pub struct Elements {
    field: FieldDesc,
    next: u128,
    order: u128,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.order {
            return None;
        }
        let e = self.field.from_index(self.next);
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.order - self.next) as usize;
        (n, Some(n))
    }
}

/// Quadratic character of a field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Legendre {
    Zero,
    Square,
    NonSquare,
}

/// An element of F_{p^k}: a residue-class vector of length exactly k,
/// entries in [0, p-1], ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldDesc,
    coeffs: Vec<u64>,
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Canonical integer encoding: sum of coeffs[i] * p^i.
    pub fn index(&self) -> u128 {
        let p = self.field.p() as u128;
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * p + c as u128;
        }
        acc
    }

    fn same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "elements belong to different fields"
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.same_field(other);
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| fp::addp(a, b, p))
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.same_field(other);
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| fp::subp(a, b, p))
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p();
        let coeffs = self.coeffs.iter().map(|&a| fp::subp(0, a, p)).collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.same_field(other);
        let p = self.field.p();
        let k = self.field.k();
        if k == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![fp::mulp(self.coeffs[0], other.coeffs[0], p)],
            };
        }
        let prod = fp::mul(&self.coeffs, &other.coeffs, p);
        let red = fp::rem(&prod, self.field.modulus(), p);
        let mut coeffs = vec![0u64; k];
        coeffs[..red.len()].copy_from_slice(&red);
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Multiply by a base-field residue.
    pub fn scale(&self, c: u64) -> FieldElement {
        let p = self.field.p();
        let c = c % p;
        let coeffs = self.coeffs.iter().map(|&a| fp::mulp(a, c, p)).collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.field.p();
        let (g, s) = fp::ext_gcd(&fp::norm(self.coeffs.clone()), self.field.modulus(), p);
        // the modulus is irreducible, so the gcd with a nonzero residue is 1
        debug_assert_eq!(g, vec![1]);
        let mut coeffs = vec![0u64; self.field.k()];
        let s = fp::rem(&s, self.field.modulus(), p);
        coeffs[..s.len()].copy_from_slice(&s);
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other);
        Ok(self.mul(&other.inv()?))
    }

    /// a^e by square-and-multiply; a^0 = 1 for every a, including 0^0 = 1.
    pub fn pow(&self, mut e: u128) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euler criterion: a^{(q-1)/2} is 1 for nonzero squares, -1 for nonsquares.
    pub fn is_square(&self) -> Legendre {
        if self.is_zero() {
            return Legendre::Zero;
        }
        let e = (self.field.order() - 1) / 2;
        let t = self.pow(e);
        if t == self.field.one() {
            Legendre::Square
        } else {
            Legendre::NonSquare
        }
    }
}

/// Free-function form of `FieldDesc::elements`.
pub fn enumerate_field(desc: &FieldDesc, budget: u64) -> Result<Elements, FieldError> {
    desc.elements(budget)
}

/// The four arithmetic operations, dispatched by name; checked variant of the
/// method API on `FieldElement`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(
    a: &FieldElement,
    b: &FieldElement,
    op: FieldOp,
) -> Result<FieldElement, FieldError> {
    if a.field != b.field {
        return Err(FieldError::MismatchedFields);
    }
    match op {
        FieldOp::Add => Ok(a.add(b)),
        FieldOp::Sub => Ok(a.sub(b)),
        FieldOp::Mul => Ok(a.mul(b)),
        FieldOp::Div => a.div(b),
    }
}

/// The embedding F_{p^k} -> F_{p^{k*n}} sending the generator t to a root of
/// the small modulus, found by exhaustive search in index order.
pub struct Embedding {
    small: FieldDesc,
    root_powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(small: &FieldDesc, big: &FieldDesc, budget: u64) -> Result<Embedding, FieldError> {
        if small.p() != big.p() {
            return Err(FieldError::MismatchedFields);
        }
        if big.k() % small.k() != 0 {
            return Err(FieldError::IncompatibleDegrees {
                small: small.k(),
                big: big.k(),
            });
        }
        let m = small.modulus();
        let mut root = None;
        for cand in big.elements(budget)? {
            // Horner evaluation of the small modulus, coefficients lifted as constants
            let mut acc = big.zero();
            for &c in m.iter().rev() {
                acc = acc.mul(&cand).add(&big.element(&[c]));
            }
            if acc.is_zero() {
                root = Some(cand);
                break;
            }
        }
        let root = root.ok_or(FieldError::NoRoot)?;
        let mut root_powers = Vec::with_capacity(small.k());
        let mut acc = big.one();
        for _ in 0..small.k() {
            root_powers.push(acc.clone());
            acc = acc.mul(&root);
        }
        Ok(Embedding {
            small: small.clone(),
            root_powers,
        })
    }

    pub fn map(&self, a: &FieldElement) -> FieldElement {
        assert!(a.field() == &self.small, "element not in the source field");
        let mut acc = self.root_powers[0].field().zero();
        for (i, &c) in a.coeffs().iter().enumerate() {
            acc = acc.add(&self.root_powers[i].scale(c));
        }
        acc
    }
}

//! Polynomials over F_{p^k}: ascending coefficient vectors, normalized so the
//! last entry is nonzero (the zero polynomial is the empty vector).

use std::fmt;

use super::{fp, FieldDesc, FieldElement, FieldError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldDesc,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    /// Build from coefficients, trimming trailing zeros.
    pub fn new(field: FieldDesc, mut coeffs: Vec<FieldElement>) -> Poly {
        for c in &coeffs {
            assert!(c.field() == &field, "coefficient from a different field");
        }
        while coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &FieldDesc) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &FieldDesc) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![field.one()],
        }
    }

    pub fn x(field: &FieldDesc) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field().clone();
        Poly::new(field, vec![c])
    }

    /// Build from ascending element indices (for prime fields these are just
    /// the residues). Indices are reduced mod the field order.
    pub fn from_indices(field: &FieldDesc, idx: &[u128]) -> Poly {
        let order = field.order();
        let coeffs = idx.iter().map(|&i| field.from_index(i % order)).collect();
        Poly::new(field.clone(), coeffs)
    }

    /// Parse the comma-separated ascending coefficient form, e.g. "1,0,0,0,1"
    /// for 1 + x^4.
    pub fn parse(field: &FieldDesc, s: &str) -> Result<Poly, FieldError> {
        let mut idx = Vec::new();
        for part in s.split(',') {
            let v: u128 = part
                .trim()
                .parse()
                .map_err(|_| FieldError::BadPolynomial(s.to_string()))?;
            idx.push(v);
        }
        if idx.is_empty() {
            return Err(FieldError::BadPolynomial(s.to_string()));
        }
        Ok(Poly::from_indices(field, &idx))
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Ascending residue vector; only defined over prime fields.
    pub fn residues(&self) -> Vec<u64> {
        assert_eq!(self.field.k(), 1, "residues() needs a prime field");
        self.coeffs.iter().map(|c| c.coeffs()[0]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c == &self.field.one()) == Some(true)
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.field, "point from a different field");
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn mul_scalar(&self, c: &FieldElement) -> Poly {
        assert!(c.field() == &self.field);
        Poly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    /// Quotient and remainder with deg r < deg d.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), FieldError> {
        assert!(self.field == d.field);
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let inv_lead = d.leading_coeff().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        while rem.len() > dd {
            let dr = rem.len() - 1;
            let c = rem[dr].mul(&inv_lead);
            if !c.is_zero() {
                quot[dr - dd] = c.clone();
                for j in 0..=dd {
                    rem[dr - dd + j] = rem[dr - dd + j].sub(&c.mul(&d.coeffs[j]));
                }
            }
            rem.pop();
            while rem.last().map(|c| c.is_zero()) == Some(true) {
                rem.pop();
            }
        }
        Ok((
            Poly::new(self.field.clone(), quot),
            Poly::new(self.field.clone(), rem),
        ))
    }

    /// Monic gcd; gcd(f, 0) = monic multiple of f.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        while !r1.is_zero() {
            let r = r0.divrem(&r1).expect("divisor nonzero").1;
            r0 = r1;
            r1 = r;
        }
        r0.monic()
    }

    /// Scale to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(l) => {
                if l == &self.field.one() {
                    self.clone()
                } else {
                    self.mul_scalar(&l.inv().expect("leading coefficient nonzero"))
                }
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale((i as u64) % p))
            .collect();
        Poly::new(self.field.clone(), coeffs)
    }

    /// True iff gcd(f, f') is constant. Degree-0 and degree-1 polynomials are
    /// squarefree; a vanishing derivative (p-th power) is caught because
    /// gcd(f, 0) = f.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(d) if d <= 1 => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.index().to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Rabin test over a prime field. Errors on non-monic input, degree-0 input,
/// or a polynomial over a proper extension field.
pub fn is_irreducible(m: &Poly) -> Result<bool, FieldError> {
    if m.field().k() != 1 {
        return Err(FieldError::NotPrimeField);
    }
    if m.degree().unwrap_or(0) < 1 {
        return Err(FieldError::BadDegree);
    }
    if !m.is_monic() {
        return Err(FieldError::NotMonic);
    }
    Ok(fp::is_irreducible(&m.residues(), m.field().p()))
}

/// First monic irreducible of degree k over F_p, scanning candidates in
/// lexicographic order of (c_{k-1}, ..., c_0) starting from a seed offset and
/// wrapping around. k = 1 returns x.
pub fn find_irreducible(p: u64, k: usize, seed: u64) -> Result<Poly, FieldError> {
    let field = FieldDesc::prime(p)?;
    if k == 0 {
        return Err(FieldError::BadDegree);
    }
    if k == 1 {
        return Ok(Poly::x(&field));
    }
    let total: u128 = (0..k).fold(1u128, |acc, _| acc * p as u128);
    let start = seed as u128 % total;
    for off in 0..total {
        let j = (start + off) % total;
        // digits of j, most significant first, fill c_{k-1} down to c_0
        let mut m = vec![0u64; k + 1];
        m[k] = 1;
        let mut v = j;
        for i in 0..k {
            m[i] = (v % p as u128) as u64;
            v /= p as u128;
        }
        if fp::is_irreducible(&m, p) {
            let coeffs = m.iter().map(|&c| field.element(&[c])).collect();
            return Ok(Poly::new(field, coeffs));
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::field::{FieldCtx, FieldElement};
use crate::error::{Error, Result};

/// Dense univariate polynomial, low degree first, no trailing zeros.
#[derive(Clone)]
pub struct UniPoly<'f> {
    field: &'f FieldCtx,
    coeffs: Vec<FieldElement<'f>>,
}

impl<'f> UniPoly<'f> {
    pub fn new(field: &'f FieldCtx, mut coeffs: Vec<FieldElement<'f>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: &'f FieldCtx) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &'f FieldCtx) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement<'f>) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// The polynomial X.
    pub fn x(field: &'f FieldCtx) -> Self {
        Self::monomial(field.one(), 1)
    }

    /// c * X^deg.
    pub fn monomial(c: FieldElement<'f>, deg: usize) -> Self {
        let mut coeffs = vec![c.field().zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(c.field(), coeffs)
    }

    /// Polynomial with integer coefficients (low degree first), reduced into the field.
    pub fn from_ints(field: &'f FieldCtx, ints: &[i64]) -> Self {
        Self::new(field, ints.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement<'f>] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement<'f> {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElement<'f>> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: FieldElement<'f>) -> FieldElement<'f> {
        let mut acc = self.field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: FieldElement<'f>) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(l.inv()),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as i64))
            .collect();
        Self::new(self.field, coeffs)
    }

    /// Multiplication by X^s.
    pub fn shift(&self, s: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); s];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly {
            field: self.field,
            coeffs,
        }
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let lead_inv = d.coeffs[dd].inv();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = r[top] * lead_inv;
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            q[shift] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[shift + j] -= c * dj;
            }
        }
        r.truncate(dd);
        Ok((Self::new(self.field, q), Self::new(self.field, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Construction("polynomial division left a remainder".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    fn mulmod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m).expect("modulus is nonzero")
    }

    /// self^e mod m by square-and-multiply.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let base = self.rem(m)?;
        let mut acc = Self::one(self.field).rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        Ok(acc)
    }

    /// X^e mod m; multiplication by X is a shift, so this is cheaper than `powmod`.
    pub fn x_pow_mod(e: &BigUint, m: &Self) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = m.field;
        let mut acc = Self::one(field).rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.shift(1).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient, landing in another field.
    pub fn map_coeffs<'g>(
        &self,
        field: &'g FieldCtx,
        f: impl Fn(FieldElement<'f>) -> FieldElement<'g>,
    ) -> UniPoly<'g> {
        UniPoly::new(field, self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// self(g(X)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c);
        }
        acc
    }

    pub fn pow_u64(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }
}

impl PartialEq for UniPoly<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly<'_> {}

impl fmt::Debug for UniPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})X"),
                _ => format!("({c})X^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl<'f> Add for &UniPoly<'f> {
    type Output = UniPoly<'f>;
    fn add(self, rhs: Self) -> UniPoly<'f> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::new(self.field, coeffs)
    }
}

impl<'f> Sub for &UniPoly<'f> {
    type Output = UniPoly<'f>;
    fn sub(self, rhs: Self) -> UniPoly<'f> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::new(self.field, coeffs)
    }
}

impl<'f> Neg for &UniPoly<'f> {
    type Output = UniPoly<'f>;
    fn neg(self) -> UniPoly<'f> {
        UniPoly::new(self.field, self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl<'f> Mul for &UniPoly<'f> {
    type Output = UniPoly<'f>;
    fn mul(self, rhs: Self) -> UniPoly<'f> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(self.field, coeffs)
    }
}

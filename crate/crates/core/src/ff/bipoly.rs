use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldCtx, FieldElement};
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// Sparse bivariate polynomial; the key (i, j) stands for X^i Y^j.
#[derive(Clone)]
pub struct BiPoly<'f> {
    field: &'f FieldCtx,
    terms: BTreeMap<(u32, u32), FieldElement<'f>>,
}

impl<'f> BiPoly<'f> {
    pub fn zero(field: &'f FieldCtx) -> Self {
        BiPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// c X^i Y^j.
    pub fn term(c: FieldElement<'f>, i: u32, j: u32) -> Self {
        let mut out = Self::zero(c.field());
        out.add_term(c, i, j);
        out
    }

    pub fn constant(c: FieldElement<'f>) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn x(field: &'f FieldCtx) -> Self {
        Self::term(field.one(), 1, 0)
    }

    pub fn y(field: &'f FieldCtx) -> Self {
        Self::term(field.one(), 0, 1)
    }

    /// Univariate polynomial in X viewed bivariately.
    pub fn from_uni_x(f: &UniPoly<'f>) -> Self {
        let mut out = Self::zero(f.field());
        for (i, &c) in f.coeffs().iter().enumerate() {
            out.add_term(c, i as u32, 0);
        }
        out
    }

    /// Univariate polynomial in Y viewed bivariately.
    pub fn from_uni_y(f: &UniPoly<'f>) -> Self {
        let mut out = Self::zero(f.field());
        for (j, &c) in f.coeffs().iter().enumerate() {
            out.add_term(c, 0, j as u32);
        }
        out
    }

    pub fn add_term(&mut self, c: FieldElement<'f>, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(|| self.field.zero());
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), FieldElement<'f>)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElement<'f> {
        self.terms.get(&(i, j)).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn scale(&self, c: FieldElement<'f>) -> Self {
        let mut out = Self::zero(self.field);
        for (&(i, j), &v) in &self.terms {
            out.add_term(v * c, i, j);
        }
        out
    }

    pub fn eval(&self, x: FieldElement<'f>, y: FieldElement<'f>) -> FieldElement<'f> {
        self.specialize_x(x).eval(y)
    }

    /// F(x, Y) as a polynomial in Y.
    pub fn specialize_x(&self, x: FieldElement<'f>) -> UniPoly<'f> {
        let dx = self.deg_x().unwrap_or(0) as usize;
        let mut xp = Vec::with_capacity(dx + 1);
        let mut acc = self.field.one();
        for _ in 0..=dx {
            xp.push(acc);
            acc *= x;
        }
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut coeffs = vec![self.field.zero(); dy + 1];
        for (&(i, j), &v) in &self.terms {
            coeffs[j as usize] += v * xp[i as usize];
        }
        UniPoly::new(self.field, coeffs)
    }

    /// F(X, y) as a polynomial in X.
    pub fn specialize_y(&self, y: FieldElement<'f>) -> UniPoly<'f> {
        self.swap().specialize_x(y)
    }

    /// F(X, X).
    pub fn diagonal(&self) -> UniPoly<'f> {
        let d = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![self.field.zero(); d + 1];
        for (&(i, j), &v) in &self.terms {
            coeffs[(i + j) as usize] += v;
        }
        UniPoly::new(self.field, coeffs)
    }

    /// F(Y, X).
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.field);
        for (&(i, j), &v) in &self.terms {
            out.add_term(v, j, i);
        }
        out
    }

    pub fn partial_x(&self) -> Self {
        let mut out = Self::zero(self.field);
        for (&(i, j), &v) in &self.terms {
            if i > 0 {
                out.add_term(v * (i as i64), i - 1, j);
            }
        }
        out
    }

    pub fn partial_y(&self) -> Self {
        self.swap().partial_x().swap()
    }

    /// Coefficients as polynomials in Y: F = sum_i a_i(Y) X^i.
    fn columns_in_y(&self) -> Vec<UniPoly<'f>> {
        let dx = self.deg_x().unwrap_or(0) as usize;
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut cols = vec![vec![self.field.zero(); dy + 1]; dx + 1];
        for (&(i, j), &v) in &self.terms {
            cols[i as usize][j as usize] = v;
        }
        cols.into_iter().map(|c| UniPoly::new(self.field, c)).collect()
    }

    /// Exact quotient by (X - Y).
    pub fn div_x_minus_y(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let a = self.columns_in_y();
        let n = a.len();
        let y = UniPoly::x(self.field);
        // F = (X - Y) Q with Q = sum_i b_i X^i: a_n = b_{n-1}, a_i = b_{i-1} - Y b_i, a_0 = -Y b_0
        let mut b = vec![UniPoly::zero(self.field); n];
        for i in (1..n).rev() {
            let next = if i < n - 1 { &y * &b[i] } else { UniPoly::zero(self.field) };
            b[i - 1] = &a[i] + &next;
        }
        let rem = &a[0] + &(&y * &b[0]);
        if !rem.is_zero() {
            return Err(Error::Construction("division by X - Y left a remainder".into()));
        }
        let mut out = Self::zero(self.field);
        for (i, bi) in b.iter().enumerate() {
            for (j, &c) in bi.coeffs().iter().enumerate() {
                out.add_term(c, i as u32, j as u32);
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient, landing in another field.
    pub fn map_coeffs<'g>(
        &self,
        field: &'g FieldCtx,
        f: impl Fn(FieldElement<'f>) -> Result<FieldElement<'g>>,
    ) -> Result<BiPoly<'g>> {
        let mut out = BiPoly::zero(field);
        for (&(i, j), &v) in &self.terms {
            out.add_term(f(v)?, i, j);
        }
        Ok(out)
    }

    /// Product of a polynomial in X and a polynomial in Y.
    pub fn outer(fx: &UniPoly<'f>, gy: &UniPoly<'f>) -> Self {
        let mut out = Self::zero(fx.field());
        for (i, &a) in fx.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in gy.coeffs().iter().enumerate() {
                out.add_term(a * b, i as u32, j as u32);
            }
        }
        out
    }
}

impl PartialEq for BiPoly<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BiPoly<'_> {}

impl fmt::Debug for BiPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("({c})X^{i}Y^{j}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<'f> Add for &BiPoly<'f> {
    type Output = BiPoly<'f>;
    fn add(self, rhs: Self) -> BiPoly<'f> {
        let mut out = self.clone();
        for (&(i, j), &v) in &rhs.terms {
            out.add_term(v, i, j);
        }
        out
    }
}

impl<'f> Neg for &BiPoly<'f> {
    type Output = BiPoly<'f>;
    fn neg(self) -> BiPoly<'f> {
        self.scale(-self.field.one())
    }
}

impl<'f> Sub for &BiPoly<'f> {
    type Output = BiPoly<'f>;
    fn sub(self, rhs: Self) -> BiPoly<'f> {
        self + &(-rhs)
    }
}

impl<'f> Mul for &BiPoly<'f> {
    type Output = BiPoly<'f>;
    fn mul(self, rhs: Self) -> BiPoly<'f> {
        let mut out = BiPoly::zero(self.field);
        for (&(i, j), &a) in &self.terms {
            for (&(k, l), &b) in &rhs.terms {
                out.add_term(a * b, i + k, j + l);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_diagonal_factor() {
        let f = FieldCtx::new(7, 1).unwrap();
        let x = BiPoly::x(&f);
        let y = BiPoly::y(&f);
        let g = &(&(&x * &x) + &(&y * &x)) + &BiPoly::constant(f.from_int(3));
        let prod = &(&x - &y) * &g;
        assert_eq!(prod.div_x_minus_y().unwrap(), g);
        assert!(g.div_x_minus_y().is_err());
    }

    #[test]
    fn partials_and_diagonal() {
        let f = FieldCtx::new(11, 1).unwrap();
        // X^2 Y + 3 X Y^3
        let mut p = BiPoly::term(f.one(), 2, 1);
        p.add_term(f.from_int(3), 1, 3);
        assert_eq!(p.partial_x(), {
            let mut q = BiPoly::term(f.from_int(2), 1, 1);
            q.add_term(f.from_int(3), 0, 3);
            q
        });
        assert_eq!(p.partial_y().coeff(1, 2), f.from_int(9));
        assert_eq!(p.diagonal(), UniPoly::from_ints(&f, &[0, 0, 0, 1, 3]));
        assert_eq!(p.eval(f.from_int(2), f.from_int(1)), f.from_int(4 + 6));
        assert_eq!(p.total_degree(), Some(4));
    }
}

//! Quadratic-character sums S(mu) = sum_z eta((4(z - 1) mu + 1) z), the Weil
//! bound for them, and the search for z with eta(z) = eta(4(z - 1) mu + 1) = -1.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{nth_roots, FieldCtx, FieldElement, QuadCharTable};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharSumReport {
    pub q: u64,
    pub mu: String,
    pub sum_value: i64,
    /// sqrt(q) as a float, for display only; `satisfied` is decided in integers.
    pub bound: f64,
    pub satisfied: bool,
    /// mu = 1/4: the polynomial collapses to Z^2, Weil's estimate does not apply and S = q - 1.
    pub square_case: bool,
}

/// Tally of z with eta(z) = -1 and eta(4(z - 1) mu + 1) = -1 next to the character-sum estimate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaCount {
    pub mu: String,
    pub exact: u64,
    /// q + S(mu); the naive count is this divided by 4.
    pub q_plus_sum: i64,
    /// q + S(mu) - 4 * exact, contributed by the two terms where an argument vanishes.
    pub boundary_correction: i64,
}

/// Exponents e used with z^e = -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentForm {
    /// e = p + 1
    PPlusOne,
    /// e = p^2 + p + 1
    PSquaredPlusPPlusOne,
}

impl ExponentForm {
    pub fn exponent(self, p: u32) -> u64 {
        let p = p as u64;
        match self {
            ExponentForm::PPlusOne => p + 1,
            ExponentForm::PSquaredPlusPPlusOne => p * p + p + 1,
        }
    }
}

/// |s| <= sqrt(q) decided without floating point.
pub fn within_sqrt(s: i64, q: u64) -> bool {
    let s2 = (s.unsigned_abs() as u128).pow(2);
    s2 <= q as u128
}

/// Whether (4(Z - 1) mu + 1) Z is a constant times a square, i.e. 4 mu = 1.
pub fn is_square_case(mu: FieldElement<'_>) -> bool {
    (mu * 4).is_one()
}

/// Character-sum evaluator with a precomputed character table.
pub struct CharSums<'f> {
    field: &'f FieldCtx,
    table: QuadCharTable,
}

impl<'f> CharSums<'f> {
    pub fn new(field: &'f FieldCtx) -> Result<Self> {
        Ok(CharSums {
            field,
            table: QuadCharTable::new(field)?,
        })
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn eta(&self, x: FieldElement<'_>) -> i8 {
        self.table.eta(x)
    }

    fn q(&self) -> u64 {
        self.field.size().expect("table exists only for small fields")
    }

    fn check_mu(&self, mu: FieldElement<'f>) -> Result<()> {
        if mu.is_zero() {
            return Err(Error::Precondition("mu must be nonzero".into()));
        }
        Ok(())
    }

    fn linear_arg(mu: FieldElement<'f>, z: FieldElement<'f>) -> FieldElement<'f> {
        (z - 1) * mu * 4 + 1
    }

    /// S(mu) and its Weil-bound check (the polynomial has degree 2).
    pub fn weil_sum(&self, mu: FieldElement<'f>) -> Result<CharSumReport> {
        self.check_mu(mu)?;
        let sum: i64 = self
            .field
            .elements()
            .map(|z| self.eta(Self::linear_arg(mu, z) * z) as i64)
            .sum();
        let q = self.q();
        Ok(CharSumReport {
            q,
            mu: mu.to_string(),
            sum_value: sum,
            bound: (q as f64).sqrt(),
            satisfied: within_sqrt(sum, q),
            square_case: is_square_case(mu),
        })
    }

    /// S(mu) computed as sum eta(4(z - 1) mu + 1) eta(z).
    pub fn weil_sum_factored(&self, mu: FieldElement<'f>) -> Result<i64> {
        self.check_mu(mu)?;
        Ok(self
            .field
            .elements()
            .map(|z| (self.eta(Self::linear_arg(mu, z)) * self.eta(z)) as i64)
            .sum())
    }

    /// sum_z eta(4(z - 1) mu + 1); zero for every nonzero mu.
    pub fn linear_sum(&self, mu: FieldElement<'f>) -> Result<i64> {
        self.check_mu(mu)?;
        Ok(self
            .field
            .elements()
            .map(|z| self.eta(Self::linear_arg(mu, z)) as i64)
            .sum())
    }

    /// First z in canonical order with eta(z) = -1 and eta(4(z - 1) mu + 1) = -1.
    pub fn zeta_search(&self, mu: FieldElement<'f>) -> Option<FieldElement<'f>> {
        self.field
            .elements()
            .find(|&z| self.eta(z) == -1 && self.eta(Self::linear_arg(mu, z)) == -1)
    }

    pub fn zeta_count(&self, mu: FieldElement<'f>) -> Result<ZetaCount> {
        let s = self.weil_sum(mu)?.sum_value;
        let exact = self
            .field
            .elements()
            .filter(|&z| self.eta(z) == -1 && self.eta(Self::linear_arg(mu, z)) == -1)
            .count() as u64;
        let q_plus_sum = self.q() as i64 + s;
        Ok(ZetaCount {
            mu: mu.to_string(),
            exact,
            q_plus_sum,
            boundary_correction: q_plus_sum - 4 * exact as i64,
        })
    }

    /// weil_sum for every nonzero mu, in canonical order.
    pub fn weil_scan(&self) -> Vec<CharSumReport> {
        let q = self.q();
        (1..q)
            .into_par_iter()
            .map(|i| self.weil_sum(self.field.element_at(i)).expect("mu nonzero"))
            .collect()
    }
}

/// All z with z^e = -1, sorted canonically.
pub fn neg_one_roots(field: &FieldCtx, e: u64) -> Vec<FieldElement<'_>> {
    nth_roots(-field.one(), e as usize)
}

pub fn mu_q1_roots_of_unity(field: &FieldCtx, form: ExponentForm) -> Vec<FieldElement<'_>> {
    neg_one_roots(field, form.exponent(field.p()))
}

/// Number of solutions of z^e = -1 in a cyclic group of even order n.
pub fn neg_one_root_count(n: u64, e: u64) -> u64 {
    let g = n.gcd(&e);
    if (n / 2).is_multiple_of(g) {
        g
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field_sums_and_search() {
        let f = FieldCtx::new(7, 2).unwrap();
        let cs = CharSums::new(&f).unwrap();
        for mu in f.elements().skip(1) {
            let r = cs.weil_sum(mu).unwrap();
            if r.square_case {
                assert_eq!(r.sum_value, 48);
            } else {
                assert!(r.satisfied, "{r:?}");
            }
            assert_eq!(cs.weil_sum_factored(mu).unwrap(), r.sum_value);
            assert_eq!(cs.linear_sum(mu).unwrap(), 0);
            let c = cs.zeta_count(mu).unwrap();
            assert!((0..=4).contains(&c.boundary_correction), "{c:?}");
            if let Some(z) = cs.zeta_search(mu) {
                assert_eq!(cs.eta(z), -1);
                assert_eq!(cs.eta((z - 1) * mu * 4 + 1), -1);
            }
        }
        assert!(cs.weil_sum(f.zero()).is_err());
    }

    #[test]
    fn neg_one_roots_cube_field() {
        let f = FieldCtx::new(11, 3).unwrap();
        let roots = mu_q1_roots_of_unity(&f, ExponentForm::PSquaredPlusPPlusOne);
        assert!(roots.contains(&-f.one()));
        let e = ExponentForm::PSquaredPlusPPlusOne.exponent(11);
        let scan = f.elements().filter(|z| z.pow_u64(e) == -f.one()).count();
        assert_eq!(roots.len(), scan);
        assert_eq!(roots.len() as u64, neg_one_root_count(1330, e));
        assert_eq!(roots.len(), 133);
    }

    #[test]
    fn within_sqrt_is_exact() {
        assert!(within_sqrt(36, 1331));
        assert!(!within_sqrt(37, 1331));
        assert!(within_sqrt(-11, 121));
        assert!(!within_sqrt(12, 121));
    }
}

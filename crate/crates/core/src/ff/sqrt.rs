use num_bigint::BigUint;
use num_traits::One;

use super::field::{FieldCtx, FieldElement};
use crate::error::{Error, Result};

impl<'f> FieldElement<'f> {
    /// Both square roots (sorted canonically), or `None` for a nonresidue.
    /// Tonelli–Shanks; odd characteristic only.
    pub fn sqrt(&self) -> Option<(Self, Self)> {
        let field = self.field();
        if self.is_zero() {
            return Some((*self, *self));
        }
        if self.quad_char().ok()? != 1 {
            return None;
        }
        let qm1 = field.order() - BigUint::one();
        let s = qm1.trailing_zeros().expect("q - 1 is nonzero");
        let t = &qm1 >> s;
        let z = field.first_nonresidue().ok()?;
        let mut c = z.pow(&t);
        let mut r = self.pow(&((&t + BigUint::one()) >> 1));
        let mut tt = self.pow(&t);
        let mut m = s;
        while !tt.is_one() {
            let mut i = 0;
            let mut probe = tt;
            while !probe.is_one() {
                probe = probe.square();
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = b.square();
            }
            r *= b;
            c = b.square();
            tt *= c;
            m = i;
        }
        let (a, b) = (r, -r);
        Some(if a <= b { (a, b) } else { (b, a) })
    }
}

/// Quadratic character of every element, indexed by canonical index.
pub struct QuadCharTable {
    values: Vec<i8>,
}

impl QuadCharTable {
    /// Builds the table by squaring every element; fields up to 2^26 elements.
    pub fn new(field: &FieldCtx) -> Result<Self> {
        if field.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let n = field.size().filter(|&n| n <= 1 << 26).ok_or(Error::BudgetExceeded {
            size: u128::MAX,
            budget: 1 << 26,
        })?;
        let mut values = vec![-1i8; n as usize];
        values[0] = 0;
        for x in field.elements().skip(1) {
            values[x.square().index() as usize] = 1;
        }
        Ok(QuadCharTable { values })
    }

    pub fn eta(&self, x: FieldElement<'_>) -> i8 {
        self.values[x.index() as usize]
    }

    pub fn eta_index(&self, index: u64) -> i8 {
        self.values[index as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sqrt_of_four_mod_eleven() {
        let f = FieldCtx::new(11, 1).unwrap();
        assert_eq!(f.from_int(4).sqrt(), Some((f.from_int(2), f.from_int(9))));
        let nr = f.first_nonresidue().unwrap();
        assert_eq!(nr, f.from_int(2));
        assert!(nr.sqrt().is_none());
    }

    #[test]
    fn sqrt_in_extension_with_high_two_adicity() {
        // 17^4 - 1 is divisible by 2^6
        let f = FieldCtx::new(17, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let x = f.random(&mut rng);
            let sq = x.square();
            let (a, b) = sq.sqrt().unwrap();
            assert!(a == x || b == x);
            assert_eq!(a.square(), sq);
        }
    }

    #[test]
    fn minus_three_has_roots_in_quadratic_extension() {
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            let f = FieldCtx::new(p, 2).unwrap();
            assert!(f.from_int(-3).sqrt().is_some(), "p = {p}");
        }
    }

    #[test]
    fn table_agrees_with_euler() {
        let f = FieldCtx::new(7, 3).unwrap();
        let t = QuadCharTable::new(&f).unwrap();
        for x in f.elements() {
            assert_eq!(t.eta(x), x.quad_char().unwrap());
        }
    }
}

use num_bigint::BigUint;

use super::embed::FieldEmbedding;
use super::field::{FieldCtx, FieldElement, Raw};
use crate::error::{Error, Result};

/// F_{q^2} = F_q(i) with i^2 = d, d the first nonresidue of F_q.
///
/// Elements live in a flat F_{p^{2k}}; `compose` and `decompose` translate to and from
/// the pairs (a, b) standing for a + b i.
#[derive(Debug)]
pub struct QuadExtCtx {
    base: FieldCtx,
    ext: FieldCtx,
    embedding: FieldEmbedding,
    d: Raw,
    i: Raw,
}

impl QuadExtCtx {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        Self::from_base(FieldCtx::new(p, k)?)
    }

    pub fn from_base(base: FieldCtx) -> Result<Self> {
        if base.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let ext = FieldCtx::new(base.p() as u64, 2 * base.degree())?;
        let embedding = FieldEmbedding::new(&base, &ext)?;
        let d = base.first_nonresidue()?;
        let d_raw = *d.raw();
        let (i, _) = embedding
            .apply(&ext, d)
            .sqrt()
            .ok_or_else(|| Error::Construction("nonresidue has no root in the extension".into()))?;
        let i_raw = *i.raw();
        Ok(QuadExtCtx {
            embedding,
            d: d_raw,
            i: i_raw,
            base,
            ext,
        })
    }

    /// F_q.
    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    /// F_{q^2}.
    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    /// Degree k of F_q over F_p.
    pub fn k(&self) -> usize {
        self.base.degree()
    }

    pub fn q(&self) -> &BigUint {
        self.base.order()
    }

    /// The nonresidue d = i^2, as an element of F_q.
    pub fn d(&self) -> FieldElement<'_> {
        self.base.from_raw(self.d)
    }

    /// The element i of F_{q^2}.
    pub fn i(&self) -> FieldElement<'_> {
        self.ext.from_raw(self.i)
    }

    pub fn embedding(&self) -> &FieldEmbedding {
        &self.embedding
    }

    pub fn lift(&self, a: FieldElement<'_>) -> FieldElement<'_> {
        self.embedding.apply(&self.ext, a)
    }

    /// The element a + b i.
    pub fn compose(&self, a: FieldElement<'_>, b: FieldElement<'_>) -> FieldElement<'_> {
        self.lift(a) + self.lift(b) * self.i()
    }

    /// (a, b) with x = a + b i.
    pub fn decompose(&self, x: FieldElement<'_>) -> Result<(FieldElement<'_>, FieldElement<'_>)> {
        let x = self.ext.from_raw(*x.raw());
        let xq = self.conj(x);
        let two = self.ext.from_int(2);
        let a = (x + xq) / two;
        let b = (x - xq) / (two * self.i());
        Ok((self.pull(a)?, self.pull(b)?))
    }

    /// Preimage in F_q of an element fixed by the q-Frobenius.
    pub fn pull(&self, x: FieldElement<'_>) -> Result<FieldElement<'_>> {
        let x = self.ext.from_raw(*x.raw());
        self.embedding.pullback(&self.base, x)
    }

    /// x^q.
    pub fn conj<'a>(&self, x: FieldElement<'a>) -> FieldElement<'a> {
        x.frobenius(self.k())
    }

    pub fn in_base(&self, x: FieldElement<'_>) -> bool {
        self.conj(x) == x
    }

    /// Tr(x) = x^q + x.
    pub fn rel_trace<'a>(&self, x: FieldElement<'a>) -> FieldElement<'a> {
        self.conj(x) + x
    }

    /// x^{q+1}.
    pub fn rel_norm<'a>(&self, x: FieldElement<'a>) -> FieldElement<'a> {
        self.conj(x) * x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn i_is_antisymmetric() {
        let q2 = QuadExtCtx::new(11, 2).unwrap();
        let i = q2.i();
        assert_eq!(q2.conj(i), -i);
        assert_eq!(i.square(), q2.lift(q2.d()));
        assert_eq!(q2.d().quad_char().unwrap(), -1);
        assert!(q2.rel_trace(i).is_zero());
        assert_eq!(q2.rel_trace(q2.ext().one()), q2.ext().from_int(2));
    }

    #[test]
    fn conjugation_of_pairs() {
        let q2 = QuadExtCtx::new(7, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let a = q2.base().random(&mut rng);
            let b = q2.base().random(&mut rng);
            let x = q2.compose(a, b);
            assert_eq!(q2.conj(x), q2.compose(a, -b));
            assert_eq!(q2.decompose(x).unwrap(), (a, b));
            assert!(q2.in_base(q2.rel_trace(x)));
        }
    }
}

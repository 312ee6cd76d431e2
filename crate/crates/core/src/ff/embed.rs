use super::field::{FieldCtx, FieldElement, Raw};
use super::linalg::FpMatrix;
use super::poly::UniPoly;
use super::roots::roots_in_field;
use crate::error::{Error, Result};

/// An embedding F_{p^a} -> F_{p^b} (a | b), fixed by sending X to the smallest root of the
/// source modulus in the target. Holds no references, so it can live next to its fields.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    src_modulus: Vec<u32>,
    dst_modulus: Vec<u32>,
    /// images of 1, X, ..., X^{a-1}
    images: Vec<Raw>,
    matrix: FpMatrix,
}

impl FieldEmbedding {
    pub fn new(src: &FieldCtx, dst: &FieldCtx) -> Result<Self> {
        if src.p() != dst.p() {
            return Err(Error::FieldMismatch);
        }
        let (a, b) = (src.degree(), dst.degree());
        if b % a != 0 {
            return Err(Error::NotInSubfield(a));
        }
        let m = UniPoly::new(
            dst,
            src.modulus().iter().map(|&c| dst.from_int(c as i64)).collect(),
        );
        let root = *roots_in_field(&m)?
            .first()
            .ok_or_else(|| Error::Construction("source modulus has no root in target".into()))?;
        let mut images = Vec::with_capacity(a);
        let mut acc = dst.one();
        for _ in 0..a {
            images.push(*acc.raw());
            acc *= root;
        }
        let columns: Vec<Vec<u32>> = images
            .iter()
            .map(|r| r[..b].iter().map(|&c| c as u32).collect())
            .collect();
        let matrix = FpMatrix::from_columns(src.p(), b, &columns);
        Ok(FieldEmbedding {
            src_modulus: src.modulus().to_vec(),
            dst_modulus: dst.modulus().to_vec(),
            images,
            matrix,
        })
    }

    fn check(&self, src: &FieldCtx, dst: &FieldCtx) {
        assert_eq!(src.modulus(), &self.src_modulus[..], "embedding used with a different source");
        assert_eq!(dst.modulus(), &self.dst_modulus[..], "embedding used with a different target");
    }

    /// Image of `x` in the target field.
    pub fn apply<'d>(&self, dst: &'d FieldCtx, x: FieldElement<'_>) -> FieldElement<'d> {
        self.check(x.field(), dst);
        let mut acc = dst.zero();
        for (i, c) in x.coeffs().into_iter().enumerate() {
            if c != 0 {
                acc += dst.from_raw(self.images[i]) * (c as i64);
            }
        }
        acc
    }

    /// Preimage of `y`, or `NotInSubfield` when `y` is outside the image.
    pub fn pullback<'s>(&self, src: &'s FieldCtx, y: FieldElement<'_>) -> Result<FieldElement<'s>> {
        self.check(src, y.field());
        let sol = self
            .matrix
            .solve(&y.coeffs())
            .ok_or(Error::NotInSubfield(src.degree()))?;
        let ints: Vec<i64> = sol.into_iter().map(|c| c as i64).collect();
        src.from_coeffs(&ints)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn embedding_is_a_ring_map() {
        let src = FieldCtx::new(7, 2).unwrap();
        let dst = FieldCtx::new(7, 6).unwrap();
        let e = FieldEmbedding::new(&src, &dst).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let a = src.random(&mut rng);
            let b = src.random(&mut rng);
            assert_eq!(e.apply(&dst, a * b), e.apply(&dst, a) * e.apply(&dst, b));
            assert_eq!(e.apply(&dst, a + b), e.apply(&dst, a) + e.apply(&dst, b));
            assert!(e.apply(&dst, a).in_subfield(2));
            assert_eq!(e.pullback(&src, e.apply(&dst, a)).unwrap(), a);
        }
        let outside = dst.gen();
        assert!(e.pullback(&src, outside).is_err());
    }

    #[test]
    fn rejects_non_divisor() {
        let src = FieldCtx::new(5, 2).unwrap();
        let dst = FieldCtx::new(5, 3).unwrap();
        assert!(FieldEmbedding::new(&src, &dst).is_err());
    }
}

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{FieldCtx, FieldElement};
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// Seed for the equal-degree splitting; the returned root sets do not depend on it.
pub const DEFAULT_ROOT_SEED: u64 = 0x5eed_f00d;

/// Fields up to this size are scanned exhaustively instead of split.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Distinct roots of `f` lying in its coefficient field, sorted canonically.
pub fn roots_in_field<'f>(f: &UniPoly<'f>) -> Result<Vec<FieldElement<'f>>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    if let Some(n) = field.size().filter(|&n| n <= EXHAUSTIVE_LIMIT) {
        return Ok((0..n)
            .map(|i| field.element_at(i))
            .filter(|&x| f.eval(x).is_zero())
            .collect());
    }
    let f = f.monic();
    let xq = UniPoly::x_pow_mod(field.order(), &f)?;
    let g = f.gcd(&(&xq - &UniPoly::x(field)));
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_ROOT_SEED);
    split(field, &g, &mut rng, &mut out);
    out.sort();
    Ok(out)
}

/// Splits a monic squarefree product of distinct linear factors.
fn split<'f>(
    field: &'f FieldCtx,
    g: &UniPoly<'f>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FieldElement<'f>>,
) {
    let d = g.degree().unwrap_or(0);
    if d == 0 {
        return;
    }
    if d == 1 {
        out.push(-g.coeff(0));
        return;
    }
    let half = (field.order() - BigUint::one()) >> 1;
    loop {
        let a = field.random(rng);
        let probe = if field.p() == 2 {
            // absolute trace of aX: sum of (aX)^{2^j}
            let mut t = UniPoly::monomial(a, 1).rem(g).expect("g nonzero");
            let mut acc = t.clone();
            for _ in 1..field.degree() {
                t = (&t * &t).rem(g).expect("g nonzero");
                acc = &acc + &t;
            }
            acc
        } else {
            let base = UniPoly::new(field, vec![a, field.one()]);
            let h = base.powmod(&half, g).expect("g nonzero");
            &h - &UniPoly::one(field)
        };
        let s = g.gcd(&probe);
        let ds = s.degree().unwrap_or(0);
        if ds > 0 && ds < d {
            let rest = g.exact_div(&s).expect("s divides g").monic();
            split(field, &s, rng, out);
            split(field, &rest, rng, out);
            return;
        }
    }
}

/// Roots with multiplicities, sorted by root.
pub fn roots_with_multiplicity<'f>(f: &UniPoly<'f>) -> Result<Vec<(FieldElement<'f>, usize)>> {
    let roots = roots_in_field(f)?;
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let lin = UniPoly::new(f.field(), vec![-r, f.field().one()]);
        let mut g = f.clone();
        let mut m = 0;
        loop {
            let (q, rem) = g.divrem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            m += 1;
            g = q;
        }
        out.push((r, m));
    }
    Ok(out)
}

/// All y in the field with y^n = x.
pub fn nth_roots<'f>(x: FieldElement<'f>, n: usize) -> Vec<FieldElement<'f>> {
    let field = x.field();
    if n == 0 {
        return Vec::new();
    }
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[0] = -x;
    coeffs[n] = field.one();
    roots_in_field(&UniPoly::new(field, coeffs)).expect("monic polynomial is nonzero")
}

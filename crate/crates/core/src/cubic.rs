//! Cubic equations over finite fields of characteristic > 3: a generic root finder and the
//! closed-form radical solution of
//!
//!   g(y) = z y^3 - (T/4) y^2 - ((1 - 4 mu)/4) z y - mu y + T.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{nth_roots, roots_with_multiplicity, FieldCtx, FieldElement, FieldEmbedding, UniPoly};

/// Extension degrees tried, in order, when looking for the radicals.
pub const EXTENSION_DEGREES: [usize; 4] = [1, 2, 3, 6];

fn check_characteristic(field: &FieldCtx) -> Result<()> {
    if field.p() <= 3 {
        return Err(Error::Precondition(format!(
            "cubic formulas need characteristic > 3, got {}",
            field.p()
        )));
    }
    Ok(())
}

/// Roots with multiplicity of c0 + c1 y + c2 y^2 + c3 y^3 in the coefficient field.
pub fn cubic_roots<'f>(coeffs: &[FieldElement<'f>; 4]) -> Result<Vec<(FieldElement<'f>, usize)>> {
    let field = coeffs[0].field();
    check_characteristic(field)?;
    if coeffs[3].is_zero() {
        return Err(Error::Precondition("leading coefficient is zero".into()));
    }
    roots_with_multiplicity(&UniPoly::new(field, coeffs.to_vec()))
}

/// Flattened multiset of roots, sorted.
pub fn root_multiset<'f>(roots: &[(FieldElement<'f>, usize)]) -> Vec<FieldElement<'f>> {
    let mut out: Vec<_> = roots.iter().flat_map(|&(r, m)| std::iter::repeat_n(r, m)).collect();
    out.sort();
    out
}

/// Coefficients (low degree first) of the cubic solved by the closed forms.
pub fn radical_cubic<'f>(
    zeta: FieldElement<'f>,
    mu: FieldElement<'f>,
    t: FieldElement<'f>,
) -> [FieldElement<'f>; 4] {
    let f = zeta.field();
    let quarter = f.from_int(4).inv();
    [
        t,
        -((f.one() - mu * 4) * quarter * zeta) - mu,
        -(t * quarter),
        zeta,
    ]
}

/// Coefficients of z y^3 - (T/2) y^2 - (((1 - 4 mu)/4) z + mu) y + T/8, the cubic met when
/// y^p = z y is substituted into the gamma-equation.
pub fn gamma_cubic<'f>(
    zeta: FieldElement<'f>,
    mu: FieldElement<'f>,
    t: FieldElement<'f>,
) -> [FieldElement<'f>; 4] {
    let f = zeta.field();
    let quarter = f.from_int(4).inv();
    [
        t / f.from_int(8),
        -((f.one() - mu * 4) * quarter * zeta + mu),
        -(t / f.from_int(2)),
        zeta,
    ]
}

pub fn eval_cubic<'f>(c: &[FieldElement<'f>; 4], y: FieldElement<'f>) -> FieldElement<'f> {
    ((c[3] * y + c[2]) * y + c[1]) * y + c[0]
}

/// Radicals and intermediate quantities of one closed-form evaluation.
#[derive(Debug, Clone, Copy)]
pub struct CardanoData<'f> {
    /// s = sqrt(-3)
    pub s: FieldElement<'f>,
    /// theta = (1 + s)/(1 - s), a primitive cube root of unity
    pub theta: FieldElement<'f>,
    /// omega = T^2
    pub omega: FieldElement<'f>,
    pub r: FieldElement<'f>,
    pub sqrt_r: FieldElement<'f>,
    pub c1: FieldElement<'f>,
    /// d1 = 36 R / z^4, so D^3 = T c1 + sqrt(d1)
    pub d1: FieldElement<'f>,
    pub radicand: FieldElement<'f>,
    pub d: FieldElement<'f>,
    pub a2: FieldElement<'f>,
    pub a3: FieldElement<'f>,
}

#[derive(Debug, Clone)]
pub struct CardanoRoots<'f> {
    pub data: CardanoData<'f>,
    /// Roots from the first displayed triple.
    pub form_one: [FieldElement<'f>; 3],
    /// Roots from 12 y = theta^j D + theta^{2j} a2/D + a3.
    pub form_two: [FieldElement<'f>; 3],
}

impl<'f> CardanoRoots<'f> {
    pub fn sorted(&self) -> Vec<FieldElement<'f>> {
        let mut v = self.form_one.to_vec();
        v.sort();
        v
    }
}

/// R = -48 w^2 + 3 w (6623 z^2 - 16 mu^2 (z - 1)^2 + 1160 mu (z - 1) z) - 48 z (4 mu - 4 mu z + z)^3.
pub fn discriminant_r<'f>(zeta: FieldElement<'f>, mu: FieldElement<'f>, omega: FieldElement<'f>) -> FieldElement<'f> {
    let zm1 = zeta - 1;
    let inner = zeta * zeta * 6623 - mu * mu * zm1 * zm1 * 16 + mu * zm1 * zeta * 1160;
    let cube = mu * 4 - mu * zeta * 4 + zeta;
    -(omega * omega * 48) + omega * inner * 3 - zeta * cube * cube * cube * 48
}

/// D^3 for a given choice of sqrt(R).
pub fn radicand<'f>(
    zeta: FieldElement<'f>,
    mu: FieldElement<'f>,
    t: FieldElement<'f>,
    sqrt_r: FieldElement<'f>,
) -> FieldElement<'f> {
    let omega = t * t;
    let lin = omega - zeta * (mu * (zeta - 1) * 4 + zeta * 47) * 18;
    (t * lin + zeta * sqrt_r * 6) / (zeta * zeta * zeta)
}

/// Closed-form roots in the field of the inputs, for the given radical choices.
/// Returns `None` when sqrt(-3), sqrt(R) or a cube root is missing from the field.
pub fn cardano_with_branch<'f>(
    zeta: FieldElement<'f>,
    mu: FieldElement<'f>,
    t: FieldElement<'f>,
    sqrt_r_branch: usize,
    cube_branch: usize,
) -> Result<Option<CardanoRoots<'f>>> {
    let f = zeta.field();
    check_characteristic(f)?;
    if zeta.is_zero() {
        return Err(Error::Precondition("zeta must be nonzero".into()));
    }
    let Some((s, _)) = f.from_int(-3).sqrt() else {
        return Ok(None);
    };
    let omega = t * t;
    let r = discriminant_r(zeta, mu, omega);
    let Some((r0, r1)) = r.sqrt() else {
        return Ok(None);
    };
    let sqrt_r = if sqrt_r_branch.is_multiple_of(2) { r0 } else { r1 };
    let rad = radicand(zeta, mu, t, sqrt_r);
    let cubes = nth_roots(rad, 3);
    if cubes.is_empty() {
        return Ok(None);
    }
    let d = cubes[cube_branch % cubes.len()];
    if d.is_zero() {
        return Err(Error::Precondition("D = 0, closed forms undefined".into()));
    }
    let z2 = zeta * zeta;
    let one = f.one();
    let c1 = (omega - zeta * (mu * (zeta - 1) * 4 + zeta * 47) * 18) / (z2 * zeta);
    let d1 = r * 36 / (z2 * z2);
    let theta = (one + s) / (one - s);

    let inv24 = f.from_int(24).inv();
    let num = zeta * (mu * (zeta - 1) * 4 - zeta) * 12 - omega;
    let g1 = ((one - s) * num / (d * z2) - (one + s) * d + t * 2 / zeta) * inv24;
    let g2 = ((one + s) * num / (d * z2) - (one - s) * d + t * 2 / zeta) * inv24;
    let g3 = (zeta * (zeta * (d * d - mu * 48 + 12) + d * t + mu * 48) + omega) / (d * z2 * 12);

    let a2 = (omega - mu * z2 * 48 + z2 * 12 + mu * zeta * 48) / z2;
    let a3 = t / zeta;
    let inv12 = f.from_int(12).inv();
    let th2 = theta * theta;
    let h1 = (th2 * d + theta * a2 / d + a3) * inv12;
    let h2 = (theta * d + th2 * a2 / d + a3) * inv12;
    let h3 = (d + a2 / d + a3) * inv12;

    Ok(Some(CardanoRoots {
        data: CardanoData {
            s,
            theta,
            omega,
            r,
            sqrt_r,
            c1,
            d1,
            radicand: rad,
            d,
            a2,
            a3,
        },
        form_one: [g1, g2, g3],
        form_two: [h1, h2, h3],
    }))
}

/// Closed-form roots for the first radical branch, or `None` if the radicals are absent.
pub fn cardano_roots<'f>(
    zeta: FieldElement<'f>,
    mu: FieldElement<'f>,
    t: FieldElement<'f>,
) -> Result<Option<CardanoRoots<'f>>> {
    cardano_with_branch(zeta, mu, t, 0, 0)
}

/// Extensions of a base field of relative degree 2, 3 and 6, built once.
pub struct CardanoSolver<'b> {
    base: &'b FieldCtx,
    exts: Vec<(usize, FieldCtx, FieldEmbedding)>,
}

/// Outcome of a solve: the relative degree of the working field and the roots found there.
pub struct Solved<'s> {
    pub ext_degree: usize,
    pub field: &'s FieldCtx,
    pub zeta: FieldElement<'s>,
    pub mu: FieldElement<'s>,
    pub t: FieldElement<'s>,
    pub roots: CardanoRoots<'s>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CubicCheck {
    pub ext_degree: usize,
    pub cardano: Vec<String>,
    pub generic: Vec<String>,
    pub agree: bool,
    pub forms_agree: bool,
    pub branch_invariant: bool,
}

impl<'b> CardanoSolver<'b> {
    pub fn new(base: &'b FieldCtx) -> Result<Self> {
        check_characteristic(base)?;
        let mut exts = Vec::new();
        for &e in &EXTENSION_DEGREES[1..] {
            let big = FieldCtx::new(base.p() as u64, base.degree() * e)?;
            let emb = FieldEmbedding::new(base, &big)?;
            exts.push((e, big, emb));
        }
        Ok(CardanoSolver { base, exts })
    }

    pub fn base(&self) -> &'b FieldCtx {
        self.base
    }

    /// Working field of the given relative degree together with the map into it.
    pub fn extension(&self, e: usize) -> Option<(&FieldCtx, &FieldEmbedding)> {
        self.exts.iter().find(|x| x.0 == e).map(|x| (&x.1, &x.2))
    }

    /// Closed-form roots in the smallest listed extension containing the radicals.
    pub fn solve(
        &self,
        zeta: FieldElement<'b>,
        mu: FieldElement<'b>,
        t: FieldElement<'b>,
    ) -> Result<Solved<'_>> {
        if let Some(roots) = cardano_roots(zeta, mu, t)? {
            return Ok(Solved {
                ext_degree: 1,
                field: self.base,
                zeta,
                mu,
                t,
                roots,
            });
        }
        for (e, big, emb) in &self.exts {
            let (z, m, tt) = (emb.apply(big, zeta), emb.apply(big, mu), emb.apply(big, t));
            if let Some(roots) = cardano_roots(z, m, tt)? {
                return Ok(Solved {
                    ext_degree: *e,
                    field: big,
                    zeta: z,
                    mu: m,
                    t: tt,
                    roots,
                });
            }
        }
        Err(Error::Construction("radicals not found in any listed extension".into()))
    }

    /// Solves, then compares against the generic root finder and the other radical branches.
    pub fn check(&self, zeta: FieldElement<'b>, mu: FieldElement<'b>, t: FieldElement<'b>) -> Result<CubicCheck> {
        let s = self.solve(zeta, mu, t)?;
        let cardano = s.roots.sorted();
        let generic = root_multiset(&cubic_roots(&radical_cubic(s.zeta, s.mu, s.t))?);
        let mut two = s.roots.form_two.to_vec();
        two.sort();
        let mut branch_invariant = true;
        for sb in 0..2 {
            for cb in 0..3 {
                match cardano_with_branch(s.zeta, s.mu, s.t, sb, cb)? {
                    Some(r) => branch_invariant &= r.sorted() == cardano,
                    None => branch_invariant = false,
                }
            }
        }
        Ok(CubicCheck {
            ext_degree: s.ext_degree,
            agree: cardano == generic,
            forms_agree: two == cardano,
            branch_invariant,
            cardano: cardano.iter().map(|x| x.to_string()).collect(),
            generic: generic.iter().map(|x| x.to_string()).collect(),
        })
    }
}

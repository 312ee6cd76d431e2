//! The curve F_alpha(X, Y) = 0 attached to collisions of
//! g(x) = (x + alpha + x^{p-1})/(x^{p-1} + alpha x^p + x) on mu_{q+1}, its model over F_q,
//! point counts against the Aubry-Perret window, and a singular-point probe.

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{BiPoly, FieldCtx, FieldElement, FieldEmbedding, QuadExtCtx, UniPoly};
use crate::permlab::{eval_trinomial, g_alpha, lift_mu_collision, TrinomialParams};

/// F_alpha and F_alpha / (X - Y) over one field.
#[derive(Debug, Clone)]
pub struct CurveSpec<'f> {
    pub alpha: FieldElement<'f>,
    pub f: BiPoly<'f>,
    pub f1: BiPoly<'f>,
}

fn uni_x_side<'f>(alpha: FieldElement<'f>) -> (UniPoly<'f>, UniPoly<'f>) {
    // a(X) = X + alpha + X^{p-1}, b(X) = X^{p-1} + alpha X^p + X
    let field = alpha.field();
    let p = field.p() as usize;
    let mut a = vec![field.zero(); p];
    a[0] += alpha;
    a[1] += field.one();
    a[p - 1] += field.one();
    let mut b = vec![field.zero(); p + 1];
    b[1] += field.one();
    b[p - 1] += field.one();
    b[p] += alpha;
    (UniPoly::new(field, a), UniPoly::new(field, b))
}

/// a(X) b(Y) - a(Y) b(X).
pub fn f_alpha_product(alpha: FieldElement<'_>) -> BiPoly<'_> {
    let (a, b) = uni_x_side(alpha);
    &BiPoly::outer(&a, &b) - &BiPoly::outer(&b, &a)
}

/// alpha (X^{p-1}Y^p - X^pY^{p-1} + XY^p - X^pY + alpha (Y - X)^p + Y^{p-1} - X^{p-1} + Y - X).
pub fn f_alpha_expanded(alpha: FieldElement<'_>) -> BiPoly<'_> {
    let field = alpha.field();
    let p = field.p();
    let one = field.one();
    let mut g = BiPoly::zero(field);
    g.add_term(one, p - 1, p);
    g.add_term(-one, p, p - 1);
    g.add_term(one, 1, p);
    g.add_term(-one, p, 1);
    g.add_term(alpha, 0, p);
    g.add_term(-alpha, p, 0);
    g.add_term(one, 0, p - 1);
    g.add_term(-one, p - 1, 0);
    g.add_term(one, 0, 1);
    g.add_term(-one, 1, 0);
    g.scale(alpha)
}

/// Builds F_alpha both ways, checks they agree and divides out X - Y.
pub fn build_f_alpha(alpha: FieldElement<'_>) -> Result<CurveSpec<'_>> {
    if alpha.is_zero() {
        return Err(Error::Precondition("alpha must be nonzero".into()));
    }
    if alpha.field().p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let f = f_alpha_product(alpha);
    if f != f_alpha_expanded(alpha) {
        return Err(Error::Construction("the two forms of F_alpha differ".into()));
    }
    let f1 = f.div_x_minus_y()?;
    Ok(CurveSpec { alpha, f, f1 })
}

impl<'f> CurveSpec<'f> {
    pub fn field(&self) -> &'f FieldCtx {
        self.alpha.field()
    }

    /// (1/alpha) F(1, Y) == (alpha + 2)(Y^p - 1).
    pub fn check_line_x1(&self) -> bool {
        let field = self.field();
        let lhs = self.f.specialize_x(field.one()).scale(self.alpha.inv());
        let rhs = UniPoly::monomial(field.one(), field.p() as usize)
            .sub_const(field.one())
            .scale(self.alpha + 2);
        lhs == rhs
    }

    /// alpha (X - 1)^p (X^{p-2} - 1).
    fn diagonal_target(&self) -> UniPoly<'f> {
        let field = self.field();
        let p = field.p() as u64;
        let xm1 = UniPoly::from_ints(field, &[-1, 1]);
        let r = UniPoly::monomial(field.one(), (p - 2) as usize).sub_const(field.one());
        (&xm1.pow_u64(p) * &r).scale(self.alpha)
    }

    /// F1(X, X) == -alpha (X - 1)^p (X^{p-2} - 1); equivalently (F/(Y - X))(X, X) carries the
    /// plus sign.
    pub fn check_diagonal(&self) -> bool {
        self.f1.diagonal() == -&self.diagonal_target()
    }

    /// Whether F1(X, X) == +alpha (X - 1)^p (X^{p-2} - 1) with F1 = F/(X - Y).
    pub fn diagonal_has_plus_sign(&self) -> bool {
        self.f1.diagonal() == self.diagonal_target()
    }

    /// F1 (X - Y) == F.
    pub fn check_factorization(&self) -> bool {
        let field = self.field();
        let xy = &BiPoly::x(field) - &BiPoly::y(field);
        &self.f1 * &xy == self.f
    }

    /// F(X, Y) == -F(Y, X).
    pub fn check_antisymmetry(&self) -> bool {
        self.f.swap() == -&self.f
    }

    /// (1/alpha) F(0, 1).
    pub fn normalized_value_at_0_1(&self) -> FieldElement<'f> {
        let field = self.field();
        self.f.eval(field.zero(), field.one()) / self.alpha
    }
}

trait SubConst<'f> {
    fn sub_const(&self, c: FieldElement<'f>) -> UniPoly<'f>;
}

impl<'f> SubConst<'f> for UniPoly<'f> {
    fn sub_const(&self, c: FieldElement<'f>) -> UniPoly<'f> {
        self - &UniPoly::constant(c)
    }
}

/// Model of the curve over F_q obtained through X -> (X + i)/(X - i).
#[derive(Debug, Clone)]
pub struct DModel<'q> {
    pub g: BiPoly<'q>,
    /// The F_{q^2} scalar that was divided out to make the coefficients Frobenius-fixed.
    pub scale: String,
}

/// Substitutes X -> (X+i)/(X-i), Y -> (Y+i)/(Y-i) into F over F_{q^2}, clears denominators by
/// the full degrees, removes Y - X and a scalar, and pulls the result back to F_q.
pub fn build_d_model<'q>(quad: &'q QuadExtCtx, spec: &CurveSpec<'q>) -> Result<DModel<'q>> {
    let ext = quad.ext();
    if !std::ptr::eq(spec.field(), ext) {
        return Err(Error::FieldMismatch);
    }
    let i = quad.i();
    let dx = spec.f.deg_x().unwrap_or(0) as usize;
    let dy = spec.f.deg_y().unwrap_or(0) as usize;
    let plus = UniPoly::new(ext, vec![i, ext.one()]);
    let minus = UniPoly::new(ext, vec![-i, ext.one()]);
    let top = dx.max(dy);
    let mut pp = vec![UniPoly::one(ext)];
    let mut mp = vec![UniPoly::one(ext)];
    for _ in 0..top {
        pp.push(pp.last().unwrap() * &plus);
        mp.push(mp.last().unwrap() * &minus);
    }
    let mut h = BiPoly::zero(ext);
    for ((a, b), c) in spec.f.terms() {
        let (a, b) = (a as usize, b as usize);
        let fx = (&pp[a] * &mp[dx - a]).scale(c);
        let gy = &pp[b] * &mp[dy - b];
        h = &h + &BiPoly::outer(&fx, &gy);
    }
    let g = h.div_x_minus_y()?;
    let (_, lead) = g
        .terms()
        .last()
        .ok_or_else(|| Error::Construction("substituted curve vanished".into()))?;
    let normalized = g.scale(lead.inv());
    let base = quad.base();
    let g_base = normalized.map_coeffs(base, |c| {
        if !quad.in_base(c) {
            return Err(Error::Construction(
                "substituted coefficients are not fixed by the q-Frobenius".into(),
            ));
        }
        quad.pull(c)
    })?;
    Ok(DModel {
        g: g_base,
        scale: lead.to_string(),
    })
}

/// (x + i)/(x - i) for x in F_q.
pub fn to_mu<'q>(quad: &'q QuadExtCtx, x: FieldElement<'q>) -> FieldElement<'q> {
    let xe = quad.lift(x);
    (xe + quad.i()) / (xe - quad.i())
}

#[derive(Debug, Clone, Serialize)]
pub struct PointCountReport {
    pub q: String,
    pub alpha: String,
    pub total_degree: u32,
    pub affine_count: u64,
    /// Affine points with x = y.
    pub diagonal_count: u64,
    pub off_diagonal_count: u64,
    /// Fibers x = c on which G vanishes identically.
    pub vertical_lines: u64,
    /// (d - 1)(d - 2) with d = p - 1.
    pub ap_constant: u64,
    /// 2(p - 1): points at infinity or on X = Y.
    pub exclusion: u64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub within_bounds: bool,
    /// q + 1 - (d-1)(d-2) sqrt(q) - 2(p-1) > 0.
    pub bound_positive: bool,
}

/// Compares a - b <= c sqrt(q) exactly; a, b, c nonnegative.
fn le_c_sqrt(a: &BigUint, b: &BigUint, c: u64, q: &BigUint) -> bool {
    if a <= b {
        return true;
    }
    let d = a - b;
    &d * &d <= BigUint::from(c) * BigUint::from(c) * q
}

/// Aubry-Perret window check for an affine count; `p` fixes d = p - 1.
pub fn window(p: u32, q: &BigUint, off_diagonal: u64, affine: u64) -> (bool, bool, f64, f64) {
    let d = p as u64 - 1;
    let c = (d - 1) * (d - 2);
    let excl = 2 * (p as u64 - 1);
    let top = q + BigUint::from(1u32);
    // off_diagonal >= q + 1 - c sqrt(q) - excl
    let lower_ok = le_c_sqrt(&top, &(BigUint::from(off_diagonal) + excl), c, q);
    // affine <= q + 1 + c sqrt(q)
    let upper_ok = le_c_sqrt(&BigUint::from(affine), &top, c, q);
    // q + 1 - excl > c sqrt(q)
    let positive = top > BigUint::from(excl) && !le_c_sqrt(&(&top - excl), &BigUint::from(0u32), c, q);
    let sq = f64::sqrt(q.to_string().parse::<f64>().unwrap_or(f64::MAX));
    let qf = sq * sq;
    (
        lower_ok && upper_ok,
        positive,
        qf + 1.0 - c as f64 * sq - excl as f64,
        qf + 1.0 + c as f64 * sq,
    )
}

/// Number of distinct roots of `f` in its field, via deg gcd(f, Y^Q - Y).
fn count_roots_by_gcd(f: &UniPoly<'_>) -> Result<u64> {
    let field = f.field();
    match f.degree() {
        None => Ok(field.size().unwrap_or(u64::MAX)),
        Some(0) => Ok(0),
        Some(_) => {
            let m = f.monic();
            let yq = UniPoly::x_pow_mod(field.order(), &m)?;
            let g = m.gcd(&(&yq - &UniPoly::x(field)));
            Ok(g.degree().unwrap_or(0) as u64)
        }
    }
}

fn fiber_counts<'q>(g: &BiPoly<'q>, x: FieldElement<'q>) -> Result<(u64, bool, bool)> {
    let fiber = g.specialize_x(x);
    if fiber.is_zero() {
        return Ok((x.field().size().unwrap_or(u64::MAX), true, true));
    }
    let n = count_roots_by_gcd(&fiber)?;
    let on_diag = fiber.eval(x).is_zero();
    Ok((n, on_diag, false))
}

/// Affine F_q-points of G, one fiber x = c at a time.
pub fn count_points_fiberwise(g: &BiPoly<'_>, alpha_text: &str) -> Result<PointCountReport> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = g.field();
    let n = field
        .size()
        .ok_or(Error::BudgetExceeded { size: u128::MAX, budget: u64::MAX as u128 })?;
    let per: Vec<(u64, bool, bool)> = (0..n)
        .into_par_iter()
        .map(|i| fiber_counts(g, field.element_at(i)))
        .collect::<Result<_>>()?;
    let affine: u64 = per.iter().map(|t| t.0).sum();
    let diagonal = per.iter().filter(|t| t.1).count() as u64;
    let vertical = per.iter().filter(|t| t.2).count() as u64;
    Ok(assemble_report(field, g, alpha_text, affine, diagonal, vertical))
}

fn assemble_report(
    field: &FieldCtx,
    g: &BiPoly<'_>,
    alpha_text: &str,
    affine: u64,
    diagonal: u64,
    vertical: u64,
) -> PointCountReport {
    let p = field.p();
    let q = field.order();
    let off = affine - diagonal;
    let (within, positive, lo, hi) = window(p, q, off, affine);
    let d = p as u64 - 1;
    PointCountReport {
        q: q.to_string(),
        alpha: alpha_text.to_string(),
        total_degree: g.total_degree().unwrap_or(0),
        affine_count: affine,
        diagonal_count: diagonal,
        off_diagonal_count: off,
        vertical_lines: vertical,
        ap_constant: (d - 1) * (d - 2),
        exclusion: 2 * d,
        lower_bound: lo,
        upper_bound: hi,
        within_bounds: within,
        bound_positive: positive,
    }
}

/// Double loop over F_q^2; small fields only.
pub fn count_points_brute(g: &BiPoly<'_>, alpha_text: &str) -> Result<PointCountReport> {
    let field = g.field();
    let n = field.size().filter(|&n| n <= 1 << 12).ok_or(Error::BudgetExceeded {
        size: field.size().unwrap_or(u64::MAX) as u128,
        budget: 1 << 12,
    })?;
    let mut affine = 0;
    let mut diagonal = 0;
    let mut vertical = 0;
    for i in 0..n {
        let x = field.element_at(i);
        let fiber = g.specialize_x(x);
        if fiber.is_zero() {
            vertical += 1;
        }
        for j in 0..n {
            let y = field.element_at(j);
            if fiber.eval(y).is_zero() {
                affine += 1;
                if i == j {
                    diagonal += 1;
                }
            }
        }
    }
    Ok(assemble_report(field, g, alpha_text, affine, diagonal, vertical))
}

/// First off-diagonal affine point of G in canonical order.
pub fn first_off_diagonal_point<'q>(g: &BiPoly<'q>) -> Result<Option<(FieldElement<'q>, FieldElement<'q>)>> {
    let field = g.field();
    let n = field.size().unwrap_or(u64::MAX);
    for i in 0..n {
        let x = field.element_at(i);
        let fiber = g.specialize_x(x);
        if fiber.is_zero() {
            let y = if x.is_zero() { field.one() } else { field.zero() };
            return Ok(Some((x, y)));
        }
        if let Some(&y) = crate::ff::roots_in_field(&fiber)?.iter().find(|&&y| y != x) {
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// A collision of g on mu_{q+1} derived from an F_q-point of the model, lifted to f.
#[derive(Debug, Clone, Serialize)]
pub struct CurveCollision {
    pub point: [String; 2],
    pub mu_pair: [String; 2],
    pub g_equal: bool,
    pub witness: [String; 2],
    pub witness_verified: bool,
}

pub fn collision_from_point<'q>(
    quad: &'q QuadExtCtx,
    alpha: FieldElement<'q>,
    pt: (FieldElement<'q>, FieldElement<'q>),
) -> Result<CurveCollision> {
    let params = TrinomialParams::with_unit_beta(quad, alpha)?;
    let (mx, my) = (to_mu(quad, pt.0), to_mu(quad, pt.1));
    let (gx, gy) = (g_alpha(&params, mx), g_alpha(&params, my));
    let g_equal = gx == gy;
    let (wx, wy) = lift_mu_collision(&params, Some(pt.0), Some(pt.1))?;
    let verified = wx != wy && eval_trinomial(&params, wx) == eval_trinomial(&params, wy);
    Ok(CurveCollision {
        point: [pt.0.to_string(), pt.1.to_string()],
        mu_pair: [mx.to_string(), my.to_string()],
        g_equal,
        witness: [wx.to_string(), wy.to_string()],
        witness_verified: verified,
    })
}

/// Full count report for (p, k, alpha), plus a back-mapped collision.
#[derive(Debug, Clone, Serialize)]
pub struct CurveCountResult {
    pub p: u32,
    pub k: usize,
    pub counts: PointCountReport,
    pub collision: Option<CurveCollision>,
}

pub fn curve_count(quad: &QuadExtCtx, alpha: FieldElement<'_>) -> Result<CurveCountResult> {
    if !std::ptr::eq(alpha.field(), quad.base()) {
        return Err(Error::FieldMismatch);
    }
    if (alpha + 2).is_zero() {
        return Err(Error::Precondition("alpha = -2 makes g vanish at 1".into()));
    }
    let spec = build_f_alpha(quad.lift(alpha))?;
    let model = build_d_model(quad, &spec)?;
    let counts = count_points_fiberwise(&model.g, &alpha.to_string())?;
    let collision = match first_off_diagonal_point(&model.g)? {
        Some(pt) => Some(collision_from_point(quad, alpha, pt)?),
        None => None,
    };
    Ok(CurveCountResult {
        p: quad.p(),
        k: quad.k(),
        counts,
        collision,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularReport {
    pub degree: usize,
    /// Singular points of F1 = 0 with X = 1 or Y = 1 off the diagonal.
    pub unit_branch: usize,
    /// X^{p-2} = Y^{p-2} = 1, X != Y, X, Y != 1.
    pub type_three: usize,
    /// Those also satisfy 2XY + alpha(X + Y) + 2 = 0.
    pub type_three_on_conic: usize,
    pub on_axes: usize,
    pub diagonal: Vec<String>,
    /// The only singular diagonal point, if any, is (1, 1).
    pub diagonal_only_unit: bool,
}

/// Multiplicative order of p modulo n.
fn order_mod(p: u64, n: u64) -> usize {
    let mut acc = p % n;
    let mut e = 1;
    while acc != 1 % n {
        acc = acc * p % n;
        e += 1;
    }
    e
}

/// Default probe degree lcm(k, m) with m = ord_{p-2}(p) capped at 6.
pub fn default_probe_degree(p: u32, k: usize) -> usize {
    let m = if p <= 3 { 1 } else { order_mod(p as u64, p as u64 - 2).min(6) };
    k.lcm(&m)
}

fn is_singular<'f>(spec: &CurveSpec<'f>, fx: &BiPoly<'f>, fy: &BiPoly<'f>, x: FieldElement<'f>, y: FieldElement<'f>) -> bool {
    spec.f1.eval(x, y).is_zero() && fx.eval(x, y).is_zero() && fy.eval(x, y).is_zero()
}

/// Affine singular points of F1(X, Y) = 0 over F_{p^m}. The partials of F force X = 1,
/// Y = 1 or X^{p-2} = Y^{p-2} = 1 away from the diagonal, so only those are scanned.
pub fn singular_probe(alpha: FieldElement<'_>, degree: usize) -> Result<SingularReport> {
    let src = alpha.field();
    if !degree.is_multiple_of(src.degree()) {
        return Err(Error::NotInSubfield(src.degree()));
    }
    let big = FieldCtx::new(src.p() as u64, degree)?;
    let emb = FieldEmbedding::new(src, &big)?;
    let a = emb.apply(&big, alpha);
    let spec = build_f_alpha(a)?;
    let fx = spec.f1.partial_x();
    let fy = spec.f1.partial_y();
    let p = big.p() as usize;
    let one = big.one();
    let r = crate::ff::nth_roots(one, p - 2);

    let mut unit_branch = 0;
    let mut type_three = 0;
    let mut on_conic = 0;
    for &x in &r {
        for &y in &r {
            if x == y || !is_singular(&spec, &fx, &fy, x, y) {
                continue;
            }
            if x.is_one() || y.is_one() {
                unit_branch += 1;
            } else {
                type_three += 1;
                if (x * y * 2 + a * (x + y) + 2).is_zero() {
                    on_conic += 1;
                }
            }
        }
    }
    // X = 1 or Y = 1 lines: F(1, Y) = alpha(alpha + 2)(Y^p - 1) forces Y = 1
    let line_roots = crate::ff::roots_in_field(&spec.f1.specialize_x(one))?;
    for &y in &line_roots {
        if y != one && is_singular(&spec, &fx, &fy, one, y) && !r.contains(&y) {
            unit_branch += 1;
        }
    }
    let mut on_axes = 0;
    for (x, y) in [(big.zero(), one), (one, big.zero()), (big.zero(), big.zero())] {
        if is_singular(&spec, &fx, &fy, x, y) {
            on_axes += 1;
        }
    }
    let diag_roots = crate::ff::roots_in_field(&spec.f1.diagonal())?;
    let diag: Vec<_> = diag_roots
        .into_iter()
        .filter(|&x| is_singular(&spec, &fx, &fy, x, x))
        .collect();
    Ok(SingularReport {
        degree,
        unit_branch,
        type_three,
        type_three_on_conic: on_conic,
        on_axes,
        diagonal_only_unit: diag.iter().all(|x| x.is_one()),
        diagonal: diag.iter().map(|x| x.to_string()).collect(),
    })
}

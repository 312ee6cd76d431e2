//! Solving f(X) = h^{pq} through the substitution X = -B/2 + B y and the per-z cubic.

use rayon::prelude::*;
use serde::Serialize;

use crate::charsum::neg_one_roots;
use crate::cubic::{cubic_roots, gamma_cubic};
use crate::error::{Error, Result};
use crate::ff::{FieldElement, QuadExtCtx};
use crate::lintri::{linearized_kernel, norm_criterion, span};
use crate::permlab::{eval_trinomial, TrinomialParams};

/// Largest q^2 for which `brute_force_preimages` scans the field.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 22;

/// Candidate budget for the h search.
pub const H_SEARCH_BUDGET: usize = 10_000;

/// beta with beta^p = alpha, i.e. alpha^{p^{2k-1}}.
pub fn beta_from_alpha(alpha: FieldElement<'_>, k: usize) -> FieldElement<'_> {
    alpha.frobenius(2 * k - 1)
}

/// B = (h^{p^k} - h)/beta.
pub fn build_b<'a>(h: FieldElement<'a>, beta: FieldElement<'a>, k: usize) -> Result<FieldElement<'a>> {
    if beta.is_zero() {
        return Err(Error::Precondition("beta must be nonzero".into()));
    }
    Ok((h.frobenius(k) - h) / beta)
}

/// Data of the gamma-equation for one (alpha, h):
/// y^{p+2} - ((1 - 4mu)/4) y^p - (T/2) y^2 - mu y + T/8 = 0.
#[derive(Debug, Clone, Copy)]
pub struct GammaEquation<'a> {
    pub alpha: FieldElement<'a>,
    pub beta: FieldElement<'a>,
    pub h: FieldElement<'a>,
    pub b: FieldElement<'a>,
    pub mu: FieldElement<'a>,
    /// t = (h^{p^{k+1}} + h^p)/(h^{p^{k+1}} - h^p)
    pub t_small: FieldElement<'a>,
    /// T = (1 - 2 mu) t
    pub t: FieldElement<'a>,
}

/// mu = 1/(alpha + 2).
pub fn mu_of_alpha(alpha: FieldElement<'_>) -> Result<FieldElement<'_>> {
    if (alpha + 2).is_zero() {
        return Err(Error::Precondition("alpha = -2 has no mu".into()));
    }
    Ok((alpha + 2).inv())
}

/// T = (1 - 2 mu) t for a given h.
pub fn t_of_h<'a>(h: FieldElement<'a>, mu: FieldElement<'a>, k: usize) -> FieldElement<'a> {
    let hp = h.frobenius(1);
    let hk = h.frobenius(k + 1);
    let t = (hk + hp) / (hk - hp);
    (mu.field().one() - mu * 2) * t
}

impl<'a> GammaEquation<'a> {
    /// `alpha` and `h` live in F_{q^2}; alpha must lie in F_q.
    pub fn new(quad: &'a QuadExtCtx, alpha: FieldElement<'a>, h: FieldElement<'a>) -> Result<Self> {
        let k = quad.k();
        if alpha.is_zero() || !quad.in_base(alpha) {
            return Err(Error::Precondition("alpha must be a nonzero element of F_q".into()));
        }
        if quad.in_base(h) {
            return Err(Error::Precondition("h must lie outside F_q".into()));
        }
        let mu = mu_of_alpha(alpha)?;
        let beta = beta_from_alpha(alpha, k);
        let b = build_b(h, beta, k)?;
        let hp = h.frobenius(1);
        let hk = h.frobenius(k + 1);
        let t_small = (hk + hp) / (hk - hp);
        Ok(GammaEquation {
            alpha,
            beta,
            h,
            b,
            mu,
            t_small,
            t: (quad.ext().one() - mu * 2) * t_small,
        })
    }

    pub fn eval(&self, y: FieldElement<'a>) -> FieldElement<'a> {
        let f = y.field();
        let yp = y.frobenius(1);
        let quarter = f.from_int(4).inv();
        yp * y * y - (f.one() - self.mu * 4) * quarter * yp - self.t / f.from_int(2) * y * y - self.mu * y
            + self.t / f.from_int(8)
    }

    /// X = -B/2 + B y.
    pub fn to_x(&self, y: FieldElement<'a>) -> FieldElement<'a> {
        self.b * y - self.b / self.b.field().from_int(2)
    }
}

#[derive(Debug, Clone)]
pub struct PipelineResult<'a> {
    pub equation: GammaEquation<'a>,
    /// Admissible y (y^{p^k} = -y), sorted.
    pub gammas: Vec<FieldElement<'a>>,
    /// Corresponding X, sorted.
    pub solutions: Vec<FieldElement<'a>>,
    /// z used for each nonzero y, aligned with `gammas` (None for y = 0).
    pub zetas: Vec<Option<FieldElement<'a>>>,
}

/// All y with y^{p^k} = -y solving the gamma-equation, via y^p = z y with z^e = -1,
/// e = (p^k - 1)/(p - 1), and the resulting cubic; then X = -B/2 + B y.
pub fn gamma_root_pipeline<'a>(
    quad: &'a QuadExtCtx,
    alpha: FieldElement<'a>,
    h: FieldElement<'a>,
) -> Result<PipelineResult<'a>> {
    let eq = GammaEquation::new(quad, alpha, h)?;
    let ext = quad.ext();
    let p = quad.p() as u64;
    let k = quad.k();
    let e = (p.pow(k as u32) - 1) / (p - 1);
    let mut found: Vec<(FieldElement<'a>, Option<FieldElement<'a>>)> = Vec::new();
    if eq.t.is_zero() {
        found.push((ext.zero(), None));
    }
    for zeta in neg_one_roots(ext, e) {
        for (y, _) in cubic_roots(&gamma_cubic(zeta, eq.mu, eq.t))? {
            if !y.is_zero() && y.frobenius(1) == zeta * y {
                found.push((y, Some(zeta)));
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    for &(y, _) in &found {
        if !eq.eval(y).is_zero() || y.frobenius(k) != -y {
            return Err(Error::PropertyViolation(format!("cubic root {y} does not solve the gamma-equation")));
        }
    }
    let mut solutions: Vec<_> = found.iter().map(|&(y, _)| eq.to_x(y)).collect();
    solutions.sort();
    Ok(PipelineResult {
        equation: eq,
        gammas: found.iter().map(|x| x.0).collect(),
        zetas: found.iter().map(|x| x.1).collect(),
        solutions,
    })
}

/// Target value h^{pq} of f.
pub fn target_value<'a>(quad: &'a QuadExtCtx, h: FieldElement<'a>) -> FieldElement<'a> {
    quad.conj(h.frobenius(1))
}

/// All X in F_{q^2} with f(X) = h^{pq}, by scanning.
pub fn brute_force_preimages<'a>(
    quad: &'a QuadExtCtx,
    alpha: FieldElement<'a>,
    h: FieldElement<'a>,
) -> Result<Vec<FieldElement<'a>>> {
    let ext = quad.ext();
    let n = ext.size().filter(|&n| n <= BRUTE_FORCE_LIMIT).ok_or(Error::BudgetExceeded {
        size: ext.size().map(u128::from).unwrap_or(u128::MAX),
        budget: BRUTE_FORCE_LIMIT as u128,
    })?;
    let params = TrinomialParams::with_unit_beta(quad, quad.pull(alpha)?)?;
    let target = target_value(quad, h);
    let mut out: Vec<_> = (0..n)
        .into_par_iter()
        .map(|i| ext.element_at(i))
        .filter(|&x| eval_trinomial(&params, x) == target)
        .collect();
    out.sort();
    Ok(out)
}

/// Result of the h search: h with T(h) = T0 and T0 antisymmetric.
#[derive(Debug, Clone, Serialize)]
pub struct HSearch {
    pub h: String,
    pub t: String,
    pub a: String,
    /// (-1)^{l/d} N(a) = 1, i.e. X^{p^k} + a X has nonzero roots.
    pub norm_condition: bool,
    pub kernel_dimension: usize,
    /// Every kernel element is an F_{p^k}-multiple of h.
    pub kernel_is_line: bool,
    /// T^p = -T (odd k) or T^{p^k} = -T (even k), T != 0.
    pub t_antisymmetric: bool,
    /// T^2 in F_p.
    pub omega_in_prime_field: bool,
    pub candidates_tried: usize,
}

/// Found h together with its certificate data.
pub struct FoundH<'a> {
    pub h: FieldElement<'a>,
    pub t: FieldElement<'a>,
    pub report: HSearch,
}

/// Nonzero T0 in the kernel of X^p + X (odd k) or X^{p^k} + X (even k), canonical order.
pub fn antisymmetric_targets(quad: &QuadExtCtx) -> Vec<FieldElement<'_>> {
    let ext = quad.ext();
    let e = if quad.k() % 2 == 1 { 1 } else { quad.k() };
    let basis = linearized_kernel(ext, &[(e, ext.one()), (0, ext.one())]);
    span(ext, &basis).into_iter().filter(|x| !x.is_zero()).collect()
}

/// h in F_{q^2} \ F_q whose T = (1 - 2mu) t is a prescribed antisymmetric target; `skip`
/// discards the first candidates (used to walk to further h).
pub fn find_h_antisymmetric_t<'a>(quad: &'a QuadExtCtx, mu: FieldElement<'a>, skip: usize) -> Result<FoundH<'a>> {
    let ext = quad.ext();
    let k = quad.k();
    let one = ext.one();
    let scale = one - mu * 2;
    if scale.is_zero() {
        return Err(Error::Precondition("mu = 1/2".into()));
    }
    let mut tried = 0usize;
    let mut seen = 0usize;
    for t0 in antisymmetric_targets(quad) {
        if tried >= H_SEARCH_BUDGET {
            break;
        }
        tried += 1;
        let l0 = (t0 / scale).frobenius(2 * k - 1);
        if l0 == one {
            continue;
        }
        let a = (one + l0) / (one - l0);
        if (a + 1).is_zero() {
            continue;
        }
        let kernel = linearized_kernel(ext, &[(k, one), (0, a)]);
        let norm_ok = norm_criterion(a, k);
        if kernel.is_empty() != !norm_ok {
            return Err(Error::PropertyViolation(format!(
                "norm criterion disagrees with the kernel of X^(p^k) + a X for a = {a}"
            )));
        }
        if kernel.is_empty() {
            continue;
        }
        let elements = span(ext, &kernel);
        let h = elements[1];
        if quad.in_base(h) {
            continue;
        }
        let t = t_of_h(h, mu, k);
        if t != t0 {
            return Err(Error::PropertyViolation(format!("h = {h} gives T = {t}, expected {t0}")));
        }
        if seen < skip {
            seen += 1;
            continue;
        }
        let kernel_is_line = kernel.iter().all(|&v| (v / h).in_subfield(k));
        let t_antisymmetric = !t.is_zero()
            && if k % 2 == 1 { t.frobenius(1) == -t } else { t.frobenius(k) == -t };
        return Ok(FoundH {
            h,
            t,
            report: HSearch {
                h: h.to_string(),
                t: t.to_string(),
                a: a.to_string(),
                norm_condition: norm_ok,
                kernel_dimension: kernel.len(),
                kernel_is_line,
                t_antisymmetric,
                omega_in_prime_field: (t * t).in_prime_field(),
                candidates_tried: tried,
            },
        });
    }
    Err(Error::PropertyViolation(format!(
        "no h found within {tried} candidates (budget {H_SEARCH_BUDGET})"
    )))
}

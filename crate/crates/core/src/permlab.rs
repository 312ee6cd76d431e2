//! The trinomial family f(X) = X^{q(p-1)+1} + a X^{pq} + b X^{q+p-1} over F_{q^2},
//! exhaustive permutation checks, and the reduction to the rational map g on mu_{q+1}.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{FieldElement, QuadExtCtx};

/// Default ceiling on q^2 for the exhaustive scan; larger fields go through mu_{q+1}.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 1 << 16;

/// Environment variable overriding the exhaustive budget.
pub const BUDGET_ENV: &str = "PERMTRI_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Permutation,
    NotPermutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    MuCollision,
}

/// Verdict for one (p, k, alpha). `witness` is a pair x != y of F_{q^2} with f(x) = f(y);
/// `mu_witness`, when present, is the pair in mu_{q+1} that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermReport {
    pub p: u32,
    pub k: usize,
    pub alpha: String,
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<[String; 2]>,
    pub mu_witness: Option<[String; 2]>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub exhaustive_budget: u128,
    /// When false, `elapsed_ms` is reported as 0 so that output is reproducible.
    pub record_timing: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET,
            record_timing: false,
        }
    }
}

/// f_{alpha,beta} over the quadratic extension described by `quad`.
#[derive(Clone, Copy)]
pub struct TrinomialParams<'a> {
    pub quad: &'a QuadExtCtx,
    /// alpha in F_q
    pub alpha: FieldElement<'a>,
    /// beta in F_q
    pub beta: FieldElement<'a>,
    alpha_ext: FieldElement<'a>,
    beta_ext: FieldElement<'a>,
}

impl<'a> TrinomialParams<'a> {
    pub fn new(quad: &'a QuadExtCtx, alpha: FieldElement<'a>, beta: FieldElement<'a>) -> Result<Self> {
        if !std::ptr::eq(alpha.field(), quad.base()) || !std::ptr::eq(beta.field(), quad.base()) {
            return Err(Error::FieldMismatch);
        }
        if (alpha * beta).is_zero() {
            return Err(Error::Precondition("alpha and beta must be nonzero".into()));
        }
        Ok(TrinomialParams {
            quad,
            alpha,
            beta,
            alpha_ext: quad.lift(alpha),
            beta_ext: quad.lift(beta),
        })
    }

    /// The family with beta = 1.
    pub fn with_unit_beta(quad: &'a QuadExtCtx, alpha: FieldElement<'a>) -> Result<Self> {
        Self::new(quad, alpha, quad.base().one())
    }

    pub fn alpha_ext(&self) -> FieldElement<'a> {
        self.alpha_ext
    }

    pub fn beta_ext(&self) -> FieldElement<'a> {
        self.beta_ext
    }

    fn report(&self, verdict: Verdict, method: Method) -> PermReport {
        PermReport {
            p: self.quad.p(),
            k: self.quad.k(),
            alpha: self.alpha.to_string(),
            verdict,
            method,
            witness: None,
            mu_witness: None,
            elapsed_ms: 0,
        }
    }
}

/// f(x) = x^{q(p-1)+1} + alpha x^{pq} + beta x^{q+p-1}, computed from y = x^q.
pub fn eval_trinomial<'a>(params: &TrinomialParams<'a>, x: FieldElement<'a>) -> FieldElement<'a> {
    let p = params.quad.p() as u64;
    let y = params.quad.conj(x);
    let y_pm1 = y.pow_u64(p - 1);
    let x_pm1 = x.pow_u64(p - 1);
    y_pm1 * x + params.alpha_ext * y.frobenius(1) + params.beta_ext * y * x_pm1
}

/// The scanned field's elements are indexed canonically, so q^2 must fit the budget.
pub fn is_permutation_exhaustive(params: &TrinomialParams<'_>, opts: &SearchOptions) -> Result<PermReport> {
    let start = Instant::now();
    let ext = params.quad.ext();
    let n = ext.size().map(u128::from).unwrap_or(u128::MAX);
    if n > opts.exhaustive_budget {
        return Err(Error::BudgetExceeded {
            size: n,
            budget: opts.exhaustive_budget,
        });
    }
    let n = n as u64;
    let words: Vec<AtomicU64> = (0..n.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let mut repeated: Vec<u64> = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let img = eval_trinomial(params, ext.element_at(i)).index();
            let bit = 1u64 << (img % 64);
            let prev = words[(img / 64) as usize].fetch_or(bit, Ordering::Relaxed);
            (prev & bit != 0).then_some(img)
        })
        .collect();
    repeated.sort_unstable();
    repeated.dedup();
    let mut report = params.report(Verdict::Permutation, Method::Exhaustive);
    if !repeated.is_empty() {
        let hit: HashSet<u64> = repeated.into_iter().collect();
        let image_of = |i: u64| eval_trinomial(params, ext.element_at(i)).index();
        let x = (0..n)
            .into_par_iter()
            .find_first(|&i| hit.contains(&image_of(i)))
            .expect("a repeated image has a preimage");
        let fx = image_of(x);
        let y = ((x + 1)..n)
            .into_par_iter()
            .find_first(|&j| image_of(j) == fx)
            .expect("a repeated image has two preimages");
        report.verdict = Verdict::NotPermutation;
        report.witness = Some([ext.element_at(x).to_string(), ext.element_at(y).to_string()]);
    }
    if opts.record_timing {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

/// mu_{q+1} listed as 1 followed by (t + i)/(t - i) for t in F_q in canonical order.
pub struct MuGroup<'a> {
    /// (t, element); t is `None` for the element 1.
    pub members: Vec<(Option<FieldElement<'a>>, FieldElement<'a>)>,
}

impl<'a> MuGroup<'a> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'a>> + '_ {
        self.members.iter().map(|&(_, x)| x)
    }
}

pub fn mu_enumerate(quad: &QuadExtCtx) -> MuGroup<'_> {
    let i = quad.i();
    let base = quad.base();
    let n = base.size().expect("F_q must be enumerable");
    let mut members = Vec::with_capacity(n as usize + 1);
    members.push((None, quad.ext().one()));
    let rest: Vec<_> = (0..n)
        .into_par_iter()
        .map(|j| {
            let t = base.element_at(j);
            let tl = quad.lift(t);
            (Some(t), (tl + i) / (tl - i))
        })
        .collect();
    members.extend(rest);
    MuGroup { members }
}

/// Value of g on mu_{q+1}; a zero denominator is reported as value 0 with the flag set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GValue<'a> {
    pub value: FieldElement<'a>,
    pub zero_denominator: bool,
}

/// g(x) = (x + alpha + beta x^{p-1}) / (x^{p-1} + alpha x^p + beta x).
pub fn g_alpha<'a>(params: &TrinomialParams<'a>, x: FieldElement<'a>) -> GValue<'a> {
    let p = params.quad.p() as u64;
    let (a, b) = (params.alpha_ext, params.beta_ext);
    let x_pm1 = x.pow_u64(p - 1);
    let num = x + a + b * x_pm1;
    let den = x_pm1 + a * x_pm1 * x + b * x;
    if den.is_zero() {
        GValue {
            value: x.field().zero(),
            zero_denominator: true,
        }
    } else {
        GValue {
            value: num / den,
            zero_denominator: false,
        }
    }
}

/// g(x) = x^{q+p-1} (x^{p-2} + alpha x^{p-1} + beta)^{q-1}, the power form.
pub fn g_alpha_power_form<'a>(params: &TrinomialParams<'a>, x: FieldElement<'a>) -> FieldElement<'a> {
    let p = params.quad.p() as u64;
    let q = params.quad.q();
    let r = q + BigUint::from(p - 1);
    let h = x.pow_u64(p - 2) + params.alpha_ext * x.pow_u64(p - 1) + params.beta_ext;
    x.pow(&r) * h.pow(&(q - BigUint::one()))
}

/// (gcd(q+p-1, q-1), gcd(q+p-1, q^2-1)).
pub fn reduction_gcds(p: u32, k: usize) -> (BigUint, BigUint) {
    let q = BigUint::from(p).pow(k as u32);
    let r = &q + BigUint::from(p - 1);
    let g1 = r.gcd(&(&q - BigUint::one()));
    let g2 = r.gcd(&(&q * &q - BigUint::one()));
    (g1, g2)
}

/// An x in F_{q^2} with x^{q-1} equal to the given member of mu_{q+1}.
fn mu_preimage<'a>(quad: &'a QuadExtCtx, t: Option<FieldElement<'a>>) -> FieldElement<'a> {
    match t {
        None => quad.ext().one(),
        Some(t) => quad.lift(t) - quad.i(),
    }
}

/// Turns g(x) = g(y) on mu_{q+1}, with x = (t_x + i)/(t_x - i) (t = None for x = 1), into a
/// pair X != Y' with f(X) = f(Y'): X^{q-1} = x, Y^{q-1} = y and Y' = lambda Y with
/// lambda^p = f(X)/f(Y) in F_q.
pub fn lift_mu_collision<'a>(
    params: &TrinomialParams<'a>,
    tx: Option<FieldElement<'a>>,
    ty: Option<FieldElement<'a>>,
) -> Result<(FieldElement<'a>, FieldElement<'a>)> {
    let quad = params.quad;
    let big_x = mu_preimage(quad, tx);
    let big_y = mu_preimage(quad, ty);
    let ratio = eval_trinomial(params, big_x) / eval_trinomial(params, big_y);
    let lambda = ratio.pth_root();
    if !quad.in_base(lambda) || lambda.is_zero() {
        return Err(Error::PropertyViolation(
            "collision on mu_(q+1) did not lift to F_q-scaled preimages".into(),
        ));
    }
    Ok((big_x, lambda * big_y))
}

/// Verdict through g on mu_{q+1}: f permutes F_{q^2} iff gcd(q+p-1, q-1) = 1 and g
/// permutes mu_{q+1}.
pub fn mu_collision_search(params: &TrinomialParams<'_>, opts: &SearchOptions) -> Result<PermReport> {
    let start = Instant::now();
    let quad = params.quad;
    let (g1, _) = reduction_gcds(quad.p(), quad.k());
    if !g1.is_one() {
        return Err(Error::Precondition(format!(
            "gcd(q+p-1, q-1) = {g1}, the reduction to mu_(q+1) does not apply"
        )));
    }
    let mu = mu_enumerate(quad);
    let values: Vec<GValue<'_>> = mu
        .members
        .par_iter()
        .map(|&(_, x)| g_alpha(params, x))
        .collect();
    let mut report = params.report(Verdict::Permutation, Method::MuCollision);
    let ext = quad.ext();

    if let Some(pos) = values.iter().position(|v| v.zero_denominator) {
        // g vanishes there, so f(X) = 0 = f(0) for X^{q-1} = x.
        let (t, x) = mu.members[pos];
        let big_x = mu_preimage(quad, t);
        report.verdict = Verdict::NotPermutation;
        report.witness = Some([ext.zero().to_string(), big_x.to_string()]);
        report.mu_witness = Some([x.to_string(), x.to_string()]);
    } else {
        let mut keyed: Vec<(FieldElement<'_>, usize)> =
            values.iter().enumerate().map(|(i, v)| (v.value, i)).collect();
        keyed.par_sort_unstable();
        let mut best: Option<(usize, usize)> = None;
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 {
                let pair = (w[0].1, w[1].1);
                if best.is_none_or(|b| pair < b) {
                    best = Some(pair);
                }
            }
        }
        if let Some((a, b)) = best {
            let (ta, xa) = mu.members[a];
            let (tb, xb) = mu.members[b];
            let (big_x, other) = lift_mu_collision(params, ta, tb)?;
            report.verdict = Verdict::NotPermutation;
            report.witness = Some([big_x.to_string(), other.to_string()]);
            report.mu_witness = Some([xa.to_string(), xb.to_string()]);
        }
    }
    if opts.record_timing {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

/// Exhaustive scan when q^2 fits the budget, otherwise the mu_{q+1} collision search.
pub fn verdict(params: &TrinomialParams<'_>, opts: &SearchOptions) -> Result<PermReport> {
    let n = params.quad.ext().size().map(u128::from).unwrap_or(u128::MAX);
    if n <= opts.exhaustive_budget {
        is_permutation_exhaustive(params, opts)
    } else {
        mu_collision_search(params, opts)
    }
}

/// Checks a report's witness against f: the two points differ and have equal images.
pub fn verify_witness(params: &TrinomialParams<'_>, report: &PermReport) -> Result<bool> {
    let Some([a, b]) = &report.witness else {
        return Ok(report.verdict == Verdict::Permutation);
    };
    let ext = params.quad.ext();
    let x = ext.parse(a)?;
    let y = ext.parse(b)?;
    Ok(x != y && eval_trinomial(params, x) == eval_trinomial(params, y))
}

//! Roots of the linearized trinomial X^{p^n} - A X - B over F_{p^l}.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{geometric_ratio, FieldCtx, FieldElement, FpMatrix};

/// Exhaustive scans are refused above this many field elements.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// One equation X^{p^n} - A X - B = 0 over the field of `a`, with derived quantities.
#[derive(Debug, Clone)]
pub struct LinTriInstance<'f> {
    pub n: usize,
    pub a: FieldElement<'f>,
    pub b: FieldElement<'f>,
    /// gcd(l, n)
    pub d: usize,
    /// l / d
    pub m: usize,
    pub alpha_last: FieldElement<'f>,
    pub beta_last: FieldElement<'f>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification<'f> {
    NoRoots,
    Unique(FieldElement<'f>),
    /// p^d roots base_root + delta * tau, delta in F_{p^d}.
    Kernel {
        base_root: FieldElement<'f>,
        tau: FieldElement<'f>,
        roots: Vec<FieldElement<'f>>,
    },
}

impl<'f> Classification<'f> {
    pub fn roots(&self) -> Vec<FieldElement<'f>> {
        match self {
            Classification::NoRoots => Vec::new(),
            Classification::Unique(x) => vec![*x],
            Classification::Kernel { roots, .. } => roots.clone(),
        }
    }

    pub fn case_name(&self) -> &'static str {
        match self {
            Classification::NoRoots => "no_roots",
            Classification::Unique(_) => "unique",
            Classification::Kernel { .. } => "kernel",
        }
    }
}

/// Serializable summary of a classified instance.
#[derive(Debug, Clone, Serialize)]
pub struct LinTriReport {
    pub p: u32,
    pub l: usize,
    pub n: usize,
    pub a: String,
    pub b: String,
    pub d: usize,
    pub m: usize,
    pub alpha_last: String,
    pub beta_last: String,
    pub case: String,
    pub root_count: usize,
    pub roots: Vec<String>,
    pub tau: Option<String>,
    pub brute_force_agrees: Option<bool>,
}

/// sum_{j=lo}^{hi} p^{n(j+1)} (empty sums are 0).
fn exponent_sum(p: u32, n: usize, lo: usize, hi: Option<usize>) -> BigUint {
    let mut acc = BigUint::zero();
    if let Some(hi) = hi {
        for j in lo..=hi {
            acc += BigUint::from(p).pow((n * (j + 1)) as u32);
        }
    }
    acc
}

impl<'f> LinTriInstance<'f> {
    pub fn new(n: usize, a: FieldElement<'f>, b: FieldElement<'f>) -> Result<Self> {
        let field = a.field();
        if !std::ptr::eq(field, b.field()) {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() {
            return Err(Error::Precondition("A must be nonzero".into()));
        }
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        let l = field.degree();
        let d = l.gcd(&n);
        let m = l / d;
        let mut inst = LinTriInstance {
            n,
            a,
            b,
            d,
            m,
            alpha_last: a,
            beta_last: b,
        };
        inst.alpha_last = inst.alpha(m - 1);
        inst.beta_last = inst.beta(m - 1);
        Ok(inst)
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.a.field()
    }

    fn group_order(&self) -> BigUint {
        self.field().order() - BigUint::one()
    }

    fn a_pow(&self, e: &BigUint) -> FieldElement<'f> {
        self.a.pow(&(e % self.group_order()))
    }

    /// alpha_r = A^{(p^{n(r+1)} - 1)/(p^n - 1)}.
    pub fn alpha(&self, r: usize) -> FieldElement<'f> {
        self.a_pow(&geometric_ratio(self.field().p(), self.n * (r + 1), self.n))
    }

    /// s_i = sum_{j=i}^{r-1} p^{n(j+1)}, with s_r = 0.
    pub fn s_exponent(&self, i: usize, r: usize) -> BigUint {
        exponent_sum(self.field().p(), self.n, i, r.checked_sub(1))
    }

    /// t_i = sum_{j=i}^{m-2} p^{n(j+1)}.
    pub fn t_exponent(&self, i: usize) -> BigUint {
        exponent_sum(self.field().p(), self.n, i, self.m.checked_sub(2))
    }

    /// beta_r = sum_{i=0}^{r} A^{s_i} B^{p^{ni}}.
    pub fn beta(&self, r: usize) -> FieldElement<'f> {
        let mut acc = self.field().zero();
        for i in 0..=r {
            acc += self.a_pow(&self.s_exponent(i, r)) * self.b.frobenius(self.n * i);
        }
        acc
    }

    /// F(x) = x^{p^n} - A x - B.
    pub fn eval(&self, x: FieldElement<'f>) -> FieldElement<'f> {
        x.frobenius(self.n) - self.a * x - self.b
    }

    /// Relative trace to F_{p^d}.
    pub fn trace_d(&self, c: FieldElement<'f>) -> FieldElement<'f> {
        c.trace_to(self.d).expect("d divides l")
    }
}

/// Kernel of x -> sum c_j x^{p^{e_j}} on the coefficient field, as an F_p-basis.
pub fn linearized_kernel<'f>(field: &'f FieldCtx, terms: &[(usize, FieldElement<'f>)]) -> Vec<FieldElement<'f>> {
    let k = field.degree();
    let columns: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut coeffs = vec![0i64; k];
            coeffs[i] = 1;
            let basis = field.from_coeffs(&coeffs).expect("k coefficients");
            let mut img = field.zero();
            for &(e, c) in terms {
                img += c * basis.frobenius(e);
            }
            img.coeffs()
        })
        .collect();
    FpMatrix::from_columns(field.p(), k, &columns)
        .nullspace()
        .into_iter()
        .map(|v| {
            let ints: Vec<i64> = v.into_iter().map(i64::from).collect();
            field.from_coeffs(&ints).expect("k coefficients")
        })
        .collect()
}

/// Every F_p-combination of `basis`, sorted canonically.
pub fn span<'f>(field: &'f FieldCtx, basis: &[FieldElement<'f>]) -> Vec<FieldElement<'f>> {
    let mut out = vec![field.zero()];
    for &v in basis {
        let mut next = Vec::with_capacity(out.len() * field.p() as usize);
        for &w in &out {
            let mut acc = w;
            for _ in 0..field.p() {
                next.push(acc);
                acc += v;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Whether X^{p^r} + a X has a nonzero root, decided by the norm:
/// (-1)^{l/d} a^{(p^l - 1)/(p^d - 1)} = 1 with d = gcd(r, l).
pub fn norm_criterion(a: FieldElement<'_>, r: usize) -> bool {
    let l = a.field().degree();
    let d = l.gcd(&r);
    let norm = a.norm_to(d).expect("d divides l");
    let sign = if (l / d).is_multiple_of(2) { 1 } else { -1 };
    (norm * sign).is_one()
}

/// Case analysis for X^{p^n} - A X - B.
pub fn classify<'f>(inst: &LinTriInstance<'f>) -> Result<Classification<'f>> {
    let field = inst.field();
    if !inst.alpha_last.is_one() {
        let x = inst.beta_last / (field.one() - inst.alpha_last);
        return Ok(Classification::Unique(x));
    }
    if !inst.beta_last.is_zero() {
        return Ok(Classification::NoRoots);
    }
    let kernel_basis = linearized_kernel(field, &[(inst.n, field.one()), (0, -inst.a)]);
    if kernel_basis.len() != inst.d {
        return Err(Error::PropertyViolation(format!(
            "kernel of X^(p^n) - A X has dimension {} instead of {}",
            kernel_basis.len(),
            inst.d
        )));
    }
    let kernel = span(field, &kernel_basis);
    let tau = kernel[1];
    let c = choose_c(inst)?;
    let tr = inst.trace_d(c);
    let mut acc = field.zero();
    let mut inner = field.zero();
    for i in 0..inst.m {
        inner += c.frobenius(inst.n * i);
        acc += inner * inst.a_pow(&inst.t_exponent(i)) * inst.b.frobenius(inst.n * i);
    }
    let base_root = acc / tr;
    let mut roots: Vec<_> = kernel.iter().map(|&k| base_root + k).collect();
    roots.sort();
    Ok(Classification::Kernel {
        base_root,
        tau,
        roots,
    })
}

/// c = 1 when Tr_d(1) = m is nonzero mod p, else the first element with nonzero trace.
fn choose_c<'f>(inst: &LinTriInstance<'f>) -> Result<FieldElement<'f>> {
    let field = inst.field();
    if !inst.trace_d(field.one()).is_zero() {
        return Ok(field.one());
    }
    let mut i = 1u64;
    loop {
        let c = field.element_at(i);
        if !inst.trace_d(c).is_zero() {
            return Ok(c);
        }
        i += 1;
        if i > BRUTE_FORCE_LIMIT {
            return Err(Error::Construction("no element with nonzero trace found".into()));
        }
    }
}

/// Exhaustive root scan.
pub fn brute_roots<'f>(inst: &LinTriInstance<'f>) -> Result<Vec<FieldElement<'f>>> {
    let field = inst.field();
    let n = field.size().filter(|&n| n <= BRUTE_FORCE_LIMIT).ok_or(Error::BudgetExceeded {
        size: field.size().map(u128::from).unwrap_or(u128::MAX),
        budget: BRUTE_FORCE_LIMIT as u128,
    })?;
    Ok((0..n)
        .map(|i| field.element_at(i))
        .filter(|&x| inst.eval(x).is_zero())
        .collect())
}

pub fn report(inst: &LinTriInstance<'_>, cls: &Classification<'_>, check: bool) -> Result<LinTriReport> {
    let roots: Vec<String> = cls.roots().iter().map(|r| r.to_string()).collect();
    let brute_force_agrees = if check {
        Some(brute_roots(inst)? == cls.roots())
    } else {
        None
    };
    Ok(LinTriReport {
        p: inst.field().p(),
        l: inst.field().degree(),
        n: inst.n,
        a: inst.a.to_string(),
        b: inst.b.to_string(),
        d: inst.d,
        m: inst.m,
        alpha_last: inst.alpha_last.to_string(),
        beta_last: inst.beta_last.to_string(),
        case: cls.case_name().to_string(),
        root_count: roots.len(),
        roots,
        tau: match cls {
            Classification::Kernel { tau, .. } => Some(tau.to_string()),
            _ => None,
        },
        brute_force_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn frobenius_minus_identity_kills_everything() {
        let f = FieldCtx::new(5, 3).unwrap();
        let inst = LinTriInstance::new(3, f.one(), f.zero()).unwrap();
        assert_eq!(brute_roots(&inst).unwrap().len(), 125);
        let cls = classify(&inst).unwrap();
        assert_eq!(cls.roots().len(), 125);
        let basis = linearized_kernel(&f, &[(3, f.one()), (0, -f.one())]);
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn antisymmetric_constant_gives_half_shift() {
        let p = 7u64;
        let f = FieldCtx::new(p, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = f.random(&mut rng);
        let b = h.frobenius(3) - h;
        assert_eq!(b.frobenius(3), -b);
        let inst = LinTriInstance::new(3, f.one(), b).unwrap();
        assert_eq!(inst.m, 2);
        assert!(inst.alpha_last.is_one());
        assert!(inst.beta_last.is_zero());
        match classify(&inst).unwrap() {
            Classification::Kernel { base_root, roots, .. } => {
                assert_eq!(base_root, -b / f.from_int(2));
                assert_eq!(roots.len(), 343);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unique_case_matches_scan() {
        let f = FieldCtx::new(5, 2).unwrap();
        let g = f
            .elements()
            .find(|x| x.multiplicative_order() == Some(24))
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = f.random(&mut rng);
        let inst = LinTriInstance::new(1, g, b).unwrap();
        assert!(!inst.alpha_last.is_one());
        let cls = classify(&inst).unwrap();
        assert_eq!(cls.roots(), brute_roots(&inst).unwrap());
        assert_eq!(cls.roots().len(), 1);
    }

    #[test]
    fn non_power_has_trivial_kernel() {
        let f = FieldCtx::new(7, 2).unwrap();
        for g in f.elements().skip(1) {
            let by_kernel = !linearized_kernel(&f, &[(1, f.one()), (0, -g)]).is_empty();
            let by_scan = f.elements().skip(1).any(|x| x.frobenius(1) == g * x);
            assert_eq!(by_kernel, by_scan);
            assert_eq!(norm_criterion(-g, 1), by_scan);
        }
    }

    #[test]
    fn random_instances_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // (3, 3, 1) has m = 3 = p, which forces a non-unit c
        for (p, l, n) in [(3u64, 3usize, 1usize), (3, 6, 2), (5, 4, 2), (5, 3, 1), (7, 2, 1), (2, 4, 2), (3, 4, 1)] {
            let f = FieldCtx::new(p, l).unwrap();
            for round in 0..12 {
                let tau = f.random_nonzero(&mut rng);
                let a = if round % 3 == 0 { f.random_nonzero(&mut rng) } else { tau.frobenius(n) / tau };
                let b = if round % 2 == 0 {
                    let x0 = f.random(&mut rng);
                    x0.frobenius(n) - a * x0
                } else {
                    f.random(&mut rng)
                };
                let inst = LinTriInstance::new(n, a, b).unwrap();
                let cls = classify(&inst).unwrap();
                assert_eq!(cls.roots(), brute_roots(&inst).unwrap(), "p={p} l={l} n={n} A={a} B={b}");
            }
        }
    }

    #[test]
    fn degree_one_quotient() {
        // n a multiple of l: m = 1
        let f = FieldCtx::new(5, 2).unwrap();
        for (a, b) in [(1i64, 0i64), (1, 2), (3, 4)] {
            let inst = LinTriInstance::new(2, f.from_int(a), f.from_int(b)).unwrap();
            assert_eq!(inst.m, 1);
            assert_eq!(classify(&inst).unwrap().roots(), brute_roots(&inst).unwrap());
        }
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::prime::{fp_poly, is_prime, pow_mod};
use super::{MAX_DEGREE, MAX_PRIME};
use crate::error::{Error, Result};

/// Coefficient storage for one element, low degree first. Only the first `k` slots are used.
pub type Raw = [u16; MAX_DEGREE];

/// Frobenius matrices for every power are cached up to this degree; above it only x -> x^p is.
const FULL_FROBENIUS_MAX: usize = 12;

/// The field F_p[X]/(m) for a monic irreducible `m` of degree `k`.
pub struct FieldCtx {
    p: u32,
    k: usize,
    modulus: Vec<u32>,
    order: BigUint,
    order_u64: Option<u64>,
    /// `reduce[j]` holds X^{k+j} mod m.
    reduce: Vec<Raw>,
    /// `frob[e][i]` holds (X^i)^{p^e} mod m.
    frob: Vec<Vec<Raw>>,
    p_pows: Vec<u64>,
    nonresidue: OnceLock<Raw>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn check_prime(p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(p as u32)
}

fn check_degree(k: usize) -> Result<()> {
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::BadDegree(k));
    }
    Ok(())
}

/// Lexicographically smallest monic irreducible of degree `k`, comparing the
/// tuple (c_0, ..., c_{k-1}) with c_0 most significant.
fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    // digits[0] is c_0; it must be nonzero, so start there.
    let mut digits = vec![0u32; k];
    digits[0] = 1;
    loop {
        let mut f = digits.clone();
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            return f;
        }
        // increment with c_{k-1} least significant
        let mut pos = k - 1;
        loop {
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos -= 1;
        }
    }
}

fn to_raw(v: &[u32]) -> Raw {
    let mut r = [0u16; MAX_DEGREE];
    for (slot, &c) in r.iter_mut().zip(v) {
        *slot = c as u16;
    }
    r
}

impl FieldCtx {
    /// F_{p^k} with the canonical (lexicographically smallest) modulus.
    pub fn new(p: u64, k: usize) -> Result<Self> {
        let p = check_prime(p)?;
        check_degree(k)?;
        let modulus = smallest_irreducible(p, k);
        Ok(Self::build(p, modulus))
    }

    /// F_p[X]/(m) for an explicit monic modulus given low degree first.
    pub fn with_modulus(p: u64, modulus: &[i64]) -> Result<Self> {
        let p = check_prime(p)?;
        if modulus.len() < 2 {
            return Err(Error::BadModulus);
        }
        let k = modulus.len() - 1;
        check_degree(k)?;
        let m: Vec<u32> = modulus
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u32)
            .collect();
        if m[k] != 1 {
            return Err(Error::BadModulus);
        }
        if !fp_poly::is_irreducible(&m, p) {
            return Err(Error::Reducible(p));
        }
        Ok(Self::build(p, m))
    }

    fn build(p: u32, modulus: Vec<u32>) -> Self {
        let k = modulus.len() - 1;
        let order = BigUint::from(p).pow(k as u32);
        let order_u64 = order.to_u64();
        let mut reduce = Vec::with_capacity(k);
        let mut cur: Vec<u32> = fp_poly::rem(
            &[vec![0u32; k], vec![1]].concat(),
            &modulus,
            p,
        );
        for _ in 0..k {
            reduce.push(to_raw(&cur));
            let mut shifted = vec![0u32];
            shifted.extend_from_slice(&cur);
            cur = fp_poly::rem(&shifted, &modulus, p);
        }
        let p_pows = (0..k)
            .map(|i| (p as u64).checked_pow((k - 1 - i) as u32).unwrap_or(0))
            .collect();
        let mut ctx = FieldCtx {
            p,
            k,
            modulus,
            order,
            order_u64,
            reduce,
            frob: Vec::new(),
            p_pows,
            nonresidue: OnceLock::new(),
        };
        ctx.frob = ctx.frobenius_tables();
        ctx
    }

    fn frobenius_tables(&self) -> Vec<Vec<Raw>> {
        let k = self.k;
        let identity: Vec<Raw> = (0..k)
            .map(|i| {
                let mut r = [0u16; MAX_DEGREE];
                r[i] = 1;
                r
            })
            .collect();
        if k == 1 {
            return vec![identity];
        }
        let powers_of = |base: Raw| -> Vec<Raw> {
            let mut out = Vec::with_capacity(k);
            let mut acc = identity[0];
            for _ in 0..k {
                out.push(acc);
                acc = self.mul_raw(&acc, &base);
            }
            out
        };
        let x = identity[1];
        let xp = self.pow_raw_u64(&x, self.p as u64);
        let mut tables = vec![identity.clone(), powers_of(xp)];
        if k <= FULL_FROBENIUS_MAX {
            let mut cur = xp;
            for _ in 2..k {
                cur = self.apply_matrix(&tables[1], &cur);
                tables.push(powers_of(cur));
            }
        }
        tables
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Monic modulus, low degree first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Number of elements when it fits in 64 bits.
    pub fn size(&self) -> Option<u64> {
        self.order_u64
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement::from_raw(self, [0; MAX_DEGREE])
    }

    pub fn one(&self) -> FieldElement<'_> {
        self.from_int(1)
    }

    /// The class of X (a generator of the field over F_p, not necessarily primitive).
    pub fn gen(&self) -> FieldElement<'_> {
        if self.k == 1 {
            return self.zero();
        }
        let mut r = [0u16; MAX_DEGREE];
        r[1] = 1;
        FieldElement::from_raw(self, r)
    }

    pub fn from_int(&self, v: i64) -> FieldElement<'_> {
        let mut r = [0u16; MAX_DEGREE];
        r[0] = v.rem_euclid(self.p as i64) as u16;
        FieldElement::from_raw(self, r)
    }

    /// Element with the given coefficients (low degree first); at most `k` entries.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement<'_>> {
        if coeffs.len() > self.k {
            return Err(Error::Parse {
                text: format!("{coeffs:?}"),
                reason: format!("expected at most {} coefficients", self.k),
            });
        }
        let mut r = [0u16; MAX_DEGREE];
        for (slot, &c) in r.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.p as i64) as u16;
        }
        Ok(FieldElement::from_raw(self, r))
    }

    pub fn from_raw(&self, raw: Raw) -> FieldElement<'_> {
        FieldElement::from_raw(self, raw)
    }

    /// Parses `c0,c1,...` (or `c0:c1:...`), low degree first; integers may be negative.
    pub fn parse(&self, text: &str) -> Result<FieldElement<'_>> {
        let err = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(err("empty"));
        }
        let parts: Vec<&str> = trimmed.split([',', ':']).collect();
        let mut coeffs = Vec::with_capacity(parts.len());
        for part in parts {
            let v: i64 = part
                .trim()
                .parse()
                .map_err(|_| err("coefficients must be integers"))?;
            coeffs.push(v);
        }
        self.from_coeffs(&coeffs).map_err(|_| err("too many coefficients"))
    }

    /// The element whose canonical index is `index` (see [`FieldElement::index`]).
    pub fn element_at(&self, mut index: u64) -> FieldElement<'_> {
        let mut r = [0u16; MAX_DEGREE];
        for i in (0..self.k).rev() {
            r[i] = (index % self.p as u64) as u16;
            index /= self.p as u64;
        }
        FieldElement::from_raw(self, r)
    }

    /// All elements in canonical order. Panics if the field has more than 2^64 elements.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> + '_ {
        let n = self.order_u64.expect("field too large to enumerate");
        (0..n).map(move |i| self.element_at(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement<'_> {
        let mut r = [0u16; MAX_DEGREE];
        for slot in r.iter_mut().take(self.k) {
            *slot = rng.gen_range(0..self.p) as u16;
        }
        FieldElement::from_raw(self, r)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement<'_> {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// The first element (canonical order) with quadratic character -1.
    pub fn first_nonresidue(&self) -> Result<FieldElement<'_>> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let raw = self.nonresidue.get_or_init(|| {
            let mut i = 1u64;
            loop {
                let x = self.element_at(i);
                if x.legendre_of_norm() == -1 {
                    return x.raw;
                }
                i += 1;
            }
        });
        Ok(FieldElement::from_raw(self, *raw))
    }

    /// True when the field is F_{p^k} with `k` a multiple of `sub`.
    pub fn has_subfield(&self, sub: usize) -> bool {
        sub >= 1 && self.k.is_multiple_of(sub)
    }

    pub(crate) fn same(&self, other: &FieldCtx) -> bool {
        std::ptr::eq(self, other)
    }

    pub(crate) fn mul_raw(&self, a: &Raw, b: &Raw) -> Raw {
        let k = self.k;
        let p = self.p as u64;
        if k == 1 {
            let mut r = [0u16; MAX_DEGREE];
            r[0] = (a[0] as u64 * b[0] as u64 % p) as u16;
            return r;
        }
        let mut acc = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            let ai = a[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                acc[i + j] += ai * b[j] as u64;
            }
        }
        for d in k..(2 * k - 1) {
            let c = acc[d] % p;
            if c == 0 {
                continue;
            }
            let row = &self.reduce[d - k];
            for j in 0..k {
                acc[j] += c * row[j] as u64;
            }
        }
        let mut r = [0u16; MAX_DEGREE];
        for j in 0..k {
            r[j] = (acc[j] % p) as u16;
        }
        r
    }

    fn apply_matrix(&self, cols: &[Raw], x: &Raw) -> Raw {
        let k = self.k;
        let p = self.p as u64;
        let mut acc = [0u64; MAX_DEGREE];
        for i in 0..k {
            let c = x[i] as u64;
            if c == 0 {
                continue;
            }
            let col = &cols[i];
            for j in 0..k {
                acc[j] += c * col[j] as u64;
            }
        }
        let mut r = [0u16; MAX_DEGREE];
        for j in 0..k {
            r[j] = (acc[j] % p) as u16;
        }
        r
    }

    fn pow_raw_u64(&self, x: &Raw, mut e: u64) -> Raw {
        let mut acc = [0u16; MAX_DEGREE];
        acc[0] = 1;
        let mut b = *x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_raw(&b, &b);
            }
        }
        acc
    }

    fn frobenius_raw(&self, x: &Raw, e: usize) -> Raw {
        let e = e % self.k;
        if e == 0 {
            return *x;
        }
        if e < self.frob.len() {
            return self.apply_matrix(&self.frob[e], x);
        }
        let mut cur = *x;
        for _ in 0..e {
            cur = self.apply_matrix(&self.frob[1], &cur);
        }
        cur
    }

    fn inv_raw(&self, x: &Raw) -> Raw {
        if self.k == 1 {
            let mut r = [0u16; MAX_DEGREE];
            if x[0] != 0 {
                r[0] = pow_mod(x[0] as u64, self.p as u64 - 2, self.p as u64) as u16;
            }
            return r;
        }
        let mut a: Vec<u32> = x[..self.k].iter().map(|&c| c as u32).collect();
        fp_poly::trim(&mut a);
        if a.is_empty() {
            return [0; MAX_DEGREE];
        }
        let inv = fp_poly::inverse_mod(&a, &self.modulus, self.p)
            .expect("nonzero element of a field is invertible");
        to_raw(&inv)
    }
}

/// The operations accepted by [`FieldElement::arith`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(BigUint),
}

/// One element of a [`FieldCtx`]; cheap to copy.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FieldCtx,
    raw: Raw,
}

impl<'f> FieldElement<'f> {
    fn from_raw(field: &'f FieldCtx, raw: Raw) -> Self {
        FieldElement { field, raw }
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn raw(&self) -> &Raw {
        &self.raw
    }

    /// Coefficients over F_p, low degree first, length `k`.
    pub fn coeffs(&self) -> Vec<u32> {
        self.raw[..self.field.k].iter().map(|&c| c as u32).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.raw.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.raw[0] == 1 && self.raw[1..].iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        self.raw[1..].iter().all(|&c| c == 0)
    }

    /// The prime-field value, if the element lies in F_p.
    pub fn as_prime(&self) -> Option<u32> {
        self.in_prime_field().then_some(self.raw[0] as u32)
    }

    /// Position in the canonical order: sum of c_i * p^{k-1-i}.
    pub fn index(&self) -> u64 {
        let mut n = 0u64;
        for (i, &c) in self.raw[..self.field.k].iter().enumerate() {
            n += c as u64 * self.field.p_pows[i];
        }
        n
    }

    /// Checked arithmetic; the operator impls panic on field mismatch instead.
    pub fn arith(&self, other: Option<&FieldElement<'f>>, op: ArithOp) -> Result<FieldElement<'f>> {
        let rhs = |o: Option<&FieldElement<'f>>| -> Result<FieldElement<'f>> {
            let o = o.ok_or_else(|| Error::Precondition("binary operation needs two operands".into()))?;
            if !self.field.same(o.field) {
                return Err(Error::FieldMismatch);
            }
            Ok(*o)
        };
        Ok(match op {
            ArithOp::Add => *self + rhs(other)?,
            ArithOp::Sub => *self - rhs(other)?,
            ArithOp::Mul => *self * rhs(other)?,
            ArithOp::Div => *self / rhs(other)?,
            ArithOp::Inv => self.inv(),
            ArithOp::Pow(e) => self.pow(&e),
        })
    }

    /// Multiplicative inverse, with inv(0) = 0.
    pub fn inv(&self) -> Self {
        FieldElement::from_raw(self.field, self.field.inv_raw(&self.raw))
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        FieldElement::from_raw(self.field, self.field.pow_raw_u64(&self.raw, e))
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        if let Some(small) = e.to_u64() {
            return self.pow_u64(small);
        }
        let mut acc = self.field.one();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc *= *self;
            }
        }
        acc
    }

    /// Signed exponent; negative powers go through the inverse.
    pub fn pow_i64(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow_u64(e as u64)
        } else {
            self.inv().pow_u64(e.unsigned_abs())
        }
    }

    /// x^{p^e}.
    pub fn frobenius(&self, e: usize) -> Self {
        FieldElement::from_raw(self.field, self.field.frobenius_raw(&self.raw, e))
    }

    /// The unique y with y^p = x.
    pub fn pth_root(&self) -> Self {
        self.frobenius(self.field.k - 1)
    }

    /// Trace down to the subfield of degree `d`: sum of x^{p^{dj}} for j < k/d.
    pub fn trace_to(&self, d: usize) -> Result<Self> {
        if !self.field.has_subfield(d) {
            return Err(Error::NotInSubfield(d));
        }
        let mut acc = self.field.zero();
        for j in 0..self.field.k / d {
            acc += self.frobenius(d * j);
        }
        Ok(acc)
    }

    /// Norm down to the subfield of degree `d`: product of x^{p^{dj}} for j < k/d.
    pub fn norm_to(&self, d: usize) -> Result<Self> {
        if !self.field.has_subfield(d) {
            return Err(Error::NotInSubfield(d));
        }
        let mut acc = self.field.one();
        for j in 0..self.field.k / d {
            acc *= self.frobenius(d * j);
        }
        Ok(acc)
    }

    /// Relative norm a^{(p^l - 1)/(p^d - 1)} with l the field degree and d = gcd(n, l).
    pub fn rel_norm(&self, n: usize) -> Self {
        let d = num_integer::gcd(n.max(1), self.field.k);
        let d = if n == 0 { self.field.k } else { d };
        self.norm_to(d).expect("gcd divides the degree")
    }

    /// True when x lies in the subfield F_{p^d} (requires d | k).
    pub fn in_subfield(&self, d: usize) -> bool {
        self.field.has_subfield(d) && self.frobenius(d) == *self
    }

    pub(crate) fn legendre_of_norm(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let n = self.norm_to(1).expect("degree 1 always divides");
        let p = self.field.p as u64;
        let v = pow_mod(n.raw[0] as u64, (p - 1) / 2, p);
        if v == 1 {
            1
        } else {
            -1
        }
    }

    /// The quadratic character: 0 at zero, 1 on nonzero squares, -1 otherwise.
    pub fn quad_char(&self) -> Result<i8> {
        if self.field.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.legendre_of_norm())
    }

    /// Order of a nonzero element in the multiplicative group (brute force; small fields only).
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.order_u64? - 1;
        let mut ord = n;
        for r in super::prime::prime_factors(n) {
            while ord % r == 0 && self.pow_u64(ord / r).is_one() {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// Text form used on the command line and in CSV output with the given separator.
    pub fn to_text(&self, sep: &str) -> String {
        self.coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.field.same(other.field), "comparing elements of different fields");
        self.raw == other.raw
    }
}

impl Eq for FieldElement<'_> {}

impl Hash for FieldElement<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.raw[..self.field.k].hash(state);
    }
}

impl PartialOrd for FieldElement<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.raw.cmp(&other.raw)
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(","))
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text(","))
    }
}

#[inline]
fn assert_same(a: &FieldCtx, b: &FieldCtx) {
    assert!(a.same(b), "operands belong to different fields");
}

impl<'f> Add for FieldElement<'f> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_same(self.field, rhs.field);
        let p = self.field.p;
        let mut r = [0u16; MAX_DEGREE];
        for i in 0..self.field.k {
            let s = self.raw[i] as u32 + rhs.raw[i] as u32;
            r[i] = if s >= p { s - p } else { s } as u16;
        }
        FieldElement::from_raw(self.field, r)
    }
}

impl<'f> Sub for FieldElement<'f> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_same(self.field, rhs.field);
        let p = self.field.p;
        let mut r = [0u16; MAX_DEGREE];
        for i in 0..self.field.k {
            let s = self.raw[i] as u32 + p - rhs.raw[i] as u32;
            r[i] = if s >= p { s - p } else { s } as u16;
        }
        FieldElement::from_raw(self.field, r)
    }
}

impl<'f> Neg for FieldElement<'f> {
    type Output = Self;
    fn neg(self) -> Self {
        self.field.zero() - self
    }
}

impl<'f> Mul for FieldElement<'f> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_same(self.field, rhs.field);
        FieldElement::from_raw(self.field, self.field.mul_raw(&self.raw, &rhs.raw))
    }
}

impl<'f> Div for FieldElement<'f> {
    type Output = Self;
    /// Division with the convention x / 0 = 0.
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<'f> AddAssign for FieldElement<'f> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<'f> SubAssign for FieldElement<'f> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<'f> MulAssign for FieldElement<'f> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// Scalar multiplication by an integer (reduced mod p).
impl<'f> Mul<i64> for FieldElement<'f> {
    type Output = Self;
    fn mul(self, rhs: i64) -> Self {
        self * self.field.from_int(rhs)
    }
}

impl<'f> Add<i64> for FieldElement<'f> {
    type Output = Self;
    fn add(self, rhs: i64) -> Self {
        self + self.field.from_int(rhs)
    }
}

impl<'f> Sub<i64> for FieldElement<'f> {
    type Output = Self;
    fn sub(self, rhs: i64) -> Self {
        self - self.field.from_int(rhs)
    }
}

impl<'f> Div<i64> for FieldElement<'f> {
    type Output = Self;
    fn div(self, rhs: i64) -> Self {
        self / self.field.from_int(rhs)
    }
}

/// Big-integer helper: (p^a - 1) / (p^b - 1) for b | a.
pub fn geometric_ratio(p: u32, a: usize, b: usize) -> BigUint {
    let pa = BigUint::from(p).pow(a as u32) - BigUint::one();
    let pb = BigUint::from(p).pow(b as u32) - BigUint::one();
    if pb.is_zero() {
        return BigUint::zero();
    }
    pa / pb
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldCtx::new(11, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.from_int(7) + f.from_int(8), f.from_int(4));
        assert_eq!(f.from_int(3).inv(), f.from_int(4));
        assert_eq!(f.zero().inv(), f.zero());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(4, 2).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldCtx::new(11, 0).unwrap_err(), Error::BadDegree(0));
        assert!(matches!(
            FieldCtx::with_modulus(3, &[1, 0, 0, 0, 1]),
            Err(Error::Reducible(3))
        ));
    }

    #[test]
    fn canonical_modulus_is_smallest() {
        // X^2 + 1 is reducible over F_5 (2^2 = -1); X^2 + X + 1 has discriminant -3, a nonsquare.
        let f = FieldCtx::new(5, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = FieldCtx::new(3, 2).unwrap();
        assert_eq!(g.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn explicit_primitive_sextic() {
        let f = FieldCtx::with_modulus(11, &[2, 7, 6, 4, 3, 0, 1]).unwrap();
        assert_eq!(f.order(), &BigUint::from(11u32).pow(6));
        let x = f.gen();
        let n = f.size().unwrap() - 1;
        assert_eq!(x.multiplicative_order(), Some(n));
    }

    #[test]
    fn frobenius_order_and_identity() {
        let f = FieldCtx::new(7, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = f.random(&mut rng);
            assert_eq!(x.frobenius(0), x);
            assert_eq!(x.frobenius(5), x);
            assert_eq!(x.frobenius(1), x.pow_u64(7));
            assert_eq!(x.frobenius(3), x.pow_u64(343));
            assert_eq!(x.pth_root().frobenius(1), x);
        }
    }

    #[test]
    fn large_degree_frobenius_falls_back() {
        let f = FieldCtx::new(5, 14).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = f.random(&mut rng);
        assert_eq!(x.frobenius(13), x.pow(&BigUint::from(5u32).pow(13)));
    }

    #[test]
    fn inverse_and_division() {
        let f = FieldCtx::new(13, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = f.random_nonzero(&mut rng);
            assert!((x * x.inv()).is_one());
            let q = f.order() - BigUint::from(2u32);
            assert_eq!(x.inv(), x.pow(&q));
        }
    }

    #[test]
    fn minus_one_nonresidue_in_cubic_extension() {
        let f = FieldCtx::new(11, 3).unwrap();
        let m1 = f.from_int(-1);
        let euler = m1.pow_u64(665);
        assert_eq!(euler, m1);
        assert_eq!(m1.quad_char().unwrap(), -1);
        assert_eq!(f.zero().quad_char().unwrap(), 0);
    }

    #[test]
    fn parse_and_index_round_trip() {
        let f = FieldCtx::new(11, 3).unwrap();
        let x = f.parse("3,-1,4").unwrap();
        assert_eq!(x.coeffs(), vec![3, 10, 4]);
        assert_eq!(f.parse("3:10:4").unwrap(), x);
        assert_eq!(f.element_at(x.index()), x);
        assert_eq!(x.index(), 3 * 121 + 10 * 11 + 4);
        assert!(f.parse("1,2,3,4").is_err());
        assert!(f.parse("a").is_err());
        assert!(f.parse("").is_err());
        assert_eq!(f.parse("-3").unwrap(), f.from_int(8));
    }

    #[test]
    fn canonical_order_matches_index() {
        let f = FieldCtx::new(3, 2).unwrap();
        let all: Vec<_> = f.elements().collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all.len(), 9);
    }

    #[test]
    fn checked_arith_detects_mismatch() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = FieldCtx::new(5, 1).unwrap();
        let a = f.from_int(2);
        let b = g.from_int(3);
        assert_eq!(a.arith(Some(&b), ArithOp::Add), Err(Error::FieldMismatch));
        assert_eq!(
            a.arith(Some(&f.from_int(3)), ArithOp::Mul).unwrap(),
            f.from_int(1)
        );
        assert_eq!(a.arith(None, ArithOp::Pow(BigUint::from(4u32))).unwrap(), f.one());
    }

    #[test]
    fn relative_norm_of_generator_generates_subfield_group() {
        let f = FieldCtx::new(3, 4).unwrap();
        let g = f.elements().skip(1).find(|x| x.multiplicative_order() == Some(80)).unwrap();
        let n = g.rel_norm(2);
        assert_eq!(n, g.pow(&geometric_ratio(3, 4, 2)));
        assert!(n.in_subfield(2));
        assert_eq!(n.multiplicative_order(), Some(8));
        assert!(f.one().rel_norm(2).is_one());
    }
}

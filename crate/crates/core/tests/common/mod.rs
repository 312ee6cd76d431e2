//! Oracles shared by the integration tests. They use plain exponentiation only, never the
//! Frobenius shortcuts or lookup tables of the library.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigUint;
use permtri::ff::{FieldElement, QuadExtCtx};

pub fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// f(x) = x^{q(p-1)+1} + alpha x^{pq} + x^{q+p-1}, alpha already in F_{q^2}.
pub fn trinomial<'a>(quad: &QuadExtCtx, alpha: FieldElement<'a>, x: FieldElement<'a>) -> FieldElement<'a> {
    let q = quad.q().clone();
    let p = big(quad.p() as u64);
    let e1 = &q * (&p - 1u32) + 1u32;
    let e2 = &p * &q;
    let e3 = &q + &p - 1u32;
    x.pow(&e1) + alpha * x.pow(&e2) + x.pow(&e3)
}

/// Whether f permutes F_{q^2}, by collecting all images.
pub fn is_permutation(quad: &QuadExtCtx, alpha: FieldElement<'_>) -> bool {
    let ext = quad.ext();
    let a = quad.lift(alpha);
    let mut seen = HashSet::new();
    ext.elements().all(|x| seen.insert(trinomial(quad, a, x).coeffs()))
}

/// Euler's criterion.
pub fn eta(x: FieldElement<'_>) -> i64 {
    if x.is_zero() {
        return 0;
    }
    let e = (x.field().order() - 1u32) / 2u32;
    if x.pow(&e).is_one() {
        1
    } else {
        -1
    }
}

/// Splits "x;y" (elements written with ':') into two elements of the given field.
pub fn parse_pair<'f>(field: &'f permtri::ff::FieldCtx, s: &str) -> (FieldElement<'f>, FieldElement<'f>) {
    let (a, b) = s.split_once(';').expect("pair");
    (field.parse(a).unwrap(), field.parse(b).unwrap())
}

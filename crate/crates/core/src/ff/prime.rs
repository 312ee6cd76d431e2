//! Small-prime utilities and dense polynomial arithmetic over F_p, used while
//! a `FieldCtx` is being built (before any element type exists).

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Polynomials over F_p as coefficient vectors, low degree first, no trailing zeros.
pub(crate) mod fp_poly {
    use super::inv_mod;

    pub type Poly = Vec<u32>;

    pub fn trim(a: &mut Poly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
        let n = a.len().max(b.len());
        let mut out: Poly = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
        let mut r: Poly = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm] as u64, p as u64);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            if c != 0 {
                let shift = top - dm;
                for (j, &mj) in m.iter().enumerate() {
                    let v = (r[shift + j] as u64 + (p as u64 - c) * mj as u64) % p as u64;
                    r[shift + j] = v as u32;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Poly = acc.into_iter().map(|v| v as u32).collect();
        rem(&prod, m, p)
    }

    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
        let mut acc: Poly = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
        let mut x: Poly = a.to_vec();
        let mut y: Poly = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Poly = acc.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    fn divrem(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
        let mut r: Poly = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut quo = vec![0u32; r.len() - db];
        let lead_inv = inv_mod(b[db] as u64, p as u64);
        while r.len() > db {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            let shift = top - db;
            quo[shift] = c as u32;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    let v = (r[shift + j] as u64 + (p as u64 - c) * bj as u64) % p as u64;
                    r[shift + j] = v as u32;
                }
            }
            r.pop();
        }
        trim(&mut r);
        trim(&mut quo);
        (quo, r)
    }

    /// Inverse of `a` modulo `m`, or `None` when they share a factor.
    pub fn inverse_mod(a: &[u32], m: &[u32], p: u32) -> Option<Poly> {
        let mut r0: Poly = m.to_vec();
        let mut r1 = rem(a, m, p);
        let mut s0: Poly = Vec::new();
        let mut s1: Poly = vec![1];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod(r0[0] as u64, p as u64);
        let out: Poly = s0.iter().map(|&v| (v as u64 * c % p as u64) as u32).collect();
        Some(rem(&out, m, p))
    }

    /// Rabin's test for a monic `f` of degree `k >= 1`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x: Poly = vec![0, 1];
        // frob[j] = X^{p^j} mod f
        let mut frob = vec![rem(&x, f, p)];
        for j in 1..=k {
            let next = powmod(&frob[j - 1], p as u64, f, p);
            frob.push(next);
        }
        if frob[k] != rem(&x, f, p) {
            return false;
        }
        for r in super::prime_factors(k as u64) {
            let j = k / r as usize;
            let g = gcd(f, &sub(&frob[j], &x, p), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_prime(4));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(1330), vec![2, 5, 7, 19]);
    }

    #[test]
    fn rabin_rejects_products() {
        // (X^2+1)(X+1) over F_3
        let f = vec![1, 1, 1, 1];
        assert!(!fp_poly::is_irreducible(&f, 3));
        // X^2 + 1 is irreducible over F_3
        assert!(fp_poly::is_irreducible(&[1, 0, 1], 3));
        // X^4 + 1 = (X^2+X+2)(X^2+2X+2) over F_3
        assert!(!fp_poly::is_irreducible(&[1, 0, 0, 0, 1], 3));
    }

    #[test]
    fn poly_inverse() {
        let m = [1, 0, 1];
        for a0 in 0..3u32 {
            for a1 in 0..3u32 {
                let a = vec![a0, a1];
                match fp_poly::inverse_mod(&a, &m, 3) {
                    Some(inv) => {
                        assert_eq!(fp_poly::mulmod(&a, &inv, &m, 3), vec![1]);
                    }
                    None => assert_eq!((a0, a1), (0, 0)),
                }
            }
        }
    }
}

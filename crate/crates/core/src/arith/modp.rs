//! Polynomials over a prime field `F_p`, `p < 2^31`.
//!
//! Coefficients are `u64` residues in `[0, p)`, ascending degree, no
//! trailing zeros. Factoring is distinct-degree followed by
//! Cantor–Zassenhaus equal-degree splitting driven by a fixed-seed RNG, so
//! results are reproducible.

use num::{BigUint, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type ModPoly = Vec<u64>;

pub fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub fn scale(a: &[u64], c: u64, p: u64) -> ModPoly {
    trim(a.iter().map(|&x| x * (c % p) % p).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    trim(v)
}

pub fn div_rem(a: &[u64], d: &[u64], p: u64) -> (ModPoly, ModPoly) {
    let dd = degree(d).expect("division by zero polynomial");
    let Some(na) = degree(a) else {
        return (Vec::new(), Vec::new());
    };
    if na < dd {
        return (Vec::new(), a.to_vec());
    }
    let inv = inv_mod(d[dd], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; na - dd + 1];
    for k in (0..=na - dd).rev() {
        let c = r[k + dd] * inv % p;
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (j, &dj) in d.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * dj % p) % p;
        }
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], d: &[u64], p: u64) -> ModPoly {
    div_rem(a, d, p).1
}

pub fn monic(a: &[u64], p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let lc = *r0.last().expect("gcd of zero polynomials");
    let inv = inv_mod(lc, p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &[u64], p: u64) -> ModPoly {
    trim(a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect())
}

pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> ModPoly {
    rem(&mul(a, b, p), m, p)
}

/// `base^e mod m`.
pub fn pow_mod_poly(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> ModPoly {
    let mut acc = rem(&[1], m, p);
    let base = rem(base, m, p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = mul_mod(&acc, &acc, m, p);
        if e.bit(i) {
            acc = mul_mod(&acc, &base, m, p);
        }
    }
    acc
}

pub fn is_squarefree(a: &[u64], p: u64) -> bool {
    degree(&gcd(a, &derivative(a, p), p)) == Some(0)
}

/// Factors a monic squarefree polynomial into monic irreducibles, sorted by
/// degree and then coefficients.
pub fn factor_squarefree(f: &[u64], p: u64) -> Vec<ModPoly> {
    let f = monic(f, p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f, p) {
        if degree(&g) == Some(d) {
            out.push(g);
        } else {
            equal_degree(&g, d, p, &mut out);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Splits a monic squarefree `f` into `(product of all degree-d factors, d)`.
fn distinct_degree(f: &[u64], p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x: ModPoly = vec![0, 1];
    let mut h = rem(&x, &rest, p);
    let pb = BigUint::from(p);
    let mut d = 0;
    while degree(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_mod_poly(&h, &pb, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        if degree(&g).unwrap_or(0) > 0 {
            rest = div_rem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((g, d));
        }
    }
    if let Some(dr) = degree(&rest) {
        if dr > 0 {
            out.push((rest, dr));
        }
    }
    out
}

fn equal_degree(f: &[u64], d: usize, p: u64, out: &mut Vec<ModPoly>) {
    let n = degree(f).expect("nonzero");
    if n == d {
        out.push(f.to_vec());
        return;
    }
    // Seed depends only on the input so that results are reproducible.
    let seed = f.iter().fold(0x9e37_79b9_7f4a_7c15u64, |acc, &c| {
        acc.rotate_left(7) ^ c.wrapping_mul(0x100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d as u64));
    let pd = num::pow::pow(BigUint::from(p), d);
    loop {
        let a: ModPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let g = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = mul_mod(&t, &t, f, p);
                acc = add(&acc, &t, p);
            }
            gcd(&acc, f, p)
        } else {
            let e: BigUint = (&pd - BigUint::one()) >> 1;
            let b = pow_mod_poly(&a, &e, f, p);
            gcd(&sub(&b, &[1], p), f, p)
        };
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = div_rem(f, &g, p).0;
            equal_degree(&g, d, p, out);
            equal_degree(&h, d, p, out);
            return;
        }
    }
}

/// Roots in `F_p` of a polynomial that splits into distinct linear factors.
pub fn split_roots(f: &[u64], p: u64) -> Vec<u64> {
    factor_squarefree(f, p)
        .into_iter()
        .filter(|g| g.len() == 2)
        .map(|g| (p - g[0]) % p)
        .collect()
}

/// Reduces rational integers modulo `p` into residues.
pub fn reduce_bigint(c: &num::BigInt, p: u64) -> u64 {
    use num::Integer;
    let r = c.mod_floor(&num::BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(Zero::is_zero)
}

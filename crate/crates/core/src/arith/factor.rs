//! Factorization in `Q[T]`.
//!
//! The input is reduced to primitive integer polynomials, split into
//! squarefree parts (Yun), and each part is made monic by the substitution
//! `T -> T / lc` and factored with the Zassenhaus method: factor modulo a
//! good prime, lift the factors with linear Hensel steps beyond the
//! Mignotte bound, and recombine subsets by trial division.

use num::{BigInt, Integer, One, Signed, Zero};

use super::modp::{self, ModPoly};
use super::poly::Poly;
use super::{ArithError, Rational};

/// `unit · ∏ factor^multiplicity` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let prod: Poly = self.factors.iter().map(|(f, m)| f.pow(*m as u32)).product();
        prod.scale(&self.unit)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factors `p` over the rationals into monic irreducibles.
///
/// Factors are sorted by degree, then by ascending coefficient vector.
pub fn factor_rational_poly(p: &Poly) -> Result<Factorization, ArithError> {
    let unit = p.lc().cloned().ok_or(ArithError::ZeroPolynomial)?;
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        let (_, ints) = part.primitive_integer();
        for g in factor_squarefree_integer(ints) {
            factors.push((Poly::from_integers(&g).monic(), mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { unit, factors })
}

/// Monic irreducible factors, each listed once (the radical's factors).
pub fn distinct_irreducible_factors(p: &Poly) -> Result<Vec<Poly>, ArithError> {
    Ok(factor_rational_poly(p)?.factors.into_iter().map(|(f, _)| f).collect())
}

pub fn is_irreducible(p: &Poly) -> bool {
    p.degree().is_some_and(|d| d >= 1)
        && factor_rational_poly(p).map(|f| f.is_irreducible()).unwrap_or(false)
}

/// Yun's algorithm over a field of characteristic zero. Input must be monic.
/// Returns `(a_i, i)` with nonconstant `a_i` and `p = ∏ a_i^i`.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let dp = p.derivative();
    let a0 = Poly::gcd(p, &dp);
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = Poly::gcd(&b, &d);
        let nb = b.exact_div(&a).expect("gcd divides");
        let nc = d.exact_div(&a).expect("gcd divides");
        d = &nc - &nb.derivative();
        b = nb;
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

type IntPoly = Vec<BigInt>;

fn int_trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    int_trim(v)
}

/// Exact division by a monic integer polynomial.
fn int_div_monic(a: &[BigInt], d: &[BigInt]) -> Option<IntPoly> {
    let dd = d.len() - 1;
    debug_assert!(d[dd].is_one());
    if a.len() < d.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| int_trim(q))
}

fn primitive(a: IntPoly) -> IntPoly {
    let mut g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if a.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    a.into_iter().map(|c| c / &g).collect()
}

fn to_modp(a: &[BigInt], p: u64) -> ModPoly {
    modp::trim(a.iter().map(|c| modp::reduce_bigint(c, p)).collect())
}

fn from_modp(a: &[u64]) -> IntPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m >> 1usize;
    int_trim(a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect())
}

fn mul_reduce(a: &[BigInt], b: &[BigInt], m: &BigInt) -> IntPoly {
    int_mul(a, b).into_iter().map(|c| c.mod_floor(m)).collect()
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// positive leading coefficient; each returned factor is primitive with
/// positive leading coefficient.
pub(crate) fn factor_squarefree_integer(f: IntPoly) -> Vec<IntPoly> {
    let f = int_trim(f);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    if f[0].is_zero() {
        let rest = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_integer(rest));
        return out;
    }
    let lc = f[n].clone();
    if lc.is_one() {
        return factor_monic_squarefree(&f);
    }
    // g(y) = lc^(n-1) f(y / lc) is monic with integer coefficients.
    let mut g = Vec::with_capacity(n + 1);
    let mut pow = BigInt::one();
    let mut pows = Vec::with_capacity(n);
    for _ in 0..n {
        pows.push(pow.clone());
        pow *= &lc;
    }
    for (i, c) in f.iter().enumerate().take(n) {
        g.push(c * &pows[n - 1 - i]);
    }
    g.push(BigInt::one());
    factor_monic_squarefree(&g)
        .into_iter()
        .map(|h| {
            // h(lc·x), then strip content
            let mut pow = BigInt::one();
            let v: IntPoly = h
                .iter()
                .map(|c| {
                    let t = c * &pow;
                    pow *= &lc;
                    t
                })
                .collect();
            primitive(v)
        })
        .collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    })
}

fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + BigInt::one();
    root << (f.len() - 1)
}

fn factor_monic_squarefree(f: &[BigInt]) -> Vec<IntPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Try a few good primes and keep the one giving the fewest modular factors.
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let fp = to_modp(f, p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        let fs = modp::factor_squarefree(&fp, p);
        if fs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, modular) = best.expect("a squarefree reduction always exists");

    let bound = mignotte_bound(f) * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);
    recombine(f.to_vec(), lifted, &modulus)
}

/// Lifts monic factors of `f mod p` to monic factors mod `p^k`.
fn hensel_lift(f: &[BigInt], factors: &[ModPoly], p: u64, k: u32) -> Vec<IntPoly> {
    let modulus = num::pow::pow(BigInt::from(p), k as usize);
    if factors.len() == 1 {
        return vec![f.iter().map(|c| c.mod_floor(&modulus)).collect()];
    }
    let g0 = factors[0].clone();
    let h0 = factors[1..]
        .iter()
        .fold(vec![1u64], |acc, x| modp::mul(&acc, x, p));
    let (g, h) = lift_pair(f, &g0, &h0, p, k);
    let mut out = vec![g];
    out.extend(hensel_lift(&h, &factors[1..], p, k));
    out
}

fn lift_pair(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = modp::ext_gcd(g0, h0, p);
    debug_assert_eq!(one, vec![1]);
    let mut g = from_modp(g0);
    let mut h = from_modp(h0);
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = int_mul(&g, &h);
        let n = f.len().max(gh.len());
        let e: IntPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                let d = a - b;
                debug_assert!((&d % &pj).is_zero());
                d / &pj
            })
            .collect();
        let ep = to_modp(&e, p);
        let dg = modp::rem(&modp::mul(&t, &ep, p), g0, p);
        let dh = modp::rem(&modp::mul(&s, &ep, p), h0, p);
        for (i, c) in dg.iter().enumerate() {
            g[i] += &pj * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            h[i] += &pj * BigInt::from(*c);
        }
        pj *= &pb;
    }
    (g, h)
}

fn recombine(mut f: IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let prod = idx
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| mul_reduce(&acc, &lifted[i], modulus));
            let cand = symmetric(&prod, modulus);
            let constant_ok = f[0].is_zero() || cand[0].is_zero() || (&f[0] % &cand[0]).is_zero();
            if constant_ok {
                if let Some(q) = int_div_monic(&f, &cand) {
                    out.push(cand);
                    f = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    found = true;
                    break;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

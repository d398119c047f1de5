#![allow(dead_code)]

use aqalg_core::arith::Poly;
use aqalg_core::motives::{zeta_from_curve, ZetaData};
use aqalg_core::PrimePower;
use num::complex::Complex64;
use num::ToPrimitive;

pub fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

pub fn q(n: u64) -> PrimePower {
    PrimePower::from_u64(n).unwrap()
}

pub const SMALL_Q: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// `1 - aT + qT^2`.
pub fn elliptic_l(a: i64, qq: u64) -> Poly {
    p(&[1, -a, qq as i64])
}

pub fn elliptic(a: i64, qq: u64) -> ZetaData {
    zeta_from_curve(&elliptic_l(a, qq), &q(qq)).unwrap()
}

fn isqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r * r == n).then_some(r)
}

fn prime_power(qq: u64) -> (u64, u32) {
    let pp = q(qq);
    (pp.p(), pp.a())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticKind {
    Ordinary,
    /// Supersingular with irrational Frobenius: `End^0` is imaginary
    /// quadratic.
    SupersingularField,
    /// `a = ±2√q`: `End^0` is the quaternion algebra ramified at `p, ∞`.
    Quaternion,
}

/// Traces of Frobenius of elliptic curves over `F_q` with their
/// isogeny-class type, after Waterhouse.
pub fn waterhouse(qq: u64) -> Vec<(i64, EllipticKind)> {
    let (pr, n) = prime_power(qq);
    let bound = (4 * qq) as i64;
    let mut out = Vec::new();
    for a in -(2 * qq as i64)..=(2 * qq as i64) {
        if a * a > bound {
            continue;
        }
        let abs = a.unsigned_abs();
        let kind = if abs % pr != 0 {
            Some(EllipticKind::Ordinary)
        } else if n % 2 == 0 && isqrt(qq).is_some_and(|s| abs == 2 * s) {
            Some(EllipticKind::Quaternion)
        } else if n % 2 == 0 && pr % 3 != 1 && isqrt(qq).is_some_and(|s| abs == s) {
            Some(EllipticKind::SupersingularField)
        } else if n % 2 == 1 && (pr == 2 || pr == 3) && abs == pr.pow((n + 1) / 2) {
            Some(EllipticKind::SupersingularField)
        } else if a == 0 && (n % 2 == 1 || pr % 4 != 1) {
            Some(EllipticKind::SupersingularField)
        } else {
            None
        };
        if let Some(k) = kind {
            out.push((a, k));
        }
    }
    out
}

pub fn to_f64(p: &Poly) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64().unwrap()).collect()
}

/// Durand-Kerner iteration for the complex roots of a monic polynomial
/// given by ascending coefficients.
pub fn complex_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let radius = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.min(2.0)).collect();
    let eval = |x: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a);
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// Ascending coefficients of `∏ (T - r)`.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, &x) in c.iter().enumerate() {
            next[i + 1] += x;
            next[i] -= x * r;
        }
        c = next;
    }
    c
}

pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

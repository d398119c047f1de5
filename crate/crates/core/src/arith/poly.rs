//! Dense univariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::modp;
use super::Rational;

/// A polynomial in `Q[T]`, coefficients stored in ascending degree.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and `degree = len - 1` otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The indeterminate `T`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `T - c`.
    pub fn linear_root(c: Rational) -> Self {
        Poly::new(vec![-c, Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(One::is_one)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let (c, dp) = d.primitive_integer();
        if dp[dd].is_one() {
            // integer division by a monic integer polynomial
            let (den, mut rem) = self.scaled_integers();
            let mut quot = vec![BigInt::zero(); nd - dd + 1];
            for k in (0..=nd - dd).rev() {
                let q = std::mem::take(&mut rem[k + dd]);
                if q.is_zero() {
                    continue;
                }
                for (j, dj) in dp[..dd].iter().enumerate() {
                    if !dj.is_zero() {
                        rem[k + j] -= &q * dj;
                    }
                }
                quot[k] = q;
            }
            rem.truncate(dd);
            let qden = Rational::from_integer(den.clone()) * c;
            let quot = quot.into_iter().map(|x| Rational::from_integer(x) / &qden).collect();
            let rem = rem.into_iter().map(|x| Rational::new(x, den.clone())).collect();
            return (Poly::new(quot), Poly::new(rem));
        }
        let inv_lc = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = &c * dj;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// `(D, A)` with `self = A / D` and `A` integral.
    fn scaled_integers(&self) -> (BigInt, Vec<BigInt>) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (den, ints)
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return if a.is_zero() { b.monic() } else { a.monic() };
        }
        if a.is_constant() || b.is_constant() || coprime_mod_primes(a, b) {
            return Poly::one();
        }
        // primitive pseudo-remainder sequence over Z
        let mut x = a.primitive_integer().1;
        let mut y = b.primitive_integer().1;
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = primitive(pseudo_rem(&x, &y));
            x = std::mem::replace(&mut y, r);
        }
        Poly::from_integers(&x).monic()
    }

    /// Whether `gcd(a, b) = 1`.
    pub fn coprime(a: &Poly, b: &Poly) -> bool {
        Poly::gcd(a, b).is_one()
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g` and `g` the monic gcd.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (Poly::zero(), Poly::zero(), Poly::zero()),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let u = self.rem(m);
        let n = m.degree()?;
        if u.is_zero() || n == 0 {
            return None;
        }
        if u.is_constant() {
            return Some(Poly::constant(u.coeffs[0].recip()));
        }
        let (_, mi) = m.primitive_integer();
        if !mi[n].is_one() {
            let (g, s, _) = Poly::ext_gcd(&u, m);
            return g.is_one().then(|| s.rem(m));
        }
        // columns: U·T^k mod m for the integer multiple U of u
        let (c, ui) = u.primitive_integer();
        let mut col: Vec<BigInt> = ui;
        col.resize(n, BigInt::zero());
        let mut rows = vec![vec![BigInt::zero(); n + 1]; n];
        for k in 0..n {
            for (i, x) in col.iter().enumerate() {
                rows[i][k] = x.clone();
            }
            let top = col.pop().expect("length n");
            col.insert(0, BigInt::zero());
            for (i, x) in mi[..n].iter().enumerate() {
                col[i] -= &top * x;
            }
        }
        rows[0][n] = BigInt::one();
        let x = solve_fraction_free(rows)?;
        Some(Poly::new(x).scale(&c.recip()))
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(T))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `self(T^m)`.
    pub fn substitute_power(&self, m: usize) -> Poly {
        assert!(m >= 1);
        let mut v = vec![Rational::zero(); self.deg() * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * m] = c.clone();
        }
        Poly::new(v)
    }

    /// `self(c·T)`.
    pub fn scale_variable(&self, c: &Rational) -> Poly {
        let mut pow = Rational::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &pow);
            pow *= c;
        }
        Poly::new(v)
    }

    /// The monic polynomial whose roots are `c·α` for the roots `α` of `self`.
    /// `self` must be monic and `c` nonzero.
    pub fn scale_roots(&self, c: &Rational) -> Poly {
        let d = self.deg();
        let mut v = Vec::with_capacity(d + 1);
        let mut pow = Rational::one();
        // coefficient of T^i gets c^(d-i)
        let mut rev = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            rev.push(pow.clone());
            pow *= c;
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            v.push(a * &rev[d - i]);
        }
        Poly::new(v)
    }

    /// `T^d · self(1/T)`; requires `d >= deg self`.
    pub fn reverse(&self, d: usize) -> Poly {
        assert!(self.is_zero() || d >= self.deg());
        let mut v = vec![Rational::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[d - i] = c.clone();
        }
        Poly::new(v)
    }

    pub fn is_squarefree(&self) -> bool {
        Poly::gcd(self, &self.derivative()).is_constant()
    }

    /// Monic squarefree part (product of the distinct monic irreducible factors).
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return Poly::one();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Number of times `d` divides `self` (0 if `self` is zero or `d` constant).
    pub fn multiplicity_of(&self, d: &Poly) -> usize {
        if self.is_zero() || d.is_constant() {
            return 0;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(d) {
            k += 1;
            cur = q;
        }
        k
    }

    /// Writes `self = c · f` with `f` a primitive integer polynomial with
    /// positive leading coefficient. Panics on the zero polynomial.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        assert!(!self.is_zero());
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().expect("nonzero").is_negative() {
            content = -content;
        }
        let f: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
        (BigRational::new(content, den), f)
    }

    /// Resultant `Res(a, b)` computed with the Euclidean remainder sequence.
    pub fn resultant(a: &Poly, b: &Poly) -> Rational {
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return Rational::zero();
        };
        if da == 0 {
            return pow_rat(&a.coeffs[0], db);
        }
        if db == 0 {
            return pow_rat(&b.coeffs[0], da);
        }
        // Res(a, b) = (-1)^(da db) Res(b, a), and for a = q b + r:
        // Res(b, a) = lc(b)^(da - deg r) Res(b, r).
        let r = a.rem(b);
        let sign = if (da * db) % 2 == 1 { -Rational::one() } else { Rational::one() };
        match r.degree() {
            None => Rational::zero(),
            Some(dr) => {
                let lcb = b.lc().expect("nonzero");
                sign * pow_rat(lcb, da - dr) * Poly::resultant(b, &r)
            }
        }
    }

    /// Product modulo `m`.
    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    /// Lexicographic comparison used for deterministic orderings:
    /// by degree first, then ascending coefficients.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

pub(crate) fn pow_rat(x: &Rational, k: usize) -> Rational {
    num::pow::pow(x.clone(), k)
}

const CHECK_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// `true` only if the reductions modulo some prime not dividing either
/// leading coefficient are coprime, which forces coprimality over `Q`.
fn coprime_mod_primes(a: &Poly, b: &Poly) -> bool {
    let (_, x) = a.primitive_integer();
    let (_, y) = b.primitive_integer();
    CHECK_PRIMES.iter().any(|&p| {
        let (xm, ym) = (reduce(&x, p), reduce(&y, p));
        xm.len() == x.len()
            && ym.len() == y.len()
            && modp::degree(&modp::gcd(&xm, &ym, p)) == Some(0)
    })
}

fn reduce(x: &[BigInt], p: u64) -> Vec<u64> {
    modp::trim(x.iter().map(|c| modp::reduce_bigint(c, p)).collect())
}

fn pseudo_rem(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let mut r = x.to_vec();
    let lc = y.last().expect("nonzero divisor");
    while r.len() >= y.len() {
        let top = r.pop().expect("nonempty");
        let shift = r.len() + 1 - y.len();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, yj) in y[..y.len() - 1].iter().enumerate() {
            r[shift + j] -= &top * yj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn primitive(mut x: Vec<BigInt>) -> Vec<BigInt> {
    let g = x.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in x.iter_mut() {
            *c /= &g;
        }
    }
    x
}

/// Solves the square system given by the augmented integer matrix with
/// Bareiss elimination; `None` if it is singular.
fn solve_fraction_free(mut a: Vec<Vec<BigInt>>) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        let piv = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, piv);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= &x[j] * Rational::from_integer(a[i][j].clone());
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    Some(x)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (da, a) = self.scaled_integers();
        let (db, b) = rhs.scaled_integers();
        let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        let den = da * db;
        Poly::new(v.into_iter().map(|x| Rational::new(x, den.clone())).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            if i == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else if abs.is_integer() {
                write!(f, "{abs}*{mono}")?;
            } else {
                write!(f, "({abs})*{mono}")?;
            }
        }
        Ok(())
    }
}

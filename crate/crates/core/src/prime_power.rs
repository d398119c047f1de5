use std::fmt;

use num::{BigInt, Integer, One, Zero};
use thiserror::Error;

use crate::arith::Rational;

/// Residue-field primes are kept below `2^31` so `F_p` products fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PrimePowerError {
    #[error("{0} is not a prime power")]
    NotPrimePower(BigInt),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("prime {0} exceeds {MAX_PRIME}")]
    PrimeTooLarge(u64),
}

/// A field size `q = p^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    a: u32,
    q: BigInt,
}

impl PrimePower {
    pub fn new(p: u64, a: u32) -> Result<Self, PrimePowerError> {
        if a == 0 {
            return Err(PrimePowerError::ZeroExponent);
        }
        if !is_prime(p) {
            return Err(PrimePowerError::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(PrimePowerError::PrimeTooLarge(p));
        }
        Ok(PrimePower { p, a, q: num::pow(BigInt::from(p), a as usize) })
    }

    /// Recognizes `q` as a prime power by trial division.
    pub fn from_q(q: &BigInt) -> Result<Self, PrimePowerError> {
        let bad = || PrimePowerError::NotPrimePower(q.clone());
        if q <= &BigInt::one() {
            return Err(bad());
        }
        let mut p = None;
        let mut d = BigInt::from(2u8);
        while &d * &d <= *q {
            if q.is_multiple_of(&d) {
                p = Some(d.clone());
                break;
            }
            d += 1;
        }
        let p = p.unwrap_or_else(|| q.clone());
        let mut rest = q.clone();
        let mut a = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            a += 1;
        }
        if !rest.is_one() {
            return Err(bad());
        }
        let p = u64::try_from(&p).map_err(|_| bad())?;
        PrimePower::new(p, a)
    }

    pub fn from_u64(q: u64) -> Result<Self, PrimePowerError> {
        Self::from_q(&BigInt::from(q))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn q_rational(&self) -> Rational {
        Rational::from_integer(self.q.clone())
    }

    /// `q^k` as a rational number; `k` may be negative.
    pub fn q_pow(&self, k: i64) -> Rational {
        let base = num::pow(self.q.clone(), k.unsigned_abs() as usize);
        if k >= 0 {
            Rational::from_integer(base)
        } else {
            Rational::new(BigInt::one(), base)
        }
    }

    /// The field of size `q^m`.
    pub fn pow(&self, m: u32) -> PrimePower {
        assert!(m > 0);
        PrimePower { p: self.p, a: self.a * m, q: num::pow(self.q.clone(), m as usize) }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in a nonzero integer.
pub fn ord_p_int(x: &BigInt, p: u64) -> u64 {
    assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut k = 0;
    loop {
        let (d, r) = x.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        x = d;
        k += 1;
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn ord_p(x: &Rational, p: u64) -> i64 {
    ord_p_int(x.numer(), p) as i64 - ord_p_int(x.denom(), p) as i64
}

//! Exact real-root counting with Sturm sequences.

use num::{Signed, Zero};

use super::poly::Poly;
use super::{ArithError, Rational};

/// An endpoint of a real interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::Finite(r)
    }
}

/// The Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<Self, ArithError> {
        if p.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        if !p.is_squarefree() {
            return Err(ArithError::NotSquarefree);
        }
        let mut chain = vec![strip(p.clone()), strip(p.derivative())];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            chain.push(strip(-r));
        }
        chain.pop();
        Ok(SturmChain { chain })
    }

    fn sign_changes(&self, at: &Bound) -> usize {
        let signs = self.chain.iter().filter_map(|p| {
            let s = match at {
                Bound::Finite(x) => sign(&p.eval(x)),
                Bound::PosInf => sign(p.lc()?),
                Bound::NegInf => {
                    let s = sign(p.lc()?);
                    if p.deg() % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }
            };
            (s != 0).then_some(s)
        });
        let mut changes = 0;
        let mut prev = 0;
        for s in signs {
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
        changes
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        self.sign_changes(lo).saturating_sub(self.sign_changes(hi))
    }
}

fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Divides out a positive constant so coefficients stay small; signs are
/// unchanged.
fn strip(p: Poly) -> Poly {
    if p.is_zero() {
        return p;
    }
    let (c, ints) = p.primitive_integer();
    let f = Poly::from_integers(&ints);
    if c.is_negative() {
        -f
    } else {
        f
    }
}

/// Number of distinct real roots of the squarefree polynomial `p` in `(lo, hi]`.
pub fn sturm_count(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize, ArithError> {
    if !bound_lt(lo, hi) {
        return Err(ArithError::EmptyInterval);
    }
    if p.is_constant() && !p.is_zero() {
        return Ok(0);
    }
    Ok(SturmChain::new(p)?.count(lo, hi))
}

/// Number of distinct real roots of any nonzero polynomial.
pub fn real_root_count(p: &Poly) -> usize {
    if p.is_constant() {
        return 0;
    }
    SturmChain::new(&p.squarefree_part())
        .expect("squarefree part")
        .count(&Bound::NegInf, &Bound::PosInf)
}

fn bound_lt(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) => false,
        (Bound::NegInf, _) | (_, Bound::PosInf) => true,
        (Bound::Finite(_), Bound::NegInf) => false,
        (Bound::Finite(x), Bound::Finite(y)) => x < y,
    }
}

//! Exact rational arithmetic: polynomials over `Q`, factoring, Sturm
//! sequences, polynomial CRT and companion-matrix constructions.

pub mod crt;
pub mod factor;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod sturm;

use num::{BigInt, BigRational};
use thiserror::Error;

pub use crt::{crt_polynomials, monic_to_l_polynomial, reciprocal_transform};
pub use factor::{factor_rational_poly, is_irreducible, Factorization};
pub use matrix::Matrix;
pub use poly::Poly;
pub use sturm::{real_root_count, sturm_count, Bound};

pub type Rational = BigRational;

/// Largest matrix dimension accepted by [`tensor_charpoly`] and
/// [`exterior_charpoly`].
pub const MAX_DIMENSION: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("empty interval")]
    EmptyInterval,
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("modulus {0} is constant")]
    ConstantModulus(usize),
    #[error("constant term is not 1")]
    BadConstantTerm,
    #[error("degree hint {hint} does not match degree {degree}")]
    DegreeHintMismatch { hint: usize, degree: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("k = {k} exceeds degree {degree}")]
    KTooLarge { k: usize, degree: usize },
    #[error("matrix dimension {0} exceeds {MAX_DIMENSION}")]
    DimensionTooLarge(u128),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Monic polynomial whose roots are the products `αβ` over roots `α` of
/// `p` and `β` of `q`, with multiplicity.
pub fn tensor_charpoly(p: &Poly, q: &Poly) -> Result<Poly, ArithError> {
    if !p.is_monic() || !q.is_monic() {
        return Err(ArithError::NotMonic);
    }
    let dim = (p.deg() * q.deg()) as u128;
    if dim > MAX_DIMENSION as u128 {
        return Err(ArithError::DimensionTooLarge(dim));
    }
    if p.deg() == 0 || q.deg() == 0 {
        return Ok(Poly::one());
    }
    let k = Matrix::companion(p).kronecker(&Matrix::companion(q));
    Ok(k.charpoly())
}

/// Monic polynomial whose roots are the products of `k` roots of `p` with
/// distinct indices: the characteristic polynomial of the `k`-th compound
/// of the companion matrix.
pub fn exterior_charpoly(p: &Poly, k: usize) -> Result<Poly, ArithError> {
    if !p.is_monic() {
        return Err(ArithError::NotMonic);
    }
    let d = p.deg();
    if k > d {
        return Err(ArithError::KTooLarge { k, degree: d });
    }
    let dim = matrix::binomial(d, k);
    if dim > MAX_DIMENSION as u128 {
        return Err(ArithError::DimensionTooLarge(dim));
    }
    if k == 0 {
        return Ok(Poly::linear_root(rat(1)));
    }
    if k == 1 {
        return Ok(p.clone());
    }
    Ok(Matrix::companion(p).compound(k).charpoly())
}

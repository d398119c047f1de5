//! Chinese remaindering in `Q[T]` and the reversal between the
//! `det(1 - F·T)` and monic characteristic-polynomial conventions.

use num::{One, Zero};

use super::poly::Poly;
use super::ArithError;

/// The unique `R` with `deg R < Σ deg m_k` and `R ≡ r_k (mod m_k)` for every
/// pair `(r_k, m_k)`.
pub fn crt_polynomials(pairs: &[(Poly, Poly)]) -> Result<Poly, ArithError> {
    for (k, (_, m)) in pairs.iter().enumerate() {
        if m.is_constant() {
            return Err(ArithError::ConstantModulus(k));
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if !Poly::coprime(&pairs[i].1, &pairs[j].1) {
                return Err(ArithError::NotCoprime(i, j));
            }
        }
    }
    let modulus: Poly = pairs.iter().map(|(_, m)| m.clone()).product();
    let mut acc = Poly::zero();
    for (r, m) in pairs {
        let r = r.rem(m);
        if r.is_zero() {
            continue;
        }
        let rest = modulus.exact_div(m).expect("factor of the product");
        let inv = rest.inverse_mod(m).expect("coprime moduli");
        let u = (&r * &inv).rem(m);
        acc = &acc + &(&rest * &u);
    }
    Ok(acc.rem(&modulus))
}

/// Converts `L(T)` with `L(0) = 1` into the monic `T^d·L(1/T)`, whose roots
/// are the reciprocal roots of `L`. `degree_hint` must equal `deg L`.
pub fn reciprocal_transform(l: &Poly, degree_hint: usize) -> Result<Poly, ArithError> {
    if !l.constant_term().is_one() {
        return Err(ArithError::BadConstantTerm);
    }
    if degree_hint != l.deg() {
        return Err(ArithError::DegreeHintMismatch { hint: degree_hint, degree: l.deg() });
    }
    Ok(l.reverse(degree_hint))
}

/// Inverse of [`reciprocal_transform`]: a monic `C` with `C(0) ≠ 0`
/// becomes `T^d·C(1/T)`, normalized to constant term 1.
pub fn monic_to_l_polynomial(c: &Poly) -> Result<Poly, ArithError> {
    if !c.is_monic() {
        return Err(ArithError::NotMonic);
    }
    let c0 = c.constant_term();
    if c0.is_zero() {
        return Err(ArithError::BadConstantTerm);
    }
    // reversal has constant term lc(C) = 1 already
    Ok(c.reverse(c.deg()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn documented_examples() {
        let r = crt_polynomials(&[(p(&[1]), p(&[-1, 1])), (p(&[0]), p(&[-2, 1]))]).unwrap();
        assert_eq!(r, p(&[2, -1]));
        assert_eq!(crt_polynomials(&[(p(&[1]), p(&[-1, 1]))]).unwrap(), Poly::one());
        let r = crt_polynomials(&[
            (p(&[1]), p(&[-1, 1])),
            (p(&[0]), p(&[-2, 1])),
            (p(&[0]), p(&[-3, 1])),
        ])
        .unwrap();
        // Lagrange basis at 1 over nodes 1, 2, 3: (T-2)(T-3)/2
        assert_eq!(r, p(&[6, -5, 1]).scale(&(rat(1) / rat(2))));
    }

    #[test]
    fn not_coprime_names_the_pair() {
        let e = crt_polynomials(&[
            (p(&[1]), p(&[-1, 1])),
            (p(&[0]), p(&[-2, 1])),
            (p(&[0]), p(&[2, -3, 1])),
        ]);
        assert_eq!(e, Err(ArithError::NotCoprime(0, 2)));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(reciprocal_transform(&p(&[1, -1, 2]), 2).unwrap(), p(&[2, -1, 1]));
        assert_eq!(reciprocal_transform(&p(&[1, -2]), 1).unwrap(), p(&[-2, 1]));
        let l = p(&[1, -3]).pow(2);
        assert_eq!(reciprocal_transform(&l, 2).unwrap(), p(&[-3, 1]).pow(2));
        assert_eq!(reciprocal_transform(&p(&[2, 1]), 1), Err(ArithError::BadConstantTerm));
        assert!(reciprocal_transform(&p(&[1, 1]), 3).is_err());
    }
}

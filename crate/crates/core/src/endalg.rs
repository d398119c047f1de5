//! The algebra `A(X)` of correspondences at the generic point, described
//! as a product of matrix algebras over division algebras with explicit
//! local Brauer invariants.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::arith::{exterior_charpoly, real_root_count, ArithError, Poly, Rational};
use crate::motives::{motive_of, validate_zeta, zeta_from_curve, MotiveError, ZetaData};
use crate::padic::{padic_places_auto, PadicError, PlaceData};
use crate::weil::{is_effective, PrimePower, TateStructure, WeilError, WeilOrbit};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EndAlgError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Motive(Box<MotiveError>),
    #[error("multiplicity {multiplicity} of {orbit} is not divisible by its index {index}")]
    IndexDivisibility { orbit: String, multiplicity: usize, index: usize },
    #[error("local invariants of {0} do not sum to an integer")]
    ReciprocityViolated(String),
    #[error("orbit size times index is odd for {0}")]
    OddProduct(String),
    #[error("{0} is not a root of the exterior power")]
    CertificationFailed(String),
    #[error("zeta data failed validation: {0}")]
    ValidationFailed(String),
}

impl From<MotiveError> for EndAlgError {
    fn from(e: MotiveError) -> Self {
        EndAlgError::Motive(Box::new(e))
    }
}

/// A simple factor `M_r(D)` of `A(X)`, with `D` central over `Q[α]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSAData {
    pub center_poly: Poly,
    pub orbit_size: usize,
    pub real_places: usize,
    pub finite_invariants: Vec<(PlaceData, Rational)>,
    /// Invariant carried by each real place.
    pub real_invariant: Rational,
    pub index_e: usize,
    /// `None` until the block is placed in an algebra.
    pub matrix_size_r: Option<usize>,
}

impl CSAData {
    /// Sum of all local invariants.
    pub fn invariant_sum(&self) -> Rational {
        let real = &self.real_invariant * Rational::from_integer(BigInt::from(self.real_places));
        self.finite_invariants.iter().fold(real, |acc, (_, i)| acc + i)
    }

    pub fn r(&self) -> usize {
        self.matrix_size_r.unwrap_or(0)
    }

    pub fn dim_q(&self) -> usize {
        let r = self.r();
        r * r * self.index_e * self.index_e * self.orbit_size
    }

    pub fn is_commutative(&self) -> bool {
        self.index_e == 1 && self.r() == 1
    }
}

fn frac(x: &Rational) -> Rational {
    x - Rational::from_integer(x.floor().to_integer())
}

/// Local invariants of the endomorphism algebra of the simple object with
/// Frobenius orbit `orbit`: `slope · local degree mod 1` at each `v | p`,
/// `1/2` at each real place when `n` is odd, `0` elsewhere.
pub fn brauer_block(orbit: &WeilOrbit, n_odd: bool) -> Result<CSAData, EndAlgError> {
    let places = padic_places_auto(orbit.min_poly(), orbit.base())?;
    let finite_invariants: Vec<(PlaceData, Rational)> = places
        .into_iter()
        .map(|pl| {
            let inv = frac(&(&pl.slope * Rational::from_integer(BigInt::from(pl.local_degree))));
            (pl, inv)
        })
        .collect();
    let real_places = real_root_count(orbit.min_poly());
    let real_invariant = if real_places > 0 && n_odd {
        Rational::new(BigInt::one(), BigInt::from(2))
    } else {
        Rational::zero()
    };
    let mut e = BigInt::one();
    for (_, inv) in &finite_invariants {
        e = e.lcm(inv.denom());
    }
    if real_places > 0 {
        e = e.lcm(real_invariant.denom());
    }
    let block = CSAData {
        center_poly: orbit.min_poly().clone(),
        orbit_size: orbit.degree(),
        real_places,
        finite_invariants,
        real_invariant,
        index_e: usize::try_from(&e).expect("index fits in usize"),
        matrix_size_r: None,
    };
    if !block.invariant_sum().is_integer() {
        return Err(EndAlgError::ReciprocityViolated(orbit.min_poly().to_string()));
    }
    Ok(block)
}

/// Index of the division algebra attached to an orbit in its own weight.
pub fn orbit_index(orbit: &WeilOrbit) -> Result<usize, EndAlgError> {
    Ok(brauer_block(orbit, orbit.weight().rem_euclid(2) == 1)?.index_e)
}

/// `A(X) ≅ ∏ M_{r_j}(D_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescription {
    pub blocks: Vec<CSAData>,
    pub base: PrimePower,
    pub ambient_weight_n: i64,
}

impl AlgebraDescription {
    /// `Σ r_j² e_j² |o_j|`.
    pub fn dim_q(&self) -> usize {
        self.blocks.iter().map(CSAData::dim_q).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Display for AlgebraDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "A(X) = 0");
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let d = match (b.orbit_size, b.index_e) {
                    (1, 1) => "Q".to_string(),
                    (_, 1) => format!("Q[T]/({})", b.center_poly),
                    (_, e) => format!("D(e={e}) over Q[T]/({})", b.center_poly),
                };
                if b.r() == 1 {
                    d
                } else {
                    format!("M_{}({d})", b.r())
                }
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Orbits of `v` with minimal Newton slope below 1, i.e. with `α/q` not an
/// algebraic integer.
pub fn s_selection(v: &TateStructure) -> TateStructure {
    let one = Rational::one();
    let parts = v
        .parts()
        .iter()
        .filter(|(o, _)| o.newton_polygon().min_slope().is_some_and(|s| s < &one))
        .cloned()
        .collect();
    TateStructure::new(v.base().clone(), parts).expect("same base")
}

/// Builds the algebra from a weight-`n` Tate structure.
pub fn algebra_from_structure(v: &TateStructure, n: i64) -> Result<AlgebraDescription, EndAlgError> {
    let mut blocks = Vec::new();
    for (o, mult) in s_selection(v).parts() {
        let mut block = brauer_block(o, n.rem_euclid(2) == 1)?;
        if mult % block.index_e != 0 {
            return Err(EndAlgError::IndexDivisibility {
                orbit: o.min_poly().to_string(),
                multiplicity: *mult,
                index: block.index_e,
            });
        }
        block.matrix_size_r = Some(mult / block.index_e);
        blocks.push(block);
    }
    Ok(AlgebraDescription { blocks, base: v.base().clone(), ambient_weight_n: n })
}

/// `A(X)` from the middle-weight part `h^n` of the zeta data.
#[allow(non_snake_case)]
pub fn compute_A(z: &ZetaData) -> Result<AlgebraDescription, EndAlgError> {
    compute_a_in_degree(z, z.dim_n())
}

/// As [`compute_A`] but using the weight-`n` part for a chosen `n`.
pub fn compute_a_in_degree(z: &ZetaData, n: usize) -> Result<AlgebraDescription, EndAlgError> {
    let report = validate_zeta(z);
    if !report.passed() {
        return Err(EndAlgError::ValidationFailed(report.summary()));
    }
    if n > 2 * z.dim_n() {
        return Err(MotiveError::RangeError { index: n as i64, max: 2 * z.dim_n() as i64 }.into());
    }
    let m = motive_of(z)?;
    algebra_from_structure(&m.part(n as i64), n as i64)
}

/// `A(X)` of a curve, i.e. `End(J) ⊗ Q` for its Jacobian `J`.
pub fn curve_end_algebra(l1: &Poly, q: &PrimePower) -> Result<AlgebraDescription, EndAlgError> {
    compute_A(&zeta_from_curve(l1, q)?)
}

/// `Σ r_j · |o_j| · e_j`.
pub fn rank_from_algebra(a: &AlgebraDescription) -> usize {
    a.blocks.iter().map(|b| b.r() * b.orbit_size * b.index_e).sum()
}

/// Slots of slope below 1 in the weight-`n` part.
pub fn witt_vector_rank(z: &ZetaData) -> Result<usize, EndAlgError> {
    let m = motive_of(z)?;
    let one = Rational::one();
    Ok(m
        .part(z.dim_n() as i64)
        .parts()
        .iter()
        .map(|(o, mult)| mult * o.newton_polygon().count_below(&one))
        .sum())
}

/// Dimension of the simple abelian variety with Frobenius orbit `orbit`:
/// `|o| · e / 2`.
pub fn honda_tate_dimension(orbit: &WeilOrbit) -> Result<usize, EndAlgError> {
    if orbit.weight() != 1 {
        return Err(WeilError::WeightMismatch { expected: 1, found: orbit.weight() }.into());
    }
    if !is_effective(orbit) {
        return Err(WeilError::NotEffectiveInput.into());
    }
    let block = brauer_block(orbit, true)?;
    let prod = block.orbit_size * block.index_e;
    if prod % 2 == 1 {
        return Err(EndAlgError::OddProduct(orbit.min_poly().to_string()));
    }
    Ok(prod / 2)
}

/// A weight-`m` Weil `q`-integer seen as a weight-1 Weil `q^m`-integer,
/// restricted to `F_q`, and certified inside the `m`-th exterior power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight1Realization {
    pub q_m: PrimePower,
    /// Monic polynomial over `q` whose roots are the `m`-th roots of
    /// `(-1)^{m-1} α`; equal to `P(T^m)` for odd `m`.
    pub restricted: Poly,
    pub exterior_degree: usize,
}

/// The product of the `m` roots of `T^m - (-1)^{m-1} α` is `α`, so `α` is a
/// root of `Λ^m` of the restricted polynomial.
pub fn weight1_realization(orbit: &WeilOrbit, m: u32) -> Result<Weight1Realization, EndAlgError> {
    if m == 0 {
        return Err(WeilError::ZeroM.into());
    }
    if orbit.weight() != m as i64 {
        return Err(WeilError::WeightMismatch { expected: m as i64, found: orbit.weight() }.into());
    }
    if !is_effective(orbit) {
        return Err(WeilError::NotEffectiveInput.into());
    }
    let p = orbit.min_poly();
    let d = p.deg();
    let restricted = if m % 2 == 1 {
        p.substitute_power(m as usize)
    } else {
        let neg = p.scale_variable(&-Rational::one()).substitute_power(m as usize);
        if d % 2 == 1 {
            -neg
        } else {
            neg
        }
    };
    let ext = exterior_charpoly(&restricted, m as usize)?;
    if !p.divides(&ext) {
        return Err(EndAlgError::CertificationFailed(p.to_string()));
    }
    Ok(Weight1Realization { q_m: orbit.base().pow(m), restricted, exterior_degree: m as usize })
}

impl CSAData {
    /// Whether every invariant is zero, so `D` is the center itself.
    pub fn is_split(&self) -> bool {
        self.index_e == 1
    }

    pub fn finite_invariant_values(&self) -> Vec<Rational> {
        self.finite_invariants.iter().map(|(_, i)| i.clone()).collect()
    }

    /// Places with nonzero invariant: `p`-place ids, and `None` for real ones.
    pub fn ramified_places(&self) -> Vec<Option<usize>> {
        let mut out: Vec<Option<usize>> = self
            .finite_invariants
            .iter()
            .filter(|(_, i)| !i.is_zero())
            .map(|(pl, _)| Some(pl.place_id))
            .collect();
        if self.real_invariant.is_positive() {
            out.extend(std::iter::repeat_n(None, self.real_places));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::motives::zeta_product;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn q(n: u64) -> PrimePower {
        PrimePower::from_u64(n).unwrap()
    }

    fn orbit(c: &[i64], n: u64) -> WeilOrbit {
        WeilOrbit::new(p(c), q(n)).unwrap()
    }

    #[test]
    fn brauer_examples() {
        let b = brauer_block(&orbit(&[2, -1, 1], 2), true).unwrap();
        assert_eq!(b.finite_invariant_values(), vec![rat(0), rat(0)]);
        assert_eq!((b.real_places, b.index_e), (0, 1));

        let b = brauer_block(&orbit(&[-3, 1], 9), true).unwrap();
        assert_eq!(b.finite_invariant_values(), vec![ratio(1, 2)]);
        assert_eq!((b.real_places, b.real_invariant.clone(), b.index_e), (1, ratio(1, 2), 2));
        assert_eq!(b.invariant_sum(), rat(1));

        let b = brauer_block(&orbit(&[-1, 1], 5), false).unwrap();
        assert_eq!(b.index_e, 1);
        assert_eq!(b.real_invariant, rat(0));
    }

    #[test]
    fn both_real_places_ramify_for_sqrt_p() {
        let b = brauer_block(&orbit(&[-3, 0, 1], 3), true).unwrap();
        assert_eq!(b.real_places, 2);
        assert_eq!(b.finite_invariant_values(), vec![rat(0)]);
        assert_eq!(b.index_e, 2);
        assert_eq!(honda_tate_dimension(&orbit(&[-3, 0, 1], 3)), Ok(2));
    }

    #[test]
    fn algebra_examples() {
        let pt = compute_A(&ZetaData::point(q(3))).unwrap();
        assert_eq!((pt.blocks.len(), pt.dim_q()), (1, 1));

        let e = curve_end_algebra(&p(&[1, -1, 2]), &q(2)).unwrap();
        assert_eq!((e.blocks.len(), e.dim_q(), rank_from_algebra(&e)), (1, 2, 2));
        assert!(e.blocks[0].is_commutative());

        let ss = curve_end_algebra(&p(&[1, 0, 5]), &q(5)).unwrap();
        assert_eq!((ss.dim_q(), ss.blocks[0].index_e), (2, 1));

        let quat = curve_end_algebra(&p(&[1, -3]).pow(2), &q(9)).unwrap();
        let b = &quat.blocks[0];
        assert_eq!((b.index_e, b.r(), b.orbit_size), (2, 1, 1));
        assert_eq!(rank_from_algebra(&quat), 2);
        assert_eq!(quat.dim_q(), 4);
    }

    #[test]
    fn supersingular_square_has_zero_algebra() {
        for prime in [2i64, 3, 5] {
            let qq = q((prime * prime) as u64);
            let e = zeta_from_curve(&p(&[1, prime]).pow(2), &qq).unwrap();
            let ee = zeta_product(&e, &e).unwrap();
            assert!(compute_A(&ee).unwrap().is_zero());
            assert_eq!(witt_vector_rank(&ee), Ok(0));
        }
    }

    #[test]
    fn rank_examples() {
        let mk = |r, size, e| CSAData {
            center_poly: p(&[-1, 1]),
            orbit_size: size,
            real_places: 1,
            finite_invariants: Vec::new(),
            real_invariant: rat(0),
            index_e: e,
            matrix_size_r: Some(r),
        };
        let a = |blocks| AlgebraDescription { blocks, base: q(2), ambient_weight_n: 0 };
        assert_eq!(rank_from_algebra(&a(vec![mk(2, 1, 1)])), 2);
        assert_eq!(rank_from_algebra(&a(vec![mk(1, 1, 2)])), 2);
        assert_eq!(rank_from_algebra(&a(Vec::new())), 0);
    }

    #[test]
    fn witt_examples() {
        let e = zeta_from_curve(&p(&[1, -1, 2]), &q(2)).unwrap();
        assert_eq!(witt_vector_rank(&e), Ok(1));
        let p1 = zeta_from_curve(&p(&[1]), &q(2)).unwrap();
        assert_eq!(witt_vector_rank(&p1), Ok(0));
    }

    #[test]
    fn honda_examples() {
        assert_eq!(honda_tate_dimension(&orbit(&[2, -1, 1], 2)), Ok(1));
        assert_eq!(honda_tate_dimension(&orbit(&[-5, 1], 25)), Ok(1));
        assert_eq!(honda_tate_dimension(&orbit(&[2, 0, 1], 2)), Ok(1));
    }

    #[test]
    fn realization_examples() {
        let o = orbit(&[2, -1, 1], 2);
        let r = weight1_realization(&o, 1).unwrap();
        assert_eq!((r.restricted, r.q_m, r.exterior_degree), (p(&[2, -1, 1]), q(2), 1));

        let r = weight1_realization(&orbit(&[-3, 1], 3), 2).unwrap();
        assert_eq!(r.restricted, p(&[3, 0, 1]));
        assert_eq!(exterior_charpoly(&r.restricted, 2).unwrap(), p(&[-3, 1]));
        assert_eq!(r.q_m, q(9));
    }

    #[test]
    fn realization_of_weight_two_quadratic() {
        // T^2 - T + 4 over q = 2 has weight 2
        let r = weight1_realization(&orbit(&[4, -1, 1], 2), 2).unwrap();
        assert_eq!(r.restricted, p(&[4, 0, 1, 0, 1]));
    }
}

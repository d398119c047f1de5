//! Weil `q`-numbers and Tate structures: exact verification, weights,
//! effectivity, Tate twists, the coniveau filtration `F_b^r`, slope
//! dimensions, restriction of the base field and `m`-th roots.
//!
//! The geometric coniveau filtration is represented only by its
//! eigenvalue-side counterpart: an orbit lies in `F_b^r` iff `α/q^r` is an
//! algebraic integer.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::arith::factor::{distinct_irreducible_factors, squarefree_decomposition};
use crate::arith::{is_irreducible, real_root_count, rat, sturm_count, Bound, Poly, Rational};
use crate::padic::{newton_polygon, NewtonPolygon};
pub use crate::prime_power::PrimePower;
use crate::prime_power::ord_p;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotWeilReason {
    /// `|P(0)|` is not `q^{md/2}` for an integer `m`.
    WrongConstantValuation,
    /// Some `α + q^m/α` is not real.
    NotTotallyReal,
    /// Some `|α + q^m/α|` exceeds `2 q^{m/2}`.
    RootBoundViolated,
    /// A coefficient has a denominator prime to `p`.
    BadDenominator,
}

impl NotWeilReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotWeilReason::WrongConstantValuation => "wrong constant-term valuation",
            NotWeilReason::NotTotallyReal => "not totally real",
            NotWeilReason::RootBoundViolated => "root bound violated",
            NotWeilReason::BadDenominator => "bad denominator",
        }
    }
}

impl fmt::Display for NotWeilReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("not a Weil polynomial: {0}")]
    NotWeil(NotWeilReason),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is constant")]
    Constant,
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("expected weight {expected}, found {found}")]
    WeightMismatch { expected: i64, found: i64 },
    #[error("input has a non-effective orbit")]
    NotEffectiveInput,
    #[error("base fields differ")]
    BaseMismatch,
    #[error("m must be positive")]
    ZeroM,
}

/// Values of `P` at `0, 1, ..., n` determine `P` when `deg P <= n`.
pub(crate) fn interpolate(values: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    let n = values.len();
    for (i, y) in values.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Rational::one();
        for j in (0..n).filter(|&j| j != i) {
            basis = &basis * &Poly::linear_root(rat(j as i64));
            denom *= rat(i as i64 - j as i64);
        }
        acc = &acc + &basis.scale(&(y / denom));
    }
    acc
}

/// Monic polynomial in `y` whose roots are `α + c/α` over the roots `α` of
/// the monic `p`: `Res_T(p(T), T^2 - yT + c) / p(0)`.
pub(crate) fn trace_polynomial(p: &Poly, c: &Rational) -> Poly {
    let d = p.deg();
    let p0 = p.constant_term();
    let values: Vec<Rational> = (0..=d)
        .map(|y| {
            let h = Poly::new(vec![c.clone(), -rat(y as i64), rat(1)]);
            Poly::resultant(p, &h) / &p0
        })
        .collect();
    interpolate(&values)
}

/// The polynomial whose roots are the squares of the roots of `g`.
fn graeffe(g: &Poly) -> Poly {
    let d = g.deg();
    let neg = g.scale_variable(&rat(-1));
    let prod = g * &neg;
    let half: Vec<Rational> = prod.coeffs().iter().step_by(2).cloned().collect();
    let r = Poly::new(half);
    if d % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Exact weight check. Returns the unique `m` with `|ρ(α)| = q^{m/2}` for
/// every root `α` of `p` and every complex embedding `ρ`. Reducible `p` is
/// accepted when all roots share one weight.
pub fn verify_weil(p: &Poly, q: &PrimePower) -> Result<i64, WeilError> {
    if !p.is_monic() {
        return Err(WeilError::NotMonic);
    }
    if p.is_constant() {
        return Err(WeilError::Constant);
    }
    let p0 = p.constant_term();
    if p0.is_zero() {
        return Err(WeilError::ZeroConstantTerm);
    }
    let prime = BigInt::from(q.p());
    let p_power = |mut x: BigInt| {
        while (&x % &prime).is_zero() {
            x /= &prime;
        }
        x.is_one()
    };
    if !p.coeffs().iter().all(|c| p_power(c.denom().clone())) {
        return Err(WeilError::NotWeil(NotWeilReason::BadDenominator));
    }
    let d = p.deg() as i64;
    let v = ord_p(&p0, q.p());
    let denom = q.a() as i64 * d;
    if (2 * v) % denom != 0 {
        return Err(WeilError::NotWeil(NotWeilReason::WrongConstantValuation));
    }
    let m = 2 * v / denom;
    let expected = if v >= 0 {
        Rational::from_integer(num::pow(prime.clone(), v as usize))
    } else {
        Rational::new(BigInt::one(), num::pow(prime.clone(), (-v) as usize))
    };
    if p0.abs() != expected {
        return Err(WeilError::NotWeil(NotWeilReason::WrongConstantValuation));
    }
    let qm = q.q_pow(m);
    let g = trace_polynomial(p, &qm);
    let g_sf = g.squarefree_part();
    if real_root_count(&g_sf) != g_sf.deg() {
        return Err(WeilError::NotWeil(NotWeilReason::NotTotallyReal));
    }
    let r_sf = graeffe(&g).squarefree_part();
    let bound = Bound::Finite(&qm * rat(4));
    if !r_sf.is_constant() && sturm_count(&r_sf, &bound, &Bound::PosInf).expect("squarefree") > 0 {
        return Err(WeilError::NotWeil(NotWeilReason::RootBoundViolated));
    }
    Ok(m)
}

/// A Galois orbit of Weil `q`-numbers, given by its minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeilOrbit {
    min_poly: Poly,
    base: PrimePower,
    weight: i64,
}

impl WeilOrbit {
    /// Verifies irreducibility and the Weil property.
    pub fn new(min_poly: Poly, base: PrimePower) -> Result<Self, WeilError> {
        if !min_poly.is_monic() {
            return Err(WeilError::NotMonic);
        }
        if min_poly.is_constant() {
            return Err(WeilError::Constant);
        }
        if !is_irreducible(&min_poly) {
            return Err(WeilError::NotIrreducible);
        }
        let weight = verify_weil(&min_poly, &base)?;
        Ok(WeilOrbit { min_poly, base, weight })
    }

    pub fn with_weight(min_poly: Poly, base: PrimePower, weight: i64) -> Result<Self, WeilError> {
        let o = Self::new(min_poly, base)?;
        if o.weight != weight {
            return Err(WeilError::WeightMismatch { expected: weight, found: o.weight });
        }
        Ok(o)
    }

    /// Caller guarantees the invariants, e.g. for a factor of a verified
    /// polynomial.
    pub(crate) fn trusted(min_poly: Poly, base: PrimePower, weight: i64) -> Self {
        WeilOrbit { min_poly, base, weight }
    }

    /// The unit orbit `T - 1` of weight 0.
    pub fn unit(base: PrimePower) -> Self {
        WeilOrbit { min_poly: Poly::linear_root(rat(1)), base, weight: 0 }
    }

    pub fn min_poly(&self) -> &Poly {
        &self.min_poly
    }

    pub fn base(&self) -> &PrimePower {
        &self.base
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }

    pub fn newton_polygon(&self) -> NewtonPolygon {
        newton_polygon(&self.min_poly, &self.base).expect("Weil polynomials are monic with P(0) != 0")
    }

    /// The orbit of `α / q^r`.
    pub fn twist(&self, r: i64) -> WeilOrbit {
        WeilOrbit {
            min_poly: self.min_poly.scale_roots(&self.base.q_pow(-r)),
            base: self.base.clone(),
            weight: self.weight - 2 * r,
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| self.min_poly.canonical_cmp(&other.min_poly))
    }
}

impl fmt::Display for WeilOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (q={}, weight {})", self.min_poly, self.base, self.weight)
    }
}

/// Orbit is effective iff its minimal polynomial has integer coefficients.
pub fn is_effective(orbit: &WeilOrbit) -> bool {
    orbit.min_poly.is_integral()
}

/// Semisimplified Frobenius eigenvalue data: orbits with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TateStructure {
    base: PrimePower,
    parts: Vec<(WeilOrbit, usize)>,
}

impl TateStructure {
    pub fn empty(base: PrimePower) -> Self {
        TateStructure { base, parts: Vec::new() }
    }

    /// Merges repeated orbits, drops zero multiplicities and sorts by
    /// weight and then minimal polynomial.
    pub fn new(base: PrimePower, parts: Vec<(WeilOrbit, usize)>) -> Result<Self, WeilError> {
        let mut merged: Vec<(WeilOrbit, usize)> = Vec::new();
        for (o, m) in parts {
            if o.base != base {
                return Err(WeilError::BaseMismatch);
            }
            if m == 0 {
                continue;
            }
            match merged.iter_mut().find(|(x, _)| x.min_poly == o.min_poly) {
                Some(slot) => slot.1 += m,
                None => merged.push((o, m)),
            }
        }
        merged.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        Ok(TateStructure { base, parts: merged })
    }

    /// Decomposes a monic characteristic polynomial into verified orbits.
    pub fn from_charpoly(c: &Poly, base: &PrimePower) -> Result<Self, WeilError> {
        if !c.is_monic() {
            return Err(WeilError::NotMonic);
        }
        let mut parts = Vec::new();
        for (sf, mult) in squarefree_decomposition(c) {
            for f in distinct_irreducible_factors(&sf).expect("nonzero") {
                parts.push((WeilOrbit::new(f, base.clone())?, mult));
            }
        }
        Self::new(base.clone(), parts)
    }

    pub fn base(&self) -> &PrimePower {
        &self.base
    }

    pub fn parts(&self) -> &[(WeilOrbit, usize)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(|(o, m)| o.degree() * m).sum()
    }

    pub fn multiplicity(&self, min_poly: &Poly) -> usize {
        self.parts.iter().find(|(o, _)| &o.min_poly == min_poly).map_or(0, |p| p.1)
    }

    /// Monic characteristic polynomial `∏ f^mult`.
    pub fn charpoly(&self) -> Poly {
        self.parts.iter().map(|(o, m)| o.min_poly.pow(*m as u32)).product()
    }

    pub fn is_effective(&self) -> bool {
        self.parts.iter().all(|(o, _)| is_effective(o))
    }

    /// Direct sum.
    pub fn sum(&self, other: &TateStructure) -> Result<TateStructure, WeilError> {
        if self.base != other.base {
            return Err(WeilError::BaseMismatch);
        }
        let parts = self.parts.iter().chain(&other.parts).cloned().collect();
        Self::new(self.base.clone(), parts)
    }
}

/// Replaces every eigenvalue `α` by `α/q^r`.
pub fn tate_twist(v: &TateStructure, r: i64) -> TateStructure {
    let parts = v.parts.iter().map(|(o, m)| (o.twist(r), *m)).collect();
    TateStructure::new(v.base.clone(), parts).expect("twist preserves the base")
}

/// `F_b^r`: the orbits whose twist by `r` stays effective.
pub fn coniveau_sub(v: &TateStructure, r: u32) -> Result<TateStructure, WeilError> {
    if !v.is_effective() {
        return Err(WeilError::NotEffectiveInput);
    }
    let parts = v
        .parts
        .iter()
        .filter(|(o, _)| is_effective(&o.twist(r as i64)))
        .cloned()
        .collect();
    TateStructure::new(v.base.clone(), parts)
}

/// Dimension of the part with Newton slopes at least `r`.
pub fn slope_filtration_dim(v: &TateStructure, r: &Rational) -> usize {
    v.parts.iter().map(|(o, m)| m * o.newton_polygon().count_at_least(r)).sum()
}

/// Restriction of the base field from `q^m` to `q`: the polynomial
/// `P(T^m)`, whose roots are all `m`-th roots of roots of `P`. `p` is
/// verified over `q^m`.
pub fn weil_restriction_charpoly(p: &Poly, q: &PrimePower, m: u32) -> Result<Poly, WeilError> {
    if m == 0 {
        return Err(WeilError::ZeroM);
    }
    verify_weil(p, &q.pow(m))?;
    Ok(p.substitute_power(m as usize))
}

/// Factors `P(T^m)` for a Weil `q`-integer `P` of weight `m`; every factor
/// is a Weil `q`-number of weight 1.
pub fn mth_root_factors(p: &Poly, q: &PrimePower, m: u32) -> Result<Vec<WeilOrbit>, WeilError> {
    if m == 0 {
        return Err(WeilError::ZeroM);
    }
    if !p.is_monic() {
        return Err(WeilError::NotMonic);
    }
    if !is_irreducible(p) {
        return Err(WeilError::NotIrreducible);
    }
    let w = verify_weil(p, q)?;
    if w != m as i64 {
        return Err(WeilError::WeightMismatch { expected: m as i64, found: w });
    }
    let lifted = p.substitute_power(m as usize);
    distinct_irreducible_factors(&lifted)
        .expect("nonzero")
        .into_iter()
        .map(|f| WeilOrbit::with_weight(f, q.clone(), 1))
        .collect()
}

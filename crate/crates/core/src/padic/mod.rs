//! `p`-adic valuations normalized so that `ord(q) = 1`, Newton polygons,
//! and the places above `p` of the field generated by a Weil number.

mod round2;

use num::{BigInt, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::arith::{is_irreducible, Poly, Rational};
use crate::prime_power::{ord_p, ord_p_int, PrimePower};

/// Number of precision doublings [`padic_places_auto`] attempts.
pub const MAX_RETRIES: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("valuation of zero")]
    ZeroInput,
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("precision {0} cannot separate the places")]
    PrecisionExhausted(u32),
}

/// `ord_p(x) / a` for `q = p^a`.
pub fn ord_q(x: &Rational, q: &PrimePower) -> Result<Rational, PadicError> {
    if x.is_zero() {
        return Err(PadicError::ZeroInput);
    }
    Ok(Rational::new(BigInt::from(ord_p(x, q.p())), BigInt::from(q.a())))
}

/// Root valuations of a polynomial as `(slope, multiplicity)`, slopes
/// strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    segments: Vec<(Rational, usize)>,
}

impl NewtonPolygon {
    pub fn segments(&self) -> &[(Rational, usize)] {
        &self.segments
    }

    pub fn degree(&self) -> usize {
        self.segments.iter().map(|s| s.1).sum()
    }

    /// Slopes listed with multiplicity, ascending.
    pub fn slopes(&self) -> Vec<Rational> {
        self.segments
            .iter()
            .flat_map(|(s, m)| std::iter::repeat_n(s.clone(), *m))
            .collect()
    }

    pub fn min_slope(&self) -> Option<&Rational> {
        self.segments.first().map(|s| &s.0)
    }

    /// Number of slots with slope at least `r`.
    pub fn count_at_least(&self, r: &Rational) -> usize {
        self.segments.iter().filter(|(s, _)| s >= r).map(|s| s.1).sum()
    }

    pub fn count_below(&self, r: &Rational) -> usize {
        self.degree() - self.count_at_least(r)
    }
}

/// Lower convex hull of `(i, ord_q(c_i))`. Segment slopes are negated to
/// give root valuations.
pub fn newton_polygon(p: &Poly, q: &PrimePower) -> Result<NewtonPolygon, PadicError> {
    if !p.is_monic() {
        return Err(PadicError::NotMonic);
    }
    if p.constant_term().is_zero() {
        return Err(PadicError::ZeroConstantTerm);
    }
    let points: Vec<(i64, Rational)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, ord_q(c, q).expect("nonzero")))
        .collect();
    let mut hull: Vec<(i64, Rational)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (o, a) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            let cross = Rational::from_integer(BigInt::from(a.0 - o.0)) * (&pt.1 - &o.1)
                - (&a.1 - &o.1) * Rational::from_integer(BigInt::from(pt.0 - o.0));
            if cross.is_positive() {
                break;
            }
            hull.pop();
        }
        hull.push(pt);
    }
    let mut segments: Vec<(Rational, usize)> = hull
        .windows(2)
        .map(|w| {
            let dx = w[1].0 - w[0].0;
            let slope = (&w[0].1 - &w[1].1) / Rational::from_integer(BigInt::from(dx));
            (slope, dx as usize)
        })
        .collect();
    segments.reverse();
    Ok(NewtonPolygon { segments })
}

/// One place `v | p` of `Q[α]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceData {
    /// `ord_v(α) / ord_v(q)`.
    pub slope: Rational,
    /// `[Q[α]_v : Q_p]`.
    pub local_degree: usize,
    pub place_id: usize,
}

/// Smallest positive integer `D` with `Dα` integral, where `α` is a root
/// of the monic `p`.
fn integral_scale(p: &Poly) -> BigInt {
    p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Precision used by [`padic_places_auto`] on its first attempt.
pub fn default_precision(p: &Poly, q: &PrimePower) -> u32 {
    let d = integral_scale(p);
    let f = p.scale_roots(&Rational::from_integer(d));
    let c0 = f.constant_term();
    let v = if c0.is_zero() { 0 } else { ord_p_int(c0.numer(), q.p()) };
    (2 * v + 10).min(u32::MAX as u64) as u32
}

/// The places above `p` of the field cut out by the monic irreducible `P`,
/// each with its normalized slope and local degree, sorted by slope and
/// then local degree. `precision` is the `p`-adic precision (in digits) at
/// which local idempotents are lifted.
pub fn padic_places(p: &Poly, q: &PrimePower, precision: u32) -> Result<Vec<PlaceData>, PadicError> {
    if !p.is_monic() {
        return Err(PadicError::NotMonic);
    }
    if p.constant_term().is_zero() {
        return Err(PadicError::ZeroConstantTerm);
    }
    if !is_irreducible(p) {
        return Err(PadicError::NotIrreducible);
    }
    let d = integral_scale(p);
    let f = p.scale_roots(&Rational::from_integer(d.clone()));
    let shift = ord_p_int(&d, q.p()) as i64;
    let raw = round2::local_norm_valuations(&f, q.p(), precision.max(1))
        .ok_or(PadicError::PrecisionExhausted(precision))?;
    let mut places: Vec<PlaceData> = raw
        .into_iter()
        .map(|(local_degree, vnorm)| {
            let v = Rational::new(BigInt::from(vnorm), BigInt::from(local_degree))
                - Rational::from_integer(BigInt::from(shift));
            PlaceData { slope: v / Rational::from_integer(BigInt::from(q.a())), local_degree, place_id: 0 }
        })
        .collect();
    places.sort_by(|a, b| a.slope.cmp(&b.slope).then(a.local_degree.cmp(&b.local_degree)));
    for (i, pl) in places.iter_mut().enumerate() {
        pl.place_id = i;
    }
    Ok(places)
}

/// [`padic_places`] starting at [`default_precision`] and doubling on
/// `PrecisionExhausted`, at most [`MAX_RETRIES`] times.
pub fn padic_places_auto(p: &Poly, q: &PrimePower) -> Result<Vec<PlaceData>, PadicError> {
    let mut precision = default_precision(p, q);
    let mut attempt = 0;
    loop {
        match padic_places(p, q, precision) {
            Err(PadicError::PrecisionExhausted(_)) if attempt < MAX_RETRIES => {
                attempt += 1;
                precision = precision.saturating_mul(2);
            }
            other => return other,
        }
    }
}

//! Zeta data of varieties over finite fields, the associated graded
//! motives, Künneth idempotents, pole orders, and Hom dimensions in the
//! semisimple category and its graded derived category.

use std::collections::BTreeMap;

use num::One;
use thiserror::Error;

use crate::arith::factor::{distinct_irreducible_factors, squarefree_decomposition};
use crate::arith::{
    crt_polynomials, exterior_charpoly, reciprocal_transform, tensor_charpoly, ArithError, Poly,
};
use crate::endalg::{orbit_index, EndAlgError};
use crate::weil::{verify_weil, NotWeilReason, PrimePower, TateStructure, WeilError, WeilOrbit};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("base fields differ")]
    BaseMismatch,
    #[error("expected {expected} polynomials, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("polynomial {0} does not have constant term 1")]
    BadConstantTerm(usize),
    #[error("curve L-polynomial has odd degree")]
    OddDegree,
    #[error("zeta data failed validation: {0}")]
    ValidationFailed(String),
    #[error("index {index} out of range 0..={max}")]
    RangeError { index: i64, max: i64 },
    #[error("multiplicity {multiplicity} of {orbit} is not divisible by its index {index}")]
    IndexDivisibility { orbit: String, multiplicity: usize, index: usize },
    #[error("characteristic polynomials in degrees {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    EndAlg(Box<EndAlgError>),
}

impl From<EndAlgError> for MotiveError {
    fn from(e: EndAlgError) -> Self {
        MotiveError::EndAlg(Box::new(e))
    }
}

/// `q`, the dimension `n`, and `P_0, ..., P_{2n}` with `P_i(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaData {
    base: PrimePower,
    dim_n: usize,
    l_polys: Vec<Poly>,
}

impl ZetaData {
    /// Checks the shape only; see [`validate_zeta`] for the arithmetic.
    pub fn new(base: PrimePower, dim_n: usize, l_polys: Vec<Poly>) -> Result<Self, MotiveError> {
        if l_polys.len() != 2 * dim_n + 1 {
            return Err(MotiveError::WrongLength { expected: 2 * dim_n + 1, found: l_polys.len() });
        }
        if let Some(i) = l_polys.iter().position(|l| !l.constant_term().is_one()) {
            return Err(MotiveError::BadConstantTerm(i));
        }
        Ok(ZetaData { base, dim_n, l_polys })
    }

    /// The point `Spec F_q`.
    pub fn point(base: PrimePower) -> Self {
        ZetaData { base, dim_n: 0, l_polys: vec![Poly::from_ints(&[1, -1])] }
    }

    pub fn base(&self) -> &PrimePower {
        &self.base
    }

    pub fn dim_n(&self) -> usize {
        self.dim_n
    }

    pub fn l_polys(&self) -> &[Poly] {
        &self.l_polys
    }

    pub fn l_poly(&self, i: usize) -> &Poly {
        &self.l_polys[i]
    }

    /// Monic characteristic polynomial `C_i = T^d P_i(1/T)`.
    pub fn charpoly(&self, i: usize) -> Poly {
        let l = &self.l_polys[i];
        reciprocal_transform(l, l.deg()).expect("constant term checked on construction")
    }

    pub fn charpolys(&self) -> Vec<Poly> {
        (0..self.l_polys.len()).map(|i| self.charpoly(i)).collect()
    }

    fn from_charpolys(base: PrimePower, dim_n: usize, cs: &[Poly]) -> Self {
        let l_polys = cs.iter().map(|c| c.reverse(c.deg())).collect();
        ZetaData { base, dim_n, l_polys }
    }
}

/// Genus-`g` curve data `{1 - T; L1; 1 - qT}` from its `L`-polynomial.
pub fn zeta_from_curve(l1: &Poly, q: &PrimePower) -> Result<ZetaData, MotiveError> {
    if !l1.constant_term().is_one() {
        return Err(MotiveError::BadConstantTerm(1));
    }
    if l1.deg() % 2 == 1 {
        return Err(MotiveError::OddDegree);
    }
    check_weight(l1, q, 1)?;
    let top = Poly::new(vec![num::One::one(), -q.q_rational()]);
    ZetaData::new(q.clone(), 1, vec![Poly::from_ints(&[1, -1]), l1.clone(), top])
}

/// Zeta data of a `g`-dimensional abelian variety from the `L`-polynomial
/// of its `H^1`: `H^i = Λ^i H^1`.
pub fn zeta_abelian_variety(l1: &Poly, q: &PrimePower) -> Result<ZetaData, MotiveError> {
    if !l1.constant_term().is_one() {
        return Err(MotiveError::BadConstantTerm(1));
    }
    if l1.deg() % 2 == 1 {
        return Err(MotiveError::OddDegree);
    }
    check_weight(l1, q, 1)?;
    let c1 = reciprocal_transform(l1, l1.deg())?;
    let g = l1.deg() / 2;
    let cs = (0..=2 * g).map(|i| exterior_charpoly(&c1, i)).collect::<Result<Vec<_>, _>>()?;
    Ok(ZetaData::from_charpolys(q.clone(), g, &cs))
}

fn check_weight(l: &Poly, q: &PrimePower, weight: i64) -> Result<(), MotiveError> {
    if l.deg() == 0 {
        return Ok(());
    }
    let c = reciprocal_transform(l, l.deg())?;
    let w = verify_weil(&c, q)?;
    if w != weight {
        return Err(WeilError::WeightMismatch { expected: weight, found: w }.into());
    }
    Ok(())
}

/// Künneth product: `C_k = ∏_{i+j=k} C_i^X ⊗ C_j^Y`.
pub fn zeta_product(x: &ZetaData, y: &ZetaData) -> Result<ZetaData, MotiveError> {
    if x.base != y.base {
        return Err(MotiveError::BaseMismatch);
    }
    let n = x.dim_n + y.dim_n;
    let (cx, cy) = (x.charpolys(), y.charpolys());
    let mut cs = vec![Poly::one(); 2 * n + 1];
    for (i, a) in cx.iter().enumerate() {
        for (j, b) in cy.iter().enumerate() {
            cs[i + j] = &cs[i + j] * &tensor_charpoly(a, b)?;
        }
    }
    Ok(ZetaData::from_charpolys(x.base.clone(), n, &cs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeFailure {
    /// A factor verified as Weil but with the wrong weight.
    Weight { found: i64 },
    NotWeil(NotWeilReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub index: usize,
    pub degree: usize,
    pub failures: Vec<DegreeFailure>,
}

impl DegreeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Per-degree outcome of [`validate_zeta`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub degrees: Vec<DegreeReport>,
    /// Degrees whose endpoint polynomial is not `1 - T` or `1 - q^n T`.
    pub endpoint_failures: Vec<usize>,
    pub not_coprime: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(DegreeReport::passed)
            && self.endpoint_failures.is_empty()
            && self.not_coprime.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = Vec::new();
        for d in self.degrees.iter().filter(|d| !d.passed()) {
            for f in &d.failures {
                out.push(match f {
                    DegreeFailure::Weight { found } => format!("weight {found} at i={}", d.index),
                    DegreeFailure::NotWeil(r) => format!("{r} at i={}", d.index),
                });
            }
        }
        out.extend(self.endpoint_failures.iter().map(|i| format!("endpoint at i={i}")));
        out.extend(self.not_coprime.iter().map(|(i, j)| format!("degrees {i} and {j} share eigenvalues")));
        out.join("; ")
    }
}

/// Checks weights of every irreducible factor, the endpoint polynomials and
/// pairwise coprimality.
pub fn validate_zeta(z: &ZetaData) -> ValidationReport {
    let cs = z.charpolys();
    let mut degrees = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        let mut failures = Vec::new();
        if !c.is_constant() {
            for f in distinct_irreducible_factors(c).expect("nonzero") {
                match verify_weil(&f, &z.base) {
                    Ok(w) if w == i as i64 => {}
                    Ok(w) => failures.push(DegreeFailure::Weight { found: w }),
                    Err(WeilError::NotWeil(r)) => failures.push(DegreeFailure::NotWeil(r)),
                    Err(_) => failures.push(DegreeFailure::NotWeil(NotWeilReason::WrongConstantValuation)),
                }
            }
        }
        failures.dedup();
        degrees.push(DegreeReport { index: i, degree: c.deg(), failures });
    }
    let mut endpoint_failures = Vec::new();
    if z.l_polys[0] != Poly::from_ints(&[1, -1]) {
        endpoint_failures.push(0);
    }
    let n = z.dim_n;
    let top = Poly::new(vec![num::One::one(), -z.base.q_pow(n as i64)]);
    if n > 0 && z.l_polys[2 * n] != top {
        endpoint_failures.push(2 * n);
    }
    let mut not_coprime = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if !Poly::coprime(&cs[i], &cs[j]) {
                not_coprime.push((i, j));
            }
        }
    }
    ValidationReport { degrees, endpoint_failures, not_coprime }
}

fn require_valid(z: &ZetaData) -> Result<(), MotiveError> {
    let report = validate_zeta(z);
    if report.passed() {
        Ok(())
    } else {
        Err(MotiveError::ValidationFailed(report.summary()))
    }
}

/// Weight-graded Tate structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motive {
    base: PrimePower,
    graded_parts: BTreeMap<i64, TateStructure>,
}

impl Motive {
    pub fn zero(base: PrimePower) -> Self {
        Motive { base, graded_parts: BTreeMap::new() }
    }

    /// The unit motive: `T - 1` in weight 0.
    pub fn unit(base: PrimePower) -> Self {
        let part = TateStructure::new(base.clone(), vec![(WeilOrbit::unit(base.clone()), 1)])
            .expect("same base");
        Self::from_structure(&part)
    }

    /// Groups the orbits of `v` by weight.
    pub fn from_structure(v: &TateStructure) -> Self {
        let mut by_weight: BTreeMap<i64, Vec<(WeilOrbit, usize)>> = BTreeMap::new();
        for (o, m) in v.parts() {
            by_weight.entry(o.weight()).or_default().push((o.clone(), *m));
        }
        let graded_parts = by_weight
            .into_iter()
            .map(|(w, parts)| (w, TateStructure::new(v.base().clone(), parts).expect("same base")))
            .collect();
        Motive { base: v.base().clone(), graded_parts }
    }

    pub fn base(&self) -> &PrimePower {
        &self.base
    }

    pub fn graded_parts(&self) -> &BTreeMap<i64, TateStructure> {
        &self.graded_parts
    }

    /// The weight-`i` part, empty if absent.
    pub fn part(&self, i: i64) -> TateStructure {
        self.graded_parts.get(&i).cloned().unwrap_or_else(|| TateStructure::empty(self.base.clone()))
    }

    /// Motive consisting of the weight-`i` part only.
    pub fn truncate(&self, i: i64) -> Motive {
        let mut graded_parts = BTreeMap::new();
        if let Some(p) = self.graded_parts.get(&i) {
            graded_parts.insert(i, p.clone());
        }
        Motive { base: self.base.clone(), graded_parts }
    }

    pub fn dim(&self) -> usize {
        self.graded_parts.values().map(TateStructure::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Tate twist by `r`: weights drop by `2r`.
    pub fn twist(&self, r: i64) -> Motive {
        let graded_parts = self
            .graded_parts
            .iter()
            .map(|(w, v)| (w - 2 * r, crate::weil::tate_twist(v, r)))
            .collect();
        Motive { base: self.base.clone(), graded_parts }
    }
}

/// `h^i` is the orbit decomposition of `C_i`.
pub fn motive_of(z: &ZetaData) -> Result<Motive, MotiveError> {
    require_valid(z)?;
    let mut graded_parts = BTreeMap::new();
    for (i, c) in z.charpolys().iter().enumerate() {
        if c.is_constant() {
            continue;
        }
        let mut parts = Vec::new();
        for (sf, mult) in squarefree_decomposition(c) {
            for f in distinct_irreducible_factors(&sf).expect("nonzero") {
                parts.push((WeilOrbit::trusted(f, z.base.clone(), i as i64), mult));
            }
        }
        graded_parts.insert(i as i64, TateStructure::new(z.base.clone(), parts)?);
    }
    Ok(Motive { base: z.base.clone(), graded_parts })
}

/// The reduced CRT representatives `P^i` with `P^i ≡ 1 mod C_i` and
/// `P^i ≡ 0 mod C_j` for `j ≠ i`. Degrees with `C_i = 1` project onto
/// zero and get `P^i = 0`.
pub fn kunneth_idempotents(z: &ZetaData) -> Result<Vec<Poly>, MotiveError> {
    let cs = z.charpolys();
    let active: Vec<usize> = (0..cs.len()).filter(|&i| !cs[i].is_constant()).collect();
    let mut out = vec![Poly::zero(); cs.len()];
    for &i in &active {
        let pairs: Vec<(Poly, Poly)> = active
            .iter()
            .map(|&j| (if j == i { Poly::one() } else { Poly::zero() }, cs[j].clone()))
            .collect();
        out[i] = crt_polynomials(&pairs).map_err(|e| match e {
            ArithError::NotCoprime(a, b) => MotiveError::NotCoprime(active[a], active[b]),
            other => other.into(),
        })?;
    }
    Ok(out)
}

/// Multiplicity of `q^r` as a root of `C_{2r}`.
pub fn pole_order(z: &ZetaData, r: usize) -> Result<usize, MotiveError> {
    if r > z.dim_n {
        return Err(MotiveError::RangeError { index: r as i64, max: z.dim_n as i64 });
    }
    require_valid(z)?;
    let c = z.charpoly(2 * r);
    Ok(c.multiplicity_of(&Poly::linear_root(z.base.q_pow(r as i64))))
}

fn hom_parts(a: &TateStructure, b: &TateStructure) -> Result<usize, MotiveError> {
    let mut total = 0;
    for (o, ma) in a.parts() {
        let mb = b.multiplicity(o.min_poly());
        if mb == 0 {
            continue;
        }
        let e = orbit_index(o)?;
        for m in [*ma, mb] {
            if m % e != 0 {
                return Err(MotiveError::IndexDivisibility {
                    orbit: o.min_poly().to_string(),
                    multiplicity: m,
                    index: e,
                });
            }
        }
        total += (ma / e) * (mb / e) * e * e * o.degree();
    }
    Ok(total)
}

/// `dim_Q Hom(M, N)`: over common orbits, `(m_M/e)(m_N/e)·e²·|o|`.
pub fn motive_hom_dim(m: &Motive, n: &Motive) -> Result<usize, MotiveError> {
    if m.base != n.base {
        return Err(MotiveError::BaseMismatch);
    }
    let mut total = 0;
    for (w, a) in &m.graded_parts {
        if let Some(b) = n.graded_parts.get(w) {
            total += hom_parts(a, b)?;
        }
    }
    Ok(total)
}

/// Multiplicity of the unit orbit in weight 0.
pub fn hom_from_unit(m: &Motive) -> usize {
    m.part(0).multiplicity(&Poly::linear_root(num::One::one()))
}

/// A bounded complex of motives with zero differentials, by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    base: PrimePower,
    entries: BTreeMap<i64, Motive>,
}

impl GradedComplex {
    pub fn new(base: PrimePower, entries: BTreeMap<i64, Motive>) -> Result<Self, MotiveError> {
        if entries.values().any(|m| m.base != base) {
            return Err(MotiveError::BaseMismatch);
        }
        let entries = entries.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(GradedComplex { base, entries })
    }

    /// A single motive placed in degree `k`.
    pub fn concentrated(m: Motive, k: i64) -> Self {
        let base = m.base.clone();
        GradedComplex::new(base, BTreeMap::from([(k, m)])).expect("single base")
    }

    /// `h^i(X)` placed in degree `i`.
    pub fn of_motive(m: &Motive) -> Self {
        let entries = m.graded_parts.keys().map(|&i| (i, m.truncate(i))).collect();
        GradedComplex::new(m.base.clone(), entries).expect("single base")
    }

    pub fn entries(&self) -> &BTreeMap<i64, Motive> {
        &self.entries
    }
}

/// `dim Hom(A, B[shift]) = Σ_k dim Hom(A^k, B^{k+shift})`.
pub fn graded_hom_dim(a: &GradedComplex, b: &GradedComplex, shift: i64) -> Result<usize, MotiveError> {
    if a.base != b.base {
        return Err(MotiveError::BaseMismatch);
    }
    let mut total = 0;
    for (k, m) in &a.entries {
        if let Some(n) = b.entries.get(&(k + shift)) {
            total += motive_hom_dim(m, n)?;
        }
    }
    Ok(total)
}

/// `dim K_i(X)^{(j)}`: zero for `i ≠ 0`, and the pole order at `q^{-j}`
/// for `i = 0`.
pub fn k_group_dim(z: &ZetaData, i: usize, j: i64) -> Result<usize, MotiveError> {
    if i != 0 || j < 0 || j > z.dim_n as i64 {
        return Ok(0);
    }
    pole_order(z, j as usize)
}

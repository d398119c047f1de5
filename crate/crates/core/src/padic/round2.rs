//! `p`-maximal orders by the Round 2 algorithm, and the splitting of `p`
//! in them via idempotents of `O/pO`.

use num::{BigInt, BigUint, Integer, One, Zero};

use crate::arith::{modp, Matrix, Poly, Rational};

type Table = Vec<Vec<Vec<BigInt>>>;
type TableP = Vec<Vec<Vec<u64>>>;

/// An order in `Q[T]/(f)`, given by a basis in power-basis coordinates.
pub(crate) struct Order {
    n: usize,
    inv: Matrix,
    basis: Matrix,
    table: Table,
}

fn power_mul(a: &[Rational], b: &[Rational], f: &Poly) -> Vec<Rational> {
    let prod = (&Poly::new(a.to_vec()) * &Poly::new(b.to_vec())).rem(f);
    padded(&prod, f.deg())
}

fn padded(p: &Poly, n: usize) -> Vec<Rational> {
    (0..n).map(|i| p.coeff(i)).collect()
}

fn to_integer(x: &Rational) -> BigInt {
    assert!(x.is_integer(), "order is not closed under multiplication");
    x.to_integer()
}

impl Order {
    pub fn equation_order(f: &Poly) -> Self {
        Self::from_basis(f, Matrix::identity(f.deg()))
    }

    fn from_basis(f: &Poly, basis: Matrix) -> Self {
        let n = f.deg();
        let inv = basis.inverse().expect("basis is nonsingular");
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = power_mul(basis.row(i), basis.row(j), f);
                let c: Vec<BigInt> = inv.left_apply(&prod).iter().map(to_integer).collect();
                table[j][i] = c.clone();
                table[i][j] = c;
            }
        }
        Order { n, inv, basis, table }
    }

    fn coords(&self, power: &[Rational]) -> Vec<BigInt> {
        self.inv.left_apply(power).iter().map(to_integer).collect()
    }

    fn table_mod(&self, p: u64) -> TableP {
        self.table
            .iter()
            .map(|r| r.iter().map(|c| c.iter().map(|x| modp::reduce_bigint(x, p)).collect()).collect())
            .collect()
    }

    fn mul_mod(&self, x: &[BigInt], y: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &c * t;
                }
            }
        }
        out.iter().map(|v| v.mod_floor(m)).collect()
    }

    /// Power-basis coordinates of the basis.
    #[allow(dead_code)]
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
}

fn mul_p(tp: &TableP, x: &[u64], y: &[u64], p: u64) -> Vec<u64> {
    let n = x.len();
    let mut out = vec![0u64; n];
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            if y[j] == 0 {
                continue;
            }
            let c = x[i] * y[j] % p;
            for (o, &t) in out.iter_mut().zip(&tp[i][j]) {
                *o = (*o + c * t) % p;
            }
        }
    }
    out
}

fn pow_p(tp: &TableP, x: &[u64], e: &BigUint, one: &[u64], p: u64) -> Vec<u64> {
    let mut acc = one.to_vec();
    for i in (0..e.bits()).rev() {
        acc = mul_p(tp, &acc, &acc, p);
        if e.bit(i) {
            acc = mul_p(tp, &acc, x, p);
        }
    }
    acc
}

fn unit(i: usize, n: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Reduced row echelon form over `F_p`; zero rows dropped. Returns pivots.
fn rref(rows: &mut Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = modp::inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = (rows[k][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn rank(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    let mut rows = rows.to_vec();
    rref(&mut rows, cols, p).len()
}

/// Basis of `{x : Σ x_i m_i = 0}` over `F_p`.
fn left_kernel(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let r = m.len();
    let mut t: Vec<Vec<u64>> = (0..cols).map(|c| (0..r).map(|i| m[i][c]).collect()).collect();
    let pivots = rref(&mut t, r, p);
    (0..r)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![0u64; r];
            x[free] = 1;
            for (row, &pc) in t.iter().zip(&pivots) {
                x[pc] = (p - row[free]) % p;
            }
            x
        })
        .collect()
}

/// Rows of a basis of the lattice `pZ^n + W`, for `W ⊆ F_p^n` given by a
/// spanning set, together with the echelon data.
fn lattice_basis(w: &[Vec<u64>], n: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>, Vec<Vec<BigInt>>) {
    let mut rows = w.to_vec();
    let pivots = rref(&mut rows, n, p);
    let mut out: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    for i in (0..n).filter(|i| !pivots.contains(i)) {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::from(p);
        out.push(v);
    }
    (rows, pivots, out)
}

fn int_row(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// The `p`-maximal order containing `Z[T]/(f)`, for monic integral `f`.
pub(crate) fn p_maximal_order(f: &Poly, p: u64) -> Order {
    let n = f.deg();
    let mut order = Order::equation_order(f);
    let mut frob_exp = BigUint::from(p);
    while frob_exp < BigUint::from(n) {
        frob_exp *= p;
    }
    loop {
        let tp = order.table_mod(p);
        let one = one_mod(&order, p);
        // radical of O/pO: kernel of x -> x^(p^j), p^j >= n
        let frob: Vec<Vec<u64>> = (0..n).map(|i| pow_p(&tp, &unit(i, n), &frob_exp, &one, p)).collect();
        let rad = left_kernel(&frob, n, p);
        let (_, _, ideal) = lattice_basis(&rad, n, p);
        let gamma = Matrix::from_rows(ideal.iter().map(|r| int_row(r)).collect());
        let ginv = gamma.inverse().expect("full-rank ideal");
        let pb = BigInt::from(p);
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n * n);
            for g in &ideal {
                let mut prod = vec![BigInt::zero(); n];
                for (l, gl) in g.iter().enumerate() {
                    if gl.is_zero() {
                        continue;
                    }
                    for (o, t) in prod.iter_mut().zip(&order.table[i][l]) {
                        *o += gl * t;
                    }
                }
                let c = ginv.left_apply(&int_row(&prod));
                row.extend(c.iter().map(|x| modp::reduce_bigint(&to_integer(x), p)));
            }
            rows.push(row);
        }
        let ker = left_kernel(&rows, n * n, p);
        if ker.is_empty() {
            return order;
        }
        let (echelon, pivots, _) = lattice_basis(&ker, n, p);
        let mut new_rows: Vec<Vec<Rational>> = echelon
            .iter()
            .map(|r| r.iter().map(|&x| Rational::new(BigInt::from(x), pb.clone())).collect())
            .collect();
        for i in (0..n).filter(|i| !pivots.contains(i)) {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            new_rows.push(v);
        }
        let basis = Matrix::from_rows(new_rows).mul(&order.basis);
        order = Order::from_basis(f, basis);
    }
}

fn one_mod(order: &Order, p: u64) -> Vec<u64> {
    let mut e = vec![Rational::zero(); order.n];
    e[0] = Rational::one();
    order.coords(&e).iter().map(|x| modp::reduce_bigint(x, p)).collect()
}

/// Minimal polynomial over `F_p` of `b` in the algebra with table `tp`.
fn min_poly_p(tp: &TableP, b: &[u64], one: &[u64], p: u64) -> Vec<u64> {
    let n = b.len();
    let mut powers = vec![one.to_vec()];
    loop {
        let next = mul_p(tp, powers.last().expect("nonempty"), b, p);
        powers.push(next);
        let ker = left_kernel(&powers, n, p);
        if let Some(k) = ker.into_iter().next() {
            return modp::monic(&k, p);
        }
    }
}

/// Primitive idempotents of `O/pO`, one per place above `p`.
fn idempotents(order: &Order, tp: &TableP, p: u64) -> Vec<Vec<u64>> {
    let n = order.n;
    let one = one_mod(order, p);
    let pb = BigUint::from(p);
    // {x : x^p = x} is a split semisimple subalgebra, one F_p per place
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let u = unit(i, n);
            let img = pow_p(tp, &u, &pb, &one, p);
            img.iter().zip(&u).map(|(&a, &b)| (a + p - b) % p).collect()
        })
        .collect();
    let fixed = left_kernel(&rows, n, p);
    let mut idem = vec![one.clone()];
    for b in &fixed {
        let mp = min_poly_p(tp, b, &one, p);
        let roots = modp::split_roots(&mp, p);
        assert_eq!(roots.len(), mp.len() - 1, "fixed subalgebra is split");
        if roots.len() < 2 {
            continue;
        }
        let mut parts = Vec::new();
        for &c in &roots {
            let mut e = one.clone();
            for &c2 in roots.iter().filter(|&&c2| c2 != c) {
                let shifted: Vec<u64> =
                    b.iter().zip(&one).map(|(&x, &o)| (x + p - c2 * o % p) % p).collect();
                let s = modp::inv_mod((c + p - c2) % p, p);
                e = mul_p(tp, &e, &shifted, p).iter().map(|&x| x * s % p).collect();
            }
            parts.push(e);
        }
        let mut refined = Vec::new();
        for e in &idem {
            for c in &parts {
                let prod = mul_p(tp, e, c, p);
                if prod.iter().any(|&x| x != 0) {
                    refined.push(prod);
                }
            }
        }
        idem = refined;
    }
    idem
}

fn mult_matrix_mod(order: &Order, y: &[BigInt], m: &BigInt) -> Vec<Vec<BigInt>> {
    let n = order.n;
    (0..n)
        .map(|i| {
            let mut u = vec![BigInt::zero(); n];
            u[i] = BigInt::one();
            order.mul_mod(&u, y, m)
        })
        .collect()
}

/// Fraction-free determinant of an integer matrix.
pub(crate) fn det_int(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Per place above `p` of `Q[T]/(f)`, with `f` monic integral and
/// irreducible: `(local degree, v_p of the local norm of T)`. `None` when
/// `precision` digits cannot certify a norm valuation.
pub(crate) fn local_norm_valuations(f: &Poly, p: u64, precision: u32) -> Option<Vec<(usize, u64)>> {
    let n = f.deg();
    let order = p_maximal_order(f, p);
    let tp = order.table_mod(p);
    let modulus = num::pow(BigInt::from(p), precision as usize);
    let beta = order.coords(&padded(&Poly::x().rem(f), n));
    let l_beta = mult_matrix_mod(&order, &beta, &modulus);
    let mut out = Vec::new();
    for e in idempotents(&order, &tp, p) {
        let l_e: Vec<Vec<u64>> = (0..n).map(|i| mul_p(&tp, &unit(i, n), &e, p)).collect();
        let local_degree = rank(&l_e, n, p);
        // Newton iteration for an idempotent modulo p^precision
        let mut eps: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
        let mut converged = false;
        for _ in 0..64 {
            let e2 = order.mul_mod(&eps, &eps, &modulus);
            if e2 == eps {
                converged = true;
                break;
            }
            let e3 = order.mul_mod(&e2, &eps, &modulus);
            eps = e2
                .iter()
                .zip(&e3)
                .map(|(a, b)| (BigInt::from(3) * a - BigInt::from(2) * b).mod_floor(&modulus))
                .collect();
        }
        assert!(converged, "idempotent lifting did not converge");
        let l_eps = mult_matrix_mod(&order, &eps, &modulus);
        // ε·β + (1 - ε) acts as β on the local factor and as 1 elsewhere
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if l_eps[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    m[i][j] += &l_eps[i][k] * &l_beta[k][j];
                }
            }
            for j in 0..n {
                let id = if i == j { BigInt::one() } else { BigInt::zero() };
                m[i][j] = (&m[i][j] + id - &l_eps[i][j]).mod_floor(&modulus);
            }
        }
        let det = det_int(m).mod_floor(&modulus);
        if det.is_zero() {
            return None;
        }
        out.push((local_degree, crate::prime_power::ord_p_int(&det, p)));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn places(f: &Poly, prime: u64) -> Vec<(usize, u64)> {
        let mut v = local_norm_valuations(f, prime, 40).unwrap();
        v.sort();
        v
    }

    #[test]
    fn eisenstein_is_totally_ramified() {
        assert_eq!(places(&p(&[2, 0, 1]), 2), vec![(2, 1)]);
        assert_eq!(places(&p(&[3, 0, 0, 1]), 3), vec![(3, 1)]);
    }

    #[test]
    fn split_primes() {
        // T^2 - T + 2 at 2: roots of valuation 0 and 1
        assert_eq!(places(&p(&[2, -1, 1]), 2), vec![(1, 0), (1, 1)]);
        // T^2 + 1 at 5 splits, at 3 inert
        assert_eq!(places(&p(&[1, 0, 1]), 5), vec![(1, 0), (1, 0)]);
        assert_eq!(places(&p(&[1, 0, 1]), 3), vec![(2, 0)]);
    }

    #[test]
    fn non_monogenic_at_p() {
        // T^2 + 3T + 9 = 3^2 (S^2 + S + 1), S = T/3; 3 ramifies in Q(sqrt -3)
        assert_eq!(places(&p(&[9, 3, 1]), 3), vec![(2, 2)]);
        // T^2 - 6T + 36 at 2: T = 6ζ with ζ a sixth root of unity, 2 inert
        assert_eq!(places(&p(&[36, -6, 1]), 2), vec![(2, 2)]);
        // T^2 + 7 at 2: Z[sqrt -7] is not 2-maximal and 2 splits
        assert_eq!(places(&p(&[7, 0, 1]), 2), vec![(1, 0), (1, 0)]);
    }

    #[test]
    fn bareiss_determinant() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(3), BigInt::from(0), BigInt::from(5)],
        ];
        assert_eq!(det_int(m), BigInt::from(-13));
    }
}

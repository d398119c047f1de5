//! Dense rational matrices: characteristic polynomials by Hessenberg
//! reduction, determinants, Kronecker products and compound matrices.

use num::{BigInt, Integer, One, Signed, Zero};

use super::modp;
use super::poly::Poly;
use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    m: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(n: usize, m: usize) -> Self {
        Matrix { n, m, data: vec![Rational::zero(); n * m] }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = Rational::one();
        }
        a
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Matrix { n, m, data: rows.into_iter().flatten().collect() }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// `-a_i` in the last column.
    pub fn companion(p: &Poly) -> Self {
        assert!(p.is_monic());
        let d = p.deg();
        let mut a = Matrix::zeros(d, d);
        for i in 1..d {
            a[(i, i - 1)] = Rational::one();
        }
        for i in 0..d {
            a[(i, d - 1)] = -p.coeff(i);
        }
        a
    }

    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let (n, m) = (self.n * other.n, self.m * other.m);
        let mut k = Matrix::zeros(n, m);
        for i in 0..self.n {
            for j in 0..self.m {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for r in 0..other.n {
                    for c in 0..other.m {
                        k[(i * other.n + r, j * other.m + c)] = a * &other[(r, c)];
                    }
                }
            }
        }
        k
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.m, other.n);
        let mut out = Matrix::zeros(self.n, other.m);
        for i in 0..self.n {
            for k in 0..self.m {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.m {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut s = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s[(a, b)] = self[(i, j)].clone();
            }
        }
        s
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.n, self.m);
        let n = self.n;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = -det;
            }
            let pv = a[(col, col)].clone();
            det *= &pv;
            let inv = pv.recip();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &inv;
                for c in col..n {
                    let t = &f * &a[(col, c)];
                    a[(r, c)] -= t;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.n, self.m);
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let s = a[(col, col)].recip();
            for c in 0..n {
                a[(col, c)] *= &s;
                inv[(col, c)] *= &s;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let t = &f * &a[(col, c)];
                    a[(r, c)] -= t;
                    let t = &f * &inv[(col, c)];
                    inv[(r, c)] -= t;
                }
            }
        }
        Some(inv)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![Rational::zero(); self.m];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += x * &self[(i, j)];
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.m {
            self.data.swap(i * self.m + c, j * self.m + c);
        }
    }

    /// Characteristic polynomial `det(T·I - A)`. The matrix is scaled to an
    /// integer matrix `B = dA`; `det(T·I - B)` is computed by Hessenberg
    /// reduction modulo enough primes to exceed twice the coefficient bound
    /// `(1 + R)^n`, `R` the largest absolute row sum, and recovered by CRT.
    pub fn charpoly(&self) -> Poly {
        assert_eq!(self.n, self.m);
        let n = self.n;
        if n == 0 {
            return Poly::one();
        }
        let d = self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let b: Vec<BigInt> = self.data.iter().map(|x| (x * Rational::from_integer(d.clone())).to_integer()).collect();
        let row_sum = (0..n)
            .map(|i| b[i * n..(i + 1) * n].iter().fold(BigInt::zero(), |acc, x| acc + x.abs()))
            .max()
            .expect("nonempty");
        let bound = (row_sum + BigInt::one()).pow(n as u32) * BigInt::from(2);
        let mut modulus = BigInt::one();
        let mut acc = vec![BigInt::zero(); n + 1];
        for p in primes_below(1 << 31) {
            let reduced: Vec<u64> = b.iter().map(|x| modp::reduce_bigint(x, p)).collect();
            let c = hessenberg_charpoly_mod(n, reduced, p);
            let m_inv = BigInt::from(modp::inv_mod(modp::reduce_bigint(&modulus, p), p));
            let pb = BigInt::from(p);
            for (a, &r) in acc.iter_mut().zip(&c) {
                let t = ((BigInt::from(r) - &*a) * &m_inv).mod_floor(&pb);
                *a += &modulus * t;
            }
            modulus *= pb;
            if modulus > bound {
                break;
            }
        }
        let half = &modulus >> 1u32;
        // det(T - A) = d^{-n} det(dT - B)
        let coeffs = acc
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                let c = if c > half { c - &modulus } else { c };
                Rational::new(c, d.pow((n - k) as u32))
            })
            .collect();
        Poly::new(coeffs)
    }

    /// The `k`-th compound matrix: entries are the `k×k` minors indexed by
    /// lexicographically ordered `k`-subsets of rows and columns.
    pub fn compound(&self, k: usize) -> Matrix {
        assert_eq!(self.n, self.m);
        let subsets = k_subsets(self.n, k);
        let dim = subsets.len();
        let mut c = Matrix::zeros(dim, dim);
        for (a, rows) in subsets.iter().enumerate() {
            for (b, cols) in subsets.iter().enumerate() {
                c[(a, b)] = self.submatrix(rows, cols).det();
            }
        }
        c
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.m + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.m + j]
    }
}

/// `det(T·I - A)` over `F_p` for the `n×n` matrix `a`, ascending.
fn hessenberg_charpoly_mod(n: usize, mut a: Vec<u64>, p: u64) -> Vec<u64> {
    let at = |i: usize, j: usize| i * n + j;
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| a[at(i, m - 1)] != 0) else {
            continue;
        };
        if i != m {
            for c in 0..n {
                a.swap(at(i, c), at(m, c));
            }
            for r in 0..n {
                a.swap(at(r, i), at(r, m));
            }
        }
        let inv = modp::inv_mod(a[at(m, m - 1)], p);
        for i in m + 1..n {
            if a[at(i, m - 1)] == 0 {
                continue;
            }
            let u = a[at(i, m - 1)] * inv % p;
            for c in 0..n {
                a[at(i, c)] = (a[at(i, c)] + p - u * a[at(m, c)] % p) % p;
            }
            for r in 0..n {
                a[at(r, m)] = (a[at(r, m)] + u * a[at(r, i)]) % p;
            }
        }
    }
    // p_k = (T - h_kk) p_{k-1} - Σ_{i<k} h_ik (∏_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = vec![0u64; k + 2];
        for (j, &c) in ps[k].iter().enumerate() {
            next[j + 1] = (next[j + 1] + c) % p;
            next[j] = (next[j] + p - a[at(k, k)] * c % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * a[at(i + 1, i)] % p;
            if prod == 0 {
                break;
            }
            let c = a[at(i, k)] * prod % p;
            for (j, &x) in ps[i].iter().enumerate() {
                next[j] = (next[j] + p - c * x % p) % p;
            }
        }
        ps.push(next);
    }
    ps.pop().expect("nonempty")
}

/// Primes below `limit`, descending.
fn primes_below(limit: u64) -> impl Iterator<Item = u64> {
    (2..limit).rev().filter(|&k| k % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn companion_charpoly_roundtrip() {
        for c in [vec![2i64, -1, 1], vec![-6, 11, -6, 1], vec![5, 0, 0, 3, 1]] {
            let p = Poly::from_ints(&c);
            assert_eq!(Matrix::companion(&p).charpoly(), p);
        }
    }

    #[test]
    fn charpoly_needs_pivoting() {
        // [[0,1,0],[0,0,1],[0,0,0]] is nilpotent
        let mut a = Matrix::zeros(3, 3);
        a[(0, 1)] = rat(1);
        a[(1, 2)] = rat(1);
        assert_eq!(a.charpoly(), Poly::monomial(rat(1), 3));
        // diagonal with zero subdiagonal columns
        let mut d = Matrix::zeros(3, 3);
        d[(0, 0)] = rat(1);
        d[(1, 1)] = rat(2);
        d[(2, 2)] = rat(3);
        d[(0, 2)] = rat(7);
        assert_eq!(d.charpoly(), Poly::from_ints(&[-6, 11, -6, 1]));
    }

    #[test]
    fn determinant_and_compound() {
        let p = Poly::from_ints(&[-6, 11, -6, 1]);
        let c = Matrix::companion(&p);
        assert_eq!(c.det(), rat(6));
        let c3 = c.compound(3);
        assert_eq!(c3.rows(), 1);
        assert_eq!(c3[(0, 0)], rat(6));
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(binomial(8, 4), 70);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_rows(vec![
            vec![rat(0), rat(2), rat(1)],
            vec![rat(1), rat(1), rat(0)],
            vec![rat(3), rat(0), rat(5)],
        ]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(Matrix::zeros(2, 2).inverse().is_none());
    }
}

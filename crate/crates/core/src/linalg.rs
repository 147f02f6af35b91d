//! Dense exact linear algebra over Q and Z.
//!
//! Matrices here are small (weight-space sized), so everything is dense and
//! row-major. Integer lattice work goes through [`lattice_basis`], a
//! Hermite-style echelon reduction over `BigInt`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{lcm_denominators, Q};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Q::one() } else { Q::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<Q>]) -> Self {
        Self::from_fn(dim, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Q> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Q) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Q::is_integer)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Selects a maximal linearly independent set of rows, greedily in order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut echelon: Vec<(usize, Vec<Q>)> = Vec::new();
        let mut chosen = Vec::new();
        for i in 0..self.rows {
            let mut r = self.row(i);
            for (p, e) in &echelon {
                if !r[*p].is_zero() {
                    let f = &r[*p] / &e[*p];
                    for (x, y) in r.iter_mut().zip(e) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
            }
            if let Some(p) = r.iter().position(|x| !x.is_zero()) {
                echelon.push((p, r));
                chosen.push(i);
            }
        }
        chosen
    }

    pub fn rank(&self) -> usize {
        self.independent_rows().len()
    }

    /// Gauss-Jordan inverse; `None` if singular or not square.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= &piv;
            }
            for x in inv[c].iter_mut() {
                *x *= &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..n {
                        let t = &f * &a[c][k];
                        a[r][k] -= t;
                        let t = &f * &inv[c][k];
                        inv[r][k] -= t;
                    }
                }
            }
        }
        Some(Self::from_rows(inv))
    }

    /// Principal submatrix on the given index set.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                a.swap(c, p);
                det = -det;
            }
            det *= &a[c][c];
            for r in c + 1..n {
                if !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[c][c];
                    for k in c..n {
                        let t = &f * &a[c][k];
                        a[r][k] -= t;
                    }
                }
            }
        }
        det
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(crate::rational::to_canonical).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self + &(-rhs)
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn det_bareiss(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> =
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Z-basis of the lattice spanned by `generators` (vectors in Q^dim).
///
/// Denominators are cleared by their LCM, the integer generators are brought
/// to row-echelon (Hermite) form by gcd elimination, and the nonzero rows are
/// scaled back. Returns the basis vectors in pivot order; the pivot positions
/// strictly increase, so the basis is triangular against the coordinate axes.
pub fn lattice_basis(dim: usize, generators: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let denom = lcm_denominators(generators.iter().flatten());
    let mut rows: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|g| g.iter().map(|x| (x * Q::from_integer(denom.clone())).to_integer()).collect())
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..dim {
        // gcd-eliminate column `col` among the remaining rows
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let p = nz[0];
            let pivot_row = rows[p].clone();
            for &r in &nz[1..] {
                let q = rows[r][col].div_floor(&pivot_row[col]);
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            let mut r = rows.swap_remove(p);
            if r[col].is_negative() {
                r.iter_mut().for_each(|x| *x = -x.clone());
            }
            // reduce earlier basis rows modulo the new pivot
            for b in basis.iter_mut() {
                let q = b[col].div_floor(&r[col]);
                if !q.is_zero() {
                    for (x, y) in b.iter_mut().zip(&r) {
                        *x -= &q * y;
                    }
                }
            }
            basis.push(r);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    let d = Q::from_integer(denom);
    basis
        .into_iter()
        .map(|r| r.into_iter().map(|x| Q::from_integer(x) / &d).collect())
        .collect()
}

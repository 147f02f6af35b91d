//! Generalized Cartan matrices: validation, symmetrization, classification.
//!
//! Indices in error values are 1-based to match how matrices are written by
//! hand; everything else in the crate indexes simple roots from 0.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, QMatrix};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralizedCartanMatrix {
    entries: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Finite,
    Affine,
    Indefinite { hyperbolic: bool },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Finite => write!(f, "finite"),
            Classification::Affine => write!(f, "affine"),
            Classification::Indefinite { hyperbolic: true } => write!(f, "hyperbolic"),
            Classification::Indefinite { hyperbolic: false } => write!(f, "indefinite"),
        }
    }
}

/// Sign relation between a directly computed determinant and the closed-form
/// `pqr - pq - qr - rp` value for a Y(p,q,r) diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignAgreement {
    Exact,
    UpToSign,
    Disagree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantReport {
    pub direct: BigInt,
    /// `pqr - pq - qr - rp`, present for Y-diagrams.
    pub y_formula: Option<BigInt>,
    pub agreement: Option<SignAgreement>,
}

/// `[P:Q]`, or infinite for degenerate matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

impl GeneralizedCartanMatrix {
    /// Checks the three GCM axioms. Does not classify.
    pub fn validate(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(Error::DiagonalNotTwo { i: i + 1, j: i + 1 });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && entries[i][j] > 0 {
                    return Err(Error::PositiveOffDiagonal { i: i + 1, j: j + 1 });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(Error::ZeroSymmetryViolated { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(GeneralizedCartanMatrix { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `a_ij = <alpha_j, alpha_i^vee>`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| j != i && self.entries[i][j] != 0)
    }

    /// Connected components of the Dynkin diagram restricted to `nodes`.
    fn components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.rank()];
        let inside: Vec<bool> = (0..self.rank()).map(|i| nodes.contains(&i)).collect();
        let mut out = Vec::new();
        for &start in nodes {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbours(v) {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_indecomposable(&self) -> bool {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.components(&all).len() == 1
    }

    /// Positive `d` with `diag(d) A` symmetric, normalized so `min d = 1`.
    pub fn symmetrize(&self) -> Result<Vec<Q>> {
        let n = self.rank();
        let mut d: Vec<Option<Q>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Q::one());
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let di = d[i].clone().expect("visited");
                for j in self.neighbours(i) {
                    // d_i a_ij = d_j a_ji
                    let dj = &di * Q::from_integer(self.a(i, j).into())
                        / Q::from_integer(self.a(j, i).into());
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            queue.push_back(j);
                        }
                        Some(existing) if *existing != dj => return Err(Error::NotSymmetrizable),
                        Some(_) => {}
                    }
                }
            }
        }
        let d: Vec<Q> = d.into_iter().map(|x| x.expect("all visited")).collect();
        let min = d.iter().min().cloned().expect("rank >= 1");
        Ok(d.into_iter().map(|x| x / &min).collect())
    }

    /// `diag(d) A` for the normalized symmetrizer.
    pub fn symmetrized(&self) -> Result<QMatrix> {
        let d = self.symmetrize()?;
        Ok(QMatrix::from_fn(self.rank(), self.rank(), |i, j| {
            &d[i] * Q::from_integer(self.a(i, j).into())
        }))
    }

    pub fn classify(&self) -> Result<Classification> {
        if !self.is_indecomposable() {
            return Err(Error::Decomposable);
        }
        let s = self.symmetrized()?;
        let all: Vec<usize> = (0..self.rank()).collect();
        let own = definiteness(&s.submatrix(&all, &all));
        Ok(match own {
            Definiteness::Positive => Classification::Finite,
            Definiteness::Semidefinite => Classification::Affine,
            Definiteness::Indefinite => {
                // Every connected proper subdiagram sits inside one obtained by
                // deleting a single node, and subdiagrams of finite or affine
                // diagrams are finite, so single deletions suffice.
                let hyperbolic = (0..self.rank()).all(|v| {
                    let rest: Vec<usize> = all.iter().copied().filter(|&u| u != v).collect();
                    self.components(&rest)
                        .iter()
                        .all(|c| definiteness(&s.submatrix(c, c)) != Definiteness::Indefinite)
                });
                Classification::Indefinite { hyperbolic }
            }
        })
    }

    pub fn determinant(&self) -> BigInt {
        det_bareiss(&self.entries)
    }

    pub fn lattice_index(&self) -> LatticeIndex {
        let det = self.determinant();
        if det.is_zero() {
            LatticeIndex::Infinite
        } else {
            LatticeIndex::Finite(det.abs())
        }
    }

    /// Simultaneous row/column permutation: `B[i][j] = A[p[i]][p[j]]`.
    pub fn permuted(&self, p: &[usize]) -> Self {
        let n = self.rank();
        let entries = (0..n).map(|i| (0..n).map(|j| self.a(p[i], p[j])).collect()).collect();
        GeneralizedCartanMatrix { entries }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Definiteness {
    Positive,
    Semidefinite,
    Indefinite,
}

/// Exact definiteness of a symmetric matrix by symmetric (diagonal-pivoted)
/// elimination. A positive-definite answer coincides with positivity of all
/// leading principal minors.
fn definiteness(s: &QMatrix) -> Definiteness {
    let n = s.rows();
    let mut a = s.to_rows();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return Definiteness::Indefinite;
        }
        let Some(pos) = active.iter().position(|&i| a[i][i].is_positive()) else {
            // all remaining diagonal entries vanish: PSD iff the block is zero
            let zero = active.iter().all(|&i| active.iter().all(|&j| a[i][j].is_zero()));
            return if zero { Definiteness::Semidefinite } else { Definiteness::Indefinite };
        };
        let p = active.remove(pos);
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &a[p][p];
            for &j in &active {
                let t = &f * &a[p][j];
                a[i][j] -= t;
            }
        }
    }
    Definiteness::Positive
}

/// Simply-laced Y(p,q,r): arms of `p-1`, `q-1`, `r-1` nodes joined at a
/// center node. The center is node 0 and arms are numbered consecutively
/// outward.
pub fn y_diagram(p: i64, q: i64, r: i64) -> Result<GeneralizedCartanMatrix> {
    for &x in &[p, q, r] {
        if x < 2 {
            return Err(Error::ArmTooShort(x));
        }
    }
    let n = (p + q + r - 2) as usize;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut next = 1usize;
    for &arm in &[p, q, r] {
        let mut prev = 0usize;
        for _ in 0..arm - 1 {
            a[prev][next] = -1;
            a[next][prev] = -1;
            prev = next;
            next += 1;
        }
    }
    GeneralizedCartanMatrix::validate(a)
}

/// Direct determinant of Y(p,q,r) together with the closed form
/// `pqr - pq - qr - rp`.
pub fn y_determinant(p: i64, q: i64, r: i64) -> Result<DeterminantReport> {
    let direct = y_diagram(p, q, r)?.determinant();
    let formula = BigInt::from(p * q * r - p * q - q * r - r * p);
    let agreement = if direct == formula {
        SignAgreement::Exact
    } else if direct == -formula.clone() {
        SignAgreement::UpToSign
    } else {
        SignAgreement::Disagree
    };
    Ok(DeterminantReport { direct, y_formula: Some(formula), agreement: Some(agreement) })
}

pub fn determinant_report(a: &GeneralizedCartanMatrix) -> DeterminantReport {
    DeterminantReport { direct: a.determinant(), y_formula: None, agreement: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn gcm(rows: &[&[i64]]) -> GeneralizedCartanMatrix {
        GeneralizedCartanMatrix::validate(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(gcm(&[&[2]]).rank(), 1);
        assert_eq!(gcm(&[&[2, -1], &[-1, 2]]).rank(), 2);
        assert_eq!(
            GeneralizedCartanMatrix::validate(vec![vec![2, -1], vec![0, 2]]),
            Err(Error::ZeroSymmetryViolated { i: 1, j: 2 })
        );
        assert_eq!(
            GeneralizedCartanMatrix::validate(vec![vec![2, 1], vec![1, 2]]),
            Err(Error::PositiveOffDiagonal { i: 1, j: 2 })
        );
        assert_eq!(
            GeneralizedCartanMatrix::validate(vec![vec![1]]),
            Err(Error::DiagonalNotTwo { i: 1, j: 1 })
        );
        assert_eq!(GeneralizedCartanMatrix::validate(vec![]), Err(Error::NotSquare));
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(gcm(&[&[2, -1], &[-1, 2]]).symmetrize().unwrap(), vec![int(1), int(1)]);
        assert_eq!(gcm(&[&[2, -1], &[-2, 2]]).symmetrize().unwrap(), vec![int(2), int(1)]);
        assert_eq!(gcm(&[&[2, -2], &[-2, 2]]).symmetrize().unwrap(), vec![int(1), int(1)]);
        let cyclic = gcm(&[&[2, -1, -1], &[-2, 2, -1], &[-1, -1, 2]]);
        assert_eq!(cyclic.symmetrize(), Err(Error::NotSymmetrizable));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(gcm(&[&[2, -1], &[-1, 2]]).classify().unwrap(), Classification::Finite);
        assert_eq!(gcm(&[&[2, -2], &[-2, 2]]).classify().unwrap(), Classification::Affine);
        assert_eq!(
            gcm(&[&[2, -3], &[-3, 2]]).classify().unwrap(),
            Classification::Indefinite { hyperbolic: true }
        );
        assert_eq!(gcm(&[&[2, -1], &[-4, 2]]).classify().unwrap(), Classification::Affine);
        assert_eq!(gcm(&[&[2, 0], &[0, 2]]).classify(), Err(Error::Decomposable));
    }

    #[test]
    fn non_hyperbolic_indefinite() {
        // Y(2,3,8): deleting the end of the long arm leaves E10, which is indefinite
        let a = y_diagram(2, 3, 8).unwrap();
        assert_eq!(a.classify().unwrap(), Classification::Indefinite { hyperbolic: false });
    }

    #[test]
    fn y_shapes() {
        let e8 = y_diagram(2, 3, 5).unwrap();
        assert_eq!(e8.rank(), 8);
        assert_eq!(e8.classify().unwrap(), Classification::Finite);
        assert_eq!(y_diagram(2, 3, 7).unwrap().rank(), 10);
        let d4 = y_diagram(2, 2, 2).unwrap();
        assert_eq!(d4.rank(), 4);
        assert_eq!((1..4).filter(|&j| d4.a(0, j) == -1).count(), 3);
        assert_eq!(y_diagram(1, 3, 5), Err(Error::ArmTooShort(1)));
    }

    #[test]
    fn determinants_and_index() {
        assert_eq!(gcm(&[&[2]]).determinant(), BigInt::from(2));
        let e8 = y_determinant(2, 3, 5).unwrap();
        assert_eq!(e8.direct, BigInt::from(1));
        assert_eq!(e8.y_formula, Some(BigInt::from(-1)));
        assert_eq!(e8.agreement, Some(SignAgreement::UpToSign));
        let e9 = y_determinant(2, 3, 6).unwrap();
        assert!(e9.direct.is_zero());
        assert_eq!(e9.y_formula, Some(BigInt::zero()));
        assert_eq!(gcm(&[&[2, -1], &[-1, 2]]).lattice_index(), LatticeIndex::Finite(3.into()));
        assert_eq!(gcm(&[&[2]]).lattice_index(), LatticeIndex::Finite(2.into()));
        assert_eq!(gcm(&[&[2, -2], &[-2, 2]]).lattice_index(), LatticeIndex::Infinite);
    }

    #[test]
    fn leading_minors_agree_on_finite() {
        let s = y_diagram(2, 3, 5).unwrap().symmetrized().unwrap();
        for k in 1..=8 {
            let idx: Vec<usize> = (0..k).collect();
            assert!(s.submatrix(&idx, &idx).det() > Q::zero());
        }
    }
}

//! Depth-truncated irreducible highest-weight modules over Q with their
//! integral forms.
//!
//! Weight spaces are indexed by depth vectors `k` (the weight is
//! `lambda - sum k_i alpha_i`). A weight space is built from the spaces one
//! level up: the candidate vectors `f_i b` span it, the contravariant form
//! (`(v_lambda, v_lambda) = 1`, `(f_i u, v) = (u, e_i v)`) computes their
//! Gram matrix, and a maximal set of candidates with independent Gram rows is
//! kept as the basis of the irreducible quotient. Coordinates of any other
//! candidate are recovered by solving against that Gram block.
//!
//! The integral form at `k` is the lattice spanned by
//! `f_i^(m) (V_{k - m e_i})_Z` over all `i, m`, i.e. by all divided-power
//! monomials in the simple `f_i`. Public action matrices are expressed in the
//! resulting integral bases.

mod freudenthal;

pub use freudenthal::{freudenthal_mult, Freudenthal};

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cartan::GeneralizedCartanMatrix;
use crate::error::{Error, Result};
use crate::linalg::{lattice_basis, QMatrix};
use crate::rational::{factorial, Q};
use crate::rootsys::pairing;

/// Default cap on the total dimension of a truncation.
pub const DEFAULT_DIMENSION_BUDGET: usize = 50_000;

/// `f_{i_1}^(m_1) ... f_{i_N}^(m_N) v_lambda`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FMonomial {
    pub factors: Vec<(usize, u32)>,
}

impl FMonomial {
    /// Depth vector of the weight the monomial lives in.
    pub fn depth(&self, rank: usize) -> Vec<i64> {
        let mut k = vec![0; rank];
        for &(i, m) in &self.factors {
            k[i] += m as i64;
        }
        k
    }
}

impl std::fmt::Display for FMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &(i, m) in &self.factors {
            if m == 1 {
                write!(f, "f{} ", i + 1)?;
            } else {
                write!(f, "f{}^({m}) ", i + 1)?;
            }
        }
        write!(f, "v")
    }
}

#[derive(Clone, Debug)]
struct WeightSpace {
    depth: Vec<i64>,
    /// Plain monomial basis of the quotient.
    monomials: Vec<FMonomial>,
    gram: QMatrix,
    /// Integral basis vectors as columns, in plain coordinates.
    zbasis: QMatrix,
    zbasis_inv: QMatrix,
}

/// Integral basis of one weight space.
#[derive(Clone, Debug, PartialEq)]
pub struct ZBasis {
    /// The plain monomials whose images form the quotient basis.
    pub monomials: Vec<FMonomial>,
    /// Integral basis vectors in coordinates over `monomials`.
    pub vectors: Vec<Vec<Q>>,
}

impl ZBasis {
    /// Determinant of the integral basis against the plain monomial basis.
    pub fn index_det(&self) -> Q {
        QMatrix::from_columns(self.monomials.len(), &self.vectors).det()
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedModule {
    gcm: GeneralizedCartanMatrix,
    lambda: Vec<i64>,
    depth_bound: i64,
    spaces: Vec<WeightSpace>,
    index: HashMap<Vec<i64>, usize>,
    /// `f[w][i]: V_w -> V_{w + e_i}`, integral coordinates.
    f: Vec<Vec<Option<QMatrix>>>,
    /// `e[w][i]: V_w -> V_{w - e_i}`, integral coordinates.
    e: Vec<Vec<Option<QMatrix>>>,
}

fn shifted(k: &[i64], i: usize, by: i64) -> Vec<i64> {
    let mut out = k.to_vec();
    out[i] += by;
    out
}

/// All depth vectors with total at most `d`, ordered by total then lexicographically.
fn depth_vectors(rank: usize, d: i64) -> Vec<Vec<i64>> {
    fn rec(rank: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == rank {
            out.push(prefix.clone());
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            rec(rank, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, d, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| a.cmp(b)));
    out
}

impl TruncatedModule {
    pub fn build(gcm: &GeneralizedCartanMatrix, lambda: &[i64], depth: u32) -> Result<Self> {
        Self::build_with_budget(gcm, lambda, depth, DEFAULT_DIMENSION_BUDGET)
    }

    pub fn build_with_budget(
        gcm: &GeneralizedCartanMatrix,
        lambda: &[i64],
        depth: u32,
        budget: usize,
    ) -> Result<Self> {
        let n = gcm.rank();
        if lambda.len() != n || lambda.iter().any(|&x| x < 0) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        gcm.symmetrize()?;
        let d = depth as i64;
        let keys = depth_vectors(n, d);
        let index: HashMap<Vec<i64>, usize> =
            keys.iter().cloned().enumerate().map(|(w, k)| (k, w)).collect();

        let mut spaces: Vec<WeightSpace> = Vec::with_capacity(keys.len());
        let mut f_plain: Vec<Vec<Option<QMatrix>>> = vec![vec![None; n]; keys.len()];
        let mut e_plain: Vec<Vec<Option<QMatrix>>> = vec![vec![None; n]; keys.len()];
        let mut total_dim = 0usize;

        for (w, k) in keys.iter().enumerate() {
            if w == 0 {
                spaces.push(WeightSpace {
                    depth: k.clone(),
                    monomials: vec![FMonomial::default()],
                    gram: QMatrix::identity(1),
                    zbasis: QMatrix::identity(1),
                    zbasis_inv: QMatrix::identity(1),
                });
                total_dim += 1;
                continue;
            }
            let dim_of = |kk: &[i64], spaces: &[WeightSpace]| spaces[index[kk]].monomials.len();

            // candidates f_i b, b running over the basis one level up
            let mut span: Vec<(usize, usize)> = Vec::new();
            for i in 0..n {
                if k[i] >= 1 {
                    let up = shifted(k, i, -1);
                    for b in 0..dim_of(&up, &spaces) {
                        span.push((i, b));
                    }
                }
            }
            // e_j(f_i b) = f_i e_j b + delta_ij <wt(b), alpha_i^vee> b
            let mut eimg: Vec<Vec<Option<Vec<Q>>>> = Vec::with_capacity(span.len());
            for &(i, b) in &span {
                let km = shifted(k, i, -1);
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    if k[j] < 1 {
                        row.push(None);
                        continue;
                    }
                    let target = shifted(k, j, -1);
                    let mut v = vec![Q::zero(); dim_of(&target, &spaces)];
                    if km[j] >= 1 {
                        let eb = e_plain[index[&km]][j].as_ref().expect("built").column(b);
                        let lower = shifted(&km, j, -1);
                        let fi = f_plain[index[&lower]][i].as_ref().expect("built");
                        for (x, y) in v.iter_mut().zip(fi.apply(&eb)) {
                            *x += y;
                        }
                    }
                    if i == j {
                        v[b] += Q::from_integer(pairing(gcm, lambda, &km, i).into());
                    }
                    row.push(Some(v));
                }
                eimg.push(row);
            }
            let s = span.len();
            let gram = QMatrix::from_fn(s, s, |x, y| {
                let (i, b) = span[x];
                let up = &spaces[index[&shifted(k, i, -1)]];
                let ev = eimg[y][i].as_ref().expect("k_i >= 1");
                let mut acc = Q::zero();
                for (c, val) in ev.iter().enumerate() {
                    if !val.is_zero() {
                        acc += up.gram.get(b, c) * val;
                    }
                }
                acc
            });
            let chosen = gram.independent_rows();
            let m = chosen.len();
            total_dim += m;
            if total_dim > budget {
                return Err(Error::ResourceBudgetExceeded { budget });
            }
            let g_bb = gram.submatrix(&chosen, &chosen);
            let g_inv = g_bb.inverse().expect("independent Gram rows give an invertible block");
            for i in 0..n {
                if k[i] < 1 {
                    continue;
                }
                let cols: Vec<usize> = (0..s).filter(|&x| span[x].0 == i).collect();
                let f = &g_inv * &gram.submatrix(&chosen, &cols);
                f_plain[index[&shifted(k, i, -1)]][i] = Some(f);
            }
            for j in 0..n {
                if k[j] < 1 {
                    continue;
                }
                let target_dim = dim_of(&shifted(k, j, -1), &spaces);
                let e = QMatrix::from_fn(target_dim, m, |r, c| {
                    eimg[chosen[c]][j].as_ref().expect("k_j >= 1")[r].clone()
                });
                e_plain[w][j] = Some(e);
            }
            let monomials: Vec<FMonomial> = chosen
                .iter()
                .map(|&x| {
                    let (i, b) = span[x];
                    let mut mono = FMonomial { factors: vec![(i, 1)] };
                    mono.factors.extend_from_slice(&spaces[index[&shifted(k, i, -1)]].monomials[b].factors);
                    mono
                })
                .collect();

            // integral lattice from divided powers of lower lattices
            let mut gens: Vec<Vec<Q>> = Vec::new();
            for i in 0..n {
                for mult in 1..=k[i] {
                    let src = shifted(k, i, -mult);
                    let mut acc = spaces[index[&src]].zbasis.clone();
                    for step in 0..mult {
                        let cur = shifted(&src, i, step);
                        acc = f_plain[index[&cur]][i].as_ref().expect("built") * &acc;
                    }
                    let acc = acc.scale(&Q::from_integer(factorial(mult as usize)).recip());
                    gens.extend((0..acc.cols()).map(|c| acc.column(c)));
                }
            }
            let zcols = lattice_basis(m, &gens);
            assert_eq!(zcols.len(), m, "divided powers span each weight space");
            let zbasis = QMatrix::from_columns(m, &zcols);
            let zbasis_inv = zbasis.inverse().expect("lattice basis is a basis");
            spaces.push(WeightSpace { depth: k.clone(), monomials, gram: g_bb, zbasis, zbasis_inv });
        }

        let rebase = |plain: &Vec<Vec<Option<QMatrix>>>, sign: i64| -> Vec<Vec<Option<QMatrix>>> {
            plain
                .iter()
                .enumerate()
                .map(|(w, per_i)| {
                    per_i
                        .iter()
                        .enumerate()
                        .map(|(i, mat)| {
                            mat.as_ref().map(|mat| {
                                let t = index[&shifted(&spaces[w].depth, i, sign)];
                                &(&spaces[t].zbasis_inv * mat) * &spaces[w].zbasis
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let f = rebase(&f_plain, 1);
        let e = rebase(&e_plain, -1);

        Ok(TruncatedModule {
            gcm: gcm.clone(),
            lambda: lambda.to_vec(),
            depth_bound: d,
            spaces,
            index,
            f,
            e,
        })
    }

    pub fn gcm(&self) -> &GeneralizedCartanMatrix {
        &self.gcm
    }

    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn depth_bound(&self) -> i64 {
        self.depth_bound
    }

    /// Number of weight slots (including zero-dimensional ones).
    pub fn num_weights(&self) -> usize {
        self.spaces.len()
    }

    pub fn depth_of(&self, w: usize) -> &[i64] {
        &self.spaces[w].depth
    }

    pub fn weight_index(&self, k: &[i64]) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn dim_at(&self, w: usize) -> usize {
        self.spaces[w].monomials.len()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|s| s.monomials.len()).sum()
    }

    /// `<mu, alpha_i^vee>` for the weight at slot `w`.
    pub fn pairing_at(&self, w: usize, i: usize) -> i64 {
        pairing(&self.gcm, &self.lambda, &self.spaces[w].depth, i)
    }

    fn slot(&self, k: &[i64]) -> Result<usize> {
        if k.len() != self.rank() || k.iter().any(|&x| x < 0) {
            return Err(self.out_of_range(k));
        }
        self.index.get(k).copied().ok_or_else(|| self.out_of_range(k))
    }

    fn out_of_range(&self, k: &[i64]) -> Error {
        Error::DepthOutOfRange {
            depth: k.iter().map(|&x| x.max(0) as u32).collect(),
            max: self.depth_bound as u32,
        }
    }

    /// Weight multiplicity at depth vector `k`.
    pub fn mult(&self, k: &[i64]) -> Result<usize> {
        Ok(self.dim_at(self.slot(k)?))
    }

    /// `e_i: V_w -> V_{w - e_i}` in integral coordinates; `None` when `k_i = 0`.
    pub fn e_matrix(&self, w: usize, i: usize) -> Option<&QMatrix> {
        self.e[w][i].as_ref()
    }

    /// `f_i: V_w -> V_{w + e_i}`; `None` when the target is past the truncation.
    pub fn f_matrix(&self, w: usize, i: usize) -> Option<&QMatrix> {
        self.f[w][i].as_ref()
    }

    /// `e_i^(m)` from slot `w`, with its target slot. `None` when the target
    /// weight has a negative depth coordinate (the map is zero).
    pub fn e_divided(&self, w: usize, i: usize, m: i64) -> Option<(usize, QMatrix)> {
        let k = &self.spaces[w].depth;
        if k[i] < m {
            return None;
        }
        let mut acc = QMatrix::identity(self.dim_at(w));
        let mut cur = w;
        for _ in 0..m {
            let e = self.e[cur][i].as_ref().expect("k_i >= 1");
            acc = e * &acc;
            cur = self.index[&shifted(&self.spaces[cur].depth, i, -1)];
        }
        Some((cur, acc.scale(&Q::from_integer(factorial(m as usize)).recip())))
    }

    /// `f_i^(m)` from slot `w`, or `Err(TruncationOverflow)` past the bound.
    pub fn f_divided(&self, w: usize, i: usize, m: i64) -> Result<(usize, QMatrix)> {
        let k = &self.spaces[w].depth;
        if k.iter().sum::<i64>() + m > self.depth_bound {
            return Err(Error::TruncationOverflow {
                context: format!("f_{}^({m}) from depth {k:?} exceeds bound {}", i + 1, self.depth_bound),
            });
        }
        let mut acc = QMatrix::identity(self.dim_at(w));
        let mut cur = w;
        for _ in 0..m {
            acc = self.f[cur][i].as_ref().expect("inside truncation") * &acc;
            cur = self.index[&shifted(&self.spaces[cur].depth, i, 1)];
        }
        Ok((cur, acc.scale(&Q::from_integer(factorial(m as usize)).recip())))
    }

    /// `e_i v` for `v` at depth `k`, landing at `k - e_i` (zero if absent).
    pub fn e_action(&self, i: usize, k: &[i64], v: &[Q]) -> Result<Vec<Q>> {
        self.gcm.check_index(i)?;
        let w = self.slot(k)?;
        Ok(match &self.e[w][i] {
            Some(m) => m.apply(v),
            None => Vec::new(),
        })
    }

    /// `f_i v` for `v` at depth `k`. Always overflows when `|k| + 1 > d`.
    pub fn f_action(&self, i: usize, k: &[i64], v: &[Q]) -> Result<Vec<Q>> {
        self.gcm.check_index(i)?;
        let w = self.slot(k)?;
        match &self.f[w][i] {
            Some(m) => Ok(m.apply(v)),
            None => Err(Error::TruncationOverflow {
                context: format!("f_{} from depth {k:?} exceeds bound {}", i + 1, self.depth_bound),
            }),
        }
    }

    pub fn zbasis(&self, k: &[i64]) -> Result<ZBasis> {
        let s = &self.spaces[self.slot(k)?];
        Ok(ZBasis {
            monomials: s.monomials.clone(),
            vectors: (0..s.zbasis.cols()).map(|c| s.zbasis.column(c)).collect(),
        })
    }

    /// Gram matrix of the plain monomial basis at `k`.
    pub fn gram(&self, k: &[i64]) -> Result<&QMatrix> {
        Ok(&self.spaces[self.slot(k)?].gram)
    }

    /// Converts plain-monomial coordinates at `k` to integral coordinates.
    pub fn to_integral_coords(&self, k: &[i64], v: &[Q]) -> Result<Vec<Q>> {
        Ok(self.spaces[self.slot(k)?].zbasis_inv.apply(v))
    }
}

/// A finite direct sum of truncated modules sharing one Cartan matrix and
/// depth bound.
#[derive(Clone, Debug)]
pub struct ModuleCollection {
    modules: Vec<Arc<TruncatedModule>>,
}

impl ModuleCollection {
    pub fn new(modules: Vec<Arc<TruncatedModule>>) -> Result<Self> {
        let Some(first) = modules.first() else {
            return Err(Error::IncompatibleCollection);
        };
        if modules.iter().any(|m| m.gcm != first.gcm || m.depth_bound != first.depth_bound) {
            return Err(Error::IncompatibleCollection);
        }
        Ok(ModuleCollection { modules })
    }

    /// Builds `V^lambda` for every `lambda` at a shared depth.
    pub fn build(gcm: &GeneralizedCartanMatrix, lambdas: &[Vec<i64>], depth: u32) -> Result<Self> {
        let modules = lambdas
            .iter()
            .map(|l| TruncatedModule::build(gcm, l, depth).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modules)
    }

    /// `{V^{omega_1}, ..., V^{omega_l}}`.
    pub fn fundamental(gcm: &GeneralizedCartanMatrix, depth: u32) -> Result<Self> {
        let n = gcm.rank();
        let lambdas: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        Self::build(gcm, &lambdas, depth)
    }

    pub fn modules(&self) -> &[Arc<TruncatedModule>] {
        &self.modules
    }

    pub fn gcm(&self) -> &GeneralizedCartanMatrix {
        &self.modules[0].gcm
    }

    pub fn depth_bound(&self) -> i64 {
        self.modules[0].depth_bound
    }
}

/// Whether every simple root is a difference of two weights of nonzero
/// multiplicity inside the truncation.
pub fn check_faithful_weight_lattice(modules: &[&TruncatedModule]) -> bool {
    let Some(first) = modules.first() else { return false };
    (0..first.rank()).all(|i| {
        modules.iter().any(|m| {
            (0..m.num_weights()).any(|w| {
                m.dim_at(w) > 0
                    && m.weight_index(&shifted(m.depth_of(w), i, 1)).is_some_and(|t| m.dim_at(t) > 0)
            })
        })
    })
}

impl TruncatedModule {
    /// The highest weight vector `v_lambda` in integral coordinates.
    pub fn highest_vector(&self) -> Vec<Q> {
        vec![Q::one()]
    }
}

//! Root lattice arithmetic, simple reflections and real-root enumeration.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Mutex;

use num_traits::Zero;

use crate::cartan::GeneralizedCartanMatrix;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Q;

/// `sum c_i alpha_i` over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        RootVector(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|c| -c).collect())
    }

    /// `Some(i)` when this is `alpha_i`.
    pub fn as_simple(&self) -> Option<usize> {
        let mut idx = None;
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 if idx.is_none() => idx = Some(i),
                _ => return None,
            }
        }
        idx
    }

    /// `<alpha, alpha_i^vee> = sum_j a_ij c_j`.
    pub fn pairing(&self, a: &GeneralizedCartanMatrix, i: usize) -> i64 {
        self.0.iter().enumerate().map(|(j, c)| a.a(i, j) * c).sum()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A weight `lambda - sum k_i alpha_i`: `lambda` in fundamental-weight
/// coordinates, `depth` the coefficients `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleWeight {
    pub lambda: Vec<i64>,
    pub depth: Vec<i64>,
}

impl ModuleWeight {
    pub fn highest(lambda: Vec<i64>) -> Self {
        let n = lambda.len();
        ModuleWeight { lambda, depth: vec![0; n] }
    }

    pub fn total_depth(&self) -> i64 {
        self.depth.iter().sum()
    }

    /// `<mu, alpha_i^vee> = lambda_i - sum_j a_ij k_j`.
    pub fn pairing(&self, a: &GeneralizedCartanMatrix, i: usize) -> i64 {
        pairing(a, &self.lambda, &self.depth, i)
    }

    /// `s_i(mu) = mu - <mu, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, a: &GeneralizedCartanMatrix, i: usize) -> Self {
        let p = self.pairing(a, i);
        let mut depth = self.depth.clone();
        depth[i] += p;
        ModuleWeight { lambda: self.lambda.clone(), depth }
    }

    /// Pairings with every simple coroot, i.e. fundamental-weight coordinates.
    pub fn coordinates(&self, a: &GeneralizedCartanMatrix) -> Vec<i64> {
        (0..a.rank()).map(|i| self.pairing(a, i)).collect()
    }
}

pub fn pairing(a: &GeneralizedCartanMatrix, lambda: &[i64], depth: &[i64], i: usize) -> i64 {
    lambda[i] - (0..a.rank()).map(|j| a.a(i, j) * depth[j]).sum::<i64>()
}

pub fn reflect(a: &GeneralizedCartanMatrix, i: usize, alpha: &RootVector) -> RootVector {
    let p = alpha.pairing(a, i);
    let mut c = alpha.0.clone();
    c[i] -= p;
    RootVector(c)
}

/// `<mu, alpha^vee> = 2 (mu|alpha) / (alpha|alpha)` for a real root `alpha`,
/// with `mu` given by its pairings with the simple coroots.
pub fn coroot_pairing(a: &GeneralizedCartanMatrix, mu: &[i64], alpha: &RootVector) -> Result<i64> {
    let d = a.symmetrize()?;
    let c = alpha.coords();
    let mut mu_alpha = Q::zero();
    let mut alpha_alpha = Q::zero();
    for j in 0..a.rank() {
        if c[j] != 0 {
            let w = &d[j] * Q::from_integer(c[j].into());
            mu_alpha += &w * Q::from_integer(mu[j].into());
            alpha_alpha += &w * Q::from_integer(alpha.pairing(a, j).into());
        }
    }
    if alpha_alpha.is_zero() {
        return Err(Error::NotARealRoot(c.to_vec()));
    }
    let v = Q::from_integer(2.into()) * mu_alpha / alpha_alpha;
    crate::rational::to_i64(&v).ok_or_else(|| Error::NotARealRoot(c.to_vec()))
}

/// A product `s_{l_0} s_{l_1} ... s_{l_r}` of simple reflections, acting
/// right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn apply(&self, a: &GeneralizedCartanMatrix, alpha: &RootVector) -> RootVector {
        self.0.iter().rev().fold(alpha.clone(), |acc, &i| reflect(a, i, &acc))
    }

    pub fn apply_weight(&self, a: &GeneralizedCartanMatrix, mu: &ModuleWeight) -> ModuleWeight {
        self.0.iter().rev().fold(mu.clone(), |acc, &i| acc.reflect(a, i))
    }

    pub fn inverse(&self) -> Self {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `root = word(alpha_simple)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub word: WeylWord,
    pub simple: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealRoot {
    pub root: RootVector,
    pub witness: Witness,
}

impl RealRoot {
    pub fn verify(&self, a: &GeneralizedCartanMatrix) -> bool {
        self.witness.word.apply(a, &RootVector::simple(a.rank(), self.witness.simple)) == self.root
    }
}

/// Height first, then lexicographic on coordinates (larger leading
/// coordinate is greater).
pub fn root_order_cmp(a: &RootVector, b: &RootVector) -> Ordering {
    a.height().cmp(&b.height()).then_with(|| a.0.cmp(&b.0))
}

/// Positive real roots of height at most `h`, each with a witness, sorted by
/// [`root_order_cmp`].
pub fn real_roots_up_to_height(a: &GeneralizedCartanMatrix, h: i64) -> Vec<RealRoot> {
    let margin = (0..a.rank())
        .flat_map(|i| (0..a.rank()).map(move |j| (i, j)))
        .map(|(i, j)| a.a(i, j).abs())
        .max()
        .unwrap_or(0)
        * h;
    orbit_search(a, h, h + margin)
}

/// Breadth-first Weyl-orbit closure of the simple roots, pruning any root
/// whose absolute height exceeds `bound`.
fn orbit_search(a: &GeneralizedCartanMatrix, h: i64, bound: i64) -> Vec<RealRoot> {
    let n = a.rank();
    let mut seen: HashMap<RootVector, Witness> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let r = RootVector::simple(n, i);
        seen.insert(r.clone(), Witness { word: WeylWord::default(), simple: i });
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        let w = seen[&r].clone();
        for j in 0..n {
            let s = reflect(a, j, &r);
            if s.height().abs() > bound || seen.contains_key(&s) {
                continue;
            }
            let mut word = vec![j];
            word.extend_from_slice(&w.word.0);
            seen.insert(s.clone(), Witness { word: WeylWord(word), simple: w.simple });
            queue.push_back(s);
        }
    }
    let mut out: Vec<RealRoot> = seen
        .into_iter()
        .filter(|(r, _)| r.is_positive() && r.height() <= h)
        .map(|(root, witness)| RealRoot { root, witness })
        .collect();
    out.sort_by(|x, y| root_order_cmp(&x.root, &y.root));
    out
}

/// Whether `beta` lies in `Delta`, real or imaginary.
///
/// Reflections lower the height while some pairing is positive; a simple
/// root means real, a mixed-sign vector means not a root, and otherwise the
/// reduced vector is imaginary exactly when its support is connected.
pub fn is_root(a: &GeneralizedCartanMatrix, beta: &RootVector) -> bool {
    let mut b = if beta.is_negative() { beta.neg() } else { beta.clone() };
    if !b.is_positive() {
        return false;
    }
    loop {
        if b.as_simple().is_some() {
            return true;
        }
        if !b.is_positive() {
            return false;
        }
        match (0..a.rank()).find(|&i| b.pairing(a, i) > 0) {
            Some(i) => b = reflect(a, i, &b),
            None => break,
        }
    }
    let support: Vec<usize> = (0..a.rank()).filter(|&i| b.0[i] != 0).collect();
    connected(a, &support)
}

/// Whether `beta` is a real root.
pub fn is_real_root(a: &GeneralizedCartanMatrix, beta: &RootVector) -> bool {
    let mut b = if beta.is_negative() { beta.neg() } else { beta.clone() };
    loop {
        if !b.is_positive() {
            return false;
        }
        if b.as_simple().is_some() {
            return true;
        }
        match (0..a.rank()).find(|&i| b.pairing(a, i) > 0) {
            Some(i) => b = reflect(a, i, &b),
            None => return false,
        }
    }
}

fn connected(a: &GeneralizedCartanMatrix, nodes: &[usize]) -> bool {
    let Some(&start) = nodes.first() else { return false };
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in nodes {
            if w != v && a.a(v, w) != 0 && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == nodes.len()
}

/// Canonical witnesses for real roots, filled lazily from the breadth-first
/// enumeration so every caller agrees on the root vector attached to a root.
#[derive(Debug)]
pub struct RootCatalog {
    gcm: GeneralizedCartanMatrix,
    known: Mutex<(i64, HashMap<RootVector, Witness>)>,
}

impl RootCatalog {
    pub fn new(gcm: GeneralizedCartanMatrix) -> Self {
        RootCatalog { gcm, known: Mutex::new((0, HashMap::new())) }
    }

    pub fn gcm(&self) -> &GeneralizedCartanMatrix {
        &self.gcm
    }

    /// Witness of a real root of either sign; negative roots reuse the
    /// witness of their negation.
    pub fn witness(&self, root: &RootVector) -> Result<Witness> {
        if root.0.len() != self.gcm.rank() {
            return Err(Error::NotARoot(root.0.clone()));
        }
        let pos = if root.is_negative() { root.neg() } else { root.clone() };
        if !pos.is_positive() {
            return Err(Error::NotARoot(root.0.clone()));
        }
        if !is_real_root(&self.gcm, &pos) {
            return Err(Error::NotARealRoot(root.0.clone()));
        }
        let mut guard = self.known.lock().expect("root catalog poisoned");
        if guard.0 < pos.height() {
            // enumerate a little past the request to amortize refills
            let h = pos.height().max(2 * guard.0);
            guard.1 = real_roots_up_to_height(&self.gcm, h)
                .into_iter()
                .map(|r| (r.root, r.witness))
                .collect();
            guard.0 = h;
        }
        guard.1.get(&pos).cloned().ok_or_else(|| Error::NotARealRoot(root.0.clone()))
    }

    pub fn real_roots(&self, h: i64) -> Vec<RealRoot> {
        real_roots_up_to_height(&self.gcm, h)
    }
}

impl Clone for RootCatalog {
    fn clone(&self) -> Self {
        RootCatalog::new(self.gcm.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeTag {
    RootLattice,
    WeightLattice,
}

/// Basis (as columns, in coroot coordinates) of `{h : mu(h) in Z for all mu in L}`.
pub fn integral_h_lattice(a: &GeneralizedCartanMatrix, lattice: LatticeTag) -> Result<QMatrix> {
    let n = a.rank();
    if a.determinant().is_zero() {
        return Err(Error::DegenerateCartan);
    }
    Ok(match lattice {
        LatticeTag::WeightLattice => QMatrix::identity(n),
        LatticeTag::RootLattice => {
            // alpha_i(sum c_j alpha_j^vee) = sum_j a_ji c_j, so c ranges over A^{-T} Z^n
            let at = QMatrix::from_fn(n, n, |i, j| Q::from_integer(a.a(j, i).into()));
            at.inverse().expect("nondegenerate")
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coroot_pairings() {
        let b2 = GeneralizedCartanMatrix::validate(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        for r in real_roots_up_to_height(&b2, 4) {
            let coords: Vec<i64> = (0..2).map(|j| r.root.pairing(&b2, j)).collect();
            assert_eq!(coroot_pairing(&b2, &coords, &r.root).unwrap(), 2);
        }
        let a2 = GeneralizedCartanMatrix::validate(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(coroot_pairing(&a2, &[1, 1], &RootVector(vec![1, 1])).unwrap(), 2);
        assert_eq!(coroot_pairing(&a2, &[1, 0], &RootVector(vec![1, 1])).unwrap(), 1);
    }
    use crate::rational::frac;

    fn gcm(rows: &[&[i64]]) -> GeneralizedCartanMatrix {
        GeneralizedCartanMatrix::validate(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn coords(roots: &[RealRoot]) -> Vec<Vec<i64>> {
        roots.iter().map(|r| r.root.0.clone()).collect()
    }

    #[test]
    fn reflections() {
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        assert_eq!(reflect(&a2, 0, &RootVector(vec![1, 0])), RootVector(vec![-1, 0]));
        assert_eq!(reflect(&a2, 0, &RootVector(vec![0, 1])), RootVector(vec![1, 1]));
        let h = gcm(&[&[2, -3], &[-3, 2]]);
        assert_eq!(reflect(&h, 0, &RootVector(vec![0, 1])), RootVector(vec![3, 1]));
    }

    #[test]
    fn heights() {
        assert_eq!(RootVector(vec![1, 0]).height(), 1);
        assert_eq!(RootVector(vec![1, 2]).height(), 3);
        assert_eq!(RootVector(vec![-1, -1]).height(), -2);
    }

    #[test]
    fn enumeration_examples() {
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        assert_eq!(coords(&real_roots_up_to_height(&a2, 2)), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(real_roots_up_to_height(&a2, 10).len(), 3);
        assert_eq!(coords(&real_roots_up_to_height(&gcm(&[&[2]]), 5)), vec![vec![1]]);
        let aff = gcm(&[&[2, -2], &[-2, 2]]);
        assert_eq!(
            coords(&real_roots_up_to_height(&aff, 3)),
            vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1]]
        );
    }

    #[test]
    fn witnesses_verify() {
        for a in [gcm(&[&[2, -1], &[-1, 2]]), gcm(&[&[2, -2], &[-2, 2]]), gcm(&[&[2, -3], &[-3, 2]])] {
            for r in real_roots_up_to_height(&a, 12) {
                assert!(r.verify(&a), "{:?}", r);
            }
        }
    }

    #[test]
    fn margin_matches_unpruned_search() {
        let cases = [
            gcm(&[&[2, -1], &[-1, 2]]),
            gcm(&[&[2, -2], &[-2, 2]]),
            gcm(&[&[2, -3], &[-3, 2]]),
            gcm(&[&[2, -1, 0], &[-1, 2, -2], &[0, -1, 2]]),
            gcm(&[&[2, -2, -1], &[-2, 2, -1], &[-1, -1, 2]]),
        ];
        for a in cases {
            for h in 1..=6 {
                let pruned = coords(&real_roots_up_to_height(&a, h));
                let wide = coords(&orbit_search(&a, h, 20 * h + 20));
                assert_eq!(pruned, wide, "h = {h}");
            }
        }
    }

    #[test]
    fn order_examples() {
        let a1 = RootVector(vec![1, 0]);
        let a2 = RootVector(vec![0, 1]);
        assert_eq!(root_order_cmp(&a1, &RootVector(vec![1, 1])), Ordering::Less);
        assert_eq!(root_order_cmp(&a1, &a1), Ordering::Equal);
        assert_eq!(root_order_cmp(&a1, &a2), Ordering::Greater);
    }

    #[test]
    fn weight_pairings() {
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        for i in 0..2 {
            let mut lambda = vec![0, 0];
            lambda[i] = 1;
            let w = ModuleWeight::highest(lambda);
            for j in 0..2 {
                assert_eq!(w.pairing(&a2, j), (i == j) as i64);
            }
        }
        for j in 0..2 {
            let mut depth = vec![0, 0];
            depth[j] = 1;
            let w = ModuleWeight { lambda: vec![0, 0], depth };
            for i in 0..2 {
                assert_eq!(w.pairing(&a2, i), -a2.a(i, j));
            }
        }
        let w = ModuleWeight { lambda: vec![1, 1], depth: vec![1, 0] };
        assert_eq!(w.pairing(&a2, 0), -1);
    }

    #[test]
    fn root_membership() {
        let h = gcm(&[&[2, -3], &[-3, 2]]);
        assert!(is_root(&h, &RootVector(vec![1, 1])));
        assert!(!is_real_root(&h, &RootVector(vec![1, 1])));
        assert!(is_real_root(&h, &RootVector(vec![3, 1])));
        assert!(!is_root(&h, &RootVector(vec![4, 1])));
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        assert!(is_root(&a2, &RootVector(vec![1, 1])));
        assert!(!is_root(&a2, &RootVector(vec![2, 1])));
        let aff = gcm(&[&[2, -2], &[-2, 2]]);
        assert!(is_root(&aff, &RootVector(vec![2, 2])));
        assert!(!is_real_root(&aff, &RootVector(vec![2, 2])));
        assert!(is_real_root(&aff, &RootVector(vec![3, 2])));
    }

    #[test]
    fn h_lattices() {
        let a1 = gcm(&[&[2]]);
        assert_eq!(integral_h_lattice(&a1, LatticeTag::WeightLattice).unwrap(), QMatrix::identity(1));
        assert_eq!(
            integral_h_lattice(&a1, LatticeTag::RootLattice).unwrap(),
            QMatrix::from_rows(vec![vec![frac(1, 2)]])
        );
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        assert_eq!(integral_h_lattice(&a2, LatticeTag::WeightLattice).unwrap(), QMatrix::identity(2));
        // coroot lattice sits inside the coweight lattice: A^T maps the identity basis to integers
        let cw = integral_h_lattice(&a2, LatticeTag::RootLattice).unwrap();
        assert!(cw.inverse().unwrap().is_integral());
        let aff = gcm(&[&[2, -2], &[-2, 2]]);
        assert_eq!(integral_h_lattice(&aff, LatticeTag::RootLattice), Err(Error::DegenerateCartan));
    }

    proptest::proptest! {
        #[test]
        fn reflection_is_involution(c0 in -6i64..6, c1 in -6i64..6, i in 0usize..2) {
            let h = gcm(&[&[2, -3], &[-3, 2]]);
            let r = RootVector(vec![c0, c1]);
            proptest::prop_assert_eq!(reflect(&h, i, &reflect(&h, i, &r)), r);
        }

        #[test]
        fn order_is_total(a in proptest::collection::vec(0i64..4, 3), b in proptest::collection::vec(0i64..4, 3)) {
            let (x, y) = (RootVector(a), RootVector(b));
            let o = root_order_cmp(&x, &y);
            proptest::prop_assert_eq!(o.reverse(), root_order_cmp(&y, &x));
            proptest::prop_assert_eq!(o == Ordering::Equal, x == y);
        }
    }
}

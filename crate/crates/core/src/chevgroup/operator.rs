//! Exact operators on truncated modules, stored blockwise by weight.
//!
//! An operator keeps, for every source weight slot, the nonzero blocks it
//! sends into other weight slots (integral-basis coordinates). A source is
//! *complete* when every block of its image is known; lowering letters near
//! the truncation bound leave some sources incomplete, and a composition is
//! complete at a source only if every intermediate block it passes through
//! is. The valid depth is the largest `p` for which every source of total
//! depth `<= p` is complete; comparisons are only made below it.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use super::{GeneratorLetter, GroupWord, Sign};
use crate::error::{Error, Result};
use crate::hwmod::{ModuleCollection, TruncatedModule};
use crate::linalg::QMatrix;
use crate::rational::{pow, Q};
use crate::rootsys::{coroot_pairing, is_root, RootCatalog, RootVector};

#[derive(Clone, Debug)]
pub struct BlockOperator {
    module: Arc<TruncatedModule>,
    blocks: Vec<Vec<(usize, QMatrix)>>,
    complete: Vec<bool>,
}

fn step(k: &[i64], i: usize, by: i64) -> Vec<i64> {
    let mut out = k.to_vec();
    out[i] += by;
    out
}

fn total(k: &[i64]) -> i64 {
    k.iter().sum()
}

impl BlockOperator {
    pub fn identity(module: &Arc<TruncatedModule>) -> Self {
        let n = module.num_weights();
        let blocks = (0..n)
            .map(|w| {
                let dim = module.dim_at(w);
                if dim == 0 {
                    vec![]
                } else {
                    vec![(w, QMatrix::identity(dim))]
                }
            })
            .collect();
        BlockOperator { module: module.clone(), blocks, complete: vec![true; n] }
    }

        /// `exp(t x_{+-alpha_i}) = sum_m t^m x_{+-alpha_i}^(m)`.
    pub fn chi_simple(module: &Arc<TruncatedModule>, i: usize, sign: Sign, t: &Q) -> Result<Self> {
        module.gcm().check_index(i)?;
        let n = module.num_weights();
        let d = module.depth_bound();
        let mut blocks = Vec::with_capacity(n);
        let mut complete = Vec::with_capacity(n);
        for w in 0..n {
            let dim = module.dim_at(w);
            let mut out = Vec::new();
            if dim == 0 {
                blocks.push(out);
                complete.push(true);
                continue;
            }
            out.push((w, QMatrix::identity(dim)));
            let k = module.depth_of(w).to_vec();
            let mut done = true;
            if !t.is_zero() {
                match sign {
                    Sign::Plus => {
                        for m in 1..=k[i] {
                            let (target, mat) = module.e_divided(w, i, m).expect("k_i >= m");
                            if !mat.is_zero() {
                                out.push((target, mat.scale(&pow(t, m))));
                            }
                        }
                    }
                    Sign::Minus => {
                        // the alpha_i-string through mu is unbroken and reaches
                        // mu - (<mu, alpha_i^vee> + q) alpha_i, with q read off above
                        let q = string_top(module, &k, &RootVector::simple(k.len(), i));
                        let longest = (module.pairing_at(w, i) + q).max(0);
                        done = total(&k) + longest <= d;
                        let mut m = 1;
                        while total(&k) + m <= d {
                            let (target, mat) = module.f_divided(w, i, m)?;
                            if mat.is_zero() {
                                done = true;
                                break;
                            }
                            out.push((target, mat.scale(&pow(t, m))));
                            m += 1;
                        }
                    }
                }
            }
            out.sort_by_key(|(target, _)| *target);
            blocks.push(out);
            complete.push(done);
        }
        Ok(BlockOperator { module: module.clone(), blocks, complete })
    }

    /// `h_{alpha_i}(t)`: multiplication by `t^{<mu, alpha_i^vee>}` on `V_mu`.
    pub fn torus(module: &Arc<TruncatedModule>, i: usize, t: &Q) -> Result<Self> {
        module.gcm().check_index(i)?;
        if t.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let mut op = Self::identity(module);
        for (w, blocks) in op.blocks.iter_mut().enumerate() {
            let s = pow(t, module.pairing_at(w, i));
            for (_, m) in blocks.iter_mut() {
                *m = m.scale(&s);
            }
        }
        Ok(op)
    }

    /// `w~_i(t) = chi_i(t) chi_{-i}(-1/t) chi_i(t)`.
    pub fn wtilde(module: &Arc<TruncatedModule>, i: usize, t: &Q) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let up = Self::chi_simple(module, i, Sign::Plus, t)?;
        let down = Self::chi_simple(module, i, Sign::Minus, &-t.recip())?;
        Ok(up.compose(&down).compose(&up))
    }

    /// The Lie algebra generator `e_i` (not a group element).
    pub fn e_generator(module: &Arc<TruncatedModule>, i: usize) -> Self {
        let n = module.num_weights();
        let blocks = (0..n)
            .map(|w| match module.e_matrix(w, i) {
                Some(m) if !m.is_zero() => {
                    vec![(module.weight_index(&step(module.depth_of(w), i, -1)).expect("inside"), m.clone())]
                }
                _ => vec![],
            })
            .collect();
        BlockOperator { module: module.clone(), blocks, complete: vec![true; n] }
    }

    /// The Lie algebra generator `f_i`; its image from the bottom layer is lost
    /// unless `f_i` provably kills it.
    pub fn f_generator(module: &Arc<TruncatedModule>, i: usize) -> Self {
        let n = module.num_weights();
        let mut blocks = Vec::with_capacity(n);
        let mut complete = Vec::with_capacity(n);
        for w in 0..n {
            let k = module.depth_of(w);
            match module.f_matrix(w, i) {
                Some(m) => {
                    let t = module.weight_index(&step(k, i, 1)).expect("inside");
                    blocks.push(if m.is_zero() { vec![] } else { vec![(t, m.clone())] });
                    complete.push(true);
                }
                None => {
                    blocks.push(vec![]);
                    complete.push(module.dim_at(w) == 0 || module.pairing_at(w, i) + k[i] <= 0);
                }
            }
        }
        BlockOperator { module: module.clone(), blocks, complete }
    }

    pub fn zero(module: &Arc<TruncatedModule>) -> Self {
        let n = module.num_weights();
        BlockOperator { module: module.clone(), blocks: vec![vec![]; n], complete: vec![true; n] }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = self.clone();
        for bl in out.blocks.iter_mut() {
            if c.is_zero() {
                bl.clear();
            }
            for (_, m) in bl.iter_mut() {
                *m = m.scale(c);
            }
        }
        out
    }

    pub fn add(&self, other: &BlockOperator) -> Self {
        assert!(Arc::ptr_eq(&self.module, &other.module), "operators act on different modules");
        let n = self.blocks.len();
        let mut blocks = Vec::with_capacity(n);
        for s in 0..n {
            let mut acc: BTreeMap<usize, QMatrix> = self.blocks[s].iter().cloned().collect();
            for (t, m) in &other.blocks[s] {
                match acc.get_mut(t) {
                    Some(x) => *x = &*x + m,
                    None => {
                        acc.insert(*t, m.clone());
                    }
                }
            }
            blocks.push(acc.into_iter().filter(|(_, m)| !m.is_zero()).collect());
        }
        let complete = self.complete.iter().zip(&other.complete).map(|(a, b)| *a && *b).collect();
        BlockOperator { module: self.module.clone(), blocks, complete }
    }

    pub fn sub(&self, other: &BlockOperator) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    /// `[self, x] = self x - x self`.
    pub fn bracket(&self, x: &BlockOperator) -> Self {
        self.compose(x).sub(&x.compose(self))
    }

    /// Whether no block is stored at all.
    pub fn is_zero_operator(&self) -> bool {
        self.blocks.iter().all(|b| b.is_empty())
    }

    /// `exp(t X)` for a root vector `X` of the real root `root`.
    ///
    /// A source is complete once a vanishing power is known exactly, or when
    /// the `root`-string through its weight provably ends inside the truncation.
    pub fn exp_root_vector(x: &BlockOperator, root: &RootVector, t: &Q) -> Result<Self> {
        let module = x.module.clone();
        let n = module.num_weights();
        let a = module.gcm();
        let mut result = Self::identity(&module);
        let mut done = vec![false; n];
        if t.is_zero() {
            return Ok(result);
        }
        let mut power = Self::identity(&module);
        let mut m = 1i64;
        loop {
            power = x.compose(&power).scale(&Q::from_integer(m.into()).recip());
            for (w, flag) in done.iter_mut().enumerate() {
                if power.blocks[w].is_empty() && power.complete[w] {
                    *flag = true;
                }
            }
            if power.is_zero_operator() {
                break;
            }
            result = result.add(&power.scale(&pow(t, m)));
            m += 1;
        }
        let d = module.depth_bound();
        let ht = root.height().abs();
        for w in 0..n {
            if done[w] || module.dim_at(w) == 0 {
                result.complete[w] = true;
                continue;
            }
            if root.is_positive() {
                result.complete[w] = true;
                continue;
            }
            // x_{-beta}^m kills V_mu once m > <mu, beta^vee> + q, q the height
            // of the (unbroken) beta-string above mu
            let beta = root.neg();
            let k = module.depth_of(w);
            let mu: Vec<i64> = (0..module.rank()).map(|j| module.pairing_at(w, j)).collect();
            let q = string_top(&module, k, &beta);
            let longest = (coroot_pairing(a, &mu, &beta)? + q).max(0);
            result.complete[w] = total(k) + longest * ht <= d;
        }
        Ok(result)
    }

    pub fn module(&self) -> &Arc<TruncatedModule> {
        &self.module
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &BlockOperator) -> BlockOperator {
        assert!(
            Arc::ptr_eq(&self.module, &other.module),
            "operators act on different modules"
        );
        let n = self.blocks.len();
        let mut blocks = Vec::with_capacity(n);
        let mut complete = Vec::with_capacity(n);
        for s in 0..n {
            let mut acc: BTreeMap<usize, QMatrix> = BTreeMap::new();
            let mut done = other.complete[s];
            for (t, b) in &other.blocks[s] {
                done &= self.complete[*t];
                for (u, a) in &self.blocks[*t] {
                    let prod = a * b;
                    match acc.get_mut(u) {
                        Some(x) => *x = &*x + &prod,
                        None => {
                            acc.insert(*u, prod);
                        }
                    }
                }
            }
            blocks.push(acc.into_iter().filter(|(_, m)| !m.is_zero()).collect());
            complete.push(done);
        }
        BlockOperator { module: self.module.clone(), blocks, complete }
    }

    /// Largest `p` with every source of total depth `<= p` complete.
    pub fn valid_depth(&self) -> Option<u32> {
        let mut bad = i64::MAX;
        for (w, &c) in self.complete.iter().enumerate() {
            if !c {
                bad = bad.min(total(self.module.depth_of(w)));
            }
        }
        if bad == i64::MAX {
            Some(self.module.depth_bound() as u32)
        } else if bad == 0 {
            None
        } else {
            Some((bad - 1) as u32)
        }
    }

    pub fn is_complete_at(&self, w: usize) -> bool {
        self.complete[w]
    }

    /// Nonzero blocks out of slot `w`, sorted by target slot.
    pub fn blocks_from(&self, w: usize) -> &[(usize, QMatrix)] {
        &self.blocks[w]
    }

    /// The block `V_{source} -> V_{target}` (zero when absent).
    pub fn block(&self, source: &[i64], target: &[i64]) -> Result<QMatrix> {
        let s = self.slot(source)?;
        let t = self.slot(target)?;
        Ok(self.blocks[s]
            .iter()
            .find(|(x, _)| *x == t)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| QMatrix::zeros(self.module.dim_at(t), self.module.dim_at(s))))
    }

    fn slot(&self, k: &[i64]) -> Result<usize> {
        self.module.weight_index(k).ok_or_else(|| Error::DepthOutOfRange {
            depth: k.iter().map(|&x| x.max(0) as u32).collect(),
            max: self.module.depth_bound() as u32,
        })
    }

    /// Image of `v in V_w` as `(target slot, vector)` pairs.
    pub fn apply(&self, w: usize, v: &[Q]) -> Vec<(usize, Vec<Q>)> {
        self.blocks[w].iter().map(|(t, m)| (*t, m.apply(v))).collect()
    }

    /// Whether every block out of a source of depth `<= p` is integral.
    pub fn is_integral_through(&self, p: u32) -> bool {
        self.blocks.iter().enumerate().all(|(w, bl)| {
            total(self.module.depth_of(w)) > p as i64 || bl.iter().all(|(_, m)| m.is_integral())
        })
    }

    /// First non-integral entry out of a source of depth `<= p`:
    /// `(source slot, target slot, row, column, value)`.
    pub fn first_non_integral(&self, p: u32) -> Option<(usize, usize, usize, usize, Q)> {
        for (w, bl) in self.blocks.iter().enumerate() {
            if total(self.module.depth_of(w)) > p as i64 {
                continue;
            }
            for (t, m) in bl {
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        if !m.get(r, c).is_integer() {
                            return Some((w, *t, r, c, m.get(r, c).clone()));
                        }
                    }
                }
            }
        }
        None
    }

    /// Slots of total depth `<= p`, in slot order.
    fn slots_through(&self, p: u32) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&w| total(self.module.depth_of(w)) <= p as i64).collect()
    }

    /// The operator restricted to weights of depth `<= p` as one matrix over
    /// the concatenated integral bases (slot order).
    pub fn dense(&self, p: u32) -> QMatrix {
        let slots = self.slots_through(p);
        let mut offset = HashMap::new();
        let mut size = 0;
        for &w in &slots {
            offset.insert(w, size);
            size += self.module.dim_at(w);
        }
        let mut out = QMatrix::zeros(size, size);
        for &s in &slots {
            for (t, m) in &self.blocks[s] {
                let Some(&ro) = offset.get(t) else { continue };
                let co = offset[&s];
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        out.set(ro + r, co + c, m.get(r, c).clone());
                    }
                }
            }
        }
        out
    }

    fn eq_through(&self, other: &BlockOperator, p: u32) -> bool {
        self.slots_through(p).into_iter().all(|w| self.blocks[w] == other.blocks[w])
    }
}

/// Exact block equality on every source of depth `<= p`. Agreement on a
/// truncation is necessary, not sufficient, for equality in the group.
pub fn operator_eq(a: &BlockOperator, b: &BlockOperator, p: u32) -> Result<bool> {
    let valid = a.valid_depth().min(b.valid_depth());
    match valid {
        Some(v) if p <= v => Ok(a.eq_through(b, p)),
        _ => Err(Error::DepthOutOfRange { depth: vec![p], max: valid.unwrap_or(0) }),
    }
}

/// Evaluates letters and words on one module, caching the extended-Weyl
/// conjugators used for non-simple real roots.
pub struct Evaluator {
    module: Arc<TruncatedModule>,
    catalog: RootCatalog,
    conjugators: Mutex<HashMap<Vec<usize>, Arc<(BlockOperator, BlockOperator)>>>,
    root_vectors: Mutex<HashMap<RootVector, Arc<BlockOperator>>>,
}

fn add_simple(r: &RootVector, l: usize, by: i64) -> RootVector {
    let mut c = r.coords().to_vec();
    c[l] += by;
    RootVector(c)
}

/// In the irreducible `sl_2`-module `V(top)`, with `u_k = f^(k) v_top`, the
/// scalar `c` with `w~(1) u = c e^{-omega} u` (`omega < 0`) or
/// `w~(1) u = c f^{omega} u` (`omega >= 0`) for `u` of weight `omega`.
pub fn sl2_reflection_coefficient(top: i64, omega: i64) -> Q {
    static CACHE: Mutex<BTreeMap<(i64, i64), Q>> = Mutex::new(BTreeMap::new());
    if let Some(c) = CACHE.lock().unwrap().get(&(top, omega)) {
        return c.clone();
    }
    assert!(top >= omega.abs() && (top - omega) % 2 == 0, "weight {omega} not in V({top})");
    let a1 = crate::cartan::GeneralizedCartanMatrix::validate(vec![vec![2]]).expect("A1");
    let module = Arc::new(TruncatedModule::build(&a1, &[top], top as u32).expect("sl2 module"));
    let k = (top - omega) / 2;
    let src = module.weight_index(&[k]).expect("inside");
    let w = BlockOperator::wtilde(&module, 0, &Q::one()).expect("nonzero");
    let (target, wmat) = w.blocks_from(src)[0].clone();
    let n = omega.abs();
    let (ptarget, pmat) = if omega < 0 {
        module.e_divided(src, 0, n).expect("inside")
    } else {
        module.f_divided(src, 0, n).expect("inside")
    };
    assert_eq!(target, ptarget);
    let p = pmat.get(0, 0) * Q::from_integer(crate::rational::factorial(n as usize));
    let c = wmat.get(0, 0) / p;
    CACHE.lock().unwrap().insert((top, omega), c.clone());
    c
}

impl Evaluator {
    pub fn new(module: Arc<TruncatedModule>) -> Self {
        let catalog = RootCatalog::new(module.gcm().clone());
        Self::with_catalog(module, catalog)
    }

    pub fn with_catalog(module: Arc<TruncatedModule>, catalog: RootCatalog) -> Self {
        Evaluator {
            module,
            catalog,
            conjugators: Mutex::new(HashMap::new()),
            root_vectors: Mutex::new(HashMap::new()),
        }
    }

    pub fn module(&self) -> &Arc<TruncatedModule> {
        &self.module
    }

    pub fn catalog(&self) -> &RootCatalog {
        &self.catalog
    }

    pub fn identity(&self) -> BlockOperator {
        BlockOperator::identity(&self.module)
    }

    /// `(W~, W~^{-1})` for a Weyl word `s_{l_0} ... s_{l_r}`, with
    /// `W~ = w~_{l_0}(1) ... w~_{l_r}(1)`.
    fn conjugator(&self, word: &[usize]) -> Result<Arc<(BlockOperator, BlockOperator)>> {
        if let Some(c) = self.conjugators.lock().unwrap().get(word) {
            return Ok(c.clone());
        }
        let mut fwd = self.identity();
        let mut inv = self.identity();
        for &l in word {
            fwd = fwd.compose(&BlockOperator::wtilde(&self.module, l, &Q::one())?);
            inv = BlockOperator::wtilde(&self.module, l, &-Q::one())?.compose(&inv);
        }
        let pair = Arc::new((fwd, inv));
        self.conjugators.lock().unwrap().insert(word.to_vec(), pair.clone());
        Ok(pair)
    }

    /// `W~ chi_{+-alpha_i}(t) W~^{-1}` for the canonical witness
    /// `|alpha| = w alpha_i`, evaluated literally. Equal to [`Self::chi_real`]
    /// but far more wasteful of truncation depth.
    pub fn chi_real_by_conjugation(&self, root: &RootVector, t: &Q) -> Result<BlockOperator> {
        if root.coords().len() != self.module.rank() {
            return Err(Error::NotARealRoot(root.coords().to_vec()));
        }
        let sign = if root.is_positive() { Sign::Plus } else { Sign::Minus };
        if let Some(i) = root.as_simple().or_else(|| root.neg().as_simple()) {
            return BlockOperator::chi_simple(&self.module, i, sign, t);
        }
        let witness = self.catalog.witness(root)?;
        let inner = BlockOperator::chi_simple(&self.module, witness.simple, sign, t)?;
        let c = self.conjugator(&witness.word.0)?;
        Ok(c.0.compose(&inner).compose(&c.1))
    }

    /// The root vector `x_alpha = Ad(W~)(x_{+-alpha_i})` for the canonical
    /// witness of `|alpha|`.
    ///
    /// Built one reflection at a time: for `Y` in a real root space of
    /// `alpha_l`-weight `omega`, `Ad(w~_l(1)) Y = c (ad e_l)^{-omega} Y`
    /// (or `c (ad f_l)^{omega} Y`), where `c` is read off the irreducible
    /// `sl_2`-module whose top weight is fixed by the unbroken root string.
    pub fn root_vector(&self, root: &RootVector) -> Result<Arc<BlockOperator>> {
        if let Some(x) = self.root_vectors.lock().unwrap().get(root) {
            return Ok(x.clone());
        }
        let a = self.module.gcm();
        let n = a.rank();
        if root.coords().len() != n {
            return Err(Error::NotARealRoot(root.coords().to_vec()));
        }
        let positive = root.is_positive();
        let witness = self.catalog.witness(root)?;
        let base = RootVector::simple(n, witness.simple);
        let mut current = if positive { base } else { base.neg() };
        let mut x = if positive {
            BlockOperator::e_generator(&self.module, witness.simple)
        } else {
            BlockOperator::f_generator(&self.module, witness.simple)
        };
        for &l in witness.word.0.iter().rev() {
            let omega = current.pairing(a, l);
            let mut q = 0;
            while is_root(a, &add_simple(&current, l, q + 1)) {
                q += 1;
            }
            let top = omega + 2 * q;
            let c = sl2_reflection_coefficient(top, omega);
            let gen = if omega < 0 {
                BlockOperator::e_generator(&self.module, l)
            } else {
                BlockOperator::f_generator(&self.module, l)
            };
            for _ in 0..omega.abs() {
                x = gen.bracket(&x);
            }
            x = x.scale(&c);
            current = add_simple(&current, l, -omega);
        }
        debug_assert_eq!(&current, root);
        let x = Arc::new(x);
        self.root_vectors.lock().unwrap().insert(root.clone(), x.clone());
        Ok(x)
    }

    /// `chi_alpha(t) = exp(t x_alpha)` for a real root of either sign.
    pub fn chi_real(&self, root: &RootVector, t: &Q) -> Result<BlockOperator> {
        if root.coords().len() != self.module.rank() {
            return Err(Error::NotARealRoot(root.coords().to_vec()));
        }
        if let Some(i) = root.as_simple() {
            return BlockOperator::chi_simple(&self.module, i, Sign::Plus, t);
        }
        if let Some(i) = root.neg().as_simple() {
            return BlockOperator::chi_simple(&self.module, i, Sign::Minus, t);
        }
        let x = self.root_vector(root)?;
        BlockOperator::exp_root_vector(&x, root, t)
    }

    pub fn letter(&self, letter: &GeneratorLetter) -> Result<BlockOperator> {
        match letter {
            GeneratorLetter::ChiSimple { index, sign, t } => {
                BlockOperator::chi_simple(&self.module, *index, *sign, t)
            }
            GeneratorLetter::ChiReal { root, t } => self.chi_real(root, t),
            GeneratorLetter::Torus { index, t } => BlockOperator::torus(&self.module, *index, t),
            GeneratorLetter::WTilde { index, t } => BlockOperator::wtilde(&self.module, *index, t),
        }
    }

    /// The product of the letters (rightmost acts first).
    pub fn eval(&self, word: &GroupWord) -> Result<BlockOperator> {
        let mut acc = self.identity();
        for letter in word.letters() {
            acc = acc.compose(&self.letter(letter)?);
        }
        Ok(acc)
    }
}

/// A word evaluated diagonally on every member of a collection.
#[derive(Clone, Debug)]
pub struct CollectionOperator {
    pub parts: Vec<BlockOperator>,
}

impl CollectionOperator {
    pub fn eval(collection: &ModuleCollection, word: &GroupWord) -> Result<Self> {
        let parts = collection
            .modules()
            .iter()
            .map(|m| Evaluator::new(m.clone()).eval(word))
            .collect::<Result<Vec<_>>>()?;
        Ok(CollectionOperator { parts })
    }

    pub fn valid_depth(&self) -> Option<u32> {
        self.parts.iter().map(BlockOperator::valid_depth).min().flatten()
    }

    pub fn eq_through(&self, other: &CollectionOperator, p: u32) -> Result<bool> {
        if self.parts.len() != other.parts.len() {
            return Err(Error::IncompatibleCollection);
        }
        for (a, b) in self.parts.iter().zip(&other.parts) {
            if !operator_eq(a, b, p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Largest `q` with `lambda - (k - j beta)` a weight for all `j <= q`; these
/// depths are shallower than `k`, so always inside the truncation.
fn string_top(module: &TruncatedModule, k: &[i64], beta: &RootVector) -> i64 {
    let mut q = 0;
    loop {
        let up: Vec<i64> = k.iter().zip(beta.coords()).map(|(x, b)| x - (q + 1) * b).collect();
        if up.iter().any(|&x| x < 0) {
            return q;
        }
        match module.weight_index(&up) {
            Some(w) if module.dim_at(w) > 0 => q += 1,
            _ => return q,
        }
    }
}

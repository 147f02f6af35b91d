//! `G(Q) = G(Z) B(Q)` on words.
//!
//! The input is read left to right while maintaining `prefix = gamma * b`
//! with `gamma` integral and `b = u * h` (`u` a list of positive real-root
//! letters, `h` a torus element). Positive and torus letters are absorbed
//! into `b` (pushing `h` right with the torus character). A rank-one letter
//! `M` in `phi_i(SL_2(Q))` meeting a nontrivial `b` is written
//! `M = chi_i(p/r) w~_i(1) chi_i(rs) h_i(-r)`; the `alpha_i` letters of
//! `u chi_i(p/r)` are commuted to the front (only across letters whose sum
//! with `alpha_i` is not a root), the rest is conjugated across `w~_i(1)`,
//! and `chi_i(a) w~_i(1)` goes through the rank-one step. Negative non-simple
//! letters are first unfolded along their witness.
//!
//! No termination argument covers every word: a move budget bounds the
//! work, and a commutation that would need a nontrivial commutator stops the
//! rewriting with `MoveBudgetExceeded`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::sl2::{integral_word, letter_matrix, mat2, rank_one_index, sl2_step, Mat2};
use crate::cartan::GeneralizedCartanMatrix;
use crate::chevgroup::{operator_eq, BlockOperator, Evaluator, GeneratorLetter, GroupWord, Sign};
use crate::error::{Error, Result};
use crate::hwmod::{ModuleCollection, TruncatedModule};
use crate::rational::{pow, Q};
use crate::rootsys::{is_real_root, is_root, reflect, RootCatalog, RootVector};

pub const DEFAULT_MOVE_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub gamma: GroupWord,
    pub b: GroupWord,
    /// Depth through which `gamma * b = g` was checked on every module of the
    /// collection; `None` when no weight space could be checked.
    pub certificate_depth: Option<u32>,
    /// Rewriting moves spent.
    pub moves: usize,
}

/// The running `b = u * h`.
struct Borel {
    u: Vec<(RootVector, Q)>,
    h: Vec<Q>,
}

impl Borel {
    fn new(rank: usize) -> Self {
        Borel { u: Vec::new(), h: vec![Q::one(); rank] }
    }

    fn is_trivial(&self) -> bool {
        self.u.is_empty() && self.h.iter().all(|t| t.is_one())
    }

    /// `prod_j h_j^{<beta, alpha_j^vee>}`: the factor `h chi_beta(s) h^{-1} = chi_beta(factor s)`.
    fn character(&self, a: &GeneralizedCartanMatrix, beta: &RootVector) -> Q {
        self.h
            .iter()
            .enumerate()
            .fold(Q::one(), |acc, (j, t)| acc * pow(t, beta.pairing(a, j)))
    }

    fn push_positive(&mut self, a: &GeneralizedCartanMatrix, beta: RootVector, t: Q) {
        if t.is_zero() {
            return;
        }
        let s = self.character(a, &beta) * t;
        match self.u.last_mut() {
            Some((last, acc)) if *last == beta => {
                *acc += s;
                if acc.is_zero() {
                    self.u.pop();
                }
            }
            _ => self.u.push((beta, s)),
        }
    }

    fn push_torus(&mut self, i: usize, t: &Q) {
        self.h[i] = &self.h[i] * t;
    }

    fn to_word(&self) -> GroupWord {
        let n = self.h.len();
        let mut w = GroupWord::default();
        for (beta, t) in &self.u {
            w.push(root_letter(n, beta, t.clone()));
        }
        for (j, t) in self.h.iter().enumerate() {
            if !t.is_one() {
                w.push(GeneratorLetter::torus(j, t.clone()));
            }
        }
        w
    }
}

fn root_letter(rank: usize, beta: &RootVector, t: Q) -> GeneratorLetter {
    match beta.as_simple() {
        Some(i) => GeneratorLetter::chi(i, Sign::Plus, t),
        None => match beta.neg().as_simple() {
            Some(i) => GeneratorLetter::chi(i, Sign::Minus, t),
            None => {
                debug_assert_eq!(beta.coords().len(), rank);
                GeneratorLetter::ChiReal { root: beta.clone(), t }
            }
        },
    }
}

fn is_integral_letter(letter: &GeneratorLetter) -> bool {
    match letter {
        GeneratorLetter::ChiSimple { t, .. } | GeneratorLetter::ChiReal { t, .. } => t.is_integer(),
        GeneratorLetter::Torus { t, .. } | GeneratorLetter::WTilde { t, .. } => t.is_one() || (-t).is_one(),
    }
}

/// `sigma` with `w~_i(1)^{-1} chi_beta(t) w~_i(1) = chi_{s_i beta}(sigma t)`.
///
/// `Ad(w~_i(1)^{-1}) x_beta = (-1)^omega c (ad e_i or f_i)^{|omega|} x_beta`,
/// compared with the canonical `x_{s_i beta}` on one block of a small module.
pub fn conjugation_sign(a: &GeneralizedCartanMatrix, i: usize, beta: &RootVector) -> Result<Q> {
    type Cache = Mutex<HashMap<(Vec<Vec<i64>>, usize, RootVector), Q>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let key = (a.entries().to_vec(), i, beta.clone());
    if let Some(s) = CACHE.get_or_init(Default::default).lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let n = a.rank();
    let gamma = reflect(a, i, beta);
    let omega = beta.pairing(a, i);
    if !gamma.is_positive() || !beta.is_positive() {
        return Err(Error::NotPositiveLetter { position: 0 });
    }
    let depth = (gamma.height().max(beta.height()) + omega.abs() + 1) as u32;
    let module = Arc::new(TruncatedModule::build(a, &vec![1; n], depth)?);
    let ev = Evaluator::new(module.clone());
    let xb = ev.root_vector(beta)?;
    let xg = ev.root_vector(&gamma)?;
    let mut q = 0;
    while is_root(a, &shift(beta, i, q + 1)) {
        q += 1;
    }
    let c = crate::chevgroup::sl2_reflection_coefficient(omega + 2 * q, omega);
    let gen = if omega < 0 {
        BlockOperator::e_generator(&module, i)
    } else {
        BlockOperator::f_generator(&module, i)
    };
    let mut z = (*xb).clone();
    for _ in 0..omega.abs() {
        z = gen.bracket(&z);
    }
    let parity = if omega % 2 == 0 { Q::one() } else { -Q::one() };
    let z = z.scale(&(c * parity));
    let sign = root_ratio(&module, &z, &xg, &gamma)?;
    debug_assert!(sign.is_one() || (-&sign).is_one());
    CACHE.get_or_init(Default::default).lock().unwrap().insert(key, sign.clone());
    Ok(sign)
}

/// The scalar `c` with `z = c x_gamma`, read on the block from depth
/// `gamma` to `v_lambda` (nonzero for a regular `lambda`).
fn root_ratio(module: &TruncatedModule, z: &BlockOperator, xg: &BlockOperator, gamma: &RootVector) -> Result<Q> {
    let fail = || Error::TruncationOverflow { context: format!("root-space probe for {gamma} is degenerate") };
    let src = module.weight_index(gamma.coords()).ok_or_else(fail)?;
    if !z.is_complete_at(src) || !xg.is_complete_at(src) {
        return Err(fail());
    }
    let block = |op: &BlockOperator| op.blocks_from(src).iter().find(|(t, _)| *t == 0).map(|(_, m)| m.clone());
    let (zb, gb) = block(z).zip(block(xg)).ok_or_else(fail)?;
    let c = zb.entries().zip(gb.entries()).find(|(_, g)| !g.is_zero()).map(|(z, g)| z / g).ok_or_else(fail)?;
    debug_assert_eq!(zb, gb.scale(&c));
    Ok(c)
}

/// `N` with `[x_delta, e_i] = N x_{delta + alpha_i}`.
pub fn structure_constant(a: &GeneralizedCartanMatrix, delta: &RootVector, i: usize) -> Result<Q> {
    type Cache = Mutex<HashMap<(Vec<Vec<i64>>, usize, RootVector), Q>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let key = (a.entries().to_vec(), i, delta.clone());
    if let Some(s) = CACHE.get_or_init(Default::default).lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let gamma = shift(delta, i, 1);
    let module = Arc::new(TruncatedModule::build(a, &vec![1; a.rank()], gamma.height() as u32)?);
    let ev = Evaluator::new(module.clone());
    let z = ev.root_vector(delta)?.bracket(&BlockOperator::e_generator(&module, i));
    let n = root_ratio(&module, &z, &*ev.root_vector(&gamma)?, &gamma)?;
    CACHE.get_or_init(Default::default).lock().unwrap().insert(key, n.clone());
    Ok(n)
}

fn shift(beta: &RootVector, i: usize, k: i64) -> RootVector {
    let mut c = beta.coords().to_vec();
    c[i] += k;
    RootVector(c)
}

struct Factorizer<'a> {
    a: &'a GeneralizedCartanMatrix,
    catalog: RootCatalog,
    gamma: GroupWord,
    b: Borel,
    moves: usize,
    budget: usize,
}

impl Factorizer<'_> {
    fn spend(&mut self, k: usize, what: &str, subword: &dyn Fn() -> String) -> Result<()> {
        self.moves += k;
        if self.moves > self.budget {
            return Err(Error::MoveBudgetExceeded {
                budget: self.budget,
                reason: format!("budget spent while {what}"),
                subword: subword(),
            });
        }
        Ok(())
    }

    fn letter(&mut self, letter: &GeneratorLetter) -> Result<()> {
        let n = self.a.rank();
        let show = || letter.to_string();
        self.spend(1, "reading letters", &show)?;
        if self.b.is_trivial() && is_integral_letter(letter) {
            self.gamma.push(letter.clone());
            return Ok(());
        }
        match letter {
            GeneratorLetter::Torus { index, t } => {
                self.b.push_torus(*index, t);
                Ok(())
            }
            GeneratorLetter::ChiSimple { index, sign: Sign::Plus, t } => {
                self.b.push_positive(self.a, RootVector::simple(n, *index), t.clone());
                Ok(())
            }
            GeneratorLetter::ChiReal { root, t } if root.is_positive() => {
                self.b.push_positive(self.a, root.clone(), t.clone());
                Ok(())
            }
            GeneratorLetter::ChiReal { root, t } => {
                if t.is_zero() {
                    return Ok(());
                }
                if let Some(i) = root.neg().as_simple() {
                    return self.letter(&GeneratorLetter::chi(i, Sign::Minus, t.clone()));
                }
                // chi_{-beta}(t) = W~ chi_{-alpha_k}(t) W~^{-1}
                let witness = self.catalog.witness(root)?;
                let mut unfolded: Vec<GeneratorLetter> =
                    witness.word.0.iter().map(|&l| GeneratorLetter::wtilde(l, Q::one())).collect();
                unfolded.push(GeneratorLetter::chi(witness.simple, Sign::Minus, t.clone()));
                unfolded.extend(witness.word.0.iter().rev().map(|&l| GeneratorLetter::wtilde(l, -Q::one())));
                for l in &unfolded {
                    self.letter(l)?;
                }
                Ok(())
            }
            _ => {
                let i = rank_one_index(letter).expect("rank-one letter");
                let m = letter_matrix(letter, i).expect("rank-one letter");
                if self.b.is_trivial() {
                    self.start(i, &m)
                } else {
                    self.rank_one(i, &m, &show)
                }
            }
        }
    }

    /// `b = 1`: one rank-one step.
    fn start(&mut self, i: usize, m: &Mat2) -> Result<()> {
        let step = sl2_step(m)?;
        self.gamma = self.gamma.concat(&integral_word(&step.gamma, i));
        self.push_upper(i, &step.upper);
        Ok(())
    }

    /// Appends `phi_i((x, y; 0, 1/x)) = chi_i(x y) h_i(x)` to `b`.
    fn push_upper(&mut self, i: usize, upper: &Mat2) {
        let n = self.a.rank();
        let x = upper[0][0].clone();
        self.b.push_positive(self.a, RootVector::simple(n, i), &x * &upper[0][1]);
        self.b.push_torus(i, &x);
    }

    /// `b <- b * phi_i(m)` for a nontrivial `b`.
    fn rank_one(&mut self, i: usize, m: &Mat2, show: &dyn Fn() -> String) -> Result<()> {
        let n = self.a.rank();
        // h phi_i(m) h^{-1} = phi_i((p, c q; r / c, s)) with c the alpha_i-character of h
        let c = self.b.character(self.a, &RootVector::simple(n, i));
        let (p, q, r, s) = (m[0][0].clone(), &m[0][1] * &c, &m[1][0] / &c, m[1][1].clone());
        let h = std::mem::replace(&mut self.b.h, vec![Q::one(); n]);
        if r.is_zero() {
            // (p, q; 0, 1/p) = chi_i(p q) h_i(p)
            self.b.push_positive(self.a, RootVector::simple(n, i), &p * &q);
            self.b.push_torus(i, &p);
        } else {
            // chi_i(p/r) w~_i(1) chi_i(r s) h_i(-r)
            self.b.push_positive(self.a, RootVector::simple(n, i), &p / &r);
            self.wtilde_core(i, show)?;
            self.b.push_positive(self.a, RootVector::simple(n, i), &r * &s);
            self.b.push_torus(i, &-r);
        }
        for (j, t) in h.iter().enumerate() {
            self.b.push_torus(j, t);
        }
        Ok(())
    }

    /// `u <- u * w~_i(1)` with `h` already cleared.
    fn wtilde_core(&mut self, i: usize, show: &dyn Fn() -> String) -> Result<()> {
        let n = self.a.rank();
        let simple = RootVector::simple(n, i);
        let u = std::mem::take(&mut self.b.u);
        let mut lead = Q::zero();
        let mut rest: Vec<(RootVector, Q)> = Vec::new();
        for (beta, t) in u {
            if beta != simple {
                rest.push((beta, t));
                continue;
            }
            // carry chi_i(t) to the front, right to left
            let mut k = rest.len();
            while k > 0 {
                k -= 1;
                let (delta, s) = rest[k].clone();
                let up = shift(&delta, i, 1);
                self.spend(1, "commuting simple letters", show)?;
                if !is_root(self.a, &up) {
                    continue;
                }
                // chi_delta(s) chi_i(t) = chi_i(t) chi_delta(s) chi_{delta+alpha_i}(N s t)
                // when [x_delta, e_i] commutes with both
                let central = is_real_root(self.a, &up)
                    && !is_root(self.a, &shift(&up, i, 1))
                    && !is_root(self.a, &RootVector(up.coords().iter().zip(delta.coords()).map(|(x, y)| x + y).collect()));
                if !central {
                    return Err(Error::MoveBudgetExceeded {
                        budget: self.budget,
                        reason: format!("no applicable move: commutator of {delta} and alpha_{} is not a single root letter", i + 1),
                        subword: format!("xr({delta},{s})*x(+{},{t}) in `{}`", i + 1, show()),
                    });
                }
                let n = structure_constant(self.a, &delta, i)?;
                rest.insert(k + 1, (up, n * &s * &t));
            }
            lead += t;
        }
        // chi_i(lead) w~_i(1) = (-lead, 1; -1, 0)
        let step = sl2_step(&mat2(-lead, Q::one(), -Q::one(), Q::zero()))?;
        self.gamma = self.gamma.concat(&integral_word(&step.gamma, i));
        self.spend(rest.len() + 1, "conjugating by w~", show)?;
        self.push_upper(i, &step.upper);
        for (beta, t) in rest {
            let sigma = conjugation_sign(self.a, i, &beta)?;
            self.b.push_positive(self.a, reflect(self.a, i, &beta), sigma * t);
        }
        Ok(())
    }
}

/// Factors `g = gamma * b` with `gamma` integral and `b` in `B(Q)`.
///
/// The identity is certified on every module of `collection`: after
/// cancelling the longest common leading sub-word of `gamma` and `g` (left
/// multiplication is injective), the remainders are evaluated and compared
/// through the deepest fully determined depth.
pub fn bruhat_factor(collection: &ModuleCollection, g: &GroupWord, budget: usize) -> Result<Factorization> {
    let a = collection.gcm();
    g.validate(a)?;
    let mut f = Factorizer {
        a,
        catalog: RootCatalog::new(a.clone()),
        gamma: GroupWord::default(),
        b: Borel::new(a.rank()),
        moves: 0,
        budget,
    };
    for letter in g.letters() {
        f.letter(letter)?;
    }
    let gamma = f.gamma;
    let b = f.b.to_word();
    let certificate_depth = certify(collection, g, &gamma, &b)?;
    Ok(Factorization { gamma, b, certificate_depth, moves: f.moves })
}

/// Depth through which `gamma * b` and `g` agree on all modules.
pub fn certify(collection: &ModuleCollection, g: &GroupWord, gamma: &GroupWord, b: &GroupWord) -> Result<Option<u32>> {
    let common = g.letters().iter().zip(gamma.letters()).take_while(|(x, y)| x == y).count();
    let lhs = GroupWord(gamma.letters()[common..].to_vec()).concat(b);
    let rhs = GroupWord(g.letters()[common..].to_vec());
    let mut depth: Option<u32> = Some(collection.depth_bound() as u32);
    for module in collection.modules() {
        let ev = Evaluator::new(module.clone());
        let (x, y) = (ev.eval(&lhs)?, ev.eval(&rhs)?);
        let p = match (x.valid_depth(), y.valid_depth()) {
            (Some(p), Some(q)) => p.min(q),
            _ => return Ok(None),
        };
        if !operator_eq(&x, &y, p)? {
            return Err(Error::TruncationOverflow {
                context: format!("factorization check failed on V^{:?}: `{gamma}` * `{b}` vs `{g}`", module.lambda()),
            });
        }
        depth = depth.map(|d| d.min(p));
    }
    Ok(depth)
}

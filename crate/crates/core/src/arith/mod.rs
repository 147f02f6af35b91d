//! Integrality of group elements: Z-form stabilizers, the two-weight probe
//! for a single root subgroup, parameter recovery for ordered unipotent
//! words, the factorization `G(Q) = G(Z) B(Q)`, and reduction to unit
//! generators.

mod bruhat;
mod reduce;
mod sl2;

pub use bruhat::{bruhat_factor, Factorization, DEFAULT_MOVE_BUDGET};
pub use reduce::{reduce_to_unit_generators, UnitLetter, UnitWord};
pub use sl2::{integral_word, letter_matrix, mat2, mat2_det, mat2_mul, sl2_step, upper_word, word_matrix, Mat2, Sl2Step};

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cartan::GeneralizedCartanMatrix;
use crate::chevgroup::{BlockOperator, Evaluator, GeneratorLetter, GroupWord, Sign};
use crate::error::{Error, Result};
use crate::hwmod::{ModuleCollection, TruncatedModule};
use crate::rational::Q;
use crate::rootsys::{coroot_pairing, root_order_cmp, ModuleWeight, RootCatalog, RootVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Integral,
    NonIntegral,
}

/// Where a non-integral coefficient was seen.
#[derive(Clone, Debug, PartialEq)]
pub struct NonIntegralWitness {
    /// Highest weight of the module probed.
    pub lambda: Vec<i64>,
    /// Depth of the probe vector's weight and its index in the integral basis.
    pub source_depth: Vec<i64>,
    pub probe_vector: usize,
    /// Depth of the weight space holding the bad coordinate, and the coordinate.
    pub target_depth: Vec<i64>,
    pub coordinate: usize,
    pub coefficient: Q,
    /// Whether the coefficient came from the inverse word.
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityVerdict {
    pub verdict: Verdict,
    pub witness: Option<NonIntegralWitness>,
}

impl IntegralityVerdict {
    pub fn integral() -> Self {
        IntegralityVerdict { verdict: Verdict::Integral, witness: None }
    }

    pub fn non_integral(witness: NonIntegralWitness) -> Self {
        IntegralityVerdict { verdict: Verdict::NonIntegral, witness: Some(witness) }
    }

    pub fn is_integral(&self) -> bool {
        self.verdict == Verdict::Integral
    }
}

fn find_non_integral(op: &BlockOperator, p: u32, inverse: bool) -> Option<NonIntegralWitness> {
    let m = op.module();
    op.first_non_integral(p).map(|(s, t, r, c, value)| NonIntegralWitness {
        lambda: m.lambda().to_vec(),
        source_depth: m.depth_of(s).to_vec(),
        probe_vector: c,
        target_depth: m.depth_of(t).to_vec(),
        coordinate: r,
        coefficient: value,
        inverse,
    })
}

/// Whether `word` and its inverse map every integral basis vector of depth
/// `<= p` (in every module) to an integral vector.
pub fn stabilizes_zform(collection: &ModuleCollection, word: &GroupWord, p: u32) -> Result<IntegralityVerdict> {
    word.validate(collection.gcm())?;
    let inverse = word.inverse();
    for module in collection.modules() {
        let ev = Evaluator::new(module.clone());
        for (w, is_inverse) in [(word, false), (&inverse, true)] {
            let op = ev.eval(w)?;
            if op.valid_depth().is_none_or(|v| v < p) {
                return Err(Error::TruncationOverflow {
                    context: format!(
                        "`{w}` on V^{:?} is only determined to depth {:?}, {p} requested",
                        module.lambda(),
                        op.valid_depth()
                    ),
                });
            }
            if let Some(witness) = find_non_integral(&op, p, is_inverse) {
                return Ok(IntegralityVerdict::non_integral(witness));
            }
        }
    }
    Ok(IntegralityVerdict::integral())
}

/// One probe of [`lemma62_probe`]: the `v_lambda`-coefficient of
/// `chi_alpha(t) x_{-alpha} v_lambda`, which equals `t <lambda, alpha^vee>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReading {
    pub lambda: Vec<i64>,
    pub pairing: i64,
    pub coefficient: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma62Report {
    pub verdict: IntegralityVerdict,
    pub probes: Vec<ProbeReading>,
}

fn ones(n: usize, c: i64) -> Vec<i64> {
    vec![c; n]
}

/// The probe pair `lambda = c (1, ..., 1)` and `lambda + w omega_i` for a
/// positive real root `alpha = w alpha_i`, with the least `c >= 1` keeping
/// both dominant. Their pairings with `alpha^vee` differ by one.
pub fn probe_weights(catalog: &RootCatalog, alpha: &RootVector) -> Result<(Vec<i64>, Vec<i64>)> {
    let a = catalog.gcm();
    let n = a.rank();
    let witness = catalog.witness(alpha)?;
    let mut omega = vec![0; n];
    omega[witness.simple] = 1;
    let shift = witness.word.apply_weight(a, &ModuleWeight::highest(omega)).coordinates(a);
    let mut c = 1;
    loop {
        let lambda = ones(n, c);
        let second: Vec<i64> = lambda.iter().zip(&shift).map(|(x, y)| x + y).collect();
        if second.iter().all(|&x| x >= 0) {
            return Ok((lambda, second));
        }
        c += 1;
    }
}

/// Reads the `v_lambda`-coefficient of `op (x_{-alpha} v_lambda)` on `ev`'s module.
fn top_coefficient(ev: &Evaluator, op: &BlockOperator, alpha: &RootVector) -> Result<Q> {
    let m = ev.module();
    let xneg = ev.root_vector(&alpha.neg())?;
    let src = m.weight_index(alpha.coords()).ok_or_else(|| Error::TruncationOverflow {
        context: format!("root {alpha} lies below the truncation of V^{:?}", m.lambda()),
    })?;
    let v = xneg
        .blocks_from(0)
        .iter()
        .find(|(t, _)| *t == src)
        .map(|(_, blk)| blk.column(0))
        .unwrap_or_else(|| vec![Q::zero(); m.dim_at(src)]);
    if !op.is_complete_at(src) {
        return Err(Error::TruncationOverflow {
            context: format!("operator not determined at depth {:?} of V^{:?}", alpha.coords(), m.lambda()),
        });
    }
    Ok(op
        .apply(src, &v)
        .into_iter()
        .find(|(t, _)| *t == 0)
        .map(|(_, img)| img[0].clone())
        .unwrap_or_else(Q::zero))
}

/// Decides `t in Z` for `chi_alpha(t)` from the two coprime probes.
///
/// A negative root is probed through its positive: `chi_{-beta}(t)` is the
/// conjugate of `chi_beta(+-t)` by the integral element `w~_beta(1)`.
pub fn lemma62_probe(a: &GeneralizedCartanMatrix, alpha: &RootVector, t: &Q) -> Result<Lemma62Report> {
    let catalog = RootCatalog::new(a.clone());
    lemma62_probe_with(&catalog, alpha, t)
}

pub fn lemma62_probe_with(catalog: &RootCatalog, alpha: &RootVector, t: &Q) -> Result<Lemma62Report> {
    let a = catalog.gcm();
    let beta = if alpha.is_negative() { alpha.neg() } else { alpha.clone() };
    let (first, second) = probe_weights(catalog, &beta)?;
    let mut probes = Vec::new();
    let mut witness = None;
    for lambda in [first, second] {
        let module = Arc::new(TruncatedModule::build(a, &lambda, beta.height() as u32)?);
        let ev = Evaluator::with_catalog(module, catalog.clone());
        let chi = ev.chi_real(&beta, t)?;
        let coefficient = top_coefficient(&ev, &chi, &beta)?;
        let pairing = coroot_pairing(a, &lambda, &beta)?;
        debug_assert_eq!(coefficient, t * Q::from_integer(pairing.into()));
        if witness.is_none() && !coefficient.is_integer() {
            witness = Some(NonIntegralWitness {
                lambda: lambda.clone(),
                source_depth: beta.coords().to_vec(),
                probe_vector: 0,
                target_depth: vec![0; a.rank()],
                coordinate: 0,
                coefficient: coefficient.clone(),
                inverse: false,
            });
        }
        probes.push(ProbeReading { lambda, pairing, coefficient });
    }
    let verdict = match witness {
        Some(w) => IntegralityVerdict::non_integral(w),
        None => IntegralityVerdict::integral(),
    };
    Ok(Lemma62Report { verdict, probes })
}

/// Parameters recovered from an ordered positive word.
#[derive(Clone, Debug, PartialEq)]
pub struct UnipotentReport {
    /// `t_1, ..., t_n` in word order.
    pub params: Vec<Q>,
    pub verdict: IntegralityVerdict,
    /// 0-based position of the first non-integral parameter.
    pub culprit: Option<usize>,
    /// Whether stripping every recovered letter left the identity on all probes.
    pub residual_identity: bool,
}

/// Positive root of a `chi` letter, or `NotPositiveLetter`.
fn positive_root(letter: &GeneratorLetter, rank: usize, position: usize) -> Result<RootVector> {
    match letter {
        GeneratorLetter::ChiSimple { index, sign: Sign::Plus, .. } => Ok(RootVector::simple(rank, *index)),
        GeneratorLetter::ChiReal { root, .. } if root.is_positive() => Ok(root.clone()),
        _ => Err(Error::NotPositiveLetter { position }),
    }
}

/// Recovers `t_1, ..., t_n` from `u = chi_{beta_1}(t_1) ... chi_{beta_n}(t_n)`
/// with `beta_1 > ... > beta_n`, last letter first: the `v_lambda`-coefficient
/// of `u x_{-beta_n} v_lambda` is `t_n <lambda, beta_n^vee>`, after which
/// `chi_{beta_n}(-t_n)` is stripped on the right.
pub fn unipotent_certificate(collection: &ModuleCollection, u: &GroupWord) -> Result<UnipotentReport> {
    let a = collection.gcm();
    let n = a.rank();
    u.validate(a)?;
    let roots = u
        .letters()
        .iter()
        .enumerate()
        .map(|(pos, l)| positive_root(l, n, pos))
        .collect::<Result<Vec<_>>>()?;
    for pos in 1..roots.len() {
        if root_order_cmp(&roots[pos - 1], &roots[pos]) != Ordering::Greater {
            return Err(Error::NotOrderedDescending { position: pos });
        }
    }
    let evaluators: Vec<Evaluator> = collection.modules().iter().map(|m| Evaluator::new(m.clone())).collect();
    let mut ops = evaluators.iter().map(|ev| ev.eval(u)).collect::<Result<Vec<_>>>()?;
    let mut params = vec![Q::zero(); roots.len()];
    for pos in (0..roots.len()).rev() {
        let beta = &roots[pos];
        let chosen = evaluators.iter().position(|ev| {
            let m = ev.module();
            m.depth_bound() >= beta.height()
                && coroot_pairing(a, m.lambda(), beta).is_ok_and(|p| p != 0)
        });
        let Some(k) = chosen else {
            return Err(Error::TruncationOverflow {
                context: format!("no probe module sees root {beta} (depth or pairing)"),
            });
        };
        let ev = &evaluators[k];
        let pairing = coroot_pairing(a, ev.module().lambda(), beta)?;
        let t = top_coefficient(ev, &ops[k], beta)? / Q::from_integer(pairing.into());
        for (op, ev) in ops.iter_mut().zip(&evaluators) {
            *op = op.compose(&ev.chi_real(beta, &-&t)?);
        }
        params[pos] = t;
    }
    let residual_identity = ops.iter().zip(&evaluators).all(|(op, ev)| {
        let id = ev.identity();
        op.valid_depth().is_some_and(|p| crate::chevgroup::operator_eq(op, &id, p).unwrap_or(false))
    });
    let culprit = params.iter().position(|t| !t.is_integer());
    let verdict = match culprit {
        None => IntegralityVerdict::integral(),
        Some(pos) => IntegralityVerdict::non_integral(NonIntegralWitness {
            lambda: collection.modules()[0].lambda().to_vec(),
            source_depth: roots[pos].coords().to_vec(),
            probe_vector: 0,
            target_depth: vec![0; n],
            coordinate: 0,
            coefficient: params[pos].clone(),
            inverse: false,
        }),
    };
    Ok(UnipotentReport { params, verdict, culprit, residual_identity })
}

/// Whether every parameter of `word` is integral in the sense of `G(Z)`:
/// integer `chi` parameters, torus and extended-Weyl parameters `+-1`.
pub fn is_integral_word(word: &GroupWord) -> bool {
    word.letters().iter().all(|l| match l {
        GeneratorLetter::ChiSimple { t, .. } | GeneratorLetter::ChiReal { t, .. } => t.is_integer(),
        GeneratorLetter::Torus { t, .. } | GeneratorLetter::WTilde { t, .. } => {
            t.is_one() || (-t).is_one()
        }
    })
}

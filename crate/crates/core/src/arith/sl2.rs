//! The rank-one Bruhat step `SL_2(Q) = SL_2(Z) B(Q)` and 2x2 bookkeeping for
//! the image of `phi_i: SL_2 -> G`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chevgroup::{GeneratorLetter, GroupWord, Sign};
use crate::error::{Error, Result};
use crate::rational::{to_canonical, Q};

/// A 2x2 rational matrix, row-major.
pub type Mat2 = [[Q; 2]; 2];

pub fn mat2(a: Q, b: Q, c: Q, d: Q) -> Mat2 {
    [[a, b], [c, d]]
}

pub fn mat2_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_det(x: &Mat2) -> Q {
    &x[0][0] * &x[1][1] - &x[0][1] * &x[1][0]
}

pub fn mat2_identity() -> Mat2 {
    mat2(Q::one(), Q::zero(), Q::zero(), Q::one())
}

fn int(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// The matrix of a rank-one letter under `phi_i`, or `None` for letters of
/// another index or real-root letters.
pub fn letter_matrix(letter: &GeneratorLetter, i: usize) -> Option<Mat2> {
    let (one, zero) = (Q::one(), Q::zero());
    match letter {
        GeneratorLetter::ChiSimple { index, sign: Sign::Plus, t } if *index == i => {
            Some(mat2(one.clone(), t.clone(), zero, one))
        }
        GeneratorLetter::ChiSimple { index, sign: Sign::Minus, t } if *index == i => {
            Some(mat2(one.clone(), zero, t.clone(), one))
        }
        GeneratorLetter::Torus { index, t } if *index == i && !t.is_zero() => {
            Some(mat2(t.clone(), zero.clone(), zero, t.recip()))
        }
        GeneratorLetter::WTilde { index, t } if *index == i && !t.is_zero() => {
            Some(mat2(zero.clone(), t.clone(), -t.recip(), zero))
        }
        _ => None,
    }
}

/// The simple index of a rank-one letter.
pub fn rank_one_index(letter: &GeneratorLetter) -> Option<usize> {
    match letter {
        GeneratorLetter::ChiSimple { index, .. }
        | GeneratorLetter::Torus { index, .. }
        | GeneratorLetter::WTilde { index, .. } => Some(*index),
        GeneratorLetter::ChiReal { .. } => None,
    }
}

/// Result of [`sl2_step`]: `input = gamma * upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Step {
    pub gamma: [[BigInt; 2]; 2],
    pub upper: Mat2,
}

impl Sl2Step {
    pub fn gamma_q(&self) -> Mat2 {
        let g = &self.gamma;
        mat2(int(g[0][0].clone()), int(g[0][1].clone()), int(g[1][0].clone()), int(g[1][1].clone()))
    }
}

/// Writes a determinant-one rational matrix as (integral) * (upper triangular).
///
/// An integral input is returned as `gamma` with `upper = 1`. Otherwise the
/// coprime pair `(c, d)` with `c p + d r = 0` is read off `p/r` in lowest
/// terms (`r = 0` gives `(0, 1)`, `p = 0` gives `(1, 0)`), completed to a row
/// operation `R = (a, b; c, d)` of determinant one with `0 <= a < |c|`, and
/// `gamma = R^{-1}`, `upper = R * input`.
pub fn sl2_step(m: &Mat2) -> Result<Sl2Step> {
    let det = mat2_det(m);
    if !det.is_one() {
        return Err(Error::NotDeterminantOne(to_canonical(&det)));
    }
    if m.iter().flatten().all(|x| x.is_integer()) {
        let g = |i: usize, j: usize| m[i][j].to_integer();
        return Ok(Sl2Step { gamma: [[g(0, 0), g(0, 1)], [g(1, 0), g(1, 1)]], upper: mat2_identity() });
    }
    let (p, r) = (&m[0][0], &m[1][0]);
    let (c, d) = if r.is_zero() {
        (BigInt::zero(), BigInt::one())
    } else if p.is_zero() {
        (BigInt::one(), BigInt::zero())
    } else {
        // p/r = num/den in lowest terms, den > 0
        let ratio = p / r;
        (ratio.denom().clone(), -ratio.numer().clone())
    };
    let (a, b) = if c.is_zero() {
        // d = +-1
        (d.clone(), BigInt::zero())
    } else {
        // a d = 1 (mod c), 0 <= a < |c|
        let modulus = c.abs();
        let ext = d.extended_gcd(&modulus);
        debug_assert!(ext.gcd.is_one());
        let a = ext.x.mod_floor(&modulus);
        let b = (&a * &d - BigInt::one()) / &c;
        (a, b)
    };
    debug_assert_eq!(&a * &d - &b * &c, BigInt::one());
    let row_op = mat2(int(a.clone()), int(b.clone()), int(c.clone()), int(d.clone()));
    let upper = mat2_mul(&row_op, m);
    debug_assert!(upper[1][0].is_zero());
    Ok(Sl2Step { gamma: [[d, -b], [-c, a]], upper })
}

/// A word over `chi_{+-alpha_i}` with integer parameters and `h_i(-1)` that
/// `phi_i` sends to the given `SL_2(Z)` matrix (Euclid on the first column).
pub fn integral_word(g: &[[BigInt; 2]; 2], i: usize) -> GroupWord {
    let mut m = g.clone();
    let mut ops: Vec<GeneratorLetter> = Vec::new();
    let q = |x: BigInt| Q::from_integer(x);
    loop {
        let (a, c) = (m[0][0].clone(), m[1][0].clone());
        if c.is_zero() {
            break;
        }
        if a.is_zero() {
            // c = +-1 here; row1 += c row2 puts 1 in the corner
            let (x, y) = (&c * &m[1][0], &c * &m[1][1]);
            m[0][0] += x;
            m[0][1] += y;
            ops.push(GeneratorLetter::chi(i, Sign::Plus, q(c)));
        } else if a.abs() > c.abs() {
            let k = a.div_floor(&c);
            // row1 -= k row2
            let (x, y) = (&k * &m[1][0], &k * &m[1][1]);
            m[0][0] -= x;
            m[0][1] -= y;
            ops.push(GeneratorLetter::chi(i, Sign::Plus, q(-k)));
        } else {
            let k = c.div_floor(&a);
            let (x, y) = (&k * &m[0][0], &k * &m[0][1]);
            m[1][0] -= x;
            m[1][1] -= y;
            ops.push(GeneratorLetter::chi(i, Sign::Minus, q(-k)));
        }
    }
    // ops_k ... ops_1 g = (a, b; 0, a) with a = +-1
    let mut word = GroupWord::default();
    for letter in ops.iter().map(GeneratorLetter::inverse) {
        if let (Some(GeneratorLetter::ChiSimple { sign, t, .. }), GeneratorLetter::ChiSimple { sign: s2, t: t2, .. }) =
            (word.0.last_mut(), &letter)
        {
            if sign == s2 {
                *t += t2;
                continue;
            }
        }
        word.push(letter);
    }
    let a = m[0][0].clone();
    let b = m[0][1].clone();
    if a.is_negative() {
        word.push(GeneratorLetter::torus(i, -Q::one()));
    }
    let s = &a * &b;
    if !s.is_zero() {
        word.push(GeneratorLetter::chi(i, Sign::Plus, q(s)));
    }
    word
}

/// The product of `phi_i` images of a word of index-`i` letters.
pub fn word_matrix(word: &GroupWord, i: usize) -> Option<Mat2> {
    word.letters().iter().try_fold(mat2_identity(), |acc, l| Some(mat2_mul(&acc, &letter_matrix(l, i)?)))
}

/// `(x, y; 0, 1/x)` as `h_i(x) chi_{alpha_i}(y/x)`.
pub fn upper_word(upper: &Mat2, i: usize) -> GroupWord {
    let x = upper[0][0].clone();
    let s = &upper[0][1] / &x;
    let mut w = GroupWord::default();
    if !x.is_one() {
        w.push(GeneratorLetter::torus(i, x));
    }
    if !s.is_zero() {
        w.push(GeneratorLetter::chi(i, Sign::Plus, s));
    }
    w
}

//! Rewriting integral words over the unit generators `chi_{+-alpha_i}(1)`.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::cartan::GeneralizedCartanMatrix;
use crate::chevgroup::{GeneratorLetter, GroupWord, Sign};
use crate::error::{Error, Result};
use crate::rational::{to_canonical, Q};
use crate::rootsys::RootCatalog;

/// `chi_{sign alpha_index}(1)`, or its inverse `chi_{sign alpha_index}(-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitLetter {
    pub index: usize,
    pub sign: Sign,
    pub inverse: bool,
}

impl UnitLetter {
    fn new(index: usize, sign: Sign, inverse: bool) -> Self {
        UnitLetter { index, sign, inverse }
    }

    pub fn to_letter(self) -> GeneratorLetter {
        let t = if self.inverse { -Q::one() } else { Q::one() };
        GeneratorLetter::chi(self.index, self.sign, t)
    }
}

impl fmt::Display for UnitLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "x({s}{},1)", self.index + 1)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnitWord(pub Vec<UnitLetter>);

impl UnitWord {
    pub fn letters(&self) -> &[UnitLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The same element as an ordinary word, `chi(-1)` standing for each inverse.
    pub fn to_group_word(&self) -> GroupWord {
        self.0.iter().map(|l| l.to_letter()).collect()
    }
}

impl fmt::Display for UnitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn non_integral(position: usize, t: &Q) -> Error {
    Error::NonIntegralParameter { position, value: to_canonical(t) }
}

struct Emitter(Vec<UnitLetter>);

impl Emitter {
    /// `chi_{sign alpha_i}(n)` as `|n|` unit letters.
    fn chi(&mut self, i: usize, sign: Sign, n: i64) {
        let inverse = n < 0;
        for _ in 0..n.unsigned_abs() {
            self.0.push(UnitLetter::new(i, sign, inverse));
        }
    }

    /// `w~_i(e) = chi_i(e) chi_{-i}(-e) chi_i(e)` for `e = +-1`.
    fn wtilde(&mut self, i: usize, e: i64) {
        self.chi(i, Sign::Plus, e);
        self.chi(i, Sign::Minus, -e);
        self.chi(i, Sign::Plus, e);
    }
}

fn small_integer(t: &Q, position: usize) -> Result<i64> {
    if !t.is_integer() {
        return Err(non_integral(position, t));
    }
    t.to_integer().to_i64().ok_or_else(|| Error::NonIntegralParameter {
        position,
        value: format!("{} (too large to expand)", to_canonical(t)),
    })
}

fn unit(t: &Q, position: usize) -> Result<i64> {
    if t.is_one() {
        Ok(1)
    } else if (-t).is_one() {
        Ok(-1)
    } else {
        Err(non_integral(position, t))
    }
}

/// Expands an integral word into unit generators.
///
/// Torus letters need parameter `+-1` (`h_i(-1) = w~_i(-1) w~_i(-1)`), as do
/// `w~` letters; real-root letters are expanded through the witness
/// conjugation `chi_beta(t) = W~ chi_{+-alpha_i}(t) W~^{-1}`. Positions in
/// errors are 0-based letter indices of `g`.
pub fn reduce_to_unit_generators(a: &GeneralizedCartanMatrix, g: &GroupWord) -> Result<UnitWord> {
    g.validate(a)?;
    let catalog = RootCatalog::new(a.clone());
    let mut out = Emitter(Vec::new());
    for (pos, letter) in g.letters().iter().enumerate() {
        match letter {
            GeneratorLetter::ChiSimple { index, sign, t } => {
                let n = small_integer(t, pos)?;
                out.chi(*index, *sign, n);
            }
            GeneratorLetter::Torus { index, t } => {
                if unit(t, pos)? == -1 {
                    out.wtilde(*index, -1);
                    out.wtilde(*index, -1);
                }
            }
            GeneratorLetter::WTilde { index, t } => {
                let e = unit(t, pos)?;
                out.wtilde(*index, e);
            }
            GeneratorLetter::ChiReal { root, t } => {
                let n = small_integer(t, pos)?;
                if n.is_zero() {
                    continue;
                }
                let witness = catalog.witness(root)?;
                let sign = if root.is_positive() { Sign::Plus } else { Sign::Minus };
                for &l in &witness.word.0 {
                    out.wtilde(l, 1);
                }
                out.chi(witness.simple, sign, n);
                for &l in witness.word.0.iter().rev() {
                    out.wtilde(l, -1);
                }
            }
        }
    }
    Ok(UnitWord(out.0))
}

//! Generators of the Chevalley group, words in them, and their action on
//! truncated modules.

mod grammar;
mod operator;

pub use grammar::parse_word;
pub use operator::{operator_eq, sl2_reflection_coefficient, BlockOperator, CollectionOperator, Evaluator};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::cartan::GeneralizedCartanMatrix;
use crate::error::{Error, Result};
use crate::rational::{to_canonical, Q};
use crate::rootsys::{is_real_root, RootVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorLetter {
    /// `chi_{+-alpha_i}(t)`
    ChiSimple { index: usize, sign: Sign, t: Q },
    /// `chi_alpha(t)` for a real root of either sign.
    ChiReal { root: RootVector, t: Q },
    /// `h_{alpha_i}(t)`, `t != 0`
    Torus { index: usize, t: Q },
    /// `w~_{alpha_i}(t)`, `t != 0`
    WTilde { index: usize, t: Q },
}

impl GeneratorLetter {
    pub fn chi(index: usize, sign: Sign, t: Q) -> Self {
        GeneratorLetter::ChiSimple { index, sign, t }
    }

    pub fn torus(index: usize, t: Q) -> Self {
        GeneratorLetter::Torus { index, t }
    }

    pub fn wtilde(index: usize, t: Q) -> Self {
        GeneratorLetter::WTilde { index, t }
    }

    pub fn param(&self) -> &Q {
        match self {
            GeneratorLetter::ChiSimple { t, .. }
            | GeneratorLetter::ChiReal { t, .. }
            | GeneratorLetter::Torus { t, .. }
            | GeneratorLetter::WTilde { t, .. } => t,
        }
    }

    /// The root of a `chi` letter (simple letters included).
    pub fn chi_root(&self, rank: usize) -> Option<RootVector> {
        match self {
            GeneratorLetter::ChiSimple { index, sign, .. } => {
                let r = RootVector::simple(rank, *index);
                Some(if *sign == Sign::Plus { r } else { r.neg() })
            }
            GeneratorLetter::ChiReal { root, .. } => Some(root.clone()),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GeneratorLetter::ChiSimple { index, sign, t } => {
                GeneratorLetter::ChiSimple { index: *index, sign: *sign, t: -t }
            }
            GeneratorLetter::ChiReal { root, t } => GeneratorLetter::ChiReal { root: root.clone(), t: -t },
            GeneratorLetter::Torus { index, t } => GeneratorLetter::Torus { index: *index, t: t.recip() },
            GeneratorLetter::WTilde { index, t } => GeneratorLetter::WTilde { index: *index, t: -t },
        }
    }

    pub fn validate(&self, a: &GeneralizedCartanMatrix) -> Result<()> {
        match self {
            GeneratorLetter::ChiSimple { index, .. } => a.check_index(*index),
            GeneratorLetter::ChiReal { root, .. } => {
                if root.coords().len() != a.rank() || !is_real_root(a, root) {
                    Err(Error::NotARealRoot(root.coords().to_vec()))
                } else {
                    Ok(())
                }
            }
            GeneratorLetter::Torus { index, t } | GeneratorLetter::WTilde { index, t } => {
                a.check_index(*index)?;
                if t.is_zero() {
                    Err(Error::ZeroTorusParameter)
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for GeneratorLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorLetter::ChiSimple { index, sign, t } => {
                let s = if *sign == Sign::Plus { '+' } else { '-' };
                write!(f, "x({s}{},{})", index + 1, to_canonical(t))
            }
            GeneratorLetter::ChiReal { root, t } => {
                let coords: Vec<String> = root.coords().iter().map(|c| c.to_string()).collect();
                write!(f, "xr([{}],{})", coords.join(","), to_canonical(t))
            }
            GeneratorLetter::Torus { index, t } => write!(f, "h({},{})", index + 1, to_canonical(t)),
            GeneratorLetter::WTilde { index, t } if t.is_one() => write!(f, "w({})", index + 1),
            GeneratorLetter::WTilde { index, t } => write!(f, "w({},{})", index + 1, to_canonical(t)),
        }
    }
}

/// A product of letters; the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<GeneratorLetter>);

impl GroupWord {
    pub fn letters(&self) -> &[GeneratorLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(GeneratorLetter::inverse).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        GroupWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn push(&mut self, letter: GeneratorLetter) {
        self.0.push(letter);
    }

    pub fn validate(&self, a: &GeneralizedCartanMatrix) -> Result<()> {
        self.0.iter().try_for_each(|l| l.validate(a))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl FromIterator<GeneratorLetter> for GroupWord {
    fn from_iter<T: IntoIterator<Item = GeneratorLetter>>(iter: T) -> Self {
        GroupWord(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests;

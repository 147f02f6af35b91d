pub mod arith;
pub mod cartan;
pub mod chevgroup;
pub mod error;
pub mod hwmod;
pub mod linalg;
pub mod rational;
pub mod rootsys;

pub use error::{Error, Result};

pub use arith::{Factorization, IntegralityVerdict, UnitWord, Verdict};
pub use cartan::{Classification, GeneralizedCartanMatrix};
pub use chevgroup::{BlockOperator, Evaluator, GeneratorLetter, GroupWord, Sign};
pub use hwmod::{ModuleCollection, TruncatedModule};
pub use rational::Q;
pub use rootsys::{RootCatalog, RootVector};

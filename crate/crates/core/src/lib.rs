//! Exact tensor product and invariant multiplicities for complex semisimple
//! Lie algebras, computed with Lakshmibai-Seshadri chains and cross-checked
//! against a character-theoretic oracle, together with integer
//! renormalizations of root systems and the multiplicity inequalities they
//! induce.

pub mod acceptance;
pub mod charoracle;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod pathmodel;
pub mod renorm;
pub mod rootsys;
pub mod weight;

pub use error::{Error, Result};
pub use linalg::{QMatrix, Q};
pub use pathmodel::{LSChain, TensorDecomposition};
pub use rootsys::{CartanType, OrbitPoset, RootSystem};
pub use weight::{RationalWeight, Weight};

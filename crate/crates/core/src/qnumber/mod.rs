//! Q-numbers: real sequences identified when they agree on a set of indices
//! of natural density one. Index sets come from a decidable class so that
//! densities, agreement sets and limits are all exact.

mod index_set;
mod laws;
mod poly;
mod seq;
mod syntax;

use num::bigint::BigInt;
use thiserror::Error;

pub use index_set::IndexSet;
pub use laws::{filter_laws_check, random_index_set};
pub use poly::{Poly, ROOT_SEARCH_LIMIT};
pub use seq::{
    agreement_set, describe, infinitely_near, infinitesimal_witness, q_eq, Canonical, Classification,
    InfinitesimalWitness, QNumber, SeqReal,
};
pub use syntax::{parse_index_set, parse_seq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("residue modulus must be at least 1")]
    ZeroModulus,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("division by a Q-number equal to 0")]
    DivisionByZero,
    #[error("integer root search bound {0} exceeds {ROOT_SEARCH_LIMIT}")]
    RootBound(BigInt),
    #[error("{0}")]
    Domain(String),
    #[error("syntax: {0}")]
    Syntax(String),
}

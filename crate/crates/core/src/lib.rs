//! Algebraic key recovery for NTRU with `q = 2^m` and `p = 2 + X`, using
//! the first four bits of truncated Witt vectors.
//!
//! The pipeline is [`ring::keygen`] → [`attack::generate_system`] →
//! [`solve::solve_exhaustive`] or [`solve::buchberger`] +
//! [`solve::solutions_from_basis`].

pub mod anf;
pub mod attack;
pub mod error;
pub mod format;
pub mod ring;
pub mod solve;
pub mod truth_table;
pub mod witt;

pub use anf::{AnfPoly, Assignment, Monomial};
pub use attack::{
    generate_system, recover_g, system_stats, Equation, EquationSystem, LevelStats, Provenance,
    SymbolicKeyCoeffs,
};
pub use error::{Error, Result};
pub use ring::{keygen, Gf2Poly, NtruKeySet, NtruParams, ZqPoly};
pub use solve::{
    buchberger, solutions_from_basis, solve_exhaustive, GroebnerBasis, GroebnerConfig,
    MonomialOrder, SolutionSet,
};
pub use truth_table::TruthTable;
pub use witt::{BooleanRing, WittVec};

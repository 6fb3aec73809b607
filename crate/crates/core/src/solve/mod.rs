//! Solving equation systems: exhaustive search, Buchberger's algorithm in
//! the Boolean ring with solution extraction, and export for external SAT
//! solvers.

mod cnf;
mod exhaustive;
mod groebner;

pub use cnf::{export_cnf, to_cnf_string};
pub use exhaustive::{solve_exhaustive, solve_exhaustive_anf, EXHAUSTIVE_MAX_N};
pub use groebner::{
    buchberger, solutions_from_basis, solutions_from_basis_with, GroebnerBasis, GroebnerConfig,
    MonomialOrder, GROEBNER_MAX_VARS,
};

use crate::anf::Assignment;

/// Solutions of a system, ascending by bit pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub solutions: Vec<Assignment>,
    /// Whether the whole assignment space was accounted for.
    pub exhaustive: bool,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn contains(&self, a: &Assignment) -> bool {
        self.solutions.binary_search(a).is_ok()
    }

    pub fn is_subset_of(&self, other: &SolutionSet) -> bool {
        self.solutions.iter().all(|s| other.contains(s))
    }

    pub(crate) fn from_unsorted(mut solutions: Vec<Assignment>, exhaustive: bool) -> Self {
        solutions.sort_unstable();
        solutions.dedup();
        SolutionSet {
            solutions,
            exhaustive,
        }
    }
}

//! Extremal density matrices of finite-dimensional Hamiltonians and the
//! entropy-energy inequalities that bound them.
//!
//! States are handled through their coherence vector in the generalized
//! Gell-Mann basis, positivity through the characteristic-polynomial
//! coefficients, and extremal states through a multistart Newton search over
//! the states with prescribed coefficients.

pub mod basis;
pub mod density;
pub mod error;
pub mod extremal;
pub mod inequalities;
pub mod matrix;
pub mod models;
pub mod random;
pub mod spectrum;
pub mod tolerance;

pub use basis::{bloch_to_density, build_basis, expand, reconstruct, CoefficientForm, GeneratorBasis, GeneratorLabel};
pub use density::{
    char_coeffs, is_admissible, is_feasible, relative_entropy, von_neumann_entropy, BlochState, Feasibility,
    PurityConstants,
};
pub use error::{Error, Result};
pub use extremal::{
    constraint_gradient, objective, orbit_residual, qubit_closed_form, solve_extremal, stationarity_residual,
    verify_solution, ExtremalProblem, ExtremalSolution, SolutionKind, SolveOptions,
};
pub use inequalities::{check_bounds, weighted_terms, gibbs_like, observable_bound, partition, qubit_f_closed, InequalityReport};
pub use matrix::{eigh, expm, logm, EigenDecomposition, HermitianMatrix, SquareMatrix};
pub use models::{bec_hamiltonian, qubit_hamiltonian, spin_matrices, BecParams, Spin, SpinMatrices};

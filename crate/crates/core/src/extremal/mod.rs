//! Extremal density matrices: stationary points of `Tr(H rho)` over the
//! states whose characteristic coefficients equal fixed constants.
//!
//! The constants fix the spectrum `mu`, so the feasible set is the unitary
//! orbit of `diag(mu)`. Two local solvers run from random points of that orbit:
//!
//! * distinct `mu`: damped Newton on the Lagrange system in `(lambda, Lambda)`;
//! * repeated `mu` (pure states for `d >= 3`, partially degenerate mixtures):
//!   the gradients of the `a_j` are linearly dependent there and the Lagrange
//!   system has no finite multipliers, so the search solves `i[H, rho] = 0`
//!   on the orbit instead and fits the multipliers by least squares.
//!
//! `I / d` is a single point and `H ∝ I` makes every feasible state extremal;
//! both are answered directly.

mod newton;
mod qubit;
mod system;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::basis::{bloch_to_density, expand, CoefficientForm, GeneratorBasis};
use crate::density::{is_feasible, von_neumann_entropy, PurityConstants};
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::random;
use crate::tolerance;

pub use qubit::qubit_closed_form;
pub use system::{constraint_gradient, objective, stationarity_residual};

use system::{commutator_coefficients, commutator_jacobian, constraint_jet, least_squares_multipliers, max_abs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Structure {
    /// Distinct target eigenvalues.
    Regular,
    /// Some target eigenvalue repeats.
    Degenerate,
    /// Every target eigenvalue equal: the orbit is `{I/d}`.
    SinglePoint,
}

/// Energy extremization under fixed characteristic coefficients.
#[derive(Clone, Debug)]
pub struct ExtremalProblem {
    pub(crate) hamiltonian: HermitianMatrix,
    pub(crate) basis: GeneratorBasis,
    pub(crate) constants: PurityConstants,
    pub(crate) h: CoefficientForm,
    spectrum: Vec<f64>,
    pub(crate) spectrum_ascending: Vec<f64>,
    pub(crate) commutator_jacobian: DMatrix<f64>,
    structure: Structure,
}

impl ExtremalProblem {
    pub fn new(hamiltonian: HermitianMatrix, basis: GeneratorBasis, constants: PurityConstants) -> Result<Self> {
        let d = basis.dim();
        if hamiltonian.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: hamiltonian.dim(),
            });
        }
        let feasibility = is_feasible(&constants, &basis)?;
        let spectrum = match (feasibility.feasible, feasibility.spectrum) {
            (true, Some(s)) => s,
            _ => return Err(Error::Infeasible { dim: d }),
        };
        let mut spectrum_ascending = spectrum.clone();
        spectrum_ascending.reverse();
        let gaps: Vec<f64> = spectrum_ascending.windows(2).map(|w| w[1] - w[0]).collect();
        let structure = if spectrum[0] - spectrum[d - 1] <= tolerance::SPECTRAL_GAP {
            Structure::SinglePoint
        } else if gaps.iter().any(|&g| g <= tolerance::SPECTRAL_GAP) {
            Structure::Degenerate
        } else {
            Structure::Regular
        };
        let h = expand(&hamiltonian, &basis)?;
        let commutator_jacobian = commutator_jacobian(&hamiltonian, &basis);
        Ok(Self {
            hamiltonian,
            basis,
            constants,
            h,
            spectrum,
            spectrum_ascending,
            commutator_jacobian,
            structure,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn hamiltonian(&self) -> &HermitianMatrix {
        &self.hamiltonian
    }

    pub fn basis(&self) -> &GeneratorBasis {
        &self.basis
    }

    pub fn constants(&self) -> &PurityConstants {
        &self.constants
    }

    /// `h_0` and `h_k` of the Hamiltonian.
    pub fn coefficients(&self) -> &CoefficientForm {
        &self.h
    }

    /// Spectrum fixed by the constants, descending.
    pub fn target_spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    /// True when some target eigenvalue repeats (including `I/d`).
    pub fn is_degenerate(&self) -> bool {
        self.structure != Structure::Regular
    }

    /// `<H> = h_0/d + 1/2 sum_k h_k lambda_k`.
    pub fn energy(&self, lambda: &[f64]) -> f64 {
        self.h.h0 / self.dim() as f64 + 0.5 * self.h.coeffs.iter().zip(lambda).map(|(h, l)| h * l).sum::<f64>()
    }

    /// Number of stationary points when `H` has distinct eigenvalues:
    /// `d! / prod(m_i!)` over the multiplicities `m_i` of the target spectrum.
    /// Stationary states commute with `H`, so they are diagonal in its
    /// eigenbasis and differ only by how the target eigenvalues are assigned.
    pub fn max_solutions(&self) -> usize {
        let mut multiplicities = Vec::new();
        let mut run = 1usize;
        for w in self.spectrum_ascending.windows(2) {
            if w[1] - w[0] <= tolerance::SPECTRAL_GAP {
                run += 1;
            } else {
                multiplicities.push(run);
                run = 1;
            }
        }
        multiplicities.push(run);
        // multinomial coefficient built up one group at a time
        let mut count: u128 = 1;
        let mut placed: u128 = 0;
        for m in multiplicities {
            for i in 1..=m as u128 {
                placed += 1;
                count = count.saturating_mul(placed) / i;
            }
        }
        usize::try_from(count).unwrap_or(usize::MAX)
    }

    pub(crate) fn scale(&self) -> f64 {
        self.h.coeffs.iter().fold(1.0_f64, |m, x| m.max(x.abs()))
    }

    fn is_flat(&self) -> bool {
        self.h.vector_norm() <= tolerance::CONSTRUCTION * self.h.h0.abs().max(1.0)
    }
}

/// How a solution satisfies stationarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    /// The Lagrange system holds with finite multipliers; `residual` is its max-abs.
    Lagrange,
    /// Repeated target eigenvalues: `rho` commutes with `H` on the feasible
    /// orbit; `residual` is the max-abs of `i[H, rho]` and `c - a`.
    /// The multipliers are a least-squares fit.
    Orbit,
    /// The constants of `I/d`: one feasible state, unbounded multipliers.
    SinglePoint,
    /// `H ∝ I`: every feasible state is extremal; one representative is returned.
    FlatObjective,
}

#[derive(Clone, Debug)]
pub struct ExtremalSolution {
    pub lambda: Vec<f64>,
    pub multipliers: Option<Vec<f64>>,
    pub energy: f64,
    pub residual: f64,
    pub entropy: f64,
    pub kind: SolutionKind,
    pub state: HermitianMatrix,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    /// Number of random starts; `None` means `200 d`.
    pub starts: Option<usize>,
    pub max_iterations: usize,
    pub parallel: bool,
    /// Stop once [`ExtremalProblem::max_solutions`] distinct points are found.
    pub stop_at_bound: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            starts: None,
            max_iterations: 100,
            parallel: true,
            stop_at_bound: true,
        }
    }
}

impl SolveOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn start_count(&self, dim: usize) -> usize {
        self.starts.unwrap_or(200 * dim).max(1)
    }
}

/// `max(|i[H, rho]|, |c - a|)` in coefficient form: zero exactly at the
/// stationary points of the energy on the feasible orbit.
pub fn orbit_residual(p: &ExtremalProblem, lambda: &[f64]) -> Result<f64> {
    if lambda.len() != p.basis.len() {
        return Err(Error::DimensionMismatch {
            expected: p.basis.len(),
            found: lambda.len(),
        });
    }
    let comm = commutator_coefficients(p, lambda);
    let jet = constraint_jet(&p.basis, lambda, false);
    let slack = p
        .constants
        .values()
        .iter()
        .enumerate()
        .map(|(i, c)| (c - jet.a[i + 2]).abs())
        .fold(0.0, f64::max);
    Ok(max_abs(&comm).max(slack))
}

/// Recomputes the residual appropriate to `s.kind` from scratch.
pub fn verify_solution(p: &ExtremalProblem, s: &ExtremalSolution) -> Result<f64> {
    let constraint = {
        let jet = constraint_jet(&p.basis, &s.lambda, false);
        p.constants
            .values()
            .iter()
            .enumerate()
            .map(|(i, c)| (c - jet.a[i + 2]).abs())
            .fold(0.0, f64::max)
    };
    let stationarity = match (s.kind, &s.multipliers) {
        (SolutionKind::Lagrange, Some(m)) => max_abs(&stationarity_residual(p, &s.lambda, m)?),
        (SolutionKind::Lagrange, None) => f64::INFINITY,
        (SolutionKind::Orbit, _) => orbit_residual(p, &s.lambda)?,
        (SolutionKind::SinglePoint, _) => 0.0,
        (SolutionKind::FlatObjective, _) => orbit_residual(p, &s.lambda)?,
    };
    Ok(constraint.max(stationarity))
}

fn build_solution(
    p: &ExtremalProblem,
    lambda: Vec<f64>,
    multipliers: Option<Vec<f64>>,
    residual: f64,
    kind: SolutionKind,
) -> Result<ExtremalSolution> {
    let state = bloch_to_density(&lambda, &p.basis)?;
    let entropy = von_neumann_entropy(&state)?;
    Ok(ExtremalSolution {
        energy: p.energy(&lambda),
        lambda,
        multipliers,
        residual,
        entropy,
        kind,
        state,
    })
}

/// Starts are run in blocks of this size; the stopping test runs between
/// blocks so the result does not depend on the thread count.
const CHUNK: usize = 16;

/// Candidate from one start: `(lambda, multipliers, residual)`.
type Candidate = (Vec<f64>, Option<Vec<f64>>, f64);

fn run_start(p: &ExtremalProblem, opts: &SolveOptions, index: usize) -> Candidate {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(index as u64);
    let start = random::with_spectrum(&p.spectrum, &mut rng);
    let lambda0 = p.basis.project(start.as_matrix());
    match p.structure {
        Structure::Regular => {
            let jet = constraint_jet(&p.basis, &lambda0, false);
            let multipliers0 = least_squares_multipliers(p, &jet);
            let local = newton::lagrange_newton(p, lambda0, multipliers0, opts.max_iterations);
            (local.lambda, Some(local.multipliers), local.residual)
        }
        _ => {
            let (lambda, _) = newton::orbit_gauss_newton(p, &lambda0, opts.max_iterations);
            let residual = orbit_residual(p, &lambda).unwrap_or(f64::INFINITY);
            let jet = constraint_jet(&p.basis, &lambda, false);
            let multipliers = least_squares_multipliers(p, &jet);
            (lambda, Some(multipliers), residual)
        }
    }
}

fn accept(p: &ExtremalProblem, candidate: &Candidate) -> bool {
    let (lambda, multipliers, residual) = candidate;
    if !residual.is_finite() || *residual > tolerance::SOLVER || lambda.iter().any(|x| !x.is_finite()) {
        return false;
    }
    if multipliers.as_ref().is_some_and(|m| m.iter().any(|x| !x.is_finite())) {
        return false;
    }
    let Ok(rho) = bloch_to_density(lambda, &p.basis) else {
        return false;
    };
    crate::density::is_admissible(&rho) && orbit_residual(p, lambda).is_ok_and(|r| r <= tolerance::SOLVER)
}

fn compare_solutions(a: &ExtremalSolution, b: &ExtremalSolution) -> std::cmp::Ordering {
    a.energy.total_cmp(&b.energy).then_with(|| {
        a.lambda
            .iter()
            .zip(&b.lambda)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    })
}

/// All stationary points found from at most `opts.start_count(d)` random
/// feasible starts, deduplicated and sorted by energy then coherence vector.
pub fn solve_extremal(p: &ExtremalProblem, opts: &SolveOptions) -> Result<Vec<ExtremalSolution>> {
    let d = p.dim();
    let n = p.basis.len();

    if p.structure == Structure::SinglePoint {
        let lambda = vec![0.0; n];
        let residual = orbit_residual(p, &lambda)?;
        return Ok(vec![build_solution(p, lambda, None, residual, SolutionKind::SinglePoint)?]);
    }
    if p.is_flat() {
        let witness = HermitianMatrix::from_diagonal(&p.spectrum);
        let lambda = p.basis.project(witness.as_matrix());
        let residual = orbit_residual(p, &lambda)?;
        return Ok(vec![build_solution(
            p,
            lambda,
            Some(vec![0.0; d - 1]),
            residual,
            SolutionKind::FlatObjective,
        )?]);
    }

    let starts = opts.start_count(d);
    let kind = match p.structure {
        Structure::Regular => SolutionKind::Lagrange,
        _ => SolutionKind::Orbit,
    };
    let bound = if opts.stop_at_bound { p.max_solutions() } else { usize::MAX };

    let mut best_residual = f64::INFINITY;
    let mut kept: Vec<Candidate> = Vec::new();
    let mut next = 0;
    while next < starts && kept.len() < bound {
        let end = (next + CHUNK).min(starts);
        let chunk: Vec<Candidate> = if opts.parallel {
            (next..end).into_par_iter().map(|i| run_start(p, opts, i)).collect()
        } else {
            (next..end).map(|i| run_start(p, opts, i)).collect()
        };
        next = end;
        for candidate in chunk {
            best_residual = best_residual.min(candidate.2);
            if !accept(p, &candidate) {
                continue;
            }
            let duplicate = kept.iter_mut().find(|k| {
                k.0.iter()
                    .zip(&candidate.0)
                    .all(|(a, b)| (a - b).abs() <= tolerance::DEDUP_STATE)
            });
            match duplicate {
                Some(existing) => {
                    if candidate.2 < existing.2 {
                        *existing = candidate;
                    }
                }
                None => kept.push(candidate),
            }
        }
    }
    if kept.is_empty() {
        return Err(Error::SolverFailure { starts, best_residual });
    }
    let mut solutions = kept
        .into_iter()
        .map(|(lambda, multipliers, residual)| build_solution(p, lambda, multipliers, residual, kind))
        .collect::<Result<Vec<_>>>()?;
    solutions.sort_by(compare_solutions);
    Ok(solutions)
}

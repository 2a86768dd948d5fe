//! Closed-form qubit extremals.
//!
//! For `d = 2` the only constraint is `(1 - |lambda|^2)/4 = c_2`, so with
//! `delta = sqrt(1 - 4 c_2)` and `h = |h_vec|` the stationary points are
//! `lambda = -/+ (delta/h) h_vec` with `Lambda = +/- h/delta` and energies
//! `(h_0 -/+ delta h)/2`.

use super::{ExtremalSolution, SolutionKind};
use crate::basis::{bloch_to_density, build_basis, expand};
use crate::density::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

/// The two qubit extremals sorted by energy; one solution (`I/2`) when
/// `c_2 = 1/4`. When `H ∝ I` a single diagonal representative is returned
/// with kind [`SolutionKind::FlatObjective`].
pub fn qubit_closed_form(hamiltonian: &HermitianMatrix, c2: f64) -> Result<Vec<ExtremalSolution>> {
    if hamiltonian.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: hamiltonian.dim(),
        });
    }
    if !c2.is_finite() || !(0.0..=0.25).contains(&c2) {
        return Err(Error::OutOfRange(format!("c_2 = {c2} outside [0, 1/4]")));
    }
    let basis = build_basis(2)?;
    let form = expand(hamiltonian, &basis)?;
    let h0 = form.h0;
    let hv = &form.coeffs;
    let h = form.vector_norm();
    let delta = (1.0 - 4.0 * c2).max(0.0).sqrt();

    let make = |lambda: Vec<f64>, multipliers: Option<Vec<f64>>, kind: SolutionKind| -> Result<ExtremalSolution> {
        let state = bloch_to_density(&lambda, &basis)?;
        let entropy = von_neumann_entropy(&state)?;
        let energy = 0.5 * (h0 + hv.iter().zip(&lambda).map(|(a, b)| a * b).sum::<f64>());
        let constraint = c2 - 0.25 * (1.0 - lambda.iter().map(|x| x * x).sum::<f64>());
        let stationarity = match &multipliers {
            Some(m) => hv
                .iter()
                .zip(&lambda)
                .map(|(hq, lq)| (0.5 * hq + 0.5 * m[0] * lq).abs())
                .fold(0.0, f64::max),
            None => 0.0,
        };
        Ok(ExtremalSolution {
            lambda,
            multipliers,
            energy,
            residual: stationarity.max(constraint.abs()),
            entropy,
            kind,
            state,
        })
    };

    if delta == 0.0 {
        return Ok(vec![make(vec![0.0; 3], None, SolutionKind::SinglePoint)?]);
    }
    if h <= crate::tolerance::CONSTRUCTION * h0.abs().max(1.0) {
        return Ok(vec![make(vec![0.0, 0.0, delta], Some(vec![0.0]), SolutionKind::FlatObjective)?]);
    }
    let ratio = delta / h;
    let lower: Vec<f64> = hv.iter().map(|x| -ratio * x).collect();
    let upper: Vec<f64> = hv.iter().map(|x| ratio * x).collect();
    Ok(vec![
        make(lower, Some(vec![h / delta]), SolutionKind::Lagrange)?,
        make(upper, Some(vec![-h / delta]), SolutionKind::Lagrange)?,
    ])
}

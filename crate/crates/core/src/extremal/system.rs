//! The constrained objective and its stationarity system.
//!
//! Derivatives of the characteristic coefficients come from the trace powers:
//!
//! ```text
//! d p_m / d lambda_q            = (m/2) Tr(rho^{m-1} lambda_hat_q)
//! d^2 p_m / d lambda_q d lambda_r = (m/4) sum_{k=0}^{m-2} Tr(rho^k lambda_hat_r rho^{m-2-k} lambda_hat_q)
//! ```
//!
//! pushed through the Newton recursion for `a_j` with the product rule.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::ExtremalProblem;
use crate::basis::{bloch_to_density, GeneratorBasis};
use crate::density::BlochState;
use crate::error::{Error, Result};
use crate::matrix::{trace_product, SquareMatrix};

/// `a_0 .. a_d` with first and (optionally) second derivatives.
pub(crate) struct ConstraintJet {
    pub a: Vec<f64>,
    /// `grad[j][q] = d a_j / d lambda_q`.
    pub grad: Vec<Vec<f64>>,
    /// `hess[j]` is row-major `n x n`; empty when not requested.
    pub hess: Vec<Vec<f64>>,
}

pub(crate) fn constraint_jet(basis: &GeneratorBasis, lambda: &[f64], with_hessian: bool) -> ConstraintJet {
    let d = basis.dim();
    let n = basis.len();
    let rho = bloch_to_density(lambda, basis).expect("length checked by caller");
    let powers = rho.powers(d);

    let moments: Vec<f64> = (1..=d).map(|m| powers[m].trace().re).collect();
    // grad_p[m - 1] = d p_m / d lambda
    let grad_p: Vec<Vec<f64>> = (1..=d)
        .map(|m| {
            let half_m = 0.5 * m as f64;
            basis.project(&powers[m - 1]).into_iter().map(|x| half_m * x).collect()
        })
        .collect();

    let hess_p: Vec<Vec<f64>> = if with_hessian {
        power_hessians(basis, &powers)
    } else {
        Vec::new()
    };

    let mut a = vec![0.0; d + 1];
    let mut grad = vec![vec![0.0; n]; d + 1];
    let mut hess = if with_hessian {
        vec![vec![0.0; n * n]; d + 1]
    } else {
        Vec::new()
    };
    a[0] = 1.0;
    for j in 1..=d {
        let sj = if j % 2 == 1 { 1.0 } else { -1.0 };
        let inv_j = 1.0 / j as f64;
        let mut aj = sj * moments[j - 1];
        let mut gj: Vec<f64> = grad_p[j - 1].iter().map(|x| sj * x).collect();
        let mut hj: Vec<f64> = if with_hessian {
            hess_p[j - 1].iter().map(|x| sj * x).collect()
        } else {
            Vec::new()
        };
        for m in 1..j {
            let sm = if m % 2 == 1 { 1.0 } else { -1.0 };
            let prev = j - m;
            let (ap, pm) = (a[prev], moments[m - 1]);
            aj += sm * ap * pm;
            for q in 0..n {
                gj[q] += sm * (grad[prev][q] * pm + ap * grad_p[m - 1][q]);
            }
            if with_hessian {
                let (gprev, gpm) = (&grad[prev], &grad_p[m - 1]);
                let (hprev, hpm) = (&hess[prev], &hess_p[m - 1]);
                for q in 0..n {
                    for r in 0..n {
                        let idx = q * n + r;
                        hj[idx] += sm
                            * (hprev[idx] * pm
                                + gprev[q] * gpm[r]
                                + gpm[q] * gprev[r]
                                + ap * hpm[idx]);
                    }
                }
            }
        }
        a[j] = aj * inv_j;
        grad[j] = gj.into_iter().map(|x| x * inv_j).collect();
        if with_hessian {
            hess[j] = hj.into_iter().map(|x| x * inv_j).collect();
        }
    }
    ConstraintJet { a, grad, hess }
}

/// Hessians of `p_1 .. p_d`, each row-major `n x n`.
fn power_hessians(basis: &GeneratorBasis, powers: &[SquareMatrix]) -> Vec<Vec<f64>> {
    let d = basis.dim();
    let n = basis.len();
    // sandwich[s][k][r] = project(rho^k lambda_r rho^{s-k}) for s = k + l <= d - 2.
    let mut sandwiches: Vec<Vec<Vec<Vec<f64>>>> = Vec::with_capacity(d.saturating_sub(1));
    for s in 0..d.saturating_sub(1) {
        let mut by_k = Vec::with_capacity(s + 1);
        for k in 0..=s {
            let by_r: Vec<Vec<f64>> = basis
                .generators()
                .iter()
                .map(|g| {
                    let left = &powers[k] * g.as_matrix();
                    let full = &left * &powers[s - k];
                    basis.project(&full)
                })
                .collect();
            by_k.push(by_r);
        }
        sandwiches.push(by_k);
    }

    (1..=d)
        .map(|m| {
            let mut h = vec![0.0; n * n];
            if m >= 2 {
                let s = m - 2;
                let factor = m as f64 / 4.0;
                for by_k in &sandwiches[s][..=s] {
                    for r in 0..n {
                        let col = &by_k[r];
                        for q in 0..n {
                            h[q * n + r] += factor * col[q];
                        }
                    }
                }
                // Exact symmetry; the traces agree up to rounding.
                for q in 0..n {
                    for r in (q + 1)..n {
                        let avg = 0.5 * (h[q * n + r] + h[r * n + q]);
                        h[q * n + r] = avg;
                        h[r * n + q] = avg;
                    }
                }
            }
            h
        })
        .collect()
}

/// `d a_j / d lambda_q` for `q = 1 .. d^2 - 1` at the given point.
pub fn constraint_gradient(point: &BlochState, j: usize, basis: &GeneratorBasis) -> Result<Vec<f64>> {
    let d = basis.dim();
    if point.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: point.dim(),
        });
    }
    if j < 2 || j > d {
        return Err(Error::OutOfRange(format!("constraint index j = {j} outside 2..={d}")));
    }
    let jet = constraint_jet(basis, point.lambda(), false);
    Ok(jet.grad[j].clone())
}

fn check_lengths(p: &ExtremalProblem, lambda: &[f64], multipliers: &[f64]) -> Result<()> {
    let n = p.basis.len();
    if lambda.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: lambda.len(),
        });
    }
    if multipliers.len() != p.dim() - 1 {
        return Err(Error::DimensionMismatch {
            expected: p.dim() - 1,
            found: multipliers.len(),
        });
    }
    Ok(())
}

/// `f = Tr(H rho) + sum_j Lambda_j (c_j - a_j)`.
pub fn objective(p: &ExtremalProblem, lambda: &[f64], multipliers: &[f64]) -> Result<f64> {
    check_lengths(p, lambda, multipliers)?;
    let rho = bloch_to_density(lambda, &p.basis)?;
    let energy = trace_product(&p.hamiltonian, &rho)?;
    let jet = constraint_jet(&p.basis, lambda, false);
    let penalty: f64 = multipliers
        .iter()
        .zip(p.constants.values())
        .enumerate()
        .map(|(i, (l, c))| l * (c - jet.a[i + 2]))
        .sum();
    Ok(energy + penalty)
}

/// Components `h_q / 2 - sum_j Lambda_j d a_j / d lambda_q` followed by `c_p - a_p`.
pub fn stationarity_residual(p: &ExtremalProblem, lambda: &[f64], multipliers: &[f64]) -> Result<Vec<f64>> {
    check_lengths(p, lambda, multipliers)?;
    let jet = constraint_jet(&p.basis, lambda, false);
    Ok(residual_from_jet(p, &jet, multipliers))
}

pub(crate) fn residual_from_jet(p: &ExtremalProblem, jet: &ConstraintJet, multipliers: &[f64]) -> Vec<f64> {
    let n = p.basis.len();
    let d = p.dim();
    let mut r = Vec::with_capacity(n + d - 1);
    for q in 0..n {
        let mut v = 0.5 * p.h.coeffs[q];
        for (i, l) in multipliers.iter().enumerate() {
            v -= l * jet.grad[i + 2][q];
        }
        r.push(v);
    }
    for (i, c) in p.constants.values().iter().enumerate() {
        r.push(c - jet.a[i + 2]);
    }
    r
}

/// Residual and Jacobian of the full system in `(lambda, Lambda)`.
pub(crate) fn residual_and_jacobian(p: &ExtremalProblem, x: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let n = p.basis.len();
    let m = p.dim() - 1;
    let (lambda, multipliers) = x.split_at(n);
    let jet = constraint_jet(&p.basis, lambda, true);
    let r = residual_from_jet(p, &jet, multipliers);
    let mut jac = DMatrix::<f64>::zeros(n + m, n + m);
    for q in 0..n {
        for r_idx in 0..n {
            let mut v = 0.0;
            for (i, l) in multipliers.iter().enumerate() {
                v -= l * jet.hess[i + 2][q * n + r_idx];
            }
            jac[(q, r_idx)] = v;
        }
        for i in 0..m {
            jac[(q, n + i)] = -jet.grad[i + 2][q];
        }
    }
    for i in 0..m {
        for r_idx in 0..n {
            jac[(n + i, r_idx)] = -jet.grad[i + 2][r_idx];
        }
    }
    (r, jac)
}

/// Minimum-norm least-squares multipliers for the gradient equations at `lambda`.
pub(crate) fn least_squares_multipliers(p: &ExtremalProblem, jet: &ConstraintJet) -> Vec<f64> {
    let n = p.basis.len();
    let m = p.dim() - 1;
    let g = DMatrix::from_fn(n, m, |q, i| jet.grad[i + 2][q]);
    let rhs = DVector::from_iterator(n, p.h.coeffs.iter().map(|h| 0.5 * h));
    let scale = g.iter().fold(0.0_f64, |acc, x| acc.max(x.abs())).max(f64::MIN_POSITIVE);
    match g.svd(true, true).solve(&rhs, 1e-10 * scale) {
        Ok(sol) if sol.iter().all(|x| x.is_finite()) => sol.iter().copied().collect(),
        _ => vec![0.0; m],
    }
}

/// Coefficients of `i [H, rho]`: zero exactly when `rho` is stationary on its unitary orbit.
pub(crate) fn commutator_coefficients(p: &ExtremalProblem, lambda: &[f64]) -> Vec<f64> {
    let rho = bloch_to_density(lambda, &p.basis).expect("length checked by caller");
    let comm = p.hamiltonian.as_matrix().commutator(rho.as_matrix());
    p.basis
        .project(&comm.scale_complex(Complex64::new(0.0, 1.0)))
}

/// Jacobian of [`commutator_coefficients`], constant because the map is linear.
pub(crate) fn commutator_jacobian(hamiltonian: &crate::matrix::HermitianMatrix, basis: &GeneratorBasis) -> DMatrix<f64> {
    let n = basis.len();
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for (r, g) in basis.generators().iter().enumerate() {
        let comm = hamiltonian.as_matrix().commutator(g.as_matrix());
        let col = basis.project(&comm.scale_complex(Complex64::new(0.0, 0.5)));
        for (q, v) in col.into_iter().enumerate() {
            jac[(q, r)] = v;
        }
    }
    jac
}

pub(crate) fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

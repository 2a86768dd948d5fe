//! Local solvers started from one point of the feasible orbit.

use nalgebra::{DMatrix, DVector};

use super::system::{
    commutator_coefficients, constraint_jet, max_abs, residual_and_jacobian, residual_from_jet,
};
use super::ExtremalProblem;
use crate::basis::bloch_to_density;
use crate::matrix::eigh;

const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 30;
const LM_TRIES: usize = 12;

fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn lu_step(jac: &DMatrix<f64>, r: &[f64]) -> Option<Vec<f64>> {
    let rhs = DVector::from_iterator(r.len(), r.iter().map(|x| -x));
    let step = jac.clone().lu().solve(&rhs)?;
    step.iter().all(|x| x.is_finite()).then(|| step.iter().copied().collect())
}

/// `(J^T J + mu I) dx = -J^T r`.
fn levenberg_step(jac: &DMatrix<f64>, r: &[f64], mu: f64) -> Option<Vec<f64>> {
    let jt = jac.transpose();
    let mut normal = &jt * jac;
    for i in 0..normal.nrows() {
        normal[(i, i)] += mu;
    }
    let rhs = -(&jt * DVector::from_column_slice(r));
    let step = normal.cholesky()?.solve(&rhs);
    step.iter().all(|x| x.is_finite()).then(|| step.iter().copied().collect())
}

fn lm_base(jac: &DMatrix<f64>) -> f64 {
    let jt = jac.transpose();
    let normal = &jt * jac;
    (0..normal.nrows())
        .map(|i| normal[(i, i)])
        .fold(0.0_f64, f64::max)
        .max(1e-12)
}

fn axpy(x: &[f64], alpha: f64, dx: &[f64]) -> Vec<f64> {
    x.iter().zip(dx).map(|(a, b)| a + alpha * b).collect()
}

/// Result of a local solve.
pub(crate) struct LocalSolution {
    pub lambda: Vec<f64>,
    pub multipliers: Vec<f64>,
    pub residual: f64,
}

/// Damped Newton on the full system in `(lambda, Lambda)` with a backtracking
/// line search on `|R|^2` and Levenberg-Marquardt steps when Newton stalls.
pub(crate) fn lagrange_newton(
    p: &ExtremalProblem,
    lambda0: Vec<f64>,
    multipliers0: Vec<f64>,
    max_iterations: usize,
) -> LocalSolution {
    let n = p.basis.len();
    let mut x: Vec<f64> = lambda0.into_iter().chain(multipliers0).collect();
    let target = 1e-14 * p.scale();
    let residual_at = |x: &[f64]| {
        let (lambda, mult) = x.split_at(n);
        let jet = constraint_jet(&p.basis, lambda, false);
        residual_from_jet(p, &jet, mult)
    };

    let (mut r, mut jac) = residual_and_jacobian(p, &x);
    for _ in 0..max_iterations {
        if max_abs(&r) <= target {
            break;
        }
        let phi = norm_sq(&r);
        let mut accepted = None;
        if let Some(dx) = lu_step(&jac, &r) {
            let mut alpha = 1.0;
            for _ in 0..MAX_HALVINGS {
                let trial = axpy(&x, alpha, &dx);
                let rt = residual_at(&trial);
                if norm_sq(&rt) <= (1.0 - ARMIJO * alpha) * phi {
                    accepted = Some(trial);
                    break;
                }
                alpha *= 0.5;
            }
        }
        if accepted.is_none() {
            let mut mu = 1e-6 * lm_base(&jac);
            for _ in 0..LM_TRIES {
                if let Some(dx) = levenberg_step(&jac, &r, mu) {
                    let trial = axpy(&x, 1.0, &dx);
                    if norm_sq(&residual_at(&trial)) < phi {
                        accepted = Some(trial);
                        break;
                    }
                }
                mu *= 10.0;
            }
        }
        match accepted {
            Some(next) => {
                x = next;
                let (nr, nj) = residual_and_jacobian(p, &x);
                r = nr;
                jac = nj;
            }
            None => break,
        }
    }
    let residual = max_abs(&r);
    let multipliers = x.split_off(n);
    LocalSolution {
        lambda: x,
        multipliers,
        residual,
    }
}

/// Moves `lambda` onto the feasible orbit: keep the eigenvectors of
/// `rho(lambda)` and replace its eigenvalues by the target spectrum, both ascending.
pub(crate) fn retract(p: &ExtremalProblem, lambda: &[f64]) -> Vec<f64> {
    let rho = bloch_to_density(lambda, &p.basis).expect("length checked by caller");
    let eig = eigh(&rho);
    let on_orbit = eig.compose(&p.spectrum_ascending);
    p.basis.project(on_orbit.as_matrix())
}

/// Gauss-Newton on `[i[H, rho]; c - a] = 0` with a retraction onto the
/// feasible orbit after every step. Used when the target spectrum is
/// degenerate and the multiplier equations have no finite solution.
pub(crate) fn orbit_gauss_newton(p: &ExtremalProblem, lambda0: &[f64], max_iterations: usize) -> (Vec<f64>, f64) {
    let n = p.basis.len();
    let m = p.dim() - 1;
    let target = 1e-14 * p.scale();
    let mut lambda = retract(p, lambda0);
    let mut comm = commutator_coefficients(p, &lambda);

    for _ in 0..max_iterations {
        if max_abs(&comm) <= target {
            break;
        }
        let jet = constraint_jet(&p.basis, &lambda, false);
        let mut f = comm.clone();
        for (i, c) in p.constants.values().iter().enumerate() {
            f.push(c - jet.a[i + 2]);
        }
        let mut jac = DMatrix::<f64>::zeros(n + m, n);
        jac.view_mut((0, 0), (n, n)).copy_from(&p.commutator_jacobian);
        for i in 0..m {
            for q in 0..n {
                jac[(n + i, q)] = -jet.grad[i + 2][q];
            }
        }
        let phi = norm_sq(&comm);
        let mut accepted = None;

        let rhs = DVector::from_iterator(f.len(), f.iter().map(|x| -x));
        if let Ok(dx) = jac.clone().svd(true, true).solve(&rhs, 1e-12 * lm_base(&jac).sqrt()) {
            let dx: Vec<f64> = dx.iter().copied().collect();
            if dx.iter().all(|x| x.is_finite()) {
                let mut alpha = 1.0;
                for _ in 0..MAX_HALVINGS {
                    let trial = retract(p, &axpy(&lambda, alpha, &dx));
                    let ct = commutator_coefficients(p, &trial);
                    if norm_sq(&ct) <= (1.0 - ARMIJO * alpha) * phi {
                        accepted = Some((trial, ct));
                        break;
                    }
                    alpha *= 0.5;
                }
            }
        }
        if accepted.is_none() {
            let mut mu = 1e-6 * lm_base(&jac);
            for _ in 0..LM_TRIES {
                if let Some(dx) = levenberg_step(&jac, &f, mu) {
                    let trial = retract(p, &axpy(&lambda, 1.0, &dx));
                    let ct = commutator_coefficients(p, &trial);
                    if norm_sq(&ct) < phi {
                        accepted = Some((trial, ct));
                        break;
                    }
                }
                mu *= 10.0;
            }
        }
        match accepted {
            Some((next, c)) => {
                lambda = next;
                comm = c;
            }
            None => break,
        }
    }
    let residual = max_abs(&comm);
    (lambda, residual)
}

//! Density-matrix semantics on top of the coherence vector.
//!
//! Positivity of a unit-trace Hermitian matrix is tracked through the
//! coefficients `a_j` of its characteristic polynomial. They are built from
//! the trace powers `p_n = Tr(rho^n)` by the Newton recursion
//!
//! ```text
//! a_j = ( (-1)^(j-1) p_j + sum_{n=1}^{j-1} (-1)^(n-1) a_{j-n} p_n ) / j,   a_0 = 1,
//! ```
//!
//! which makes `a_j` the j-th elementary symmetric polynomial of the
//! eigenvalues. A state is admissible exactly when all of them are
//! nonnegative.

use crate::basis::{bloch_to_density, GeneratorBasis};
use crate::error::{Error, Result};
use crate::matrix::{eigh, HermitianMatrix};
use crate::spectrum::{elementary_symmetric, monic_from_elementary, real_roots};
use crate::tolerance;

/// A coherence vector `lambda_1 .. lambda_{d^2-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochState {
    dim: usize,
    lambda: Vec<f64>,
}

impl BlochState {
    pub fn new(dim: usize, lambda: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if lambda.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim - 1,
                found: lambda.len(),
            });
        }
        if lambda.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, lambda })
    }

    /// Coherence vector of a matrix, `lambda_k = Tr(rho lambda_hat_k)`.
    pub fn from_density(rho: &HermitianMatrix, basis: &GeneratorBasis) -> Result<Self> {
        if rho.dim() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: rho.dim(),
            });
        }
        Ok(Self {
            dim: rho.dim(),
            lambda: basis.project(rho.as_matrix()),
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            dim,
            lambda: vec![0.0; dim * dim - 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// `|lambda| = sqrt(sum lambda_k^2)`.
    pub fn norm(&self) -> f64 {
        self.lambda.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn density(&self, basis: &GeneratorBasis) -> Result<HermitianMatrix> {
        bloch_to_density(&self.lambda, basis)
    }

    pub fn is_admissible(&self, basis: &GeneratorBasis) -> Result<bool> {
        Ok(is_admissible(&self.density(basis)?))
    }
}

/// Target values `c_2 .. c_d` of the characteristic-polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PurityConstants {
    values: Vec<f64>,
}

impl PurityConstants {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidConstants(
                "at least one constant (c_2) is required".into(),
            ));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some((j, &c)) = values.iter().enumerate().find(|(_, &c)| c < 0.0) {
            return Err(Error::InvalidConstants(format!(
                "c_{} = {c} is negative",
                j + 2
            )));
        }
        if values.len() == 1 && values[0] > 0.25 {
            return Err(Error::InvalidConstants(format!(
                "qubit constant c_2 = {} exceeds 1/4",
                values[0]
            )));
        }
        Ok(Self { values })
    }

    /// All zero: pure states.
    pub fn pure(dim: usize) -> Self {
        Self {
            values: vec![0.0; dim - 1],
        }
    }

    /// Constants of `I / d`, `c_j = binom(d, j) / d^j`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_spectrum(&vec![1.0 / dim as f64; dim])
    }

    /// Constants realised by a given spectrum; tiny negative rounding is clamped.
    pub fn from_spectrum(spectrum: &[f64]) -> Self {
        let e = elementary_symmetric(spectrum);
        Self {
            values: e[2..].iter().map(|&x| if x < 0.0 && x > -1e-14 { 0.0 } else { x }).collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Hilbert-space dimension these constants belong to.
    pub fn dim(&self) -> usize {
        self.values.len() + 1
    }

    pub fn is_pure(&self) -> bool {
        self.values.iter().all(|&c| c == 0.0)
    }
}

/// Outcome of [`is_feasible`].
#[derive(Clone, Debug)]
pub struct Feasibility {
    pub feasible: bool,
    /// Eigenvalues realising the constants, descending.
    pub spectrum: Option<Vec<f64>>,
    /// The diagonal state with that spectrum.
    pub witness: Option<BlochState>,
}

/// `[Tr rho, Tr rho^2, .., Tr rho^{n_max}]`.
pub fn purity_moments(rho: &HermitianMatrix, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max);
    if n_max == 0 {
        return out;
    }
    let m = rho.as_matrix();
    out.push(rho.trace());
    let mut power = m.clone();
    for _ in 2..=n_max {
        let next = &power * m;
        out.push(next.trace().re);
        power = next;
    }
    out
}

/// `a_0 .. a_n` from the trace powers `p_1 .. p_n` by the Newton recursion.
pub fn coefficients_from_moments(moments: &[f64]) -> Vec<f64> {
    let n = moments.len();
    let mut a = vec![0.0; n + 1];
    a[0] = 1.0;
    for j in 1..=n {
        let mut acc = if j % 2 == 1 { moments[j - 1] } else { -moments[j - 1] };
        for m in 1..j {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * a[j - m] * moments[m - 1];
        }
        a[j] = acc / j as f64;
    }
    a
}

/// `a_2 .. a_d` of a unit-trace matrix.
pub fn char_coeffs(rho: &HermitianMatrix) -> Vec<f64> {
    let d = rho.dim();
    coefficients_from_moments(&purity_moments(rho, d))[2..].to_vec()
}

pub fn min_eigenvalue(rho: &HermitianMatrix) -> f64 {
    eigh(rho).values[0]
}

/// All eigenvalues `>= -1e-10`.
pub fn is_admissible(rho: &HermitianMatrix) -> bool {
    min_eigenvalue(rho) >= -tolerance::ADMISSIBILITY
}

/// Eigenvalues clamped into `[0, inf)` after the admissibility check.
fn admissible_spectrum(rho: &HermitianMatrix) -> Result<Vec<f64>> {
    let values = eigh(rho).values;
    if values[0] < -tolerance::ADMISSIBILITY {
        return Err(Error::Inadmissible {
            min_eigenvalue: values[0],
        });
    }
    Ok(values.into_iter().map(|e| e.max(0.0)).collect())
}

/// `-sum p ln p` with `0 ln 0 = 0`.
pub fn entropy_of_spectrum(probabilities: &[f64]) -> f64 {
    let s: f64 = probabilities.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum();
    s + 0.0
}

/// `S = -Tr(rho ln rho)`.
pub fn von_neumann_entropy(rho: &HermitianMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&admissible_spectrum(rho)?))
}

/// `Tr(rho ln rho - rho ln sigma)`; `+inf` when `rho` leaks outside the support of `sigma`.
pub fn relative_entropy(rho: &HermitianMatrix, sigma: &HermitianMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let neg_entropy = -von_neumann_entropy(rho)?;
    admissible_spectrum(sigma)?;
    let sigma_eig = eigh(sigma);
    let weights = sigma_eig.diagonal_of(rho);
    let mut cross = 0.0;
    for (&s, &w) in sigma_eig.values.iter().zip(&weights) {
        if s <= tolerance::SUPPORT {
            if w > tolerance::SUPPORT_LEAK {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += w * s.ln();
    }
    Ok(neg_entropy - cross)
}

/// Decides whether some admissible state has characteristic coefficients `c`.
///
/// The candidate spectrum is the root set of
/// `x^d - x^{d-1} + c_2 x^{d-2} - c_3 x^{d-3} + ...`; the constants are
/// feasible when every root is real and nonnegative (to the admissibility
/// tolerance) and the resulting diagonal witness reproduces `c` to 1e-8.
pub fn is_feasible(c: &PurityConstants, basis: &GeneratorBasis) -> Result<Feasibility> {
    let d = basis.dim();
    if c.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d - 1,
            found: c.values().len(),
        });
    }
    let infeasible = Feasibility {
        feasible: false,
        spectrum: None,
        witness: None,
    };
    let mut e = Vec::with_capacity(d + 1);
    e.push(1.0);
    e.push(1.0);
    e.extend_from_slice(c.values());
    let Some(mut roots) = real_roots(&monic_from_elementary(&e)) else {
        return Ok(infeasible);
    };
    if roots[0] < -tolerance::ADMISSIBILITY {
        return Ok(infeasible);
    }
    roots.reverse();
    let spectrum: Vec<f64> = roots.into_iter().map(|x| x.max(0.0)).collect();
    let rho = HermitianMatrix::from_diagonal(&spectrum);
    let reproduced = char_coeffs(&rho);
    let mismatch = reproduced
        .iter()
        .zip(c.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if mismatch > tolerance::SOLVER {
        return Ok(infeasible);
    }
    let witness = BlochState::from_density(&rho, basis)?;
    Ok(Feasibility {
        feasible: true,
        spectrum: Some(spectrum),
        witness: Some(witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::build_basis;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn moments_of_simple_states() {
        let mixed = HermitianMatrix::identity(3).scale(1.0 / 3.0);
        let m = purity_moments(&mixed, 3);
        assert!((m[0] - 1.0).abs() < 1e-15);
        assert!((m[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((m[2] - 1.0 / 9.0).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pure = random::pure(3, &mut rng);
        for x in purity_moments(&pure, 3) {
            assert!((x - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn moments_match_eigenvalue_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 2..=6 {
            let rho = random::density(d, &mut rng);
            let e = eigh(&rho).values;
            for (n, m) in purity_moments(&rho, 4).into_iter().enumerate() {
                let oracle: f64 = e.iter().map(|x| x.powi(n as i32 + 1)).sum();
                assert!((m - oracle).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn maximally_mixed_coefficients() {
        let a = char_coeffs(&HermitianMatrix::identity(3).scale(1.0 / 3.0));
        assert!((a[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((a[1] - 1.0 / 27.0).abs() < 1e-15);
        let c = PurityConstants::maximally_mixed(3);
        assert!((c.values()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.values()[1] - 1.0 / 27.0).abs() < 1e-16);
    }

    #[test]
    fn pure_state_coefficients_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..=5 {
            let a = char_coeffs(&random::pure(d, &mut rng));
            assert!(a.iter().all(|x| x.abs() < 1e-12), "{a:?}");
        }
    }

    #[test]
    fn qubit_coefficient_formula() {
        let basis = build_basis(2).unwrap();
        let l = [0.3, -0.2, 0.5];
        let rho = bloch_to_density(&l, &basis).unwrap();
        let a = char_coeffs(&rho);
        let expected = (1.0 - l.iter().map(|x| x * x).sum::<f64>()) / 4.0;
        assert!((a[0] - expected).abs() < 1e-15);
    }

    #[test]
    fn constants_validation() {
        assert!(PurityConstants::new(vec![-0.1]).is_err());
        assert!(PurityConstants::new(vec![0.3]).is_err());
        assert!(PurityConstants::new(vec![0.25]).is_ok());
        assert!(PurityConstants::new(vec![]).is_err());
        assert!(PurityConstants::new(vec![0.1, f64::NAN]).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let basis = build_basis(3).unwrap();
        let mixed = is_feasible(&PurityConstants::new(vec![1.0 / 3.0, 1.0 / 27.0]).unwrap(), &basis).unwrap();
        assert!(mixed.feasible);
        let w = mixed.witness.unwrap();
        assert!(w.norm() < 1e-6, "{:?}", w);

        let pure = is_feasible(&PurityConstants::pure(3), &basis).unwrap();
        assert!(pure.feasible);
        let rho = pure.witness.unwrap().density(&basis).unwrap();
        assert!((purity_moments(&rho, 2)[1] - 1.0).abs() < 1e-12);

        let fig2 = is_feasible(&PurityConstants::new(vec![0.29, 0.02]).unwrap(), &basis).unwrap();
        assert!(fig2.feasible);
        let s = fig2.spectrum.unwrap();
        for (x, y) in s.iter().zip([0.5, 0.4, 0.1]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn infeasible_constants() {
        let basis = build_basis(3).unwrap();
        // c_2 = 0.3 with c_3 = 0.1 would need complex eigenvalues.
        let f = is_feasible(&PurityConstants::new(vec![0.3, 0.1]).unwrap(), &basis).unwrap();
        assert!(!f.feasible);
        // Nonnegative constants make the coefficients alternate in sign, so
        // infeasibility always shows up as complex roots.
        let f = is_feasible(&PurityConstants::new(vec![0.34, 0.0]).unwrap(), &basis).unwrap();
        assert!(!f.feasible);
        let d2 = build_basis(2).unwrap();
        assert!(is_feasible(&PurityConstants::new(vec![0.25]).unwrap(), &d2).unwrap().feasible);
    }

    #[test]
    fn entropy_examples() {
        let half = HermitianMatrix::identity(2).scale(0.5);
        assert!((von_neumann_entropy(&half).unwrap() - 2f64.ln()).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(von_neumann_entropy(&random::pure(3, &mut rng)).unwrap().abs() < 1e-12);

        for &delta in &[0.0, 0.3, 0.9, 0.999] {
            let rho = random::with_spectrum(&[(1.0 + delta) / 2.0, (1.0 - delta) / 2.0], &mut rng);
            let analytic = 2f64.ln() - delta * f64::atanh(delta) - 0.5 * (1.0 - delta * delta).ln();
            assert!((von_neumann_entropy(&rho).unwrap() - analytic).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_log_zero_convention() {
        assert_eq!(entropy_of_spectrum(&[1.0, 0.0, 0.0]), 0.0);
        // tiny negative round-off is clamped, not an error
        let rho = HermitianMatrix::from_diagonal(&[1.0 + 5e-11, -5e-11]);
        assert_eq!(von_neumann_entropy(&rho).unwrap(), -(1.0f64 + 5e-11) * (1.0f64 + 5e-11).ln());
    }

    #[test]
    fn inadmissible_entropy_is_an_error() {
        let rho = HermitianMatrix::from_diagonal(&[1.1, -0.1]);
        assert!(matches!(von_neumann_entropy(&rho), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn relative_entropy_examples() {
        let mixed = HermitianMatrix::identity(3).scale(1.0 / 3.0);
        assert!(relative_entropy(&mixed, &mixed).unwrap().abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 2..=5 {
            let pure = random::pure(d, &mut rng);
            let sigma = HermitianMatrix::identity(d).scale(1.0 / d as f64);
            assert!((relative_entropy(&pure, &sigma).unwrap() - (d as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn relative_entropy_support_violation_is_infinite() {
        let rho = HermitianMatrix::identity(2).scale(0.5);
        let sigma = HermitianMatrix::from_diagonal(&[1.0, 0.0]);
        assert_eq!(relative_entropy(&rho, &sigma).unwrap(), f64::INFINITY);
        // contained support is finite
        assert!((relative_entropy(&sigma, &rho).unwrap() - 2f64.ln()).abs() < 1e-15);
    }
}

//! Entropy-energy inequalities from the positivity of relative entropy.
//!
//! With `rho_H = e^H / Tr e^H` and `Z(beta) = Tr e^{-beta H}`:
//!
//! ```text
//! D(rho || rho_H) = ln Z(-1) - E - S >= 0          (E = Tr rho H, S = -Tr rho ln rho)
//! D(rho || rho_-H) = ln Z(1) + E - S >= 0
//! D(rho_H || rho) >= 0  <=>  Tr(H e^H) - Z(-1) ln Z(-1) >= Tr(e^H ln rho)
//! ```
//!
//! Matrix functions go through the eigendecomposition with the largest
//! exponent shifted out.

use crate::density::{relative_entropy, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::extremal::qubit_closed_form;
use crate::matrix::{eigh, trace_product, HermitianMatrix};
use crate::models::qubit_hamiltonian;
use crate::tolerance;

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `e^H / Tr e^H`.
pub fn gibbs_like(h: &HermitianMatrix) -> HermitianMatrix {
    let eig = eigh(h);
    let top = eig.values[eig.values.len() - 1];
    let weights: Vec<f64> = eig.values.iter().map(|e| (e - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
    eig.compose(&probs)
}

/// `ln Tr e^{-beta H}`.
pub fn ln_partition(h: &HermitianMatrix, beta: f64) -> f64 {
    let exps: Vec<f64> = eigh(h).values.iter().map(|e| -beta * e).collect();
    log_sum_exp(&exps)
}

/// `Z(beta) = Tr e^{-beta H}`.
pub fn partition(h: &HermitianMatrix, beta: f64) -> f64 {
    ln_partition(h, beta).exp()
}

/// Which inequalities hold (slack `>= -1e-9`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InequalityPasses {
    /// `E + S <= ln Z(-1)`.
    pub energy_entropy: bool,
    /// `-E + S <= ln Z(1)`.
    pub entropy_minus_energy: bool,
    /// `Tr(H e^H) - Z ln Z >= Tr(e^H ln rho)`.
    pub partition_log: bool,
    /// `D(rho || rho_H) >= 0`.
    pub relative_entropy: bool,
}

impl InequalityPasses {
    pub fn all(&self) -> bool {
        self.energy_entropy && self.entropy_minus_energy && self.partition_log && self.relative_entropy
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport {
    pub energy: f64,
    pub entropy: f64,
    /// `ln Z(-1)`.
    pub bound: f64,
    /// `ln Z(-1) - E - S`.
    pub slack: f64,
    /// `ln Z(1)`.
    pub diff_bound: f64,
    /// `ln Z(1) + E - S`.
    pub diff_slack: f64,
    pub weighted_lhs: f64,
    /// `-inf` for singular `rho`.
    pub weighted_rhs: f64,
    /// `D(rho || rho_H)` through the relative-entropy routine; equals `slack`.
    pub relative_entropy: f64,
    pub passes: InequalityPasses,
}

fn check_dims(rho: &HermitianMatrix, h: &HermitianMatrix) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Evaluates every inequality for an admissible `rho`.
pub fn check_bounds(rho: &HermitianMatrix, h: &HermitianMatrix) -> Result<InequalityReport> {
    check_dims(rho, h)?;
    let entropy = von_neumann_entropy(rho)?;
    let energy = trace_product(rho, h)?;
    let bound = ln_partition(h, -1.0);
    let diff_bound = ln_partition(h, 1.0);
    let slack = bound - energy - entropy;
    let diff_slack = diff_bound + energy - entropy;
    let (weighted_lhs, weighted_rhs) = weighted_terms(rho, h)?;
    let rel = relative_entropy(rho, &gibbs_like(h))?;
    let ok = |x: f64| x >= -tolerance::INEQUALITY;
    let passes = InequalityPasses {
        energy_entropy: ok(slack),
        entropy_minus_energy: ok(diff_slack),
        partition_log: weighted_rhs == f64::NEG_INFINITY || ok(weighted_lhs - weighted_rhs),
        relative_entropy: ok(rel),
    };
    Ok(InequalityReport {
        energy,
        entropy,
        bound,
        slack,
        diff_bound,
        diff_slack,
        weighted_lhs,
        weighted_rhs,
        relative_entropy: rel,
        passes,
    })
}

/// `(Tr(H e^H) - Z ln Z, Tr(e^H ln rho))` with `Z = Tr e^H`; the right side
/// is `-inf` when `rho` is singular.
pub fn weighted_terms(rho: &HermitianMatrix, h: &HermitianMatrix) -> Result<(f64, f64)> {
    check_dims(rho, h)?;
    let eig = eigh(h);
    let top = eig.values[eig.values.len() - 1];
    // e^H = e^top K with K = e^{H - top}
    let k: Vec<f64> = eig.values.iter().map(|e| (e - top).exp()).collect();
    let z_scaled: f64 = k.iter().sum();
    let ln_z = top + z_scaled.ln();
    let h_k: f64 = eig.values.iter().zip(&k).map(|(e, w)| e * w).sum();
    let lhs = top.exp() * (h_k - z_scaled * ln_z);

    let rho_eig = eigh(rho);
    if rho_eig.values[0] < -tolerance::ADMISSIBILITY {
        return Err(Error::Inadmissible {
            min_eigenvalue: rho_eig.values[0],
        });
    }
    if rho_eig.values[0] <= tolerance::SUPPORT {
        return Ok((lhs, f64::NEG_INFINITY));
    }
    let ln_rho = rho_eig.apply(f64::ln);
    let k_matrix = eig.compose(&k);
    let rhs = top.exp() * trace_product(&k_matrix, &ln_rho)?;
    Ok((lhs, rhs))
}

fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `F(h, delta) = (-delta h + 2 delta artanh(delta) + 2 ln cosh(h/2) + ln(1 - delta^2)) / 2`,
/// the qubit slack on the upper-energy extremal with traceless `H`.
pub fn qubit_f_closed(h: f64, delta: f64) -> Result<f64> {
    if !h.is_finite() || h < 0.0 {
        return Err(Error::OutOfRange(format!("h = {h} must be finite and nonnegative")));
    }
    if !delta.is_finite() || !(0.0..1.0).contains(&delta) {
        return Err(Error::OutOfRange(format!("delta = {delta} outside [0, 1)")));
    }
    Ok(0.5 * (-delta * h + 2.0 * delta * delta.atanh() + 2.0 * ln_cosh(0.5 * h) + (-delta * delta).ln_1p()))
}

/// Upper-energy qubit extremal for `H = qubit_hamiltonian(0, h1, h2, h3)` at `c_2 = (1 - delta^2)/4`.
pub fn qubit_upper_extremal(h1: f64, h2: f64, h3: f64, delta: f64) -> Result<(HermitianMatrix, HermitianMatrix)> {
    if !delta.is_finite() || !(0.0..1.0).contains(&delta) {
        return Err(Error::OutOfRange(format!("delta = {delta} outside [0, 1)")));
    }
    let hamiltonian = qubit_hamiltonian(0.0, h1, h2, h3);
    let c2 = 0.25 * (1.0 - delta * delta);
    let solutions = qubit_closed_form(&hamiltonian, c2)?;
    let upper = solutions.last().expect("closed form returns at least one solution");
    Ok((upper.state.clone(), hamiltonian))
}

/// The slack of [`check_bounds`] on the upper-energy extremal of `H = h sigma_z / 2`.
pub fn qubit_f_matrix(h: f64, delta: f64) -> Result<f64> {
    let (rho, hamiltonian) = qubit_upper_extremal(0.0, 0.0, h, delta)?;
    Ok(check_bounds(&rho, &hamiltonian)?.slack)
}

/// `ln Tr e^A - Tr(rho A) - S(rho)`.
pub fn observable_bound(rho: &HermitianMatrix, a: &HermitianMatrix) -> Result<f64> {
    check_dims(rho, a)?;
    let entropy = von_neumann_entropy(rho)?;
    Ok(ln_partition(a, -1.0) - trace_product(rho, a)? - entropy)
}

/// Uniform grid `start, .., stop` with `points` nodes.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..points)
            .map(|i| {
                if i == points - 1 {
                    stop
                } else {
                    start + (stop - start) * i as f64 / (points - 1) as f64
                }
            })
            .collect(),
    }
}

/// Axes of an `(h, delta)` surface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceGrid {
    pub h_min: f64,
    pub h_max: f64,
    pub h_points: usize,
    pub delta_min: f64,
    pub delta_max: f64,
    pub delta_points: usize,
}

impl Default for SurfaceGrid {
    fn default() -> Self {
        Self {
            h_min: 0.0,
            h_max: 6.0,
            h_points: 121,
            delta_min: 0.0,
            delta_max: 0.99,
            delta_points: 100,
        }
    }
}

impl SurfaceGrid {
    fn validate(&self) -> Result<()> {
        let finite = [self.h_min, self.h_max, self.delta_min, self.delta_max]
            .iter()
            .all(|x| x.is_finite());
        if !finite || self.h_points == 0 || self.delta_points == 0 {
            return Err(Error::OutOfRange("surface grid must be finite and non-empty".into()));
        }
        if self.h_min > self.h_max || self.delta_min > self.delta_max {
            return Err(Error::OutOfRange("surface grid bounds are reversed".into()));
        }
        if self.delta_min < 0.0 || self.delta_max >= 1.0 {
            return Err(Error::OutOfRange("delta must lie in [0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FPoint {
    pub h: f64,
    pub delta: f64,
    pub f: f64,
}

/// `F(h, delta)` over the grid, `h` outer and `delta` inner.
pub fn f_surface(grid: &SurfaceGrid) -> Result<Vec<FPoint>> {
    grid.validate()?;
    let deltas = linspace(grid.delta_min, grid.delta_max, grid.delta_points);
    let mut out = Vec::with_capacity(grid.h_points * grid.delta_points);
    for h in linspace(grid.h_min, grid.h_max, grid.h_points) {
        for &delta in &deltas {
            out.push(FPoint {
                h,
                delta,
                f: qubit_f_closed(h, delta)?,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaPoint {
    pub h2: f64,
    pub h3: f64,
    pub delta: f64,
    pub f_sigma_x: f64,
}

/// `h_1` on the sigma-x surface, so that `h = sqrt(1/2 + h_2^2 + h_3^2)`.
pub const SIGMA_SURFACE_H1: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// [`observable_bound`] with `A = sigma_x` on the upper-energy extremal of
/// `qubit_hamiltonian(0, 1/sqrt 2, h2, h3)`.
pub fn sigma_x_bound(h2: f64, h3: f64, delta: f64) -> Result<f64> {
    let (rho, _) = qubit_upper_extremal(SIGMA_SURFACE_H1, h2, h3, delta)?;
    observable_bound(&rho, &qubit_hamiltonian(0.0, 2.0, 0.0, 0.0))
}

/// Sigma-x surface over `(h, delta)`; each `h >= 1/sqrt 2` is realised with
/// `h_3 = 0` and `h_2 = sqrt(h^2 - 1/2)`. Grid values of `h` below `1/sqrt 2`
/// are clamped to it.
pub fn sigma_x_surface(grid: &SurfaceGrid) -> Result<Vec<SigmaPoint>> {
    grid.validate()?;
    let deltas = linspace(grid.delta_min, grid.delta_max, grid.delta_points);
    let mut out = Vec::with_capacity(grid.h_points * grid.delta_points);
    for h in linspace(grid.h_min, grid.h_max, grid.h_points) {
        let h2 = (h * h - 0.5).max(0.0).sqrt();
        for &delta in &deltas {
            out.push(SigmaPoint {
                h2,
                h3: 0.0,
                delta,
                f_sigma_x: sigma_x_bound(h2, 0.0, delta)?,
            });
        }
    }
    Ok(out)
}

/// Default sigma-x grid: `h` from `1/sqrt 2` to 6.
pub fn sigma_x_default_grid() -> SurfaceGrid {
    SurfaceGrid {
        h_min: SIGMA_SURFACE_H1,
        ..SurfaceGrid::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::qubit_hamiltonian;

    #[test]
    fn gibbs_of_zero_is_maximally_mixed() {
        let g = gibbs_like(&HermitianMatrix::zeros(3));
        assert!(g.max_abs_diff(&HermitianMatrix::identity(3).scale(1.0 / 3.0)) < 1e-15);
    }

    #[test]
    fn gibbs_forced_arithmetic() {
        let g = gibbs_like(&HermitianMatrix::from_diagonal(&[2f64.ln(), 0.0]));
        assert!(g.max_abs_diff(&HermitianMatrix::from_diagonal(&[2.0 / 3.0, 1.0 / 3.0])) < 1e-15);
    }

    #[test]
    fn gibbs_shift_invariant_and_overflow_safe() {
        let h = qubit_hamiltonian(0.3, 1.0, -0.5, 0.25);
        let a = gibbs_like(&h);
        let b = gibbs_like(&h.shifted(900.0));
        assert!(a.max_abs_diff(&b) < 1e-12);
        assert!((b.trace() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn partition_values() {
        for beta in [-2.0, -1.0, 0.0, 0.7] {
            assert!((partition(&HermitianMatrix::zeros(4), beta) - 4.0).abs() < 1e-14);
        }
        let (h0, h1, h2, h3): (f64, f64, f64, f64) = (1.0, 2f64.sqrt(), std::f64::consts::E, std::f64::consts::PI);
        let h = (h1 * h1 + h2 * h2 + h3 * h3).sqrt();
        let expected = (h0 / 2.0).exp() * 2.0 * (h / 2.0).cosh();
        let z = partition(&qubit_hamiltonian(h0, h1, h2, h3), -1.0);
        assert!((z - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn equality_at_gibbs_state() {
        let h = qubit_hamiltonian(0.3, 1.0, -0.5, 0.25);
        let r = check_bounds(&gibbs_like(&h), &h).unwrap();
        assert!(r.slack.abs() < 1e-12);
        assert!((r.weighted_lhs - r.weighted_rhs).abs() < 1e-12);
        assert!(r.passes.all());
    }

    #[test]
    fn maximally_mixed_zero_hamiltonian() {
        let rho = HermitianMatrix::identity(2).scale(0.5);
        let r = check_bounds(&rho, &HermitianMatrix::zeros(2)).unwrap();
        assert!(r.energy.abs() < 1e-15);
        assert!((r.entropy - 2f64.ln()).abs() < 1e-15);
        assert!((r.bound - 2f64.ln()).abs() < 1e-15);
        assert!(r.slack.abs() < 1e-15);
        let d = 3.0_f64;
        let (lhs, rhs) = weighted_terms(&HermitianMatrix::identity(3).scale(1.0 / d), &HermitianMatrix::zeros(3)).unwrap();
        assert!((lhs + d * d.ln()).abs() < 1e-13);
        assert!((rhs + d * d.ln()).abs() < 1e-13);
    }

    #[test]
    fn singular_state_gives_negative_infinity() {
        let rho = HermitianMatrix::from_diagonal(&[1.0, 0.0]);
        let (_, rhs) = weighted_terms(&rho, &qubit_hamiltonian(0.0, 1.0, 0.0, 0.0)).unwrap();
        assert_eq!(rhs, f64::NEG_INFINITY);
        let r = check_bounds(&rho, &qubit_hamiltonian(0.0, 1.0, 0.0, 0.0)).unwrap();
        assert!(r.passes.partition_log);
    }

    #[test]
    fn closed_form_special_values() {
        assert_eq!(qubit_f_closed(0.0, 0.0).unwrap(), 0.0);
        for h in [0.5, 2.0, 6.0, 40.0] {
            assert!((qubit_f_closed(h, 0.0).unwrap() - (h / 2.0).cosh().ln()).abs() < 1e-12);
        }
        assert!(qubit_f_closed(1.0, 1.0).is_err());
        assert!(qubit_f_closed(-1.0, 0.5).is_err());
    }

    #[test]
    fn closed_form_matches_matrix_path() {
        for h in [0.0, 0.3, 2.0, 5.5] {
            for delta in [0.0, 0.2, 0.75, 0.99] {
                let a = qubit_f_closed(h, delta).unwrap();
                let b = qubit_f_matrix(h, delta).unwrap();
                assert!((a - b).abs() < 1e-10, "h={h} delta={delta}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn sigma_x_values() {
        let sx = qubit_hamiltonian(0.0, 2.0, 0.0, 0.0);
        let e = std::f64::consts::E;
        let mixed = observable_bound(&HermitianMatrix::identity(2).scale(0.5), &sx).unwrap();
        assert!((mixed - ((e + 1.0 / e).ln() - 2f64.ln())).abs() < 1e-14);
        let plus = HermitianMatrix::from_real_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let top = observable_bound(&plus, &sx).unwrap();
        assert!((top - ((e + 1.0 / e).ln() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.0, 0.25, 51);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[50], 0.25);
        assert!(g.iter().all(|&x| x <= 0.25));
    }
}

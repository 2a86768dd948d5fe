//! Concrete Hamiltonians: the generic qubit, spin-j angular momentum and the
//! two-mode Bose-Einstein condensate `a Jz + b Jz^2 + c Jx`.
//!
//! Spin matrices use the `|j, m>` basis with `m` descending, so `Jz` is
//! `diag(j, j-1, .., -j)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, SquareMatrix};
use crate::tolerance::MAX_DIM;

/// The 2x2 matrix `1/2 [[h0 + h3, h1 - i h2], [h1 + i h2, h0 - h3]]`.
pub fn qubit_hamiltonian(h0: f64, h1: f64, h2: f64, h3: f64) -> HermitianMatrix {
    let mut m = SquareMatrix::zeros(2);
    m[(0, 0)] = Complex64::new(0.5 * (h0 + h3), 0.0);
    m[(1, 1)] = Complex64::new(0.5 * (h0 - h3), 0.0);
    m[(0, 1)] = Complex64::new(0.5 * h1, -0.5 * h2);
    m[(1, 0)] = Complex64::new(0.5 * h1, 0.5 * h2);
    HermitianMatrix::symmetrized(m)
}

/// Spin quantum number stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Spin {
    two_j: u32,
}

impl Spin {
    pub fn from_two_j(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::OutOfRange("spin j must be at least 1/2".into()));
        }
        if two_j as usize + 1 > MAX_DIM {
            return Err(Error::DimensionTooLarge(two_j as usize + 1));
        }
        Ok(Self { two_j })
    }

    /// Accepts integer or half-integer `j`.
    pub fn new(j: f64) -> Result<Self> {
        let two_j = 2.0 * j;
        if !two_j.is_finite() || (two_j - two_j.round()).abs() > 1e-12 || two_j < 1.0 {
            return Err(Error::OutOfRange(format!(
                "spin j = {j} is not a positive integer or half-integer"
            )));
        }
        Self::from_two_j(two_j.round() as u32)
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    /// `2j + 1`.
    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// `m` values in basis order: `j, j - 1, .., -j`.
    pub fn magnetic_numbers(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.j() - k as f64).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SpinMatrices {
    pub x: HermitianMatrix,
    pub y: HermitianMatrix,
    pub z: HermitianMatrix,
}

/// `Jx, Jy, Jz` from the ladder operators,
/// `J+ |j, m> = sqrt(j(j+1) - m(m+1)) |j, m+1>`.
pub fn spin_matrices(spin: Spin) -> SpinMatrices {
    let d = spin.dim();
    let j = spin.j();
    let ms = spin.magnetic_numbers();
    let mut x = SquareMatrix::zeros(d);
    let mut y = SquareMatrix::zeros(d);
    // Row k - 1 holds m + 1 when row k holds m.
    for k in 1..d {
        let m = ms[k];
        let amp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        // <m+1| J+ |m> = amp; Jx = (J+ + J-)/2, Jy = (J+ - J-)/(2i)
        x[(k - 1, k)] = Complex64::new(0.5 * amp, 0.0);
        x[(k, k - 1)] = Complex64::new(0.5 * amp, 0.0);
        y[(k - 1, k)] = Complex64::new(0.0, -0.5 * amp);
        y[(k, k - 1)] = Complex64::new(0.0, 0.5 * amp);
    }
    SpinMatrices {
        x: HermitianMatrix::symmetrized(x),
        y: HermitianMatrix::symmetrized(y),
        z: HermitianMatrix::from_diagonal(&ms),
    }
}

/// Parameters of `a Jz + b Jz^2 + c Jx`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BecParams {
    /// Chemical-potential difference between the wells.
    pub a: f64,
    /// Atom-atom interaction.
    pub b: f64,
    /// Tunnelling.
    pub c: f64,
    pub spin: Spin,
}

impl BecParams {
    /// Qutrit (`j = 1`) parameters.
    pub fn qutrit(a: f64, b: f64, c: f64) -> Self {
        Self {
            a,
            b,
            c,
            spin: Spin { two_j: 2 },
        }
    }

    pub fn with_spin(a: f64, b: f64, c: f64, spin: Spin) -> Self {
        Self { a, b, c, spin }
    }
}

pub fn bec_hamiltonian(p: &BecParams) -> HermitianMatrix {
    let j = spin_matrices(p.spin);
    let ms = p.spin.magnetic_numbers();
    let diag: Vec<f64> = ms.iter().map(|m| p.a * m + p.b * m * m).collect();
    HermitianMatrix::from_diagonal(&diag).add(&j.x.scale(p.c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{build_basis, expand};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn commutator_residual(s: &SpinMatrices) -> f64 {
        let i = Complex64::new(0.0, 1.0);
        let xy = s.x.as_matrix().commutator(s.y.as_matrix());
        let yz = s.y.as_matrix().commutator(s.z.as_matrix());
        let zx = s.z.as_matrix().commutator(s.x.as_matrix());
        let r1 = xy.max_abs_diff(&s.z.as_matrix().scale_complex(i));
        let r2 = yz.max_abs_diff(&s.x.as_matrix().scale_complex(i));
        let r3 = zx.max_abs_diff(&s.y.as_matrix().scale_complex(i));
        r1.max(r2).max(r3)
    }

    #[test]
    fn qubit_layout() {
        let h = qubit_hamiltonian(0.0, 0.0, 0.0, 1.0);
        assert_eq!(h, HermitianMatrix::from_diagonal(&[0.5, -0.5]));
        assert_eq!(qubit_hamiltonian(2.0, 0.0, 0.0, 0.0), HermitianMatrix::identity(2));
        let basis = build_basis(2).unwrap();
        let form = expand(&qubit_hamiltonian(1.0, 2f64.sqrt(), std::f64::consts::E, std::f64::consts::PI), &basis).unwrap();
        assert!((form.h0 - 1.0).abs() < 1e-15);
        assert!((form.coeffs[0] - 2f64.sqrt()).abs() < 1e-15);
        assert!((form.coeffs[1] - std::f64::consts::E).abs() < 1e-15);
        assert!((form.coeffs[2] - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn spin_half_is_half_pauli() {
        let s = spin_matrices(Spin::new(0.5).unwrap());
        let basis = build_basis(2).unwrap();
        assert!(s.x.max_abs_diff(&basis.generator(0).scale(0.5)) < 1e-15);
        assert!(s.y.max_abs_diff(&basis.generator(1).scale(0.5)) < 1e-15);
        assert!(s.z.max_abs_diff(&basis.generator(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn spin_one() {
        let s = spin_matrices(Spin::new(1.0).unwrap());
        assert_eq!(s.z, HermitianMatrix::from_diagonal(&[1.0, 0.0, -1.0]));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expected = HermitianMatrix::from_real_rows(&[vec![0., r, 0.], vec![r, 0., r], vec![0., r, 0.]]).unwrap();
        assert!(s.x.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn commutation_relations() {
        for two_j in 1..=8 {
            let s = spin_matrices(Spin::from_two_j(two_j).unwrap());
            assert!(commutator_residual(&s) <= 1e-12, "2j = {two_j}");
        }
    }

    #[test]
    fn spin_validation() {
        assert!(Spin::new(0.0).is_err());
        assert!(Spin::new(0.75).is_err());
        assert!(Spin::new(16.0).is_err());
        assert_eq!(Spin::new(1.5).unwrap().dim(), 4);
    }

    #[test]
    fn zero_bec_is_zero() {
        assert_eq!(bec_hamiltonian(&BecParams::qutrit(0.0, 0.0, 0.0)), HermitianMatrix::zeros(3));
    }

    #[test]
    fn qutrit_bec_coefficients() {
        let basis = build_basis(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let (a, b, c): (f64, f64, f64) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let form = expand(&bec_hamiltonian(&BecParams::qutrit(a, b, c)), &basis).unwrap();
            let mut expected = vec![0.0; 8];
            expected[0] = 2f64.sqrt() * c;
            expected[2] = 2f64.sqrt() * c;
            expected[6] = a + b;
            expected[7] = (3.0 * a - b) / 3f64.sqrt();
            assert!((form.h0 - 2.0 * b).abs() < 1e-12);
            for (x, y) in form.coeffs.iter().zip(&expected) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bec_trace_is_b_sum_m_squared() {
        for two_j in 1..=6 {
            let spin = Spin::from_two_j(two_j).unwrap();
            let h = bec_hamiltonian(&BecParams::with_spin(0.7, -1.3, 0.4, spin));
            let sum_m2: f64 = spin.magnetic_numbers().iter().map(|m| m * m).sum();
            assert!((h.trace() - (-1.3) * sum_m2).abs() < 1e-12);
        }
    }
}

//! Generalized Gell-Mann generators of SU(d) and the coefficient form of operators.
//!
//! Generator order: all symmetric off-diagonal generators
//! `u_jk = E_jk + E_kj` in lexicographic `(j, k)` order, then all
//! antisymmetric ones `v_jk = -i (E_jk - E_kj)` in the same order, then the
//! `d - 1` diagonal generators
//! `w_l = sqrt(2 / (l (l + 1))) diag(1, ..., 1, -l, 0, ..., 0)` with `l` ones.
//! For `d = 2` this is `(sigma_x, sigma_y, sigma_z)`; for `d = 3` it places the
//! real off-diagonal parts in `lambda_1..3`, the imaginary parts in `lambda_4..6`
//! and the diagonal in `lambda_7, lambda_8`.
//!
//! Every generator is Hermitian, traceless and satisfies
//! `Tr(lambda_k lambda_j) = 2 delta_kj`, so an operator `M` expands as
//! `M = h0 / d I + 1/2 sum_k h_k lambda_k` with `h0 = Tr M`, `h_k = Tr(M lambda_k)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, SquareMatrix};
use crate::tolerance::MAX_DIM;

/// Where a generator's nonzero entries sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorLabel {
    /// `E_jk + E_kj`, `j < k`.
    Symmetric { j: usize, k: usize },
    /// `-i (E_jk - E_kj)`, `j < k`.
    Antisymmetric { j: usize, k: usize },
    /// Normalised `diag(1, ..., 1, -l, 0, ...)` with `l` leading ones.
    Diagonal { level: usize },
}

/// Ordering convention of a [`GeneratorBasis`]. Only one is implemented.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordering {
    SymmetricAntisymmetricDiagonal,
}

#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    dim: usize,
    labels: Vec<GeneratorLabel>,
    generators: Vec<HermitianMatrix>,
    /// Diagonal entries of each `w_l`, indexed by `level - 1`.
    diagonals: Vec<Vec<f64>>,
}

/// `h0 = Tr M` and `h_k = Tr(M lambda_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientForm {
    pub h0: f64,
    pub coeffs: Vec<f64>,
}

impl CoefficientForm {
    pub fn new(h0: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !h0.is_finite() || coeffs.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { h0, coeffs })
    }

    /// Euclidean norm of the traceless part, `sqrt(sum h_k^2)`.
    pub fn vector_norm(&self) -> f64 {
        self.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl GeneratorBasis {
    pub fn new(dim: usize) -> Result<Self> {
        build_basis(dim)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d^2 - 1`.
    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ordering(&self) -> Ordering {
        Ordering::SymmetricAntisymmetricDiagonal
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn generators(&self) -> &[HermitianMatrix] {
        &self.generators
    }

    pub fn generator(&self, k: usize) -> &HermitianMatrix {
        &self.generators[k]
    }

    /// `Tr(M lambda_k)` for every generator, read off the sparse structure.
    pub fn project(&self, m: &SquareMatrix) -> Vec<f64> {
        self.labels
            .iter()
            .map(|label| match *label {
                // Tr(M (E_jk + E_kj)) = M_kj + M_jk
                GeneratorLabel::Symmetric { j, k } => (m[(k, j)] + m[(j, k)]).re,
                // Tr(M (-i)(E_jk - E_kj)) = -i (M_kj - M_jk)
                GeneratorLabel::Antisymmetric { j, k } => {
                    (Complex64::new(0.0, -1.0) * (m[(k, j)] - m[(j, k)])).re
                }
                GeneratorLabel::Diagonal { level } => self.diagonals[level - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, w)| w * m[(i, i)].re)
                    .sum(),
            })
            .collect()
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found,
            });
        }
        Ok(())
    }

    /// `1/2 sum_k x_k lambda_k` plus `diag_offset` on the diagonal.
    fn combine(&self, diag_offset: f64, coeffs: &[f64]) -> HermitianMatrix {
        let d = self.dim;
        let mut m = SquareMatrix::zeros(d);
        for i in 0..d {
            m[(i, i)] = Complex64::new(diag_offset, 0.0);
        }
        for (label, &x) in self.labels.iter().zip(coeffs) {
            let half = 0.5 * x;
            match *label {
                GeneratorLabel::Symmetric { j, k } => {
                    m[(j, k)] += Complex64::new(half, 0.0);
                    m[(k, j)] += Complex64::new(half, 0.0);
                }
                GeneratorLabel::Antisymmetric { j, k } => {
                    m[(j, k)] += Complex64::new(0.0, -half);
                    m[(k, j)] += Complex64::new(0.0, half);
                }
                GeneratorLabel::Diagonal { level } => {
                    for (i, w) in self.diagonals[level - 1].iter().enumerate() {
                        m[(i, i)] += Complex64::new(half * w, 0.0);
                    }
                }
            }
        }
        HermitianMatrix::from_square_unchecked(m)
    }
}

/// Builds the ordered generator set for `2 <= d <= 32`.
pub fn build_basis(dim: usize) -> Result<GeneratorBasis> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    let mut labels = Vec::with_capacity(dim * dim - 1);
    for j in 0..dim {
        for k in (j + 1)..dim {
            labels.push(GeneratorLabel::Symmetric { j, k });
        }
    }
    for j in 0..dim {
        for k in (j + 1)..dim {
            labels.push(GeneratorLabel::Antisymmetric { j, k });
        }
    }
    let mut diagonals = Vec::with_capacity(dim - 1);
    for level in 1..dim {
        let norm = (2.0 / (level * (level + 1)) as f64).sqrt();
        let mut diag = vec![0.0; dim];
        for x in diag.iter_mut().take(level) {
            *x = norm;
        }
        diag[level] = -(level as f64) * norm;
        diagonals.push(diag);
        labels.push(GeneratorLabel::Diagonal { level });
    }

    let generators = labels
        .iter()
        .map(|label| {
            let mut m = SquareMatrix::zeros(dim);
            match *label {
                GeneratorLabel::Symmetric { j, k } => {
                    m[(j, k)] = Complex64::new(1.0, 0.0);
                    m[(k, j)] = Complex64::new(1.0, 0.0);
                }
                GeneratorLabel::Antisymmetric { j, k } => {
                    m[(j, k)] = Complex64::new(0.0, -1.0);
                    m[(k, j)] = Complex64::new(0.0, 1.0);
                }
                GeneratorLabel::Diagonal { level } => {
                    for (i, &w) in diagonals[level - 1].iter().enumerate() {
                        m[(i, i)] = Complex64::new(w, 0.0);
                    }
                }
            }
            HermitianMatrix::from_square_unchecked(m)
        })
        .collect();

    Ok(GeneratorBasis {
        dim,
        labels,
        generators,
        diagonals,
    })
}

/// `h0 = Tr M`, `h_k = Tr(M lambda_k)`.
pub fn expand(m: &HermitianMatrix, basis: &GeneratorBasis) -> Result<CoefficientForm> {
    basis.check_dim(m.dim())?;
    Ok(CoefficientForm {
        h0: m.trace(),
        coeffs: basis.project(m.as_matrix()),
    })
}

/// `h0 / d I + 1/2 sum_k h_k lambda_k`.
pub fn reconstruct(c: &CoefficientForm, basis: &GeneratorBasis) -> Result<HermitianMatrix> {
    basis.check_len(c.coeffs.len())?;
    Ok(basis.combine(c.h0 / basis.dim as f64, &c.coeffs))
}

/// `I / d + 1/2 sum_k lambda_k lambda_hat_k`: unit trace, not necessarily positive.
pub fn bloch_to_density(lambda: &[f64], basis: &GeneratorBasis) -> Result<HermitianMatrix> {
    basis.check_len(lambda.len())?;
    Ok(basis.combine(1.0 / basis.dim as f64, lambda))
}

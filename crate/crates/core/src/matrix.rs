//! Dense complex matrices, the Hermitian eigensolver and spectral matrix functions.
//!
//! The eigensolver is a cyclic complex Jacobi method. Each rotation first
//! removes the phase of the pivot entry and then applies the classical real
//! symmetric rotation, so every sweep is a product of exact 2x2 unitaries and
//! the result is bit-for-bit reproducible for identical input.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

const MAX_SWEEPS: usize = 100;

/// Row-major dense square complex matrix.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|A_ij - conj(A_ji)|`.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `Tr(A B)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Complex64 {
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    /// Largest entrywise distance to another matrix of the same size.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a> Mul<&'a SquareMatrix> for &'a SquareMatrix {
    type Output = SquareMatrix;

    fn mul(self, rhs: &'a SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a SquareMatrix> for &'a SquareMatrix {
    type Output = SquareMatrix;

    fn add(self, rhs: &'a SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        SquareMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a SquareMatrix> for &'a SquareMatrix {
    type Output = SquareMatrix;

    fn sub(self, rhs: &'a SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        SquareMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A dense Hermitian matrix: Hamiltonians, observables and density matrices.
///
/// Construction checks `A = A^dagger` to [`tolerance::CONSTRUCTION`] (scaled by
/// the largest entry when that exceeds one) and then stores the exactly
/// symmetrised matrix `(A + A^dagger) / 2`.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix(SquareMatrix);

impl HermitianMatrix {
    pub fn new(m: SquareMatrix) -> Result<Self> {
        if m.dim < 2 {
            return Err(Error::DimensionTooSmall(m.dim));
        }
        if m.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let asymmetry = m.max_asymmetry();
        if asymmetry > tolerance::CONSTRUCTION * m.max_abs().max(1.0) {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(Self::symmetrized(m))
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        Self::new(SquareMatrix::from_rows(rows)?)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(SquareMatrix::zeros(dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(SquareMatrix::identity(dim))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self(SquareMatrix::from_diagonal(diag))
    }

    /// Skips the Hermiticity check; the caller guarantees the structure.
    pub(crate) fn from_square_unchecked(m: SquareMatrix) -> Self {
        Self(m)
    }

    /// `(A + A^dagger) / 2` of any square matrix.
    pub fn symmetrized(m: SquareMatrix) -> Self {
        let n = m.dim;
        let mut out = m;
        for i in 0..n {
            out[(i, i)] = Complex64::new(out[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let avg = (out[(i, j)] + out[(j, i)].conj()) * 0.5;
                out[(i, j)] = avg;
                out[(j, i)] = avg.conj();
            }
        }
        Self(out)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    #[inline]
    pub fn as_matrix(&self) -> &SquareMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale(s))
    }

    /// `A + s I`.
    pub fn shifted(&self, s: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.dim {
            m[(i, i)] += Complex64::new(s, 0.0);
        }
        Self(m)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    /// `U A U^dagger` for a unitary `U`.
    pub fn conjugate_by(&self, u: &SquareMatrix) -> Self {
        Self::symmetrized(&(u * &self.0) * &u.adjoint())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    /// Integer power by repeated multiplication, `A^0 = I`.
    pub fn powers(&self, max_power: usize) -> Vec<SquareMatrix> {
        let mut out = Vec::with_capacity(max_power + 1);
        out.push(SquareMatrix::identity(self.dim()));
        for k in 1..=max_power {
            let next = &out[k - 1] * &self.0;
            out.push(next);
        }
        out
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.0)
    }
}

/// Ascending eigenvalues with orthonormal eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: SquareMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V diag(f(e)) V^dagger`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let mapped: Vec<f64> = self.values.iter().map(|&e| f(e)).collect();
        self.compose(&mapped)
    }

    /// `V diag(values) V^dagger` for a replacement spectrum in the same order.
    pub fn compose(&self, values: &[f64]) -> HermitianMatrix {
        let n = self.dim();
        let v = &self.vectors;
        let mut out = SquareMatrix::zeros(n);
        for k in 0..n {
            let w = values[k];
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        HermitianMatrix::symmetrized(out)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.compose(&self.values)
    }

    /// Column `k` as a vector.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// Orthogonal projector onto the span of the given eigenvector columns.
    pub fn projector(&self, columns: &[usize]) -> HermitianMatrix {
        let mut weights = vec![0.0; self.dim()];
        for &k in columns {
            weights[k] = 1.0;
        }
        self.compose(&weights)
    }

    /// `<v_k| A |v_k>` for every eigenvector.
    pub fn diagonal_of(&self, a: &HermitianMatrix) -> Vec<f64> {
        let n = self.dim();
        let v = &self.vectors;
        (0..n)
            .map(|k| {
                let mut acc = ZERO;
                for i in 0..n {
                    let mut row = ZERO;
                    for j in 0..n {
                        row += a[(i, j)] * v[(j, k)];
                    }
                    acc += v[(i, k)].conj() * row;
                }
                acc.re
            })
            .collect()
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn eigh(m: &HermitianMatrix) -> EigenDecomposition {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = SquareMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);

    // One extra sweep after the threshold is met pushes the off-diagonal
    // mass down to round-off.
    let mut polishing = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= tolerance::JACOBI_OFF_DIAGONAL * scale {
            if polishing {
                break;
            }
            polishing = true;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-18 * scale {
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = apq / mag;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                let u00 = Complex64::new(c, 0.0);
                let u01 = Complex64::new(s, 0.0);
                let u10 = -phase.conj() * s;
                let u11 = phase.conj() * c;
                rotate_columns(&mut a, p, q, u00, u01, u10, u11);
                rotate_rows(&mut a, p, q, u00, u01, u10, u11);
                rotate_columns(&mut v, p, q, u00, u01, u10, u11);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = SquareMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    EigenDecomposition { values, vectors }
}

/// Eigenvalues only, ascending.
pub fn eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    eigh(m).values
}

fn off_diagonal_norm(a: &SquareMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

#[inline]
fn rotate_columns(
    m: &mut SquareMatrix,
    p: usize,
    q: usize,
    u00: Complex64,
    u01: Complex64,
    u10: Complex64,
    u11: Complex64,
) {
    for k in 0..m.dim() {
        let xp = m[(k, p)];
        let xq = m[(k, q)];
        m[(k, p)] = xp * u00 + xq * u10;
        m[(k, q)] = xp * u01 + xq * u11;
    }
}

#[inline]
fn rotate_rows(
    m: &mut SquareMatrix,
    p: usize,
    q: usize,
    u00: Complex64,
    u01: Complex64,
    u10: Complex64,
    u11: Complex64,
) {
    for k in 0..m.dim() {
        let xp = m[(p, k)];
        let xq = m[(q, k)];
        m[(p, k)] = u00.conj() * xp + u10.conj() * xq;
        m[(q, k)] = u01.conj() * xp + u11.conj() * xq;
    }
}

/// `V f(diag) V^dagger` for an arbitrary real function of the eigenvalues.
pub fn mat_fn(m: &HermitianMatrix, f: impl Fn(f64) -> f64) -> HermitianMatrix {
    eigh(m).apply(f)
}

pub fn expm(m: &HermitianMatrix) -> HermitianMatrix {
    mat_fn(m, f64::exp)
}

/// Matrix logarithm; every eigenvalue must exceed [`tolerance::ADMISSIBILITY`].
pub fn logm(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    let eig = eigh(m);
    if let Some(&e) = eig.values.first() {
        if e <= tolerance::ADMISSIBILITY {
            return Err(Error::LogDomain { eigenvalue: e });
        }
    }
    Ok(eig.apply(f64::ln))
}

/// `Tr(A B)`, real for Hermitian inputs.
pub fn trace_product(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.as_matrix().trace_of_product(b.as_matrix()).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let e = eigh(&HermitianMatrix::identity(3));
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_is_sorted() {
        let e = eigh(&HermitianMatrix::from_diagonal(&[3.0, 1.0, 2.0]));
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn qubit_spectrum_matches_closed_form() {
        let (h0, h1, h2, h3) = (1.0, 2f64.sqrt(), std::f64::consts::E, std::f64::consts::PI);
        let m = HermitianMatrix::from_rows(&[
            vec![c((h0 + h3) / 2.0, 0.0), c(h1 / 2.0, -h2 / 2.0)],
            vec![c(h1 / 2.0, h2 / 2.0), c((h0 - h3) / 2.0, 0.0)],
        ])
        .unwrap();
        let h = (h1 * h1 + h2 * h2 + h3 * h3).sqrt();
        assert!((h - 4.388469).abs() < 1e-6);
        let e = eigh(&m);
        assert!((e.values[0] - (1.0 - h) / 2.0).abs() < 1e-13);
        assert!((e.values[1] - (1.0 + h) / 2.0).abs() < 1e-13);
        assert!((e.values[0] + 1.6942345).abs() < 1e-6);
        assert!((e.values[1] - 2.6942345).abs() < 1e-6);
    }

    #[test]
    fn rejects_non_hermitian_with_diagnostic() {
        let err = HermitianMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.5, 0.0), c(0.0, 0.0)]])
            .unwrap_err();
        match err {
            Error::NotHermitian { asymmetry } => assert!((asymmetry - 0.5).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = SquareMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0)]]).unwrap_err();
        assert!(matches!(err, Error::NotSquare { .. }));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = expm(&HermitianMatrix::zeros(2));
        assert!(e.max_abs_diff(&HermitianMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn exp_of_log_two() {
        let e = expm(&HermitianMatrix::from_diagonal(&[0.0, 2f64.ln()]));
        assert!(e.max_abs_diff(&HermitianMatrix::from_diagonal(&[1.0, 2.0])) < 1e-14);
    }

    #[test]
    fn log_inverts_exp() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = random::hermitian(4, &mut rng);
            let back = logm(&expm(&m)).unwrap();
            assert!(back.max_abs_diff(&m) <= 1e-9);
        }
    }

    #[test]
    fn log_domain_error() {
        let m = HermitianMatrix::from_diagonal(&[1.0, 0.0]);
        assert!(matches!(logm(&m), Err(Error::LogDomain { .. })));
    }

    #[test]
    fn trace_products() {
        let i3 = HermitianMatrix::identity(3);
        assert_eq!(trace_product(&i3, &i3).unwrap(), 3.0);
        let i2 = HermitianMatrix::identity(2);
        assert!(matches!(
            trace_product(&i3, &i2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn exp_commutes_with_argument() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 2..=6 {
            let m = random::hermitian(d, &mut rng);
            let e = expm(&m);
            let comm = m.as_matrix().commutator(e.as_matrix());
            assert!(comm.max_abs() <= 1e-10 * e.as_matrix().max_abs().max(1.0));
        }
    }

    #[test]
    fn degenerate_cluster_projector_is_stable() {
        // diag(1, 1, 2) rotated: the projector onto the doubly degenerate level is unique.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random::unitary(3, &mut rng);
        let m = HermitianMatrix::from_diagonal(&[1.0, 1.0, 2.0]).conjugate_by(&u);
        let e = eigh(&m);
        let p = e.projector(&[0, 1]);
        let expected = HermitianMatrix::from_diagonal(&[1.0, 1.0, 0.0]).conjugate_by(&u);
        assert!(p.max_abs_diff(&expected) < 1e-12);
    }
}

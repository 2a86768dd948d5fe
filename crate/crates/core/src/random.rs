//! Seeded random matrices and states.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::matrix::{HermitianMatrix, SquareMatrix};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Hermitian matrix with independent standard normal entries (GUE-like).
pub fn hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianMatrix {
    let mut m = SquareMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(normal(rng), 0.0);
        for j in (i + 1)..dim {
            let z = Complex64::new(normal(rng), normal(rng)) * std::f64::consts::FRAC_1_SQRT_2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::symmetrized(m)
}

/// Haar-distributed unitary: Gram-Schmidt on a complex Ginibre matrix.
pub fn unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> SquareMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| Complex64::new(normal(rng), normal(rng))).collect())
        .collect();
    for k in 0..dim {
        for j in 0..k {
            let (done, rest) = cols.split_at_mut(k);
            let proj: Complex64 = done[j]
                .iter()
                .zip(rest[0].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            for (x, q) in rest[0].iter_mut().zip(done[j].iter()) {
                *x -= proj * q;
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
    }
    let mut u = SquareMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// Probability vector drawn uniformly from the simplex.
pub fn simplex_point<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..dim).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Full-rank mixed state with a uniform spectrum on the simplex and Haar eigenbasis.
pub fn density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianMatrix {
    let spectrum = simplex_point(dim, rng);
    with_spectrum(&spectrum, rng)
}

/// `U diag(spectrum) U^dagger` with Haar `U`.
pub fn with_spectrum<R: Rng + ?Sized>(spectrum: &[f64], rng: &mut R) -> HermitianMatrix {
    let u = unitary(spectrum.len(), rng);
    HermitianMatrix::from_diagonal(spectrum).conjugate_by(&u)
}

/// Haar-random pure state projector.
pub fn pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianMatrix {
    let mut spectrum = vec![0.0; dim];
    spectrum[0] = 1.0;
    with_spectrum(&spectrum, rng)
}

/// Random admissible state of random rank between 1 and `dim`.
pub fn density_any_rank<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianMatrix {
    let rank = rng.random_range(1..=dim);
    let mut spectrum = simplex_point(rank, rng);
    spectrum.resize(dim, 0.0);
    with_spectrum(&spectrum, rng)
}

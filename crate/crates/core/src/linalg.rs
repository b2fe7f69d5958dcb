//! Small dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues in non-increasing order.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Sorted (non-increasing) eigenvalues of a Hermitian matrix.
pub fn hermitian_spectrum(m: &CMatrix) -> Vec<f64> {
    hermitian_eigen(m).0
}

/// `exp(i·h)` for Hermitian `h`.
pub fn expi_hermitian(h: &CMatrix) -> CMatrix {
    let (values, v) = hermitian_eigen(h);
    let n = h.nrows();
    let mut scaled = v.clone();
    for c in 0..n {
        let phase = Complex64::from_polar(1.0, values[c]);
        for r in 0..n {
            scaled[(r, c)] *= phase;
        }
    }
    scaled * v.adjoint()
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn frobenius_sq(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Largest singular value with a pair of unit singular vectors `(left, right)`
/// such that `left* m right = σ`.
pub fn top_singular(m: &CMatrix) -> (f64, CVector, CVector) {
    let n = m.ncols();
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let asym = m
        .iter()
        .zip(m.adjoint().iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if asym <= 1e-13 * scale.max(1.0) {
        let (values, v) = hermitian_eigen(m);
        let (idx, lambda) = if values[0].abs() >= values[n - 1].abs() {
            (0, values[0])
        } else {
            (n - 1, values[n - 1])
        };
        let right = v.column(idx).into_owned();
        let left = if lambda < 0.0 {
            -right.clone()
        } else {
            right.clone()
        };
        return (lambda.abs(), left, right);
    }
    let gram = m.adjoint() * m;
    let (_, v) = hermitian_eigen(&gram);
    let right: CVector = v.column(0).into_owned();
    let image = m * &right;
    let sigma = image.norm();
    let left = if sigma > 0.0 {
        image / Complex64::new(sigma, 0.0)
    } else {
        right.clone()
    };
    (sigma, left, right)
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    hermitian_part(&g)
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector {
    loop {
        let v = CVector::from_fn(n, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let norm = v.norm();
        if norm > 1e-8 {
            return v / Complex64::new(norm, 0.0);
        }
    }
}

/// A unitary drawn as `exp(i·π·H)` for a Gaussian Hermitian `H`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let h = random_hermitian(rng, n) * Complex64::new(std::f64::consts::PI, 0.0);
    expi_hermitian(&h)
}

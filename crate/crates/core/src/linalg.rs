//! Small dense linear-algebra helpers shared across the crate.

use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermitian eigendecomposition, eigenvalues ascending.
pub fn eigh(matrix: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = matrix.clone().symmetric_eigen();
    let dim = matrix.nrows();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(dim, dim);
    for (col, &src) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Max |A − A†| entry.
pub fn hermiticity_error(matrix: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..matrix.nrows() {
        for j in i..matrix.ncols() {
            worst = worst.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn require_hermitian(matrix: &DMatrix<Complex64>, tol: f64) -> Result<()> {
    let err = hermiticity_error(matrix);
    if err > tol {
        return Err(Error::NotHermitian(err));
    }
    Ok(())
}

/// Spectral norm ‖A‖₂ = sqrt(λ_max(A†A)).
pub fn spectral_norm(matrix: &DMatrix<Complex64>) -> f64 {
    let gram = matrix.adjoint() * matrix;
    let (values, _) = eigh(&gram);
    values.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// min over a single global phase of ‖A − e^{iφ}B‖₂.
///
/// Seeded at the Frobenius-optimal phase arg tr(B†A), then refined by golden
/// section on the spectral norm.
pub fn phase_aligned_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let overlap: Complex64 = (0..a.nrows())
        .flat_map(|i| (0..a.ncols()).map(move |j| (i, j)))
        .map(|(i, j)| b[(i, j)].conj() * a[(i, j)])
        .sum();
    let phi0 = overlap.arg();
    let dist = |phi: f64| {
        let factor = Complex64::from_polar(1.0, phi);
        let diff = a - &(b * factor);
        spectral_norm(&diff)
    };
    // Golden-section around the Frobenius seed.
    let (mut lo, mut hi) = (phi0 - 0.5, phi0 + 0.5);
    let inv_phi = 0.618_033_988_749_894_8;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (dist(x1), dist(x2));
    for _ in 0..60 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = dist(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = dist(x2);
        }
    }
    f1.min(f2).min(dist(phi0))
}

/// Largest eigenpair of a real symmetric 3×3 matrix.
pub fn sym3_max_eigenpair(m: [[f64; 3]; 3]) -> (f64, [f64; 3]) {
    let mat = Matrix3::new(
        m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
    );
    let eig = mat.symmetric_eigen();
    let mut best = 0;
    for i in 1..3 {
        if eig.eigenvalues[i] > eig.eigenvalues[best] {
            best = i;
        }
    }
    let v = eig.eigenvectors.column(best);
    (eig.eigenvalues[best], [v[0], v[1], v[2]])
}

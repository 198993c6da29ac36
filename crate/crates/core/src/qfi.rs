//! Quantum Fisher information and Cramér-Rao phase bounds.
//!
//! Pure states: F_Q = 4·λ_max(Cov) with Cov_ij = ½⟨{S_i,S_j}⟩ − ⟨S_i⟩⟨S_j⟩
//! over i, j ∈ {x, y, z}; the maximizing eigenvector is the optimal generator
//! direction. Mixed states: the eigenbasis sum
//! F_Q = λ_max(M), M_ij = 2 Σ_{l,l'} (λ_l−λ_l')²/(λ_l+λ_l') Re⟨l|S_i|l'⟩⟨l'|S_j|l⟩.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, require_hermitian, sym3_max_eigenpair};
use crate::operators::CollectiveOperator;
use crate::state::DickeVector;

/// Eigenvalue-pair cutoff in the mixed-state sum, relative to the trace.
const PAIR_CUTOFF: f64 = 1e-12;

/// QFI value, optimal generator direction, and the phase bound 1/sqrt(F_Q).
#[derive(Debug, Clone, Copy)]
pub struct QfiReport {
    pub qfi: f64,
    pub direction: [f64; 3],
    pub phase_bound: f64,
}

impl QfiReport {
    fn new(qfi: f64, direction: [f64; 3]) -> Self {
        Self {
            qfi,
            direction,
            phase_bound: if qfi > 0.0 { 1.0 / qfi.sqrt() } else { f64::INFINITY },
        }
    }
}

/// First moments ⟨S_i⟩ and symmetrized second moments ½⟨{S_i,S_j}⟩.
#[derive(Debug, Clone, Copy)]
pub struct SpinMoments {
    pub mean: [f64; 3],
    pub second: [[f64; 3]; 3],
}

impl SpinMoments {
    pub fn covariance(&self) -> [[f64; 3]; 3] {
        let mut cov = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                cov[i][j] = self.second[i][j] - self.mean[i] * self.mean[j];
            }
        }
        cov
    }
}

/// Exact spin moments of a pure state via banded operator application; O(N).
pub fn spin_moments(state: &DickeVector) -> SpinMoments {
    let ensemble = state.ensemble();
    let ops = [
        CollectiveOperator::sx(ensemble),
        CollectiveOperator::sy(ensemble),
        CollectiveOperator::sz(ensemble),
    ];
    let applied: Vec<DickeVector> = ops.iter().map(|op| op.apply(state).unwrap()).collect();

    let mut mean = [0.0; 3];
    for (i, v) in applied.iter().enumerate() {
        mean[i] = state.overlap(v).unwrap().re;
    }
    let mut second = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            // ⟨S_i ψ|S_j ψ⟩ = ⟨S_i S_j⟩; the real part is ½⟨{S_i,S_j}⟩.
            let v = applied[i].overlap(&applied[j]).unwrap().re;
            second[i][j] = v;
            second[j][i] = v;
        }
    }
    SpinMoments { mean, second }
}

/// Variance (ΔS_φ)² along the equatorial direction φ.
pub fn variance_along(state: &DickeVector, phi: f64) -> f64 {
    let m = spin_moments(state);
    let (c, s) = (phi.cos(), phi.sin());
    let mean = c * m.mean[0] + s * m.mean[1];
    let second =
        c * c * m.second[0][0] + s * s * m.second[1][1] + 2.0 * c * s * m.second[0][1];
    second - mean * mean
}

/// QFI of a pure state: 4·λ_max of the spin covariance matrix.
pub fn qfi_pure(state: &DickeVector) -> QfiReport {
    let cov = spin_moments(state).covariance();
    let (lambda, direction) = sym3_max_eigenpair(cov);
    QfiReport::new(4.0 * lambda, direction)
}

/// Quantum Cramér-Rao phase bound Δβ = 1/sqrt(F_Q).
pub fn cramer_rao(qfi: f64) -> Result<f64> {
    if qfi <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Cramér-Rao bound needs positive QFI, got {qfi}"
        )));
    }
    Ok(1.0 / qfi.sqrt())
}

/// QFI of a density matrix given the three generators in the same basis.
///
/// `psd_floor` is how far below zero an eigenvalue may sit before the input
/// is rejected as non-PSD (1e-10 for externally supplied matrices; damped
/// trajectories use the looser block-state floor).
pub fn qfi_mixed_dense(
    rho: &DMatrix<Complex64>,
    generators: &[DMatrix<Complex64>; 3],
    psd_floor: f64,
) -> Result<QfiReport> {
    require_hermitian(rho, 1e-9)?;
    let trace: f64 = (0..rho.nrows()).map(|i| rho[(i, i)].re).sum();
    if (trace - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidTrace(trace));
    }
    let (values, vectors) = eigh(rho);
    if let Some(&min) = values.first() {
        if min < -psd_floor {
            return Err(Error::NotPositiveSemidefinite(min));
        }
    }
    let values: Vec<f64> = values.iter().map(|&v| v.max(0.0)).collect();

    let m = qfi_matrix_from_eigedecomp(&values, &vectors, generators, trace);
    let (lambda, direction) = sym3_max_eigenpair(m);
    Ok(QfiReport::new(lambda, direction))
}

/// The 3×3 QFI matrix in one eigen-sector; reused by the block solver where
/// the total matrix is a degeneracy-weighted sum over sectors.
pub(crate) fn qfi_matrix_from_eigedecomp(
    values: &[f64],
    vectors: &DMatrix<Complex64>,
    generators: &[DMatrix<Complex64>; 3],
    trace: f64,
) -> [[f64; 3]; 3] {
    let dim = values.len();
    let cutoff = PAIR_CUTOFF * trace;
    // ⟨l|S_i|l'⟩ for all pairs
    let rotated: Vec<DMatrix<Complex64>> = generators
        .iter()
        .map(|g| vectors.adjoint() * g * vectors)
        .collect();
    let mut m = [[0.0; 3]; 3];
    for l in 0..dim {
        for lp in 0..dim {
            let sum = values[l] + values[lp];
            if sum < cutoff {
                continue;
            }
            let diff = values[l] - values[lp];
            let weight = 2.0 * diff * diff / sum;
            if weight == 0.0 {
                continue;
            }
            for i in 0..3 {
                for j in i..3 {
                    let term = weight * (rotated[i][(l, lp)] * rotated[j][(lp, l)]).re;
                    m[i][j] += term;
                }
            }
        }
    }
    for i in 0..3 {
        for j in 0..i {
            m[i][j] = m[j][i];
        }
    }
    m
}

/// QFI of a density matrix in the Dicke basis (maximal-j sector).
pub fn qfi_mixed(
    ensemble: crate::ensemble::SpinEnsemble,
    rho: &DMatrix<Complex64>,
) -> Result<QfiReport> {
    if rho.nrows() != ensemble.dim() {
        return Err(Error::DimensionMismatch(rho.nrows(), ensemble.dim()));
    }
    let generators = [
        CollectiveOperator::sx(ensemble).to_dense(),
        CollectiveOperator::sy(ensemble).to_dense(),
        CollectiveOperator::sz(ensemble).to_dense(),
    ];
    qfi_mixed_dense(rho, &generators, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{ghz_state, GhzSign};
    use crate::ensemble::SpinEnsemble;
    use crate::state::{css_state, CssParams};

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn css_variance_projection_noise() {
        let ens = SpinEnsemble::new(24).unwrap();
        let state = css_state(ens, &CssParams::equatorial(0.0));
        let var = variance_along(&state, PI / 2.0);
        assert!((var - ens.total_spin() / 2.0).abs() < 1e-10);
    }

    #[test]
    fn ghz_variances_match_projection_formula() {
        let ens = SpinEnsemble::new(30).unwrap();
        let s = ens.total_spin();
        let ghz = ghz_state(ens, 0.0, GhzSign::Plus);
        assert!((variance_along(&ghz, 0.0) - s * s).abs() < 1e-8);
        assert!((variance_along(&ghz, PI / 2.0) - s / 2.0).abs() < 1e-8);
        let ghz_minus = ghz_state(ens, 0.0, GhzSign::Minus);
        assert!((variance_along(&ghz_minus, 0.0) - s * s).abs() < 1e-8);
    }

    #[test]
    fn css_qfi_is_standard_quantum_limit() {
        let ens = SpinEnsemble::new(37).unwrap();
        let report = qfi_pure(&css_state(ens, &CssParams::equatorial(0.0)));
        assert!((report.qfi - 37.0).abs() < 1e-9 * 37.0);
        // optimal direction ⟂ polarization (x)
        assert!(report.direction[0].abs() < 1e-6);
    }

    #[test]
    fn ghz_qfi_is_heisenberg_limit() {
        let ens = SpinEnsemble::new(21).unwrap();
        let n2 = 21.0f64 * 21.0;
        let report = qfi_pure(&ghz_state(ens, 0.0, GhzSign::Plus));
        assert!((report.qfi - n2).abs() < 1e-9 * n2);
    }

    #[test]
    fn direction_variance_consistency_and_grid_bound() {
        // 4(ΔS_n)² along the reported direction equals the QFI, and no grid
        // direction beats it.
        let ens = SpinEnsemble::new(14).unwrap();
        let state = evolved_test_state(ens);
        let report = qfi_pure(&state);
        let m = spin_moments(&state);
        let cov = m.covariance();
        let n = report.direction;
        let mut along = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                along += n[i] * cov[i][j] * n[j];
            }
        }
        assert!((4.0 * along - report.qfi).abs() < 1e-8);

        for idx in 0..200 {
            let dir = fibonacci_direction(idx, 200);
            let mut v = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    v += dir[i] * cov[i][j] * dir[j];
                }
            }
            assert!(4.0 * v <= report.qfi + 1e-8);
        }
    }

    #[test]
    fn qfi_invariant_under_rotation() {
        let ens = SpinEnsemble::new(12).unwrap();
        let state = evolved_test_state(ens);
        let base = qfi_pure(&state).qfi;
        for (axis, angle) in [
            (crate::evolve::Axis::X, 0.71),
            (crate::evolve::Axis::Y, -1.2),
            (crate::evolve::Axis::Z, 2.9),
        ] {
            let rotated = crate::evolve::rotate(&state, axis, angle);
            assert!((qfi_pure(&rotated).qfi - base).abs() < 1e-8);
        }
    }

    #[test]
    fn cramer_rao_limits() {
        let n = 64.0f64;
        assert!((cramer_rao(n * n).unwrap() - 1.0 / n).abs() < 1e-15);
        assert!((cramer_rao(n).unwrap() - 1.0 / n.sqrt()).abs() < 1e-15);
        // Table I first row: F_Q = 0.85 N² → Δβ ≈ 1.08/N
        let bound = cramer_rao(0.85 * n * n).unwrap();
        assert!((bound * n - 1.0 / 0.85f64.sqrt()).abs() < 1e-12);
        assert!((bound * n - 1.08).abs() < 0.01);
        assert!(cramer_rao(0.0).is_err());
    }

    #[test]
    fn qfi_mixed_reduces_to_pure() {
        let ens = SpinEnsemble::new(8).unwrap();
        let state = evolved_test_state(ens);
        let dim = ens.dim();
        let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                rho[(i, j)] = state.amplitudes()[i] * state.amplitudes()[j].conj();
            }
        }
        let mixed = qfi_mixed(ens, &rho).unwrap();
        let pure = qfi_pure(&state);
        assert!(
            (mixed.qfi - pure.qfi).abs() < 1e-8,
            "mixed {} vs pure {}",
            mixed.qfi,
            pure.qfi
        );
    }

    #[test]
    fn qfi_mixed_vanishes_for_maximally_mixed() {
        let ens = SpinEnsemble::new(6).unwrap();
        let dim = ens.dim();
        let rho = DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        let report = qfi_mixed(ens, &rho).unwrap();
        assert!(report.qfi.abs() < 1e-10);
    }

    #[test]
    fn qfi_mixed_rejects_bad_inputs() {
        let ens = SpinEnsemble::new(4).unwrap();
        let dim = ens.dim();
        // non-PSD with trace 1
        let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
        rho[(0, 0)] = Complex64::new(1.5, 0.0);
        rho[(1, 1)] = Complex64::new(-0.5, 0.0);
        assert!(matches!(
            qfi_mixed(ens, &rho),
            Err(Error::NotPositiveSemidefinite(_))
        ));
        // wrong trace
        let rho2 = DMatrix::<Complex64>::identity(dim, dim);
        assert!(matches!(qfi_mixed(ens, &rho2), Err(Error::InvalidTrace(_))));
    }

    fn evolved_test_state(ens: SpinEnsemble) -> DickeVector {
        let css = css_state(ens, &CssParams::equatorial(0.0));
        crate::evolve::evolve_zdiag(&css, &crate::evolve::ZDiagonalHamiltonian::cubic(), 0.11)
    }

    fn fibonacci_direction(i: usize, n: usize) -> [f64; 3] {
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
        let r = (1.0 - z * z).sqrt();
        let phi = 2.0 * PI * (i as f64 / golden);
        [r * phi.cos(), r * phi.sin(), z]
    }
}

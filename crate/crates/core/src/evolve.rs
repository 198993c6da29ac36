//! Unitary propagation: exact z-diagonal nonlinear evolution, axis rotations,
//! and eigendecomposition-based propagation under arbitrary Hermitian
//! generators.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, require_hermitian};
use crate::operators::CollectiveOperator;
use crate::state::DickeVector;

/// Rotation / twisting axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// H = c1·S_z + c2·S_z² + c3·S_z³, coefficients in units of χ.
#[derive(Debug, Clone, Copy)]
pub struct ZDiagonalHamiltonian {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl ZDiagonalHamiltonian {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        if !(c1.is_finite() && c2.is_finite() && c3.is_finite()) {
            return Err(Error::InvalidParameter(
                "Hamiltonian coefficients must be finite".into(),
            ));
        }
        Ok(Self { c1, c2, c3 })
    }

    /// The cubic generator S_z³.
    pub fn cubic() -> Self {
        Self {
            c1: 0.0,
            c2: 0.0,
            c3: 1.0,
        }
    }

    /// The one-axis-twisting generator S_z².
    pub fn oat() -> Self {
        Self {
            c1: 0.0,
            c2: 1.0,
            c3: 0.0,
        }
    }

    /// Phase ε_m = c1·m + c2·m² + c3·m³, evaluated from the exact doubled
    /// projection so half-integer m never rounds.
    pub fn phase(&self, two_m: i64) -> f64 {
        let tm = two_m as f64;
        self.c1 * tm / 2.0 + self.c2 * tm * tm / 4.0 + self.c3 * tm * tm * tm / 8.0
    }
}

/// exp(−i t (c1 S_z + c2 S_z² + c3 S_z³)) |ψ⟩ — exact, no integrator.
///
/// S_z is conserved, so the |amplitude|² distribution over m is untouched.
pub fn evolve_zdiag(state: &DickeVector, h: &ZDiagonalHamiltonian, t: f64) -> DickeVector {
    let ensemble = state.ensemble();
    let amplitudes = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, a)| a * Complex64::from_polar(1.0, -t * h.phase(ensemble.two_m(k))))
        .collect();
    DickeVector::from_amplitudes(ensemble, amplitudes).expect("dimension preserved")
}

/// exp(i·angle·S_q) |ψ⟩.
///
/// The z case is a diagonal phase ramp; x and y go through the Hermitian
/// propagator (one (N+1)-dim eigendecomposition).
pub fn rotate(state: &DickeVector, axis: Axis, angle: f64) -> DickeVector {
    let ensemble = state.ensemble();
    match axis {
        Axis::Z => {
            let amplitudes = state
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(k, a)| {
                    a * Complex64::from_polar(1.0, angle * ensemble.two_m(k) as f64 / 2.0)
                })
                .collect();
            DickeVector::from_amplitudes(ensemble, amplitudes).expect("dimension preserved")
        }
        Axis::X => {
            let op = CollectiveOperator::sx(ensemble);
            HermitianPropagator::new(&op.to_dense())
                .expect("S_x is Hermitian")
                .evolve(state, -angle)
                .expect("matching ensemble")
        }
        Axis::Y => {
            let op = CollectiveOperator::sy(ensemble);
            HermitianPropagator::new(&op.to_dense())
                .expect("S_y is Hermitian")
                .evolve(state, -angle)
                .expect("matching ensemble")
        }
    }
}

/// One-time Hermitian eigendecomposition of a generator H, reusable across a
/// whole t-grid: exp(−iHt)|ψ⟩ = V exp(−iΛt) V†|ψ⟩.
pub struct HermitianPropagator {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl HermitianPropagator {
    /// Fails if H deviates from Hermiticity by more than 1e−10.
    pub fn new(h: &DMatrix<Complex64>) -> Result<Self> {
        require_hermitian(h, 1e-10)?;
        let (eigenvalues, eigenvectors) = eigh(h);
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// exp(−iHt)|ψ⟩.
    pub fn evolve(&self, state: &DickeVector, t: f64) -> Result<DickeVector> {
        if state.amplitudes().len() != self.dim() {
            return Err(Error::DimensionMismatch(state.amplitudes().len(), self.dim()));
        }
        let amps = nalgebra::DVector::from_column_slice(state.amplitudes());
        let modal = self.eigenvectors.adjoint() * amps;
        let phased = nalgebra::DVector::from_iterator(
            self.dim(),
            modal
                .iter()
                .zip(&self.eigenvalues)
                .map(|(c, &e)| c * Complex64::from_polar(1.0, -e * t)),
        );
        let out = &self.eigenvectors * phased;
        DickeVector::from_amplitudes(state.ensemble(), out.iter().copied().collect())
    }

    /// The dense unitary exp(−iHt).
    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let dim = self.dim();
        let phases = nalgebra::DVector::from_iterator(
            dim,
            self.eigenvalues
                .iter()
                .map(|&e| Complex64::from_polar(1.0, -e * t)),
        );
        let d = DMatrix::from_diagonal(&phases);
        &self.eigenvectors * d * self.eigenvectors.adjoint()
    }
}

/// exp(−iHt)|ψ⟩ for a Hermitian collective operator H.
pub fn evolve_hermitian(
    state: &DickeVector,
    h: &CollectiveOperator,
    t: f64,
) -> Result<DickeVector> {
    if h.ensemble() != state.ensemble() {
        return Err(Error::DimensionMismatch(
            h.dim(),
            state.amplitudes().len(),
        ));
    }
    HermitianPropagator::new(&h.to_dense())?.evolve(state, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::SpinEnsemble;
    use crate::operators::{build_collective_ops, expectation};
    use crate::state::{css_state, CssParams};

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn zero_time_is_identity() {
        let ens = SpinEnsemble::new(7).unwrap();
        let state = css_state(ens, &CssParams::equatorial(0.3));
        let out = evolve_zdiag(&state, &ZDiagonalHamiltonian::cubic(), 0.0);
        assert!((state.fidelity(&out).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zdiag_preserves_populations_and_norm() {
        let ens = SpinEnsemble::new(33).unwrap();
        let state = css_state(ens, &CssParams::equatorial(0.0));
        let h = ZDiagonalHamiltonian::new(0.7, -0.2, 1.0).unwrap();
        let out = evolve_zdiag(&state, &h, 2.37);
        assert!((out.norm() - 1.0).abs() < 1e-12);
        for (p, q) in state.populations().iter().zip(out.populations()) {
            assert!((p - q).abs() < 1e-14);
        }
    }

    #[test]
    fn z_rotation_moves_azimuth() {
        let ens = SpinEnsemble::new(12).unwrap();
        let state = css_state(ens, &CssParams::equatorial(0.0));
        let rotated = rotate(&state, Axis::Z, PI);
        let target = css_state(ens, &CssParams::equatorial(PI));
        assert!((rotated.fidelity(&target).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn y_rotation_transports_pole_to_equator() {
        let ens = SpinEnsemble::new(10).unwrap();
        let north = css_state(ens, &CssParams::new(0.0, 0.0).unwrap());
        let rotated = rotate(&north, Axis::Y, PI / 2.0);
        let ops = build_collective_ops(ens);
        let sx = expectation(&rotated, &ops.sx).unwrap().re;
        let sy = expectation(&rotated, &ops.sy).unwrap().re;
        let s = ens.total_spin();
        assert!(
            (sx.abs() - s).abs() < 1e-10 || (sy.abs() - s).abs() < 1e-10,
            "polarization did not land on the equator: ⟨Sx⟩={sx}, ⟨Sy⟩={sy}"
        );
        let sz = expectation(&rotated, &ops.sz).unwrap().re;
        assert!(sz.abs() < 1e-10);
    }

    #[test]
    fn rotation_composes_with_inverse() {
        let ens = SpinEnsemble::new(9).unwrap();
        let state = css_state(ens, &CssParams::new(1.0, 0.4).unwrap());
        let there = rotate(&state, Axis::X, PI / 2.0);
        let back = rotate(&there, Axis::X, -PI / 2.0);
        let mut diff = state.clone();
        diff.add_scaled(&back, Complex64::new(-1.0, 0.0)).unwrap();
        assert!(diff.norm() < 1e-12);
    }

    #[test]
    fn hermitian_propagator_matches_z_rotation() {
        let ens = SpinEnsemble::new(8).unwrap();
        let state = css_state(ens, &CssParams::equatorial(0.7));
        let h = CollectiveOperator::sz(ens);
        let t = 0.93;
        let via_h = evolve_hermitian(&state, &h, t).unwrap();
        let via_rot = rotate(&state, Axis::Z, -t);
        let mut diff = via_h.clone();
        diff.add_scaled(&via_rot, Complex64::new(-1.0, 0.0)).unwrap();
        assert!(diff.norm() < 1e-10);
    }

    #[test]
    fn hermitian_propagator_matches_zdiag_for_cubic() {
        let ens = SpinEnsemble::new(16).unwrap();
        let state = css_state(ens, &CssParams::equatorial(0.0));
        // dense S_z³
        let sz = CollectiveOperator::sz(ens).to_dense();
        let sz3 = &sz * &sz * &sz;
        let t = 0.41;
        let via_dense = HermitianPropagator::new(&sz3)
            .unwrap()
            .evolve(&state, t)
            .unwrap();
        let via_zdiag = evolve_zdiag(&state, &ZDiagonalHamiltonian::cubic(), t);
        let mut diff = via_dense.clone();
        diff.add_scaled(&via_zdiag, Complex64::new(-1.0, 0.0))
            .unwrap();
        assert!(diff.norm() < 1e-10);
    }

    #[test]
    fn rejects_non_hermitian_generator() {
        let ens = SpinEnsemble::new(4).unwrap();
        let h = CollectiveOperator::splus(ens);
        let state = css_state(ens, &CssParams::equatorial(0.0));
        assert!(evolve_hermitian(&state, &h, 0.1).is_err());
    }

    #[test]
    fn propagator_unitarity() {
        // exp(−iHt)·exp(iHt) = 1 within 1e−9 for N ≤ 40
        let ens = SpinEnsemble::new(40).unwrap();
        let ops = build_collective_ops(ens);
        let sy2 = {
            let d = ops.sy.to_dense();
            &d * &d
        };
        let prop = HermitianPropagator::new(&sy2).unwrap();
        let u = prop.unitary(0.8);
        let uinv = prop.unitary(-0.8);
        let prod = &u * &uinv;
        let eye = DMatrix::<Complex64>::identity(ens.dim(), ens.dim());
        assert!(crate::linalg::spectral_norm(&(&prod - &eye)) < 1e-9);
    }
}

//! Husimi quasiprobability on the Bloch sphere: Q(θ,φ) = |⟨θ,φ|ψ⟩|².
//!
//! Reported as the raw overlap squared (peak value 1 for a coherent state),
//! not the (2S+1)/4π density convention; ∫ Q dΩ = 4π/(N+1).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{sqrt_binomial, ln_binomial, DickeVector};

/// Q sampled on a θ × φ grid: θ inclusive over [0, π], φ over [0, 2π).
pub struct HusimiGrid {
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    /// Row-major: `values[i * phi.len() + j]` = Q(θ_i, φ_j).
    pub values: Vec<f64>,
}

impl HusimiGrid {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.phi.len() + j]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }

    /// ∫ Q sinθ dθ dφ by the product trapezoid/periodic-rectangle rule.
    pub fn integral(&self) -> f64 {
        let (nt, np) = (self.theta.len(), self.phi.len());
        let dtheta = std::f64::consts::PI / (nt - 1) as f64;
        let dphi = 2.0 * std::f64::consts::PI / np as f64;
        let mut acc = 0.0;
        for (i, &theta) in self.theta.iter().enumerate() {
            let w_t = if i == 0 || i == nt - 1 { 0.5 } else { 1.0 };
            let mut row = 0.0;
            for j in 0..np {
                row += self.value(i, j);
            }
            acc += w_t * theta.sin() * row;
        }
        acc * dtheta * dphi
    }
}

/// Evaluate Q over an `n_theta` × `n_phi` grid (minimum 32 × 64).
///
/// For each θ row the CSS amplitude magnitudes are computed once; the φ sweep
/// is a phase ramp, so the whole grid costs O(n_theta · n_phi · N).
pub fn husimi(state: &DickeVector, n_theta: usize, n_phi: usize) -> Result<HusimiGrid> {
    if n_theta < 32 || n_phi < 64 {
        return Err(Error::InvalidParameter(format!(
            "Husimi grid must be at least 32×64, got {n_theta}×{n_phi}"
        )));
    }
    let ensemble = state.ensemble();
    let n = ensemble.n_spins();
    let theta: Vec<f64> = (0..n_theta)
        .map(|i| std::f64::consts::PI * i as f64 / (n_theta - 1) as f64)
        .collect();
    let phi: Vec<f64> = (0..n_phi)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64)
        .collect();

    let mut values = vec![0.0; n_theta * n_phi];
    let mut magnitudes = vec![0.0f64; n + 1];
    for (i, &th) in theta.iter().enumerate() {
        css_magnitudes(n, th, &mut magnitudes);
        for (j, &ph) in phi.iter().enumerate() {
            // ⟨θ,φ|ψ⟩ = Σ_k a_k(θ) e^{−ikφ} ψ_k
            let rot = Complex64::from_polar(1.0, -ph);
            let mut phase = Complex64::ONE;
            let mut acc = Complex64::ZERO;
            for (k, &mag) in magnitudes.iter().enumerate() {
                acc += mag * phase * state.amplitudes()[k];
                phase *= rot;
            }
            values[i * n_phi + j] = acc.norm_sqr();
        }
    }
    Ok(HusimiGrid { theta, phi, values })
}

fn css_magnitudes(n: usize, theta: f64, out: &mut [f64]) {
    let half = theta / 2.0;
    let (sin_h, cos_h) = (half.sin(), half.cos());
    if sin_h.abs() < f64::EPSILON {
        out.fill(0.0);
        out[0] = 1.0;
        return;
    }
    if cos_h.abs() < f64::EPSILON {
        out.fill(0.0);
        out[n] = 1.0;
        return;
    }
    if n <= 300 {
        for (k, o) in out.iter_mut().enumerate() {
            *o = sqrt_binomial(n, k) * cos_h.powi((n - k) as i32) * sin_h.powi(k as i32);
        }
    } else {
        let (ln_c, ln_s) = (cos_h.ln(), sin_h.ln());
        for (k, o) in out.iter_mut().enumerate() {
            *o = (0.5 * ln_binomial(n, k) + (n - k) as f64 * ln_c + k as f64 * ln_s).exp();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{ghz_state, GhzSign};
    use crate::ensemble::SpinEnsemble;
    use crate::state::{css_state, CssParams};

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn rejects_coarse_grids() {
        let ens = SpinEnsemble::new(4).unwrap();
        let state = css_state(ens, &CssParams::equatorial(0.0));
        assert!(husimi(&state, 16, 64).is_err());
    }

    #[test]
    fn css_peak_is_at_its_angles_with_value_one() {
        let ens = SpinEnsemble::new(18).unwrap();
        // grid point θ = π/2 (index 16 of 33), φ = π/4 (index 8 of 64)
        let state = css_state(ens, &CssParams::new(PI / 2.0, PI / 4.0).unwrap());
        let grid = husimi(&state, 33, 64).unwrap();
        let max = grid.max();
        assert!((max - 1.0).abs() < 1e-12);
        let at_peak = grid.value(16, 8);
        assert!((at_peak - 1.0).abs() < 1e-12);
        // everywhere within [0, 1]
        assert!(grid.values.iter().all(|&q| (-1e-15..=1.0 + 1e-12).contains(&q)));
    }

    #[test]
    fn ghz_shows_two_equal_maxima() {
        let ens = SpinEnsemble::new(20).unwrap();
        let state = ghz_state(ens, 0.0, GhzSign::Plus);
        let grid = husimi(&state, 33, 64).unwrap();
        let q0 = grid.value(16, 0); // (π/2, 0)
        let q_pi = grid.value(16, 32); // (π/2, π)
        assert!((q0 - q_pi).abs() < 1e-12);
        assert!((q0 - 0.5).abs() < 1e-12);
        // nothing on the grid beats the two lobes
        assert!(grid.max() <= q0 + 1e-12);
        let above: usize = grid
            .values
            .iter()
            .filter(|&&v| v > q0 - 1e-9)
            .count();
        assert_eq!(above, 2);
    }

    #[test]
    fn four_component_cat_has_four_lobes() {
        let ens = SpinEnsemble::new(200).unwrap();
        let state = crate::cat::evolved_cat_reference(ens, 4);
        let grid = husimi(&state, 33, 64).unwrap();
        // lobes at φ ∈ {0, π/4, π, 5π/4} on the equator: indices 0, 8, 32, 40
        let lobes = [0usize, 8, 32, 40];
        let peak = grid.value(16, 0);
        for &j in &lobes {
            // equal up to the residual coherent-state overlaps
            // cos(π/8)^{2S} ~ 1e-7 between neighbouring components
            assert!(
                (grid.value(16, j) - peak).abs() < 1e-6 * peak,
                "lobe {j} differs: {} vs {peak}",
                grid.value(16, j)
            );
        }
        for j in 0..64usize {
            // skip the lobes and their immediate neighbours (the coherent
            // lobe width ~1/√N matches the grid step here)
            let near_lobe = lobes
                .iter()
                .any(|&l| (j as i64 - l as i64).rem_euclid(64).min(64 - (j as i64 - l as i64).rem_euclid(64)) <= 1);
            if !near_lobe {
                assert!(grid.value(16, j) < 0.3 * peak, "unexpected lobe at {j}");
            }
        }
    }

    #[test]
    fn integral_matches_resolution_of_identity() {
        // ∫ Q dΩ = 4π/(N+1) within 2% on a fine grid
        for n in [6usize, 25] {
            let ens = SpinEnsemble::new(n).unwrap();
            let state = css_state(ens, &CssParams::new(1.1, 2.0).unwrap());
            let grid = husimi(&state, 129, 256).unwrap();
            let expected = 4.0 * PI / (n + 1) as f64;
            let got = grid.integral();
            assert!(
                ((got - expected) / expected).abs() < 0.02,
                "integral {got} vs {expected} at N={n}"
            );
        }
    }
}

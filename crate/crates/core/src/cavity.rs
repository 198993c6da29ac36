//! Mapping cavity-QED parameters to the effective cubic coupling picked up
//! by atoms when reflected single-photon pulses imprint the m-dependent
//! phase −arctan[(κ/2)/(κ/2 − 2Ωm)].
//!
//! With κ₀ = Ω/κ = g²/(Δκ), n photons give U_n = exp(−iμ_n S_z³),
//! μ_n = 32nκ₀³/3 = n(ηΓ/Δ)³/6, η = 4g²/(κΓ) — the two forms are identical.

use crate::error::{Error, Result};

/// Cavity-QED inputs. `gamma_atom` is the atomic linewidth (the paper reuses
/// Γ for collective dephasing elsewhere; the two are distinct knobs here).
#[derive(Debug, Clone, Copy)]
pub struct CavityParams {
    pub g: f64,
    pub kappa: f64,
    pub gamma_atom: f64,
    pub delta: f64,
    pub n_photons: u64,
    pub n_spins: usize,
}

impl CavityParams {
    pub fn new(
        g: f64,
        kappa: f64,
        gamma_atom: f64,
        delta: f64,
        n_photons: u64,
        n_spins: usize,
    ) -> Result<Self> {
        if g <= 0.0 || kappa <= 0.0 || gamma_atom <= 0.0 || delta <= 0.0 {
            return Err(Error::InvalidParameter(
                "cavity rates g, κ, Γ_at, Δ must be positive".into(),
            ));
        }
        Ok(Self {
            g,
            kappa,
            gamma_atom,
            delta,
            n_photons,
            n_spins,
        })
    }

    /// Construct from the cooperativity η = 4g²/(κΓ_at) instead of κ.
    pub fn from_cooperativity(
        g: f64,
        eta: f64,
        gamma_atom: f64,
        delta: f64,
        n_photons: u64,
        n_spins: usize,
    ) -> Result<Self> {
        if eta <= 0.0 {
            return Err(Error::InvalidParameter("cooperativity must be positive".into()));
        }
        let kappa = 4.0 * g * g / (eta * gamma_atom);
        Self::new(g, kappa, gamma_atom, delta, n_photons, n_spins)
    }

    /// Dispersive shift Ω = g²/Δ.
    pub fn omega(&self) -> f64 {
        self.g * self.g / self.delta
    }

    /// κ₀ = Ω/κ.
    pub fn kappa0(&self) -> f64 {
        self.omega() / self.kappa
    }

    /// η = 4g²/(κΓ_at).
    pub fn cooperativity(&self) -> f64 {
        4.0 * self.g * self.g / (self.kappa * self.gamma_atom)
    }

    /// True when Δ fails to dominate g, κ, Γ_at by at least a factor 10.
    pub fn dispersive_flag(&self) -> bool {
        self.delta < 10.0 * self.g
            || self.delta < 10.0 * self.kappa
            || self.delta < 10.0 * self.gamma_atom
    }
}

/// Effective cubic coupling produced by n photon reflections.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveCoupling {
    pub kappa0: f64,
    /// μ_n = 32nκ₀³/3: total cubic phase coefficient (χt equivalent).
    pub mu_n: f64,
    /// α = N·μ_n.
    pub alpha_eff: f64,
    /// κ₀N < 0.1, the operational reading of κ₀ ≪ 1/N (keeps the quartic
    /// remainder of the phase expansion below 1%).
    pub regime_ok: bool,
    /// Interaction time t₀ = 4κ₀²/Ω per photon (the S_z² cancellation
    /// choice); one reflection takes 2t₀.
    pub t0: f64,
}

pub fn effective_coupling(params: &CavityParams) -> Result<EffectiveCoupling> {
    let kappa0 = params.kappa0();
    if !kappa0.is_finite() || kappa0 <= 0.0 {
        return Err(Error::InvalidParameter(format!("κ₀ = {kappa0} out of range")));
    }
    let mu_n = 32.0 * params.n_photons as f64 * kappa0.powi(3) / 3.0;
    Ok(EffectiveCoupling {
        kappa0,
        mu_n,
        alpha_eff: params.n_spins as f64 * mu_n,
        regime_ok: kappa0 * (params.n_spins as f64) < 0.1,
        t0: 4.0 * kappa0 * kappa0 / params.omega(),
    })
}

/// Phase deviation report for the third-order expansion.
#[derive(Debug, Clone, Copy)]
pub struct PhaseExpansionReport {
    pub max_error: f64,
    /// Raised when any sampled m comes within |1 − 4κ₀m| < 0.1 of the
    /// arctan pole.
    pub pole_flagged: bool,
}

/// Compare the exact reflection phase Δ(m) = −arctan[1/(1 − 4κ₀m)] at the
/// κ/2-detuned drive against the cubic polynomial
/// −π/4 − 2κ₀m − 4κ₀²m² − (16/3)κ₀³m³ over the given projections.
pub fn phase_expansion_error(params: &CavityParams, m_values: &[f64]) -> Result<PhaseExpansionReport> {
    if m_values.is_empty() {
        return Err(Error::InvalidParameter("no projections supplied".into()));
    }
    let kappa0 = params.kappa0();
    let mut max_error = 0.0f64;
    let mut pole_flagged = false;
    for &m in m_values {
        let x = 4.0 * kappa0 * m;
        if (1.0 - x).abs() < 0.1 {
            pole_flagged = true;
        }
        let exact = -(1.0 / (1.0 - x)).atan();
        let poly = -std::f64::consts::FRAC_PI_4 - x / 2.0 - x * x / 4.0 - x * x * x / 12.0;
        max_error = max_error.max((exact - poly).abs());
    }
    Ok(PhaseExpansionReport {
        max_error,
        pole_flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> CavityParams {
        // η = 0.04, Γ_at = 10g, Δ = 150g (κ comes out to 10g), n = 10⁶,
        // N = 10³
        CavityParams::from_cooperativity(1.0, 0.04, 10.0, 150.0, 1_000_000, 1000).unwrap()
    }

    #[test]
    fn worked_example_reaches_alpha_three() {
        let params = worked_example();
        assert!((params.kappa - 10.0).abs() < 1e-12);
        let eff = effective_coupling(&params).unwrap();
        assert!((eff.kappa0 - 1.0 / 1500.0).abs() < 1e-15);
        assert!(
            eff.alpha_eff > 2.8 && eff.alpha_eff < 3.5,
            "α_eff = {}",
            eff.alpha_eff
        );
        // this regime intentionally violates κ₀ ≪ 1/N
        assert!(!eff.regime_ok);
        assert!(!params.dispersive_flag());
    }

    #[test]
    fn single_photon_coupling() {
        let params = CavityParams::from_cooperativity(1.0, 0.04, 10.0, 150.0, 1, 1000).unwrap();
        let eff = effective_coupling(&params).unwrap();
        let kappa0: f64 = 1.0 / 1500.0;
        assert!((eff.mu_n - 32.0 * kappa0.powi(3) / 3.0).abs() < 1e-18);
        assert!((eff.mu_n - 3.16e-9).abs() < 0.01e-9);
        // zero photons → zero coupling
        let none = CavityParams::from_cooperativity(1.0, 0.04, 10.0, 150.0, 0, 1000).unwrap();
        assert_eq!(effective_coupling(&none).unwrap().mu_n, 0.0);
    }

    #[test]
    fn printed_forms_of_mu_agree() {
        // 32nκ₀³/3 = n(ηΓ_at/Δ)³/6 given η = 4g²/(κΓ_at)
        let mut seed = 77u64;
        for _ in 0..100 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let r = |s: u64| 0.1 + ((s >> 17) & 0x3ff) as f64 / 1024.0 * 5.0;
            let g = r(seed);
            let kappa = r(seed.rotate_left(13));
            let gamma_atom = r(seed.rotate_left(29));
            let delta = 20.0 * r(seed.rotate_left(43));
            let params = CavityParams::new(g, kappa, gamma_atom, delta, 7, 50).unwrap();
            let eff = effective_coupling(&params).unwrap();
            let eta = params.cooperativity();
            let alt = 7.0 * (eta * gamma_atom / delta).powi(3) / 6.0;
            assert!(
                ((eff.mu_n - alt) / alt).abs() < 1e-12,
                "forms disagree: {} vs {alt}",
                eff.mu_n
            );
        }
    }

    #[test]
    fn mu_linear_in_photon_number() {
        let base = CavityParams::from_cooperativity(1.0, 0.04, 10.0, 150.0, 1, 100).unwrap();
        let mu1 = effective_coupling(&base).unwrap().mu_n;
        for n in [2u64, 17, 4096] {
            let p = CavityParams::from_cooperativity(1.0, 0.04, 10.0, 150.0, n, 100).unwrap();
            let mu = effective_coupling(&p).unwrap().mu_n;
            assert!((mu - n as f64 * mu1).abs() < 1e-15 * mu.abs().max(1.0));
        }
    }

    #[test]
    fn taylor_coefficients_reproduce_cubic_map() {
        // numeric differentiation of f(x) = −arctan(1/(1−x)) at 0 against
        // (1/2, 1/4, 1/12)
        let f = |x: f64| -(1.0 / (1.0 - x)).atan();
        let h = 1e-3;
        let d1 = (f(h) - f(-h)) / (2.0 * h);
        let d2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        let d3 = (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
        assert!((d1 + 0.5).abs() < 1e-6);
        assert!((d2 / 2.0 + 0.25).abs() < 1e-5);
        assert!((d3 / 6.0 + 1.0 / 12.0).abs() < 1e-4);
    }

    #[test]
    fn expansion_error_bounded_by_quartic_remainder() {
        // κ₀N = 0.05: max error over m ∈ [−N/2, N/2] ≤ (2κ₀N)⁴/4
        let n_spins = 500usize;
        let kappa0_target = 0.05 / n_spins as f64;
        // pick g, Δ, κ so that κ₀ = g²/(Δκ) hits the target
        let g = 1.0;
        let delta = 100.0;
        let kappa = g * g / (delta * kappa0_target);
        let params = CavityParams::new(g, kappa, 1.0, delta, 1, n_spins).unwrap();
        let m_values: Vec<f64> = (0..=n_spins).map(|k| n_spins as f64 / 2.0 - k as f64).collect();
        let report = phase_expansion_error(&params, &m_values).unwrap();
        let bound = (2.0 * kappa0_target * n_spins as f64).powi(4) / 4.0;
        assert!(
            report.max_error <= bound,
            "error {} above bound {bound}",
            report.max_error
        );
        assert!(!report.pole_flagged);
    }

    #[test]
    fn pole_proximity_is_flagged() {
        let params = CavityParams::new(1.0, 1.0, 1.0, 1.0, 1, 4).unwrap(); // κ₀ = 1
        let report = phase_expansion_error(&params, &[0.25]).unwrap(); // x = 1
        assert!(report.pole_flagged);
    }

    #[test]
    fn rejects_nonpositive_rates() {
        assert!(CavityParams::new(0.0, 1.0, 1.0, 1.0, 1, 2).is_err());
        assert!(CavityParams::new(1.0, -1.0, 1.0, 1.0, 1, 2).is_err());
    }
}

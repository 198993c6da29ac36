//! Weak-coupling closed forms for the cubic scheme: Gaussian-approximated
//! ladder moments, the variance envelope, and the resulting QFI, plus the
//! exact even-N peak value and its large-N limit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::ln_binomial;

/// Closed-form moments of the cubic-evolved equatorial CSS at μ = 3χt.
///
/// `mean_sp` is ⟨S₊(t)⟩ ≈ S/sqrt(1−iμS); `mean_sp2` is ⟨S₊²(t)⟩ ≈
/// S(S−½)/sqrt(1−2iμS); `mean_spsm` = S²+S/2 holds exactly at all couplings.
/// The αₖ = 1/sqrt(1+kS²μ²) parametrize the envelope; `a_coeff`, `b_coeff`
/// and `delta_angle` define the φ-dependence of the variance, maximized at
/// φ = δ.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticMoments {
    pub total_spin: f64,
    pub mean_sp: Complex64,
    pub mean_sp2: Complex64,
    pub mean_spsm: Complex64,
    pub alpha: [f64; 4],
    pub mu: f64,
    pub a_coeff: f64,
    pub b_coeff: f64,
    pub delta_angle: f64,
    /// Raised when μS > 1; the derivation assumes μ ≪ 1.
    pub outside_validity: bool,
}

impl AnalyticMoments {
    pub fn mean_sx(&self) -> f64 {
        let s = self.total_spin;
        s * (self.alpha[0] * (self.alpha[0] + 1.0) / 2.0).sqrt()
    }

    pub fn mean_sy(&self) -> f64 {
        let s = self.total_spin;
        s * (self.alpha[0] * (1.0 - self.alpha[0]) / 2.0).sqrt()
    }

    pub fn mean_sx2(&self) -> f64 {
        let s = self.total_spin;
        s / 4.0
            * ((2.0 * s + 1.0)
                + (2.0 * s - 1.0) * (self.alpha[3] * (self.alpha[3] + 1.0) / 2.0).sqrt())
    }

    /// ⟨S_y²⟩ = (S/4)[(2S+1) − (2S−1)·sqrt(α₄(1+α₄)/2)]; the radical is the
    /// same as in ⟨S_x²⟩ (it is Re⟨S₊²⟩), forced by ⟨Sx²⟩+⟨Sy²⟩ = S²+S/2.
    pub fn mean_sy2(&self) -> f64 {
        let s = self.total_spin;
        s / 4.0
            * ((2.0 * s + 1.0)
                - (2.0 * s - 1.0) * (self.alpha[3] * (self.alpha[3] + 1.0) / 2.0).sqrt())
    }

    pub fn mean_anticommutator_xy(&self) -> f64 {
        let s = self.total_spin;
        s / 2.0 * (2.0 * s - 1.0) * (self.alpha[3] * (1.0 - self.alpha[3]) / 2.0).sqrt()
    }
}

/// Closed-form moments for N spins at coupling χt (μ = 3χt).
pub fn analytic_moments(n_spins: usize, chi_t: f64) -> AnalyticMoments {
    let s = n_spins as f64 / 2.0;
    let mu = 3.0 * chi_t;
    let alpha = [
        1.0 / (1.0 + 1.0 * s * s * mu * mu).sqrt(),
        1.0 / (1.0 + 2.0 * s * s * mu * mu).sqrt(),
        1.0 / (1.0 + 3.0 * s * s * mu * mu).sqrt(),
        1.0 / (1.0 + 4.0 * s * s * mu * mu).sqrt(),
    ];
    let mean_sp = Complex64::new(s, 0.0) / (Complex64::new(1.0, -mu * s)).sqrt();
    let mean_sp2 =
        Complex64::new(s * (s - 0.5), 0.0) / (Complex64::new(1.0, -2.0 * mu * s)).sqrt();
    let mean_spsm = Complex64::new(s * s + s / 2.0, 0.0);

    let a1 = alpha[0];
    let a4 = alpha[3];
    let a_coeff = s / (4.0 * 2f64.sqrt()) * (2.0 * s - 1.0) * (a4 * (1.0 + a4)).sqrt()
        - s * s / 2.0 * a1 * a1;
    let b_coeff = s / (4.0 * 2f64.sqrt()) * (2.0 * s - 1.0) * (a4 * (1.0 - a4)).sqrt()
        - mu * s.powi(3) / 2.0 * a1 * a1;
    let delta_angle = 0.5 * (b_coeff / a_coeff).atan();

    AnalyticMoments {
        total_spin: s,
        mean_sp,
        mean_sp2,
        mean_spsm,
        alpha,
        mu,
        a_coeff,
        b_coeff,
        delta_angle,
        outside_validity: mu * s > 1.0,
    }
}

/// Weak-coupling QFI: F_Q = 4·sqrt(A²+B²) + S[2(1−α₁)S + 1].
pub fn analytic_weak_qfi(n_spins: usize, chi_t: f64) -> f64 {
    let m = analytic_moments(n_spins, chi_t);
    let s = n_spins as f64 / 2.0;
    4.0 * (m.a_coeff * m.a_coeff + m.b_coeff * m.b_coeff).sqrt()
        + s * (2.0 * (1.0 - m.alpha[0]) * s + 1.0)
}

/// Which nonlinearity the leading-order weak limit describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakScheme {
    Cubic,
    Oat,
}

/// Leading-order QFI at α = Nχt ≪ 1: 2S + (9/2)S²α² (cubic) or 2S + 2Sα²
/// (one-axis twisting). The cubic excess outruns the quadratic one by 9N/8.
pub fn weak_limit_qfi(n_spins: usize, alpha: f64, scheme: WeakScheme) -> f64 {
    let s = n_spins as f64 / 2.0;
    match scheme {
        WeakScheme::Cubic => 2.0 * s + 4.5 * s * s * alpha * alpha,
        WeakScheme::Oat => 2.0 * s + 2.0 * s * alpha * alpha,
    }
}

/// Exact even-N peak QFI (the t = π/4χ four-component cat, φ = π/8) and its
/// large-N limit ½(1+1/√2)N².
#[derive(Debug, Clone, Copy)]
pub struct EvenPeakQfi {
    pub exact: f64,
    pub large_n_limit: f64,
}

pub fn peak_even_max_qfi(n_spins: usize) -> Result<EvenPeakQfi> {
    if n_spins % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "even-N peak formula needs even N, got {n_spins}"
        )));
    }
    let s = n_spins as f64 / 2.0;
    let cos8 = (std::f64::consts::PI / 8.0).cos();
    let sqrt2_inv = std::f64::consts::FRAC_1_SQRT_2;
    // cos(πS/2) for integer S, exactly
    let cos_half_pi_s = match (n_spins / 2) % 4 {
        0 => 1.0,
        1 | 3 => 0.0,
        _ => -1.0,
    };
    let exact = 2.0 * s * s
        * (1.0 + sqrt2_inv - cos8.powi(n_spins as i32 * 2 - 2) * (1.0 + cos_half_pi_s))
        + (1.0 - sqrt2_inv) * s;
    let n2 = (n_spins * n_spins) as f64;
    Ok(EvenPeakQfi {
        exact,
        large_n_limit: 0.5 * (1.0 + sqrt2_inv) * n2,
    })
}

/// Max over m of |P_{2S−1}(m) − Gaussian(m)| with Gaussian(m) =
/// exp(−(m−S)²/S)/sqrt(Sπ) — the binomial-to-Gaussian conversion error.
pub fn gaussian_binomial_check(s: u32) -> f64 {
    let m_top = 2 * s as usize - 1;
    let sf = s as f64;
    let norm = 1.0 / (sf * std::f64::consts::PI).sqrt();
    let mut worst = 0.0f64;
    for m in 0..=m_top {
        let p = (ln_binomial(m_top, m) - m_top as f64 * std::f64::consts::LN_2).exp();
        let g = norm * (-(m as f64 - sf).powi(2) / sf).exp();
        worst = worst.max((p - g).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_at_zero_coupling() {
        let m = analytic_moments(100, 0.0);
        let s = 50.0;
        assert!((m.mean_sp - Complex64::new(s, 0.0)).norm() < 1e-12);
        assert!((m.mean_sp2 - Complex64::new(s * (s - 0.5), 0.0)).norm() < 1e-12);
        assert!((m.mean_spsm.re - (s * s + s / 2.0)).abs() < 1e-12);
        assert!(!m.outside_validity);
        for a in m.alpha {
            assert!((a - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn spsm_exact_at_any_coupling() {
        for chi_t in [0.0, 0.01, 0.3, 2.0] {
            let m = analytic_moments(60, chi_t);
            assert!((m.mean_spsm.re - (900.0 + 15.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn validity_flag_raises_when_mu_s_exceeds_one() {
        // μS = 3·χt·S > 1
        let m = analytic_moments(200, 0.004); // μS = 1.2
        assert!(m.outside_validity);
        let m = analytic_moments(200, 0.003); // μS = 0.9
        assert!(!m.outside_validity);
    }

    #[test]
    fn weak_limit_reduces_to_sql() {
        assert_eq!(weak_limit_qfi(80, 0.0, WeakScheme::Cubic), 80.0);
        assert_eq!(weak_limit_qfi(80, 0.0, WeakScheme::Oat), 80.0);
    }

    #[test]
    fn weak_excess_ratio_is_9n_over_8() {
        let n = 100;
        for alpha in [0.005, 0.01, 0.05] {
            let cubic = weak_limit_qfi(n, alpha, WeakScheme::Cubic) - n as f64;
            let oat = weak_limit_qfi(n, alpha, WeakScheme::Oat) - n as f64;
            assert!((cubic / oat - 9.0 * n as f64 / 8.0).abs() < 1e-9);
        }
    }

    #[test]
    fn weak_excess_values_at_alpha_point_one() {
        // N = 200, α = 0.1: cubic excess (9/2)S²α² = 450, OAT excess
        // 2Sα² = 2 (the printed formulas; consistent with the 9N/8 ratio)
        let n = 200;
        let cubic = weak_limit_qfi(n, 0.1, WeakScheme::Cubic) - 200.0;
        let oat = weak_limit_qfi(n, 0.1, WeakScheme::Oat) - 200.0;
        assert!((cubic - 450.0).abs() < 1e-9);
        assert!((oat - 2.0).abs() < 1e-9);
    }

    #[test]
    fn analytic_qfi_limits_to_n() {
        for n in [20usize, 200] {
            let f = analytic_weak_qfi(n, 0.0);
            assert!(
                (f - n as f64).abs() < 1e-9,
                "zero-coupling QFI should be N, got {f}"
            );
        }
    }

    #[test]
    fn even_peak_large_n_limit() {
        let peak = peak_even_max_qfi(20000).unwrap();
        let ratio = peak.exact / (20000.0f64 * 20000.0);
        assert!((ratio - 0.8535533905932737).abs() < 1e-4);
        assert!(peak_even_max_qfi(7).is_err());
    }

    #[test]
    fn gaussian_check_improves_with_s() {
        // The printed Gaussian is centred at S while the binomial mean is
        // S−1/2; the offset dominates the deviation (4.93e-3 at S=50).
        let d50 = gaussian_binomial_check(50);
        assert!((d50 - 4.93e-3).abs() < 0.1e-3, "S=50 deviation {d50}");
        let d500 = gaussian_binomial_check(500);
        assert!(d500 < d50);
        // ~1/S scaling: two-point slope
        let d10 = gaussian_binomial_check(10);
        let d100 = gaussian_binomial_check(100);
        let slope = (d10 / d100).log10();
        assert!(
            (slope - 1.0).abs() < 0.35,
            "deviation should scale roughly as 1/S, slope {slope}"
        );
    }
}

//! Fourier decomposition of cubic-evolved states into superpositions of
//! equatorial coherent states, GHZ pairing, projection-noise QFI estimates,
//! and the peak schedule.
//!
//! At t = π/(nχ) the cubic phase exp(−iπm³/n) is periodic in m — period 2n
//! for integer m (even N), period 8n for half-integer m (odd N) — so it
//! expands exactly into finitely many phase ramps linear in m, each of which
//! turns the initial |π/2,0⟩ into one coherent state on the equator.
//!
//! Even N uses the 2n-point transform with component angles πq/n. Odd N
//! needs care: on half-integer m the phase is *anti*periodic under
//! m → m + 4n, so the integer-angle basis cannot represent it. Expanding
//! over odd p = 2m instead gives 8n exact coefficients with component
//! angles πr/(4n).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::ensemble::{Parity, SpinEnsemble};
use crate::error::{Error, Result};
use crate::evolve::{evolve_zdiag, ZDiagonalHamiltonian};
use crate::state::{css_state, CssParams, DickeVector};

/// Relative sign of the antipodal pair in a GHZ component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhzSign {
    Plus,
    Minus,
}

/// |GHZ_φ^±⟩ = (|π/2,φ⟩ ± |π/2,φ+π⟩)/√2.
pub fn ghz_state(ensemble: SpinEnsemble, varphi: f64, sign: GhzSign) -> DickeVector {
    let a = css_state(ensemble, &CssParams::equatorial(varphi));
    let b = css_state(ensemble, &CssParams::equatorial(varphi + PI));
    let factor = match sign {
        GhzSign::Plus => Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        GhzSign::Minus => Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
    };
    let mut out = a.scaled(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    out.add_scaled(&b, factor).unwrap();
    // The two branches are exactly orthogonal, but kill rounding residue.
    out.normalize();
    out
}

/// Fourier coefficients of exp(−iπm³/n): length 2n (even parity, integer m)
/// or 8n (odd parity, half-integer m).
pub fn fourier_coeffs(n: usize, parity: Parity) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("time label n must be ≥ 1".into()));
    }
    let nf = n as f64;
    match parity {
        Parity::Even => {
            // f_q = (1/2n) Σ_{m=0}^{2n−1} e^{iπqm/n} e^{−iπm³/n}
            let count = 2 * n;
            let mut coeffs = Vec::with_capacity(count);
            for q in 0..count {
                let mut acc = Complex64::ZERO;
                for m in 0..count {
                    // exact integer phase reduction mod 2n
                    let cubic = (m as i64).pow(3).rem_euclid(2 * n as i64);
                    let linear = (q as i64 * m as i64).rem_euclid(2 * n as i64);
                    acc += Complex64::from_polar(1.0, PI * (linear - cubic) as f64 / nf);
                }
                coeffs.push(acc / count as f64);
            }
            Ok(coeffs)
        }
        Parity::Odd => {
            // f_r = (1/8n) Σ_{p odd, 0≤p<16n} e^{2πirp/(16n)} e^{−iπp³/(8n)};
            // reconstruction: e^{−iπm³/n} = Σ_r f_r e^{−iπrm/(4n)} at m = p/2.
            let count = 8 * n;
            let modulus = 16 * n as i64;
            let mut coeffs = Vec::with_capacity(count);
            for r in 0..count {
                let mut acc = Complex64::ZERO;
                for s in 0..count {
                    let p = 2 * s as i64 + 1;
                    let cubic = (p * p % modulus * p).rem_euclid(modulus);
                    let linear = (r as i64 * p).rem_euclid(modulus);
                    acc += Complex64::from_polar(1.0, PI * (linear - cubic) as f64 / (8.0 * nf));
                }
                coeffs.push(acc / count as f64);
            }
            Ok(coeffs)
        }
    }
}

/// Component angle φ_q for coefficient index q: πq/n (even) or πq/(4n) (odd).
pub fn component_angle(n: usize, parity: Parity, q: usize) -> f64 {
    match parity {
        Parity::Even => PI * q as f64 / n as f64,
        Parity::Odd => PI * q as f64 / (4.0 * n as f64),
    }
}

/// One coherent-state component of a cat decomposition: the state is
/// Σ amplitude·|π/2, φ⟩ with amplitude = f_q·e^{−iSφ_q}.
#[derive(Debug, Clone, Copy)]
pub struct CatComponent {
    pub q: usize,
    pub phi: f64,
    pub amplitude: Complex64,
}

/// The full decomposition of the state at t = π/(nχ).
#[derive(Debug, Clone)]
pub struct CatDecomposition {
    pub n: usize,
    pub parity: Parity,
    /// All Fourier coefficients f_q (2n even / 8n odd), including zeros.
    pub coeffs: Vec<Complex64>,
    /// Components with |f_q| ≥ 1e−9.
    pub components: Vec<CatComponent>,
}

const COMPONENT_DROP: f64 = 1e-9;

/// Decompose the cubic-evolved CSS at t = π/(nχ) and rebuild the state as a
/// coherent-state superposition.
pub fn cat_state(ensemble: SpinEnsemble, n: usize) -> Result<(CatDecomposition, DickeVector)> {
    let parity = ensemble.parity();
    let coeffs = fourier_coeffs(n, parity)?;
    let s = ensemble.total_spin();

    let mut components = Vec::new();
    let mut state: Option<DickeVector> = None;
    for (q, &f) in coeffs.iter().enumerate() {
        if f.norm() < COMPONENT_DROP {
            continue;
        }
        let phi = component_angle(n, parity, q);
        // Converting the phase ramp e^{−imφ} into |π/2,φ⟩ (whose amplitudes
        // carry e^{ikφ} = e^{i(S−m)φ}) costs a per-component phase e^{−iSφ}.
        let amplitude = f * Complex64::from_polar(1.0, -s * phi);
        components.push(CatComponent { q, phi, amplitude });
        let css = css_state(ensemble, &CssParams::equatorial(phi));
        match &mut state {
            Some(acc) => acc.add_scaled(&css, amplitude)?,
            None => state = Some(css.scaled(amplitude)),
        }
    }
    let state = state.ok_or_else(|| Error::Numeric("empty cat decomposition".into()))?;

    Ok((
        CatDecomposition {
            n,
            parity,
            coeffs,
            components,
        },
        state,
    ))
}

/// One GHZ constituent |GHZ_φ^±⟩ with complex weight C_φ.
#[derive(Debug, Clone, Copy)]
pub struct GhzComponent {
    pub varphi: f64,
    pub sign: GhzSign,
    pub weight: Complex64,
}

/// Merge antipodal component pairs (q, q + half-period) into GHZ form.
///
/// The relative sign is classified on the Fourier coefficients f_q, whose
/// pair ratio is ±1; lone components split evenly into a (+,−) pair at the
/// same angle.
pub fn ghz_components(decomposition: &CatDecomposition) -> Vec<GhzComponent> {
    let n = decomposition.n;
    let half = match decomposition.parity {
        Parity::Even => n,
        Parity::Odd => 4 * n,
    };
    let coeffs = &decomposition.coeffs;
    let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::new();
    for q in 0..half {
        let a = coeffs[q];
        let b = coeffs[q + half];
        let (na, nb) = (a.norm(), b.norm());
        if na < COMPONENT_DROP && nb < COMPONENT_DROP {
            continue;
        }
        let phi = component_angle(n, decomposition.parity, q);
        if na >= COMPONENT_DROP && nb >= COMPONENT_DROP {
            let ratio = b / a;
            if ratio.re >= 0.0 {
                out.push(GhzComponent {
                    varphi: phi,
                    sign: GhzSign::Plus,
                    weight: a * std::f64::consts::SQRT_2,
                });
            } else {
                out.push(GhzComponent {
                    varphi: phi,
                    sign: GhzSign::Minus,
                    weight: a * std::f64::consts::SQRT_2,
                });
            }
        } else if na >= COMPONENT_DROP {
            // lone CSS at φ: |φ⟩ = (GHZ⁺ + GHZ⁻)/√2
            out.push(GhzComponent {
                varphi: phi,
                sign: GhzSign::Plus,
                weight: a * sqrt_half,
            });
            out.push(GhzComponent {
                varphi: phi,
                sign: GhzSign::Minus,
                weight: a * sqrt_half,
            });
        } else {
            out.push(GhzComponent {
                varphi: phi + PI,
                sign: GhzSign::Plus,
                weight: b * sqrt_half,
            });
            out.push(GhzComponent {
                varphi: phi + PI,
                sign: GhzSign::Minus,
                weight: b * sqrt_half,
            });
        }
    }
    out
}

/// Projection-noise QFI of a GHZ superposition (large-N estimate).
///
/// Maximizes Σ_φ |NC_φ|²·¼[2S²+S+(2S²−S)cos 2(φ−ϕ)] over ϕ via the resultant
/// phasor R = Σ w_φ e^{2iφ}; the maximum sits at ϕ = arg(R)/2. Returns
/// (qfi, ϕ_opt).
pub fn ghz_projection_qfi(components: &[GhzComponent], n_spins: usize) -> Result<(f64, f64)> {
    if components.is_empty() {
        return Err(Error::InvalidParameter(
            "GHZ projection needs at least one component".into(),
        ));
    }
    let s = n_spins as f64 / 2.0;
    let total: f64 = components.iter().map(|c| c.weight.norm_sqr()).sum();
    if total <= 0.0 {
        return Err(Error::InvalidParameter("all GHZ weights vanish".into()));
    }
    let mut phasor = Complex64::ZERO;
    for c in components {
        let w = c.weight.norm_sqr() / total;
        phasor += Complex64::from_polar(w, 2.0 * c.varphi);
    }
    let r = phasor.norm();
    let phi_opt = phasor.arg() / 2.0;
    let max_var = 0.25 * (2.0 * s * s + s + (2.0 * s * s - s) * r);
    Ok((4.0 * max_var, phi_opt))
}

/// Times of the regular QFI peaks: π/(12kχ) for even N, π/(3(2k−1)χ) for
/// odd N, k = 1..=k_max.
pub fn peak_schedule(parity: Parity, k_max: usize) -> Vec<f64> {
    (1..=k_max)
        .map(|k| match parity {
            Parity::Even => PI / (12.0 * k as f64),
            Parity::Odd => PI / (3.0 * (2.0 * k as f64 - 1.0)),
        })
        .collect()
}

/// The cubic-evolved CSS at t = π/(nχ) (the state the decomposition must
/// reproduce).
pub fn evolved_cat_reference(ensemble: SpinEnsemble, n: usize) -> DickeVector {
    let css = css_state(ensemble, &CssParams::equatorial(0.0));
    evolve_zdiag(&css, &ZDiagonalHamiltonian::cubic(), PI / n as f64)
}

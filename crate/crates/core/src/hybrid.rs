//! Cubic-quadratic-admixture dynamics H = χ(ε·S_z³ + S_y²): trajectory
//! observables and the (ε, t) search that accelerates GHZ preparation.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::cat::{ghz_state, GhzSign};
use crate::ensemble::SpinEnsemble;
use crate::error::{Error, Result};
use crate::evolve::HermitianPropagator;
use crate::operators::CollectiveOperator;
use crate::qfi::qfi_pure;
use crate::state::{css_state, CssParams, DickeVector};

/// Weight factor ε and rate χ of the admixture Hamiltonian.
#[derive(Debug, Clone, Copy)]
pub struct CqaParams {
    pub epsilon: f64,
    pub chi: f64,
    pub n_spins: usize,
}

impl CqaParams {
    pub fn new(epsilon: f64, chi: f64, n_spins: usize) -> Result<Self> {
        if epsilon < 0.0 || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "weight factor must be ≥ 0, got {epsilon}"
            )));
        }
        Ok(Self {
            epsilon,
            chi,
            n_spins,
        })
    }
}

/// Dense Hermitian χ(ε·S_z³ + S_y²).
pub fn cqa_hamiltonian(params: &CqaParams) -> Result<CollectiveOperator> {
    let ensemble = SpinEnsemble::new(params.n_spins)?;
    let sz = CollectiveOperator::sz(ensemble).to_dense();
    let sy = CollectiveOperator::sy(ensemble).to_dense();
    let h = (&sz * &sz * &sz) * Complex64::new(params.chi * params.epsilon, 0.0)
        + (&sy * &sy) * Complex64::new(params.chi, 0.0);
    CollectiveOperator::from_dense(ensemble, h)
}

/// One trajectory sample: ⟨S_z⟩, the twist tensor ⟨T_xy⟩ = ⟨S_yS_x + S_xS_y⟩,
/// and the pure-state QFI.
#[derive(Debug, Clone, Copy)]
pub struct CqaTrajectoryRow {
    pub t: f64,
    pub mean_sz: f64,
    pub mean_txy: f64,
    pub qfi: f64,
}

/// Evolve under the admixture Hamiltonian and record (t, ⟨S_z⟩, ⟨T_xy⟩, QFI).
///
/// The generator is eigendecomposed once and reused across the grid. Initial
/// state defaults to |π/2,0⟩.
pub fn cqa_trajectory(
    params: &CqaParams,
    t_grid: &[f64],
    initial: Option<&DickeVector>,
) -> Result<Vec<CqaTrajectoryRow>> {
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "time grid must be strictly increasing".into(),
        ));
    }
    let ensemble = SpinEnsemble::new(params.n_spins)?;
    let h = cqa_hamiltonian(params)?;
    let prop = HermitianPropagator::new(&h.to_dense())?;
    let default_initial;
    let initial = match initial {
        Some(s) => s,
        None => {
            default_initial = css_state(ensemble, &CssParams::equatorial(0.0));
            &default_initial
        }
    };
    let sx = CollectiveOperator::sx(ensemble);
    let sy = CollectiveOperator::sy(ensemble);
    let sz = CollectiveOperator::sz(ensemble);

    t_grid
        .iter()
        .map(|&t| {
            let state = prop.evolve(initial, t)?;
            let mean_sz = crate::operators::expectation(&state, &sz)?.re;
            // ⟨SySx + SxSy⟩ = 2·Re⟨Sy ψ|Sx ψ⟩
            let vx = sx.apply(&state)?;
            let vy = sy.apply(&state)?;
            let mean_txy = 2.0 * vy.overlap(&vx)?.re;
            Ok(CqaTrajectoryRow {
                t,
                mean_sz,
                mean_txy,
                qfi: qfi_pure(&state).qfi,
            })
        })
        .collect()
}

/// Best GHZ overlap over the direction φ and both signs.
#[derive(Debug, Clone, Copy)]
pub struct GhzFidelity {
    pub fidelity: f64,
    pub phi_best: f64,
    pub sign_best: GhzSign,
    /// (|⟨φ|ψ⟩| + |⟨φ+π|ψ⟩|)²/2 at the best φ: the overlap with the best
    /// antipodal pair when the relative branch phase is left free. Equals
    /// `fidelity` when the state's branch phase is ±1; the admixture optimum
    /// lands near ±i, where the rigid Eq.-29 overlap saturates at 1/2.
    pub fidelity_phase_free: f64,
}

/// max_{φ, ±} |⟨GHZ_φ^±|ψ⟩|², coarse grid Δφ = π/720 then golden-section
/// refinement.
pub fn ghz_fidelity(state: &DickeVector) -> GhzFidelity {
    let ensemble = state.ensemble();
    let overlap_sq = |phi: f64, sign: GhzSign| -> f64 {
        ghz_state(ensemble, phi, sign)
            .overlap(state)
            .unwrap()
            .norm_sqr()
    };
    let mut best = GhzFidelity {
        fidelity: -1.0,
        phi_best: 0.0,
        sign_best: GhzSign::Plus,
        fidelity_phase_free: 0.0,
    };
    let steps = 720;
    for sign in [GhzSign::Plus, GhzSign::Minus] {
        for i in 0..steps {
            let phi = PI * i as f64 / steps as f64; // GHZ_φ and GHZ_{φ+π} coincide up to sign
            let f = overlap_sq(phi, sign);
            if f > best.fidelity {
                best = GhzFidelity {
                    fidelity: f,
                    phi_best: phi,
                    sign_best: sign,
                    fidelity_phase_free: 0.0,
                };
            }
        }
    }
    // golden-section polish around the best grid point
    let sign = best.sign_best;
    let (mut lo, mut hi) = (best.phi_best - PI / steps as f64, best.phi_best + PI / steps as f64);
    let inv_phi = 0.618_033_988_749_894_8;
    for _ in 0..50 {
        let x1 = hi - inv_phi * (hi - lo);
        let x2 = lo + inv_phi * (hi - lo);
        if overlap_sq(x1, sign) > overlap_sq(x2, sign) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    let phi = 0.5 * (lo + hi);
    let f = overlap_sq(phi, sign);
    if f > best.fidelity {
        best.fidelity = f;
        best.phi_best = phi;
    }
    // Phase-free variant: maximize (|a|+|b|)²/2 over the branch angle.
    let branch_sum = |phi: f64| -> f64 {
        let a = css_state(ensemble, &CssParams::equatorial(phi))
            .overlap(state)
            .unwrap()
            .norm();
        let b = css_state(ensemble, &CssParams::equatorial(phi + PI))
            .overlap(state)
            .unwrap()
            .norm();
        (a + b) * (a + b) / 2.0
    };
    let mut free_best = (0.0f64, 0.0f64);
    for i in 0..720 {
        let phi = PI * i as f64 / 720.0;
        let f = branch_sum(phi);
        if f > free_best.1 {
            free_best = (phi, f);
        }
    }
    let (mut lo, mut hi) = (
        free_best.0 - PI / 720.0,
        free_best.0 + PI / 720.0,
    );
    for _ in 0..50 {
        let x1 = hi - inv_phi * (hi - lo);
        let x2 = lo + inv_phi * (hi - lo);
        if branch_sum(x1) > branch_sum(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    best.fidelity_phase_free = branch_sum(0.5 * (lo + hi)).max(free_best.1);
    best
}

/// Outcome of the GHZ acceleration search.
#[derive(Debug, Clone, Copy)]
pub struct GhzSearchResult {
    pub epsilon_opt: f64,
    /// Preparation time t_f in 1/χ.
    pub t_f: f64,
    pub qfi_max: f64,
    /// |⟨GHZ_best|ψ(t_f)⟩|².
    pub fidelity: f64,
    /// t_f / t_{π/2}: below 1 flags acceleration over one-axis twisting.
    pub speedup: f64,
}

/// Maximize the QFI of e^{−iHt}|π/2,0⟩ over (ε, t): coarse grid
/// (Δε = 0.01, Δt = 0.01/χ) then Nelder–Mead refinement.
pub fn optimize_ghz(
    n_spins: usize,
    eps_range: (f64, f64),
    t_range: (f64, f64),
) -> Result<GhzSearchResult> {
    search_ghz(n_spins, eps_range, t_range)
}

/// The reduced-time branch: same landscape, time capped at `t_cap`.
pub fn optimize_ghz_constrained(n_spins: usize, t_cap: f64) -> Result<GhzSearchResult> {
    search_ghz(n_spins, (0.01, 1.0), (0.01, t_cap))
}

fn search_ghz(
    n_spins: usize,
    eps_range: (f64, f64),
    t_range: (f64, f64),
) -> Result<GhzSearchResult> {
    let (eps_lo, eps_hi) = eps_range;
    let (t_lo, t_hi) = t_range;
    if eps_hi <= eps_lo || t_hi <= t_lo {
        return Err(Error::InvalidParameter("empty search range".into()));
    }
    let ensemble = SpinEnsemble::new(n_spins)?;
    let initial = css_state(ensemble, &CssParams::equatorial(0.0));

    // Coarse pass: one eigendecomposition per ε column serves every t.
    let n_eps = ((eps_hi - eps_lo) / 0.01).round() as usize + 1;
    let n_t = (((t_hi - t_lo) / 0.01).round() as usize + 1).max(2);
    let mut best = (eps_lo, t_lo, f64::NEG_INFINITY);
    for i in 0..n_eps {
        let eps = eps_lo + 0.01 * i as f64;
        let params = CqaParams::new(eps, 1.0, n_spins)?;
        let prop = HermitianPropagator::new(&cqa_hamiltonian(&params)?.to_dense())?;
        for j in 0..n_t {
            let t = t_lo + (t_hi - t_lo) * j as f64 / (n_t - 1) as f64;
            let state = prop.evolve(&initial, t)?;
            let q = qfi_pure(&state).qfi;
            if q > best.2 {
                best = (eps, t, q);
            }
        }
    }

    // Nelder–Mead polish in (ε, t), clamped to the search box.
    let objective = |eps: f64, t: f64| -> f64 {
        let eps = eps.clamp(eps_lo.max(1e-6), eps_hi);
        let t = t.clamp(t_lo.max(1e-6), t_hi);
        let params = CqaParams::new(eps, 1.0, n_spins).unwrap();
        let prop = HermitianPropagator::new(&cqa_hamiltonian(&params).unwrap().to_dense()).unwrap();
        let state = prop.evolve(&initial, t).unwrap();
        qfi_pure(&state).qfi
    };
    let (eps_opt, t_f, qfi_max) = nelder_mead_2d(objective, best.0, best.1, 0.005, 1e-4);
    let eps_opt = eps_opt.clamp(eps_lo.max(1e-6), eps_hi);
    let t_f = t_f.clamp(t_lo.max(1e-6), t_hi);

    let params = CqaParams::new(eps_opt, 1.0, n_spins)?;
    let prop = HermitianPropagator::new(&cqa_hamiltonian(&params)?.to_dense())?;
    let state = prop.evolve(&initial, t_f)?;
    let fid = ghz_fidelity(&state);

    Ok(GhzSearchResult {
        epsilon_opt: eps_opt,
        t_f,
        qfi_max,
        fidelity: fid.fidelity,
        speedup: t_f / (PI / 2.0),
    })
}

/// Maximize f over 2 variables; returns (x, y, f). Convergence when the
/// simplex diameter drops below `tol`.
fn nelder_mead_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    x0: f64,
    y0: f64,
    scale: f64,
    tol: f64,
) -> (f64, f64, f64) {
    let mut simplex = [
        (x0, y0, f(x0, y0)),
        (x0 + scale, y0, f(x0 + scale, y0)),
        (x0, y0 + scale, f(x0, y0 + scale)),
    ];
    for _ in 0..500 {
        simplex.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap()); // best first
        let diameter = ((simplex[0].0 - simplex[2].0).abs())
            .max((simplex[0].1 - simplex[2].1).abs())
            .max((simplex[1].0 - simplex[2].0).abs())
            .max((simplex[1].1 - simplex[2].1).abs());
        if diameter < tol {
            break;
        }
        let (bx, by, bf) = simplex[0];
        let (sx, sy, sf) = simplex[1];
        let (wx, wy, wf) = simplex[2];
        let cx = 0.5 * (bx + sx);
        let cy = 0.5 * (by + sy);
        // reflect
        let rx = 2.0 * cx - wx;
        let ry = 2.0 * cy - wy;
        let rf = f(rx, ry);
        if rf > bf {
            // expand
            let ex = cx + 2.0 * (rx - cx);
            let ey = cy + 2.0 * (ry - cy);
            let ef = f(ex, ey);
            simplex[2] = if ef > rf { (ex, ey, ef) } else { (rx, ry, rf) };
        } else if rf > sf {
            simplex[2] = (rx, ry, rf);
        } else {
            // contract
            let kx = cx + 0.5 * (wx - cx);
            let ky = cy + 0.5 * (wy - cy);
            let kf = f(kx, ky);
            if kf > wf {
                simplex[2] = (kx, ky, kf);
            } else {
                // shrink toward the best
                simplex[1] = (
                    0.5 * (sx + bx),
                    0.5 * (sy + by),
                    f(0.5 * (sx + bx), 0.5 * (sy + by)),
                );
                simplex[2] = (
                    0.5 * (wx + bx),
                    0.5 * (wy + by),
                    f(0.5 * (wx + bx), 0.5 * (wy + by)),
                );
            }
        }
    }
    simplex.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap());
    simplex[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::expectation;

    #[test]
    fn hamiltonian_is_hermitian_and_small_case_assembles() {
        let params = CqaParams::new(1.0, 1.0, 2).unwrap();
        let h = cqa_hamiltonian(&params).unwrap();
        assert_eq!(h.dim(), 3);
        assert!(h.hermiticity_error() < 1e-12);
        // ε = 0 degenerates to pure S_y²
        let params0 = CqaParams::new(0.0, 1.0, 4).unwrap();
        let h0 = cqa_hamiltonian(&params0).unwrap().to_dense();
        let ens = SpinEnsemble::new(4).unwrap();
        let sy = CollectiveOperator::sy(ens).to_dense();
        let sy2 = &sy * &sy;
        assert!((h0 - sy2).map(|z| z.norm()).max() < 1e-13);
    }

    #[test]
    fn spectrum_is_real_at_working_point() {
        let params = CqaParams::new(0.29, 1.0, 20).unwrap();
        let h = cqa_hamiltonian(&params).unwrap();
        let prop = HermitianPropagator::new(&h.to_dense()).unwrap();
        assert!(prop.eigenvalues().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn trajectory_initial_point() {
        let params = CqaParams::new(0.29, 1.0, 12).unwrap();
        let rows = cqa_trajectory(&params, &[1e-9, 0.1], None).unwrap();
        assert!(rows[0].mean_sz.abs() < 1e-8);
        // norm preserved implicitly: QFI of a unit state is bounded by N²
        assert!(rows[1].qfi <= 145.0);
    }

    #[test]
    fn eq38_residual_vanishes_at_second_order() {
        // d⟨S_z⟩/dt = −χ⟨T_xy⟩ via central differences
        let params = CqaParams::new(0.29, 1.0, 12).unwrap();
        let dt = 1e-3;
        let t0 = 0.2;
        let rows = cqa_trajectory(&params, &[t0 - dt, t0, t0 + dt], None).unwrap();
        let deriv = (rows[2].mean_sz - rows[0].mean_sz) / (2.0 * dt);
        let residual = deriv + rows[1].mean_txy;
        let n2 = 144.0;
        assert!(
            residual.abs() <= 1e-6 * n2,
            "Ehrenfest residual {residual}"
        );
    }

    #[test]
    fn energy_is_conserved_along_trajectory() {
        let params = CqaParams::new(0.4, 1.0, 10).unwrap();
        let ens = SpinEnsemble::new(10).unwrap();
        let h = cqa_hamiltonian(&params).unwrap();
        let prop = HermitianPropagator::new(&h.to_dense()).unwrap();
        let initial = css_state(ens, &CssParams::equatorial(0.0));
        let e0 = expectation(&initial, &h).unwrap().re;
        for &t in &[0.1, 0.5, 1.5] {
            let state = prop.evolve(&initial, t).unwrap();
            let e = expectation(&state, &h).unwrap().re;
            assert!(
                ((e - e0) / e0).abs() < 1e-9,
                "energy drift at t={t}: {e} vs {e0}"
            );
            assert!((state.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn ghz_fidelity_recovers_known_states() {
        let ens = SpinEnsemble::new(14).unwrap();
        let target = ghz_state(ens, 0.0, GhzSign::Plus);
        let fid = ghz_fidelity(&target);
        assert!(fid.fidelity > 1.0 - 1e-10);
        assert!(fid.phi_best.abs() < 1e-3 || (fid.phi_best - PI).abs() < 1e-3);

        // a CSS overlaps any GHZ at exactly 1/2
        let css = css_state(ens, &CssParams::equatorial(0.0));
        let fid = ghz_fidelity(&css);
        assert!((fid.fidelity - 0.5).abs() < 1e-9);
    }

    #[test]
    fn rejects_empty_ranges() {
        assert!(optimize_ghz(8, (0.5, 0.5), (0.0, 1.0)).is_err());
    }
}

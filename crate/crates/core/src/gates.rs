//! Synthesis of the cubic evolution exp(−i·8δ⁴·S_z³) from rotations and
//! one-axis-twisting pulses via nested group commutators.
//!
//! The primitive E(A,B) = e^{iδA} e^{iδB} e^{−iδA} e^{−iδB} approximates
//! e^{[iδA, iδB]}; composing four of them,
//! U_C = E(S_x,S_y²) E(S_x²,S_y) E(S_y²,S_x) E(S_y,S_x²),
//! leaves a z-diagonal phase whose cubic part is −8δ⁴m³ plus a residual
//! linear precession ∝ δ⁴m. The linear coefficient printed alongside the
//! scheme is sign-ambiguous, so it is fitted from the synthesized unitary's
//! diagonal phases and cancelled by an exact z-rotation.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::ensemble::SpinEnsemble;
use crate::error::{Error, Result};
use crate::evolve::{Axis, HermitianPropagator};
use crate::linalg::phase_aligned_distance;
use crate::operators::CollectiveOperator;

/// One primitive pulse: a rotation e^{iδS_q} or a twist e^{iδS_q²}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseStep {
    Rotation { axis: Axis, angle: f64 },
    Oat { axis: Axis, angle: f64 },
}

/// Ordered pulse program, first element applied first.
#[derive(Debug, Clone, Default)]
pub struct PulseSequence(pub Vec<PulseStep>);

impl PulseSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Result of the synthesis: the pulse program, the synthesized unitary, the
/// phase-aligned spectral-norm distance to exp(−i·8δ⁴·S_z³), and the
/// diagonal-phase fit.
pub struct CubicSynthesis {
    pub sequence: PulseSequence,
    pub effective: CollectiveOperator,
    pub error_to_target: f64,
    /// Linear S_z coefficient fitted from U_C before the counter-rotation.
    pub fitted_linear: f64,
    /// Cubic S_z³ coefficient fitted after the counter-rotation (≈ −8δ⁴ in
    /// the phase convention exp(iθ(m))).
    pub fitted_cubic: f64,
    /// Residual linear coefficient after the counter-rotation.
    pub residual_linear: f64,
}

struct Generators {
    sx: HermitianPropagator,
    sy: HermitianPropagator,
    sx2: HermitianPropagator,
    sy2: HermitianPropagator,
}

#[derive(Clone, Copy)]
enum Gen {
    Sx,
    Sy,
    Sx2,
    Sy2,
}

impl Gen {
    fn step(self, angle: f64) -> PulseStep {
        match self {
            Gen::Sx => PulseStep::Rotation { axis: Axis::X, angle },
            Gen::Sy => PulseStep::Rotation { axis: Axis::Y, angle },
            Gen::Sx2 => PulseStep::Oat { axis: Axis::X, angle },
            Gen::Sy2 => PulseStep::Oat { axis: Axis::Y, angle },
        }
    }
}

impl Generators {
    fn unitary(&self, gen: Gen, angle: f64) -> DMatrix<Complex64> {
        // e^{iθG} = propagator at t = −θ
        match gen {
            Gen::Sx => self.sx.unitary(-angle),
            Gen::Sy => self.sy.unitary(-angle),
            Gen::Sx2 => self.sx2.unitary(-angle),
            Gen::Sy2 => self.sy2.unitary(-angle),
        }
    }
}

/// E(A,B) = e^{iδA} e^{iδB} e^{−iδA} e^{−iδB}, also recording the four steps.
fn composite(
    gens: &Generators,
    a: Gen,
    b: Gen,
    delta: f64,
    steps: &mut Vec<PulseStep>,
) -> DMatrix<Complex64> {
    steps.push(a.step(delta));
    steps.push(b.step(delta));
    steps.push(a.step(-delta));
    steps.push(b.step(-delta));
    gens.unitary(a, delta) * gens.unitary(b, delta) * gens.unitary(a, -delta) * gens.unitary(b, -delta)
}

/// Least-squares fit of diagonal phases θ(m) = a0 + a1·m + a2·m² + a3·m³.
fn fit_diagonal_phases(ensemble: SpinEnsemble, u: &DMatrix<Complex64>) -> [f64; 4] {
    let dim = ensemble.dim();
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [0.0f64; 4];
    for k in 0..dim {
        let m = ensemble.m(k);
        let theta = u[(k, k)].arg();
        let row = [1.0, m, m * m, m * m * m];
        for i in 0..4 {
            for j in 0..4 {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * theta;
        }
    }
    solve4(ata, atb)
}

fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> [f64; 4] {
    // Gaussian elimination with partial pivoting on a 4×4 system.
    for col in 0..4 {
        let mut pivot = col;
        for row in col + 1..4 {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let diag = a[col][col];
        for row in col + 1..4 {
            let factor = a[row][col] / diag;
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0f64; 4];
    for row in (0..4).rev() {
        let mut acc = b[row];
        for k in row + 1..4 {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x
}

/// Build the cubic gate at strength δ; the target is exp(−i·8δ⁴·S_z³).
///
/// δ is capped at 0.3 (the commutator expansion degrades) and N at 12
/// (dense unitary products).
pub fn synthesize_cubic(ensemble: SpinEnsemble, delta: f64) -> Result<CubicSynthesis> {
    if delta.abs() > 0.3 {
        return Err(Error::InvalidParameter(format!(
            "synthesis expansion invalid for |δ| = {} > 0.3",
            delta.abs()
        )));
    }
    if ensemble.n_spins() > 12 {
        return Err(Error::InvalidParameter(format!(
            "dense synthesis capped at N = 12, got {}",
            ensemble.n_spins()
        )));
    }
    let dim = ensemble.dim();
    let sx = CollectiveOperator::sx(ensemble).to_dense();
    let sy = CollectiveOperator::sy(ensemble).to_dense();
    let gens = Generators {
        sx: HermitianPropagator::new(&sx)?,
        sy: HermitianPropagator::new(&sy)?,
        sx2: HermitianPropagator::new(&(&sx * &sx))?,
        sy2: HermitianPropagator::new(&(&sy * &sy))?,
    };

    // E(Sy²,Sx) = E(Sx,Sy²)⁻¹ and E(Sy,Sx²) = E(Sx²,Sy)⁻¹, so the four-fold
    // product is an exact group commutator of the two δ²-generators
    // ±iδ²{Sy,Sz}, ±iδ²{Sx,Sz}: every stray δ³/δ⁴ term inside each composite
    // cancels and U_C = exp(±δ⁴[{Sy,Sz},{Sx,Sz}] + O(δ⁵)). With
    // [{Sy,Sz},{Sx,Sz}] = −i(8S_z³ − (4S²+4S−1)S_z), running the composites
    // in this order yields the −i·8δ⁴·S_z³ target.
    let mut steps = Vec::with_capacity(17);
    let u_c = if delta == 0.0 {
        DMatrix::<Complex64>::identity(dim, dim)
    } else {
        let e1 = composite(&gens, Gen::Sy, Gen::Sx2, delta, &mut steps);
        let e2 = composite(&gens, Gen::Sy2, Gen::Sx, delta, &mut steps);
        let e3 = composite(&gens, Gen::Sx2, Gen::Sy, delta, &mut steps);
        let e4 = composite(&gens, Gen::Sx, Gen::Sy2, delta, &mut steps);
        e1 * e2 * e3 * e4
    };

    // Fit the stray linear precession and cancel it with an exact z-rotation.
    let pre_fit = fit_diagonal_phases(ensemble, &u_c);
    let fitted_linear = pre_fit[1];
    let counter =
        DMatrix::<Complex64>::from_fn(dim, dim, |i, j| {
            if i == j {
                Complex64::from_polar(1.0, -fitted_linear * ensemble.m(i))
            } else {
                Complex64::ZERO
            }
        });
    if delta != 0.0 {
        steps.push(PulseStep::Rotation {
            axis: Axis::Z,
            angle: -fitted_linear,
        });
    }
    let u_synth = counter * u_c;
    let post_fit = fit_diagonal_phases(ensemble, &u_synth);

    // Target exp(−i·8δ⁴·S_z³)
    let chi_t = 8.0 * delta.powi(4);
    let target = DMatrix::<Complex64>::from_fn(dim, dim, |i, j| {
        if i == j {
            let m = ensemble.m(i);
            Complex64::from_polar(1.0, -chi_t * m * m * m)
        } else {
            Complex64::ZERO
        }
    });
    let error_to_target = phase_aligned_distance(&u_synth, &target);

    Ok(CubicSynthesis {
        sequence: PulseSequence(steps),
        effective: CollectiveOperator::from_dense(ensemble, u_synth)?,
        error_to_target,
        fitted_linear,
        fitted_cubic: post_fit[3],
        residual_linear: post_fit[1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_delta_is_identity() {
        let ens = SpinEnsemble::new(4).unwrap();
        let synth = synthesize_cubic(ens, 0.0).unwrap();
        assert!(synth.error_to_target < 1e-13);
        assert!(synth.fitted_linear.abs() < 1e-13);
    }

    #[test]
    fn rejects_large_delta_and_large_n() {
        let ens = SpinEnsemble::new(4).unwrap();
        assert!(synthesize_cubic(ens, 0.5).is_err());
        let big = SpinEnsemble::new(13).unwrap();
        assert!(synthesize_cubic(big, 0.1).is_err());
    }

    #[test]
    fn convergence_order_exceeds_target_term() {
        // halving δ must shrink the distance to exp(−i8δ⁴Sz³) by ≥ 2⁵
        let ens = SpinEnsemble::new(4).unwrap();
        let e1 = synthesize_cubic(ens, 0.1).unwrap().error_to_target;
        let e2 = synthesize_cubic(ens, 0.05).unwrap().error_to_target;
        let order = (e1 / e2).log2();
        assert!(
            order >= 5.0,
            "empirical order {order} (errors {e1:.3e}, {e2:.3e})"
        );
    }

    #[test]
    fn fitted_cubic_coefficient_matches_8_delta4() {
        let ens = SpinEnsemble::new(4).unwrap();
        let delta = 0.1;
        let synth = synthesize_cubic(ens, delta).unwrap();
        let expected = -8.0 * delta.powi(4); // phases exp(iθ), θ = −8δ⁴m³
        assert!(
            (synth.fitted_cubic - expected).abs() <= synth.error_to_target.max(1e-6),
            "fitted cubic {} vs expected {expected}, error bound {}",
            synth.fitted_cubic,
            synth.error_to_target
        );
    }

    #[test]
    fn counter_rotation_removes_linear_residual() {
        let ens = SpinEnsemble::new(6).unwrap();
        let delta = 0.1;
        let synth = synthesize_cubic(ens, delta).unwrap();
        // The stray precession comes out at (4S²+4S−1)δ⁴.
        let s = 3.0;
        let expected = (4.0 * s * s + 4.0 * s - 1.0) * delta.powi(4);
        assert!(
            (synth.fitted_linear.abs() - expected).abs() < 0.1 * expected,
            "fitted linear {} vs expected ±{expected}",
            synth.fitted_linear
        );
        // Without the correction the distance to the target is dominated by
        // that slope; with it, the leftover slope is inside the error bar.
        let target = {
            let chi_t = 8.0 * delta.powi(4);
            DMatrix::<Complex64>::from_fn(ens.dim(), ens.dim(), |i, j| {
                if i == j {
                    let m = ens.m(i);
                    Complex64::from_polar(1.0, -chi_t * m * m * m)
                } else {
                    Complex64::ZERO
                }
            })
        };
        let counter = DMatrix::<Complex64>::from_fn(ens.dim(), ens.dim(), |i, j| {
            if i == j {
                Complex64::from_polar(1.0, synth.fitted_linear * ens.m(i))
            } else {
                Complex64::ZERO
            }
        });
        let uncorrected = counter * synth.effective.to_dense();
        let raw_error = crate::linalg::phase_aligned_distance(&uncorrected, &target);
        assert!(
            raw_error > 2.0 * synth.error_to_target,
            "uncorrected error {raw_error} should exceed corrected {}",
            synth.error_to_target
        );
        assert!(synth.residual_linear.abs() <= synth.error_to_target);
    }
}

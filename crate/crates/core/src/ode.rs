//! Adaptive Dormand–Prince 5(4) integrator on flat complex state vectors.
//!
//! Tuned for the Lindblad right-hand sides in this crate: relative tolerance
//! 1e−9, absolute 1e−12 by default, with an optional per-step acceptance
//! hook so the caller can reject steps on physics grounds (trace drift).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Butcher tableau of Dormand–Prince 5(4).
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub struct AdaptiveRk {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for AdaptiveRk {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-12,
            max_steps: 2_000_000,
        }
    }
}

impl AdaptiveRk {
    /// Integrate y' = f(t, y) from t0 to t1 in place.
    ///
    /// `accept` sees the candidate state after each error-accepted step and
    /// may veto it (returning false halves the step).
    pub fn integrate<F, G>(
        &self,
        mut f: F,
        t0: f64,
        t1: f64,
        y: &mut Vec<Complex64>,
        mut accept: G,
    ) -> Result<()>
    where
        F: FnMut(f64, &[Complex64], &mut [Complex64]),
        G: FnMut(&[Complex64]) -> bool,
    {
        if t1 < t0 {
            return Err(Error::InvalidParameter(
                "integration span must be forward in time".into(),
            ));
        }
        if t1 == t0 {
            return Ok(());
        }
        let dim = y.len();
        let span = t1 - t0;
        let mut t = t0;
        let mut h = (span / 100.0).min(1e-2).max(1e-10);
        let mut k = vec![vec![Complex64::ZERO; dim]; 7];
        let mut y_stage = vec![Complex64::ZERO; dim];
        let mut y_new = vec![Complex64::ZERO; dim];

        f(t, y, &mut k[0]);
        let mut steps = 0usize;
        while t < t1 {
            steps += 1;
            if steps > self.max_steps {
                return Err(Error::Numeric(format!(
                    "integrator exceeded {} steps (non-convergence)",
                    self.max_steps
                )));
            }
            h = h.min(t1 - t);

            for stage in 0..6 {
                for i in 0..dim {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(stage + 1) {
                        let a = A[stage][j];
                        if a != 0.0 {
                            acc += h * a * kj[i];
                        }
                    }
                    y_stage[i] = acc;
                }
                let t_stage = t + h * [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0][stage];
                let (head, tail) = k.split_at_mut(stage + 1);
                let _ = head;
                f(t_stage, &y_stage, &mut tail[0]);
            }

            // 5th-order solution and embedded error
            let mut err_sq = 0.0f64;
            for i in 0..dim {
                let mut y5 = y[i];
                let mut y4 = y[i];
                for (j, kj) in k.iter().enumerate() {
                    if B5[j] != 0.0 {
                        y5 += h * B5[j] * kj[i];
                    }
                    if B4[j] != 0.0 {
                        y4 += h * B4[j] * kj[i];
                    }
                }
                y_new[i] = y5;
                let scale = self.atol + self.rtol * y[i].norm().max(y5.norm());
                let e = (y5 - y4).norm() / scale;
                err_sq += e * e;
            }
            let err = (err_sq / dim as f64).sqrt();

            if err <= 1.0 && accept(&y_new) {
                t += h;
                std::mem::swap(y, &mut y_new);
                // FSAL property of Dormand–Prince
                let (first, rest) = k.split_at_mut(1);
                first[0].copy_from_slice(&rest[5]);
                let factor = if err > 0.0 {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                } else {
                    5.0
                };
                h *= factor;
            } else if err > 1.0 {
                h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            } else {
                // physics veto
                h *= 0.5;
            }
            if h < 1e-14 {
                return Err(Error::Numeric(
                    "integrator step size collapsed below 1e-14".into(),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        // y' = −y, y(0) = 1 → e^{−t}
        let rk = AdaptiveRk::default();
        let mut y = vec![Complex64::ONE];
        rk.integrate(
            |_, y, dy| dy[0] = -y[0],
            0.0,
            3.0,
            &mut y,
            |_| true,
        )
        .unwrap();
        assert!((y[0].re - (-3.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn oscillator_stays_on_circle() {
        // y' = iωy: |y| conserved, phase ωt
        let rk = AdaptiveRk::default();
        let omega = 7.0;
        let mut y = vec![Complex64::ONE];
        rk.integrate(
            |_, y, dy| dy[0] = Complex64::new(0.0, omega) * y[0],
            0.0,
            2.0,
            &mut y,
            |_| true,
        )
        .unwrap();
        assert!((y[0].norm() - 1.0).abs() < 1e-8);
        assert!((y[0] - Complex64::from_polar(1.0, 14.0)).norm() < 1e-7);
    }

    #[test]
    fn rejects_backward_span() {
        let rk = AdaptiveRk::default();
        let mut y = vec![Complex64::ONE];
        assert!(rk
            .integrate(|_, _, dy| dy[0] = Complex64::ZERO, 1.0, 0.0, &mut y, |_| true)
            .is_err());
    }
}

//! Collective spin operators S_x, S_y, S_z, S_± on the Dicke ladder, with
//! structure-aware storage so the N = 1500 regimes never touch an O(N³)
//! matrix product.
//!
//! Ladder elements are sqrt(S(S+1) − m(m±1)) with the radicand evaluated in
//! exact integer arithmetic on doubled projections:
//! S(S+1) − m(m+1) = (2S(2S+2) − 2m(2m+2)) / 4.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::ensemble::SpinEnsemble;
use crate::error::{Error, Result};
use crate::state::{css_state, CssParams, DickeVector};

/// Storage class of a collective operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorStructure {
    Diagonal,
    /// Tridiagonal with zero main diagonal allowed (S_±, S_x, S_y).
    Banded,
    Dense,
}

#[derive(Debug, Clone)]
enum Storage {
    /// Entries along the diagonal, index k ↔ m = S − k.
    Diagonal(Vec<Complex64>),
    /// Tridiagonal: `upper[k]` couples index k ← k+1, `lower[k]` couples
    /// index k+1 ← k, `diag[k]` on the main diagonal.
    Banded {
        diag: Vec<Complex64>,
        upper: Vec<Complex64>,
        lower: Vec<Complex64>,
    },
    Dense(DMatrix<Complex64>),
}

/// A collective operator on the (N+1)-dimensional Dicke space.
#[derive(Debug, Clone)]
pub struct CollectiveOperator {
    ensemble: SpinEnsemble,
    storage: Storage,
}

/// Exact ladder radicand: S(S+1) − m(m+1), both spins passed doubled.
fn ladder_radicand(two_s: i64, two_m: i64) -> i64 {
    (two_s * (two_s + 2) - two_m * (two_m + 2)) / 4
}

/// sqrt(S(S+1) − m(m+1)) for the transition |S,m⟩ → |S,m+1⟩.
pub fn raising_element(two_s: i64, two_m: i64) -> f64 {
    (ladder_radicand(two_s, two_m) as f64).sqrt()
}

impl CollectiveOperator {
    pub fn ensemble(&self) -> SpinEnsemble {
        self.ensemble
    }

    pub fn dim(&self) -> usize {
        self.ensemble.dim()
    }

    pub fn structure(&self) -> OperatorStructure {
        match &self.storage {
            Storage::Diagonal(_) => OperatorStructure::Diagonal,
            Storage::Banded { .. } => OperatorStructure::Banded,
            Storage::Dense(_) => OperatorStructure::Dense,
        }
    }

    pub fn from_dense(ensemble: SpinEnsemble, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != ensemble.dim() || matrix.ncols() != ensemble.dim() {
            return Err(Error::DimensionMismatch(matrix.nrows(), ensemble.dim()));
        }
        Ok(Self {
            ensemble,
            storage: Storage::Dense(matrix),
        })
    }

    pub fn from_diagonal(ensemble: SpinEnsemble, diag: Vec<Complex64>) -> Result<Self> {
        if diag.len() != ensemble.dim() {
            return Err(Error::DimensionMismatch(diag.len(), ensemble.dim()));
        }
        Ok(Self {
            ensemble,
            storage: Storage::Diagonal(diag),
        })
    }

    /// S_z: diagonal entries m = S − k.
    pub fn sz(ensemble: SpinEnsemble) -> Self {
        let diag = (0..ensemble.dim())
            .map(|k| Complex64::new(ensemble.m(k), 0.0))
            .collect();
        Self {
            ensemble,
            storage: Storage::Diagonal(diag),
        }
    }

    /// S_+: |S,m⟩ → |S,m+1⟩, i.e. index k+1 → k.
    pub fn splus(ensemble: SpinEnsemble) -> Self {
        let dim = ensemble.dim();
        let two_s = ensemble.two_s();
        let upper = (0..dim - 1)
            .map(|k| Complex64::new(raising_element(two_s, ensemble.two_m(k + 1)), 0.0))
            .collect();
        Self {
            ensemble,
            storage: Storage::Banded {
                diag: vec![Complex64::ZERO; dim],
                upper,
                lower: vec![Complex64::ZERO; dim - 1],
            },
        }
    }

    /// S_−: |S,m⟩ → |S,m−1⟩, i.e. index k → k+1.
    pub fn sminus(ensemble: SpinEnsemble) -> Self {
        let dim = ensemble.dim();
        let two_s = ensemble.two_s();
        let lower = (0..dim - 1)
            .map(|k| Complex64::new(raising_element(two_s, ensemble.two_m(k + 1)), 0.0))
            .collect();
        Self {
            ensemble,
            storage: Storage::Banded {
                diag: vec![Complex64::ZERO; dim],
                upper: vec![Complex64::ZERO; dim - 1],
                lower,
            },
        }
    }

    /// S_x = (S_+ + S_−)/2.
    pub fn sx(ensemble: SpinEnsemble) -> Self {
        let dim = ensemble.dim();
        let two_s = ensemble.two_s();
        let c: Vec<Complex64> = (0..dim - 1)
            .map(|k| Complex64::new(0.5 * raising_element(two_s, ensemble.two_m(k + 1)), 0.0))
            .collect();
        Self {
            ensemble,
            storage: Storage::Banded {
                diag: vec![Complex64::ZERO; dim],
                upper: c.clone(),
                lower: c,
            },
        }
    }

    /// S_y = (S_+ − S_−)/(2i).
    pub fn sy(ensemble: SpinEnsemble) -> Self {
        let dim = ensemble.dim();
        let two_s = ensemble.two_s();
        let upper = (0..dim - 1)
            .map(|k| Complex64::new(0.0, -0.5 * raising_element(two_s, ensemble.two_m(k + 1))))
            .collect();
        let lower = (0..dim - 1)
            .map(|k| Complex64::new(0.0, 0.5 * raising_element(two_s, ensemble.two_m(k + 1))))
            .collect();
        Self {
            ensemble,
            storage: Storage::Banded {
                diag: vec![Complex64::ZERO; dim],
                upper,
                lower,
            },
        }
    }

    /// Apply to raw amplitudes, structure-aware (O(N) except dense).
    pub fn apply_slice(&self, input: &[Complex64], out: &mut [Complex64]) {
        match &self.storage {
            Storage::Diagonal(d) => {
                for ((o, i), dd) in out.iter_mut().zip(input).zip(d) {
                    *o = dd * i;
                }
            }
            Storage::Banded { diag, upper, lower } => {
                let n = input.len();
                for k in 0..n {
                    let mut acc = diag[k] * input[k];
                    if k + 1 < n {
                        acc += upper[k] * input[k + 1];
                    }
                    if k > 0 {
                        acc += lower[k - 1] * input[k - 1];
                    }
                    out[k] = acc;
                }
            }
            Storage::Dense(m) => {
                for (k, o) in out.iter_mut().enumerate() {
                    let mut acc = Complex64::ZERO;
                    for (j, i) in input.iter().enumerate() {
                        acc += m[(k, j)] * i;
                    }
                    *o = acc;
                }
            }
        }
    }

    pub fn apply(&self, state: &DickeVector) -> Result<DickeVector> {
        if state.ensemble() != self.ensemble {
            return Err(Error::DimensionMismatch(state.ensemble().dim(), self.dim()));
        }
        let mut out = vec![Complex64::ZERO; self.dim()];
        self.apply_slice(state.amplitudes(), &mut out);
        DickeVector::from_amplitudes(self.ensemble, out)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        match &self.storage {
            Storage::Diagonal(d) => {
                DMatrix::from_fn(dim, dim, |i, j| if i == j { d[i] } else { Complex64::ZERO })
            }
            Storage::Banded { diag, upper, lower } => DMatrix::from_fn(dim, dim, |i, j| {
                if i == j {
                    diag[i]
                } else if j == i + 1 {
                    upper[i]
                } else if i == j + 1 {
                    lower[j]
                } else {
                    Complex64::ZERO
                }
            }),
            Storage::Dense(m) => m.clone(),
        }
    }

    /// Max |A − A†| entry.
    pub fn hermiticity_error(&self) -> f64 {
        match &self.storage {
            Storage::Diagonal(d) => d.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
            Storage::Banded { diag, upper, lower } => {
                let d = diag.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
                let b = upper
                    .iter()
                    .zip(lower)
                    .map(|(u, l)| (u - l.conj()).norm())
                    .fold(0.0, f64::max);
                d.max(b)
            }
            Storage::Dense(m) => {
                let mut worst = 0.0f64;
                for i in 0..m.nrows() {
                    for j in i..m.ncols() {
                        worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
                    }
                }
                worst
            }
        }
    }
}

/// The full operator set for one ensemble.
pub struct CollectiveOps {
    pub sx: CollectiveOperator,
    pub sy: CollectiveOperator,
    pub sz: CollectiveOperator,
    pub splus: CollectiveOperator,
    pub sminus: CollectiveOperator,
}

/// Build S_x, S_y, S_z, S_± for the ensemble.
pub fn build_collective_ops(ensemble: SpinEnsemble) -> CollectiveOps {
    CollectiveOps {
        sx: CollectiveOperator::sx(ensemble),
        sy: CollectiveOperator::sy(ensemble),
        sz: CollectiveOperator::sz(ensemble),
        splus: CollectiveOperator::splus(ensemble),
        sminus: CollectiveOperator::sminus(ensemble),
    }
}

/// ⟨ψ|O|ψ⟩. For Hermitian O the imaginary part is rounding noise (≤1e−12).
pub fn expectation(state: &DickeVector, op: &CollectiveOperator) -> Result<Complex64> {
    let applied = op.apply(state)?;
    state.overlap(&applied)
}

/// ⟨a|O|b⟩ for distinct bra and ket.
pub fn matrix_element(
    bra: &DickeVector,
    op: &CollectiveOperator,
    ket: &DickeVector,
) -> Result<Complex64> {
    let applied = op.apply(ket)?;
    bra.overlap(&applied)
}

/// One oracle/closed-form pair for a cross matrix element.
#[derive(Debug, Clone, Copy)]
pub struct CrossElement {
    /// Exact matrix arithmetic (ground truth).
    pub oracle: Complex64,
    /// The printed closed form.
    pub closed_form: Complex64,
    /// Raised when the printed form deviates from the oracle by more than
    /// 1e-6 relative to the operator scale.
    pub discrepant: bool,
}

/// Cross matrix elements ⟨π/2,φ1|O|π/2,φ2⟩ for O ∈ {S_φ, S_+², S_−², S_+S_−},
/// computed by exact matrix arithmetic, alongside the printed closed forms.
pub struct CssCrossElements {
    total_spin: f64,
    phi1: f64,
    delta_phi: f64,
    /// ⟨φ1|S_+|φ2⟩ and ⟨φ1|S_−|φ2⟩ from the oracle, from which S_φ follows.
    sp_cross: Complex64,
    sm_cross: Complex64,
    pub m_sp2: CrossElement,
    pub m_sm2: CrossElement,
    pub m_pm: CrossElement,
}

impl CssCrossElements {
    /// Oracle ⟨π/2,φ1|S_φ|π/2,φ2⟩ with S_φ = S_x cos φ + S_y sin φ.
    pub fn m_sphi(&self, phi: f64) -> Complex64 {
        let em = Complex64::from_polar(1.0, -phi);
        0.5 * (em * self.sp_cross + em.conj() * self.sm_cross)
    }

    /// Printed closed form for the same element (Eq. C1 shape).
    pub fn m_sphi_closed_form(&self, phi: f64) -> Complex64 {
        let s = self.total_spin;
        let half = self.delta_phi / 2.0;
        let envelope = half.cos().abs().powf(2.0 * s - 1.0)
            * if half.cos() < 0.0 && (self.total_spin * 2.0 - 1.0) as i64 % 2 == 1 {
                -1.0
            } else {
                1.0
            };
        Complex64::from_polar(1.0, s * self.delta_phi)
            * (s / 2.0)
            * envelope
            * (half + self.phi1 - phi).cos()
    }

    /// Whether the S_φ closed form disagrees with the oracle (checked at
    /// φ = φ1, the direction with the largest signal).
    pub fn sphi_discrepant(&self) -> bool {
        let s = self.total_spin;
        let oracle = self.m_sphi(self.phi1);
        let closed = self.m_sphi_closed_form(self.phi1);
        (oracle - closed).norm() > 1e-6 * s.max(oracle.norm())
    }
}

/// Exact cross moments between two equatorial coherent states, with the
/// printed closed forms carried along for comparison.
pub fn css_cross_elements(ensemble: SpinEnsemble, phi1: f64, phi2: f64) -> CssCrossElements {
    let bra = css_state(ensemble, &CssParams::equatorial(phi1));
    let ket = css_state(ensemble, &CssParams::equatorial(phi2));
    let sp = CollectiveOperator::splus(ensemble);
    let sm = CollectiveOperator::sminus(ensemble);

    let sp_ket = sp.apply(&ket).unwrap();
    let sm_ket = sm.apply(&ket).unwrap();
    let sp2_ket = sp.apply(&sp_ket).unwrap();
    let sm2_ket = sm.apply(&sm_ket).unwrap();
    let spsm_ket = sp.apply(&sm_ket).unwrap();

    let sp_cross = bra.overlap(&sp_ket).unwrap();
    let sm_cross = bra.overlap(&sm_ket).unwrap();
    let sp2 = bra.overlap(&sp2_ket).unwrap();
    let sm2 = bra.overlap(&sm2_ket).unwrap();
    let spsm = bra.overlap(&spsm_ket).unwrap();

    let s = ensemble.total_spin();
    let dphi = phi2 - phi1;
    let half = dphi / 2.0;
    let env = |power: f64| -> f64 {
        // cos^(power) with sign for odd powers of a negative base
        let c = half.cos();
        if c >= 0.0 {
            c.powf(power)
        } else {
            let p = power.round() as i64;
            c.abs().powf(power) * if p % 2 == 0 { 1.0 } else { -1.0 }
        }
    };

    // Printed forms, Eqs. C3–C5.
    let c3 = Complex64::from_polar(1.0, dphi * (s + 1.0) + 2.0 * phi1)
        * (0.25 * s * (2.0 * s - 1.0))
        * env(2.0 * s - 2.0);
    let c4 = Complex64::from_polar(1.0, dphi * (s - 1.0) - 2.0 * phi1)
        * (0.25 * s * (2.0 * s - 1.0))
        * env(2.0 * s - 2.0);
    let c5 = Complex64::from_polar(1.0, s * dphi)
        * env(2.0 * s - 2.0)
        * (Complex64::from_polar(0.5 * s, -half) * half.cos()
            + Complex64::new(0.25 * s * (2.0 * s - 1.0), 0.0));

    let scale = s * s;
    let flag = |oracle: Complex64, closed: Complex64| -> bool {
        (oracle - closed).norm() > 1e-6 * scale.max(oracle.norm())
    };

    CssCrossElements {
        total_spin: s,
        phi1,
        delta_phi: dphi,
        sp_cross,
        sm_cross,
        m_sp2: CrossElement {
            oracle: sp2,
            closed_form: c3,
            discrepant: flag(sp2, c3),
        },
        m_sm2: CrossElement {
            oracle: sm2,
            closed_form: c4,
            discrepant: flag(sm2, c4),
        },
        m_pm: CrossElement {
            oracle: spsm,
            closed_form: c5,
            discrepant: flag(spsm, c5),
        },
    }
}

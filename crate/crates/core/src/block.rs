//! Permutationally invariant density matrices as a direct sum of spin-j
//! blocks with multiplicities.
//!
//! ρ = ⊕_j B_j ⊗ I_{d_j}: one (2j+1)×(2j+1) matrix per total-spin sector j,
//! j running from S = N/2 down to 0 or 1/2, with the irrep multiplicity
//! d_j = C(N, N/2−j) − C(N, N/2−j−1). The physical trace is Σ_j d_j·tr B_j.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::raising_element;
use crate::state::{DickeVector, ln_binomial};

/// Multiplicity of the spin-j irrep in (1/2)^⊗N, with 2j passed doubled.
pub fn degeneracy(n_spins: usize, two_j: i64) -> f64 {
    let n = n_spins as i64;
    debug_assert!(two_j >= 0 && two_j <= n && (n - two_j) % 2 == 0);
    let k = ((n - two_j) / 2) as usize;
    if n <= 100 {
        // exact in u128 up to well past N = 100
        let first = binomial_u128(n_spins, k) as f64;
        let second = if k >= 1 {
            binomial_u128(n_spins, k - 1) as f64
        } else {
            0.0
        };
        first - second
    } else {
        let first = ln_binomial(n_spins, k).exp();
        let second = if k >= 1 {
            ln_binomial(n_spins, k - 1).exp()
        } else {
            0.0
        };
        first - second
    }
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Spin operators in the (2j+1)-dimensional spin-j representation, index
/// k ↔ m = j − k (same descending convention as the Dicke basis).
pub struct BlockOps {
    pub dim: usize,
    /// m values, descending.
    pub m: Vec<f64>,
    /// S_+ band: `raise[k]` couples index k ← k+1 (i.e. ⟨m+1|S_+|m⟩).
    pub raise: Vec<f64>,
}

impl BlockOps {
    pub fn new(two_j: i64) -> Self {
        let dim = (two_j + 1) as usize;
        let m = (0..dim).map(|k| (two_j - 2 * k as i64) as f64 / 2.0).collect();
        let raise = (0..dim.saturating_sub(1))
            .map(|k| raising_element(two_j, two_j - 2 * (k as i64 + 1)))
            .collect();
        Self { dim, m, raise }
    }

    pub fn sx_dense(&self) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (k, &c) in self.raise.iter().enumerate() {
            out[(k, k + 1)] = Complex64::new(0.5 * c, 0.0);
            out[(k + 1, k)] = Complex64::new(0.5 * c, 0.0);
        }
        out
    }

    pub fn sy_dense(&self) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (k, &c) in self.raise.iter().enumerate() {
            out[(k, k + 1)] = Complex64::new(0.0, -0.5 * c);
            out[(k + 1, k)] = Complex64::new(0.0, 0.5 * c);
        }
        out
    }

    pub fn sz_dense(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| {
            if i == j {
                Complex64::new(self.m[i], 0.0)
            } else {
                Complex64::ZERO
            }
        })
    }
}

/// Permutationally invariant density matrix in block form.
#[derive(Debug, Clone)]
pub struct DickeBlockState {
    n_spins: usize,
    /// blocks[idx] is the spin-j sector with 2j = N − 2·idx.
    blocks: Vec<DMatrix<Complex64>>,
}

impl DickeBlockState {
    /// Number of j sectors: floor(N/2) + 1.
    pub fn sector_count(n_spins: usize) -> usize {
        n_spins / 2 + 1
    }

    /// All-zero state (useful as an integrator workspace).
    pub fn zeros(n_spins: usize) -> Self {
        let blocks = (0..Self::sector_count(n_spins))
            .map(|idx| {
                let dim = n_spins + 1 - 2 * idx;
                DMatrix::zeros(dim, dim)
            })
            .collect();
        Self { n_spins, blocks }
    }

    /// Embed a pure Dicke state into the maximal-j block.
    pub fn from_pure(state: &DickeVector) -> Self {
        let n = state.ensemble().n_spins();
        let mut out = Self::zeros(n);
        let dim = n + 1;
        for i in 0..dim {
            for j in 0..dim {
                out.blocks[0][(i, j)] = state.amplitudes()[i] * state.amplitudes()[j].conj();
            }
        }
        out
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn blocks(&self) -> &[DMatrix<Complex64>] {
        &self.blocks
    }

    pub fn blocks_mut(&mut self) -> &mut [DMatrix<Complex64>] {
        &mut self.blocks
    }

    pub fn two_j(&self, idx: usize) -> i64 {
        self.n_spins as i64 - 2 * idx as i64
    }

    pub fn degeneracy_of(&self, idx: usize) -> f64 {
        degeneracy(self.n_spins, self.two_j(idx))
    }

    /// Physical trace Σ_j d_j tr B_j.
    pub fn trace(&self) -> f64 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(idx, b)| {
                let d = self.degeneracy_of(idx);
                d * (0..b.nrows()).map(|i| b[(i, i)].re).sum::<f64>()
            })
            .sum()
    }

    /// Max Hermiticity deviation over all blocks.
    pub fn hermiticity_error(&self) -> f64 {
        self.blocks
            .iter()
            .map(crate::linalg::hermiticity_error)
            .fold(0.0, f64::max)
    }

    /// Smallest eigenvalue across all blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let (vals, _) = crate::linalg::eigh(b);
                vals.first().copied().unwrap_or(0.0)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// ⟨S_z⟩ = Σ_j d_j tr(B_j S_z^{(j)}).
    pub fn mean_sz(&self) -> f64 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(idx, b)| {
                let d = self.degeneracy_of(idx);
                let ops = BlockOps::new(self.two_j(idx));
                d * (0..b.nrows()).map(|i| b[(i, i)].re * ops.m[i]).sum::<f64>()
            })
            .sum()
    }

    /// QFI via the eigenbasis sum, block by block (collective generators do
    /// not couple different j sectors or multiplicity copies).
    pub fn qfi(&self, psd_floor: f64) -> Result<crate::qfi::QfiReport> {
        let trace = self.trace();
        if (trace - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidTrace(trace));
        }
        let mut m_total = [[0.0f64; 3]; 3];
        for (idx, block) in self.blocks.iter().enumerate() {
            let d = self.degeneracy_of(idx);
            let ops = BlockOps::new(self.two_j(idx));
            let generators = [ops.sx_dense(), ops.sy_dense(), ops.sz_dense()];
            let (values, vectors) = crate::linalg::eigh(block);
            if let Some(&min) = values.first() {
                if min < -psd_floor {
                    return Err(Error::NotPositiveSemidefinite(min));
                }
            }
            let values: Vec<f64> = values.iter().map(|&v| v.max(0.0)).collect();
            let m = crate::qfi::qfi_matrix_from_eigedecomp(&values, &vectors, &generators, trace);
            for i in 0..3 {
                for j in 0..3 {
                    m_total[i][j] += d * m[i][j];
                }
            }
        }
        let (lambda, direction) = crate::linalg::sym3_max_eigenpair(m_total);
        Ok(crate::qfi::QfiReport {
            qfi: lambda,
            direction,
            phase_bound: if lambda > 0.0 {
                1.0 / lambda.sqrt()
            } else {
                f64::INFINITY
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::SpinEnsemble;
    use crate::state::{css_state, CssParams};

    #[test]
    fn degeneracies_sum_to_hilbert_dimension() {
        // Σ_j d_j (2j+1) = 2^N
        for n in [1usize, 2, 5, 10, 20] {
            let total: f64 = (0..DickeBlockState::sector_count(n))
                .map(|idx| {
                    let two_j = n as i64 - 2 * idx as i64;
                    degeneracy(n, two_j) * (two_j + 1) as f64
                })
                .sum();
            assert!(
                (total - (2f64).powi(n as i32)).abs() < 1e-6,
                "dimension sum failed at N={n}: {total}"
            );
        }
    }

    #[test]
    fn known_degeneracies() {
        assert_eq!(degeneracy(2, 2), 1.0); // triplet
        assert_eq!(degeneracy(2, 0), 1.0); // singlet
        assert_eq!(degeneracy(4, 4), 1.0);
        assert_eq!(degeneracy(4, 2), 3.0);
        assert_eq!(degeneracy(4, 0), 2.0);
    }

    #[test]
    fn pure_embedding_has_unit_trace() {
        let ens = SpinEnsemble::new(7).unwrap();
        let state = css_state(ens, &CssParams::equatorial(0.2));
        let block = DickeBlockState::from_pure(&state);
        assert!((block.trace() - 1.0).abs() < 1e-12);
        assert!(block.hermiticity_error() < 1e-14);
    }

    #[test]
    fn block_qfi_matches_pure_qfi() {
        let ens = SpinEnsemble::new(9).unwrap();
        let css = css_state(ens, &CssParams::equatorial(0.0));
        let state = crate::evolve::evolve_zdiag(
            &css,
            &crate::evolve::ZDiagonalHamiltonian::cubic(),
            0.21,
        );
        let block = DickeBlockState::from_pure(&state);
        let via_block = block.qfi(1e-10).unwrap().qfi;
        let via_pure = crate::qfi::qfi_pure(&state).qfi;
        assert!(
            (via_block - via_pure).abs() < 1e-8,
            "block {via_block} vs pure {via_pure}"
        );
    }

    #[test]
    fn mean_sz_of_polar_state() {
        let ens = SpinEnsemble::new(6).unwrap();
        let north = css_state(ens, &CssParams::new(0.0, 0.0).unwrap());
        let block = DickeBlockState::from_pure(&north);
        assert!((block.mean_sz() - 3.0).abs() < 1e-12);
    }
}

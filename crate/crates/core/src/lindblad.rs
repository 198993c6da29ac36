//! Damped collective-spin dynamics:
//! ρ̇ = −i[H,ρ] + Γ𝒟[S_z]ρ + γ Σ_k 𝒟[σ₋ᵏ]ρ, with 𝒟[O]ρ = 2OρO† − {O†O,ρ}
//! (note the factor 2 — decay-rate statements assume this convention).
//!
//! Two integrators share the equation: a permutationally invariant block
//! solver scaling like Σ_j (2j+1)² and a brute-force 2^N solver used purely
//! as an oracle. Collective terms act within each spin-j block; the local
//! decay channel couples adjacent j sectors with coefficients
//! 2γ·K(j'→j)·C(m)·C(m'), where C are ⟨j',m+1;1,−1|j,m⟩ Clebsch–Gordan
//! factors and
//!   K(j'→j'+1) = (N/2−j')·d_{j'}/d_{j'+1},
//!   K(j'→j')   = N/2+1,
//!   K(j'→j'−1) = (N/2+j'+1)·d_{j'}/d_{j'−1};
//! the loss side is the collective −γ(N+m+m'). The sum rule
//! Σ_j d_j K(j'→j) C² = d_{j'}(N/2+μ) guarantees trace preservation.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::block::{degeneracy, BlockOps, DickeBlockState};
use crate::ensemble::SpinEnsemble;
use crate::error::{Error, Result};
use crate::evolve::{Axis, ZDiagonalHamiltonian};
use crate::ode::AdaptiveRk;
use crate::qfi::{qfi_matrix_from_eigedecomp, QfiReport};
use crate::state::DickeVector;

/// Single-spin decay rate γ and collective dephasing rate Γ, in units of χ.
#[derive(Debug, Clone, Copy)]
pub struct LindbladParams {
    pub gamma: f64,
    pub gamma_deph: f64,
}

impl LindbladParams {
    pub fn new(gamma: f64, gamma_deph: f64) -> Result<Self> {
        if gamma < 0.0 || gamma_deph < 0.0 {
            return Err(Error::InvalidParameter(
                "decay rates must be ≥ 0".into(),
            ));
        }
        Ok(Self { gamma, gamma_deph })
    }

    pub fn closed() -> Self {
        Self {
            gamma: 0.0,
            gamma_deph: 0.0,
        }
    }
}

/// A permutation-invariant Hamiltonian: either diagonal in S_z or a
/// polynomial in the collective components (each term is a coefficient times
/// an ordered product of generators).
#[derive(Debug, Clone)]
pub enum PiHamiltonian {
    ZDiagonal(ZDiagonalHamiltonian),
    Polynomial(Vec<(f64, Vec<Axis>)>),
}

impl PiHamiltonian {
    /// χ·S_z³.
    pub fn cubic(chi: f64) -> Self {
        PiHamiltonian::ZDiagonal(ZDiagonalHamiltonian {
            c1: 0.0,
            c2: 0.0,
            c3: chi,
        })
    }

    /// χ·S_z².
    pub fn oat(chi: f64) -> Self {
        PiHamiltonian::ZDiagonal(ZDiagonalHamiltonian {
            c1: 0.0,
            c2: chi,
            c3: 0.0,
        })
    }

    /// χ(ε·S_z³ + S_y²).
    pub fn cqa(chi: f64, epsilon: f64) -> Self {
        PiHamiltonian::Polynomial(vec![
            (chi * epsilon, vec![Axis::Z, Axis::Z, Axis::Z]),
            (chi, vec![Axis::Y, Axis::Y]),
        ])
    }

    fn block_form(&self, two_j: i64) -> BlockHamiltonian {
        match self {
            PiHamiltonian::ZDiagonal(h) => {
                let dim = (two_j + 1) as usize;
                let eps = (0..dim)
                    .map(|k| h.phase(two_j - 2 * k as i64))
                    .collect();
                BlockHamiltonian::Diagonal(eps)
            }
            PiHamiltonian::Polynomial(terms) => {
                let ops = BlockOps::new(two_j);
                let dim = ops.dim;
                let mut h = DMatrix::<Complex64>::zeros(dim, dim);
                let gens = [ops.sx_dense(), ops.sy_dense(), ops.sz_dense()];
                for (coeff, word) in terms {
                    let mut term = DMatrix::<Complex64>::identity(dim, dim);
                    for axis in word {
                        let g = match axis {
                            Axis::X => &gens[0],
                            Axis::Y => &gens[1],
                            Axis::Z => &gens[2],
                        };
                        term = term * g;
                    }
                    h += term * Complex64::new(*coeff, 0.0);
                }
                BlockHamiltonian::Dense(h)
            }
        }
    }
}

enum BlockHamiltonian {
    Diagonal(Vec<f64>),
    Dense(DMatrix<Complex64>),
}

/// Precomputed per-sector data for the PI right-hand side.
struct PiRhs {
    n_spins: usize,
    gamma: f64,
    gamma_deph: f64,
    /// Per block: dimension and offset into the flat state vector.
    dims: Vec<usize>,
    offsets: Vec<usize>,
    /// m values per block, descending.
    m_values: Vec<Vec<f64>>,
    hams: Vec<BlockHamiltonian>,
    /// sqrt(K)·C factors: same-sector (j→j), from above (j+1→j), from
    /// below (j−1→j); indexed by target m-index.
    gain_same: Vec<Vec<f64>>,
    gain_above: Vec<Vec<f64>>,
    gain_below: Vec<Vec<f64>>,
}

impl PiRhs {
    fn new(n_spins: usize, h: &PiHamiltonian, params: &LindbladParams) -> Self {
        let sectors = DickeBlockState::sector_count(n_spins);
        let half_n = n_spins as f64 / 2.0;
        let mut dims = Vec::with_capacity(sectors);
        let mut offsets = Vec::with_capacity(sectors);
        let mut m_values = Vec::with_capacity(sectors);
        let mut hams = Vec::with_capacity(sectors);
        let mut gain_same = Vec::with_capacity(sectors);
        let mut gain_above = Vec::with_capacity(sectors);
        let mut gain_below = Vec::with_capacity(sectors);

        let mut offset = 0;
        for idx in 0..sectors {
            let two_j = n_spins as i64 - 2 * idx as i64;
            let j = two_j as f64 / 2.0;
            let dim = (two_j + 1) as usize;
            dims.push(dim);
            offsets.push(offset);
            offset += dim * dim;
            let ms: Vec<f64> = (0..dim).map(|k| (two_j - 2 * k as i64) as f64 / 2.0).collect();
            hams.push(h.block_form(two_j));

            let d_j = degeneracy(n_spins, two_j);

            // j → j (source projection m+1 must exist in the same block)
            let same: Vec<f64> = ms
                .iter()
                .map(|&m| {
                    if m + 1.0 > j || two_j == 0 {
                        0.0
                    } else {
                        let k0 = half_n + 1.0;
                        let c2 = (j + m + 1.0) * (j - m) / (2.0 * j * (j + 1.0));
                        (k0 * c2).max(0.0).sqrt()
                    }
                })
                .collect();

            // j+1 → j (source is the previous sector)
            let above: Vec<f64> = if idx == 0 {
                vec![0.0; dim]
            } else {
                let jp = j + 1.0;
                let d_src = degeneracy(n_spins, two_j + 2);
                let kf = (half_n + jp + 1.0) * d_src / d_j;
                ms.iter()
                    .map(|&m| {
                        let c2 = (jp + m + 1.0) * (jp + m) / (2.0 * jp * (2.0 * jp + 1.0));
                        (kf * c2).max(0.0).sqrt()
                    })
                    .collect()
            };

            // j−1 → j (source is the next sector)
            let below: Vec<f64> = if idx + 1 >= sectors {
                vec![0.0; dim]
            } else {
                let jm = j - 1.0;
                let d_src = degeneracy(n_spins, two_j - 2);
                let kf = (half_n - jm) * d_src / d_j;
                ms.iter()
                    .map(|&m| {
                        if m + 1.0 > jm || jm < 0.0 {
                            0.0
                        } else {
                            let c2 = (j - m - 1.0) * (j - m)
                                / ((2.0 * j - 1.0) * 2.0 * j);
                            (kf * c2).max(0.0).sqrt()
                        }
                    })
                    .collect()
            };

            m_values.push(ms);
            gain_same.push(same);
            gain_above.push(above);
            gain_below.push(below);
        }

        Self {
            n_spins,
            gamma: params.gamma,
            gamma_deph: params.gamma_deph,
            dims,
            offsets,
            m_values,
            hams,
            gain_same,
            gain_above,
            gain_below,
        }
    }

    fn state_len(&self) -> usize {
        self.offsets.last().unwrap() + self.dims.last().unwrap().pow(2)
    }

    fn flatten(&self, state: &DickeBlockState, out: &mut Vec<Complex64>) {
        out.clear();
        for block in state.blocks() {
            out.extend(block.iter().copied());
        }
    }

    fn unflatten(&self, flat: &[Complex64]) -> DickeBlockState {
        let mut state = DickeBlockState::zeros(self.n_spins);
        for (idx, block) in state.blocks_mut().iter_mut().enumerate() {
            let dim = self.dims[idx];
            let off = self.offsets[idx];
            block.copy_from_slice(&flat[off..off + dim * dim]);
        }
        state
    }

    fn trace_of_flat(&self, flat: &[Complex64]) -> f64 {
        let mut acc = 0.0;
        for idx in 0..self.dims.len() {
            let dim = self.dims[idx];
            let off = self.offsets[idx];
            let two_j = self.n_spins as i64 - 2 * idx as i64;
            let d = degeneracy(self.n_spins, two_j);
            for k in 0..dim {
                acc += d * flat[off + k * dim + k].re;
            }
        }
        acc
    }

    /// Column-major block entry accessor consistent with nalgebra's layout.
    #[inline]
    fn entry(flat: &[Complex64], off: usize, dim: usize, row: usize, col: usize) -> Complex64 {
        flat[off + col * dim + row]
    }

    fn rhs(&self, y: &[Complex64], dy: &mut [Complex64]) {
        let sectors = self.dims.len();
        dy.fill(Complex64::ZERO);
        let i_unit = Complex64::new(0.0, 1.0);
        for idx in 0..sectors {
            let dim = self.dims[idx];
            let off = self.offsets[idx];
            let ms = &self.m_values[idx];

            // Unitary part
            match &self.hams[idx] {
                BlockHamiltonian::Diagonal(eps) => {
                    for col in 0..dim {
                        for row in 0..dim {
                            let b = Self::entry(y, off, dim, row, col);
                            dy[off + col * dim + row] -=
                                i_unit * (eps[row] - eps[col]) * b;
                        }
                    }
                }
                BlockHamiltonian::Dense(h) => {
                    // −i(HB − BH)
                    for col in 0..dim {
                        for row in 0..dim {
                            let mut acc = Complex64::ZERO;
                            for s in 0..dim {
                                acc += h[(row, s)] * Self::entry(y, off, dim, s, col)
                                    - Self::entry(y, off, dim, row, s) * h[(s, col)];
                            }
                            dy[off + col * dim + row] -= i_unit * acc;
                        }
                    }
                }
            }

            // Collective dephasing: −Γ(m−m')²
            if self.gamma_deph != 0.0 {
                for col in 0..dim {
                    for row in 0..dim {
                        let dm = ms[row] - ms[col];
                        dy[off + col * dim + row] -= self.gamma_deph
                            * dm
                            * dm
                            * Self::entry(y, off, dim, row, col);
                    }
                }
            }

            // Local decay
            if self.gamma != 0.0 {
                let n = self.n_spins as f64;
                // loss −γ(N + m + m')
                for col in 0..dim {
                    for row in 0..dim {
                        dy[off + col * dim + row] -= self.gamma
                            * (n + ms[row] + ms[col])
                            * Self::entry(y, off, dim, row, col);
                    }
                }
                // gain from the same sector: source index (row−1, col−1)
                let same = &self.gain_same[idx];
                for col in 1..dim {
                    for row in 1..dim {
                        let g = 2.0 * self.gamma * same[row] * same[col];
                        if g != 0.0 {
                            dy[off + col * dim + row] +=
                                g * Self::entry(y, off, dim, row - 1, col - 1);
                        }
                    }
                }
                // gain from j+1 (previous sector): source index = target index
                if idx > 0 {
                    let above = &self.gain_above[idx];
                    let src_dim = self.dims[idx - 1];
                    let src_off = self.offsets[idx - 1];
                    for col in 0..dim {
                        for row in 0..dim {
                            let g = 2.0 * self.gamma * above[row] * above[col];
                            if g != 0.0 {
                                dy[off + col * dim + row] +=
                                    g * Self::entry(y, src_off, src_dim, row, col);
                            }
                        }
                    }
                }
                // gain from j−1 (next sector): source index = target index − 2
                if idx + 1 < sectors {
                    let below = &self.gain_below[idx];
                    let src_dim = self.dims[idx + 1];
                    let src_off = self.offsets[idx + 1];
                    for col in 2..dim {
                        for row in 2..dim {
                            let g = 2.0 * self.gamma * below[row] * below[col];
                            if g != 0.0 {
                                dy[off + col * dim + row] +=
                                    g * Self::entry(y, src_off, src_dim, row - 2, col - 2);
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Integrate the master equation in the permutationally invariant block
/// representation, reporting the state at each grid time.
///
/// `t_grid` must be strictly increasing and non-negative; integration starts
/// at t = 0 from `initial`.
pub fn lindblad_evolve_pi(
    initial: &DickeBlockState,
    h: &PiHamiltonian,
    params: &LindbladParams,
    t_grid: &[f64],
) -> Result<Vec<DickeBlockState>> {
    validate_grid(t_grid)?;
    let rhs = PiRhs::new(initial.n_spins(), h, params);
    let mut flat = Vec::with_capacity(rhs.state_len());
    rhs.flatten(initial, &mut flat);

    let rk = AdaptiveRk::default();
    let mut out = Vec::with_capacity(t_grid.len());
    let mut t_now = 0.0;
    for &t in t_grid {
        if t > t_now {
            let rhs_ref = &rhs;
            rk.integrate(
                |_, y, dy| rhs_ref.rhs(y, dy),
                t_now,
                t,
                &mut flat,
                |y| (rhs_ref.trace_of_flat(y) - 1.0).abs() <= 1e-9,
            )?;
            t_now = t;
        }
        out.push(rhs.unflatten(&flat));
    }
    Ok(out)
}

/// Pure-state convenience wrapper: embeds |ψ⟩ in the maximal-j block.
pub fn lindblad_evolve_pi_pure(
    initial: &DickeVector,
    h: &PiHamiltonian,
    params: &LindbladParams,
    t_grid: &[f64],
) -> Result<Vec<DickeBlockState>> {
    lindblad_evolve_pi(&DickeBlockState::from_pure(initial), h, params, t_grid)
}

fn validate_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::InvalidParameter("empty time grid".into()));
    }
    if t_grid[0] < 0.0 {
        return Err(Error::InvalidParameter("time grid must start ≥ 0".into()));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "time grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Full-Hilbert-space oracle (N ≤ 8)
// ---------------------------------------------------------------------------

/// Full-space density matrix trajectory — cross-validation oracle only.
pub struct FullTrajectory {
    pub n_spins: usize,
    pub states: Vec<DMatrix<Complex64>>,
}

/// Dense 2^N×2^N integration with explicit σ₋ᵏ jump operators.
pub fn lindblad_evolve_full(
    initial: &DickeVector,
    h: &PiHamiltonian,
    params: &LindbladParams,
    t_grid: &[f64],
) -> Result<FullTrajectory> {
    let n = initial.ensemble().n_spins();
    if n > 8 {
        return Err(Error::InvalidParameter(format!(
            "full-space oracle capped at N = 8, got {n}"
        )));
    }
    validate_grid(t_grid)?;
    let dim = 1usize << n;

    // |S, S−k⟩ = Σ_{|b|=k} |b⟩ / sqrt(C(N,k)), bit = 1 meaning spin down.
    let mut psi = vec![Complex64::ZERO; dim];
    for b in 0..dim {
        let k = (b as u32).count_ones() as usize;
        let w = 1.0 / (binomial_f64(n, k)).sqrt();
        psi[b] = initial.amplitudes()[k] * w;
    }
    let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            rho[(a, b)] = psi[a] * psi[b].conj();
        }
    }

    let h_diag: Option<Vec<f64>> = match h {
        PiHamiltonian::ZDiagonal(z) => Some(
            (0..dim)
                .map(|b| z.phase(n as i64 - 2 * (b as u32).count_ones() as i64))
                .collect(),
        ),
        PiHamiltonian::Polynomial(_) => None,
    };
    let h_full = if h_diag.is_none() {
        full_hamiltonian(n, h)
    } else {
        DMatrix::zeros(0, 0)
    };
    let sz_diag: Vec<f64> = (0..dim)
        .map(|b| (n as f64 - 2.0 * (b as u32).count_ones() as f64) / 2.0)
        .collect();
    let gamma = params.gamma;
    let gamma_deph = params.gamma_deph;

    let rhs = move |_t: f64, y: &[Complex64], dy: &mut [Complex64]| {
        // y, dy are column-major dim×dim
        let at = |r: usize, c: usize| y[c * dim + r];
        dy.fill(Complex64::ZERO);
        let i_unit = Complex64::new(0.0, 1.0);
        // −i[H,ρ]
        if let Some(eps) = &h_diag {
            for c in 0..dim {
                for r in 0..dim {
                    dy[c * dim + r] -= i_unit * (eps[r] - eps[c]) * at(r, c);
                }
            }
        } else {
            for c in 0..dim {
                for r in 0..dim {
                    let mut acc = Complex64::ZERO;
                    for s in 0..dim {
                        acc += h_full[(r, s)] * at(s, c) - at(r, s) * h_full[(s, c)];
                    }
                    dy[c * dim + r] -= i_unit * acc;
                }
            }
        }
        // Γ(2 S_z ρ S_z − {S_z², ρ}) — S_z diagonal in this basis
        if gamma_deph != 0.0 {
            for c in 0..dim {
                for r in 0..dim {
                    let dm = sz_diag[r] - sz_diag[c];
                    dy[c * dim + r] -= gamma_deph * dm * dm * at(r, c);
                }
            }
        }
        // γ Σ_k (2 σ₋ᵏ ρ σ₊ᵏ − {σ₊ᵏσ₋ᵏ, ρ})
        if gamma != 0.0 {
            for c in 0..dim {
                for r in 0..dim {
                    // up-spin counts
                    let ur = n as f64 - (r as u32).count_ones() as f64;
                    let uc = n as f64 - (c as u32).count_ones() as f64;
                    dy[c * dim + r] -= gamma * (ur + uc) * at(r, c);
                }
            }
            for k in 0..n {
                let mask = 1usize << k;
                for c in 0..dim {
                    if c & mask == 0 {
                        continue;
                    }
                    for r in 0..dim {
                        if r & mask == 0 {
                            continue;
                        }
                        dy[c * dim + r] += 2.0 * gamma * at(r ^ mask, c ^ mask);
                    }
                }
            }
        }
    };

    let rk = AdaptiveRk::default();
    let mut flat: Vec<Complex64> = rho.iter().copied().collect();
    let mut out = Vec::with_capacity(t_grid.len());
    let mut t_now = 0.0;
    for &t in t_grid {
        if t > t_now {
            rk.integrate(&rhs, t_now, t, &mut flat, |y| {
                let tr: f64 = (0..dim).map(|i| y[i * dim + i].re).sum();
                (tr - 1.0).abs() <= 1e-9
            })?;
            t_now = t;
        }
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        m.copy_from_slice(&flat);
        out.push(m);
    }
    Ok(FullTrajectory {
        n_spins: n,
        states: out,
    })
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Collective generators in the full 2^N space (bit = 1 ↔ down).
pub fn full_spin_ops(n: usize) -> [DMatrix<Complex64>; 3] {
    let dim = 1usize << n;
    let mut sx = DMatrix::<Complex64>::zeros(dim, dim);
    let mut sy = DMatrix::<Complex64>::zeros(dim, dim);
    let mut sz = DMatrix::<Complex64>::zeros(dim, dim);
    for b in 0..dim {
        sz[(b, b)] = Complex64::new((n as f64 - 2.0 * (b as u32).count_ones() as f64) / 2.0, 0.0);
        for k in 0..n {
            let flipped = b ^ (1 << k);
            // σx/2 flips; σy/2 carries ∓i/2: ⟨down|σy|up⟩ = i
            sx[(flipped, b)] += Complex64::new(0.5, 0.0);
            if b & (1 << k) == 0 {
                // up → down
                sy[(flipped, b)] += Complex64::new(0.0, 0.5);
            } else {
                sy[(flipped, b)] += Complex64::new(0.0, -0.5);
            }
        }
    }
    [sx, sy, sz]
}

fn full_hamiltonian(n: usize, h: &PiHamiltonian) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    match h {
        PiHamiltonian::ZDiagonal(z) => DMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                let two_m = n as i64 - 2 * (r as u32).count_ones() as i64;
                Complex64::new(z.phase(two_m), 0.0)
            } else {
                Complex64::ZERO
            }
        }),
        PiHamiltonian::Polynomial(terms) => {
            let gens = full_spin_ops(n);
            let mut out = DMatrix::<Complex64>::zeros(dim, dim);
            for (coeff, word) in terms {
                let mut term = DMatrix::<Complex64>::identity(dim, dim);
                for axis in word {
                    let g = match axis {
                        Axis::X => &gens[0],
                        Axis::Y => &gens[1],
                        Axis::Z => &gens[2],
                    };
                    term = term * g;
                }
                out += term * Complex64::new(*coeff, 0.0);
            }
            out
        }
    }
}

/// Observables of a full-space density matrix.
pub struct FullObservables {
    pub trace: f64,
    pub mean_sz: f64,
    pub qfi: f64,
}

pub fn full_observables(n: usize, rho: &DMatrix<Complex64>, psd_floor: f64) -> Result<FullObservables> {
    let dim = 1usize << n;
    if rho.nrows() != dim {
        return Err(Error::DimensionMismatch(rho.nrows(), dim));
    }
    let trace: f64 = (0..dim).map(|i| rho[(i, i)].re).sum();
    let gens = full_spin_ops(n);
    let mean_sz: f64 = (0..dim)
        .map(|i| {
            rho[(i, i)].re * (n as f64 - 2.0 * (i as u32).count_ones() as f64) / 2.0
        })
        .sum();
    let (values, vectors) = crate::linalg::eigh(rho);
    if let Some(&min) = values.first() {
        if min < -psd_floor {
            return Err(Error::NotPositiveSemidefinite(min));
        }
    }
    let values: Vec<f64> = values.iter().map(|&v| v.max(0.0)).collect();
    let m = qfi_matrix_from_eigedecomp(&values, &vectors, &gens, trace);
    let (lambda, _) = crate::linalg::sym3_max_eigenpair(m);
    Ok(FullObservables {
        trace,
        mean_sz,
        qfi: lambda,
    })
}

// ---------------------------------------------------------------------------
// Damped QFI sweeps
// ---------------------------------------------------------------------------

/// Which nonlinearity drives a damped sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DampedScheme {
    Cubic,
    Oat,
}

impl DampedScheme {
    pub fn hamiltonian(&self) -> PiHamiltonian {
        match self {
            DampedScheme::Cubic => PiHamiltonian::cubic(1.0),
            DampedScheme::Oat => PiHamiltonian::oat(1.0),
        }
    }
}

/// One sampled point of a damped trajectory.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryRow {
    pub t: f64,
    pub trace: f64,
    pub qfi: f64,
    /// Optimal generator direction.
    pub direction: [f64; 3],
    pub mean_sz: f64,
}

/// Evolve |π/2,0⟩ under the damped scheme and report QFI along the grid.
///
/// Trajectory states may carry eigenvalues a few 1e−9 below zero from the
/// integrator; they are clamped within the block-state floor (1e−8).
pub fn damped_qfi_sweep(
    scheme: DampedScheme,
    n_spins: usize,
    params: &LindbladParams,
    t_grid: &[f64],
) -> Result<Vec<TrajectoryRow>> {
    if n_spins > 60 {
        return Err(Error::InvalidParameter(format!(
            "PI sweep capped at N = 60 for practicality, got {n_spins}"
        )));
    }
    let ensemble = SpinEnsemble::new(n_spins)?;
    let initial = crate::state::css_state(ensemble, &crate::state::CssParams::equatorial(0.0));
    let trajectory = lindblad_evolve_pi_pure(&initial, &scheme.hamiltonian(), params, t_grid)?;
    trajectory
        .iter()
        .zip(t_grid)
        .map(|(state, &t)| {
            let report: QfiReport = state.qfi(1e-8)?;
            Ok(TrajectoryRow {
                t,
                trace: state.trace(),
                qfi: report.qfi,
                direction: report.direction,
                mean_sz: state.mean_sz(),
            })
        })
        .collect()
}

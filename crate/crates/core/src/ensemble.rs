//! The spin ensemble: N two-level atoms treated as one collective spin S = N/2.
//!
//! Basis convention used throughout: Dicke states |S, m⟩ are indexed by
//! k = 0..=N with m = S − k, i.e. index 0 is the maximal projection m = +S.
//! Half-integer projections (odd N) are carried exactly as doubled integers
//! (2m), so phase exponents never see a rounded 0.5.

use crate::error::{Error, Result};

/// Parity of the total spin number N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// An ensemble of N identical two-level atoms with total spin S = N/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinEnsemble {
    n_spins: usize,
}

impl SpinEnsemble {
    pub fn new(n_spins: usize) -> Result<Self> {
        if n_spins == 0 {
            return Err(Error::InvalidParameter(
                "ensemble needs at least one spin".into(),
            ));
        }
        Ok(Self { n_spins })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    /// Total spin S = N/2 (half-integer when N is odd).
    pub fn total_spin(&self) -> f64 {
        self.n_spins as f64 / 2.0
    }

    /// 2S = N, the exact integer carrying the total spin.
    pub fn two_s(&self) -> i64 {
        self.n_spins as i64
    }

    /// Dicke-space dimension N + 1.
    pub fn dim(&self) -> usize {
        self.n_spins + 1
    }

    pub fn parity(&self) -> Parity {
        if self.n_spins % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Doubled projection 2m = N − 2k for basis index k.
    pub fn two_m(&self, k: usize) -> i64 {
        self.n_spins as i64 - 2 * k as i64
    }

    /// Projection m = S − k as a float.
    pub fn m(&self, k: usize) -> f64 {
        self.two_m(k) as f64 / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_ensemble() {
        assert!(SpinEnsemble::new(0).is_err());
    }

    #[test]
    fn indexing_covers_ladder() {
        let ens = SpinEnsemble::new(5).unwrap();
        assert_eq!(ens.dim(), 6);
        assert_eq!(ens.two_m(0), 5); // m = +5/2
        assert_eq!(ens.two_m(5), -5); // m = -5/2
        assert_eq!(ens.parity(), Parity::Odd);
        assert_eq!(ens.total_spin(), 2.5);
    }
}

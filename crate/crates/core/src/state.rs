//! Pure states of `n` qubits in the computational product basis.
//!
//! Basis index bit `s` encodes site `s` (site 0 is the least significant bit);
//! a clear bit is spin up, `sigma^z |0> = +|0>`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps an amplitude vector that is already normalized.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_len(n, amplitudes.len())?;
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(Self { n, amplitudes })
    }

    /// Normalizes `amplitudes` before wrapping them.
    pub fn from_unnormalized(n: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_len(n, amplitudes.len())?;
        let norm = l2_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState(format!("cannot normalize a vector of norm {norm}")));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n, amplitudes })
    }

    pub(crate) fn from_parts(n: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n);
        Self { n, amplitudes }
    }

    /// Product basis state with the given basis index.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_len(n, 1 << n)?;
        if index >= 1 << n {
            return Err(Error::InvalidState(format!("basis index {index} out of range")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    /// All spins up.
    pub fn all_up(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// `(|0...0> + |1...1>) / sqrt(2)`.
    pub fn ghz(n: usize) -> Result<Self> {
        check_len(n, 1 << n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        amplitudes[(1 << n) - 1] = Complex64::new(1.0, 0.0);
        Self::from_unnormalized(n, amplitudes)
    }

    /// Equal superposition of the `n` single-flip states.
    pub fn w(n: usize) -> Result<Self> {
        check_len(n, 1 << n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        for s in 0..n {
            amplitudes[1 << s] = Complex64::new(1.0, 0.0);
        }
        Self::from_unnormalized(n, amplitudes)
    }

    /// Tensor product; the sites of `self` keep their indices and the sites of
    /// `other` are appended after them.
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        let n = self.n + other.n;
        check_len(n, 1 << n)?;
        let mut amplitudes = Vec::with_capacity(1 << n);
        for b in &other.amplitudes {
            for a in &self.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// Checks that `site` belongs to the chain.
    pub fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.n {
            return Err(Error::SiteOutOfRange { site, n: self.n });
        }
        Ok(())
    }
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if n == 0 || n > 30 {
        return Err(Error::InvalidState(format!("unsupported number of qubits {n}")));
    }
    if len != 1 << n {
        return Err(Error::DimensionMismatch { expected: 1 << n, got: len });
    }
    Ok(())
}

pub(crate) fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

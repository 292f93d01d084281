//! Quantum discord and one-way work deficit of two-qubit states, with the
//! projective measurement acting on the second qubit.
//!
//! Writing `rho = (1/4)[I + a.sigma (x) I + I (x) b.sigma + sum_ij T_ij sigma_i (x) sigma_j]`,
//! the outcome `+-` of measuring the second qubit along `n` occurs with
//! probability `p = (1 +- b.n)/2` and leaves the first qubit with Bloch vector
//! `(a +- T n) / (1 +- b.n)`. The dephased state
//! `rho' = sum_k (I (x) P_k) rho (I (x) P_k)` is block diagonal in the outcomes, so
//! `S(rho') = H(p) + sum_k p_k S(rho_{A|k})`.

use num_complex::Complex64;

use super::entanglement::require_two_qubits;
use super::optimizer::{minimize_measurement, Minimum, OptimizerSettings};
use crate::error::{Error, Result};
use crate::reductions::{binary_entropy, entropy, DensityMatrix};

/// Values in `[-CLAMP_TOL, 0)` are rounded to zero; lower values are errors.
const CLAMP_TOL: f64 = 1e-8;

/// Bloch/correlation-tensor form of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDecomposition {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
    /// `S(rho_AB)` in bits.
    pub joint_entropy: f64,
}

fn pauli(k: usize) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match k {
        0 => [[one, z], [z, one]],
        1 => [[z, one], [one, z]],
        2 => [[z, -i], [i, z]],
        _ => [[one, z], [z, -one]],
    }
}

impl TwoQubitDecomposition {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        require_two_qubits(rho)?;
        let m = rho.matrix();
        // tr(rho (s_i (x) s_j)) with basis index 2 * first + second
        let expect = |i: usize, j: usize| -> f64 {
            let (p, q) = (pauli(i), pauli(j));
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..4 {
                for c in 0..4 {
                    let op = p[c >> 1][r >> 1] * q[c & 1][r & 1];
                    acc += m[(r, c)] * op;
                }
            }
            acc.re
        };
        let a = [1, 2, 3].map(|i| expect(i, 0));
        let b = [1, 2, 3].map(|j| expect(0, j));
        let t = [1, 2, 3].map(|i| [1, 2, 3].map(|j| expect(i, j)));
        Ok(Self { a, b, t, joint_entropy: entropy(rho) })
    }

    pub fn entropy_first(&self) -> f64 {
        bloch_entropy(norm3(self.a))
    }

    pub fn entropy_second(&self) -> f64 {
        bloch_entropy(norm3(self.b))
    }

    /// Outcome probabilities and conditional entropies of the first qubit after
    /// measuring the second along `n`.
    #[inline]
    fn outcomes(&self, n: [f64; 3]) -> [(f64, f64); 2] {
        let bn = self.b[0] * n[0] + self.b[1] * n[1] + self.b[2] * n[2];
        let mut tn = [0.0; 3];
        for (i, row) in self.t.iter().enumerate() {
            tn[i] = row[0] * n[0] + row[1] * n[1] + row[2] * n[2];
        }
        let mut out = [(0.0, 0.0); 2];
        for (k, sign) in [1.0, -1.0].into_iter().enumerate() {
            let weight = 1.0 + sign * bn;
            let p = 0.5 * weight;
            if p <= 0.0 {
                out[k] = (0.0, 0.0);
                continue;
            }
            let v = [self.a[0] + sign * tn[0], self.a[1] + sign * tn[1], self.a[2] + sign * tn[2]];
            out[k] = (p, bloch_entropy(norm3(v) / weight));
        }
        out
    }

    /// `sum_k p_k S(rho_{A|k})` for a measurement along `n`.
    pub fn conditional_entropy(&self, n: [f64; 3]) -> f64 {
        self.outcomes(n).iter().map(|(p, s)| p * s).sum()
    }

    /// `S(rho')` of the state dephased by a measurement along `n`.
    pub fn dephased_entropy(&self, n: [f64; 3]) -> f64 {
        let o = self.outcomes(n);
        binary_entropy(o[0].0) + o.iter().map(|(p, s)| p * s).sum::<f64>()
    }
}

#[inline]
fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Entropy of a qubit whose Bloch vector has length `r`.
#[inline]
fn bloch_entropy(r: f64) -> f64 {
    binary_entropy(0.5 * (1.0 + r.min(1.0)))
}

fn clamp_nonnegative(what: &'static str, value: f64) -> Result<f64> {
    if value < -CLAMP_TOL {
        return Err(Error::NegativeValue { what, value });
    }
    Ok(value.max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizedValue {
    pub value: f64,
    pub minimum: Minimum,
}

/// `D = I - J` with `J = S(rho_A) - min_n sum_k p_k S(rho_{A|k})`.
pub fn discord(rho: &DensityMatrix) -> Result<f64> {
    discord_with(rho, &OptimizerSettings::default()).map(|d| d.value)
}

pub fn discord_with(rho: &DensityMatrix, settings: &OptimizerSettings) -> Result<OptimizedValue> {
    let dec = TwoQubitDecomposition::new(rho)?;
    let minimum = minimize_measurement(|n| dec.conditional_entropy(n), settings)?;
    let value = dec.entropy_second() - dec.joint_entropy + minimum.value;
    Ok(OptimizedValue { value: clamp_nonnegative("discord", value)?, minimum })
}

/// `W = min_n S(rho') - S(rho)`.
pub fn work_deficit(rho: &DensityMatrix) -> Result<f64> {
    work_deficit_with(rho, &OptimizerSettings::default()).map(|w| w.value)
}

pub fn work_deficit_with(rho: &DensityMatrix, settings: &OptimizerSettings) -> Result<OptimizedValue> {
    let dec = TwoQubitDecomposition::new(rho)?;
    let minimum = minimize_measurement(|n| dec.dephased_entropy(n), settings)?;
    let value = minimum.value - dec.joint_entropy;
    Ok(OptimizedValue { value: clamp_nonnegative("work deficit", value)?, minimum })
}

/// Exchanges the two qubits, so that the measurement acts on the first one.
pub fn swap_parties(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_two_qubits(rho)?;
    let perm = [0usize, 2, 1, 3];
    let m = rho.matrix();
    let swapped = nalgebra::DMatrix::from_fn(4, 4, |r, c| m[(perm[r], perm[c])]);
    Ok(DensityMatrix::from_parts(swapped, vec![2, 2]))
}

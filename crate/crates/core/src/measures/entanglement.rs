//! Concurrence and logarithmic negativity.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::reductions::{hermitian_eigenvalues, partial_transpose, reduce, schmidt_probs, DensityMatrix};
use crate::state::PureState;

pub(crate) fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::InvalidDensityMatrix(format!(
            "expected a two-qubit state, got subsystem dimensions {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// `sigma_y (x) sigma_y` in the two-qubit computational basis.
fn yy() -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(4, 4);
    m[(0, 3)] = Complex64::new(-1.0, 0.0);
    m[(1, 2)] = Complex64::new(1.0, 0.0);
    m[(2, 1)] = Complex64::new(1.0, 0.0);
    m[(3, 0)] = Complex64::new(-1.0, 0.0);
    m
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`, with `l_i` the decreasing
/// square roots of the eigenvalues of `rho (Y(x)Y) rho* (Y(x)Y)`.
///
/// With `rho = W W^dagger`, the `l_i` are the singular values of the symmetric
/// matrix `W^T (Y(x)Y) W`, which avoids square roots of round-off eigenvalues.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let eig = SymmetricEigen::new(rho.matrix().clone());
    let mut w = eig.eigenvectors;
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        w.column_mut(k).scale_mut(lambda.max(0.0).sqrt());
    }
    let tau = w.transpose() * yy() * &w;
    let mut l: Vec<f64> = tau.singular_values().iter().copied().collect();
    l.sort_by(|a, b| b.total_cmp(a));
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Concurrence across the cut `nodal | rest` of a pure state, `2 sqrt(det rho_nodal)`.
pub fn concurrence_pure_cut(state: &PureState, nodal: usize) -> Result<f64> {
    let rho = reduce(state, &[nodal])?;
    let m = rho.matrix();
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    Ok((2.0 * det.max(0.0).sqrt()).min(1.0))
}

/// `log2 || rho^{T_part} ||_1` for a bipartite state.
pub fn log_negativity(rho: &DensityMatrix, part: usize) -> Result<f64> {
    if rho.dims().len() != 2 {
        return Err(Error::InvalidDensityMatrix(format!(
            "logarithmic negativity needs a bipartite state, got dimensions {:?}",
            rho.dims()
        )));
    }
    let pt = partial_transpose(rho, part)?;
    let norm: f64 = hermitian_eigenvalues(pt).iter().map(|v| v.abs()).sum();
    Ok(norm.log2().max(0.0))
}

/// Pure-state logarithmic negativity from Schmidt probabilities, `2 log2 sum_i sqrt(p_i)`.
pub fn log_negativity_from_schmidt(probs: &[f64]) -> f64 {
    let s: f64 = probs.iter().map(|p| p.max(0.0).sqrt()).sum();
    (2.0 * s.log2()).max(0.0)
}

/// Logarithmic negativity of a pure state across `partition | rest`.
pub fn log_negativity_pure_cut(state: &PureState, partition: &[usize]) -> Result<f64> {
    Ok(log_negativity_from_schmidt(&schmidt_probs(state, partition)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    pub(crate) fn bell() -> DensityMatrix {
        let mut m = DMatrix::zeros(4, 4);
        for (r, cc) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(r, cc)] = c(0.5);
        }
        DensityMatrix::new(m, vec![2, 2]).unwrap()
    }

    fn classical() -> DensityMatrix {
        let mut m = DMatrix::zeros(4, 4);
        m[(0, 0)] = c(0.5);
        m[(3, 3)] = c(0.5);
        DensityMatrix::new(m, vec![2, 2]).unwrap()
    }

    fn werner(p: f64) -> DensityMatrix {
        let m = bell().matrix() * c(p) + DMatrix::from_diagonal_element(4, 4, c((1.0 - p) / 4.0));
        DensityMatrix::new(m, vec![2, 2]).unwrap()
    }

    #[test]
    fn concurrence_examples() {
        assert!((concurrence(&bell()).unwrap() - 1.0).abs() < 1e-12);
        assert!(concurrence(&classical()).unwrap().abs() < 1e-12);
        // closed form max(0, (3p - 1)/2)
        assert!((concurrence(&werner(0.8)).unwrap() - 0.7).abs() < 1e-12);
        assert!(concurrence(&werner(0.3)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn concurrence_needs_two_qubits() {
        let rho = DensityMatrix::new(DMatrix::from_diagonal_element(2, 2, c(0.5)), vec![2]).unwrap();
        assert!(concurrence(&rho).is_err());
    }

    #[test]
    fn pure_cut_examples() {
        assert!(concurrence_pure_cut(&PureState::all_up(4).unwrap(), 0).unwrap().abs() < 1e-12);
        // W state: rho_1 = diag(2/3, 1/3), so 2 sqrt(2/9)
        let w = PureState::w(3).unwrap();
        assert!((concurrence_pure_cut(&w, 0).unwrap() - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn log_negativity_examples() {
        assert!((log_negativity(&bell(), 0).unwrap() - 1.0).abs() < 1e-12);
        assert!(log_negativity(&classical(), 0).unwrap().abs() < 1e-12);
        let expected = 2.0 * (0.9f64.sqrt() + 0.1f64.sqrt()).log2();
        assert!((log_negativity_from_schmidt(&[0.9, 0.1]) - expected).abs() < 1e-15);
        assert!((expected - 0.6780).abs() < 1e-4);

        // same state through the partial-transpose path
        let a = [c(0.9f64.sqrt()), c(0.0), c(0.0), c(0.1f64.sqrt())];
        let psi = PureState::new(2, a.to_vec()).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        assert!((log_negativity(&rho, 0).unwrap() - expected).abs() < 1e-10);
        assert!((log_negativity(&rho, 1).unwrap() - expected).abs() < 1e-10);
    }
}

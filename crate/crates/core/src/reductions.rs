//! Reduced density matrices, Schmidt spectra, entropies and partial transposes.
//!
//! A reduced state over the ordered site list `keep = [k0, k1, ...]` is laid out
//! as `rho_{k0} (x) rho_{k1} (x) ...`: the first listed site is the most
//! significant factor. For a pair `(nodal, other)` the nodal spin is therefore
//! subsystem 0.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::PureState;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues in `[-PSD_TOL, 0)` are treated as zero; anything lower is corruption.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: DMatrix<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let size: usize = dims.iter().product();
        if !matrix.is_square() || matrix.nrows() != size || dims.is_empty() {
            return Err(Error::InvalidDensityMatrix(format!(
                "{}x{} matrix does not match subsystem dimensions {dims:?}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr} is not 1")));
        }
        let rho = Self { matrix, dims };
        let min = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    /// Projector onto a pure state; subsystem order is site order.
    pub fn from_pure(state: &PureState) -> Self {
        let keep: Vec<usize> = (0..state.n()).collect();
        reduce_unchecked(state, &keep)
    }

    pub(crate) fn from_parts(matrix: DMatrix<Complex64>, dims: Vec<usize>) -> Self {
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(self.matrix.clone())
    }

    /// Partial trace keeping the listed subsystems in the given order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let count = self.dims.len();
        check_selection(keep, count, |index| Error::BadSubsystem { index, count })?;
        let strides = strides(&self.dims);
        let rest: Vec<usize> = (0..count).filter(|i| !keep.contains(i)).collect();
        let kept_dims: Vec<usize> = keep.iter().map(|&i| self.dims[i]).collect();
        let rest_dims: Vec<usize> = rest.iter().map(|&i| self.dims[i]).collect();
        let kept_size: usize = kept_dims.iter().product();
        let rest_size: usize = rest_dims.iter().product();

        let offset = |digits_of: &[usize], which: &[usize], dims: &[usize], mut idx: usize| {
            let mut off = 0;
            for k in (0..which.len()).rev() {
                off += (idx % dims[k]) * digits_of[which[k]];
                idx /= dims[k];
            }
            off
        };
        let mut out = DMatrix::zeros(kept_size, kept_size);
        for r in 0..kept_size {
            let ro = offset(&strides, keep, &kept_dims, r);
            for c in 0..kept_size {
                let co = offset(&strides, keep, &kept_dims, c);
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..rest_size {
                    let to = offset(&strides, &rest, &rest_dims, t);
                    acc += self.matrix[(ro + to, co + to)];
                }
                out[(r, c)] = acc;
            }
        }
        Ok(DensityMatrix { matrix: out, dims: kept_dims })
    }
}

/// Row-major strides of the tensor-product index (first subsystem most significant).
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

fn check_selection(sel: &[usize], bound: usize, out_of_range: impl Fn(usize) -> Error) -> Result<()> {
    if sel.is_empty() {
        return Err(Error::InvalidPartition("empty selection".into()));
    }
    for (i, &s) in sel.iter().enumerate() {
        if s >= bound {
            return Err(out_of_range(s));
        }
        if sel[..i].contains(&s) {
            return Err(Error::DuplicateSite(s));
        }
    }
    Ok(())
}

pub(crate) fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Reduced state of the listed sites, traced over all others.
pub fn reduce(state: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.n();
    check_selection(keep, n, |site| Error::SiteOutOfRange { site, n })?;
    Ok(reduce_unchecked(state, keep))
}

fn reduce_unchecked(state: &PureState, keep: &[usize]) -> DensityMatrix {
    let amps = amplitude_matrix(state, keep);
    let matrix = &amps * amps.adjoint();
    DensityMatrix::from_parts(matrix, vec![2; keep.len()])
}

/// Reshapes the amplitudes into a `2^|keep| x 2^(n-|keep|)` matrix whose row index
/// enumerates the kept sites (first listed site most significant).
pub fn amplitude_matrix(state: &PureState, keep: &[usize]) -> DMatrix<Complex64> {
    let n = state.n();
    let m = keep.len();
    let rest: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
    let mut out = DMatrix::zeros(1 << m, 1 << rest.len());
    for (i, &a) in state.amplitudes().iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut r = 0;
        for &s in keep {
            r = (r << 1) | ((i >> s) & 1);
        }
        let mut c = 0;
        for &s in &rest {
            c = (c << 1) | ((i >> s) & 1);
        }
        out[(r, c)] = a;
    }
    out
}

/// Schmidt probabilities across the cut `partition | rest`, descending.
pub fn schmidt_probs(state: &PureState, partition: &[usize]) -> Result<Vec<f64>> {
    if partition.len() >= state.n() {
        return Err(Error::InvalidPartition("partition must leave at least one site".into()));
    }
    let rho = reduce(state, partition)?;
    let mut p: Vec<f64> = rho.eigenvalues().into_iter().map(|x| x.clamp(0.0, 1.0)).collect();
    p.reverse();
    Ok(p)
}

/// Shannon entropy in bits of a probability list, with `0 log 0 = 0`.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .map(|&p| p.clamp(0.0, 1.0))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Binary entropy `H(p, 1-p)` in bits.
#[inline]
pub fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    let q = 1.0 - p;
    let mut s = 0.0;
    if p > 0.0 {
        s -= p * p.log2();
    }
    if q > 0.0 {
        s -= q * q.log2();
    }
    s
}

/// Von Neumann entropy in bits.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy(&rho.eigenvalues())
}

/// Transposes the indices of one tensor factor.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<DMatrix<Complex64>> {
    let dims = rho.dims();
    if subsystem >= dims.len() {
        return Err(Error::BadSubsystem { index: subsystem, count: dims.len() });
    }
    let stride = strides(dims)[subsystem];
    let d = dims[subsystem];
    let size = rho.dim();
    let digit = |i: usize| (i / stride) % d;
    let m = rho.matrix();
    Ok(DMatrix::from_fn(size, size, |r, c| {
        let (dr, dc) = (digit(r), digit(c));
        let r2 = r - dr * stride + dc * stride;
        let c2 = c - dc * stride + dr * stride;
        m[(r2, c2)]
    }))
}

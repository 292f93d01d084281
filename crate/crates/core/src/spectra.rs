//! Ground states by sector-wise exact diagonalization.
//!
//! Every magnetization sector is diagonalized on its own (dense Hermitian
//! solver for small blocks, Lanczos with full reorthogonalization above
//! [`SolverOptions::dense_limit`]) and the global ground state is selected
//! across sectors.
//!
//! When the lowest levels tie within the degeneracy tolerance the state is
//! taken from the sector with the smallest magnetization, then the lowest
//! solver index; the tie is reported through [`GroundStateResult::degenerate`].

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, ModelParams, SparseHamiltonian};
use crate::state::{l2_norm, PureState};

/// Largest chain accepted by [`dense_spectrum`].
pub const DENSE_SPECTRUM_MAX_SPINS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenMethod {
    /// Dense for blocks up to `dense_limit`, Lanczos above.
    Auto,
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Relative threshold on `E1 - E0` below which the ground level counts as degenerate.
    pub degeneracy_tol: f64,
    pub method: EigenMethod,
    /// Largest sector dimension handed to the dense solver under [`EigenMethod::Auto`].
    pub dense_limit: usize,
    pub lanczos_max_iter: usize,
    pub lanczos_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            degeneracy_tol: 1e-10,
            method: EigenMethod::Auto,
            dense_limit: 1024,
            lanczos_max_iter: 600,
            lanczos_tol: 1e-11,
        }
    }
}

impl SolverOptions {
    pub fn with_tol(degeneracy_tol: f64) -> Self {
        Self { degeneracy_tol, ..Self::default() }
    }
}

/// Magnetization sector of the returned ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectorLabel {
    Magnetization(i32),
    /// The ground level ties across different sectors.
    Mixed,
}

impl std::fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SectorLabel::Magnetization(m) => write!(f, "{m}"),
            SectorLabel::Mixed => f.write_str("mixed"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroundStateResult {
    pub energy: f64,
    pub state: PureState,
    /// `E1 - E0 >= 0` over the whole spectrum.
    pub gap: f64,
    pub degenerate: bool,
    pub sector: SectorLabel,
}

/// The lowest levels of one sector, in ascending order.
#[derive(Debug, Clone)]
struct SectorLevels {
    magnetization: i32,
    states: Vec<usize>,
    values: Vec<f64>,
    /// Sector-local eigenvectors matching `values`.
    vectors: Vec<Vec<Complex64>>,
}

/// Ground state with the default solver.
pub fn ground_state(h: &SparseHamiltonian, tol: f64) -> Result<GroundStateResult> {
    ground_state_with(h, &SolverOptions::with_tol(tol))
}

pub fn ground_state_with(h: &SparseHamiltonian, opts: &SolverOptions) -> Result<GroundStateResult> {
    if opts.degeneracy_tol.is_nan() || opts.degeneracy_tol <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "degeneracy tolerance must be positive, got {}",
            opts.degeneracy_tol
        )));
    }
    if !h.is_sector_diagonal() {
        return Err(Error::InvalidParams("operator does not conserve magnetization".into()));
    }
    let levels = (0..h.sectors().len())
        .map(|s| sector_levels(h, s, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(select_ground(h.n(), &levels, 0.0, 1.0, opts.degeneracy_tol))
}

/// Convenience wrapper: build the Hamiltonian and solve.
pub fn ground_state_for(params: &ModelParams, opts: &SolverOptions) -> Result<GroundStateResult> {
    ground_state_with(&build_hamiltonian(params)?, opts)
}

/// All `2^n` eigenvalues in ascending order; a validation oracle for small chains.
pub fn dense_spectrum(h: &SparseHamiltonian) -> Result<Vec<f64>> {
    if h.n() > DENSE_SPECTRUM_MAX_SPINS {
        return Err(Error::DimensionOverflow { n: h.n(), limit: DENSE_SPECTRUM_MAX_SPINS });
    }
    let eig = SymmetricEigen::new(h.to_dense());
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn sector_levels(h: &SparseHamiltonian, s: usize, opts: &SolverOptions) -> Result<SectorLevels> {
    let sector = &h.sectors()[s];
    let dim = sector.states.len();
    let dense = match opts.method {
        EigenMethod::Dense => true,
        EigenMethod::Lanczos => dim <= 2,
        EigenMethod::Auto => dim <= opts.dense_limit,
    };
    let (values, vectors) = if dense {
        dense_lowest(h.sector_block(s), 2)
    } else {
        lanczos_lowest(
            |x, y| h.sector_apply(s, x, y),
            dim,
            2,
            opts.lanczos_max_iter,
            opts.lanczos_tol,
        )
        .map_err(|iterations| Error::NoConvergence { sector: sector.magnetization, iterations })?
    };
    Ok(SectorLevels { magnetization: sector.magnetization, states: sector.states.clone(), values, vectors })
}

/// Lowest `k` eigenpairs of a dense Hermitian block, ascending.
fn dense_lowest(block: DMatrix<Complex64>, k: usize) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let eig = SymmetricEigen::new(block);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    order.truncate(k);
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order.iter().map(|&i| eig.eigenvectors.column(i).iter().copied().collect()).collect();
    (values, vectors)
}

/// Lanczos with full reorthogonalization for the lowest `k` eigenpairs of a
/// Hermitian operator given as a matrix-free product. On failure returns the
/// number of iterations spent.
pub fn lanczos_lowest<F>(
    apply: F,
    dim: usize,
    k: usize,
    max_iter: usize,
    tol: f64,
) -> std::result::Result<(Vec<f64>, Vec<Vec<Complex64>>), usize>
where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    let k = k.min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2c_2052);
    let mut v: Vec<Complex64> =
        (0..dim).map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
    let norm = l2_norm(&v);
    v.iter_mut().for_each(|a| *a /= norm);

    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut diag: Vec<f64> = Vec::new();
    let mut off: Vec<f64> = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    let limit = max_iter.min(dim);

    loop {
        apply(&v, &mut w);
        let a: f64 = v.iter().zip(&w).map(|(x, y)| (x.conj() * y).re).sum();
        basis.push(v.clone());
        diag.push(a);
        // full reorthogonalization, applied twice
        for _ in 0..2 {
            for q in &basis {
                let c: Complex64 = q.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                w.iter_mut().zip(q).for_each(|(y, x)| *y -= c * x);
            }
        }
        let beta = l2_norm(&w);
        let m = basis.len();

        let check = m >= k && (m.is_multiple_of(5) || m == limit || beta < 1e-13);
        if check {
            let (theta, s) = tridiagonal_eigen(&diag, &off);
            let converged = (0..k).all(|i| (beta * s[(m - 1, i)]).abs() <= tol * theta[i].abs().max(1.0));
            if converged || beta < 1e-13 {
                let vectors = (0..k)
                    .map(|i| {
                        let mut x = vec![Complex64::new(0.0, 0.0); dim];
                        for (j, q) in basis.iter().enumerate() {
                            let c = s[(j, i)];
                            x.iter_mut().zip(q).for_each(|(y, b)| *y += b * c);
                        }
                        let nrm = l2_norm(&x);
                        x.iter_mut().for_each(|y| *y /= nrm);
                        x
                    })
                    .collect();
                return Ok((theta[..k].to_vec(), vectors));
            }
            if m >= limit {
                return Err(m);
            }
        }
        if m >= limit {
            return Err(m);
        }
        off.push(beta);
        v = w.iter().map(|x| x / beta).collect();
    }
}

/// Eigen-decomposition of the real symmetric tridiagonal matrix, ascending.
fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let m = diag.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = diag[i];
        if i + 1 < m {
            t[(i, i + 1)] = off[i];
            t[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m, m, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Picks the ground state among the per-sector levels of `scale * K - (field/2) * M`.
fn select_ground(n: usize, levels: &[SectorLevels], field: f64, scale: f64, tol: f64) -> GroundStateResult {
    // (energy, sector slot, level index); sectors are stored with ascending magnetization
    let mut cands: Vec<(f64, usize, usize)> = Vec::new();
    for (s, lv) in levels.iter().enumerate() {
        for (i, &e) in lv.values.iter().enumerate() {
            cands.push((scale * e - 0.5 * field * lv.magnetization as f64, s, i));
        }
    }
    cands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let e0 = cands[0].0;
    let gap = cands.get(1).map_or(0.0, |c| c.0 - e0).max(0.0);
    let window = tol * e0.abs().max(1.0);
    let degenerate = gap < window;

    let tied: Vec<_> = cands.iter().filter(|c| c.0 - e0 < window).collect();
    let pick = tied.iter().min_by(|a, b| a.1.cmp(&b.1).then(a.2.cmp(&b.2))).unwrap();
    let sector = if tied.iter().any(|c| c.1 != pick.1) {
        SectorLabel::Mixed
    } else {
        SectorLabel::Magnetization(levels[pick.1].magnetization)
    };

    let lv = &levels[pick.1];
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (&g, &a) in lv.states.iter().zip(&lv.vectors[pick.2]) {
        amps[g] = a;
    }
    fix_phase(&mut amps);
    let norm = l2_norm(&amps);
    amps.iter_mut().for_each(|a| *a /= norm);

    GroundStateResult { energy: pick.0, state: PureState::from_parts(n, amps), gap, degenerate, sector }
}

/// Rotates the global phase so that the largest-magnitude amplitude is real positive.
fn fix_phase(amps: &mut [Complex64]) {
    let mut best = 0;
    for (i, a) in amps.iter().enumerate() {
        if a.norm() > amps[best].norm() {
            best = i;
        }
    }
    let a = amps[best];
    if a.norm() > 0.0 {
        let phase = a.conj() / a.norm();
        amps.iter_mut().for_each(|x| *x *= phase);
        amps[best] = Complex64::new(amps[best].norm(), 0.0);
    }
}

/// Sector spectra of the coupling part `K(alpha)` (the Hamiltonian at `J = 1`,
/// `h = 0`).
///
/// Since `H(J, alpha, h) = J K(alpha) - (h/2) M` and `K` commutes with `M`, for
/// any `J > 0` the sector eigenvectors of `H` are those of `K` and the sector
/// energies are `J e - h M / 2`. One decomposition per `alpha` therefore serves
/// every `(J, h)` pair with positive `J`.
#[derive(Debug, Clone)]
pub struct ScaledSpectrum {
    n: usize,
    alpha: f64,
    levels: Vec<SectorLevels>,
}

impl ScaledSpectrum {
    pub fn new(n: usize, alpha: f64, opts: &SolverOptions) -> Result<Self> {
        let h = build_hamiltonian(&ModelParams::new(n, 1.0, alpha, 0.0)?)?;
        let levels = (0..h.sectors().len())
            .map(|s| sector_levels(&h, s, opts))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, alpha, levels })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Ground state of `H(j, alpha, h)`; requires `j > 0`.
    pub fn ground_state(&self, j: f64, h: f64, tol: f64) -> Result<GroundStateResult> {
        if !j.is_finite() || j <= 0.0 || !h.is_finite() {
            return Err(Error::InvalidParams(format!(
                "scaled spectrum needs finite J > 0 and finite h, got J = {j}, h = {h}"
            )));
        }
        Ok(select_ground(self.n, &self.levels, h, j, tol))
    }
}

//! The cyclic chain Hamiltonian
//!
//! ```text
//! H = -(J/4) sum_n [ X_n X_{n+1} + Y_n Y_{n+1}
//!                    + (alpha/2) (X_{n-1} Z_n Y_{n+1} - Y_{n-1} Z_n X_{n+1}) ]
//!     - (h/2) sum_n Z_n
//! ```
//!
//! with periodic wrap-around of the site indices. Multiplying out the bracket,
//! each three-spin string carries the coefficient `-J*alpha/8` (XZY) or
//! `+J*alpha/8` (YZX); alpha never appears on its own.
//!
//! Both the exchange and the three-spin terms conserve the total magnetization
//! `M = sum_n Z_n`, so the assembled operator is block diagonal over
//! magnetization sectors.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::PureState;

/// Largest chain handled by the sparse assembly.
pub const MAX_SPINS: usize = 24;

const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Number of spins.
    pub n: usize,
    /// Two-body exchange strength `J`.
    pub j: f64,
    /// Scaled three-body strength `alpha`.
    pub alpha: f64,
    /// Transverse field `h`.
    pub h: f64,
}

impl ModelParams {
    pub fn new(n: usize, j: f64, alpha: f64, h: f64) -> Result<Self> {
        let p = Self { n, j, alpha, h };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidParams(format!(
                "need at least 3 spins for the three-body term, got {}",
                self.n
            )));
        }
        for (name, v) in [("J", self.j), ("alpha", self.alpha), ("h", self.h)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    /// Action on a single basis bit: returns the new bit and the matrix element.
    #[inline]
    fn act(self, bit: bool) -> (bool, Complex64) {
        match (self, bit) {
            (Pauli::X, b) => (!b, Complex64::new(1.0, 0.0)),
            (Pauli::Y, false) => (true, Complex64::new(0.0, 1.0)),
            (Pauli::Y, true) => (false, Complex64::new(0.0, -1.0)),
            (Pauli::Z, false) => (false, Complex64::new(1.0, 0.0)),
            (Pauli::Z, true) => (true, Complex64::new(-1.0, 0.0)),
        }
    }
}

/// A real multiple of a Pauli string acting on distinct sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub sites: Vec<(usize, Pauli)>,
    pub coefficient: f64,
}

impl PauliTerm {
    /// Applies the string to basis state `index`, returning the image index and
    /// the amplitude (excluding the coefficient).
    #[inline]
    pub fn act_on_basis(&self, index: usize) -> (usize, Complex64) {
        let mut out = index;
        let mut amp = Complex64::new(1.0, 0.0);
        for &(site, p) in &self.sites {
            let bit = (index >> site) & 1 == 1;
            let (nb, a) = p.act(bit);
            if nb != bit {
                out ^= 1 << site;
            }
            amp *= a;
        }
        (out, amp)
    }
}

/// Expands the Hamiltonian into Pauli strings, eliding zero coefficients.
///
/// For every site `n` (indices mod N) this yields `-(J/4) XX`, `-(J/4) YY`,
/// `-(J*alpha/8) X_{n-1} Z_n Y_{n+1}`, `+(J*alpha/8) Y_{n-1} Z_n X_{n+1}` and `-(h/2) Z_n`.
pub fn expand_terms(params: &ModelParams) -> Result<Vec<PauliTerm>> {
    params.validate()?;
    let n = params.n;
    let two_body = -params.j / 4.0;
    let three_body = params.j * params.alpha / 8.0;
    let field = -params.h / 2.0;

    let mut terms = Vec::with_capacity(5 * n);
    let mut push = |sites: Vec<(usize, Pauli)>, coefficient: f64| {
        if coefficient != 0.0 {
            terms.push(PauliTerm { sites, coefficient });
        }
    };
    for site in 0..n {
        let left = (site + n - 1) % n;
        let right = (site + 1) % n;
        push(vec![(site, Pauli::X), (right, Pauli::X)], two_body);
        push(vec![(site, Pauli::Y), (right, Pauli::Y)], two_body);
        push(vec![(left, Pauli::X), (site, Pauli::Z), (right, Pauli::Y)], -three_body);
        push(vec![(left, Pauli::Y), (site, Pauli::Z), (right, Pauli::X)], three_body);
        push(vec![(site, Pauli::Z)], field);
    }
    Ok(terms)
}

/// Basis states sharing one value of the total magnetization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MagnetizationSector {
    /// Eigenvalue of `sum_n Z_n`.
    pub magnetization: i32,
    /// Global basis indices in ascending order.
    pub states: Vec<usize>,
}

/// Total magnetization of a basis state: `n - 2 * (number of down spins)`.
pub fn magnetization(n: usize, index: usize) -> i32 {
    n as i32 - 2 * index.count_ones() as i32
}

/// Sparse Hermitian operator in compressed-row form plus its sector partition.
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<Complex64>,
    sectors: Vec<MagnetizationSector>,
    /// `(sector index, position inside sector)` for every basis state.
    locate: Vec<(usize, usize)>,
}

/// Builds the sparse Hamiltonian for `params`.
pub fn build_hamiltonian(params: &ModelParams) -> Result<SparseHamiltonian> {
    params.validate()?;
    if params.n > MAX_SPINS {
        return Err(Error::DimensionOverflow { n: params.n, limit: MAX_SPINS });
    }
    let terms = expand_terms(params)?;
    SparseHamiltonian::from_terms(params.n, &terms)
}

impl SparseHamiltonian {
    /// Assembles `sum_t c_t P_t`. Terms that do not conserve magnetization are
    /// accepted, but then the sector partition no longer block-diagonalizes the
    /// operator and the spectra module will refuse it.
    pub fn from_terms(n: usize, terms: &[PauliTerm]) -> Result<Self> {
        if n == 0 || n > MAX_SPINS {
            return Err(Error::DimensionOverflow { n, limit: MAX_SPINS });
        }
        for t in terms {
            let mut seen = 0usize;
            for &(s, _) in &t.sites {
                if s >= n {
                    return Err(Error::SiteOutOfRange { site: s, n });
                }
                if seen & (1 << s) != 0 {
                    return Err(Error::DuplicateSite(s));
                }
                seen |= 1 << s;
            }
        }

        let dim = 1usize << n;
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut values = Vec::new();
        let mut row: Vec<(usize, Complex64)> = Vec::with_capacity(terms.len());
        row_ptr.push(0);
        for r in 0..dim {
            // <r|P|c> != 0 exactly when P|r> lands on c (Pauli strings are involutions
            // up to phase), and <r|P|c> = conj(<c|P|r>) since P is Hermitian.
            row.clear();
            for t in terms {
                let (c, amp) = t.act_on_basis(r);
                row.push((c, amp.conj() * t.coefficient));
            }
            row.sort_by_key(|&(c, _)| c);
            let start = cols.len();
            for &(c, v) in &row {
                if cols.len() > start && *cols.last().unwrap() == c {
                    *values.last_mut().unwrap() += v;
                } else {
                    cols.push(c);
                    values.push(v);
                }
            }
            // drop entries that cancelled exactly
            let mut w = start;
            for k in start..cols.len() {
                if values[k] != Complex64::new(0.0, 0.0) {
                    cols[w] = cols[k];
                    values[w] = values[k];
                    w += 1;
                }
            }
            cols.truncate(w);
            values.truncate(w);
            row_ptr.push(cols.len());
        }

        let (sectors, locate) = partition_sectors(n);
        let h = Self { n, row_ptr, cols, values, sectors, locate };
        let dev = h.max_hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NonHermitian(dev));
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.row_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn sectors(&self) -> &[MagnetizationSector] {
        &self.sectors
    }

    /// Nonzero entries `(column, value)` of row `r`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    /// Entry `H[r, c]`.
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&c) {
            Ok(k) => self.values[span.start + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// `H v` for a raw amplitude vector.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: v.len() });
        }
        Ok((0..self.dimension())
            .map(|r| self.row(r).map(|(c, h)| h * v[c]).sum())
            .collect())
    }

    /// `H |psi>`.
    pub fn apply_state(&self, psi: &PureState) -> Result<Vec<Complex64>> {
        self.apply(psi.amplitudes())
    }

    /// `<v|H|v>` for a raw vector.
    pub fn expectation(&self, v: &[Complex64]) -> Result<Complex64> {
        let hv = self.apply(v)?;
        Ok(v.iter().zip(&hv).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn trace(&self) -> f64 {
        (0..self.dimension()).map(|r| self.get(r, r).re).sum()
    }

    /// Largest `|H[r,c] - conj(H[c,r])|` over all stored entries.
    pub fn max_hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for r in 0..self.dimension() {
            for (c, v) in self.row(r) {
                dev = dev.max((v - self.get(c, r).conj()).norm());
            }
        }
        dev
    }

    /// Whether every stored entry connects states of equal magnetization.
    pub fn is_sector_diagonal(&self) -> bool {
        (0..self.dimension()).all(|r| self.row(r).all(|(c, _)| self.locate[r].0 == self.locate[c].0))
    }

    /// Sector index and in-sector position of a basis state.
    pub fn locate(&self, index: usize) -> (usize, usize) {
        self.locate[index]
    }

    /// Dense copy of the full matrix.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.dimension();
        let mut m = DMatrix::zeros(dim, dim);
        for r in 0..dim {
            for (c, v) in self.row(r) {
                m[(r, c)] = v;
            }
        }
        m
    }

    /// Dense block of one magnetization sector.
    pub fn sector_block(&self, sector: usize) -> DMatrix<Complex64> {
        let states = &self.sectors[sector].states;
        let mut m = DMatrix::zeros(states.len(), states.len());
        for (i, &r) in states.iter().enumerate() {
            for (c, v) in self.row(r) {
                let (sc, j) = self.locate[c];
                if sc == sector {
                    m[(i, j)] = v;
                }
            }
        }
        m
    }

    /// Matrix-vector product restricted to one sector, in sector-local coordinates.
    pub fn sector_apply(&self, sector: usize, x: &[Complex64], y: &mut [Complex64]) {
        let states = &self.sectors[sector].states;
        for (i, &r) in states.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, v) in self.row(r) {
                let (sc, j) = self.locate[c];
                if sc == sector {
                    acc += v * x[j];
                }
            }
            y[i] = acc;
        }
    }
}

fn partition_sectors(n: usize) -> (Vec<MagnetizationSector>, Vec<(usize, usize)>) {
    let dim = 1usize << n;
    // M runs from -n (all down) to +n in steps of 2; sector k holds k spins up.
    let mut sectors: Vec<MagnetizationSector> = (0..=n)
        .map(|k| MagnetizationSector { magnetization: 2 * k as i32 - n as i32, states: Vec::new() })
        .collect();
    let mut locate = vec![(0, 0); dim];
    for (i, slot) in locate.iter_mut().enumerate() {
        let up = n - i.count_ones() as usize;
        *slot = (up, sectors[up].states.len());
        sectors[up].states.push(i);
    }
    (sectors, locate)
}

/// Cyclic shift of every site by one (`s -> s + 1 mod n`) applied to a basis index.
pub fn translate_basis(n: usize, index: usize) -> usize {
    let top = (index >> (n - 1)) & 1;
    ((index << 1) & ((1 << n) - 1)) | top
}

//! Parameter sweeps over `(J, alpha)` grids at fixed fields.
//!
//! Points are ordered with `h` outermost, then `J`, then `alpha` (row-major
//! `J`-then-`alpha`), independent of how the work was scheduled.
//!
//! For `J > 0` the ground state at `(J, alpha, h)` is read off the sector
//! spectra of `K(alpha)` (see [`ScaledSpectrum`]), so each `alpha` column is
//! diagonalized once and shared by every `(J, h)`. Points with `J <= 0` are
//! solved directly.

mod export;
mod profile;
mod stats;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use export::{export, heatmap_file_name, write_heatmap, write_results_csv, ExportedFiles, RunMetadata};
pub use profile::{pair_profile, PairProfile};
pub use stats::{detect_j_cutoff, JCutoff, SliceStats, Table1, Table1Row, REFERENCE_TABLE};

use crate::error::{Error, Result};
use crate::measures::{MeasureKind, MeasureOptions};
use crate::model::ModelParams;
use crate::monogamy::{CorrelationProfile, MonogamyRecord};
use crate::spectra::{ground_state_for, GroundStateResult, ScaledSpectrum, SectorLabel, SolverOptions};

const H_MATCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub j_min: f64,
    pub j_max: f64,
    pub j_points: usize,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_points: usize,
    pub h_values: Vec<f64>,
    pub measures: Vec<MeasureKind>,
    pub powers: Vec<u32>,
}

impl Default for GridSpec {
    /// `N = 10`, `J in [0.04, 4]` and `alpha in [0.02, 2]` on a 100 x 100 grid,
    /// `h in {0, 0.2, 0.4, 0.9}`, all four measures, powers 1 to 3.
    fn default() -> Self {
        Self {
            n: 10,
            j_min: 0.04,
            j_max: 4.0,
            j_points: 100,
            alpha_min: 0.02,
            alpha_max: 2.0,
            alpha_points: 100,
            h_values: vec![0.0, 0.2, 0.4, 0.9],
            measures: MeasureKind::ALL.to_vec(),
            powers: vec![1, 2, 3],
        }
    }
}

/// `points` evenly spaced values from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![min];
    }
    (0..points).map(|i| min + (max - min) * i as f64 / (points - 1) as f64).collect()
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGrid(msg));
        if self.n < 3 || self.n > crate::model::MAX_SPINS {
            return bad(format!("chain length {} outside 3..={}", self.n, crate::model::MAX_SPINS));
        }
        for (name, lo, hi, pts) in [
            ("J", self.j_min, self.j_max, self.j_points),
            ("alpha", self.alpha_min, self.alpha_max, self.alpha_points),
        ] {
            if pts == 0 {
                return bad(format!("{name} needs at least one point"));
            }
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return bad(format!("{name} range [{lo}, {hi}] is not a finite interval"));
            }
        }
        if self.h_values.is_empty() || self.h_values.iter().any(|h| !h.is_finite()) {
            return bad("h values must be a non-empty list of finite numbers".into());
        }
        for (i, h) in self.h_values.iter().enumerate() {
            if self.h_values[..i].iter().any(|g| (g - h).abs() <= H_MATCH_TOL) {
                return bad(format!("h = {h} listed twice"));
            }
        }
        if self.measures.is_empty() {
            return bad("no measures requested".into());
        }
        for (i, k) in self.measures.iter().enumerate() {
            if self.measures[..i].contains(k) {
                return bad(format!("measure {k} listed twice"));
            }
        }
        if self.powers.is_empty() || self.powers.contains(&0) {
            return bad("powers must be a non-empty list of positive integers".into());
        }
        Ok(())
    }

    pub fn j_values(&self) -> Vec<f64> {
        linspace(self.j_min, self.j_max, self.j_points)
    }

    pub fn alpha_values(&self) -> Vec<f64> {
        linspace(self.alpha_min, self.alpha_max, self.alpha_points)
    }

    /// Points per field value.
    pub fn grid_size(&self) -> usize {
        self.j_points * self.alpha_points
    }

    pub fn total_points(&self) -> usize {
        self.grid_size() * self.h_values.len()
    }

    pub fn h_index(&self, h: f64) -> Option<usize> {
        self.h_values.iter().position(|g| (g - h).abs() <= H_MATCH_TOL)
    }

    pub fn measure_index(&self, kind: MeasureKind) -> Option<usize> {
        self.measures.iter().position(|&k| k == kind)
    }
}

/// Everything besides the grid that determines the numbers of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepSettings {
    pub solver: SolverOptions,
    pub measure: MeasureOptions,
    pub nodal: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SweepOptions {
    pub settings: SweepSettings,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub h: f64,
    pub j: f64,
    pub alpha: f64,
    pub energy: f64,
    pub gap: f64,
    pub degenerate: bool,
    pub sector: SectorLabel,
    /// One profile per requested measure, in the grid's measure order.
    pub profiles: Vec<CorrelationProfile>,
}

impl SweepPoint {
    pub fn params(&self, n: usize) -> ModelParams {
        ModelParams { n, j: self.j, alpha: self.alpha, h: self.h }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: GridSpec,
    pub settings: SweepSettings,
    pub points: Vec<SweepPoint>,
}

/// All points of one field value, row-major in `(J, alpha)`.
#[derive(Debug, Clone, Copy)]
pub struct Slice<'a> {
    pub h: f64,
    pub spec: &'a GridSpec,
    pub points: &'a [SweepPoint],
}

impl<'a> Slice<'a> {
    pub fn at(&self, j_index: usize, alpha_index: usize) -> &'a SweepPoint {
        &self.points[j_index * self.spec.alpha_points + alpha_index]
    }

    pub fn profile(&self, j_index: usize, alpha_index: usize, kind: MeasureKind) -> Result<&'a CorrelationProfile> {
        let m = self.spec.measure_index(kind).ok_or(Error::MissingSlice { h: self.h, kind })?;
        Ok(&self.at(j_index, alpha_index).profiles[m])
    }
}

pub fn run_sweep(spec: &GridSpec, opts: &SweepOptions) -> Result<SweepResult> {
    spec.validate()?;
    let settings = opts.settings;
    if settings.nodal >= spec.n {
        return Err(Error::SiteOutOfRange { site: settings.nodal, n: spec.n });
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = opts.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;

    let js = spec.j_values();
    let alphas = spec.alpha_values();
    let needs_scaled = js.iter().any(|&j| j > 0.0);

    let points = pool.install(|| -> Result<Vec<SweepPoint>> {
        let spectra: Vec<Option<ScaledSpectrum>> = if needs_scaled {
            alphas
                .par_iter()
                .map(|&a| ScaledSpectrum::new(spec.n, a, &settings.solver).map(Some))
                .collect::<Result<_>>()?
        } else {
            vec![None; alphas.len()]
        };
        (0..spec.total_points())
            .into_par_iter()
            .map(|idx| {
                let ai = idx % alphas.len();
                let ji = (idx / alphas.len()) % js.len();
                let hi = idx / spec.grid_size();
                let (h, j, alpha) = (spec.h_values[hi], js[ji], alphas[ai]);
                solve_point(spec, &settings, spectra[ai].as_ref(), h, j, alpha).map_err(|e| {
                    Error::PointFailed { j, alpha, h, source: Box::new(e) }
                })
            })
            .collect()
    })?;
    Ok(SweepResult { spec: spec.clone(), settings, points })
}

fn solve_point(
    spec: &GridSpec,
    settings: &SweepSettings,
    scaled: Option<&ScaledSpectrum>,
    h: f64,
    j: f64,
    alpha: f64,
) -> Result<SweepPoint> {
    let tol = settings.solver.degeneracy_tol;
    let ground: GroundStateResult = match scaled {
        Some(s) if j > 0.0 => s.ground_state(j, h, tol)?,
        _ => ground_state_for(&ModelParams::new(spec.n, j, alpha, h)?, &settings.solver)?,
    };
    let profiles = spec
        .measures
        .iter()
        .map(|&k| CorrelationProfile::compute(&ground.state, k, settings.nodal, &settings.measure))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepPoint {
        h,
        j,
        alpha,
        energy: ground.energy,
        gap: ground.gap,
        degenerate: ground.degenerate,
        sector: ground.sector,
        profiles,
    })
}

impl SweepResult {
    pub fn slice(&self, h: f64) -> Option<Slice<'_>> {
        let hi = self.spec.h_index(h)?;
        let size = self.spec.grid_size();
        Some(Slice { h: self.spec.h_values[hi], spec: &self.spec, points: &self.points[hi * size..(hi + 1) * size] })
    }

    fn slice_for(&self, h: f64, kind: MeasureKind) -> Result<(Slice<'_>, usize)> {
        let m = self.spec.measure_index(kind).ok_or(Error::MissingSlice { h, kind })?;
        let slice = self.slice(h).ok_or(Error::MissingSlice { h, kind })?;
        Ok((slice, m))
    }

    /// Monogamy records in export order: point, then measure, then power.
    pub fn records(&self) -> impl Iterator<Item = MonogamyRecord> + '_ {
        let n = self.spec.n;
        self.points.iter().flat_map(move |p| {
            p.profiles.iter().flat_map(move |prof| {
                self.spec.powers.iter().map(move |&m| prof.record(m).with_origin(p.params(n), p.degenerate))
            })
        })
    }

    /// Percentage of grid points with `delta_Q < -1e-9` (power 1).
    pub fn non_monogamous_percentage(&self, h: f64, kind: MeasureKind) -> Result<f64> {
        let (slice, m) = self.slice_for(h, kind)?;
        let count = slice.points.iter().filter(|p| !crate::monogamy::is_monogamous(p.profiles[m].score(1))).count();
        Ok(100.0 * count as f64 / slice.points.len() as f64)
    }

    /// Largest per-point minimal monogamous power over one field slice; `None`
    /// when some point stays non-monogamous up to `m_max`.
    pub fn minimal_uniform_power(&self, h: f64, kind: MeasureKind, m_max: u32) -> Result<Option<u32>> {
        let (slice, m) = self.slice_for(h, kind)?;
        let mut worst = 1;
        for p in slice.points {
            match p.profiles[m].minimal_monogamous_power(m_max) {
                Some(k) => worst = worst.max(k),
                None => return Ok(None),
            }
        }
        Ok(Some(worst))
    }

    /// [`Self::minimal_uniform_power`] over every field value of the sweep.
    pub fn minimal_uniform_power_all(&self, kind: MeasureKind, m_max: u32) -> Result<Option<u32>> {
        let mut worst = 1;
        for &h in &self.spec.h_values {
            match self.minimal_uniform_power(h, kind, m_max)? {
                Some(k) => worst = worst.max(k),
                None => return Ok(None),
            }
        }
        Ok(Some(worst))
    }

    /// `J_cutoff` of field `h` against field `h_ref` (usually 0).
    pub fn j_cutoff(&self, h: f64, h_ref: f64, kind: MeasureKind, eps: f64) -> Result<JCutoff> {
        let (a, _) = self.slice_for(h, kind)?;
        let (b, _) = self.slice_for(h_ref, kind)?;
        detect_j_cutoff(&a, &b, kind, eps)
    }
}

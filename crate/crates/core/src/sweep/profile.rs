use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::measures::{MeasureKind, MeasureOptions};
use crate::model::ModelParams;
use crate::monogamy::CorrelationProfile;
use crate::spectra::{ground_state_for, SolverOptions};

/// Whole-system and pairwise values along an `alpha` axis at fixed `(J, h)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairProfile {
    pub n: usize,
    pub j: f64,
    pub h: f64,
    pub kind: MeasureKind,
    pub nodal: usize,
    pub alphas: Vec<f64>,
    pub profiles: Vec<CorrelationProfile>,
}

impl PairProfile {
    pub fn whole(&self) -> Vec<f64> {
        self.profiles.iter().map(|p| p.whole).collect()
    }

    /// Curve of the pair at distance `d` (1-based, `1..n`) from the nodal spin.
    pub fn pair(&self, d: usize) -> Vec<f64> {
        self.profiles.iter().map(|p| p.pairwise[d - 1]).collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "# spinshare pair profile: n = {}, J = {:.16e}, h = {:.16e}, measure = {}, nodal = {}",
            self.n, self.j, self.h, self.kind, self.nodal
        )?;
        write!(w, "alpha,whole")?;
        for k in 2..=self.n {
            write!(w, ",pair_{k}")?;
        }
        writeln!(w, ",score")?;
        for (a, p) in self.alphas.iter().zip(&self.profiles) {
            write!(w, "{a:.16e},{:.16e}", p.whole)?;
            for q in &p.pairwise {
                write!(w, ",{q:.16e}")?;
            }
            writeln!(w, ",{:.16e}", p.score(1))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Profiles of the ground states of `base` with `alpha` replaced by each axis value.
pub fn pair_profile(
    base: &ModelParams,
    kind: MeasureKind,
    alphas: &[f64],
    nodal: usize,
    solver: &SolverOptions,
    opts: &MeasureOptions,
) -> Result<PairProfile> {
    let profiles = alphas
        .iter()
        .map(|&alpha| {
            let params = ModelParams::new(base.n, base.j, alpha, base.h)?;
            let g = ground_state_for(&params, solver)?;
            CorrelationProfile::compute(&g.state, kind, nodal, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairProfile { n: base.n, j: base.j, h: base.h, kind, nodal, alphas: alphas.to_vec(), profiles })
}

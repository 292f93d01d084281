//! Monogamy scores `delta_{Q^m} = Q^m(rho_{j:rest}) - sum_{k != j} Q^m(rho_{jk})`
//! for a nodal observer `j`. The power acts on each measure value before
//! summation, not on the score.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{measure_one_to_rest, measure_pair, MeasureKind, MeasureOptions};
use crate::model::ModelParams;
use crate::state::PureState;

/// Scores below this count as non-monogamous.
pub const NON_MONOGAMY_THRESHOLD: f64 = -1e-9;

/// Default largest power tried by [`CorrelationProfile::minimal_monogamous_power`].
pub const DEFAULT_MAX_POWER: u32 = 10;

pub fn is_monogamous(score: f64) -> bool {
    score >= NON_MONOGAMY_THRESHOLD
}

/// Whole-system and pairwise values of one measure around a nodal observer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationProfile {
    pub kind: MeasureKind,
    pub nodal: usize,
    /// `Q(rho_{nodal:rest})`.
    pub whole: f64,
    /// `Q(rho_{nodal,k})` for `k = nodal+1, nodal+2, ...` (cyclically), `n - 1` entries.
    pub pairwise: Vec<f64>,
}

impl CorrelationProfile {
    pub fn compute(state: &PureState, kind: MeasureKind, nodal: usize, opts: &MeasureOptions) -> Result<Self> {
        state.check_site(nodal)?;
        let n = state.n();
        let whole = measure_one_to_rest(state, kind, nodal)?;
        let pairwise = (1..n)
            .map(|d| measure_pair(state, kind, nodal, (nodal + d) % n, opts))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { kind, nodal, whole, pairwise })
    }

    /// `whole^m - sum_k pair_k^m`.
    pub fn score(&self, m: u32) -> f64 {
        let m = m as i32;
        self.whole.powi(m) - self.pairwise.iter().map(|q| q.powi(m)).sum::<f64>()
    }

    /// Smallest `m` in `1..=m_max` whose score is monogamous.
    pub fn minimal_monogamous_power(&self, m_max: u32) -> Option<u32> {
        (1..=m_max).find(|&m| is_monogamous(self.score(m)))
    }

    pub fn record(&self, m: u32) -> MonogamyRecord {
        MonogamyRecord {
            params: None,
            kind: self.kind,
            power: m,
            whole: self.whole,
            pairwise: self.pairwise.clone(),
            score: self.score(m),
            degenerate: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonogamyRecord {
    /// Model point the state came from, when known.
    pub params: Option<ModelParams>,
    pub kind: MeasureKind,
    pub power: u32,
    pub whole: f64,
    pub pairwise: Vec<f64>,
    pub score: f64,
    /// Whether the underlying ground level was degenerate.
    pub degenerate: bool,
}

impl MonogamyRecord {
    pub fn with_origin(mut self, params: ModelParams, degenerate: bool) -> Self {
        self.params = Some(params);
        self.degenerate = degenerate;
        self
    }

    pub fn is_monogamous(&self) -> bool {
        is_monogamous(self.score)
    }
}

pub fn monogamy_score(
    state: &PureState,
    kind: MeasureKind,
    nodal: usize,
    m: u32,
    opts: &MeasureOptions,
) -> Result<MonogamyRecord> {
    if m == 0 {
        return Err(Error::InvalidParams("power m must be at least 1".into()));
    }
    Ok(CorrelationProfile::compute(state, kind, nodal, opts)?.record(m))
}

pub fn minimal_monogamous_power(
    state: &PureState,
    kind: MeasureKind,
    nodal: usize,
    m_max: u32,
    opts: &MeasureOptions,
) -> Result<Option<u32>> {
    if m_max == 0 {
        return Err(Error::InvalidParams("m_max must be at least 1".into()));
    }
    Ok(CorrelationProfile::compute(state, kind, nodal, opts)?.minimal_monogamous_power(m_max))
}

//! Bipartite quantum-correlation measures.
//!
//! Two from the entanglement-separability family ([`concurrence`],
//! [`log_negativity`]) and two information-theoretic ones ([`discord`],
//! [`work_deficit`]). All logarithms are base 2.
//!
//! On a pure `1:rest` cut no optimization is needed: concurrence is
//! `2 sqrt(det rho_1)`, logarithmic negativity follows from the Schmidt
//! coefficients, and both discord and work deficit reduce to the entropy of the
//! single-spin marginal.

mod discord;
mod entanglement;
mod optimizer;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use discord::{
    discord, discord_with, swap_parties, work_deficit, work_deficit_with, OptimizedValue,
    TwoQubitDecomposition,
};
pub use entanglement::{
    concurrence, concurrence_pure_cut, log_negativity, log_negativity_from_schmidt,
    log_negativity_pure_cut,
};
pub use optimizer::{bloch, minimize_measurement, nelder_mead, MeasurementBasis, Minimum, OptimizerSettings, SimplexResult};

use crate::error::{Error, Result};
use crate::reductions::{entropy, reduce, DensityMatrix};
use crate::state::PureState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Concurrence,
    #[serde(rename = "logneg")]
    LogNegativity,
    Discord,
    #[serde(rename = "workdeficit")]
    WorkDeficit,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] =
        [MeasureKind::Concurrence, MeasureKind::LogNegativity, MeasureKind::Discord, MeasureKind::WorkDeficit];

    /// Lower-case token used on the command line and in exported files.
    pub fn token(self) -> &'static str {
        match self {
            MeasureKind::Concurrence => "concurrence",
            MeasureKind::LogNegativity => "logneg",
            MeasureKind::Discord => "discord",
            MeasureKind::WorkDeficit => "workdeficit",
        }
    }

    /// Whether two-qubit values of the measure lie in `[0, 1]` on every cut,
    /// which makes the powered monogamy score monotone in the power.
    pub fn is_unit_bounded(self) -> bool {
        !matches!(self, MeasureKind::LogNegativity)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown measure '{s}'")))
    }
}

/// Which qubit of a pair `(nodal, other)` the discord-type measurement acts on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasuredParty {
    /// The non-nodal spin.
    #[default]
    Other,
    Nodal,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureOptions {
    pub measured_party: MeasuredParty,
    pub optimizer: OptimizerSettings,
}

/// Evaluates `kind` on a two-qubit state whose first factor is the nodal spin.
pub fn measure_two_qubit(rho: &DensityMatrix, kind: MeasureKind, opts: &MeasureOptions) -> Result<f64> {
    let oriented = || -> Result<DensityMatrix> {
        match opts.measured_party {
            MeasuredParty::Other => Ok(rho.clone()),
            MeasuredParty::Nodal => swap_parties(rho),
        }
    };
    match kind {
        MeasureKind::Concurrence => concurrence(rho),
        MeasureKind::LogNegativity => log_negativity(rho, 0),
        MeasureKind::Discord => Ok(discord_with(&oriented()?, &opts.optimizer)?.value),
        MeasureKind::WorkDeficit => Ok(work_deficit_with(&oriented()?, &opts.optimizer)?.value),
    }
}

/// `Q(rho_{nodal, other})` with the nodal spin as the first subsystem.
pub fn measure_pair(
    state: &PureState,
    kind: MeasureKind,
    nodal: usize,
    other: usize,
    opts: &MeasureOptions,
) -> Result<f64> {
    if nodal == other {
        return Err(Error::DuplicateSite(nodal));
    }
    let rho = reduce(state, &[nodal, other])?;
    measure_two_qubit(&rho, kind, opts)
}

/// `Q(rho_{nodal : rest})` for a pure state, through the closed pure-state forms.
pub fn measure_one_to_rest(state: &PureState, kind: MeasureKind, nodal: usize) -> Result<f64> {
    state.check_site(nodal)?;
    match kind {
        MeasureKind::Concurrence => concurrence_pure_cut(state, nodal),
        MeasureKind::LogNegativity => log_negativity_pure_cut(state, &[nodal]),
        MeasureKind::Discord | MeasureKind::WorkDeficit => Ok(entropy(&reduce(state, &[nodal])?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for k in MeasureKind::ALL {
            assert_eq!(k.token().parse::<MeasureKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.token()));
        }
        assert!("entropy".parse::<MeasureKind>().is_err());
    }

    #[test]
    fn product_state_has_no_correlations() {
        let s = PureState::all_up(5).unwrap();
        let opts = MeasureOptions::default();
        for k in MeasureKind::ALL {
            assert!(measure_one_to_rest(&s, k, 0).unwrap().abs() < 1e-12);
            assert!(measure_pair(&s, k, 0, 3, &opts).unwrap().abs() < 1e-9);
        }
        assert!(matches!(measure_pair(&s, MeasureKind::Discord, 2, 2, &opts), Err(Error::DuplicateSite(2))));
    }

    #[test]
    fn w_state_pairs() {
        // W marginals: rho_12 = (1/3)(|00><00| + |01><01| + |10><10| + |01><10| + |10><01|)
        // whose concurrence is 2/3.
        let w = PureState::w(3).unwrap();
        let opts = MeasureOptions::default();
        let c = measure_pair(&w, MeasureKind::Concurrence, 0, 1, &opts).unwrap();
        assert!((c - 2.0 / 3.0).abs() < 1e-12);
    }
}

//! Shared inputs for the benchmarks.

use spinshare::sweep::GridSpec;
use spinshare::{DensityMatrix, MeasureKind, ModelParams, PureState, SolverOptions};

/// Ground state of the ten-spin chain at `J = 1, alpha = 0.5, h = 0`.
pub fn ten_spin_ground_state() -> PureState {
    let params = ModelParams::new(10, 1.0, 0.5, 0.0).expect("valid parameters");
    spinshare::spectra::ground_state_for(&params, &SolverOptions::default())
        .expect("ground state")
        .state
}

/// Nearest-neighbour two-spin marginal of [`ten_spin_ground_state`].
pub fn nearest_neighbour_pair() -> DensityMatrix {
    spinshare::reductions::reduce(&ten_spin_ground_state(), &[0, 1]).expect("reduced state")
}

pub fn small_grid() -> GridSpec {
    GridSpec {
        n: 8,
        j_min: 0.5,
        j_max: 2.0,
        j_points: 4,
        alpha_min: 0.2,
        alpha_max: 2.0,
        alpha_points: 4,
        h_values: vec![0.0, 0.4],
        measures: MeasureKind::ALL.to_vec(),
        powers: vec![1, 2, 3],
    }
}

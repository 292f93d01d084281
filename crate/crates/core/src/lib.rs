//! Exact ground states of the cyclic spin-1/2 chain with nearest-neighbour XX+YY
//! exchange, XZY-YZX three-spin coupling and a transverse field, together with
//! bipartite quantum-correlation measures and their N-party monogamy scores.
//!
//! The pipeline is
//!
//! 1. [`model`]: expand the Hamiltonian into Pauli strings and assemble a sparse,
//!    magnetization-blocked operator;
//! 2. [`spectra`]: diagonalize each magnetization sector and pick the ground state;
//! 3. [`reductions`]: partial traces, Schmidt spectra, entropies, partial transposes;
//! 4. [`measures`]: concurrence, logarithmic negativity, quantum discord and
//!    one-way work deficit;
//! 5. [`monogamy`]: monogamy scores `Q(1:rest) - sum_k Q(1k)` and their integral powers;
//! 6. [`sweep`]: parameter grids, aggregate statistics and file export.

pub mod error;
pub mod measures;
pub mod model;
pub mod monogamy;
pub mod reductions;
pub mod spectra;
pub mod state;
pub mod sweep;

pub use error::{Error, Result};
pub use measures::{MeasureKind, MeasureOptions, MeasuredParty, MeasurementBasis, OptimizerSettings};
pub use model::{ModelParams, Pauli, PauliTerm, SparseHamiltonian};
pub use monogamy::{CorrelationProfile, MonogamyRecord, NON_MONOGAMY_THRESHOLD};
pub use reductions::DensityMatrix;
pub use spectra::{GroundStateResult, SectorLabel, SolverOptions};
pub use state::PureState;
pub use sweep::{GridSpec, SweepOptions, SweepResult, SweepSettings};

pub use num_complex::Complex64;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spinshare::sweep::GridSpec;
use spinshare::{MeasureKind, MeasureOptions, MeasuredParty, ModelParams, SolverOptions};

#[derive(Debug, Parser)]
#[command(
    name = "spinshare",
    version,
    about = "Ground states and monogamy of quantum correlations in a cyclic spin-1/2 chain \
             with two- and three-body interactions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state energy, gap, degeneracy flag and magnetization sector.
    Ground(GroundArgs),
    /// Whole-system and pairwise values of one measure around the nodal spin.
    Measure(PointArgs),
    /// Monogamy score of one measure at a given power.
    Monogamy(MonogamyArgs),
    /// Whole-system and pairwise values along an alpha axis at fixed J and h.
    Profile(ProfileArgs),
    /// Parameter sweep writing results, heatmaps and metadata.
    Sweep(SweepArgs),
    /// Runs a sweep and prints the percentages of non-monogamous ground states.
    Table1(Table1Args),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Number of spins.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Two-body coupling J.
    #[arg(long, allow_negative_numbers = true)]
    pub j: f64,
    /// Three-body coupling alpha.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Transverse field h.
    #[arg(long, allow_negative_numbers = true)]
    pub h: f64,
}

impl ModelArgs {
    pub fn params(&self) -> spinshare::Result<ModelParams> {
        ModelParams::new(self.n, self.j, self.alpha, self.h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartyArg {
    /// Measure the non-nodal spin of each pair.
    Other,
    /// Measure the nodal spin.
    Nodal,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Relative gap below which the ground level is reported as degenerate.
    #[arg(long, default_value_t = 1e-10)]
    pub degeneracy_tol: f64,
}

impl SolverArgs {
    pub fn options(&self) -> SolverOptions {
        SolverOptions::with_tol(self.degeneracy_tol)
    }
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    /// Correlation measure: concurrence, logneg, discord or workdeficit.
    #[arg(long)]
    pub measure: MeasureKind,
    /// Nodal observer site (0-based).
    #[arg(long, default_value_t = 0)]
    pub nodal: usize,
    /// Which spin of each pair the discord/work-deficit measurement acts on.
    #[arg(long, value_enum, default_value_t = PartyArg::Other)]
    pub measured_party: PartyArg,
}

pub fn measure_options(party: PartyArg) -> MeasureOptions {
    MeasureOptions {
        measured_party: match party {
            PartyArg::Other => MeasuredParty::Other,
            PartyArg::Nodal => MeasuredParty::Nodal,
        },
        ..MeasureOptions::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct GroundArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub measure: MeasureArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MonogamyArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Power m applied to every measure value.
    #[arg(long, default_value_t = 1)]
    pub power: u32,
    /// Largest power tried when searching for the minimal monogamous power.
    #[arg(long, default_value_t = 10)]
    pub max_power: u32,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Number of spins.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Two-body coupling J.
    #[arg(long, allow_negative_numbers = true)]
    pub j: f64,
    /// Transverse field h.
    #[arg(long, allow_negative_numbers = true)]
    pub h: f64,
    /// First alpha of the axis.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub alpha_min: f64,
    /// Last alpha of the axis.
    #[arg(long, allow_negative_numbers = true, default_value_t = 3.0)]
    pub alpha_max: f64,
    /// Number of alpha values.
    #[arg(long, default_value_t = 100)]
    pub alpha_points: usize,
    #[command(flatten)]
    pub measure: MeasureArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Number of spins.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Smallest two-body coupling J.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.04)]
    pub j_min: f64,
    /// Largest two-body coupling J.
    #[arg(long, allow_negative_numbers = true, default_value_t = 4.0)]
    pub j_max: f64,
    /// Number of J values.
    #[arg(long, default_value_t = 100)]
    pub j_points: usize,
    /// Smallest three-body coupling alpha.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.02)]
    pub alpha_min: f64,
    /// Largest three-body coupling alpha.
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    pub alpha_max: f64,
    /// Number of alpha values.
    #[arg(long, default_value_t = 100)]
    pub alpha_points: usize,
    /// Comma-separated field values.
    #[arg(long = "h", value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.0, 0.2, 0.4, 0.9])]
    pub h_values: Vec<f64>,
    /// Comma-separated measures.
    #[arg(long, value_delimiter = ',', default_values_t = MeasureKind::ALL)]
    pub measures: Vec<MeasureKind>,
    /// Comma-separated powers m.
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
    pub powers: Vec<u32>,
    /// Nodal observer site (0-based).
    #[arg(long, default_value_t = 0)]
    pub nodal: usize,
    /// Which spin of each pair the discord/work-deficit measurement acts on.
    #[arg(long, value_enum, default_value_t = PartyArg::Other)]
    pub measured_party: PartyArg,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Worker threads; all available cores when omitted.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl GridArgs {
    pub fn spec(&self) -> GridSpec {
        GridSpec {
            n: self.n,
            j_min: self.j_min,
            j_max: self.j_max,
            j_points: self.j_points,
            alpha_min: self.alpha_min,
            alpha_max: self.alpha_max,
            alpha_points: self.alpha_points,
            h_values: self.h_values.clone(),
            measures: self.measures.clone(),
            powers: self.powers.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output directory.
    #[arg(long, env = "SPINSHARE_OUT_DIR", default_value = "spinshare-out")]
    pub out: PathBuf,
    /// Also print the table of non-monogamous percentages.
    #[arg(long)]
    pub table1: bool,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Tolerance on score differences used for the J cutoff estimate.
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
}

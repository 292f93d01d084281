mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;
use spinshare::monogamy::CorrelationProfile;
use spinshare::spectra::ground_state_for;
use spinshare::sweep::{export, linspace, pair_profile, run_sweep, SweepOptions, SweepResult, SweepSettings};
use spinshare::{Error, GridSpec, ModelParams, PureState};

use args::{measure_options, Cli, Command, Format, GridArgs, MonogamyArgs, PointArgs, ProfileArgs};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if is_usage_error(&err) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Errors caused by the inputs rather than by a computation.
fn is_usage_error(err: &anyhow::Error) -> bool {
    matches!(
        err.downcast_ref::<Error>(),
        Some(
            Error::InvalidParams(_)
                | Error::DimensionOverflow { .. }
                | Error::SiteOutOfRange { .. }
                | Error::DuplicateSite(_)
                | Error::InvalidPartition(_)
                | Error::InvalidGrid(_)
        )
    )
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Ground(a) => {
            let params = a.model.params()?;
            let g = ground_state_for(&params, &a.solver.options())?;
            writeln!(out, "energy: {:.12}", g.energy)?;
            writeln!(out, "gap: {:.12}", g.gap)?;
            writeln!(out, "degenerate: {}", g.degenerate)?;
            writeln!(out, "sector: {}", g.sector)?;
        }
        Command::Measure(a) => {
            let (params, profile) = point_profile(&a)?;
            match a.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&profile)?)?,
                Format::Text => {
                    print_header(&mut out, &params, &profile)?;
                    writeln!(out, "whole: {:.12}", profile.whole)?;
                    for (d, q) in profile.pairwise.iter().enumerate() {
                        writeln!(out, "pair {}-{}: {q:.12}", profile.nodal, (profile.nodal + d + 1) % params.n)?;
                    }
                }
            }
        }
        Command::Monogamy(a) => monogamy(&mut out, &a)?,
        Command::Profile(a) => profile(&mut out, &a)?,
        Command::Sweep(a) => {
            let (result, threads, wall) = sweep(&a.grid)?;
            let files = export(&result, &a.out, wall, threads)
                .with_context(|| format!("writing results to {}", a.out.display()))?;
            writeln!(out, "{} points in {wall:.1} s", result.points.len())?;
            writeln!(out, "results: {}", files.results.display())?;
            writeln!(out, "metadata: {}", files.metadata.display())?;
            writeln!(out, "heatmaps: {}", files.heatmaps.len())?;
            if a.table1 {
                write!(out, "{}", result.table1()?)?;
            }
        }
        Command::Table1(a) => {
            if a.eps.is_nan() || a.eps < 0.0 {
                return Err(Error::InvalidParams(format!("eps must be non-negative, got {}", a.eps)).into());
            }
            let (result, _, _) = sweep(&a.grid)?;
            write!(out, "{}", result.table1()?)?;
            print_cutoffs(&mut out, &result, a.eps)?;
        }
    }
    Ok(())
}

fn print_header<W: Write>(out: &mut W, params: &ModelParams, profile: &CorrelationProfile) -> io::Result<()> {
    writeln!(
        out,
        "n = {}, J = {}, alpha = {}, h = {}, measure = {}, nodal = {}",
        params.n, params.j, params.alpha, params.h, profile.kind, profile.nodal
    )
}

fn ground(params: &ModelParams, a: &PointArgs) -> Result<(PureState, bool)> {
    if a.measure.nodal >= params.n {
        return Err(Error::SiteOutOfRange { site: a.measure.nodal, n: params.n }.into());
    }
    let g = ground_state_for(params, &a.solver.options())?;
    Ok((g.state, g.degenerate))
}

fn point_profile(a: &PointArgs) -> Result<(ModelParams, CorrelationProfile)> {
    let params = a.model.params()?;
    let (state, _) = ground(&params, a)?;
    let opts = measure_options(a.measure.measured_party);
    let profile = CorrelationProfile::compute(&state, a.measure.measure, a.measure.nodal, &opts)?;
    Ok((params, profile))
}

fn monogamy<W: Write>(out: &mut W, a: &MonogamyArgs) -> Result<()> {
    if a.power == 0 || a.max_power == 0 {
        return Err(Error::InvalidParams("powers must be at least 1".into()).into());
    }
    let p = &a.point;
    let params = p.model.params()?;
    let (state, degenerate) = ground(&params, p)?;
    let opts = measure_options(p.measure.measured_party);
    let profile = CorrelationProfile::compute(&state, p.measure.measure, p.measure.nodal, &opts)?;
    let record = profile.record(a.power).with_origin(params, degenerate);
    let minimal = profile.minimal_monogamous_power(a.max_power);
    match p.format {
        Format::Json => {
            let value = serde_json::json!({ "record": record, "minimal_monogamous_power": minimal });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Text => {
            print_header(out, &params, &profile)?;
            writeln!(out, "power: {}", record.power)?;
            writeln!(out, "whole: {:.12}", record.whole)?;
            let pairs: Vec<String> = record.pairwise.iter().map(|q| format!("{q:.12}")).collect();
            writeln!(out, "pairwise: {}", pairs.join(" "))?;
            writeln!(out, "score: {:.12}", record.score)?;
            writeln!(out, "monogamous: {}", record.is_monogamous())?;
            writeln!(out, "degenerate: {}", record.degenerate)?;
            match minimal {
                Some(m) => writeln!(out, "minimal monogamous power: {m}")?,
                None => writeln!(out, "minimal monogamous power: none up to {}", a.max_power)?,
            }
        }
    }
    Ok(())
}

fn profile<W: Write>(out: &mut W, a: &ProfileArgs) -> Result<()> {
    let base = ModelParams::new(a.n, a.j, a.alpha_min, a.h)?;
    if a.alpha_points == 0 || !a.alpha_max.is_finite() || a.alpha_min > a.alpha_max {
        return Err(Error::InvalidParams("alpha axis needs at least one point and alpha-min <= alpha-max".into()).into());
    }
    if a.measure.nodal >= a.n {
        return Err(Error::SiteOutOfRange { site: a.measure.nodal, n: a.n }.into());
    }
    let alphas = linspace(a.alpha_min, a.alpha_max, a.alpha_points);
    let opts = measure_options(a.measure.measured_party);
    let p = pair_profile(&base, a.measure.measure, &alphas, a.measure.nodal, &a.solver.options(), &opts)?;
    match &a.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            p.write_csv(BufWriter::new(file))?;
            writeln!(out, "profile: {}", path.display())?;
        }
        None => p.write_csv(out)?,
    }
    Ok(())
}

fn sweep(g: &GridArgs) -> Result<(SweepResult, Option<usize>, f64)> {
    let spec: GridSpec = g.spec();
    spec.validate()?;
    if g.threads == Some(0) {
        return Err(Error::InvalidParams("--threads must be at least 1".into()).into());
    }
    let opts = SweepOptions {
        settings: SweepSettings {
            solver: g.solver.options(),
            measure: measure_options(g.measured_party),
            nodal: g.nodal,
        },
        threads: g.threads,
    };
    let start = Instant::now();
    let result = run_sweep(&spec, &opts)?;
    Ok((result, g.threads, start.elapsed().as_secs_f64()))
}

fn print_cutoffs<W: Write>(out: &mut W, result: &SweepResult, eps: f64) -> Result<()> {
    let spec = &result.spec;
    let Some(&h_ref) = spec.h_values.iter().find(|h| **h == 0.0) else {
        return Ok(());
    };
    writeln!(out, "J cutoff against h = 0 (eps = {eps})")?;
    for &h in spec.h_values.iter().filter(|h| **h != h_ref) {
        for &kind in &spec.measures {
            let c = result.j_cutoff(h, h_ref, kind, eps)?;
            let value = c.aggregate.map_or_else(|| "not reached".to_string(), |v| format!("{v:.4}"));
            writeln!(out, "  h = {h}, {kind}: {value}")?;
        }
    }
    Ok(())
}

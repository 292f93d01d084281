//! Plain-text exports. Every file starts with `#` lines carrying the full
//! configuration, so a run can be regenerated from any one of its outputs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{GridSpec, SweepResult, SweepSettings};
use crate::error::{Error, Result};
use crate::measures::MeasureKind;

#[derive(Serialize)]
struct Config<'a> {
    grid: &'a GridSpec,
    settings: &'a SweepSettings,
}

fn config_line(result: &SweepResult) -> Result<String> {
    Ok(serde_json::to_string(&Config { grid: &result.spec, settings: &result.settings })?)
}

/// Writes one row per `(point, measure, power)` in sweep order.
pub fn write_results_csv<W: Write>(result: &SweepResult, mut w: W) -> Result<()> {
    let n = result.spec.n;
    writeln!(w, "# spinshare sweep results")?;
    writeln!(w, "# config: {}", config_line(result)?)?;
    write!(w, "h,J,alpha,measure,m,whole")?;
    for k in 2..=n {
        write!(w, ",pair_{k}")?;
    }
    writeln!(w, ",score,degenerate")?;
    for p in &result.points {
        for prof in &p.profiles {
            for &m in &result.spec.powers {
                write!(w, "{:.16e},{:.16e},{:.16e},{},{},{:.16e}", p.h, p.j, p.alpha, prof.kind, m, prof.whole)?;
                for q in &prof.pairwise {
                    write!(w, ",{q:.16e}")?;
                }
                writeln!(w, ",{:.16e},{}", prof.score(m), p.degenerate)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn heatmap_file_name(kind: MeasureKind, h: f64) -> String {
    format!("heatmap_{}_h{}.txt", kind.token(), h)
}

/// `m = 1` scores of one field slice: one row per `alpha`, one column per `J`.
pub fn write_heatmap<W: Write>(result: &SweepResult, h: f64, kind: MeasureKind, mut w: W) -> Result<()> {
    let slice = result.slice(h).ok_or(Error::MissingSlice { h, kind })?;
    writeln!(w, "# spinshare monogamy score heatmap")?;
    writeln!(w, "# config: {}", config_line(result)?)?;
    writeln!(w, "# measure: {kind}, power: 1, h: {:.16e}", slice.h)?;
    writeln!(w, "# rows: alpha ascending; columns: J ascending")?;
    let join = |v: Vec<f64>| v.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(" ");
    writeln!(w, "# J: {}", join(result.spec.j_values()))?;
    writeln!(w, "# alpha: {}", join(result.spec.alpha_values()))?;
    for ai in 0..result.spec.alpha_points {
        let row = (0..result.spec.j_points)
            .map(|ji| slice.profile(ji, ai, kind).map(|p| p.score(1)))
            .collect::<Result<Vec<_>>>()?;
        writeln!(w, "{}", join(row))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub grid: GridSpec,
    pub settings: SweepSettings,
    pub code_version: String,
    pub wall_time_seconds: f64,
    pub threads: Option<usize>,
    pub points: usize,
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExportedFiles {
    pub results: PathBuf,
    pub metadata: PathBuf,
    pub heatmaps: Vec<PathBuf>,
}

/// Writes `results.csv`, one heatmap per `(h, measure)` and `metadata.json` into `dir`.
pub fn export(result: &SweepResult, dir: &Path, wall_time_seconds: f64, threads: Option<usize>) -> Result<ExportedFiles> {
    std::fs::create_dir_all(dir)?;
    let results = dir.join("results.csv");
    write_results_csv(result, BufWriter::new(File::create(&results)?))?;

    let mut heatmaps = Vec::new();
    for &h in &result.spec.h_values {
        for &kind in &result.spec.measures {
            let path = dir.join(heatmap_file_name(kind, h));
            write_heatmap(result, h, kind, BufWriter::new(File::create(&path)?))?;
            heatmaps.push(path);
        }
    }

    let name = |p: &PathBuf| p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let metadata = dir.join("metadata.json");
    let meta = RunMetadata {
        grid: result.spec.clone(),
        settings: result.settings,
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_seconds,
        threads,
        points: result.points.len(),
        files: std::iter::once(&results).chain(&heatmaps).map(name).collect(),
    };
    let mut w = BufWriter::new(File::create(&metadata)?);
    serde_json::to_writer_pretty(&mut w, &meta)?;
    writeln!(w)?;
    w.flush()?;
    Ok(ExportedFiles { results, metadata, heatmaps })
}

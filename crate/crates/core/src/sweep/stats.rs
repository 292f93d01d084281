use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GridSpec, Slice, SweepResult};
use crate::error::{Error, Result};
use crate::measures::MeasureKind;
use crate::monogamy::DEFAULT_MAX_POWER;

/// Reference percentages of non-monogamous states at `h = 0, 0.2, 0.4, 0.9`,
/// with the smallest power that makes every state monogamous.
pub const REFERENCE_TABLE: [(MeasureKind, [f64; 4], u32); 4] = [
    (MeasureKind::Concurrence, [0.0, 4.19, 8.72, 19.01], 2),
    (MeasureKind::LogNegativity, [0.0, 0.0, 0.0, 0.0], 1),
    (MeasureKind::Discord, [52.53, 67.27, 81.57, 82.65], 3),
    (MeasureKind::WorkDeficit, [52.53, 67.27, 81.57, 82.65], 3),
];

const REFERENCE_FIELDS: [f64; 4] = [0.0, 0.2, 0.4, 0.9];

fn reference_percent(kind: MeasureKind, h: f64) -> Option<f64> {
    let col = REFERENCE_FIELDS.iter().position(|&g| (g - h).abs() < 1e-12)?;
    REFERENCE_TABLE.iter().find(|r| r.0 == kind).map(|r| r.1[col])
}

fn reference_power(kind: MeasureKind) -> Option<u32> {
    REFERENCE_TABLE.iter().find(|r| r.0 == kind).map(|r| r.2)
}

/// Coupling above which the `m = 1` score at field `h` matches its zero-field value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JCutoff {
    pub kind: MeasureKind,
    pub eps: f64,
    /// `(alpha, cutoff)`; `None` when even the largest grid `J` differs by more than `eps`.
    pub per_alpha: Vec<(f64, Option<f64>)>,
    /// Maximum over `alpha`; `None` if some column never settles.
    pub aggregate: Option<f64>,
}

/// For each `alpha`, the smallest grid `J` such that
/// `|delta(J', alpha; h) - delta(J', alpha; h_ref)| <= eps` for all `J' >= J`.
pub fn detect_j_cutoff(slice_h: &Slice<'_>, slice_ref: &Slice<'_>, kind: MeasureKind, eps: f64) -> Result<JCutoff> {
    let (a, b) = (slice_h.spec, slice_ref.spec);
    if a.j_values() != b.j_values() || a.alpha_values() != b.alpha_values() || a.n != b.n {
        return Err(Error::GridMismatch("slices are sampled on different (J, alpha) grids".into()));
    }
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::InvalidParams(format!("eps must be non-negative, got {eps}")));
    }
    let js = a.j_values();
    let mut per_alpha = Vec::with_capacity(a.alpha_points);
    let mut aggregate = Some(f64::NEG_INFINITY);
    for (ai, &alpha) in a.alpha_values().iter().enumerate() {
        let mut cutoff = None;
        for ji in (0..js.len()).rev() {
            let x = slice_h.profile(ji, ai, kind)?.score(1);
            let y = slice_ref.profile(ji, ai, kind)?.score(1);
            if (x - y).abs() > eps {
                break;
            }
            cutoff = Some(js[ji]);
        }
        aggregate = match (aggregate, cutoff) {
            (Some(acc), Some(c)) => Some(acc.max(c)),
            _ => None,
        };
        per_alpha.push((alpha, cutoff));
    }
    Ok(JCutoff { kind, eps, per_alpha, aggregate })
}

/// Aggregate statistics of one `(h, measure)` slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceStats {
    pub h: f64,
    pub kind: MeasureKind,
    pub non_monogamous_percent: f64,
    pub minimal_uniform_power: Option<u32>,
}

impl SweepResult {
    pub fn stats(&self) -> Result<Vec<SliceStats>> {
        let mut out = Vec::new();
        for &h in &self.spec.h_values {
            for &kind in &self.spec.measures {
                out.push(SliceStats {
                    h,
                    kind,
                    non_monogamous_percent: self.non_monogamous_percentage(h, kind)?,
                    minimal_uniform_power: self.minimal_uniform_power(h, kind, DEFAULT_MAX_POWER)?,
                });
            }
        }
        Ok(out)
    }

    pub fn table1(&self) -> Result<Table1> {
        let mut rows = Vec::new();
        for &kind in &self.spec.measures {
            let percents = self
                .spec
                .h_values
                .iter()
                .map(|&h| Ok((h, self.non_monogamous_percentage(h, kind)?, reference_percent(kind, h))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(Table1Row {
                kind,
                percents,
                minimal_power: self.minimal_uniform_power_all(kind, DEFAULT_MAX_POWER)?,
                reference_power: reference_power(kind),
            });
        }
        Ok(Table1 { grid: self.spec.clone(), rows })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub kind: MeasureKind,
    /// `(h, computed percent, reference percent)`.
    pub percents: Vec<(f64, f64, Option<f64>)>,
    pub minimal_power: Option<u32>,
    pub reference_power: Option<u32>,
}

/// Percentages of non-monogamous ground states per field, stamped with the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1 {
    pub grid: GridSpec,
    pub rows: Vec<Table1Row>,
}

fn fmt_opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl fmt::Display for Table1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.grid;
        writeln!(f, "Percentage of non-monogamous ground states (computed / reference)")?;
        writeln!(
            f,
            "grid: N = {}, J in [{}, {}] x {}, alpha in [{}, {}] x {}, {} states per field",
            g.n,
            g.j_min,
            g.j_max,
            g.j_points,
            g.alpha_min,
            g.alpha_max,
            g.alpha_points,
            g.grid_size()
        )?;
        write!(f, "{:<14}", "measure")?;
        for h in &g.h_values {
            write!(f, "{:>18}", format!("h = {h}"))?;
        }
        writeln!(f, "{:>12}", "m (ref)")?;
        for row in &self.rows {
            write!(f, "{:<14}", row.kind.token())?;
            for (_, pct, reference) in &row.percents {
                let cell = match reference {
                    Some(r) => format!("{pct:.2} / {r:.2}"),
                    None => format!("{pct:.2} / -"),
                };
                write!(f, "{cell:>18}")?;
            }
            writeln!(f, "{:>12}", format!("{} ({})", fmt_opt(row.minimal_power), fmt_opt(row.reference_power)))?;
        }
        Ok(())
    }
}

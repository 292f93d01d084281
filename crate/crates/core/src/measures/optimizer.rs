//! Minimization over projective qubit measurements.
//!
//! A measurement `{(1 + n.sigma)/2, (1 - n.sigma)/2}` is fixed by the Bloch
//! direction `n(theta, phi)`, and `n` and `-n` give the same pair, so the search
//! runs over `theta in [0, pi/2]`, `phi in [0, 2 pi)`. Stage one scans a uniform
//! grid; stage two refines the best grid point with a Nelder-Mead simplex.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    /// Builds a basis from arbitrary angles, folding them into the canonical
    /// half-sphere `theta in [0, pi/2]`, `phi in [0, 2 pi)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let [x, y, z] = bloch(theta, phi);
        let (x, y, z) = if z < 0.0 { (-x, -y, -z) } else { (x, y, z) };
        let theta = z.clamp(-1.0, 1.0).acos();
        let mut phi = y.atan2(x);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        if phi >= 2.0 * PI {
            phi -= 2.0 * PI;
        }
        Self { theta, phi }
    }

    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&theta) || !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidParams(format!(
                "measurement angles out of range: theta = {theta}, phi = {phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    pub fn bloch(&self) -> [f64; 3] {
        bloch(self.theta, self.phi)
    }
}

#[inline]
pub fn bloch(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    pub grid_theta: usize,
    pub grid_phi: usize,
    /// Spread of simplex values at convergence.
    pub ftol: f64,
    /// Simplex extent at convergence.
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self { grid_theta: 32, grid_phi: 64, ftol: 1e-9, xtol: 1e-7, max_iter: 5000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub basis: MeasurementBasis,
    pub value: f64,
    pub evaluations: usize,
}

/// Grid-seeded simplex minimization of `f(n)` over measurement directions.
pub fn minimize_measurement<F>(f: F, settings: &OptimizerSettings) -> Result<Minimum>
where
    F: Fn([f64; 3]) -> f64,
{
    let nt = settings.grid_theta.max(2);
    let np = settings.grid_phi.max(1);
    let dt = FRAC_PI_2 / (nt - 1) as f64;
    let dp = 2.0 * PI / np as f64;

    let phis: Vec<(f64, f64)> = (0..np).map(|j| (j as f64 * dp).sin_cos()).collect();
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..nt {
        let theta = i as f64 * dt;
        let (st, ct) = theta.sin_cos();
        for (j, &(sp, cp)) in phis.iter().enumerate() {
            let v = f([st * cp, st * sp, ct]);
            if v < best.0 {
                best = (v, theta, j as f64 * dp);
            }
        }
    }
    let grid_evals = nt * np;

    let simplex = nelder_mead(
        |x: [f64; 2]| f(bloch(x[0], x[1])),
        [best.1, best.2],
        [dt, dp],
        settings,
    )?;
    let (value, angles) = if simplex.value < best.0 { (simplex.value, simplex.x) } else { (best.0, [best.1, best.2]) };
    Ok(Minimum {
        basis: MeasurementBasis::from_angles(angles[0], angles[1]),
        value,
        evaluations: grid_evals + simplex.evaluations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexResult<const D: usize> {
    pub x: [f64; D],
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Nelder-Mead with standard coefficients (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2); an inside contraction must strictly improve on
/// the worst vertex, otherwise the simplex shrinks. Converged once both the
/// value spread and the simplex extent around the best vertex fall below the
/// tolerances.
pub fn nelder_mead<const D: usize, F>(
    f: F,
    x0: [f64; D],
    step: [f64; D],
    settings: &OptimizerSettings,
) -> Result<SimplexResult<D>>
where
    F: Fn([f64; D]) -> f64,
{
    let mut pts: Vec<([f64; D], f64)> = Vec::with_capacity(D + 1);
    pts.push((x0, f(x0)));
    for k in 0..D {
        let mut x = x0;
        x[k] += step[k];
        pts.push((x, f(x)));
    }
    let mut evaluations = D + 1;

    let combine = |a: &[f64; D], b: &[f64; D], t: f64| -> [f64; D] {
        let mut out = [0.0; D];
        for i in 0..D {
            out[i] = a[i] + t * (b[i] - a[i]);
        }
        out
    };

    for iteration in 0..settings.max_iter {
        pts.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = pts[1..].iter().map(|p| (p.1 - pts[0].1).abs()).fold(0.0, f64::max);
        let extent = pts[1..]
            .iter()
            .flat_map(|p| p.0.iter().zip(&pts[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread <= settings.ftol && extent <= settings.xtol {
            return Ok(SimplexResult { x: pts[0].0, value: pts[0].1, iterations: iteration, evaluations });
        }

        let mut centroid = [0.0; D];
        for p in &pts[..D] {
            for (c, x) in centroid.iter_mut().zip(&p.0) {
                *c += x / D as f64;
            }
        }
        let worst = pts[D];
        let xr = combine(&centroid, &worst.0, -1.0);
        let fr = f(xr);
        evaluations += 1;

        if fr < pts[0].1 {
            let xe = combine(&centroid, &worst.0, -2.0);
            let fe = f(xe);
            evaluations += 1;
            pts[D] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < pts[D - 1].1 {
            pts[D] = (xr, fr);
            continue;
        }
        // outside contraction if the reflection improved on the worst point
        let accepted = if fr < worst.1 {
            let xc = combine(&centroid, &xr, 0.5);
            let fc = f(xc);
            (fc <= fr).then_some((xc, fc))
        } else {
            let xc = combine(&centroid, &worst.0, 0.5);
            let fc = f(xc);
            (fc < worst.1).then_some((xc, fc))
        };
        evaluations += 1;
        if let Some(p) = accepted {
            pts[D] = p;
            continue;
        }
        let best = pts[0].0;
        for p in pts[1..].iter_mut() {
            p.0 = combine(&best, &p.0, 0.5);
            p.1 = f(p.0);
        }
        evaluations += D;
    }
    Err(Error::OptimizerNoConvergence(settings.max_iter))
}

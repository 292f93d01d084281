//! Reference implementations shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use spinshare::{Complex64, DensityMatrix, PureState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_pure(rng: &mut ChaCha8Rng, n: usize) -> PureState {
    let amps = (0..1usize << n).map(|_| gaussian(rng)).collect();
    PureState::from_unnormalized(n, amps).unwrap()
}

/// `G G^dagger / tr` with a `4 x rank` Gaussian `G`.
pub fn random_two_qubit(rng: &mut ChaCha8Rng, rank: usize) -> DensityMatrix {
    let g = DMatrix::from_fn(4, rank, |_, _| gaussian(rng));
    let m = &g * g.adjoint();
    let m = &m / m.trace();
    DensityMatrix::new((&m + m.adjoint()) * Complex64::new(0.5, 0.0), vec![2, 2]).unwrap()
}

fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

pub fn von_neumann(m: &DMatrix<Complex64>) -> f64 {
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .filter(|&&l| l > 1e-15)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Entropy of a 2x2 positive matrix after normalization; also returns its trace.
fn qubit_entropy(a: f64, d: f64, b: Complex64) -> (f64, f64) {
    let tr = a + d;
    if tr <= 1e-300 {
        return (0.0, 0.0);
    }
    let disc = ((a - d) * (a - d) + 4.0 * b.norm_sqr()).sqrt();
    (tr, h2(0.5 * (1.0 + disc / tr)))
}

/// Discord and work deficit with the second qubit measured, minimized by
/// brute force over a `n_theta x n_phi` grid of projector directions.
pub fn brute_force_discord_and_deficit(rho: &DensityMatrix, n_theta: usize, n_phi: usize) -> (f64, f64) {
    let m = rho.matrix();
    let joint = von_neumann(m);
    let rho_b = DMatrix::from_fn(2, 2, |b, bp| m[(b, bp)] + m[(2 + b, 2 + bp)]);
    let s_b = von_neumann(&rho_b);

    let phis: Vec<(f64, f64)> = (0..n_phi).map(|j| (2.0 * PI * j as f64 / n_phi as f64).sin_cos()).collect();
    let mut best_cond = f64::INFINITY;
    let mut best_dephased = f64::INFINITY;
    for i in 0..n_theta {
        let (st, ct) = (FRAC_PI_2 * i as f64 / (n_theta - 1) as f64).sin_cos();
        for &(sp, cp) in &phis {
            let (nx, ny, nz) = (st * cp, st * sp, ct);
            let mut cond = 0.0;
            let mut outcome = 0.0;
            for sign in [1.0, -1.0] {
                // projector (I + sign n.sigma) / 2 on the second qubit
                let p = [
                    [Complex64::new(0.5 * (1.0 + sign * nz), 0.0), Complex64::new(0.5 * sign * nx, -0.5 * sign * ny)],
                    [Complex64::new(0.5 * sign * nx, 0.5 * sign * ny), Complex64::new(0.5 * (1.0 - sign * nz), 0.0)],
                ];
                // sigma_{a a'} = sum_{b b'} rho_{(a b)(a' b')} P_{b' b}
                let block = |a: usize, ap: usize| -> Complex64 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for b in 0..2 {
                        for bp in 0..2 {
                            acc += m[(2 * a + b, 2 * ap + bp)] * p[bp][b];
                        }
                    }
                    acc
                };
                let (prob, s) = qubit_entropy(block(0, 0).re, block(1, 1).re, block(0, 1));
                cond += prob * s;
                if sign > 0.0 {
                    outcome = h2(prob);
                }
            }
            best_cond = best_cond.min(cond);
            best_dephased = best_dephased.min(outcome + cond);
        }
    }
    (s_b - joint + best_cond, best_dephased - joint)
}

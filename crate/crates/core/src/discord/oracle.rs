//! Direct minimisation of `|rho - Σ_k (Π_k ⊗ I) rho (Π_k ⊗ I)|²` over
//! projective measurements on A.
//!
//! The measurement basis is the set of columns of `U = exp(iH)`, with `H`
//! Hermitian and built from `d1²` real parameters. The objective is
//! `|rho|² - Σ_k |⟨ψ_k|rho|ψ_k⟩_A|²`, since dephasing is an orthogonal
//! projection in the Hilbert-Schmidt inner product. Each restart runs a
//! compass search from a random point; restarts run in parallel with seeds
//! derived from their index.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{clamp, DiscordResult};
use crate::bloch::decompose;
use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, DensityMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tol: f64,
    /// Restarts ending within this of the best value count as agreeing.
    pub value_tol: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            restarts: 200,
            max_iters: 2000,
            step_tol: 1e-10,
            value_tol: 1e-8,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub result: DiscordResult,
    /// Columns are the optimal measurement basis.
    pub basis: ComplexMatrix,
    /// False when no restart shrank its step below `step_tol`; the value is
    /// then the best seen.
    pub converged: bool,
    pub converged_restarts: usize,
    pub agreeing_restarts: usize,
}

struct Objective {
    d1: usize,
    d2: usize,
    purity: f64,
    // blocks[a * d1 + b] is the d2 x d2 block <a|rho|b>, row-major.
    blocks: Vec<Vec<Complex64>>,
}

impl Objective {
    fn new(rho: &DensityMatrix) -> Self {
        let (d1, d2) = rho.dims();
        let m = rho.matrix();
        let mut blocks = Vec::with_capacity(d1 * d1);
        for a in 0..d1 {
            for b in 0..d1 {
                let mut blk = Vec::with_capacity(d2 * d2);
                for k in 0..d2 {
                    for l in 0..d2 {
                        blk.push(m.get(a * d2 + k, b * d2 + l));
                    }
                }
                blocks.push(blk);
            }
        }
        Self {
            d1,
            d2,
            purity: rho.purity(),
            blocks,
        }
    }

    fn value(&self, params: &[f64]) -> f64 {
        let u = unitary(self.d1, params);
        self.value_for(&u)
    }

    fn value_for(&self, u: &DMatrix<Complex64>) -> f64 {
        let (d1, n2) = (self.d1, self.d2 * self.d2);
        let mut kept = 0.0;
        let mut blk = vec![Complex64::new(0.0, 0.0); n2];
        for k in 0..d1 {
            blk.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            for a in 0..d1 {
                let ca = u[(a, k)].conj();
                for b in 0..d1 {
                    let w = ca * u[(b, k)];
                    for (acc, z) in blk.iter_mut().zip(&self.blocks[a * d1 + b]) {
                        *acc += w * z;
                    }
                }
            }
            kept += blk.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        self.purity - kept
    }
}

fn hermitian(d: usize, p: &[f64]) -> DMatrix<Complex64> {
    let mut h = DMatrix::zeros(d, d);
    for a in 0..d {
        h[(a, a)] = Complex64::new(p[a], 0.0);
    }
    let mut idx = d;
    for a in 0..d {
        for b in a + 1..d {
            let z = Complex64::new(p[idx], p[idx + 1]);
            h[(a, b)] = z;
            h[(b, a)] = z.conj();
            idx += 2;
        }
    }
    h
}

/// `exp(iH)` by scaling and squaring of a truncated Taylor series.
fn unitary(d: usize, p: &[f64]) -> DMatrix<Complex64> {
    let h = hermitian(d, p);
    let norm = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let a = h.map(|z| z * Complex64::new(0.0, 1.0) / f64::from(2u32.pow(squarings)));
    let mut term = DMatrix::<Complex64>::identity(d, d);
    let mut sum = term.clone();
    for k in 1..=18 {
        term = &term * &a / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

struct Run {
    value: f64,
    params: Vec<f64>,
    converged: bool,
}

fn compass_search(obj: &Objective, mut x: Vec<f64>, cfg: &OracleConfig) -> Run {
    let mut fx = obj.value(&x);
    let mut step = 0.5;
    let mut converged = false;
    for _ in 0..cfg.max_iters {
        let mut best: Option<(f64, usize, f64)> = None;
        for i in 0..x.len() {
            for sign in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + sign * step;
                let f = obj.value(&x);
                x[i] = old;
                if f < best.map_or(fx, |b| b.0) {
                    best = Some((f, i, sign));
                }
            }
        }
        match best {
            Some((f, i, sign)) => {
                x[i] += sign * step;
                fx = f;
            }
            None => {
                step *= 0.5;
                if step < cfg.step_tol {
                    converged = true;
                    break;
                }
            }
        }
    }
    Run {
        value: fx,
        params: x,
        converged,
    }
}

/// Minimal Hilbert-Schmidt distance from `rho` to its dephased versions.
pub fn oracle_gqd(rho: &DensityMatrix, cfg: &OracleConfig) -> Result<OracleResult> {
    if cfg.restarts == 0 {
        return Err(Error::ParamOutOfRange {
            name: "restarts".into(),
            value: 0.0,
            interval: "[1, inf)".into(),
        });
    }
    let obj = Objective::new(rho);
    let n = obj.d1 * obj.d1;
    let runs: Vec<Run> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(r as u64);
            let start: Vec<f64> = (0..n)
                .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            compass_search(&obj, start, cfg)
        })
        .collect();
    // First minimum by index, so the answer does not depend on scheduling.
    let best = runs
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .map(|(_, r)| r)
        .expect("at least one restart");
    let converged_restarts = runs.iter().filter(|r| r.converged).count();
    let agreeing_restarts = runs.iter().filter(|r| r.value - best.value <= cfg.value_tol).count();
    let trip = decompose(rho)?;
    Ok(OracleResult {
        result: DiscordResult {
            value: clamp(best.value)?,
            variant: None,
            spectrum: Vec::new(),
            x_norm_sq: trip.x_norm_sq(),
            t_norm_sq: trip.t_norm_sq(),
        },
        basis: ComplexMatrix::from_dmatrix(unitary(obj.d1, &best.params)),
        converged: converged_restarts > 0,
        converged_restarts,
        agreeing_restarts,
    })
}

/// Objective value for an explicit measurement basis (columns of `u`).
pub fn dephasing_distance(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<f64> {
    if u.rows() != rho.dim_a() || !u.is_square() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim_a(),
            found: u.rows(),
        });
    }
    Ok(Objective::new(rho).value_for(u.as_dmatrix()))
}

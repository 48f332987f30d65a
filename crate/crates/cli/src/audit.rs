//! Numerical audit of the analytic discord formulas against the oracle.

use geodiscord::discord::{gqd, hs_eigen_bound, oracle_gqd, OracleConfig, Variant};
use geodiscord::states::random_state;
use geodiscord::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub dims: (usize, usize),
    pub samples: usize,
    pub seed: u64,
    pub restarts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub index: usize,
    pub seed: u64,
    pub rank: usize,
    pub analytic_a_side: f64,
    /// Absent when `d1 != d2`.
    pub analytic_b_side: Option<f64>,
    pub oracle: f64,
    pub hs_eigen_bound: f64,
    pub converged: bool,
    pub agreeing_restarts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub max_diff_a_side: f64,
    pub max_diff_b_side: Option<f64>,
    pub max_diff_hs_eigen_bound: f64,
    /// True when `hs_eigen_bound <= oracle` held on every sample.
    pub eigen_bound_below_oracle: bool,
    /// The variant with the smaller maximum discrepancy.
    pub selected_variant: Variant,
    pub max_diff_selected: f64,
    pub unconverged: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub config: AuditConfig,
    pub rows: Vec<AuditRow>,
    pub summary: AuditSummary,
}

fn sample(cfg: &AuditConfig, index: usize) -> Result<AuditRow> {
    let (d1, d2) = cfg.dims;
    let seed = cfg.seed.wrapping_add(index as u64);
    // cycle through every rank so pure and mixed states both appear
    let rank = 1 + index % (d1 * d2);
    let rho = random_state(d1, d2, rank, seed)?;
    let oracle = oracle_gqd(&rho, &OracleConfig::default().with_restarts(cfg.restarts).with_seed(seed))?;
    let analytic_b_side = match gqd(&rho, Variant::BSide) {
        Ok(r) => Some(r.value),
        Err(Error::VariantUnavailable { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(AuditRow {
        index,
        seed,
        rank,
        analytic_a_side: gqd(&rho, Variant::ASide)?.value,
        analytic_b_side,
        oracle: oracle.result.value,
        hs_eigen_bound: hs_eigen_bound(&rho)?,
        converged: oracle.converged,
        agreeing_restarts: oracle.agreeing_restarts,
    })
}

fn max_diff(rows: &[AuditRow], f: impl Fn(&AuditRow) -> Option<f64>) -> Option<f64> {
    rows.iter()
        .map(|r| f(r).map(|v| (v - r.oracle).abs()))
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))
}

pub fn run_audit(cfg: &AuditConfig) -> Result<AuditReport> {
    if cfg.samples == 0 {
        return Err(Error::ParamOutOfRange {
            name: "samples".into(),
            value: 0.0,
            interval: "[1, inf)".into(),
        });
    }
    let rows: Vec<AuditRow> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| sample(cfg, i))
        .collect::<Result<_>>()?;
    let a = max_diff(&rows, |r| Some(r.analytic_a_side)).unwrap_or(0.0);
    let b = max_diff(&rows, |r| r.analytic_b_side);
    let (selected_variant, max_diff_selected) = match b {
        Some(b) if b < a => (Variant::BSide, b),
        _ => (Variant::ASide, a),
    };
    let summary = AuditSummary {
        max_diff_a_side: a,
        max_diff_b_side: b,
        max_diff_hs_eigen_bound: max_diff(&rows, |r| Some(r.hs_eigen_bound)).unwrap_or(0.0),
        eigen_bound_below_oracle: rows.iter().all(|r| r.hs_eigen_bound <= r.oracle + 1e-9),
        selected_variant,
        max_diff_selected,
        unconverged: rows.iter().filter(|r| !r.converged).map(|r| r.index).collect(),
    };
    Ok(AuditReport {
        config: cfg.clone(),
        rows,
        summary,
    })
}

use std::fmt;
use std::str::FromStr;

use geodiscord::discord::{gqd, oracle_gqd, DiscordResult, OracleConfig, Variant};
use geodiscord::qkd::DiscordEngine;
use geodiscord::{DensityMatrix, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EngineKind {
    #[default]
    Analytic,
    Oracle,
}

impl FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "analytic" => Ok(EngineKind::Analytic),
            "oracle" => Ok(EngineKind::Oracle),
            _ => Err(format!("unknown engine '{s}' (expected analytic or oracle)")),
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Analytic => "analytic",
            EngineKind::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleSummary {
    pub converged: bool,
    pub converged_restarts: usize,
    pub agreeing_restarts: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineOpts {
    pub kind: EngineKind,
    pub variant: Variant,
    pub oracle: OracleConfig,
}

impl Default for EngineOpts {
    fn default() -> Self {
        Self {
            kind: EngineKind::Analytic,
            variant: Variant::ASide,
            oracle: OracleConfig::default(),
        }
    }
}

impl EngineOpts {
    pub fn evaluate(&self, rho: &DensityMatrix) -> Result<(DiscordResult, Option<OracleSummary>)> {
        match self.kind {
            EngineKind::Analytic => Ok((gqd(rho, self.variant)?, None)),
            EngineKind::Oracle => {
                let r = oracle_gqd(rho, &self.oracle)?;
                let summary = OracleSummary {
                    converged: r.converged,
                    converged_restarts: r.converged_restarts,
                    agreeing_restarts: r.agreeing_restarts,
                };
                Ok((r.result, Some(summary)))
            }
        }
    }

    pub fn discord_engine(&self) -> DiscordEngine {
        match self.kind {
            EngineKind::Analytic => DiscordEngine::Analytic(self.variant),
            EngineKind::Oracle => DiscordEngine::Oracle(self.oracle.clone()),
        }
    }
}

//! Subcommand implementations. Each returns the text destined for stdout.

use std::path::Path;

use geodiscord::bloch::basis;
use geodiscord::discord::{DiscordResult, OracleConfig, Variant};
use geodiscord::entanglement::{classify, negativity, pt_spectrum, EntanglementReport, PptClass};
use geodiscord::qkd::{key_rate_lower_bound, key_rate_unchecked, KeyRateReport};
use geodiscord::states::{catalog, expected_discord, family_info};
use serde::Serialize;

use crate::args::*;
use crate::audit::{run_audit, AuditConfig};
use crate::config::{resolve_seed, split_list, Config};
use crate::engine::{EngineKind, EngineOpts, OracleSummary};
use crate::error::{CliError, CliResult};
use crate::output::to_json;
use crate::source::{parse_dims, parse_params, ShieldSource, StateSource};
use crate::sweep::{run_sweep, Format, GridAxis, Quantity, SweepSpec};

fn parse_with<T: std::str::FromStr<Err = String>>(v: Option<String>) -> CliResult<Option<T>> {
    v.map(|s| s.parse().map_err(CliError::Usage)).transpose()
}

/// Parameters from the file, overridden key by key by the flags.
fn merged_params(flags: &[String], cfg: &Config) -> CliResult<geodiscord::states::Params> {
    let mut p = parse_params(&cfg.list("param"))?;
    p.extend(parse_params(flags)?);
    Ok(p)
}

pub fn state_source(a: &StateArgs, cfg: &Config) -> CliResult<StateSource> {
    let family = cfg.pick(a.family.clone(), "family")?;
    let file = cfg.pick(a.file.clone(), "file")?;
    let dims = parse_dims(&cfg.pick_list(&a.dims, "dims"))?;
    match (family, file) {
        (Some(_), Some(_)) => Err(CliError::usage("give either a family or a file, not both")),
        (Some(name), None) => Ok(StateSource::Family {
            name,
            params: merged_params(&a.params, cfg)?,
        }),
        (None, Some(path)) => Ok(StateSource::File { path, dims }),
        (None, None) => Err(CliError::usage("no state given: use --family or --file")),
    }
}

pub fn engine_opts(e: &EngineArgs, cfg: &Config) -> CliResult<EngineOpts> {
    let kind: EngineKind = parse_with(cfg.pick(e.engine.clone(), "engine")?)?.unwrap_or_default();
    let variant: Variant = parse_with(cfg.pick(e.variant.clone(), "variant")?)?.unwrap_or_default();
    let mut oracle = OracleConfig::default().with_seed(resolve_seed(e.seed, cfg)?);
    if let Some(r) = cfg.pick(e.restarts, "restarts")? {
        oracle = oracle.with_restarts(r);
    }
    Ok(EngineOpts { kind, variant, oracle })
}

#[derive(Serialize)]
struct DiscordOutput {
    #[serde(flatten)]
    result: DiscordResult,
    engine: String,
    dims: (usize, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    /// Closed-form value for catalog families that have one.
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleSummary>,
}

pub fn cmd_discord(a: &DiscordArgs, cfg: &Config) -> CliResult<String> {
    let src = state_source(&a.state, cfg)?;
    let engine = engine_opts(&a.engine, cfg)?;
    let rho = src.load()?;
    let (result, oracle) = engine.evaluate(&rho)?;
    let expected = match src.family() {
        Some((name, params)) => expected_discord(name, params)?,
        None => None,
    };
    to_json(&DiscordOutput {
        result,
        engine: engine.kind.to_string(),
        dims: rho.dims(),
        family: src.family().map(|(n, _)| n.to_string()),
        expected,
        oracle,
    })
}

#[derive(Serialize)]
struct NegativityOutput {
    #[serde(flatten)]
    report: EntanglementReport,
    dims: (usize, usize),
    pt_spectrum: Vec<f64>,
}

pub fn cmd_negativity(a: &StateArgs, cfg: &Config) -> CliResult<String> {
    let rho = state_source(a, cfg)?.load()?;
    to_json(&NegativityOutput {
        report: negativity(&rho)?,
        dims: rho.dims(),
        pt_spectrum: pt_spectrum(&rho)?,
    })
}

#[derive(Serialize)]
struct ClassifyOutput {
    class: PptClass,
    min_pt_eigenvalue: f64,
    dims: (usize, usize),
}

pub fn cmd_classify(a: &StateArgs, cfg: &Config) -> CliResult<String> {
    let rho = state_source(a, cfg)?.load()?;
    to_json(&ClassifyOutput {
        class: classify(&rho)?,
        min_pt_eigenvalue: pt_spectrum(&rho)?.last().copied().unwrap_or(0.0),
        dims: rho.dims(),
    })
}

#[derive(Serialize)]
struct KeyrateOutput {
    #[serde(flatten)]
    report: KeyRateReport,
    d1_sq: f64,
    d2_sq: f64,
}

pub fn cmd_keyrate(a: &KeyrateArgs, cfg: &Config) -> CliResult<String> {
    let family = cfg.pick(a.family.clone(), "family")?;
    let files: Vec<std::path::PathBuf> = if a.files.is_empty() {
        cfg.list("files").into_iter().map(Into::into).collect()
    } else {
        a.files.clone()
    };
    let src = match (family, files.is_empty()) {
        (Some(_), false) => return Err(CliError::usage("give either a family or files, not both")),
        (Some(name), true) => ShieldSource::Family {
            name,
            params: merged_params(&a.params, cfg)?,
        },
        (None, false) => ShieldSource::Files {
            paths: files,
            dim: cfg.pick(a.dim, "dim")?,
        },
        (None, true) => return Err(CliError::usage("no shield given: use --family or --files")),
    };
    let engine = engine_opts(&a.engine, cfg)?.discord_engine();
    let shield = src.load()?;
    let allow = a.allow_o4_violation || cfg.pick::<bool>(None, "allow_o4_violation")?.unwrap_or(false);
    let report = if allow {
        key_rate_unchecked(&shield, &engine)?
    } else {
        key_rate_lower_bound(&shield, &engine)?
    };
    to_json(&KeyrateOutput {
        d1_sq: report.d1_term * report.d1_term,
        d2_sq: report.d2_term * report.d2_term,
        report,
    })
}

pub fn sweep_spec(a: &SweepArgs, cfg: &Config) -> CliResult<SweepSpec> {
    let family = cfg
        .pick(a.family.clone(), "family")?
        .ok_or_else(|| CliError::usage("sweep needs --family"))?;
    let grid = cfg
        .pick_list(&a.grid, "grid")
        .iter()
        .map(|g| g.parse::<GridAxis>().map_err(CliError::Usage))
        .collect::<CliResult<Vec<_>>>()?;
    let quantities = match cfg.pick(a.quantities.clone(), "quantities")? {
        Some(q) => split_list(&q)
            .iter()
            .map(|s| s.parse::<Quantity>().map_err(CliError::Usage))
            .collect::<CliResult<Vec<_>>>()?,
        None => vec![Quantity::Discord],
    };
    Ok(SweepSpec {
        family,
        fixed: merged_params(&a.params, cfg)?,
        grid,
        quantities,
        engine: engine_opts(&a.engine, cfg)?,
        output: cfg.pick(a.output.clone(), "output")?,
        format: parse_with::<Format>(cfg.pick(a.format.clone(), "format")?)?.unwrap_or_default(),
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs the sweep and writes the table; a table with failed rows is still
/// written before the error is returned.
pub fn cmd_sweep(a: &SweepArgs, cfg: &Config) -> CliResult<String> {
    let spec = sweep_spec(a, cfg)?;
    let table = run_sweep(&spec)?;
    let text = table.render(spec.format)?;
    let out = match &spec.output {
        Some(path) => {
            write_file(path, &text)?;
            String::new()
        }
        None => text,
    };
    table.status(out)
}

pub fn cmd_catalog(a: &CatalogArgs, cfg: &Config) -> CliResult<String> {
    match cfg.pick(a.family.clone(), "family")? {
        Some(name) => to_json(&family_info(&name)?),
        None => to_json(&catalog()),
    }
}

pub fn cmd_audit(a: &AuditArgs, cfg: &Config) -> CliResult<String> {
    let dims = parse_dims(&cfg.pick_list(&a.dims, "dims"))?.unwrap_or((2, 2));
    let audit = AuditConfig {
        dims,
        samples: cfg.pick(a.samples, "samples")?.unwrap_or(100),
        seed: resolve_seed(a.seed, cfg)?,
        restarts: cfg.pick(a.restarts, "restarts")?.unwrap_or(OracleConfig::default().restarts),
    };
    let report = run_audit(&audit)?;
    match cfg.pick(a.output.clone(), "output")? {
        Some(path) => {
            write_file(&path, &(to_json(&report)? + "\n"))?;
            to_json(&report.summary)
        }
        None => to_json(&report),
    }
}

pub fn cmd_basis_dump(a: &BasisArgs, cfg: &Config) -> CliResult<String> {
    let d = cfg
        .pick(a.dim, "dim")?
        .ok_or_else(|| CliError::usage("basis-dump needs --dim"))?;
    to_json(&*basis(d)?)
}

/// Dispatches a parsed command line, loading `--config` first.
pub fn run(cli: &Cli) -> CliResult<String> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match &cli.command {
        Command::Discord(a) => cmd_discord(a, &cfg),
        Command::Negativity(a) => cmd_negativity(a, &cfg),
        Command::Classify(a) => cmd_classify(a, &cfg),
        Command::Keyrate(a) => cmd_keyrate(a, &cfg),
        Command::Sweep(a) => cmd_sweep(a, &cfg),
        Command::Catalog(a) => cmd_catalog(a, &cfg),
        Command::Audit(a) => cmd_audit(a, &cfg),
        Command::BasisDump(a) => cmd_basis_dump(a, &cfg),
    }
}

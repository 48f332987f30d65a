//! Parameter sweeps over catalog families.
//!
//! State families produce one column per requested quantity. Shield families
//! and the `kd_bound` pseudo-family produce the fixed key-rate columns
//! `param1,param2,d1_sq,d2_sq,kd_bound,o4,feasibility`.

use std::path::PathBuf;
use std::str::FromStr;

use geodiscord::entanglement::{classify, negativity, PptClass};
use geodiscord::qkd::{bound_from_terms, feasibility_interval, key_rate_unchecked};
use geodiscord::states::{build_family, build_shield, family_info, FamilyKind, ParamSpec, Params};
use geodiscord::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::EngineOpts;
use crate::error::{core_exit_code, CliError, CliResult};
use crate::output::{csv_field, fmt_num};

/// Name of the pseudo-family that evaluates the key-rate bound directly
/// from `d1_sq` and `d2_sq`.
pub const KD_BOUND_FAMILY: &str = "kd_bound";

const QKD_COLUMNS: [&str; 5] = ["d1_sq", "d2_sq", "kd_bound", "o4", "feasibility"];

#[derive(Clone, Debug, PartialEq)]
pub struct GridAxis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    /// Number of grid points, endpoints included.
    pub steps: usize,
}

impl GridAxis {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let n = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / n
                }
            })
            .collect()
    }
}

impl FromStr for GridAxis {
    type Err = String;

    /// `name=start:stop:steps`
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("grid '{s}' is not of the form name=start:stop:steps");
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').map(str::trim).collect();
        let [start, stop, steps] = parts.as_slice() else {
            return Err(bad());
        };
        Ok(GridAxis {
            name: name.trim().to_string(),
            start: start.parse().map_err(|_| bad())?,
            stop: stop.parse().map_err(|_| bad())?,
            steps: steps.parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Discord,
    Negativity,
    KdBound,
    Classification,
}

impl Quantity {
    pub fn column(self) -> &'static str {
        match self {
            Quantity::Discord => "discord",
            Quantity::Negativity => "negativity",
            Quantity::KdBound => "kd_bound",
            Quantity::Classification => "classification",
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "discord" => Ok(Quantity::Discord),
            "negativity" => Ok(Quantity::Negativity),
            "kd_bound" => Ok(Quantity::KdBound),
            "classification" => Ok(Quantity::Classification),
            _ => Err(format!("unknown quantity '{s}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected csv or json)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub family: String,
    /// Parameters held fixed across the grid.
    pub fixed: Params,
    pub grid: Vec<GridAxis>,
    pub quantities: Vec<Quantity>,
    pub engine: EngineOpts,
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    State,
    Shield,
    Bound,
}

fn bound_params() -> Vec<ParamSpec> {
    ["d1_sq", "d2_sq"]
        .into_iter()
        .map(|name| ParamSpec {
            name,
            lower: 0.0,
            upper: 1.0,
            lower_open: false,
            upper_open: false,
            default: None,
        })
        .collect()
}

impl SweepSpec {
    fn target(&self) -> CliResult<(Target, Vec<ParamSpec>)> {
        if self.family == KD_BOUND_FAMILY {
            return Ok((Target::Bound, bound_params()));
        }
        let info = family_info(&self.family)?;
        let t = match info.kind {
            FamilyKind::State => Target::State,
            FamilyKind::Shield => Target::Shield,
        };
        Ok((t, info.params))
    }

    pub fn validate(&self) -> CliResult<()> {
        let (target, params) = self.target()?;
        if self.grid.is_empty() || self.grid.len() > 2 {
            return Err(CliError::usage(format!("a sweep needs one or two grid axes, got {}", self.grid.len())));
        }
        for axis in &self.grid {
            if axis.steps == 0 {
                return Err(CliError::usage(format!("grid {}: steps must be at least 1", axis.name)));
            }
            if axis.start > axis.stop {
                return Err(CliError::usage(format!("grid {}: start exceeds stop", axis.name)));
            }
            let spec = params
                .iter()
                .find(|p| p.name == axis.name)
                .ok_or_else(|| Error::UnexpectedParam(axis.name.clone()))?;
            for v in [axis.start, axis.stop] {
                if !spec.contains(v) {
                    return Err(Error::ParamOutOfRange {
                        name: axis.name.clone(),
                        value: v,
                        interval: spec.interval(),
                    }
                    .into());
                }
            }
            if self.fixed.contains_key(&axis.name) {
                return Err(CliError::usage(format!("{} is both fixed and swept", axis.name)));
            }
        }
        if self.grid.len() == 2 && self.grid[0].name == self.grid[1].name {
            return Err(CliError::usage("the two grid axes must differ"));
        }
        if target == Target::State {
            if self.quantities.is_empty() {
                return Err(CliError::usage("no quantities requested"));
            }
            if self.quantities.contains(&Quantity::KdBound) {
                return Err(CliError::usage("kd_bound is only available for shield families"));
            }
        }
        Ok(())
    }

    pub fn columns(&self) -> CliResult<Vec<String>> {
        let (target, _) = self.target()?;
        let mut cols: Vec<String> = match (target, self.grid.len()) {
            (Target::State, 1) => vec!["param".into()],
            _ => vec!["param1".into(), "param2".into()],
        };
        match target {
            Target::State => cols.extend(self.quantities.iter().map(|q| q.column().to_string())),
            _ => cols.extend(QKD_COLUMNS.iter().map(|c| c.to_string())),
        }
        Ok(cols)
    }

    fn points(&self) -> Vec<Vec<f64>> {
        let first = self.grid[0].points();
        match self.grid.get(1) {
            None => first.into_iter().map(|v| vec![v]).collect(),
            Some(second) => {
                let second = second.points();
                first
                    .iter()
                    .flat_map(|&a| second.iter().map(move |&b| vec![a, b]))
                    .collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Text(s) => csv_field(s),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// One entry per row; `None` for rows that succeeded.
    #[serde(skip)]
    pub errors: Vec<Option<Error>>,
}

impl SweepTable {
    pub fn failed(&self) -> usize {
        self.errors.iter().filter(|e| e.is_some()).count()
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64()).collect())
    }

    fn with_error_column(&self) -> (Vec<String>, Vec<Vec<Cell>>) {
        let mut cols = self.columns.clone();
        let mut rows = self.rows.clone();
        if self.failed() > 0 {
            cols.push("error".into());
            for (row, err) in rows.iter_mut().zip(&self.errors) {
                row.push(err.as_ref().map_or(Cell::Empty, |e| Cell::Text(e.to_string())));
            }
        }
        (cols, rows)
    }

    pub fn to_csv(&self) -> String {
        let (cols, rows) = self.with_error_column();
        let mut out = cols.join(",");
        out.push('\n');
        for row in rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> CliResult<String> {
        #[derive(Serialize)]
        struct Wire {
            columns: Vec<String>,
            rows: Vec<Vec<Cell>>,
        }
        let (columns, rows) = self.with_error_column();
        crate::output::to_json(&Wire { columns, rows })
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Csv => Ok(self.to_csv()),
            Format::Json => self.to_json(),
        }
    }

    /// `output` unchanged, or `RowsFailed` carrying it and the exit code of
    /// the first failing row.
    pub fn status(&self, output: String) -> CliResult<String> {
        match self.errors.iter().flatten().next() {
            None => Ok(output),
            Some(e) => Err(CliError::RowsFailed {
                failed: self.failed(),
                total: self.rows.len(),
                code: core_exit_code(e),
                output,
            }),
        }
    }
}

fn state_row(spec: &SweepSpec, params: &Params) -> Result<Vec<Cell>, Error> {
    let rho = build_family(&spec.family, params)?;
    spec.quantities
        .iter()
        .map(|q| {
            Ok(match q {
                Quantity::Discord => Cell::Num(spec.engine.evaluate(&rho)?.0.value),
                Quantity::Negativity => Cell::Num(negativity(&rho)?.negativity),
                Quantity::Classification => Cell::Text(
                    match classify(&rho)? {
                        PptClass::Ppt => "PPT",
                        PptClass::Npt => "NPT",
                    }
                    .into(),
                ),
                Quantity::KdBound => unreachable!("rejected by validate"),
            })
        })
        .collect()
}

fn qkd_row(spec: &SweepSpec, target: Target, params: &Params) -> Result<Vec<Cell>, Error> {
    match target {
        Target::Bound => {
            let get = |k: &str| params.get(k).copied().ok_or_else(|| Error::MissingParam(k.into()));
            let (d1_sq, d2_sq) = (get("d1_sq")?, get("d2_sq")?);
            let (t1, t2) = (d1_sq.sqrt(), d2_sq.sqrt());
            Ok(vec![
                Cell::Num(d1_sq),
                Cell::Num(d2_sq),
                Cell::Num(bound_from_terms(t1, t2)),
                Cell::Empty,
                Cell::Text(format!("{:?}", feasibility_interval(t1.min(t2))?)),
            ])
        }
        _ => {
            let shield = build_shield(&spec.family, params)?;
            let r = key_rate_unchecked(&shield, &spec.engine.discord_engine())?;
            Ok(vec![
                Cell::Num(r.d1_term * r.d1_term),
                Cell::Num(r.d2_term * r.d2_term),
                Cell::Num(r.kd_lower_bound),
                Cell::Bool(r.o4_satisfied),
                Cell::Text(format!("{:?}", r.feasibility)),
            ])
        }
    }
}

/// Evaluates every grid point in parallel; rows come back in grid order.
pub fn run_sweep(spec: &SweepSpec) -> CliResult<SweepTable> {
    spec.validate()?;
    let (target, _) = spec.target()?;
    let columns = spec.columns()?;
    let leading = if target == Target::State { spec.grid.len() } else { 2 };
    let width = columns.len() - leading;
    let results: Vec<(Vec<Cell>, Option<Error>)> = spec
        .points()
        .par_iter()
        .map(|point| {
            let mut params = spec.fixed.clone();
            for (axis, v) in spec.grid.iter().zip(point) {
                params.insert(axis.name.clone(), *v);
            }
            let mut row: Vec<Cell> = point.iter().map(|&v| Cell::Num(v)).collect();
            if target != Target::State && point.len() == 1 {
                row.push(Cell::Empty);
            }
            let values = match target {
                Target::State => state_row(spec, &params),
                _ => qkd_row(spec, target, &params),
            };
            match values {
                Ok(v) => {
                    row.extend(v);
                    (row, None)
                }
                Err(e) => {
                    row.extend(std::iter::repeat_n(Cell::Empty, width));
                    (row, Some(e))
                }
            }
        })
        .collect();
    let (rows, errors) = results.into_iter().unzip();
    Ok(SweepTable { columns, rows, errors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: &str, grid: &[&str], quantities: &[Quantity]) -> SweepSpec {
        SweepSpec {
            family: family.into(),
            fixed: Params::new(),
            grid: grid.iter().map(|g| g.parse().unwrap()).collect(),
            quantities: quantities.to_vec(),
            engine: EngineOpts::default(),
            output: None,
            format: Format::Csv,
        }
    }

    #[test]
    fn grid_parsing_and_points() {
        let g: GridAxis = "beta=0:1:5".parse().unwrap();
        assert_eq!(g.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let one: GridAxis = "beta=0.3:0.3:1".parse().unwrap();
        assert_eq!(one.points(), vec![0.3]);
        assert!("beta=0:1".parse::<GridAxis>().is_err());
        assert!("beta".parse::<GridAxis>().is_err());
    }

    #[test]
    fn validation() {
        assert!(spec("isotropic", &["beta=0:1:0"], &[Quantity::Discord]).validate().is_err());
        assert!(spec("isotropic", &["beta=1:0:3"], &[Quantity::Discord]).validate().is_err());
        assert!(spec("isotropic", &["beta=0:2:3"], &[Quantity::Discord]).validate().is_err());
        assert!(spec("isotropic", &["gamma=0:1:3"], &[Quantity::Discord]).validate().is_err());
        assert!(spec("isotropic", &["beta=0:1:3"], &[]).validate().is_err());
        assert!(spec("isotropic", &["beta=0:1:3"], &[Quantity::KdBound]).validate().is_err());
        assert!(spec("rho_c", &["c=0:0.5:3"], &[Quantity::Discord]).validate().is_err());
        let err = spec("nope", &["x=0:1:2"], &[Quantity::Discord]).validate().unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_UNKNOWN_FAMILY);
    }

    #[test]
    fn state_sweep_values() {
        let t = run_sweep(&spec("isotropic", &["beta=0:1:3"], &[Quantity::Discord, Quantity::Classification])).unwrap();
        assert_eq!(t.columns, vec!["param", "discord", "classification"]);
        let d = t.column("discord").unwrap();
        assert!((d[2].unwrap() - 32.0 / 243.0).abs() < 1e-12);
        assert_eq!(t.rows[0][2], Cell::Text("PPT".into()));
        assert_eq!(t.rows[2][2], Cell::Text("NPT".into()));
        assert!(!t.to_csv().contains("error"));
    }

    #[test]
    fn qkd_header_and_bound_pseudo_family() {
        let mut s = spec(KD_BOUND_FAMILY, &["d2_sq=0.125:0.163627:4"], &[]);
        s.fixed.insert("d1_sq".into(), 0.0275614);
        let t = run_sweep(&s).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("param1,param2,d1_sq,d2_sq,kd_bound,o4,feasibility\n"));
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.rows[0][1], Cell::Empty);
    }

    #[test]
    fn failed_rows_get_an_error_column() {
        let t = run_sweep(&spec("qkd_ex1", &["q=0.1:0.2:2", "r=0.1:0.1:1"], &[])).unwrap();
        assert_eq!(t.failed(), 2);
        assert!(t.to_csv().lines().next().unwrap().ends_with(",error"));
        assert_eq!(t.status(String::new()).unwrap_err().exit_code(), crate::error::EXIT_VALIDATION);
        assert_eq!(t.rows[0].len(), t.columns.len());
    }
}

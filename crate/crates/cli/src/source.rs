//! Where states and shields come from: the catalog or matrix files.

use std::path::{Path, PathBuf};

use geodiscord::qkd::ShieldQuadruple;
use geodiscord::states::{build_family, build_shield, family_info, FamilyKind, Params};
use geodiscord::{ComplexMatrix, DensityMatrix, Error};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub enum StateSource {
    Family { name: String, params: Params },
    File { path: PathBuf, dims: Option<(usize, usize)> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum ShieldSource {
    Family { name: String, params: Params },
    Files { paths: Vec<PathBuf>, dim: Option<usize> },
}

/// `k=v` pairs into a parameter map; later pairs win.
pub fn parse_params(pairs: &[String]) -> CliResult<Params> {
    let mut out = Params::new();
    for p in pairs {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("parameter '{p}' is not of the form name=value")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("parameter {k}: '{v}' is not a number")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

pub fn parse_dims(v: &[String]) -> CliResult<Option<(usize, usize)>> {
    let nums: Vec<usize> = v
        .iter()
        .map(|s| s.parse().map_err(|_| CliError::usage(format!("dimension '{s}' is not an integer"))))
        .collect::<CliResult<_>>()?;
    match nums.as_slice() {
        [] => Ok(None),
        [a, b] => Ok(Some((*a, *b))),
        _ => Err(CliError::usage("--dims takes exactly two values")),
    }
}

pub fn read_matrix(path: &Path) -> CliResult<ComplexMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn square_root(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

fn infer_dims(m: &ComplexMatrix, dims: Option<(usize, usize)>) -> CliResult<(usize, usize)> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() }.into());
    }
    if let Some(d) = dims {
        return Ok(d);
    }
    square_root(m.rows())
        .map(|d| (d, d))
        .ok_or_else(|| CliError::Dimension(format!("cannot split a {0}x{0} matrix into d x d; pass --dims", m.rows())))
}

impl StateSource {
    pub fn load(&self) -> CliResult<DensityMatrix> {
        match self {
            StateSource::Family { name, params } => Ok(build_family(name, params)?),
            StateSource::File { path, dims } => {
                let m = read_matrix(path)?;
                let (d1, d2) = infer_dims(&m, *dims)?;
                Ok(DensityMatrix::validate(m, d1, d2)?)
            }
        }
    }

    pub fn family(&self) -> Option<(&str, &Params)> {
        match self {
            StateSource::Family { name, params } => Some((name, params)),
            StateSource::File { .. } => None,
        }
    }
}

impl ShieldSource {
    pub fn load(&self) -> CliResult<ShieldQuadruple> {
        match self {
            ShieldSource::Family { name, params } => {
                if family_info(name)?.kind != FamilyKind::Shield {
                    return Err(CliError::usage(format!("{name} is a state family, not a shield")));
                }
                Ok(build_shield(name, params)?)
            }
            ShieldSource::Files { paths, dim } => {
                if paths.len() != 4 {
                    return Err(CliError::usage(format!("expected 4 shield files, got {}", paths.len())));
                }
                let mats: Vec<ComplexMatrix> = paths.iter().map(|p| read_matrix(p)).collect::<CliResult<_>>()?;
                let d = match dim {
                    Some(d) => *d,
                    None => infer_dims(&mats[0], None)?.0,
                };
                let [a, b, c, e]: [ComplexMatrix; 4] = mats.try_into().expect("length checked above");
                Ok(ShieldQuadruple::new([a, b, c, e], d)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parse() {
        let p = parse_params(&["beta=0.3".into(), "beta = 0.4".into()]).unwrap();
        assert_eq!(p["beta"], 0.4);
        assert!(parse_params(&["beta".into()]).is_err());
        assert!(parse_params(&["beta=x".into()]).is_err());
    }

    #[test]
    fn dims_parse() {
        assert_eq!(parse_dims(&["3".into(), "2".into()]).unwrap(), Some((3, 2)));
        assert_eq!(parse_dims(&[]).unwrap(), None);
        assert!(parse_dims(&["3".into()]).is_err());
    }

    #[test]
    fn dims_inferred_from_square_size() {
        let m = ComplexMatrix::identity(9);
        assert_eq!(infer_dims(&m, None).unwrap(), (3, 3));
        assert!(infer_dims(&ComplexMatrix::identity(6), None).is_err());
        assert_eq!(infer_dims(&ComplexMatrix::identity(6), Some((2, 3))).unwrap(), (2, 3));
    }
}

//! Geometric quantum discord.
//!
//! The analytic routines evaluate the eigenvalue formula on the Bloch triplet
//! of [`crate::bloch`]: subtract the largest `d1 - 1` eigenvalues of a
//! weighted `x xᵀ + T Tᵀ` from the matching weighted norms. [`oracle`]
//! minimises the Hilbert-Schmidt distance to the measured state directly and
//! shares no code with the formulas.

mod classical;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::bloch::{decompose, BlochTriplet};
use crate::error::{Error, Result};
use crate::matcore::{symmetric_eigenvalues, DensityMatrix};

pub use classical::{
    closest_classical_params, closest_classical_params_for_basis, measurement_basis, measurement_vectors,
    ClassicalStateParams,
};
pub use oracle::{oracle_gqd, OracleConfig, OracleResult};

/// Slightly negative values from rounding are clamped to zero; anything
/// below this is reported as an error.
pub const CLAMP_TOL: f64 = 1e-9;

/// Which Gram matrix of the correlation matrix enters `M`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `T Tᵀ`, acting on the measured side.
    #[default]
    #[serde(rename = "A_side")]
    ASide,
    /// `Tᵀ T`; only defined for `d1 = d2`.
    #[serde(rename = "B_side")]
    BSide,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::ASide => "A_side",
            Variant::BSide => "B_side",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A_side" | "a" | "A" => Ok(Variant::ASide),
            "B_side" | "b" | "B" => Ok(Variant::BSide),
            other => Err(format!("unknown variant '{other}' (expected A_side or B_side)")),
        }
    }
}

/// The symmetric matrix whose top eigenvalues enter the formula.
#[derive(Clone, Debug, PartialEq)]
pub struct MMatrix {
    pub variant: Variant,
    pub matrix: DMatrix<f64>,
}

impl MMatrix {
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        symmetric_eigenvalues(&self.matrix)
    }
}

/// Outcome of a discord computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscordResult {
    pub value: f64,
    /// `None` for the oracle.
    pub variant: Option<Variant>,
    /// Eigenvalues of `M`, descending; empty for the oracle.
    pub spectrum: Vec<f64>,
    pub x_norm_sq: f64,
    pub t_norm_sq: f64,
}

fn gram(trip: &BlochTriplet, variant: Variant) -> Result<DMatrix<f64>> {
    match variant {
        Variant::ASide => Ok(&trip.t * trip.t.transpose()),
        Variant::BSide => {
            if trip.dim_a != trip.dim_b {
                return Err(Error::VariantUnavailable {
                    d1: trip.dim_a,
                    d2: trip.dim_b,
                });
            }
            Ok(trip.t.transpose() * &trip.t)
        }
    }
}

/// `(2/(d1² d2)) x xᵀ + (4/(d1² d2²)) G` with `G = T Tᵀ` or `Tᵀ T`.
pub fn m_matrix(trip: &BlochTriplet, variant: Variant) -> Result<MMatrix> {
    let (cx, ct) = coefficients(trip.dim_a, trip.dim_b);
    let g = gram(trip, variant)?;
    Ok(MMatrix {
        variant,
        matrix: &trip.x * trip.x.transpose() * cx + g * ct,
    })
}

/// `3 x xᵀ + 2 G` for two qutrits. Its eigenvalues are `81/2` times those of
/// [`m_matrix`].
pub fn m_matrix_3x3(trip: &BlochTriplet, variant: Variant) -> Result<MMatrix> {
    require_dims(trip.dim_a, trip.dim_b, 3, 3)?;
    let g = gram(trip, variant)?;
    Ok(MMatrix {
        variant,
        matrix: &trip.x * trip.x.transpose() * 3.0 + g * 2.0,
    })
}

fn coefficients(d1: usize, d2: usize) -> (f64, f64) {
    let (d1, d2) = (d1 as f64, d2 as f64);
    (2.0 / (d1 * d1 * d2), 4.0 / (d1 * d1 * d2 * d2))
}

fn require_dims(d1: usize, d2: usize, e1: usize, e2: usize) -> Result<()> {
    if (d1, d2) != (e1, e2) {
        return Err(Error::WrongDimension {
            expected_a: e1,
            expected_b: e2,
            found_a: d1,
            found_b: d2,
        });
    }
    Ok(())
}

pub(crate) fn clamp(raw: f64) -> Result<f64> {
    if raw < -CLAMP_TOL {
        return Err(Error::Inconsistent(format!("discord evaluated to {raw:.3e}")));
    }
    Ok(if raw > 0.0 { raw } else { 0.0 })
}

fn top_sum(spectrum: &[f64], k: usize) -> f64 {
    spectrum.iter().take(k).sum()
}

/// Two-qubit discord `(|x|² + |T|² - λ_max(x xᵀ + T Tᵀ)) / 4`.
pub fn gqd_two_qubit(rho: &DensityMatrix) -> Result<DiscordResult> {
    require_dims(rho.dim_a(), rho.dim_b(), 2, 2)?;
    let trip = decompose(rho)?;
    let m = &trip.x * trip.x.transpose() + &trip.t * trip.t.transpose();
    let spectrum = symmetric_eigenvalues(&m)?;
    let (xs, ts) = (trip.x_norm_sq(), trip.t_norm_sq());
    Ok(DiscordResult {
        value: clamp(0.25 * (xs + ts - spectrum[0]))?,
        variant: Some(Variant::ASide),
        spectrum,
        x_norm_sq: xs,
        t_norm_sq: ts,
    })
}

/// Two-qutrit discord `(2/81)[3|x|² + 2|T|² - λ1 - λ2]` with `λ1 ≥ λ2` the top
/// eigenvalues of `3 x xᵀ + 2 T Tᵀ`.
pub fn gqd_3x3(rho: &DensityMatrix) -> Result<DiscordResult> {
    gqd_3x3_variant(rho, Variant::ASide)
}

/// [`gqd_3x3`] with a choice of Gram matrix.
pub fn gqd_3x3_variant(rho: &DensityMatrix, variant: Variant) -> Result<DiscordResult> {
    require_dims(rho.dim_a(), rho.dim_b(), 3, 3)?;
    let trip = decompose(rho)?;
    let spectrum = m_matrix_3x3(&trip, variant)?.eigenvalues()?;
    let (xs, ts) = (trip.x_norm_sq(), trip.t_norm_sq());
    let raw = 2.0 / 81.0 * (3.0 * xs + 2.0 * ts - top_sum(&spectrum, 2));
    Ok(DiscordResult {
        value: clamp(raw)?,
        variant: Some(variant),
        spectrum,
        x_norm_sq: xs,
        t_norm_sq: ts,
    })
}

/// Discord of a `d1 x d2` state from the `d1 - 1` largest eigenvalues of
/// [`m_matrix`].
pub fn gqd_general(rho: &DensityMatrix, variant: Variant) -> Result<DiscordResult> {
    gqd_general_triplet(&decompose(rho)?, variant)
}

/// [`gqd_general`] on a precomputed triplet.
pub fn gqd_general_triplet(trip: &BlochTriplet, variant: Variant) -> Result<DiscordResult> {
    let (cx, ct) = coefficients(trip.dim_a, trip.dim_b);
    let spectrum = m_matrix(trip, variant)?.eigenvalues()?;
    let (xs, ts) = (trip.x_norm_sq(), trip.t_norm_sq());
    let raw = cx * xs + ct * ts - top_sum(&spectrum, trip.dim_a - 1);
    Ok(DiscordResult {
        value: clamp(raw)?,
        variant: Some(variant),
        spectrum,
        x_norm_sq: xs,
        t_norm_sq: ts,
    })
}

/// Dispatches to the dimension-specific formula where one exists.
pub fn gqd(rho: &DensityMatrix, variant: Variant) -> Result<DiscordResult> {
    match (rho.dims(), variant) {
        ((2, 2), Variant::ASide) => gqd_two_qubit(rho),
        ((3, 3), _) => gqd_3x3_variant(rho, variant),
        _ => gqd_general(rho, variant),
    }
}

/// Lower bound on the minimal Hilbert-Schmidt distance to a
/// classical-quantum state:
/// `|x|²/(2 d2) + |T|²/4` minus the `d1 - 1` largest eigenvalues of
/// `x xᵀ/(2 d2) + T Tᵀ/4`. Exact for `d1 = 2`; for larger `d1` the top
/// eigenvectors need not come from a measurement basis.
pub fn hs_eigen_bound(rho: &DensityMatrix) -> Result<f64> {
    let trip = decompose(rho)?;
    let d2 = trip.dim_b as f64;
    let m = &trip.x * trip.x.transpose() / (2.0 * d2) + &trip.t * trip.t.transpose() / 4.0;
    let spectrum = symmetric_eigenvalues(&m)?;
    clamp(trip.x_norm_sq() / (2.0 * d2) + trip.t_norm_sq() / 4.0 - top_sum(&spectrum, trip.dim_a - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::ComplexMatrix;
    use crate::states::{build_family, Params};
    use approx::assert_abs_diff_eq;

    fn werner(p: f64) -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = [s, 0.0, 0.0, s].map(|r| num_complex::Complex64::new(r, 0.0));
        let m = &ComplexMatrix::projector(&v).scale(p) + &ComplexMatrix::identity(4).scale((1.0 - p) / 4.0);
        DensityMatrix::validate(m, 2, 2).unwrap()
    }

    fn family(name: &str, kv: &[(&str, f64)]) -> DensityMatrix {
        let p: Params = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        build_family(name, &p).unwrap()
    }

    #[test]
    fn werner_half_is_one_eighth() {
        assert_abs_diff_eq!(gqd_two_qubit(&werner(0.5)).unwrap().value, 0.125, epsilon = 1e-14);
        for p in [0.0, 0.3, 1.0] {
            assert_abs_diff_eq!(gqd_two_qubit(&werner(p)).unwrap().value, p * p / 2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn maximally_mixed_is_zero_in_every_dimension() {
        for (d1, d2) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 4), (2, 5)] {
            let rho = DensityMatrix::maximally_mixed(d1, d2).unwrap();
            assert_eq!(gqd_general(&rho, Variant::ASide).unwrap().value, 0.0);
            let m = m_matrix(&decompose(&rho).unwrap(), Variant::ASide).unwrap();
            assert!(m.matrix.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn isotropic_closed_form() {
        for beta in [-0.125, 0.1, 1.0 / 3.0, 0.5, 1.0] {
            let rho = family("isotropic", &[("beta", beta)]);
            let want = 32.0 / 243.0 * beta * beta;
            assert_abs_diff_eq!(gqd_3x3(&rho).unwrap().value, want, epsilon = 1e-12);
            assert_abs_diff_eq!(gqd_general(&rho, Variant::ASide).unwrap().value, want, epsilon = 1e-12);
            let trip = decompose(&rho).unwrap();
            let a = m_matrix_3x3(&trip, Variant::ASide).unwrap().eigenvalues().unwrap();
            let b = m_matrix_3x3(&trip, Variant::BSide).unwrap().eigenvalues().unwrap();
            for (u, v) in a.iter().zip(&b) {
                assert_abs_diff_eq!(u, v, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn alpha_family_spectrum() {
        for alpha in [2.0, 2.7, 3.4, 4.5] {
            let trip = decompose(&family("alpha", &[("alpha", alpha)])).unwrap();
            let ev = m_matrix_3x3(&trip, Variant::ASide).unwrap().eigenvalues().unwrap();
            let other = 8.0 / 441.0 * (19.0 + 3.0 * (alpha - 5.0) * alpha);
            let mut want = vec![32.0 / 441.0; 6];
            want.extend([other, other]);
            want.sort_by(|a, b| b.total_cmp(a));
            for (u, v) in ev.iter().zip(&want) {
                assert_abs_diff_eq!(u, v, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn diagonal_and_cons_states() {
        let diag = family("diagonal", &[("a00", 0.3), ("a12", 0.1), ("a21", 0.25)]);
        assert_eq!(gqd_3x3(&diag).unwrap().value, 0.0);
        let cons3 = family("cons3", &[]);
        let want = 16.0 * (23.0 - 3.0 * 5f64.sqrt()) / 29403.0;
        assert_abs_diff_eq!(gqd_3x3(&cons3).unwrap().value, want, epsilon = 1e-12);
        let cons4 = family("cons4", &[]);
        assert_abs_diff_eq!(gqd_general(&cons4, Variant::ASide).unwrap().value, 3.0 / 64.0, epsilon = 1e-12);
    }

    #[test]
    fn general_matches_3x3() {
        for name in ["alpha", "rho_a", "rho1_gamma"] {
            let info = crate::states::family_info(name).unwrap();
            let p = &info.params[0];
            let mid = 0.5 * (p.lower + p.upper);
            let rho = family(name, &[(p.name, mid)]);
            for v in [Variant::ASide, Variant::BSide] {
                let a = gqd_3x3_variant(&rho, v).unwrap().value;
                let b = gqd_general(&rho, v).unwrap().value;
                assert_abs_diff_eq!(a, b, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn variant_errors() {
        let rho = DensityMatrix::maximally_mixed(2, 3).unwrap();
        assert!(matches!(gqd_general(&rho, Variant::BSide), Err(Error::VariantUnavailable { .. })));
        assert!(matches!(gqd_3x3(&rho), Err(Error::WrongDimension { .. })));
        assert!(matches!(gqd_two_qubit(&rho), Err(Error::WrongDimension { .. })));
        assert!(gqd_general(&rho, Variant::ASide).is_ok());
    }

    #[test]
    fn clamping() {
        assert_eq!(clamp(-5e-10).unwrap(), 0.0);
        assert!(clamp(-2e-9).is_err());
        assert_eq!(clamp(0.25).unwrap(), 0.25);
    }

    #[test]
    fn json_shape() {
        let r = gqd_two_qubit(&werner(0.5)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["value", "variant", "spectrum", "x_norm_sq", "t_norm_sq"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["variant"], "A_side");
    }

    #[test]
    fn eigen_bound_is_exact_for_qubits() {
        for p in [0.2, 0.7] {
            let rho = werner(p);
            assert_abs_diff_eq!(hs_eigen_bound(&rho).unwrap(), gqd_two_qubit(&rho).unwrap().value, epsilon = 1e-14);
        }
    }
}

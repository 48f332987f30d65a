//! Negativity and the PPT test.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discord::{gqd, Variant};
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, trace_norm, DensityMatrix, Subsystem, PSD_FLOOR};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub negativity: f64,
    pub min_pt_eigenvalue: f64,
    pub negative_pt_eigenvalues: Vec<f64>,
    pub ppt: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PptClass {
    Ppt,
    Npt,
}

/// Eigenvalues of `rho^{T_B}`, descending.
pub fn pt_spectrum(rho: &DensityMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues(&rho.partial_transpose(Subsystem::B))
}

/// `N = (2/(d-1)) Σ |λ_i|` over the eigenvalues of `rho^{T_B}` below the PSD
/// floor. Only defined for `d x d` states.
pub fn negativity(rho: &DensityMatrix) -> Result<EntanglementReport> {
    let (d1, d2) = rho.dims();
    if d1 != d2 {
        return Err(Error::UnequalDims { d1, d2 });
    }
    let spectrum = pt_spectrum(rho)?;
    let negative: Vec<f64> = spectrum.iter().copied().filter(|&l| l < PSD_FLOOR).collect();
    let sum = negative.iter().fold(0.0, |acc, l| acc + l.abs());
    Ok(EntanglementReport {
        negativity: 2.0 * sum / (d1 as f64 - 1.0),
        min_pt_eigenvalue: spectrum.last().copied().unwrap_or(0.0),
        ppt: negative.is_empty(),
        negative_pt_eigenvalues: negative,
    })
}

/// `(|rho^{T_B}|_1 - 1)/(d - 1)`, the trace-norm form of [`negativity`].
pub fn negativity_trace_norm(rho: &DensityMatrix) -> Result<f64> {
    let (d1, d2) = rho.dims();
    if d1 != d2 {
        return Err(Error::UnequalDims { d1, d2 });
    }
    Ok((trace_norm(&rho.partial_transpose(Subsystem::B))? - 1.0) / (d1 as f64 - 1.0))
}

/// NPT iff the smallest eigenvalue of `rho^{T_B}` lies below the PSD floor.
pub fn classify(rho: &DensityMatrix) -> Result<PptClass> {
    let min = pt_spectrum(rho)?.last().copied().unwrap_or(0.0);
    Ok(if min < PSD_FLOOR { PptClass::Npt } else { PptClass::Ppt })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub param: f64,
    pub discord: f64,
    pub negativity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    /// Grid point with the smallest `|discord - negativity|`, and that gap.
    pub closest: Option<(f64, f64)>,
    /// Sign changes of `discord - negativity`, linearly interpolated.
    pub crossings: Vec<f64>,
}

impl ComparisonTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,discord,negativity\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                crate::matcore::round_sig(r.param, 12),
                crate::matcore::round_sig(r.discord, 12),
                crate::matcore::round_sig(r.negativity, 12)
            ));
        }
        out
    }
}

/// Discord (default variant) and negativity over a parameter grid.
pub fn compare_discord_negativity<F>(family: F, grid: &[f64]) -> Result<ComparisonTable>
where
    F: Fn(f64) -> Result<DensityMatrix> + Sync,
{
    let rows = grid
        .par_iter()
        .map(|&param| {
            let rho = family(param)?;
            Ok(ComparisonRow {
                param,
                discord: gqd(&rho, Variant::ASide)?.value,
                negativity: negativity(&rho)?.negativity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let closest = rows
        .iter()
        .map(|r| (r.param, (r.discord - r.negativity).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1));
    let mut crossings = Vec::new();
    for w in rows.windows(2) {
        let g0 = w[0].discord - w[0].negativity;
        let g1 = w[1].discord - w[1].negativity;
        if g0 == 0.0 {
            crossings.push(w[0].param);
        } else if g0 * g1 < 0.0 {
            crossings.push(w[0].param + (w[1].param - w[0].param) * g0 / (g0 - g1));
        }
    }
    if let Some(last) = rows.last() {
        if rows.len() > 1 && last.discord == last.negativity {
            crossings.push(last.param);
        }
    }
    Ok(ComparisonTable {
        rows,
        closest,
        crossings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::ComplexMatrix;
    use crate::states::{build_family, random_separable, random_state, Params};
    use approx::assert_abs_diff_eq;

    fn fam(name: &str, key: &str, v: f64) -> DensityMatrix {
        let p: Params = [(key.to_string(), v)].into_iter().collect();
        build_family(name, &p).unwrap()
    }

    #[test]
    fn product_and_mixed_are_ppt() {
        let rho = DensityMatrix::maximally_mixed(3, 3).unwrap();
        assert_eq!(classify(&rho).unwrap(), PptClass::Ppt);
        let r = negativity(&rho).unwrap();
        assert_eq!(r.negativity, 0.0);
        assert!(r.ppt);
    }

    #[test]
    fn alpha_at_five() {
        let r = negativity(&fam("alpha", "alpha", 5.0)).unwrap();
        let want = (41f64.sqrt() - 5.0) / 14.0;
        assert_abs_diff_eq!(r.negativity, want, epsilon = 1e-12);
        assert_eq!(r.negative_pt_eigenvalues.len(), 3);
        for l in &r.negative_pt_eigenvalues {
            assert_abs_diff_eq!(*l, (5.0 - 41f64.sqrt()) / 42.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn isotropic_eigenvalue_and_multiplicity() {
        let r = negativity(&fam("isotropic", "beta", 0.5)).unwrap();
        assert_eq!(r.negative_pt_eigenvalues.len(), 3);
        assert_abs_diff_eq!(r.min_pt_eigenvalue, (1.0 - 4.0 * 0.5) / 9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.negativity, (4.0 * 0.5 - 1.0) / 3.0, epsilon = 1e-13);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&fam("rho_c", "c", 0.5)).unwrap(), PptClass::Ppt);
        assert_eq!(classify(&fam("isotropic", "beta", 0.5)).unwrap(), PptClass::Npt);
    }

    #[test]
    fn unequal_dims() {
        let rho = DensityMatrix::maximally_mixed(2, 3).unwrap();
        assert!(matches!(negativity(&rho), Err(Error::UnequalDims { d1: 2, d2: 3 })));
        assert_eq!(pt_spectrum(&rho).unwrap().len(), 6);
        assert_eq!(classify(&rho).unwrap(), PptClass::Ppt);
    }

    #[test]
    fn trace_norm_form_agrees() {
        for seed in 0..200u64 {
            let d = 2 + (seed % 3) as usize;
            let rank = 1 + (seed as usize % (d * d));
            let rho = random_state(d, d, rank, seed).unwrap();
            let a = negativity(&rho).unwrap().negativity;
            let b = negativity_trace_norm(&rho).unwrap();
            assert!((a - b).abs() <= 1e-9, "seed {seed}: {a} vs {b}");
        }
    }

    #[test]
    fn separable_mixtures_are_ppt() {
        for seed in 0..100u64 {
            let d = 2 + (seed % 2) as usize;
            let rho = random_separable(d, d, 1 + (seed as usize % 9), seed).unwrap();
            let r = negativity(&rho).unwrap();
            assert!(r.ppt, "seed {seed}");
            assert_eq!(r.negativity, 0.0);
        }
    }

    #[test]
    fn local_unitary_invariance() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(4);
        for seed in 0..20u64 {
            let rho = random_state(3, 3, 2, seed).unwrap();
            let ua = crate::states::haar_unitary(3, &mut rng);
            let ub = crate::states::haar_unitary(3, &mut rng);
            let rot = rho.local_unitary(&ua, &ub).unwrap();
            let a = negativity(&rho).unwrap().negativity;
            let b = negativity(&rot).unwrap().negativity;
            assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn comparison_crossing_for_alpha() {
        let grid: Vec<f64> = (1..=100).map(|i| 4.0 + i as f64 / 100.0).collect();
        let t = compare_discord_negativity(
            |a| {
                let p: Params = [("alpha".to_string(), a)].into_iter().collect();
                build_family("alpha", &p)
            },
            &grid,
        )
        .unwrap();
        assert_eq!(t.crossings.len(), 1);
        assert!((t.crossings[0] - 4.12).abs() < 0.01);
        assert!(t.to_csv().starts_with("param,discord,negativity\n"));
    }

    #[test]
    fn pt_of_hermitian_stays_hermitian() {
        let rho = random_state(3, 3, 4, 8).unwrap();
        let pt: ComplexMatrix = rho.partial_transpose(Subsystem::B);
        assert!(pt.hermitian_deviation() < 1e-15);
    }
}

//! Parameters of the classical-quantum two-qutrit state closest to a given
//! state, for a fixed measurement basis on A.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::bloch::{basis, BlochTriplet};
use crate::error::{Error, Result};

const BASIS_NORM_TOL: f64 = 1e-12;
const VECTOR_NORM_TOL: f64 = 1e-8;

/// Stationary parameters of `χ = Σ_k p_k |ψ_k⟩⟨ψ_k| ⊗ ρ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalStateParams {
    /// `(α, β, γ)` when built from [`closest_classical_params_for_basis`].
    pub basis_params: Option<(f64, f64, f64)>,
    pub probabilities: [f64; 3],
    /// `(p1 - p3, p2 - p3)`.
    pub t: [f64; 2],
    pub u: DVector<f64>,
    pub r1: DVector<f64>,
    pub r2: DVector<f64>,
    pub a1: DVector<f64>,
    pub a2: DVector<f64>,
}

impl ClassicalStateParams {
    /// Bloch triplet of `χ`: `{t1 a1 + t2 a2, u, a1 r1ᵀ + a2 r2ᵀ}`.
    pub fn triplet(&self) -> BlochTriplet {
        let x = &self.a1 * self.t[0] + &self.a2 * self.t[1];
        let s = &self.a1 * self.r1.transpose() + &self.a2 * self.r2.transpose();
        BlochTriplet::unchecked(3, 3, x, self.u.clone(), s).expect("qutrit shapes")
    }
}

/// The orthonormal qutrit basis
/// `ψ1 = α|0⟩ + β|1⟩ + γ|2⟩`,
/// `ψ2 = (-β|0⟩ + α|1⟩)/√(α²+β²)`,
/// `ψ3 = (-αγ|0⟩ - βγ|1⟩ + (α²+β²)|2⟩)/√(α²+β²)`.
pub fn measurement_basis(alpha: f64, beta: f64, gamma: f64) -> Result<[[Complex64; 3]; 3]> {
    let norm = alpha * alpha + beta * beta + gamma * gamma;
    if (norm - 1.0).abs() > BASIS_NORM_TOL {
        return Err(Error::NormViolation {
            norm_sq: norm,
            bound: 1.0,
        });
    }
    let s = alpha * alpha + beta * beta;
    if s <= 0.0 {
        return Err(Error::ParamOutOfRange {
            name: "alpha^2 + beta^2".into(),
            value: s,
            interval: "(0, 1]".into(),
        });
    }
    let r = s.sqrt();
    let c = |v: f64| Complex64::new(v, 0.0);
    Ok([
        [c(alpha), c(beta), c(gamma)],
        [c(-beta / r), c(alpha / r), c(0.0)],
        [c(-alpha * gamma / r), c(-beta * gamma / r), c(s / r)],
    ])
}

fn expectation_vector(psi: &[Complex64; 3]) -> DVector<f64> {
    let b = basis(3).expect("qutrit basis");
    DVector::from_iterator(
        b.len(),
        b.generators.iter().map(|g| {
            let m = &g.matrix;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..3 {
                for j in 0..3 {
                    acc += psi[i].conj() * m.get(i, j) * psi[j];
                }
            }
            acc.re
        }),
    )
}

/// `a_k^(i) = ⟨ψ_k|Λ_i|ψ_k⟩` for `k = 1, 2`.
pub fn measurement_vectors(alpha: f64, beta: f64, gamma: f64) -> Result<(DVector<f64>, DVector<f64>)> {
    let psi = measurement_basis(alpha, beta, gamma)?;
    Ok((expectation_vector(&psi[0]), expectation_vector(&psi[1])))
}

/// Stationary point of `|rho - χ|²` over `t`, `u`, `r1`, `r2` for fixed
/// measurement vectors `a1`, `a2`:
///
/// ```text
/// t1 = xᵀa1 + xᵀa2/2      t2 = xᵀa1/2 + xᵀa2      u = y
/// r1 = (3/4) Tᵀ(a1 |a2|² + (2/3) a2)
/// r2 = (3/4) Tᵀ(a2 |a1|² + (2/3) a1)
/// ```
///
/// `Tᵀ` contracts the measured index of `T`.
pub fn closest_classical_params(
    trip: &BlochTriplet,
    a1: &DVector<f64>,
    a2: &DVector<f64>,
) -> Result<ClassicalStateParams> {
    if (trip.dim_a, trip.dim_b) != (3, 3) {
        return Err(Error::WrongDimension {
            expected_a: 3,
            expected_b: 3,
            found_a: trip.dim_a,
            found_b: trip.dim_b,
        });
    }
    for a in [a1, a2] {
        if a.len() != 8 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                found: a.len(),
            });
        }
        let n = a.norm_squared();
        if (n - 4.0 / 3.0).abs() > VECTOR_NORM_TOL {
            return Err(Error::NormViolation {
                norm_sq: n,
                bound: 4.0 / 3.0,
            });
        }
    }
    let s1 = trip.x.dot(a1);
    let s2 = trip.x.dot(a2);
    let t1 = s1 + 0.5 * s2;
    let t2 = 0.5 * s1 + s2;
    let tt: DMatrix<f64> = trip.t.transpose();
    let r1 = &tt * (a1 * a2.norm_squared() + a2 * (2.0 / 3.0)) * 0.75;
    let r2 = &tt * (a2 * a1.norm_squared() + a1 * (2.0 / 3.0)) * 0.75;
    let p3 = (1.0 - t1 - t2) / 3.0;
    Ok(ClassicalStateParams {
        basis_params: None,
        probabilities: [p3 + t1, p3 + t2, p3],
        t: [t1, t2],
        u: trip.y.clone(),
        r1,
        r2,
        a1: a1.clone(),
        a2: a2.clone(),
    })
}

/// [`closest_classical_params`] for the basis built from `(α, β, γ)`.
pub fn closest_classical_params_for_basis(
    trip: &BlochTriplet,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<ClassicalStateParams> {
    let (a1, a2) = measurement_vectors(alpha, beta, gamma)?;
    let mut p = closest_classical_params(trip, &a1, &a2)?;
    p.basis_params = Some((alpha, beta, gamma));
    Ok(p)
}

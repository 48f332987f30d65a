//! Private states built from a shield quadruple, privacy squeezing, and a
//! lower bound on the distillable key rate in terms of geometric discord.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::discord::{gqd, oracle_gqd, DiscordResult, OracleConfig, Variant};
use crate::error::{Error, Result};
use crate::matcore::{hs_norm, trace_norm, ComplexMatrix, DensityMatrix};

/// Default tolerance for the trace-norm equalities.
pub const O4_TOL: f64 = 1e-5;
const WITNESS_TOL: f64 = 1e-8;

/// `σ0..σ3` on `C^d ⊗ C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShieldQuadruple {
    sigma: [DensityMatrix; 4],
    d: usize,
    validated: bool,
}

impl ShieldQuadruple {
    /// Each operator must be Hermitian, positive semidefinite and of unit
    /// trace.
    pub fn new(mats: [ComplexMatrix; 4], d: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(4);
        for (index, m) in mats.into_iter().enumerate() {
            let s = DensityMatrix::validate(m, d, d).map_err(|e| Error::InvalidShield {
                index,
                source: Box::new(e),
            })?;
            out.push(s);
        }
        Ok(Self {
            sigma: out.try_into().expect("four operators"),
            d,
            validated: true,
        })
    }

    /// Shape checks only, for transcriptions that fail validation.
    pub fn unchecked(mats: [ComplexMatrix; 4], d: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(4);
        for (index, m) in mats.into_iter().enumerate() {
            out.push(DensityMatrix::unchecked(m, d, d).map_err(|e| Error::InvalidShield {
                index,
                source: Box::new(e),
            })?);
        }
        Ok(Self {
            sigma: out.try_into().expect("four operators"),
            d,
            validated: false,
        })
    }

    pub fn sigma(&self, i: usize) -> &DensityMatrix {
        &self.sigma[i]
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    fn half_sum(&self, i: usize, j: usize) -> DensityMatrix {
        let m = (self.sigma[i].matrix() + self.sigma[j].matrix()).scale(0.5);
        DensityMatrix::unchecked(m, self.d, self.d).expect("shapes fixed")
    }

    /// `(σ0 + σ1)/2`.
    pub fn first_pair(&self) -> DensityMatrix {
        self.half_sum(0, 1)
    }

    /// `(σ2 + σ3)/2`.
    pub fn second_pair(&self) -> DensityMatrix {
        self.half_sum(2, 3)
    }
}

fn bell_projectors() -> [ComplexMatrix; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = |a: [f64; 4]| ComplexMatrix::projector(&a.map(|r| Complex64::new(r * s, 0.0)));
    [
        v([1.0, 0.0, 0.0, 1.0]),
        v([1.0, 0.0, 0.0, -1.0]),
        v([0.0, 1.0, 1.0, 0.0]),
        v([0.0, 1.0, -1.0, 0.0]),
    ]
}

/// `|φ+><φ+| ⊗ σ0 + |φ-><φ-| ⊗ σ1 + |ψ+><ψ+| ⊗ σ2 + |ψ-><ψ-| ⊗ σ3` on
/// key ⊗ shield. Each block carries a unit-trace σ, so the trace is 4.
pub fn bell_block_operator(shield: &ShieldQuadruple) -> ComplexMatrix {
    let n = shield.d * shield.d;
    let mut m = ComplexMatrix::zeros(4 * n, 4 * n);
    for (p, s) in bell_projectors().iter().zip(&shield.sigma) {
        m = &m + &p.kron(s.matrix());
    }
    m
}

/// The Bell-block operator with weight 1/4, i.e. the equal mixture of the
/// four blocks, as a state with dimensions `(4, d²)`.
pub fn assemble_private_state(shield: &ShieldQuadruple) -> Result<DensityMatrix> {
    let n = shield.d * shield.d;
    let m = bell_block_operator(shield).scale(0.25);
    if shield.validated {
        DensityMatrix::validate(m, 4, n)
    } else {
        DensityMatrix::unchecked(m, 4, n)
    }
}

/// The trace norms that define the privacy-squeezed state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceNorms {
    pub sum01: f64,
    pub diff01: f64,
    pub sum23: f64,
    pub diff23: f64,
}

pub fn trace_norms(shield: &ShieldQuadruple) -> Result<TraceNorms> {
    let s = |i: usize| shield.sigma[i].matrix();
    Ok(TraceNorms {
        sum01: trace_norm(&(s(0) + s(1)))?,
        diff01: trace_norm(&(s(0) - s(1)))?,
        sum23: trace_norm(&(s(2) + s(3)))?,
        diff23: trace_norm(&(s(2) - s(3)))?,
    })
}

/// Weights of the purification of the privacy-squeezed state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezeWeights {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
}

/// `x, y = (|σ0+σ1|_1 ± |σ0-σ1|_1)/2` and `z, w` likewise for `σ2, σ3`.
pub fn squeeze_weights(shield: &ShieldQuadruple) -> Result<SqueezeWeights> {
    let t = trace_norms(shield)?;
    Ok(SqueezeWeights {
        x: 0.5 * (t.sum01 + t.diff01),
        y: 0.5 * (t.sum01 - t.diff01),
        z: 0.5 * (t.sum23 + t.diff23),
        w: 0.5 * (t.sum23 - t.diff23),
    })
}

/// The 4x4 privacy-squeezed operator: half the trace norms, arranged in the
/// block pattern of the private state.
pub fn privacy_squeezed_state(shield: &ShieldQuadruple) -> Result<ComplexMatrix> {
    let t = trace_norms(shield)?;
    let h = |v: f64| Complex64::new(0.5 * v, 0.0);
    let mut m = ComplexMatrix::zeros(4, 4);
    m.set(0, 0, h(t.sum01));
    m.set(3, 3, h(t.sum01));
    m.set(0, 3, h(t.diff01));
    m.set(3, 0, h(t.diff01));
    m.set(1, 1, h(t.sum23));
    m.set(2, 2, h(t.sum23));
    m.set(1, 2, h(t.diff23));
    m.set(2, 1, h(t.diff23));
    Ok(m)
}

/// Both trace-norm equalities hold within `tol`.
pub fn check_o4(shield: &ShieldQuadruple, tol: f64) -> Result<bool> {
    let t = trace_norms(shield)?;
    Ok((t.sum01 - t.diff01).abs() <= tol && (t.sum23 - t.diff23).abs() <= tol)
}

/// `(δ00, δ01, δ10, δ11)` in the basis `e0..e3`.
pub fn ccq_projectors(weights: &SqueezeWeights) -> Result<[[f64; 4]; 4]> {
    for v in [weights.x, weights.y, weights.z, weights.w] {
        if v < 0.0 {
            return Err(Error::NegativeWeight(v));
        }
    }
    let (sx, sy, sz, sw) = (weights.x.sqrt(), weights.y.sqrt(), weights.z.sqrt(), weights.w.sqrt());
    Ok([
        [sx, sy, 0.0, 0.0],
        [sx, -sy, 0.0, 0.0],
        [0.0, 0.0, sz, sw],
        [0.0, 0.0, sz, -sw],
    ])
}

/// True iff `|target|_2 ≥ |target - σ_cl|_2`, after checking that `σ_cl`
/// has zero discord according to the oracle.
pub fn verify_classical_witness(target: &DensityMatrix, sigma_cl: &DensityMatrix) -> Result<bool> {
    if target.dims() != sigma_cl.dims() {
        return Err(Error::WrongDimension {
            expected_a: target.dim_a(),
            expected_b: target.dim_b(),
            found_a: sigma_cl.dim_a(),
            found_b: sigma_cl.dim_b(),
        });
    }
    let discord = oracle_gqd(sigma_cl, &OracleConfig::default().with_restarts(16))?.result.value;
    if discord > WITNESS_TOL {
        return Err(Error::NotClassical { discord });
    }
    Ok(hs_norm(target.matrix()) >= hs_norm(&(target.matrix() - sigma_cl.matrix())))
}

/// How the two discords are computed.
#[derive(Clone, Debug, PartialEq)]
pub enum DiscordEngine {
    Analytic(Variant),
    Oracle(OracleConfig),
}

impl Default for DiscordEngine {
    fn default() -> Self {
        DiscordEngine::Analytic(Variant::ASide)
    }
}

impl DiscordEngine {
    pub fn evaluate(&self, rho: &DensityMatrix) -> Result<DiscordResult> {
        match self {
            DiscordEngine::Analytic(v) => gqd(rho, *v),
            DiscordEngine::Oracle(cfg) => Ok(oracle_gqd(rho, cfg)?.result),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feasibility {
    GuaranteedPositive,
    NotGuaranteed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KeyRateReport {
    pub weights: SqueezeWeights,
    /// `√GQD((σ0+σ1)/2)`.
    pub d1_term: f64,
    /// `√GQD((σ2+σ3)/2)`.
    pub d2_term: f64,
    pub kd_lower_bound: f64,
    pub o4_satisfied: bool,
    /// Evaluated on the smaller of the two terms.
    pub feasibility: Feasibility,
}

fn xlog(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v * v.log2()
    }
}

/// `1 + 2 D1 log2(2 D1) + 2 D2 log2(2 D2)`, with `0 log 0 = 0`.
pub fn bound_from_terms(d1_term: f64, d2_term: f64) -> f64 {
    1.0 + xlog(2.0 * d1_term) + xlog(2.0 * d2_term)
}

/// Membership of `D1` in `[0, 0.125) ∪ (0.25, 1]`.
pub fn feasibility_interval(d1_term: f64) -> Result<Feasibility> {
    if !(0.0..=1.0).contains(&d1_term) {
        return Err(Error::OutOfRange(d1_term));
    }
    Ok(if !(0.125..=0.25).contains(&d1_term) {
        Feasibility::GuaranteedPositive
    } else {
        Feasibility::NotGuaranteed
    })
}

/// Key-rate bound from already computed squared terms, skipping the shield.
pub fn report_from_discords(d1_sq: f64, d2_sq: f64, weights: SqueezeWeights, o4: bool) -> Result<KeyRateReport> {
    let (d1, d2) = (d1_sq.sqrt(), d2_sq.sqrt());
    Ok(KeyRateReport {
        weights,
        d1_term: d1,
        d2_term: d2,
        kd_lower_bound: bound_from_terms(d1, d2),
        o4_satisfied: o4,
        feasibility: feasibility_interval(d1.min(d2))?,
    })
}

/// Lower bound on the distillable key rate. Fails with `O4Violated` unless
/// both trace-norm equalities hold to [`O4_TOL`].
pub fn key_rate_lower_bound(shield: &ShieldQuadruple, engine: &DiscordEngine) -> Result<KeyRateReport> {
    let report = key_rate_unchecked(shield, engine)?;
    if !report.o4_satisfied {
        let t = trace_norms(shield)?;
        return Err(Error::O4Violated {
            sum01: t.sum01,
            diff01: t.diff01,
            sum23: t.sum23,
            diff23: t.diff23,
        });
    }
    Ok(report)
}

/// [`key_rate_lower_bound`] without the O4 requirement; `o4_satisfied`
/// records the outcome.
pub fn key_rate_unchecked(shield: &ShieldQuadruple, engine: &DiscordEngine) -> Result<KeyRateReport> {
    let weights = squeeze_weights(shield)?;
    let o4 = check_o4(shield, O4_TOL)?;
    let d1_sq = engine.evaluate(&shield.first_pair())?.value;
    let d2_sq = engine.evaluate(&shield.second_pair())?.value;
    report_from_discords(d1_sq, d2_sq, weights, o4)
}

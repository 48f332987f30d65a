//! Catalog of parametrised states and shield quadruples, plus random
//! state generators.

mod random;
mod shields;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, DensityMatrix};

pub use random::{
    classical_quantum_from, haar_unitary, random_classical_quantum, random_local_state, random_separable,
    random_state,
};
pub use shields::{build_shield, shield_matrices, witness_ex1};

/// Named real parameters.
pub type Params = BTreeMap<String, f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// `build_family` returns the state itself.
    State,
    /// A shield quadruple; `build_family` returns the assembled private state.
    Shield,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub lower: f64,
    pub upper: f64,
    pub lower_open: bool,
    pub upper_open: bool,
    pub default: Option<f64>,
}

impl ParamSpec {
    const fn closed(name: &'static str, lower: f64, upper: f64) -> Self {
        Self {
            name,
            lower,
            upper,
            lower_open: false,
            upper_open: false,
            default: None,
        }
    }

    const fn with_default(mut self, v: f64) -> Self {
        self.default = Some(v);
        self
    }

    const fn open_lower(mut self) -> Self {
        self.lower_open = true;
        self
    }

    const fn open_upper(mut self) -> Self {
        self.upper_open = true;
        self
    }

    pub fn contains(&self, v: f64) -> bool {
        let lo = if self.lower_open { v > self.lower } else { v >= self.lower };
        let hi = if self.upper_open { v < self.upper } else { v <= self.upper };
        v.is_finite() && lo && hi
    }

    pub fn interval(&self) -> String {
        format!(
            "{}{}, {}{}",
            if self.lower_open { '(' } else { '[' },
            self.lower,
            self.upper,
            if self.upper_open { ')' } else { ']' }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub kind: FamilyKind,
    /// Local dimensions of the state, or of the shield for shield families.
    pub dims: (usize, usize),
    pub params: Vec<ParamSpec>,
    pub closed_form: bool,
    /// False for transcriptions kept although they are not valid states.
    pub validated: bool,
    pub description: &'static str,
}

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn diag_params() -> Vec<ParamSpec> {
    const NAMES: [&str; 9] = ["a00", "a01", "a02", "a10", "a11", "a12", "a20", "a21", "a22"];
    NAMES
        .iter()
        .map(|n| ParamSpec::closed(n, 0.0, 1.0).with_default(1.0))
        .collect()
}

/// Every family, in a fixed order.
pub fn catalog() -> Vec<FamilyInfo> {
    use FamilyKind::*;
    vec![
        FamilyInfo {
            name: "product",
            kind: State,
            dims: (3, 3),
            params: vec![
                ParamSpec::closed("a", 0.0, 1.0).with_default(0.5),
                ParamSpec::closed("b", 0.0, 1.0).with_default(0.5),
            ],
            closed_form: true,
            validated: true,
            description: "((1-a) I/3 + a|+><+|) ⊗ ((1-b) I/3 + b|0><0|)",
        },
        FamilyInfo {
            name: "diagonal",
            kind: State,
            dims: (3, 3),
            params: diag_params(),
            closed_form: true,
            validated: true,
            description: "Σ a_ij |ij><ij|, weights normalised by their sum",
        },
        FamilyInfo {
            name: "isotropic",
            kind: State,
            dims: (3, 3),
            params: vec![ParamSpec::closed("beta", -0.125, 1.0)],
            closed_form: true,
            validated: true,
            description: "β|Φ+><Φ+| + (1-β) I/9; separable for β ≤ 1/4",
        },
        FamilyInfo {
            name: "alpha",
            kind: State,
            dims: (3, 3),
            params: vec![ParamSpec::closed("alpha", 2.0, 5.0)],
            closed_form: true,
            validated: true,
            description: "2/7 |Φ+><Φ+| + α/7 σ+ + (5-α)/7 σ-; separable on [2,3], PPT entangled on (3,4], NPT on (4,5]",
        },
        FamilyInfo {
            name: "rho1_gamma",
            kind: State,
            dims: (3, 3),
            params: vec![ParamSpec::closed("gamma", 0.2, 1.0)],
            closed_form: true,
            validated: true,
            description: "γ|ψ1><ψ1| + (1-γ)(I - Σ_i |ψ_i><ψ_i|)/4 over the five tile vectors",
        },
        FamilyInfo {
            name: "rho_a",
            kind: State,
            dims: (3, 3),
            params: vec![ParamSpec::closed("a", SQRT_HALF, 1.0)],
            closed_form: true,
            validated: true,
            description: "(|χ1><χ1| + |χ2><χ2| + |χ3><χ3|)/(5+2a²), χ1 = |01>-a|10>, χ2 = |02>-a|20>, χ3 = Σ|jj>",
        },
        FamilyInfo {
            name: "rho_c",
            kind: State,
            dims: (3, 3),
            params: vec![ParamSpec::closed("c", 0.0, 1.0).open_lower().open_upper()],
            closed_form: false,
            validated: true,
            description: "Horodecki PPT entangled state, √(1-c²)/2 coupling",
        },
        FamilyInfo {
            name: "rho_c_printed",
            kind: State,
            dims: (3, 3),
            params: vec![ParamSpec::closed("c", 0.0, 1.0).open_lower().open_upper()],
            closed_form: true,
            validated: false,
            description: "the same matrix with a √(1+c²)/2 coupling; not positive semidefinite",
        },
        FamilyInfo {
            name: "cons3",
            kind: State,
            dims: (3, 3),
            params: vec![],
            closed_form: true,
            validated: true,
            description: "PPT entangled two-qutrit state with entries built from √5",
        },
        FamilyInfo {
            name: "cons4",
            kind: State,
            dims: (4, 4),
            params: vec![],
            closed_form: true,
            validated: true,
            description: "(1/4) Σ_ij |ii><jj|, the maximally entangled 4⊗4 state",
        },
        FamilyInfo {
            name: "werner",
            kind: State,
            dims: (2, 2),
            params: vec![ParamSpec::closed("p", 0.0, 1.0)],
            closed_form: true,
            validated: true,
            description: "p|Φ+><Φ+| + (1-p) I/4",
        },
        FamilyInfo {
            name: "qkd_ex1",
            kind: Shield,
            dims: (2, 2),
            params: vec![
                ParamSpec::closed("q", 0.0, 0.4).open_lower(),
                ParamSpec::closed("r", 0.0, 0.4).open_lower(),
            ],
            closed_form: false,
            validated: true,
            description: "two-qubit shield, σ1 transcribed with a unit (2,2) entry (trace 1 + q/2)",
        },
        FamilyInfo {
            name: "qkd_ex1_trace_fixed",
            kind: Shield,
            dims: (2, 2),
            params: vec![
                ParamSpec::closed("q", 0.0, 0.4).open_lower(),
                ParamSpec::closed("r", 0.0, 0.4).open_lower(),
            ],
            closed_form: false,
            validated: true,
            description: "two-qubit shield with σ1's (2,2) entry set to q/2",
        },
        FamilyInfo {
            name: "qkd_ex2",
            kind: Shield,
            dims: (2, 2),
            params: vec![ParamSpec::closed("m", 0.0, 1.0)],
            closed_form: false,
            validated: true,
            description: "two-qubit shield with a one-parameter σ2",
        },
        FamilyInfo {
            name: "qkd_ex3",
            kind: Shield,
            dims: (3, 3),
            params: vec![],
            closed_form: false,
            validated: true,
            description: "two-qutrit shield built from |Φ+>, its complement, and two product-sum vectors",
        },
        FamilyInfo {
            name: "qkd_ex4",
            kind: Shield,
            dims: (2, 2),
            params: vec![],
            closed_form: false,
            validated: true,
            description: "fixed two-qubit shield with a negative key-rate bound",
        },
    ]
}

pub fn family_info(name: &str) -> Result<FamilyInfo> {
    catalog()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// Resolves every declared parameter (falling back to defaults) and checks
/// intervals. Unknown keys are rejected.
pub fn resolve_params(info: &FamilyInfo, params: &Params) -> Result<Vec<f64>> {
    for key in params.keys() {
        if !info.params.iter().any(|p| p.name == key) {
            return Err(Error::UnexpectedParam(key.clone()));
        }
    }
    info.params
        .iter()
        .map(|spec| {
            let v = params
                .get(spec.name)
                .copied()
                .or(spec.default)
                .ok_or_else(|| Error::MissingParam(spec.name.to_string()))?;
            if !spec.contains(v) {
                return Err(Error::ParamOutOfRange {
                    name: spec.name.to_string(),
                    value: v,
                    interval: spec.interval(),
                });
            }
            Ok(v)
        })
        .collect()
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `|ij>` in `C^d ⊗ C^d`.
pub(crate) fn ket2(d: usize, i: usize, j: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0); d * d];
    v[i * d + j] = c(1.0);
    v
}

fn combo(terms: &[(f64, &[Complex64])]) -> Vec<Complex64> {
    let n = terms[0].1.len();
    (0..n).map(|k| terms.iter().map(|(w, v)| v[k] * *w).sum()).collect()
}

fn max_entangled(d: usize) -> ComplexMatrix {
    let mut v = vec![c(0.0); d * d];
    for j in 0..d {
        v[j * d + j] = c(1.0 / (d as f64).sqrt());
    }
    ComplexMatrix::projector(&v)
}

fn isotropic(beta: f64) -> ComplexMatrix {
    &max_entangled(3).scale(beta) + &ComplexMatrix::identity(9).scale((1.0 - beta) / 9.0)
}

fn alpha_state(alpha: f64) -> ComplexMatrix {
    let mut m = max_entangled(3).scale(2.0 / 7.0);
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let k = i * 3 + j;
        m.set(k, k, m.get(k, k) + c(alpha / 21.0));
    }
    for (i, j) in [(1, 0), (2, 1), (0, 2)] {
        let k = i * 3 + j;
        m.set(k, k, m.get(k, k) + c((5.0 - alpha) / 21.0));
    }
    m
}

fn tiles_state(gamma: f64) -> ComplexMatrix {
    let e = |i: usize| {
        let mut v = [c(0.0); 3];
        v[i] = c(1.0);
        v
    };
    let kron = |a: [Complex64; 3], b: [Complex64; 3]| -> Vec<Complex64> {
        a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
    };
    let sub = |i: usize, j: usize| -> [Complex64; 3] {
        let mut v = e(i);
        v[j] = c(-1.0);
        v
    };
    let all = [c(1.0); 3];
    let s = SQRT_HALF;
    let psis: Vec<Vec<Complex64>> = vec![
        kron(e(0), sub(0, 1)).iter().map(|z| z * s).collect(),
        kron(sub(0, 1), e(2)).iter().map(|z| z * s).collect(),
        kron(e(2), sub(1, 2)).iter().map(|z| z * s).collect(),
        kron(sub(1, 2), e(0)).iter().map(|z| z * s).collect(),
        kron(all, all).iter().map(|z| z / 3.0).collect(),
    ];
    let mut rest = ComplexMatrix::identity(9);
    for p in &psis {
        rest = &rest - &ComplexMatrix::projector(p);
    }
    &ComplexMatrix::projector(&psis[0]).scale(gamma) + &rest.scale((1.0 - gamma) / 4.0)
}

fn rho_a(a: f64) -> ComplexMatrix {
    let chi1 = combo(&[(1.0, &ket2(3, 0, 1)), (-a, &ket2(3, 1, 0))]);
    let chi2 = combo(&[(1.0, &ket2(3, 0, 2)), (-a, &ket2(3, 2, 0))]);
    let chi3 = combo(&[(1.0, &ket2(3, 0, 0)), (1.0, &ket2(3, 1, 1)), (1.0, &ket2(3, 2, 2))]);
    let sum = &(&ComplexMatrix::projector(&chi1) + &ComplexMatrix::projector(&chi2)) + &ComplexMatrix::projector(&chi3);
    sum.scale(1.0 / (5.0 + 2.0 * a * a))
}

/// `coupling` is the (7,9) entry before the `1/(8c+1)` normalisation.
fn horodecki(cc: f64, coupling: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(9, 9);
    for i in [0, 4, 8] {
        for j in [0, 4, 8] {
            m.set(i, j, c(cc));
        }
    }
    for i in [1, 2, 3, 5, 7] {
        m.set(i, i, c(cc));
    }
    m.set(6, 6, c((1.0 + cc) / 2.0));
    m.set(8, 8, c((1.0 + cc) / 2.0));
    m.set(6, 8, c(coupling));
    m.set(8, 6, c(coupling));
    m.scale(1.0 / (8.0 * cc + 1.0))
}

fn cons3() -> ComplexMatrix {
    let s5 = 5f64.sqrt();
    let den = 3.0 + 9.0 * s5;
    let (a, b, cc) = ((1.0 + s5) / den, -2.0 / den, (-1.0 + s5) / den);
    let diag = [a, cc, a, a, a, cc, cc, a, a];
    let mut m = ComplexMatrix::zeros(9, 9);
    for (i, &v) in diag.iter().enumerate() {
        m.set(i, i, c(v));
    }
    for (i, j) in [(0, 4), (0, 8), (5, 7)] {
        m.set(i, j, c(b));
        m.set(j, i, c(b));
    }
    m
}

fn product(a: f64, b: f64) -> ComplexMatrix {
    let plus = [c(1.0 / 3f64.sqrt()); 3];
    let ra = &ComplexMatrix::identity(3).scale((1.0 - a) / 3.0) + &ComplexMatrix::projector(&plus).scale(a);
    let mut rb = ComplexMatrix::identity(3).scale((1.0 - b) / 3.0);
    rb.set(0, 0, rb.get(0, 0) + c(b));
    ra.kron(&rb)
}

fn diagonal(w: &[f64]) -> Result<ComplexMatrix> {
    let total: f64 = w.iter().sum();
    if total <= 0.0 {
        return Err(Error::BadProbabilities(total));
    }
    let mut m = ComplexMatrix::zeros(9, 9);
    for (k, &v) in w.iter().enumerate() {
        m.set(k, k, c(v / total));
    }
    Ok(m)
}

fn werner(p: f64) -> ComplexMatrix {
    &max_entangled(2).scale(p) + &ComplexMatrix::identity(4).scale((1.0 - p) / 4.0)
}

/// Builds a catalog member. Shield families return the assembled private
/// state.
pub fn build_family(name: &str, params: &Params) -> Result<DensityMatrix> {
    let info = family_info(name)?;
    let v = resolve_params(&info, params)?;
    let (d1, d2) = info.dims;
    let m = match name {
        "product" => product(v[0], v[1]),
        "diagonal" => diagonal(&v)?,
        "isotropic" => isotropic(v[0]),
        "alpha" => alpha_state(v[0]),
        "rho1_gamma" => tiles_state(v[0]),
        "rho_a" => rho_a(v[0]),
        "rho_c" => horodecki(v[0], (1.0 - v[0] * v[0]).sqrt() / 2.0),
        "rho_c_printed" => return DensityMatrix::unchecked(horodecki(v[0], (1.0 + v[0] * v[0]).sqrt() / 2.0), 3, 3),
        "cons3" => cons3(),
        "cons4" => max_entangled(4),
        "werner" => werner(v[0]),
        _ => {
            let shield = build_shield(name, params)?;
            return crate::qkd::assemble_private_state(&shield);
        }
    };
    DensityMatrix::validate(m, d1, d2)
}

/// Printed closed-form discord, where the family has one.
pub fn expected_discord(name: &str, params: &Params) -> Result<Option<f64>> {
    let info = family_info(name)?;
    let v = resolve_params(&info, params)?;
    Ok(match name {
        "product" | "diagonal" => Some(0.0),
        "isotropic" => Some(32.0 / 243.0 * v[0] * v[0]),
        "alpha" => {
            let a = v[0];
            let breakpoint = (5.0 + 5f64.sqrt()) / 2.0;
            Some(if a <= 3.0 {
                32.0 / 11907.0 * ((a - 2.5).powi(2) + 11.0 / 4.0)
            } else if a <= breakpoint {
                32.0 / 11907.0 * (a * a - 5.0 * a + 9.0)
            } else {
                128.0 / 11907.0
            })
        }
        "rho1_gamma" => {
            let g = v[0];
            Some(0.137129 * (2.5 * g * g - g + 1.0))
        }
        "rho_a" => {
            let a = v[0];
            Some(8.0 * (128.0 + a * (17.0 * a.powi(3) - 8.0 * a - 72.0)) / (729.0 * (5.0 + 2.0 * a * a).powi(2)))
        }
        "rho_c_printed" => Some(rho_c_closed_form(v[0])),
        "cons3" => Some(16.0 * (23.0 - 3.0 * 5f64.sqrt()) / 29403.0),
        "cons4" => Some(13.0 / 256.0),
        "werner" => Some(v[0] * v[0] / 2.0),
        _ => None,
    })
}

/// Roots of `λ³ + b λ² + c λ + d` with three real roots, descending.
fn cubic_roots(b: f64, cc: f64, d: f64) -> [f64; 3] {
    // Depressed cubic t³ + p t + q with λ = t - b/3, trigonometric form.
    let p = cc - b * b / 3.0;
    let q = 2.0 * b.powi(3) / 27.0 - b * cc / 3.0 + d;
    let shift = -b / 3.0;
    if p.abs() < 1e-300 {
        let t = (-q).cbrt();
        return [t + shift; 3];
    }
    let m = 2.0 * (-p / 3.0).max(0.0).sqrt();
    let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let mut r = [0.0; 3];
    for (k, slot) in r.iter_mut().enumerate() {
        *slot = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift;
    }
    r.sort_by(|a, b| b.total_cmp(a));
    r
}

/// Piecewise discord of the `rho_c_printed` family: the three roots of the
/// characteristic cubic, scaled by `4/(729(1+8c)²)`, are subtracted from the
/// norm term; two roots below `c = √2 - 1`, one above.
pub fn rho_c_closed_form(cc: f64) -> f64 {
    let b = -34.0 + 44.0 * cc - 70.0 * cc * cc;
    let c2 = 270.0 - 648.0 * cc + 1548.0 * cc.powi(2) - 2232.0 * cc.powi(3) + 1062.0 * cc.powi(4);
    let d = -1944.0 * cc.powi(2) + 7776.0 * cc.powi(3) - 11664.0 * cc.powi(4) + 7776.0 * cc.powi(5)
        - 1944.0 * cc.powi(6);
    let scale = 4.0 / (729.0 * (1.0 + 8.0 * cc).powi(2));
    let roots = cubic_roots(b, c2, d).map(|r| r * scale);
    let denom = 729.0 * (1.0 + 8.0 * cc).powi(2);
    if cc < 2f64.sqrt() - 1.0 {
        8.0 * (125.0 * cc * cc - 22.0 * cc + 17.0) / denom - roots[0] - roots[1]
    } else {
        8.0 * (107.0 * cc * cc - 22.0 * cc + 17.0) / denom - roots[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::decompose;
    use crate::entanglement::{classify, PptClass};
    use approx::assert_abs_diff_eq;

    fn one(name: &str, value: f64) -> Params {
        let info = family_info(name).unwrap();
        [(info.params[0].name.to_string(), value)].into_iter().collect()
    }

    fn interval_samples(spec: &ParamSpec) -> Vec<f64> {
        let eps = 1e-9;
        let lo = if spec.lower_open { spec.lower + eps } else { spec.lower };
        let hi = if spec.upper_open { spec.upper - eps } else { spec.upper };
        let mut v = vec![lo, hi];
        v.extend((1..=20).map(|i| lo + (hi - lo) * i as f64 / 21.0));
        v
    }

    #[test]
    fn every_family_builds_valid_states_across_its_interval() {
        for info in catalog() {
            if !info.validated || info.name.starts_with("qkd_ex1") || info.name == "qkd_ex2" {
                continue;
            }
            if info.params.is_empty() || info.name == "diagonal" || info.name == "product" {
                assert!(build_family(info.name, &Params::new()).is_ok(), "{}", info.name);
                continue;
            }
            for x in interval_samples(&info.params[0]) {
                let rho = build_family(info.name, &one(info.name, x));
                assert!(rho.is_ok(), "{} at {x}: {:?}", info.name, rho.err());
            }
        }
    }

    #[test]
    fn isotropic_at_zero_is_maximally_mixed() {
        let rho = build_family("isotropic", &one("isotropic", 0.0)).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::identity(9).scale(1.0 / 9.0)) < 1e-16);
    }

    #[test]
    fn alpha_midpoint_triplet() {
        let trip = decompose(&build_family("alpha", &one("alpha", 2.5)).unwrap()).unwrap();
        assert!(trip.x.norm() < 1e-15);
        let want = [4.0, 4.0, 4.0, -4.0, -4.0, -4.0, -1.0, -1.0];
        for (i, w) in want.iter().enumerate() {
            assert_abs_diff_eq!(trip.t[(i, i)] * 21.0, w, epsilon = 1e-13);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(build_family("nope", &Params::new()), Err(Error::UnknownFamily(_))));
        assert!(matches!(
            build_family("isotropic", &one("isotropic", 1.5)),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(matches!(build_family("isotropic", &Params::new()), Err(Error::MissingParam(_))));
        let p: Params = [("zeta".to_string(), 0.1)].into_iter().collect();
        assert!(matches!(build_family("cons3", &p), Err(Error::UnexpectedParam(_))));
        assert!(matches!(
            build_family("rho_c", &one("rho_c", 0.0)),
            Err(Error::ParamOutOfRange { .. })
        ));
    }

    #[test]
    fn printed_rho_c_is_not_psd() {
        let rho = build_family("rho_c_printed", &one("rho_c_printed", 0.1)).unwrap();
        assert!(DensityMatrix::validate(rho.into_matrix(), 3, 3).is_err());
    }

    #[test]
    fn ppt_classes() {
        let check = |name: &str, xs: &[f64], want: PptClass| {
            for &x in xs {
                let rho = build_family(name, &one(name, x)).unwrap();
                assert_eq!(classify(&rho).unwrap(), want, "{name} at {x}");
            }
        };
        check("isotropic", &[-0.125, 0.0, 0.2, 0.25], PptClass::Ppt);
        check("alpha", &[2.0, 2.5, 3.0, 3.5, 4.0], PptClass::Ppt);
        check("rho1_gamma", &[0.2, 0.6, 1.0], PptClass::Ppt);
        check("rho_c", &[0.01, 0.5, 0.99], PptClass::Ppt);
        check("isotropic", &[0.26, 1.0 / 3.0, 0.7, 1.0], PptClass::Npt);
        check("alpha", &[4.01, 4.5, 5.0], PptClass::Npt);
        check("rho_a", &[SQRT_HALF, 0.8, 0.99], PptClass::Npt);
        for name in ["cons3", "diagonal", "product"] {
            assert_eq!(classify(&build_family(name, &Params::new()).unwrap()).unwrap(), PptClass::Ppt);
        }
        assert_eq!(classify(&build_family("cons4", &Params::new()).unwrap()).unwrap(), PptClass::Npt);
    }

    #[test]
    fn expected_values() {
        assert_abs_diff_eq!(
            expected_discord("isotropic", &one("isotropic", -0.125)).unwrap().unwrap(),
            32.0 / 243.0 / 64.0,
            epsilon = 1e-16
        );
        assert_abs_diff_eq!(
            expected_discord("rho_a", &one("rho_a", 1.0)).unwrap().unwrap(),
            8.0 * 65.0 / 35721.0,
            epsilon = 1e-16
        );
        let bp = (5.0 + 5f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(
            expected_discord("alpha", &one("alpha", bp)).unwrap().unwrap(),
            128.0 / 11907.0,
            epsilon = 1e-15
        );
        assert_eq!(expected_discord("rho_c", &one("rho_c", 0.5)).unwrap(), None);
    }

    #[test]
    fn cubic_solver() {
        // (λ-3)(λ-1)(λ+2) = λ³ - 2λ² - 5λ + 6
        let r = cubic_roots(-2.0, -5.0, 6.0);
        assert_abs_diff_eq!(r[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r[1], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r[2], -2.0, epsilon = 1e-12);
    }

    #[test]
    fn rho_c_closed_form_values() {
        for (cc, want) in [(0.1, 0.00314796), (0.3, 0.00781714), (0.6, 0.00896934), (0.9, 0.00953470)] {
            assert_abs_diff_eq!(rho_c_closed_form(cc), want, epsilon = 1e-8);
        }
    }
}

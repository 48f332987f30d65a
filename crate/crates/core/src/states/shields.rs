//! Shield quadruples `σ0..σ3` for private-state examples.

use num_complex::Complex64;

use super::{c, family_info, ket2, resolve_params, FamilyKind, Params};
use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, DensityMatrix};
use crate::qkd::ShieldQuadruple;

fn real4(rows: [[f64; 4]; 4]) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |i, j| c(rows[i][j]))
}

fn ex1(q: f64, r: f64, sigma1_corner: f64) -> [ComplexMatrix; 4] {
    let sq = (1.0 - q).sqrt() / 2.0;
    let sr = (1.0 - r).sqrt() / 2.0;
    [
        real4([
            [q / 2.0, 0.0, 0.0, 0.0],
            [0.0, (1.0 - q) / 2.0, sq, 0.0],
            [0.0, sq, 0.5, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        real4([
            [0.5, 0.0, 0.0, sq],
            [0.0, sigma1_corner, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [sq, 0.0, 0.0, (1.0 - q) / 2.0],
        ]),
        real4([
            [0.5, 0.0, 0.0, sr],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [sr, 0.0, 0.0, 0.5],
        ]),
        real4([
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.5, 0.0, 0.0],
            [0.0, 0.0, 0.5, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
    ]
}

fn ex2(m: f64) -> [ComplexMatrix; 4] {
    let corner = real4([[0.0; 4], [0.0; 4], [0.0; 4], [0.0, 0.0, 0.0, 1.0]]);
    let s = (1.0 - m).sqrt() / 2.0;
    [
        real4([
            [0.5, 0.25, 0.25, 0.0],
            [0.25, 0.25, 0.0, 0.0],
            [0.25, 0.0, 0.25, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        corner.clone(),
        real4([
            [m / 2.0, 0.0, s, 0.0],
            [0.0, 1.0 - m, 0.0, 0.0],
            [s, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        corner,
    ]
}

fn sum_kets(kets: &[(usize, usize)]) -> Vec<Complex64> {
    let mut v = vec![c(0.0); 9];
    for &(i, j) in kets {
        for (a, b) in v.iter_mut().zip(ket2(3, i, j)) {
            *a += b;
        }
    }
    v
}

fn ex3() -> [ComplexMatrix; 4] {
    let mut phi = vec![c(0.0); 9];
    for j in 0..3 {
        phi[j * 3 + j] = c(1.0 / 3f64.sqrt());
    }
    let s0 = ComplexMatrix::projector(&phi);
    let s1 = (&ComplexMatrix::identity(9) - &s0).scale(1.0 / 8.0);
    let s2 = ComplexMatrix::projector(&sum_kets(&[(0, 1), (1, 1)])).scale(0.5);
    let s3 = ComplexMatrix::projector(&sum_kets(&[(0, 0), (0, 2), (1, 0), (1, 2), (2, 2)])).scale(0.2);
    [s0, s1, s2, s3]
}

fn ex4() -> [ComplexMatrix; 4] {
    [
        real4([
            [0.5, 0.0, 0.0, 0.25],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.25, 0.0, 0.0, 0.5],
        ]),
        real4([
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.5, 0.5, 0.0],
            [0.0, 0.5, 0.5, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        real4([
            [0.5, 0.0, 0.5, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.5, 0.0, 0.5, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        real4([
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.25, 0.0, 0.1],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.1, 0.0, 0.75],
        ]),
    ]
}

/// The four shield operators exactly as transcribed, without validation.
pub fn shield_matrices(name: &str, params: &Params) -> Result<[ComplexMatrix; 4]> {
    let info = family_info(name)?;
    if info.kind != FamilyKind::Shield {
        return Err(Error::UnknownFamily(format!("{name} is not a shield family")));
    }
    let v = resolve_params(&info, params)?;
    Ok(match name {
        "qkd_ex1" => ex1(v[0], v[1], v[0]),
        "qkd_ex1_trace_fixed" => ex1(v[0], v[1], v[0] / 2.0),
        "qkd_ex2" => ex2(v[0]),
        "qkd_ex3" => ex3(),
        "qkd_ex4" => ex4(),
        _ => unreachable!("catalog and builders disagree on {name}"),
    })
}

/// Validated shield quadruple.
pub fn build_shield(name: &str, params: &Params) -> Result<ShieldQuadruple> {
    let d = family_info(name)?.dims.0;
    let [s0, s1, s2, s3] = shield_matrices(name, params)?;
    ShieldQuadruple::new([s0, s1, s2, s3], d)
}

/// Zero-discord two-qubit witness
/// `p1 |ψ1><ψ1| ⊗ ρ1 + (1-p1) |ψ2><ψ2| ⊗ ρ2` with `ψ1 = α|0> + β|1>`,
/// `ψ2 = α|1> - β|0>`, `ρ1 = ρ2 = (I + √0.1 (X + Y))/2`, `α : β = 0.345 : 0.655`
/// (normalised) and `p1 = 0.24`.
pub fn witness_ex1() -> Result<DensityMatrix> {
    let (a, b) = (0.345f64, 0.655f64);
    let n = a.hypot(b);
    let (a, b) = (a / n, b / n);
    let s = 0.1f64.sqrt();
    let i = Complex64::new(0.0, 1.0);
    let rho = ComplexMatrix::new(2, 2, vec![c(0.5), (c(s) - i * s) * 0.5, (c(s) + i * s) * 0.5, c(0.5)])?;
    let p1 = ComplexMatrix::projector(&[c(a), c(b)]);
    let p2 = ComplexMatrix::projector(&[c(-b), c(a)]);
    let m = &p1.kron(&rho).scale(0.24) + &p2.kron(&rho).scale(0.76);
    DensityMatrix::validate(m, 2, 2)
}

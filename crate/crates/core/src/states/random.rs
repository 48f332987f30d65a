use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, DensityMatrix};

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    })
}

/// `G G† / Tr(G G†)` for a `d x rank` Ginibre matrix `G`.
pub fn random_local_state<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(d, rank, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    ComplexMatrix::from_dmatrix(m / Complex64::new(tr, 0.0))
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix, with
/// the phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let qr = ginibre(d, d, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let z = r[(j, j)];
        let phase = if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_dmatrix(q)
}

/// Random state of rank at most `rank`, distributed as the partial trace of
/// a Haar-random pure state on `C^(d1 d2) ⊗ C^rank`.
pub fn random_state(d1: usize, d2: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let n = d1 * d2;
    if rank == 0 || rank > n {
        return Err(Error::BadRank { rank, max: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DensityMatrix::unchecked(random_local_state(n, rank, &mut rng), d1, d2)
}

/// `Σ_k p_k |ψ_k><ψ_k| ⊗ ρ_k` for the columns `ψ_k` of `basis`.
pub fn classical_quantum_from(basis: &ComplexMatrix, p: &[f64], rhos: &[ComplexMatrix]) -> Result<DensityMatrix> {
    let d1 = basis.rows();
    if p.len() != d1 || rhos.len() != d1 {
        return Err(Error::DimensionMismatch {
            expected: d1,
            found: p.len().min(rhos.len()),
        });
    }
    if let Some(&neg) = p.iter().find(|&&v| v < 0.0) {
        return Err(Error::NegativeWeight(neg));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::BadProbabilities(total));
    }
    let d2 = rhos[0].rows();
    let mut m = ComplexMatrix::zeros(d1 * d2, d1 * d2);
    for k in 0..d1 {
        let col: Vec<Complex64> = (0..d1).map(|i| basis.get(i, k)).collect();
        m = &m + &ComplexMatrix::projector(&col).kron(&rhos[k]).scale(p[k]);
    }
    DensityMatrix::validate(m, d1, d2)
}

/// Random zero-discord state with a Haar basis on A, flat-Dirichlet
/// probabilities and full-rank conditional states on B.
pub fn random_classical_quantum(d1: usize, d2: usize, seed: u64) -> Result<DensityMatrix> {
    for d in [d1, d2] {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = haar_unitary(d1, &mut rng);
    let w: Vec<f64> = (0..d1).map(|_| Exp1.sample(&mut rng)).collect();
    let total: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|v| v / total).collect();
    let p_sum: f64 = p.iter().sum();
    let mut p = p;
    p[0] += 1.0 - p_sum;
    let rhos: Vec<ComplexMatrix> = (0..d1).map(|_| random_local_state(d2, d2, &mut rng)).collect();
    classical_quantum_from(&u, &p, &rhos)
}

/// Random convex mixture of `terms` product states.
pub fn random_separable(d1: usize, d2: usize, terms: usize, seed: u64) -> Result<DensityMatrix> {
    if terms == 0 {
        return Err(Error::ParamOutOfRange {
            name: "terms".into(),
            value: 0.0,
            interval: "[1, inf)".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w: Vec<f64> = (0..terms).map(|_| Exp1.sample(&mut rng)).collect();
    let total: f64 = w.iter().sum();
    let mut m = ComplexMatrix::zeros(d1 * d2, d1 * d2);
    for wk in w {
        let ra = random_local_state(d1, rng.random_range(1..=d1), &mut rng);
        let rb = random_local_state(d2, rng.random_range(1..=d2), &mut rng);
        m = &m + &ra.kron(&rb).scale(wk / total);
    }
    DensityMatrix::validate(m, d1, d2)
}

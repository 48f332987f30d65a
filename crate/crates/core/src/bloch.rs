//! Generalised Gell-Mann bases and the Bloch representation of bipartite
//! states.
//!
//! For `d x d` generators `Λ_i` with `Tr(Λ_i Λ_j) = 2 δ_ij`, a state on
//! `C^d1 ⊗ C^d2` is written
//!
//! ```text
//! rho = I/(d1 d2) + 1/(2 d2) Σ x_i Λ_i⊗I + 1/(2 d1) Σ y_j I⊗Λ_j + 1/4 Σ T_ij Λ_i⊗Λ_j
//! ```
//!
//! with `x_i = Tr(rho Λ_i⊗I)`, `y_j = Tr(rho I⊗Λ_j)` and
//! `T_ij = Tr(rho Λ_i⊗Λ_j)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, DensityMatrix, Subsystem};

/// Largest imaginary part tolerated in a Bloch coefficient.
const IMAG_RESIDUE_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Symmetric,
    Antisymmetric,
    Diagonal,
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    /// `(j, k)` with `j < k` for the off-diagonal kinds, `(l, l)` for the
    /// `l`-th diagonal generator (1-based).
    pub indices: (usize, usize),
    pub matrix: ComplexMatrix,
}

/// The `d^2 - 1` generalised Gell-Mann matrices of `su(d)`.
///
/// Order: all symmetric generators for `j < k` in lexicographic order, then
/// the antisymmetric ones in the same order, then the diagonal ones for
/// `l = 1..d-1`.
#[derive(Clone, Debug, Serialize)]
pub struct GellMannBasis {
    pub dim: usize,
    pub generators: Vec<Generator>,
}

impl GellMannBasis {
    pub fn build(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let mut generators = Vec::with_capacity(d * d - 1);
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|j| (j + 1..d).map(move |k| (j, k))).collect();
        for &(j, k) in &pairs {
            let mut m = ComplexMatrix::zeros(d, d);
            m.set(j, k, one);
            m.set(k, j, one);
            generators.push(Generator {
                kind: GeneratorKind::Symmetric,
                indices: (j, k),
                matrix: m,
            });
        }
        for &(j, k) in &pairs {
            let mut m = ComplexMatrix::zeros(d, d);
            m.set(j, k, -i);
            m.set(k, j, i);
            generators.push(Generator {
                kind: GeneratorKind::Antisymmetric,
                indices: (j, k),
                matrix: m,
            });
        }
        for l in 1..d {
            let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
            let mut m = ComplexMatrix::zeros(d, d);
            for j in 0..l {
                m.set(j, j, Complex64::new(norm, 0.0));
            }
            m.set(l, l, Complex64::new(-(l as f64) * norm, 0.0));
            generators.push(Generator {
                kind: GeneratorKind::Diagonal,
                indices: (l, l),
                matrix: m,
            });
        }
        Ok(Self { dim: d, generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn matrix(&self, i: usize) -> &ComplexMatrix {
        &self.generators[i].matrix
    }
}

/// Shared, memoised basis for dimension `d`.
pub fn basis(d: usize) -> Result<Arc<GellMannBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GellMannBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("basis cache poisoned").get(&d) {
        return Ok(Arc::clone(b));
    }
    let built = Arc::new(GellMannBasis::build(d)?);
    let mut guard = cache.lock().expect("basis cache poisoned");
    Ok(Arc::clone(guard.entry(d).or_insert(built)))
}

/// Bloch vectors and correlation matrix of a bipartite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochTriplet {
    pub dim_a: usize,
    pub dim_b: usize,
    pub x: DVector<f64>,
    pub y: DVector<f64>,
    pub t: DMatrix<f64>,
}

impl BlochTriplet {
    /// Checks shapes and the length bounds every physical state satisfies:
    /// `|x|^2 <= 2(d1-1)/d1`, `|y|^2 <= 2(d2-1)/d2` and purity at most one.
    pub fn new(dim_a: usize, dim_b: usize, x: DVector<f64>, y: DVector<f64>, t: DMatrix<f64>) -> Result<Self> {
        let trip = Self::unchecked(dim_a, dim_b, x, y, t)?;
        let bound_a = 2.0 * (dim_a as f64 - 1.0) / dim_a as f64;
        let bound_b = 2.0 * (dim_b as f64 - 1.0) / dim_b as f64;
        for (norm_sq, bound) in [(trip.x_norm_sq(), bound_a), (trip.y_norm_sq(), bound_b)] {
            if norm_sq > bound + NORM_TOL {
                return Err(Error::NormViolation { norm_sq, bound });
            }
        }
        let purity = trip.purity();
        if purity > 1.0 + NORM_TOL {
            return Err(Error::NormViolation {
                norm_sq: purity,
                bound: 1.0,
            });
        }
        Ok(trip)
    }

    /// Shape checks only.
    pub fn unchecked(dim_a: usize, dim_b: usize, x: DVector<f64>, y: DVector<f64>, t: DMatrix<f64>) -> Result<Self> {
        for d in [dim_a, dim_b] {
            if d < 2 {
                return Err(Error::DimensionTooSmall(d));
            }
        }
        let (na, nb) = (dim_a * dim_a - 1, dim_b * dim_b - 1);
        if x.len() != na {
            return Err(Error::DimensionMismatch {
                expected: na,
                found: x.len(),
            });
        }
        if y.len() != nb {
            return Err(Error::DimensionMismatch {
                expected: nb,
                found: y.len(),
            });
        }
        if t.nrows() != na || t.ncols() != nb {
            return Err(Error::DimensionMismatch {
                expected: na * nb,
                found: t.nrows() * t.ncols(),
            });
        }
        Ok(Self { dim_a, dim_b, x, y, t })
    }

    pub fn x_norm_sq(&self) -> f64 {
        self.x.norm_squared()
    }

    pub fn y_norm_sq(&self) -> f64 {
        self.y.norm_squared()
    }

    pub fn t_norm_sq(&self) -> f64 {
        self.t.norm_squared()
    }

    /// `Tr(rho^2)` of the operator this triplet describes.
    pub fn purity(&self) -> f64 {
        let (d1, d2) = (self.dim_a as f64, self.dim_b as f64);
        1.0 / (d1 * d2) + self.x_norm_sq() / (2.0 * d2) + self.y_norm_sq() / (2.0 * d1) + self.t_norm_sq() / 4.0
    }
}

fn real_part(z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::Inconsistent(format!(
            "Bloch coefficient has imaginary part {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// `Tr_A[(G ⊗ I) M]` for a `d1 x d1` operator `g`.
fn contract_a(m: &ComplexMatrix, g: &ComplexMatrix, d1: usize, d2: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(d2, d2);
    for a in 0..d1 {
        for ap in 0..d1 {
            let coef = g.get(a, ap);
            if coef == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..d2 {
                for l in 0..d2 {
                    let z = out.get(k, l) + coef * m.get(ap * d2 + k, a * d2 + l);
                    out.set(k, l, z);
                }
            }
        }
    }
    out
}

/// Bloch triplet of an arbitrary Hermitian operator on `C^d1 ⊗ C^d2`.
pub fn decompose_operator(m: &ComplexMatrix, d1: usize, d2: usize) -> Result<BlochTriplet> {
    let rho = DensityMatrix::unchecked(m.clone(), d1, d2)?;
    let ba = basis(d1)?;
    let bb = basis(d2)?;
    let ra = rho.reduced(Subsystem::A);
    let rb = rho.reduced(Subsystem::B);
    let x = ba
        .generators
        .iter()
        .map(|g| real_part(ra.trace_product(&g.matrix)))
        .collect::<Result<Vec<_>>>()?;
    let y = bb
        .generators
        .iter()
        .map(|g| real_part(rb.trace_product(&g.matrix)))
        .collect::<Result<Vec<_>>>()?;
    let mut t = DMatrix::zeros(ba.len(), bb.len());
    for (i, gi) in ba.generators.iter().enumerate() {
        let c = contract_a(m, &gi.matrix, d1, d2);
        for (j, gj) in bb.generators.iter().enumerate() {
            t[(i, j)] = real_part(c.trace_product(&gj.matrix))?;
        }
    }
    BlochTriplet::unchecked(d1, d2, DVector::from_vec(x), DVector::from_vec(y), t)
}

/// Bloch triplet of a density matrix.
pub fn decompose(rho: &DensityMatrix) -> Result<BlochTriplet> {
    decompose_operator(rho.matrix(), rho.dim_a(), rho.dim_b())
}

/// Operator described by a triplet, without any positivity check.
pub fn reconstruct_operator(trip: &BlochTriplet) -> Result<ComplexMatrix> {
    let (d1, d2) = (trip.dim_a, trip.dim_b);
    let ba = basis(d1)?;
    let bb = basis(d2)?;
    let ia = ComplexMatrix::identity(d1);
    let ib = ComplexMatrix::identity(d2);
    let mut a_part = ComplexMatrix::zeros(d1, d1);
    for (i, g) in ba.generators.iter().enumerate() {
        a_part = &a_part + &g.matrix.scale(trip.x[i]);
    }
    let mut b_part = ComplexMatrix::zeros(d2, d2);
    for (j, g) in bb.generators.iter().enumerate() {
        b_part = &b_part + &g.matrix.scale(trip.y[j]);
    }
    let mut m = ComplexMatrix::identity(d1 * d2).scale(1.0 / (d1 * d2) as f64);
    m = &m + &a_part.kron(&ib).scale(0.5 / d2 as f64);
    m = &m + &ia.kron(&b_part).scale(0.5 / d1 as f64);
    for (i, gi) in ba.generators.iter().enumerate() {
        // Σ_j T_ij Λ_j first, then one Kronecker product per row.
        let mut row = ComplexMatrix::zeros(d2, d2);
        for (j, gj) in bb.generators.iter().enumerate() {
            let tij = trip.t[(i, j)];
            if tij != 0.0 {
                row = &row + &gj.matrix.scale(tij);
            }
        }
        m = &m + &gi.matrix.kron(&row).scale(0.25);
    }
    Ok(m)
}

/// Density matrix described by a triplet; fails if it is not a valid state.
pub fn reconstruct(trip: &BlochTriplet) -> Result<DensityMatrix> {
    DensityMatrix::validate(reconstruct_operator(trip)?, trip.dim_a, trip.dim_b)
}

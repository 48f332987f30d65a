//! Dense complex matrices and the handful of linear-algebra operations the
//! rest of the crate needs: Hermitian eigendecomposition, trace and
//! Hilbert-Schmidt norms, Kronecker products, partial transpose and partial
//! trace.
//!
//! Backed by `nalgebra`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance on `max |A - A^dagger|`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Absolute tolerance on `|Tr(rho) - 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues above this floor count as non-negative.
pub const PSD_FLOOR: f64 = -1e-10;

const EIG_MAX_ITERS: usize = 10_000;

/// Rounds `v` to `digits` significant decimal digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), v);
    s.parse().unwrap_or(v)
}

/// A dense complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixWire", into = "MatrixWire")]
pub struct ComplexMatrix(DMatrix<Complex64>);

// Row-major real and imaginary parts, the on-disk matrix format.
#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    #[serde(default)]
    im: Option<Vec<f64>>,
}

impl TryFrom<MatrixWire> for ComplexMatrix {
    type Error = Error;

    fn try_from(w: MatrixWire) -> Result<Self> {
        let n = w.rows * w.cols;
        if w.re.len() != n {
            return Err(Error::MalformedMatrix(format!(
                "expected {n} real entries, found {}",
                w.re.len()
            )));
        }
        let im = w.im.unwrap_or_else(|| vec![0.0; n]);
        if im.len() != n {
            return Err(Error::MalformedMatrix(format!(
                "expected {n} imaginary entries, found {}",
                im.len()
            )));
        }
        let data = w
            .re
            .iter()
            .zip(&im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        ComplexMatrix::new(w.rows, w.cols, data)
    }
}

impl From<ComplexMatrix> for MatrixWire {
    fn from(m: ComplexMatrix) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let mut re = Vec::with_capacity(rows * cols);
        let mut im = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                re.push(m.0[(i, j)].re);
                im.push(m.0[(i, j)].im);
            }
        }
        MatrixWire {
            rows,
            cols,
            re,
            im: Some(im),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, " ")?;
            for j in 0..self.cols() {
                let z = self.0[(i, j)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "expected {} entries, found {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, &data)))
    }

    /// Builds a real matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// `|v><v|`.
    pub fn projector(v: &[Complex64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Self {
        Self(m)
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.0[(i, j)] = z;
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.diagonal().iter().sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    /// `max |A_ij - conj(A_ji)|`; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `Σ |A_ij|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `max |A_ij - B_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Real part of `Tr(self · other)`, without forming the product.
    pub fn trace_product_re(&self, other: &Self) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                acc += self.0[(i, k)] * other.0[(k, i)];
            }
        }
        acc.re
    }

    /// Full `Tr(self · other)`.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                acc += self.0[(i, k)] * other.0[(k, i)];
            }
        }
        acc
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

/// Eigenvalues in descending order with matching unit eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    /// `V diag(λ) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = self.vectors.as_dmatrix();
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&l| Complex64::new(l, 0.0)),
        ));
        ComplexMatrix(v * d * v.adjoint())
    }
}

/// Fixes the global phase so that the first component of (near) maximal
/// modulus is real and positive, then rounds for comparison.
fn vector_key(v: &[Complex64]) -> Vec<(f64, f64)> {
    let maxmod = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = v
        .iter()
        .find(|z| z.norm() >= maxmod * (1.0 - 1e-9))
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = if pivot.norm() > 0.0 {
        pivot.conj() / pivot.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    v.iter()
        .map(|z| {
            let w = z * phase;
            (round_sig(w.re, 12), round_sig(w.im, 12))
        })
        .collect()
}

fn cmp_keys(a: &[(f64, f64)], b: &[(f64, f64)]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come out descending. Eigenvalues that agree to 12 significant
/// digits are ordered by the lexicographic order of their phase-fixed,
/// rounded eigenvectors, so repeated calls give identical output.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let deviation = a.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    let sym = (&a.0 + a.0.adjoint()).map(|z| z * 0.5);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, EIG_MAX_ITERS)
        .ok_or(Error::EigenNoConvergence)?;
    let n = a.rows();
    let columns: Vec<Vec<Complex64>> = (0..n)
        .map(|k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect();
    let keys: Vec<_> = columns.iter().map(|c| vector_key(c)).collect();
    let rounded: Vec<f64> = eig.eigenvalues.iter().map(|&l| round_sig(l, 12)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        rounded[j]
            .total_cmp(&rounded[i])
            .then_with(|| cmp_keys(&keys[i], &keys[j]))
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| columns[order[j]][i]);
    Ok(Spectrum { values, vectors })
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let deviation = a.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    let sym = (&a.0 + a.0.adjoint()).map(|z| z * 0.5);
    let mut vals: Vec<f64> = SymmetricEigen::try_new(sym, f64::EPSILON, EIG_MAX_ITERS)
        .ok_or(Error::EigenNoConvergence)?
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}

/// Eigenvalues of a real symmetric matrix, descending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let sym = (m + m.transpose()) * 0.5;
    let mut vals: Vec<f64> = SymmetricEigen::try_new(sym, f64::EPSILON, EIG_MAX_ITERS)
        .ok_or(Error::EigenNoConvergence)?
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}

/// Sum of singular values.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let svd = a
        .0
        .clone()
        .try_svd(false, false, f64::EPSILON, EIG_MAX_ITERS)
        .ok_or(Error::EigenNoConvergence)?;
    Ok(svd.singular_values.iter().sum())
}

/// `sqrt(Tr(A^dagger A))`.
pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.norm_sq().sqrt()
}

/// Which tensor factor an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

fn check_bipartite(m: &ComplexMatrix, d1: usize, d2: usize) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() != d1 * d2 {
        return Err(Error::DimensionMismatch {
            expected: d1 * d2,
            found: m.rows(),
        });
    }
    Ok(())
}

/// Partial transpose of an operator on `C^d1 ⊗ C^d2`.
pub fn partial_transpose(m: &ComplexMatrix, d1: usize, d2: usize, sub: Subsystem) -> Result<ComplexMatrix> {
    check_bipartite(m, d1, d2)?;
    let n = d1 * d2;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, k) = (r / d2, r % d2);
        let (j, l) = (c / d2, c % d2);
        match sub {
            Subsystem::B => m.0[(i * d2 + l, j * d2 + k)],
            Subsystem::A => m.0[(j * d2 + k, i * d2 + l)],
        }
    }))
}

/// Traces out the factor *not* named by `keep`.
pub fn partial_trace(m: &ComplexMatrix, d1: usize, d2: usize, keep: Subsystem) -> Result<ComplexMatrix> {
    check_bipartite(m, d1, d2)?;
    Ok(match keep {
        Subsystem::A => ComplexMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| m.0[(i * d2 + k, j * d2 + k)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(d2, d2, |k, l| {
            (0..d1).map(|i| m.0[(i * d2 + k, i * d2 + l)]).sum()
        }),
    })
}

/// A bipartite density matrix on `C^d1 ⊗ C^d2`.
///
/// Values built through [`DensityMatrix::validate`] are Hermitian, unit-trace
/// and positive semidefinite within tolerance. [`DensityMatrix::unchecked`]
/// skips everything but the shape checks and exists for matrices that are
/// known to break one of those properties.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl DensityMatrix {
    pub fn validate(matrix: ComplexMatrix, d1: usize, d2: usize) -> Result<Self> {
        Self::validate_with_tol(matrix, d1, d2, HERMITIAN_TOL)
    }

    /// `tol` is used for the Hermiticity, trace and PSD checks alike.
    pub fn validate_with_tol(matrix: ComplexMatrix, d1: usize, d2: usize, tol: f64) -> Result<Self> {
        let rho = Self::unchecked(matrix, d1, d2)?;
        let deviation = rho.matrix.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NonHermitian { deviation });
        }
        let trace = rho.matrix.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::TraceNotOne { trace });
        }
        let min_eigenvalue = hermitian_eigenvalues(&rho.matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min_eigenvalue < -tol {
            return Err(Error::NotPsd { min_eigenvalue });
        }
        Ok(rho)
    }

    /// Shape checks only.
    pub fn unchecked(matrix: ComplexMatrix, d1: usize, d2: usize) -> Result<Self> {
        for d in [d1, d2] {
            if d < 2 {
                return Err(Error::DimensionTooSmall(d));
            }
        }
        check_bipartite(&matrix, d1, d2)?;
        Ok(Self {
            matrix,
            dim_a: d1,
            dim_b: d2,
        })
    }

    /// The maximally mixed state.
    pub fn maximally_mixed(d1: usize, d2: usize) -> Result<Self> {
        let n = d1 * d2;
        Self::unchecked(ComplexMatrix::identity(n).scale(1.0 / n as f64), d1, d2)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn partial_transpose(&self, sub: Subsystem) -> ComplexMatrix {
        partial_transpose(&self.matrix, self.dim_a, self.dim_b, sub).expect("shape checked on construction")
    }

    /// Reduced operator on the factor named by `keep`.
    pub fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        partial_trace(&self.matrix, self.dim_a, self.dim_b, keep).expect("shape checked on construction")
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.matrix.norm_sq()
    }

    /// `U_A ⊗ U_B rho (U_A ⊗ U_B)^dagger`.
    pub fn local_unitary(&self, ua: &ComplexMatrix, ub: &ComplexMatrix) -> Result<Self> {
        if ua.rows() != self.dim_a || ub.rows() != self.dim_b {
            return Err(Error::DimensionMismatch {
                expected: self.dim_a * self.dim_b,
                found: ua.rows() * ub.rows(),
            });
        }
        let u = ua.kron(ub);
        let m = &(&u * &self.matrix) * &u.adjoint();
        Self::unchecked(m, self.dim_a, self.dim_b)
    }
}

/// Validates `matrix` as a `d1 x d2` density matrix with tolerance `tol`.
pub fn validate_density(matrix: ComplexMatrix, d1: usize, d2: usize, tol: f64) -> Result<DensityMatrix> {
    DensityMatrix::validate_with_tol(matrix, d1, d2, tol)
}

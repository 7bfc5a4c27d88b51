//! Dense complex linear algebra used throughout the crate.
//!
//! Everything here works on [`ComplexMatrix`] (a `nalgebra::DMatrix` of
//! `Complex64`). Hermitian spectral decompositions are normalized to a fixed
//! ordering and phase convention so that results are reproducible bit for bit.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

/// Default relative eigenvalue cutoff used to decide the support of an operator.
pub const DEFAULT_CUTOFF: f64 = 1e-10;

/// Numerical tolerances used by validation routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub psd: f64,
    pub trace: f64,
    pub tp: f64,
    pub recon: f64,
    pub cutoff: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-9,
            psd: 1e-9,
            trace: 1e-9,
            tp: 1e-8,
            recon: 1e-10,
            cutoff: DEFAULT_CUTOFF,
        }
    }
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted in descending order; each eigenvector column has its
/// first non-negligible component real and positive.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Column `i` as a vector.
    pub fn vector(&self, i: usize) -> ComplexVector {
        self.eigenvectors.column(i).into_owned()
    }

    /// `Σ f(λ_i) |v_i⟩⟨v_i|`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d = self.dim();
        let mut scaled = self.eigenvectors.clone();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            let w = f(lam);
            for i in 0..d {
                scaled[(i, j)] *= w;
            }
        }
        &scaled * self.eigenvectors.adjoint()
    }

    /// Projector onto the eigenvectors whose eigenvalue satisfies `keep`.
    pub fn projector(&self, keep: impl Fn(f64) -> bool) -> ComplexMatrix {
        self.map(|l| if keep(l) { 1.0 } else { 0.0 })
    }

    /// `Σ λ_i |v_i⟩⟨v_i|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }
}

pub fn check_square(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

pub fn check_finite(m: &ComplexMatrix) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Largest entrywise deviation `|A_ij - conj(A_ji)|`.
pub fn hermiticity_violation(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn frobenius_norm(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Scale used to turn absolute tolerances into tolerances relative to the
/// size of the matrix (never below 1).
pub(crate) fn norm_scale(m: &ComplexMatrix) -> f64 {
    frobenius_norm(m).max(1.0)
}

/// `(A + A†) / 2`.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

pub fn trace(m: &ComplexMatrix) -> C64 {
    m.diagonal().iter().copied().sum()
}

pub fn real_trace(m: &ComplexMatrix) -> f64 {
    trace(m).re
}

/// `Tr[A B]` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

pub fn diagonal(values: &[f64]) -> ComplexMatrix {
    let d = values.len();
    let mut m = ComplexMatrix::zeros(d, d);
    for (i, &v) in values.iter().enumerate() {
        m[(i, i)] = C64::new(v, 0.0);
    }
    m
}

/// `|v⟩⟨v|`.
pub fn outer(v: &ComplexVector) -> ComplexMatrix {
    v * v.adjoint()
}

/// `⟨v|A|v⟩` (real part; exact for Hermitian `A`).
pub fn expectation(a: &ComplexMatrix, v: &ComplexVector) -> f64 {
    (v.adjoint() * a * v)[(0, 0)].re
}

fn fix_phase(vectors: &mut ComplexMatrix) {
    let n = vectors.nrows();
    for j in 0..vectors.ncols() {
        let max_abs = (0..n).map(|i| vectors[(i, j)].norm()).fold(0.0, f64::max);
        if max_abs == 0.0 {
            continue;
        }
        let lead = (0..n)
            .map(|i| vectors[(i, j)])
            .find(|z| z.norm() > 1e-10 * max_abs)
            .expect("column has a non-zero entry");
        let phase = lead.conj() / lead.norm();
        for i in 0..n {
            vectors[(i, j)] *= phase;
        }
    }
}

/// Eigendecomposition of a matrix assumed Hermitian up to rounding. Only the
/// Hermitian part is decomposed.
pub fn eigh_unchecked(m: &ComplexMatrix) -> EigenDecomposition {
    let n = m.nrows();
    if n == 0 {
        return EigenDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: ComplexMatrix::zeros(0, 0),
        };
    }
    let sym = nalgebra::linalg::SymmetricEigen::new(hermitian_part(m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        sym.eigenvalues[b]
            .partial_cmp(&sym.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&k| sym.eigenvalues[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &sym.eigenvectors.column(src));
    }
    fix_phase(&mut eigenvectors);
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// Hermitian eigendecomposition with validation of the input.
pub fn eigh(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    check_square(m)?;
    check_finite(m)?;
    let violation = hermiticity_violation(m);
    if violation > Tolerances::default().herm * norm_scale(m) {
        return Err(Error::NotHermitian { violation });
    }
    Ok(eigh_unchecked(m))
}

/// Threshold below which an eigenvalue of a PSD operator with largest
/// eigenvalue `lambda_max` counts as zero.
pub(crate) fn support_threshold(lambda_max: f64, cutoff: f64) -> f64 {
    (cutoff * lambda_max).max(f64::MIN_POSITIVE)
}

/// `λ ↦ λ^p` on eigenvalues above `cutoff · λ_max`, zero elsewhere. For negative
/// exponents this is the pseudo-inverse power on the support; exponent zero
/// yields the support projector.
pub fn power_on_support(m: &ComplexMatrix, exponent: f64, cutoff: f64) -> ComplexMatrix {
    let eig = eigh_unchecked(m);
    power_from_eigen(&eig, exponent, cutoff)
}

pub(crate) fn power_from_eigen(eig: &EigenDecomposition, exponent: f64, cutoff: f64) -> ComplexMatrix {
    let lmax = eig.max_eigenvalue();
    if lmax <= 0.0 {
        return ComplexMatrix::zeros(eig.dim(), eig.dim());
    }
    let thr = support_threshold(lmax, cutoff);
    eig.map(|l| if l > thr { l.powf(exponent) } else { 0.0 })
}

/// Projector onto the eigenvectors with eigenvalue above `cutoff · λ_max`.
pub fn support_projector_of(m: &ComplexMatrix, cutoff: f64) -> Result<ComplexMatrix> {
    let eig = eigh_unchecked(m);
    let lmax = eig.max_eigenvalue();
    if lmax <= 1e-300 {
        return Err(Error::ZeroState);
    }
    let thr = support_threshold(lmax, cutoff);
    Ok(eig.projector(|l| l > thr))
}

/// Number of eigenvalues above `cutoff · λ_max`.
pub fn rank_of(eig: &EigenDecomposition, cutoff: f64) -> usize {
    let lmax = eig.max_eigenvalue();
    if lmax <= 0.0 {
        return 0;
    }
    let thr = support_threshold(lmax, cutoff);
    eig.eigenvalues.iter().filter(|&&l| l > thr).count()
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm_hermitian(m: &ComplexMatrix) -> f64 {
    eigh_unchecked(m).eigenvalues.iter().map(|l| l.abs()).sum()
}

/// Largest absolute eigenvalue of a Hermitian matrix.
pub fn operator_norm_hermitian(m: &ComplexMatrix) -> f64 {
    eigh_unchecked(m)
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .fold(0.0, f64::max)
}

/// Singular values in descending order (`min(rows, cols)` of them).
///
/// Computed from the Hermitian eigendecomposition of the smaller Gram matrix,
/// with each value re-measured as `‖M† u‖` (or `‖M v‖`) so that tiny singular
/// values keep absolute accuracy instead of being lost to squaring. The
/// general complex SVD is avoided: it can return inaccurate factors for
/// rank-deficient input.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = if m.nrows() <= m.ncols() {
        let mh = m.adjoint();
        let eig = eigh_unchecked(&(m * &mh));
        (0..m.nrows()).map(|j| (&mh * eig.vector(j)).norm()).collect()
    } else {
        let eig = eigh_unchecked(&(m.adjoint() * m));
        (0..m.ncols()).map(|j| (m * eig.vector(j)).norm()).collect()
    };
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m).iter().sum()
}

/// Left singular vectors (columns) together with their singular values,
/// sorted descending. The returned matrix is square (`rows x rows`) and
/// columns beyond the rank carry singular value zero.
pub fn left_singular_system(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    // Eigenvectors of M M† are the left singular vectors; the values are
    // re-measured as ‖M† u‖ (see `singular_values`).
    let n = m.nrows();
    let mh = m.adjoint();
    let eig = eigh_unchecked(&(m * &mh));
    let mut pairs: Vec<(f64, ComplexVector)> = (0..n)
        .map(|j| {
            let u = eig.vector(j);
            ((&mh * &u).norm(), u)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut basis = ComplexMatrix::zeros(n, n);
    let mut values = vec![0.0; n];
    for (j, (s, v)) in pairs.into_iter().enumerate() {
        values[j] = s;
        basis.set_column(j, &v);
    }
    fix_phase(&mut basis);
    (values, basis)
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Which factor of a bipartite system to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of an operator on `A ⊗ B` (dimensions `da`, `db`), keeping
/// the requested factor.
pub fn partial_trace(m: &ComplexMatrix, da: usize, db: usize, keep: Subsystem) -> ComplexMatrix {
    match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i, k| {
            (0..db).map(|j| m[(i * db + j, k * db + j)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |j, l| {
            (0..da).map(|i| m[(i * db + j, i * db + l)]).sum()
        }),
    }
}

/// Partial transpose on the `B` factor.
pub fn partial_transpose_b(m: &ComplexMatrix, da: usize, db: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(da * db, da * db, |r, c| {
        let (i, j) = (r / db, r % db);
        let (k, l) = (c / db, c % db);
        m[(i * db + l, k * db + j)]
    })
}

/// Block-diagonal `A ⊕ s` with the scalar appended as the last basis vector.
pub fn direct_sum_scalar(m: &ComplexMatrix, s: f64) -> ComplexMatrix {
    let d = m.nrows();
    let mut out = ComplexMatrix::zeros(d + 1, d + 1);
    out.view_mut((0, 0), (d, d)).copy_from(m);
    out[(d, d)] = C64::new(s, 0.0);
    out
}

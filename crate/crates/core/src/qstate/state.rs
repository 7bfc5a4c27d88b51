use serde::{Deserialize, Serialize};

use super::linalg::{
    self, check_finite, check_square, eigh_unchecked, hermiticity_violation, norm_scale,
    ComplexMatrix, ComplexVector, Tolerances, C64,
};
use crate::error::{Error, Result};

/// Largest Hilbert-space dimension any state may have.
pub const DIM_CAP: usize = 4096;

/// Whether a state is required to have unit trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceClass {
    Normalized,
    Subnormalized,
}

impl TraceClass {
    fn label(self) -> &'static str {
        match self {
            TraceClass::Normalized => "normalized",
            TraceClass::Subnormalized => "subnormalized",
        }
    }
}

/// A Hermitian positive semi-definite operator with trace one (normalized) or
/// at most one (subnormalized).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityState {
    matrix: ComplexMatrix,
    trace_class: TraceClass,
}

/// Checks every invariant of [`DensityState`]. Never symmetrizes or
/// renormalizes the input.
pub fn validate_state(
    matrix: ComplexMatrix,
    trace_class: TraceClass,
    tol: &Tolerances,
) -> Result<DensityState> {
    check_square(&matrix)?;
    check_finite(&matrix)?;
    let scale = norm_scale(&matrix);
    let violation = hermiticity_violation(&matrix);
    if violation > tol.herm * scale {
        return Err(Error::NotHermitian { violation });
    }
    let eig = eigh_unchecked(&matrix);
    let lmin = eig.min_eigenvalue();
    if lmin < -tol.psd * scale {
        return Err(Error::NotPositive {
            min_eigenvalue: lmin,
        });
    }
    let tr = linalg::real_trace(&matrix);
    let ok = match trace_class {
        TraceClass::Normalized => (tr - 1.0).abs() <= tol.trace,
        TraceClass::Subnormalized => tr >= -tol.trace && tr <= 1.0 + tol.trace,
    };
    if !ok {
        return Err(Error::BadTrace {
            trace: tr,
            expected: trace_class.label(),
        });
    }
    Ok(DensityState {
        matrix,
        trace_class,
    })
}

impl DensityState {
    /// Validates with the default tolerances.
    pub fn new(matrix: ComplexMatrix, trace_class: TraceClass) -> Result<Self> {
        validate_state(matrix, trace_class, &Tolerances::default())
    }

    pub fn normalized(matrix: ComplexMatrix) -> Result<Self> {
        Self::new(matrix, TraceClass::Normalized)
    }

    pub fn subnormalized(matrix: ComplexMatrix) -> Result<Self> {
        Self::new(matrix, TraceClass::Subnormalized)
    }

    /// Wraps a matrix produced by an internal computation that preserves the
    /// invariants up to rounding.
    pub(crate) fn from_trusted(matrix: ComplexMatrix, trace_class: TraceClass) -> Self {
        Self {
            matrix,
            trace_class,
        }
    }

    /// Diagonal state; normalized when the entries sum to one within tolerance,
    /// subnormalized otherwise.
    pub fn from_diagonal(values: &[f64]) -> Result<Self> {
        let s: f64 = values.iter().sum();
        let class = if (s - 1.0).abs() <= Tolerances::default().trace {
            TraceClass::Normalized
        } else {
            TraceClass::Subnormalized
        };
        Self::new(linalg::diagonal(values), class)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_trusted(
            linalg::identity(dim).scale(1.0 / dim as f64),
            TraceClass::Normalized,
        )
    }

    /// `|i⟩⟨i|` in dimension `dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(i, i)] = C64::new(1.0, 0.0);
        Self::from_trusted(m, TraceClass::Normalized)
    }

    /// The zero operator, a valid subnormalized state.
    pub fn zero(dim: usize) -> Self {
        Self::from_trusted(ComplexMatrix::zeros(dim, dim), TraceClass::Subnormalized)
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self::from_trusted(linalg::outer(psi.vector()), TraceClass::Normalized)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace_class(&self) -> TraceClass {
        self.trace_class
    }

    pub fn trace(&self) -> f64 {
        linalg::real_trace(&self.matrix)
    }

    /// Trace equals one within tolerance, regardless of the declared class.
    pub fn is_normalized(&self) -> bool {
        (self.trace() - 1.0).abs() <= Tolerances::default().trace
    }

    /// `c · ρ` as a subnormalized state (`0 ≤ c·Tr ρ ≤ 1`).
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::subnormalized(self.matrix.scale(c))
    }

    /// Relabels a normalized state as subnormalized.
    pub fn as_subnormalized(&self) -> Self {
        Self::from_trusted(self.matrix.clone(), TraceClass::Subnormalized)
    }

    pub fn eigen(&self) -> linalg::EigenDecomposition {
        eigh_unchecked(&self.matrix)
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::BadTrace {
                trace: self.trace(),
                expected: "normalized",
            })
        }
    }
}

pub(crate) fn same_dim(a: &DensityState, b: &DensityState) -> Result<usize> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.dim())
}

/// Projector onto the eigenvectors of `rho` with eigenvalue above
/// `cutoff · λ_max`.
pub fn support_projector(rho: &DensityState, cutoff: f64) -> Result<ComplexMatrix> {
    linalg::support_projector_of(rho.matrix(), cutoff)
}

/// Pseudo-power `ρ^p` on the support of `ρ`.
pub fn matrix_power_on_support(rho: &DensityState, exponent: f64, cutoff: f64) -> ComplexMatrix {
    linalg::power_on_support(rho.matrix(), exponent, cutoff)
}

/// Kronecker product of two states; the trace class is normalized only when
/// both factors are.
pub fn tensor(a: &DensityState, b: &DensityState) -> Result<DensityState> {
    let dim = a.dim() * b.dim();
    if dim > DIM_CAP {
        return Err(Error::DimCap { dim, cap: DIM_CAP });
    }
    let class = if a.trace_class == TraceClass::Normalized && b.trace_class == TraceClass::Normalized
    {
        TraceClass::Normalized
    } else {
        TraceClass::Subnormalized
    };
    Ok(DensityState::from_trusted(
        linalg::kron(&a.matrix, &b.matrix),
        class,
    ))
}

/// `ρ^{⊗n}` for `n ≥ 1`.
pub fn tensor_power(rho: &DensityState, n: usize) -> Result<DensityState> {
    if n == 0 {
        return Err(Error::BadShape("tensor power needs n >= 1".into()));
    }
    let dim = rho.dim().saturating_pow(n.min(u32::MAX as usize) as u32);
    if dim > DIM_CAP {
        return Err(Error::DimCap { dim, cap: DIM_CAP });
    }
    let mut acc = rho.clone();
    for _ in 1..n {
        acc = tensor(&acc, rho)?;
    }
    Ok(acc)
}

/// Canonical purification `(√ρ ⊗ I) Σ_i |i⟩|i⟩` on `dim²`; tracing out the
/// second factor recovers `ρ`.
pub fn purify(rho: &DensityState) -> Result<PureState> {
    rho.require_normalized()?;
    let d = rho.dim();
    let sqrt = linalg::power_on_support(rho.matrix(), 0.5, 0.0);
    let mut v = ComplexVector::zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            v[i * d + j] = sqrt[(i, j)];
        }
    }
    let norm = v.norm();
    v /= C64::new(norm, 0.0);
    Ok(PureState { vector: v })
}

/// A unit vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    vector: ComplexVector,
}

impl PureState {
    pub fn new(vector: ComplexVector) -> Result<Self> {
        let norm = vector.norm();
        if (norm - 1.0).abs() > Tolerances::default().trace {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { vector })
    }

    /// Rescales a non-zero vector to unit norm.
    pub fn normalize(vector: ComplexVector) -> Result<Self> {
        let norm = vector.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            vector: vector / C64::new(norm, 0.0),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(ComplexVector::from_iterator(
            amplitudes.len(),
            amplitudes.iter().map(|&a| C64::new(a, 0.0)),
        ))
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = ComplexVector::zeros(dim);
        v[i] = C64::new(1.0, 0.0);
        Self { vector: v }
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vector
    }

    pub fn density(&self) -> DensityState {
        DensityState::from_pure(self)
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState {
            vector: self.vector.kronecker(&other.vector),
        }
    }
}

/// A probability vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalDistribution {
    probs: Vec<f64>,
}

impl ClassicalDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::BadDistribution("empty".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::BadDistribution(format!("entry {p} is not a probability")));
        }
        let s: f64 = probs.iter().sum();
        if (s - 1.0).abs() > Tolerances::default().trace {
            return Err(Error::BadDistribution(format!("entries sum to {s}")));
        }
        Ok(Self { probs })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Diagonal embedding.
    pub fn to_state(&self) -> DensityState {
        DensityState::from_trusted(linalg::diagonal(&self.probs), TraceClass::Normalized)
    }
}

/// A positive operator-valued measure.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    effects: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(effects: Vec<ComplexMatrix>) -> Result<Self> {
        let tol = Tolerances::default();
        let first = effects
            .first()
            .ok_or_else(|| Error::BadPovm("no effects".into()))?;
        let d = check_square(first)?;
        let mut sum = ComplexMatrix::zeros(d, d);
        for (k, e) in effects.iter().enumerate() {
            if e.nrows() != d || e.ncols() != d {
                return Err(Error::BadPovm(format!("effect {k} has the wrong shape")));
            }
            check_finite(e)?;
            let scale = norm_scale(e);
            let h = hermiticity_violation(e);
            if h > tol.herm * scale {
                return Err(Error::BadPovm(format!("effect {k} is not Hermitian ({h:e})")));
            }
            let lmin = eigh_unchecked(e).min_eigenvalue();
            if lmin < -tol.psd * scale {
                return Err(Error::BadPovm(format!("effect {k} has eigenvalue {lmin:e}")));
            }
            sum += e;
        }
        let dev = linalg::frobenius_norm(&(sum - linalg::identity(d)));
        if dev > tol.tp {
            return Err(Error::BadPovm(format!("effects sum to identity only within {dev:e}")));
        }
        Ok(Self { effects })
    }

    /// Rank-one projective measurement onto the columns of a unitary.
    pub fn projective(basis: &ComplexMatrix) -> Result<Self> {
        let effects = (0..basis.ncols())
            .map(|j| linalg::outer(&basis.column(j).into_owned()))
            .collect();
        Self::new(effects)
    }

    pub(crate) fn from_trusted(effects: Vec<ComplexMatrix>) -> Self {
        Self { effects }
    }

    pub fn dim(&self) -> usize {
        self.effects[0].nrows()
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    /// `(Tr[E_x ρ])_x`, with rounding noise below zero clipped.
    pub fn outcome_probabilities(&self, rho: &DensityState) -> Result<Vec<f64>> {
        if rho.dim() != self.dim() {
            return Err(Error::DimMismatch {
                left: self.dim(),
                right: rho.dim(),
            });
        }
        Ok(self
            .effects
            .iter()
            .map(|e| linalg::trace_product(e, rho.matrix()).re.max(0.0))
            .collect())
    }
}

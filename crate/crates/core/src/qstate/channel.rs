use serde::{Deserialize, Serialize};

use super::linalg::{self, check_finite, ComplexMatrix, Tolerances, C64};
use super::state::{DensityState, TraceClass};
use crate::error::{Error, Result};

/// Completely positive map kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    /// Trace preserving: `Σ K†K = I`.
    Cptp,
    /// Trace non-increasing: `Σ K†K ≤ I`.
    Tni,
}

/// A completely positive map in Kraus form.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<ComplexMatrix>,
    kind: ChannelKind,
}

impl QuantumChannel {
    pub fn new(kraus: Vec<ComplexMatrix>, kind: ChannelKind) -> Result<Self> {
        let tol = Tolerances::default();
        let first = kraus
            .first()
            .ok_or_else(|| Error::BadShape("channel needs at least one Kraus operator".into()))?;
        let (out_dim, in_dim) = (first.nrows(), first.ncols());
        let mut gram = ComplexMatrix::zeros(in_dim, in_dim);
        for (k, op) in kraus.iter().enumerate() {
            if op.nrows() != out_dim || op.ncols() != in_dim {
                return Err(Error::BadShape(format!(
                    "Kraus operator {k} is {}x{}, expected {out_dim}x{in_dim}",
                    op.nrows(),
                    op.ncols()
                )));
            }
            check_finite(op)?;
            gram += op.adjoint() * op;
        }
        let defect = linalg::identity(in_dim) - gram;
        match kind {
            ChannelKind::Cptp => {
                let violation = linalg::operator_norm_hermitian(&defect);
                if violation > tol.tp {
                    return Err(Error::NotTracePreserving {
                        kind: "trace-preserving",
                        violation,
                    });
                }
            }
            ChannelKind::Tni => {
                let lmin = linalg::eigh_unchecked(&defect).min_eigenvalue();
                if lmin < -tol.tp {
                    return Err(Error::NotTracePreserving {
                        kind: "trace-non-increasing",
                        violation: -lmin,
                    });
                }
            }
        }
        Ok(Self {
            in_dim,
            out_dim,
            kraus,
            kind,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            in_dim: dim,
            out_dim: dim,
            kraus: vec![linalg::identity(dim)],
            kind: ChannelKind::Cptp,
        }
    }

    /// Completely dephasing channel in the computational basis.
    pub fn dephasing(dim: usize) -> Self {
        let kraus = (0..dim)
            .map(|i| {
                let mut k = ComplexMatrix::zeros(dim, dim);
                k[(i, i)] = C64::new(1.0, 0.0);
                k
            })
            .collect();
        Self {
            in_dim: dim,
            out_dim: dim,
            kraus,
            kind: ChannelKind::Cptp,
        }
    }

    /// Channel with Kraus operators `{A_k ⊗ B_k}`.
    pub fn local_product(a_ops: &[ComplexMatrix], b_ops: &[ComplexMatrix], kind: ChannelKind) -> Result<Self> {
        if a_ops.len() != b_ops.len() {
            return Err(Error::BadShape("local operator lists differ in length".into()));
        }
        let kraus = a_ops
            .iter()
            .zip(b_ops)
            .map(|(a, b)| linalg::kron(a, b))
            .collect();
        Self::new(kraus, kind)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    /// `Σ K ρ K†`. The output is normalized only for a trace-preserving channel
    /// acting on a normalized input.
    pub fn apply(&self, rho: &DensityState) -> Result<DensityState> {
        if rho.dim() != self.in_dim {
            return Err(Error::DimMismatch {
                left: self.in_dim,
                right: rho.dim(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            out += k * rho.matrix() * k.adjoint();
        }
        let out = linalg::hermitian_part(&out);
        let class = if self.kind == ChannelKind::Cptp && rho.trace_class() == TraceClass::Normalized {
            TraceClass::Normalized
        } else {
            TraceClass::Subnormalized
        };
        Ok(DensityState::from_trusted(out, class))
    }
}

/// Applies `channel` to `rho`.
pub fn apply_channel(channel: &QuantumChannel, rho: &DensityState) -> Result<DensityState> {
    channel.apply(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::linalg::{diagonal, frobenius_norm};
    use crate::qstate::random;

    #[test]
    fn identity_channel_is_a_no_op() {
        let rho = random::random_density(3, 2, 1).unwrap();
        let out = QuantumChannel::identity(3).apply(&rho).unwrap();
        assert!(frobenius_norm(&(out.matrix() - rho.matrix())) < 1e-15);
    }

    #[test]
    fn dephasing_keeps_the_diagonal() {
        let rho = random::random_density(3, 3, 2).unwrap();
        let out = QuantumChannel::dephasing(3).apply(&rho).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { rho.matrix()[(i, j)] } else { C64::new(0.0, 0.0) };
                assert!((out.matrix()[(i, j)] - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn single_projector_is_trace_non_increasing() {
        let ch = QuantumChannel::new(vec![diagonal(&[1.0, 0.0])], ChannelKind::Tni).unwrap();
        let out = ch.apply(&DensityState::maximally_mixed(2)).unwrap();
        assert_eq!(out.trace_class(), TraceClass::Subnormalized);
        assert!(frobenius_norm(&(out.matrix() - diagonal(&[0.5, 0.0]))) < 1e-15);
        assert!(matches!(
            QuantumChannel::new(vec![diagonal(&[1.0, 0.0])], ChannelKind::Cptp),
            Err(Error::NotTracePreserving { .. })
        ));
    }

    #[test]
    fn kraus_shapes_must_agree() {
        let ops = vec![ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(3, 2)];
        assert!(matches!(QuantumChannel::new(ops, ChannelKind::Tni), Err(Error::BadShape(_))));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let rho = DensityState::maximally_mixed(3);
        assert!(matches!(
            QuantumChannel::identity(2).apply(&rho),
            Err(Error::DimMismatch { .. })
        ));
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::linalg::{self, eigh_unchecked, singular_values, ComplexMatrix};
use crate::qstate::{DensityState, PureState};

/// Schmidt coefficients at or below this count as zero.
pub const SCHMIDT_CUTOFF: f64 = 1e-10;
/// Partial-transpose eigenvalues below `-PPT_TOL` certify entanglement.
pub const PPT_TOL: f64 = 1e-12;

/// Split of a system into `A ⊗ B`, with basis index `i·dim_b + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteCut {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteCut {
    pub fn new(dim_a: usize, dim_b: usize) -> Self {
        Self { dim_a, dim_b }
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// Errors unless the cut factors `dim`.
    pub fn check(&self, dim: usize) -> Result<()> {
        if self.dim_a == 0 || self.dim_b == 0 || self.dim() != dim {
            return Err(Error::BadCut {
                dim_a: self.dim_a,
                dim_b: self.dim_b,
                dim,
            });
        }
        Ok(())
    }

    /// Cuts on which the PPT criterion decides separability.
    pub fn ppt_is_decisive(&self) -> bool {
        matches!((self.dim_a, self.dim_b), (2, 2) | (2, 3) | (3, 2))
    }
}

impl fmt::Display for BipartiteCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.dim_a, self.dim_b)
    }
}

impl FromStr for BipartiteCut {
    type Err = Error;

    /// Parses `AxB`, e.g. `2x3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadField {
            field: "cut".into(),
            message: format!("expected AxB, found {s:?}"),
        };
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        Ok(Self::new(a, b))
    }
}

/// Schmidt coefficients (descending) and the Schmidt rank.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtData {
    pub coefficients: Vec<f64>,
    pub rank: usize,
}

impl SchmidtData {
    /// Squared coefficients, the spectrum of either reduced state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c * c).collect()
    }
}

/// `dim_a x dim_b` matrix `M_ij = ψ_{i·dim_b + j}`.
pub(crate) fn reshape(psi: &PureState, cut: BipartiteCut) -> ComplexMatrix {
    let v = psi.vector();
    ComplexMatrix::from_fn(cut.dim_a, cut.dim_b, |i, j| v[i * cut.dim_b + j])
}

/// Singular values of the reshaped amplitude matrix.
pub fn schmidt_decompose(psi: &PureState, cut: BipartiteCut) -> Result<SchmidtData> {
    cut.check(psi.dim())?;
    let coefficients = singular_values(&reshape(psi, cut));
    let rank = coefficients.iter().filter(|&&c| c > SCHMIDT_CUTOFF).count();
    Ok(SchmidtData { coefficients, rank })
}

fn shannon(probs: &[f64]) -> f64 {
    probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

/// Shannon entropy (base 2) of the squared Schmidt coefficients.
pub fn entanglement_entropy(psi: &PureState, cut: BipartiteCut) -> Result<f64> {
    Ok(shannon(&schmidt_decompose(psi, cut)?.probabilities()))
}

/// Schmidt number of a mixed state on a cut where PPT is decisive: 1 for a
/// PSD partial transpose (separable), 2 otherwise.
pub fn schmidt_number_ppt(rho: &DensityState, cut: BipartiteCut) -> Result<usize> {
    cut.check(rho.dim())?;
    if !cut.ppt_is_decisive() {
        return Err(Error::UnsupportedCut {
            dim_a: cut.dim_a,
            dim_b: cut.dim_b,
        });
    }
    rho.require_normalized()?;
    Ok(if min_partial_transpose_eigenvalue(rho, cut) < -PPT_TOL { 2 } else { 1 })
}

/// Smallest eigenvalue of `ρ^{T_B}`.
pub fn min_partial_transpose_eigenvalue(rho: &DensityState, cut: BipartiteCut) -> f64 {
    let pt = linalg::partial_transpose_b(rho.matrix(), cut.dim_a, cut.dim_b);
    eigh_unchecked(&pt).min_eigenvalue()
}

/// A measure on pure bipartite states, extended to mixed states by the
/// decomposition searches.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "monotone", rename_all = "snake_case")]
pub enum PureMonotone {
    EntanglementEntropy,
    /// `log₂` of the Schmidt rank.
    LogSchmidtRank,
    /// Rényi entropy of order `alpha` of the squared Schmidt coefficients.
    RenyiEntropy { alpha: f64 },
}

impl PureMonotone {
    pub fn parse(name: &str, alpha: Option<f64>) -> Result<Self> {
        match name {
            "entropy" | "entanglement-entropy" => Ok(PureMonotone::EntanglementEntropy),
            "log-schmidt-rank" => Ok(PureMonotone::LogSchmidtRank),
            "renyi-entropy" => {
                let alpha = alpha.ok_or(Error::BadField {
                    field: "alpha".into(),
                    message: "required for renyi-entropy".into(),
                })?;
                if !(alpha >= 0.0) {
                    return Err(Error::AlphaOutOfRange {
                        alpha,
                        variant: "renyi entropy",
                    });
                }
                Ok(PureMonotone::RenyiEntropy { alpha })
            }
            other => Err(Error::BadField {
                field: "monotone".into(),
                message: format!("unknown monotone {other:?}"),
            }),
        }
    }

    /// Value on a (normalized) pure state.
    pub fn evaluate(&self, psi: &PureState, cut: BipartiteCut) -> Result<f64> {
        let data = schmidt_decompose(psi, cut)?;
        Ok(self.on_schmidt(&data))
    }

    pub(crate) fn on_schmidt(&self, data: &SchmidtData) -> f64 {
        match *self {
            PureMonotone::EntanglementEntropy => shannon(&data.probabilities()),
            PureMonotone::LogSchmidtRank => (data.rank.max(1) as f64).log2(),
            PureMonotone::RenyiEntropy { alpha } => {
                let p = data.probabilities();
                if alpha == 1.0 {
                    shannon(&p)
                } else if alpha == 0.0 {
                    (data.rank.max(1) as f64).log2()
                } else if alpha == f64::INFINITY {
                    -p.first().copied().unwrap_or(1.0).log2()
                } else {
                    let s: f64 = p.iter().filter(|&&x| x > 0.0).map(|x| x.powf(alpha)).sum();
                    s.log2() / (1.0 - alpha)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::random;

    fn bell() -> PureState {
        PureState::from_real(&[std::f64::consts::FRAC_1_SQRT_2, 0.0, 0.0, std::f64::consts::FRAC_1_SQRT_2]).unwrap()
    }

    fn werner(p: f64) -> DensityState {
        let phi = bell().density();
        let m = phi.matrix().scale(p) + linalg::identity(4).scale((1.0 - p) / 4.0);
        DensityState::normalized(m).unwrap()
    }

    #[test]
    fn product_and_bell_states() {
        let cut = BipartiteCut::new(2, 2);
        let prod = PureState::basis(2, 0).tensor(&random::random_pure(2, 1).unwrap());
        assert_eq!(schmidt_decompose(&prod, cut).unwrap().rank, 1);
        assert!(entanglement_entropy(&prod, cut).unwrap().abs() < 1e-12);
        let b = schmidt_decompose(&bell(), cut).unwrap();
        assert_eq!(b.rank, 2);
        assert!((b.coefficients[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((entanglement_entropy(&bell(), cut).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_unbalanced_state() {
        let psi = PureState::from_real(&[0.75f64.sqrt(), 0.0, 0.0, 0.25f64.sqrt()]).unwrap();
        let h = entanglement_entropy(&psi, BipartiteCut::new(2, 2)).unwrap();
        assert!((h - 0.811_278_124_459_132_9).abs() < 1e-12);
    }

    #[test]
    fn coefficients_are_normalized() {
        let psi = random::random_pure(9, 3).unwrap();
        let s = schmidt_decompose(&psi, BipartiteCut::new(3, 3)).unwrap();
        let total: f64 = s.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn werner_threshold() {
        let cut = BipartiteCut::new(2, 2);
        assert_eq!(schmidt_number_ppt(&werner(1.0 / 3.0 - 1e-9), cut).unwrap(), 1);
        assert_eq!(schmidt_number_ppt(&werner(1.0 / 3.0 + 1e-9), cut).unwrap(), 2);
        assert_eq!(schmidt_number_ppt(&werner(0.5), cut).unwrap(), 2);
        assert_eq!(schmidt_number_ppt(&bell().density(), cut).unwrap(), 1 + 1);
    }

    #[test]
    fn larger_cuts_are_refused() {
        let rho = DensityState::maximally_mixed(9);
        assert!(matches!(
            schmidt_number_ppt(&rho, BipartiteCut::new(3, 3)),
            Err(Error::UnsupportedCut { .. })
        ));
        assert!(matches!(
            schmidt_number_ppt(&rho, BipartiteCut::new(2, 3)),
            Err(Error::BadCut { .. })
        ));
    }

    #[test]
    fn cut_parsing() {
        assert_eq!("2x3".parse::<BipartiteCut>().unwrap(), BipartiteCut::new(2, 3));
        assert!("2by3".parse::<BipartiteCut>().is_err());
    }
}

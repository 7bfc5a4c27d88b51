//! JSON file formats for states and channels.
//!
//! State: `{"dim": d, "trace_class": "normalized"|"subnormalized",
//! "matrix": [[[re, im], ...], ...]}` (row-major).
//! Channel: `{"in_dim", "out_dim", "kind": "cptp"|"tni", "kraus": [matrix, ...]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::channel::{ChannelKind, QuantumChannel};
use super::linalg::{ComplexMatrix, C64};
use super::state::{DensityState, TraceClass};
use crate::error::{Error, Result};

pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    pub trace_class: TraceClass,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelFile {
    pub in_dim: usize,
    pub out_dim: usize,
    pub kind: ChannelKind,
    pub kraus: Vec<MatrixJson>,
}

pub fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson, field: &str, shape: (usize, usize)) -> Result<ComplexMatrix> {
    if rows.len() != shape.0 {
        return Err(Error::BadField {
            field: field.to_string(),
            message: format!("expected {} rows, found {}", shape.0, rows.len()),
        });
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != shape.1) {
        return Err(Error::BadField {
            field: format!("{field}[{i}]"),
            message: format!("expected {} columns, found {}", shape.1, row.len()),
        });
    }
    Ok(ComplexMatrix::from_fn(shape.0, shape.1, |i, j| {
        let [re, im] = rows[i][j];
        C64::new(re, im)
    }))
}

impl StateFile {
    pub fn from_state(rho: &DensityState) -> Self {
        Self {
            dim: rho.dim(),
            trace_class: rho.trace_class(),
            matrix: matrix_to_json(rho.matrix()),
        }
    }

    pub fn into_state(self) -> Result<DensityState> {
        let m = matrix_from_json(&self.matrix, "matrix", (self.dim, self.dim))?;
        DensityState::new(m, self.trace_class)
    }
}

impl ChannelFile {
    pub fn from_channel(ch: &QuantumChannel) -> Self {
        Self {
            in_dim: ch.in_dim(),
            out_dim: ch.out_dim(),
            kind: ch.kind(),
            kraus: ch.kraus().iter().map(matrix_to_json).collect(),
        }
    }

    pub fn into_channel(self) -> Result<QuantumChannel> {
        let kraus = self
            .kraus
            .iter()
            .enumerate()
            .map(|(k, m)| matrix_from_json(m, &format!("kraus[{k}]"), (self.out_dim, self.in_dim)))
            .collect::<Result<Vec<_>>>()?;
        QuantumChannel::new(kraus, self.kind)
    }
}

pub fn parse_state(text: &str) -> Result<DensityState> {
    serde_json::from_str::<StateFile>(text)?.into_state()
}

pub fn state_to_json(rho: &DensityState) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(rho)).expect("state serializes")
}

pub fn read_state(path: impl AsRef<Path>) -> Result<DensityState> {
    parse_state(&std::fs::read_to_string(path)?)
}

pub fn write_state(path: impl AsRef<Path>, rho: &DensityState) -> Result<()> {
    std::fs::write(path, state_to_json(rho))?;
    Ok(())
}

pub fn parse_channel(text: &str) -> Result<QuantumChannel> {
    serde_json::from_str::<ChannelFile>(text)?.into_channel()
}

pub fn channel_to_json(ch: &QuantumChannel) -> String {
    serde_json::to_string_pretty(&ChannelFile::from_channel(ch)).expect("channel serializes")
}

pub fn read_channel(path: impl AsRef<Path>) -> Result<QuantumChannel> {
    parse_channel(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::random;

    #[test]
    fn state_json_layout() {
        let rho = DensityState::basis(2, 0);
        let v: serde_json::Value = serde_json::from_str(&state_to_json(&rho)).unwrap();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["trace_class"], "normalized");
        assert_eq!(v["matrix"][0][0], serde_json::json!([1.0, 0.0]));
        assert_eq!(v["matrix"][1][1], serde_json::json!([0.0, 0.0]));
    }

    #[test]
    fn state_round_trip() {
        let rho = random::random_density(3, 2, 4).unwrap();
        assert_eq!(parse_state(&state_to_json(&rho)).unwrap(), rho);
    }

    #[test]
    fn channel_round_trip() {
        let ch = random::random_channel(2, 3, 2, 4).unwrap();
        assert_eq!(parse_channel(&channel_to_json(&ch)).unwrap(), ch);
    }

    #[test]
    fn malformed_json_reports_line() {
        let err = parse_state("{\n \"dim\": 2,\n \"trace_class\": oops }").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_row_length_names_the_field() {
        let text = r#"{"dim": 2, "trace_class": "normalized", "matrix": [[[1,0],[0,0]], [[0,0]]]}"#;
        match parse_state(text).unwrap_err() {
            Error::BadField { field, .. } => assert_eq!(field, "matrix[1]"),
            other => panic!("unexpected {other:?}"),
        }
    }
}

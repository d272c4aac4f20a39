//! JSON file formats: channel specifications, bare matrices and reports.
//!
//! Complex numbers are `[re, im]` pairs, matrices are arrays of rows. Every
//! float is written with 17 significant digits (`1.2345678901234567e-1`),
//! which round-trips any `f64` exactly.

use std::io;
use std::path::Path;

use cpcheck::{ChoiMatrix, ComplexMatrix, CpReport, KrausSet, SuperOperator, Tolerances, C64};
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter};

/// A matrix as nested rows of `[re, im]` pairs.
pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn matrix_from_json(rows: &JsonMatrix) -> Result<ComplexMatrix, String> {
    let converted: Vec<Vec<C64>> = rows
        .iter()
        .map(|row| row.iter().map(|[re, im]| C64::new(*re, *im)).collect())
        .collect();
    ComplexMatrix::from_rows(&converted).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Repr {
    Kraus,
    Choi,
    Superop,
}

impl std::fmt::Display for Repr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Repr::Kraus => "kraus",
            Repr::Choi => "choi",
            Repr::Superop => "superop",
        })
    }
}

/// A channel in any of the three supported representations.
#[derive(Debug, Clone, PartialEq)]
pub enum Channel {
    Kraus(KrausSet),
    Choi(ChoiMatrix),
    Superop(SuperOperator),
}

impl Channel {
    pub fn dim(&self) -> usize {
        match self {
            Channel::Kraus(k) => k.dim(),
            Channel::Choi(j) => j.dim(),
            Channel::Superop(s) => s.dim(),
        }
    }

    pub fn repr(&self) -> Repr {
        match self {
            Channel::Kraus(_) => Repr::Kraus,
            Channel::Choi(_) => Repr::Choi,
            Channel::Superop(_) => Repr::Superop,
        }
    }

    pub fn choi(&self) -> ChoiMatrix {
        match self {
            Channel::Kraus(k) => ChoiMatrix::from_kraus(k),
            Channel::Choi(j) => j.clone(),
            Channel::Superop(s) => ChoiMatrix::from_superop(s),
        }
    }

    pub fn apply(&self, x: &ComplexMatrix) -> cpcheck::Result<ComplexMatrix> {
        match self {
            Channel::Kraus(k) => k.apply(x),
            Channel::Choi(j) => SuperOperator::from_choi(j).apply(x),
            Channel::Superop(s) => s.apply(x),
        }
    }

    pub fn to_spec(&self) -> ChannelSpecFile {
        let data = match self {
            Channel::Kraus(k) => SpecData::Many(k.matrices().iter().map(matrix_to_json).collect()),
            Channel::Choi(j) => SpecData::One(matrix_to_json(j.matrix())),
            Channel::Superop(s) => SpecData::One(matrix_to_json(s.matrix())),
        };
        ChannelSpecFile {
            dim: self.dim(),
            repr: self.repr(),
            data,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecData {
    Many(Vec<JsonMatrix>),
    One(JsonMatrix),
}

/// On-disk channel specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpecFile {
    pub dim: usize,
    pub repr: Repr,
    pub data: SpecData,
}

/// Error carrying a `source:line[:col]` prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// 1-based line of the first occurrence of `"key"`, or 1.
fn line_of(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map_or(1, |i| i + 1)
}

fn json_error(source: &str, e: &serde_json::Error) -> InputError {
    InputError(format!("{source}:{}:{}: {e}", e.line(), e.column()))
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Parses and validates a channel specification.
pub fn parse_channel(source: &str, text: &str) -> Result<Channel, InputError> {
    // Parse through a Value first so untagged-enum failures still get positions.
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| json_error(source, &e))?;
    let at = |key: &str, msg: String| InputError(format!("{source}:{}: {msg}", line_of(text, key)));
    let spec: ChannelSpecFile = serde_json::from_value(value).map_err(|e| at("data", e.to_string()))?;

    let n = spec.dim;
    if n == 0 {
        return Err(at("dim", "dim must be at least 1".into()));
    }
    let n2 = n * n;
    let shaped = |m: &JsonMatrix, rows: usize, what: &str| -> Result<ComplexMatrix, InputError> {
        let mat = matrix_from_json(m).map_err(|e| at("data", format!("{what}: {e}")))?;
        if mat.shape() != (rows, rows) {
            return Err(at(
                "data",
                format!(
                    "{what} is {}x{}, expected {rows}x{rows} for dim = {n}",
                    mat.rows(),
                    mat.cols()
                ),
            ));
        }
        Ok(mat)
    };
    match (spec.repr, &spec.data) {
        (Repr::Kraus, SpecData::Many(list)) => {
            let mats = list
                .iter()
                .enumerate()
                .map(|(p, m)| shaped(m, n, &format!("Kraus matrix {p}")))
                .collect::<Result<Vec<_>, _>>()?;
            KrausSet::new(mats)
                .map(Channel::Kraus)
                .map_err(|e| at("data", e.to_string()))
        }
        (Repr::Choi, SpecData::One(m)) => {
            let mat = shaped(m, n2, "Choi matrix")?;
            Ok(Channel::Choi(ChoiMatrix::new(n, mat).expect("shape checked")))
        }
        (Repr::Superop, SpecData::One(m)) => {
            let mat = shaped(m, n2, "superoperator")?;
            Ok(Channel::Superop(SuperOperator::new(n, mat).expect("shape checked")))
        }
        (Repr::Kraus, SpecData::One(_)) => Err(at("data", "repr \"kraus\" needs a list of matrices".into())),
        (_, SpecData::Many(_)) => Err(at("data", "repr \"choi\"/\"superop\" needs a single matrix".into())),
    }
}

/// Parses a bare matrix file (nested rows of `[re, im]`).
pub fn parse_matrix(source: &str, text: &str) -> Result<ComplexMatrix, InputError> {
    let rows: JsonMatrix = serde_json::from_str(text).map_err(|e| json_error(source, &e))?;
    matrix_from_json(&rows).map_err(|e| InputError(format!("{source}:1: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceRecord {
    pub herm_tol: f64,
    pub psd_tol: f64,
    pub rank_tol: f64,
}

impl From<&Tolerances> for ToleranceRecord {
    fn from(t: &Tolerances) -> Self {
        Self {
            herm_tol: t.herm_tol(),
            psd_tol: t.psd_tol(),
            rank_tol: t.rank_tol(),
        }
    }
}

/// Machine-readable output of `check --json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub tool_version: String,
    pub dim: usize,
    pub repr: Repr,
    pub tolerances: ToleranceRecord,
    pub hermiticity_defect: f64,
    pub is_hermitian: bool,
    pub min_eigenvalue: Option<f64>,
    pub max_eigenvalue: Option<f64>,
    pub is_psd: bool,
    pub is_cp: bool,
    pub rank: usize,
    pub zero_diag_consistent: bool,
    pub trace_preserving: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus: Option<Vec<JsonMatrix>>,
}

impl ReportFile {
    pub fn new(report: &CpReport, repr: Repr, t: &Tolerances, kraus: Option<&KrausSet>) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            dim: report.dim,
            repr,
            tolerances: t.into(),
            hermiticity_defect: report.hermiticity_defect,
            is_hermitian: report.is_hermitian,
            min_eigenvalue: report.min_eigenvalue,
            max_eigenvalue: report.max_eigenvalue,
            is_psd: report.is_psd,
            is_cp: report.is_cp,
            rank: report.rank,
            zero_diag_consistent: report.zero_diag_consistent,
            trace_preserving: report.trace_preserving,
            eigenvalues: report.eigenvalues.clone(),
            kraus: kraus.map(|k| k.matrices().iter().map(matrix_to_json).collect()),
        }
    }
}

/// Compact JSON formatter writing every float with 17 significant digits.
#[derive(Debug, Default, Clone, Copy)]
pub struct FullPrecision;

impl Formatter for FullPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        CompactFormatter.write_f32(writer, value)
    }
}

/// Serializes `value` as one line of JSON with full-precision floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
    value.serialize(&mut ser).expect("in-memory serialization cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use cpcheck::{ComplexMatrix, C64};
use cpcheck_cli::format::{matrix_to_json, parse_channel, parse_matrix, to_json, Channel};
use cpcheck_cli::{run_from_args, Outcome};
use serde_json::Value;
use tempfile::TempDir;

/// Scratch directory for input files.
pub struct Scratch {
    dir: TempDir,
}

impl Scratch {
    pub fn new() -> Self {
        Self {
            dir: TempDir::new().expect("tempdir"),
        }
    }

    pub fn write(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).expect("write scratch file");
        path
    }

    pub fn write_matrix(&self, name: &str, m: &ComplexMatrix) -> PathBuf {
        self.write(name, &to_json(&matrix_to_json(m)))
    }

    pub fn write_channel(&self, name: &str, c: &Channel) -> PathBuf {
        self.write(name, &to_json(&c.to_spec()))
    }
}

pub fn run(args: &[&str]) -> Outcome {
    run_from_args(std::iter::once("cpcheck").chain(args.iter().copied()))
}

pub fn run_paths(cmd: &str, path: &Path, rest: &[&str]) -> Outcome {
    let p = path.to_str().unwrap();
    let mut args = vec![cmd, p];
    args.extend_from_slice(rest);
    run(&args)
}

pub fn channel_from_stdout(out: &Outcome) -> Channel {
    parse_channel("<stdout>", &out.stdout).unwrap_or_else(|e| panic!("unparseable output: {e}\n{}", out.stdout))
}

pub fn matrix_from_stdout(out: &Outcome) -> ComplexMatrix {
    parse_matrix("<stdout>", &out.stdout).expect("matrix output")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).expect("schema file");
    let value: Value = serde_json::from_str(&text).expect("schema json");
    jsonschema::validator_for(&value).expect("valid schema")
}

pub fn assert_valid(schema_name: &str, text: &str) {
    let instance: Value = serde_json::from_str(text).expect("json output");
    let validator = schema(schema_name);
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}\n{text}");
}

/// The 4x4 unitary turning the {I, E12, E21, Z} depolarizing Kraus set into Paulis.
pub fn pauli_remix_unitary() -> ComplexMatrix {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    ComplexMatrix::new(
        4,
        4,
        vec![
            one,
            z,
            z,
            z, //
            z,
            C64::new(r, 0.0),
            C64::new(0.0, -r),
            z, //
            z,
            C64::new(r, 0.0),
            C64::new(0.0, r),
            z, //
            z,
            z,
            z,
            one,
        ],
    )
    .unwrap()
}

/// Scalar `c` with `m = c * target` to `tol`, if it exists.
pub fn proportionality(m: &ComplexMatrix, target: &ComplexMatrix, tol: f64) -> Option<C64> {
    let (idx, _) = target
        .as_slice()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))?;
    let c = m.as_slice()[idx] / target.as_slice()[idx];
    (m.max_abs_diff(&target.scale(c)) <= tol).then_some(c)
}

pub fn depolarize(lambda: f64, mu: f64, x: &ComplexMatrix) -> ComplexMatrix {
    &ComplexMatrix::identity(2).scale(x.trace() * (lambda / 2.0)) + &x.scale_real(mu)
}

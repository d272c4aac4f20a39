use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use cpcheck::zoo::{ZooEntry, ZOO_SCHEMAS};
use cpcheck::{cp_verdict, kraus_from_choi, remix_kraus, CpReport, Error, KrausSet, Tolerances};

use crate::format::{parse_channel, parse_matrix, read_text, to_json, Channel, InputError, ReportFile};
use crate::ExitStatus;

/// Result of running one command: exit status plus the text for each stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            status: ExitStatus::Cp,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(status: ExitStatus, stderr: String) -> Self {
        Self {
            status,
            stdout: String::new(),
            stderr,
        }
    }
}

impl From<InputError> for Outcome {
    fn from(e: InputError) -> Self {
        Outcome::fail(ExitStatus::InputError, format!("error: {e}\n"))
    }
}

/// Exit status a library error maps to.
pub fn status_for(e: &Error) -> ExitStatus {
    match e {
        Error::NotCp { .. } => ExitStatus::NotCp,
        Error::NoConvergence { .. } | Error::NumericalFailure(_) | Error::SingularNormalization { .. } => {
            ExitStatus::NumericalFailure
        }
        _ => ExitStatus::InputError,
    }
}

fn library_failure(context: &str, e: Error) -> Outcome {
    Outcome::fail(status_for(&e), format!("error: {context}: {e}\n"))
}

fn tolerances(tol: f64) -> Result<Tolerances, Outcome> {
    Tolerances::uniform(tol).map_err(|e| library_failure("--tol", e))
}

fn load_channel(path: &Path) -> Result<Channel, Outcome> {
    let text = read_text(path)?;
    Ok(parse_channel(&path.display().to_string(), &text)?)
}

fn load_matrix(path: &Path) -> Result<cpcheck::ComplexMatrix, Outcome> {
    let text = read_text(path)?;
    Ok(parse_matrix(&path.display().to_string(), &text)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn human_report(source: &str, channel: &Channel, report: &CpReport, tol: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "channel: {source} (dim {}, repr {})", report.dim, channel.repr());
    let _ = writeln!(
        out,
        "hermiticity defect: {:.3e} (hermitian: {})",
        report.hermiticity_defect,
        yes_no(report.is_hermitian)
    );
    let _ = writeln!(out, "zero-diagonal consistent: {}", yes_no(report.zero_diag_consistent));
    match (&report.eigenvalues, report.min_eigenvalue, report.max_eigenvalue) {
        (Some(eigs), Some(min), Some(max)) => {
            let list: Vec<String> = eigs.iter().map(|l| format!("{l:.12}")).collect();
            let _ = writeln!(out, "eigenvalues: [{}]", list.join(", "));
            let _ = writeln!(out, "eigenvalue range: [{min:.12}, {max:.12}]");
        }
        _ => {
            let _ = writeln!(out, "eigenvalues: not computed (matrix is not Hermitian)");
        }
    }
    let _ = writeln!(out, "rank: {}", report.rank);
    if let Some(tp) = report.trace_preserving {
        let _ = writeln!(out, "trace preserving: {}", yes_no(tp));
    }
    let _ = writeln!(out, "tolerance: {tol:e}");
    let _ = writeln!(out, "completely positive: {}", yes_no(report.is_cp));
    out
}

fn verdict_status(report: &CpReport) -> ExitStatus {
    if report.is_cp {
        ExitStatus::Cp
    } else {
        ExitStatus::NotCp
    }
}

/// `check`: CP verdict with spectrum and rank.
pub fn check(input: &Path, tol: f64, json: bool) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let t = tolerances(tol)?;
        let channel = load_channel(input)?;
        let choi = channel.choi();
        let kraus_input = match &channel {
            Channel::Kraus(k) => Some(k),
            _ => None,
        };
        let report = cp_verdict(&choi, &t, kraus_input).map_err(|e| library_failure("check", e))?;
        let status = verdict_status(&report);
        let stdout = if json {
            let minimal = report.is_cp.then(|| kraus_from_choi(&choi, &t)).and_then(Result::ok);
            to_json(&ReportFile::new(&report, channel.repr(), &t, minimal.as_ref())) + "\n"
        } else {
            human_report(&input.display().to_string(), &channel, &report, tol)
        };
        Ok(Outcome {
            status,
            stdout,
            stderr: String::new(),
        })
    };
    run().unwrap_or_else(|o| o)
}

fn minimal_kraus(channel: &Channel, t: &Tolerances) -> Result<KrausSet, Outcome> {
    let choi = channel.choi();
    kraus_from_choi(&choi, t).map_err(|e| match e {
        Error::NotCp { .. } => {
            let summary = cp_verdict(&choi, t, None)
                .map(|r| {
                    format!(
                        "map is not completely positive (hermitian: {}, min eigenvalue: {})",
                        yes_no(r.is_hermitian),
                        r.min_eigenvalue.map_or("n/a".into(), |m| format!("{m:.12}"))
                    )
                })
                .unwrap_or_else(|e| e.to_string());
            Outcome::fail(ExitStatus::NotCp, format!("error: {summary}\n"))
        }
        other => library_failure("kraus", other),
    })
}

/// `kraus`: minimal Kraus set as a `repr: "kraus"` spec.
pub fn kraus(input: &Path, tol: f64) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let t = tolerances(tol)?;
        let channel = load_channel(input)?;
        let k = minimal_kraus(&channel, &t)?;
        Ok(Outcome::ok(to_json(&Channel::Kraus(k).to_spec()) + "\n"))
    };
    run().unwrap_or_else(|o| o)
}

/// `remix`: `M~_j = sum_p U[p, j] M_p`. Non-Kraus inputs are first reduced to
/// their minimal Kraus set.
pub fn remix(input: &Path, unitary: &Path, tol: f64) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let t = tolerances(tol)?;
        let channel = load_channel(input)?;
        let u = load_matrix(unitary)?;
        let k = match channel {
            Channel::Kraus(k) => k,
            other => minimal_kraus(&other, &t)?,
        };
        let remixed = remix_kraus(&k, &u).map_err(|e| library_failure("remix", e))?;
        Ok(Outcome::ok(to_json(&Channel::Kraus(remixed).to_spec()) + "\n"))
    };
    run().unwrap_or_else(|o| o)
}

/// `apply`: `L[X]` as a bare matrix.
pub fn apply(channel: &Path, state: &Path) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let channel = load_channel(channel)?;
        let x = load_matrix(state)?;
        let y = channel.apply(&x).map_err(|e| library_failure("apply", e))?;
        Ok(Outcome::ok(to_json(&crate::format::matrix_to_json(&y)) + "\n"))
    };
    run().unwrap_or_else(|o| o)
}

pub fn zoo_usage() -> String {
    let mut out = String::from("usage: cpcheck zoo <name> [key=value ...]\nchannels:\n");
    for (name, params) in ZOO_SCHEMAS {
        let _ = writeln!(
            out,
            "  {name} {}",
            params
                .iter()
                .map(|p| format!("{p}=<value>"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    out
}

/// `zoo`: emits a named channel as a `repr: "superop"` spec.
pub fn zoo(name: &str, params: &[String], seed: Option<u64>) -> Outcome {
    let usage_error = |msg: String| Outcome::fail(ExitStatus::InputError, format!("error: {msg}\n{}", zoo_usage()));
    let mut parsed = BTreeMap::new();
    for p in params {
        let Some((k, v)) = p.split_once('=') else {
            return usage_error(format!("parameter `{p}` is not of the form key=value"));
        };
        let Ok(value) = v.trim().parse::<f64>() else {
            return usage_error(format!("parameter `{k}` has non-numeric value `{v}`"));
        };
        if parsed.insert(k.trim().to_string(), value).is_some() {
            return usage_error(format!("parameter `{k}` given twice"));
        }
    }
    if let Some(seed) = seed {
        if parsed.insert("seed".into(), seed as f64).is_some() {
            return usage_error("seed given both as --seed and seed=".into());
        }
    }
    match ZooEntry::build(name, &parsed) {
        Ok(entry) => Outcome::ok(to_json(&Channel::Superop(entry.channel).to_spec()) + "\n"),
        Err(e @ Error::SingularNormalization { .. }) => library_failure("zoo", e),
        Err(e) => usage_error(e.to_string()),
    }
}

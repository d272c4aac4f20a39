//! Named channels: the textbook examples (transposition, depolarizing) plus
//! a few baselines and a seeded random CPTP generator for property tests.

use std::collections::BTreeMap;
use std::fmt;

use crate::channel::{scalar_identity, KrausSet, SuperOperator};
use crate::error::{Error, Result};
use crate::matrix::random::{ginibre, seeded_rng};
use crate::matrix::{hermitian_eigen, ComplexMatrix, C64};

/// Attempts made by [`random_cptp`] before giving up on a singular normalization.
pub const RANDOM_CPTP_ATTEMPTS: usize = 8;

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

/// `[[0, -i], [i, 0]]`.
pub fn pauli_y() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    let z = C64::new(0.0, 0.0);
    ComplexMatrix::new(2, 2, vec![z, -i, i, z]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

fn out_of_range(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::ParameterOutOfRange { name, value, reason }
}

/// `X -> X^T` on `M_n(C)`. Positive but not completely positive.
pub fn transpose_map(n: usize) -> Result<SuperOperator> {
    if n < 2 {
        return Err(out_of_range("n", n as f64, "transpose needs n >= 2"));
    }
    SuperOperator::from_map(n, ComplexMatrix::transpose)
}

/// `X -> (lambda/2) tr(X) I + mu X` on `M_2(C)`.
///
/// Any real parameters are accepted, including ones outside the CP region
/// `lambda >= 0, lambda/2 + 2 mu >= 0`.
pub fn depolarizing(lambda: f64, mu: f64) -> Result<SuperOperator> {
    for (name, v) in [("lambda", lambda), ("mu", mu)] {
        if !v.is_finite() {
            return Err(out_of_range(name, v, "must be finite"));
        }
    }
    SuperOperator::from_map(2, |x| {
        &scalar_identity(2, x.trace() * (lambda / 2.0)) + &x.scale_real(mu)
    })
}

pub fn identity_channel(n: usize) -> Result<SuperOperator> {
    if n < 1 {
        return Err(out_of_range("n", 0.0, "identity needs n >= 1"));
    }
    Ok(SuperOperator::identity(n))
}

/// Kraus set `{sqrt(1-p) I, sqrt(p) sigma_z}`.
pub fn dephasing_kraus(p: f64) -> Result<KrausSet> {
    if !(0.0..=1.0).contains(&p) {
        return Err(out_of_range("p", p, "dephasing needs 0 <= p <= 1"));
    }
    KrausSet::new(vec![
        ComplexMatrix::identity(2).scale_real((1.0 - p).sqrt()),
        pauli_z().scale_real(p.sqrt()),
    ])
}

pub fn dephasing(p: f64) -> Result<SuperOperator> {
    Ok(SuperOperator::from_kraus(&dephasing_kraus(p)?))
}

/// `k` random `n x n` Kraus matrices whitened so that `sum_p M_p^dagger M_p = I`.
///
/// Draws Ginibre matrices `G_p` and sets `M_p = G_p S^{-1/2}` with
/// `S = sum_p G_p^dagger G_p`. Deterministic per `seed`.
pub fn random_cptp(n: usize, k: usize, seed: u64) -> Result<KrausSet> {
    if n < 2 {
        return Err(out_of_range("n", n as f64, "random_cptp needs n >= 2"));
    }
    if k < 1 {
        return Err(out_of_range("k", 0.0, "random_cptp needs k >= 1"));
    }
    let mut rng = seeded_rng(seed);
    for _ in 0..RANDOM_CPTP_ATTEMPTS {
        let draws: Vec<ComplexMatrix> = (0..k).map(|_| ginibre(n, n, &mut rng)).collect();
        let sum = draws
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, g| &acc + &g.adjoint().matmul(g));
        let eig = hermitian_eigen(&sum, 1e-9).map_err(Error::into_numerical)?;
        let max = eig.max_eigenvalue().unwrap_or(0.0);
        let min = eig.min_eigenvalue().unwrap_or(0.0);
        if min <= 1e-12 * max {
            continue;
        }
        let p = &eig.eigenvectors;
        let inv_sqrt = ComplexMatrix::from_fn(n, n, |i, j| p[(i, j)] / eig.eigenvalues[j].sqrt()).matmul(&p.adjoint());
        return KrausSet::new(draws.iter().map(|g| g.matmul(&inv_sqrt)).collect());
    }
    Err(Error::SingularNormalization {
        attempts: RANDOM_CPTP_ATTEMPTS,
    })
}

/// Names accepted by [`ZooEntry::build`], with their parameters.
pub const ZOO_SCHEMAS: &[(&str, &[&str])] = &[
    ("transpose", &["n"]),
    ("depolarizing", &["lambda", "mu"]),
    ("identity", &["n"]),
    ("dephasing", &["p"]),
    ("random_cptp", &["n", "k", "seed"]),
];

/// A named, parameterized channel from the zoo.
#[derive(Debug, Clone, PartialEq)]
pub struct ZooEntry {
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
    pub channel: SuperOperator,
}

impl ZooEntry {
    /// Builds a zoo channel from its name and parameters. Every listed
    /// parameter is required, except `seed` for `random_cptp` (default 0).
    pub fn build(name: &str, parameters: &BTreeMap<String, f64>) -> Result<Self> {
        let Some((_, expected)) = ZOO_SCHEMAS.iter().find(|(n, _)| *n == name) else {
            return Err(Error::InvalidParameter(format!("unknown zoo channel `{name}`")));
        };
        if let Some(extra) = parameters.keys().find(|k| !expected.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!(
                "`{name}` takes parameters {expected:?}, got unexpected `{extra}`"
            )));
        }
        let get = |key: &'static str| -> Result<f64> {
            match (parameters.get(key), key) {
                (Some(v), _) => Ok(*v),
                (None, "seed") => Ok(0.0),
                (None, _) => Err(Error::InvalidParameter(format!("`{name}` needs parameter `{key}`"))),
            }
        };
        let channel = match name {
            "transpose" => transpose_map(as_count("n", get("n")?)?)?,
            "depolarizing" => depolarizing(get("lambda")?, get("mu")?)?,
            "identity" => identity_channel(as_count("n", get("n")?)?)?,
            "dephasing" => dephasing(get("p")?)?,
            "random_cptp" => {
                let seed = as_count("seed", get("seed")?)? as u64;
                let kraus = random_cptp(as_count("n", get("n")?)?, as_count("k", get("k")?)?, seed)?;
                SuperOperator::from_kraus(&kraus)
            }
            _ => unreachable!("schema table and match agree"),
        };
        let mut params = parameters.clone();
        if name == "random_cptp" {
            params.entry("seed".into()).or_insert(0.0);
        }
        Ok(Self {
            name: name.to_string(),
            parameters: params,
            channel,
        })
    }
}

impl fmt::Display for ZooEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}{{{}}}", self.name, params.join(","))
    }
}

fn as_count(name: &'static str, v: f64) -> Result<usize> {
    if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= 9_007_199_254_740_992.0 {
        Ok(v as usize)
    } else {
        Err(out_of_range(name, v, "must be a non-negative integer"))
    }
}

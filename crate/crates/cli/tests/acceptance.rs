//! Acceptance gate: prints one PASS/FAIL line per criterion and exits
//! non-zero if any failed. Runs without the libtest harness so the lines are
//! always visible under `cargo test`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use cpcheck::analysis::gram_matrix;
use cpcheck::matrix::random::{ginibre, random_psd, random_unitary_with, seeded_rng};
use cpcheck::zoo::{depolarizing, pauli_x, pauli_y, pauli_z, random_cptp, transpose_map};
use cpcheck::{
    cp_verdict, gram_vectors, hermitian_eigen, kraus_from_choi, minimal_kraus_count, psd_from_blocks, remix_kraus,
    ChoiMatrix, ComplexMatrix, Error, KrausSet, Tolerances, C64,
};
use cpcheck_cli::format::{parse_channel, parse_matrix, to_json, ReportFile};
use cpcheck_cli::{ExitStatus, Outcome};
use rand::Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

// Negated on purpose: a NaN measurement must fail the check.
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn depolarizing_choi(lambda: f64, mu: f64) -> ChoiMatrix {
    ChoiMatrix::from_superop(&depolarizing(lambda, mu).unwrap())
}

fn extracted_depolarizing() -> KrausSet {
    kraus_from_choi(&depolarizing_choi(0.5, 0.5), &tol()).unwrap()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let choi = ChoiMatrix::from_superop(&transpose_map(2).map_err(|e| e.to_string())?);
    let report = cp_verdict(&choi, &tol(), None).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    #[rustfmt::skip]
    let displayed = ComplexMatrix::from_real(4, 4, &[
        1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
    ])
    .unwrap();
    ensure!(
        choi.matrix() == &displayed,
        "Choi matrix differs from the swap matrix: {:?}",
        choi.matrix()
    );
    ensure!(!report.is_cp, "transposition reported CP");
    let min = report.min_eigenvalue.ok_or("no spectrum")?;
    ensure!((min + 1.0).abs() <= 1e-9, "min eigenvalue {min}");
    ensure!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    Ok(format!("min eigenvalue {min:.3e}, {elapsed:?}"))
}

fn criterion_2() -> Verdict {
    let mut max_err = 0.0f64;
    for (lambda, mu) in [(1.0, 0.0), (0.5, 0.5), (0.5, 0.25), (2.0, -0.4)] {
        let report = cp_verdict(&depolarizing_choi(lambda, mu), &tol(), None).map_err(|e| e.to_string())?;
        let mut expected = [lambda / 2.0 + 2.0 * mu, lambda / 2.0, lambda / 2.0, lambda / 2.0];
        expected.sort_by(|a, b| b.total_cmp(a));
        let eigs = report.eigenvalues.ok_or("no spectrum")?;
        for (got, want) in eigs.iter().zip(expected) {
            max_err = max_err.max((got - want).abs());
        }
        ensure!(
            max_err <= 1e-10,
            "(λ, μ) = ({lambda}, {mu}): eigenvalues {eigs:?} vs {expected:?}"
        );
        let in_region = lambda >= 0.0 && lambda / 2.0 + 2.0 * mu >= 0.0;
        ensure!(
            report.is_cp == in_region,
            "(λ, μ) = ({lambda}, {mu}): is_cp = {}",
            report.is_cp
        );
    }
    Ok(format!("max eigenvalue error {max_err:.1e}"))
}

fn criterion_3() -> Verdict {
    let k = extracted_depolarizing();
    ensure!(k.len() == 4, "extracted {} matrices", k.len());
    let mut rng = seeded_rng(2024);
    let mut max_err = 0.0f64;
    for _ in 0..20 {
        let x = ginibre(2, 2, &mut rng);
        let got = k.apply(&x).map_err(|e| e.to_string())?;
        max_err = max_err.max(got.max_abs_diff(&depolarize(0.5, 0.5, &x)));
    }
    ensure!(max_err <= 1e-9, "reconstruction error {max_err:.3e}");
    let targets = [
        ComplexMatrix::identity(2),
        ComplexMatrix::unit(2, 0, 1),
        ComplexMatrix::unit(2, 1, 0),
        pauli_z(),
    ];
    // |c|^2 from the reconstruction identity: (λ+4μ)/4, λ/2, λ/2, λ/4.
    let weights = [5.0 / 8.0, 0.25, 0.25, 0.125];
    for (p, ((m, t), w)) in k.matrices().iter().zip(&targets).zip(weights).enumerate() {
        let c = proportionality(m, t, 1e-9).ok_or(format!("M_{p} not proportional to its target: {m:?}"))?;
        ensure!(
            (c.norm_sqr() - w).abs() <= 1e-9,
            "M_{p}: |c|^2 = {} vs {w}",
            c.norm_sqr()
        );
    }
    Ok(format!("reconstruction error {max_err:.1e}; set ∝ {{I, E12, E21, σz}}"))
}

fn criterion_4() -> Verdict {
    let k = extracted_depolarizing();
    let remixed = remix_kraus(&k, &pauli_remix_unitary()).map_err(|e| e.to_string())?;
    for (p, (m, t)) in remixed
        .matrices()
        .iter()
        .zip([ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()])
        .enumerate()
    {
        ensure!(
            proportionality(m, &t, 1e-9).is_some(),
            "remixed M_{p} not Pauli-proportional: {m:?}"
        );
    }
    let drift = ChoiMatrix::from_kraus(&remixed)
        .matrix()
        .max_abs_diff(ChoiMatrix::from_kraus(&k).matrix());
    ensure!(drift <= 1e-10, "Choi drift {drift:.3e}");
    Ok(format!("set ∝ {{I, σx, σy, σz}}; Choi drift {drift:.1e}"))
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let mut rng = seeded_rng(5);
    let mut max_err = 0.0f64;
    for i in 0..200u64 {
        let n = rng.random_range(2..=4usize);
        let k = rng.random_range(1..=6usize);
        let kraus = random_cptp(n, k, 1_000 + i).map_err(|e| e.to_string())?;
        let choi = ChoiMatrix::from_kraus(&kraus);
        let report = cp_verdict(&choi, &tol(), Some(&kraus)).map_err(|e| e.to_string())?;
        ensure!(report.is_cp, "channel {i} (n={n}, k={k}) reported not CP");
        let extracted = kraus_from_choi(&choi, &tol()).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let x = ginibre(n, n, &mut rng);
            let err = extracted.apply(&x).unwrap().max_abs_diff(&kraus.apply(&x).unwrap());
            max_err = max_err.max(err);
        }
        ensure!(max_err <= 1e-9, "channel {i}: action error {max_err:.3e}");
        let minimal = minimal_kraus_count(&choi, &tol()).map_err(|e| e.to_string())?;
        // Generic Ginibre draws are independent, so the Choi rank is min(k, n^2).
        let rank = k.min(n * n);
        ensure!(
            extracted.len() == minimal && minimal == report.rank && report.rank == rank,
            "channel {i}: extracted {}, minimal {minimal}, rank {} (expected {rank})",
            extracted.len(),
            report.rank
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("200 channels, action error {max_err:.1e}, {elapsed:.2?}"))
}

fn criterion_6() -> Verdict {
    let mut rng = seeded_rng(6);
    for r in 1..=4usize {
        for trial in 0..10 {
            let basis: Vec<ComplexMatrix> = (0..r).map(|_| ginibre(2, 2, &mut rng)).collect();
            // Independence oracle: the Gram matrix of the vectorized set is nonsingular.
            let vecs: Vec<ComplexMatrix> = basis.iter().map(ComplexMatrix::vectorize).collect();
            let g = hermitian_eigen(&gram_matrix(&vecs), 1e-9).unwrap();
            ensure!(
                g.min_eigenvalue().unwrap() > 1e-6,
                "r={r}: draw {trial} is not independent"
            );
            // Pad with combinations of the basis: more matrices, same span.
            let mut set = basis.clone();
            for _ in 0..trial % 3 {
                let mix = basis.iter().fold(ComplexMatrix::zeros(2, 2), |acc, m| {
                    &acc + &m.scale(C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                });
                set.push(mix);
            }
            let count = minimal_kraus_count(&ChoiMatrix::from_kraus(&KrausSet::new(set).unwrap()), &tol())
                .map_err(|e| e.to_string())?;
            ensure!(count == r, "r={r}, trial {trial}: minimal_kraus_count = {count}");
        }
    }
    Ok("r = 1..4, 10 sets each (with redundant extras)".into())
}

fn criterion_7() -> Verdict {
    let mut rng = seeded_rng(7);
    let mut max_err = 0.0f64;
    for i in 0..100 {
        let n = 2 + i % 8;
        let rank = rng.random_range(1..=n);
        let s = random_psd(n, rank, &mut rng);
        let f = gram_vectors(&s, 1e-9).map_err(|e| e.to_string())?;
        ensure!(f.len() == n, "case {i}: {} vectors for size {n}", f.len());
        let err = gram_matrix(&f).max_abs_diff(&s) / s.max_abs().max(1.0);
        max_err = max_err.max(err);
        ensure!(err <= 1e-9, "case {i} (n={n}, rank={rank}): Gram error {err:.3e}");
    }
    Ok(format!("100 matrices, sizes 2..9, Gram error {max_err:.1e}"))
}

fn criterion_8() -> Verdict {
    let mut rng = seeded_rng(8);
    let mut worst = f64::INFINITY;
    for i in 0..50 {
        let n1 = rng.random_range(1..=5usize);
        let n2 = rng.random_range(1..=5usize);
        let a = ginibre(n1, n1, &mut rng);
        let s = &a.matmul(&a.adjoint()) + &ComplexMatrix::identity(n1).scale_real(0.1);
        let c = ginibre(n2, n1, &mut rng);
        let m = psd_from_blocks(&s, &c).map_err(|e| format!("case {i}: {e}"))?;
        let eig = hermitian_eigen(&m, 1e-9).map_err(|e| e.to_string())?;
        let (min, max) = (eig.min_eigenvalue().unwrap(), eig.max_eigenvalue().unwrap());
        ensure!(min >= -1e-9 * max, "case {i}: min eigenvalue {min:.3e} (max {max:.3e})");
        worst = worst.min(min / max);
    }
    Ok(format!("50 instances, worst λmin/λmax {worst:.1e}"))
}

fn criterion_9() -> Verdict {
    let mut rng = seeded_rng(9);
    for i in 0..50 {
        let n = 2 + i % 2;
        let d = n * n;
        // Spectrum with both signs by construction, then a Haar rotation.
        let mut spectrum: Vec<f64> = (0..d).map(|_| rng.random_range(0.1..1.0)).collect();
        let negatives = rng.random_range(1..d);
        for l in spectrum.iter_mut().take(negatives) {
            *l = -*l;
        }
        let u = random_unitary_with(d, &mut rng);
        let h = u.matmul(&ComplexMatrix::from_diagonal(&spectrum)).matmul(&u.adjoint());
        let h = h.hermitian_part();
        let choi = ChoiMatrix::new(n, h).map_err(|e| e.to_string())?;
        let report = cp_verdict(&choi, &tol(), None).map_err(|e| e.to_string())?;
        ensure!(!report.is_cp, "case {i}: indefinite input reported CP");
        match kraus_from_choi(&choi, &tol()) {
            Err(Error::NotCp { .. }) => {}
            other => return Err(format!("case {i}: kraus_from_choi gave {other:?}")),
        }
    }
    Ok("50 indefinite inputs rejected".into())
}

fn reparses_losslessly(out: &Outcome, kind: &str) -> Result<(), String> {
    let text = out.stdout.trim_end();
    let again = match kind {
        "spec" => to_json(&parse_channel("out", text).map_err(|e| e.to_string())?.to_spec()),
        "matrix" => to_json(&cpcheck_cli::format::matrix_to_json(
            &parse_matrix("out", text).map_err(|e| e.to_string())?,
        )),
        "report" => to_json(&serde_json::from_str::<ReportFile>(text).map_err(|e| e.to_string())?),
        _ => unreachable!(),
    };
    ensure!(again == text, "{kind} output does not re-serialize identically");
    Ok(())
}

fn criterion_10() -> Verdict {
    let s = Scratch::new();
    // (zoo arguments, dim, CP by the closed-form oracle)
    let zoo: &[(&[&str], usize, bool)] = &[
        (&["transpose", "n=2"], 2, false),
        (&["transpose", "n=3"], 3, false),
        (&["depolarizing", "lambda=0.5", "mu=0.5"], 2, true),
        (&["depolarizing", "lambda=2", "mu=-0.4"], 2, true),
        (&["depolarizing", "lambda=1", "mu=-1"], 2, false),
        (&["depolarizing", "lambda=-0.5", "mu=1"], 2, false),
        (&["identity", "n=1"], 1, true),
        (&["identity", "n=3"], 3, true),
        (&["dephasing", "p=0.3"], 2, true),
        (&["random_cptp", "n=3", "k=2", "seed=5"], 3, true),
    ];
    let malformed = s.write(
        "malformed.json",
        "{\"dim\": 2, \"repr\": \"kraus\", \"data\": [[[1, 0]]]}",
    );
    let code = |c: ExitStatus| c.code();
    let mut cells = 0;
    for (i, (args, n, cp)) in zoo.iter().enumerate() {
        let label = args.join(" ");
        let mut zoo_args = vec!["zoo"];
        zoo_args.extend_from_slice(args);
        let emitted = run(&zoo_args);
        ensure!(
            emitted.status == ExitStatus::Cp,
            "{label}: zoo exit {}",
            code(emitted.status)
        );
        reparses_losslessly(&emitted, "spec").map_err(|e| format!("{label}: {e}"))?;
        let spec = s.write(&format!("zoo-{i}.json"), &emitted.stdout);
        let spec = spec.to_str().unwrap();
        let expected = if *cp { ExitStatus::Cp } else { ExitStatus::NotCp };

        let checked = run(&["check", spec]);
        let checked_json = run(&["check", spec, "--json"]);
        ensure!(
            checked.status == expected,
            "{label}: check exit {}",
            code(checked.status)
        );
        ensure!(
            checked_json.status == expected,
            "{label}: check --json exit {}",
            code(checked_json.status)
        );
        reparses_losslessly(&checked_json, "report").map_err(|e| format!("{label}: {e}"))?;

        let kraus = run(&["kraus", spec]);
        ensure!(kraus.status == expected, "{label}: kraus exit {}", code(kraus.status));
        let unitary = s.write_matrix(&format!("u-{i}.json"), &cpcheck::random_unitary(n * n, i as u64));
        let remixed = run(&["remix", spec, "--unitary", unitary.to_str().unwrap()]);
        ensure!(
            remixed.status == expected,
            "{label}: remix exit {}",
            code(remixed.status)
        );
        if *cp {
            reparses_losslessly(&kraus, "spec").map_err(|e| format!("{label}: {e}"))?;
            reparses_losslessly(&remixed, "spec").map_err(|e| format!("{label}: {e}"))?;
            let k = s.write(&format!("k-{i}.json"), &kraus.stdout);
            let rechecked = run(&["check", k.to_str().unwrap()]);
            ensure!(rechecked.status == ExitStatus::Cp, "{label}: kraus output no longer CP");
        }
        let bad_unitary = s.write_matrix(
            &format!("bad-u-{i}.json"),
            &ComplexMatrix::identity(n * n).scale_real(2.0),
        );
        let bad_remix = run(&["remix", spec, "--unitary", bad_unitary.to_str().unwrap()]);
        let bad_expected = if *cp { ExitStatus::InputError } else { ExitStatus::NotCp };
        ensure!(
            bad_remix.status == bad_expected,
            "{label}: remix by 2I exit {}",
            code(bad_remix.status)
        );

        let state = s.write_matrix(&format!("x-{i}.json"), &ginibre(*n, *n, &mut seeded_rng(i as u64)));
        let applied = run(&["apply", spec, "--state", state.to_str().unwrap()]);
        ensure!(
            applied.status == ExitStatus::Cp,
            "{label}: apply exit {}",
            code(applied.status)
        );
        reparses_losslessly(&applied, "matrix").map_err(|e| format!("{label}: {e}"))?;
        let wrong = s.write_matrix(&format!("w-{i}.json"), &ComplexMatrix::identity(n + 1));
        let mismatched = run(&["apply", spec, "--state", wrong.to_str().unwrap()]);
        ensure!(
            mismatched.status == ExitStatus::InputError,
            "{label}: apply mismatch exit {}",
            code(mismatched.status)
        );
        cells += 8;
    }
    let m = malformed.to_str().unwrap();
    let u = s.write_matrix("u.json", &ComplexMatrix::identity(2));
    for args in [
        vec!["check", m],
        vec!["check", m, "--json"],
        vec!["kraus", m],
        vec!["remix", m, "--unitary", u.to_str().unwrap()],
        vec!["apply", m, "--state", u.to_str().unwrap()],
        vec!["zoo", "no_such_channel"],
    ] {
        let out = run(&args);
        ensure!(
            out.status == ExitStatus::InputError,
            "{args:?}: exit {}",
            code(out.status)
        );
        cells += 1;
    }
    let stalled = Error::NoConvergence {
        sweeps: 100,
        off_norm: 1.0,
    };
    ensure!(
        cpcheck_cli::commands::status_for(&Error::NumericalFailure(Box::new(stalled))) == ExitStatus::NumericalFailure,
        "numerical failure does not map to exit 3"
    );
    Ok(format!(
        "{} zoo channels, {cells} command cells, all outputs re-parse",
        zoo.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("transposition verdict", criterion_1),
        ("depolarizing spectrum", criterion_2),
        ("depolarizing Kraus reconstruction", criterion_3),
        ("Pauli remix", criterion_4),
        ("random CPTP roundtrip", criterion_5),
        ("rank law", criterion_6),
        ("Gram vectors", criterion_7),
        ("PSD from blocks", criterion_8),
        ("indefinite inputs rejected", criterion_9),
        ("CLI contract", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name} — {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL criterion {}: {name} — {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

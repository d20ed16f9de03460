//! End-to-end acceptance criteria. One line per criterion; exits nonzero if
//! any fails. Runs with `cargo test -p newton-cli --test acceptance`.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde_json::Value;

use newton_core::dynamics::{critical_report, f_map};
use newton_core::verify::{
    check_characterization, check_critical_table, check_disconnection, check_mcmullen,
    check_mcmullen_line, check_multipliers, check_residues, check_scaling, newton_corpus, Check,
    DEFAULT_SEED,
};

// pinned tolerances
const COEFF_TOL: f64 = 1e-9;
const CRITICAL_ABS_TOL: f64 = 5e-6;

// runtime budgets
const BUDGET_CLASSIFY4: Duration = Duration::from_secs(1);
const BUDGET_CLASSIFY5: Duration = Duration::from_secs(1);
const BUDGET_CRITICAL: Duration = Duration::from_secs(5);
const BUDGET_RESIDUES: Duration = Duration::from_secs(30);
const BUDGET_MCMULLEN: Duration = Duration::from_secs(60);

fn newton(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newton"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex(v: &Value) -> Complex64 {
    c(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn coeffs(v: &Value) -> Vec<Complex64> {
    v.as_array().unwrap().iter().map(complex).collect()
}

fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
}

/// `classify d` through the binary: (exit ok, rows, all matched, table rows).
fn classify(d: usize) -> Result<Vec<Value>, String> {
    let out = newton(&["classify", &d.to_string()]);
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    if v["table"]["all_matched"] != true {
        return Err(format!(
            "unmatched reference rows {}",
            v["table"]["unmatched_reference"]
        ));
    }
    Ok(v["table"]["rows"].as_array().cloned().unwrap_or_default())
}

fn classify_degree4() -> Result<String, String> {
    let rows = classify(4)?;
    if rows.len() != 5 {
        return Err(format!("{} maps, expected 5", rows.len()));
    }
    // a = 2, b = 3: z(z^3 + z^2 + z + 9) / 12
    let want: Vec<Complex64> = [1.0, 1.0, 1.0, 9.0, 0.0]
        .iter()
        .map(|&x| c(x / 12.0, 0.0))
        .collect();
    if !rows
        .iter()
        .any(|r| close(&coeffs(&r["newton_coeffs"]), &want, COEFF_TOL))
    {
        return Err("z(z^3+z^2+z+9)/12 not among the maps".into());
    }
    Ok("5 maps, all matched".into())
}

fn classify_degree5() -> Result<String, String> {
    let rows = classify(5)?;
    if rows.len() != 8 {
        return Err(format!("{} maps, expected 8", rows.len()));
    }
    let s5 = 5f64.sqrt();
    for a in [c(-2.0 / 3.0, s5 / 3.0), c(-2.0 / 3.0, -s5 / 3.0)] {
        let found = rows.iter().any(|r| {
            r["params"]
                .as_array()
                .unwrap()
                .iter()
                .any(|p| (complex(p) - a).norm() <= COEFF_TOL)
        });
        if !found {
            return Err(format!("no row with parameter {a}"));
        }
    }
    Ok("8 maps, all matched, complex rows present".into())
}

fn critical_values() -> Result<String, String> {
    let check = check_critical_table();
    if !check.passed {
        return Err(check.detail.to_string());
    }
    // literal spot check on F1, independent of the reference list
    let f1 = f_map(1).map_err(|e| e.to_string())?;
    let rep = critical_report(&f1, Some(f1.num()), 50).map_err(|e| e.to_string())?;
    let e = rep
        .entries
        .iter()
        .find(|e| (e.c - c(0.355697, -1.18874)).norm() < 1e-4)
        .ok_or("F1 critical point 0.355697-1.18874i missing")?;
    let dev = (e.c.re - 0.355697)
        .abs()
        .max((e.c.im + 1.18874).abs())
        .max((e.modulus - 0.688153).abs());
    if dev > CRITICAL_ABS_TOL {
        return Err(format!("F1 deviation {dev:e}"));
    }
    Ok(format!(
        "max deviation {:.1e}",
        check.detail["max_deviation"].as_f64().unwrap_or(f64::NAN)
    ))
}

fn from_check(check: Check) -> Result<String, String> {
    if check.passed {
        Ok(summary(&check.detail))
    } else {
        Err(check.detail.to_string().chars().take(600).collect())
    }
}

/// Scalar fields of a check detail, for the one-line report.
fn summary(detail: &Value) -> String {
    detail
        .as_object()
        .map(|o| {
            o.iter()
                .filter(|(_, v)| v.is_number() || v.is_boolean())
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

fn verify_all_twice() -> Result<String, String> {
    let seed = DEFAULT_SEED.to_string();
    let a = newton(&["verify", "all", "--seed", &seed]);
    let b = newton(&["verify", "all", "--seed", &seed]);
    if !a.status.success() || !b.status.success() {
        return Err(format!(
            "verify all exited {:?} / {:?}",
            a.status.code(),
            b.status.code()
        ));
    }
    if a.stdout != b.stdout {
        return Err("reports differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let corpus = newton_corpus(DEFAULT_SEED);
    type Criterion<'a> = (
        &'a str,
        Option<Duration>,
        Box<dyn Fn() -> Result<String, String> + 'a>,
    );
    let criteria: Vec<Criterion> = vec![
        (
            "classify 4 reproduces the degree-4 table",
            Some(BUDGET_CLASSIFY4),
            Box::new(classify_degree4),
        ),
        (
            "classify 5 reproduces the degree-5 table",
            Some(BUDGET_CLASSIFY5),
            Box::new(classify_degree5),
        ),
        (
            "critical points and values of F1..F5",
            Some(BUDGET_CRITICAL),
            Box::new(critical_values),
        ),
        (
            "residue indices sum to 1",
            Some(BUDGET_RESIDUES),
            Box::new(|| from_check(check_residues(&corpus))),
        ),
        (
            "multipliers of roots, poles and infinity",
            None,
            Box::new(|| from_check(check_multipliers(&corpus))),
        ),
        (
            "characterization round trip and rejection",
            None,
            Box::new(|| from_check(check_characterization(&corpus, DEFAULT_SEED))),
        ),
        (
            "affine scaling identity",
            None,
            Box::new(|| from_check(check_scaling(DEFAULT_SEED))),
        ),
        (
            "McMullen grid and m=n=1 line",
            Some(BUDGET_MCMULLEN),
            Box::new(|| {
                let grid = from_check(check_mcmullen(DEFAULT_SEED))?;
                let line = from_check(check_mcmullen_line())?;
                Ok(format!("{grid}; {line}"))
            }),
        ),
        (
            "disconnection evidence for N0, N1, N2",
            None,
            Box::new(|| from_check(check_disconnection())),
        ),
        (
            "verify all is byte-identical across runs",
            None,
            Box::new(verify_all_twice),
        ),
    ];

    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(b)) = (&result, budget) {
            if elapsed > *b {
                result = Err(format!("took {elapsed:.2?}, budget {b:?}"));
            }
        }
        match result {
            Ok(msg) => println!("criterion {:>2} PASS {name} [{elapsed:.2?}] {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{elapsed:.2?}] {msg}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

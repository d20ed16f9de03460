//! `newton`: analyze Newton maps, classify low-degree polynomial Newton
//! maps, render basins and run the built-in verification suites.
//!
//! Exit codes: 0 success, 1 verification or diagnostic failure, 2 usage or
//! parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use newton_core::classifier::{enumerate, verify_table};
use newton_core::conjugacy::to_polynomial_newton;
use newton_core::dynamics::{basin_grid, critical_points, BasinGrid, Window, DEFAULT_CAP};
use newton_core::mcmullen::{
    basin_evidence_mcmullen, case_of, expected_degree_mcmullen, free_critical, newton_mcmullen,
    newton_mcmullen_lambda, nf_at_free_critical, normalize_lambda, symmetry_group_order,
    McMullenParams,
};
use newton_core::newton::{
    characterize, count_attracting, exceptional_points, expected_degree, fixed_points, newton_map,
    residue_sum,
};
use newton_core::parse::{
    format_map, parse_lambda, parse_preset, parse_rational_map, ParseError, Preset,
};
use newton_core::rational::{RationalMap, CANCELLATION_TOL};
use newton_core::render::{ppm_bytes, sidecar};
use newton_core::report::SCHEMA_VERSION;
use newton_core::verify::{run_suite, Suite, DEFAULT_SEED, LAMBDA_CONJUGACY_TOL};
use newton_core::Error;

const MIN_RESOLUTION: usize = 16;

#[derive(Parser)]
#[command(name = "newton", version, about = "Newton maps of rational functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed points, residues, characterization and exceptional points.
    ///
    /// SPEC is an expression in z (`z^3 - 1`, `(z^2-1)/(z^2+1)`), a
    /// coefficient list highest degree first (`(1,0,0,-1)`), or a preset:
    /// F1..F5, N0:m,n, N1:n, N2:n, mcmullen:m,n. Presets are Newton maps.
    Analyze {
        spec: String,
        /// Treat SPEC as the Newton map itself rather than the function.
        #[arg(long)]
        already_newton: bool,
        /// Relative size below which Newton map coefficients are dropped.
        #[arg(long, default_value_t = CANCELLATION_TOL)]
        tol: f64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate polynomial Newton maps of degree d with an exceptional
    /// attracting fixed point and compare with the reference tables.
    Classify {
        d: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Render the basins of attraction as a PPM (or PNG) image with a JSON
    /// sidecar next to it.
    Render {
        spec: String,
        #[arg(long)]
        already_newton: bool,
        #[command(flatten)]
        view: View,
    },
    /// Run a verification suite: tables, properties, mcmullen,
    /// disconnection or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// The McMullen family f(z) = z^m + lambda / z^n.
    Mcmullen {
        m: usize,
        n: usize,
        /// Parameter as `re,im`; defaults to 1.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[command(subcommand)]
        action: McMullenAction,
    },
}

#[derive(Subcommand)]
enum McMullenAction {
    /// Degree, free critical points, case and symmetry order.
    Info,
    /// Free critical orbits and real-axis sampling.
    Evidence {
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Basin image of the Newton map.
    Render {
        #[command(flatten)]
        view: View,
    },
}

#[derive(Args)]
struct View {
    /// Center and half extents: CX CY HW HH.
    #[arg(long, num_args = 4, value_names = ["CX", "CY", "HW", "HH"],
          allow_negative_numbers = true, default_values_t = [0.0, 0.0, 2.0, 2.0])]
    window: Vec<f64>,
    /// Image size in pixels: W H.
    #[arg(long, num_args = 2, value_names = ["W", "H"], default_values_t = [400, 400])]
    res: Vec<usize>,
    /// Iteration cap per pixel.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Output image (.ppm, or .png with the `png` feature).
    #[arg(long)]
    out: PathBuf,
}

/// Bad input from the user: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Usage>() || e.is::<ParseError>() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Parse(_)) | Some(Error::InvalidArgument(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Returns whether the command succeeded; `Err` for diagnostics.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Analyze {
            spec,
            already_newton,
            tol,
            json,
        } => {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(usage("--tol must lie in (0, 1)"));
            }
            let input = resolve(&spec, already_newton)?;
            let report = analyze(&input, tol);
            emit(&report, json.as_deref())?;
            Ok(true)
        }
        Command::Classify { d, json } => {
            if !(3..=5).contains(&d) {
                return Err(usage(format!("d must be 3, 4 or 5, got {d}")));
            }
            let maps = enumerate(d)?;
            let table = verify_table(d)?;
            let ok = table.all_matched;
            emit(
                &json!({ "schema": SCHEMA_VERSION, "d": d, "count": maps.len(), "maps": maps, "table": table }),
                json.as_deref(),
            )?;
            eprintln!(
                "classify {d}: {} maps, {}",
                maps.len(),
                if ok { "all matched" } else { "MISMATCH" }
            );
            Ok(ok)
        }
        Command::Render {
            spec,
            already_newton,
            view,
        } => {
            let input = resolve(&spec, already_newton)?;
            render(&input.newton, &view)?;
            Ok(true)
        }
        Command::Verify { suite, seed, json } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, seed);
            let text = report.to_json();
            match json {
                Some(p) => write_file(&p, format!("{text}\n").as_bytes())?,
                None => println!("{text}"),
            }
            for c in &report.checks {
                eprintln!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            }
            Ok(report.passed)
        }
        Command::Mcmullen {
            m,
            n,
            lambda,
            action,
        } => mcmullen(m, n, lambda.as_deref(), action),
    }
}

struct Input {
    spec: String,
    preset: Option<Preset>,
    /// The function whose Newton map is studied, when known.
    source: Option<RationalMap>,
    newton: RationalMap,
}

fn resolve(spec: &str, already_newton: bool) -> Result<Input> {
    let preset = match parse_preset(spec) {
        Ok(p) => Some(p),
        Err(ParseError::UnknownPreset(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let (source, newton) = match preset {
        Some(p) => (None, p.newton_map()),
        None => {
            let r = parse_rational_map(spec)?;
            if already_newton {
                (None, r)
            } else {
                let n = newton_map(&r)
                    .with_context(|| format!("cannot form the Newton map of {spec}"))?;
                (Some(r), n)
            }
        }
    };
    Ok(Input {
        spec: spec.to_string(),
        preset,
        source,
        newton,
    })
}

fn or_error<T: serde::Serialize>(
    r: Result<T, Error>,
    warnings: &mut Vec<String>,
    what: &str,
) -> Value {
    match r {
        Ok(v) => serde_json::to_value(v).expect("serializable"),
        Err(e) => {
            warnings.push(format!("{what}: {e}"));
            Value::Null
        }
    }
}

fn analyze(input: &Input, tol: f64) -> Value {
    let n = input.newton.clean(tol);
    let mut warnings = Vec::new();
    if n.degree() < 2 {
        warnings.push(format!(
            "Newton map has degree {} (linear for a monomial or a Möbius function); dynamics are trivial",
            n.degree()
        ));
    }
    let expected = input
        .source
        .as_ref()
        .map(|r| or_error(expected_degree(r), &mut warnings, "expected degree"));
    let fps = or_error(fixed_points(&n), &mut warnings, "fixed points");
    let residues = or_error(residue_sum(&n), &mut warnings, "residue sum");
    let counts = or_error(count_attracting(&n), &mut warnings, "attracting count");
    let (characterization, exceptional, critical_count) = if n.degree() >= 2 {
        (
            or_error(characterize(&n), &mut warnings, "characterization"),
            or_error(exceptional_points(&n), &mut warnings, "exceptional points"),
            or_error(
                critical_points(&n).map(|c| c.total()),
                &mut warnings,
                "critical points",
            ),
        )
    } else {
        (Value::Null, Value::Null, Value::Null)
    };
    let normal_form = if n.degree() >= 2 {
        to_polynomial_newton(&n)
            .ok()
            .map(|(p, t)| json!({ "map": format_map(&p), "transform": t }))
    } else {
        None
    };
    json!({
        "schema": SCHEMA_VERSION,
        "input": input.spec,
        "preset": input.preset.map(|p| p.to_string()),
        "source": input.source.as_ref().map(format_map),
        "newton_map": format_map(&n),
        "newton_coefficients": n,
        "degree": n.degree(),
        "expected_degree": expected,
        "fixed_points": fps,
        "residue_sum": residues,
        "attracting_repelling": counts,
        "critical_point_count": critical_count,
        "characterization": characterization,
        "exceptional_points": exceptional,
        "polynomial_newton_form": normal_form,
        "warnings": warnings,
    })
}

fn render(n: &RationalMap, view: &View) -> Result<BasinGrid> {
    let [cx, cy, hw, hh] = view.window[..] else {
        return Err(usage("--window takes four numbers"));
    };
    let [w, h] = view.res[..] else {
        return Err(usage("--res takes two integers"));
    };
    if w < MIN_RESOLUTION || h < MIN_RESOLUTION {
        return Err(usage(format!(
            "resolution must be at least {MIN_RESOLUTION}x{MIN_RESOLUTION}"
        )));
    }
    if view.cap == 0 {
        return Err(usage("--cap must be at least 1"));
    }
    let png = match view.out.extension().and_then(|e| e.to_str()) {
        Some("png") if cfg!(feature = "png") => true,
        Some("png") => return Err(usage("PNG output needs the `png` feature; use .ppm")),
        _ => false,
    };
    let window = Window::new(Complex64::new(cx, cy), hw, hh)?;
    let grid = basin_grid(n, window, w, h, view.cap)?;
    let image = if png {
        png_bytes(&grid)?
    } else {
        ppm_bytes(&grid)
    };
    write_file(&view.out, &image)?;
    let side = view.out.with_extension("json");
    write_file(&side, format!("{:#}\n", sidecar(&grid)).as_bytes())?;
    eprintln!(
        "wrote {} and {} ({} undecided pixels)",
        view.out.display(),
        side.display(),
        grid.undecided_count()
    );
    Ok(grid)
}

#[cfg(feature = "png")]
fn png_bytes(grid: &BasinGrid) -> Result<Vec<u8>> {
    use newton_core::render::color;
    let mut img = image::RgbImage::new(grid.width as u32, grid.height as u32);
    for (k, px) in img.pixels_mut().enumerate() {
        *px = image::Rgb(color(grid.labels[k]));
    }
    let mut out = std::io::Cursor::new(Vec::new());
    img.write_to(&mut out, image::ImageOutputFormat::Png)?;
    Ok(out.into_inner())
}

#[cfg(not(feature = "png"))]
fn png_bytes(_: &BasinGrid) -> Result<Vec<u8>> {
    unreachable!("png output is rejected without the feature")
}

fn mcmullen(m: usize, n: usize, lambda: Option<&str>, action: McMullenAction) -> Result<bool> {
    let lambda = lambda.map(parse_lambda).transpose()?;
    let params = McMullenParams::new(m, n, lambda.unwrap_or(Complex64::new(1.0, 0.0)))?;
    // everything below is stated for lambda = 1; a raw lambda is related to
    // it by z -> lambda^(1/(m+n)) z
    let nf = newton_mcmullen(m, n);
    match action {
        McMullenAction::Info => {
            let raw = lambda.map(|_| {
                let (normalized, t) = normalize_lambda(&params);
                json!({
                    "lambda": [params.lambda().re, params.lambda().im],
                    "newton_map": format_map(&newton_mcmullen_lambda(&params)),
                    "transform": t,
                    "conjugate_to_lambda_one": normalized.maps_equal(&nf, LAMBDA_CONJUGACY_TOL),
                })
            });
            let report = json!({
                "schema": SCHEMA_VERSION,
                "m": m,
                "n": n,
                "newton_map": format_map(&nf),
                "degree": nf.degree(),
                "expected_degree": expected_degree_mcmullen(m, n),
                "case": case_of(m, n).ok(),
                "free_critical": free_critical(m, n).ok().flatten(),
                "nf_at_free_critical": nf_at_free_critical(m, n).ok(),
                "symmetry_order": symmetry_group_order(m, n).ok(),
                "raw_lambda": raw,
            });
            emit(&report, None)?;
            Ok(true)
        }
        McMullenAction::Evidence { cap } => {
            if cap == 0 {
                return Err(usage("--cap must be at least 1"));
            }
            let ev = basin_evidence_mcmullen(m, n, cap)?;
            let complete = ev.complete();
            emit(
                &json!({ "schema": SCHEMA_VERSION, "complete": complete, "evidence": ev }),
                None,
            )?;
            Ok(complete)
        }
        McMullenAction::Render { view } => {
            let map = if lambda.is_some() {
                newton_mcmullen_lambda(&params)
            } else {
                nf
            };
            render(&map, &view)?;
            Ok(true)
        }
    }
}

fn emit(v: &Value, path: Option<&Path>) -> Result<()> {
    let text = format!("{v:#}\n");
    match path {
        Some(p) => write_file(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if path.as_os_str().is_empty() {
        bail!(Usage("empty output path".into()));
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

//! Command-line front end: `decompose`, `laplace`, `invert` and `pairs`.
//!
//! Exit codes: 0 on success, 1 when a numerical engine failed (or a `pairs`
//! row failed its tolerance), 2 for usage and validation errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bicomplex::Bicomplex;
use crate::error::{Error, Result};
use crate::forward::{laplace_grid, QuadratureConfig};
use crate::inverse::{invert_grid, BromwichConfig, InversionPoint, Method, Warning};
use crate::signal::{
    catalog_lookup, CatalogEntry, ImageFunction, PairId, RationalFunction, SignalSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_PAIRS_GRID: &str = "0.1:5:0.1";
pub const DEFAULT_RESIDUE_TOL: f64 = 1e-8;
pub const DEFAULT_BROMWICH_TOL: f64 = 1e-3;

#[derive(Parser, Debug)]
#[command(
    name = "bicomplex-laplace",
    version,
    about = "Bicomplex Laplace transform and its inverse"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// JSON file with defaults for any flag; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the (z1, z2) and idempotent views of a bicomplex number.
    Decompose {
        /// "a0,a1,a2,a3"
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Forward transform of a signal at bicomplex points.
    Laplace(LaplaceArgs),
    /// Inverse transform of an image over a time grid.
    Invert(InvertArgs),
    /// Check every catalog pair against its closed form.
    Pairs(PairsArgs),
}

#[derive(Args, Debug)]
pub struct LaplaceArgs {
    /// Catalog id of the object function.
    #[arg(long, conflicts_with = "samples")]
    pub signal: Option<String>,
    /// CSV with columns t,f (linear interpolation, zero past the last sample).
    #[arg(long, requires = "order_k")]
    pub samples: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub order_k: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Evaluation point "a0,a1,a2,a3" (repeatable).
    #[arg(long, allow_hyphen_values = true, required = true)]
    pub xi: Vec<String>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub panels: Option<usize>,
    #[arg(long)]
    pub tail_tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct InvertArgs {
    #[arg(long, conflicts_with_all = ["rational_xi1", "rational_xi2"])]
    pub pair: Option<String>,
    /// Rational JSON {"num": [[re,im],...], "den": [[re,im],...]} for the e1 component.
    #[arg(long, requires = "rational_xi2")]
    pub rational_xi1: Option<PathBuf>,
    #[arg(long, requires = "rational_xi1")]
    pub rational_xi2: Option<PathBuf>,
    /// Declared abscissa k for rational files (the line also clears every pole).
    #[arg(long, allow_hyphen_values = true)]
    pub order_k: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// "start:stop:step"
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub abscissa_delta: Option<f64>,
    #[arg(long)]
    pub half_height: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    /// Bromwich refinement tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct PairsArgs {
    /// Tolerance applied to both methods (overrides the per-method values).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub residue_tol: Option<f64>,
    #[arg(long)]
    pub bromwich_tol: Option<f64>,
    #[arg(long)]
    pub grid: Option<String>,
    /// Comma-separated subset of pair ids.
    #[arg(long, value_delimiter = ',')]
    pub pairs: Vec<String>,
}

/// Contents of a `--config` JSON file. Every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub omega: Option<f64>,
    pub a: Option<f64>,
    pub order_k: Option<f64>,
    pub grid: Option<String>,
    pub method: Option<String>,
    pub abscissa_delta: Option<f64>,
    pub half_height: Option<f64>,
    pub step: Option<f64>,
    pub tol: Option<f64>,
    pub residue_tol: Option<f64>,
    pub bromwich_tol: Option<f64>,
    pub t_max: Option<f64>,
    pub panels: Option<usize>,
    pub tail_tol: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

/// Parses "start:stop:step" into the inclusive grid `start, start+step, …`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Parse(format!("grid `{spec}` is not start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step > 0.0 && step.is_finite()) {
        return Err(bad());
    }
    if stop < start {
        return Err(Error::Parse(format!("grid `{spec}` has stop < start")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// 17 significant digits, enough to round-trip any double.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

struct Outcome {
    body: String,
    code: i32,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stderr) {
        Ok(outcome) => {
            let out = cli.out.clone().or_else(|| {
                cli.config
                    .as_deref()
                    .and_then(|p| RunConfig::load(p).ok())
                    .and_then(|c| c.out)
            });
            let written = match out {
                Some(path) => {
                    fs::write(&path, &outcome.body).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => stdout
                    .write_all(outcome.body.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_NUMERIC
            }
        }
    }
}

fn execute(cli: &Cli, stderr: &mut dyn Write) -> Result<Outcome> {
    let config = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let format = cli.format.or(config.format);
    match &cli.command {
        Command::Decompose { value } => decompose(value, format.unwrap_or(Format::Csv)),
        Command::Laplace(args) => laplace(args, &config, format.unwrap_or(Format::Csv), stderr),
        Command::Invert(args) => invert(args, &config, format.unwrap_or(Format::Csv), stderr),
        Command::Pairs(args) => pairs(args, &config, format.unwrap_or(Format::Csv)),
    }
}

fn decompose(value: &str, format: Format) -> Result<Outcome> {
    let x: Bicomplex = value.parse()?;
    let p = x.to_idempotent();
    let body = match format {
        Format::Json => {
            let v = json!({
                "coefficients": x.coefficients(),
                "z1": [x.z1().re, x.z1().im],
                "z2": [x.z2().re, x.z2().im],
                "idempotent": p,
                "norm": x.norm(),
                "singular": x.is_singular(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => format!(
            "coefficients = {x}\nz1 = {}\nz2 = {}\nxi1 = {}\nxi2 = {}\nnorm = {}\nsingular = {}\n",
            fmt_complex(x.z1()),
            fmt_complex(x.z2()),
            fmt_complex(p.xi1),
            fmt_complex(p.xi2),
            x.norm(),
            x.is_singular()
        ),
    };
    Ok(Outcome {
        body,
        code: EXIT_OK,
    })
}

fn catalog_from(
    id: &str,
    omega: Option<f64>,
    a: Option<f64>,
    config: &RunConfig,
) -> Result<CatalogEntry> {
    catalog_lookup(
        id,
        omega.or(config.omega).unwrap_or(1.0),
        a.or(config.a).unwrap_or(0.0),
    )
}

fn load_samples(path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for row in reader.deserialize::<(f64, f64)>() {
        out.push(row.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?);
    }
    Ok(out)
}

fn laplace(
    args: &LaplaceArgs,
    config: &RunConfig,
    format: Format,
    stderr: &mut dyn Write,
) -> Result<Outcome> {
    let signal: SignalSpec = match (&args.signal, &args.samples) {
        (Some(id), None) => catalog_from(id, args.omega, args.a, config)?.object(),
        (None, Some(path)) => {
            let k = args
                .order_k
                .or(config.order_k)
                .ok_or_else(|| Error::InvalidArgument("--samples requires --order-k".into()))?;
            SignalSpec::from_samples(path.display().to_string(), k, load_samples(path)?)?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give exactly one of --signal ID or --samples FILE".into(),
            ))
        }
    };
    let defaults = QuadratureConfig::default();
    let cfg = QuadratureConfig {
        t_max: args.t_max.or(config.t_max).unwrap_or(defaults.t_max),
        n_panels: args.panels.or(config.panels).unwrap_or(defaults.n_panels),
        tail_tol: args
            .tail_tol
            .or(config.tail_tol)
            .unwrap_or(defaults.tail_tol),
        rule: defaults.rule,
    };
    cfg.validate()?;
    let points: Vec<Bicomplex> = args.xi.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let results = laplace_grid(&signal, &points, &cfg);

    let mut failed = false;
    for (xi, r) in points.iter().zip(&results) {
        if let Err(e) = r {
            failed = true;
            let _ = writeln!(stderr, "xi = {xi}: {e}");
        }
    }
    let body = match format {
        Format::Csv => {
            let mut s = String::from("a0,a1,a2,a3,status\n");
            for r in &results {
                match r {
                    Ok(v) => {
                        let c: Vec<String> = v.coefficients().iter().map(|x| fmt_f64(*x)).collect();
                        s.push_str(&format!("{},ok\n", c.join(",")));
                    }
                    Err(e) => s.push_str(&format!("NaN,NaN,NaN,NaN,{}\n", error_kind(e))),
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = points
                .iter()
                .zip(&results)
                .map(|(xi, r)| match r {
                    Ok(v) => json!({"xi": xi.to_string(), "idempotent": v.to_idempotent()}),
                    Err(e) => json!({"xi": xi.to_string(), "error": e.to_string()}),
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rows).expect("json"))
        }
    };
    Ok(Outcome {
        body,
        code: if failed { EXIT_NUMERIC } else { EXIT_OK },
    })
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ConvergenceRegion { .. } => "convergence_region",
        Error::Truncation(_) => "truncation",
        Error::InversionConvergence { .. } => "inversion_convergence",
        Error::PoleProximity { .. } => "pole_proximity",
        Error::InvalidImage(_) => "invalid_image",
        Error::NumericFailure(_) => "numeric_failure",
        Error::Domain(_) => "domain",
        _ => "error",
    }
}

fn read_rational(path: &Path) -> Result<RationalFunction> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn invert(
    args: &InvertArgs,
    config: &RunConfig,
    format: Format,
    stderr: &mut dyn Write,
) -> Result<Outcome> {
    let image = match (&args.pair, &args.rational_xi1, &args.rational_xi2) {
        (Some(id), None, None) => catalog_from(id, args.omega, args.a, config)?.image_function(),
        (None, Some(p1), Some(p2)) => ImageFunction::rational_pair(
            read_rational(p1)?,
            read_rational(p2)?,
            args.order_k.or(config.order_k).unwrap_or(0.0),
        ),
        _ => {
            return Err(Error::InvalidArgument(
                "give --pair ID or both --rational-xi1 FILE and --rational-xi2 FILE".into(),
            ))
        }
    };
    let grid = args
        .grid
        .clone()
        .or_else(|| config.grid.clone())
        .ok_or_else(|| Error::InvalidArgument("--grid start:stop:step is required".into()))?;
    let times = parse_grid(&grid)?;
    let method: Method = args
        .method
        .clone()
        .or_else(|| config.method.clone())
        .unwrap_or_else(|| "auto".into())
        .parse()?;
    let defaults = BromwichConfig::default();
    let cfg = BromwichConfig {
        abscissa_offset: args
            .abscissa_delta
            .or(config.abscissa_delta)
            .unwrap_or(defaults.abscissa_offset),
        half_height: args
            .half_height
            .or(config.half_height)
            .unwrap_or(defaults.half_height),
        step_h: args.step.or(config.step).unwrap_or(defaults.step_h),
        refine_tol: args.tol.or(config.tol).unwrap_or(defaults.refine_tol),
        ..defaults
    };
    let results = invert_grid(&image, &times, &cfg, method)?;

    let mut failed = false;
    for (t, r) in times.iter().zip(&results) {
        match r {
            Err(e) => {
                failed = true;
                let _ = writeln!(stderr, "t = {t}: {e}");
            }
            Ok(p) => {
                for w in &p.warnings {
                    let _ = writeln!(stderr, "t = {t}: warning: {}", describe_warning(w));
                }
            }
        }
    }
    let body = match format {
        Format::Csv => {
            let mut s = String::from("t,f,reality_defect,refinements\n");
            for (t, r) in times.iter().zip(&results) {
                match r {
                    Ok(p) => s.push_str(&format!(
                        "{},{},{},{}\n",
                        fmt_f64(p.t),
                        fmt_f64(p.f),
                        fmt_f64(p.reality_defect),
                        p.refinements
                    )),
                    Err(_) => s.push_str(&format!("{},NaN,NaN,0\n", fmt_f64(*t))),
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = times
                .iter()
                .zip(&results)
                .map(|(t, r)| match r {
                    Ok(p) => serde_json::to_value(p).expect("json"),
                    Err(e) => json!({"t": t, "error": e.to_string()}),
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rows).expect("json"))
        }
    };
    Ok(Outcome {
        body,
        code: if failed { EXIT_NUMERIC } else { EXIT_OK },
    })
}

fn describe_warning(w: &Warning) -> String {
    match w {
        Warning::NonRealObject { defect } => {
            format!("components invert to different functions (non-real defect {defect:.3e})")
        }
        Warning::ExponentialAmplification { exponent } => {
            format!("x*t = {exponent:.2} exceeds the amplification cap")
        }
    }
}

/// One row of the `pairs` verification table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairCheck {
    pub id: String,
    pub omega: f64,
    pub a: f64,
    pub method: String,
    pub max_abs_error: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Parameter sets checked by `pairs`: ω ∈ {1, 2}, a ∈ {0.5, 1} where used.
pub fn default_parameter_sets(id: PairId) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let omegas: &[f64] = if id.uses_omega() { &[1.0, 2.0] } else { &[1.0] };
    let dampings: &[f64] = if id.uses_damping() {
        &[0.5, 1.0]
    } else {
        &[0.0]
    };
    for &w in omegas {
        for &a in dampings {
            out.push(CatalogEntry::new(id, w, a).expect("valid defaults"));
        }
    }
    out
}

/// Max-abs error of both inversion methods against each pair's closed form.
pub fn verify_pairs(
    ids: &[PairId],
    times: &[f64],
    residue_tol: f64,
    bromwich_tol: f64,
) -> Result<Vec<PairCheck>> {
    let cfg = BromwichConfig::default();
    let mut rows = Vec::new();
    for &id in ids {
        for entry in default_parameter_sets(id) {
            let image = entry.image_function();
            for (method, tol) in [
                (Method::Residue, residue_tol),
                (Method::Bromwich, bromwich_tol),
            ] {
                let results = invert_grid(&image, times, &cfg, method)?;
                let max_abs_error = results
                    .iter()
                    .map(|r| match r {
                        Ok(InversionPoint { t, f, .. }) => (f - entry.closed_form(*t)).abs(),
                        Err(_) => f64::NAN,
                    })
                    .fold(0.0, |acc: f64, e| {
                        if e.is_nan() || acc.is_nan() {
                            f64::NAN
                        } else {
                            acc.max(e)
                        }
                    });
                rows.push(PairCheck {
                    id: id.to_string(),
                    omega: entry.omega,
                    a: entry.a,
                    method: method.to_string(),
                    max_abs_error,
                    tol,
                    pass: max_abs_error <= tol,
                });
            }
        }
    }
    Ok(rows)
}

fn pairs(args: &PairsArgs, config: &RunConfig, format: Format) -> Result<Outcome> {
    let ids: Vec<PairId> = if args.pairs.is_empty() {
        PairId::ALL.to_vec()
    } else {
        args.pairs
            .iter()
            .map(|s| s.trim().parse())
            .collect::<Result<_>>()?
    };
    let grid = args
        .grid
        .clone()
        .or_else(|| config.grid.clone())
        .unwrap_or_else(|| DEFAULT_PAIRS_GRID.into());
    let times = parse_grid(&grid)?;
    let both = args.tol.or(config.tol);
    let residue_tol = both
        .or(args.residue_tol)
        .or(config.residue_tol)
        .unwrap_or(DEFAULT_RESIDUE_TOL);
    let bromwich_tol = both
        .or(args.bromwich_tol)
        .or(config.bromwich_tol)
        .unwrap_or(DEFAULT_BROMWICH_TOL);
    let rows = verify_pairs(&ids, &times, residue_tol, bromwich_tol)?;
    let all_pass = rows.iter().all(|r| r.pass);
    let body = match format {
        Format::Csv => {
            let mut s = String::from("id,omega,a,method,max_abs_error,tol,status\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.id,
                    fmt_f64(r.omega),
                    fmt_f64(r.a),
                    r.method,
                    fmt_f64(r.max_abs_error),
                    fmt_f64(r.tol),
                    if r.pass { "PASS" } else { "FAIL" }
                ));
            }
            s
        }
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rows).expect("json")),
    };
    Ok(Outcome {
        body,
        code: if all_pass { EXIT_OK } else { EXIT_NUMERIC },
    })
}

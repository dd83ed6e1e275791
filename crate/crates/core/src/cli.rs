//! Command-line front end.
//!
//! Every subcommand prints its result to standard output (JSON by default,
//! CSV with `--format csv`). Failures print `error: <Code>: <message>` on
//! standard error and exit with a nonzero status specific to the code.

use std::ffi::OsString;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::fields::{Point, SolenoidField};
use crate::geometry::{circulation, flux_direct, winding_number, Circle, ClosedPath, Polyline};
use crate::phase::{
    fringe_shift, holonomy, interference, periodicity_check, phase_closed_form,
    InterferometerGeometry, PhaseFactor,
};
use crate::quadrature::QuadratureSpec;
use crate::quantize::{
    antiparticle_closure, charge_allowed, infer_minimal_n, kappa_allowed, kappa_constraints,
    spectrum, ChargeSpectrum, RationalCharge,
};
use crate::stokes::{chart_audit, verify_stokes, StokesRun};

const AFTER_HELP: &str = "\
CSV columns (--format csv):
  circulation   circulation,winding_number
  flux          L,flux
  stokes        B,R,gamma,L,phi_1,phi_2,phi_total,circ_outer,circ_inner,discrepancy
  chart-audit   L,chart_audit
  phase         q,gamma,w,angle
  interfere     x,intensity   (one row per screen sample; the default format here)
  quantize      one row per charge (check), one charge per row (spectrum),
                N (infer), charge,q_kappa,integer (kappa), N,n_min,n_max,closed (closure)

Numbers are printed with 12 significant digits.";

#[derive(Debug, Parser)]
#[command(name = "solenoid-ab", version, about = "Aharonov-Bohm solenoid potentials, Stokes checks, holonomy phases and charge quantization", after_help = AFTER_HELP)]
pub struct Cli {
    /// JSON run configuration: {"field": {"B","R","gamma"|"kappa"}, "quadrature": {...}, "interferometer": {...}, "format": "json"|"csv"}
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format (flags override the config file).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Circulation of A along a closed path, with its winding number.
    Circulation {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        path: PathArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Magnetic flux through the centred disc of radius L.
    Flux {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "L")]
        l: f64,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Region-by-region Stokes report for the disc of radius L.
    Stokes {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "L")]
        l: f64,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Two-sector recomputation of the annulus flux; prints |sector sum - phi_2|.
    ChartAudit {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "L")]
        l: f64,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Holonomy phase angle theta of exp(-i theta). Closed form from gamma and
    /// the winding w, or by quadrature when a path is given.
    Phase {
        #[command(flatten)]
        field: FieldArgs,
        /// Charge in units of e
        #[arg(long, allow_hyphen_values = true)]
        q: f64,
        /// Winding number for the closed form
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        w: i64,
        #[command(flatten)]
        path: PathArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Two-slit fringe pattern shifted by the holonomy phase (CSV x,intensity).
    /// Only gamma matters; B and R default to 0 and 1 when omitted.
    Interfere {
        #[command(flatten)]
        field: FieldArgs,
        /// Charge in units of e
        #[arg(long, allow_hyphen_values = true)]
        q: f64,
        /// Slit separation d [default: 1]
        #[arg(long)]
        slit_separation: Option<f64>,
        /// Slit-to-screen distance D [default: 100]
        #[arg(long)]
        screen_distance: Option<f64>,
        /// Wavenumber k [default: 100]
        #[arg(long)]
        wavenumber: Option<f64>,
        /// Screen half-width h; samples span [-h, h] [default: 10]
        #[arg(long)]
        half_extent: Option<f64>,
        /// Number of screen samples [default: 201]
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Exact charge-quantization arithmetic (charges in units of e).
    Quantize {
        #[command(subcommand)]
        op: QuantizeOp,
    },
}

#[derive(Debug, Subcommand)]
enum QuantizeOp {
    /// Is each charge of the form n/N?
    Check {
        /// Denominator N
        #[arg(long = "N")]
        n: String,
        /// Charges as integers or fractions p/d
        #[arg(required = true, allow_hyphen_values = true)]
        charges: Vec<String>,
    },
    /// Charges n/N for n in [from, to], ascending.
    Spectrum {
        /// Denominator N
        #[arg(long = "N")]
        n: String,
        /// First numerator
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        /// Last numerator
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// Smallest N accommodating every listed charge.
    Infer {
        /// Charges as integers or fractions p/d
        #[arg(required = true, allow_hyphen_values = true)]
        charges: Vec<String>,
    },
    /// Does kappa (given as kappa*e) keep every charge's phase unchanged?
    Kappa {
        /// kappa times e, as an integer or fraction
        #[arg(long = "kappa-e", allow_hyphen_values = true)]
        kappa_e: String,
        /// Charges as integers or fractions p/d
        #[arg(required = true, allow_hyphen_values = true)]
        charges: Vec<String>,
    },
    /// Is the spectrum n/N, |n| <= half-width, closed under q -> -q?
    Closure {
        /// Denominator N
        #[arg(long = "N")]
        n: String,
        /// Largest |n| in the spectrum
        #[arg(long)]
        half_width: i64,
    },
}

#[derive(Debug, Args, Default)]
struct FieldArgs {
    /// Interior field strength.
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<f64>,
    /// Solenoid radius.
    #[arg(long = "R")]
    r: Option<f64>,
    /// Exterior potential coefficient (A = gamma/rho outside).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "kappa")]
    gamma: Option<f64>,
    /// Offset from the continuous choice: gamma = B R^2/2 + kappa.
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
}

#[derive(Debug, Args, Default)]
struct PathArgs {
    /// Circle as comma-separated key=value pairs: r (required), cx, cy, z, turns.
    #[arg(long, conflicts_with_all = ["circle_json", "polyline"])]
    circle: Option<String>,
    /// Number of turns for --circle (overrides turns= in the spec).
    #[arg(long, allow_hyphen_values = true, requires = "circle")]
    turns: Option<i64>,
    /// Circle from JSON {"center":[x,y,z],"radius":r,"turns":n}.
    #[arg(long, conflicts_with = "polyline")]
    circle_json: Option<PathBuf>,
    /// Closed polyline from CSV rows x,y,z.
    #[arg(long)]
    polyline: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
struct QuadArgs {
    /// Relative quadrature tolerance [default: 1e-9]
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Absolute quadrature tolerance [default: 1e-12]
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Maximum adaptive subdivisions [default: 1048576]
    #[arg(long)]
    max_subdivisions: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    field: Option<FieldConfig>,
    quadrature: Option<QuadratureSpec>,
    interferometer: Option<InterferometerGeometry>,
    format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldConfig {
    #[serde(rename = "B")]
    b: Option<f64>,
    #[serde(rename = "R")]
    r: Option<f64>,
    gamma: Option<f64>,
    kappa: Option<f64>,
}

/// Failure of a CLI invocation.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

const DOMAIN_CODES: [&str; 19] = [
    "FieldUndefinedOnSolenoid",
    "InvalidRadius",
    "NonFinite",
    "AzimuthUndefined",
    "InvalidStep",
    "StencilCrossesSolenoid",
    "PathCrossesSolenoid",
    "PathTouchesAxis",
    "WindingUnresolvable",
    "InvalidPath",
    "InvalidQuadrature",
    "QuadratureNotConverged",
    "StokesCrossCheckFailed",
    "ZeroCharge",
    "InvalidGeometry",
    "EmptyChargeSet",
    "EmptyRange",
    "ParseRational",
    "InvalidDenominator",
];

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.code(),
            CliError::Usage(_) => "UsageError",
            CliError::Config(_) => "ConfigError",
            CliError::Io(_) => "IoError",
        }
    }

    /// Process exit status: 2 for usage, 3 config, 4 I/O, 10 and up for
    /// domain errors (one per kind).
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Config(_) => 3,
            CliError::Io(_) => 4,
            CliError::Domain(e) => {
                10 + DOMAIN_CODES.iter().position(|c| *c == e.code()).unwrap_or(DOMAIN_CODES.len()) as i32
            }
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args`, runs the command and returns the text for standard output.
pub fn run<I, T>(args: I) -> CliResult<String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    execute(cli)
}

/// Entry point for the binary: prints output or the error, returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too
            let is_err = e.use_stderr();
            let _ = e.print();
            return if is_err { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), e);
            e.exit_code()
        }
    }
}

fn load_config(path: Option<&Path>) -> CliResult<RunConfig> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

impl FieldArgs {
    /// Merges flags over the config file. With `lenient`, missing `B` and `R`
    /// default to 0 and 1 (for commands that only depend on gamma).
    fn resolve(&self, cfg: &RunConfig, lenient: bool) -> CliResult<SolenoidField> {
        let base = cfg.field.as_ref();
        let pick = |flag: Option<f64>, from_cfg: fn(&FieldConfig) -> Option<f64>| {
            flag.or_else(|| base.and_then(from_cfg))
        };
        let b = pick(self.b, |c| c.b);
        let r = pick(self.r, |c| c.r);
        // an explicit flag for either gamma or kappa beats both config entries
        let (gamma, kappa) = if self.gamma.is_some() || self.kappa.is_some() {
            (self.gamma, self.kappa)
        } else {
            (base.and_then(|c| c.gamma), base.and_then(|c| c.kappa))
        };
        let (b, r) = match (b, r, lenient) {
            (Some(b), Some(r), _) => (b, r),
            (b, r, true) => (b.unwrap_or(0.0), r.unwrap_or(1.0)),
            _ => return Err(CliError::Usage("the field needs --B and --R (or a config file)".into())),
        };
        let field = match (gamma, kappa) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give either gamma or kappa, not both".into())),
            (Some(g), None) => SolenoidField::new(b, r, g)?,
            (None, Some(k)) => SolenoidField::with_kappa(b, r, k)?,
            (None, None) => return Err(CliError::Usage("the field needs --gamma or --kappa".into())),
        };
        Ok(field)
    }
}

impl QuadArgs {
    fn resolve(&self, cfg: &RunConfig) -> CliResult<QuadratureSpec> {
        let mut spec = cfg.quadrature.unwrap_or_default();
        if let Some(v) = self.rel_tol {
            spec.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            spec.abs_tol = v;
        }
        if let Some(v) = self.max_subdivisions {
            spec.max_subdivisions = v;
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl PathArgs {
    fn is_given(&self) -> bool {
        self.circle.is_some() || self.circle_json.is_some() || self.polyline.is_some()
    }

    fn resolve(&self) -> CliResult<ClosedPath> {
        if let Some(spec) = &self.circle {
            return Ok(parse_circle(spec, self.turns)?.into());
        }
        if let Some(path) = &self.circle_json {
            let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let circle: Circle = serde_json::from_reader(BufReader::new(file))
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            return Ok(circle.into());
        }
        if let Some(path) = &self.polyline {
            let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            return Ok(Polyline::from_csv(BufReader::new(file))?.into());
        }
        Err(CliError::Usage("a path is required: --circle, --circle-json or --polyline".into()))
    }
}

fn parse_circle(spec: &str, turns_flag: Option<i64>) -> CliResult<Circle> {
    let (mut r, mut cx, mut cy, mut z, mut turns) = (None, 0.0, 0.0, 0.0, 1i64);
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("bad circle entry {part:?}, expected key=value")))?;
        let num = || {
            value
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number in circle entry {part:?}")))
        };
        match key.trim() {
            "r" => r = Some(num()?),
            "cx" => cx = num()?,
            "cy" => cy = num()?,
            "z" => z = num()?,
            "turns" => {
                turns = value
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad turns in {part:?}")))?
            }
            other => return Err(CliError::Usage(format!("unknown circle key {other:?}"))),
        }
    }
    let r = r.ok_or_else(|| CliError::Usage("circle needs r=<radius>".into()))?;
    Ok(Circle::new(Point::new(cx, cy, z)?, r, turns_flag.unwrap_or(turns))?)
}

/// Rounds to 12 significant digits and prints the shortest representation.
pub fn format_number(v: f64) -> String {
    serde_json::to_string(&round_sig(v)).unwrap_or_else(|_| "null".into())
}

fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

// Rounds every float in a JSON tree.
fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(round_sig(n.as_f64().unwrap_or(f64::NAN))),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn emit_json<T: Serialize>(value: &T) -> CliResult<String> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(format!("{}\n", round_json(v)))
}

fn emit_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn parse_charges(items: &[String]) -> CliResult<Vec<RationalCharge>> {
    items.iter().map(|s| s.parse().map_err(CliError::from)).collect()
}

fn parse_denominator(s: &str) -> CliResult<ChargeSpectrum> {
    let n: RationalCharge = s.parse()?;
    if !n.is_integer() {
        return Err(Error::InvalidDenominator.into());
    }
    Ok(ChargeSpectrum::new(n.numer().clone())?)
}

fn execute(cli: Cli) -> CliResult<String> {
    let cfg = load_config(cli.config.as_deref())?;
    let format_or = |default: Format| cli.format.or(cfg.format).unwrap_or(default);
    let num = format_number;

    match &cli.command {
        Command::Circulation { field, path, quad } => {
            let f = field.resolve(&cfg, false)?;
            let spec = quad.resolve(&cfg)?;
            let path = path.resolve()?;
            let circ = circulation(&f, &path, &spec)?;
            let w = winding_number(&path)?;
            match format_or(Format::Json) {
                Format::Json => emit_json(&json!({ "circulation": circ, "winding_number": w })),
                Format::Csv => Ok(emit_csv(&["circulation", "winding_number"], &[vec![num(circ), w.to_string()]])),
            }
        }
        Command::Flux { field, l, quad } => {
            let f = field.resolve(&cfg, false)?;
            let flux = flux_direct(&f, *l, &quad.resolve(&cfg)?)?;
            match format_or(Format::Json) {
                Format::Json => emit_json(&json!({ "L": l, "flux": flux })),
                Format::Csv => Ok(emit_csv(&["L", "flux"], &[vec![num(*l), num(flux)]])),
            }
        }
        Command::Stokes { field, l, quad } => {
            let f = field.resolve(&cfg, false)?;
            let report = verify_stokes(&f, *l, &quad.resolve(&cfg)?)?;
            match format_or(Format::Json) {
                Format::Json => emit_json(&StokesRun { field: f, l: *l, report }),
                Format::Csv => Ok(emit_csv(
                    &["B", "R", "gamma", "L", "phi_1", "phi_2", "phi_total", "circ_outer", "circ_inner", "discrepancy"],
                    &[[
                        f.b(),
                        f.radius(),
                        f.gamma(),
                        *l,
                        report.phi_1,
                        report.phi_2,
                        report.phi_total,
                        report.circ_outer,
                        report.circ_inner,
                        report.discrepancy,
                    ]
                    .map(num)
                    .to_vec()],
                )),
            }
        }
        Command::ChartAudit { field, l, quad } => {
            let f = field.resolve(&cfg, false)?;
            let audit = chart_audit(&f, *l, &quad.resolve(&cfg)?)?;
            match format_or(Format::Json) {
                Format::Json => emit_json(&json!({ "L": l, "chart_audit": audit })),
                Format::Csv => Ok(emit_csv(&["L", "chart_audit"], &[vec![num(*l), num(audit)]])),
            }
        }
        Command::Phase { field, q, w, path, quad } => {
            let (phase, gamma, w) = if path.is_given() {
                let f = field.resolve(&cfg, false)?;
                let path = path.resolve()?;
                let spec = quad.resolve(&cfg)?;
                let w = winding_number(&path)?;
                (holonomy(&f, &path, *q, &spec)?, f.gamma(), w)
            } else {
                let f = field.resolve(&cfg, true)?;
                (phase_closed_form(*q, f.gamma(), *w)?, f.gamma(), *w)
            };
            emit_phase(phase, *q, gamma, w, format_or(Format::Json))
        }
        Command::Interfere {
            field,
            q,
            slit_separation,
            screen_distance,
            wavenumber,
            half_extent,
            samples,
        } => {
            let f = field.resolve(&cfg, true)?;
            let mut geom = cfg.interferometer.unwrap_or_default();
            geom.slit_separation = slit_separation.unwrap_or(geom.slit_separation);
            geom.screen_distance = screen_distance.unwrap_or(geom.screen_distance);
            geom.wavenumber = wavenumber.unwrap_or(geom.wavenumber);
            geom.half_extent = half_extent.unwrap_or(geom.half_extent);
            geom.samples = samples.unwrap_or(geom.samples);
            let rows = interference(&f, *q, &geom)?;
            match format_or(Format::Csv) {
                Format::Csv => Ok(emit_csv(
                    &["x", "intensity"],
                    &rows.iter().map(|(x, i)| vec![num(*x), num(*i)]).collect::<Vec<_>>(),
                )),
                Format::Json => emit_json(&json!({
                    "q": q,
                    "gamma": f.gamma(),
                    "fringe_shift": fringe_shift(*q, f.gamma()),
                    "samples": rows.iter().map(|(x, i)| json!({ "x": x, "intensity": i })).collect::<Vec<_>>(),
                })),
            }
        }
        Command::Quantize { op } => quantize_command(op, format_or(Format::Json)),
    }
}

fn emit_phase(phase: PhaseFactor, q: f64, gamma: f64, w: i64, format: Format) -> CliResult<String> {
    let periodic = if q == 0.0 { None } else { Some(periodicity_check(q, gamma)?) };
    match format {
        Format::Json => emit_json(&json!({
            "q": q,
            "gamma": gamma,
            "w": w,
            "angle": phase.angle(),
            "period_in_gamma": periodic.map(|_| 1.0 / q.abs()),
        })),
        Format::Csv => Ok(emit_csv(
            &["q", "gamma", "w", "angle"],
            &[vec![format_number(q), format_number(gamma), w.to_string(), format_number(phase.angle())]],
        )),
    }
}

fn quantize_command(op: &QuantizeOp, format: Format) -> CliResult<String> {
    match op {
        QuantizeOp::Check { n, charges } => {
            let spec = parse_denominator(n)?;
            let charges = parse_charges(charges)?;
            let rows: Vec<(String, bool, Option<String>)> = charges
                .iter()
                .map(|q| (q.to_string(), charge_allowed(q, &spec), spec.index_of(q).map(|i| i.to_string())))
                .collect();
            match format {
                Format::Json => emit_json(&json!({
                    "N": spec,
                    "charges": rows.iter().map(|(q, ok, n)| json!({ "q": q, "allowed": ok, "n_q": n })).collect::<Vec<_>>(),
                })),
                Format::Csv => Ok(emit_csv(
                    &["q", "allowed", "n_q"],
                    &rows
                        .into_iter()
                        .map(|(q, ok, n)| vec![q, ok.to_string(), n.unwrap_or_default()])
                        .collect::<Vec<_>>(),
                )),
            }
        }
        QuantizeOp::Spectrum { n, from, to } => {
            let spec = parse_denominator(n)?;
            let charges = spectrum(&spec, *from..=*to)?;
            match format {
                Format::Json => emit_json(&charges),
                Format::Csv => Ok(emit_csv(&["q"], &charges.iter().map(|q| vec![q.to_string()]).collect::<Vec<_>>())),
            }
        }
        QuantizeOp::Infer { charges } => {
            let spec = infer_minimal_n(&parse_charges(charges)?)?;
            match format {
                Format::Json => emit_json(&spec),
                Format::Csv => Ok(emit_csv(&["N"], &[vec![spec.denominator().to_string()]])),
            }
        }
        QuantizeOp::Kappa { kappa_e, charges } => {
            let kappa: RationalCharge = kappa_e.parse()?;
            let charges = parse_charges(charges)?;
            let allowed = kappa_allowed(&kappa);
            let consistent = kappa_constraints(&charges, &kappa);
            let products: Vec<(String, String, bool)> = charges
                .iter()
                .map(|q| {
                    let p = q.mul(&kappa);
                    (q.to_string(), p.to_string(), p.is_integer())
                })
                .collect();
            match format {
                Format::Json => emit_json(&json!({
                    "kappa_e": kappa,
                    "kappa_allowed": allowed,
                    "phases_unchanged": consistent,
                    "products": products.iter().map(|(q, p, i)| json!({ "q": q, "q_kappa": p, "integer": i })).collect::<Vec<_>>(),
                })),
                Format::Csv => Ok(emit_csv(
                    &["q", "q_kappa", "integer"],
                    &products.into_iter().map(|(q, p, i)| vec![q, p, i.to_string()]).collect::<Vec<_>>(),
                )),
            }
        }
        QuantizeOp::Closure { n, half_width } => {
            let spec = parse_denominator(n)?;
            let h = half_width.abs();
            let closed = antiparticle_closure(&spec, -h..=h)?;
            match format {
                Format::Json => emit_json(&json!({ "N": spec, "n_min": -h, "n_max": h, "closed": closed })),
                Format::Csv => Ok(emit_csv(
                    &["N", "n_min", "n_max", "closed"],
                    &[vec![spec.denominator().to_string(), (-h).to_string(), h.to_string(), closed.to_string()]],
                )),
            }
        }
    }
}

//! Command-line front end: element construction and composition, actions on
//! events, motion classification, boost decomposition, proper time, the
//! closed-form formulas and the full oracle suite, with JSON and CSV I/O.
//!
//! Exit codes: 0 on success, 1 on validation errors and failing oracles,
//! 2 on malformed input (unparseable flags, JSON or CSV), with messages
//! naming the offending field.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::groups::{
    AristotleElement, GalileiElement, GroupMode, GroupPolicy, LorentzMatrix, PoincareElement,
    SpacetimeAction, TimeSign, boost_decompose, make_aristotle, make_galilei, make_poincare,
};
use crate::motions::{InertialMotion, Worldline, classify_galilean, classify_minkowski};
use crate::relativity::{
    InterferometerSpec, ShipDropSpec, length_contraction, michelson_paths, ship_drop,
    time_dilation, velocity_addition,
};
use crate::spacetime::{Event, FourVector};
use crate::verify;

/// Effective settings after merging defaults, the optional config file and
/// explicit flags, in increasing order of precedence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CliConfig {
    pub tolerance: f64,
    pub full_group: bool,
    pub light_speed: f64,
    pub output_format: OutputFormat,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            full_group: false,
            light_speed: 1.0,
            output_format: OutputFormat::Json,
        }
    }
}

impl CliConfig {
    pub fn policy(&self) -> GroupPolicy {
        GroupPolicy {
            tol: self.tolerance,
            mode: if self.full_group { GroupMode::FullGroup } else { GroupMode::IdentityComponent },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Aristotle,
    Galilei,
    Poincare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MechanicsArg {
    Galilean,
    Minkowski,
}

#[derive(Parser)]
#[command(
    name = "inertia",
    version,
    about = "Kinematics of the Aristotle, Galilei and Poincare groups"
)]
struct Cli {
    /// Validation tolerance for group membership checks.
    #[arg(long, global = true, value_name = "TOL")]
    tolerance: Option<f64>,

    /// Accept the full group (reflections, time reversal), not only the
    /// identity component.
    #[arg(long, global = true)]
    full_group: bool,

    /// Light speed used by the formula commands.
    #[arg(long, global = true, value_name = "V")]
    light_speed: Option<f64>,

    /// Output format.
    #[arg(long, global = true, value_enum, value_name = "FMT")]
    format: Option<OutputFormat>,

    /// JSON file with defaults for the global options.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose two elements of one family, read from JSON files.
    Compose {
        family: Family,
        lhs: PathBuf,
        rhs: PathBuf,
    },
    /// Apply an element from a JSON file to an event.
    Act {
        family: Family,
        element: PathBuf,
        /// Event coordinates.
        #[arg(long, value_name = "x,y,z,t", allow_hyphen_values = true)]
        event: String,
    },
    /// Classify an inertial direction under a mechanics.
    Classify {
        mechanics: MechanicsArg,
        /// Direction of the motion in spacetime.
        #[arg(long, value_name = "dx,dy,dz,dt", allow_hyphen_values = true)]
        direction: String,
    },
    /// Split a Lorentz matrix into velocity, spatial block and time factor.
    Decompose { matrix: PathBuf },
    /// Accumulated proper time along a worldline CSV file.
    ProperTime { worldline: PathBuf },
    /// Michelson interferometer round-trip path lengths.
    Michelson {
        /// Arm length.
        #[arg(long)]
        d: f64,
        /// Drag speed as a fraction of the light speed.
        #[arg(long)]
        beta: f64,
    },
    /// Contracted length of a rod moving along its own axis.
    Contract {
        #[arg(long)]
        d: f64,
        #[arg(long)]
        beta: f64,
    },
    /// Proper duration of a clock moving at speed v for coordinate time t.
    Dilate {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        v: f64,
    },
    /// Relativistic sum of two collinear velocities.
    AddVelocities {
        #[arg(long)]
        v: f64,
        #[arg(long)]
        w: f64,
    },
    /// Drop a stone from the mast of a moving ship and report the offset.
    ShipDrop {
        /// Ship velocity.
        #[arg(long, value_name = "bx,by,bz", allow_hyphen_values = true)]
        boost: String,
        #[arg(long, default_value_t = 10.0)]
        mast_height: f64,
        #[arg(long, default_value_t = 1.0)]
        fall_duration: f64,
    },
    /// Run every theorem oracle; exit 0 only if all pass.
    Verify {
        #[arg(long, default_value_t = 500)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Worldline file operations.
    Worldline {
        #[command(subcommand)]
        action: WorldlineCommand,
    },
}

#[derive(Subcommand)]
enum WorldlineCommand {
    /// Boost every vertex with the standard Lorentz boost and print CSV.
    Boost {
        /// Boost velocity, each component in units of the light speed.
        #[arg(long, value_name = "bx,by,bz", allow_hyphen_values = true)]
        beta: String,
        worldline: PathBuf,
    },
}

/// Failures split by exit code: malformed input is 2, a validation or
/// oracle error on well-formed input is 1.
#[derive(Debug)]
enum Failure {
    Malformed(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Malformed(_) => 2,
            Failure::Invalid(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Invalid(m) => m,
        }
    }
}

fn invalid(err: impl std::fmt::Display) -> Failure {
    Failure::Invalid(err.to_string())
}

/// Parses argv, executes the command and writes results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(parse_err) => {
            use clap::error::ErrorKind;
            return match parse_err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{parse_err}");
                    0
                }
                _ => {
                    let _ = write!(err, "{parse_err}");
                    2
                }
            };
        }
    };
    let outcome = load_config(&cli).and_then(|config| execute(&cli.command, &config, out));
    match outcome {
        Ok(()) => 0,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.code()
        }
    }
}

/// Defaults, overridden by the config file, overridden by explicit flags.
fn load_config(cli: &Cli) -> Result<CliConfig, Failure> {
    let mut config = CliConfig::default();
    if let Some(path) = &cli.config {
        let text = read_file(path)?;
        config = serde_json::from_str(&text).map_err(|e| {
            Failure::Malformed(format!("config {}: {e}", path.display()))
        })?;
    }
    if let Some(tolerance) = cli.tolerance {
        config.tolerance = tolerance;
    }
    if cli.full_group {
        config.full_group = true;
    }
    if let Some(light_speed) = cli.light_speed {
        config.light_speed = light_speed;
    }
    if let Some(format) = cli.format {
        config.output_format = format;
    }
    if !(config.tolerance > 0.0 && config.tolerance.is_finite()) {
        return Err(Failure::Malformed(format!(
            "tolerance must be a positive number, got {}",
            config.tolerance
        )));
    }
    if !(config.light_speed > 0.0 && config.light_speed.is_finite()) {
        return Err(Failure::Malformed(format!(
            "light_speed must be a positive number, got {}",
            config.light_speed
        )));
    }
    Ok(config)
}

fn execute(command: &Command, config: &CliConfig, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Compose { family, lhs, rhs } => compose_cmd(*family, lhs, rhs, config, out),
        Command::Act { family, element, event } => act_cmd(*family, element, event, config, out),
        Command::Classify { mechanics, direction } => {
            classify_cmd(*mechanics, direction, config, out)
        }
        Command::Decompose { matrix } => decompose_cmd(matrix, config, out),
        Command::ProperTime { worldline } => proper_time_cmd(worldline, config, out),
        Command::Michelson { d, beta } => {
            let spec = InterferometerSpec::new(*d, *beta).map_err(invalid)?;
            emit_json(out, config, &michelson_paths(&spec))
        }
        Command::Contract { d, beta } => {
            let spec = InterferometerSpec::new(*d, *beta).map_err(invalid)?;
            emit_scalar(out, config, length_contraction(spec.arm_length, spec.beta))
        }
        Command::Dilate { t, v } => {
            let tau = time_dilation(*t, *v, config.light_speed).map_err(invalid)?;
            emit_scalar(out, config, tau)
        }
        Command::AddVelocities { v, w } => {
            let limit = config.light_speed;
            for (name, speed) in [("v", *v), ("w", *w)] {
                if speed.abs() > limit || !speed.is_finite() {
                    return Err(Failure::Invalid(format!(
                        "--{name} is {speed}, above the light speed {limit}"
                    )));
                }
            }
            emit_scalar(out, config, velocity_addition(*v, *w, limit))
        }
        Command::ShipDrop { boost, mast_height, fall_duration } => {
            let b = parse_numbers("boost", boost, 3)?;
            let spec = ShipDropSpec::new(Vector3::new(b[0], b[1], b[2]), *mast_height, *fall_duration)
                .map_err(invalid)?;
            let report = ship_drop(&spec);
            emit_json(out, config, &report)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Invalid("ship drop oracle failed".to_string()))
            }
        }
        Command::Verify { trials, seed } => verify_cmd(*trials, *seed, config, out),
        Command::Worldline { action } => match action {
            WorldlineCommand::Boost { beta, worldline } => {
                worldline_boost_cmd(beta, worldline, out)
            }
        },
    }
}

// ---------------------------------------------------------------- elements

/// Wire form of an Aristotle element: rotation rows, translation, clock
/// shift and time sign.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AristotleDto {
    #[serde(rename = "A")]
    a: [[f64; 3]; 3],
    #[serde(rename = "C")]
    c: [f64; 3],
    e: f64,
    #[serde(default = "default_sign")]
    sign: f64,
}

/// Wire form of a Galilei element; `B` defaults to zero so Aristotle files
/// parse as already-embedded Galilei elements.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GalileiDto {
    #[serde(rename = "A")]
    a: [[f64; 3]; 3],
    #[serde(rename = "B", default)]
    b: [f64; 3],
    #[serde(rename = "C")]
    c: [f64; 3],
    e: f64,
    #[serde(default = "default_sign")]
    sign: f64,
}

/// Wire form of a Poincare element: Lorentz matrix rows and a 4-vector
/// translation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoincareDto {
    #[serde(rename = "L")]
    l: [[f64; 4]; 4],
    #[serde(rename = "C")]
    c: [f64; 4],
}

fn default_sign() -> f64 {
    1.0
}

fn matrix3(rows: &[[f64; 3]; 3]) -> Matrix3<f64> {
    Matrix3::from_fn(|r, c| rows[r][c])
}

fn matrix4(rows: &[[f64; 4]; 4]) -> Matrix4<f64> {
    Matrix4::from_fn(|r, c| rows[r][c])
}

fn rows3(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    std::array::from_fn(|r| std::array::from_fn(|c| m[(r, c)]))
}

fn rows4(m: &Matrix4<f64>) -> [[f64; 4]; 4] {
    std::array::from_fn(|r| std::array::from_fn(|c| m[(r, c)]))
}

fn parse_sign(sign: f64) -> Result<TimeSign, Failure> {
    TimeSign::from_factor(sign).ok_or_else(|| {
        Failure::Malformed(format!("field \"sign\" must be 1 or -1, got {sign}"))
    })
}

/// An element of whichever family the command named, paired with the wire
/// codecs so compose and act can share one code path.
#[derive(Debug)]
enum AnyElement {
    Aristotle(AristotleElement),
    Galilei(GalileiElement),
    Poincare(PoincareElement),
}

impl AnyElement {
    fn parse(family: Family, path: &Path, config: &CliConfig) -> Result<Self, Failure> {
        let text = read_file(path)?;
        let policy = config.policy();
        let label = path.display();
        match family {
            Family::Aristotle => {
                let dto: AristotleDto = serde_json::from_str(&text)
                    .map_err(|e| Failure::Malformed(format!("{label}: {e}")))?;
                let sign = parse_sign(dto.sign)?;
                let element =
                    make_aristotle(matrix3(&dto.a), Vector3::from(dto.c), dto.e, sign, policy)
                        .map_err(invalid)?;
                Ok(AnyElement::Aristotle(element))
            }
            Family::Galilei => {
                let dto: GalileiDto = serde_json::from_str(&text)
                    .map_err(|e| Failure::Malformed(format!("{label}: {e}")))?;
                let sign = parse_sign(dto.sign)?;
                let element = make_galilei(
                    matrix3(&dto.a),
                    Vector3::from(dto.b),
                    Vector3::from(dto.c),
                    dto.e,
                    sign,
                    policy,
                )
                .map_err(invalid)?;
                Ok(AnyElement::Galilei(element))
            }
            Family::Poincare => {
                let dto: PoincareDto = serde_json::from_str(&text)
                    .map_err(|e| Failure::Malformed(format!("{label}: {e}")))?;
                let element = make_poincare(matrix4(&dto.l), Vector4::from(dto.c), policy)
                    .map_err(invalid)?;
                Ok(AnyElement::Poincare(element))
            }
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let value = match self {
            AnyElement::Aristotle(g) => {
                let dto = AristotleDto {
                    a: rows3(g.rotation().matrix()),
                    c: g.translation().into(),
                    e: g.time_translation(),
                    sign: g.time_sign().factor(),
                };
                serde_json::to_value(&dto)
            }
            AnyElement::Galilei(g) => {
                let dto = GalileiDto {
                    a: rows3(g.rotation().matrix()),
                    b: g.boost_velocity().into(),
                    c: g.translation().into(),
                    e: g.time_translation(),
                    sign: g.time_sign().factor(),
                };
                serde_json::to_value(&dto)
            }
            AnyElement::Poincare(g) => {
                let dto = PoincareDto {
                    l: rows4(g.lorentz().matrix()),
                    c: g.translation().into(),
                };
                serde_json::to_value(&dto)
            }
        };
        value.expect("element DTOs always serialize")
    }

    fn compose(&self, other: &Self) -> Result<Self, Failure> {
        match (self, other) {
            (AnyElement::Aristotle(g1), AnyElement::Aristotle(g2)) => {
                Ok(AnyElement::Aristotle(g1.compose(g2).map_err(invalid)?))
            }
            (AnyElement::Galilei(g1), AnyElement::Galilei(g2)) => {
                Ok(AnyElement::Galilei(g1.compose(g2).map_err(invalid)?))
            }
            (AnyElement::Poincare(g1), AnyElement::Poincare(g2)) => {
                Ok(AnyElement::Poincare(g1.compose(g2).map_err(invalid)?))
            }
            _ => unreachable!("both elements are parsed with the same family"),
        }
    }

    fn act(&self, q: Event) -> Event {
        match self {
            AnyElement::Aristotle(g) => g.act_event(q),
            AnyElement::Galilei(g) => g.act_event(q),
            AnyElement::Poincare(g) => g.act_event(q),
        }
    }
}

// ---------------------------------------------------------------- commands

fn compose_cmd(
    family: Family,
    lhs: &Path,
    rhs: &Path,
    config: &CliConfig,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let g1 = AnyElement::parse(family, lhs, config)?;
    let g2 = AnyElement::parse(family, rhs, config)?;
    let product = g1.compose(&g2)?;
    emit_json(out, config, &product.to_json())
}

fn act_cmd(
    family: Family,
    element: &Path,
    event: &str,
    config: &CliConfig,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let g = AnyElement::parse(family, element, config)?;
    let q = parse_numbers("event", event, 4)?;
    let image = g.act(Event::new(q[0], q[1], q[2], q[3]));
    emit_json(out, config, &image)
}

fn classify_cmd(
    mechanics: MechanicsArg,
    direction: &str,
    config: &CliConfig,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let d = parse_numbers("direction", direction, 4)?;
    let motion = InertialMotion::new(Event::origin(), FourVector::new(d[0], d[1], d[2], d[3]))
        .map_err(invalid)?;
    let class = match mechanics {
        MechanicsArg::Galilean => classify_galilean(&motion),
        MechanicsArg::Minkowski => classify_minkowski(&motion),
    };
    match config.output_format {
        OutputFormat::Json => emit_json(out, config, &json!(class.to_string())),
        _ => writeln!(out, "{class}").map_err(invalid),
    }
}

fn decompose_cmd(path: &Path, config: &CliConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let text = read_file(path)?;
    // Accept either {"L": rows} or the bare rows.
    let rows: [[f64; 4]; 4] = match serde_json::from_str::<PoincareDtoLoose>(&text) {
        Ok(dto) => dto.l,
        Err(_) => serde_json::from_str(&text).map_err(|e| {
            Failure::Malformed(format!(
                "{}: expected field \"L\" or a bare 4x4 matrix: {e}",
                path.display()
            ))
        })?,
    };
    let lorentz = LorentzMatrix::new(matrix4(&rows), config.policy()).map_err(invalid)?;
    let split = boost_decompose(&lorentz);
    let value = json!({
        "beta": [split.beta.x, split.beta.y, split.beta.z],
        "B": rows3(&split.rot_inverse),
        "a": split.time_factor,
    });
    emit_json(out, config, &value)
}

/// Variant of [`PoincareDto`] that tolerates a missing translation, for
/// decompose inputs that carry only the matrix.
#[derive(Deserialize)]
struct PoincareDtoLoose {
    #[serde(rename = "L")]
    l: [[f64; 4]; 4],
}

fn proper_time_cmd(path: &Path, config: &CliConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let worldline = load_worldline(path)?;
    let tau = worldline.proper_time(config.tolerance).map_err(invalid)?;
    emit_scalar(out, config, tau)
}

fn worldline_boost_cmd(beta: &str, path: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let b = parse_numbers("beta", beta, 3)?;
    let boost = PoincareElement::boost(Vector3::new(b[0], b[1], b[2])).map_err(invalid)?;
    let worldline = load_worldline(path)?;
    let boosted = worldline.transform(&boost).map_err(invalid)?;
    write!(out, "{}", boosted.to_csv()).map_err(invalid)
}

fn verify_cmd(
    trials: u32,
    seed: u64,
    config: &CliConfig,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let reports = verify::run_all(trials, seed);
    let mut failed = 0usize;
    for (name, report) in &reports {
        if !report.passed() {
            failed += 1;
        }
        match config.output_format {
            OutputFormat::Json => {
                let mut value = serde_json::to_value(report).map_err(invalid)?;
                value["name"] = json!(name);
                writeln!(out, "{value}").map_err(invalid)?;
            }
            _ => {
                let verdict = if report.passed() { "pass" } else { "FAIL" };
                writeln!(out, "{verdict}  {name}: {}", report.detail).map_err(invalid)?;
            }
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("{failed} of {} oracles failed", reports.len())))
    }
}

// ----------------------------------------------------------------- helpers

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn load_worldline(path: &Path) -> Result<Worldline, Failure> {
    let text = read_file(path)?;
    Worldline::from_csv(&text)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

/// Comma-separated numeric flag values like `--event 1,0,0,2.5`.
fn parse_numbers(field: &str, text: &str, n: usize) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(Failure::Malformed(format!(
            "--{field} expects {n} comma-separated numbers, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim().parse::<f64>().map_err(|_| {
                Failure::Malformed(format!("--{field} has a non-numeric entry {p:?}"))
            })
        })
        .collect()
}

fn emit_json<S: Serialize>(
    out: &mut dyn Write,
    config: &CliConfig,
    value: &S,
) -> Result<(), Failure> {
    let text = match config.output_format {
        OutputFormat::Text => serde_json::to_string_pretty(value),
        _ => serde_json::to_string(value),
    }
    .map_err(invalid)?;
    writeln!(out, "{text}").map_err(invalid)
}

fn emit_scalar(out: &mut dyn Write, config: &CliConfig, value: f64) -> Result<(), Failure> {
    match config.output_format {
        OutputFormat::Json => {
            let text = serde_json::to_string(&value).map_err(invalid)?;
            writeln!(out, "{text}").map_err(invalid)
        }
        _ => writeln!(out, "{value}").map_err(invalid),
    }
}

//! Orchestration behind the `focal-geom` binary: load a curve spec, run one
//! analysis, write CSV/JSON files into an output directory.
//!
//! | command      | files                                   |
//! |--------------|-----------------------------------------|
//! | `analyze`    | `analyze.csv`, `analyze.json`           |
//! | `focal`      | `focal.csv`, `focal.json`               |
//! | `slant`      | `slant.json`                            |
//! | `verify`     | `verify.json`                           |
//! | `synthesize` | `synthesized.json` (a `samples` spec)   |

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use focal_geom::curve::spec::{CurveSpec, CurveType};
use focal_geom::focal::{focal_curvatures, focal_relations_check, last_line_residuals, FocalData};
use focal_geom::frenet::{classify, curvature_table, DEFAULT_CLASSIFY_TOLERANCE};
use focal_geom::slant::{
    is_k_slant, slant_reports, verify_focal_slant, VerifyOptions, ANALYTIC_SLANT_TOLERANCE,
    AXIS_ANGLE_TOLERANCE, SAMPLED_SLANT_TOLERANCE,
};
use focal_geom::{Curve, CurveKind, GeomError};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_GRID_POINTS: usize = 256;
pub const MIN_GRID_POINTS: usize = 16;
pub const DEFAULT_SEED: u64 = 42;
/// `|c_m|` below this is treated as a zero of `c_m` in the last-line residual.
pub const LAST_LINE_FLOOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Analyze,
    Focal,
    Slant,
    Verify,
    Synthesize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    /// Directory receiving the output files; created if missing.
    pub output_path: PathBuf,
    pub grid_points: usize,
    /// Main tolerance of the command. `None` picks the module default:
    /// classification 1e-6; slant 1e-6 for analytic and synthesized curves,
    /// 1e-4 for sampled ones.
    pub tolerance: Option<f64>,
    /// Slant tolerance applied to the focal curve in `verify` (default 1e-4).
    pub focal_tolerance: Option<f64>,
    /// Axis agreement in radians for `verify` (default 1e-3).
    pub axis_tolerance: Option<f64>,
    pub k: Option<usize>,
    /// Fills in or checks the spec's `dim`.
    pub dim: Option<usize>,
    /// Recorded in every report. No command draws random numbers.
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>, output_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input_path: input_path.into(),
            output_path: output_path.into(),
            grid_points: DEFAULT_GRID_POINTS,
            tolerance: None,
            focal_tolerance: None,
            axis_tolerance: None,
            k: None,
            dim: None,
            seed: DEFAULT_SEED,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.grid_points < MIN_GRID_POINTS {
            return Err(CliError::Config(format!(
                "grid points must be at least {MIN_GRID_POINTS}, got {}",
                self.grid_points
            )));
        }
        for (name, tol) in [
            ("tolerance", self.tolerance),
            ("focal tolerance", self.focal_tolerance),
            ("axis tolerance", self.axis_tolerance),
        ] {
            if let Some(t) = tol {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(CliError::Config(format!("{name} must be positive, got {t}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl CliError {
    /// 2 for bad input or configuration, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Config(_) => 2,
            CliError::Geom(e) => match e {
                GeomError::DimensionMismatch { .. }
                | GeomError::DimensionTooSmall(_)
                | GeomError::NonFinite(_)
                | GeomError::TooManyVectors { .. }
                | GeomError::OutOfDomain { .. }
                | GeomError::InvalidProfile(_)
                | GeomError::NonOrthonormalFrame { .. }
                | GeomError::BadParameters(_)
                | GeomError::InvalidGrid(_)
                | GeomError::BadSlantIndex { .. } => 2,
                _ => 3,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    /// 0 on success, 1 when a verification check failed.
    pub exit_code: i32,
    pub files: Vec<PathBuf>,
}

pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    config.validate()?;
    let spec = load_spec(config)?;
    fs::create_dir_all(&config.output_path).map_err(|source| CliError::Io {
        path: config.output_path.clone(),
        source,
    })?;
    match config.command {
        Command::Analyze => analyze(config, &spec),
        Command::Focal => focal(config, &spec),
        Command::Slant => slant(config, &spec),
        Command::Verify => verify(config, &spec),
        Command::Synthesize => synthesize(config, &spec),
    }
}

fn load_spec(config: &RunConfig) -> Result<CurveSpec, CliError> {
    let path = &config.input_path;
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    let mut spec: CurveSpec =
        serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.clone(), source })?;
    if let Some(d) = config.dim {
        match spec.dim {
            Some(have) if have != d => {
                return Err(GeomError::DimensionMismatch { expected: d, got: have }.into());
            }
            _ => spec.dim = Some(d),
        }
    }
    Ok(spec)
}

/// Unit-speed version of the input. Synthesized curves already are.
fn unit_speed(spec: &CurveSpec) -> Result<Curve, CliError> {
    let c = spec.build()?;
    Ok(match c.kind() {
        CurveKind::Synthesized => c,
        _ => c.reparam_to_arclength()?,
    })
}

fn slant_tolerance(config: &RunConfig, c: &Curve) -> f64 {
    config.tolerance.unwrap_or(match c.kind() {
        CurveKind::Sampled => SAMPLED_SLANT_TOLERANCE,
        _ => ANALYTIC_SLANT_TOLERANCE,
    })
}

fn header(config: &RunConfig, c: &Curve) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(config.command));
    map.insert("grid_points".into(), json!(config.grid_points));
    map.insert("seed".into(), json!(config.seed));
    map.insert("dim".into(), json!(c.dim()));
    map.insert("curve_kind".into(), json!(c.kind()));
    map.insert("domain".into(), json!([c.domain().0, c.domain().1]));
    map
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(config: &RunConfig, name: &str, contents: &str, files: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let path = config.output_path.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path: path.clone(), source })?;
    files.push(path);
    Ok(())
}

fn write_json(config: &RunConfig, name: &str, value: &impl Serialize, files: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| CliError::Parse {
        path: config.output_path.join(name),
        source,
    })?;
    text.push('\n');
    write_file(config, name, &text, files)
}

fn error_value(result: Result<Value, GeomError>) -> (Value, Value) {
    match result {
        Ok(v) => (v, Value::Null),
        Err(e) => (Value::Null, json!(e.to_string())),
    }
}

fn analyze(config: &RunConfig, spec: &CurveSpec) -> Result<RunOutcome, CliError> {
    let c = spec.build()?;
    let d = c.dim();
    let m = d - 1;
    let grid = c.grid(config.grid_points);
    let rows = curvature_table(&c, &grid, d)?;

    let mut csv = String::from("s");
    (1..=d).for_each(|i| write!(csv, ",x{i}").unwrap());
    (1..=m).for_each(|i| write!(csv, ",kappa{i}").unwrap());
    csv.push_str(",speed\n");
    for row in &rows {
        csv.push_str(&num(row.s));
        for x in c.position(row.s)?.as_slice() {
            write!(csv, ",{}", num(*x)).unwrap();
        }
        for i in 0..m {
            csv.push(',');
            if let Some(k) = row.curvatures.get(i) {
                csv.push_str(&num(*k));
            }
        }
        writeln!(csv, ",{}", num(row.speed)).unwrap();
    }

    let tol = config.tolerance.unwrap_or(DEFAULT_CLASSIFY_TOLERANCE);
    let (classification, classification_error) =
        error_value(classify(&c, &grid, tol).map(|cl| serde_json::to_value(cl).unwrap()));
    let mut report = header(config, &c);
    report.insert("tolerance".into(), json!(tol));
    report.insert(
        "reduced_order_points".into(),
        json!(rows.iter().filter(|r| r.is_flagged()).count()),
    );
    report.insert("classification".into(), classification);
    report.insert("classification_error".into(), classification_error);

    let mut files = Vec::new();
    write_file(config, "analyze.csv", &csv, &mut files)?;
    write_json(config, "analyze.json", &report, &mut files)?;
    Ok(RunOutcome { exit_code: 0, files })
}

fn focal_csv(data: &[FocalData]) -> String {
    let d = data.first().map_or(0, |f| f.focal_point.dim());
    let m = d.saturating_sub(1);
    let mut csv = String::from("s");
    (1..=d).for_each(|i| write!(csv, ",y{i}").unwrap());
    (1..=m).for_each(|i| write!(csv, ",c{i}").unwrap());
    csv.push_str(",A,epsilon,R,is_vertex\n");
    for f in data {
        csv.push_str(&num(f.s));
        for x in f.focal_point.as_slice().iter().chain(&f.focal_curvatures) {
            write!(csv, ",{}", num(*x)).unwrap();
        }
        writeln!(csv, ",{},{},{},{}", num(f.a), f.epsilon, num(f.radius), u8::from(f.is_vertex)).unwrap();
    }
    csv
}

fn focal(config: &RunConfig, spec: &CurveSpec) -> Result<RunOutcome, CliError> {
    let c = unit_speed(spec)?;
    let grid = c.grid(config.grid_points);
    let data = focal_curvatures(&c, &grid)?;
    let vertices = data.iter().filter(|f| f.is_vertex).count();
    let last_line = last_line_residuals(&data, LAST_LINE_FLOOR)?;
    let last_line_max = last_line.iter().flatten().fold(0.0_f64, |acc, r| acc.max(r.abs()));
    let relations = focal_relations_check(&c, &grid);
    let exit_code = match &relations {
        Ok(_) => 0,
        Err(_) => 3,
    };
    let (relations, relations_error) =
        error_value(relations.map(|r| serde_json::to_value(r).unwrap()));

    let mut report = header(config, &c);
    report.insert("vertices".into(), json!(vertices));
    report.insert("last_line_floor".into(), json!(LAST_LINE_FLOOR));
    report.insert(
        "last_line_points".into(),
        json!(last_line.iter().filter(|r| r.is_some()).count()),
    );
    report.insert("last_line_max_residual".into(), json!(last_line_max));
    report.insert("relations".into(), relations);
    report.insert("relations_error".into(), relations_error);

    let mut files = Vec::new();
    write_file(config, "focal.csv", &focal_csv(&data), &mut files)?;
    write_json(config, "focal.json", &report, &mut files)?;
    Ok(RunOutcome { exit_code, files })
}

fn slant(config: &RunConfig, spec: &CurveSpec) -> Result<RunOutcome, CliError> {
    let c = unit_speed(spec)?;
    let grid = c.grid(config.grid_points);
    let tol = slant_tolerance(config, &c);
    let reports = match config.k {
        Some(k) => vec![is_k_slant(&c, k, &grid, tol)?],
        None => slant_reports(&c, &grid, tol)?,
    };
    let mut report = header(config, &c);
    report.insert("tolerance".into(), json!(tol));
    report.insert("reports".into(), json!(reports));
    let mut files = Vec::new();
    write_json(config, "slant.json", &report, &mut files)?;
    Ok(RunOutcome { exit_code: 0, files })
}

fn verify(config: &RunConfig, spec: &CurveSpec) -> Result<RunOutcome, CliError> {
    let k = config
        .k
        .ok_or_else(|| CliError::Config("verify needs the slant index k of the input curve".into()))?;
    let c = unit_speed(spec)?;
    let grid = c.grid(config.grid_points);
    let options = VerifyOptions {
        source_tolerance: slant_tolerance(config, &c),
        focal_tolerance: config.focal_tolerance.unwrap_or(SAMPLED_SLANT_TOLERANCE),
        axis_tolerance: config.axis_tolerance.unwrap_or(AXIS_ANGLE_TOLERANCE),
    };
    let theorem = verify_focal_slant(&c, k, &grid, &options)?;
    let mut report = header(config, &c);
    report.insert("options".into(), json!(options));
    report.insert("report".into(), json!(theorem));
    let mut files = Vec::new();
    write_json(config, "verify.json", &report, &mut files)?;
    Ok(RunOutcome {
        exit_code: if theorem.passed { 0 } else { 1 },
        files,
    })
}

fn synthesize(config: &RunConfig, spec: &CurveSpec) -> Result<RunOutcome, CliError> {
    if spec.curve_type != CurveType::Curvatures {
        return Err(CliError::Config(format!(
            "synthesize reads a curvatures spec, got {:?}",
            spec.curve_type
        )));
    }
    let c = spec.build()?;
    let params = c.grid(config.grid_points);
    let points = params.iter().map(|&s| c.position(s)).collect::<Result<Vec<_>, _>>()?;
    let mut files = Vec::new();
    write_json(config, "synthesized.json", &CurveSpec::from_samples(&params, &points), &mut files)?;
    Ok(RunOutcome { exit_code: 0, files })
}

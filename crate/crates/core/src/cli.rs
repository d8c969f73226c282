//! Batch front end behind the `jacobi` binary.
//!
//! Exit codes: 0 when every check is within tolerance, 1 on a tolerance
//! failure (the report is still written), 2 on an invalid configuration.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::ds::{build_ds_generators, ds_casimir, DSWeight};
use crate::error::{Error, Result};
use crate::generators::LadderSet;
use crate::observables::{
    covariance_closed, is_squeezed, mandel_q_closed, mandel_q_with, mandel_zero_radius,
    squeeze_ratio, squeezing_disk,
};
use crate::operator::{BasisLabel, C64};
use crate::squeeze::{
    displacement, displacement_me_closed, squeeze, squeeze_me_closed, squeeze_w_sector,
    transformed_generators, SqueezeParams,
};
use crate::sw::{build_sw_generators, SWIndex};
use crate::verify::{parse_suites, run_suites, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Largest discrete-series level the `casimir` command builds.
pub const CASIMIR_LEVEL_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rep {
    Sw,
    Ds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixOp {
    Displacement,
    Squeeze,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run the self-check suites
    Verify,
    /// Mandel's Q over a polar grid of w (or a single point)
    MandelGrid,
    /// Center, radius and boundary samples of the squeezing disk
    SqueezeDisk,
    /// One matrix element, closed form against the truncated matrix
    MatrixElement,
    /// Quadrature covariances of T(alpha, w) phi_n
    Covariance,
    /// Casimir operator of the discrete series
    Casimir,
}

#[derive(Debug, Parser)]
#[command(
    name = "jacobi",
    version,
    about = "Jacobi group representations on truncated bases"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, default_value_t = 64)]
    pub cutoff: usize,
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 3.0)]
    pub k: f64,
    #[arg(long, global = true, default_value_t = 1.0 / (2.0 * PI), allow_negative_numbers = true)]
    pub m: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub n: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub nprime: usize,
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub alpha_re: f64,
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub alpha_im: f64,
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub w_re: f64,
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub w_im: f64,
    /// Radial grid points (0 = single point)
    #[arg(long, global = true, default_value_t = 0)]
    pub grid_r: usize,
    /// Angular grid points (0 = single point)
    #[arg(long, global = true, default_value_t = 0)]
    pub grid_theta: usize,
    /// Outer radius of the w grid and of random w samples
    #[arg(long, global = true, default_value_t = 0.6)]
    pub w_max: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "all")]
    pub suite: String,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Rep::Sw)]
    pub rep: Rep,
    #[arg(long, global = true, value_enum, default_value_t = MatrixOp::Squeeze)]
    pub op: MatrixOp,
}

/// Validated run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub cutoff: usize,
    pub tol: f64,
    pub k: f64,
    pub idx: SWIndex,
    pub n: usize,
    pub n_prime: usize,
    pub alpha: C64,
    pub w: C64,
    pub grid_r: usize,
    pub grid_theta: usize,
    pub w_max: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub suite: String,
    pub seed: u64,
    pub rep: Rep,
    pub op: MatrixOp,
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if args.cutoff < 4 {
            return bad(format!("--cutoff must be at least 4, got {}", args.cutoff));
        }
        if !(args.tol > 0.0 && args.tol <= 1e-2) {
            return bad(format!("--tol must lie in (0, 1e-2], got {}", args.tol));
        }
        let Ok(idx) = SWIndex::new(args.m) else {
            return bad(format!("--m must be nonzero, got {}", args.m));
        };
        let w = C64::new(args.w_re, args.w_im);
        if !(w.norm() < 1.0) {
            return bad(format!("|w| = {} must be below 1", w.norm()));
        }
        if !(args.w_max > 0.0 && args.w_max < 1.0) {
            return bad(format!("--w-max must lie in (0, 1), got {}", args.w_max));
        }
        if !(args.k > 0.5) || !args.k.is_finite() {
            return bad(format!("--k must exceed 1/2, got {}", args.k));
        }
        parse_suites(&args.suite)?;
        Ok(RunConfig {
            command: args.command,
            cutoff: args.cutoff,
            tol: args.tol,
            k: args.k,
            idx,
            n: args.n,
            n_prime: args.nprime,
            alpha: C64::new(args.alpha_re, args.alpha_im),
            w,
            grid_r: args.grid_r,
            grid_theta: args.grid_theta,
            w_max: args.w_max,
            format: args.format,
            out: args.out,
            suite: args.suite,
            seed: args.seed,
            rep: args.rep,
            op: args.op,
        })
    }
}

/// A command's result: the rendered report and whether it passed.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

/// Parses, runs and writes; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let config = match RunConfig::from_args(args) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let output = match execute(&config) {
        Ok(output) => output,
        Err(e @ Error::InvalidConfig(_))
        | Err(e @ Error::InvalidWeight(_))
        | Err(e @ Error::OutsideUnitDisk(_)) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_TOLERANCE;
        }
    };
    if let Err(e) = write_output(&config, &output.text) {
        eprintln!("error: cannot write output: {e}");
        return EXIT_TOLERANCE;
    }
    if output.passed {
        EXIT_OK
    } else {
        EXIT_TOLERANCE
    }
}

fn write_output(config: &RunConfig, text: &str) -> io::Result<()> {
    match &config.out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

pub fn execute(config: &RunConfig) -> Result<Output> {
    match config.command {
        Command::Verify => cmd_verify(config),
        Command::MandelGrid => cmd_mandel_grid(config),
        Command::SqueezeDisk => cmd_squeeze_disk(config),
        Command::MatrixElement => cmd_matrix_element(config),
        Command::Covariance => cmd_covariance(config),
        Command::Casimir => cmd_casimir(config),
    }
}

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Null => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Null, Cell::Float)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::csv))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
    }

    fn object(&self, row: &[Cell]) -> Value {
        let map: Map<String, Value> = self
            .headers
            .iter()
            .zip(row)
            .map(|(h, c)| (h.to_string(), c.json()))
            .collect();
        Value::Object(map)
    }

    pub fn to_json_rows(&self) -> Value {
        Value::Array(self.rows.iter().map(|r| self.object(r)).collect())
    }

    /// The first row as an object (for single-record outputs).
    pub fn to_json_record(&self) -> Value {
        self.rows.first().map_or(Value::Null, |r| self.object(r))
    }
}

fn render(format: Format, table: &Table, json: Value) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn verify_config(config: &RunConfig) -> VerifyConfig {
    VerifyConfig {
        cutoff: config.cutoff,
        tol: config.tol,
        k: config.k,
        idx: config.idx,
        seed: config.seed,
        w_max: config.w_max,
    }
}

pub fn cmd_verify(config: &RunConfig) -> Result<Output> {
    let suites = parse_suites(&config.suite)?;
    let reports = run_suites(&suites, &verify_config(config))?;
    let mut table = Table::new(&["suite", "max_deviation", "tolerance", "passed", "detail"]);
    for r in &reports {
        table.push(vec![
            Cell::Text(r.suite.to_string()),
            r.max_deviation.into(),
            r.tolerance.into(),
            r.passed.into(),
            Cell::Text(r.detail.clone()),
        ]);
    }
    let passed = reports.iter().all(|r| r.passed);
    let json = json!({
        "cutoff": config.cutoff,
        "tol": config.tol,
        "seed": config.seed,
        "passed": passed,
        "suites": table.to_json_rows(),
    });
    Ok(Output {
        text: render(config.format, &table, json),
        passed,
    })
}

/// `w` values of the polar grid, or the configured `w` alone.
pub fn w_grid(config: &RunConfig) -> Vec<C64> {
    if config.grid_r == 0 || config.grid_theta == 0 {
        return vec![config.w];
    }
    let mut out = Vec::with_capacity(config.grid_r * config.grid_theta);
    for i in 0..config.grid_r {
        let rho = config.w_max * (i + 1) as f64 / config.grid_r as f64;
        for j in 0..config.grid_theta {
            out.push(C64::from_polar(
                rho,
                2.0 * PI * j as f64 / config.grid_theta as f64,
            ));
        }
    }
    out
}

pub fn cmd_mandel_grid(config: &RunConfig) -> Result<Output> {
    let g = build_sw_generators(config.cutoff, config.idx)?;
    let label = BasisLabel::Number(config.n);
    let zero_radius = mandel_zero_radius(config.n).ok();
    let alpha = config.alpha;
    let rows: Vec<(C64, Option<f64>, Option<f64>, String)> = w_grid(config)
        .into_par_iter()
        .map(|w| -> Result<_> {
            let params = SqueezeParams::new(alpha, w)?;
            let closed = mandel_q_closed(alpha, w, config.n);
            let numeric = mandel_q_with(&transformed_generators(&params, &g), &g, label);
            let reason = match (&closed, &numeric) {
                (Err(Error::VacuumMandel), _) | (_, Err(Error::VacuumMandel)) => {
                    "vacuum: <N> = 0, Q undefined".to_string()
                }
                (Err(e), _) | (_, Err(e)) => return Err(e.clone()),
                _ => String::new(),
            };
            Ok((w, closed.ok(), numeric.ok(), reason))
        })
        .collect::<Result<_>>()?;

    let mut table = Table::new(&[
        "w_re",
        "w_im",
        "alpha_re",
        "alpha_im",
        "n",
        "q_closed",
        "q_numeric",
        "abs_diff",
        "zero_radius",
        "reason",
    ]);
    let mut passed = true;
    for (w, closed, numeric, reason) in rows {
        let diff = match (closed, numeric) {
            (Some(a), Some(b)) => Some((a - b).abs()),
            _ => None,
        };
        if diff.is_some_and(|d| !(d <= config.tol.max(1e-6))) {
            passed = false;
        }
        table.push(vec![
            w.re.into(),
            w.im.into(),
            alpha.re.into(),
            alpha.im.into(),
            config.n.into(),
            closed.into(),
            numeric.into(),
            diff.into(),
            zero_radius.into(),
            if reason.is_empty() {
                Cell::Null
            } else {
                Cell::Text(reason)
            },
        ]);
    }
    let json = table.to_json_rows();
    Ok(Output {
        text: render(config.format, &table, json),
        passed,
    })
}

/// Number of boundary points reported by `squeeze-disk`.
pub const DISK_SAMPLES: usize = 64;

pub fn cmd_squeeze_disk(config: &RunConfig) -> Result<Output> {
    let disk = squeezing_disk(config.n);
    let mut table = Table::new(&[
        "n",
        "center_re",
        "center_im",
        "radius",
        "boundary_re",
        "boundary_im",
        "squeeze_ratio",
    ]);
    let mut samples = Vec::new();
    let mut passed = true;
    for w in disk.boundary(DISK_SAMPLES) {
        // the point of the circle touching |w| = 1 lies outside the domain
        let ratio = if w.norm() < 1.0 - 1e-9 {
            Some(squeeze_ratio(config.n, w)?)
        } else {
            None
        };
        if ratio.is_some_and(|r| !((r - 1.0).abs() <= 1e-10)) {
            passed = false;
        }
        table.push(vec![
            config.n.into(),
            disk.center.re.into(),
            disk.center.im.into(),
            disk.radius.into(),
            w.re.into(),
            w.im.into(),
            ratio.into(),
        ]);
        samples.push(json!({
            "w_re": w.re,
            "w_im": w.im,
            "squeeze_ratio": ratio,
        }));
    }
    let json = json!({
        "n": config.n,
        "center_re": disk.center.re,
        "center_im": disk.center.im,
        "radius": disk.radius,
        "boundary": samples,
    });
    Ok(Output {
        text: render(config.format, &table, json),
        passed,
    })
}

/// Closed and numeric values of one matrix element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementReport {
    pub closed: Option<C64>,
    pub numeric: C64,
    /// Same element of the full squeeze `S(w)` when `numeric` is taken from
    /// the `W`-sector squeeze.
    pub full: Option<C64>,
}

impl ElementReport {
    pub fn ratio(&self) -> Option<C64> {
        self.closed.map(|c| c / self.numeric)
    }

    pub fn abs_diff(&self) -> Option<f64> {
        self.closed.map(|c| (c - self.numeric).norm())
    }
}

pub fn matrix_element(config: &RunConfig) -> Result<ElementReport> {
    let (row, col) = (config.n_prime, config.n);
    match (config.rep, config.op) {
        (Rep::Sw, MatrixOp::Displacement) => {
            let g = build_sw_generators(config.cutoff, config.idx)?;
            let d = displacement(config.alpha, &g)?;
            let label = |i| BasisLabel::Number(i);
            g.basis().require(label(row))?;
            g.basis().require(label(col))?;
            Ok(ElementReport {
                closed: Some(displacement_me_closed(row, col, config.alpha)),
                numeric: d.element(label(row), label(col)),
                full: None,
            })
        }
        (Rep::Sw, MatrixOp::Squeeze) => {
            let g = build_sw_generators(config.cutoff, config.idx)?;
            let s = squeeze(config.w, &g)?;
            let label = |i| BasisLabel::Number(i);
            g.basis().require(label(row))?;
            g.basis().require(label(col))?;
            Ok(ElementReport {
                closed: None,
                numeric: s.element(label(row), label(col)),
                full: None,
            })
        }
        (Rep::Ds, MatrixOp::Squeeze) => {
            let weight = DSWeight::new(config.k)?;
            let level = row.max(col).max(2);
            let g = build_ds_generators(weight, level)?;
            let label = |n| BasisLabel::Pair { n_prime: 0, n };
            let closed = if row >= col {
                squeeze_me_closed(weight, col, row, config.w)?
            } else {
                // ⟨n'|S(w)|n⟩ = conj⟨n|S(−w)|n'⟩
                squeeze_me_closed(weight, row, col, -config.w)?.conj()
            };
            Ok(ElementReport {
                closed: Some(closed),
                numeric: squeeze_w_sector(config.w, &g)?.element(label(row), label(col)),
                full: Some(squeeze(config.w, &g)?.element(label(row), label(col))),
            })
        }
        (Rep::Ds, MatrixOp::Displacement) => Err(Error::InvalidConfig(
            "displacement elements are available for --rep sw".into(),
        )),
    }
}

pub fn cmd_matrix_element(config: &RunConfig) -> Result<Output> {
    let report = matrix_element(config)?;
    let split = |z: Option<C64>| (z.map(|z| z.re), z.map(|z| z.im));
    let (closed_re, closed_im) = split(report.closed);
    let (ratio_re, ratio_im) = split(report.ratio());
    let (full_re, full_im) = split(report.full);
    let mut table = Table::new(&[
        "closed_re",
        "closed_im",
        "numeric_re",
        "numeric_im",
        "ratio_re",
        "ratio_im",
        "abs_diff",
        "full_re",
        "full_im",
    ]);
    table.push(vec![
        closed_re.into(),
        closed_im.into(),
        report.numeric.re.into(),
        report.numeric.im.into(),
        ratio_re.into(),
        ratio_im.into(),
        report.abs_diff().into(),
        full_re.into(),
        full_im.into(),
    ]);
    let passed = report.abs_diff().is_none_or(|d| d <= config.tol);
    let json = table.to_json_record();
    Ok(Output {
        text: render(config.format, &table, json),
        passed,
    })
}

pub fn cmd_covariance(config: &RunConfig) -> Result<Output> {
    let t = covariance_closed(config.n, config.w, config.idx.hbar)?;
    let squeezed = is_squeezed(config.n, config.w)?;
    let mut table = Table::new(&[
        "sigma_qq",
        "sigma_pp",
        "sigma_pq",
        "hbar",
        "product_check",
        "squeezed",
    ]);
    table.push(vec![
        t.sigma_qq.into(),
        t.sigma_pp.into(),
        t.sigma_pq.into(),
        t.hbar.into(),
        t.product_check().into(),
        squeezed.into(),
    ]);
    let scale = (t.sigma_qq * t.sigma_pp).max(1.0);
    let passed = t.product_check().abs() <= 1e-12 * scale;
    let json = table.to_json_record();
    Ok(Output {
        text: render(config.format, &table, json),
        passed,
    })
}

pub fn cmd_casimir(config: &RunConfig) -> Result<Output> {
    let weight = DSWeight::new(config.k)?;
    let level = config.cutoff.min(CASIMIR_LEVEL_CAP);
    let report = ds_casimir(weight, level)?;
    let mut table = Table::new(&["k", "level", "expected", "deviation"]);
    table.push(vec![
        config.k.into(),
        level.into(),
        report.expected.into(),
        report.deviation.into(),
    ]);
    let passed = report.deviation <= config.tol;
    let json = table.to_json_record();
    Ok(Output {
        text: render(config.format, &table, json),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(extra: &[&str]) -> RunConfig {
        let mut argv = vec!["jacobi"];
        argv.extend_from_slice(extra);
        RunConfig::from_args(Args::try_parse_from(argv).unwrap()).unwrap()
    }

    #[test]
    fn defaults() {
        let c = config(&["verify"]);
        assert_eq!(c.cutoff, 64);
        assert_eq!(c.tol, 1e-8);
        assert_eq!(c.k, 3.0);
        assert!((c.idx.mu - 1.0).abs() < 1e-15);
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn validation() {
        let parse = |extra: &[&str]| {
            let mut argv = vec!["jacobi", "covariance"];
            argv.extend_from_slice(extra);
            RunConfig::from_args(Args::try_parse_from(argv).unwrap())
        };
        assert!(parse(&["--cutoff", "3"]).is_err());
        assert!(parse(&["--tol", "0.5"]).is_err());
        assert!(parse(&["--w-re", "1.0"]).is_err());
        assert!(parse(&["--m", "0"]).is_err());
        assert!(parse(&["--suite", "bogus"]).is_err());
        assert!(parse(&["--m", "-0.2"]).is_ok());
    }

    #[test]
    fn csv_uses_seventeen_digits() {
        let mut t = Table::new(&["x", "y"]);
        t.push(vec![Cell::Float(0.1), Cell::Null]);
        assert_eq!(t.to_csv(), "x,y\n1.0000000000000001e-1,\n");
    }

    #[test]
    fn grid_is_ordered() {
        let c = config(&["mandel-grid", "--grid-r", "2", "--grid-theta", "3"]);
        let ws = w_grid(&c);
        assert_eq!(ws.len(), 6);
        assert!((ws[0] - C64::new(0.3, 0.0)).norm() < 1e-15);
        assert!((ws[5].norm() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn ds_element_trivial_case() {
        let c = config(&["matrix-element", "--rep", "ds", "--k", "3", "--w-re", "0.4"]);
        let r = matrix_element(&c).unwrap();
        let h = 1.25;
        assert!((r.closed.unwrap().re - 0.84f64.powf(h)).abs() < 1e-15);
        assert!(r.abs_diff().unwrap() < 1e-14);
    }
}

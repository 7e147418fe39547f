//! Command-line front end: `constants`, `bounds`, `sweep` and `verify`.
//!
//! Every command builds its complete output in memory before anything is
//! written, so a failing run leaves no partial files behind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bounds::{bound_for, HermiteMode, Target};
use crate::error::{Error, Result};
use crate::estimators::{exp_abs_sq_from_paths, fit_decay_rate, sample_paths, sweep_from_paths, DecayFit, SweepRow};
use crate::experiment::{ExperimentSpec, OutputKind};
use crate::kernels::{Kernel, KernelSpec};
use crate::measures::MeasureSpec;
use crate::verify::{self, Tamper, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

impl Error {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Config(_) | Error::Argument(_) => EXIT_PARSE,
            Error::Refused(_) => EXIT_REFUSED,
            Error::Numeric { .. } => EXIT_NUMERIC,
        }
    }
}

/// Renders a float as its shortest round-trip representation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Real(f64),
    Int(u64),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Real(v) => fmt_f64(*v),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Real(v) if v.is_finite() => json!(v),
            Cell::Real(v) => Value::String(fmt_f64(*v)),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// A table with `#` metadata lines before and after the data.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub footer: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells"));
        for (k, v) in &self.footer {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let pairs = |items: &[(String, String)]| {
            Value::Object(items.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect())
        };
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(m)
            })
            .collect();
        json!({ "meta": pairs(&self.meta), "rows": rows, "summary": pairs(&self.footer) })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Named output files, in write order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Output {
    pub files: Vec<(String, String)>,
}

impl Output {
    fn add(&mut self, name: String, content: String) {
        self.files.push((name, content));
    }

    /// Writes every file into `dir`, or concatenates them to stdout.
    pub fn emit(&self, dir: Option<&Path>) -> Result<()> {
        match dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))?;
                for (name, content) in &self.files {
                    let path = dir.join(name);
                    std::fs::write(&path, content)
                        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
                }
            }
            None => {
                for (_, content) in &self.files {
                    print!("{content}");
                }
            }
        }
        Ok(())
    }
}

fn version_line() -> String {
    format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"))
}

fn describe_target(t: &Target) -> String {
    match t {
        Target::Kernel(k) => serde_json::to_string(k).expect("kernel specs serialize"),
        Target::Holder(h) => serde_json::to_string(h).expect("holder classes serialize"),
    }
}

fn experiment_meta(table: &mut Table, exp: &ExperimentSpec) {
    table.meta("version", version_line());
    table.meta("experiment", &exp.name);
    table.meta("measure", serde_json::to_string(&exp.measure).expect("measures serialize"));
    table.meta("sequence", exp.sequence.describe());
    if let Some(t) = &exp.target {
        table.meta("target", describe_target(t));
        if let Target::Kernel(spec) = t {
            if let Ok(k) = Kernel::new(spec.clone()) {
                if let Some(cap) = k.series_cap() {
                    table.meta("series_cap", cap);
                    table.meta("series_discarded_mass", fmt_f64(k.discarded_mass()));
                }
            }
        }
    }
}

/// Moments, `C(M, ω)` constants, mean and variance of one measure.
pub fn cmd_constants(measure: &MeasureSpec, m_max: u32, r_max: u32) -> Result<Table> {
    measure.validate()?;
    let name = measure.name();
    let mut t = Table::new(&["measure", "quantity", "order", "value", "lo", "hi", "kind"]);
    t.meta("version", version_line());
    t.meta("measure", serde_json::to_string(measure).expect("measures serialize"));
    let quad = matches!(measure, MeasureSpec::Logistic { .. });
    for r in 1..=r_max {
        let v = measure.moment_abs(r)?;
        let kind = if quad { "Quadrature" } else { "Exact" };
        t.push(vec![name.clone().into(), "moment_abs".into(), r.into(), v.into(), Cell::Empty, Cell::Empty, kind.into()]);
    }
    for m in 1..=m_max {
        let v = measure.c_constant(m)?;
        let closed = measure.c_constant_closed(m)?;
        let (lo, hi) = match closed {
            crate::measures::BoundValue::Exact { value } => (Cell::Real(value), Cell::Real(value)),
            crate::measures::BoundValue::Interval { lo, hi } => (Cell::Real(lo), Cell::Real(hi)),
            crate::measures::BoundValue::UpperBound { value } => (Cell::Empty, Cell::Real(value)),
        };
        t.push(vec![name.clone().into(), "C".into(), m.into(), v.into(), lo, hi, closed.kind_name().into()]);
    }
    t.push(vec![name.clone().into(), "mean".into(), Cell::Empty, measure.mean().into(), Cell::Empty, Cell::Empty, "Exact".into()]);
    t.push(vec![name.into(), "variance".into(), Cell::Empty, measure.variance().into(), Cell::Empty, Cell::Empty, "Exact".into()]);
    Ok(t)
}

fn needs_exp_moment(exp: &ExperimentSpec, target: &Target) -> bool {
    matches!(target, Target::Kernel(KernelSpec::Hermite { .. })) && exp.bounds.hermite_mode == HermiteMode::SplitExp
}

/// Bound reports over the experiment's `k_grid`.
pub fn cmd_bounds(exp: &ExperimentSpec, workers: usize) -> Result<Table> {
    let target = exp.require_target()?;
    let grid = exp.require_grid()?;
    let exp_moment = if needs_exp_moment(exp, target) {
        let paths = sample_paths(&exp.measure, &exp.sequence, &exp.mc_config(workers)?)?;
        Some(exp_abs_sq_from_paths(&paths, &exp.sequence)?)
    } else {
        None
    };
    let mut t = Table::new(&["k", "formula_id", "value", "assumptions"]);
    experiment_meta(&mut t, exp);
    if let Some(e) = &exp_moment {
        t.meta("seed", exp.seed);
        t.meta("samples", exp.samples);
        t.meta("ref_level", exp.ref_level);
        t.meta("exp_moment", format!("{} +- {}", fmt_f64(e.value), fmt_f64(e.std_error)));
    }
    for &k in grid {
        let b = bound_for(target, &exp.measure, &exp.sequence, k, &exp.bounds, exp_moment.as_ref())?;
        t.push(vec![k.into(), b.formula_id.as_str().into(), b.value.into(), b.assumptions.join("; ").into()]);
    }
    Ok(t)
}

/// Result of a sweep: the rows, the optional fit and their table form.
#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub fit: Option<DecayFit>,
    pub table: Table,
}

/// Monte Carlo estimates next to bounds over the experiment's `k_grid`.
pub fn cmd_sweep(exp: &ExperimentSpec, workers: usize) -> Result<SweepOutput> {
    let target = exp.require_target()?;
    exp.require_grid()?;
    let config = exp.mc_config(workers)?;
    if let Target::Kernel(spec) = target {
        let k = Kernel::new(spec.clone())?;
        if k.domain() == crate::kernels::Domain::NonNegative
            && !(exp.measure.nonnegative_support() && exp.sequence.is_nonnegative())
        {
            return Err(Error::arg(format!(
                "{} needs nonnegative path sums, {} can go negative",
                spec.name(),
                exp.measure.name()
            )));
        }
    }
    let paths = sample_paths(&exp.measure, &exp.sequence, &config)?;
    let rows = sweep_from_paths(target, &paths, &exp.measure, &exp.sequence, &exp.bounds)?;
    let positive = rows.iter().filter(|r| r.estimate.value > 0.0).count();
    let fit = if positive >= 3 { Some(fit_decay_rate(&rows)?) } else { None };

    let mut t = Table::new(&[
        "k", "estimate", "std_error", "bias_bound", "bound", "formula_id", "ratio", "clamped_flag",
    ]);
    experiment_meta(&mut t, exp);
    t.meta("seed", exp.seed);
    t.meta("samples", exp.samples);
    t.meta("ref_level", exp.ref_level);
    let certified = rows.iter().all(|r| r.estimate.bias_certified);
    t.meta("bias", if certified { "certified" } else { "uncertified" });
    for r in &rows {
        t.push(vec![
            r.k.into(),
            r.estimate.value.into(),
            r.estimate.std_error.into(),
            r.estimate.bias_bound.into(),
            r.bound.value.into(),
            r.bound.formula_id.as_str().into(),
            r.ratio.into(),
            r.estimate.clamped.into(),
        ]);
    }
    if let Some(f) = &fit {
        t.footer.push(("fit_slope".into(), fmt_f64(f.slope)));
        t.footer.push(("fit_intercept".into(), fmt_f64(f.intercept)));
        t.footer.push(("fit_residual".into(), fmt_f64(f.residual)));
        t.footer.push(("fit_points".into(), f.points.to_string()));
    }
    Ok(SweepOutput { rows, fit, table: t })
}

/// `(x, y, yerr)` triples for one series.
pub fn plot_series(series: &str, points: &[(f64, f64, f64)]) -> String {
    let mut t = Table::new(&["x", "y", "yerr"]);
    t.meta("series", series);
    for &(x, y, e) in points {
        t.push(vec![x.into(), y.into(), e.into()]);
    }
    t.to_csv()
}

/// Files produced by a sweep under the experiment's `outputs` list.
pub fn sweep_files(exp: &ExperimentSpec, out: &SweepOutput, format: Format) -> Output {
    let mut o = Output::default();
    if exp.wants(OutputKind::Table) {
        o.add(format!("{}.sweep.{}", exp.name, format.ext()), out.table.render(format));
    }
    if exp.wants(OutputKind::Json) && !(exp.wants(OutputKind::Table) && format == Format::Json) {
        o.add(format!("{}.sweep.json", exp.name), out.table.to_json());
    }
    if exp.wants(OutputKind::Plotdata) {
        let est: Vec<_> = out.rows.iter().map(|r| (r.k as f64, r.estimate.value, r.estimate.std_error)).collect();
        let bnd: Vec<_> = out.rows.iter().map(|r| (r.k as f64, r.bound.value, 0.0)).collect();
        o.add(format!("{}.estimate.plot.csv", exp.name), plot_series("estimate", &est));
        o.add(format!("{}.bound.plot.csv", exp.name), plot_series("bound", &bnd));
    }
    o
}

fn table_files(exp: &ExperimentSpec, stem: &str, table: &Table, format: Format) -> Output {
    let mut o = Output::default();
    o.add(format!("{}.{stem}.{}", exp.name, format.ext()), table.render(format));
    if exp.wants(OutputKind::Json) && format != Format::Json {
        o.add(format!("{}.{stem}.json", exp.name), table.to_json());
    }
    o
}

#[derive(Debug, Parser)]
#[command(name = "dimtrunc", version, about = "Dimension-truncation error bounds and Monte Carlo checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Experiment file (TOML).
    #[arg(long, global = true)]
    pub experiment: Option<PathBuf>,
    /// Directory for output files; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Overrides the experiment's seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for sampling; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments and C(M) constants of the experiment's measure.
    Constants,
    /// Closed-form bounds over k_grid.
    Bounds,
    /// Monte Carlo estimates against bounds over k_grid.
    Sweep,
    /// Runs the acceptance battery.
    Verify {
        /// Comma-separated check numbers to run.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
        /// Negative control: scales the reference side of one check, as ID:FACTOR.
        #[arg(long, hide = true)]
        tamper: Option<String>,
    },
}

fn load(cli: &Cli) -> Result<ExperimentSpec> {
    let path = cli
        .experiment
        .as_deref()
        .ok_or_else(|| Error::Parse("--experiment <path> is required".into()))?;
    let mut exp = ExperimentSpec::load(path)?;
    if let Some(seed) = cli.seed {
        exp.seed = seed;
    }
    Ok(exp)
}

fn parse_tamper(s: &str) -> Result<Tamper> {
    let bad = || Error::Parse(format!("--tamper expects ID:FACTOR, got {s:?}"));
    let (id, f) = s.split_once(':').ok_or_else(bad)?;
    Ok(Tamper {
        check: id.trim().parse().map_err(|_| bad())?,
        factor: f.trim().parse().map_err(|_| bad())?,
    })
}

fn execute(cli: &Cli) -> Result<i32> {
    if cli.workers == 0 {
        return Err(Error::Parse("--workers must be at least 1".into()));
    }
    match &cli.command {
        Command::Constants => {
            let exp = load(cli)?;
            let t = cmd_constants(&exp.measure, exp.constants.m_max, exp.constants.r_max)?;
            table_files(&exp, "constants", &t, cli.format).emit(cli.out.as_deref())?;
        }
        Command::Bounds => {
            let exp = load(cli)?;
            let t = cmd_bounds(&exp, cli.workers)?;
            table_files(&exp, "bounds", &t, cli.format).emit(cli.out.as_deref())?;
        }
        Command::Sweep => {
            let exp = load(cli)?;
            let out = cmd_sweep(&exp, cli.workers)?;
            sweep_files(&exp, &out, cli.format).emit(cli.out.as_deref())?;
        }
        Command::Verify { only, tamper } => {
            let opts = VerifyOptions {
                only: if only.is_empty() { None } else { Some(only.clone()) },
                tamper: tamper.as_deref().map(parse_tamper).transpose()?,
                workers: cli.workers,
                seed: cli.seed.unwrap_or(verify::DEFAULT_SEED),
            };
            let results = verify::run_battery(&opts, |r| println!("{}", r.line()));
            let passed = results.iter().filter(|r| r.passed).count();
            println!("{passed}/{} checks passed", results.len());
            if let Some(dir) = &cli.out {
                let t = verify::report_table(&results);
                let mut o = Output::default();
                o.add(format!("verify.{}", cli.format.ext()), t.render(cli.format));
                o.emit(Some(dir))?;
            }
            return Ok(if passed == results.len() { EXIT_OK } else { EXIT_VERIFY });
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0, 5e-324, 1.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
        assert_eq!(fmt_f64(0.2), "0.2");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
    }

    #[test]
    fn constants_table_rows() {
        let t = cmd_constants(&MeasureSpec::Uniform01, 4, 2).unwrap();
        let c4 = t.rows.iter().find(|r| r[1] == "C".into() && r[2] == Cell::Int(4)).unwrap();
        assert_eq!(c4[3], Cell::Real(0.2));
        assert_eq!(c4[6], "Exact".into());
        let t = cmd_constants(&MeasureSpec::logistic(1.0).unwrap(), 3, 1).unwrap();
        let c3 = t.rows.iter().find(|r| r[1] == "C".into() && r[2] == Cell::Int(3)).unwrap();
        assert_eq!((&c3[4], &c3[5], &c3[6]), (&Cell::Real(3.0), &Cell::Real(12.0), &"Interval".into()));
        let t = cmd_constants(&MeasureSpec::gaussian(1.0).unwrap(), 4, 1).unwrap();
        let c4 = t.rows.iter().find(|r| r[1] == "C".into() && r[2] == Cell::Int(4)).unwrap();
        assert_eq!((&c4[3], &c4[6]), (&Cell::Real(3.0), &"UpperBound".into()));
        assert_eq!(t.columns, vec!["measure", "quantity", "order", "value", "lo", "hi", "kind"]);
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["k", "note"]);
        t.meta("seed", 3);
        t.push(vec![1usize.into(), "a, b".into()]);
        t.footer.push(("fit_slope".into(), "-1".into()));
        assert_eq!(t.to_csv(), "# seed: 3\nk,note\n1,\"a, b\"\n# fit_slope: -1\n");
        let j = t.to_json_value();
        assert_eq!(j["rows"][0]["k"], json!(1));
        assert_eq!(j["meta"]["seed"], json!("3"));
    }

    fn exp(text: &str) -> ExperimentSpec {
        ExperimentSpec::parse(text).unwrap()
    }

    const BASE: &str = "measure = { kind = \"Uniform01\" }\nsequence = { kind = \"FiniteList\", values = [0.5, 0.25] }\n";

    #[test]
    fn bounds_for_exhausted_list_are_zero() {
        let e = exp(&format!("{BASE}target = {{ kind = \"RFoldedWiener\", r = 2 }}\nk_grid = [2, 3]\n"));
        let t = cmd_bounds(&e, 1).unwrap();
        assert!(t.rows.iter().all(|r| r[2] == Cell::Real(0.0)));
        assert!(t.rows.iter().all(|r| r[1] == "RFOLD_B".into()));
    }

    #[test]
    fn refused_bounded_mode_maps_to_exit_three() {
        let e = exp("measure = { kind = \"Exponential\", scale = 1.0 }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }\ntarget = { kind = \"RFoldedWiener\", r = 2 }\nk_grid = [1]\n");
        let err = cmd_bounds(&e, 1).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_REFUSED);
        assert!(err.to_string().contains("sup"));
    }

    #[test]
    fn sweep_table_and_fit() {
        let e = exp("measure = { kind = \"UniformSym\" }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }\ntarget = { kind = \"FractionalWiener\", beta = 0.5 }\nk_grid = [1, 2, 4, 8]\noutputs = [\"table\", \"json\", \"plotdata\"]\n[mc]\nsamples = 2000\nref_level = 2000\nseed = 5\n");
        let out = cmd_sweep(&e, 1).unwrap();
        assert_eq!(out.rows.len(), 4);
        assert!(out.fit.is_some());
        let csv = out.table.to_csv();
        assert!(csv.contains("k,estimate,std_error,bias_bound,bound,formula_id,ratio,clamped_flag\n"));
        assert!(csv.contains("# seed: 5\n") && csv.contains("# fit_slope: "));
        let files = sweep_files(&e, &out, Format::Csv);
        let names: Vec<&str> = files.files.iter().map(|f| f.0.as_str()).collect();
        assert_eq!(
            names,
            vec!["experiment.sweep.csv", "experiment.sweep.json", "experiment.estimate.plot.csv", "experiment.bound.plot.csv"]
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["dimtrunc", "frobnicate"]), EXIT_PARSE);
        assert_eq!(run(["dimtrunc", "bounds"]), EXIT_PARSE);
        assert_eq!(run(["dimtrunc", "bounds", "--experiment", "/nonexistent/x.toml"]), EXIT_PARSE);
        assert_eq!(Error::numeric("x").exit_code(), EXIT_NUMERIC);
        assert!(parse_tamper("6:0.5").is_ok());
        assert!(parse_tamper("six").is_err());
    }
}

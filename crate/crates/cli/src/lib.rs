//! Batch front end for the `macdonald` crate.
//!
//! Each command evaluates a grid of inputs, renders a JSON or CSV report and
//! maps the outcome of its checks onto an exit status: 0 when every check
//! passes, 1 on a check failure, 2 on a usage error.

use std::f64::consts::PI;

use clap::{Args, Parser, Subcommand, ValueEnum};
use macdonald::{
    besselk_imag, besselk_largex_approx, besselk_smallx_approx, diagonal_limit, kernel_asymptotic,
    kernel_boundary, kernel_quadrature, log_gamma, weak_limit_test, Abscissa, Complex64, Order,
    PairSpec, QuadratureSpec, TestFunction, TestFunctionKind,
};
use serde_json::{Map, Number, Value};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest x handled by the small-x branch of `asym-check`.
const SMALL_X_MAX: f64 = 0.5;
/// Smallest x handled by the large-x branch of `asym-check`.
const LARGE_X_MIN: f64 = 5.0;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid parameter: {0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] macdonald::Error),
}

impl RunError {
    fn status(&self) -> u8 {
        match self {
            RunError::Library(macdonald::Error::Convergence { .. }) => EXIT_CHECK_FAILURE,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "macdonald",
    version,
    about = "Macdonald functions of imaginary order: evaluation and orthogonality checks"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Override the tolerance of the command's check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate K_iν(x) on a grid.
    Eval(GridArgs),
    /// Compare |Γ(iν)| with its closed form.
    Gamma(NuArgs),
    /// Compare the boundary-term kernel with direct quadrature.
    IdentityCheck(PairArgs),
    /// Tabulate the truncated overlap kernel and its small-cutoff form
    /// (blank off its range: xi > 0.1 or equal orders).
    OrthoScan(PairArgs),
    /// Smear the truncated kernel against a test function and track convergence.
    DeltaTest(DeltaArgs),
    /// Check the small-x and large-x asymptotic forms.
    AsymCheck(GridArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Gamma(_) => "gamma",
            Command::IdentityCheck(_) => "identity-check",
            Command::OrthoScan(_) => "ortho-scan",
            Command::DeltaTest(_) => "delta-test",
            Command::AsymCheck(_) => "asym-check",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub nu: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct NuArgs {
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub nu: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub nu: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub nu2: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub xi: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct DeltaArgs {
    #[arg(long)]
    pub nu: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub xi: Vec<f64>,
    /// Test function as `gaussian:center,width` or `bump:center,width`.
    #[arg(long, value_parser = parse_phi)]
    pub phi: PhiArg,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiArg {
    pub kind: TestFunctionKind,
    pub center: f64,
    pub width: f64,
}

fn parse_phi(s: &str) -> Result<PhiArg, String> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| "expected KIND:CENTER,WIDTH".to_string())?;
    let kind = match kind {
        "gaussian" => TestFunctionKind::Gaussian,
        "bump" => TestFunctionKind::SmoothCompactBump,
        other => return Err(format!("unknown test function `{other}`")),
    };
    let (c, w) = rest
        .split_once(',')
        .ok_or_else(|| "expected KIND:CENTER,WIDTH".to_string())?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(PhiArg {
        kind,
        center: num(c)?,
        width: num(w)?,
    })
}

/// Exit status, report for standard output and diagnostics for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub report: String,
    pub diagnostics: String,
}

#[derive(Debug, Clone)]
enum Cell {
    Num(f64),
    Text(&'static str),
    Bool(bool),
    Null,
}

impl Cell {
    fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Null, Cell::Num)
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => Value::Number(number(*v)),
            Cell::Num(_) | Cell::Null => Value::Null,
            Cell::Text(s) => Value::from(*s),
            Cell::Bool(b) => Value::from(*b),
        }
    }

    fn to_field(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => sci(*v),
            Cell::Num(v) => v.to_string(),
            Cell::Text(s) => s.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }
}

/// 17 significant digits, enough to round-trip binary64.
fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn number(v: f64) -> Number {
    sci(v)
        .parse()
        .expect("formatted float is a valid JSON number")
}

struct Report {
    command: &'static str,
    parameters: Vec<(&'static str, Cell)>,
    list_parameters: Vec<(&'static str, Vec<f64>)>,
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
    pass: bool,
}

impl Report {
    fn render(&self, format: Format) -> Result<String, RunError> {
        match format {
            Format::Json => Ok(self.json()),
            Format::Csv => self.csv(),
        }
    }

    fn json(&self) -> String {
        let mut params = Map::new();
        for (k, v) in &self.list_parameters {
            params.insert(
                k.to_string(),
                Value::Array(v.iter().map(|x| Cell::Num(*x).to_json()).collect()),
            );
        }
        for (k, v) in &self.parameters {
            params.insert(k.to_string(), v.to_json());
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command));
        top.insert("parameters".into(), Value::Object(params));
        top.insert("rows".into(), Value::Array(rows));
        top.insert("pass".into(), Value::from(self.pass));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("report serializes");
        s.push('\n');
        s
    }

    fn csv(&self) -> Result<String, RunError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| RunError::Usage(format!("csv output: {e}"));
        w.write_record(self.columns).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::to_field)).map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| RunError::Usage(format!("csv output: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Execute one invocation.
pub fn run(config: &RunConfig) -> Outcome {
    match build(config).and_then(|r| Ok((r.render(config.format)?, r.pass))) {
        Ok((report, pass)) => Outcome {
            status: if pass { EXIT_PASS } else { EXIT_CHECK_FAILURE },
            report,
            diagnostics: if pass {
                String::new()
            } else {
                format!("{}: check failed\n", config.command.name())
            },
        },
        Err(e) => Outcome {
            status: e.status(),
            report: String::new(),
            diagnostics: format!("{}: {e}\n", config.command.name()),
        },
    }
}

/// Parse command-line words (without the program name) and run them.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let words = std::iter::once(std::ffi::OsString::from("macdonald"))
        .chain(args.into_iter().map(Into::into));
    match RunConfig::try_parse_from(words) {
        Ok(config) => run(&config),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    status: EXIT_USAGE,
                    report: String::new(),
                    diagnostics: rendered,
                }
            } else {
                Outcome {
                    status: EXIT_PASS,
                    report: rendered,
                    diagnostics: String::new(),
                }
            }
        }
    }
}

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(msg.into())
}

fn grid(name: &str, values: &[f64]) -> Result<Vec<f64>, RunError> {
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(usage(format!("--{name} contains non-finite value {v}")));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    Ok(v)
}

fn positive_grid(name: &str, values: &[f64]) -> Result<Vec<f64>, RunError> {
    let v = grid(name, values)?;
    if v.iter().any(|x| *x <= 0.0) {
        return Err(usage(format!("--{name} values must be positive")));
    }
    Ok(v)
}

fn tolerance(config: &RunConfig, default: f64) -> Result<f64, RunError> {
    match config.tol {
        None => Ok(default),
        Some(t) if t.is_finite() && t > 0.0 => Ok(t),
        Some(t) => Err(usage(format!("--tol must be positive, got {t}"))),
    }
}

fn no_tolerance(config: &RunConfig) -> Result<(), RunError> {
    match config.tol {
        None => Ok(()),
        Some(_) => Err(usage(format!(
            "{} performs no check; --tol is not accepted",
            config.command.name()
        ))),
    }
}

fn build(config: &RunConfig) -> Result<Report, RunError> {
    match &config.command {
        Command::Eval(a) => {
            no_tolerance(config)?;
            eval(a)
        }
        Command::Gamma(a) => gamma(a, tolerance(config, 1e-12)?),
        Command::IdentityCheck(a) => identity_check(a, tolerance(config, 1e-8)?),
        Command::OrthoScan(a) => {
            no_tolerance(config)?;
            ortho_scan(a)
        }
        Command::DeltaTest(a) => delta_test(a, tolerance(config, 0.05)?),
        Command::AsymCheck(a) => asym_check(a, tolerance(config, 2.0)?),
    }
}

fn eval(a: &GridArgs) -> Result<Report, RunError> {
    let nus = grid("nu", &a.nu)?;
    let xs = positive_grid("x", &a.x)?;
    let mut rows = Vec::new();
    for &nu in &nus {
        for &x in &xs {
            let v = besselk_imag(Order::new(nu)?, Abscissa::new(x)?)?;
            rows.push(vec![
                Cell::Num(nu),
                Cell::Num(x),
                Cell::Num(v.value),
                Cell::Num(v.abs_err),
                Cell::Text(v.method.as_str()),
            ]);
        }
    }
    Ok(Report {
        command: "eval",
        parameters: vec![],
        list_parameters: vec![("nu", nus), ("x", xs)],
        columns: &["nu", "x", "value", "abs_err", "method"],
        rows,
        pass: true,
    })
}

fn gamma(a: &NuArgs, tol: f64) -> Result<Report, RunError> {
    let nus = grid("nu", &a.nu)?;
    if nus.iter().any(|n| *n == 0.0 || n.abs() > 100.0) {
        return Err(usage("--nu values must satisfy 0 < |nu| <= 100"));
    }
    let mut rows = Vec::new();
    let mut pass = true;
    for &nu in &nus {
        let g = log_gamma(Complex64::new(0.0, nu))?;
        let modulus = g.log_modulus.exp();
        let closed = (PI / (nu.abs() * (PI * nu.abs()).sinh())).sqrt();
        let rel = (modulus - closed).abs() / closed;
        let ok = rel <= tol;
        pass &= ok;
        rows.push(vec![
            Cell::Num(nu),
            Cell::Num(g.log_modulus),
            Cell::Num(g.phase),
            Cell::Num(modulus),
            Cell::Num(closed),
            Cell::Num(rel),
            Cell::Bool(ok),
        ]);
    }
    Ok(Report {
        command: "gamma",
        parameters: vec![("tol", Cell::Num(tol))],
        list_parameters: vec![("nu", nus)],
        columns: &[
            "nu",
            "log_modulus",
            "phase",
            "modulus",
            "closed_form",
            "relative_difference",
            "pass",
        ],
        rows,
        pass,
    })
}

type Grids = (Vec<f64>, Vec<f64>, Vec<f64>);

fn pair_grids(a: &PairArgs) -> Result<Grids, RunError> {
    Ok((
        positive_grid("nu", &a.nu)?,
        positive_grid("nu2", &a.nu2)?,
        positive_grid("xi", &a.xi)?,
    ))
}

/// Boundary-term kernel, or its diagonal limit when the orders coincide.
fn boundary_or_diagonal(nu: f64, nu2: f64, xi: f64) -> Result<f64, RunError> {
    if (nu - nu2).abs() < macdonald::ortho::NEAR_DIAGONAL {
        if xi > 2.0 {
            return Err(usage("diagonal kernel needs xi <= 2"));
        }
        Ok(diagonal_limit(nu, xi)?)
    } else {
        Ok(kernel_boundary(PairSpec::new(nu, nu2, xi)?)?.value)
    }
}

fn identity_check(a: &PairArgs, tol: f64) -> Result<Report, RunError> {
    let (nus, nu2s, xis) = pair_grids(a)?;
    let spec = QuadratureSpec::default();
    let mut rows = Vec::new();
    let mut pass = true;
    for &nu in &nus {
        for &nu2 in &nu2s {
            for &xi in &xis {
                let b = boundary_or_diagonal(nu, nu2, xi)?;
                let q = kernel_quadrature(PairSpec::new(nu, nu2, xi)?, &spec)?;
                let diff = (b - q.value).abs();
                let ok = diff <= tol + tol * b.abs();
                pass &= ok;
                rows.push(vec![
                    Cell::Num(nu),
                    Cell::Num(nu2),
                    Cell::Num(xi),
                    Cell::Num(b),
                    Cell::Num(q.value),
                    Cell::Num(q.abs_err),
                    Cell::Num(diff),
                    Cell::Bool(ok),
                ]);
            }
        }
    }
    Ok(Report {
        command: "identity-check",
        parameters: vec![("tol", Cell::Num(tol))],
        list_parameters: vec![("nu", nus), ("nu2", nu2s), ("xi", xis)],
        columns: &[
            "nu",
            "nu2",
            "xi",
            "boundary",
            "quadrature",
            "quadrature_abs_err",
            "difference",
            "pass",
        ],
        rows,
        pass,
    })
}

fn ortho_scan(a: &PairArgs) -> Result<Report, RunError> {
    let (nus, nu2s, xis) = pair_grids(a)?;
    let mut rows = Vec::new();
    for &nu in &nus {
        for &nu2 in &nu2s {
            for &xi in &xis {
                let b = boundary_or_diagonal(nu, nu2, xi)?;
                let diagonal = (nu - nu2).abs() < macdonald::ortho::NEAR_DIAGONAL;
                let asym = if xi <= 0.1 && !diagonal {
                    Some(kernel_asymptotic(PairSpec::new(nu, nu2, xi)?)?.value)
                } else {
                    None
                };
                rows.push(vec![
                    Cell::Num(nu),
                    Cell::Num(nu2),
                    Cell::Num(xi),
                    Cell::Num(b),
                    Cell::opt(asym),
                    Cell::opt(asym.map(|s| (s - b).abs())),
                ]);
            }
        }
    }
    Ok(Report {
        command: "ortho-scan",
        parameters: vec![],
        list_parameters: vec![("nu", nus), ("nu2", nu2s), ("xi", xis)],
        columns: &["nu", "nu2", "xi", "kernel", "asymptotic", "difference"],
        rows,
        pass: true,
    })
}

fn delta_test(a: &DeltaArgs, tol: f64) -> Result<Report, RunError> {
    let mut xis = positive_grid("xi", &a.xi)?;
    // decreasing cutoff is the natural order of a convergence run
    xis.reverse();
    if !a.nu.is_finite() {
        return Err(usage("--nu must be finite"));
    }
    let phi = TestFunction::new(a.phi.kind, a.phi.center, a.phi.width)?;
    let r = weak_limit_test(a.nu, &xis, &phi, &QuadratureSpec::default())?;
    let converging = r.is_converging(0.1);
    let last_ok = r.rows.last().is_some_and(|row| row.relative_error <= tol);
    let rows = r
        .rows
        .iter()
        .map(|row| {
            vec![
                Cell::Num(row.xi),
                Cell::Num(row.a),
                Cell::Num(row.smeared),
                Cell::Num(r.target),
                Cell::Num(row.error),
                Cell::Num(row.relative_error),
                Cell::Num(row.reflected_term),
                Cell::Num(row.quad_err),
            ]
        })
        .collect();
    Ok(Report {
        command: "delta-test",
        parameters: vec![
            ("nu", Cell::Num(a.nu)),
            ("phi", Cell::Text(a.phi.kind.as_str())),
            ("phi_center", Cell::Num(a.phi.center)),
            ("phi_width", Cell::Num(a.phi.width)),
            ("tol", Cell::Num(tol)),
        ],
        list_parameters: vec![("xi", xis)],
        columns: &[
            "xi",
            "a",
            "smeared",
            "target",
            "error",
            "relative_error",
            "reflected_term",
            "quadrature_abs_err",
        ],
        rows,
        pass: converging && last_ok,
    })
}

fn asym_check(a: &GridArgs, c: f64) -> Result<Report, RunError> {
    let nus = grid("nu", &a.nu)?;
    let xs = positive_grid("x", &a.x)?;
    if let Some(x) = xs.iter().find(|x| **x > SMALL_X_MAX && **x < LARGE_X_MIN) {
        return Err(usage(format!(
            "x = {x} lies between the asymptotic regimes (x <= {SMALL_X_MAX} or x >= {LARGE_X_MIN})"
        )));
    }
    if nus.contains(&0.0) {
        return Err(usage("--nu must be nonzero"));
    }
    let mut rows = Vec::new();
    let mut pass = true;
    for &nu in &nus {
        let order = Order::new(nu)?;
        for &x in &xs {
            let abscissa = Abscissa::new(x)?;
            let k = besselk_imag(order, abscissa)?.value;
            let (regime, approx, deviation, bound) = if x >= LARGE_X_MIN {
                let approx = besselk_largex_approx(order, abscissa)?;
                ("large-x", approx, (k / approx - 1.0).abs(), c / x)
            } else {
                // leading correction of the small-x form is amp·x²/(4|1+iν|)
                let n = nu.abs();
                let amp = (PI / (n * (PI * n).sinh())).sqrt();
                let approx = besselk_smallx_approx(order, abscissa)?;
                (
                    "small-x",
                    approx,
                    (k - approx).abs() / amp,
                    c * x * x / (4.0 * (1.0 + n * n).sqrt()),
                )
            };
            let ok = deviation <= bound;
            pass &= ok;
            rows.push(vec![
                Cell::Num(nu),
                Cell::Num(x),
                Cell::Text(regime),
                Cell::Num(k),
                Cell::Num(approx),
                Cell::Num(deviation),
                Cell::Num(bound),
                Cell::Bool(ok),
            ]);
        }
    }
    Ok(Report {
        command: "asym-check",
        parameters: vec![("tol", Cell::Num(c))],
        list_parameters: vec![("nu", nus), ("x", xs)],
        columns: &[
            "nu",
            "x",
            "regime",
            "value",
            "approximation",
            "deviation",
            "bound",
            "pass",
        ],
        rows,
        pass,
    })
}

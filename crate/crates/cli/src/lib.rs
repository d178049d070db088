//! Command-line front end for the J_Z / CAR workspace.
//!
//! Every computation in the library crates is reachable as a subcommand
//! with machine-readable output: JSON (default, sorted keys, 12
//! significant digits for floats) or CSV where a tabular form exists.
//! Long enumerations stream progress to standard error and data to
//! standard output.  The `repro` subcommand runs the acceptance suite
//! and prints a summary table keyed by proposition.
//!
//! Exit codes: 0 on success, 1 on a validation error (bad expression,
//! unknown flag, unsupported format), 2 when a budget or size cap is
//! exceeded.

pub mod criteria;
pub mod output;

use car_wick::{eval_quasifree, CarError, CarOp, CarPolynomial, FullCovariance, VacuumCovariance};
use clap::{Parser, Subcommand, ValueEnum};
use folner_lab::report::{census_csv, ratio_csv};
use folner_lab::{
    an_census, card_fn, enumerate_fn, growth_ball, klawe_witness, left_ratio, right_ratio,
    right_ratio_lower_bound, Budget, FolnerError,
};
use jw_oracle::{equivalence_check, sum_position_norm, JwError};
use jz_core::{JElement, JzError};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{Map, Value};
use spread_states::{
    averaged_eval, classification_witnesses, image_law, spreadability_residual, ImageLawQuery,
    SpreadError,
};
use std::fmt;
use toeplitz_cov::{certificate, certify_norm, min_eigenvalue, ToeplitzCovariance, ToeplitzError};

/// Errors surfaced to the user, tagged with the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 1.
    Validation(String),
    /// A budget or size cap was exceeded: exit code 2.
    Capacity(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Capacity(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Capacity(m) => write!(f, "{m}"),
        }
    }
}

impl From<JzError> for CliError {
    fn from(e: JzError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<FolnerError> for CliError {
    fn from(e: FolnerError) -> Self {
        match e {
            FolnerError::BudgetExceeded { .. } | FolnerError::RadiusExceeded { .. } => {
                CliError::Capacity(e.to_string())
            }
            FolnerError::BadParameter(_) => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ToeplitzError> for CliError {
    fn from(e: ToeplitzError) -> Self {
        match e {
            ToeplitzError::SizeCap { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CarError> for CliError {
    fn from(e: CarError) -> Self {
        match e {
            CarError::DegreeCap { .. } => CliError::Capacity(e.to_string()),
            CarError::Parse(_) => CliError::Validation(e.to_string()),
        }
    }
}

impl From<SpreadError> for CliError {
    fn from(e: SpreadError) -> Self {
        match e {
            SpreadError::SiteCap { .. }
            | SpreadError::WindowCap { .. }
            | SpreadError::StateBudget { .. } => CliError::Capacity(e.to_string()),
            SpreadError::BadSites => CliError::Validation(e.to_string()),
            SpreadError::Car(inner) => inner.into(),
            SpreadError::Jz(inner) => inner.into(),
        }
    }
}

impl From<JwError> for CliError {
    fn from(e: JwError) -> Self {
        match e {
            JwError::WindowCap { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CovKind {
    /// The certified rescaled Toeplitz covariance.
    Toeplitz,
    /// Q = 0.
    Vacuum,
    /// Q = I.
    Full,
}

#[derive(Debug, Parser)]
#[command(
    name = "jzlab",
    version,
    about = "Window enumerations, certified covariances, and quasi-free states on the CAR algebra"
)]
pub struct CliArgs {
    /// Output format, json unless stated otherwise; csv is available for
    /// tabular subcommands only, and `repro` prints a text table unless
    /// json is requested explicitly.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output to a file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Cap the worker-thread count for parallel sections.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal forms of strictly increasing maps: compose and apply.
    #[command(subcommand)]
    Jz(JzCmd),
    /// Window families: cardinalities, ratios, growth, census, witnesses.
    #[command(subcommand)]
    Folner(FolnerCmd),
    /// The certified Toeplitz covariance and its truncations.
    #[command(subcommand)]
    Toeplitz(ToeplitzCmd),
    /// Quasi-free state values, window averages, and witnesses.
    #[command(subcommand)]
    State(StateCmd),
    /// The finite-matrix oracle: equivalence checks and norms.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Run the acceptance suite and print a summary keyed by proposition.
    Repro {
        /// Run a single criterion (1..=10) instead of the full suite.
        #[arg(long)]
        only: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum JzCmd {
    /// Compose two elements: fg means "apply g, then f".
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Tabulate f(k) for k in [lo, hi].
    Apply {
        #[arg(long)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        lo: i64,
        #[arg(long, allow_negative_numbers = true)]
        hi: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FolnerCmd {
    /// The closed-form cardinality of the window F_n.
    Card {
        #[arg(long)]
        n: u32,
    },
    /// Stream every element of F_n (progress on stderr).
    Enumerate {
        #[arg(long)]
        n: u32,
        /// Abort with exit code 2 if F_n has more elements than this.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Exact translation ratio |{g in F_n : g f in F_n}| / |F_n|.
    Ratio {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        f: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
        #[arg(long, default_value_t = 20_000_000)]
        budget: u64,
    },
    /// The closed-form lower bound for the right ratio.
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        f: String,
    },
    /// Ball sizes of the generator word metric up to a radius.
    Growth {
        #[arg(long)]
        radius: u32,
    },
    /// Census of the fixed-mass family A_n: count, lengths, distinctness.
    AnCensus {
        #[arg(long)]
        n: u32,
    },
    /// The collapse witness f != g with fs = gs at position j.
    Klawe {
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ToeplitzCmd {
    /// Certified enclosures for the symbol extrema and the scale C.
    Certify {
        /// Grid resolution; omit to use the cached default certificate.
        #[arg(long)]
        grid_cells: Option<usize>,
    },
    /// Minimum eigenvalue of the covariance truncation to [lo, hi].
    Truncation {
        #[arg(long, allow_negative_numbers = true)]
        lo: i64,
        #[arg(long, allow_negative_numbers = true)]
        hi: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum StateCmd {
    /// Evaluate a polynomial in the chosen quasi-free state.
    Eval {
        /// Expression such as "a[1]*a+[2]", "x[1]*x[2]", or "I".
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = CovKind::Toeplitz)]
        covariance: CovKind,
    },
    /// Average the stationary value over the window family at index n.
    Average {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        expr: String,
    },
    /// |average(p) - average(alpha_k(p))| at window index n.
    Residual {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        expr: String,
        /// The acting element, e.g. "th[0]" or "t".
        #[arg(long)]
        k: String,
    },
    /// The classification witnesses: stationarity, the 4:1 ratio,
    /// antisymmetry of the averages, and the vacuum scan.
    Witnesses,
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    /// Compare determinant and trace evaluations on random monomials.
    Check {
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[arg(long, default_value_t = 200)]
        samples: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Operator norm of x_1 + ... + x_n in the matrix model.
    Norm {
        #[arg(long)]
        n: usize,
    },
}

fn json_only(format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Validation(
            "csv output is not available for this subcommand; use --format json".into(),
        ));
    }
    Ok(())
}

fn jz_compose(f: &str, g: &str) -> Result<String, CliError> {
    let fe = JElement::parse(f)?;
    let ge = JElement::parse(g)?;
    let fg = fe.compose(&ge);
    let mut map = Map::new();
    map.insert("f".into(), Value::String(fe.render()));
    map.insert("g".into(), Value::String(ge.render()));
    map.insert("fg".into(), Value::String(fg.render()));
    Ok(output::render(map))
}

fn jz_apply(f: &str, lo: i64, hi: i64, format: Format) -> Result<String, CliError> {
    let fe = JElement::parse(f)?;
    if lo > hi {
        return Err(CliError::Validation(format!("empty range: lo {lo} > hi {hi}")));
    }
    if hi - lo > 10_000 {
        return Err(CliError::Capacity(format!(
            "range of {} points exceeds the cap of 10001",
            hi - lo + 1
        )));
    }
    let points: Vec<(i64, i64)> = (lo..=hi).map(|k| (k, fe.apply(k))).collect();
    match format {
        Format::Csv => {
            let mut out = String::from("k,f_k\n");
            for (k, v) in &points {
                out.push_str(&format!("{k},{v}\n"));
            }
            Ok(out)
        }
        Format::Json => {
            let mut map = Map::new();
            map.insert("f".into(), Value::String(fe.render()));
            map.insert("lo".into(), Value::from(lo));
            map.insert("hi".into(), Value::from(hi));
            map.insert(
                "points".into(),
                Value::Array(
                    points
                        .iter()
                        .map(|(k, v)| Value::Array(vec![Value::from(*k), Value::from(*v)]))
                        .collect(),
                ),
            );
            Ok(output::render(map))
        }
    }
}

fn folner_card(n: u32) -> Result<String, CliError> {
    let mut map = Map::new();
    map.insert("n".into(), Value::from(n));
    map.insert("count".into(), output::big(&card_fn(n)));
    Ok(output::render(map))
}

fn folner_enumerate(n: u32, budget: u64) -> Result<String, CliError> {
    let iter = enumerate_fn(n, Budget { max_elements: budget })?;
    let mut elements = Vec::new();
    for (i, e) in iter.enumerate() {
        if i > 0 && i % 10_000 == 0 {
            eprintln!("enumerated {i} elements of F_{n}");
        }
        elements.push(Value::String(e.render()));
    }
    let mut map = Map::new();
    map.insert("n".into(), Value::from(n));
    map.insert("card".into(), Value::from(elements.len()));
    map.insert("elements".into(), Value::Array(elements));
    Ok(output::render(map))
}

fn folner_ratio(
    n: u32,
    f: &str,
    side: Side,
    budget: u64,
    format: Format,
) -> Result<String, CliError> {
    let fe = JElement::parse(f)?;
    let budget = Budget { max_elements: budget };
    let report = match side {
        Side::Right => right_ratio(n, &fe, budget)?,
        Side::Left => left_ratio(n, &fe, budget)?,
    };
    match format {
        Format::Csv => Ok(ratio_csv(std::slice::from_ref(&report))),
        Format::Json => {
            let mut map = Map::new();
            map.insert("n".into(), Value::from(report.n));
            map.insert("f".into(), Value::String(report.f.clone()));
            map.insert(
                "side".into(),
                Value::String(match side {
                    Side::Right => "right".into(),
                    Side::Left => "left".into(),
                }),
            );
            map.insert("card".into(), output::big(&report.card));
            map.insert("stayers".into(), Value::from(report.stayers));
            map.insert("image_size".into(), Value::from(report.image_size));
            map.insert("set_intersection".into(), Value::from(report.set_intersection));
            map.insert("injective".into(), Value::Bool(report.injective));
            output::rational_pair(&mut map, "ratio", &report.ratio);
            output::rational_pair(&mut map, "lower_bound", &report.lower_bound);
            Ok(output::render(map))
        }
    }
}

fn folner_bound(n: u32, f: &str) -> Result<String, CliError> {
    let fe = JElement::parse(f)?;
    let bound = right_ratio_lower_bound(n, &fe);
    let mut map = Map::new();
    map.insert("n".into(), Value::from(n));
    map.insert("f".into(), Value::String(fe.render()));
    output::rational_pair(&mut map, "lower_bound", &bound);
    Ok(output::render(map))
}

fn folner_growth(radius: u32, format: Format) -> Result<String, CliError> {
    let report = growth_ball(radius)?;
    match format {
        Format::Csv => {
            let mut out = String::from("radius,ball\n");
            for (r, count) in report.ball.iter().enumerate() {
                out.push_str(&format!("{r},{count}\n"));
            }
            Ok(out)
        }
        Format::Json => {
            let mut map = Map::new();
            map.insert("radius".into(), Value::from(radius));
            map.insert(
                "ball".into(),
                Value::Array(report.ball.iter().map(|c| Value::from(*c)).collect()),
            );
            map.insert(
                "strictly_increasing".into(),
                Value::Bool(report.strictly_increasing()),
            );
            Ok(output::render(map))
        }
    }
}

fn folner_census(n: u32, format: Format) -> Result<String, CliError> {
    let c = an_census(n)?;
    match format {
        Format::Csv => Ok(census_csv(std::slice::from_ref(&c))),
        Format::Json => {
            let mut map = Map::new();
            map.insert("n".into(), Value::from(c.n));
            map.insert("count".into(), Value::from(c.count));
            map.insert("expected".into(), output::big(&c.expected));
            map.insert("all_distinct".into(), Value::Bool(c.all_distinct));
            map.insert("word_length".into(), Value::from(c.word_length));
            map.insert("naive_word_length".into(), Value::from(c.naive_word_length));
            map.insert("words_verified".into(), Value::Bool(c.words_verified));
            map.insert(
                "word_length_note".into(),
                Value::String(
                    "canonical words have length 7n+1; the naive count 7n misses the letter \
                     that restores the range"
                        .into(),
                ),
            );
            Ok(output::render(map))
        }
    }
}

fn folner_klawe(j: i64) -> Result<String, CliError> {
    let w = klawe_witness(j)?;
    let mut map = Map::new();
    map.insert("j".into(), Value::from(j));
    map.insert("f".into(), Value::String(w.f.render()));
    map.insert("g".into(), Value::String(w.g.render()));
    map.insert("s".into(), Value::String(w.s.render()));
    map.insert("fs".into(), Value::String(w.fs.render()));
    map.insert("gs".into(), Value::String(w.gs.render()));
    map.insert("holds".into(), Value::Bool(w.holds));
    Ok(output::render(map))
}

fn toeplitz_certify(grid_cells: Option<usize>) -> Result<String, CliError> {
    let owned;
    let cert = match grid_cells {
        Some(g) => {
            owned = certify_norm(g)?;
            &owned
        }
        None => certificate(),
    };
    let mut map = Map::new();
    map.insert("grid_cells".into(), Value::from(cert.grid_cells));
    map.insert("opnorm".into(), output::float(cert.opnorm));
    map.insert("opnorm_upper".into(), output::float(cert.opnorm_upper));
    map.insert("min_symbol".into(), output::float(cert.min_symbol));
    map.insert("min_symbol_lower".into(), output::float(cert.min_symbol_lower));
    map.insert("scale".into(), output::float(cert.scale));
    map.insert("cert_radius".into(), output::float(cert.cert_radius));
    map.insert("edge".into(), output::float(cert.edge));
    map.insert("edge_bound".into(), output::float(cert.edge_bound));
    Ok(output::render(map))
}

fn toeplitz_truncation(lo: i64, hi: i64) -> Result<String, CliError> {
    if lo > hi {
        return Err(CliError::Validation(format!("empty window: lo {lo} > hi {hi}")));
    }
    let cov = ToeplitzCovariance::certified();
    let t = cov.truncation(lo, hi)?;
    let min = min_eigenvalue(&t)?;
    let cert = certificate();
    let mut map = Map::new();
    map.insert("m_lo".into(), Value::from(lo));
    map.insert("m_hi".into(), Value::from(hi));
    map.insert("size".into(), Value::from((hi - lo + 1) as u64));
    map.insert("scale".into(), output::float(cov.scale()));
    map.insert("min_eigenvalue".into(), output::float(min));
    map.insert(
        "positivity_floor".into(),
        output::float(cert.scale * cert.min_symbol_lower),
    );
    Ok(output::render(map))
}

fn state_eval(expr: &str, covariance: CovKind) -> Result<String, CliError> {
    let p = CarPolynomial::parse(expr)?;
    let value = match covariance {
        CovKind::Toeplitz => eval_quasifree(&p, &ToeplitzCovariance::certified()),
        CovKind::Vacuum => eval_quasifree(&p, &VacuumCovariance),
        CovKind::Full => eval_quasifree(&p, &FullCovariance),
    };
    let mut map = Map::new();
    map.insert("expr".into(), Value::String(expr.to_string()));
    map.insert(
        "covariance".into(),
        Value::String(
            match covariance {
                CovKind::Toeplitz => "toeplitz",
                CovKind::Vacuum => "vacuum",
                CovKind::Full => "full",
            }
            .into(),
        ),
    );
    map.insert("n_terms".into(), Value::from(p.n_terms()));
    output::complex(&mut map, "value", value);
    Ok(output::render(map))
}

/// When the polynomial normal-orders to a single `±a+_t a_s` at distinct
/// sites, the average has an exact closed form: the inverse-square moment
/// of the joint gap law times the unit `-3iC/pi^2` or `+3iC/pi^2`.  The
/// unit is negative exactly when the sign of the coefficient matches the
/// site order (creator below annihilator).
fn exact_pair_profile(
    p: &CarPolynomial,
    n: u32,
) -> Result<Option<(BigRational, &'static str)>, CliError> {
    let mut terms = p.terms();
    let (monomial, coeff) = match (terms.next(), terms.next()) {
        (Some(t), None) => t,
        _ => return Ok(None),
    };
    if coeff.im != 0.0 || coeff.re.abs() != 1.0 {
        return Ok(None);
    }
    let factors = monomial.factors();
    if factors.len() != 2 {
        return Ok(None);
    }
    let (creator, annihilator): (CarOp, CarOp) = (factors[0], factors[1]);
    if !creator.dagger || annihilator.dagger || creator.site == annihilator.site {
        return Ok(None);
    }
    let (lo, hi) = if creator.site < annihilator.site {
        (creator.site, annihilator.site)
    } else {
        (annihilator.site, creator.site)
    };
    let law = image_law(&ImageLawQuery { sites: vec![lo, hi], n })?;
    let mut moment = BigRational::zero();
    for (gaps, prob) in &law {
        let g = gaps[0] as i64;
        moment += prob / BigRational::from(num_bigint::BigInt::from(g * g));
    }
    let negative = (creator.site < annihilator.site) == (coeff.re > 0.0);
    let unit = if negative { "-3iC/pi^2" } else { "+3iC/pi^2" };
    Ok(Some((moment, unit)))
}

fn state_average(n: u32, expr: &str) -> Result<String, CliError> {
    let p = CarPolynomial::parse(expr)?;
    let value = averaged_eval(&p, n)?;
    let mut map = Map::new();
    map.insert("expr".into(), Value::String(expr.to_string()));
    map.insert("n".into(), Value::from(n));
    output::complex(&mut map, "value", value);
    match exact_pair_profile(&p, n)? {
        Some((profile, unit)) => {
            output::rational_pair(&mut map, "profile", &profile);
            map.insert("unit".into(), Value::String(unit.into()));
        }
        None => {
            map.insert("profile".into(), Value::Null);
            map.insert("unit".into(), Value::Null);
        }
    }
    Ok(output::render(map))
}

fn state_residual(n: u32, expr: &str, k: &str) -> Result<String, CliError> {
    let p = CarPolynomial::parse(expr)?;
    let ke = JElement::parse(k)?;
    let residual = spreadability_residual(&p, n, &ke)?;
    let mut map = Map::new();
    map.insert("expr".into(), Value::String(expr.to_string()));
    map.insert("k".into(), Value::String(ke.render()));
    map.insert("n".into(), Value::from(n));
    map.insert("residual".into(), output::float(residual));
    Ok(output::render(map))
}

fn state_witnesses() -> Result<String, CliError> {
    let w = classification_witnesses();
    let mut map = Map::new();
    map.insert("stationarity_fixture".into(), Value::from(w.stationarity_fixture));
    map.insert(
        "stationarity_deviation".into(),
        output::float(w.stationarity_deviation),
    );
    output::complex(&mut map, "x12", w.x12);
    output::complex(&mut map, "x13", w.x13);
    map.insert("x12_profile".into(), output::rational(&w.x12_profile));
    map.insert("x13_profile".into(), output::rational(&w.x13_profile));
    map.insert("ratio".into(), output::rational(&w.x_ratio));
    map.insert("x12_magnitude_error".into(), output::float(w.x12_magnitude_error));
    map.insert("averaging_index".into(), Value::from(w.averaging_index));
    output::complex(&mut map, "forward", w.forward.numeric);
    output::rational_pair(&mut map, "forward_profile", &w.forward.rational_profile);
    map.insert("forward_unit".into(), Value::String(w.forward.unit.into()));
    output::complex(&mut map, "backward", w.backward.numeric);
    output::rational_pair(&mut map, "backward_profile", &w.backward.rational_profile);
    map.insert("backward_unit".into(), Value::String(w.backward.unit.into()));
    map.insert("antisymmetry_defect".into(), output::float(w.antisymmetry_defect));
    map.insert("vacuum_words".into(), Value::from(w.vacuum_words));
    map.insert("vacuum_max_abs".into(), output::float(w.vacuum_max_abs));
    map.insert("separation".into(), output::float(w.separation));
    Ok(output::render(map))
}

fn oracle_check(window: usize, samples: u32, seed: u64) -> Result<String, CliError> {
    let cov = ToeplitzCovariance::certified();
    let report = equivalence_check(window, samples, seed, &cov)?;
    let mut map = Map::new();
    map.insert(
        "sites".into(),
        Value::Array(report.sites.iter().map(|s| Value::from(*s)).collect()),
    );
    map.insert("seed".into(), Value::from(report.seed));
    map.insert("wick_samples".into(), Value::from(report.wick_samples));
    map.insert("unordered_samples".into(), Value::from(report.unordered_samples));
    map.insert("max_wick_residual".into(), output::float(report.max_wick_residual));
    map.insert(
        "max_unordered_residual".into(),
        output::float(report.max_unordered_residual),
    );
    map.insert("relation_residual".into(), output::float(report.relation_residual));
    map.insert("max_residual".into(), output::float(report.max_residual()));
    Ok(output::render(map))
}

fn oracle_norm(n: usize) -> Result<String, CliError> {
    let norm = sum_position_norm(n)?;
    let expected = (n as f64).sqrt();
    let mut map = Map::new();
    map.insert("n".into(), Value::from(n as u64));
    map.insert("norm".into(), output::float(norm));
    map.insert("expected".into(), output::float(expected));
    map.insert("error".into(), output::float((norm - expected).abs()));
    Ok(output::render(map))
}

fn repro(only: Option<u32>, format: Option<Format>) -> Result<String, CliError> {
    if format == Some(Format::Csv) {
        return Err(CliError::Validation(
            "csv output is not available for repro; use the text table or --format json".into(),
        ));
    }
    let reports = match only {
        Some(i) => vec![criteria::run_criterion(i).ok_or_else(|| {
            CliError::Validation(format!("criterion index {i} is out of range 1..=10"))
        })?],
        None => criteria::run_all(),
    };
    if format == Some(Format::Json) {
        let value = Value::Array(
            reports
                .iter()
                .map(|r| {
                    let mut map = Map::new();
                    map.insert("index".into(), Value::from(r.index));
                    map.insert("title".into(), Value::String(r.title.into()));
                    map.insert("proposition".into(), Value::String(r.proposition.into()));
                    map.insert("passed".into(), Value::Bool(r.passed()));
                    map.insert(
                        "clauses".into(),
                        Value::Array(
                            r.clauses
                                .iter()
                                .map(|c| {
                                    let mut cm = Map::new();
                                    cm.insert(
                                        "description".into(),
                                        Value::String(c.description.clone()),
                                    );
                                    cm.insert("passed".into(), Value::Bool(c.passed));
                                    cm.insert("detail".into(), Value::String(c.detail.clone()));
                                    Value::Object(cm)
                                })
                                .collect(),
                        ),
                    );
                    Value::Object(map)
                })
                .collect(),
        );
        return Ok(output::render_value(&value));
    }
    let mut out = String::new();
    for r in &reports {
        out.push_str(&r.render());
        out.push('\n');
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    out.push_str(&format!("{passed}/{} criteria pass\n", reports.len()));
    for r in reports.iter().filter(|r| !r.passed()) {
        out.push_str(&format!(
            "criterion {} fails on: {}\n",
            r.index,
            r.clauses
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.description.as_str())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    Ok(out)
}

/// Execute a parsed command line and return the stdout payload.
pub fn run(args: &CliArgs) -> Result<String, CliError> {
    let format = args.format.unwrap_or(Format::Json);
    match &args.command {
        Command::Jz(cmd) => match cmd {
            JzCmd::Compose { f, g } => {
                json_only(format)?;
                jz_compose(f, g)
            }
            JzCmd::Apply { f, lo, hi } => jz_apply(f, *lo, *hi, format),
        },
        Command::Folner(cmd) => match cmd {
            FolnerCmd::Card { n } => {
                json_only(format)?;
                folner_card(*n)
            }
            FolnerCmd::Enumerate { n, budget } => {
                json_only(format)?;
                folner_enumerate(*n, *budget)
            }
            FolnerCmd::Ratio { n, f, side, budget } => folner_ratio(*n, f, *side, *budget, format),
            FolnerCmd::Bound { n, f } => {
                json_only(format)?;
                folner_bound(*n, f)
            }
            FolnerCmd::Growth { radius } => folner_growth(*radius, format),
            FolnerCmd::AnCensus { n } => folner_census(*n, format),
            FolnerCmd::Klawe { j } => {
                json_only(format)?;
                folner_klawe(*j)
            }
        },
        Command::Toeplitz(cmd) => {
            json_only(format)?;
            match cmd {
                ToeplitzCmd::Certify { grid_cells } => toeplitz_certify(*grid_cells),
                ToeplitzCmd::Truncation { lo, hi } => toeplitz_truncation(*lo, *hi),
            }
        }
        Command::State(cmd) => {
            json_only(format)?;
            match cmd {
                StateCmd::Eval { expr, covariance } => state_eval(expr, *covariance),
                StateCmd::Average { n, expr } => state_average(*n, expr),
                StateCmd::Residual { n, expr, k } => state_residual(*n, expr, k),
                StateCmd::Witnesses => state_witnesses(),
            }
        }
        Command::Oracle(cmd) => {
            json_only(format)?;
            match cmd {
                OracleCmd::Check { window, samples, seed } => {
                    oracle_check(*window, *samples, *seed)
                }
                OracleCmd::Norm { n } => oracle_norm(*n),
            }
        }
        Command::Repro { only } => repro(*only, args.format),
    }
}

/// Parse an argv-style iterator and run it; used by tests to drive the
/// real pipeline without spawning a process.
pub fn run_args<I, T>(argv: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = CliArgs::try_parse_from(argv)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    run(&args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_errors_exit_one_and_caps_exit_two() {
        let bad = run_args(["jzlab", "jz", "compose", "--f", "???", "--g", "e"]).unwrap_err();
        assert_eq!(bad.exit_code(), 1);
        let capped = run_args(["jzlab", "folner", "enumerate", "--n", "4"]).unwrap_err();
        assert_eq!(capped.exit_code(), 2);
        let unknown = run_args(["jzlab", "frobnicate"]).unwrap_err();
        assert_eq!(unknown.exit_code(), 1);
    }

    #[test]
    fn csv_is_rejected_where_no_table_exists() {
        let err =
            run_args(["jzlab", "--format", "csv", "folner", "card", "--n", "2"]).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("csv"));
    }

    #[test]
    fn csv_tables_have_the_documented_headers() {
        let ratio = run_args([
            "jzlab", "--format", "csv", "folner", "ratio", "--n", "1", "--f", "th[0]",
        ])
        .unwrap();
        assert!(ratio.starts_with(
            "n,f,card,stayers,image_size,set_intersection,injective,ratio,ratio_approx,"
        ));
        let census = run_args(["jzlab", "--format", "csv", "folner", "an-census", "--n", "1"])
            .unwrap();
        assert!(census.starts_with("n,count,expected,word_length,"));
        let apply = run_args([
            "jzlab", "--format", "csv", "jz", "apply", "--f", "t", "--lo", "0", "--hi", "2",
        ])
        .unwrap();
        assert_eq!(apply, "k,f_k\n0,1\n1,2\n2,3\n");
    }

    #[test]
    fn average_exposes_the_exact_profile_for_pairs() {
        let out = run_args(["jzlab", "state", "average", "--n", "1", "--expr", "a[1]*a+[2]"])
            .unwrap();
        assert!(out.contains("\"profile\": \"15/16\""));
        assert!(out.contains("\"unit\": \"-3iC/pi^2\""));
        let reversed =
            run_args(["jzlab", "state", "average", "--n", "1", "--expr", "a+[1]*a[3]"]).unwrap();
        assert!(reversed.contains("\"unit\": \"-3iC/pi^2\""));
        let descending =
            run_args(["jzlab", "state", "average", "--n", "1", "--expr", "a[2]*a+[1]"]).unwrap();
        assert!(descending.contains("\"unit\": \"+3iC/pi^2\""));
        let non_pair =
            run_args(["jzlab", "state", "average", "--n", "1", "--expr", "x[1]*x[2]"]).unwrap();
        assert!(non_pair.contains("\"profile\": null"));
    }

    #[test]
    fn the_pair_profile_route_matches_the_generic_average() {
        for (expr, n) in [("a[1]*a+[2]", 2u32), ("a+[2]*a[5]", 3), ("a[4]*a+[1]", 2)] {
            let p = CarPolynomial::parse(expr).unwrap();
            let numeric = averaged_eval(&p, n).unwrap();
            let (profile, unit) = exact_pair_profile(&p, n).unwrap().unwrap();
            let scale = ToeplitzCovariance::certified().scale();
            let magnitude =
                folner_lab::report::rational_to_f64(&profile) * 3.0 * scale
                    / (std::f64::consts::PI * std::f64::consts::PI);
            let expected = match unit {
                "-3iC/pi^2" => num_complex::Complex64::new(0.0, -magnitude),
                _ => num_complex::Complex64::new(0.0, magnitude),
            };
            assert!((numeric - expected).norm() < 1e-12, "{expr} at n={n}");
        }
    }

    #[test]
    fn same_site_pairs_fall_back_to_numeric_output() {
        let out = run_args(["jzlab", "state", "average", "--n", "2", "--expr", "a+[1]*a[1]"])
            .unwrap();
        assert!(out.contains("\"profile\": null"));
        // The occupation is stationary: the average equals the scale C.
        let scale = ToeplitzCovariance::certified().scale();
        assert!(out.contains(&folner_lab::report::sig12(scale)));
    }

    #[test]
    fn repro_accepts_only_a_valid_index() {
        let err = run_args(["jzlab", "repro", "--only", "11"]).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}

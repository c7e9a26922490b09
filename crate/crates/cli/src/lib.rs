//! Command-line driver: argument parsing, output formats and exit codes.
//!
//! Exit codes: 0 success, 1 usage error, 2 some row's routes disagree,
//! 3 a structural check failed.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};
use theta_core::cartan::verify_all;
use theta_core::centralizers::{e8_monomial_stabilizer, enumerate_e6_m, enumerate_e8_c};
use theta_core::multiplicity::{e6_closed_form, e8_closed_form};
use theta_core::oracle::{label_dimension, symd_dimension};
use theta_core::{
    Case, Cyclotomic, E6Weight, EigenvalueMultiset, Error, GradedDecomposition, HighestWeight, Method,
    MultiplicityEngine, MultiplicityReport, RangeSpec, ScaleLimits,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;
pub const EXIT_STRUCTURAL: i32 = 3;

/// Environment variable overriding the E8 degree cap of `oracle`.
pub const MAX_DEGREE_ENV: &str = "THETA_ORACLE_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(name = "theta", version, about = "Harmonic multiplicities for two order-3 Vinberg pairs")]
struct Cli {
    /// Output format (json or csv; verify defaults to text lines).
    #[arg(long, global = true, value_enum)]
    output: Option<Format>,
    /// Worker threads for parallel evaluation.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Multiplicity of one weight.
    Mult(MultArgs),
    /// Multiplicities of every weight with entries ≤ --max.
    Table(TableArgs),
    /// Graded decomposition of Sym^d(V) for d ≤ --degree.
    Oracle(OracleArgs),
    /// Structural checks.
    #[command(subcommand)]
    Verify(VerifyTarget),
}

#[derive(Args, Debug)]
struct MultArgs {
    #[arg(value_enum)]
    case: CaseArg,
    /// e6: m1,n1,m2,n2,m3,n3; e8: λ1,…,λ8 (λ9 = 0 may be appended).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    w: Vec<i64>,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(value_enum)]
    case: CaseArg,
    #[arg(long)]
    max: u32,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(value_enum)]
    case: CaseArg,
    #[arg(long)]
    degree: u32,
    /// Also report the harmonic series of this weight.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    w: Option<Vec<i64>>,
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Cartan-subspace brackets and criticality identities.
    Cartan,
    /// Centralizer group structure and element table.
    Group {
        #[arg(value_enum)]
        case: CaseArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    E6,
    E8,
}

impl From<CaseArg> for Case {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::E6 => Case::E6,
            CaseArg::E8 => Case::E8,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Closed,
    Averaging,
    Direct,
    All,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Averaging => Method::Averaging,
            MethodArg::Direct => Method::Direct,
            MethodArg::All => Method::All,
        }
    }
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub output: Option<Format>,
    pub threads: Option<usize>,
    pub limits: ScaleLimits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Mult { range: RangeSpec, method: Method },
    Table { range: RangeSpec, method: Method },
    Oracle { case: Case, degree: u32, weight: Option<Vec<i64>> },
    VerifyCartan,
    VerifyGroup { case: Case },
}

/// Exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self { code, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }

    fn from_error(e: &Error) -> Self {
        let code = if e.is_usage() { EXIT_USAGE } else { EXIT_STRUCTURAL };
        Self::fail(code, format!("error: {e}\n"))
    }
}

/// Parses arguments (including the program name) and runs them.
/// `max_degree_env` is the value of [`MAX_DEGREE_ENV`], if set.
pub fn run_args<I, T>(args: I, max_degree_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::fail(EXIT_USAGE, text) } else { Outcome::ok(EXIT_OK, text) };
        }
    };
    match config_from(cli, max_degree_env) {
        Ok(config) => run(&config),
        Err(e) => Outcome::from_error(&e),
    }
}

fn e8_weight(v: &[i64]) -> Result<HighestWeight, Error> {
    match v.len() {
        8 => HighestWeight::padded(v, 9),
        9 if v[8] == 0 => HighestWeight::new(v.to_vec()),
        9 => Err(Error::InvalidWeight(format!("λ9 must be 0 in {v:?}"))),
        n => Err(Error::DimensionMismatch { expected: 8, actual: n }),
    }
    .and_then(|l| {
        if v.iter().any(|&x| x < 0) {
            Err(Error::InvalidWeight(format!("negative entry in {v:?}")))
        } else {
            Ok(l)
        }
    })
}

fn config_from(cli: Cli, max_degree_env: Option<&str>) -> Result<RunConfig, Error> {
    let mut limits = ScaleLimits::default();
    if let Some(raw) = max_degree_env {
        limits.e8_max_degree = raw
            .trim()
            .parse()
            .map_err(|_| Error::PreconditionViolated(format!("{MAX_DEGREE_ENV}={raw:?} is not a degree")))?;
    }
    if cli.threads == Some(0) {
        return Err(Error::PreconditionViolated("--threads must be positive".into()));
    }
    let check_method = |case: Case, method: Method| {
        if case == Case::E6 && method == Method::Direct {
            Err(Error::PreconditionViolated("method direct exists only for e8".into()))
        } else {
            Ok(method)
        }
    };
    let command = match cli.command {
        CliCommand::Mult(a) => {
            let case = a.case.into();
            let range = match case {
                Case::E6 => RangeSpec::E6(vec![E6Weight::from_slice(&a.w)?]),
                Case::E8 => RangeSpec::E8(vec![e8_weight(&a.w)?]),
            };
            Command::Mult { range, method: check_method(case, a.method.into())? }
        }
        CliCommand::Table(a) => {
            let case = a.case.into();
            Command::Table { range: RangeSpec::up_to(case, a.max), method: check_method(case, a.method.into())? }
        }
        CliCommand::Oracle(a) => {
            let case: Case = a.case.into();
            let weight = match (&a.w, case) {
                (None, _) => None,
                (Some(w), Case::E6) => Some(E6Weight::from_slice(w)?.entries().to_vec()),
                (Some(w), Case::E8) => Some(e8_weight(w)?.entries().to_vec()),
            };
            Command::Oracle { case, degree: a.degree, weight }
        }
        CliCommand::Verify(VerifyTarget::Cartan) => Command::VerifyCartan,
        CliCommand::Verify(VerifyTarget::Group { case }) => Command::VerifyGroup { case: case.into() },
    };
    Ok(RunConfig { command, output: cli.output, threads: cli.threads, limits })
}

/// Executes a validated configuration, on a dedicated pool when a thread
/// count is given.
pub fn run(config: &RunConfig) -> Outcome {
    match config.threads {
        None => execute(config),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(config)),
            Err(e) => Outcome::fail(EXIT_USAGE, format!("error: thread pool: {e}\n")),
        },
    }
}

fn execute(config: &RunConfig) -> Outcome {
    let format = config.output;
    let result = match &config.command {
        Command::Mult { range, method } | Command::Table { range, method } => {
            multiplicities(range, *method, format.unwrap_or(Format::Json))
        }
        Command::Oracle { case, degree, weight } => {
            oracle(*case, *degree, weight.as_deref(), &config.limits, format.unwrap_or(Format::Json))
        }
        Command::VerifyCartan => Ok(verify_cartan(format.unwrap_or(Format::Text))),
        Command::VerifyGroup { case } => verify_group(*case),
    };
    result.unwrap_or_else(|e| Outcome::from_error(&e))
}

fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse().expect("decimal digits form a JSON number"))
}

fn opt_big(n: &Option<BigUint>) -> Value {
    n.as_ref().map_or(Value::Null, big)
}

fn routes(case: Case, method: Method) -> Vec<&'static str> {
    let all: &[&str] = match case {
        Case::E6 => &["closed", "averaging"],
        Case::E8 => &["closed", "averaging", "direct"],
    };
    all.iter()
        .copied()
        .filter(|r| method == Method::All || r.parse::<Method>().ok() == Some(method))
        .collect()
}

fn route_value<'a>(row: &'a MultiplicityReport, route: &str) -> &'a Option<BigUint> {
    match route {
        "closed" => &row.closed,
        "averaging" => &row.averaging,
        _ => &row.direct,
    }
}

fn multiplicities(range: &RangeSpec, method: Method, format: Format) -> Result<Outcome, Error> {
    let engine = MultiplicityEngine::new()?;
    let rows = engine.report(range, method)?;
    let case = range.case();
    let columns = routes(case, method);
    let text = match format {
        Format::Csv => {
            let width = rows.first().map_or(0, |r| r.weight.len());
            let mut header: Vec<String> = (1..=width).map(|i| format!("w{i}")).collect();
            header.push("dim".into());
            header.extend(columns.iter().map(|c| c.to_string()));
            header.push("agree".into());
            let mut out = header.join(",") + "\n";
            for row in &rows {
                let mut cells: Vec<String> = row.weight.iter().map(i64::to_string).collect();
                cells.push(row.dim.to_string());
                for c in &columns {
                    cells.push(route_value(row, c).as_ref().map_or(String::new(), BigUint::to_string));
                }
                cells.push(row.agree.to_string());
                out += &(cells.join(",") + "\n");
            }
            out
        }
        _ => {
            let results: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    obj.insert("weight".into(), json!(row.weight));
                    obj.insert("dim".into(), Value::String(row.dim.to_string()));
                    for c in &columns {
                        obj.insert(c.to_string(), opt_big(route_value(row, c)));
                    }
                    obj.insert("agree".into(), Value::Bool(row.agree));
                    Value::Object(obj)
                })
                .collect();
            pretty(&json!({ "case": case.name(), "results": results }))
        }
    };
    Ok(Outcome::ok(rows_exit_code(&rows), text))
}

fn rows_exit_code(rows: &[MultiplicityReport]) -> i32 {
    if rows.iter().all(|r| r.agree) {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn display_label(case: Case, label: &[i64]) -> Vec<i64> {
    match case {
        Case::E6 => label.to_vec(),
        Case::E8 => label[..8].to_vec(),
    }
}

fn oracle(
    case: Case,
    degree: u32,
    weight: Option<&[i64]>,
    limits: &ScaleLimits,
    format: Format,
) -> Result<Outcome, Error> {
    let g = GradedDecomposition::compute(case, degree, limits)?;
    let mut healthy = true;
    let mut degrees = Vec::new();
    let mut csv = String::new();
    let width = if case == Case::E6 { 6 } else { 8 };
    let header: Vec<String> = (1..=width).map(|i| format!("w{i}")).collect();
    let _ = writeln!(csv, "degree,{},dim,multiplicity", header.join(","));
    for d in 0..=degree {
        let conserved = g.conserves_dimension(d)?;
        healthy &= conserved;
        let mut components = Vec::new();
        for (label, m) in g.degree(d).into_iter().flatten() {
            let dim = label_dimension(case, label)?;
            let shown = display_label(case, label);
            let cells: Vec<String> = shown.iter().map(i64::to_string).collect();
            let _ = writeln!(csv, "{d},{},{dim},{m}", cells.join(","));
            components.push(json!({ "weight": shown, "dim": dim.to_string(), "multiplicity": m }));
        }
        degrees.push(json!({
            "degree": d,
            "dim": symd_dimension(case, d).to_string(),
            "conserves_dimension": conserved,
            "components": components,
        }));
    }
    let mut doc = Map::new();
    doc.insert("case".into(), json!(case.name()));
    doc.insert("max_degree".into(), json!(degree));
    doc.insert("invariant_series".into(), json!(g.invariant_series().coefficients()));
    doc.insert("degrees".into(), Value::Array(degrees));
    if let Some(label) = weight {
        let h = g.harmonic_series(label)?;
        let bound = match case {
            Case::E6 => e6_closed_form(&E6Weight::from_slice(label)?)?,
            Case::E8 => e8_closed_form(&HighestWeight::new(label.to_vec())?)?,
        };
        let bounded = BigUint::from(h.partial_sum() as u64) <= bound;
        healthy &= bounded;
        doc.insert(
            "harmonic".into(),
            json!({
                "weight": display_label(case, label),
                "series": h.coefficients(),
                "partial_sum": h.partial_sum(),
                "closed_form": big(&bound),
                "bounded": bounded,
            }),
        );
    }
    let text = match format {
        Format::Csv => csv,
        _ => pretty(&Value::Object(doc)),
    };
    Ok(Outcome::ok(if healthy { EXIT_OK } else { EXIT_STRUCTURAL }, text))
}

fn verify_cartan(format: Format) -> Outcome {
    let checks = verify_all();
    let passed = checks.iter().filter(|c| c.passed).count();
    let code = if passed == checks.len() { EXIT_OK } else { EXIT_STRUCTURAL };
    let text = match format {
        Format::Json => pretty(&json!({
            "checks": checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed })).collect::<Vec<_>>(),
            "passed": passed,
            "total": checks.len(),
        })),
        Format::Csv => {
            let mut out = String::from("name,passed\n");
            for c in &checks {
                let _ = writeln!(out, "{},{}", c.name, c.passed);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in &checks {
                let _ = writeln!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            }
            let _ = writeln!(out, "{passed}/{} identities hold", checks.len());
            out
        }
    };
    Outcome::ok(code, text)
}

/// A root of unity ±ζ₉ᵏ as the exponent k (negated roots as "-k"); anything
/// else in its expanded form.
fn root_label(c: &Cyclotomic) -> Value {
    match c.as_root_of_unity() {
        Some((1, k)) => json!(k),
        Some((_, k)) => json!(format!("-{k}")),
        None => json!(c.to_string()),
    }
}

fn eig_labels(e: &EigenvalueMultiset) -> Value {
    Value::Array(e.sorted().iter().map(root_label).collect())
}

fn verify_group(case: Case) -> Result<Outcome, Error> {
    let mu = EigenvalueMultiset::mu().sorted();
    let (doc, ok) = match case {
        Case::E6 => {
            let m = enumerate_e6_m()?;
            let mut trivial = 0;
            let mut regular = true;
            let mut elements = Vec::new();
            for g in m.elements() {
                let eigs = g.eigenvalues()?;
                if g.acts_trivially() {
                    trivial += 1;
                } else {
                    regular &= eigs.iter().all(|e| e.cube_root_counts() == Some([1, 1, 1]));
                }
                let factors: Vec<Value> = g
                    .factors()
                    .iter()
                    .map(|f| json!({ "perm": f.perm(), "entries": f.entries().iter().map(root_label).collect::<Vec<_>>() }))
                    .collect();
                elements.push(json!({
                    "factors": factors,
                    "eigenvalues": eigs.iter().map(eig_labels).collect::<Vec<_>>(),
                    "acts_trivially": g.acts_trivially(),
                }));
            }
            let ok = m.order() == 81 && trivial == 9 && regular;
            let doc = json!({
                "case": "e6",
                "order": m.order(),
                "acting_trivially": trivial,
                "others_have_eigenvalues_1_z3_z3sq": regular,
                "elements": elements,
            });
            (doc, ok)
        }
        Case::E8 => {
            let c = enumerate_e8_c()?;
            let mut central = 0;
            let mut mu_class = 0;
            let mut elements = Vec::new();
            for g in c.elements() {
                let eigs = g.eigenvalues()?;
                if g.as_scalar().is_some() {
                    central += 1;
                } else if eigs.sorted() == mu {
                    mu_class += 1;
                }
                elements.push(json!({
                    "perm": g.perm(),
                    "entries": g.entries().iter().map(root_label).collect::<Vec<_>>(),
                    "order": g.order(81),
                    "central": g.as_scalar().is_some(),
                    "eigenvalues": eig_labels(&eigs),
                }));
            }
            let histogram: Map<String, Value> =
                c.order_histogram().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let stabilizer = e8_monomial_stabilizer()?;
            let ok = c.order() == 81 && central == 3 && mu_class == 78;
            let doc = json!({
                "case": "e8",
                "order": c.order(),
                "central": central,
                "conjugate_to_mu": mu_class,
                "order_histogram": histogram,
                "monomial_stabilizer_order": stabilizer.order(),
                "elements": elements,
            });
            (doc, ok)
        }
    };
    Ok(Outcome::ok(if ok { EXIT_OK } else { EXIT_STRUCTURAL }, pretty(&doc)))
}

//! Command-line front end.
//!
//! Every subcommand produces a text rendering and a JSON result; `--format
//! machine` prints a single object `{command, inputs, result, errors}`.
//!
//! Exit codes: 0 success, 1 domain or validation failure (including a
//! failed `verify` check), 2 malformed input or arguments, 3 internal
//! consistency failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::basket::QuotientSingularity;
use crate::bounds::{self, ChernData, HodgeData};
use crate::error::{Error, ErrorKind, Result};
use crate::local_term::LocalTermRegistry;
use crate::numeric::{digit_count, Rational};
use crate::oracle::{CheckRegistry, SweepConfig, DEFAULT_SEED};
use crate::riemann_roch::ThreefoldData;

#[derive(Parser, Debug)]
#[command(
    name = "plurigenus",
    version,
    about = "Plurigenera of canonical threefolds and effective bounds"
)]
struct Cli {
    /// Output mode.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// χ(mK) from the plurigenus formula.
    Chi(InputM),
    /// h⁰(mK) for m >= 2.
    Plurigenus(PlurigenusArgs),
    /// Index of the basket (lcm of orders).
    Index(Input),
    /// Local contribution l(Q, m) of a single singularity.
    L(LArgs),
    /// Integrality and normalization checks.
    Validate(Input),
    /// Coefficients of t ↦ χ(rtK).
    Hilbert(Input),
    /// Birationality exponents.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Map-count bound for a smooth threefold with sK very ample.
    Defranchis(DefranchisArgs),
    /// Degree of a dual variety from Chern numbers.
    DualDegree(DualDegreeArgs),
    /// a · d^i.
    Bezout(BezoutArgs),
    /// Σ_{2i <= n} h^i(O).
    ChiBound(ChiBoundArgs),
    /// Embedding and degree bounds for index r, K³ and multiple p.
    MappingBounds(MappingBoundsArgs),
    /// Run the brute-force verification sweeps.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// m0(r) such that |mK| is birational for m >= m0 at index r.
    Hanamura(HanamuraArgs),
    /// 11l + 5.
    Kollar(KollarArgs),
    /// R = lcm(2..26C-1) and m = lcm(4R+3, 143C+5).
    Birationality(CArgs),
    /// Lower-bound certificate (1-26C)C + l(26C, 13C) with its closed form.
    Certificate(CArgs),
}

#[derive(Args, Debug, Serialize)]
struct Input {
    /// Threefold document (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct InputM {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    m: u64,
}

#[derive(Args, Debug, Serialize)]
struct PlurigenusArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    m: u64,
    /// Lower bound that ignores the K³ term.
    #[arg(long)]
    drop_k3: bool,
}

#[derive(Args, Debug, Serialize)]
struct LArgs {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    a: u64,
    #[arg(long)]
    m: u64,
    #[arg(long, default_value = "closed")]
    form: String,
}

#[derive(Args, Debug, Serialize)]
struct HanamuraArgs {
    #[arg(long)]
    r: u64,
}

#[derive(Args, Debug, Serialize)]
struct KollarArgs {
    #[arg(long)]
    l: u64,
}

#[derive(Args, Debug, Serialize)]
struct CArgs {
    #[arg(long = "C")]
    #[serde(rename = "C")]
    c: u64,
}

#[derive(Args, Debug, Serialize)]
struct DefranchisArgs {
    #[arg(long)]
    s: u64,
    #[arg(long = "K3", allow_hyphen_values = true)]
    #[serde(rename = "K3")]
    k3: Rational,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::numeric::as_decimal::serialize")]
    c1c2: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::numeric::as_decimal::serialize")]
    c3: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    chi: i64,
    /// Expand base^exponent when it has at most this many digits.
    #[arg(long)]
    expand_threshold: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct DualDegreeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(serialize_with = "serialize_big_vec")]
    v: Vec<BigInt>,
}

fn serialize_big_vec<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Args, Debug, Serialize)]
struct BezoutArgs {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    i: u32,
}

#[derive(Args, Debug, Serialize)]
struct ChiBoundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',')]
    h: Vec<u64>,
}

#[derive(Args, Debug, Serialize)]
struct MappingBoundsArgs {
    #[arg(long)]
    r: u64,
    #[arg(long = "K3", allow_hyphen_values = true)]
    #[serde(rename = "K3")]
    k3: Rational,
    #[arg(long)]
    p: u64,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// Run a single named check.
    #[arg(long)]
    check: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

/// What an invocation printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A successful command: text rendering, JSON result, and whether the
/// outcome counts as passing (validation and verification can fail
/// without an error).
struct Outcome {
    text: String,
    result: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>, result: Value) -> Self {
        Outcome {
            text: text.into(),
            result,
            passed: true,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn load_document(path: &Path) -> Result<ThreefoldData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        let inner = e.into_inner();
        if at == "." {
            Error::Malformed(format!("{}: {inner}", path.display()))
        } else {
            Error::Malformed(format!("{}: field {at}: {inner}", path.display()))
        }
    })
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: ErrorKind::Malformed.exit_code(),
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let (name, inputs) = describe(&cli.command);
    let outcome = execute(&cli.command);
    match (cli.format, outcome) {
        (Format::Text, Ok(o)) => CliOutput {
            code: if o.passed { 0 } else { 1 },
            stdout: ensure_newline(o.text),
            stderr: String::new(),
        },
        (Format::Text, Err(e)) => CliOutput {
            code: e.kind().exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        (Format::Machine, Ok(o)) => CliOutput {
            code: if o.passed { 0 } else { 1 },
            stdout: machine(&name, inputs, o.result, vec![]),
            stderr: String::new(),
        },
        (Format::Machine, Err(e)) => {
            let err = json!({
                "kind": e.kind().as_str(),
                "code": e.kind().exit_code(),
                "message": e.to_string(),
            });
            CliOutput {
                code: e.kind().exit_code(),
                stdout: machine(&name, inputs, Value::Null, vec![err]),
                stderr: String::new(),
            }
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn machine(command: &str, inputs: Value, result: Value, errors: Vec<Value>) -> String {
    let doc = json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "errors": errors,
    });
    ensure_newline(serde_json::to_string_pretty(&doc).expect("json"))
}

fn describe(cmd: &Command) -> (String, Value) {
    match cmd {
        Command::Chi(a) => ("chi".into(), to_value(a)),
        Command::Plurigenus(a) => ("plurigenus".into(), to_value(a)),
        Command::Index(a) => ("index".into(), to_value(a)),
        Command::L(a) => ("l".into(), to_value(a)),
        Command::Validate(a) => ("validate".into(), to_value(a)),
        Command::Hilbert(a) => ("hilbert".into(), to_value(a)),
        Command::Bounds(BoundsCommand::Hanamura(a)) => ("bounds hanamura".into(), to_value(a)),
        Command::Bounds(BoundsCommand::Kollar(a)) => ("bounds kollar".into(), to_value(a)),
        Command::Bounds(BoundsCommand::Birationality(a)) => {
            ("bounds birationality".into(), to_value(a))
        }
        Command::Bounds(BoundsCommand::Certificate(a)) => {
            ("bounds certificate".into(), to_value(a))
        }
        Command::Defranchis(a) => ("defranchis".into(), to_value(a)),
        Command::DualDegree(a) => ("dual-degree".into(), to_value(a)),
        Command::Bezout(a) => ("bezout".into(), to_value(a)),
        Command::ChiBound(a) => ("chi-bound".into(), to_value(a)),
        Command::MappingBounds(a) => ("mapping-bounds".into(), to_value(a)),
        Command::Verify(a) => ("verify".into(), to_value(a)),
    }
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Chi(a) => {
            let x = load_document(&a.input)?;
            let v = x.chi_mk(a.m);
            Ok(Outcome::ok(
                format!("chi({}K) = {v}", a.m),
                json!({ "chi": v }),
            ))
        }
        Command::Plurigenus(a) => {
            let x = load_document(&a.input)?;
            if a.drop_k3 {
                let v = x.plurigenus_lower_bound(a.m)?;
                Ok(Outcome::ok(
                    format!("P_{} >= {v} (K3 term dropped)", a.m),
                    json!({ "plurigenus_lower_bound": v.to_string() }),
                ))
            } else {
                let v = x.plurigenus(a.m)?;
                Ok(Outcome::ok(
                    format!("P_{} = {v}", a.m),
                    json!({ "plurigenus": v.to_string() }),
                ))
            }
        }
        Command::Index(a) => {
            let x = load_document(&a.input)?;
            let r = x.index();
            Ok(Outcome::ok(format!("index = {r}"), json!({ "index": r })))
        }
        Command::L(a) => {
            let q = QuotientSingularity::new(a.r, a.a)?;
            let form = LocalTermRegistry::standard().get(&a.form)?;
            let v = form.eval(&q, a.m)?;
            Ok(Outcome::ok(
                v.to_string(),
                json!({ "l": v, "form": form.name() }),
            ))
        }
        Command::Validate(a) => {
            let x = load_document(&a.input)?;
            let report = x.validate();
            let text = match &report.failure {
                None => "pass".to_string(),
                Some(f) => format!("fail: {f}"),
            };
            Ok(Outcome {
                text,
                passed: report.passed(),
                result: json!({ "passed": report.passed(), "failure": report.failure }),
            })
        }
        Command::Hilbert(a) => {
            let x = load_document(&a.input)?;
            let h = x.hilbert_coefficients();
            let text = format!("c3 = {}\nc2 = {}\nc1 = {}\nc0 = {}", h.c3, h.c2, h.c1, h.c0);
            Ok(Outcome::ok(text, to_value(&h)))
        }
        Command::Bounds(b) => execute_bounds(b),
        Command::Defranchis(a) => {
            let threshold = a.expand_threshold.unwrap_or(0);
            let report =
                bounds::defranchis_threefold_bound(a.s, &a.k3, &a.c1c2, &a.c3, a.chi, threshold)?;
            Ok(Outcome::ok(report.to_string(), to_value(&report)))
        }
        Command::DualDegree(a) => {
            let c = ChernData::new(a.n, a.v.clone())?;
            let d = bounds::dual_degree(&c);
            Ok(Outcome::ok(
                format!("deg = {d}"),
                json!({ "dual_degree": d.to_string() }),
            ))
        }
        Command::Bezout(a) => {
            let v = bounds::bezout_bound(a.a, a.d, a.i);
            Ok(Outcome::ok(
                v.to_string(),
                json!({ "bezout_bound": v.to_string() }),
            ))
        }
        Command::ChiBound(a) => {
            let h = HodgeData::new(a.n, a.h.clone())?;
            let v = bounds::chi_upper_bound(&h);
            Ok(Outcome::ok(v.to_string(), json!({ "chi_upper_bound": v })))
        }
        Command::MappingBounds(a) => {
            let b = bounds::mapping_bounds(a.r, &a.k3, a.p)?;
            let text = format!(
                "N_max = {}\ndegX_max = {}\ndegY_max = {}\ngraph_deg_max = {}",
                b.n_max, b.deg_x_max, b.deg_y_max, b.graph_deg_max
            );
            Ok(Outcome::ok(text, to_value(&b)))
        }
        Command::Verify(a) => {
            let registry = CheckRegistry::standard();
            let cfg = SweepConfig {
                seed: a.seed.unwrap_or(DEFAULT_SEED),
                ..SweepConfig::default()
            };
            let reports = match &a.check {
                Some(name) => {
                    let check = registry.get(name).ok_or_else(|| {
                        Error::Malformed(format!(
                            "unknown check {name:?}; available: {}",
                            registry.names().join(", ")
                        ))
                    })?;
                    vec![check.run(&cfg)]
                }
                None => registry.run_all(&cfg),
            };
            let mut text = String::new();
            for r in &reports {
                writeln!(text, "{r}").expect("string");
            }
            Ok(Outcome {
                text,
                passed: reports.iter().all(|r| r.passed()),
                result: json!({ "reports": reports }),
            })
        }
    }
}

fn execute_bounds(cmd: &BoundsCommand) -> Result<Outcome> {
    match cmd {
        BoundsCommand::Hanamura(a) => {
            let m0 = bounds::hanamura_m0(a.r)?;
            Ok(Outcome::ok(format!("m0 = {m0}"), json!({ "m0": m0 })))
        }
        BoundsCommand::Kollar(a) => {
            let m = bounds::kollar_exponent(a.l)?;
            Ok(Outcome::ok(format!("m = {m}"), json!({ "m": m })))
        }
        BoundsCommand::Birationality(a) => {
            let b = bounds::birationality_exponent(a.c)?;
            let digits = digit_count(&b.m);
            let text = format!("R = {}\nm = {} ({digits} digits)", b.r, b.m);
            let mut result = to_value(&b);
            result["m_digits"] = json!(digits);
            Ok(Outcome::ok(text, result))
        }
        BoundsCommand::Certificate(a) => {
            let c = bounds::lower_bound_certificate(a.c)?;
            let verdict = if c.ok { "ok" } else { "not ok" };
            let text = format!(
                "lower_bound = {}, {verdict}\nlinear_term = {}\nl_term = {}\nclosed_form = {}",
                c.lower_bound, c.linear_term, c.l_term, c.closed_form
            );
            Ok(Outcome {
                text,
                passed: c.ok,
                result: to_value(&c),
            })
        }
    }
}

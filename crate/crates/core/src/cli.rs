//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
//! Output is buffered and written once at the end of each subcommand.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::coincidence::{
    bitangent_derivation, eval_exceptional, phi_pullback, pulled_back_relations, surface_excess_class,
    tangent_count, SegrePushTable,
};
use crate::dsl::eval::integer_json;
use crate::dsl::{evaluate_str, EvalError};
use crate::oracle::{
    self, field::Q, lines_meeting_four, plucker_from_points, quadric_ruling_configuration,
    tangent_configuration, tetrahedron_lines, PlueckerLine, ProjectivePoint, SolutionSet,
};
use crate::spaces::{space, verify_all_formulas, verify_formula_suite, FormulaReport, SpaceId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "schubert", version, about = "Exact Schubert calculus on P3, its dual, G(2,4) and the point-line flag space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpaceArg {
    #[value(name = "P3")]
    P3,
    #[value(name = "P3dual")]
    P3Dual,
    #[value(name = "G")]
    G,
    #[value(name = "PS")]
    PS,
}

impl From<SpaceArg> for SpaceId {
    fn from(s: SpaceArg) -> SpaceId {
        match s {
            SpaceArg::P3 => SpaceId::P3,
            SpaceArg::P3Dual => SpaceId::P3Dual,
            SpaceArg::G => SpaceId::G,
            SpaceArg::PS => SpaceId::PS,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Basis {
    #[default]
    Schubert,
    Monomial,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a condition expression in one space
    Eval {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value_t = Basis::Schubert)]
        basis: Basis,
        #[arg(long)]
        json: bool,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check the numbered identities
    VerifyFormulas {
        #[arg(long, value_enum)]
        space: Option<SpaceArg>,
        #[arg(long)]
        json: bool,
    },
    /// Tangent lines to a degree-N surface meeting a general line
    TangentCount {
        n: i64,
        #[arg(long)]
        json: bool,
    },
    /// Bitangent lines to a degree-N surface meeting a general line
    BitangentCount {
        n: i64,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exact geometric cross-checks
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Run every built-in consistency check
    Selftest,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Lines meeting four given lines
    FourLines {
        #[arg(long, conflicts_with = "input")]
        seed: Option<u64>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Tangent lines in a random pencil against a random surface
    Pencil {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Output {
    out: String,
    err: String,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn json(&mut self, v: &Value) {
        self.line(serde_json::to_string_pretty(v).expect("serializable"));
    }

    fn error(&mut self, s: impl AsRef<str>) {
        self.err.push_str(s.as_ref());
        self.err.push('\n');
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut o = Output {
        out: String::new(),
        err: String::new(),
    };
    let code = dispatch(cli.command, &mut o);
    let _ = out.write_all(o.out.as_bytes());
    let _ = err.write_all(o.err.as_bytes());
    code
}

fn dispatch(cmd: Command, o: &mut Output) -> i32 {
    match cmd {
        Command::Eval {
            space,
            basis,
            json,
            expr,
        } => cmd_eval(space.into(), basis, json, &expr, o),
        Command::VerifyFormulas { space, json } => {
            let report = match space {
                Some(s) => verify_formula_suite(crate::spaces::space(s.into())),
                None => verify_all_formulas(),
            };
            print_report(&report, json, o);
            if report.all_hold() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Command::TangentCount { n, json } => cmd_tangent(n, json, o),
        Command::BitangentCount { n, trace, json } => cmd_bitangent(n, trace, json, o),
        Command::Oracle { command } => match command {
            OracleCommand::FourLines { seed, input } => cmd_four_lines(seed, input, o),
            OracleCommand::Pencil { degree, seed } => cmd_pencil(degree, seed, o),
        },
        Command::Selftest => cmd_selftest(o),
    }
}

fn cmd_eval(id: SpaceId, basis: Basis, as_json: bool, text: &str, o: &mut Output) -> i32 {
    let r = match evaluate_str(text, id) {
        Ok(r) => r,
        Err(e) => {
            o.error(format!("error: {e}"));
            return match e {
                EvalError::Space(_) => EXIT_FAILURE,
                _ => EXIT_USAGE,
            };
        }
    };
    if as_json {
        o.json(&r.to_json());
        return EXIT_OK;
    }
    let shown = match basis {
        Basis::Schubert => &r.schubert,
        Basis::Monomial => &r.monomial,
    };
    match &r.top {
        Some(t) => o.line(format!("{shown} = {t}")),
        None => o.line(shown),
    }
    EXIT_OK
}

fn print_report(report: &FormulaReport, as_json: bool, o: &mut Output) {
    if as_json {
        let entries: Vec<Value> = report
            .entries
            .iter()
            .map(|e| {
                json!({
                    "label": e.label,
                    "space": e.space.name(),
                    "sides": e.sides,
                    "normal_forms": e.normal_forms,
                    "holds": e.holds,
                })
            })
            .collect();
        o.json(&json!({"all_hold": report.all_hold(), "formulas": entries}));
        return;
    }
    for e in &report.entries {
        o.line(format!(
            "{:>4}  {:<6}  {:<48}  {}",
            format!("{})", e.label),
            e.space.name(),
            e.sides.join(" = "),
            if e.holds { "ok" } else { "FAIL" }
        ));
    }
    let failed = report.failures().count();
    o.line(format!(
        "{} formulas, {} failed",
        report.entries.len(),
        failed
    ));
}

fn cmd_tangent(n: i64, as_json: bool, o: &mut Output) -> i32 {
    let count = match tangent_count(n) {
        Ok(c) => c,
        Err(e) => {
            o.error(format!("error: {e}"));
            return EXIT_USAGE;
        }
    };
    let excess = surface_excess_class(n).expect("n checked above");
    let gs = space(SpaceId::G).symbol_class("g_s").expect("g_s on G");
    let pulled = phi_pullback(&gs).expect("g_s lives on G");
    let product = &excess * &pulled;
    let trace = vec![
        format!("excess class: {excess}"),
        format!("pullback of g_s: {pulled}"),
        format!("product: {product}"),
        format!("evaluation on the exceptional divisor: {}", eval_exceptional(&product)),
    ];
    if as_json {
        o.json(&json!({"n": n, "count": integer_json(&count), "trace": trace}));
    } else {
        o.line(count.to_string());
    }
    EXIT_OK
}

fn cmd_bitangent(n: i64, show_trace: bool, as_json: bool, o: &mut Output) -> i32 {
    let d = match bitangent_derivation(n) {
        Ok(d) => d,
        Err(e) => {
            o.error(format!("error: {e}"));
            return EXIT_USAGE;
        }
    };
    if as_json {
        o.json(&json!({"n": n, "count": integer_json(&d.count), "trace": d.trace}));
        return EXIT_OK;
    }
    if show_trace {
        for (i, step) in d.trace.iter().enumerate() {
            o.line(format!("{}. {}", i + 1, step.step));
            o.line(format!("   {}", step.expression));
        }
    }
    o.line(d.count.to_string());
    EXIT_OK
}

fn parse_rational(v: &Value) -> Result<Q, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Q::from_integer(BigInt::from(i)))
            .ok_or_else(|| format!("not an integer: {n}")),
        Value::String(s) => s.trim().parse::<Q>().map_err(|e| format!("bad rational `{s}`: {e}")),
        other => Err(format!("expected a number or rational string, got {other}")),
    }
}

fn parse_vector<const N: usize>(v: &Value) -> Result<[Q; N], String> {
    let arr = v.as_array().ok_or("expected an array")?;
    if arr.len() != N {
        return Err(format!("expected {N} coordinates, got {}", arr.len()));
    }
    let items: Vec<Q> = arr.iter().map(parse_rational).collect::<Result<_, _>>()?;
    Ok(items.try_into().expect("length checked"))
}

/// `{"lines": [ {"plucker": [..6..]} | {"points": [[..4..], [..4..]]} ×4 ]}`;
/// a bare array of lines is accepted too.
pub fn parse_four_lines(text: &str) -> Result<[PlueckerLine; 4], String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let list = match &v {
        Value::Array(a) => a,
        Value::Object(m) => m
            .get("lines")
            .and_then(Value::as_array)
            .ok_or("missing `lines` array")?,
        _ => return Err("expected an object with `lines`".into()),
    };
    if list.len() != 4 {
        return Err(format!("expected 4 lines, got {}", list.len()));
    }
    let mut out = Vec::with_capacity(4);
    for (i, item) in list.iter().enumerate() {
        let line = if let Some(p) = item.get("plucker") {
            PlueckerLine::new(parse_vector::<6>(p)?).map_err(|e| format!("line {i}: {e}"))?
        } else if let Some(pts) = item.get("points").and_then(Value::as_array) {
            if pts.len() != 2 {
                return Err(format!("line {i}: expected two points"));
            }
            let a = ProjectivePoint::new(parse_vector::<4>(&pts[0])?).map_err(|e| format!("line {i}: {e}"))?;
            let b = ProjectivePoint::new(parse_vector::<4>(&pts[1])?).map_err(|e| format!("line {i}: {e}"))?;
            plucker_from_points(&a, &b).map_err(|e| format!("line {i}: {e}"))?
        } else {
            return Err(format!("line {i}: expected `plucker` or `points`"));
        };
        out.push(line);
    }
    Ok(out.try_into().expect("four lines"))
}

fn cmd_four_lines(seed: Option<u64>, input: Option<PathBuf>, o: &mut Output) -> i32 {
    let lines = match input {
        Some(path) => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    o.error(format!("error: cannot read {}: {e}", path.display()));
                    return EXIT_USAGE;
                }
            };
            match parse_four_lines(&text) {
                Ok(l) => l,
                Err(e) => {
                    o.error(format!("error: {e}"));
                    return EXIT_USAGE;
                }
            }
        }
        None => oracle::random_four_lines(&mut oracle::rng(seed.unwrap_or(0))),
    };
    match lines_meeting_four(&lines) {
        Ok(set) => {
            let mut v = set.to_json();
            v["input"] = json!(lines.iter().map(PlueckerLine::to_json).collect::<Vec<_>>());
            o.json(&v);
            EXIT_OK
        }
        Err(e) => {
            o.error(format!("error: {e}"));
            EXIT_USAGE
        }
    }
}

fn cmd_pencil(degree: u32, seed: u64, o: &mut Output) -> i32 {
    if degree == 0 {
        o.error("error: degree must be at least 1");
        return EXIT_USAGE;
    }
    let (inst, count) = oracle::random_pencil_instance(degree, &mut oracle::rng(seed));
    let expected = (degree * (degree - 1)) as usize;
    let surface: Vec<Value> = inst
        .surface
        .terms()
        .iter()
        .map(|(e, c)| json!({"exponents": e, "coefficient": c.to_string()}))
        .collect();
    o.json(&json!({
        "degree": degree,
        "seed": seed,
        "count": count.count,
        "expected": expected,
        "surface": surface,
        "plane": inst.plane.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "vertex": inst.vertex.coords().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "discriminant": count.discriminant.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
    }));
    if count.count == expected {
        EXIT_OK
    } else {
        o.error(format!("count {} differs from n(n-1) = {expected}", count.count));
        EXIT_FAILURE
    }
}

/// Named consistency checks run by `selftest`.
pub fn selftest_checks() -> Vec<(String, bool)> {
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut check = |name: &str, ok: bool| checks.push((name.to_string(), ok));

    check("numbered formulas", verify_all_formulas().all_hold());
    check("ranks of P3", space(SpaceId::P3).ring().ranks() == [1, 1, 1, 1]);
    check("ranks of G", space(SpaceId::G).ring().ranks() == [1, 1, 2, 1, 1]);
    check("ranks of PS", space(SpaceId::PS).ring().ranks() == [1, 2, 3, 3, 2, 1]);
    check(
        "g^4 = 2 on G",
        space(SpaceId::G).eval_str("g^4").map(|e| e.evaluate_top()) == Ok(BigInt::from(2)),
    );
    check(
        "pullback respects the relations of G",
        pulled_back_relations().iter().all(|r| r.is_zero()),
    );
    let table = SegrePushTable::new();
    check(
        "exceptional pushforwards",
        (2..=5u32).map(|k| table.coefficient(k)).collect::<Vec<_>>()
            == [1, 4, 10, 20].map(BigInt::from),
    );
    check(
        "tangent counts n(n-1), n = 1..8",
        (1..=8i64).all(|n| tangent_count(n) == Ok(BigInt::from(n * (n - 1)))),
    );
    check(
        "bitangent counts, n = 1..8",
        (1..=8i64).all(|n| {
            bitangent_derivation(n).map(|d| d.count)
                == Ok(BigInt::from(n * (n - 2) * (n - 3) * (n + 3) / 2))
        }),
    );
    let pts = oracle::random_tetrahedron(&mut oracle::rng(1));
    check(
        "tetrahedron configuration",
        tetrahedron_lines(&pts)
            .ok()
            .and_then(|(lines, diag)| match lines_meeting_four(&lines) {
                Ok(SolutionSet::Finite(s)) => Some(
                    s.len() == 2
                        && s.iter().all(|(l, m)| *m == 1 && l.as_rational().is_some_and(|l| diag.contains(&l))),
                ),
                _ => None,
            })
            .unwrap_or(false),
    );
    check(
        "one ruling of a quadric",
        lines_meeting_four(&quadric_ruling_configuration()) == Ok(SolutionSet::Infinite),
    );
    let (lines, expect) = tangent_configuration();
    check(
        "three rulings and a tangent",
        match lines_meeting_four(&lines) {
            Ok(SolutionSet::Finite(s)) => {
                s.len() == 1 && s[0].1 == 2 && s[0].0.as_rational().as_ref() == Some(&expect)
            }
            _ => false,
        },
    );
    let mut r = oracle::rng(0);
    check(
        "random four-line instances",
        (0..20).all(|_| {
            lines_meeting_four(&oracle::random_four_lines(&mut r))
                .map(|s| s.total_multiplicity() == Some(2))
                .unwrap_or(false)
        }),
    );
    let mut r = oracle::rng(0);
    check(
        "random pencils, n = 1..3",
        (1..=3u32).all(|n| oracle::random_pencil_instance(n, &mut r).1.count == (n * (n - 1)) as usize),
    );
    checks
}

fn cmd_selftest(o: &mut Output) -> i32 {
    let checks = selftest_checks();
    let mut text = String::new();
    for (name, ok) in &checks {
        let _ = writeln!(text, "{} {name}", if *ok { "ok  " } else { "FAIL" });
    }
    o.out.push_str(&text);
    if checks.iter().all(|(_, ok)| *ok) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

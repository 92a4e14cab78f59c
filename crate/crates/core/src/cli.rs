//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure (with a witness on
//! stdout), 2 input error, 3 resource ceiling exceeded.

use std::fmt::Write as _;
use std::io::Read as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::complexes::verify_chain_map;
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_with, ideal_equal_up_to_sign, ideal_equal_with, GroebnerConfig, Side,
    DEFAULT_MAX_PAIRS,
};
use crate::json::{self, KoszulInput, MatrixInput, UnprojectInput, VerifyInput};
use crate::linalg::{determinant, pfaffian_even, pfaffians_odd, wedge};
use crate::ring::{Ctx, MonomialOrder};
use crate::unproj::{unproject, Intermediate, Kind, DEFAULT_TNAME};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "unproj", version, about = "Exact unprojection constructions and checks")]
struct Cli {
    /// Print machine-readable JSON instead of canonical text.
    #[arg(long, global = true)]
    json: bool,

    /// Monomial order, overriding the input's "order".
    #[arg(long, global = true, value_enum)]
    order: Option<OrderArg>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => MonomialOrder::Grevlex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Ci,
    Tom,
    Jerry,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ci => Kind::Ci,
            KindArg::Tom => Kind::Tom,
            KindArg::Jerry => Kind::Jerry,
        }
    }
}

#[derive(Debug, Args)]
struct InputArg {
    /// JSON input: a file path, `-` for stdin, or an inline document
    /// starting with `{`.
    #[arg(long, short)]
    input: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pfaffian of an even skew matrix, or the k Pfaffians of an odd one.
    Pfaffian(InputArg),
    /// Determinant of a square matrix.
    Det(InputArg),
    /// Signed maximal minors of an r x (r+1) matrix.
    Wedge(InputArg),
    /// Koszul complex of "w", or the Pfaffian complex of "skew".
    Koszul(InputArg),
    /// Build an unprojection ideal.
    Unproject {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Name of the new variable.
        #[arg(long)]
        tname: Option<String>,
        /// Also print intermediate matrices and lists.
        #[arg(long)]
        show_work: bool,
    },
    /// Membership, ideal equality and chain-map checks.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(Debug, Args)]
struct GroebnerArgs {
    /// Ceiling on processed critical pairs.
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
    max_pairs: usize,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Is each polynomial in the ideal?
    Member {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        groebner: GroebnerArgs,
    },
    /// Do "left" and "right" generate the same ideal?
    Equal {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        groebner: GroebnerArgs,
        /// Also accept equality after T -> -T on the right.
        #[arg(long = "allow-T-sign-flip")]
        allow_sign_flip: bool,
        /// Variable flipped by --allow-T-sign-flip (default: input "tvar", else T).
        #[arg(long)]
        tname: Option<String>,
    },
    /// Does the vertical family commute with the differentials?
    ChainMap {
        #[command(flatten)]
        input: InputArg,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::IdentityFailure(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_INPUT,
    }
}

/// Runs the CLI on `args` (including the program name) without touching
/// the process state other than reading input files or stdin.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = Output {
        json: cli.json,
        stdout: String::new(),
        stderr: String::new(),
        code: EXIT_OK,
    };
    if let Err(e) = dispatch(&cli, &mut out) {
        out.code = exit_code(&e);
        let _ = writeln!(out.stderr, "error: {e}");
    }
    Outcome {
        code: out.code,
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

struct Output {
    json: bool,
    stdout: String,
    stderr: String,
    code: i32,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }

    fn value(&mut self, v: Value) {
        let text = serde_json::to_string_pretty(&v).expect("serialisable");
        self.line(text);
    }

    fn warn(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.stderr, "warning: {}", s.as_ref());
    }
}

fn read_input(arg: &InputArg) -> Result<(String, String)> {
    let spec = arg.input.trim_start();
    if spec.starts_with('{') {
        return Ok(("<inline>".into(), arg.input.clone()));
    }
    if arg.input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("<stdin>: {e}")))?;
        return Ok(("<stdin>".into(), s));
    }
    let text = std::fs::read_to_string(&arg.input)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", arg.input)))?;
    Ok((arg.input.clone(), text))
}

fn load<T: for<'de> serde::Deserialize<'de>>(arg: &InputArg) -> Result<T> {
    let (source, text) = read_input(arg)?;
    json::from_str(&source, &text)
}

fn order(cli: &Cli) -> Option<MonomialOrder> {
    cli.order.map(Into::into)
}

fn dispatch(cli: &Cli, out: &mut Output) -> Result<()> {
    match &cli.command {
        Command::Pfaffian(arg) => {
            let m: MatrixInput = load(arg)?;
            let ctx = json::ring(&m.vars, m.order.as_deref(), order(cli))?;
            let a = m.spec().skew(&ctx, "matrix")?;
            if a.size() % 2 == 0 {
                let pf = pfaffian_even(&a)?;
                if out.json {
                    out.value(json!({ "pfaffian": pf.to_string() }));
                } else {
                    out.line(pf.to_string());
                }
            } else {
                let pfs = pfaffians_odd(&a)?;
                if out.json {
                    out.value(json!({ "pfaffians": json::texts(&pfs) }));
                } else {
                    for p in &pfs {
                        out.line(p.to_string());
                    }
                }
            }
        }
        Command::Det(arg) => {
            let m: MatrixInput = load(arg)?;
            let ctx = json::ring(&m.vars, m.order.as_deref(), order(cli))?;
            let d = determinant(&m.spec().matrix(&ctx, "matrix")?)?;
            if out.json {
                out.value(json!({ "det": d.to_string() }));
            } else {
                out.line(d.to_string());
            }
        }
        Command::Wedge(arg) => {
            let m: MatrixInput = load(arg)?;
            let ctx = json::ring(&m.vars, m.order.as_deref(), order(cli))?;
            let w = wedge(&m.spec().matrix(&ctx, "matrix")?)?;
            if out.json {
                out.value(json!({ "wedge": json::texts(&w) }));
            } else {
                for p in &w {
                    out.line(p.to_string());
                }
            }
        }
        Command::Koszul(arg) => {
            let k: KoszulInput = load(arg)?;
            let ctx = json::ring(&k.vars, k.order.as_deref(), order(cli))?;
            let c = k.build(&ctx)?;
            if out.json {
                out.value(json::complex_value(&c));
            } else {
                for (i, d) in c.diffs().iter().enumerate() {
                    out.line(format!("d{} ({}x{}):", i + 1, d.rows(), d.cols()));
                    out.line(d.to_string());
                }
                out.line("d*d = 0: ok");
            }
        }
        Command::Unproject {
            input,
            kind,
            tname,
            show_work,
        } => {
            let u: UnprojectInput = load(input)?;
            let ctx = json::ring(&u.vars, u.order.as_deref(), order(cli))?;
            let kind = u.kind(kind.map(Into::into))?;
            let data = u.build(&ctx, kind)?;
            let tname = tname
                .clone()
                .or_else(|| u.tname.clone())
                .unwrap_or_else(|| DEFAULT_TNAME.to_string());
            let r = unproject(&data, &tname)?;
            if out.json {
                out.value(json::unprojection_value(&r, *show_work));
            } else {
                if *show_work {
                    out.line(format!("# ring: {}", r.context().names().join(", ")));
                    for (name, item) in &r.work {
                        out.line(format!("# {name}"));
                        match item {
                            Intermediate::Matrix(m) => out.line(m.to_string()),
                            Intermediate::List(l) => {
                                for p in l {
                                    out.line(p.to_string());
                                }
                            }
                        }
                    }
                    out.line("# ideal");
                }
                for g in r.ideal.gens() {
                    out.line(g.to_string());
                }
            }
        }
        Command::Verify { what } => verify(cli, what, out)?,
    }
    Ok(())
}

fn warn_large(ctx: &Ctx, out: &mut Output) {
    if ctx.len() > crate::groebner::SOFT_VARIABLE_LIMIT {
        out.warn(format!(
            "{} variables exceeds the soft limit of {}; Groebner computations may be slow",
            ctx.len(),
            crate::groebner::SOFT_VARIABLE_LIMIT
        ));
    }
}

fn verify(cli: &Cli, what: &VerifyCommand, out: &mut Output) -> Result<()> {
    match what {
        VerifyCommand::Member { input, groebner } => {
            let v: VerifyInput = load(input)?;
            let ctx = json::ring(&v.vars, v.order.as_deref(), order(cli))?;
            let (ideal, ps) = v.member(&ctx)?;
            warn_large(&ctx, out);
            let config = GroebnerConfig {
                max_pairs: groebner.max_pairs,
            };
            let gb = buchberger_with(&ideal, &config)?;
            let mut results = Vec::new();
            for p in &ps {
                results.push((p, gb.normal_form(p)?));
            }
            let all = results.iter().all(|(_, nf)| nf.is_zero());
            if out.json {
                let items: Vec<Value> = results
                    .iter()
                    .map(|(p, nf)| {
                        json!({
                            "poly": p.to_string(),
                            "member": nf.is_zero(),
                            "normal_form": {
                                "numerator": nf.numerator().to_string(),
                                "denominator": nf.denominator().to_string(),
                            },
                        })
                    })
                    .collect();
                out.value(json!({ "all_members": all, "results": items }));
            } else {
                for (p, nf) in &results {
                    if nf.is_zero() {
                        out.line(format!("member: {p}"));
                    } else {
                        out.line(format!("not a member: {p}, normal form: {nf}"));
                    }
                }
            }
            if !all {
                out.code = EXIT_VERIFY_FAILED;
            }
        }
        VerifyCommand::Equal {
            input,
            groebner,
            allow_sign_flip,
            tname,
        } => {
            let v: VerifyInput = load(input)?;
            let ctx = json::ring(&v.vars, v.order.as_deref(), order(cli))?;
            let (left, right) = v.equal(&ctx)?;
            warn_large(&ctx, out);
            let config = GroebnerConfig {
                max_pairs: groebner.max_pairs,
            };
            let tvar = tname
                .clone()
                .or_else(|| v.tvar.clone())
                .unwrap_or_else(|| DEFAULT_TNAME.to_string());
            let cmp = if *allow_sign_flip {
                if ctx.index_of(&tvar).is_none() {
                    return Err(Error::InvalidInput(format!(
                        "tvar: `{tvar}` is not a declared variable"
                    )));
                }
                ideal_equal_up_to_sign(&left, &right, &tvar, &config)?
            } else {
                ideal_equal_with(&left, &right, &config)?
            };
            if out.json {
                let witness = cmp.witness.as_ref().map(|w| {
                    json!({
                        "side": if w.side == Side::Left { "left" } else { "right" },
                        "index": w.index,
                        "generator": w.generator.to_string(),
                        "normal_form": {
                            "numerator": w.normal_form.numerator().to_string(),
                            "denominator": w.normal_form.denominator().to_string(),
                        },
                    })
                });
                out.value(json!({
                    "equal": cmp.equal,
                    "sign_flipped": cmp.sign_flipped,
                    "tvar": if *allow_sign_flip { Some(tvar.clone()) } else { None },
                    "witness": witness,
                }));
            } else if cmp.equal && cmp.sign_flipped {
                out.line(format!("equal after {tvar} -> -{tvar}"));
            } else if cmp.equal {
                out.line("equal");
            } else {
                let w = cmp.witness.as_ref().expect("witness on inequality");
                let (side, other) = match w.side {
                    Side::Left => ("left", "right"),
                    Side::Right => ("right", "left"),
                };
                out.line(format!(
                    "not equal: {side}[{}] = {} has normal form {} modulo {other}",
                    w.index, w.generator, w.normal_form
                ));
            }
            if !cmp.equal {
                out.code = EXIT_VERIFY_FAILED;
            }
        }
        VerifyCommand::ChainMap { input } => {
            let v: VerifyInput = load(input)?;
            let ctx = json::ring(&v.vars, v.order.as_deref(), order(cli))?;
            let (source, target, verticals) = v.chain_map(&ctx)?;
            let report = verify_chain_map(&source, &target, &verticals)?;
            if out.json {
                out.value(json::report_value(&report));
            } else {
                out.stdout.push_str(&report.to_string());
                if !out.stdout.ends_with('\n') {
                    out.stdout.push('\n');
                }
            }
            if !report.pass() {
                out.code = EXIT_VERIFY_FAILED;
            }
        }
    }
    Ok(())
}

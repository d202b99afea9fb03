//! `hecke5`: command-line front end for the hecke5 library.
//!
//! Every subcommand is a thin adapter over one library call. Text output is
//! the default; `--json` prints a single JSON document carrying a `schema`
//! field. Exit codes: 0 success, 1 mathematical failure, 2 usage error.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke5::formula::{index_formula, sl2_order};
use hecke5::hecke::{complete_column, is_member, reduce_fraction};
use hecke5::ideal::{factor_ideal, IdealHNF};
use hecke5::parse::{parse_element, parse_hnf, parse_matrix};
use hecke5::quotient::{build_quotient, coset_words, index_g_from, DEFAULT_CAP};
use hecke5::ring::{divmod_pseudo, gcd_pseudo, RingElt};
use hecke5::verify::{
    verify_all, verify_lemma_a, verify_lemma_b, verify_paper_identities, verify_section7,
    VerificationReport, LEMMA_A_CASES,
};
use hecke5::Error;
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: &str = "hecke5/v1";

#[derive(Parser)]
#[command(
    name = "hecke5",
    version,
    about = "Exact computations in the Hecke group H5 over Z[L], L = 2cos(pi/5)"
)]
#[command(after_help = "Elements are written a+bL (e.g. 3+2L, -4L-2, L, 0). \
Matrices are [[a,b],[c,d]]. Words use S, s = S^-1, T, t = T^-1.")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LevelArg {
    /// Level ideal given by a generator, e.g. "2+L" or 7.
    #[arg(long, allow_hyphen_values = true)]
    level: Option<String>,
    /// Level ideal as an HNF triple d1,k,d2.
    #[arg(long)]
    hnf: Option<String>,
}

impl LevelArg {
    fn ideal(&self) -> Result<IdealHNF, Failure> {
        match (&self.level, &self.hnf) {
            (Some(g), _) => Ok(IdealHNF::from_generator(&element(g)?)?),
            (None, Some(h)) => parse_hnf(h).map_err(|e| Failure::usage(h, e)),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    All,
    LemmaA,
    LemmaB,
    Section7,
    Identities,
}

#[derive(Subcommand)]
enum Command {
    /// Norm |a² + ab − b²| of an element.
    Norm {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Prime ideal factorization of (x), or of --hnf.
    Factor {
        #[arg(allow_hyphen_values = true, required_unless_present = "hnf")]
        x: Option<String>,
        #[arg(long, conflicts_with = "x")]
        hnf: Option<String>,
    },
    /// Pseudo-Euclidean division a = (qL)b + r.
    Divmod {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Iterated pseudo-Euclidean division down to the last nonzero remainder.
    Gcd {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Reduced factor e(a/b) with an H5 completion and word.
    Efactor {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Membership of a matrix in H5.
    Member {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// An H5 matrix with first column (a, c).
    Complete {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Index [H5 : H(A)] by enumeration, closed form, or both.
    Index {
        #[command(flatten)]
        level: LevelArg,
        #[arg(long, conflicts_with_all = ["formula", "both"])]
        enumerate: bool,
        #[arg(long, conflicts_with = "both")]
        formula: bool,
        #[arg(long)]
        both: bool,
        /// Maximum number of quotient elements to enumerate.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Write one `word<TAB>matrix` line per element of H5 / H(A).
    Cosets {
        #[command(flatten)]
        level: LevelArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run the finite verifications.
    Verify {
        #[arg(value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// |SL(2, Z[L]/A)|.
    Sl2order {
        #[command(flatten)]
        level: LevelArg,
    },
}

/// An error with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(input: &str, e: Error) -> Self {
        let msg = match &e {
            Error::Parse { pos, .. } => format!("{e}\n  {input}\n  {:>1$}", "^", pos + 1),
            _ => e.to_string(),
        };
        Failure { code: 2, msg }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse { .. }) {
            2
        } else {
            1
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            msg: e.to_string(),
        }
    }
}

fn element(s: &str) -> Result<RingElt, Failure> {
    parse_element(s).map_err(|e| Failure::usage(s, e))
}

/// What a command produced: a JSON body, its text rendering, and whether
/// the mathematical outcome counts as success.
struct Output {
    kind: &'static str,
    body: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(kind: &'static str, body: impl Serialize, text: String) -> Self {
        Output {
            kind,
            body: serde_json::to_value(body).expect("serializable"),
            text,
            ok: true,
        }
    }
}

fn hnf_json(i: &IdealHNF) -> Value {
    json!([i.d1, i.k, i.d2])
}

fn level_json(i: &IdealHNF) -> Value {
    json!({ "hnf": hnf_json(i), "norm": i.norm() })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    Ok(match &cli.command {
        Command::Norm { x } => {
            let x = element(x)?;
            let n = x.norm();
            Output::new(
                "norm",
                json!({ "element": x, "norm": n.to_string(), "signed_norm": x.signed_norm().to_string() }),
                n.to_string(),
            )
        }
        Command::Factor { x, hnf } => {
            let ideal = match (x, hnf) {
                (Some(x), _) => IdealHNF::from_generator(&element(x)?)?,
                (None, Some(h)) => parse_hnf(h).map_err(|e| Failure::usage(h, e))?,
                (None, None) => unreachable!("clap requires one"),
            };
            let factors = factor_ideal(&ideal)?;
            let list: Vec<Value> = factors
                .iter()
                .map(|f| {
                    json!({
                        "hnf": hnf_json(&f.prime),
                        "generator": f.generator,
                        "exponent": f.exponent,
                        "degree": f.residue_degree,
                        "ramified": f.ramified,
                    })
                })
                .collect();
            let text = factors
                .iter()
                .map(|f| {
                    let mut s = format!("({})", f.generator);
                    if f.exponent > 1 {
                        s += &format!("^{}", f.exponent);
                    }
                    s
                })
                .collect::<Vec<_>>()
                .join(" ");
            let text = if text.is_empty() { "(1)".into() } else { text };
            Output::new(
                "factor",
                json!({ "level": level_json(&ideal), "factors": list }),
                text,
            )
        }
        Command::Divmod { a, b } => {
            let (a, b) = (element(a)?, element(b)?);
            let d = divmod_pseudo(&a, &b)?;
            Output::new(
                "divmod",
                json!({ "a": a, "b": b, "q": d.q.to_string(), "r": d.r }),
                format!("q = {}\nr = {}", d.q, d.r),
            )
        }
        Command::Gcd { a, b } => {
            let (a, b) = (element(a)?, element(b)?);
            let g = gcd_pseudo(&a, &b)?;
            let steps: Vec<String> = g.steps.iter().map(|q| q.to_string()).collect();
            let text = format!("g = {}\nquotients = [{}]", g.g, steps.join(", "));
            Output::new(
                "gcd",
                json!({ "a": a, "b": b, "g": g.g, "quotients": steps, "unit": g.g.is_unit() }),
                text,
            )
        }
        Command::Efactor { a, b } => {
            let (a, b) = (element(a)?, element(b)?);
            let r = reduce_fraction(&a, &b)?;
            let text = format!(
                "e = {}\ncompletion = {}\nword = {}",
                r.e, r.completion, r.word
            );
            Output::new("efactor", &r, text)
        }
        Command::Member { matrix } => {
            let m = parse_matrix(matrix).map_err(|e| Failure::usage(matrix, e))?;
            let member = is_member(&m);
            Output::new(
                "member",
                json!({ "matrix": m, "member": member }),
                member.to_string(),
            )
        }
        Command::Complete { a, c } => {
            let (a, c) = (element(a)?, element(c)?);
            let m = complete_column(&a, &c)?;
            Output::new(
                "complete",
                json!({ "a": a, "c": c, "matrix": m }),
                m.to_string(),
            )
        }
        Command::Index {
            level,
            enumerate: _,
            formula,
            both,
            cap,
        } => index(&level.ideal()?, *formula, *both, *cap)?,
        Command::Cosets { level, out, cap } => {
            let ideal = level.ideal()?;
            log::info!("enumerating H5 / H({ideal})");
            let q = build_quotient(&ideal, *cap)?;
            let words = coset_words(&q);
            let mut w = BufWriter::new(File::create(out)?);
            for (m, word) in &words {
                writeln!(w, "{word}\t{}", q.ring().mat_lift(m))?;
            }
            w.flush()?;
            Output::new(
                "cosets",
                json!({ "level": level_json(&ideal), "count": words.len(), "out": out }),
                format!("{} cosets written to {}", words.len(), out.display()),
            )
        }
        Command::Verify { which } => {
            let reports: Vec<VerificationReport> = match which {
                Which::All => verify_all(),
                Which::LemmaA => LEMMA_A_CASES
                    .iter()
                    .map(|&(p, n)| verify_lemma_a(p, n))
                    .collect(),
                Which::LemmaB => vec![verify_lemma_b()],
                Which::Section7 => vec![verify_section7()],
                Which::Identities => vec![verify_paper_identities()],
            };
            let ok = reports.iter().all(|r| r.passed);
            let text = reports.iter().map(|r| r.to_string()).collect::<String>();
            let mut out = Output::new(
                "verify",
                json!({ "passed": ok, "reports": reports }),
                text.trim_end().to_string(),
            );
            out.ok = ok;
            out
        }
        Command::Sl2order { level } => {
            let ideal = level.ideal()?;
            let n = sl2_order(&ideal)?;
            Output::new(
                "sl2order",
                json!({ "level": level_json(&ideal), "sl2_order": n.to_string() }),
                n.to_string(),
            )
        }
    })
}

fn index(ideal: &IdealHNF, formula: bool, both: bool, cap: usize) -> Result<Output, Failure> {
    let full = sl2_order(ideal)?;
    let closed = if formula || both {
        Some(index_formula(ideal)?)
    } else {
        None
    };
    let enumerated = if formula {
        None
    } else {
        log::info!("enumerating H5 / H({ideal})");
        Some(build_quotient(ideal, cap)?.order() as u64)
    };

    if let (Some(r), None) = (&closed, enumerated) {
        let text = format!("index_h = {} (formula)", r.total);
        return Ok(Output::new("index_formula", r, text));
    }
    let index_h = enumerated.expect("enumeration ran");
    let mut body = json!({
        "level": level_json(ideal),
        "norm": ideal.norm(),
        "index_h": index_h.to_string(),
        "index_g": index_g_from(ideal, index_h)?.to_string(),
        "sl2_order": full.to_string(),
        "surjective": full == index_h.into(),
    });
    let mut text = format!(
        "index_h = {index_h}\nindex_g = {}\nsl2_order = {full}\nsurjective = {}",
        body["index_g"].as_str().unwrap_or_default(),
        body["surjective"]
    );
    let mut ok = true;
    if let Some(r) = closed {
        let agrees = r.total == index_h.into();
        text += &format!("\nformula = {}\nagrees = {agrees}", r.total);
        body["formula"] = serde_json::to_value(&r).expect("serializable");
        body["agrees"] = json!(agrees);
        ok = agrees;
    }
    let mut out = Output::new("index", body, text);
    out.ok = ok;
    Ok(out)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let mut doc = json!({ "schema": SCHEMA, "command": out.kind });
                if let (Value::Object(d), Value::Object(b)) = (&mut doc, out.body) {
                    d.extend(b);
                }
                emit(&serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                emit(&out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(f) => {
            if cli.json {
                let doc = json!({ "schema": SCHEMA, "error": f.msg, "exit_code": f.code });
                emit(&serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

//! The `adjcalc` command line, as a library function so it can be driven
//! in-process.
//!
//! Exit codes: 0 success or `equal`, 1 `distinct`, 2 `unknown`, 3 usage,
//! parse or type error.

use std::fmt::Write as _;
use std::io::Read;

use adjcalc::diagram::Mode;
use adjcalc::text::SourceSpan;
use adjcalc::theory::search::sound_mode;
use adjcalc::{
    eq_search, interp, parse, print, render_ascii, render_svg, semantic_eq, translate, type_of,
    EqOptions, EqVerdict, Level, ParseError, QueryError, Sig, Term, Theory, Witness,
    DEFAULT_BUDGET,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISTINCT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

pub const BUDGET_ENV: &str = "ADJCALC_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "adjcalc",
    version,
    about = "Arrow terms for free self-adjunctions and involutive adjunctions"
)]
struct Cli {
    /// Machine-readable JSON output, one document per result.
    #[arg(long, global = true)]
    json: bool,
    /// Read inputs from standard input, one per line, instead of arguments.
    /// For `eq` each line is `TERM = TERM`.
    #[arg(long, global = true)]
    stdin: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SigArg {
    #[value(name = "self")]
    SelfAdj,
    Inv,
}

impl From<SigArg> for Sig {
    fn from(s: SigArg) -> Sig {
        match s {
            SigArg::SelfAdj => Sig::SelfAdj,
            SigArg::Inv => Sig::Involutive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Plain,
    K,
    J,
    Triv,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Plain => Level::Plain,
            LevelArg::K => Level::K,
            LevelArg::J => Level::J,
            LevelArg::Triv => Level::Triv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Count,
    Drop,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Count => Mode::Count,
            ModeArg::Drop => Mode::Drop,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Typecheck a term and print its type.
    Check {
        #[arg(long, value_enum)]
        sig: SigArg,
        term: Option<String>,
    },
    /// Decide or search for an equality between two terms.
    Eq {
        #[arg(long, value_enum)]
        sig: SigArg,
        #[arg(long, value_enum)]
        theory: LevelArg,
        /// Expanded-node budget [default: $ADJCALC_BUDGET or 100000].
        #[arg(long)]
        budget: Option<usize>,
        /// Print the proof (or diagram witness) after the verdict.
        #[arg(long)]
        emit_proof: bool,
        /// In the trivial theory, search for a rewrite proof.
        #[arg(long)]
        with_proof: bool,
        left: Option<String>,
        right: Option<String>,
    },
    /// Print the diagram of a term as JSON.
    Normalize {
        #[arg(long, value_enum)]
        sig: SigArg,
        #[arg(long, value_enum, default_value = "count")]
        mode: ModeArg,
        term: Option<String>,
    },
    /// Translate a term into the other signature.
    Translate {
        #[arg(long, value_enum)]
        to: SigArg,
        term: Option<String>,
    },
    /// Draw the diagram of a term.
    Render {
        #[arg(long, value_enum)]
        sig: SigArg,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        #[arg(long, value_enum, default_value = "count")]
        mode: ModeArg,
        term: Option<String>,
    },
}

/// Everything a run produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failed input, reported as one diagnostic line.
struct Failure {
    what: String,
    span: SourceSpan,
    message: String,
}

impl Failure {
    fn parse(what: &str, e: ParseError) -> Self {
        Failure {
            what: what.to_string(),
            span: e.span(),
            message: e.to_string(),
        }
    }

    fn whole(what: &str, input: &str, message: String) -> Self {
        Failure {
            what: what.to_string(),
            span: SourceSpan::new(0, input.len()),
            message,
        }
    }

    fn line(&self) -> String {
        format!("error: {} [{}]: {}", self.what, self.span, self.message)
    }
}

/// One result: exit code plus text or JSON.
struct Answer {
    code: i32,
    text: String,
    json: Value,
}

impl Answer {
    fn ok(text: String, json: Value) -> Self {
        Answer {
            code: EXIT_OK,
            text,
            json,
        }
    }
}

/// Runs the command line `argv` (including the program name), reading
/// `--stdin` input from `input`.
pub fn run<I, S>(argv: I, input: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Output {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: first_line(&text),
                },
            };
        }
    };
    let mut out = Output::default();
    let budget = match resolve_budget(&cli.command) {
        Ok(b) => b,
        Err(message) => {
            out.code = EXIT_ERROR;
            out.stderr = format!("error: {message}\n");
            return out;
        }
    };
    if cli.stdin {
        let mut text = String::new();
        if let Err(e) = input.read_to_string(&mut text) {
            out.code = EXIT_ERROR;
            out.stderr = format!("error: cannot read standard input: {e}\n");
            return out;
        }
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let args = match split_line(&cli.command, line) {
                Ok(args) => args,
                Err(f) => {
                    out.code = out.code.max(EXIT_ERROR);
                    writeln!(out.stderr, "line {}: {}", n + 1, f.line()).unwrap();
                    continue;
                }
            };
            record(
                &mut out,
                &cli,
                execute(&cli.command, &args, budget),
                Some(n + 1),
            );
        }
    } else {
        let args = positional(&cli.command);
        let answer = match args.iter().position(Option::is_none) {
            Some(i) => Err(Failure {
                what: "usage".into(),
                span: SourceSpan::new(0, 0),
                message: format!("missing term argument {} (or use --stdin)", i + 1),
            }),
            None => {
                let args: Vec<String> = args.into_iter().flatten().collect();
                execute(&cli.command, &args, budget)
            }
        };
        record(&mut out, &cli, answer, None);
    }
    out
}

fn first_line(text: &str) -> String {
    format!("{}\n", text.lines().next().unwrap_or("error"))
}

fn record(out: &mut Output, cli: &Cli, answer: Result<Answer, Failure>, line: Option<usize>) {
    match answer {
        Ok(a) => {
            out.code = out.code.max(a.code);
            if cli.json {
                let mut v = a.json;
                if let (Some(n), Value::Object(map)) = (line, &mut v) {
                    map.insert("line".into(), json!(n));
                }
                writeln!(out.stdout, "{v}").unwrap();
            } else {
                out.stdout.push_str(&a.text);
                if !a.text.ends_with('\n') {
                    out.stdout.push('\n');
                }
            }
        }
        Err(f) => {
            out.code = out.code.max(EXIT_ERROR);
            match line {
                Some(n) => writeln!(out.stderr, "line {n}: {}", f.line()).unwrap(),
                None => writeln!(out.stderr, "{}", f.line()).unwrap(),
            }
        }
    }
}

fn resolve_budget(cmd: &Command) -> Result<usize, String> {
    if let Command::Eq {
        budget: Some(b), ..
    } = cmd
    {
        return Ok(*b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{BUDGET_ENV} must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn positional(cmd: &Command) -> Vec<Option<String>> {
    match cmd {
        Command::Check { term, .. }
        | Command::Normalize { term, .. }
        | Command::Translate { term, .. }
        | Command::Render { term, .. } => vec![term.clone()],
        Command::Eq { left, right, .. } => vec![left.clone(), right.clone()],
    }
}

fn split_line(cmd: &Command, line: &str) -> Result<Vec<String>, Failure> {
    match cmd {
        Command::Eq { .. } => match line.split_once('=') {
            Some((l, r)) => Ok(vec![l.trim().to_string(), r.trim().to_string()]),
            None => Err(Failure::whole(
                "input",
                line,
                "expected `TERM = TERM`".into(),
            )),
        },
        _ => Ok(vec![line.trim().to_string()]),
    }
}

fn parse_arg(sig: Sig, what: &str, text: &str) -> Result<Term, Failure> {
    parse(sig, text).map_err(|e| Failure::parse(what, e))
}

fn execute(cmd: &Command, args: &[String], budget: usize) -> Result<Answer, Failure> {
    match cmd {
        Command::Check { sig, .. } => {
            let sig = Sig::from(*sig);
            let t = parse_arg(sig, "term", &args[0])?;
            let ty = type_of(sig, &t).expect("parsed terms typecheck");
            Ok(Answer::ok(
                format!("{ty}"),
                json!({"term": print(&t), "src": ty.src.0, "tgt": ty.tgt.0}),
            ))
        }
        Command::Eq {
            sig,
            theory,
            emit_proof,
            with_proof,
            ..
        } => {
            let sig = Sig::from(*sig);
            let th = Theory::new(sig, Level::from(*theory));
            let t1 = parse_arg(sig, "left term", &args[0])?;
            let t2 = parse_arg(sig, "right term", &args[1])?;
            let opts = EqOptions {
                budget,
                with_proof: *with_proof,
            };
            let verdict = eq_search(th, &t1, &t2, opts).map_err(|e| match e {
                QueryError::Type(e) => Failure::whole("right term", &args[1], e.to_string()),
                e @ QueryError::TypeMismatch { .. } => {
                    Failure::whole("right term", &args[1], e.to_string())
                }
            })?;
            Ok(eq_answer(th, &t1, &t2, &verdict, *emit_proof))
        }
        Command::Normalize { sig, mode, .. } => {
            let sig = Sig::from(*sig);
            let t = parse_arg(sig, "term", &args[0])?;
            let d = interp(sig, &t, Mode::from(*mode)).expect("parsed terms typecheck");
            let v = serde_json::to_value(d.to_json()).expect("diagram serializes");
            Ok(Answer::ok(v.to_string(), v))
        }
        Command::Translate { to, .. } => {
            let to = Sig::from(*to);
            let t = parse_arg(to.other(), "term", &args[0])?;
            let out = print(&translate(to.other(), &t));
            Ok(Answer::ok(
                out.clone(),
                json!({"term": out, "sig": to.name()}),
            ))
        }
        Command::Render {
            sig, format, mode, ..
        } => {
            let sig = Sig::from(*sig);
            let t = parse_arg(sig, "term", &args[0])?;
            let d = interp(sig, &t, Mode::from(*mode)).expect("parsed terms typecheck");
            let (name, text) = match format {
                Format::Ascii => ("ascii", render_ascii(&d)),
                Format::Svg => ("svg", render_svg(&d)),
            };
            Ok(Answer::ok(
                text.clone(),
                json!({"format": name, "output": text}),
            ))
        }
    }
}

fn eq_answer(th: Theory, t1: &Term, t2: &Term, verdict: &EqVerdict, emit: bool) -> Answer {
    let mut text = format!("{}\n", verdict.name());
    let mut doc =
        json!({"verdict": verdict.name(), "theory": th.level.name(), "sig": th.sig.name()});
    let code = match verdict {
        EqVerdict::Equal(Witness::Proof(p)) => {
            if emit {
                text.push_str(&p.to_text());
            }
            doc["proof"] = json!(p.to_text().lines().collect::<Vec<_>>());
            EXIT_OK
        }
        EqVerdict::Equal(Witness::Preorder) => {
            if emit {
                text.push_str("by-preorder\n");
            }
            doc["proof"] = json!("by-preorder");
            EXIT_OK
        }
        EqVerdict::Distinct { left, right } => {
            let (l, r) = (
                serde_json::to_value(left.to_json()).expect("diagram serializes"),
                serde_json::to_value(right.to_json()).expect("diagram serializes"),
            );
            if emit {
                writeln!(text, "left {l}\nright {r}").unwrap();
            }
            doc["witness"] = json!({"left": l, "right": r});
            EXIT_DISTINCT
        }
        EqVerdict::Unknown { expanded } => {
            // diagram agreement is reported separately and never as a proof
            let semantic = match (th.level, sound_mode(th.level)) {
                (Level::K | Level::J, Some(mode)) => semantic_eq(th.sig, mode, t1, t2).ok(),
                _ => None,
            };
            if emit {
                writeln!(text, "expanded {expanded}").unwrap();
            }
            if semantic == Some(true) {
                text.push_str("semantic-equal\n");
            }
            doc["expanded"] = json!(expanded);
            doc["semantic_equal"] = json!(semantic);
            EXIT_UNKNOWN
        }
    };
    Answer {
        code,
        text,
        json: doc,
    }
}

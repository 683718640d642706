//! The `moconad` command-line tool.
//!
//! Exit codes: 0 success, 2 usage or malformed document, 3 domain error,
//! 4 verification failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::composition::{classical_wreath_compose, compose_transductions, oracle_compose};
use crate::elem::{Elem, ElemSet};
use crate::error::Error;
use crate::functors::enumerate_values;
use crate::json::{elem_from_json, elem_to_json, to_canonical_string};
use crate::lawcheck::{check_all_laws, default_term_alphabet, Bounds, Strategy};
use crate::mealy::{all_words, phi, MealyMachine, UnambiguityVerdict, UnambiguousMealy, Word};
use crate::moconad::{FunctorKind, MVal, Moconad};
use crate::spec::SpecDocument;
use crate::transduction::Transduction;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Environment variable holding the default seed for random strategies.
pub const SEED_VAR: &str = "MOCONAD_SEED";

#[derive(Debug, Parser)]
#[command(name = "moconad", version, about = "Run, compose and convert recognizable transductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Generalized,
    Classical,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a transduction or machine on one input.
    Run {
        #[arg(long)]
        spec: PathBuf,
        /// A word such as `aab`, a JSON value with --json-input, or a file
        /// holding a word, pointed-word or term document.
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        /// Read --input as JSON: an array of letters or a value document.
        #[arg(long)]
        json_input: bool,
    },
    /// Compose two transductions, the first one applied first.
    Compose {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Cross-check against running the two in sequence on every input
        /// of at most this size.
        #[arg(long)]
        verify_upto: Option<usize>,
        #[arg(long, value_enum, default_value = "generalized")]
        method: Method,
    },
    /// Check the functor laws and write a JSON report.
    CheckLaws {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        domain_size: Option<usize>,
        /// Sample this many cases per law instead of enumerating.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Convert between machines and transductions.
    Convert {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        verify_upto: Option<usize>,
    },
}

/// A failed command: exit code and message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn domain(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_DOMAIN, message: message.into() }
    }

    fn verify(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_VERIFY, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            _ if e.is_schema() => EXIT_USAGE,
            // Incompatible spec files are a usage problem, not a property
            // of any particular input.
            Error::AlphabetMismatch(_) | Error::InstanceMismatch { .. } => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Runs the tool with the given arguments (including the program name) and
/// returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Run { spec, input, format, json_input } => cmd_run(&spec, &input, format, json_input, out),
        Command::Compose { first, second, out: path, verify_upto, method } => {
            cmd_compose(&first, &second, &path, verify_upto, method, out)
        }
        Command::CheckLaws { functor, bound, domain_size, samples, seed, report } => {
            cmd_check_laws(&functor, bound, domain_size, samples, seed, report.as_deref(), out)
        }
        Command::Convert { from, to, spec, out: path, verify_upto } => {
            cmd_convert(&from, &to, &spec, &path, verify_upto, out)
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn load(path: &Path) -> std::result::Result<SpecDocument, Failure> {
    Ok(SpecDocument::load(path)?)
}

fn load_transduction(path: &Path) -> std::result::Result<Transduction, Failure> {
    match load(path)? {
        SpecDocument::Transduction(t) => Ok(t),
        other => Err(Failure::usage(format!(
            "{} holds a {} document, expected a transduction",
            path.display(),
            other.kind()
        ))),
    }
}

fn write_line(out: &mut dyn Write, text: &str) -> CmdResult {
    writeln!(out, "{text}").map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

/// What `--input` denotes once parsed.
enum Input {
    /// Letters that still need the target alphabet to be resolved.
    Chars(String),
    Word(Word),
    Value(MVal),
}

fn parse_input(raw: &str, json_input: bool) -> std::result::Result<Input, Failure> {
    let path = Path::new(raw);
    if path.is_file() {
        return document_input(load(path)?);
    }
    if !json_input {
        return Ok(Input::Chars(raw.to_string()));
    }
    let v: Value = serde_json::from_str(raw).map_err(|e| Failure::usage(format!("--input is not JSON: {e}")))?;
    match &v {
        Value::Array(xs) => Ok(Input::Word(xs.iter().map(elem_from_json).collect::<crate::error::Result<_>>()?)),
        Value::Object(_) => document_input(SpecDocument::from_json(&v)?),
        _ => Err(Failure::usage("--input must be a JSON array of letters or a value document")),
    }
}

fn document_input(doc: SpecDocument) -> std::result::Result<Input, Failure> {
    match doc {
        SpecDocument::Word(w) => Ok(Input::Word(w)),
        SpecDocument::PointedWord(m) | SpecDocument::Term(m) => Ok(Input::Value(m)),
        other => Err(Failure::usage(format!("a {} document is not an input value", other.kind()))),
    }
}

/// Resolves each character to the alphabet letter printed the same way,
/// falling back to a fresh symbol (which the run then rejects with its
/// position).
fn resolve_chars(s: &str, alphabet: &ElemSet) -> Word {
    s.chars()
        .map(|c| {
            let c = c.to_string();
            alphabet.iter().find(|a| a.to_string() == c).cloned().unwrap_or_else(|| Elem::sym(&c))
        })
        .collect()
}

fn input_word(input: Input, alphabet: &ElemSet) -> std::result::Result<Word, Failure> {
    match input {
        Input::Chars(s) => Ok(resolve_chars(&s, alphabet)),
        Input::Word(w) => Ok(w),
        Input::Value(m) => Err(Failure::usage(format!("machines read plain words, not {} values", m.kind().name()))),
    }
}

fn letter_in(w: &[Elem], alphabet: &ElemSet) -> CmdResult {
    for (i, a) in w.iter().enumerate() {
        if !alphabet.contains(a) {
            return Err(Failure::domain(format!("letter {a} at position {} is not in the input alphabet", i + 1)));
        }
    }
    Ok(())
}

fn render_word(w: &[Elem], format: Format) -> String {
    let single = w.iter().all(|x| matches!(x, Elem::Symbol(_) | Elem::Int(_)) && x.to_string().chars().count() == 1);
    match format {
        Format::Plain if single => w.iter().map(|x| x.to_string()).collect(),
        Format::Plain => to_canonical_string(&Value::Array(w.iter().map(elem_to_json).collect())),
        Format::Json => SpecDocument::Word(w.to_vec()).to_canonical().trim_end().to_string(),
    }
}

fn render_value(m: &MVal, format: Format) -> String {
    match (m, format) {
        (MVal::PrefixList(xs) | MVal::SuffixList(xs), _) => render_word(xs, format),
        (_, Format::Plain) => m.to_string(),
        (_, Format::Json) => SpecDocument::from_value(m).to_canonical().trim_end().to_string(),
    }
}

fn cmd_run(spec: &Path, raw: &str, format: Format, json_input: bool, out: &mut dyn Write) -> CmdResult {
    let doc = load(spec)?;
    let input = parse_input(raw, json_input)?;
    let text = match doc {
        SpecDocument::Mealy(m) => {
            let w = input_word(input, m.input_alphabet())?;
            letter_in(&w, m.input_alphabet())?;
            render_word(&m.run(&w)?, format)
        }
        SpecDocument::UnambiguousMealy(u) => {
            let w = input_word(input, u.input_alphabet())?;
            letter_in(&w, u.input_alphabet())?;
            render_word(&u.run(&w)?, format)
        }
        SpecDocument::Transduction(t) => run_transduction(&t, input, format)?,
        other => return Err(Failure::usage(format!("cannot run a {} document", other.kind()))),
    };
    write_line(out, &text)
}

fn run_transduction(t: &Transduction, input: Input, format: Format) -> std::result::Result<String, Failure> {
    let inst = t.instance();
    if let Input::Value(m) = input {
        return Ok(render_value(&t.apply(&m)?, format));
    }
    let w = match input {
        Input::Chars(s) => resolve_chars(&s, t.input_alphabet()),
        Input::Word(w) => w,
        Input::Value(_) => unreachable!("handled above"),
    };
    match inst.kind() {
        FunctorKind::PrefixList | FunctorKind::SuffixList => {
            let m = inst.make_list(w).map_err(|e| Failure::domain(e.to_string()))?;
            Ok(render_value(&t.apply(&m)?, format))
        }
        // A plain word is read with the focus on its first letter; the
        // output letters do not depend on where the focus sits.
        FunctorKind::PointedList => {
            if w.is_empty() {
                return Err(Failure::domain("pointed words must be nonempty"));
            }
            Ok(render_word(&phi(|m| t.apply(m))(&w)?, format))
        }
        FunctorKind::PointedTerm => Err(Failure::usage("pointed-term transductions read term documents")),
    }
}

fn cmd_compose(
    first: &Path,
    second: &Path,
    path: &Path,
    verify_upto: Option<usize>,
    method: Method,
    out: &mut dyn Write,
) -> CmdResult {
    let f = load_transduction(first)?;
    let g = load_transduction(second)?;
    let fg = match method {
        Method::Generalized => compose_transductions(&f, &g)?,
        Method::Classical => {
            if f.instance().kind() != FunctorKind::PrefixList {
                return Err(Failure::usage("the classical wreath product composes prefix-list transductions only"));
            }
            classical_wreath_compose(&f, &g)?
        }
    };
    if let Some(n) = verify_upto {
        let inputs = enumerate_values(f.instance(), f.input_alphabet(), n);
        for w in &inputs {
            let got = fg.apply(w)?;
            let expected = oracle_compose(&f, &g, w)?;
            if got != expected {
                return Err(Failure::verify(format!(
                    "composed transduction disagrees with sequential application on {w}: got {got}, expected {expected}"
                )));
            }
        }
        write_line(out, &format!("verified on {} inputs of size at most {n}", inputs.len()))?;
    }
    SpecDocument::Transduction(fg).save(path)?;
    Ok(())
}

fn seed_default() -> std::result::Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(0),
        Ok(s) => {
            s.trim().parse().map_err(|_| Failure::usage(format!("{SEED_VAR} must be an unsigned integer, got {s:?}")))
        }
    }
}

fn cmd_check_laws(
    functor: &str,
    bound: Option<usize>,
    domain_size: Option<usize>,
    samples: Option<u64>,
    seed: Option<u64>,
    report: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let kind = FunctorKind::from_name(functor).ok_or_else(|| {
        let known: Vec<_> = FunctorKind::ALL.iter().map(|k| k.name()).collect();
        Failure::usage(format!("unknown functor {functor:?}; expected one of {}", known.join(", ")))
    })?;
    let alphabet = (kind == FunctorKind::PointedTerm).then(default_term_alphabet);
    let inst = Moconad::new(kind, alphabet)?;
    let mut bounds = match bound {
        Some(b) => Bounds::uniform(b, Bounds::default_for(kind).domain_size),
        None => Bounds::default_for(kind),
    };
    if let Some(k) = domain_size {
        if k == 0 {
            return Err(Failure::usage("--domain-size must be positive"));
        }
        bounds.domain_size = k;
    }
    let strategy = match samples {
        Some(samples) => Strategy::Random { seed: seed.map(Ok).unwrap_or_else(seed_default)?, samples, bounds },
        None => Strategy::Exhaustive(bounds),
    };
    let reports = check_all_laws(&inst, strategy)?;
    let passed = reports.iter().all(|r| r.passed());
    for r in &reports {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        write_line(out, &format!("{verdict} {} ({} cases)", r.law.name(), r.cases_checked))?;
    }
    let doc = json!({
        "functor": kind.name(),
        "passed": passed,
        "laws": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    if let Some(path) = report {
        std::fs::write(path, to_canonical_string(&doc) + "\n")
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::verify(format!(
            "{} of {} laws failed",
            reports.iter().filter(|r| !r.passed()).count(),
            reports.len()
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ConvertKind {
    Mealy,
    Unambiguous,
    Transduction,
}

fn convert_kind(name: &str) -> std::result::Result<ConvertKind, Failure> {
    match name {
        "mealy" => Ok(ConvertKind::Mealy),
        "unambiguous-mealy" => Ok(ConvertKind::Unambiguous),
        "transduction" | "prefix-transduction" | "suffix-transduction" | "pointed-transduction" => {
            Ok(ConvertKind::Transduction)
        }
        other => Err(Failure::usage(format!("unknown conversion kind {other:?}"))),
    }
}

fn mismatch(expected: &str, w: &[Elem], a: &[Elem], b: &[Elem]) -> Failure {
    let show = |x: &[Elem]| render_word(x, Format::Plain);
    Failure::verify(format!("{expected} disagree on {}: {} versus {}", show(w), show(a), show(b)))
}

fn as_words(t: &Transduction, w: &[Elem]) -> crate::error::Result<Word> {
    let inst = t.instance();
    match inst.kind() {
        FunctorKind::PointedList => phi(|m| t.apply(m))(w),
        _ => Ok(t.apply(&inst.make_list(w.to_vec())?)?.items().expect("list value").to_vec()),
    }
}

fn cmd_convert(
    from: &str,
    to: &str,
    spec: &Path,
    path: &Path,
    verify_upto: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    let (from_kind, to_kind) = (convert_kind(from)?, convert_kind(to)?);
    let doc = load(spec)?;
    if doc.kind() != from {
        let matches = from_kind == ConvertKind::Transduction && doc.kind() == "transduction";
        if !matches {
            return Err(Failure::usage(format!("{} holds a {} document, not {from}", spec.display(), doc.kind())));
        }
    }
    let unsupported = || Failure::usage(format!("unsupported conversion from {from} to {to}"));
    match (doc, to_kind) {
        (SpecDocument::Mealy(m), ConvertKind::Transduction) => {
            let t = m.to_transduction()?;
            if let Some(n) = verify_upto {
                for w in all_words(m.input_alphabet(), n) {
                    let (a, b) = (m.run(&w)?, as_words(&t, &w)?);
                    if a != b {
                        return Err(mismatch("machine and transduction", &w, &a, &b));
                    }
                }
            }
            SpecDocument::Transduction(t).save(path)?;
        }
        (SpecDocument::UnambiguousMealy(u), ConvertKind::Transduction) => {
            let (w, why) = match u.check_unambiguous(None) {
                UnambiguityVerdict::Unambiguous => (None, ""),
                UnambiguityVerdict::NoRun(w) => (Some(w), "has no accepting run"),
                UnambiguityVerdict::MultipleRuns(w) => (Some(w), "has more than one accepting run"),
            };
            if let Some(w) = w {
                return Err(Failure::domain(format!(
                    "machine is not unambiguous: {} {why}",
                    render_word(&w, Format::Plain)
                )));
            }
            let t = u.to_transduction()?;
            if let Some(n) = verify_upto {
                for w in all_words(u.input_alphabet(), n) {
                    let (a, b) = (u.run(&w)?, as_words(&t, &w)?);
                    if a != b {
                        return Err(mismatch("machine and transduction", &w, &a, &b));
                    }
                }
            }
            SpecDocument::Transduction(t).save(path)?;
        }
        (SpecDocument::Transduction(t), ConvertKind::Mealy) => {
            if !matches!(t.instance().kind(), FunctorKind::PrefixList | FunctorKind::SuffixList) {
                return Err(unsupported());
            }
            let m = MealyMachine::from_transduction(&t)?;
            if let Some(n) = verify_upto {
                for w in all_words(t.input_alphabet(), n).into_iter().filter(|w| !w.is_empty()) {
                    let (a, b) = (as_words(&t, &w)?, m.run(&w)?);
                    if a != b {
                        return Err(mismatch("transduction and machine", &w, &a, &b));
                    }
                }
            }
            SpecDocument::Mealy(m).save(path)?;
        }
        (SpecDocument::Transduction(t), ConvertKind::Unambiguous) => {
            if t.instance().kind() != FunctorKind::PointedList {
                return Err(unsupported());
            }
            let u = UnambiguousMealy::from_transduction(&t)?;
            if let Some(n) = verify_upto {
                for w in all_words(t.input_alphabet(), n).into_iter().filter(|w| !w.is_empty()) {
                    let (a, b) = (as_words(&t, &w)?, u.run(&w)?);
                    if a != b {
                        return Err(mismatch("transduction and machine", &w, &a, &b));
                    }
                }
            }
            SpecDocument::UnambiguousMealy(u).save(path)?;
        }
        _ => return Err(unsupported()),
    }
    if let Some(n) = verify_upto {
        write_line(out, &format!("verified on all words of length at most {n}"))?;
    }
    Ok(())
}

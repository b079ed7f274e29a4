//! The `dbseq` command line: `generate`, `stream`, `verify`, `compare`.
//!
//! Exit statuses: 0 pass, 1 check failure, 2 usage error, 3 resource guard.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::generators::{word_stream_to_symbols, GeneratorSpec, Method};
use crate::joining::{self, JoinTrace};
use crate::sequence::DBSequence;
use crate::verify::{self, CheckReport};
use crate::words::{word_count, SequenceVariant, Symbol, Word};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// Environment variable overriding [`DEFAULT_MAX_WORDS`].
pub const MAX_WORDS_ENV: &str = "DBSEQ_MAX_WORDS";
pub const DEFAULT_MAX_WORDS: usize = 1 << 22;

/// Resource guard: commands refuse to materialize more than `max_words`
/// words unless `--allow-large` is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_words: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_words: DEFAULT_MAX_WORDS,
        }
    }
}

impl Limits {
    /// Reads [`MAX_WORDS_ENV`]; unset or unparsable values keep the default.
    pub fn from_env() -> Self {
        std::env::var(MAX_WORDS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(Limits::default, |max_words| Limits { max_words })
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "dbseq",
    version,
    about = "Generate and verify De Bruijn sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a complete (n, k) sequence.
    Generate {
        #[arg(long, value_parser = method_parser())]
        method: Method,
        #[arg(long, value_parser = variant_parser())]
        variant: SequenceVariant,
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'k')]
        k: Symbol,
        #[arg(long, value_enum, default_value_t = Format::Words)]
        format: Format,
        #[arg(long)]
        allow_large: bool,
    },
    /// Print a prefix of the infinite rpmx(n) sequence.
    Stream {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        limit: usize,
        #[arg(long, value_enum, default_value_t = Format::Words)]
        format: Format,
        #[arg(long)]
        allow_large: bool,
    },
    /// Check the De Bruijn property, the join structure, or the onion property.
    Verify {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'k')]
        k: Symbol,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        allow_large: bool,
    },
    /// Check that several methods agree on rpmx(n, k).
    Compare {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'k')]
        k: Symbol,
        #[arg(long, value_delimiter = ',', required = true, value_parser = method_parser())]
        methods: Vec<Method>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Words,
    Symbols,
    JsonTrace,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Db,
    Structure,
    Onion,
    All,
}

fn method_parser() -> impl TypedValueParser<Value = Method> {
    PossibleValuesParser::new(Method::ALL.map(Method::name))
        .map(|s| s.parse::<Method>().expect("restricted to known names"))
}

fn variant_parser() -> impl TypedValueParser<Value = SequenceVariant> {
    PossibleValuesParser::new(SequenceVariant::ALL.map(SequenceVariant::name)).map(|s| {
        s.parse::<SequenceVariant>()
            .expect("restricted to known names")
    })
}

/// A command that stopped early, carrying its exit status.
enum Failure {
    Usage(String),
    Resource(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<u8, Failure>;

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, limits: &Limits, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_PASS
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Generate {
            method,
            variant,
            n,
            k,
            format,
            allow_large,
        } => cmd_generate(
            method,
            variant,
            n,
            k,
            format,
            guard(limits, allow_large),
            out,
        ),
        Command::Stream {
            n,
            limit,
            format,
            allow_large,
        } => cmd_stream(n, limit, format, guard(limits, allow_large), out),
        Command::Verify {
            n,
            k,
            suite,
            json,
            allow_large,
        } => cmd_verify(n, k, suite, json, guard(limits, allow_large), out),
        Command::Compare {
            n,
            k,
            methods,
            json,
            allow_large,
        } => cmd_compare(n, k, &methods, json, guard(limits, allow_large), out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Resource(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_RESOURCE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CHECK_FAILED
        }
    }
}

fn guard(limits: &Limits, allow_large: bool) -> Option<usize> {
    (!allow_large).then_some(limits.max_words)
}

fn check_params(n: usize, k: Symbol, max_words: Option<usize>) -> std::result::Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be >= 1".into()));
    }
    if k == 0 {
        return Err(Failure::Usage("k must be >= 1".into()));
    }
    match (word_count(n, k), max_words) {
        (None, _) => Err(Failure::Resource(format!("k^n overflows for n={n} k={k}"))),
        (Some(count), Some(max)) if count > max => Err(Failure::Resource(format!(
            "k^n = {count} exceeds the limit of {max} words; pass --allow-large or set {MAX_WORDS_ENV}"
        ))),
        _ => Ok(()),
    }
}

fn cmd_generate(
    method: Method,
    variant: SequenceVariant,
    n: usize,
    k: Symbol,
    format: Format,
    max_words: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    check_params(n, k, max_words)?;
    let digits = k <= 10;
    if format == Format::JsonTrace {
        if method != Method::CycleJoin || variant != SequenceVariant::Rpmx {
            return Err(Failure::Usage(
                "json-trace needs --method cycle-join --variant rpmx".into(),
            ));
        }
        let trace = joining::build(n, k, true)?;
        serde_json::to_writer(&mut *out, &trace_json(&trace, digits)).map_err(io::Error::from)?;
        writeln!(out)?;
        return Ok(EXIT_PASS);
    }
    let seq = GeneratorSpec::complete(method, variant, n, k).generate()?;
    write_sequence(&seq, format, digits, out)?;
    Ok(EXIT_PASS)
}

fn cmd_stream(
    n: usize,
    limit: usize,
    format: Format,
    max_words: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("n must be >= 1".into()));
    }
    if limit == 0 {
        return Err(Failure::Usage("limit must be >= 1".into()));
    }
    if format == Format::JsonTrace {
        return Err(Failure::Usage(
            "json-trace is only available from generate".into(),
        ));
    }
    if let Some(max) = max_words.filter(|&max| limit > max) {
        return Err(Failure::Resource(format!(
            "limit {limit} exceeds the limit of {max} words; pass --allow-large or set {MAX_WORDS_ENV}"
        )));
    }
    let seq = GeneratorSpec {
        method: Method::ShiftRule,
        variant: SequenceVariant::Rpmx,
        n,
        k: None,
        limit: Some(limit),
    }
    .generate()?;
    let digits = seq.words().iter().flat_map(|w| w.iter()).all(|&s| s < 10);
    write_sequence(&seq, format, digits, out)?;
    Ok(EXIT_PASS)
}

fn write_sequence(
    seq: &DBSequence,
    format: Format,
    digits: bool,
    out: &mut dyn Write,
) -> io::Result<()> {
    let mut buf = String::new();
    match format {
        Format::Words => {
            for w in seq.words() {
                buf.clear();
                w.write_to(&mut buf, digits).expect("writing to a String");
                buf.push('\n');
                out.write_all(buf.as_bytes())?;
            }
        }
        Format::Symbols => {
            let symbols = word_stream_to_symbols(seq);
            Word::new(symbols)
                .write_to(&mut buf, digits)
                .expect("writing to a String");
            buf.push('\n');
            out.write_all(buf.as_bytes())?;
        }
        Format::JsonTrace => unreachable!("handled by the caller"),
    }
    Ok(())
}

/// `{n, k, cycles: [{index, key, first, last, anchor, open_position,
/// close_position}], order}` with words rendered as strings.
fn trace_json(trace: &JoinTrace, digits: bool) -> Value {
    let render = |w: &Word| w.render(digits);
    let cycles: Vec<Value> = trace
        .cycles()
        .unwrap_or_default()
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "key": render(&c.key),
                "first": render(&c.first),
                "last": render(&c.last),
                "anchor": c.anchor.as_ref().map(render),
                "open_position": c.open_position,
                "close_position": c.close_position,
            })
        })
        .collect();
    let order: Vec<String> = trace.words().map(|w| render(&w)).collect();
    json!({
        "n": trace.n(),
        "k": trace.k(),
        "cycles": cycles,
        "order": order,
    })
}

fn cmd_verify(
    n: usize,
    k: Symbol,
    suite: Suite,
    as_json: bool,
    max_words: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    check_params(n, k, max_words)?;
    if suite == Suite::Onion && k < 2 {
        return Err(Failure::Usage("the onion suite needs k >= 2".into()));
    }
    let mut reports = Vec::new();
    if matches!(suite, Suite::Db | Suite::All) {
        for method in Method::ALL {
            let seq = GeneratorSpec::complete(method, SequenceVariant::Rpmx, n, k).generate()?;
            let mut r = verify::check_db(&seq, n, k);
            r.name = format!("db[{method}]");
            reports.push(r);
        }
    }
    if matches!(suite, Suite::Structure | Suite::All) {
        reports.push(verify::check_structure(&joining::build(n, k, true)?)?);
    }
    if matches!(suite, Suite::Onion | Suite::All) && k >= 2 {
        reports.push(verify::check_onion(n, k)?);
    }
    write_reports(&reports, as_json, out)
}

fn cmd_compare(
    n: usize,
    k: Symbol,
    methods: &[Method],
    as_json: bool,
    max_words: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    if methods.len() < 2 {
        return Err(Failure::Usage("compare needs at least two methods".into()));
    }
    check_params(n, k, max_words)?;
    let generate = |m: Method| GeneratorSpec::complete(m, SequenceVariant::Rpmx, n, k).generate();
    let reference = generate(methods[0])?;
    let mut reports = Vec::with_capacity(methods.len() - 1);
    for &m in &methods[1..] {
        let mut r = verify::check_equal(&reference, &generate(m)?);
        r.name = format!("equal[{},{m}]", methods[0]);
        reports.push(r);
    }
    write_reports(&reports, as_json, out)
}

fn write_reports(reports: &[CheckReport], as_json: bool, out: &mut dyn Write) -> CmdResult {
    let pass = reports.iter().all(|r| r.pass);
    if as_json {
        let doc = json!({
            "pass": pass,
            "reports": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        });
        serde_json::to_writer(&mut *out, &doc).map_err(io::Error::from)?;
        writeln!(out)?;
    } else {
        for r in reports {
            writeln!(out, "{}", r.to_text())?;
        }
    }
    Ok(if pass { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("dbseq").chain(args.iter().copied());
        let code = run(argv, &Limits::default(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn generate_examples() {
        let (code, out, _) = run_args(&[
            "generate",
            "--method",
            "cycle-join",
            "--variant",
            "rpmx",
            "-n",
            "3",
            "-k",
            "3",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 27);
        assert!(out.starts_with("000\n001\n"));

        let (code, out, _) = run_args(&[
            "generate",
            "--method",
            "fkm",
            "--variant",
            "pmn",
            "-n",
            "3",
            "-k",
            "3",
            "--format",
            "symbols",
        ]);
        assert_eq!((code, out.as_str()), (0, "000100201101202102211121222\n"));

        let (code, out, _) = run_args(&[
            "generate",
            "--method",
            "greedy",
            "--variant",
            "pmx",
            "-n",
            "1",
            "-k",
            "2",
        ]);
        assert_eq!((code, out.as_str()), (0, "1\n0\n"));
    }

    #[test]
    fn wide_alphabets_use_commas() {
        let (code, out, _) = run_args(&[
            "generate",
            "--method",
            "shift-rule",
            "--variant",
            "rpmx",
            "-n",
            "1",
            "-k",
            "11",
            "--format",
            "symbols",
        ]);
        assert_eq!((code, out.as_str()), (0, "0,1,2,3,4,5,6,7,8,9,10\n"));
        let (_, out, _) = run_args(&["stream", "-n", "2", "--limit", "101"]);
        assert_eq!(out.lines().nth(99), Some("9,0"));
        assert_eq!(out.lines().last(), Some("0,10"));
    }

    #[test]
    fn stream_examples() {
        let (code, out, _) =
            run_args(&["stream", "-n", "1", "--limit", "3", "--format", "symbols"]);
        assert_eq!((code, out.as_str()), (0, "012\n"));
        let (_, out, _) = run_args(&["stream", "-n", "3", "--limit", "8"]);
        assert_eq!(out, "000\n001\n010\n101\n011\n111\n110\n100\n");
        assert_eq!(run_args(&["stream", "-n", "3", "--limit", "0"]).0, 2);
    }

    #[test]
    fn verify_and_compare_statuses() {
        assert_eq!(
            run_args(&["verify", "-n", "3", "-k", "3", "--suite", "all"]).0,
            0
        );
        assert_eq!(
            run_args(&["verify", "-n", "4", "-k", "2", "--suite", "structure"]).0,
            0
        );
        assert_eq!(run_args(&["verify", "-n", "0", "-k", "3"]).0, 2);
        let all = "greedy,cycle-join,shift-rule,fkm";
        assert_eq!(
            run_args(&["compare", "-n", "3", "-k", "3", "--methods", all]).0,
            0
        );
        assert_eq!(
            run_args(&["compare", "-n", "3", "-k", "3", "--methods", "fkm"]).0,
            2
        );
    }

    #[test]
    fn usage_and_guard_statuses() {
        assert_eq!(run_args(&["generate", "--method", "nope"]).0, 2);
        assert_eq!(
            run_args(&[
                "generate",
                "--method",
                "greedy",
                "--variant",
                "pmx",
                "-n",
                "3",
                "-k",
                "3",
                "--format",
                "json-trace"
            ])
            .0,
            2
        );
        let big = [
            "generate",
            "--method",
            "fkm",
            "--variant",
            "pmn",
            "-n",
            "23",
            "-k",
            "2",
        ];
        assert_eq!(run_args(&big).0, 3);
        assert_eq!(run_args(&["stream", "-n", "2", "--limit", "5000000"]).0, 3);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn json_trace_fields() {
        let (code, out, _) = run_args(&[
            "generate",
            "--method",
            "cycle-join",
            "--variant",
            "rpmx",
            "-n",
            "3",
            "-k",
            "2",
            "--format",
            "json-trace",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["order"].as_array().unwrap().len(), 8);
        let c0 = &v["cycles"][0];
        assert_eq!(c0["key"], "000");
        assert!(c0["anchor"].is_null());
        assert_eq!(v["cycles"][1]["anchor"], "000");
    }
}

//! The `htceq` command line.
//!
//! ```text
//! htceq parse FILE
//! htceq stable FILE [--def3|--def4]
//! htceq answersets FILE
//! htceq translate FILE [--tau2]
//! htceq models FILE
//! htceq sequiv FILE1 FILE2
//! ```
//!
//! Exit codes: 0 success (or equivalent), 1 not equivalent or invalid
//! input to `parse`, 2 usage, input or semantic error, 3 budget exceeded.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use htceq::program::{answer_sets, theory_stable_models_def3, theory_stable_models_def4};
use htceq::search::{models, DEFAULT_BUDGET};
use htceq::sequiv::{joint_translation, strong_equivalent};
use htceq::syntax::{
    parse_program, render_answer_sets, render_models, render_program_as, render_stable_models,
    render_translation, render_verdict, Format, SourceProgram,
};
use htceq::translate::{tau2_program, tau_program};
use htceq::{Bounds, Error, Limits, TProgram};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "htceq",
    version,
    about = "Stable models and strong equivalence of programs with linear constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug)]
struct Options {
    /// Integer domain LO..HI; overrides #bounds in the input
    #[arg(long, global = true, value_parser = parse_bounds)]
    bounds: Option<Bounds>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Maximum number of interpretations a search may visit
    #[arg(long, global = true, env = "HTCEQ_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    workers: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Record,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical form of a program
    Parse { file: PathBuf },
    /// Theory stable models
    Stable {
        file: PathBuf,
        #[arg(long, conflicts_with = "def4")]
        def3: bool,
        #[arg(long)]
        def4: bool,
    },
    /// Answer sets: regular atoms and a valuation of the theory variables
    Answersets { file: PathBuf },
    /// The HTc theory of a program
    Translate {
        file: PathBuf,
        /// Emit the propositional variant
        #[arg(long)]
        tau2: bool,
    },
    /// HTc models of the translation
    Models { file: PathBuf },
    /// Decide strong equivalence
    Sequiv { first: PathBuf, second: PathBuf },
}

fn parse_bounds(s: &str) -> Result<Bounds, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| format!("invalid bound `{t}`: {e}"))
    };
    Bounds::new(num(lo)?, num(hi)?).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Invalid(String),
    Search(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Search(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Invalid(m) => f.write_str(m),
            Failure::Search(e) => write!(f, "{e}"),
        }
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_ERROR,
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Search(e) if e.is_budget() => EXIT_BUDGET,
            Failure::Search(_) => EXIT_ERROR,
        }
    }
}

fn load(path: &Path) -> Result<SourceProgram, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::Input(format!("{}: not valid UTF-8", path.display())))?;
    parse_program(&text).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))
}

fn resolve(src: &SourceProgram, flag: Option<Bounds>) -> TProgram {
    let bounds = flag.or(src.directives.bounds).unwrap_or_default();
    src.program.clone().with_bounds(bounds)
}

/// Bounds for two programs: the flag if given, otherwise whichever program
/// declares them; two different declarations conflict.
fn resolve_pair(
    first: (&Path, &SourceProgram),
    second: (&Path, &SourceProgram),
    flag: Option<Bounds>,
) -> Result<Bounds, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match (first.1.directives.bounds, second.1.directives.bounds) {
        (Some(a), Some(b)) if a != b => Err(Failure::Input(format!(
            "conflicting bounds: {} declares {a}, {} declares {b}; pass --bounds to override",
            first.0.display(),
            second.0.display()
        ))),
        (a, b) => Ok(a.or(b).unwrap_or_default()),
    }
}

struct Report {
    format: Format,
    limits: Limits,
}

impl Report {
    /// Prefixes a report with the bounds and budget it was computed under.
    fn finish(&self, bounds: Bounds, body: String) -> String {
        match self.format {
            Format::Text => format!("% bounds {bounds}, budget {}\n{body}", self.limits.budget),
            Format::Record => {
                let mut v: serde_json::Value =
                    serde_json::from_str(&body).expect("records are valid JSON");
                v["budget"] = self.limits.budget.into();
                format!("{v}\n")
            }
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let format = match cli.opts.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Record => Format::Record,
    };
    let limits = Limits::with_budget(cli.opts.budget).workers(cli.opts.workers as usize);
    let report = Report { format, limits };
    let flag = cli.opts.bounds;
    let (text, code) = match &cli.command {
        Command::Parse { file } => {
            let src = load(file).map_err(|f| match f {
                Failure::Input(m) if file.exists() => Failure::Invalid(m),
                other => other,
            })?;
            (render_program_as(&resolve(&src, flag), format), EXIT_OK)
        }
        Command::Stable { file, def3, .. } => {
            let p = resolve(&load(file)?, flag);
            let (ms, name) = if *def3 {
                (theory_stable_models_def3(&p, limits)?, "def3")
            } else {
                (theory_stable_models_def4(&p, limits)?, "def4")
            };
            let body = render_stable_models(&ms, name, p.bounds(), format);
            (report.finish(p.bounds(), body), EXIT_OK)
        }
        Command::Answersets { file } => {
            let p = resolve(&load(file)?, flag);
            let sets = answer_sets(&p, limits)?;
            let body = render_answer_sets(&sets, p.bounds(), format);
            (report.finish(p.bounds(), body), EXIT_OK)
        }
        Command::Translate { file, tau2 } => {
            let p = resolve(&load(file)?, flag);
            let (t, name) = if *tau2 {
                (tau2_program(&p)?, "tau2")
            } else {
                (tau_program(&p)?, "tau")
            };
            let body = render_translation(&t, name, format);
            (report.finish(p.bounds(), body), EXIT_OK)
        }
        Command::Models { file } => {
            let p = resolve(&load(file)?, flag);
            let t = tau_program(&p)?;
            let ms = models(&t.theory, &t.space(), limits)?;
            let body = render_models(&ms, p.bounds(), format);
            (report.finish(p.bounds(), body), EXIT_OK)
        }
        Command::Sequiv { first, second } => {
            let (a, b) = (load(first)?, load(second)?);
            let bounds = resolve_pair((first, &a), (second, &b), flag)?;
            let p = a.program.with_bounds(bounds);
            let q = b.program.with_bounds(bounds);
            let verdict = strong_equivalent(&p, &q, limits)?;
            let space = joint_translation(&p, &q)?.space;
            let code = if verdict.is_equivalent() {
                EXIT_OK
            } else {
                EXIT_NOT_EQUIVALENT
            };
            (
                report.finish(bounds, render_verdict(&verdict, &space, format)),
                code,
            )
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))?;
    Ok(code)
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "htceq: {f}");
            f.code()
        }
    }
}

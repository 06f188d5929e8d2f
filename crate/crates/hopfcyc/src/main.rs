//! `hopfcyc`: validate matched-pair models, compute their Lie algebra
//! cohomology and transport classes to cyclic cochains.
//!
//! Exit codes: 0 success, 1 validation failure / non-cocycle / engine
//! error, 2 unreadable or malformed input.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopfcyc::pipeline::{self, parse_selector};
use hopfcyc::validate::{validate, CheckSet, ValidateOptions};
use hopfcyc::{load, CliError, ModelFile};
use hopfcyc_core::emit::Format;
use hopfcyc_core::group::Frame;

#[derive(Parser, Debug)]
#[command(name = "hopfcyc", version, about = "Hopf cyclic cocycles of matched-pair Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    /// Plain Unicode text.
    Text,
    /// LaTeX math.
    Latex,
    /// Re-parseable expressions.
    Expr,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Latex => Format::Latex,
            OutputFormat::Expr => Format::Expr,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FrameArg {
    /// Maurer–Cartan frame of the bicrossed group law.
    Bicrossed,
    /// Frame assembled from the two factor groups.
    Factor,
}

impl From<FrameArg> for Frame {
    fn from(f: FrameArg) -> Self {
        match f {
            FrameArg::Bicrossed => Frame::Bicrossed,
            FrameArg::Factor => Frame::Factor,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every axiom suite; one `name<TAB>PASS|FAIL<TAB>detail` line each.
    Validate {
        /// Model file path or `builtin:<name>`.
        #[arg(long)]
        model: String,
        /// Suites to run.
        #[arg(long, value_enum, default_value = "all")]
        check: CheckSet,
        /// Degree bound of the Hopf and cyclic test families.
        #[arg(long, default_value_t = 2)]
        degree_bound: u32,
    },
    /// Betti numbers and representatives of the bicrossed Lie algebra.
    Cohomology {
        /// Model file path or `builtin:<name>`.
        #[arg(long)]
        model: String,
        /// Output format.
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Transport a class through 𝓔, Θ and Φ.
    Realize {
        /// Model file path or `builtin:<name>`.
        #[arg(long)]
        model: String,
        /// `1`, a coframe wedge such as `θ2∧θ3∧θ4`, or `degree:index`;
        /// defaults to the classes of the model's pipeline section.
        #[arg(long)]
        class: Vec<String>,
        /// Output format.
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Left-invariant frame used for the invariant forms.
        #[arg(long, value_enum, default_value = "bicrossed")]
        frame: FrameArg,
    },
    /// List the built-in models.
    Models,
}

/// The text to print and whether the command succeeded.
fn execute(cmd: Command) -> hopfcyc::Result<(String, bool)> {
    match cmd {
        Command::Validate { model, check, degree_bound } => {
            let ModelFile { model, .. } = load(&model)?;
            let lines = validate(&model, ValidateOptions { checks: check, degree_bound });
            let ok = hopfcyc::report::all_pass(&lines);
            Ok((lines.iter().map(|l| format!("{l}\n")).collect(), ok))
        }
        Command::Cohomology { model, format } => {
            let ModelFile { model, .. } = load(&model)?;
            Ok((pipeline::cohomology(&model)?.render(format.into()), true))
        }
        Command::Realize { model, class, format, frame } => {
            let ModelFile { model, classes } = load(&model)?;
            let selectors = if class.is_empty() { classes } else { class };
            if selectors.is_empty() {
                return Err(CliError::Selector("no --class given and the model has no pipeline classes".into()));
            }
            let mut out = String::new();
            for sel in &selectors {
                let omega = parse_selector(&model, sel)?;
                out.push_str(&pipeline::realize(&model, frame.into(), &omega)?.render(format.into()));
            }
            Ok((out, true))
        }
        Command::Models => {
            let list = hopfcyc::model_file::builtin_names();
            Ok((list.iter().map(|(n, d)| format!("builtin:{n}\t{d}\n")).collect(), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

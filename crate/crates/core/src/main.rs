use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gtevo::cpa::cpa_graph;
use gtevo::evolution::{check_compatible, execute_evolution, gc_hints, interplay_report, ExecuteOptions, Severity};
use gtevo::io::report::{check_json, check_text, cpa_json, gc_json, gc_text, trace_json};
use gtevo::io::{emit_dot, parse_evolution, parse_grammar, serialize_grammar};
use gtevo::rule::Grammar;
use gtevo::Error;

#[derive(Parser)]
#[command(name = "gtevo", version, about = "Evolve graph transformation grammars with second-order rules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CpaFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a grammar document; violations go to standard error.
    Validate { grammar: PathBuf },
    /// Critical pair analysis of a grammar.
    Cpa {
        grammar: PathBuf,
        #[arg(long, value_enum, default_value_t = CpaFormat::Dot)]
        format: CpaFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report open issues of an evolution; exits with 2 on Red issues.
    EvolutionCheck {
        grammar: PathBuf,
        evolution: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Apply an evolution to a grammar.
    Evolve {
        grammar: PathBuf,
        evolution: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Run even if the evolution rules have Red issues.
        #[arg(long)]
        force: bool,
    },
    /// Suggest rules that may be removed after an evolution.
    GcHints {
        old: PathBuf,
        new: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(Error::from)
}

fn load_grammar(path: &Path) -> Result<Grammar, String> {
    read(path).and_then(|t| parse_grammar(&t)).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate { grammar } => {
            load_grammar(&grammar)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cpa { grammar, format, out } => {
            let c = cpa_graph(&load_grammar(&grammar)?);
            let text = match format {
                CpaFormat::Dot => emit_dot(&c),
                CpaFormat::Json => cpa_json(&c),
            };
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::EvolutionCheck { grammar, evolution, format } => {
            let g = load_grammar(&grammar)?;
            let es = read(&evolution)
                .and_then(|t| parse_evolution(&t))
                .map_err(|e| format!("{}: {e}", evolution.display()))?;
            check_compatible(&es, &g).map_err(|e| e.to_string())?;
            let (report, issues) = interplay_report(&es, &g);
            let text = match format {
                ReportFormat::Json => check_json(&report, &issues),
                ReportFormat::Text => check_text(&report, &issues),
            };
            emit(None, &text)?;
            let red = issues.iter().any(|i| i.severity == Severity::Red);
            Ok(if red { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Evolve { grammar, evolution, out, trace, force } => {
            let g = load_grammar(&grammar)?;
            let es = read(&evolution)
                .and_then(|t| parse_evolution(&t))
                .map_err(|e| format!("{}: {e}", evolution.display()))?;
            let opts = ExecuteOptions { force, ..Default::default() };
            let result = execute_evolution(&es, &g, &opts).map_err(|e| e.to_string())?;
            for i in result.issues.iter().filter(|i| i.severity == Severity::Red) {
                eprintln!("warning: {} {}: {}", i.code, i.subjects.join(" / "), i.problem);
            }
            emit(Some(&out), &serialize_grammar(&result.grammar))?;
            if let Some(t) = trace {
                emit(Some(&t), &trace_json(&result))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GcHints { old, new, format } => {
            let h = gc_hints(&load_grammar(&old)?, &load_grammar(&new)?);
            let text = match format {
                ReportFormat::Json => gc_json(&h),
                ReportFormat::Text => gc_text(&h),
            };
            emit(None, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

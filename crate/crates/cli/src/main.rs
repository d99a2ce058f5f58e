use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use f2bal::analysis::{DEFAULT_MAX_RANK, DEFAULT_MAX_SPECTRUM_N};
use f2bal::{Limits, MethodChoice};
use f2bal_cli::{cmd_analyze, cmd_gen, cmd_oracle, parse_input, AnalysisReport, AnalyzeOptions, CliError, GenRequest};

/// Balancing, constant and fixing sets of subsets and multisets of F2^n.
#[derive(Debug, Parser)]
#[command(name = "f2bal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze a set or multiset file.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Balancing computation; auto uses the coset sweep within --max-rank,
        /// otherwise the spectrum table within --max-spectrum-n.
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Analyze with the brute-force oracle (n <= 20).
    Oracle {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Generate a member of a witness family in input-file format.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input file; `-` or absent reads standard input.
    file: Option<PathBuf>,
    /// Read `BITS COUNT` lines instead of one vector per line.
    #[arg(long)]
    multiset: bool,
    /// Emit the report as JSON.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit the report as aligned text (default).
    #[arg(long)]
    text: bool,
    /// List every member of B (at most 2^20 members).
    #[arg(long)]
    enumerate: bool,
    /// Include the Hadamard index of each coset representative.
    #[arg(long)]
    show_indices: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
    max_rank: u32,
    #[arg(long, default_value_t = DEFAULT_MAX_SPECTRUM_N)]
    max_spectrum_n: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Coset,
    Spectrum,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// subspace, affine, independent, one_relation, fixed_by, random_set or random_multiset.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    f: Option<u32>,
    #[arg(long)]
    classes: Option<u64>,
    #[arg(long)]
    cardinality: Option<u64>,
    #[arg(long)]
    support: Option<u64>,
    #[arg(long)]
    max_multiplicity: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use e1, e2, ... instead of random independent vectors.
    #[arg(long)]
    canonical: bool,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn read_input(args: &InputArgs) -> Result<f2bal_cli::Input, CliError> {
    let reader: Box<dyn Read> = match &args.file {
        Some(path) if path.as_os_str() != "-" => {
            Box::new(File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?)
        }
        _ => Box::new(io::stdin().lock()),
    };
    parse_input(reader, args.multiset)
}

fn options(args: &InputArgs, method: MethodArg) -> AnalyzeOptions {
    AnalyzeOptions {
        method: match method {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Coset => MethodChoice::Coset,
            MethodArg::Spectrum => MethodChoice::Spectrum,
        },
        limits: Limits {
            max_rank: args.max_rank,
            max_spectrum_n: args.max_spectrum_n,
            ..Limits::default()
        },
        enumerate: args.enumerate,
        show_indices: args.show_indices,
    }
}

fn render(report: &AnalysisReport, args: &InputArgs) -> String {
    if args.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze { input, method } => {
            let parsed = read_input(&input)?;
            Ok(render(&cmd_analyze(&parsed, &options(&input, method))?, &input))
        }
        Command::Oracle { input } => {
            let parsed = read_input(&input)?;
            Ok(render(&cmd_oracle(&parsed, &options(&input, MethodArg::Auto))?, &input))
        }
        Command::Gen(g) => {
            let text = cmd_gen(&GenRequest {
                family: g.family,
                n: g.n,
                r: g.r,
                k: g.k,
                f: g.f,
                classes: g.classes,
                cardinality: g.cardinality,
                support: g.support,
                max_multiplicity: g.max_multiplicity,
                seed: g.seed,
                canonical: g.canonical,
            })?;
            match g.output {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let _ = io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("f2bal: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

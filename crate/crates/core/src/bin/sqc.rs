use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sqc::cli::{self, ExampleName, Mode};
use sqc::error::{Error, Result};

#[derive(Parser)]
#[command(name = "sqc", version, about = "Spherical quasi-convexity of quadratic forms on cone caps")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Analyze,
    Oracle,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a problem file; exit 0 = quasi-convex, 1 = not, 2 = unknown.
    Analyze {
        /// Problem JSON, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        /// Overrides the analysis and oracle seeds.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the analysis and oracle tolerances.
        #[arg(long)]
        tol: Option<f64>,
        /// Overrides the oracle sample budget.
        #[arg(long)]
        samples: Option<usize>,
        /// Writes the JSON report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print a named example problem as JSON.
    Gen {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print the Moreau decomposition of a vector.
    Project {
        #[arg(long, default_value = "lorentz")]
        cone: String,
        /// Comma-separated components, e.g. "0,1,0".
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Analyze {
            input,
            mode,
            seed,
            tol,
            samples,
            report,
        } => {
            let mut problem = cli::parse_problem(&input)?;
            if let Some(s) = seed {
                problem.options = problem.options.with_seed(s);
            }
            if let Some(t) = tol {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(Error::InvalidInput(format!("--tol must be positive, got {t}")));
                }
                problem.options.tol = t;
                problem.options.oracle.tol = t;
            }
            if let Some(n) = samples {
                if n == 0 {
                    return Err(Error::InvalidInput("--samples must be positive".into()));
                }
                problem.options.oracle.samples = n;
            }
            let mode = match mode {
                ModeArg::Analyze => Mode::Analyze,
                ModeArg::Oracle => Mode::Oracle,
                ModeArg::Both => Mode::Both,
            };
            let result = cli::run(&problem, mode);
            let json = cli::to_json_string(&result)?;
            match report {
                Some(path) => std::fs::write(path, json)?,
                None => print!("{json}"),
            }
            eprint!("{}", cli::summary(&result));
            Ok(result.exit_code())
        }
        Command::Gen { name, n, seed } => {
            let name: ExampleName = name.parse()?;
            print!("{}", cli::emit(&cli::generate_example(name, n, seed)?)?);
            Ok(0)
        }
        Command::Project { cone, vector } => {
            print!("{}", cli::to_json_string(&cli::project(&cone, &vector)?)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(cli::EXIT_INPUT_ERROR as u8),
            };
        }
    };
    match execute(args.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::error_exit_code(&e) as u8)
        }
    }
}

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use torwidth::job::parse_job;
use torwidth::run::{run_command, Command, RunError};

#[derive(Parser)]
#[command(name = "torwidth", version, about = "Twisted torsion widths for finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one twisted torsion and its width bound
    Torsion(JobArgs),
    /// Enumerate cyclic representations and keep the best bound
    Search(JobArgs),
    /// Evaluate the closed form for a graph structure
    Graph(JobArgs),
    /// Compare the characteristic-zero width against mod-p reductions
    Modp(JobArgs),
    /// Find a projection direction and prime that keep polynomials alive
    Goodprime(JobArgs),
    /// Cross-check torsion against a finite cyclic cover
    Cover(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Job file in the "torwidth job v1" format
    job: PathBuf,
    /// Write the certificate here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cmd {
    fn split(&self) -> (Command, &JobArgs) {
        match self {
            Cmd::Torsion(a) => (Command::Torsion, a),
            Cmd::Search(a) => (Command::Search, a),
            Cmd::Graph(a) => (Command::Graph, a),
            Cmd::Modp(a) => (Command::Modp, a),
            Cmd::Goodprime(a) => (Command::GoodPrime, a),
            Cmd::Cover(a) => (Command::Cover, a),
        }
    }
}

fn run(command: Command, args: &JobArgs) -> Result<i32, RunError> {
    let text = fs::read_to_string(&args.job).map_err(|e| RunError {
        message: format!("{}: {e}", args.job.display()),
        exit_code: 1,
    })?;
    let spec = parse_job(&text)?;
    let output = run_command(command, &spec)?;
    let rendered = output.certificate.emit();
    match &args.out {
        Some(path) => fs::write(path, rendered).map_err(|e| RunError {
            message: format!("{}: {e}", path.display()),
            exit_code: 1,
        })?,
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(rendered.as_bytes()).map_err(|e| RunError {
                message: format!("stdout: {e}"),
                exit_code: 1,
            })?;
        }
    }
    Ok(output.status.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = cli.command.split();
    match run(command, args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code as u8)
        }
    }
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use primeclass::cli::{self, OutputFormat};

#[derive(Parser)]
#[command(
    name = "primeclass",
    about = "Survivor primes, class groups of imaginary quadratic fields, and Ono invariants",
    version
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Find all primes p in [lo, hi] with omega(p + x^2) <= 2 for every odd x
    /// with x^2 < p, and emit one row per survivor.
    Search {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Worker threads; output is identical for any value.
        #[arg(long, env = "PRIMECLASS_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Write rows to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class number and group structure of a discriminant (-D) or of the
    /// field Q(sqrt(-p)) (-p).
    Classnum {
        #[arg(short)]
        p: Option<u64>,
        #[arg(short = 'D', allow_negative_numbers = true)]
        discriminant: Option<i64>,
    },
    /// Ono invariant of Q(sqrt(-p)) for p = 7 (mod 8).
    Ono {
        #[arg(short)]
        p: u64,
    },
    /// Run the survivor predicate and the residue-matched structural checks
    /// for one prime.
    Verify {
        #[arg(short)]
        p: u64,
    },
    /// Reproduce the four survivor lists up to a bound and compare them with
    /// the expected values.
    Report {
        #[arg(long, default_value_t = 2_000_000)]
        bound: u64,
        #[arg(long, env = "PRIMECLASS_JOBS", default_value_t = 0)]
        jobs: usize,
    },
}

fn with_pool<T>(jobs: usize, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    if jobs == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(f)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = match args.command {
        Command::Search {
            lo,
            hi,
            format,
            jobs,
            out,
        } => {
            let format = match format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
            match with_pool(jobs, || cli::cmd_search(lo, hi, format)) {
                Ok((code, text)) => {
                    if let Some(path) = out {
                        if let Err(e) = std::fs::write(&path, text) {
                            eprintln!("primeclass: cannot write {}: {e}", path.display());
                            return ExitCode::from(cli::EXIT_USAGE as u8);
                        }
                    } else {
                        print!("{text}");
                    }
                    return ExitCode::from(code as u8);
                }
                Err(e) => Err(e),
            }
        }
        Command::Classnum { p, discriminant } => cli::cmd_classnum(p, discriminant).map(emit),
        Command::Ono { p } => cli::cmd_ono(p).map(emit),
        Command::Verify { p } => cli::cmd_verify(p).map(emit),
        Command::Report { bound, jobs } => {
            with_pool(jobs, || cli::cmd_report(bound)).map(emit)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("primeclass: {e}");
            ExitCode::from(cli::EXIT_USAGE as u8)
        }
    }
}

fn emit((code, text): (i32, String)) -> i32 {
    print!("{text}");
    let _ = std::io::stdout().flush();
    code
}

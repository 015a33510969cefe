//! `qcapelli`: batch verification of the spectral identities for the
//! invariant operators `y_ν`, with JSON Lines or CSV reports.

mod claims;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcapelli::{BigRational, Partition};

use crate::claims::PropsConfig;
use crate::report::{write_records, Format, Record, Status};

/// Caps the rayon worker count.
const THREADS_ENV: &str = "QCAPELLI_THREADS";

#[derive(Parser)]
#[command(name = "qcapelli", version, about = "Exact checks of the quantum Capelli spectrum")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include per-record wall time (makes reports run-dependent).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a family of identity checks.
    #[command(subcommand)]
    Verify(Verify),
    /// Eigenvalue of `y_ν` on `ℋ_λ` next to the closed form.
    Spectrum(PairArgs),
    /// `q → 1` limit of the eigenvalue against the classical factorial Schur value.
    Limit(PairArgs),
}

#[derive(Subcommand)]
enum Verify {
    Theorem1 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_nu: u32,
        #[arg(long, default_value_t = 3)]
        max_lambda: u32,
    },
    Theorem2 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_lambda: u32,
    },
    Lemmas34 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_nu: u32,
    },
    Props {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_nu: u32,
        /// Random associativity and star samples.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        pbw_degree: usize,
        /// Defaults to 2 for n ≤ 2 and 1 above.
        #[arg(long)]
        serre_degree: Option<usize>,
    },
    Interpolation {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, default_value = "1/3")]
        t: String,
        #[arg(long, default_value_t = 3)]
        max_lambda: u32,
        /// Also compare `P_λ(z; q, q)` with the q-factorial Schur polynomial.
        #[arg(long)]
        t_equals_q: bool,
    },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated parts, padded with zeros to length n.
    #[arg(long)]
    nu: String,
    #[arg(long)]
    lambda: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn partition(n: usize, s: &str) -> Result<Partition, Failure> {
    let mut parts: Vec<u32> = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("bad part {p:?} in {s:?}"))))
        .collect::<Result<_, _>>()?;
    if parts.len() > n {
        return Err(Failure::Usage(format!("{s:?} has more than {n} parts")));
    }
    parts.resize(n, 0);
    Partition::new(parts).map_err(|e| Failure::Usage(e.to_string()))
}

fn rational(s: &str) -> Result<BigRational, Failure> {
    let v: BigRational = s.parse().map_err(|_| Failure::Usage(format!("bad rational {s:?}")))?;
    if v == BigRational::from_integer(0.into()) {
        return Err(Failure::Usage("q and t must be nonzero".into()));
    }
    Ok(v)
}

fn check_n(n: usize) -> Result<usize, Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    Ok(n)
}

fn run(command: Command) -> Result<Vec<Record>, Failure> {
    Ok(match command {
        Command::Verify(Verify::Theorem1 { n, max_nu, max_lambda }) => claims::theorem1(check_n(n)?, max_nu, max_lambda),
        Command::Verify(Verify::Theorem2 { n, max_lambda }) => claims::theorem2(check_n(n)?, max_lambda),
        Command::Verify(Verify::Lemmas34 { n, max_nu }) => claims::lemmas34(check_n(n)?, max_nu),
        Command::Verify(Verify::Props { n, max_nu, samples, seed, pbw_degree, serre_degree }) => {
            let n = check_n(n)?;
            claims::props(&PropsConfig {
                n,
                max_nu,
                samples,
                seed,
                pbw_degree,
                serre_degree: serre_degree.unwrap_or(if n <= 2 { 2 } else { 1 }),
            })
        }
        Command::Verify(Verify::Interpolation { n, q, t, max_lambda, t_equals_q }) => {
            claims::interpolation(check_n(n)?, max_lambda, &rational(&q)?, &rational(&t)?, t_equals_q)
        }
        Command::Spectrum(p) => {
            let n = check_n(p.n)?;
            claims::spectrum(&partition(n, &p.nu)?, &partition(n, &p.lambda)?)
        }
        Command::Limit(p) => {
            let n = check_n(p.n)?;
            claims::limit(&partition(n, &p.nu)?, &partition(n, &p.lambda)?)
        }
    })
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let k: usize = v.parse().map_err(|_| Failure::Usage(format!("{THREADS_ENV}={v:?} is not a count")))?;
        builder = builder.num_threads(k);
    }
    builder.build().map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thread_pool().and_then(|pool| pool.install(|| run(cli.command))).and_then(|mut records| {
        if !cli.output.timings {
            records.iter_mut().for_each(|r| r.wall_ms = None);
        }
        let mut sink: Box<dyn Write> = match &cli.output.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        write_records(&mut sink, &records, cli.output.format)?;
        sink.flush()?;
        Ok(records)
    });
    match result {
        Ok(records) => {
            let failed = records.iter().filter(|r| r.status == Status::Fail).count();
            if failed > 0 {
                eprintln!("{failed} of {} checks failed", records.len());
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

use std::fs;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use conehull::bench::{bench, BenchSpec};
use conehull::io::{parse_system, parse_vectors, write_cone, write_system};
use conehull::random::random_system;
use conehull::solver::conehull_with;
use conehull::verify::{check_solutions, oracle_enumerate_with_limits};
use conehull::{AdjacencyTest, Error};

#[derive(Parser)]
#[command(
    name = "conehull",
    about = "Generator description (lineality basis U, extreme rays V) of the solution \
             cone of a system of linear homogeneous inequalities, in exact rational arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum AdjacencyArg {
    #[default]
    Combinatorial,
    Rank,
}

impl From<AdjacencyArg> for AdjacencyTest {
    fn from(arg: AdjacencyArg) -> Self {
        match arg {
            AdjacencyArg::Combinatorial => AdjacencyTest::Combinatorial,
            AdjacencyArg::Rank => AdjacencyTest::Rank,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a system file and print the cone description
    Solve {
        /// System file: `n m` header, then m rows of n rationals
        file: String,
        /// Skip the change-of-variables preprocessing
        #[arg(long)]
        as_is: bool,
        /// Write the cone here instead of stdout
        #[arg(long)]
        out: Option<String>,
        /// Ray adjacency criterion used during the iteration
        #[arg(long, value_enum, default_value_t = AdjacencyArg::Combinatorial)]
        adjacency: AdjacencyArg,
    },
    /// Check candidate vectors against a system
    Check {
        /// System file
        system: String,
        /// Candidate vectors, one row of n rationals per line
        candidates: String,
    },
    /// Brute-force enumeration for small instances (independent of the solver)
    Oracle {
        file: String,
        #[arg(long, default_value_t = conehull::verify::ORACLE_MAX_DIMENSION)]
        max_n: usize,
        #[arg(long, default_value_t = conehull::verify::ORACLE_MAX_FORMS)]
        max_m: usize,
    },
    /// Generate a seeded random system of exact rank r and print it
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Target rank: r independent random rows, m-r random integer
        /// combinations of them, then a seeded shuffle
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 9)]
        coeff_bound: i64,
    },
    /// Time both solver paths on seeded random systems
    Bench {
        /// Cases as `n,m,r` triples separated by `;` (e.g. "5,5,5;5,7,3")
        #[arg(long)]
        spec: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 9)]
        coeff_bound: i64,
        /// Per-row timeout in seconds
        #[arg(long, default_value_t = 300)]
        timeout: u64,
        /// Emit CSV instead of the aligned table
        #[arg(long)]
        csv: bool,
    },
}

fn parse_bench_cases(spec: &str) -> Result<Vec<(usize, usize, usize)>, Error> {
    let mut cases = Vec::new();
    for part in spec.split(';').filter(|p| !p.trim().is_empty()) {
        let fields: Vec<&str> = part.split(',').map(str::trim).collect();
        let parsed: Option<(usize, usize, usize)> = match fields.as_slice() {
            [a, b, c] => match (a.parse(), b.parse(), c.parse()) {
                (Ok(n), Ok(m), Ok(r)) => Some((n, m, r)),
                _ => None,
            },
            _ => None,
        };
        let Some(case) = parsed else {
            return Err(Error::InvalidParameters(format!(
                "bad bench case `{part}`, expected `n,m,r`"
            )));
        };
        cases.push(case);
    }
    Ok(cases)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Solve {
            file,
            as_is,
            out,
            adjacency,
        } => {
            let system = parse_system(&fs::read_to_string(&file)?)?;
            let cone = conehull_with(&system, as_is, adjacency.into())?;
            let text = write_cone(&cone);
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Check { system, candidates } => {
            let system = parse_system(&fs::read_to_string(&system)?)?;
            let candidates =
                parse_vectors(&fs::read_to_string(&candidates)?, system.dimension())?;
            let report = check_solutions(&system, &candidates)?;
            println!("valid {}", report.valid.len());
            for v in &report.valid {
                println!(
                    "{}",
                    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
                );
            }
            println!("invalid {}", report.invalid.len());
            for (v, form) in &report.invalid {
                println!(
                    "{}  # form {}",
                    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                    form
                );
            }
        }
        Command::Oracle { file, max_n, max_m } => {
            let system = parse_system(&fs::read_to_string(&file)?)?;
            let cone = oracle_enumerate_with_limits(&system, max_n, max_m)?;
            print!("{}", write_cone(&cone));
        }
        Command::Gen {
            n,
            m,
            r,
            seed,
            coeff_bound,
        } => {
            let system = random_system(n, m, r, coeff_bound, seed)?;
            print!("{}", write_system(&system));
        }
        Command::Bench {
            spec,
            seed,
            coeff_bound,
            timeout,
            csv,
        } => {
            let spec = BenchSpec {
                cases: parse_bench_cases(&spec)?,
                coeff_bound,
                seed,
                timeout: Duration::from_secs(timeout),
            };
            let report = bench(&spec)?;
            if csv {
                print!("{}", report.to_csv());
            } else {
                print!("{}", report.to_table());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints help/version through the error path too
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Parse { .. } => ExitCode::from(2),
                Error::Internal(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

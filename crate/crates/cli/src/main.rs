mod bench;
mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use ntru_witt::attack::{recover_g, system_stats};
use ntru_witt::format::{parse_keys, parse_system, write_keys, write_system};
use ntru_witt::ring::keygen_counted;
use ntru_witt::solve::{export_cnf, solve_exhaustive_anf};
use ntru_witt::{
    buchberger, generate_system, solutions_from_basis, solve_exhaustive, Assignment,
    EquationSystem, GroebnerConfig, MonomialOrder, NtruKeySet, NtruParams, SolutionSet,
};

#[derive(Parser)]
#[command(
    name = "witt",
    version,
    about = "Algebraic key recovery for NTRU with p = 2 + X, q = 2^m"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key set and write it to a key file.
    Keygen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 128)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Derive the Boolean system in F from a key file's public key.
    Attack {
        #[arg(long)]
        keys: PathBuf,
        /// Number of low Witt bits used: 2, 3 or 4.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        bits: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a system file.
    Solve {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = Backend::Exhaustive)]
        backend: Backend,
        /// Key file; enables the numeric search and the recovery check.
        #[arg(long)]
        keys: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        max_print: usize,
        #[arg(long, value_enum, default_value_t = Order::Degrevlex)]
        order: Order,
    },
    /// Run attack trials and append one CSV row per trial.
    Bench {
        /// Comma-separated list of N.
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 128)]
        q: u32,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        bits: u8,
        #[arg(long)]
        csv: PathBuf,
        /// Seed of the first trial; trial t uses seed + t.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the built-in consistency suites.
    Selftest,
    /// Write a system file as extended DIMACS.
    ExportCnf {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Exhaustive,
    Groebner,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Degrevlex,
    Lex,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Keygen { n, q, seed, out } => {
            let params = match NtruParams::new(n, q) {
                Ok(p) => p,
                Err(e) => Cli::command().error(ErrorKind::InvalidValue, e).exit(),
            };
            let (keys, retries) = keygen_counted(params, seed)?;
            write_file(&out, &write_keys(&keys))?;
            println!("retries {retries}");
            println!("wrote {}", out.display());
        }
        Command::Attack { keys, bits, out } => {
            let keys = read_keys(&keys)?;
            let sys = generate_system(&keys, bits)?;
            write_file(&out, &write_system(&sys))?;
            print_stats(&sys);
            println!(
                "wrote {} equations in {} unknowns to {}",
                sys.len(),
                sys.n_vars,
                out.display()
            );
        }
        Command::Solve {
            system,
            backend,
            keys,
            max_print,
            order,
        } => return solve(&system, backend, keys.as_deref(), max_print, order),
        Command::Bench {
            n_list,
            q,
            trials,
            bits,
            csv,
            seed,
        } => bench::run(&n_list, q, trials, bits, &csv, seed)?,
        Command::Selftest => {
            if !selftest::run() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::ExportCnf { system, out } => {
            let sys = read_system(&system)?;
            let file = fs::File::create(&out)
                .with_context(|| format!("cannot create {}", out.display()))?;
            export_cnf(&sys, std::io::BufWriter::new(file))?;
            println!("wrote {}", out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn read_keys(path: &Path) -> Result<NtruKeySet> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_keys(&text).with_context(|| format!("in {}", path.display()))
}

fn read_system(path: &Path) -> Result<EquationSystem> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_system(&text).with_context(|| format!("in {}", path.display()))
}

fn print_stats(sys: &EquationSystem) {
    for s in system_stats(sys) {
        println!(
            "level {}: {} equations, max degree {}, max terms {}, mean terms {:.1}",
            s.level, s.count, s.max_degree, s.max_terms, s.mean_terms
        );
    }
}

fn solve(
    path: &Path,
    backend: Backend,
    keys: Option<&Path>,
    max_print: usize,
    order: Order,
) -> Result<ExitCode> {
    let sys = read_system(path)?;
    let keys = keys.map(read_keys).transpose()?;
    if let Some(k) = &keys {
        if k.params.n() != sys.n_vars {
            bail!(
                "key file has N = {} but the system has {} unknowns",
                k.params.n(),
                sys.n_vars
            );
        }
    }
    let solutions: SolutionSet = match backend {
        Backend::Exhaustive => match &keys {
            Some(k) => solve_exhaustive(&sys, &k.params, &k.h)?,
            None => solve_exhaustive_anf(&sys)?,
        },
        Backend::Groebner => {
            let config = GroebnerConfig {
                order: match order {
                    Order::Degrevlex => MonomialOrder::DegRevLex,
                    Order::Lex => MonomialOrder::Lex,
                },
                ..GroebnerConfig::default()
            };
            let gb = buchberger(&sys, config)?;
            println!(
                "basis: {} generators ({})",
                gb.generators.len(),
                gb.order.name()
            );
            solutions_from_basis(&gb)?
        }
    };

    println!("solutions {}", solutions.len());
    for x in solutions.solutions.iter().take(max_print) {
        println!("F {}", x.to_bitstring());
    }
    if solutions.len() > max_print {
        eprintln!(
            "warning: listing capped at {max_print} of {} solutions (raise --max-print)",
            solutions.len()
        );
    }
    if let Some(k) = &keys {
        println!("recovered {}", recovered(k, &solutions));
    }
    Ok(if solutions.is_empty() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

/// The true F is the only solution and reproduces the true g.
pub(crate) fn recovered(keys: &NtruKeySet, solutions: &SolutionSet) -> bool {
    let truth = Assignment::new(keys.big_f.as_mask(), keys.params.n());
    solutions.len() == 1
        && solutions.contains(&truth)
        && recover_g(&keys.params, &keys.h, &truth).is_ok_and(|g| g == keys.g)
}

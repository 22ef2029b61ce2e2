use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use mpg::bench::{run_bench, to_csv, BenchConfig};
use mpg::oracle::brute_force_solve;
use mpg::{
    emit_dot, emit_result, generate_random, io, parse_instance, solve_mpg, verify_strategy,
    write_instance, Arena,
};

#[derive(Parser)]
#[command(name = "mpg", version, about = "Exact mean payoff game solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print values and Player 0's strategy.
    Solve {
        file: PathBuf,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Graphviz projection graph under Player 0's strategy.
        #[arg(long)]
        dot: bool,
        /// Record wall time in the JSON meta block (output is then not reproducible).
        #[arg(long, requires = "json")]
        timing: bool,
    },
    /// Brute-force values over all positional strategy profiles.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the solver against the brute-force oracle.
    Verify { file: PathBuf },
    /// Print a seeded random instance.
    Gen {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        max_weight: i64,
        #[arg(long)]
        seed: u64,
    },
    /// Time the solver on random instances and print CSV.
    Bench {
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [10, 20, 40])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [8, 16, 32])]
        max_weights: Vec<i64>,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Outcome {
    Ok,
    Disagree,
}

fn load(path: &Path) -> Result<Arena> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("{}", path.display()))
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Solve {
            file,
            json,
            dot,
            timing,
        } => {
            let arena = load(&file)?;
            let start = Instant::now();
            let solution = solve_mpg(&arena)?;
            let elapsed = timing.then(|| start.elapsed());
            if json {
                print!("{}", emit_result(&solution, &arena, elapsed));
            } else if dot {
                print!("{}", emit_dot(&solution, &arena));
            } else {
                for v in arena.vertices() {
                    let choice = solution
                        .strategy_at(v)
                        .map_or("-".to_string(), |u| u.to_string());
                    println!(
                        "{v}\towner {}\tvalue {}\twinner {}\tchoice {choice}",
                        arena.owner(v),
                        solution.values()[v],
                        solution.winner(v)?
                    );
                }
            }
        }
        Command::Oracle { file, json } => {
            let arena = load(&file)?;
            let values = brute_force_solve(&arena)?;
            if json {
                print!("{}", io::emit_oracle(&values, &arena));
            } else {
                for (v, value) in values.iter().enumerate() {
                    println!("{v}\tvalue {value}");
                }
            }
        }
        Command::Verify { file } => {
            let arena = load(&file)?;
            let solution = solve_mpg(&arena)?;
            let expected = brute_force_solve(&arena)?;
            let mut agree = true;
            for v in arena.vertices() {
                if solution.values()[v] != expected[v] {
                    eprintln!(
                        "vertex {v}: solver {} oracle {}",
                        solution.values()[v],
                        expected[v]
                    );
                    agree = false;
                }
            }
            if !verify_strategy(&arena, solution.strategy(), &expected) {
                eprintln!("strategy does not secure the oracle values");
                agree = false;
            }
            if !agree {
                return Ok(Outcome::Disagree);
            }
            println!("ok: {} vertices agree", arena.vertex_count());
        }
        Command::Gen {
            vertices,
            degree,
            max_weight,
            seed,
        } => {
            anyhow::ensure!(
                vertices >= 1 && degree >= 1,
                "need --vertices >= 1 and --degree >= 1"
            );
            anyhow::ensure!(max_weight >= 0, "need --max-weight >= 0");
            print!(
                "{}",
                write_instance(&generate_random(vertices, degree, max_weight, seed))
            );
        }
        Command::Bench {
            sizes,
            max_weights,
            degree,
            repeats,
            seed,
        } => {
            anyhow::ensure!(
                sizes.iter().all(|&n| n >= 1) && degree >= 1,
                "sizes and degree must be positive"
            );
            anyhow::ensure!(
                max_weights.iter().all(|&w| w >= 0),
                "weights must be non-negative"
            );
            let config = BenchConfig {
                sizes,
                max_weights,
                degree,
                repeats,
                seed,
            };
            print!("{}", to_csv(&run_bench(&config)?));
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Disagree) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front-end: solve, verify, oracle search, instance
//! generation, Latin-square transversals, and the certification selftest.
//!
//! Exit codes are a stable contract:
//!   solve    0 success, 2 invalid input, 3 theorem sentinel (dump written)
//!   verify   0 proper, 1 violations, 2 unreadable/mismatched input
//!   oracle   0 solution found, 1 proven unsatisfiable, 4 budget exceeded
//!   latin    0 transversal printed, 2 invalid input
//!   gen      0 written
//!   selftest 0 all suites pass, 1 failure (reproducer written)
//!
//! Output is plain text with no colour codes, so NO_COLOR needs no
//! special handling.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use distcolour::engine::solve;
use distcolour::error::Error;
use distcolour::generate::{random_delay_instance, random_instance, GenMode};
use distcolour::instance::{verify_colouring, DistortionInstance, EdgeColouring};
use distcolour::latin::{find_partial_transversal, LatinSquare};
use distcolour::oracle::{exhaustive_solve_capped, OracleStatus};
use distcolour::selftest;

#[derive(Parser)]
#[command(
    name = "distcolour",
    about = "4-colour bipartite multigraphs whose edges distort colours by permutations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Colour a d=3 instance with 4 colours and write the colouring
    Solve {
        /// Instance file (JSON)
        instance: PathBuf,
        /// Colouring output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a colouring file against an instance
    Verify {
        instance: PathBuf,
        colouring: PathBuf,
    },
    /// Exhaustive search; handles any d, intended for small instances
    Oracle {
        instance: PathBuf,
        /// Number of colours to search with (default: the instance's d+1)
        #[arg(long)]
        colours: Option<usize>,
        /// Node-expansion budget
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Emit a seeded random instance
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// cubic | subcubic | delay
        #[arg(long, default_value = "subcubic")]
        mode: GenMode,
        #[arg(long, default_value_t = 8)]
        size_a: usize,
        #[arg(long, default_value_t = 8)]
        size_b: usize,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a size-3 partial transversal of a 4×4 Latin square
    Latin {
        /// Square file: 4 lines of 4 space-separated symbols in 0..=3
        square: PathBuf,
        /// Which row to delete before the reduction
        #[arg(long, default_value_t = 0)]
        deleted_row: usize,
    },
    /// Run the exhaustive certification suites
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve { instance, out } => cmd_solve(&instance, out.as_deref()),
        Command::Verify {
            instance,
            colouring,
        } => cmd_verify(&instance, &colouring),
        Command::Oracle {
            instance,
            colours,
            budget,
        } => cmd_oracle(&instance, colours, budget),
        Command::Gen {
            seed,
            mode,
            size_a,
            size_b,
            out,
        } => cmd_gen(seed, mode, size_a, size_b, out.as_deref()),
        Command::Latin {
            square,
            deleted_row,
        } => cmd_latin(&square, deleted_row),
        Command::Selftest => cmd_selftest(),
    };
    ExitCode::from(code)
}

fn read_instance(path: &Path) -> Result<DistortionInstance, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    DistortionInstance::from_json(&text).map_err(|e| format!("invalid instance {path:?}: {e}"))
}

fn cmd_solve(instance: &Path, out: Option<&Path>) -> u8 {
    let inst = match read_instance(instance) {
        Ok(inst) => inst,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    let f = match solve(&inst) {
        Ok(f) => f,
        Err(e @ Error::TheoremViolation { .. }) => {
            let dump_path = instance.with_extension("sentinel.json");
            match &e {
                Error::TheoremViolation {
                    dump: Some(dump), ..
                } => {
                    let body = serde_json::to_string_pretty(dump.as_ref())
                        .unwrap_or_else(|_| "{}".into());
                    if fs::write(&dump_path, body).is_ok() {
                        eprintln!("theorem sentinel fired; diagnostic dump at {dump_path:?}");
                    }
                }
                _ => eprintln!("theorem sentinel fired without context: {e}"),
            }
            eprintln!("{e}");
            return 3;
        }
        Err(e) => {
            eprintln!("invalid input: {e}");
            if matches!(e, Error::UnsupportedColourCount { .. }) {
                eprintln!("hint: `distcolour oracle` handles general d");
            }
            return 2;
        }
    };
    // the verifier is simpler than the engine; re-check before claiming
    // success
    let violations = verify_colouring(&inst, &f);
    if !violations.is_empty() {
        eprintln!("internal error: output failed verification");
        for v in violations {
            eprintln!("  {v}");
        }
        return 3;
    }
    let body = f.to_json().expect("solver output is complete");
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("cannot write {path:?}: {e}");
                return 2;
            }
            println!("proper 4-colouring written to {}", path.display());
        }
        None => println!("{body}"),
    }
    0
}

fn cmd_verify(instance: &Path, colouring: &Path) -> u8 {
    let inst = match read_instance(instance) {
        Ok(inst) => inst,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    let text = match fs::read_to_string(colouring) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("cannot read {colouring:?}: {e}");
            return 2;
        }
    };
    let f = match EdgeColouring::from_json(&inst, &text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("invalid colouring {colouring:?}: {e}");
            return 2;
        }
    };
    let violations = verify_colouring(&inst, &f);
    if violations.is_empty() {
        println!("proper");
        0
    } else {
        for v in &violations {
            println!("{v}");
        }
        1
    }
}

fn cmd_oracle(instance: &Path, colours: Option<usize>, budget: u64) -> u8 {
    let inst = match read_instance(instance) {
        Ok(inst) => inst,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    let num_colours = colours.unwrap_or(inst.d as usize + 1);
    if num_colours < 1 || num_colours > inst.d as usize + 1 {
        eprintln!(
            "--colours must be between 1 and d+1 = {} for this instance",
            inst.d + 1
        );
        return 2;
    }
    let result = exhaustive_solve_capped(&inst, num_colours, budget);
    match result.status {
        OracleStatus::Found(f) => {
            let colours: Vec<String> = (0..inst.num_edges())
                .map(|e| f.get(e).unwrap().to_string())
                .collect();
            println!("found ({} nodes): {}", result.nodes, colours.join(" "));
            0
        }
        OracleStatus::Unsat => {
            println!(
                "proven-unsat with {num_colours} colours ({} nodes)",
                result.nodes
            );
            1
        }
        OracleStatus::BudgetExceeded => {
            println!("budget exceeded after {} nodes", result.nodes);
            4
        }
    }
}

fn cmd_gen(seed: u64, mode: GenMode, size_a: usize, size_b: usize, out: Option<&Path>) -> u8 {
    // delay instances are written in delay shorthand, the rest in perm form
    let body = if mode == GenMode::Delay {
        random_delay_instance(seed, size_a, size_b).to_json()
    } else {
        match random_instance(seed, size_a, size_b, mode) {
            Ok(inst) => inst.to_json(),
            Err(e) => {
                eprintln!("{e}");
                return 2;
            }
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("cannot write {path:?}: {e}");
                return 2;
            }
            0
        }
        None => {
            println!("{body}");
            0
        }
    }
}

fn cmd_latin(square: &Path, deleted_row: usize) -> u8 {
    let text = match fs::read_to_string(square) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("cannot read {square:?}: {e}");
            return 2;
        }
    };
    let sq = match LatinSquare::parse(&text) {
        Ok(sq) => sq,
        Err(e) => {
            eprintln!("invalid square: {e}");
            return 2;
        }
    };
    match find_partial_transversal(&sq, deleted_row) {
        Ok(t) => {
            if !t.check(&sq) {
                eprintln!("internal error: transversal failed self-verification");
                return 3;
            }
            for (row, col, symbol) in &t.cells {
                println!("row {row} col {col} symbol {symbol}");
            }
            0
        }
        Err(
            e @ (Error::OrderNotSupported { .. }
            | Error::RowOutOfRange { .. }
            | Error::NotLatin { .. }),
        ) => {
            eprintln!("{e}");
            2
        }
        Err(e) => {
            eprintln!("{e}");
            3
        }
    }
}

fn cmd_selftest() -> u8 {
    let mut failed = false;
    for outcome in selftest::run_all() {
        match outcome {
            Ok(report) => println!("{}: ok ({} cases)", report.name, report.cases),
            Err(failure) => {
                failed = true;
                println!("{}: FAILED — {}", failure.suite, failure.message);
                if let Some(repro) = &failure.reproducer_json {
                    let path = Path::new("distcolour-selftest-failure.json");
                    if fs::write(path, repro).is_ok() {
                        println!("  reproducer written to {}", path.display());
                    }
                }
            }
        }
    }
    u8::from(failed)
}

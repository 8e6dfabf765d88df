//! Command-line front end for the fawtl library.
//!
//! Exit codes follow the shell-test convention: 0 for success or an
//! accepted word, 1 for a negative result (rejected word, failed
//! validation, no witness), 2 for usage and input errors. All results go
//! to standard output; diagnostics go to standard error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fawtl::{
    accepts_naive, bounded_emptiness, complement_deterministic, complete_reading,
    disjoint_shuffle, eliminate_end_loops, embed_nfawtl, enumerate_accepted, normalize,
    parse_tla, parikh_sample, run_fast, serialize_nfa, serialize_tla, to_diagram,
    trace_deterministic, unary_to_nfa, union, Automaton, EmptinessOutcome, RunStats, Trace,
    TraceOutcome, Verdict, Word,
};

#[derive(Parser)]
#[command(
    name = "fawtl",
    version,
    about = "Simulate, transform and analyze finite automata with translucent letters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an automaton file; exit 0 iff the machine is well formed
    Check { file: PathBuf },
    /// Run a word through an automaton; exit 0 on accept, 1 on reject
    Run {
        file: PathBuf,
        /// Input word; pass an empty argument for the empty word
        word: String,
        /// Print the run step by step (deterministic machines only)
        #[arg(long)]
        trace: bool,
        /// Print operation counts (indexed engine only)
        #[arg(long)]
        stats: bool,
        /// Engine to use; defaults to the indexed engine on deterministic
        /// kinds and the breadth-first reference engine otherwise
        #[arg(long, value_enum)]
        engine: Option<Engine>,
    },
    /// Apply a construction and write the result as a machine file
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// Second operand (union and shuffle only)
        #[arg(long, value_name = "FILE2")]
        with: Option<PathBuf>,
        /// Output file; standard output when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every accepted word of length at most the bound, one per line
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Cap on membership tests (default 2000000)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Look for a shortest accepted word; exit 1 when none exists up to
    /// the bound
    Empty {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the letter-count vectors of all accepted words up to a bound
    Parikh {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the automaton as a graphviz dot diagram
    Dot { file: PathBuf },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Engine {
    Fast,
    Naive,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Op {
    Embed,
    Deloop,
    Complete,
    Normalize,
    Complement,
    Union,
    Shuffle,
    UnaryNfa,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("fawtl: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn accepted() -> ExitCode {
    ExitCode::SUCCESS
}

fn rejected() -> ExitCode {
    ExitCode::from(1)
}

fn load(path: &Path) -> Result<Automaton> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse_tla(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { file } => cmd_check(&file),
        Command::Run {
            file,
            word,
            trace,
            stats,
            engine,
        } => cmd_run(&file, &word, trace, stats, engine),
        Command::Transform {
            file,
            op,
            with,
            output,
        } => cmd_transform(&file, op, with.as_deref(), output.as_deref()),
        Command::Enumerate {
            file,
            max_len,
            budget,
        } => {
            let result = enumerate_accepted(&load(&file)?, max_len, budget)?;
            for w in &result.accepted {
                println!("{w}");
            }
            Ok(accepted())
        }
        Command::Empty {
            file,
            max_len,
            budget,
        } => match bounded_emptiness(&load(&file)?, max_len, budget)? {
            EmptinessOutcome::Witness(w) => {
                println!("{w}");
                Ok(accepted())
            }
            EmptinessOutcome::NoWitnessUpTo(k) => {
                println!("no witness up to {k}");
                Ok(rejected())
            }
        },
        Command::Parikh {
            file,
            max_len,
            budget,
        } => {
            let machine = load(&file)?;
            let sample = parikh_sample(&machine, max_len, budget)?;
            for vector in &sample {
                let parts: Vec<String> = machine
                    .alphabet()
                    .iter()
                    .map(|&l| vector.count(l).to_string())
                    .collect();
                println!("({})", parts.join(","));
            }
            Ok(accepted())
        }
        Command::Dot { file } => {
            print!("{}", to_diagram(&load(&file)?)?);
            Ok(accepted())
        }
    }
}

fn cmd_check(file: &Path) -> Result<ExitCode> {
    let report = load(file)?.validate();
    println!("{report}");
    Ok(if report.is_empty() { accepted() } else { rejected() })
}

fn cmd_run(
    file: &Path,
    word: &str,
    trace: bool,
    stats: bool,
    engine: Option<Engine>,
) -> Result<ExitCode> {
    let machine = load(file)?;
    let input: Word = word
        .parse()
        .with_context(|| format!("invalid word {word:?}"))?;
    if let Some(stranger) = input
        .letters()
        .iter()
        .find(|l| !machine.contains_letter(**l))
    {
        bail!("letter {stranger} is not in the machine's alphabet");
    }
    let deterministic = machine.kind().is_deterministic();
    let engine = engine.unwrap_or(if deterministic {
        Engine::Fast
    } else {
        Engine::Naive
    });
    if engine == Engine::Fast && !deterministic {
        bail!("the fast engine needs a deterministic machine ({} given)", machine.kind());
    }
    if trace && !deterministic {
        bail!("--trace needs a deterministic machine ({} given)", machine.kind());
    }
    if stats && engine != Engine::Fast {
        bail!("--stats is only collected by the fast engine");
    }

    let verdict = match engine {
        Engine::Fast => {
            let run = run_fast(&machine, &input, trace)?;
            if let Some(t) = &run.trace {
                print_trace(t);
            }
            if stats {
                print_stats(&run.stats);
            }
            run.verdict
        }
        Engine::Naive if trace => match trace_deterministic(&machine, &input, None)? {
            TraceOutcome::Halted(t) => {
                print_trace(&t);
                t.verdict
            }
            TraceOutcome::FuelExhausted { steps } => {
                eprintln!("run still going after {steps} steps; treating as reject");
                Verdict::Reject
            }
        },
        Engine::Naive => accepts_naive(&machine, &input),
    };
    Ok(if verdict.is_accept() { accepted() } else { rejected() })
}

fn print_trace(trace: &Trace) {
    print!("{}", fawtl::render_trace(trace));
}

fn print_stats(stats: &RunStats) {
    println!("deletions  {}", stats.deletions);
    println!("end_events {}", stats.end_events);
    println!("index_ops  {}", stats.index_ops);
}

fn cmd_transform(
    file: &Path,
    op: Op,
    with: Option<&Path>,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let machine = load(file)?;
    let needs_second = matches!(op, Op::Union | Op::Shuffle);
    if needs_second && with.is_none() {
        bail!("this operation needs a second machine (--with FILE2)");
    }
    if !needs_second && with.is_some() {
        bail!("--with only applies to union and shuffle");
    }
    let text = match op {
        Op::Embed => serialize_tla(&embed_nfawtl(&machine)?)?,
        Op::Deloop => serialize_tla(&eliminate_end_loops(&machine)?)?,
        Op::Complete => serialize_tla(&complete_reading(&machine)?)?,
        Op::Normalize => serialize_tla(&normalize(&machine)?)?,
        Op::Complement => serialize_tla(&complement_deterministic(&machine)?)?,
        Op::Union => {
            let second = load(with.unwrap())?;
            serialize_tla(&union(&machine, &second)?)?
        }
        Op::Shuffle => {
            let second = load(with.unwrap())?;
            serialize_tla(&disjoint_shuffle(&machine, &second)?)?
        }
        Op::UnaryNfa => serialize_nfa(&unary_to_nfa(&machine)?),
    };
    match output {
        Some(path) => fs::write(path, &text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(accepted())
}

//! `mcheck`: decide matrix conditions from the command line.
//!
//! Exit status: 0 when the verdict is "holds" (or "non-trivial", or the
//! corpus agrees), 1 when it is "fails" (or "trivial", or the corpus found
//! disagreements), 2 on usage and input errors, 3 when a search hit its
//! node cap. Elapsed time goes to stderr so stdout stays reproducible.

pub mod corpus;
pub mod recognise;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use mcheck_core::cube::{
    build_counterexample_algebra, implies_cube_general_capped, implies_cube_simple, OracleVerdict, DEFAULT_NODE_CAP,
};
use mcheck_core::lex::implies_lex_with;
use mcheck_core::triviality::is_trivial;
use mcheck_core::{
    family, intersect, parse_matrix, presentation, to_text, ExtendedMatrix, Family, FamilyName, SimpleMatrix,
};
use serde::Serialize;
use serde_json::json;

use crate::corpus::{run_corpus, Bounds};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mcheck", version, about = "Decide implications between matrix conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Context {
    /// finitely complete categories
    Lex,
    /// regular categories
    Reg,
    /// varieties of algebras
    Alg,
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Context::Lex => "lex",
            Context::Reg => "reg",
            Context::Alg => "alg",
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a simple matrix is trivial.
    /// Exit 0: non-trivial, 1: trivial.
    Trivial {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the condition of FILE1 implies that of FILE2.
    /// Exit 0: holds, 1: fails.
    ///
    /// With --context lex both matrices must be simple. With reg or alg
    /// the second matrix must present a cube or Mal'tsev condition; the
    /// question is then answered as `mcheck cube FILE1 -n <rows of FILE2>`.
    Implies {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, value_enum, default_value_t = Context::Lex)]
        context: Context,
        #[arg(long)]
        json: bool,
        /// Run saturation to its fixpoint instead of stopping at the target.
        #[arg(long)]
        full_saturation: bool,
    },
    /// Decide whether the condition of FILE implies the N-cube condition.
    /// Exit 0: holds, 1: fails, 3: node cap reached.
    ///
    /// The verdict is the same in the lex, reg and alg contexts; --context
    /// only labels the report. Simple matrices use the row-cover test,
    /// others a search for two-element algebras.
    Cube {
        file: PathBuf,
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Context::Lex)]
        context: Context,
        /// Search node limit for non-simple matrices.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print a named matrix: mal, perm (--r), ari, maj, cube (--n, --k), edge (--n).
    Family {
        name: String,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(short = 'o', value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Stack two simple matrices into the matrix of their conjunction.
    Intersect {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(short = 'o', value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Print the equations presented by a matrix.
    Presentation { file: PathBuf },
    /// Cross-check the decision procedures on seeded random matrices.
    /// Exit 0: all agree, 1: disagreements, 3: some search hit its cap.
    Corpus {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 4)]
        mmax: usize,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        /// Allow bounds above 4/4/3.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
    },
}

/// A user-facing error; always exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl<T: fmt::Display> From<T> for UsageError {
    fn from(e: T) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<i32, UsageError>;

fn load(path: &Path) -> Result<ExtendedMatrix, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_simple(path: &Path, purpose: &str) -> Result<SimpleMatrix, UsageError> {
    let m = load(path)?;
    m.as_simple().ok_or_else(|| {
        UsageError(format!(
            "{}: {purpose} needs a simple matrix (m'=1, k=l), got m'={} l={} k={}",
            path.display(),
            m.m_prime(),
            m.l(),
            m.k()
        ))
    })
}

fn write_output(text: &str, output: Option<&Path>) -> Result<(), UsageError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn outcome_word(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn exit_for(holds: bool) -> i32 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn cmd_trivial(file: &Path, json: bool) -> CmdResult {
    let m = load_simple(file, "triviality")?;
    let verdict = is_trivial(&m);
    if json {
        println!("{}", pretty(&verdict));
    } else {
        let word = if verdict.is_trivial() { "trivial" } else { "non-trivial" };
        println!("{word}");
        let witness = serde_json::to_value(&verdict).expect("reports serialize");
        println!("witness: {}", compact(&witness["witness"]));
    }
    Ok(if verdict.is_trivial() { EXIT_FAILS } else { EXIT_HOLDS })
}

fn cube_report(
    matrix: &ExtendedMatrix,
    n_prime: usize,
    context: Context,
    node_cap: u64,
    json: bool,
    route: Option<serde_json::Value>,
) -> CmdResult {
    if n_prime < 2 {
        return Err(UsageError(format!("-n must be at least 2, got {n_prime}")));
    }
    let note = "the verdict is the same in the lex, reg and alg contexts";
    if let Some(simple) = matrix.as_simple() {
        let verdict = implies_cube_simple(&simple, n_prime);
        let counterexample = (!verdict.holds())
            .then(|| build_counterexample_algebra(&simple, n_prime).ok())
            .flatten()
            .map(|op| json!({ "symbol": "p", "arity": op.arity(), "table": op.table().iter().map(|&b| u8::from(b)).collect::<Vec<_>>() }));
        if json {
            let mut report = json!({
                "context": context,
                "n_prime": n_prime,
                "procedure": "row_cover",
                "verdict": verdict,
            });
            if let Some(c) = counterexample {
                report["counterexample"] = c;
            }
            if let Some(r) = route {
                report["rerouted_from"] = r;
            }
            println!("{}", pretty(&report));
        } else {
            println!(
                "{}: M => Cube_{n_prime} ({context}, row cover)",
                outcome_word(verdict.holds())
            );
            println!("{note}");
            println!("witness: {}", compact(&verdict.witness));
            if let Some(c) = counterexample {
                println!("counterexample: {}", compact(&c));
            }
            println!(
                "comparisons: {} element, {} column checks",
                verdict.element_comparisons, verdict.column_checks
            );
        }
        return Ok(exit_for(verdict.holds()));
    }

    let verdict = implies_cube_general_capped(matrix, n_prime, node_cap)?;
    if json {
        let mut report = json!({
            "context": context,
            "n_prime": n_prime,
            "procedure": "two_element_search",
            "verdict": verdict,
        });
        if let Some(r) = route {
            report["rerouted_from"] = r;
        }
        println!("{}", pretty(&report));
    } else {
        let word = verdict.holds().map_or("undecided", outcome_word);
        println!("{word}: M => Cube_{n_prime} ({context}, two-element algebra search)");
        println!("{note}");
        match &verdict {
            OracleVerdict::Holds { reason, .. } => println!("witness: {}", compact(reason)),
            OracleVerdict::Fails { algebra, .. } => println!("witness: {}", compact(algebra)),
            OracleVerdict::Undecided { .. } => println!("node cap {node_cap} reached"),
        }
        println!("nodes: {}", verdict.nodes());
    }
    Ok(verdict.holds().map_or(EXIT_UNDECIDED, exit_for))
}

fn cmd_implies(file1: &Path, file2: &Path, context: Context, json: bool, full: bool) -> CmdResult {
    if context != Context::Lex {
        let m1 = load(file1)?;
        let m2 = load(file2)?;
        let Some(n_prime) = recognise::cube_arity(&m2) else {
            return Err(UsageError(format!(
                "no algorithm is known for implication in the {context} context unless the second matrix \
                 presents a cube or Mal'tsev condition, and {} does not",
                file2.display()
            )));
        };
        let route = json!({ "verb": "implies", "cube_arity": n_prime });
        return cube_report(&m1, n_prime, context, DEFAULT_NODE_CAP, json, Some(route));
    }
    let m1 = load_simple(file1, "lex implication")?;
    let m2 = load_simple(file2, "lex implication")?;
    let verdict = implies_lex_with(&m1, &m2, full);
    if json {
        println!("{}", pretty(&json!({ "context": context, "verdict": verdict })));
    } else {
        println!("{}: M1 => M2 (lex)", outcome_word(verdict.holds()));
        println!("case: {}", compact(&verdict.case));
        println!(
            "columns: {} after {} derivations",
            verdict.derived_columns.len(),
            verdict.log.len()
        );
        println!("witness: {}", compact(&verdict.log));
    }
    Ok(exit_for(verdict.holds()))
}

fn cmd_family(name: &str, r: Option<u32>, n: Option<u32>, k: Option<u32>, output: Option<&Path>) -> CmdResult {
    let which: FamilyName = name.parse()?;
    let reject = |flag: &str, given: bool| {
        if given {
            Err(UsageError(format!("--{flag} does not apply to family {name}")))
        } else {
            Ok(())
        }
    };
    let require = |flag: &str, v: Option<u32>| v.ok_or_else(|| UsageError(format!("family {name} needs --{flag}")));
    let f = match which {
        FamilyName::Mal | FamilyName::Ari | FamilyName::Maj => {
            reject("r", r.is_some())?;
            reject("n", n.is_some())?;
            reject("k", k.is_some())?;
            match which {
                FamilyName::Mal => Family::Mal,
                FamilyName::Ari => Family::Ari,
                _ => Family::Maj,
            }
        }
        FamilyName::Perm => {
            reject("n", n.is_some())?;
            reject("k", k.is_some())?;
            Family::Perm { r: require("r", r)? }
        }
        FamilyName::Cube => {
            reject("r", r.is_some())?;
            Family::Cube {
                n: require("n", n)?,
                k: k.unwrap_or(2),
            }
        }
        FamilyName::Edge => {
            reject("r", r.is_some())?;
            reject("k", k.is_some())?;
            Family::Edge { n: require("n", n)? }
        }
    };
    write_output(&to_text(&family(f)?), output)?;
    Ok(EXIT_HOLDS)
}

fn cmd_intersect(file1: &Path, file2: &Path, output: Option<&Path>) -> CmdResult {
    let a = load_simple(file1, "intersection")?;
    let b = load_simple(file2, "intersection")?;
    write_output(&to_text(&intersect(&a, &b)), output)?;
    Ok(EXIT_HOLDS)
}

fn cmd_presentation(file: &Path) -> CmdResult {
    let m = load(file)?;
    print!("{}", presentation(&m));
    Ok(EXIT_HOLDS)
}

fn cmd_corpus(seed: u64, count: usize, bounds: Bounds, force: bool, node_cap: u64) -> CmdResult {
    if bounds.nmax == 0 || bounds.kmax == 0 {
        return Err(UsageError("--nmax and --kmax must be at least 1".into()));
    }
    if !force && !bounds.within_defaults() {
        return Err(UsageError(format!(
            "bounds nmax={} mmax={} kmax={} exceed 4/4/3; pass --force to run anyway",
            bounds.nmax, bounds.mmax, bounds.kmax
        )));
    }
    let summary = run_corpus(seed, count, bounds, node_cap);
    print!("{}", summary.report);
    Ok(if summary.disagreements > 0 {
        EXIT_FAILS
    } else if summary.undecided > 0 {
        EXIT_UNDECIDED
    } else {
        EXIT_HOLDS
    })
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Trivial { file, json } => cmd_trivial(&file, json),
        Command::Implies {
            file1,
            file2,
            context,
            json,
            full_saturation,
        } => cmd_implies(&file1, &file2, context, json, full_saturation),
        Command::Cube {
            file,
            n,
            context,
            node_cap,
            json,
        } => cube_report(&load(&file)?, n, context, node_cap, json, None),
        Command::Family { name, r, n, k, output } => cmd_family(&name, r, n, k, output.as_deref()),
        Command::Intersect { file1, file2, output } => cmd_intersect(&file1, &file2, output.as_deref()),
        Command::Presentation { file } => cmd_presentation(&file),
        Command::Corpus {
            seed,
            count,
            nmax,
            mmax,
            kmax,
            force,
            node_cap,
        } => cmd_corpus(seed, count, Bounds { nmax, mmax, kmax }, force, node_cap),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
        }
    };
    let start = Instant::now();
    let status = match dispatch(cli.command) {
        Ok(status) => status,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    };
    eprintln!("elapsed: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    status
}

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fishbij::bijection::{
    pair_to_symmetric, pair_to_tailed_fish, phi, phi_inv, phi_left, phi_left_inv,
    symmetric_to_pair, tails_to_pair, MarkedFish, TreePair,
};
use fishbij::enumerate::{
    census_with, conjecture_diff, count_fish, count_left, count_pairs, count_symmetric_by_size,
    count_symmetric_even_tails, count_symmetric_odd_tails, count_ternary, g_polynomial, gen_fish,
    gen_left, gen_ternary, CensusOptions, Family, FishMethod, Statistic,
};
use fishbij::render::{fish_svg, tree_svg};
use fishbij::verify::{verify, Suite, VerifyOptions};
use fishbij::{CellId, Error, Fish, TernaryTree};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(name = "fishbij", version, about = "Fighting fish and ternary trees")]
struct Cli {
    /// Worker threads for parallel suites (default: all cores).
    #[arg(long, global = true)]
    parallel: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a closed-form count.
    Count {
        family: CountFamily,
        /// Size (for symmetric families: the fish size).
        n: u64,
    },
    /// Apply one of the bijections. Inputs are literal strings, `-` for
    /// stdin or `@path` for a file.
    Map {
        direction: Direction,
        inputs: Vec<String>,
    },
    /// Run verification suites up to a size bound.
    Verify {
        suite: String,
        nmax: Option<usize>,
        #[arg(long = "nmax")]
        nmax_flag: Option<usize>,
    },
    /// Draw a fish (JSON) or a tree (code) as SVG.
    Render {
        object: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare fish and left-tree statistics for every size up to nmax.
    Conjecture {
        nmax: Option<usize>,
        #[arg(long = "nmax")]
        nmax_flag: Option<usize>,
    },
    /// Joint distribution of statistics over a family.
    Census {
        family: String,
        n: usize,
        statistics: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Method::ViaLeftTrees)]
        method: Method,
    },
    /// List every object of a family and size, one per line.
    List {
        family: ListFamily,
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::ViaLeftTrees)]
        method: Method,
    },
    /// Print the coefficients of the q-analogue of the fish count.
    Qpoly {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountFamily {
    Fish,
    Ternary,
    Left,
    Pairs,
    Symmetric,
    SymmetricOdd,
    SymmetricEven,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    TreeToFish,
    FishToTree,
    TreeToMarked,
    MarkedToTree,
    TailsToPair,
    PairToFish,
    SymmetricToPair,
    PairToSymmetric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    ViaLeftTrees,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFamily {
    Ternary,
    Left,
    Fish,
    Symmetric,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse { .. }
            | Error::UnknownStatistic(_)
            | Error::StatisticFamilyMismatch { .. } => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.parallel {
        if threads == 0 {
            eprintln!("error: --parallel must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn oracle_cap() -> CliResult<usize> {
    match std::env::var("FISHBIJ_MAX_ORACLE") {
        Err(_) => Ok(8),
        Ok(v) => v.parse().map_err(|_| {
            Failure::usage(format!("FISHBIJ_MAX_ORACLE must be an integer, got `{v}`"))
        }),
    }
}

fn fish_method(method: Method, n: usize) -> CliResult<FishMethod> {
    match method {
        Method::ViaLeftTrees => Ok(FishMethod::ViaLeftTrees),
        Method::Oracle => {
            let cap = oracle_cap()?;
            if n > cap {
                return Err(Failure::usage(format!(
                    "the growth oracle is capped at size {cap} (set FISHBIJ_MAX_ORACLE to raise it)"
                )));
            }
            Ok(FishMethod::GrowthOracle)
        }
    }
}

fn read_input(arg: &str) -> CliResult<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("reading {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn input_args<const N: usize>(inputs: &[String], what: &str) -> CliResult<[String; N]> {
    if inputs.len() != N {
        return Err(Failure::usage(format!("expected {N} input(s): {what}")));
    }
    let mut out: [String; N] = std::array::from_fn(|_| String::new());
    for (slot, arg) in out.iter_mut().zip(inputs) {
        *slot = read_input(arg)?;
    }
    Ok(out)
}

fn parse_index(s: &str, what: &str) -> CliResult<usize> {
    s.trim().parse().map_err(|_| {
        Failure::usage(format!(
            "{what} must be a nonnegative integer, got `{}`",
            s.trim()
        ))
    })
}

/// Write to stdout; a closed pipe (`fishbij list ... | head`) is not an error.
fn emit(text: &str) -> CliResult<()> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            Err(Failure::usage(format!("writing stdout: {e}")))
        }
        _ => Ok(()),
    }
}

/// A fish with an index, given either as two inputs or as the single object
/// `{"fish": ..., key: ...}` that the forward direction prints.
fn fish_and_index(inputs: &[String], key: &str, what: &str) -> CliResult<(Fish, usize)> {
    if inputs.len() == 1 {
        let text = read_input(&inputs[0])?;
        let v: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("invalid JSON: {e}")))?;
        let index = v[key]
            .as_u64()
            .ok_or_else(|| Failure::usage(format!("expected a `{key}` field: {what}")))?;
        return Ok((fish(&v["fish"].to_string())?, index as usize));
    }
    let [f, i] = input_args(inputs, what)?;
    Ok((fish(&f)?, parse_index(&i, key)?))
}

fn tree(s: &str) -> CliResult<TernaryTree> {
    Ok(TernaryTree::parse(s)?)
}

fn fish(s: &str) -> CliResult<Fish> {
    Ok(Fish::from_json_str(s)?)
}

fn run(command: Command) -> CliResult<u8> {
    match command {
        Command::Count { family, n } => {
            let value = match family {
                CountFamily::Fish if n == 0 => {
                    return Err(Failure::usage("fish size must be at least 1"))
                }
                CountFamily::Fish => count_fish(n),
                CountFamily::Ternary => count_ternary(n),
                CountFamily::Left => count_left(n),
                CountFamily::Pairs => count_pairs(n),
                CountFamily::Symmetric => count_symmetric_by_size(n),
                CountFamily::SymmetricOdd | CountFamily::SymmetricEven if n % 2 == 0 => 0u32.into(),
                CountFamily::SymmetricOdd => count_symmetric_odd_tails((n - 1) / 2),
                CountFamily::SymmetricEven => count_symmetric_even_tails((n - 1) / 2),
            };
            println!("{value}");
            Ok(0)
        }
        Command::Map { direction, inputs } => {
            println!("{}", map(direction, &inputs)?);
            Ok(0)
        }
        Command::Verify {
            suite,
            nmax,
            nmax_flag,
        } => {
            let suite: Suite = suite.parse().map_err(Failure::usage)?;
            let nmax = nmax_flag.or(nmax).unwrap_or(6);
            let checks = verify(
                suite,
                nmax,
                VerifyOptions {
                    oracle_cap: oracle_cap()?,
                },
            );
            let mut failed = 0;
            for c in &checks {
                println!("{c}");
                failed += usize::from(!c.pass);
            }
            println!("{} checks, {} failed", checks.len(), failed);
            Ok(if failed == 0 { 0 } else { EXIT_VERIFY })
        }
        Command::Render { object, out } => {
            let text = read_input(&object)?;
            let svg = if text.trim_start().starts_with('{') {
                fish_svg(&fish(&text)?)
            } else {
                tree_svg(&tree(&text)?)
            };
            match out {
                Some(path) => fs::write(&path, svg)
                    .map_err(|e| Failure::usage(format!("writing {}: {e}", path.display())))?,
                None => print!("{svg}"),
            }
            Ok(0)
        }
        Command::Conjecture { nmax, nmax_flag } => {
            let nmax = nmax_flag.or(nmax).unwrap_or(5);
            for n in 1..=nmax {
                for diff in conjecture_diff(n, CensusOptions::default())? {
                    println!("{diff}");
                }
            }
            Ok(0)
        }
        Command::Census {
            family,
            n,
            statistics,
            format,
            method,
        } => {
            let family: Family = family.parse().map_err(Failure::usage)?;
            let stats = statistics
                .iter()
                .map(|s| Statistic::parse(s))
                .collect::<Result<Vec<_>, _>>()?;
            if stats.is_empty() {
                return Err(Failure::usage("at least one statistic is required"));
            }
            let options = CensusOptions {
                method: fish_method(method, n)?,
                parallel: true,
            };
            let c = census_with(family, n, &stats, options)?;
            match format {
                Format::Text => emit(&c.to_text())?,
                Format::Csv => emit(&c.to_csv())?,
                Format::Json => emit(&format!("{}\n", c.to_json()))?,
            }
            Ok(0)
        }
        Command::List { family, n, method } => {
            let mut out = String::new();
            match family {
                ListFamily::Ternary => gen_ternary(n).iter().for_each(|t| out += &format!("{t}\n")),
                ListFamily::Left => gen_left(n).iter().for_each(|t| out += &format!("{t}\n")),
                ListFamily::Fish | ListFamily::Symmetric => {
                    if n == 0 {
                        return Err(Failure::usage("fish size must be at least 1"));
                    }
                    for f in gen_fish(n, fish_method(method, n)?) {
                        if matches!(family, ListFamily::Fish) || f.is_symmetric() {
                            out += &f.to_json_string();
                            out.push('\n');
                        }
                    }
                }
            }
            emit(&out)?;
            Ok(0)
        }
        Command::Qpoly { n, format } => {
            if n == 0 {
                return Err(Failure::usage("n must be at least 1"));
            }
            let g = g_polynomial(n)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "n": n,
                        "coefficients": g.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                ),
                _ => println!("{}", g.coefficient_string()),
            }
            Ok(0)
        }
    }
}

fn map(direction: Direction, inputs: &[String]) -> CliResult<String> {
    let out = match direction {
        Direction::TreeToFish => {
            let [t] = input_args(inputs, "a left tree code")?;
            phi_left(&tree(&t)?)?.to_json_string()
        }
        Direction::FishToTree => {
            let [f] = input_args(inputs, "a fish JSON")?;
            phi_left_inv(&fish(&f)?)?.code()
        }
        Direction::TreeToMarked => {
            let [t] = input_args(inputs, "a tree code")?;
            let m = phi(&tree(&t)?)?;
            format!(
                r#"{{"fish":{},"strip":{}}}"#,
                m.fish.to_json_string(),
                m.mark_index()
            )
        }
        Direction::MarkedToTree => {
            let (f, i) =
                fish_and_index(inputs, "strip", "a fish JSON and a descending-strip index")?;
            let marked = MarkedFish::from_index(f, i)?;
            phi_inv(&marked)?.code()
        }
        Direction::TailsToPair => {
            let (f, t) = fish_and_index(inputs, "tail", "a fish JSON and a tail cell id")?;
            let cell = u32::try_from(t).map_err(|_| Failure::usage("cell id out of range"))?;
            let pair = tails_to_pair(&f, CellId(cell))?;
            format!("{} {}", pair.first, pair.second)
        }
        Direction::PairToFish => {
            let [a, b] = input_args(inputs, "two tree codes")?;
            let (f, t) = pair_to_tailed_fish(&TreePair::new(tree(&a)?, tree(&b)?))?;
            format!(r#"{{"fish":{},"tail":{}}}"#, f.to_json_string(), t.0)
        }
        Direction::SymmetricToPair => {
            let [f] = input_args(inputs, "a symmetric fish JSON")?;
            let pair = symmetric_to_pair(&fish(&f)?)?;
            format!("{} {}", pair.first, pair.second)
        }
        Direction::PairToSymmetric => {
            let [a, b] = input_args(inputs, "two tree codes")?;
            pair_to_symmetric(&TreePair::new(tree(&a)?, tree(&b)?))?.to_json_string()
        }
    };
    Ok(out)
}

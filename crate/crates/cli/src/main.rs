mod cache;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use galeforge::arrangement::{ChamberFilter, PolarizedArrangement, SignVector};
use galeforge::invariants::{
    bb_poincare, ext_poincare, upsilon_formula, upsilon_oracle, verify, FormulaOptions, TwistVector,
    WeightedSpace,
};
use galeforge::{io, Error, Graph};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cache::{write_atomic, Cache, Output};

const EXIT_INVALID: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "galeforge", version, about = "Hypertoric arrangements and quasimap invariants")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check total unimodularity and genericity.
    Validate { file: PathBuf },
    /// List chambers passing a filter.
    Chambers {
        file: PathBuf,
        #[command(flatten)]
        filter: FilterArgs,
        /// Require `-` coordinates to be at most -1.
        #[arg(long)]
        lattice: bool,
    },
    /// List bases with their vertices and `mu`.
    Bases { file: PathBuf },
    /// Write the Gale dual.
    Dual {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Graph operations.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Write the abelianization of a linear quiver.
    Abelianize {
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<usize>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Generating series of refined quasimap invariants.
    Upsilon(UpsilonArgs),
    /// Compare the closed formula with fixed-point counts.
    Verify {
        file: PathBuf,
        #[arg(long)]
        max_degree: u64,
        #[arg(long, hide = true, default_value_t = 0, allow_hyphen_values = true)]
        fault_inject: i64,
    },
    /// Poincaré polynomial of a toric quotient `C^n // G`.
    Oracle {
        /// Weights as a JSON array of integer rows, or a path to one.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Character as a JSON integer array, or a path to one.
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
    /// Poincaré polynomial of the intersection of two lagrangians.
    Ext {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha1: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha2: String,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct FilterArgs {
    #[arg(long)]
    feasible: bool,
    #[arg(long)]
    bounded: bool,
    #[arg(long)]
    both: bool,
}

impl FilterArgs {
    fn filter(&self) -> ChamberFilter {
        match (self.feasible, self.bounded, self.both) {
            (true, _, _) => ChamberFilter::Feasible,
            (_, true, _) => ChamberFilter::Bounded,
            (_, _, true) => ChamberFilter::Both,
            _ => ChamberFilter::All,
        }
    }
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// Build the cographical arrangement of a graph.
    Build {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        eta: Vec<BigInt>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        zeta: Vec<BigInt>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Args, Debug)]
struct UpsilonArgs {
    file: PathBuf,
    #[arg(long)]
    max_degree: u64,
    #[arg(long, conflicts_with_all = ["oracle", "both"])]
    formula: bool,
    #[arg(long, conflicts_with = "both")]
    oracle: bool,
    #[arg(long)]
    both: bool,
    #[arg(long, allow_hyphen_values = true)]
    alpha_plus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_minus: Option<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    twist: Option<Vec<BigInt>>,
    /// Also write the series as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Failure with an exit code and a diagnostic.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Degenerate(_) | Error::DegenerateEta => EXIT_DEGENERATE,
            Error::UnsupportedTwist => EXIT_UNSUPPORTED,
            Error::Convention(_) => EXIT_MISMATCH,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_valid(path: &Path) -> Result<PolarizedArrangement, Failure> {
    let a = io::arrangement_from_str(&read(path)?)?;
    a.ensure_valid()?;
    Ok(a)
}

fn signs(s: &str) -> Result<SignVector, Failure> {
    Ok(s.parse::<SignVector>()?)
}

/// Inline JSON, or the contents of a file of that name.
fn json_arg(s: &str) -> Result<Value, Failure> {
    let text = match serde_json::from_str::<Value>(s) {
        Ok(v) => return Ok(v),
        Err(_) if Path::new(s).is_file() => read(Path::new(s))?,
        Err(e) => return Err(Error::Parse(format!("{s}: {e}")).into()),
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{s}: {e}")).into())
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn ok(stdout: String) -> Output {
    Output {
        stdout,
        files: Vec::new(),
        code: 0,
    }
}

fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Validate { file } => {
            let a = io::arrangement_from_str(&read(file)?)?;
            let report = a.validate();
            let code = if report.is_valid() {
                0
            } else if report.is_degenerate_only() {
                EXIT_DEGENERATE
            } else {
                EXIT_INVALID
            };
            Ok(Output {
                stdout: format!("{report}\n"),
                files: Vec::new(),
                code,
            })
        }
        Command::Chambers { file, filter, lattice } => {
            let a = load_valid(file)?;
            Ok(ok(lines(a.enumerate_chambers(filter.filter(), *lattice)?)))
        }
        Command::Bases { file } => {
            let a = load_valid(file)?;
            let mut out = String::new();
            for v in a.bases() {
                let mu = a.mu(&v)?;
                out += &format!("{{{}}} {} {mu}\n", a.labels(&v.b).join(","), v.vertex);
            }
            Ok(ok(out))
        }
        Command::Dual { file, output } => {
            let a = load_valid(file)?;
            let d = a.gale_dual()?;
            Ok(Output {
                stdout: String::new(),
                files: vec![(output.clone(), io::to_pretty(&io::arrangement_to_value(&d)))],
                code: 0,
            })
        }
        Command::Graph(GraphCommand::Build { file, eta, zeta, output }) => {
            let g = io::graph_from_str(&read(file)?)?;
            let a = g.to_arrangement(eta.clone(), zeta.clone())?;
            Ok(Output {
                stdout: String::new(),
                files: vec![(output.clone(), io::to_pretty(&io::arrangement_to_value(&a)))],
                code: 0,
            })
        }
        Command::Abelianize { ranks, output } => {
            let g = Graph::abelianize(ranks)?;
            Ok(Output {
                stdout: String::new(),
                files: vec![(output.clone(), io::to_pretty(&io::graph_to_value(&g)))],
                code: 0,
            })
        }
        Command::Upsilon(args) => upsilon(args),
        Command::Verify {
            file,
            max_degree,
            fault_inject,
        } => {
            let a = load_valid(file)?;
            let opts = FormulaOptions {
                epsilon_offset: *fault_inject,
                ..Default::default()
            };
            let report = verify(&a, *max_degree, &opts)?;
            Ok(Output {
                stdout: format!("{report}\n"),
                files: Vec::new(),
                code: if report.is_success() { 0 } else { EXIT_MISMATCH },
            })
        }
        Command::Oracle { weights, eta } => {
            let weights = io::int_matrix(&json_arg(weights)?)?;
            let eta = io::int_vector(&json_arg(eta)?)?;
            let w = WeightedSpace::from_weights(weights, eta)?;
            Ok(ok(format!("{}\n", bb_poincare(&w)?)))
        }
        Command::Ext { file, alpha1, alpha2 } => {
            let a = load_valid(file)?;
            let p = ext_poincare(&a, &signs(alpha1)?, &signs(alpha2)?)?;
            Ok(ok(format!("{p}\n")))
        }
    }
}

fn upsilon(args: &UpsilonArgs) -> Result<Output, Failure> {
    let a = load_valid(&args.file)?;
    let twist = match &args.twist {
        Some(m) => TwistVector(m.clone()),
        None => TwistVector::zero(a.num_edges()),
    };
    let opts = FormulaOptions {
        alpha_plus: args.alpha_plus.as_deref().map(signs).transpose()?,
        alpha_minus: args.alpha_minus.as_deref().map(signs).transpose()?,
        epsilon_offset: 0,
    };
    let d = args.max_degree;
    let (stdout, json) = if args.both {
        let f = upsilon_formula(&a, d, &twist, &opts)?;
        let o = upsilon_oracle(&a, d, &twist)?;
        (
            format!("formula:\n{f}oracle:\n{o}"),
            json!({"formula": f.to_json(), "oracle": o.to_json()}),
        )
    } else if args.oracle {
        let o = upsilon_oracle(&a, d, &twist)?;
        (o.to_string(), o.to_json())
    } else {
        let f = upsilon_formula(&a, d, &twist, &opts)?;
        (f.to_string(), f.to_json())
    };
    let files = match &args.json {
        Some(path) => vec![(path.clone(), io::to_pretty(&json))],
        None => Vec::new(),
    };
    Ok(Output { stdout, files, code: 0 })
}

/// Files whose bytes determine the result.
fn inputs(command: &Command) -> Vec<PathBuf> {
    match command {
        Command::Validate { file }
        | Command::Chambers { file, .. }
        | Command::Bases { file }
        | Command::Dual { file, .. }
        | Command::Verify { file, .. }
        | Command::Ext { file, .. }
        | Command::Graph(GraphCommand::Build { file, .. }) => vec![file.clone()],
        Command::Upsilon(args) => vec![args.file.clone()],
        Command::Oracle { weights, eta } => [weights, eta]
            .into_iter()
            .filter(|s| serde_json::from_str::<Value>(s).is_err())
            .map(PathBuf::from)
            .collect(),
        Command::Abelianize { .. } => Vec::new(),
    }
}

/// The command line without `--threads`, which never affects output.
fn normalized_args() -> Vec<String> {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--threads" {
            args.next();
        } else if !a.starts_with("--threads=") {
            out.push(a);
        }
    }
    out
}

fn execute(command: &Command) -> Result<Output, Failure> {
    let Some(cache) = Cache::from_env() else {
        return run(command);
    };
    let bytes = inputs(command)
        .iter()
        .map(|p| fs::read(p).map_err(|e| Failure {
            code: EXIT_INVALID,
            message: format!("{}: {e}", p.display()),
        }))
        .collect::<Result<Vec<_>, _>>()?;
    let key = Cache::key(galeforge::VERSION, &normalized_args(), &bytes);
    if let Some(hit) = cache.load(&key) {
        return Ok(hit);
    }
    let out = run(command)?;
    if let Err(e) = cache.store(&key, &out) {
        eprintln!("warning: cache write failed: {e}");
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    match execute(&cli.command) {
        Ok(out) => {
            for (path, content) in &out.files {
                if let Err(e) = write_atomic(path, content) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_INVALID);
                }
            }
            print!("{}", out.stdout);
            if out.code == EXIT_INVALID || out.code == EXIT_DEGENERATE {
                eprintln!("error: {}", out.stdout.trim_end());
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use einstein_cspace::cli::{
    cmd_classify, cmd_degree, cmd_flag, cmd_reproduce, cmd_solve, RunConfig,
};
use einstein_cspace::{Error, MethodChoice, Precision};

#[derive(Parser)]
#[command(
    name = "einstein-cspace",
    about = "Invariant Einstein metrics on SU(l+m+n)/SU(l)xSU(m)xSU(n): solver, degree certificates, classification"
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(short = 'l', long = "l-param", value_name = "L")]
    l: u32,
    #[arg(short = 'm', long = "m-param", value_name = "M")]
    m: u32,
    #[arg(short = 'n', long = "n-param", value_name = "N")]
    n: u32,
}

#[derive(Args)]
struct CommonArgs {
    /// Solution method
    #[arg(long, default_value = "auto")]
    method: MethodChoice,
    /// Working precision (defaults to automatic selection)
    #[arg(long)]
    precision: Option<Precision>,
    /// Search/degree box as two numbers EPS L
    #[arg(long = "box", num_args = 2, value_names = ["EPS", "L"])]
    box_: Option<Vec<f64>>,
    /// Residual acceptance tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON result here instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also write a flat CSV of the solutions
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Cache directory (env EINSTEIN_CACHE_DIR, default .einstein-cache)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Skip the result cache entirely
    #[arg(long)]
    no_cache: bool,
}

impl CommonArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            method: self.method,
            precision: self.precision,
            box_: self.box_.as_ref().map(|v| (v[0], v[1])),
            tol: self.tol,
            json_path: self.json.clone(),
            csv_path: self.csv.clone(),
            cache_dir: self.cache_dir.clone(),
            no_cache: self.no_cache,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Find all Einstein solutions of one space
    Solve {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Closed-form Einstein metrics of the base flag manifold
    Flag {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Mapping-degree certificate over a box
    Degree {
        #[command(flatten)]
        params: ParamArgs,
        /// Homotopy parameter in [0, 1]
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Enumerate C-spaces of a classical family, or list the exceptional catalog
    Classify {
        /// A, B, C, D or "exceptional"
        #[arg(long)]
        family: String,
        /// Group rank bound for classical families
        #[arg(long, default_value_t = 6)]
        rank_max: u32,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Re-derive a published table and diff against the stored values
    Reproduce {
        /// table1 | table2 | table3 | table3prime | table4 | intro | flag
        #[arg(long)]
        target: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn run(cli: CliArgs) -> Result<(), Error> {
    match cli.command {
        Command::Solve { params, common } => {
            cmd_solve(params.l, params.m, params.n, &common.config())?;
        }
        Command::Flag { params, common } => {
            cmd_flag(params.l, params.m, params.n, &common.config())?;
        }
        Command::Degree { params, t, common } => {
            cmd_degree(params.l, params.m, params.n, t, &common.config())?;
        }
        Command::Classify {
            family,
            rank_max,
            common,
        } => {
            cmd_classify(&family, rank_max, &common.config())?;
        }
        Command::Reproduce { target, common } => {
            cmd_reproduce(&target, &common.config())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors by itself
    let cli = CliArgs::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::ReproduceMismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
        Err(Error::UnknownTarget(t)) => {
            eprintln!("error: unknown target `{t}`");
            ExitCode::from(2)
        }
        Err(Error::InvalidParams { l, m, n }) => {
            eprintln!("error: parameters must be positive, got ({l}, {m}, {n})");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

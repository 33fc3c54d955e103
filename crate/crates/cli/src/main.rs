mod commands;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use bqd_core::scalars::Mode;
use clap::{ArgGroup, Parser, Subcommand};

use emit::Format;

#[derive(Parser, Debug)]
#[command(name = "bqd", version, about = "Exact verification and computation for basic quantum SL(3) data")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Scalar mode; defaults to the mode recorded in the input file.
    #[arg(long, global = true, env = "BQD_MODE")]
    pub mode: Option<Mode>,
    /// Worker threads for the parallel kernels.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every structural identity of a datum.
    Verify { file: PathBuf },
    /// Graded dimensions of the shape algebras.
    Dims {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_total: usize,
        /// Also compute the algebra on `T` and `U` (total degree at most 3).
        #[arg(long)]
        with_g: bool,
        /// Record agreement as evidence instead of asserting it.
        #[arg(long)]
        evidence: bool,
    },
    /// Hecke relations and the projector for one bidegree.
    Hecke {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Browse and instantiate the classified cases.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Apply an equivalence transformation.
    #[command(group(ArgGroup::new("op").required(true).args(["flip", "rescale", "basechange"])))]
    Transform {
        file: PathBuf,
        #[arg(long)]
        flip: bool,
        #[arg(long, num_args = 2, value_names = ["MU", "SIGMA"], allow_hyphen_values = true)]
        rescale: Option<Vec<String>>,
        /// JSON file with 3x3 arrays `gV` and `gW`.
        #[arg(long)]
        basechange: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the presentation of the associated Hopf algebra.
    Export {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// One line per case.
    List,
    /// Instantiate a case and save it.
    Make {
        case: String,
        /// `name=value`, repeatable.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        bqd_core::par::set_threads(n);
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

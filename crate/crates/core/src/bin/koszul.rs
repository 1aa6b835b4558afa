use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use koszul::cli::{run, Checks, Command, RunConfig};

#[derive(Parser)]
#[command(
    name = "koszul",
    version,
    about = "Exact homology of permutohedra, simplices and graph-contraction fibers"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// The permutohedron complex C_*(P_n)
    Perm {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The simplex complex C_*(Δ^{n-1})
    Simplex {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The fiber complex of contracting every edge of a graph
    Fiber {
        /// Edge list, one `u v` per line
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Every check on a corpus directory of `.edges` files with manifest.csv
    Suite {
        /// Corpus directory
        #[arg(long, alias = "corpus")]
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Largest spectral-sequence page to report
    #[arg(long, default_value_t = 2)]
    pages: usize,
    /// `all`, `none`, or a comma list of d2, homology, maps, koszul
    #[arg(long, default_value = "all", value_parser = |s: &str| s.parse::<Checks>())]
    checks: Checks,
    /// Directory for report, CSV and JSON exports
    #[arg(long)]
    out: Option<PathBuf>,
    /// Size cap (edges for fibers, n for permutohedra)
    #[arg(long, env = "KOSZUL_CAP")]
    cap: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, n, graph, common) = match cli.command {
        Sub::Perm { n, common } => (Command::Perm, Some(n), None, common),
        Sub::Simplex { n, common } => (Command::Simplex, Some(n), None, common),
        Sub::Fiber { graph, common } => (Command::Fiber, None, Some(graph), common),
        Sub::Suite { graph, common } => (Command::Suite, None, Some(graph), common),
    };
    let config = RunConfig {
        command,
        n,
        graph,
        pages: common.pages,
        checks: common.checks,
        out: common.out,
        cap: common.cap,
    };
    let outcome = run(&config);
    if outcome.code == 2 {
        eprint!("{}", outcome.report);
    } else {
        print!("{}", outcome.report);
    }
    ExitCode::from(outcome.code as u8)
}

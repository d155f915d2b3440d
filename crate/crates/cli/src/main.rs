mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "covercraft", version, about = "Covering invariants of finite abelian groups and vector spaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Largest covering size tried by exhaustive searches.
    #[arg(long, global = true)]
    pub max_cosets: Option<usize>,
    /// Node cap for each first-level search branch.
    #[arg(long, global = true)]
    pub node_limit: Option<u64>,
    #[arg(long, global = true)]
    pub time_limit_sec: Option<f64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for sampled suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Group invariants.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Coset systems.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// AJT matrices.
    #[command(subcommand)]
    Ajt(AjtCmd),
    /// Hyperplane coverings of GF(q)^n.
    #[command(subcommand)]
    Hyperplane(HyperplaneCmd),
    /// Combinations of bases.
    #[command(subcommand)]
    Basis(BasisCmd),
    /// Linear matroids given by matrix columns.
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// Colorings and flows.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Run a named experiment bundle.
    Suite {
        name: String,
        /// Also write the report to DIR/<name>.json.
        #[arg(long)]
        cache_dir: Option<std::path::PathBuf>,
    },
    /// Consolidated evidence from cached suite reports.
    Evidence {
        #[arg(long)]
        cache_dir: Option<std::path::PathBuf>,
        /// Run suites missing from the cache.
        #[arg(long)]
        run: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Cosets,
    Subgroups,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Target {
    /// The whole group.
    All,
    /// The group without the identity.
    Punctured,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Fewest cosets covering exactly the non-identity elements.
    Phi { group: String },
    /// Fewest members of an irredundant covering with trivial subgroup intersection.
    Fmin {
        group: String,
        #[arg(long, value_enum, default_value_t = Mode::Cosets)]
        mode: Mode,
    },
    /// As `fmin --mode subgroups`.
    Gmin { group: String },
    /// Smallest blocking set of AG(n, p).
    Blocking {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCmd {
    /// Audit a JSON list of cosets `{subgroup_elements, representative}`.
    Audit {
        group: String,
        file: String,
        #[arg(long, value_enum, default_value_t = Target::All)]
        target: Target,
    },
}

#[derive(Subcommand, Debug)]
pub enum AjtCmd {
    /// Decide AJT for a square matrix with every available method.
    Check { file: String },
    /// Search for two independent hyperplane families covering GF(p)^n.
    Scan {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum HyperplaneCmd {
    /// Audit an affine hyperplane system.
    CoverCheck { file: String },
    /// h_q(n), or l_q(n) with --affine.
    Min {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        affine: bool,
    },
    /// Codimension of an irredundant affine covering against 2k/3.
    Ratio { file: String },
}

#[derive(Subcommand, Debug)]
pub enum BasisCmd {
    /// Target as a 0-1 combination of all columns of the given matrices.
    Additive {
        file: String,
        #[arg(long)]
        target: String,
    },
    /// Target as a nowhere-zero combination of the columns of the bases.
    NowhereZero {
        file: String,
        #[arg(long)]
        target: String,
    },
    /// Irredundant affine covering built from bases and a target with no
    /// nowhere-zero combination.
    ToAffineCover {
        file: String,
        #[arg(long)]
        target: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum MatroidCmd {
    Rank {
        file: String,
        /// Comma-separated column indices; all columns by default.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Disjoint bases of a subset, and with --k a smallest subset holding k of them.
    Pack {
        file: String,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    Color {
        #[arg(long)]
        q: u32,
        file: String,
    },
    Flow {
        #[arg(long)]
        group: String,
        file: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if t == 0 || rayon::ThreadPoolBuilder::new().num_threads(t).build_global().is_err() {
            return output::fail(&covercraft::Error::InvalidArgument(format!("cannot use {t} threads")), cli.global.format);
        }
    }
    match commands::run(&cli) {
        Ok(out) => out.emit(cli.global.format),
        Err(e) => output::fail(&e, cli.global.format),
    }
}

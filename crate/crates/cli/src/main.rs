//! `vipcensus` command-line front end.
//!
//! Exit status: 0 on success, 1 when a computation or check fails, 2 on a
//! usage error (bad flags, malformed nodes, ids or permutations).

mod commands;
mod golden;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vipcensus::census::AltPerm;
use vipcensus::collapse::TypeId;
use vipcensus::Node;

#[derive(Parser, Debug)]
#[command(name = "vipcensus", version, about = "Similarity types, vip orders and their census")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for the parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count m-types, sparse m-types and their vip orders.
    Census(CensusArgs),
    /// The n-th tangent number.
    Tangent { n: usize },
    /// The alternating permutation of a sparse type.
    Perm {
        #[arg(value_parser = parse_type_id)]
        type_id: TypeId,
    },
    /// The sparse type of an alternating permutation.
    Type {
        #[arg(value_parser = parse_perm)]
        perm: AltPerm,
    },
    /// Collapse a diagonal set; optionally transport an ambient level order.
    Clp(ClpArgs),
    /// Structural flags of a node set.
    Profile {
        #[arg(value_parser = parse_node, num_args = 0..)]
        nodes: Vec<Node>,
    },
    /// Every vip order of an m-type.
    Viporders {
        #[arg(value_parser = parse_type_id)]
        type_id: TypeId,
    },
    /// Build a diagonalization map and audit its contract.
    Diag(DiagArgs),
    /// Graph codings into the tree.
    Rado(RadoArgs),
    /// Which palette colors a full or sampled scan realizes.
    Classify(ClassifyArgs),
    /// Search for subsets realizing an ordered type.
    Realize(RealizeArgs),
    /// Compare census totals with the golden tables.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(short = 'm')]
    pub m: usize,
    /// Only sparse types.
    #[arg(long)]
    pub sparse: bool,
    /// Allow the full census for m ≥ 5.
    #[arg(long)]
    pub long: bool,
    /// Include the vip count of every type.
    #[arg(long)]
    pub per_type: bool,
    /// Run on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Args, Debug)]
pub struct ClpArgs {
    #[arg(value_parser = parse_node, required = true)]
    pub nodes: Vec<Node>,
    /// `lenlex`, or a level order such as `00,01/000,010,001`.
    #[arg(long, default_value = "lenlex", conflicts_with = "order_file")]
    pub order: String,
    /// Read the ambient level order from a file (text form or JSON).
    #[arg(long)]
    pub order_file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Sparse,
    Pnp,
}

#[derive(Args, Debug)]
pub struct DiagArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub depth: usize,
    /// Include φ, φ₀ and φ₁ in the output.
    #[arg(long)]
    pub dump: bool,
    /// Largest subset size for the collapse-preservation check.
    #[arg(long, default_value_t = 3)]
    pub max_subset: usize,
}

#[derive(Args, Debug)]
pub struct RadoArgs {
    /// Vertex count of the bit graph.
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Use a graph from a JSON file `{n, edges}` instead.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[command(subcommand)]
    pub action: RadoAction,
}

#[derive(Subcommand, Debug)]
pub enum RadoAction {
    /// The tree codes σ(α).
    Embed,
    /// Least vertex joined to all of A and none of B.
    Witness {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        b: Vec<usize>,
    },
    /// Translate every increasing embedding of the first k vertices to a pnp
    /// map and back.
    Roundtrip {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Linear,
    Graph,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Tie {
    Lex,
    Hash,
}

#[derive(Args, Debug)]
pub struct AmbientArgs {
    /// Tie-break inside the vip constraints of the ambient order.
    #[arg(long, value_enum, default_value_t = Tie::Hash)]
    pub tie: Tie,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long, value_enum)]
    pub side: SideArg,
    #[arg(short = 'm')]
    pub m: usize,
    /// Domain depth (linear side).
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Bit-graph size (graph side).
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[command(flatten)]
    pub ambient: AmbientArgs,
    /// Scan every subset when there are at most this many.
    #[arg(long, default_value_t = 1_000_000)]
    pub exhaustive_limit: u64,
    /// Otherwise sample this many.
    #[arg(long, default_value_t = 200_000)]
    pub samples: u64,
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    #[arg(long = "type", value_parser = parse_type_id)]
    pub type_id: TypeId,
    /// One vip order (text form); default: every vip order of the type.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = SideArg::Linear)]
    pub side: SideArg,
    /// Candidates examined per target.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[command(flatten)]
    pub ambient: AmbientArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Check the census tables.
    #[arg(long, required = true)]
    pub tables: bool,
    /// Include the full m = 5 census.
    #[arg(long)]
    pub long: bool,
    /// Largest m to check (up to 5).
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub max_m: u8,
    /// Golden values as JSON `{t, t_plus, r, r_plus}` (arrays indexed by m−1).
    #[arg(long)]
    pub golden: Option<PathBuf>,
}

fn parse_node(s: &str) -> Result<Node, String> {
    if s == "-" {
        return Ok(Node::root());
    }
    Node::parse(s).map_err(|e| e.to_string())
}

fn parse_type_id(s: &str) -> Result<TypeId, String> {
    s.parse().map_err(|e: vipcensus::Error| e.to_string())
}

fn parse_perm(s: &str) -> Result<AltPerm, String> {
    s.parse().map_err(|e: vipcensus::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                if let Some(msg) = out.failure {
                    eprintln!("{msg}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

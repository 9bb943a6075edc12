use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gns_core::{BaseOrder, OrderSpec};

#[derive(Parser, Debug)]
#[command(name = "gns", version, about = "Enumerate and count generalized numerical semigroups in N^d")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count semigroups per genus.
    Count(CountArgs),
    /// List every semigroup of one genus, one gap list per record.
    Enumerate(EnumerateArgs),
    /// Recompute published counts and identities and compare.
    Verify(VerifyArgs),
    /// Subset search over the candidate box (small cases only).
    #[command(hide = true)]
    BruteForce(BruteForceArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    All,
    Representatives,
    Equivariant,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::All => "all",
            Mode::Representatives => "representatives",
            Mode::Equivariant => "equivariant",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderArg {
    Lex,
    Glex,
    Order1,
}

impl OrderArg {
    pub fn spec(self) -> OrderSpec {
        match self {
            OrderArg::Lex => OrderSpec::Lex,
            OrderArg::Glex => OrderSpec::Glex,
            OrderArg::Order1 => OrderSpec::Order1(BaseOrder::Glex),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeArg {
    Frontier,
    FixedGenus,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Ambient dimension d.
    #[arg(long, short = 'd')]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = Mode::Representatives)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
    pub order: OrderArg,
    /// `frontier` walks the genus tree; `fixed-genus` builds one tree per genus
    /// (representatives only, lex or order1).
    #[arg(long, value_enum, default_value_t = TreeArg::Frontier)]
    pub tree: TreeArg,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write data here instead of standard output.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
    /// Checkpoint file, written after every level and resumed from when present.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Abort with a resource-limit error once a frontier grows past this many nodes.
    #[arg(long)]
    pub max_frontier: Option<usize>,
    /// Suppress the summary line on standard error.
    #[arg(long, short = 'q')]
    pub quiet: bool,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Count every genus from 0 to this value.
    #[arg(long, conflicts_with = "genus", required_unless_present = "genus")]
    pub gmax: Option<usize>,
    /// Count a single genus.
    #[arg(long)]
    pub genus: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, short = 'g')]
    pub genus: usize,
    /// Also print the minimal generators of each semigroup.
    #[arg(long)]
    pub generators: bool,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("what").required(true).multiple(true).args(["cells", "identity", "stabilization"])))]
pub struct VerifyArgs {
    /// Published cells to recompute, as `N:d:range` (classes) or `n:d:range`
    /// (all semigroups), e.g. `N:2:1..8` or `n:3:5`.
    #[arg(long, num_args = 1.., value_delimiter = ' ')]
    pub cells: Vec<String>,
    /// Check N_{g,d} = sum over n <= min(g,d) of N^{(n)}_{g,n}.
    #[arg(long, requires_all = ["g", "dim"])]
    pub identity: bool,
    /// Check that N_{g,d} is constant for d from g to --dmax.
    #[arg(long, requires_all = ["g", "dmax"])]
    pub stabilization: bool,
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long, short = 'd')]
    pub dim: Option<usize>,
    #[arg(long)]
    pub dmax: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
}

#[derive(Args, Debug)]
pub struct BruteForceArgs {
    #[arg(long, short = 'd')]
    pub dim: usize,
    #[arg(long, short = 'g')]
    pub genus: usize,
    #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
    pub order: OrderArg,
    /// Reduce to class representatives.
    #[arg(long)]
    pub representatives: bool,
}

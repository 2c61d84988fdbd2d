//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use rbm2_core::identities::IdentityKind;
use rbm2_core::search::DEFAULT_NODE_BUDGET;
use rbm2_core::ProductKind;

#[derive(Parser, Debug)]
#[command(name = "rbm2", version, about = "Rota-Baxter operators on 2x2 matrix algebras over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one operator against a problem; prints the check result as JSON.
    Verify {
        /// Operator file or `catalog:NAME?field=p&alpha=a&beta=b`.
        operator: String,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate all solutions of a problem into an .rbset file.
    Enumerate {
        /// Plain scan through the identity checker instead of backtracking.
        #[arg(long, conflicts_with = "no_prune")]
        naive: bool,
        /// Backtrack without early constraint checks.
        #[arg(long)]
        no_prune: bool,
        /// Restrict images to a span, e.g. `--image-span e11,e12`.
        #[arg(long, value_delimiter = ',')]
        image_span: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Partition an operator set into orbits.
    Orbits {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        group: GroupFlags,
        /// Include a move to the canonical form for every member.
        #[arg(long)]
        witnesses: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check that every weight-0 or weight-1 Jordan RB operator in a set is
    /// associative RB or (after phi) symmetrized.
    Dichotomy {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Match the orbits of a set against catalog representatives.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        group: GroupFlags,
        /// Representative (catalog reference or file); repeatable. Defaults to
        /// the catalog list for the set's weight.
        #[arg(long = "rep")]
        reps: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Census of Jordan subalgebras against the eight named representatives.
    Subalgebras {
        #[command(flatten)]
        common: Common,
    },
    /// Generate and export the polynomial system of a problem.
    Polysys {
        /// `none`, `eq3` (images in span(e11, e12)).
        #[arg(long, default_value = "none")]
        ansatz: String,
        /// `cas-script` or `structured`.
        #[arg(long, default_value = "cas-script")]
        format: String,
        /// Keep the weight as the extra variable `lam`.
        #[arg(long, conflicts_with = "weight")]
        symbolic_weight: bool,
        /// Compare the solution set with the literature system over --field.
        #[arg(long)]
        compare_literature: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run every verification over one field.
    PaperCheck {
        /// Skip the naive-scan comparison (the slowest check).
        #[arg(long)]
        skip_oracle: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// `p` or `p,deg`. Defaults to 3 unless an input file fixes the field.
    #[arg(long)]
    pub field: Option<String>,
    /// Integer weight, reduced into the field (-1 means p - 1).
    #[arg(long, allow_negative_numbers = true)]
    pub weight: Option<i64>,
    #[arg(long, value_parser = parse_product)]
    pub product: Option<ProductKind>,
    #[arg(long, value_parser = parse_identity)]
    pub identity: Option<IdentityKind>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    /// JSON on stdout instead of summary lines.
    #[arg(long)]
    pub json: bool,
    /// Omit wall times so reports are byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GroupFlags {
    /// Include transpose in the group.
    #[arg(long)]
    pub transpose: bool,
    /// Include nonzero scalar multiples (weight 0 only).
    #[arg(long)]
    pub scalars: bool,
    /// Include phi: R -> -R - lambda id (nonzero weight only).
    #[arg(long)]
    pub phi: bool,
}

fn parse_product(s: &str) -> Result<ProductKind, String> {
    s.parse().map_err(|e: rbm2_core::Error| e.to_string())
}

fn parse_identity(s: &str) -> Result<IdentityKind, String> {
    s.parse().map_err(|e: rbm2_core::Error| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_weight_parses() {
        let cli = Cli::try_parse_from(["rbm2", "enumerate", "--weight", "-1", "--product", "jordan"]).unwrap();
        let Command::Enumerate { common, .. } = cli.command else {
            panic!("wrong subcommand");
        };
        assert_eq!(common.weight, Some(-1));
        assert_eq!(common.product, Some(ProductKind::Jordan));
    }
}

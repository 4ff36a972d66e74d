use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stabform::FieldDesc;

#[derive(Debug, Parser)]
#[command(
    name = "stabform",
    version,
    about = "Exact invariants and classification of alternating 3-forms"
)]
pub struct Cli {
    /// Emit a key-sorted JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, stabilizer, stability, discriminant and orbit type.
    Classify(FormArgs),
    /// Rank, multisymplecticity, stabilizer dimension and stability.
    Invariants(FormArgs),
    /// Multiplication table of the commutative product (n ≡ 2 mod 3).
    MultTable(FormArgs),
    /// Trace form of the commutative product (n ≡ 2 mod 3).
    TraceForm(FormArgs),
    /// Symmetric bilinear form (n ≡ 1 mod 3).
    Bilinear7(FormArgs),
    /// Endomorphism K and the scalar K² (n ≡ 0 mod 3).
    Hitchin(FormArgs),
    /// Lie bracket (n ≡ 2 mod 3) or Malcev product (n ≡ 1 mod 3) with an
    /// identity scan.
    Bracket {
        #[command(flatten)]
        form: FormArgs,
        /// Identity to scan for; defaults to jacobi for the Lie bracket and
        /// malcev for the Malcev product.
        #[arg(long, value_enum)]
        check: Option<Check>,
    },
    /// Random elements g and the pulled-back forms g*γ.
    OrbitSample {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Random search for 3-forms with non-degenerate trace form.
    Search {
        /// Perturb orbit samples of this form instead of sampling freely.
        #[arg(long, conflicts_with = "file")]
        form: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value = "q")]
        field: FieldDesc,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Inclusive coefficient range, written `LO..HI`.
        #[arg(long, default_value = "-1..1", value_parser = parse_pool, allow_hyphen_values = true)]
        pool: RangeInclusive<i64>,
    },
    /// The registry of normal forms.
    Registry {
        #[command(subcommand)]
        action: RegistryAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum RegistryAction {
    /// List entries with their classification.
    List {
        /// Registry document; defaults to the bundled one.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Check every entry against its expected type and stabilizer dimension.
    Verify {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Jacobi,
    Malcev,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    /// Form expression, e.g. "e124 + e134 - 1/2*e[2,5,6]".
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    pub form: Option<String>,
    /// Read the form expression from a file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Ambient dimension; inferred from the largest index if omitted.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Coefficient field: `q` or `qsqrt:D`.
    #[arg(long, default_value = "q")]
    pub field: FieldDesc,
}

fn parse_pool(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got '{s}'"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound '{lo}'"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound '{hi}'"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pools() {
        assert_eq!(parse_pool("-1..1"), Ok(-1..=1));
        assert_eq!(parse_pool("0..0"), Ok(0..=0));
        assert!(parse_pool("2..1").is_err());
        assert!(parse_pool("x..1").is_err());
        assert!(parse_pool("3").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

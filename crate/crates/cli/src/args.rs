use clap::{Args, Parser, Subcommand, ValueEnum};
use qhom::homotopy::DEFAULT_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "qhom", version, about = "Exact homology of finite racks and quandles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the shelf, rack, quandle and quasigroup axioms.
    Validate {
        /// Catalog name (R3, T(2x2), Alex(5,2), ConjS4T, Triv4) or table file.
        source: String,
        /// Also report the order of the inner automorphism group.
        #[arg(long)]
        inner_group: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute homology groups over a range of degrees.
    Homology {
        #[arg(required = true)]
        sources: Vec<String>,
        /// One or more of rack, degenerate, quandle, reduced-quandle.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "rack")]
        theory: Vec<TheoryArg>,
        /// Use the augmented complex for the quandle theory.
        #[arg(long)]
        reduced: bool,
        #[arg(long, default_value = "1..3", value_parser = parse_degrees)]
        degrees: Degrees,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check homotopy identities on basis tuples.
    Verify {
        source: String,
        #[arg(long, value_enum)]
        identity: Identity,
        /// Degree of the input tuples.
        #[arg(long)]
        degree: usize,
        /// Restrict D or F to one index; all indices by default.
        #[arg(long)]
        j: Option<usize>,
        /// Run on non-quasigroup input and treat a failure as the expected outcome.
        #[arg(long)]
        expect_failure: bool,
        /// Sample basis tuples when the basis exceeds the budget.
        #[arg(long)]
        sample: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check that |Q| annihilates the torsion, one row per quandle and degree.
    Theorem {
        #[arg(required = true)]
        sources: Vec<String>,
        #[arg(long, value_enum, default_value = "rack")]
        theory: TheoryArg,
        #[arg(long, default_value = "1..4", value_parser = parse_degrees)]
        degrees: Degrees,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Multi-term homology of the trivial operation together with the given ones.
    Multiterm {
        /// Quandles on a common set; the trivial operation is prepended.
        #[arg(required = true)]
        ops: Vec<String>,
        /// Coefficients a_0, a_1, ..; a_0 belongs to the trivial operation.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<i64>,
        #[arg(long, default_value = "1..3", value_parser = parse_degrees)]
        degrees: Degrees,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum basis evaluations per identity.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads; all cores by default.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Raise the memory guard to its hard limit.
    #[arg(long)]
    pub force: bool,
    /// Neither read nor write cached results.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoryArg {
    Rack,
    Degenerate,
    Quandle,
    ReducedQuandle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    #[value(name = "D")]
    D,
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    Corollary,
    Precubic,
    ChainMaps,
}

/// An inclusive degree range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub lo: usize,
    pub hi: usize,
}

/// Accepts `A..B`, `A..=B` (both inclusive) or a single degree.
pub fn parse_degrees(s: &str) -> Result<Degrees, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad degree `{t}`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo == 0 {
        return Err("degrees start at 1".into());
    }
    if hi < lo {
        return Err(format!("empty degree range {lo}..{hi}"));
    }
    Ok(Degrees { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("1..3"), Ok(Degrees { lo: 1, hi: 3 }));
        assert_eq!(parse_degrees("2..=4"), Ok(Degrees { lo: 2, hi: 4 }));
        assert_eq!(parse_degrees("5"), Ok(Degrees { lo: 5, hi: 5 }));
        assert!(parse_degrees("0..2").is_err());
        assert!(parse_degrees("3..2").is_err());
        assert!(parse_degrees("a..b").is_err());
    }

    #[test]
    fn negative_coefficients_parse() {
        let cli = Cli::try_parse_from(["qhom", "multiterm", "R3", "--coeffs", "1,-1"]).unwrap();
        match cli.command {
            Command::Multiterm { coeffs, .. } => assert_eq!(coeffs, vec![1, -1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

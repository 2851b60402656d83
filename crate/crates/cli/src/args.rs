use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "nilpoisson", version, about = "Exact Dolbeault and holomorphic Poisson cohomology of nilpotent Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check brackets, Jacobi, J² = −1, nilpotency, integrability, and whether J is abelian.
    Validate(Common),
    /// Print the v-frame, central series, center and graded pieces.
    Info(Common),
    /// Dolbeault cohomology H^q(g^{p,0}); with a bivector, Poisson cohomology as well.
    Cohomology(Common),
    /// Test the bivector and compute its Poisson cohomology.
    Poisson(Common),
    /// Spectral-sequence pages E_1 … E_r and the degeneration verdict.
    Spectral(Common),
    /// Only the degeneration verdict.
    Degeneration(Common),
    /// Compare the c/t bicomplex total cohomology with H(g^{ℓ,0}).
    Crosscheck(Common),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Info(_) => "info",
            Command::Cohomology(_) => "cohomology",
            Command::Poisson(_) => "poisson",
            Command::Spectral(_) => "spectral",
            Command::Degeneration(_) => "degeneration",
            Command::Crosscheck(_) => "crosscheck",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Validate(c)
            | Command::Info(c)
            | Command::Cohomology(c)
            | Command::Poisson(c)
            | Command::Spectral(c)
            | Command::Degeneration(c)
            | Command::Crosscheck(c) => c,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Catalog entry `name[:param]`: tower:N, torus:N, kodaira.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub algebra: Option<String>,
    /// Algebra JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Bivector in the v-frame, e.g. "2 v1^v4 - v2^v3".
    #[arg(long, conflicts_with = "theorem2")]
    pub lambda: Option<String>,
    /// Use the constructed bivector that degenerates at E_2.
    #[arg(long)]
    pub theorem2: bool,
    /// Coefficient degree ℓ: restricts cohomology to p = ℓ and crosscheck to one ℓ.
    #[arg(long)]
    pub coef: Option<usize>,
    /// Number of pages to print (default n_c + 1).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub pages: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

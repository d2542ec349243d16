use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "wrc",
    version,
    about = "Weighted rational curves: equations, invariants, resolutions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parametrization, variables and the defining two-row matrix.
    Curve {
        #[command(flatten)]
        cell: Cell,
        /// Which matrix to print.
        #[arg(long, value_enum, default_value_t = Variant::M)]
        variant: Variant,
        #[command(flatten)]
        out: Output,
    },
    /// The 2x2 minors with their leading terms under <_w.
    Gb {
        #[command(flatten)]
        cell: Cell,
        /// Run Buchberger's criterion and print a one-line summary.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Variant::M)]
        variant: Variant,
        #[command(flatten)]
        out: Output,
    },
    /// Hilbert series of the coordinate ring and its coefficients.
    Hilbert {
        #[command(flatten)]
        cell: Cell,
        #[arg(long, default_value_t = 25)]
        order: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Eagon-Northcott Betti table.
    Betti {
        #[command(flatten)]
        cell: Cell,
        #[command(flatten)]
        out: Output,
    },
    /// Bigraded Hilbert series of the associated graded ring.
    Gr {
        #[command(flatten)]
        cell: Cell,
        #[arg(long, default_value_t = 12)]
        order: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Poincaré series of the residue field.
    Poincare {
        #[command(flatten)]
        cell: Cell,
        #[arg(long, default_value_t = 12)]
        order: u32,
        /// Print the singly graded series.
        #[arg(long)]
        ungraded: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Minimal free resolution of the residue field.
    Resolve {
        #[command(flatten)]
        cell: Cell,
        #[arg(long, default_value_t = 4)]
        steps: u32,
        /// Largest internal degree computed; defaults to e*steps + d + e.
        #[arg(long)]
        degree_cap: Option<u32>,
        /// Check d^2 = 0 and minimality, plus random combinations.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Lattice points on the lines i + j = d*a, with semigroup membership.
    Lattice {
        #[command(flatten)]
        cell: Cell,
        /// Largest internal degree a.
        #[arg(long, default_value_t = 4)]
        order: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Run every consistency check on one cell or a grid of cells.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Cell {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub e: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, requires = "e", conflicts_with_all = ["d_max", "e_max"])]
    pub d: Option<u32>,
    #[arg(long, requires = "d")]
    pub e: Option<u32>,
    #[arg(long, default_value_t = 6)]
    pub d_max: u32,
    #[arg(long, default_value_t = 6)]
    pub e_max: u32,
    /// Only cells with d + e at most this.
    #[arg(long, default_value_t = 7)]
    pub sum_max: u32,
    #[arg(long, default_value_t = 25)]
    pub order: u32,
    /// Largest d + e for the Gröbner-backed checks.
    #[arg(long, default_value_t = 9)]
    pub degree_cap: u32,
    /// Largest d + e for series-only checks.
    #[arg(long, default_value_t = 12)]
    pub series_cap: u32,
    /// Maximum number of pending S-pairs per Buchberger run.
    #[arg(long)]
    pub budget: Option<usize>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    M,
    Mv,
    M0,
}

impl From<Variant> for wrc_core::MatrixVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::M => wrc_core::MatrixVariant::M,
            Variant::Mv => wrc_core::MatrixVariant::Mv,
            Variant::M0 => wrc_core::MatrixVariant::M0,
        }
    }
}

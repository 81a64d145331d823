use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

/// Environment variable overriding the default prime modulus.
pub const PRIME_ENV: &str = "MDEG_PRIME";

/// One invocation: a subcommand plus the global flags.
#[derive(Parser, Debug, Clone)]
#[command(name = "mdeg", version, about = "Special fibres of Mustafin varieties and their degenerations")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Lattice configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// First seed; trial k uses seed + k.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, default_value_t = 1)]
    pub trials: usize,

    /// Prime modulus, as `32003` or `fp:32003`.
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Wall-clock cap per trial.
    #[arg(long, global = true)]
    pub cap_seconds: Option<f64>,

    /// Memory cap per trial, in MiB of stored basis terms.
    #[arg(long, global = true)]
    pub cap_mb: Option<u64>,

    /// Worker threads for batches; all logical cores by default.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Mustafin varieties of lattice configurations.
    Mustafin {
        #[command(subcommand)]
        cmd: MustafinCmd,
    },
    /// Degenerations of subvarieties.
    Degen {
        #[command(subcommand)]
        cmd: DegenCmd,
    },
    /// Specialization of parametric Groebner bases.
    Spec {
        #[command(subcommand)]
        cmd: SpecCmd,
    },
    /// Admissibility of syzygy data.
    Syz {
        #[command(subcommand)]
        cmd: SyzCmd,
    },
    /// Fixed test suites.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum MustafinCmd {
    /// Generators of the special fibre.
    Fibre,
    /// Compare the special fibre with the intersection of the I_v.
    Conjecture {
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Box bound for the Hilbert function comparison on passing trials.
        #[arg(long, default_value_t = 2)]
        hilbert_bound: u64,
    },
    /// Staged minor combinations for d = 4.
    Pipeline,
    /// Borel-fixedness of the conjectural fibres.
    Borel,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Both,
    ForwardOnly,
}

#[derive(Subcommand, Debug, Clone)]
pub enum DegenCmd {
    /// Generators of the integral model.
    Model {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Special fibre of the model and its coordinate components.
    Fibre {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Support of the fibre among the ambient components.
    Support {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Bound on the number of fibre components.
    Bound {
        #[arg(long)]
        curve: PathBuf,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum SpecCmd {
    /// Obstruction polynomials of a symbolic configuration or a problem file.
    Obstructions {
        /// Problem file with variables, generators and the saturating element.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Attempt shapes beyond the symbolic cap.
        #[arg(long)]
        force: bool,
    },
    /// Check one assignment.
    Check {
        #[arg(long)]
        data: PathBuf,
    },
    /// Draw an assignment satisfying the obstructions.
    Sample {
        #[arg(long, default_value_t = 100)]
        cap: usize,
        /// Obstruction set as produced by `spec obstructions`.
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum SyzCmd {
    /// Certify admissibility from witnesses.
    Admissible {
        #[arg(long)]
        data: PathBuf,
        /// Also test that the curve avoids the common zeros of the forms.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum SuiteCmd {
    /// The acceptance criteria, one line each.
    Acceptance,
}

use std::path::PathBuf;

use bks::Config;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "bks",
    version,
    about = "Verify compound-commutator witnesses and hidden-variable obstructions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true)]
    pub tol_identity: Option<f64>,
    #[arg(long, global = true)]
    pub tol_eig: Option<f64>,
    #[arg(long, global = true)]
    pub tol_commute: Option<f64>,
    #[arg(long, global = true)]
    pub tol_lp: Option<f64>,
    /// Master seed for sampling and fuzzing.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// JSON file with default tolerances; flags override it.
    #[arg(long, global = true, env = "BKS_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check (A - B)[AB, BA] = [A, B]^dagger [A, B] on projectors A, B.
    VerifyIdentity { file: PathBuf },
    /// Compound-commutator witness for A, B and a state D or phi.
    Witness { file: PathBuf },
    /// Every clause of the eigen-set theorem for A, B.
    Theorem1 { file: PathBuf },
    /// The rank-one construction from a state phi (optional xi).
    Theorem2 { file: PathBuf },
    /// Hidden-variable LP for a state and every other matrix in the file.
    HvLp { file: PathBuf },
    /// CHSH value and LP for a state and observables a1, a2, b1, b2.
    Chsh { file: PathBuf },
    /// Both measurement orders of A, B; Monte Carlo with --n.
    Seq {
        file: PathBuf,
        /// Samples per order.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run the invariant suite on random instances.
    Fuzz {
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        count: u64,
    },
}

impl GlobalArgs {
    pub fn config(&self) -> Result<Config> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
            }
            None => Config::default(),
        };
        let overrides = [
            (self.tol_identity, &mut cfg.tol_identity),
            (self.tol_eig, &mut cfg.tol_eig),
            (self.tol_commute, &mut cfg.tol_commute),
            (self.tol_lp, &mut cfg.tol_lp),
        ];
        for (flag, slot) in overrides {
            if let Some(v) = flag {
                *slot = v;
            }
        }
        for (name, v) in [
            ("tol_identity", cfg.tol_identity),
            ("tol_eig", cfg.tol_eig),
            ("tol_commute", cfg.tol_commute),
            ("tol_lp", cfg.tol_lp),
            ("tol_null", cfg.tol_null),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Config(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(cfg)
    }
}

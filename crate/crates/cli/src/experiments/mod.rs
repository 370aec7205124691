//! The five experiments behind the subcommands.

mod convexity;
mod example3;
mod hilbert_demo;
mod incompleteness;

pub use convexity::{convexity, ConvexityRow, ConvexitySummary};
pub use example3::{example3, DilatationRow, Example3Summary, GrowthRow};
pub use hilbert_demo::{hilbert_demo, HilbertRow};
pub use incompleteness::{incompleteness, IncompletenessRow, IncompletenessSummary, K_RADIUS};

use hqdisk::hilbert::{Kernel, PVConfig};
use hqdisk::poisson::QuadratureConfig;
use hqdisk::{PvConfig, Quadrature};

use crate::error::{CliError, Result};
use crate::lifts::LiftName;

/// Principal-value quadrature nodes used by every membership check.
pub const PV_NODES: usize = 8192;

/// Command-line settings; `None` selects the experiment's own default.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub nodes: Option<usize>,
    pub r_max: Option<f64>,
    pub epsilon: Option<f64>,
    pub n_max: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub lift: LiftName,
}

impl Default for Settings {
    fn default() -> Self {
        Self { nodes: None, r_max: None, epsilon: None, n_max: None, trials: None, seed: 42, lift: LiftName::Identity }
    }
}

impl Settings {
    fn quadrature(&self, nodes: usize, r_max: f64) -> Result<Quadrature> {
        Ok(QuadratureConfig::with_nodes(self.nodes.unwrap_or(nodes), self.r_max.unwrap_or(r_max))?)
    }

    fn pv(&self, nodes: usize) -> Result<PvConfig> {
        Ok(PVConfig::new(self.epsilon.unwrap_or(1e-6), nodes, Kernel::Tan)?)
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Invalid(msg()))
    }
}

fn fmt_list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.4}")).collect();
    format!("[{}]", parts.join(", "))
}

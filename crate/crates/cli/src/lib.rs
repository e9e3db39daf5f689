//! Experiment runner for the `bbsca` optimizers.
//!
//! [`run_experiment`] executes a matrix of algorithms and problems over seeded
//! trials and writes a self-describing results directory (see [`output`]).
//! [`compare_report`] and [`export_traces`] derive further reports from such a
//! directory.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod report;

use bbsca_core::benchmarks::registry;
use bbsca_core::{AlgorithmId, EngineeringId, EngineeringProblem64};

pub use config::{ConfigFile, ExperimentConfig};
pub use error::{CliError, Result};
pub use experiment::{run_experiment, ExperimentOutcome};
pub use report::{compare_report, export_traces};

use output::fmt_num;

/// Text for the `list` command.
pub fn list_registry() -> String {
    let mut out = String::from("algorithms:\n");
    for alg in AlgorithmId::ALL {
        out.push_str(&format!("  {alg}\n"));
    }
    out.push_str("benchmarks:\n");
    for b in registry() {
        let range = if b.lower.iter().all(|&l| l == b.lower[0]) && b.upper.iter().all(|&u| u == b.upper[0]) {
            format!("[{}, {}]^{}", fmt_num(b.lower[0]), fmt_num(b.upper[0]), b.dim)
        } else {
            let parts: Vec<String> = b
                .lower
                .iter()
                .zip(&b.upper)
                .map(|(l, u)| format!("[{}, {}]", fmt_num(*l), fmt_num(*u)))
                .collect();
            parts.join(" x ")
        };
        out.push_str(&format!(
            "  {:<4} {:<20} dim {:<3} {:<28} f_min {}\n",
            b.id.to_string(),
            b.name,
            b.dim,
            range,
            fmt_num(b.f_min)
        ));
    }
    out.push_str("engineering:\n");
    for id in EngineeringId::ALL {
        let p = EngineeringProblem64::new(id);
        out.push_str(&format!(
            "  {:<15} dim {}  {} published reference rows\n",
            id.to_string(),
            id.dim(),
            p.reference_solutions().len()
        ));
    }
    out
}

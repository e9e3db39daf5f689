//! Uniform lookup of benchmark and engineering problems by name.

use std::fmt;
use std::str::FromStr;

use crate::benchmarks::{Benchmark, BenchmarkId};
use crate::problems::{BridgeConstraint, EngineeringId, EngineeringProblem, PenaltyPolicy};
use crate::{Error, Objective, Real, Result};

/// A benchmark `F1`..`F23` or one of the engineering problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    Benchmark(BenchmarkId),
    Engineering(EngineeringId),
}

impl ProblemId {
    pub fn all() -> Vec<ProblemId> {
        BenchmarkId::all()
            .map(ProblemId::Benchmark)
            .chain(EngineeringId::ALL.into_iter().map(ProblemId::Engineering))
            .collect()
    }

    pub fn is_engineering(self) -> bool {
        matches!(self, ProblemId::Engineering(_))
    }

    pub fn dim(self) -> usize {
        match self {
            ProblemId::Benchmark(id) => id.default_dim(),
            ProblemId::Engineering(id) => id.dim(),
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ProblemId::Benchmark(id) => id.name(),
            ProblemId::Engineering(id) => match id {
                EngineeringId::GearTrain => "gear train ratio",
                EngineeringId::GasProduction => "gas production capacity",
                EngineeringId::BeamDesign => "beam deflection",
                EngineeringId::SpaceCapsule => "space capsule life support cost",
                EngineeringId::BridgeNetwork => "complex bridge network cost",
            },
        }
    }

    /// Builds the objective with the given options.
    pub fn instantiate<F: Real>(self, options: &ProblemOptions) -> Result<Box<dyn Objective<F>>> {
        Ok(match self {
            ProblemId::Benchmark(id) => Box::new(Benchmark::<F>::new(id)),
            ProblemId::Engineering(id) => Box::new(
                EngineeringProblem::<F>::new(id)
                    .with_penalty(options.penalty)?
                    .with_integer_gear(options.integer_gear)
                    .with_bridge_constraint(options.bridge_constraint),
            ),
        })
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemId::Benchmark(id) => id.fmt(f),
            ProblemId::Engineering(id) => id.fmt(f),
        }
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        s.parse::<BenchmarkId>()
            .map(ProblemId::Benchmark)
            .or_else(|_| s.parse::<EngineeringId>().map(ProblemId::Engineering))
            .map_err(|_| Error::UnknownId(s.to_string()))
    }
}

/// Settings that only affect engineering problems.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProblemOptions {
    pub penalty: PenaltyPolicy,
    pub integer_gear: bool,
    pub bridge_constraint: BridgeConstraint,
}

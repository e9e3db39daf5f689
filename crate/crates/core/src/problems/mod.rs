//! Five constrained engineering design problems.
//!
//! Constraints are handled with an exterior penalty
//! `raw + coefficient * sum(max(0, g_i)^exponent)` on top of the box bounds,
//! which the optimizers enforce by clamping. An infeasible sentinel
//! (`+inf`) from the raw objective propagates unchanged.
//!
//! Gas production and beam design are evaluated exactly as their formulas are
//! commonly printed, including the `x_1 x_1^3` term of the beam's second
//! constraint; the reference table therefore does not always reproduce.

mod reference;

use std::fmt;
use std::str::FromStr;

pub use reference::{reference_solutions, ReferenceSolution};

use crate::error::check_len;
use crate::{Error, Objective, Real, Result, RngStream, SearchSpace};

/// Target gear ratio denominator.
const GEAR_RATIO: f64 = 6.931;
const CAPSULE_K: [f64; 4] = [100.0, 100.0, 200.0, 150.0];
const CAPSULE_P: f64 = 0.6;
const BRIDGE_BETA: f64 = 0.0003;
const MIN_RELIABILITY: f64 = 0.9;
const BEAM_G1_LIMIT: f64 = 300.0;
const BEAM_G2_LIMIT: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EngineeringId {
    GearTrain,
    GasProduction,
    BeamDesign,
    SpaceCapsule,
    BridgeNetwork,
}

impl EngineeringId {
    pub const ALL: [EngineeringId; 5] = [
        EngineeringId::GearTrain,
        EngineeringId::GasProduction,
        EngineeringId::BeamDesign,
        EngineeringId::SpaceCapsule,
        EngineeringId::BridgeNetwork,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EngineeringId::GearTrain => "gear-train",
            EngineeringId::GasProduction => "gas-production",
            EngineeringId::BeamDesign => "beam-design",
            EngineeringId::SpaceCapsule => "space-capsule",
            EngineeringId::BridgeNetwork => "bridge-network",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            EngineeringId::GasProduction => 2,
            EngineeringId::BridgeNetwork => 5,
            _ => 4,
        }
    }
}

impl fmt::Display for EngineeringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineeringId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "geartrain" | "gear" => Ok(EngineeringId::GearTrain),
            "gasproduction" | "gas" => Ok(EngineeringId::GasProduction),
            "beamdesign" | "beam" => Ok(EngineeringId::BeamDesign),
            "spacecapsule" | "capsule" => Ok(EngineeringId::SpaceCapsule),
            "bridgenetwork" | "bridge" => Ok(EngineeringId::BridgeNetwork),
            _ => Err(Error::UnknownId(s.to_string())),
        }
    }
}

/// Exterior penalty settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyPolicy {
    pub coefficient: f64,
    pub exponent: f64,
}

impl Default for PenaltyPolicy {
    fn default() -> Self {
        Self { coefficient: 1e6, exponent: 2.0 }
    }
}

impl PenaltyPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.coefficient > 0.0 && self.coefficient.is_finite()) {
            return Err(Error::config("penalty coefficient must be positive"));
        }
        if !(self.exponent >= 1.0 && self.exponent.is_finite()) {
            return Err(Error::config("penalty exponent must be at least 1"));
        }
        Ok(())
    }
}

/// How the bridge network's reliability requirement is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BridgeConstraint {
    /// `0.9 <= r_5 <= 1` as a box bound on the fifth component.
    #[default]
    LiteralBox,
    /// `0.9 <= R_5`, penalized, with `r_5` in `[0.5, 1]`.
    SystemReliability,
}

impl fmt::Display for BridgeConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BridgeConstraint::LiteralBox => "literal",
            BridgeConstraint::SystemReliability => "reliability",
        })
    }
}

impl FromStr for BridgeConstraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "literal" | "box" => Ok(BridgeConstraint::LiteralBox),
            "reliability" | "system" => Ok(BridgeConstraint::SystemReliability),
            _ => Err(Error::invalid(format!("unknown bridge constraint mode `{s}`"))),
        }
    }
}

/// Squared error between the gear ratio `x1 x3 / (x2 x4)` and `1 / 6.931`.
pub fn gear_train<F: Real>(x: &[F; 4]) -> F {
    let err = F::one() / F::lit(GEAR_RATIO) - x[0] * x[2] / (x[1] * x[3]);
    err * err
}

/// Gas production cost; `+inf` when the bracketed base is not positive.
pub fn gas_production<F: Real>(x: &[F; 2]) -> F {
    let base = (F::lit(40.0) - x[0]) * (x[1] / F::lit(200.0)).ln();
    if !(base > F::zero()) {
        return F::infinity();
    }
    F::lit(61.8)
        + F::lit(5.72) * x[0]
        + F::lit(0.2623) * base.powf(F::lit(-0.85))
        + F::lit(0.087) * base
        + F::lit(700.23) * x[1].powf(F::lit(-0.75))
}

/// Beam objective with its two constraints as slacks (`<= 0` is satisfied).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamEvaluation<F> {
    pub f: F,
    pub g1: F,
    pub g2: F,
}

pub fn beam_design<F: Real>(x: &[F; 4]) -> BeamEvaluation<F> {
    let [x1, x2, x3, x4] = *x;
    let two = F::lit(2.0);
    let web = x2 - two * x4;
    let half = (x2 - x4) / two;
    let denom = x2 * web / F::lit(12.0) + x1 * x3.powi(3) / F::lit(6.0) + two * x1 * x1 * half * half;
    let f = if denom > F::zero() { F::lit(5000.0) / denom } else { F::infinity() };
    let g1 = two * x1 * x3 + x3 * web;
    let first = F::lit(18.0) * x2 * F::lit(1e4)
        / (x3 * web.powi(3) + two * x1 * x3 * (F::lit(4.0) * x4 * x4 + F::lit(3.0) * x2 * web));
    let second = F::lit(15.0) * x2 * F::lit(1e3) / (web * x3.powi(3) + two * x1 * x1.powi(3));
    BeamEvaluation {
        f,
        g1: g1 - F::lit(BEAM_G1_LIMIT),
        g2: first + second - F::lit(BEAM_G2_LIMIT),
    }
}

/// System reliability of the capsule's two redundant paths.
pub fn capsule_reliability<F: Real>(r: &[F; 4]) -> F {
    let one = F::one();
    let [r1, r2, r3, r4] = *r;
    let pair = (one - r1) * (one - r4);
    let path = one - r2 * (one - pair);
    one - r3 * pair * pair - (one - r3) * path * path
}

pub fn capsule_cost<F: Real>(r: &[F; 4]) -> F {
    r.iter()
        .zip(CAPSULE_K)
        .map(|(&rj, k)| F::lit(2.0 * k) * rj.powf(F::lit(CAPSULE_P)))
        .sum()
}

/// Bridge cost; `+inf` once any `r_j >= 1`.
pub fn bridge_cost<F: Real>(r: &[F; 5]) -> F {
    if r.iter().any(|&rj| rj >= F::one()) {
        return F::infinity();
    }
    r.iter()
        .map(|&rj| (F::lit(BRIDGE_BETA) / (F::one() - rj)).exp())
        .sum()
}

pub fn bridge_reliability<F: Real>(r: &[F; 5]) -> F {
    let [r1, r2, r3, r4, r5] = *r;
    r1 * r4 + r2 * r5 + r1 * r3 * r5 + r2 * r3 * r4 - r2 * r3 * r4 * r5
        + F::lit(2.0) * r1 * r2 * r3 * r4 * r5
        - r1 * r3 * r4 * r5
        - r1 * r2 * r3 * r5
        - r1 * r2 * r4 * r5
        - r1 * r2 * r3 * r4
}

fn array<F: Real, const N: usize>(x: &[F]) -> [F; N] {
    let mut out = [F::zero(); N];
    out.copy_from_slice(x);
    out
}

/// An engineering problem instance with its penalty and mode settings.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineeringProblem<F> {
    id: EngineeringId,
    space: SearchSpace<F>,
    penalty: PenaltyPolicy,
    integer_gear: bool,
    bridge_constraint: BridgeConstraint,
}

impl<F: Real> EngineeringProblem<F> {
    pub fn new(id: EngineeringId) -> Self {
        let mut problem = Self {
            id,
            space: SearchSpace::uniform(1, F::zero(), F::one()).expect("valid"),
            penalty: PenaltyPolicy::default(),
            integer_gear: false,
            bridge_constraint: BridgeConstraint::default(),
        };
        problem.space = problem.build_space();
        problem
    }

    pub fn with_penalty(mut self, penalty: PenaltyPolicy) -> Result<Self> {
        penalty.validate()?;
        self.penalty = penalty;
        Ok(self)
    }

    /// Rounds gear teeth counts to integers before evaluation.
    pub fn with_integer_gear(mut self, integer: bool) -> Self {
        self.integer_gear = integer;
        self
    }

    pub fn with_bridge_constraint(mut self, mode: BridgeConstraint) -> Self {
        self.bridge_constraint = mode;
        self.space = self.build_space();
        self
    }

    fn build_space(&self) -> SearchSpace<F> {
        let (lower, upper): (Vec<f64>, Vec<f64>) = match self.id {
            EngineeringId::GearTrain => (vec![12.0; 4], vec![60.0; 4]),
            EngineeringId::GasProduction => (vec![17.5, 300.0], vec![40.0, 600.0]),
            EngineeringId::BeamDesign => {
                (vec![10.0, 10.0, 0.9, 0.9], vec![80.0, 50.0, 5.0, 5.0])
            }
            EngineeringId::SpaceCapsule => (vec![0.5; 4], vec![1.0; 4]),
            EngineeringId::BridgeNetwork => {
                let r5 = match self.bridge_constraint {
                    BridgeConstraint::LiteralBox => MIN_RELIABILITY,
                    BridgeConstraint::SystemReliability => 0.5,
                };
                (vec![0.5, 0.5, 0.5, 0.5, r5], vec![1.0; 5])
            }
        };
        SearchSpace::new(
            lower.into_iter().map(F::lit).collect(),
            upper.into_iter().map(F::lit).collect(),
        )
        .expect("engineering bounds are valid")
    }

    pub fn id(&self) -> EngineeringId {
        self.id
    }

    pub fn space(&self) -> &SearchSpace<F> {
        &self.space
    }

    pub fn penalty(&self) -> PenaltyPolicy {
        self.penalty
    }

    pub fn bridge_constraint(&self) -> BridgeConstraint {
        self.bridge_constraint
    }

    pub fn integer_gear(&self) -> bool {
        self.integer_gear
    }

    /// Per-dimension integrality.
    pub fn integrality(&self) -> Vec<bool> {
        let integer = self.id == EngineeringId::GearTrain && self.integer_gear;
        vec![integer; self.id.dim()]
    }

    /// Applies integer rounding where the mode requires it.
    pub fn decode(&self, x: &[F]) -> Vec<F> {
        self.integrality()
            .iter()
            .zip(x)
            .map(|(&int, &v)| if int { v.round() } else { v })
            .collect()
    }

    pub fn raw_objective(&self, x: &[F]) -> Result<F> {
        check_len(self.id.dim(), x.len())?;
        Ok(self.raw_unchecked(&self.decode(x)))
    }

    fn raw_unchecked(&self, x: &[F]) -> F {
        match self.id {
            EngineeringId::GearTrain => gear_train(&array(x)),
            EngineeringId::GasProduction => gas_production(&array(x)),
            EngineeringId::BeamDesign => beam_design(&array(x)).f,
            EngineeringId::SpaceCapsule => capsule_cost(&array(x)),
            EngineeringId::BridgeNetwork => bridge_cost(&array(x)),
        }
    }

    /// Non-box inequality constraints `g(x) <= 0`.
    pub fn constraints(&self, x: &[F]) -> Result<Vec<F>> {
        check_len(self.id.dim(), x.len())?;
        Ok(self.constraints_unchecked(&self.decode(x)))
    }

    fn constraints_unchecked(&self, x: &[F]) -> Vec<F> {
        let floor = F::lit(MIN_RELIABILITY);
        match self.id {
            EngineeringId::GearTrain | EngineeringId::GasProduction => Vec::new(),
            EngineeringId::BeamDesign => {
                let b = beam_design(&array(x));
                vec![b.g1, b.g2]
            }
            EngineeringId::SpaceCapsule => vec![floor - capsule_reliability(&array(x))],
            EngineeringId::BridgeNetwork => match self.bridge_constraint {
                BridgeConstraint::LiteralBox => Vec::new(),
                BridgeConstraint::SystemReliability => {
                    vec![floor - bridge_reliability(&array(x))]
                }
            },
        }
    }

    /// System reliability for the two reliability problems.
    pub fn reliability(&self, x: &[F]) -> Result<Option<F>> {
        check_len(self.id.dim(), x.len())?;
        Ok(match self.id {
            EngineeringId::SpaceCapsule => Some(capsule_reliability(&array(x))),
            EngineeringId::BridgeNetwork => Some(bridge_reliability(&array(x))),
            _ => None,
        })
    }

    pub fn is_feasible(&self, x: &[F]) -> Result<bool> {
        Ok(self.constraints(x)?.iter().all(|&g| g <= F::zero()))
    }

    /// Raw objective plus the penalty of this problem's policy.
    pub fn penalized_objective(&self, x: &[F]) -> Result<F> {
        self.penalized_with(x, &self.penalty)
    }

    pub fn penalized_with(&self, x: &[F], policy: &PenaltyPolicy) -> Result<F> {
        check_len(self.id.dim(), x.len())?;
        Ok(self.penalized_unchecked(&self.decode(x), policy))
    }

    fn penalized_unchecked(&self, x: &[F], policy: &PenaltyPolicy) -> F {
        let raw = self.raw_unchecked(x);
        if !raw.is_finite() {
            return raw;
        }
        let exponent = F::lit(policy.exponent);
        let violation: F = self
            .constraints_unchecked(x)
            .into_iter()
            .filter(|&g| g > F::zero())
            .map(|g| g.powf(exponent))
            .sum();
        if violation > F::zero() {
            raw + F::lit(policy.coefficient) * violation
        } else {
            raw
        }
    }

    pub fn reference_solutions(&self) -> Vec<ReferenceSolution> {
        reference_solutions()
            .iter()
            .filter(|row| row.problem == self.id)
            .cloned()
            .collect()
    }
}

impl<F: Real> Objective<F> for EngineeringProblem<F> {
    fn name(&self) -> String {
        self.id.to_string()
    }

    fn space(&self) -> &SearchSpace<F> {
        &self.space
    }

    fn evaluate(&self, x: &[F], _rng: &mut RngStream) -> F {
        self.penalized_unchecked(&self.decode(x), &self.penalty)
    }
}

/// Exhaustive search over the integer gear grid `12..=60`.
pub fn gear_train_brute_force() -> ([u32; 4], f64) {
    let target = 1.0 / GEAR_RATIO;
    let mut best = ([12, 12, 12, 12], f64::INFINITY);
    for a in 12..=60u32 {
        for b in 12..=60u32 {
            for c in 12..=60u32 {
                for d in 12..=60u32 {
                    let err = target - f64::from(a * c) / f64::from(b * d);
                    let f = err * err;
                    if f < best.1 {
                        best = ([a, b, c, d], f);
                    }
                }
            }
        }
    }
    best
}

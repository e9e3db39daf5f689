//! Published comparison rows bundled as CSV.

use std::sync::OnceLock;

use serde::Deserialize;

use super::EngineeringId;

const DATA: &str = include_str!("../../data/reference_solutions.csv");

/// One published solution: decision vector and the objective (and
/// reliability, where reported) as printed.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSolution {
    pub problem: EngineeringId,
    pub technique: String,
    pub x: Vec<f64>,
    pub objective: f64,
    pub reliability: Option<f64>,
    pub budget: Option<u64>,
}

#[derive(Deserialize)]
struct Row {
    problem: String,
    technique: String,
    x1: Option<f64>,
    x2: Option<f64>,
    x3: Option<f64>,
    x4: Option<f64>,
    x5: Option<f64>,
    objective: f64,
    reliability: Option<f64>,
    budget: Option<u64>,
}

fn parse() -> Vec<ReferenceSolution> {
    csv::Reader::from_reader(DATA.as_bytes())
        .deserialize::<Row>()
        .map(|row| {
            let row = row.expect("bundled reference data is well formed");
            let problem: EngineeringId = row.problem.parse().expect("known problem id");
            let x: Vec<f64> = [row.x1, row.x2, row.x3, row.x4, row.x5]
                .into_iter()
                .flatten()
                .collect();
            assert_eq!(x.len(), problem.dim(), "{} {}", row.problem, row.technique);
            ReferenceSolution {
                problem,
                technique: row.technique,
                x,
                objective: row.objective,
                reliability: row.reliability,
                budget: row.budget,
            }
        })
        .collect()
}

/// All bundled rows, in table order.
pub fn reference_solutions() -> &'static [ReferenceSolution] {
    static ROWS: OnceLock<Vec<ReferenceSolution>> = OnceLock::new();
    ROWS.get_or_init(parse)
}

//! The 23 classic benchmark functions F1-F23.
//!
//! F1-F7 are unimodal, F8-F13 multimodal and scalable (30 dimensions by
//! default, 10 for F8), F14-F23 multimodal with fixed small dimension. The
//! functions follow their standard published definitions:
//!
//! * F3 is Schwefel 1.2 with the inner prefix sum.
//! * F6 is the step function `sum floor(x_i + 0.5)^2`.
//! * F10 averages both the squares and the cosines over `n`.
//! * F12 and F13 are the two generalized penalized functions with
//!   `y_i = 1 + (x_i + 1) / 4` and the boundary penalty [`penalty_u`].
//! * F14-F23 are Shekel's foxholes, Kowalik, six-hump camel, Branin,
//!   Goldstein-Price, Hartmann 3 and 6, and Shekel 5/7/10 with their usual
//!   coefficient tables and ranges (Branin on `[-5, 10] x [0, 15]`,
//!   Hartmann on the unit cube).
//! * F8's optimum is `-418.9829 n`, i.e. `-4189.83` at 10 dimensions.
//!
//! F7 adds a uniform `[0, 1)` draw from the run's [`RngStream`].

mod data;
mod functions;

use std::fmt;
use std::str::FromStr;

pub use functions::penalty_u;

use crate::error::check_len;
use crate::{Error, Objective, Real, Result, RngStream, SearchSpace};

/// Per-coordinate value of F8 at its minimizer `x_i = 420.9687...`.
const SCHWEFEL_2_26_MIN_PER_DIM: f64 = -418.982_887_272_433_74;
const SCHWEFEL_2_26_ARGMIN: f64 = 420.968_746_038_928_66;

/// Benchmark number `1..=23`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BenchmarkId(u8);

impl BenchmarkId {
    pub fn new(number: u8) -> Result<Self> {
        if (1..=23).contains(&number) {
            Ok(Self(number))
        } else {
            Err(Error::UnknownId(format!("F{number}")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = BenchmarkId> {
        (1..=23).map(BenchmarkId)
    }

    /// F1-F13 accept any dimension.
    pub fn is_scalable(self) -> bool {
        self.0 <= 13
    }

    pub fn is_noisy(self) -> bool {
        self.0 == 7
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            1 => "sphere",
            2 => "Schwefel 2.22",
            3 => "Schwefel 1.2",
            4 => "Schwefel 2.21",
            5 => "Rosenbrock",
            6 => "step",
            7 => "quartic with noise",
            8 => "Schwefel 2.26",
            9 => "Rastrigin",
            10 => "Ackley",
            11 => "Griewank",
            12 => "penalized 1",
            13 => "penalized 2",
            14 => "Shekel foxholes",
            15 => "Kowalik",
            16 => "six-hump camel",
            17 => "Branin",
            18 => "Goldstein-Price",
            19 => "Hartmann 3",
            20 => "Hartmann 6",
            21 => "Shekel 5",
            22 => "Shekel 7",
            _ => "Shekel 10",
        }
    }

    pub fn default_dim(self) -> usize {
        match self.0 {
            8 => 10,
            1..=13 => 30,
            15 | 21..=23 => 4,
            19 => 3,
            20 => 6,
            _ => 2,
        }
    }

    fn bounds(self) -> (f64, f64) {
        match self.0 {
            1 | 3 | 4 | 6 => (-100.0, 100.0),
            2 => (-10.0, 10.0),
            5 => (-30.0, 30.0),
            7 => (-1.28, 1.28),
            8 => (-500.0, 500.0),
            9 => (-5.12, 5.12),
            10 => (-32.0, 32.0),
            11 => (-600.0, 600.0),
            12 | 13 => (-50.0, 50.0),
            14 => (-65.536, 65.536),
            15 | 16 => (-5.0, 5.0),
            18 => (-2.0, 2.0),
            19 | 20 => (0.0, 1.0),
            21..=23 => (0.0, 10.0),
            // Branin has per-axis bounds, see `space`.
            _ => (f64::NAN, f64::NAN),
        }
    }

    fn space<F: Real>(self, dim: usize) -> SearchSpace<F> {
        let built = if self.0 == 17 {
            SearchSpace::new(vec![F::lit(-5.0), F::zero()], vec![F::lit(10.0), F::lit(15.0)])
        } else {
            let (lo, hi) = self.bounds();
            SearchSpace::uniform(dim, F::lit(lo), F::lit(hi))
        };
        built.expect("benchmark bounds are valid")
    }

    /// Known global minimum at dimension `dim`.
    fn f_min(self, dim: usize) -> f64 {
        match self.0 {
            8 => SCHWEFEL_2_26_MIN_PER_DIM * dim as f64,
            1..=13 => 0.0,
            14 => 0.998_003_837_794_449_8,
            15 => 3.074_859_878_056_058e-4,
            16 => -1.031_628_453_489_877_6,
            17 => 0.397_887_357_729_738_16,
            18 => 3.0,
            19 => -3.862_782_147_820_755_4,
            20 => -3.322_368_011_415_515,
            21 => -10.153_199_679_058_229,
            22 => -10.402_940_566_818_662,
            _ => -10.536_409_816_692_045,
        }
    }

    /// A known global minimizer at dimension `dim`. Minimizers of the fixed
    /// functions were refined numerically to double precision.
    fn x_star(self, dim: usize) -> Vec<f64> {
        match self.0 {
            5 | 13 => vec![1.0; dim],
            8 => vec![SCHWEFEL_2_26_ARGMIN; dim],
            12 => vec![-1.0; dim],
            1..=11 => vec![0.0; dim],
            14 => vec![-31.978_333_534_447_43, -31.978_334_175_871_968],
            15 => vec![
                0.192_833_452_488_335_3,
                0.190_836_249_323_556_03,
                0.123_117_299_766_945_31,
                0.135_765_994_520_231_08,
            ],
            16 => vec![0.089_842_016_529_270_98, -0.712_656_401_380_720_2],
            17 => vec![std::f64::consts::PI, 2.275],
            18 => vec![0.0, -1.0],
            19 => vec![0.114_614_327_869_381_44, 0.555_648_849_854_593_4, 0.852_546_952_926_669_5],
            20 => vec![
                0.201_689_512_892_290_5,
                0.150_010_693_237_428_97,
                0.476_873_976_761_176_8,
                0.275_332_430_783_950_8,
                0.311_651_618_487_395_87,
                0.657_300_534_998_914_2,
            ],
            21 => vec![4.000_037_152_376_549, 4.000_133_278_657_566, 4.000_037_151_057_555, 4.000_133_277_090_425],
            22 => vec![4.000_572_914_277_084, 4.000_689_366_040_889, 3.999_489_710_793_844_7, 3.999_606_160_006_792_3],
            _ => vec![4.000_746_530_253_313, 4.000_592_936_779_709, 3.999_663_395_771_478_7, 3.999_509_799_329_997_5],
        }
    }

    /// Noise-free value; for F7 this omits the random term.
    fn evaluate_clean<F: Real>(self, x: &[F]) -> F {
        use functions::*;
        match self.0 {
            1 => sphere(x),
            2 => schwefel_2_22(x),
            3 => schwefel_1_2(x),
            4 => schwefel_2_21(x),
            5 => rosenbrock(x),
            6 => step(x),
            7 => quartic(x),
            8 => schwefel_2_26(x),
            9 => rastrigin(x),
            10 => ackley(x),
            11 => griewank(x),
            12 => penalized_1(x),
            13 => penalized_2(x),
            14 => shekel_foxholes(x),
            15 => kowalik(x),
            16 => six_hump_camel(x),
            17 => branin(x),
            18 => goldstein_price(x),
            19 => hartmann_3(x),
            20 => hartmann_6(x),
            21 => shekel(x, 5),
            22 => shekel(x, 7),
            _ => shekel(x, 10),
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix(['F', 'f'])
            .and_then(|n| n.parse::<u8>().ok())
            .and_then(|n| BenchmarkId::new(n).ok())
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// A benchmark instance at a fixed dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Benchmark<F> {
    id: BenchmarkId,
    space: SearchSpace<F>,
    f_min: F,
    x_star: Vec<F>,
}

impl<F: Real> Benchmark<F> {
    /// The benchmark at its standard dimension.
    pub fn new(id: BenchmarkId) -> Self {
        Self::build(id, id.default_dim())
    }

    /// Scalable benchmarks (F1-F13) at another dimension.
    pub fn with_dim(id: BenchmarkId, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::config("dimension must be positive"));
        }
        if !id.is_scalable() && dim != id.default_dim() {
            return Err(Error::config(format!(
                "{id} has fixed dimension {}",
                id.default_dim()
            )));
        }
        Ok(Self::build(id, dim))
    }

    fn build(id: BenchmarkId, dim: usize) -> Self {
        Self {
            id,
            space: id.space(dim),
            f_min: F::lit(id.f_min(dim)),
            x_star: id.x_star(dim).into_iter().map(F::lit).collect(),
        }
    }

    pub fn id(&self) -> BenchmarkId {
        self.id
    }

    pub fn name(&self) -> &'static str {
        self.id.name()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &SearchSpace<F> {
        &self.space
    }

    pub fn f_min(&self) -> F {
        self.f_min
    }

    pub fn x_star(&self) -> Option<&[F]> {
        Some(&self.x_star)
    }

    /// Objective value, including F7's noise term drawn from `rng`.
    pub fn evaluate(&self, x: &[F], rng: &mut RngStream) -> Result<F> {
        check_len(self.dim(), x.len())?;
        Ok(self.value(x, rng))
    }

    /// Objective value without F7's noise term.
    pub fn evaluate_deterministic(&self, x: &[F]) -> Result<F> {
        check_len(self.dim(), x.len())?;
        Ok(self.id.evaluate_clean(x))
    }

    fn value(&self, x: &[F], rng: &mut RngStream) -> F {
        let clean = self.id.evaluate_clean(x);
        if self.id.is_noisy() {
            clean + F::lit(rng.uniform())
        } else {
            clean
        }
    }
}

impl<F: Real> Objective<F> for Benchmark<F> {
    fn name(&self) -> String {
        self.id.to_string()
    }

    fn space(&self) -> &SearchSpace<F> {
        &self.space
    }

    fn evaluate(&self, x: &[F], rng: &mut RngStream) -> F {
        self.value(x, rng)
    }
}

/// Evaluates benchmark `id` at its standard dimension.
pub fn evaluate_benchmark<F: Real>(id: BenchmarkId, x: &[F], rng: &mut RngStream) -> Result<F> {
    Benchmark::new(id).evaluate(x, rng)
}

/// Registry row for listings.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkInfo {
    pub id: BenchmarkId,
    pub name: &'static str,
    pub dim: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub f_min: f64,
}

pub fn registry() -> Vec<BenchmarkInfo> {
    BenchmarkId::all()
        .map(|id| {
            let b = Benchmark::<f64>::new(id);
            BenchmarkInfo {
                id,
                name: id.name(),
                dim: b.dim(),
                lower: b.space().lower().to_vec(),
                upper: b.space().upper().to_vec(),
                f_min: b.f_min(),
            }
        })
        .collect()
}

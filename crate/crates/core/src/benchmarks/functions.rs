//! Benchmark function bodies. Each takes a slice of the right length; the
//! fixed-dimension ones ignore extra coordinates.

use super::data::*;
use crate::Real;

#[inline]
fn c<F: Real>(v: f64) -> F {
    F::lit(v)
}

pub fn sphere<F: Real>(x: &[F]) -> F {
    x.iter().map(|&v| v * v).sum()
}

/// Schwefel 2.22: `sum |x_i| + prod |x_i|`.
pub fn schwefel_2_22<F: Real>(x: &[F]) -> F {
    let sum: F = x.iter().map(|v| v.abs()).sum();
    let prod = x.iter().fold(F::one(), |acc, v| acc * v.abs());
    sum + prod
}

/// Schwefel 1.2: sum of squared prefix sums.
pub fn schwefel_1_2<F: Real>(x: &[F]) -> F {
    x.iter()
        .scan(F::zero(), |prefix, &v| {
            *prefix = *prefix + v;
            Some(*prefix * *prefix)
        })
        .sum()
}

/// Schwefel 2.21: `max |x_i|`.
pub fn schwefel_2_21<F: Real>(x: &[F]) -> F {
    x.iter().fold(F::zero(), |m, v| m.max(v.abs()))
}

pub fn rosenbrock<F: Real>(x: &[F]) -> F {
    x.windows(2)
        .map(|w| {
            let a = w[1] - w[0] * w[0];
            let b = w[0] - F::one();
            c::<F>(100.0) * a * a + b * b
        })
        .sum()
}

/// Step function `sum floor(x_i + 0.5)^2`.
pub fn step<F: Real>(x: &[F]) -> F {
    x.iter()
        .map(|&v| {
            let s = (v + c(0.5)).floor();
            s * s
        })
        .sum()
}

/// Deterministic part of the quartic-with-noise function, `sum i x_i^4`.
pub fn quartic<F: Real>(x: &[F]) -> F {
    x.iter()
        .enumerate()
        .map(|(i, &v)| F::from_count(i + 1) * v.powi(4))
        .sum()
}

/// Schwefel 2.26: `-sum x_i sin(sqrt|x_i|)`.
pub fn schwefel_2_26<F: Real>(x: &[F]) -> F {
    -x.iter().map(|&v| v * v.abs().sqrt().sin()).sum::<F>()
}

pub fn rastrigin<F: Real>(x: &[F]) -> F {
    let ten = c::<F>(10.0);
    x.iter()
        .map(|&v| v * v - ten * (F::TAU() * v).cos() + ten)
        .sum()
}

pub fn ackley<F: Real>(x: &[F]) -> F {
    let n = F::from_count(x.len());
    let sq = x.iter().map(|&v| v * v).sum::<F>() / n;
    let cs = x.iter().map(|&v| (F::TAU() * v).cos()).sum::<F>() / n;
    -c::<F>(20.0) * (-c::<F>(0.2) * sq.sqrt()).exp() - cs.exp() + c(20.0) + F::E()
}

pub fn griewank<F: Real>(x: &[F]) -> F {
    let sum = x.iter().map(|&v| v * v).sum::<F>() / c(4000.0);
    let prod = x
        .iter()
        .enumerate()
        .fold(F::one(), |acc, (i, &v)| acc * (v / F::from_count(i + 1).sqrt()).cos());
    sum - prod + F::one()
}

/// Boundary penalty `u(x, a, k, m)`: zero on `[-a, a]`, `k (|x| - a)^m`
/// outside.
pub fn penalty_u<F: Real>(x: F, a: F, k: F, m: F) -> F {
    if x > a {
        k * (x - a).powf(m)
    } else if x < -a {
        k * (-x - a).powf(m)
    } else {
        F::zero()
    }
}

fn boundary_penalty<F: Real>(x: &[F], a: f64) -> F {
    x.iter().map(|&v| penalty_u(v, c(a), c(100.0), c(4.0))).sum()
}

/// Generalized penalized function 1 with `y_i = 1 + (x_i + 1) / 4`.
pub fn penalized_1<F: Real>(x: &[F]) -> F {
    let pi = F::PI();
    let ten = c::<F>(10.0);
    let y: Vec<F> = x.iter().map(|&v| F::one() + (v + F::one()) / c(4.0)).collect();
    let n = y.len();
    let head = ten * (pi * y[0]).sin().powi(2);
    let body: F = y
        .windows(2)
        .map(|w| (w[0] - F::one()).powi(2) * (F::one() + ten * (pi * w[1]).sin().powi(2)))
        .sum();
    let tail = (y[n - 1] - F::one()).powi(2);
    pi / F::from_count(n) * (head + body + tail) + boundary_penalty(x, 10.0)
}

/// Generalized penalized function 2.
pub fn penalized_2<F: Real>(x: &[F]) -> F {
    let pi = F::PI();
    let three_pi = c::<F>(3.0) * pi;
    let n = x.len();
    let head = (three_pi * x[0]).sin().powi(2);
    let body: F = x
        .windows(2)
        .map(|w| (w[0] - F::one()).powi(2) * (F::one() + (three_pi * w[1]).sin().powi(2)))
        .sum();
    let last = x[n - 1];
    let tail = (last - F::one()).powi(2) * (F::one() + (F::TAU() * last).sin().powi(2));
    c::<F>(0.1) * (head + body + tail) + boundary_penalty(x, 5.0)
}

pub fn shekel_foxholes<F: Real>(x: &[F]) -> F {
    let inner: F = (0..25)
        .map(|j| {
            let d0 = x[0] - c(FOXHOLES[0][j]);
            let d1 = x[1] - c(FOXHOLES[1][j]);
            F::one() / (F::from_count(j + 1) + d0.powi(6) + d1.powi(6))
        })
        .sum();
    F::one() / (c::<F>(1.0 / 500.0) + inner)
}

pub fn kowalik<F: Real>(x: &[F]) -> F {
    KOWALIK_A
        .iter()
        .zip(KOWALIK_INV_B)
        .map(|(&a, inv_b)| {
            let b = c::<F>(1.0 / inv_b);
            let r = c::<F>(a) - x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
            r * r
        })
        .sum()
}

pub fn six_hump_camel<F: Real>(x: &[F]) -> F {
    let (a, b) = (x[0], x[1]);
    c::<F>(4.0) * a * a - c::<F>(2.1) * a.powi(4) + a.powi(6) / c(3.0) + a * b
        - c::<F>(4.0) * b * b
        + c::<F>(4.0) * b.powi(4)
}

pub fn branin<F: Real>(x: &[F]) -> F {
    let pi = F::PI();
    let (a, b) = (x[0], x[1]);
    let q = b - c::<F>(5.1) / (c::<F>(4.0) * pi * pi) * a * a + c::<F>(5.0) / pi * a - c(6.0);
    q * q + c::<F>(10.0) * (F::one() - F::one() / (c::<F>(8.0) * pi)) * a.cos() + c(10.0)
}

pub fn goldstein_price<F: Real>(x: &[F]) -> F {
    let (a, b) = (x[0], x[1]);
    let s = a + b + F::one();
    let first = F::one()
        + s * s
            * (c::<F>(19.0) - c::<F>(14.0) * a + c::<F>(3.0) * a * a - c::<F>(14.0) * b
                + c::<F>(6.0) * a * b
                + c::<F>(3.0) * b * b);
    let d = c::<F>(2.0) * a - c::<F>(3.0) * b;
    let second = c::<F>(30.0)
        + d * d
            * (c::<F>(18.0) - c::<F>(32.0) * a + c::<F>(12.0) * a * a + c::<F>(48.0) * b
                - c::<F>(36.0) * a * b
                + c::<F>(27.0) * b * b);
    first * second
}

fn hartmann<F: Real, const D: usize>(x: &[F], a: &[[f64; D]; 4], p: &[[f64; D]; 4]) -> F {
    -(0..4)
        .map(|i| {
            let e: F = (0..D)
                .map(|j| {
                    let d = x[j] - c(p[i][j]);
                    c::<F>(a[i][j]) * d * d
                })
                .sum();
            c::<F>(HARTMANN_C[i]) * (-e).exp()
        })
        .sum::<F>()
}

pub fn hartmann_3<F: Real>(x: &[F]) -> F {
    hartmann(x, &HARTMANN3_A, &HARTMANN3_P)
}

pub fn hartmann_6<F: Real>(x: &[F]) -> F {
    hartmann(x, &HARTMANN6_A, &HARTMANN6_P)
}

/// Shekel function with the first `m` of its ten centres.
pub fn shekel<F: Real>(x: &[F], m: usize) -> F {
    -(0..m)
        .map(|i| {
            let d: F = (0..4)
                .map(|j| {
                    let t = x[j] - c(SHEKEL_A[i][j]);
                    t * t
                })
                .sum();
            F::one() / (d + c(SHEKEL_C[i]))
        })
        .sum::<F>()
}

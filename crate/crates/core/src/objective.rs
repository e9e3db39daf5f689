use crate::{Real, RngStream, SearchSpace};

/// A minimization target over a box.
///
/// `evaluate` receives the run's [`RngStream`] so that noisy objectives stay
/// reproducible; deterministic objectives ignore it. Callers guarantee that
/// `x` has `space().dim()` coordinates and lies inside the box.
pub trait Objective<F: Real>: Sync {
    fn name(&self) -> String;

    fn space(&self) -> &SearchSpace<F>;

    fn evaluate(&self, x: &[F], rng: &mut RngStream) -> F;
}

impl<F: Real, T: Objective<F> + ?Sized> Objective<F> for &T {
    fn name(&self) -> String {
        (**self).name()
    }

    fn space(&self) -> &SearchSpace<F> {
        (**self).space()
    }

    fn evaluate(&self, x: &[F], rng: &mut RngStream) -> F {
        (**self).evaluate(x, rng)
    }
}

impl<F: Real, T: Objective<F> + ?Sized> Objective<F> for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn space(&self) -> &SearchSpace<F> {
        (**self).space()
    }

    fn evaluate(&self, x: &[F], rng: &mut RngStream) -> F {
        (**self).evaluate(x, rng)
    }
}

/// Adapts a deterministic closure to [`Objective`].
pub struct FnObjective<F, G> {
    name: String,
    space: SearchSpace<F>,
    func: G,
}

impl<F: Real, G: Fn(&[F]) -> F + Sync> FnObjective<F, G> {
    pub fn new(name: impl Into<String>, space: SearchSpace<F>, func: G) -> Self {
        Self {
            name: name.into(),
            space,
            func,
        }
    }
}

impl<F: Real, G: Fn(&[F]) -> F + Sync> Objective<F> for FnObjective<F, G> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn space(&self) -> &SearchSpace<F> {
        &self.space
    }

    fn evaluate(&self, x: &[F], _rng: &mut RngStream) -> F {
        (self.func)(x)
    }
}

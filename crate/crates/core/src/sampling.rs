//! Seeded sample points and random guard-safe specs.
//!
//! Parameter ranges are chosen so that every drawn component is defined,
//! finite, of moderate size and has a nonzero derivative on `[0.5, 2]`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::funcspec::{ComponentFn, FunctionSpec, OuterFn};

/// Deterministic generator used for every seeded draw.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` points with coordinates log-uniform in `[lo, hi]`.
pub fn log_uniform_points<R: Rng + ?Sized>(rng: &mut R, n: usize, count: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(a..=b).exp()).collect())
        .collect()
}

/// Default constant-elasticity sampling: 20 points log-uniform in `[0.5, 2]^n`.
pub fn default_ces_samples(n: usize, seed: u64) -> Vec<Vec<f64>> {
    log_uniform_points(&mut rng_from_seed(seed), n, 20, 0.5, 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Pow,
    Exp,
    Logpow,
}

impl ComponentKind {
    pub const ALL: [ComponentKind; 3] = [ComponentKind::Pow, ComponentKind::Exp, ComponentKind::Logpow];
}

/// Uniform magnitude in `[lo, hi]` with a random sign.
pub fn signed<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let m = rng.gen_range(lo..=hi);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

/// A random component of `kind`, scaled so that `|f(1)|` lies in
/// `[0.5, 1.5]`. With `positive`, the component value is positive on
/// `[0.5, 2]` (needed under `log` or fractional outer powers).
///
/// Keeping factor values near 1 keeps Hessian entries moderate, so the
/// rounding noise of a determinant that vanishes exactly (two exponential
/// factors) stays far below the `1e-8` absolute floor of the zero tests.
pub fn random_component<R: Rng + ?Sized>(rng: &mut R, kind: ComponentKind, positive: bool) -> ComponentFn {
    let size = |rng: &mut R| {
        if positive {
            rng.gen_range(0.5..=1.5)
        } else {
            signed(rng, 0.5, 1.5)
        }
    };
    match kind {
        ComponentKind::Pow => {
            let u = size(rng);
            let beta: f64 = rng.gen_range(0.0..=1.0);
            let alpha = signed(rng, 0.3, 2.0);
            ComponentFn::pow(u / (1.0 + beta).powf(alpha), beta, alpha)
        }
        ComponentKind::Exp => {
            let u = size(rng);
            let lambda = signed(rng, 0.3, 1.2);
            ComponentFn::exp(u * (-lambda).exp(), lambda)
        }
        ComponentKind::Logpow => ComponentFn::logpow(rng.gen_range(1.0..=1.5), signed(rng, 0.2, 0.4), signed(rng, 0.3, 2.0)),
    }
}

/// `n` components with kinds drawn uniformly.
pub fn random_components<R: Rng + ?Sized>(rng: &mut R, n: usize, positive: bool) -> Vec<ComponentFn> {
    (0..n)
        .map(|_| {
            let kind = ComponentKind::ALL[rng.gen_range(0..3)];
            random_component(rng, kind, positive)
        })
        .collect()
}

/// An outer function drawn from identity, `u^3`, `u^(1/2)`, `ln u` and a
/// positive scale. All but identity and the cube need a positive inner value.
pub fn random_outer<R: Rng + ?Sized>(rng: &mut R) -> OuterFn {
    match rng.gen_range(0..5) {
        0 => OuterFn::Identity,
        1 => OuterFn::Power { d: 3.0 },
        2 => OuterFn::Power { d: 0.5 },
        3 => OuterFn::Log,
        _ => OuterFn::Scale {
            gamma: rng.gen_range(0.5..=2.0),
        },
    }
}

/// A random ACMS spec in `n` variables with `rho` in `[-2, -0.2]` or
/// `[0.2, 0.9]`.
pub fn random_acms<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FunctionSpec {
    let rho = if rng.gen_bool(0.5) {
        rng.gen_range(-2.0..=-0.2)
    } else {
        rng.gen_range(0.2..=0.9)
    };
    FunctionSpec::Acms {
        gamma: rng.gen_range(0.5..=2.0),
        betas: (0..n).map(|_| rng.gen_range(0.5..=2.0)).collect(),
        rho,
        d: rng.gen_range(0.3..=2.0),
        outer: OuterFn::Identity,
    }
}

/// A homothetical, composite or ACMS spec in `n` variables, each kind with
/// equal probability (ACMS only for `n >= 2`).
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FunctionSpec {
    let kinds = if n >= 2 { 3 } else { 2 };
    match rng.gen_range(0..kinds) {
        0 => FunctionSpec::Homothetical {
            components: random_components(rng, n, false),
        },
        1 => FunctionSpec::Composite {
            outer: random_outer(rng),
            components: random_components(rng, n, true),
        },
        _ => random_acms(rng, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspec::eval;

    #[test]
    fn seeded_points_are_reproducible_and_in_range() {
        let a = default_ces_samples(3, 42);
        let b = default_ces_samples(3, 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        assert!(a.iter().flatten().all(|x| (0.5..=2.0).contains(x)));
        assert_ne!(a, default_ces_samples(3, 7));
    }

    #[test]
    fn random_components_are_admissible() {
        let mut rng = rng_from_seed(1);
        for _ in 0..200 {
            let components = random_components(&mut rng, 3, false);
            let spec = FunctionSpec::Homothetical { components };
            spec.validate().unwrap();
            for p in log_uniform_points(&mut rng, 3, 5, 0.5, 2.0) {
                assert!(eval(&spec, &p).unwrap().is_finite());
            }
        }
    }

    #[test]
    fn random_specs_evaluate_on_the_sample_box() {
        let mut rng = rng_from_seed(3);
        for n in 1..=5 {
            for _ in 0..100 {
                let spec = random_spec(&mut rng, n);
                spec.validate().unwrap();
                for p in log_uniform_points(&mut rng, n, 3, 0.5, 2.0) {
                    assert!(eval(&spec, &p).unwrap().is_finite(), "{spec:?} at {p:?}");
                }
            }
        }
    }
}

//! Second-order differentiation.
//!
//! [`jet1d`] gives closed-form value, first and second derivative of each
//! component family. [`jet_multivariate`] assembles gradient and Hessian of a
//! [`FunctionSpec`] from those by the product and chain rules, filling each
//! unordered pair once so the Hessian is exactly symmetric. [`fd_jet`] is an
//! independent central-difference oracle for black-box evaluators.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::funcspec::{power, ComponentFn, FunctionSpec, OuterFn};

/// Value and first two derivatives of a one-variable function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet1 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Value, gradient and Hessian of a multivariate function at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2N {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: DMatrix<f64>,
}

impl Jet2N {
    pub fn dim(&self) -> usize {
        self.gradient.len()
    }
}

// coefficient * base^exponent, with a zero coefficient short-circuiting so that
// e.g. 0 * 0^-1 stays 0 for integral exponents at the origin
fn term(coefficient: f64, base: f64, exponent: f64) -> f64 {
    if coefficient == 0.0 {
        0.0
    } else {
        coefficient * power(base, exponent)
    }
}

pub fn jet1d(c: &ComponentFn, x: f64) -> Result<Jet1> {
    c.check_domain(x)?;
    let jet = match *c {
        ComponentFn::Pow { gamma, beta, alpha } => {
            let y = x + beta;
            Jet1 {
                value: gamma * power(y, alpha),
                d1: term(gamma * alpha, y, alpha - 1.0),
                d2: term(gamma * alpha * (alpha - 1.0), y, alpha - 2.0),
            }
        }
        ComponentFn::Exp { gamma, lambda } => {
            let value = gamma * (lambda * x).exp();
            Jet1 {
                value,
                d1: lambda * value,
                d2: lambda * lambda * value,
            }
        }
        ComponentFn::Logpow { a, b, m } => {
            let l = a + b * x.ln();
            let dl = b / x;
            Jet1 {
                value: power(l, m),
                d1: term(m, l, m - 1.0) * dl,
                d2: term(m * (m - 1.0), l, m - 2.0) * dl * dl - term(m, l, m - 1.0) * dl / x,
            }
        }
    };
    if !(jet.value.is_finite() && jet.d1.is_finite() && jet.d2.is_finite()) {
        return Err(Error::Domain(format!("{} component is not finite at x = {x}", c.kind_name())));
    }
    Ok(jet)
}

fn check_point(spec: &FunctionSpec, point: &[f64]) -> Result<()> {
    let n = spec.dim();
    if point.len() != n {
        return Err(Error::Spec(format!(
            "point has {} coordinates but the spec has {n} variables",
            point.len()
        )));
    }
    if let Some(x) = point.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("non-finite coordinate {x}")));
    }
    if spec.is_production_model() {
        if let Some((i, x)) = point.iter().enumerate().find(|(_, &x)| x <= 0.0) {
            return Err(Error::Domain(format!(
                "x{} = {x} is outside the positive orthant",
                i + 1
            )));
        }
    }
    Ok(())
}

pub fn jet_multivariate(spec: &FunctionSpec, point: &[f64]) -> Result<Jet2N> {
    spec.validate_with(true)?;
    check_point(spec, point)?;
    let inner = match spec {
        FunctionSpec::Homothetical { components } | FunctionSpec::Composite { components, .. } => {
            product_jet(components, point)?
        }
        FunctionSpec::Acms {
            gamma, betas, rho, d, ..
        } => acms_jet(*gamma, betas, *rho, *d, point)?,
    };
    let jet = match spec.outer() {
        OuterFn::Identity => inner,
        outer => compose(outer, inner)?,
    };
    if !(jet.value.is_finite() && jet.gradient.iter().all(|g| g.is_finite()) && jet.hessian.iter().all(|h| h.is_finite())) {
        return Err(Error::Domain(format!("derivatives are not finite at {point:?}")));
    }
    Ok(jet)
}

/// Jet of `f1(x1) * ... * fn(xn)`. Partial products are taken over the other
/// factors directly, so no component value is ever divided by.
fn product_jet(components: &[ComponentFn], point: &[f64]) -> Result<Jet2N> {
    let n = components.len();
    let jets = components
        .iter()
        .zip(point)
        .enumerate()
        .map(|(i, (c, &x))| {
            jet1d(c, x).map_err(|e| match e {
                Error::Domain(msg) => Error::Domain(format!("x{}: {msg}", i + 1)),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let value: f64 = jets.iter().map(|j| j.value).product();
    let others = |skip: &[usize]| -> f64 {
        jets.iter()
            .enumerate()
            .filter(|(k, _)| !skip.contains(k))
            .map(|(_, j)| j.value)
            .product()
    };

    let mut gradient = vec![0.0; n];
    let mut hessian = DMatrix::zeros(n, n);
    for i in 0..n {
        let rest = others(&[i]);
        gradient[i] = jets[i].d1 * rest;
        hessian[(i, i)] = jets[i].d2 * rest;
        for j in (i + 1)..n {
            let h = jets[i].d1 * jets[j].d1 * others(&[i, j]);
            hessian[(i, j)] = h;
            hessian[(j, i)] = h;
        }
    }
    Ok(Jet2N {
        value,
        gradient,
        hessian,
    })
}

/// Jet of `gamma * S^(d/rho)` with `S = sum (beta_i x_i)^rho`.
fn acms_jet(gamma: f64, betas: &[f64], rho: f64, d: f64, point: &[f64]) -> Result<Jet2N> {
    let n = betas.len();
    let s: Vec<f64> = betas.iter().zip(point).map(|(b, x)| (b * x).powf(rho)).collect();
    let ds: Vec<f64> = s.iter().zip(point).map(|(si, x)| rho * si / x).collect();
    let d2s: Vec<f64> = s.iter().zip(point).map(|(si, x)| rho * (rho - 1.0) * si / (x * x)).collect();
    let total: f64 = s.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Domain(format!("ACMS inner sum {total} is not positive")));
    }
    let k = d / rho;
    let g0 = gamma * total.powf(k);
    let g1 = gamma * k * total.powf(k - 1.0);
    let g2 = gamma * k * (k - 1.0) * total.powf(k - 2.0);

    let mut gradient = vec![0.0; n];
    let mut hessian = DMatrix::zeros(n, n);
    for i in 0..n {
        gradient[i] = g1 * ds[i];
        hessian[(i, i)] = g1 * d2s[i] + g2 * ds[i] * ds[i];
        for j in (i + 1)..n {
            let h = g2 * ds[i] * ds[j];
            hessian[(i, j)] = h;
            hessian[(j, i)] = h;
        }
    }
    Ok(Jet2N {
        value: g0,
        gradient,
        hessian,
    })
}

/// Chain rule for `F(u(x))`: `f_i = F' u_i`, `f_ij = F' u_ij + F'' u_i u_j`.
fn compose(outer: OuterFn, inner: Jet2N) -> Result<Jet2N> {
    let (f0, f1, f2) = outer.jet(inner.value)?;
    let n = inner.dim();
    let gradient: Vec<f64> = inner.gradient.iter().map(|g| f1 * g).collect();
    let mut hessian = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let h = f1 * inner.hessian[(i, j)] + f2 * inner.gradient[i] * inner.gradient[j];
            hessian[(i, j)] = h;
            hessian[(j, i)] = h;
        }
    }
    Ok(Jet2N {
        value: f0,
        gradient,
        hessian,
    })
}

/// Step sizes for [`fd_jet`], relative to `max(1, |x_i|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPolicy {
    /// Central first differences.
    pub first: f64,
    /// Three-point second differences and the four-point mixed stencil.
    pub second: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            first: 6e-6,
            second: 2e-4,
        }
    }
}

/// Central-difference gradient and Hessian (truncation error O(h^2)).
///
/// Any stencil evaluation that fails or is non-finite yields
/// [`Error::Numerical`] naming the offending point.
pub fn fd_jet<F>(eval: F, point: &[f64], steps: StepPolicy) -> Result<Jet2N>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let n = point.len();
    let mut x = point.to_vec();
    let at = |x: &[f64]| -> Result<f64> {
        match eval(x) {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(v) => Err(Error::Numerical(format!("evaluator returned {v} at stencil point {x:?}"))),
            Err(e) => Err(Error::Numerical(format!("stencil point {x:?} left the domain: {e}"))),
        }
    };
    let value = at(&x)?;
    let scale = |xi: f64| xi.abs().max(1.0);

    let mut gradient = vec![0.0; n];
    for i in 0..n {
        let h = steps.first * scale(point[i]);
        x[i] = point[i] + h;
        let fp = at(&x)?;
        x[i] = point[i] - h;
        let fm = at(&x)?;
        x[i] = point[i];
        gradient[i] = (fp - fm) / (2.0 * h);
    }

    let mut hessian = DMatrix::zeros(n, n);
    for i in 0..n {
        let hi = steps.second * scale(point[i]);
        x[i] = point[i] + hi;
        let fp = at(&x)?;
        x[i] = point[i] - hi;
        let fm = at(&x)?;
        x[i] = point[i];
        hessian[(i, i)] = (fp - 2.0 * value + fm) / (hi * hi);

        for j in (i + 1)..n {
            let hj = steps.second * scale(point[j]);
            let mut corner = |si: f64, sj: f64| -> Result<f64> {
                x[i] = point[i] + si * hi;
                x[j] = point[j] + sj * hj;
                let v = at(&x);
                x[i] = point[i];
                x[j] = point[j];
                v
            };
            let pp = corner(1.0, 1.0)?;
            let pm = corner(1.0, -1.0)?;
            let mp = corner(-1.0, 1.0)?;
            let mm = corner(-1.0, -1.0)?;
            let h = (pp - pm - mp + mm) / (4.0 * hi * hj);
            hessian[(i, j)] = h;
            hessian[(j, i)] = h;
        }
    }
    Ok(Jet2N {
        value,
        gradient,
        hessian,
    })
}

/// `max |approx - exact| / max(1, max |exact|)`: the largest entry error
/// relative to the largest exact entry, with a unit floor so that entries
/// which vanish exactly (e.g. the Hessian of a linear function) compare on an
/// absolute scale.
pub fn max_relative_error<'a>(
    exact: impl IntoIterator<Item = &'a f64>,
    approx: impl IntoIterator<Item = &'a f64>,
) -> f64 {
    let (mut diff, mut size) = (0.0f64, 1.0f64);
    for (e, a) in exact.into_iter().zip(approx) {
        diff = diff.max((a - e).abs());
        size = size.max(e.abs());
    }
    diff / size
}

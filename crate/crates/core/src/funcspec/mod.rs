//! The function model: one-variable component families, multivariate spec
//! kinds and the standard production-function constructors.

mod component;
mod text;

pub use component::{ComponentFn, OuterFn};
pub(crate) use component::power;
pub use text::{parse_spec, parse_spec_with, serialize_spec, ParseOptions};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jets;

/// A multivariate function built from the supported families.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FunctionSpec {
    /// `f1(x1) * ... * fn(xn)`
    Homothetical { components: Vec<ComponentFn> },
    /// `F(h1(x1) * ... * hn(xn))`
    Composite {
        outer: OuterFn,
        components: Vec<ComponentFn>,
    },
    /// `F(gamma * (sum (beta_i x_i)^rho)^(d/rho))`
    Acms {
        gamma: f64,
        betas: Vec<f64>,
        rho: f64,
        d: f64,
        outer: OuterFn,
    },
}

impl FunctionSpec {
    /// Number of variables.
    pub fn dim(&self) -> usize {
        match self {
            FunctionSpec::Homothetical { components } | FunctionSpec::Composite { components, .. } => {
                components.len()
            }
            FunctionSpec::Acms { betas, .. } => betas.len(),
        }
    }

    /// The component list for product-shaped specs.
    pub fn components(&self) -> Option<&[ComponentFn]> {
        match self {
            FunctionSpec::Homothetical { components } | FunctionSpec::Composite { components, .. } => {
                Some(components)
            }
            FunctionSpec::Acms { .. } => None,
        }
    }

    pub fn outer(&self) -> OuterFn {
        match self {
            FunctionSpec::Homothetical { .. } => OuterFn::Identity,
            FunctionSpec::Composite { outer, .. } | FunctionSpec::Acms { outer, .. } => *outer,
        }
    }

    /// Whether evaluation is restricted to the open positive orthant.
    pub fn is_production_model(&self) -> bool {
        matches!(self, FunctionSpec::Acms { .. })
    }

    /// Validates with the default `rho < 1` rule for ACMS.
    pub fn validate(&self) -> Result<()> {
        self.validate_with(false)
    }

    /// `relax_rho` permits any nonzero ACMS `rho`.
    pub fn validate_with(&self, relax_rho: bool) -> Result<()> {
        match self {
            FunctionSpec::Homothetical { components } => validate_components(components),
            FunctionSpec::Composite { outer, components } => {
                outer.validate("outer")?;
                validate_components(components)
            }
            FunctionSpec::Acms {
                gamma,
                betas,
                rho,
                d,
                outer,
            } => {
                if betas.is_empty() {
                    return Err(Error::validation("betas", "need at least one variable"));
                }
                if !(gamma.is_finite() && *gamma > 0.0) {
                    return Err(Error::validation("gamma", "must be positive"));
                }
                for (i, b) in betas.iter().enumerate() {
                    if !(b.is_finite() && *b > 0.0) {
                        return Err(Error::validation(format!("betas[{i}]"), "must be positive"));
                    }
                }
                if !rho.is_finite() || *rho == 0.0 {
                    return Err(Error::validation("rho", "must be nonzero"));
                }
                if !relax_rho && *rho >= 1.0 {
                    return Err(Error::validation("rho", "must be < 1 (pass --relax-rho to allow)"));
                }
                if !(d.is_finite() && *d > 0.0) {
                    return Err(Error::validation("d", "must be positive"));
                }
                outer.validate("outer")
            }
        }
    }
}

fn validate_components(components: &[ComponentFn]) -> Result<()> {
    if components.is_empty() {
        return Err(Error::validation("components", "need at least one component"));
    }
    for (i, c) in components.iter().enumerate() {
        c.validate(&format!("components[{i}]"))?;
    }
    Ok(())
}

/// Generalized Cobb-Douglas `gamma * x1^a1 * ... * xn^an`, as a homothetical
/// spec whose first factor carries `gamma`.
pub fn make_cobb_douglas(gamma: f64, alphas: &[f64]) -> Result<FunctionSpec> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::validation("gamma", "must be positive"));
    }
    let components = alphas
        .iter()
        .enumerate()
        .map(|(i, &a)| ComponentFn::pow(if i == 0 { gamma } else { 1.0 }, 0.0, a))
        .collect();
    let spec = FunctionSpec::Homothetical { components };
    spec.validate().map_err(|e| match e {
        Error::Validation { field, message } => Error::Validation {
            field: field.replace("components", "alphas").replace(".alpha", ""),
            message,
        },
        other => other,
    })?;
    Ok(spec)
}

/// Generalized ACMS (CES) production function, optionally composed with `outer`.
///
/// Any nonzero `rho` is accepted here; the `rho < 1` rule applies when
/// validating spec files (see [`FunctionSpec::validate`]).
pub fn make_acms(gamma: f64, betas: &[f64], rho: f64, d: f64, outer: OuterFn) -> Result<FunctionSpec> {
    let spec = FunctionSpec::Acms {
        gamma,
        betas: betas.to_vec(),
        rho,
        d,
        outer,
    };
    spec.validate_with(true)?;
    Ok(spec)
}

/// Function value at `point`; shares its arithmetic with [`jets::jet_multivariate`].
pub fn eval(spec: &FunctionSpec, point: &[f64]) -> Result<f64> {
    Ok(jets::jet_multivariate(spec, point)?.value)
}

/// Outcome of a degree-of-homogeneity probe.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogeneityReport {
    pub is_homogeneous: bool,
    /// Mean of the per-probe estimates; only meaningful when homogeneous.
    pub degree: f64,
    /// Largest distance of a single estimate from the mean.
    pub max_deviation: f64,
}

/// Estimates `p` in `f(t x) = t^p f(x)` from `ln(f(tx)/f(x)) / ln t` over every
/// probe point and scale factor.
pub fn homogeneity_degree(
    spec: &FunctionSpec,
    probe_points: &[Vec<f64>],
    t_values: &[f64],
    tol: f64,
) -> Result<HomogeneityReport> {
    if probe_points.is_empty() || t_values.is_empty() {
        return Err(Error::Spec("homogeneity probe needs at least one point and one t".into()));
    }
    let mut estimates = Vec::with_capacity(probe_points.len() * t_values.len());
    let mut sign_flip = false;
    for x in probe_points {
        let base = eval(spec, x)?;
        for &t in t_values {
            if !(t > 0.0 && t != 1.0) {
                return Err(Error::Spec(format!("scale factor t = {t} must be positive and != 1")));
            }
            let scaled: Vec<f64> = x.iter().map(|xi| t * xi).collect();
            let ratio = eval(spec, &scaled)? / base;
            if ratio > 0.0 && ratio.is_finite() {
                estimates.push(ratio.ln() / t.ln());
            } else {
                sign_flip = true;
            }
        }
    }
    if sign_flip || estimates.is_empty() {
        return Ok(HomogeneityReport {
            is_homogeneous: false,
            degree: f64::NAN,
            max_deviation: f64::INFINITY,
        });
    }
    let degree = estimates.iter().sum::<f64>() / estimates.len() as f64;
    let max_deviation = estimates.iter().map(|e| (e - degree).abs()).fold(0.0, f64::max);
    Ok(HomogeneityReport {
        is_homogeneous: max_deviation <= tol,
        degree,
        max_deviation,
    })
}

//! Symbolic deciders and constructors for the classified families:
//! developable homothetical products, Allen-singular composites and
//! constant-Hicks-elasticity composites, plus a numeric check of the
//! curvature / Allen-singularity equivalence when an exponential factor is
//! present.
//!
//! Verdicts are decided from the parameters alone. The numeric probes in
//! [`crate::geometry`] and [`crate::elasticity`] confirm them.

use serde::Serialize;

use crate::elasticity::relative_bordered_det;
use crate::error::{Error, Result};
use crate::funcspec::{ComponentFn, FunctionSpec, OuterFn};
use crate::geometry::gauss_kronecker;

/// Absolute tolerance for the exponent-sum constraints.
pub const PARAM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Two or more exponential factors: `... * gamma e^(l2 x2 + l3 x3) * ...`
    #[serde(rename = "thm31_a")]
    Thm31A,
    /// `gamma prod (x_i + beta_i)^alpha_i` with `sum alpha_i = 1`.
    #[serde(rename = "thm31_b")]
    Thm31B,
    NoneDevelopable,
    /// `F(gamma e^(a1 x1 + a2 x2) * h3 * ... * hn)`
    #[serde(rename = "thm41_a")]
    Thm41A,
    /// `F(gamma prod (x_i + beta_i)^alpha_i)` with `sum alpha_i = 0`.
    #[serde(rename = "thm41_b")]
    Thm41B,
    NoneAllenSingular,
    /// `F(x1^a1 ... xn^an)`, sigma = 1.
    #[serde(rename = "thm51_a")]
    Thm51A,
    /// `F(sum beta_i x_i^((sigma-1)/sigma))`, sigma != 1.
    #[serde(rename = "thm51_b")]
    Thm51B,
    /// `F(ln(x1)^mu1 ln(x2)^mu2)` with `1/mu1 + 1/mu2 = 0`, sigma = 1.
    #[serde(rename = "thm51_c")]
    Thm51C,
    NoneCes,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Thm31A => "thm31_a",
            Family::Thm31B => "thm31_b",
            Family::NoneDevelopable => "none_developable",
            Family::Thm41A => "thm41_a",
            Family::Thm41B => "thm41_b",
            Family::NoneAllenSingular => "none_allen_singular",
            Family::Thm51A => "thm51_a",
            Family::Thm51B => "thm51_b",
            Family::Thm51C => "thm51_c",
            Family::NoneCes => "none_ces",
        }
    }
}

/// Parameters backing a verdict. Component indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    ExpComponents { indices: Vec<usize> },
    ExponentSum { alphas: Vec<f64>, sum: f64 },
    Elasticity { sigma: f64 },
    LogExponents { mus: Vec<f64>, reciprocal_sum: f64 },
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationVerdict {
    pub family: Family,
    pub certificate: Certificate,
    pub notes: String,
}

impl ClassificationVerdict {
    fn new(family: Family, certificate: Certificate, notes: impl Into<String>) -> Self {
        ClassificationVerdict {
            family,
            certificate,
            notes: notes.into(),
        }
    }
}

fn exp_indices(components: &[ComponentFn]) -> Vec<usize> {
    components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_exp())
        .map(|(i, _)| i + 1)
        .collect()
}

/// The exponents when every component is a `pow`.
fn pow_exponents(components: &[ComponentFn]) -> Option<Vec<f64>> {
    components
        .iter()
        .map(|c| match *c {
            ComponentFn::Pow { alpha, .. } => Some(alpha),
            _ => None,
        })
        .collect()
}

fn product_components(spec: &FunctionSpec, what: &str) -> Result<Vec<ComponentFn>> {
    spec.components()
        .map(<[ComponentFn]>::to_vec)
        .ok_or_else(|| Error::Spec(format!("{what} needs a product-shaped spec")))
}

/// Decides null Gauss-Kronecker curvature of a homothetical product.
pub fn classify_developable(spec: &FunctionSpec) -> Result<ClassificationVerdict> {
    let components = match spec {
        FunctionSpec::Homothetical { components } => components,
        _ => return Err(Error::Spec("developability classification needs a homothetical spec".into())),
    };
    spec.validate()?;
    let exps = exp_indices(components);
    if exps.len() >= 2 {
        return Ok(ClassificationVerdict::new(
            Family::Thm31A,
            Certificate::ExpComponents { indices: exps },
            "two or more exponential factors",
        ));
    }
    if let Some(alphas) = pow_exponents(components) {
        let sum: f64 = alphas.iter().sum();
        if (sum - 1.0).abs() <= PARAM_TOL {
            return Ok(ClassificationVerdict::new(
                Family::Thm31B,
                Certificate::ExponentSum { alphas, sum },
                "power factors with exponents summing to 1",
            ));
        }
        return Ok(ClassificationVerdict::new(
            Family::NoneDevelopable,
            Certificate::ExponentSum { alphas, sum },
            format!("power factors with exponent sum {sum} != 1"),
        ));
    }
    let notes = if exps.len() == 1 {
        "a single exponential factor does not flatten the graph"
    } else {
        "no family matches"
    };
    Ok(ClassificationVerdict::new(Family::NoneDevelopable, Certificate::None, notes))
}

/// Decides singularity of the bordered Hessian of `F(h1 ... hn)`.
/// Homothetical specs are treated as composites with `F = identity`.
pub fn classify_allen_singular(spec: &FunctionSpec) -> Result<ClassificationVerdict> {
    let components = product_components(spec, "Allen-singularity classification")?;
    spec.validate()?;
    let exps = exp_indices(&components);
    if exps.len() >= 2 {
        return Ok(ClassificationVerdict::new(
            Family::Thm41A,
            Certificate::ExpComponents { indices: exps },
            "two or more exponential inner factors",
        ));
    }
    if let Some(alphas) = pow_exponents(&components) {
        let sum: f64 = alphas.iter().sum();
        let family = if sum.abs() <= PARAM_TOL {
            Family::Thm41B
        } else {
            Family::NoneAllenSingular
        };
        let notes = if family == Family::Thm41B {
            "power inner factors with exponents summing to 0".to_string()
        } else {
            format!("power inner factors with exponent sum {sum} != 0")
        };
        return Ok(ClassificationVerdict::new(family, Certificate::ExponentSum { alphas, sum }, notes));
    }
    Ok(ClassificationVerdict::new(Family::NoneAllenSingular, Certificate::None, "no family matches"))
}

/// Decides the constant-Hicks-elasticity property.
///
/// Unconstrained `ln(x)^mu` products (n != 2, or `1/mu1 + 1/mu2 != 0`) are
/// reported as `none_ces` with a warning in the notes.
pub fn classify_ces(spec: &FunctionSpec) -> Result<ClassificationVerdict> {
    spec.validate_with(true)?;
    if spec.dim() < 2 {
        return Err(Error::Spec("elasticity of substitution needs at least two variables".into()));
    }
    if let FunctionSpec::Acms { rho, .. } = spec {
        let sigma = 1.0 / (1.0 - rho);
        return Ok(ClassificationVerdict::new(
            Family::Thm51B,
            Certificate::Elasticity { sigma },
            format!("ACMS with rho = {rho}"),
        ));
    }
    let components = product_components(spec, "CES classification")?;
    let zero_shift_pows: Option<Vec<f64>> = components
        .iter()
        .map(|c| match *c {
            ComponentFn::Pow { beta, alpha, .. } if beta == 0.0 => Some(alpha),
            _ => None,
        })
        .collect();
    if let Some(alphas) = zero_shift_pows {
        if let Some((i, j)) = opposite_pair(&alphas) {
            return Ok(ClassificationVerdict::new(
                Family::NoneCes,
                Certificate::ExponentSum {
                    sum: alphas.iter().sum(),
                    alphas,
                },
                format!("exponents of x{i} and x{j} cancel; the Hicks elasticity is undefined"),
            ));
        }
        return Ok(ClassificationVerdict::new(
            Family::Thm51A,
            Certificate::Elasticity { sigma: 1.0 },
            "Cobb-Douglas inner product",
        ));
    }
    let log_exponents: Option<Vec<f64>> = components
        .iter()
        .map(|c| match *c {
            ComponentFn::Logpow { a, b, m } if a == 0.0 && b == 1.0 => Some(m),
            _ => None,
        })
        .collect();
    if let Some(mus) = log_exponents {
        let reciprocal_sum: f64 = mus.iter().map(|m| 1.0 / m).sum();
        let certificate = Certificate::LogExponents { mus: mus.clone(), reciprocal_sum };
        if mus.len() == 2 && reciprocal_sum.abs() <= PARAM_TOL {
            return Ok(ClassificationVerdict::new(
                Family::Thm51C,
                certificate,
                "log-power product with 1/mu1 + 1/mu2 = 0",
            ));
        }
        return Ok(ClassificationVerdict::new(
            Family::NoneCes,
            certificate,
            "warning: log-power product without the n = 2, 1/mu1 + 1/mu2 = 0 constraint; elasticity is not constant",
        ));
    }
    Ok(ClassificationVerdict::new(Family::NoneCes, Certificate::None, "no family matches"))
}

fn opposite_pair(alphas: &[f64]) -> Option<(usize, usize)> {
    for i in 0..alphas.len() {
        for j in (i + 1)..alphas.len() {
            if (alphas[i] + alphas[j]).abs() <= PARAM_TOL {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

fn checked(spec: FunctionSpec) -> Result<FunctionSpec> {
    spec.validate_with(true)?;
    Ok(spec)
}

fn check_len(name: &str, got: usize, want: usize) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::validation(name, format!("expected {want} entries, got {got}")))
    }
}

fn exp_product(gamma: f64, lambdas: &[f64], others: &[ComponentFn]) -> Result<Vec<ComponentFn>> {
    if lambdas.len() < 2 {
        return Err(Error::validation("lambdas", "need at least two exponential factors"));
    }
    let mut components: Vec<ComponentFn> = lambdas
        .iter()
        .enumerate()
        .map(|(i, &l)| ComponentFn::exp(if i == 0 { gamma } else { 1.0 }, l))
        .collect();
    components.extend_from_slice(others);
    Ok(components)
}

fn shifted_powers(gamma: f64, alphas: &[f64], betas: &[f64], target: f64) -> Result<Vec<ComponentFn>> {
    check_len("betas", betas.len(), alphas.len())?;
    if alphas.is_empty() {
        return Err(Error::validation("alphas", "need at least one exponent"));
    }
    let sum: f64 = alphas.iter().sum();
    if (sum - target).abs() > PARAM_TOL {
        return Err(Error::validation("alphas", format!("exponents sum to {sum}, expected {target}")));
    }
    Ok(alphas
        .iter()
        .zip(betas)
        .enumerate()
        .map(|(i, (&a, &b))| ComponentFn::pow(if i == 0 { gamma } else { 1.0 }, b, a))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Thm31Params {
    /// `gamma e^(l1 x1) e^(l2 x2) ... * others`; needs at least two lambdas.
    Exponential {
        gamma: f64,
        lambdas: Vec<f64>,
        others: Vec<ComponentFn>,
    },
    /// `gamma prod (x_i + beta_i)^alpha_i` with `sum alpha_i = 1`.
    Power {
        gamma: f64,
        alphas: Vec<f64>,
        betas: Vec<f64>,
    },
}

pub fn make_thm31_family(params: &Thm31Params) -> Result<FunctionSpec> {
    let components = match params {
        Thm31Params::Exponential { gamma, lambdas, others } => exp_product(*gamma, lambdas, others)?,
        Thm31Params::Power { gamma, alphas, betas } => shifted_powers(*gamma, alphas, betas, 1.0)?,
    };
    checked(FunctionSpec::Homothetical { components })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Thm41Params {
    /// `F(gamma e^(l1 x1) e^(l2 x2) ... * others)`
    Exponential {
        outer: OuterFn,
        gamma: f64,
        lambdas: Vec<f64>,
        others: Vec<ComponentFn>,
    },
    /// `F(gamma prod (x_i + beta_i)^alpha_i)` with `sum alpha_i = 0`.
    Power {
        outer: OuterFn,
        gamma: f64,
        alphas: Vec<f64>,
        betas: Vec<f64>,
    },
}

pub fn make_thm41_family(params: &Thm41Params) -> Result<FunctionSpec> {
    let (outer, components) = match params {
        Thm41Params::Exponential {
            outer,
            gamma,
            lambdas,
            others,
        } => (*outer, exp_product(*gamma, lambdas, others)?),
        Thm41Params::Power {
            outer,
            gamma,
            alphas,
            betas,
        } => (*outer, shifted_powers(*gamma, alphas, betas, 0.0)?),
    };
    checked(FunctionSpec::Composite { outer, components })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Thm51Params {
    /// `F(gamma x1^a1 ... xn^an)`; sigma = 1.
    CobbDouglas { outer: OuterFn, gamma: f64, alphas: Vec<f64> },
    /// `F(sum beta_i x_i^r)` with `r = (sigma - 1)/sigma`.
    Acms { outer: OuterFn, sigma: f64, betas: Vec<f64> },
    /// `F(ln(x1)^mu1 ln(x2)^mu2)` with `mu2 = -mu1`; sigma = 1.
    LogPower { outer: OuterFn, mus: [f64; 2] },
}

/// Builds a constant-elasticity composite.
///
/// The ACMS case is stored as `acms(gamma = 1, betas = beta_i^(1/r), rho = r,
/// d = |r|)`, which equals `sum beta_i x_i^r` for `r > 0` and its reciprocal
/// for `r < 0`; either way a monotone function of the printed inner sum.
pub fn make_thm51_family(params: &Thm51Params) -> Result<FunctionSpec> {
    match params {
        Thm51Params::CobbDouglas { outer, gamma, alphas } => {
            if alphas.len() < 2 {
                return Err(Error::validation("alphas", "need at least two variables"));
            }
            if let Some((i, j)) = opposite_pair(alphas) {
                return Err(Error::validation(
                    "alphas",
                    format!("alpha{i} + alpha{j} = 0 leaves the Hicks elasticity undefined"),
                ));
            }
            let components = alphas
                .iter()
                .enumerate()
                .map(|(i, &a)| ComponentFn::pow(if i == 0 { *gamma } else { 1.0 }, 0.0, a))
                .collect();
            checked(FunctionSpec::Composite {
                outer: *outer,
                components,
            })
        }
        Thm51Params::Acms { outer, sigma, betas } => {
            if !sigma.is_finite() || *sigma == 0.0 || *sigma == 1.0 {
                return Err(Error::validation("sigma", "must be finite, nonzero and != 1"));
            }
            if betas.len() < 2 {
                return Err(Error::validation("betas", "need at least two variables"));
            }
            if let Some(i) = betas.iter().position(|b| !(*b > 0.0)) {
                return Err(Error::validation(format!("betas[{i}]"), "must be positive"));
            }
            let r = (sigma - 1.0) / sigma;
            checked(FunctionSpec::Acms {
                gamma: 1.0,
                betas: betas.iter().map(|b| b.powf(1.0 / r)).collect(),
                rho: r,
                d: r.abs(),
                outer: *outer,
            })
        }
        Thm51Params::LogPower { outer, mus } => {
            let reciprocal_sum = 1.0 / mus[0] + 1.0 / mus[1];
            if !(reciprocal_sum.abs() <= PARAM_TOL) {
                return Err(Error::validation(
                    "mus",
                    format!("1/mu1 + 1/mu2 = {reciprocal_sum}, must be 0 for constant elasticity"),
                ));
            }
            checked(FunctionSpec::Composite {
                outer: *outer,
                components: mus.iter().map(|&m| ComponentFn::logpow(0.0, 1.0, m)).collect(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Corollary42Report {
    /// `|G| <= tol` at every sample.
    pub gk_all_zero: bool,
    /// Scale-relative `|det H^B| <= tol` at every sample.
    pub allen_all_singular: bool,
    pub equivalent: bool,
    pub max_abs_gk: f64,
    pub max_relative_bordered_det: f64,
}

/// For a homothetical product with at least one exponential factor, null
/// curvature and a singular bordered Hessian go together; this checks both
/// predicates over the samples.
pub fn check_corollary42(spec: &FunctionSpec, sample_points: &[Vec<f64>], tol: f64) -> Result<Corollary42Report> {
    let components = match spec {
        FunctionSpec::Homothetical { components } => components,
        _ => return Err(Error::Spec("needs a homothetical spec".into())),
    };
    if !components.iter().any(ComponentFn::has_constant_log_derivative) {
        return Err(Error::Spec("needs at least one exponential component".into()));
    }
    if sample_points.is_empty() {
        return Err(Error::Spec("needs at least one sample point".into()));
    }
    let mut max_abs_gk = 0.0f64;
    let mut max_rel = 0.0f64;
    for p in sample_points {
        max_abs_gk = max_abs_gk.max(gauss_kronecker(spec, p)?.gk_curvature.abs());
        max_rel = max_rel.max(relative_bordered_det(spec, p)?.abs());
    }
    let gk_all_zero = max_abs_gk <= tol;
    let allen_all_singular = max_rel <= tol;
    Ok(Corollary42Report {
        gk_all_zero,
        allen_all_singular,
        equivalent: gk_all_zero == allen_all_singular,
        max_abs_gk,
        max_relative_bordered_det: max_rel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elasticity::{ces_probe, hicks};
    use crate::geometry::is_developable;
    use crate::sampling::{default_ces_samples, log_uniform_points, rng_from_seed};
    use std::f64::consts::E;

    fn homothetical(components: Vec<ComponentFn>) -> FunctionSpec {
        FunctionSpec::Homothetical { components }
    }

    fn samples(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
        log_uniform_points(&mut rng_from_seed(seed), n, count, 0.5, 2.0)
    }

    #[test]
    fn developable_examples() {
        let v = classify_developable(&homothetical(vec![
            ComponentFn::pow(1.0, 0.0, 2.0),
            ComponentFn::exp(1.0, 1.0),
            ComponentFn::exp(2.0, 3.0),
        ]))
        .unwrap();
        assert_eq!(v.family, Family::Thm31A);
        assert_eq!(v.certificate, Certificate::ExpComponents { indices: vec![2, 3] });

        let v = classify_developable(&homothetical(vec![
            ComponentFn::pow(1.0, 0.0, 0.25),
            ComponentFn::pow(1.0, 0.0, 0.25),
            ComponentFn::pow(1.0, 0.0, 0.5),
        ]))
        .unwrap();
        assert_eq!(v.family, Family::Thm31B);
        assert!(matches!(v.certificate, Certificate::ExponentSum { sum, .. } if (sum - 1.0).abs() <= 1e-12));

        let v = classify_developable(&homothetical(vec![
            ComponentFn::pow(1.0, 0.0, 0.5),
            ComponentFn::pow(1.0, 0.0, 1.0),
        ]))
        .unwrap();
        assert_eq!(v.family, Family::NoneDevelopable);
    }

    #[test]
    fn single_exponential_is_not_developable() {
        let s = homothetical(vec![ComponentFn::exp(1.0, 1.0), ComponentFn::pow(1.0, 0.0, 2.0)]);
        assert_eq!(classify_developable(&s).unwrap().family, Family::NoneDevelopable);
        let (flat, max) = is_developable(&s, &samples(2, 20, 3), 1e-8).unwrap();
        assert!(!flat && max > 1e-6);
    }

    #[test]
    fn developable_rejects_composites() {
        let s = FunctionSpec::Composite {
            outer: OuterFn::Log,
            components: vec![ComponentFn::exp(1.0, 1.0), ComponentFn::exp(1.0, 1.0)],
        };
        assert!(matches!(classify_developable(&s), Err(Error::Spec(_))));
    }

    #[test]
    fn thm31_constructors() {
        let s = make_thm31_family(&Thm31Params::Power {
            gamma: 3.0,
            alphas: vec![0.25, 0.25, 0.5],
            betas: vec![0.0, 1.0, 2.0],
        })
        .unwrap();
        assert_eq!(classify_developable(&s).unwrap().family, Family::Thm31B);
        let (flat, max) = is_developable(&s, &samples(3, 50, 11), 1e-9).unwrap();
        assert!(flat, "max |G| = {max}");

        let s = make_thm31_family(&Thm31Params::Exponential {
            gamma: 1.0,
            lambdas: vec![1.0, -2.0],
            others: vec![ComponentFn::pow(1.0, 0.0, 2.0)],
        })
        .unwrap();
        assert_eq!(classify_developable(&s).unwrap().family, Family::Thm31A);
        let (flat, max) = is_developable(&s, &samples(3, 50, 12), 1e-9).unwrap();
        assert!(flat, "max |G| = {max}");

        let err = make_thm31_family(&Thm31Params::Power {
            gamma: 1.0,
            alphas: vec![0.5, 0.5, 0.5],
            betas: vec![0.0; 3],
        })
        .unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
        assert!(make_thm31_family(&Thm31Params::Exponential {
            gamma: 1.0,
            lambdas: vec![1.0],
            others: vec![]
        })
        .is_err());
    }

    #[test]
    fn allen_singular_examples() {
        let s = FunctionSpec::Composite {
            outer: OuterFn::Power { d: 2.0 },
            components: vec![
                ComponentFn::exp(1.0, 1.0),
                ComponentFn::exp(1.0, 1.0),
                ComponentFn::pow(1.0, 0.0, 2.0),
            ],
        };
        assert_eq!(classify_allen_singular(&s).unwrap().family, Family::Thm41A);

        let s = FunctionSpec::Composite {
            outer: OuterFn::Identity,
            components: vec![ComponentFn::pow(1.0, 0.0, 1.0), ComponentFn::pow(1.0, 0.0, -1.0)],
        };
        assert_eq!(classify_allen_singular(&s).unwrap().family, Family::Thm41B);

        let s = FunctionSpec::Composite {
            outer: OuterFn::Identity,
            components: vec![ComponentFn::pow(1.0, 0.0, 1.0), ComponentFn::pow(1.0, 0.0, 1.0)],
        };
        assert_eq!(classify_allen_singular(&s).unwrap().family, Family::NoneAllenSingular);
        let (_, det) = crate::elasticity::bordered_hessian(&s, &[1.0, 1.0]).unwrap();
        assert!((det - 2.0).abs() < 1e-12);

        let acms = crate::funcspec::make_acms(1.0, &[1.0, 1.0], 0.5, 1.0, OuterFn::Identity).unwrap();
        assert!(matches!(classify_allen_singular(&acms), Err(Error::Spec(_))));
    }

    #[test]
    fn thm41_constructors_are_singular() {
        let a = make_thm41_family(&Thm41Params::Exponential {
            outer: OuterFn::Log,
            gamma: 2.0,
            lambdas: vec![0.5, -1.0],
            others: vec![ComponentFn::pow(1.0, 0.3, 1.5)],
        })
        .unwrap();
        let b = make_thm41_family(&Thm41Params::Power {
            outer: OuterFn::Power { d: 3.0 },
            gamma: 1.5,
            alphas: vec![0.5, 1.0, -1.5],
            betas: vec![0.0, 0.2, 0.4],
        })
        .unwrap();
        for s in [a, b] {
            for p in samples(3, 20, 5) {
                assert!(relative_bordered_det(&s, &p).unwrap().abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn thm51_examples() {
        let pts = default_ces_samples(2, 42);
        let a = make_thm51_family(&Thm51Params::CobbDouglas {
            outer: OuterFn::Power { d: 3.0 },
            gamma: 1.0,
            alphas: vec![1.0 / 3.0, 2.0 / 3.0],
        })
        .unwrap();
        let v = ces_probe(&a, &pts, 1e-8).unwrap();
        assert!(v.is_constant && (v.sigma - 1.0).abs() < 1e-8, "{v:?}");
        assert_eq!(classify_ces(&a).unwrap().family, Family::Thm51A);

        let b = make_thm51_family(&Thm51Params::Acms {
            outer: OuterFn::Identity,
            sigma: 2.0,
            betas: vec![1.0, 1.0],
        })
        .unwrap();
        let v = ces_probe(&b, &pts, 1e-8).unwrap();
        assert!(v.is_constant && (v.sigma - 2.0).abs() < 1e-8, "{v:?}");
        assert_eq!(classify_ces(&b).unwrap().certificate, Certificate::Elasticity { sigma: 2.0 });

        let c = make_thm51_family(&Thm51Params::LogPower {
            outer: OuterFn::Identity,
            mus: [1.0, -1.0],
        })
        .unwrap();
        assert!((hicks(&c, &[E, E * E], 1, 2).unwrap() - 1.0).abs() < 1e-12);
        assert!((hicks(&c, &[E * E, E], 1, 2).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(classify_ces(&c).unwrap().family, Family::Thm51C);
    }

    #[test]
    fn thm51_acms_below_unit_elasticity() {
        let s = make_thm51_family(&Thm51Params::Acms {
            outer: OuterFn::Log,
            sigma: 0.5,
            betas: vec![1.0, 2.0, 0.5],
        })
        .unwrap();
        let v = ces_probe(&s, &default_ces_samples(3, 1), 1e-8).unwrap();
        assert!(v.is_constant && (v.sigma - 0.5).abs() < 1e-8, "{v:?}");
    }

    #[test]
    fn thm51_rejections() {
        assert!(make_thm51_family(&Thm51Params::Acms {
            outer: OuterFn::Identity,
            sigma: 1.0,
            betas: vec![1.0, 1.0]
        })
        .is_err());
        assert!(make_thm51_family(&Thm51Params::LogPower {
            outer: OuterFn::Identity,
            mus: [1.0, 1.0]
        })
        .is_err());
        assert!(make_thm51_family(&Thm51Params::CobbDouglas {
            outer: OuterFn::Identity,
            gamma: 1.0,
            alphas: vec![1.0, -1.0]
        })
        .is_err());
    }

    #[test]
    fn unconstrained_log_power_is_flagged() {
        let s = FunctionSpec::Composite {
            outer: OuterFn::Identity,
            components: vec![ComponentFn::logpow(0.0, 1.0, 1.0), ComponentFn::logpow(0.0, 1.0, 1.0)],
        };
        let v = classify_ces(&s).unwrap();
        assert_eq!(v.family, Family::NoneCes);
        assert!(v.notes.starts_with("warning"));
        let h1 = hicks(&s, &[E, E], 1, 2).unwrap();
        let h2 = hicks(&s, &[E * E, E], 1, 2).unwrap();
        assert!((h1 - 0.5).abs() < 1e-12 && (h2 - 0.6).abs() < 1e-12, "{h1} {h2}");
        let v = ces_probe(&s, &[vec![E, E], vec![E * E, E]], 1e-8).unwrap();
        assert!(!v.is_constant && v.spread >= 0.1 - 1e-12, "{v:?}");
    }

    #[test]
    fn corollary42_examples() {
        let pts = samples(3, 20, 9);
        let both = homothetical(vec![
            ComponentFn::exp(1.0, 1.0),
            ComponentFn::exp(1.0, 2.0),
            ComponentFn::pow(1.0, 0.0, 3.0),
        ]);
        let r = check_corollary42(&both, &pts, 1e-8).unwrap();
        assert!(r.gk_all_zero && r.allen_all_singular && r.equivalent);

        let single = homothetical(vec![
            ComponentFn::exp(1.0, 1.0),
            ComponentFn::pow(1.0, 0.0, 2.0),
            ComponentFn::pow(1.0, 0.0, 3.0),
        ]);
        let r = check_corollary42(&single, &pts, 1e-8).unwrap();
        assert!(!r.gk_all_zero && !r.allen_all_singular && r.equivalent);

        let none = homothetical(vec![ComponentFn::pow(1.0, 0.0, 0.5), ComponentFn::pow(1.0, 0.0, 0.5)]);
        assert!(matches!(check_corollary42(&none, &pts[..1], 1e-8), Err(Error::Spec(_))));
    }
}

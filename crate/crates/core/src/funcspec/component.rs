use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One-variable factor of a separable product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ComponentFn {
    /// `gamma * (x + beta)^alpha`
    Pow { gamma: f64, beta: f64, alpha: f64 },
    /// `gamma * exp(lambda * x)`
    Exp { gamma: f64, lambda: f64 },
    /// `(a + b * ln x)^m`
    Logpow { a: f64, b: f64, m: f64 },
}

pub(crate) fn is_integer(v: f64) -> bool {
    v.is_finite() && v.fract() == 0.0 && v.abs() < i32::MAX as f64
}

pub(crate) fn is_nonneg_integer(v: f64) -> bool {
    is_integer(v) && v >= 0.0
}

/// `base^exponent`, using integer powers where possible so negative bases
/// stay defined for integral exponents.
pub(crate) fn power(base: f64, exponent: f64) -> f64 {
    if is_integer(exponent) {
        base.powi(exponent as i32)
    } else {
        base.powf(exponent)
    }
}

/// Domain guard for `base^exponent` shared by pow, logpow and the power outer.
fn check_power_base(base: f64, exponent: f64, what: &str) -> Result<()> {
    if is_nonneg_integer(exponent) {
        Ok(())
    } else if is_integer(exponent) {
        if base == 0.0 {
            Err(Error::Domain(format!("{what} = 0 with negative integer exponent {exponent}")))
        } else {
            Ok(())
        }
    } else if base > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} = {base} must be positive for non-integer exponent {exponent}"
        )))
    }
}

fn require(cond: bool, field: String, message: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::validation(field, message))
    }
}

fn finite(v: f64, field: String) -> Result<()> {
    require(v.is_finite(), field, "must be a finite number")
}

impl ComponentFn {
    pub fn pow(gamma: f64, beta: f64, alpha: f64) -> Self {
        ComponentFn::Pow { gamma, beta, alpha }
    }

    pub fn exp(gamma: f64, lambda: f64) -> Self {
        ComponentFn::Exp { gamma, lambda }
    }

    pub fn logpow(a: f64, b: f64, m: f64) -> Self {
        ComponentFn::Logpow { a, b, m }
    }

    pub fn is_exp(&self) -> bool {
        matches!(self, ComponentFn::Exp { .. })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ComponentFn::Pow { .. } => "pow",
            ComponentFn::Exp { .. } => "exp",
            ComponentFn::Logpow { .. } => "logpow",
        }
    }

    /// Checks the parameter constraints; `path` prefixes field names in errors.
    pub fn validate(&self, path: &str) -> Result<()> {
        match *self {
            ComponentFn::Pow { gamma, beta, alpha } => {
                finite(gamma, format!("{path}.gamma"))?;
                finite(beta, format!("{path}.beta"))?;
                finite(alpha, format!("{path}.alpha"))?;
                require(gamma != 0.0, format!("{path}.gamma"), "must be nonzero")?;
                require(alpha != 0.0, format!("{path}.alpha"), "must be nonzero")
            }
            ComponentFn::Exp { gamma, lambda } => {
                finite(gamma, format!("{path}.gamma"))?;
                finite(lambda, format!("{path}.lambda"))?;
                require(gamma != 0.0, format!("{path}.gamma"), "must be nonzero")?;
                require(lambda != 0.0, format!("{path}.lambda"), "must be nonzero")
            }
            ComponentFn::Logpow { a, b, m } => {
                finite(a, format!("{path}.a"))?;
                finite(b, format!("{path}.b"))?;
                finite(m, format!("{path}.m"))?;
                require(b != 0.0, format!("{path}.b"), "must be nonzero")?;
                require(m != 0.0, format!("{path}.m"), "must be nonzero")
            }
        }
    }

    /// Domain guard at `x`.
    pub fn check_domain(&self, x: f64) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite input {x}")));
        }
        match *self {
            ComponentFn::Pow { beta, alpha, .. } => check_power_base(x + beta, alpha, "x + beta"),
            ComponentFn::Exp { .. } => Ok(()),
            ComponentFn::Logpow { a, b, m } => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!("logpow needs x > 0, got {x}")));
                }
                check_power_base(a + b * x.ln(), m, "a + b*ln(x)")
            }
        }
    }

    /// Whether `(f'/f)' == 0` identically, i.e. the exponential family.
    pub fn has_constant_log_derivative(&self) -> bool {
        self.is_exp()
    }
}

/// Outer function `F` of a composite `F(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", from = "OuterDoc")]
pub enum OuterFn {
    Identity,
    /// `u^d`
    Power { d: f64 },
    /// `gamma * u`
    Scale { gamma: f64 },
    /// `ln u`
    Log,
}

// Unit variants of an internally tagged enum ignore extra fields, so parsing
// goes through empty struct variants to keep unknown fields an error.
#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum OuterDoc {
    Identity {},
    Power { d: f64 },
    Scale { gamma: f64 },
    Log {},
}

impl From<OuterDoc> for OuterFn {
    fn from(doc: OuterDoc) -> Self {
        match doc {
            OuterDoc::Identity {} => OuterFn::Identity,
            OuterDoc::Power { d } => OuterFn::Power { d },
            OuterDoc::Scale { gamma } => OuterFn::Scale { gamma },
            OuterDoc::Log {} => OuterFn::Log,
        }
    }
}

impl OuterFn {
    pub fn validate(&self, path: &str) -> Result<()> {
        match *self {
            OuterFn::Identity | OuterFn::Log => Ok(()),
            OuterFn::Power { d } => {
                finite(d, format!("{path}.d"))?;
                require(d != 0.0, format!("{path}.d"), "must be nonzero")
            }
            OuterFn::Scale { gamma } => {
                finite(gamma, format!("{path}.gamma"))?;
                require(gamma > 0.0, format!("{path}.gamma"), "must be positive")
            }
        }
    }

    /// Value, first and second derivative of `F` at `u`. Fails outside the
    /// domain or where `F'(u) = 0`.
    pub fn jet(&self, u: f64) -> Result<(f64, f64, f64)> {
        let out = match *self {
            OuterFn::Identity => (u, 1.0, 0.0),
            OuterFn::Scale { gamma } => (gamma * u, gamma, 0.0),
            OuterFn::Log => {
                if u <= 0.0 {
                    return Err(Error::Domain(format!("outer log needs u > 0, got u = {u}")));
                }
                (u.ln(), 1.0 / u, -1.0 / (u * u))
            }
            OuterFn::Power { d } => {
                check_power_base(u, d, "u")?;
                let d1 = d * power(u, d - 1.0);
                let d2 = if d == 1.0 { 0.0 } else { d * (d - 1.0) * power(u, d - 2.0) };
                (power(u, d), d1, d2)
            }
        };
        if out.1 == 0.0 {
            return Err(Error::Domain(format!("outer function has F'(u) = 0 at u = {u}")));
        }
        if !(out.0.is_finite() && out.1.is_finite() && out.2.is_finite()) {
            return Err(Error::Domain(format!("outer function is not finite at u = {u}")));
        }
        Ok(out)
    }
}

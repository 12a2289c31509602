//! JSON spec files.
//!
//! ```json
//! {"kind":"homothetical","components":[{"type":"pow","gamma":1,"beta":0,"alpha":2}]}
//! {"kind":"composite","outer":{"type":"log"},"components":[{"type":"exp","gamma":1,"lambda":1}]}
//! {"kind":"acms","gamma":1,"betas":[1,1],"rho":0.5,"d":1,"outer":{"type":"identity"}}
//! {"kind":"cobb_douglas","gamma":1,"alphas":[0.5,0.5]}
//! ```
//!
//! Unknown fields are rejected. `cobb_douglas` is sugar for a homothetical
//! spec of `pow` components and is serialized back in that form.

use serde::Deserialize;

use super::{make_cobb_douglas, ComponentFn, FunctionSpec, OuterFn};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept ACMS specs with `rho >= 1`.
    pub relax_rho: bool,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SpecDoc {
    Homothetical {
        components: Vec<ComponentFn>,
    },
    Composite {
        outer: OuterFn,
        components: Vec<ComponentFn>,
    },
    Acms {
        gamma: f64,
        betas: Vec<f64>,
        rho: f64,
        d: f64,
        #[serde(default = "identity")]
        outer: OuterFn,
    },
    CobbDouglas {
        gamma: f64,
        alphas: Vec<f64>,
    },
}

fn identity() -> OuterFn {
    OuterFn::Identity
}

pub fn parse_spec(text: &str) -> Result<FunctionSpec> {
    parse_spec_with(text, ParseOptions::default())
}

pub fn parse_spec_with(text: &str, options: ParseOptions) -> Result<FunctionSpec> {
    let doc: SpecDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let spec = match doc {
        SpecDoc::Homothetical { components } => FunctionSpec::Homothetical { components },
        SpecDoc::Composite { outer, components } => FunctionSpec::Composite { outer, components },
        SpecDoc::Acms {
            gamma,
            betas,
            rho,
            d,
            outer,
        } => FunctionSpec::Acms {
            gamma,
            betas,
            rho,
            d,
            outer,
        },
        SpecDoc::CobbDouglas { gamma, alphas } => return make_cobb_douglas(gamma, &alphas),
    };
    spec.validate_with(options.relax_rho)?;
    Ok(spec)
}

/// Fixed field order; numbers in shortest round-trip form.
pub fn serialize_spec(spec: &FunctionSpec) -> String {
    serde_json::to_string(spec).expect("spec serialization is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_homothetical() {
        let s = parse_spec(
            r#"{"kind":"homothetical","components":[{"type":"pow","gamma":1,"beta":0,"alpha":2},{"type":"pow","gamma":1,"beta":0,"alpha":3}]}"#,
        )
        .unwrap();
        assert_eq!(
            s,
            FunctionSpec::Homothetical {
                components: vec![ComponentFn::pow(1.0, 0.0, 2.0), ComponentFn::pow(1.0, 0.0, 3.0)]
            }
        );
    }

    #[test]
    fn parses_acms() {
        let s = parse_spec(r#"{"kind":"acms","gamma":1,"betas":[1,1],"rho":0.5,"d":1,"outer":{"type":"identity"}}"#)
            .unwrap();
        assert_eq!(
            s,
            FunctionSpec::Acms {
                gamma: 1.0,
                betas: vec![1.0, 1.0],
                rho: 0.5,
                d: 1.0,
                outer: OuterFn::Identity
            }
        );
    }

    #[test]
    fn zero_gamma_is_a_validation_error() {
        let err = parse_spec(r#"{"kind":"homothetical","components":[{"type":"pow","gamma":0,"beta":0,"alpha":1}]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Validation { ref field, .. } if field == "components[0].gamma"), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_spec(r#"{"kind":"homothetical","components":[],"extra":1}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = parse_spec(
            r#"{"kind":"homothetical","components":[{"type":"exp","gamma":1,"lambda":1,"beta":2}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = parse_spec(r#"{"kind":"acms","gamma":1,"betas":[1],"rho":0.5,"d":1,"outer":{"type":"log","d":1}}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_spec("{\n  \"kind\": \"homothetical\",\n  \"components\": [\n    {\"type\": \"pow\", \"gamma\": }\n  ]\n}")
            .unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_spec(r#"{"kind":"triangle"}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn rho_rule_and_relaxation() {
        let text = r#"{"kind":"acms","gamma":1,"betas":[1,2],"rho":1.5,"d":1,"outer":{"type":"identity"}}"#;
        assert!(matches!(parse_spec(text), Err(Error::Validation { ref field, .. }) if field == "rho"));
        assert!(parse_spec_with(text, ParseOptions { relax_rho: true }).is_ok());
    }

    #[test]
    fn cobb_douglas_sugar() {
        let s = parse_spec(r#"{"kind":"cobb_douglas","gamma":2,"alphas":[0.25,0.75]}"#).unwrap();
        assert_eq!(s, make_cobb_douglas(2.0, &[0.25, 0.75]).unwrap());
        let err = parse_spec(r#"{"kind":"cobb_douglas","gamma":2,"alphas":[0.25,0]}"#).unwrap_err();
        assert!(matches!(err, Error::Validation { ref field, .. } if field == "alphas[1]"), "{err}");
    }

    #[test]
    fn serialization_field_order() {
        let s = FunctionSpec::Composite {
            outer: OuterFn::Power { d: 0.5 },
            components: vec![ComponentFn::exp(2.0, -0.1), ComponentFn::logpow(0.0, 1.0, 1.0)],
        };
        assert_eq!(
            serialize_spec(&s),
            r#"{"kind":"composite","outer":{"type":"power","d":0.5},"components":[{"type":"exp","gamma":2.0,"lambda":-0.1},{"type":"logpow","a":0.0,"b":1.0,"m":1.0}]}"#
        );
        assert_eq!(parse_spec(&serialize_spec(&s)).unwrap(), s);
    }
}

//! Evaluation of condition expressions in one of the four spaces.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thiserror::Error;

use super::syntax::{parse, Expr, ParseError};
use crate::graded_ring::RingElement;
use crate::spaces::{space, SpaceError, SpaceId};

/// Symbols that belong to the blow-up calculus rather than a base space.
const COINCIDENCE_SYMBOLS: [&str; 3] = ["eps", "t1", "t2"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("unknown symbol `{name}` in {space}; available: {}", available.join(", "))]
    UnknownSymbol {
        name: String,
        space: SpaceId,
        available: Vec<String>,
    },
    #[error("symbol `{name}` belongs to {other}, not {space}")]
    MixedSpace {
        name: String,
        space: SpaceId,
        other: SpaceId,
    },
    #[error("`{0}` is only available in the tangent-count and bitangent-count subcommands")]
    CoincidenceSymbol(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub space: SpaceId,
    pub input: String,
    pub monomial: String,
    pub schubert: String,
    pub top: Option<BigInt>,
    pub value: RingElement,
}

impl EvalResult {
    /// `{space, input, monomial, schubert, top?}`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("space".into(), json!(self.space.name()));
        m.insert("input".into(), json!(self.input));
        m.insert("monomial".into(), json!(self.monomial));
        m.insert("schubert".into(), json!(self.schubert));
        if let Some(t) = &self.top {
            m.insert("top".into(), integer_json(t));
        }
        Value::Object(m)
    }
}

/// Integers as JSON numbers when they fit, as strings otherwise.
pub fn integer_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn check_symbols(e: &Expr, id: SpaceId) -> Result<(), EvalError> {
    let s = space(id);
    for name in e.symbols() {
        if s.has_symbol(name) {
            continue;
        }
        if COINCIDENCE_SYMBOLS.contains(&name) {
            return Err(EvalError::CoincidenceSymbol(name.to_string()));
        }
        if let Some(other) = SpaceId::ALL.into_iter().find(|o| space(*o).has_symbol(name)) {
            return Err(EvalError::MixedSpace {
                name: name.to_string(),
                space: id,
                other,
            });
        }
        return Err(EvalError::UnknownSymbol {
            name: name.to_string(),
            space: id,
            available: s.symbol_names().into_iter().map(String::from).collect(),
        });
    }
    Ok(())
}

pub fn evaluate(e: &Expr, id: SpaceId) -> Result<EvalResult, EvalError> {
    check_symbols(e, id)?;
    let s = space(id);
    let value = s.eval_expr(e)?;
    let top_degree = s.ring().top_degree();
    let top = (!value.is_zero() && value.homogeneous_degree() == Some(top_degree))
        .then(|| value.evaluate_top());
    Ok(EvalResult {
        space: id,
        input: e.to_string(),
        monomial: value.render(),
        schubert: s.render_schubert(&value),
        top,
        value,
    })
}

pub fn evaluate_str(text: &str, id: SpaceId) -> Result<EvalResult, EvalError> {
    evaluate(&parse(text)?, id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_lines() {
        let r = evaluate_str("g^4", SpaceId::G).unwrap();
        assert_eq!(r.schubert, "2*G");
        assert_eq!(r.monomial, "2*c2^2");
        assert_eq!(r.top, Some(BigInt::from(2)));
        assert_eq!(
            r.to_json().to_string(),
            r#"{"space":"G","input":"g^4","monomial":"2*c2^2","schubert":"2*G","top":2}"#
        );
    }

    #[test]
    fn flag_space_product() {
        let r = evaluate_str("p*g", SpaceId::PS).unwrap();
        assert_eq!(r.schubert, "p^2 + g_e");
        assert_eq!(r.top, None);
    }

    #[test]
    fn zero_product() {
        let r = evaluate_str("g_p*g_e", SpaceId::G).unwrap();
        assert_eq!(r.schubert, "0");
        assert_eq!(r.top, None);
        assert!(r.to_json().get("top").is_none());
    }

    #[test]
    fn symbol_errors() {
        let err = evaluate_str("g*q", SpaceId::G).unwrap_err();
        assert!(err.to_string().contains("available: g, g_p, g_e, g_s, G"));
        assert!(matches!(
            evaluate_str("p*g", SpaceId::G),
            Err(EvalError::MixedSpace { .. })
        ));
        assert!(matches!(
            evaluate_str("eps^2", SpaceId::PS),
            Err(EvalError::CoincidenceSymbol(_))
        ));
        assert!(matches!(evaluate_str("g^", SpaceId::G), Err(EvalError::Parse(_))));
    }
}

//! The condition-expression language.

pub mod eval;
pub mod syntax;

pub use eval::{evaluate, evaluate_str, EvalError, EvalResult};
pub use syntax::{parse, Expr, ParseError};

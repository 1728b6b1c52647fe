//! Text front end: one small grammar per kind of expression.
//!
//! ```text
//! delta    := '0' | word ('+' word)*         word   := 'e' | ('d' INT)+
//! s        := '0' | term ('+' term)*         term   := '1' | factor ('*' factor)*
//! factor   := 'g' INT '(' gen ')' | gen      gen    := ('d' INT)* 'x' INT (':' INT)?
//! ring     := '0' | mono ('+' mono)*         mono   := '1' | power ('*' power)*
//! power    := IDENT ('^' INT)?
//! ```
//!
//! Mixed elements are JSON: `[{"coef": <ring>, "gen": IDENT, "degree": INT?}]`.
//! ASTs keep the input's term and factor order; printing emits single spaces
//! around `+` and `*` and nothing else, so `parse(print(a)) == a`.

mod ast;
mod parser;

pub use ast::{eval_delta, eval_generator, eval_s, DeltaAst, Expr, ExprKind, FactorAst, MixedAst, MixedTermAst, RingAst, STermAst, SAst};
pub use parser::{check_identifier, parse, parse_delta, parse_monomial, parse_ring, parse_ring_element, parse_s};

use std::fmt;

/// A positioned syntax error. Line and column are 1-based and count characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl std::error::Error for SyntaxError {}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: expected ", self.line, self.column)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

/// Canonical text of an AST.
pub fn print(e: &Expr) -> String {
    e.to_string()
}

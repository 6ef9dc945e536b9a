use thiserror::Error;

use super::ast::SourceSpan;
use crate::exact::{ExactError, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("syntax error at {}..{}: {message}", span.start, span.end)]
    Syntax { span: SourceSpan, message: String },
    #[error("unbound index `{name}` at {}..{}", span.start, span.end)]
    UnboundIndex { span: SourceSpan, name: String },
    #[error("exponent at {}..{} must be a nonnegative integer literal or a parameter", span.start, span.end)]
    NonLiteralExponent { span: SourceSpan },
}

impl TemplateError {
    pub fn span(&self) -> SourceSpan {
        match self {
            TemplateError::Syntax { span, .. }
            | TemplateError::UnboundIndex { span, .. }
            | TemplateError::NonLiteralExponent { span } => *span,
        }
    }

    /// The message followed by the source line and a caret under the span.
    pub fn render(&self, source: &str) -> String {
        let span = self.span();
        let start = span.start.min(source.len());
        let width = span.end.saturating_sub(span.start).max(1);
        let pad: usize = source[..start].chars().count();
        format!("error: {self}\n  {source}\n  {}{}", " ".repeat(pad), "^".repeat(width))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("slot index {index} outside 1..={max}")]
    SlotOutOfRange { index: i64, max: i64 },
    #[error("variable index {index} must be positive")]
    IndexOutOfRange { index: i64 },
    #[error("template uses permutation slots but no permutation was supplied")]
    NoPermutation,
    #[error("permutation has length {got}, expected {expected}")]
    PermutationSize { got: usize, expected: usize },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("factorial of negative number {0}")]
    NegativeFactorial(i64),
    #[error("division by the zero function")]
    DivisionByZeroFunction,
    #[error("a denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("no value assigned to variable {0}")]
    MissingAssignment(VarId),
    #[error("degree bound unavailable: {0}")]
    DegreeBoundUnavailable(String),
}

impl From<ExactError> for EvalError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::MissingAssignment(v) => EvalError::MissingAssignment(v),
            ExactError::DivisionByZeroFunction => EvalError::DivisionByZeroFunction,
            ExactError::PoleAtPoint => EvalError::PoleAtPoint,
        }
    }
}

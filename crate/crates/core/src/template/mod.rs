//! The template language: identity families with permutation slots `L(s(k))`
//! and a symbolic bound `n`.

pub mod ast;
pub mod degree;
pub mod error;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod printer;

use std::collections::BTreeMap;

pub use ast::{Affine, BigOpKind, BinOp, Exponent, Node, NodeKind, SourceSpan, Template};
pub use error::{EvalError, TemplateError};
pub use eval::{evaluate, Domain, Env, Exact, Numeric, VarCollector};
pub use parser::{parse, parse_range, parse_with_params};
pub use printer::pretty_print;

use crate::exact::{RatFunc, VarId};

/// Instantiates `t` at `n` with slot `k` resolved to `λ_{sigma[k-1]}`.
/// `sigma` must be a permutation of `1..=n+1`.
pub fn instantiate(t: &Template, n: u32, sigma: &[u32]) -> Result<RatFunc, EvalError> {
    instantiate_with(t, n, sigma, &BTreeMap::new())
}

pub fn instantiate_with(
    t: &Template,
    n: u32,
    sigma: &[u32],
    params: &BTreeMap<String, i64>,
) -> Result<RatFunc, EvalError> {
    if sigma.len() != n as usize + 1 {
        return Err(EvalError::PermutationSize {
            got: sigma.len(),
            expected: n as usize + 1,
        });
    }
    let env = Env::new(n as i64, Some(sigma), params);
    Ok(evaluate(&Exact::symbolic(), &t.root, &env)?.to_ratfunc())
}

/// Variables referenced by `t` at `n`, with slots ranging over `1..=n+1`.
pub fn free_vars(
    t: &Template,
    n: u32,
    params: &BTreeMap<String, i64>,
) -> Result<std::collections::BTreeSet<VarId>, EvalError> {
    let id: Vec<u32> = (1..=n + 1).collect();
    let env = Env::new(n as i64, Some(&id), params);
    evaluate(&VarCollector, &t.root, &env)
}

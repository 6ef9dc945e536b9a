//! Recursive-descent parser for the template language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' (INT | PARAM))?
//! atom    := INT | '(' expr ')' | 'L' '(' ('s' '(' affine ')' | affine) ')'
//!          | 'x' '(' affine ')' | 'Yv' '(' affine ')' | 'Y' | 'Z' | 't' | 'q'
//!          | ('sum' | 'prod') '(' NAME '=' affine '..' affine ',' expr ')'
//!          | 'binom' '(' expr ',' affine ')' | 'fact' '(' affine ')'
//!          | 'sign' '(' affine ')' | 'qbinom' '(' affine ',' affine ')'
//!          | NAME
//! affine  := integer-linear combination of `n`, bound indices and parameters
//! ```
//!
//! `-INT` and `INT/INT` made of bare integer literals fold into constants.

use num_traits::{ToPrimitive, Zero};

use super::ast::{Affine, BigOpKind, BinOp, Exponent, Node, NodeKind, SourceSpan, Template};
use super::error::TemplateError;
use super::lexer::{tokenize, Tok, Token};
use crate::exact::{Rational, VarId};

const RESERVED: &[&str] = &[
    "L", "s", "x", "Yv", "Y", "Z", "t", "q", "n", "sum", "prod", "binom", "fact", "sign", "qbinom",
];

/// Parses a template that references no parameters.
pub fn parse(text: &str) -> Result<Template, TemplateError> {
    parse_with_params::<&str>(text, &[])
}

/// Parses a template whose free integer parameters are `params`.
pub fn parse_with_params<S: AsRef<str>>(text: &str, params: &[S]) -> Result<Template, TemplateError> {
    let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
    for p in &params {
        if RESERVED.contains(&p.as_str()) || !is_name(p) {
            return Err(TemplateError::Syntax {
                span: SourceSpan::default(),
                message: format!("`{p}` cannot be used as a parameter name"),
            });
        }
    }
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
        scope: Vec::new(),
        params: &params,
    };
    let (root, _) = parser.expr()?;
    parser.expect(Tok::Eof, "end of input")?;
    Ok(Template { root, params })
}

/// Parses an integer range `lo..hi` whose ends are affine in `n` and `params`.
pub fn parse_range<S: AsRef<str>>(text: &str, params: &[S]) -> Result<(Affine, Affine), TemplateError> {
    let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
        scope: Vec::new(),
        params: &params,
    };
    let lo = parser.affine()?;
    parser.expect(Tok::DotDot, "`..`")?;
    let hi = parser.affine()?;
    parser.expect(Tok::Eof, "end of input")?;
    Ok((lo, hi))
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
    params: &'a [String],
}

type Parsed = (Node, bool);

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, span: SourceSpan, message: impl Into<String>) -> Result<T, TemplateError> {
        Err(TemplateError::Syntax {
            span,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<SourceSpan, TemplateError> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            let found = self.peek().describe();
            self.syntax(self.span(), format!("expected {what}, found {found}"))
        }
    }

    fn is_known(&self, name: &str) -> bool {
        name == "n" || self.scope.iter().any(|s| s == name) || self.params.iter().any(|s| s == name)
    }

    fn expr(&mut self) -> Result<Parsed, TemplateError> {
        let (mut lhs, mut bare) = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok((lhs, bare)),
            };
            self.bump();
            let (rhs, _) = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Node::new(NodeKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
            bare = false;
        }
    }

    fn term(&mut self) -> Result<Parsed, TemplateError> {
        let (mut lhs, mut bare) = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok((lhs, bare)),
            };
            self.bump();
            let (rhs, rbare) = self.unary()?;
            let span = lhs.span.join(rhs.span);
            if let (BinOp::Div, true, true, NodeKind::Const(a), NodeKind::Const(b)) =
                (op, bare, rbare, &lhs.kind, &rhs.kind)
            {
                if !b.is_zero() {
                    lhs = Node::new(NodeKind::Const(a / b), span);
                    bare = false;
                    continue;
                }
            }
            lhs = Node::new(NodeKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
            bare = false;
        }
    }

    fn unary(&mut self) -> Result<Parsed, TemplateError> {
        if *self.peek() == Tok::Minus {
            let start = self.bump().span;
            let (inner, bare) = self.unary()?;
            let span = start.join(inner.span);
            if bare {
                if let NodeKind::Const(c) = &inner.kind {
                    return Ok((Node::new(NodeKind::Const(-c.clone()), span), true));
                }
            }
            return Ok((Node::new(NodeKind::Neg(Box::new(inner)), span), false));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Parsed, TemplateError> {
        let (base, bare) = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok((base, bare));
        }
        self.bump();
        let t = self.bump();
        let exp = match &t.tok {
            Tok::Int(i) => match i.to_u32() {
                Some(k) => Exponent::Literal(k),
                None => return self.syntax(t.span, "exponent too large"),
            },
            Tok::Ident(name) if self.params.iter().any(|p| p == name) => Exponent::Param(name.clone()),
            _ => return Err(TemplateError::NonLiteralExponent { span: t.span }),
        };
        let span = base.span.join(t.span);
        Ok((Node::new(NodeKind::Pow(Box::new(base), exp), span), false))
    }

    fn atom(&mut self) -> Result<Parsed, TemplateError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(i) => Ok((Node::new(NodeKind::Const(Rational::from_integer(i)), t.span), true)),
            Tok::LParen => {
                let (inner, _) = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok((inner, false))
            }
            Tok::Ident(name) => self.ident_atom(name, t.span).map(|n| (n, false)),
            other => self.syntax(t.span, format!("expected an expression, found {}", other.describe())),
        }
    }

    fn open(&mut self, name: &str) -> Result<(), TemplateError> {
        if *self.peek() != Tok::LParen {
            return self.syntax(self.span(), format!("expected `(` after `{name}`"));
        }
        self.bump();
        Ok(())
    }

    fn close(&mut self, start: SourceSpan) -> Result<SourceSpan, TemplateError> {
        let end = self.expect(Tok::RParen, "`)`")?;
        Ok(start.join(end))
    }

    fn ident_atom(&mut self, name: String, span: SourceSpan) -> Result<Node, TemplateError> {
        let node = |kind, span| Ok(Node::new(kind, span));
        match name.as_str() {
            "Y" => node(NodeKind::Scalar(VarId::Y), span),
            "Z" => node(NodeKind::Scalar(VarId::Z), span),
            "t" => node(NodeKind::Scalar(VarId::T), span),
            "q" => node(NodeKind::Scalar(VarId::Q), span),
            "L" => {
                self.open("L")?;
                if matches!(self.peek(), Tok::Ident(s) if s == "s") && *self.peek_at(1) == Tok::LParen {
                    self.bump();
                    self.bump();
                    let a = self.affine()?;
                    self.expect(Tok::RParen, "`)`")?;
                    let span = self.close(span)?;
                    node(NodeKind::Slot(a), span)
                } else {
                    let a = self.affine()?;
                    let span = self.close(span)?;
                    node(NodeKind::Lambda(a), span)
                }
            }
            "x" | "Yv" => {
                self.open(&name)?;
                let a = self.affine()?;
                let span = self.close(span)?;
                let kind = if name == "x" { NodeKind::X(a) } else { NodeKind::Yvec(a) };
                node(kind, span)
            }
            "sum" | "prod" => {
                self.open(&name)?;
                let var_tok = self.bump();
                let var = match var_tok.tok {
                    Tok::Ident(v) => v,
                    other => {
                        return self.syntax(
                            var_tok.span,
                            format!("expected an index name, found {}", other.describe()),
                        )
                    }
                };
                if RESERVED.contains(&var.as_str()) || self.params.contains(&var) {
                    return self.syntax(var_tok.span, format!("`{var}` cannot be used as an index name"));
                }
                self.expect(Tok::Eq, "`=`")?;
                let lo = self.affine()?;
                self.expect(Tok::DotDot, "`..`")?;
                let hi = self.affine()?;
                self.expect(Tok::Comma, "`,`")?;
                self.scope.push(var.clone());
                let body = self.expr();
                self.scope.pop();
                let (body, _) = body?;
                let span = self.close(span)?;
                let kind = if name == "sum" { BigOpKind::Sum } else { BigOpKind::Prod };
                node(
                    NodeKind::BigOp {
                        kind,
                        var,
                        lo,
                        hi,
                        body: Box::new(body),
                    },
                    span,
                )
            }
            "binom" => {
                self.open("binom")?;
                let (top, _) = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let k = self.affine()?;
                let span = self.close(span)?;
                node(NodeKind::Binom(Box::new(top), k), span)
            }
            "fact" | "sign" => {
                self.open(&name)?;
                let a = self.affine()?;
                let span = self.close(span)?;
                let kind = if name == "fact" {
                    NodeKind::Fact(a)
                } else {
                    NodeKind::Sign(a)
                };
                node(kind, span)
            }
            "qbinom" => {
                self.open("qbinom")?;
                let a = self.affine()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.affine()?;
                let span = self.close(span)?;
                node(NodeKind::QBinom(a, b), span)
            }
            "s" => self.syntax(span, "permutation slot `s(..)` is only allowed inside `L(..)`"),
            _ if self.is_known(&name) => node(NodeKind::Index(name), span),
            _ => Err(TemplateError::UnboundIndex { span, name }),
        }
    }

    // ---- affine index expressions ----

    fn affine(&mut self) -> Result<Affine, TemplateError> {
        let start = self.span();
        let (a, _) = self.aff_expr().map_err(|e| match e {
            TemplateError::Syntax { span, message } if message == "__nonaffine" => TemplateError::Syntax {
                span: start.join(span),
                message: "index expression must be affine (integer-linear)".into(),
            },
            other => other,
        })?;
        Ok(a)
    }

    fn aff_expr(&mut self) -> Result<(Affine, SourceSpan), TemplateError> {
        let (mut acc, mut span) = self.aff_term()?;
        loop {
            let sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => return Ok((acc, span)),
            };
            self.bump();
            let (rhs, s) = self.aff_term()?;
            acc = acc.add(&rhs.scale(sign));
            span = span.join(s);
        }
    }

    fn aff_term(&mut self) -> Result<(Affine, SourceSpan), TemplateError> {
        let (mut acc, mut span) = self.aff_unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let (rhs, s) = self.aff_unary()?;
            span = span.join(s);
            acc = if acc.is_constant() {
                rhs.scale(acc.constant)
            } else if rhs.is_constant() {
                acc.scale(rhs.constant)
            } else {
                return self.syntax(span, "__nonaffine");
            };
        }
        if matches!(self.peek(), Tok::Slash | Tok::Caret) {
            return self.syntax(self.span(), "__nonaffine");
        }
        Ok((acc, span))
    }

    fn aff_unary(&mut self) -> Result<(Affine, SourceSpan), TemplateError> {
        if *self.peek() == Tok::Minus {
            let s = self.bump().span;
            let (a, span) = self.aff_unary()?;
            return Ok((a.scale(-1), s.join(span)));
        }
        let t = self.bump();
        match t.tok {
            Tok::Int(i) => match i.to_i64() {
                Some(v) if v.abs() < (1 << 40) => Ok((Affine::constant(v), t.span)),
                _ => self.syntax(t.span, "index constant too large"),
            },
            Tok::Ident(name) => {
                if self.is_known(&name) {
                    Ok((Affine::name(&name), t.span))
                } else if RESERVED.contains(&name.as_str()) {
                    self.syntax(t.span, format!("`{name}` is not an index"))
                } else {
                    Err(TemplateError::UnboundIndex { span: t.span, name })
                }
            }
            Tok::LParen => {
                let (a, s) = self.aff_expr()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                Ok((a, t.span.join(s).join(end)))
            }
            other => self.syntax(
                t.span,
                format!("expected an index expression, found {}", other.describe()),
            ),
        }
    }
}

impl std::str::FromStr for Template {
    type Err = TemplateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    #[test]
    fn parses_kernel_product() {
        let t = parse("prod(k=1..n, (L(s(k)) - Y) / (L(s(k)) - L(s(k+1))))").unwrap();
        match &t.root.kind {
            NodeKind::BigOp { kind, var, lo, hi, .. } => {
                assert_eq!(*kind, BigOpKind::Prod);
                assert_eq!(var, "k");
                assert_eq!(*lo, Affine::constant(1));
                assert_eq!(*hi, Affine::name("n"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unclosed_is_syntax_error() {
        let err = parse("prod(k=1..n").unwrap_err();
        assert!(matches!(err, TemplateError::Syntax { .. }));
        assert_eq!(err.span().start, 11);
    }

    #[test]
    fn unbound_index() {
        let err = parse("L(s(k))").unwrap_err();
        assert_eq!(
            err,
            TemplateError::UnboundIndex {
                span: SourceSpan::new(4, 5),
                name: "k".into()
            }
        );
    }

    #[test]
    fn exponent_rules() {
        assert!(parse("L(1)^3").is_ok());
        assert!(matches!(parse("L(1)^n"), Err(TemplateError::NonLiteralExponent { .. })));
        assert!(matches!(
            parse("sum(k=1..n, Y^k)"),
            Err(TemplateError::NonLiteralExponent { .. })
        ));
        assert!(matches!(parse("Y^(2)"), Err(TemplateError::NonLiteralExponent { .. })));
        let t = parse_with_params("L(s(1))^m", &["m"]).unwrap();
        assert!(matches!(t.root.kind, NodeKind::Pow(_, Exponent::Param(_))));
    }

    #[test]
    fn literal_folding() {
        assert_eq!(parse("3/2").unwrap().root.kind, NodeKind::Const(frac(3, 2)));
        assert_eq!(parse("-4").unwrap().root.kind, NodeKind::Const(frac(-4, 1)));
        assert!(matches!(
            parse("(3)/2").unwrap().root.kind,
            NodeKind::Binary(BinOp::Div, _, _)
        ));
        assert!(matches!(
            parse("1/0").unwrap().root.kind,
            NodeKind::Binary(BinOp::Div, _, _)
        ));
    }

    #[test]
    fn affine_only_bounds() {
        assert!(parse("sum(i=1..2*n-1, x(i))").is_ok());
        assert!(matches!(
            parse("sum(i=1..n*n, x(i))"),
            Err(TemplateError::Syntax { .. })
        ));
        assert!(parse("L(s(0))").is_ok());
    }

    #[test]
    fn ranges() {
        let (lo, hi) = parse_range("1..n+1", &["j"]).unwrap();
        assert_eq!((lo.to_string(), hi.to_string()), ("1".to_string(), "n+1".to_string()));
        assert!(parse_range("0..j", &["p"]).is_err());
        assert!(parse_range("1..", &[] as &[&str]).is_err());
    }

    #[test]
    fn reserved_names() {
        assert!(parse("sum(t=1..n, 1)").is_err());
        assert!(parse("x").is_err());
    }
}

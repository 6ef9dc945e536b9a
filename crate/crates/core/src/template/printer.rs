//! Canonical pretty-printer. `parse(print(t))` reproduces `t` structurally.

use num_traits::Signed;

use super::ast::{BigOpKind, BinOp, Exponent, Node, NodeKind, Template};

const ADD: u8 = 1;
const MUL: u8 = 2;
const UNARY: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

pub fn pretty_print(t: &Template) -> String {
    print_node(&t.root)
}

pub fn print_node(node: &Node) -> String {
    let mut out = String::new();
    write_node(node, &mut out);
    out
}

fn level(node: &Node) -> u8 {
    match &node.kind {
        NodeKind::Const(c) => {
            if !c.is_integer() {
                MUL
            } else if c.is_negative() {
                UNARY
            } else {
                ATOM
            }
        }
        NodeKind::Binary(BinOp::Add | BinOp::Sub, ..) => ADD,
        NodeKind::Binary(BinOp::Mul | BinOp::Div, ..) => MUL,
        NodeKind::Neg(_) => UNARY,
        NodeKind::Pow(..) => POW,
        _ => ATOM,
    }
}

fn write_at_least(node: &Node, min: u8, out: &mut String) {
    if level(node) >= min {
        write_node(node, out);
    } else {
        out.push('(');
        write_node(node, out);
        out.push(')');
    }
}

fn is_int_const(node: &Node) -> bool {
    matches!(&node.kind, NodeKind::Const(c) if c.is_integer())
}

fn write_node(node: &Node, out: &mut String) {
    match &node.kind {
        NodeKind::Const(c) => out.push_str(&c.to_string()),
        NodeKind::Scalar(v) => out.push_str(&v.to_string()),
        NodeKind::Lambda(a) => out.push_str(&format!("L({a})")),
        NodeKind::Slot(a) => out.push_str(&format!("L(s({a}))")),
        NodeKind::X(a) => out.push_str(&format!("x({a})")),
        NodeKind::Yvec(a) => out.push_str(&format!("Yv({a})")),
        NodeKind::Index(name) => out.push_str(name),
        NodeKind::Neg(inner) => {
            out.push('-');
            // `-(3)` keeps a negated literal distinct from the constant -3
            if matches!(inner.kind, NodeKind::Const(_)) {
                out.push('(');
                write_node(inner, out);
                out.push(')');
            } else {
                write_at_least(inner, UNARY, out);
            }
        }
        NodeKind::Binary(op, a, b) => {
            let (lvl, sym) = match op {
                BinOp::Add => (ADD, " + "),
                BinOp::Sub => (ADD, " - "),
                BinOp::Mul => (MUL, "*"),
                BinOp::Div => (MUL, "/"),
            };
            // `(3)/2` keeps a quotient of literals from folding into 3/2
            if *op == BinOp::Div && is_int_const(a) && is_int_const(b) {
                out.push('(');
                write_node(a, out);
                out.push(')');
            } else {
                write_at_least(a, lvl, out);
            }
            out.push_str(sym);
            write_at_least(b, lvl + 1, out);
        }
        NodeKind::Pow(base, e) => {
            write_at_least(base, ATOM, out);
            out.push('^');
            match e {
                Exponent::Literal(k) => out.push_str(&k.to_string()),
                Exponent::Param(p) => out.push_str(p),
            }
        }
        NodeKind::BigOp {
            kind,
            var,
            lo,
            hi,
            body,
        } => {
            let name = match kind {
                BigOpKind::Sum => "sum",
                BigOpKind::Prod => "prod",
            };
            out.push_str(&format!("{name}({var}={lo}..{hi}, "));
            write_node(body, out);
            out.push(')');
        }
        NodeKind::Binom(top, k) => {
            out.push_str("binom(");
            write_node(top, out);
            out.push_str(&format!(", {k})"));
        }
        NodeKind::Fact(a) => out.push_str(&format!("fact({a})")),
        NodeKind::Sign(a) => out.push_str(&format!("sign({a})")),
        NodeKind::QBinom(a, b) => out.push_str(&format!("qbinom({a}, {b})")),
    }
}

impl std::fmt::Display for Template {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&pretty_print(self))
    }
}

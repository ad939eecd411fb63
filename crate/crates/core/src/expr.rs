//! Parametric expression language for curve components.
//!
//! Grammar, with standard precedence (`^` above unary minus above `*` `/`
//! above `+` `-`) and left associativity for the binary arithmetic operators:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! atom   := number | 's' | name | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! The exponent is a (possibly negated) integer literal, which keeps jet
//! evaluation exact and avoids branch cuts; chained `^` therefore cannot
//! occur. Known functions are `sin cos tan exp log sqrt`. Any other name is
//! a user constant bound at spec load time; a name in function position that
//! is not a known function is rejected at parse time.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::jet::{Jet, JET_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

/// Abstract syntax tree of a parametric expression in `s`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    /// The curve parameter `s`.
    Param,
    /// A named constant, bound when the spec is loaded.
    Const(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Fun(Func, Box<Expr>),
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: found {found}, expected {}", expected.join(", "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("exponent at byte {offset} must be an integer literal")]
    BadExponent { offset: usize },
}

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("unbound identifier `{name}`")]
    UnknownIdentifier { name: String },
    #[error("domain error: {func}({arg}) is undefined")]
    Domain { func: &'static str, arg: f64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("jet order {requested} exceeds the supported maximum {max}")]
    OrderTooHigh { requested: usize, max: usize },
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number `{x}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::End, start));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' | b'.' => {
                let mut end = self.pos;
                while end < self.src.len() && (self.src[end].is_ascii_digit() || self.src[end] == b'.')
                {
                    end += 1;
                }
                // Optional exponent part.
                if end < self.src.len() && (self.src[end] == b'e' || self.src[end] == b'E') {
                    let mut e = end + 1;
                    if e < self.src.len() && (self.src[e] == b'+' || self.src[e] == b'-') {
                        e += 1;
                    }
                    if e < self.src.len() && self.src[e].is_ascii_digit() {
                        while e < self.src.len() && self.src[e].is_ascii_digit() {
                            e += 1;
                        }
                        end = e;
                    }
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    found: format!("`{text}`"),
                    expected: vec!["number"],
                })?;
                self.pos = end;
                Tok::Num(value)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Ident(text.to_string())
            }
            other => {
                return Err(ParseError::Syntax {
                    offset: start,
                    found: format!("`{}`", other as char),
                    expected: vec!["expression"],
                })
            }
        };
        Ok((tok, start))
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.idx]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn err(&self, expected: Vec<&'static str>) -> ParseError {
        let (tok, offset) = self.peek();
        ParseError::Syntax {
            offset: *offset,
            found: tok.describe(),
            expected,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().0 {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek().0, Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek().0, Tok::Caret) {
            self.bump();
            let (tok, offset) = self.bump();
            let exp = match tok {
                Tok::Num(x) => int_exponent(x, offset)?,
                Tok::Minus => match self.bump() {
                    (Tok::Num(x), off) => -int_exponent(x, off)?,
                    _ => return Err(ParseError::BadExponent { offset }),
                },
                _ => return Err(ParseError::BadExponent { offset }),
            };
            return Ok(Expr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, offset) = self.bump();
        match tok {
            Tok::Num(x) => Ok(Expr::Num(x)),
            Tok::Ident(name) => {
                if matches!(self.peek().0, Tok::LParen) {
                    let func = Func::from_name(&name)
                        .ok_or(ParseError::UnknownFunction { name, offset })?;
                    self.bump(); // '('
                    let arg = self.expr()?;
                    if !matches!(self.peek().0, Tok::RParen) {
                        return Err(self.err(vec!["`)`"]));
                    }
                    self.bump();
                    Ok(Expr::Fun(func, Box::new(arg)))
                } else if name == "s" {
                    Ok(Expr::Param)
                } else {
                    Ok(Expr::Const(name))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if !matches!(self.peek().0, Tok::RParen) {
                    return Err(self.err(vec!["`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            tok => Err(ParseError::Syntax {
                offset,
                found: tok.describe(),
                expected: vec!["number", "identifier", "`(`", "`-`"],
            }),
        }
    }
}

fn int_exponent(x: f64, offset: usize) -> Result<i32, ParseError> {
    if x.fract() == 0.0 && x.abs() <= i32::MAX as f64 {
        Ok(x as i32)
    } else {
        Err(ParseError::BadExponent { offset })
    }
}

/// Parses an expression string into its syntax tree.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut lex = Lexer::new(text);
    let mut toks = Vec::new();
    loop {
        let (tok, off) = lex.next()?;
        let end = matches!(tok, Tok::End);
        toks.push((tok, off));
        if end {
            break;
        }
    }
    let mut p = Parser { toks, idx: 0 };
    let expr = p.expr()?;
    if !matches!(p.peek().0, Tok::End) {
        return Err(p.err(vec!["operator", "end of input"]));
    }
    Ok(expr)
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(..) | Expr::Param | Expr::Const(..) | Expr::Fun(..) => 5,
        }
    }

    fn fmt_child(&self, child: &Expr, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() < min_prec {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }

    /// Every free constant name in the tree, sorted and deduplicated.
    pub fn free_constants(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_constants(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_constants(&self, out: &mut Vec<String>) {
        match self {
            Expr::Const(name) => out.push(name.clone()),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Fun(_, a) => a.collect_constants(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_constants(out);
                b.collect_constants(out);
            }
            Expr::Num(_) | Expr::Param => {}
        }
    }

    /// Replaces the parameter `s` with another expression. Used by tests for
    /// reparametrization checks and by spec tooling.
    pub fn substitute_param(&self, replacement: &Expr) -> Expr {
        match self {
            Expr::Param => replacement.clone(),
            Expr::Num(x) => Expr::Num(*x),
            Expr::Const(name) => Expr::Const(name.clone()),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute_param(replacement))),
            Expr::Add(a, b) => Expr::Add(
                Box::new(a.substitute_param(replacement)),
                Box::new(b.substitute_param(replacement)),
            ),
            Expr::Sub(a, b) => Expr::Sub(
                Box::new(a.substitute_param(replacement)),
                Box::new(b.substitute_param(replacement)),
            ),
            Expr::Mul(a, b) => Expr::Mul(
                Box::new(a.substitute_param(replacement)),
                Box::new(b.substitute_param(replacement)),
            ),
            Expr::Div(a, b) => Expr::Div(
                Box::new(a.substitute_param(replacement)),
                Box::new(b.substitute_param(replacement)),
            ),
            Expr::Pow(a, n) => Expr::Pow(Box::new(a.substitute_param(replacement)), *n),
            Expr::Fun(func, a) => Expr::Fun(*func, Box::new(a.substitute_param(replacement))),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x}"),
            Expr::Param => write!(f, "s"),
            Expr::Const(name) => write!(f, "{name}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                self.fmt_child(a, 3, f)
            }
            Expr::Add(a, b) => {
                self.fmt_child(a, 1, f)?;
                write!(f, " + ")?;
                self.fmt_child(b, 2, f)
            }
            Expr::Sub(a, b) => {
                self.fmt_child(a, 1, f)?;
                write!(f, " - ")?;
                self.fmt_child(b, 2, f)
            }
            Expr::Mul(a, b) => {
                self.fmt_child(a, 2, f)?;
                write!(f, "*")?;
                self.fmt_child(b, 3, f)
            }
            Expr::Div(a, b) => {
                self.fmt_child(a, 2, f)?;
                write!(f, "/")?;
                self.fmt_child(b, 3, f)
            }
            Expr::Pow(a, n) => {
                self.fmt_child(a, 5, f)?;
                if *n < 0 {
                    write!(f, "^-{}", n.unsigned_abs())
                } else {
                    write!(f, "^{n}")
                }
            }
            Expr::Fun(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Bound constant values for evaluation.
pub type Constants = BTreeMap<String, f64>;

const TAN_POLE_EPS: f64 = 1e-12;

/// Evaluates the expression as a jet at `s`, carrying derivatives up to
/// `order` (at most [`JET_ORDER`]). Coefficients are exact derivatives of the
/// expression; domain violations of the elementary functions are errors.
pub fn eval_jet(expr: &Expr, s: f64, order: usize, constants: &Constants) -> Result<Jet, EvalError> {
    if order > JET_ORDER {
        return Err(EvalError::OrderTooHigh {
            requested: order,
            max: JET_ORDER,
        });
    }
    eval_jet_inner(expr, Jet::variable(s), constants)
}

fn eval_jet_inner(expr: &Expr, s: Jet, constants: &Constants) -> Result<Jet, EvalError> {
    Ok(match expr {
        Expr::Num(x) => Jet::constant(*x),
        Expr::Param => s,
        Expr::Const(name) => Jet::constant(
            *constants
                .get(name)
                .ok_or_else(|| EvalError::UnknownIdentifier { name: name.clone() })?,
        ),
        Expr::Neg(a) => -eval_jet_inner(a, s, constants)?,
        Expr::Add(a, b) => eval_jet_inner(a, s, constants)? + eval_jet_inner(b, s, constants)?,
        Expr::Sub(a, b) => eval_jet_inner(a, s, constants)? - eval_jet_inner(b, s, constants)?,
        Expr::Mul(a, b) => eval_jet_inner(a, s, constants)? * eval_jet_inner(b, s, constants)?,
        Expr::Div(a, b) => {
            let den = eval_jet_inner(b, s, constants)?;
            if den.value() == 0.0 {
                return Err(EvalError::DivisionByZero);
            }
            eval_jet_inner(a, s, constants)? / den
        }
        Expr::Pow(a, n) => {
            let base = eval_jet_inner(a, s, constants)?;
            if *n < 0 && base.value() == 0.0 {
                return Err(EvalError::DivisionByZero);
            }
            base.powi(*n)
        }
        Expr::Fun(func, a) => {
            let arg = eval_jet_inner(a, s, constants)?;
            match func {
                Func::Sin => arg.sin(),
                Func::Cos => arg.cos(),
                Func::Tan => {
                    if arg.value().cos().abs() <= TAN_POLE_EPS {
                        return Err(EvalError::Domain {
                            func: "tan",
                            arg: arg.value(),
                        });
                    }
                    arg.tan()
                }
                Func::Exp => arg.exp(),
                Func::Log => {
                    if arg.value() <= 0.0 {
                        return Err(EvalError::Domain {
                            func: "log",
                            arg: arg.value(),
                        });
                    }
                    arg.ln()
                }
                Func::Sqrt => {
                    if arg.value() <= 0.0 {
                        return Err(EvalError::Domain {
                            func: "sqrt",
                            arg: arg.value(),
                        });
                    }
                    crate::real::Real::sqrt(arg)
                }
            }
        }
    })
}

/// Plain evaluation without derivative bookkeeping.
pub fn eval_plain(expr: &Expr, s: f64, constants: &Constants) -> Result<f64, EvalError> {
    Ok(match expr {
        Expr::Num(x) => *x,
        Expr::Param => s,
        Expr::Const(name) => *constants
            .get(name)
            .ok_or_else(|| EvalError::UnknownIdentifier { name: name.clone() })?,
        Expr::Neg(a) => -eval_plain(a, s, constants)?,
        Expr::Add(a, b) => eval_plain(a, s, constants)? + eval_plain(b, s, constants)?,
        Expr::Sub(a, b) => eval_plain(a, s, constants)? - eval_plain(b, s, constants)?,
        Expr::Mul(a, b) => eval_plain(a, s, constants)? * eval_plain(b, s, constants)?,
        Expr::Div(a, b) => {
            let den = eval_plain(b, s, constants)?;
            if den == 0.0 {
                return Err(EvalError::DivisionByZero);
            }
            eval_plain(a, s, constants)? / den
        }
        Expr::Pow(a, n) => {
            let base = eval_plain(a, s, constants)?;
            if *n < 0 && base == 0.0 {
                return Err(EvalError::DivisionByZero);
            }
            base.powi(*n)
        }
        Expr::Fun(func, a) => {
            let arg = eval_plain(a, s, constants)?;
            match func {
                Func::Sin => arg.sin(),
                Func::Cos => arg.cos(),
                Func::Tan => {
                    if arg.cos().abs() <= TAN_POLE_EPS {
                        return Err(EvalError::Domain { func: "tan", arg });
                    }
                    arg.tan()
                }
                Func::Exp => arg.exp(),
                Func::Log => {
                    if arg <= 0.0 {
                        return Err(EvalError::Domain { func: "log", arg });
                    }
                    arg.ln()
                }
                Func::Sqrt => {
                    if arg <= 0.0 {
                        return Err(EvalError::Domain { func: "sqrt", arg });
                    }
                    arg.sqrt()
                }
            }
        }
    })
}

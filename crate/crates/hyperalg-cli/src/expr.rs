//! Hypercomplex expression language: lexer, recursive-descent parser,
//! pretty-printer and evaluator.
//!
//! Grammar (standard precedence, left associative):
//!   expr  := term (('+' | '-') term)*
//!   term  := unary (('*' | '/') unary)*
//!   unary := '-' unary | atom
//!   atom  := number basis? | basis | '_' | ident '(' expr ')' | '(' expr ')'
//!
//! A numeric literal binds to an immediately following basis letter, so
//! `2i` is the number 2i while `2 i` is a syntax error (no implicit
//! multiplication). Identifiers are case-sensitive; the recognized
//! functions are exp, sin, cos and conj.

use std::fmt;

use hyperalg::algebra::Algebra;
use hyperalg::analytic::{self, SeriesConfig};
use hyperalg::hnum::{Conjugation, HFloat};
use hyperalg::table::BASIS_NAMES;
use hyperalg::CoreError;

/// Parse failure with a byte position into the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Conj,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Conj => "conj",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        match s {
            "exp" => Some(Func::Exp),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "conj" => Some(Func::Conj),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Expr {
    /// Scalar literal, or `coeff * basis` for a bound literal like `2i`.
    /// `basis` is the index into (1, i, j, k); scalars use index 0.
    Literal { coeff: f64, basis: usize },
    /// The REPL's last-result binding `_`.
    LastResult,
    Neg(Box<Expr>),
    /// Division nodes carry the position of their operator so zero-divisor
    /// errors can point at the offending `/`.
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr>, position: usize },
    Call { func: Func, arg: Box<Expr> },
}

// Structural equality; operator source positions are diagnostics, not
// part of the tree's meaning, so printing and re-parsing stays an
// identity even though positions move.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                Expr::Literal { coeff: c1, basis: b1 },
                Expr::Literal { coeff: c2, basis: b2 },
            ) => c1 == c2 && b1 == b2,
            (Expr::LastResult, Expr::LastResult) => true,
            (Expr::Neg(a), Expr::Neg(b)) => a == b,
            (
                Expr::Binary { op: o1, lhs: l1, rhs: r1, .. },
                Expr::Binary { op: o2, lhs: l2, rhs: r2, .. },
            ) => o1 == o2 && l1 == l2 && r1 == r2,
            (Expr::Call { func: f1, arg: a1 }, Expr::Call { func: f2, arg: a2 }) => {
                f1 == f2 && a1 == a2
            }
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(f64),
    Basis(usize),
    Ident(String),
    Underscore,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(v) => write!(f, "number {v}"),
            Tok::Basis(b) => write!(f, "'{}'", BASIS_NAMES[*b]),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Underscore => write!(f, "'_'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
        }
    }
}

/// Token plus the byte range it was lexed from; `end` makes the
/// adjacency check for bound literals ("2i" vs "2 i") possible.
#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    start: usize,
    end: usize,
}

fn basis_index(name: &str) -> Option<usize> {
    BASIS_NAMES.iter().position(|b| *b == name)
}

fn lex(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = match c {
            '+' => {
                pos += 1;
                Tok::Plus
            }
            '-' => {
                pos += 1;
                Tok::Minus
            }
            '*' => {
                pos += 1;
                Tok::Star
            }
            '/' => {
                pos += 1;
                Tok::Slash
            }
            '(' => {
                pos += 1;
                Tok::LParen
            }
            ')' => {
                pos += 1;
                Tok::RParen
            }
            '_' => {
                pos += 1;
                Tok::Underscore
            }
            '0'..='9' | '.' => {
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.' || bytes[pos] == b'e'
                        || bytes[pos] == b'E'
                        || ((bytes[pos] == b'+' || bytes[pos] == b'-')
                            && matches!(bytes[pos - 1], b'e' | b'E')))
                {
                    pos += 1;
                }
                let lit = &text[start..pos];
                let v: f64 = lit.parse().map_err(|_| SyntaxError {
                    position: start,
                    message: format!("malformed number '{lit}'"),
                })?;
                Tok::Number(v)
            }
            c if c.is_ascii_alphabetic() => {
                while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                    pos += 1;
                }
                let word = &text[start..pos];
                match basis_index(word) {
                    Some(b) => Tok::Basis(b),
                    None => Tok::Ident(word.to_string()),
                }
            }
            other => {
                return Err(SyntaxError {
                    position: pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push(Spanned { tok, start, end: pos });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    toks: &'a [Spanned],
    next: usize,
    source_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.next)
    }

    fn here(&self) -> usize {
        self.peek().map(|s| s.start).unwrap_or(self.source_len)
    }

    fn bump(&mut self) -> Option<&Spanned> {
        let t = self.toks.get(self.next);
        if t.is_some() {
            self.next += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> SyntaxError {
        let found = match self.peek() {
            Some(s) => format!("found {}", s.tok),
            None => "found end of input".to_string(),
        };
        SyntaxError { position: self.here(), message: format!("expected {expected}, {found}") }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let (op, position) = match self.peek() {
                Some(Spanned { tok: Tok::Plus, start, .. }) => (BinOp::Add, *start),
                Some(Spanned { tok: Tok::Minus, start, .. }) => (BinOp::Sub, *start),
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs), position };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let (op, position) = match self.peek() {
                Some(Spanned { tok: Tok::Star, start, .. }) => (BinOp::Mul, *start),
                Some(Spanned { tok: Tok::Slash, start, .. }) => (BinOp::Div, *start),
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs), position };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if matches!(self.peek(), Some(Spanned { tok: Tok::Minus, .. })) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let spanned = match self.peek() {
            Some(s) => s.clone(),
            None => return Err(self.err("a value")),
        };
        match spanned.tok {
            Tok::Number(v) => {
                self.bump();
                // A basis letter glued to the number binds to it: "2i".
                if let Some(Spanned { tok: Tok::Basis(b), start, .. }) = self.peek() {
                    if *start == spanned.end {
                        let basis = *b;
                        self.bump();
                        return Ok(Expr::Literal { coeff: v, basis });
                    }
                }
                Ok(Expr::Literal { coeff: v, basis: 0 })
            }
            Tok::Basis(b) => {
                self.bump();
                Ok(Expr::Literal { coeff: 1.0, basis: b })
            }
            Tok::Underscore => {
                self.bump();
                Ok(Expr::LastResult)
            }
            Tok::Ident(name) => {
                let func = Func::from_name(&name).ok_or_else(|| SyntaxError {
                    position: spanned.start,
                    message: format!("unknown function '{name}' (expected exp, sin, cos or conj)"),
                })?;
                self.bump();
                if !matches!(self.peek(), Some(Spanned { tok: Tok::LParen, .. })) {
                    return Err(self.err("'('"));
                }
                self.bump();
                let arg = self.expr()?;
                if !matches!(self.peek(), Some(Spanned { tok: Tok::RParen, .. })) {
                    return Err(self.err("')'"));
                }
                self.bump();
                Ok(Expr::Call { func, arg: Box::new(arg) })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if !matches!(self.peek(), Some(Spanned { tok: Tok::RParen, .. })) {
                    return Err(self.err("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.err("a value")),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, next: 0, source_len: text.len() };
    let expr = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("end of input"));
    }
    Ok(expr)
}

// ---------------------------------------------------------------------------
// Pretty-printer

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary { op: BinOp::Add | BinOp::Sub, .. } => 1,
            Expr::Binary { op: BinOp::Mul | BinOp::Div, .. } => 2,
            Expr::Neg(_) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Expr::Literal { coeff, basis } => {
                if *basis == 0 {
                    write!(f, "{coeff}")?;
                } else if *coeff == 1.0 {
                    write!(f, "{}", BASIS_NAMES[*basis])?;
                } else {
                    write!(f, "{coeff}{}", BASIS_NAMES[*basis])?;
                }
            }
            Expr::LastResult => write!(f, "_")?,
            Expr::Neg(inner) => {
                write!(f, "-")?;
                inner.fmt_prec(f, 3)?;
            }
            Expr::Binary { op, lhs, rhs, .. } => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                lhs.fmt_prec(f, prec)?;
                write!(f, " {sym} ")?;
                // Left associativity: the right child must bind strictly
                // tighter to avoid re-association on re-parse.
                rhs.fmt_prec(f, prec + 1)?;
            }
            Expr::Call { func, arg } => {
                write!(f, "{}(", func.name())?;
                arg.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

// ---------------------------------------------------------------------------
// Evaluator

/// Evaluation failure: a domain error from the algebra, tagged with the
/// source position when one is known.
#[derive(Debug)]
pub struct EvalError {
    pub position: Option<usize>,
    pub source: CoreError,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some(p) => write!(f, "{} (at position {p})", self.source),
            None => write!(f, "{}", self.source),
        }
    }
}

impl std::error::Error for EvalError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

fn plain(source: CoreError) -> EvalError {
    EvalError { position: None, source }
}

/// Evaluation context: the ambient algebra, series tolerances, and the
/// REPL's `_` binding.
pub struct EvalContext {
    pub algebra: Algebra,
    pub series: SeriesConfig,
    pub last_result: Option<HFloat>,
    /// When set (the "complex" algebra), values must stay in span(1, i).
    pub restrict_to_psi: bool,
}

impl EvalContext {
    pub fn new(algebra: Algebra) -> Self {
        let restrict_to_psi = algebra.name() == "complex";
        EvalContext { algebra, series: SeriesConfig::default(), last_result: None, restrict_to_psi }
    }

    fn check_psi(&self, v: HFloat) -> Result<HFloat, EvalError> {
        if self.restrict_to_psi && (v.c[2] != 0.0 || v.c[3] != 0.0) {
            return Err(plain(CoreError::InvalidConfig(
                "the complex algebra only admits span(1, i); use --algebra omega for j and k"
                    .into(),
            )));
        }
        Ok(v)
    }

    pub fn eval(&self, expr: &Expr) -> Result<HFloat, EvalError> {
        match expr {
            Expr::Literal { coeff, basis } => {
                let mut c = [0.0; 4];
                c[*basis] = *coeff;
                self.check_psi(HFloat::new(c))
            }
            Expr::LastResult => self.last_result.clone().ok_or_else(|| {
                plain(CoreError::InvalidConfig("no previous result bound to '_'".into()))
            }),
            Expr::Neg(inner) => Ok(-self.eval(inner)?),
            Expr::Binary { op, lhs, rhs, position } => {
                let a = self.eval(lhs)?;
                let b = self.eval(rhs)?;
                match op {
                    BinOp::Add => Ok(a + b),
                    BinOp::Sub => Ok(a - b),
                    BinOp::Mul => Ok(self.algebra.mul(&a, &b)),
                    BinOp::Div => {
                        let inv = self.algebra.invert(&b).map_err(|source| EvalError {
                            position: Some(*position),
                            source,
                        })?;
                        Ok(self.algebra.mul(&a, &inv))
                    }
                }
            }
            Expr::Call { func, arg } => {
                let v = self.eval(arg)?;
                match func {
                    Func::Exp => analytic::exp(&self.algebra, &v, &self.series).map_err(plain),
                    Func::Sin => analytic::sin(&self.algebra, &v, &self.series).map_err(plain),
                    Func::Cos => analytic::cos(&self.algebra, &v, &self.series).map_err(plain),
                    Func::Conj => Ok(v.conjugate(Conjugation::Full)),
                }
            }
        }
    }
}

/// Renders a value the way a person would write it: unit coefficients
/// are dropped ("-k", not "-1k") and terms are joined with signs.
pub fn format_hnum(v: &HFloat) -> String {
    let mut out = String::new();
    for n in 0..4 {
        let c = v.c[n];
        if c == 0.0 {
            continue;
        }
        if out.is_empty() {
            if c < 0.0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0.0 { " - " } else { " + " });
        }
        let mag = c.abs();
        if n == 0 || mag != 1.0 {
            out.push_str(&format!("{mag}"));
        }
        if n > 0 {
            out.push_str(BASIS_NAMES[n]);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

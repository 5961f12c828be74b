//! Single-variable real expressions: parsing, evaluation and symbolic
//! differentiation.
//!
//! The grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := ("-")? power ;
//! power  := atom ("^" integer)? ;
//! atom   := number | "x" | "pi" | func "(" expr ")" | "(" expr ")" ;
//! func   := "sin"|"cos"|"exp"|"ln"|"sqrt"|"abs" ;
//! ```
//!
//! The free variable may be written `x` or `y` (test functions on the value
//! space are conventionally written in `y`); both lex to the same variable
//! node, which renders as `x`. A division of two numeric literals such as
//! `2/3` is constant-folded exactly, and a minus sign directly in front of a
//! numeric literal folds into the constant, so parsed trees are in a normal
//! form that the renderer reproduces.

use std::fmt;
use thiserror::Error;

/// Expression tree over one real variable.
///
/// Power nodes carry a constant integer exponent, which keeps the node set
/// closed under differentiation.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Pi,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Sqrt(Box<Expr>),
    Abs(Box<Expr>),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: found {found}, expected {}", expected.join(" | "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("exponent at offset {offset} is not an integer")]
    NonIntegerExponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::NonIntegerExponent { offset } => *offset,
        }
    }
}

/// Domain failures during evaluation. Each variant names the offending
/// subtree so diagnostics can point at the exact subexpression.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("division by zero in `{subtree}` at x = {x}")]
    DivisionByZero { subtree: String, x: f64 },
    #[error("ln of non-positive value {arg} in `{subtree}` at x = {x}")]
    LnNonPositive { subtree: String, arg: f64, x: f64 },
    #[error("sqrt of negative value {arg} in `{subtree}` at x = {x}")]
    SqrtNegative { subtree: String, arg: f64, x: f64 },
    #[error("non-finite result in `{subtree}` at x = {x}")]
    NonFinite { subtree: String, x: f64 },
}

impl Expr {
    /// Parses `source` against the module grammar.
    pub fn parse(source: &str) -> Result<Expr, ParseError> {
        let mut p = Parser::new(source);
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }

    /// Evaluates the expression at `x` in double precision.
    pub fn evaluate(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Pi => std::f64::consts::PI,
            Expr::Neg(a) => -a.evaluate(x)?,
            Expr::Add(a, b) => a.evaluate(x)? + b.evaluate(x)?,
            Expr::Sub(a, b) => a.evaluate(x)? - b.evaluate(x)?,
            Expr::Mul(a, b) => a.evaluate(x)? * b.evaluate(x)?,
            Expr::Div(a, b) => {
                let den = b.evaluate(x)?;
                if den == 0.0 {
                    return Err(EvalError::DivisionByZero {
                        subtree: self.to_string(),
                        x,
                    });
                }
                a.evaluate(x)? / den
            }
            Expr::Pow(a, n) => a.evaluate(x)?.powi(*n),
            Expr::Sin(a) => a.evaluate(x)?.sin(),
            Expr::Cos(a) => a.evaluate(x)?.cos(),
            Expr::Exp(a) => a.evaluate(x)?.exp(),
            Expr::Ln(a) => {
                let arg = a.evaluate(x)?;
                if arg <= 0.0 {
                    return Err(EvalError::LnNonPositive {
                        subtree: self.to_string(),
                        arg,
                        x,
                    });
                }
                arg.ln()
            }
            Expr::Sqrt(a) => {
                let arg = a.evaluate(x)?;
                if arg < 0.0 {
                    return Err(EvalError::SqrtNegative {
                        subtree: self.to_string(),
                        arg,
                        x,
                    });
                }
                arg.sqrt()
            }
            Expr::Abs(a) => a.evaluate(x)?.abs(),
        };
        if !v.is_finite() {
            return Err(EvalError::NonFinite {
                subtree: self.to_string(),
                x,
            });
        }
        Ok(v)
    }

    /// Symbolic derivative with respect to the variable.
    ///
    /// The node set is closed under differentiation; `abs` differentiates to
    /// `u/abs(u) * u'`, whose evaluation at a zero of `u` raises the
    /// division-by-zero domain error.
    pub fn differentiate(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Pi => Expr::Const(0.0),
            Expr::Var => Expr::Const(1.0),
            Expr::Neg(a) => neg(a.differentiate()),
            Expr::Add(a, b) => add(a.differentiate(), b.differentiate()),
            Expr::Sub(a, b) => sub(a.differentiate(), b.differentiate()),
            Expr::Mul(a, b) => add(
                mul(a.differentiate(), (**b).clone()),
                mul((**a).clone(), b.differentiate()),
            ),
            Expr::Div(a, b) => {
                // (a/b)' = (a'b - ab') / b^2
                let num = sub(
                    mul(a.differentiate(), (**b).clone()),
                    mul((**a).clone(), b.differentiate()),
                );
                div(num, pow((**b).clone(), 2))
            }
            Expr::Pow(a, n) => mul(
                mul(Expr::Const(f64::from(*n)), pow((**a).clone(), n - 1)),
                a.differentiate(),
            ),
            Expr::Sin(a) => mul(Expr::Cos(a.clone()), a.differentiate()),
            Expr::Cos(a) => mul(neg(Expr::Sin(a.clone())), a.differentiate()),
            Expr::Exp(a) => mul(Expr::Exp(a.clone()), a.differentiate()),
            Expr::Ln(a) => div(a.differentiate(), (**a).clone()),
            Expr::Sqrt(a) => div(
                a.differentiate(),
                mul(Expr::Const(2.0), Expr::Sqrt(a.clone())),
            ),
            Expr::Abs(a) => mul(
                div((**a).clone(), Expr::Abs(a.clone())),
                a.differentiate(),
            ),
        }
    }

    /// Replaces the variable by `inner`, i.e. builds `self ∘ inner`.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Pi => Expr::Pi,
            Expr::Var => inner.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(inner))),
            Expr::Add(a, b) => Expr::Add(
                Box::new(a.substitute(inner)),
                Box::new(b.substitute(inner)),
            ),
            Expr::Sub(a, b) => Expr::Sub(
                Box::new(a.substitute(inner)),
                Box::new(b.substitute(inner)),
            ),
            Expr::Mul(a, b) => Expr::Mul(
                Box::new(a.substitute(inner)),
                Box::new(b.substitute(inner)),
            ),
            Expr::Div(a, b) => Expr::Div(
                Box::new(a.substitute(inner)),
                Box::new(b.substitute(inner)),
            ),
            Expr::Pow(a, n) => Expr::Pow(Box::new(a.substitute(inner)), *n),
            Expr::Sin(a) => Expr::Sin(Box::new(a.substitute(inner))),
            Expr::Cos(a) => Expr::Cos(Box::new(a.substitute(inner))),
            Expr::Exp(a) => Expr::Exp(Box::new(a.substitute(inner))),
            Expr::Ln(a) => Expr::Ln(Box::new(a.substitute(inner))),
            Expr::Sqrt(a) => Expr::Sqrt(Box::new(a.substitute(inner))),
            Expr::Abs(a) => Expr::Abs(Box::new(a.substitute(inner))),
        }
    }
}

// Smart constructors used by differentiation and by the affine composition
// helpers. They drop additive zeros and multiplicative ones so derivative
// trees stay readable; sub-expressions are never discarded except against an
// exact constant 0 or 1 coefficient.

pub(crate) fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        other => Expr::Neg(Box::new(other)),
    }
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
        (Expr::Const(0.0), b) => b,
        (a, Expr::Const(0.0)) => a,
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
        (a, Expr::Const(0.0)) => a,
        (Expr::Const(0.0), b) => neg(b),
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
        (Expr::Const(0.0), _) | (_, Expr::Const(0.0)) => Expr::Const(0.0),
        (Expr::Const(1.0), b) => b,
        (a, Expr::Const(1.0)) => a,
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, Expr::Const(1.0)) => a,
        (Expr::Const(0.0), b) if !matches!(b, Expr::Const(0.0)) => Expr::Const(0.0),
        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn pow(a: Expr, n: i32) -> Expr {
    match n {
        0 => Expr::Const(1.0),
        1 => a,
        _ => Expr::Pow(Box::new(a), n),
    }
}

// ---------------------------------------------------------------------------
// Rendering. Levels mirror the grammar so that `parse(render(e)) == e`
// structurally for trees in parser normal form.
// ---------------------------------------------------------------------------

#[derive(PartialEq, PartialOrd, Clone, Copy)]
enum Level {
    Sum = 0,
    Term = 1,
    Factor = 2,
    Power = 3,
    Atom = 4,
}

fn level(e: &Expr) -> Level {
    match e {
        Expr::Add(..) | Expr::Sub(..) => Level::Sum,
        Expr::Mul(..) | Expr::Div(..) => Level::Term,
        Expr::Neg(..) => Level::Factor,
        Expr::Const(c) if *c < 0.0 => Level::Factor,
        Expr::Pow(..) => Level::Power,
        _ => Level::Atom,
    }
}

fn fmt_at(e: &Expr, req: Level, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if (level(e) as u8) < (req as u8) {
        write!(f, "(")?;
        fmt_node(e, f)?;
        write!(f, ")")
    } else {
        fmt_node(e, f)
    }
}

fn fmt_node(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Const(c) => write!(f, "{c}"),
        Expr::Var => write!(f, "x"),
        Expr::Pi => write!(f, "pi"),
        Expr::Neg(a) => {
            write!(f, "-")?;
            fmt_at(a, Level::Power, f)
        }
        Expr::Add(a, b) => {
            fmt_at(a, Level::Sum, f)?;
            write!(f, "+")?;
            fmt_at(b, Level::Term, f)
        }
        Expr::Sub(a, b) => {
            fmt_at(a, Level::Sum, f)?;
            write!(f, "-")?;
            fmt_at(b, Level::Term, f)
        }
        Expr::Mul(a, b) => {
            fmt_at(a, Level::Term, f)?;
            write!(f, "*")?;
            fmt_at(b, Level::Factor, f)
        }
        Expr::Div(a, b) => {
            fmt_at(a, Level::Term, f)?;
            write!(f, "/")?;
            fmt_at(b, Level::Factor, f)
        }
        Expr::Pow(a, n) => {
            fmt_at(a, Level::Atom, f)?;
            write!(f, "^{n}")
        }
        Expr::Sin(a) => write!(f, "sin({a})"),
        Expr::Cos(a) => write!(f, "cos({a})"),
        Expr::Exp(a) => write!(f, "exp({a})"),
        Expr::Ln(a) => write!(f, "ln({a})"),
        Expr::Sqrt(a) => write!(f, "sqrt({a})"),
        Expr::Abs(a) => write!(f, "abs({a})"),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_node(self, f)
    }
}

// ---------------------------------------------------------------------------
// Lexer + recursive descent parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(f64),
    Var,
    Pi,
    Func(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(v) => format!("number `{v}`"),
            Tok::Var => "`x`".into(),
            Tok::Pi => "`pi`".into(),
            Tok::Func(_) => "function".into(),
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

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    tok: Tok,
    tok_offset: usize,
    // lex error from priming the first token, surfaced on first access
    pending: Option<ParseError>,
}

const ATOM_EXPECTED: &[&str] = &["number", "`x`", "`pi`", "function", "`(`", "`-`"];

impl<'a> Parser<'a> {
    fn new(source: &'a str) -> Self {
        let mut p = Parser {
            src: source.as_bytes(),
            pos: 0,
            tok: Tok::End,
            tok_offset: 0,
            pending: None,
        };
        // Errors from the first token surface on the first real access.
        if let Err(e) = p.bump() {
            p.tok = Tok::End;
            p.pending = Some(e);
        }
        p
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_offset = self.pos;
        if self.pos >= self.src.len() {
            self.tok = Tok::End;
            return Ok(());
        }
        let c = self.src[self.pos];
        self.tok = match c {
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
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                // optional exponent part
                if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
                    let mut j = self.pos + 1;
                    if j < self.src.len() && matches!(self.src[j], b'+' | b'-') {
                        j += 1;
                    }
                    if j < self.src.len() && self.src[j].is_ascii_digit() {
                        self.pos = j;
                        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                            self.pos += 1;
                        }
                    }
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    found: format!("`{text}`"),
                    expected: vec!["number"],
                })?;
                Tok::Number(v)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match name {
                    // `y` is accepted as a synonym for the single variable:
                    // test functions on the value space read naturally in y.
                    "x" | "y" => Tok::Var,
                    "pi" => Tok::Pi,
                    "sin" => Tok::Func(Func::Sin),
                    "cos" => Tok::Func(Func::Cos),
                    "exp" => Tok::Func(Func::Exp),
                    "ln" => Tok::Func(Func::Ln),
                    "sqrt" => Tok::Func(Func::Sqrt),
                    "abs" => Tok::Func(Func::Abs),
                    _ => {
                        return Err(ParseError::UnknownIdentifier {
                            offset: start,
                            name: name.to_string(),
                        })
                    }
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    offset: self.pos,
                    found: format!("`{}`", other as char),
                    expected: vec!["token"],
                })
            }
        };
        Ok(())
    }

    fn syntax_error(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax {
            offset: self.tok_offset,
            found: self.tok.describe(),
            expected: expected.to_vec(),
        }
    }

    fn take_pending(&mut self) -> Result<(), ParseError> {
        match self.pending.take() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.take_pending()?;
        let mut lhs = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.bump()?;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.bump()?;
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Tok::Slash => {
                    self.bump()?;
                    let rhs = self.factor()?;
                    // Exact constant folding of fractions like 2/3.
                    lhs = match (lhs, rhs) {
                        (Expr::Const(a), Expr::Const(b)) if b != 0.0 => Expr::Const(a / b),
                        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.tok == Tok::Minus {
            self.bump()?;
            let p = self.power()?;
            // A minus directly on a numeric literal folds into the constant;
            // `-3^2` keeps the Neg node because the power binds tighter.
            return Ok(match p {
                Expr::Const(v) => Expr::Const(-v),
                other => Expr::Neg(Box::new(other)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.tok == Tok::Caret {
            self.bump()?;
            let negative = if self.tok == Tok::Minus {
                self.bump()?;
                true
            } else {
                false
            };
            let offset = self.tok_offset;
            let Tok::Number(v) = self.tok else {
                return Err(self.syntax_error(&["integer exponent"]));
            };
            if v.fract() != 0.0 || v.abs() > i32::MAX as f64 {
                return Err(ParseError::NonIntegerExponent { offset });
            }
            self.bump()?;
            let n = v as i32;
            return Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.tok.clone() {
            Tok::Number(v) => {
                self.bump()?;
                Ok(Expr::Const(v))
            }
            Tok::Var => {
                self.bump()?;
                Ok(Expr::Var)
            }
            Tok::Pi => {
                self.bump()?;
                Ok(Expr::Pi)
            }
            Tok::Func(func) => {
                self.bump()?;
                if self.tok != Tok::LParen {
                    return Err(self.syntax_error(&["`(`"]));
                }
                self.bump()?;
                let arg = Box::new(self.expr()?);
                if self.tok != Tok::RParen {
                    return Err(self.syntax_error(&["`)`"]));
                }
                self.bump()?;
                Ok(match func {
                    Func::Sin => Expr::Sin(arg),
                    Func::Cos => Expr::Cos(arg),
                    Func::Exp => Expr::Exp(arg),
                    Func::Ln => Expr::Ln(arg),
                    Func::Sqrt => Expr::Sqrt(arg),
                    Func::Abs => Expr::Abs(arg),
                })
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.syntax_error(&["`)`"]));
                }
                self.bump()?;
                Ok(inner)
            }
            _ => Err(self.syntax_error(ATOM_EXPECTED)),
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.tok != Tok::End {
            return Err(self.syntax_error(&["end of input", "operator"]));
        }
        Ok(())
    }
}

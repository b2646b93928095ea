//! Scalar expressions over the coordinates and parameters of a chart.
//!
//! [`Expr`] is an immutable tree. Arithmetic on it goes through the exact
//! canonical form in [`canon`]: sums of monomials with arbitrary-precision
//! rational coefficients over a product of primitive polynomial factors, with
//! transcendental subterms (`exp`, `log`, `sin`, `cos`, `sqrt`) treated as
//! opaque atoms.

mod canon;
mod eval;
mod parse;
mod zero;

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use canon::Canon;
pub use eval::EvalPoint;
pub use parse::{parse, SymbolTable};
pub use zero::{DomainBox, ZeroTest, SAMPLE_COUNT};

/// Interned symbol name. Ordering is by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Exp, Func::Log, Func::Sin, Func::Cos, Func::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Num(BigRational),
    Coord(Symbol),
    Param(Symbol),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Func(Func, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("division by an identically zero expression")]
    DivisionByZero,
    #[error("zero test could not find {needed} pole-free sample points after {attempts} attempts")]
    SamplingExhausted { needed: usize, attempts: usize },
}

pub type Result<T> = core::result::Result<T, ExprError>;

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Num(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(num: i64, den: i64) -> Expr {
        Expr::Num(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn coord(name: &str) -> Expr {
        Expr::Coord(Symbol::new(name))
    }

    pub fn param(name: &str) -> Expr {
        Expr::Param(Symbol::new(name))
    }

    pub fn func(f: Func, arg: Expr) -> Expr {
        Expr::Func(f, Box::new(arg))
    }

    pub fn exp(arg: Expr) -> Expr {
        Expr::func(Func::Exp, arg)
    }

    pub fn log(arg: Expr) -> Expr {
        Expr::func(Func::Log, arg)
    }

    pub fn sin(arg: Expr) -> Expr {
        Expr::func(Func::Sin, arg)
    }

    pub fn cos(arg: Expr) -> Expr {
        Expr::func(Func::Cos, arg)
    }

    pub fn sqrt(arg: Expr) -> Expr {
        Expr::func(Func::Sqrt, arg)
    }

    pub fn pow(self, n: i32) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    pub fn is_num(&self) -> bool {
        matches!(self, Expr::Num(_))
    }

    pub fn as_num(&self) -> Option<&BigRational> {
        match self {
            Expr::Num(r) => Some(r),
            _ => None,
        }
    }

    /// Structural test against the canonical zero. Use [`ZeroTest`] for
    /// identical vanishing.
    pub fn is_literal_zero(&self) -> bool {
        matches!(self, Expr::Num(r) if r.is_zero())
    }

    /// Canonical form: expanded numerator over factored denominator,
    /// constants folded, `x^0 -> 1`, `x^1 -> x`.
    pub fn simplify(&self) -> Result<Expr> {
        Ok(Canon::from_expr(self)?.to_expr())
    }

    /// Partial derivative with respect to a coordinate, returned simplified.
    pub fn differentiate(&self, coord: &Symbol) -> Result<Expr> {
        Ok(Canon::from_expr(self)?.diff(coord).to_expr())
    }

    /// Replace every occurrence of `sym` (coordinate or parameter) by `with`.
    pub fn substitute(&self, sym: &Symbol, with: &Expr) -> Expr {
        match self {
            Expr::Coord(s) | Expr::Param(s) if s == sym => with.clone(),
            Expr::Num(_) | Expr::Coord(_) | Expr::Param(_) => self.clone(),
            Expr::Add(ts) => Expr::Add(ts.iter().map(|t| t.substitute(sym, with)).collect()),
            Expr::Mul(ts) => Expr::Mul(ts.iter().map(|t| t.substitute(sym, with)).collect()),
            Expr::Div(a, b) => Expr::Div(
                Box::new(a.substitute(sym, with)),
                Box::new(b.substitute(sym, with)),
            ),
            Expr::Pow(b, n) => Expr::Pow(Box::new(b.substitute(sym, with)), *n),
            Expr::Func(f, a) => Expr::Func(*f, Box::new(a.substitute(sym, with))),
        }
    }

    /// Coordinates and parameters appearing in the tree, sorted and deduplicated.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_symbols(&self, out: &mut Vec<Symbol>) {
        match self {
            Expr::Num(_) => {}
            Expr::Coord(s) | Expr::Param(s) => out.push(s.clone()),
            Expr::Add(ts) | Expr::Mul(ts) => ts.iter().for_each(|t| t.collect_symbols(out)),
            Expr::Div(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Expr::Pow(b, _) | Expr::Func(_, b) => b.collect_symbols(out),
        }
    }

    pub fn depends_on(&self, sym: &Symbol) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Coord(s) | Expr::Param(s) => s == sym,
            Expr::Add(ts) | Expr::Mul(ts) => ts.iter().any(|t| t.depends_on(sym)),
            Expr::Div(a, b) => a.depends_on(sym) || b.depends_on(sym),
            Expr::Pow(b, _) | Expr::Func(_, b) => b.depends_on(sym),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Coord(_) | Expr::Param(_) => 1,
            Expr::Add(ts) | Expr::Mul(ts) => 1 + ts.iter().map(Expr::size).sum::<usize>(),
            Expr::Div(a, b) => 1 + a.size() + b.size(),
            Expr::Pow(b, _) | Expr::Func(_, b) => 1 + b.size(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(ts) if ts.len() > 1 => 1,
            Expr::Num(r) if r.is_negative() || !r.is_integer() => 1,
            Expr::Mul(ts) if ts.len() > 1 => 2,
            Expr::Div(..) => 2,
            Expr::Pow(_, n) if *n < 0 => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }

    fn fmt_wrapped(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({})", self)
        } else {
            write!(f, "{}", self)
        }
    }

    /// Split a product term into a sign and its magnitude for `a - b` printing.
    fn negated_term(&self) -> Option<Expr> {
        match self {
            Expr::Num(r) if r.is_negative() => Some(Expr::Num(-r.clone())),
            Expr::Mul(ts) => match ts.first() {
                Some(Expr::Num(r)) if r.is_negative() => {
                    let c = -r.clone();
                    let mut rest: Vec<Expr> = ts[1..].to_vec();
                    if !c.is_one() {
                        rest.insert(0, Expr::Num(c));
                    }
                    Some(if rest.len() == 1 { rest.pop().unwrap() } else { Expr::Mul(rest) })
                }
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Expr::Coord(s) | Expr::Param(s) => write!(f, "{}", s),
            Expr::Add(ts) => {
                if ts.is_empty() {
                    return f.write_str("0");
                }
                for (i, t) in ts.iter().enumerate() {
                    if i == 0 {
                        t.fmt_wrapped(f, 1)?;
                    } else if let Some(neg) = t.negated_term() {
                        f.write_str(" - ")?;
                        neg.fmt_wrapped(f, 2)?;
                    } else {
                        f.write_str(" + ")?;
                        t.fmt_wrapped(f, 2)?;
                    }
                }
                Ok(())
            }
            Expr::Mul(ts) => {
                if ts.is_empty() {
                    return f.write_str("1");
                }
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    // Leading integer constants need no parentheses; "-2*x" parses back.
                    match t {
                        Expr::Num(r) if i == 0 && r.is_integer() => write!(f, "{}", r.numer())?,
                        _ => t.fmt_wrapped(f, 3)?,
                    }
                }
                Ok(())
            }
            Expr::Div(a, b) => {
                a.fmt_wrapped(f, 2)?;
                f.write_str("/")?;
                b.fmt_wrapped(f, 3)
            }
            Expr::Pow(b, n) => {
                if *n < 0 {
                    f.write_str("1/")?;
                    f.write_str("(")?;
                    b.fmt_wrapped(f, 4)?;
                    write!(f, "^{})", -(*n as i64))
                } else {
                    b.fmt_wrapped(f, 4)?;
                    write!(f, "^{}", n)
                }
            }
            Expr::Func(func, a) => write!(f, "{}({})", func.name(), a),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl core::ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl core::ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs.clone())
            }
        }
    };
}

// Tree-building operators: no simplification, callers canonicalize when needed.
binop!(Add, add, |a, b| Expr::Add(vec![a, b]));
binop!(Sub, sub, |a, b| Expr::Add(vec![a, Expr::Mul(vec![Expr::int(-1), b])]));
binop!(Mul, mul, |a, b| Expr::Mul(vec![a, b]));
binop!(Div, div, |a, b| Expr::Div(Box::new(a), Box::new(b)));

impl core::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Mul(vec![Expr::int(-1), self])
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

/// Render a rational as `p` or `p/q`.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer as an exact rational.
pub fn rational_from_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

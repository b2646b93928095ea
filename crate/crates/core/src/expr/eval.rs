use alloc::format;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::canon::{Atom, Canon};
use super::{Expr, ExprError, Func, Result, Symbol};

/// Assignment of real values to coordinates and parameters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvalPoint {
    values: Vec<(Symbol, f64)>,
}

impl EvalPoint {
    pub fn new() -> Self {
        EvalPoint::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        let mut p = EvalPoint::new();
        for (k, v) in pairs {
            p.set(Symbol::new(k), v);
        }
        p
    }

    pub fn set(&mut self, sym: Symbol, value: f64) {
        match self.values.iter_mut().find(|(s, _)| *s == sym) {
            Some(slot) => slot.1 = value,
            None => self.values.push((sym, value)),
        }
    }

    pub fn with(mut self, sym: &Symbol, value: f64) -> Self {
        self.set(sym.clone(), value);
        self
    }

    pub fn get(&self, sym: &Symbol) -> Option<f64> {
        self.values.iter().find(|(s, _)| s == sym).map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, f64)> {
        self.values.iter().map(|(s, v)| (s, *v))
    }
}

fn lookup(p: &EvalPoint, s: &Symbol) -> Result<f64> {
    p.get(s).ok_or_else(|| ExprError::Eval(format!("symbol '{}' is not assigned", s)))
}

fn apply(f: Func, x: f64) -> Result<f64> {
    let y = match f {
        Func::Exp => libm::exp(x),
        Func::Log => {
            if x <= 0.0 {
                return Err(ExprError::Eval(format!("log of non-positive value {}", x)));
            }
            libm::log(x)
        }
        Func::Sin => libm::sin(x),
        Func::Cos => libm::cos(x),
        Func::Sqrt => {
            if x < 0.0 {
                return Err(ExprError::Eval(format!("sqrt of negative value {}", x)));
            }
            libm::sqrt(x)
        }
    };
    finite(y)
}

fn finite(y: f64) -> Result<f64> {
    if y.is_finite() {
        Ok(y)
    } else {
        Err(ExprError::Eval(format!("non-finite intermediate value {}", y)))
    }
}

fn powi(base: f64, n: i32) -> Result<f64> {
    if n < 0 && base == 0.0 {
        return Err(ExprError::Eval("division by zero (negative power of 0)".into()));
    }
    let mut acc = 1.0;
    let mut b = base;
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= b;
        }
        b *= b;
        k >>= 1;
    }
    finite(if n < 0 { 1.0 / acc } else { acc })
}

impl Expr {
    /// IEEE double evaluation.
    pub fn eval(&self, p: &EvalPoint) -> Result<f64> {
        self.eval_tracking(p, &mut 0.0)
    }

    /// Evaluate and record the largest absolute subterm value seen.
    pub fn eval_tracking(&self, p: &EvalPoint, scale: &mut f64) -> Result<f64> {
        let v = match self {
            Expr::Num(r) => r.to_f64().ok_or_else(|| ExprError::Eval("constant out of range".into()))?,
            Expr::Coord(s) | Expr::Param(s) => lookup(p, s)?,
            Expr::Add(ts) => {
                let mut acc = 0.0;
                for t in ts {
                    acc += t.eval_tracking(p, scale)?;
                }
                acc
            }
            Expr::Mul(ts) => {
                let mut acc = 1.0;
                for t in ts {
                    acc *= t.eval_tracking(p, scale)?;
                }
                acc
            }
            Expr::Div(a, b) => {
                let num = a.eval_tracking(p, scale)?;
                let den = b.eval_tracking(p, scale)?;
                if den == 0.0 {
                    return Err(ExprError::Eval("division by zero".into()));
                }
                num / den
            }
            Expr::Pow(b, n) => powi(b.eval_tracking(p, scale)?, *n)?,
            Expr::Func(f, a) => apply(*f, a.eval_tracking(p, scale)?)?,
        };
        let v = finite(v)?;
        if libm::fabs(v) > *scale {
            *scale = libm::fabs(v);
        }
        Ok(v)
    }
}

impl Atom {
    pub(crate) fn eval(&self, p: &EvalPoint) -> Result<f64> {
        match self {
            Atom::Coord(s) | Atom::Param(s) => lookup(p, s),
            Atom::Func(f, a) => apply(*f, a.eval(p)?),
        }
    }
}

/// Values of each term of a polynomial at a point.
pub(crate) fn poly_term_values<'a>(
    terms: impl Iterator<Item = (&'a [(Atom, u32)], &'a num_rational::BigRational)>,
    p: &EvalPoint,
) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (m, c) in terms {
        let mut v = c.to_f64().ok_or_else(|| ExprError::Eval("coefficient out of range".into()))?;
        for (a, e) in m {
            v *= powi(a.eval(p)?, *e as i32)?;
        }
        out.push(finite(v)?);
    }
    Ok(out)
}

impl Canon {
    /// Evaluate numerator and denominator separately.
    pub(crate) fn eval_parts(&self, p: &EvalPoint) -> Result<(Vec<f64>, f64)> {
        let num = poly_term_values(self.numerator_terms(), p)?;
        let mut den = 1.0;
        for (f, e) in self.denominator_factors() {
            let v: f64 = poly_term_values(Canon::poly_terms(f), p)?.iter().sum();
            den *= powi(v, e as i32)?;
        }
        Ok((num, den))
    }

    pub fn eval(&self, p: &EvalPoint) -> Result<f64> {
        let (num, den) = self.eval_parts(p)?;
        if den == 0.0 {
            return Err(ExprError::Eval("division by zero".into()));
        }
        finite(num.iter().sum::<f64>() / den)
    }
}

//! Exact canonical form of an expression.
//!
//! A [`Canon`] is `num / (f_1^e_1 * ... * f_k^e_k)` where `num` is an expanded
//! polynomial and every `f_i` is a primitive polynomial with positive leading
//! coefficient (single atoms included). The "variables" of the polynomials are
//! atoms: coordinates, parameters, and transcendental nodes whose argument is
//! itself canonical. Coefficients are exact rationals.
//!
//! After every operation each denominator factor is trial-divided into the
//! numerator, so common factors that appear verbatim cancel. That is enough for
//! the zero test: the numerator is the zero polynomial iff the rational
//! function in the atoms is zero.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Expr, ExprError, Func, Result, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Atom {
    Coord(Symbol),
    Param(Symbol),
    Func(Func, Arc<Expr>),
}

impl Atom {
    fn to_expr(&self) -> Expr {
        match self {
            Atom::Coord(s) => Expr::Coord(s.clone()),
            Atom::Param(s) => Expr::Param(s.clone()),
            Atom::Func(f, a) => Expr::Func(*f, Box::new((**a).clone())),
        }
    }

    fn depends_on(&self, sym: &Symbol) -> bool {
        match self {
            Atom::Coord(s) | Atom::Param(s) => s == sym,
            Atom::Func(_, a) => a.depends_on(sym),
        }
    }

    fn derivative(&self, c: &Symbol) -> Canon {
        match self {
            Atom::Coord(s) if s == c => Canon::one(),
            Atom::Coord(_) | Atom::Param(_) => Canon::zero(),
            Atom::Func(f, arg) => {
                if !arg.depends_on(c) {
                    return Canon::zero();
                }
                let inner = Canon::from_expr(arg).expect("atom arguments are canonical");
                let d_inner = inner.diff(c);
                if d_inner.is_zero() {
                    return Canon::zero();
                }
                let outer = match f {
                    Func::Exp => Canon::atom(self.clone()),
                    Func::Log => inner.inv().expect("log argument is nonzero"),
                    Func::Sin => Canon::func(Func::Cos, inner),
                    Func::Cos => Canon::func(Func::Sin, inner).neg(),
                    Func::Sqrt => {
                        let two = Canon::constant(BigRational::from_integer(BigInt::from(2)));
                        two.mul(&Canon::atom(self.clone()))
                            .inv()
                            .expect("sqrt atom is nonzero")
                    }
                };
                outer.mul(&d_inner)
            }
        }
    }
}

type Mono = Vec<(Atom, u32)>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for (atom, e) in a {
        if j < b.len() && &b[j].0 == atom {
            match e.cmp(&b[j].1) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((atom.clone(), e - b[j].1)),
            }
            j += 1;
        } else if j < b.len() && b[j].0 < *atom {
            return None;
        } else {
            out.push((atom.clone(), *e));
        }
    }
    if j < b.len() {
        return None;
    }
    Some(out)
}

/// Pure lexicographic monomial order (smaller atoms are more significant).
fn lex_cmp(a: &Mono, b: &Mono) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((x, ex)), Some((y, ey))) => match x.cmp(y) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ex.cmp(ey) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    other => return other,
                },
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Poly {
    terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    fn constant(c: BigRational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    fn atom(a: Atom) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(alloc::vec![(a, 1)], BigRational::one());
        Poly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::default();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::default();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    fn mul_mono(&self, m: &Mono, k: &BigRational) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(mm, c)| (mono_mul(mm, m), c * k)).collect(),
        }
    }

    fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(BigRational::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().max_by(|a, b| lex_cmp(a.0, b.0))
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::default();
        // Guard against pathological blow-up; a failed division is reported as
        // "not divisible", which only costs a missed cancellation.
        let mut budget = 4 * (self.terms.len() + 8) * (divisor.terms.len() + 1);
        while !rem.is_zero() {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let (rm, rc) = rem.leading().map(|(m, c)| (m.clone(), c.clone()))?;
            let qm = mono_div(&rm, &lm)?;
            let qc = rc / &lc;
            rem = rem.sub(&divisor.mul_mono(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    fn atoms(&self) -> Vec<&Atom> {
        let mut out: Vec<&Atom> = self.terms.keys().flat_map(|m| m.iter().map(|(a, _)| a)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Partial derivative with respect to an atom, as a polynomial.
    fn diff_atom(&self, atom: &Atom) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|(a, _)| a == atom) {
                let e = m[pos].1;
                let mut mm = m.clone();
                if e == 1 {
                    mm.remove(pos);
                } else {
                    mm[pos].1 = e - 1;
                }
                out.add_term(mm, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    fn diff(&self, c: &Symbol) -> Canon {
        let mut acc = Canon::zero();
        for atom in self.atoms() {
            let da = atom.derivative(c);
            if da.is_zero() {
                continue;
            }
            let dp = Canon::from_poly(self.diff_atom(atom));
            acc = acc.add(&dp.mul(&da));
        }
        acc
    }

    /// Write `self = coef * prod(factors)` with primitive, sign-normalized,
    /// non-constant factors; monomial content is split into single atoms.
    fn normalize(&self) -> (BigRational, Vec<(Poly, u32)>) {
        debug_assert!(!self.is_zero());
        let mut factors = Vec::new();
        // Monomial content.
        let mut content: Option<Mono> = None;
        for m in self.terms.keys() {
            content = Some(match content {
                None => m.clone(),
                Some(cur) => cur
                    .into_iter()
                    .filter_map(|(a, e)| {
                        m.iter().find(|(b, _)| *b == a).map(|(_, f)| (a, e.min(*f)))
                    })
                    .collect(),
            });
        }
        let content = content.unwrap_or_default();
        let mut p = if content.is_empty() {
            self.clone()
        } else {
            Poly {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| (mono_div(m, &content).expect("content divides"), c.clone()))
                    .collect(),
            }
        };
        for (a, e) in content {
            factors.push((Poly::atom(a), e));
        }
        if let Some(c) = p.as_constant() {
            return (c, factors);
        }
        // Rational content: gcd of numerators over lcm of denominators.
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in p.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut coef = BigRational::new(num_gcd, den_lcm);
        if p.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            coef = -coef;
        }
        let inv = coef.recip();
        p = p.scale(&inv);
        factors.push((p, 1));
        (coef, factors)
    }

    fn to_expr(&self) -> Expr {
        if self.terms.is_empty() {
            return Expr::zero();
        }
        let mut terms: Vec<Expr> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factors: Vec<Expr> = Vec::with_capacity(m.len() + 1);
                if !c.is_one() || m.is_empty() {
                    factors.push(Expr::Num(c.clone()));
                }
                for (a, e) in m {
                    let base = a.to_expr();
                    factors.push(if *e == 1 { base } else { Expr::Pow(Box::new(base), *e as i32) });
                }
                if factors.len() == 1 {
                    factors.pop().unwrap()
                } else {
                    Expr::Mul(factors)
                }
            })
            .collect();
        if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Add(terms)
        }
    }
}

/// Exact canonical form of an [`Expr`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Canon {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

impl Canon {
    pub fn zero() -> Canon {
        Canon { num: Poly::default(), den: BTreeMap::new() }
    }

    pub fn one() -> Canon {
        Canon::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Canon {
        Canon { num: Poly::constant(c), den: BTreeMap::new() }
    }

    pub fn int(n: i64) -> Canon {
        Canon::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(num: i64, den: i64) -> Canon {
        Canon::constant(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn coord(name: &Symbol) -> Canon {
        Canon::atom(Atom::Coord(name.clone()))
    }

    pub fn param(name: &Symbol) -> Canon {
        Canon::atom(Atom::Param(name.clone()))
    }

    fn atom(a: Atom) -> Canon {
        Canon { num: Poly::atom(a), den: BTreeMap::new() }
    }

    fn from_poly(p: Poly) -> Canon {
        Canon { num: p, den: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value when the form is a rational constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// True when some atom is a transcendental node, i.e. the exact zero test
    /// is not conclusive for a nonzero numerator.
    pub fn has_transcendental(&self) -> bool {
        let in_poly = |p: &Poly| p.terms.keys().any(|m| m.iter().any(|(a, _)| matches!(a, Atom::Func(..))));
        in_poly(&self.num) || self.den.keys().any(in_poly)
    }

    pub fn depends_on(&self, sym: &Symbol) -> bool {
        self.num.atoms().into_iter().any(|a| a.depends_on(sym))
            || self.den.keys().any(|p| p.atoms().into_iter().any(|a| a.depends_on(sym)))
    }

    pub fn from_expr(e: &Expr) -> Result<Canon> {
        Ok(match e {
            Expr::Num(r) => Canon::constant(r.clone()),
            Expr::Coord(s) => Canon::atom(Atom::Coord(s.clone())),
            Expr::Param(s) => Canon::atom(Atom::Param(s.clone())),
            Expr::Add(ts) => {
                let mut acc = Canon::zero();
                for t in ts {
                    acc = acc.add(&Canon::from_expr(t)?);
                }
                acc
            }
            Expr::Mul(ts) => {
                let mut acc = Canon::one();
                for t in ts {
                    let f = Canon::from_expr(t)?;
                    if f.is_zero() {
                        // Still canonicalize the rest so that poles surface.
                        acc = Canon::zero();
                        continue;
                    }
                    acc = acc.mul(&f);
                }
                acc
            }
            Expr::Div(a, b) => Canon::from_expr(a)?.mul(&Canon::factored_inverse(b)?),
            Expr::Pow(b, n) => {
                if *n >= 0 {
                    Canon::from_expr(b)?.pow(*n as u32)
                } else {
                    Canon::factored_inverse(b)?.pow(n.unsigned_abs())
                }
            }
            Expr::Func(f, a) => Canon::func(*f, Canon::from_expr(a)?),
        })
    }

    /// `1/e` computed factor by factor so that denominators written as
    /// products of powers stay factored.
    fn factored_inverse(e: &Expr) -> Result<Canon> {
        match e {
            Expr::Mul(ts) => {
                let mut acc = Canon::one();
                for t in ts {
                    acc = acc.mul(&Canon::factored_inverse(t)?);
                }
                Ok(acc)
            }
            Expr::Pow(b, n) if *n > 0 => Ok(Canon::factored_inverse(b)?.pow(*n as u32)),
            Expr::Pow(b, n) => Ok(Canon::from_expr(b)?.pow(n.unsigned_abs())),
            Expr::Div(a, b) => Ok(Canon::factored_inverse(a)?.mul(&Canon::from_expr(b)?)),
            _ => Canon::from_expr(e)?.inv(),
        }
    }

    pub fn to_expr(&self) -> Expr {
        let num = self.num.to_expr();
        if self.den.is_empty() {
            return num;
        }
        let mut factors: Vec<Expr> = self
            .den
            .iter()
            .map(|(p, e)| {
                let base = p.to_expr();
                if *e == 1 {
                    base
                } else {
                    Expr::Pow(Box::new(base), *e as i32)
                }
            })
            .collect();
        let den = if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Mul(factors) };
        Expr::Div(Box::new(num), Box::new(den))
    }

    fn expand_den(den: &BTreeMap<Poly, u32>) -> Poly {
        let mut acc = Poly::constant(BigRational::one());
        for (p, e) in den {
            acc = acc.mul(&p.pow(*e));
        }
        acc
    }

    fn cancel(mut self) -> Canon {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<Poly> = self.den.keys().cloned().collect();
        for f in keys {
            let mut e = self.den[&f];
            while e > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e == 0 {
                self.den.remove(&f);
            } else {
                self.den.insert(f, e);
            }
        }
        self
    }

    pub fn add(&self, other: &Canon) -> Canon {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Canon { num: self.num.add(&other.num), den: self.den.clone() }.cancel();
        }
        let mut lcm = self.den.clone();
        for (p, e) in &other.den {
            let slot = lcm.entry(p.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let cofactor = |den: &BTreeMap<Poly, u32>| {
            let missing: BTreeMap<Poly, u32> = lcm
                .iter()
                .filter_map(|(p, e)| {
                    let have = den.get(p).copied().unwrap_or(0);
                    (*e > have).then(|| (p.clone(), e - have))
                })
                .collect();
            Canon::expand_den(&missing)
        };
        let num = self.num.mul(&cofactor(&self.den)).add(&other.num.mul(&cofactor(&other.den)));
        Canon { num, den: lcm }.cancel()
    }

    pub fn neg(&self) -> Canon {
        Canon { num: self.num.scale(&-BigRational::one()), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Canon) -> Canon {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Canon {
        if k.is_zero() {
            return Canon::zero();
        }
        Canon { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Canon) -> Canon {
        if self.is_zero() || other.is_zero() {
            return Canon::zero();
        }
        if self.den.is_empty() && other.den.is_empty() {
            return Canon::from_poly(self.num.mul(&other.num));
        }
        let mut den = self.den.clone();
        for (p, e) in &other.den {
            *den.entry(p.clone()).or_insert(0) += e;
        }
        Canon { num: self.num.mul(&other.num), den }.cancel()
    }

    pub fn inv(&self) -> Result<Canon> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        let (coef, factors) = self.num.normalize();
        let num = Canon::expand_den(&self.den).scale(&coef.recip());
        let mut den = BTreeMap::new();
        for (p, e) in factors {
            *den.entry(p).or_insert(0) += e;
        }
        Ok(Canon { num, den }.cancel())
    }

    pub fn div(&self, other: &Canon) -> Result<Canon> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> Canon {
        if n == 0 {
            return Canon::one();
        }
        Canon {
            num: self.num.pow(n),
            den: self.den.iter().map(|(p, e)| (p.clone(), e * n)).collect(),
        }
    }

    pub fn powi(&self, n: i32) -> Result<Canon> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.inv()?.pow(n.unsigned_abs()))
        }
    }

    /// Apply an elementary function, with the exact rewrites
    /// `exp(k*log(a) + r) -> a^k * exp(r)` for integer `k`, `log(exp(a)) -> a`,
    /// and constant folding at `0` and `1`.
    pub fn func(f: Func, arg: Canon) -> Canon {
        if let Some(c) = arg.as_constant() {
            match f {
                Func::Exp if c.is_zero() => return Canon::one(),
                Func::Log if c.is_one() => return Canon::zero(),
                Func::Sin if c.is_zero() => return Canon::zero(),
                Func::Cos if c.is_zero() => return Canon::one(),
                Func::Sqrt if !c.is_negative() => {
                    let (n, d) = (c.numer(), c.denom());
                    let (rn, rd) = (n.sqrt(), d.sqrt());
                    if &(&rn * &rn) == n && &(&rd * &rd) == d {
                        return Canon::constant(BigRational::new(rn, rd));
                    }
                }
                _ => {}
            }
        }
        match f {
            Func::Exp if arg.den.is_empty() => {
                let mut rest = Poly::default();
                let mut pulled = Canon::one();
                for (m, c) in &arg.num.terms {
                    match (m.as_slice(), c.is_integer()) {
                        ([(Atom::Func(Func::Log, inner), 1)], true) => {
                            let base = Canon::from_expr(inner).expect("atom arguments are canonical");
                            let k = c.to_integer();
                            let k: i32 = match i32::try_from(k) {
                                Ok(k) => k,
                                Err(_) => {
                                    rest.add_term(m.clone(), c.clone());
                                    continue;
                                }
                            };
                            match base.powi(k) {
                                Ok(p) => pulled = pulled.mul(&p),
                                Err(_) => rest.add_term(m.clone(), c.clone()),
                            }
                        }
                        _ => rest.add_term(m.clone(), c.clone()),
                    }
                }
                if rest.is_zero() {
                    pulled
                } else {
                    let e = Canon::from_poly(rest).to_expr();
                    pulled.mul(&Canon::atom(Atom::Func(Func::Exp, Arc::new(e))))
                }
            }
            Func::Log if arg.den.is_empty() => {
                if let Some((m, c)) = arg.num.terms.iter().next() {
                    if arg.num.terms.len() == 1 && c.is_one() {
                        if let [(Atom::Func(Func::Exp, inner), 1)] = m.as_slice() {
                            return Canon::from_expr(inner).expect("atom arguments are canonical");
                        }
                    }
                }
                Canon::atom(Atom::Func(f, Arc::new(arg.to_expr())))
            }
            _ => Canon::atom(Atom::Func(f, Arc::new(arg.to_expr()))),
        }
    }

    /// Partial derivative with respect to a coordinate symbol.
    pub fn diff(&self, c: &Symbol) -> Canon {
        let d_num = self.num.diff(c);
        if self.den.is_empty() {
            return d_num;
        }
        let inv_den = Canon { num: Poly::constant(BigRational::one()), den: self.den.clone() };
        let mut log_deriv = Canon::zero();
        for (p, e) in &self.den {
            let dp = p.diff(c);
            if dp.is_zero() {
                continue;
            }
            let mut single = BTreeMap::new();
            single.insert(p.clone(), 1);
            let inv_p = Canon { num: Poly::constant(BigRational::one()), den: single };
            let k = BigRational::from_integer(BigInt::from(*e));
            log_deriv = log_deriv.add(&dp.mul(&inv_p).scale(&k));
        }
        d_num.mul(&inv_den).sub(&self.mul(&log_deriv))
    }

    pub(crate) fn numerator_terms(&self) -> impl Iterator<Item = (&[(Atom, u32)], &BigRational)> {
        self.num.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub(crate) fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(p, e)| (p, *e))
    }

    pub(crate) fn poly_terms(p: &Poly) -> impl Iterator<Item = (&[(Atom, u32)], &BigRational)> {
        p.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    /// Number of numerator terms (a size measure for diagnostics).
    pub fn numerator_len(&self) -> usize {
        self.num.terms.len()
    }
}

impl From<&BigRational> for Canon {
    fn from(c: &BigRational) -> Canon {
        Canon::constant(c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, SymbolTable};

    fn table() -> SymbolTable {
        SymbolTable::new(&["u", "v", "x", "y"], &["a"])
    }

    fn c(s: &str) -> Canon {
        Canon::from_expr(&parse(s, &table()).unwrap()).unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        assert_eq!(c("(x^2 - 1)/(x - 1)"), c("x + 1"));
        assert_eq!(c("x/(x+1) + 1/(x+1)"), Canon::one());
    }

    #[test]
    fn normalized_denominators_merge() {
        // -(x - y) and 2*(y - x) normalize to the same primitive factor.
        let lhs = c("1/(y - x) + 1/(2*x - 2*y)");
        assert_eq!(lhs, c("1/(2*y - 2*x)"));
    }

    #[test]
    fn exp_log_rewrite() {
        assert_eq!(c("exp(-2*log(x))"), c("1/x^2"));
        assert_eq!(c("log(exp(u*v))"), c("u*v"));
        assert_eq!(c("exp(0)"), Canon::one());
        assert_eq!(c("sqrt(9/4)"), c("3/2"));
    }

    #[test]
    fn quotient_rule() {
        let d = c("u/(x^2+1)").diff(&Symbol::new("x"));
        assert_eq!(d, c("-2*u*x/(x^2+1)^2"));
    }

    #[test]
    fn transcendental_chain_rule() {
        let d = c("sin(u*v)").diff(&Symbol::new("v"));
        assert_eq!(d, c("u*cos(u*v)"));
        let d = c("sqrt(x)").diff(&Symbol::new("x"));
        assert_eq!(d, c("1/(2*sqrt(x))"));
        let d = c("log(x^2+1)").diff(&Symbol::new("x"));
        assert_eq!(d, c("2*x/(x^2+1)"));
    }

    #[test]
    fn lex_order_is_multiplicative() {
        let x = alloc::vec![(Atom::Coord(Symbol::new("x")), 1)];
        let y = alloc::vec![(Atom::Coord(Symbol::new("y")), 1)];
        let xy = mono_mul(&x, &y);
        assert_eq!(lex_cmp(&xy, &y), Ordering::Greater);
        assert_eq!(lex_cmp(&x, &y), Ordering::Greater);
        assert_eq!(lex_cmp(&y, &Vec::new()), Ordering::Greater);
    }

    #[test]
    fn parameters_are_constant_under_differentiation() {
        assert!(c("a*x").diff(&Symbol::new("u")).is_zero());
        assert_eq!(c("a*x^2").diff(&Symbol::new("x")), c("2*a*x"));
    }
}

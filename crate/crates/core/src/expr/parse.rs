//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := ['-'] factor (('*'|'/') ['-'] factor)*
//! factor := base ('^' ['-'] integer)?
//! base   := number | symbol | '(' expr ')' | func '(' expr ')'
//! func   := 'exp' | 'log' | 'sin' | 'cos' | 'sqrt'
//! number := integer | decimal
//! ```
//!
//! `a/b` between integer literals folds to the rational constant, so
//! `number := integer '/' integer` is covered by the term rule with the usual
//! left-associative precedence. Whitespace is ignored. Positions in errors are
//! character offsets.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Expr, ExprError, Func, Result, Symbol};

/// Declared coordinates and parameters; anything else is a syntax error.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    coords: Vec<Symbol>,
    params: Vec<Symbol>,
}

impl SymbolTable {
    pub fn new(coords: &[&str], params: &[&str]) -> Self {
        SymbolTable {
            coords: coords.iter().map(|s| Symbol::new(s)).collect(),
            params: params.iter().map(|s| Symbol::new(s)).collect(),
        }
    }

    pub fn from_symbols(coords: Vec<Symbol>, params: Vec<Symbol>) -> Self {
        SymbolTable { coords, params }
    }

    pub fn coords(&self) -> &[Symbol] {
        &self.coords
    }

    pub fn params(&self) -> &[Symbol] {
        &self.params
    }

    pub fn with_param(mut self, name: &str) -> Self {
        self.params.push(Symbol::new(name));
        self
    }

    fn lookup(&self, name: &str) -> Option<Expr> {
        if let Some(s) = self.coords.iter().find(|s| s.as_str() == name) {
            return Some(Expr::Coord(s.clone()));
        }
        self.params.iter().find(|s| s.as_str() == name).map(|s| Expr::Param(s.clone()))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal(BigRational),
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
            Tok::Int(n) => alloc::format!("integer {}", n),
            Tok::Decimal(_) => "decimal".into(),
            Tok::Ident(s) => alloc::format!("identifier '{}'", s),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let start = i;
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() || c == '.' => {
                let mut int_part = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    int_part.push(chars[i]);
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    let mut frac = String::new();
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        frac.push(chars[i]);
                        i += 1;
                    }
                    if int_part.is_empty() && frac.is_empty() {
                        return Err(ExprError::Syntax { position: start, expected: "digits".into() });
                    }
                    let digits = alloc::format!("{}{}", int_part, frac);
                    let n: BigInt = digits.parse().map_err(|_| ExprError::Syntax {
                        position: start,
                        expected: "number".into(),
                    })?;
                    let d = num_traits::pow(BigInt::from(10), frac.len());
                    out.push((Tok::Decimal(BigRational::new(n, d)), start));
                } else {
                    let n: BigInt = int_part.parse().map_err(|_| ExprError::Syntax {
                        position: start,
                        expected: "number".into(),
                    })?;
                    out.push((Tok::Int(n), start));
                }
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    name.push(chars[i]);
                    i += 1;
                }
                out.push((Tok::Ident(name), start));
                continue;
            }
            other => {
                return Err(ExprError::Syntax {
                    position: start,
                    expected: alloc::format!("an operator, number or symbol (found '{}')", other),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    table: &'a SymbolTable,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(ExprError::Syntax {
            position: self.at(),
            expected: alloc::format!("{} (found {})", expected, self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    terms.push(negate(t));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Add(terms) })
    }

    fn signed_factor(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let f = self.signed_factor()?;
            return Ok(negate(f));
        }
        self.factor()
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.signed_factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.signed_factor()?;
                    acc = match acc {
                        Expr::Mul(mut fs) => {
                            fs.push(rhs);
                            Expr::Mul(fs)
                        }
                        other => Expr::Mul(vec![other, rhs]),
                    };
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.signed_factor()?;
                    acc = match (&acc, &rhs) {
                        (Expr::Num(a), Expr::Num(b)) if !b.is_zero() => Expr::Num(a / b),
                        _ => Expr::Div(Box::new(acc), Box::new(rhs)),
                    };
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let mut negative = false;
            let paren = *self.peek() == Tok::LParen;
            if paren {
                self.bump();
            }
            if *self.peek() == Tok::Minus {
                self.bump();
                negative = true;
            }
            let n = match self.peek().clone() {
                Tok::Int(n) => {
                    self.bump();
                    n
                }
                _ => return self.error("an integer exponent"),
            };
            if paren {
                self.expect(Tok::RParen, "')' closing the exponent")?;
            }
            let n = i32::try_from(&n).or_else(|_| self.error("an exponent that fits in 32 bits"))?;
            let n = if negative { -n } else { n };
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Tok::Decimal(r) => {
                self.bump();
                Ok(Expr::Num(r))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(f) = Func::from_name(&name) {
                    self.bump();
                    self.expect(Tok::LParen, &alloc::format!("'(' after {}", name))?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(Expr::Func(f, Box::new(arg)));
                }
                match self.table.lookup(&name) {
                    Some(e) => {
                        self.bump();
                        Ok(e)
                    }
                    None => Err(ExprError::Syntax {
                        position: self.at(),
                        expected: alloc::format!(
                            "a declared coordinate or parameter (found undeclared symbol '{}')",
                            name
                        ),
                    }),
                }
            }
            _ => self.error("a number, symbol, function or '('"),
        }
    }
}

fn negate(e: Expr) -> Expr {
    match e {
        Expr::Num(r) => Expr::Num(-r),
        Expr::Mul(mut fs) => match fs.first_mut() {
            Some(Expr::Num(r)) => {
                *r = -r.clone();
                if r.is_one() && fs.len() > 1 {
                    fs.remove(0);
                    if fs.len() == 1 {
                        return fs.pop().unwrap();
                    }
                }
                Expr::Mul(fs)
            }
            _ => {
                fs.insert(0, Expr::int(-1));
                Expr::Mul(fs)
            }
        },
        other => Expr::Mul(vec![Expr::int(-1), other]),
    }
}

/// Parse `text` against the declared symbols.
pub fn parse(text: &str, table: &SymbolTable) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, table };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("an operator or end of input");
    }
    Ok(e)
}

impl core::str::FromStr for SymbolTable {
    type Err = ExprError;

    /// Comma-separated coordinate names; used by tests and fixtures.
    fn from_str(s: &str) -> Result<Self> {
        let names: Vec<&str> = s.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
        Ok(SymbolTable::new(&names, &[]))
    }
}

impl SymbolTable {
    pub fn symbol_names(&self) -> Vec<String> {
        self.coords.iter().chain(self.params.iter()).map(|s| s.as_str().to_string()).collect()
    }
}

//! The sectioned metric description format.
//!
//! ```text
//! [chart]
//! coords: u, v, x1
//! constraint: x1 > 0
//! base: u=0, v=0, x1=1
//!
//! [metric]
//! g(u,v) = 1
//! g(u,u) = x1^2
//!
//! [field V]
//! components: 0, 1, 0
//!
//! [roles]
//! u=u, v=v, transverse=x1
//! ```
//!
//! An `[algebra]` section (`basis:`, `bracket(X,Y) = …`, `ip(X,Y) = …`,
//! `V = …`) describes a Lie algebra with an invariant metric instead.

use std::fmt::Write as _;

use kundt_core::catalog::{Entry, Fixture};
use kundt_core::expr::{parse, rational_to_string, Canon, Expr, SymbolTable};
use kundt_core::geometry::{Chart, Constraint, Coordinate, Metric, VectorField};
use kundt_core::hierarchy::Roles;
use kundt_core::liealg::{q, AlgVector, InvariantMetric, LieAlgebra, Q};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, FileError>;

fn syntax(line: usize, message: impl Into<String>) -> FileError {
    FileError::Syntax { line, message: message.into() }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSection {
    pub algebra: LieAlgebra,
    pub metric: InvariantMetric,
    pub v: Option<AlgVector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricFile {
    pub metric: Option<Metric>,
    pub fields: Vec<(String, VectorField)>,
    pub roles: Option<Roles>,
    pub algebra: Option<AlgebraSection>,
}

impl MetricFile {
    pub fn field(&self, name: &str) -> Option<&VectorField> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn from_entry(e: &Entry) -> MetricFile {
        match &e.fixture {
            Fixture::Geometric(f) => MetricFile {
                metric: Some(f.metric.clone()),
                fields: vec![("V".into(), f.field.clone())],
                roles: f.roles.clone(),
                algebra: None,
            },
            Fixture::Algebraic(f) => MetricFile {
                metric: None,
                fields: Vec::new(),
                roles: None,
                algebra: Some(AlgebraSection { algebra: f.algebra.clone(), metric: f.metric.clone(), v: Some(f.v.clone()) }),
            },
        }
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

/// `name(a,b) = rhs` → `(a, b, rhs)`.
fn indexed<'a>(l: &Line<'a>, name: &str) -> Result<(&'a str, &'a str, &'a str)> {
    let (lhs, rhs) = l.text.split_once('=').ok_or_else(|| syntax(l.no, "expected '='"))?;
    let args = lhs
        .trim()
        .strip_prefix(name)
        .and_then(|r| r.trim().strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| syntax(l.no, format!("expected {}(a,b) = …", name)))?;
    let (a, b) = args.split_once(',').ok_or_else(|| syntax(l.no, "expected two indices"))?;
    Ok((a.trim(), b.trim(), rhs.trim()))
}

fn parse_number(l: &Line, s: &str) -> Result<f64> {
    let e = parse(s, &SymbolTable::new(&[], &[])).map_err(|e| syntax(l.no, e.to_string()))?;
    let c = Canon::from_expr(&e).map_err(|e| syntax(l.no, e.to_string()))?;
    c.eval(&kundt_core::expr::EvalPoint::new()).map_err(|e| syntax(l.no, e.to_string()))
}

fn parse_constraint(l: &Line, text: &str) -> Result<(String, Constraint)> {
    let parts: Vec<&str> = text.split('<').map(str::trim).collect();
    match parts.as_slice() {
        [lo, name, hi] => Ok((name.to_string(), Constraint::Interval(parse_number(l, lo)?, parse_number(l, hi)?))),
        _ => {
            let (name, rhs) = text.split_once('>').ok_or_else(|| syntax(l.no, "expected 'x > 0' or 'a < x < b'"))?;
            if parse_number(l, rhs.trim())? != 0.0 {
                return Err(syntax(l.no, "only '> 0' lower bounds are supported"));
            }
            Ok((name.trim().to_string(), Constraint::Positive))
        }
    }
}

#[derive(Default)]
struct ChartSection {
    coords: Vec<String>,
    constraints: Vec<(String, Constraint, usize)>,
    base: Vec<(String, f64, usize)>,
    params: Vec<(String, f64)>,
    sample_box: Option<(f64, f64)>,
}

fn read_chart(lines: &[Line]) -> Result<Chart> {
    let mut s = ChartSection::default();
    for l in lines {
        let (key, rest) = l.text.split_once(':').ok_or_else(|| syntax(l.no, "expected 'key: value'"))?;
        match key.trim() {
            "coords" => s.coords = split_list(rest).into_iter().map(String::from).collect(),
            "constraint" => {
                for c in split_list(rest) {
                    let (n, k) = parse_constraint(l, c)?;
                    s.constraints.push((n, k, l.no));
                }
            }
            "base" | "params" => {
                for a in split_list(rest) {
                    let (n, v) = a.split_once('=').ok_or_else(|| syntax(l.no, "expected name=value"))?;
                    let v = parse_number(l, v.trim())?;
                    if key.trim() == "base" {
                        s.base.push((n.trim().into(), v, l.no));
                    } else {
                        s.params.push((n.trim().into(), v));
                    }
                }
            }
            "box" => {
                let b = split_list(rest);
                if b.len() != 2 {
                    return Err(syntax(l.no, "expected 'box: lo, hi'"));
                }
                s.sample_box = Some((parse_number(l, b[0])?, parse_number(l, b[1])?));
            }
            other => return Err(syntax(l.no, format!("unknown chart key '{}'", other))),
        }
    }
    if s.coords.is_empty() {
        return Err(FileError::Invalid("[chart] needs a 'coords:' line".into()));
    }
    let mut coords: Vec<Coordinate> = s.coords.iter().map(|c| Coordinate::free(c)).collect();
    for (n, k, no) in &s.constraints {
        let i = s.coords.iter().position(|c| c == n).ok_or_else(|| syntax(*no, format!("unknown coordinate '{}'", n)))?;
        coords[i].constraint = *k;
    }
    let mut base: Vec<f64> = coords
        .iter()
        .map(|c| match c.constraint {
            Constraint::Free => 0.0,
            Constraint::Positive => 1.0,
            Constraint::Interval(a, b) => 0.5 * (a + b),
        })
        .collect();
    for (n, v, no) in &s.base {
        let i = s.coords.iter().position(|c| c == n).ok_or_else(|| syntax(*no, format!("unknown coordinate '{}'", n)))?;
        base[i] = *v;
    }
    let mut chart = Chart::new(coords, base).map_err(|e| FileError::Invalid(e.to_string()))?;
    for (n, v) in &s.params {
        chart = chart.with_param(n, *v);
    }
    if let Some((lo, hi)) = s.sample_box {
        chart = chart.with_sample_box(lo, hi);
    }
    Ok(chart)
}

fn read_metric(chart: &Chart, lines: &[Line]) -> Result<Metric> {
    let d = chart.dim();
    let table = chart.symbol_table();
    let mut seen: Vec<Option<(Canon, usize)>> = vec![None; d * d];
    for l in lines {
        let (a, b, rhs) = indexed(l, "g")?;
        let idx = |n: &str| chart.index_of(n).ok_or_else(|| syntax(l.no, format!("unknown coordinate '{}'", n)));
        let (i, j) = (idx(a)?, idx(b)?);
        let e = parse(rhs, &table).map_err(|e| syntax(l.no, e.to_string()))?;
        let c = Canon::from_expr(&e).map_err(|e| syntax(l.no, e.to_string()))?;
        for k in [i * d + j, j * d + i] {
            if let Some((prev, no)) = &seen[k] {
                if *prev != c {
                    return Err(syntax(l.no, format!("g({},{}) conflicts with line {}", a, b, no)));
                }
            }
            seen[k] = Some((c.clone(), l.no));
        }
    }
    let entries = seen.into_iter().map(|s| s.map_or(Expr::zero(), |(c, _)| c.to_expr())).collect();
    Metric::new(chart.clone(), entries).map_err(|e| FileError::Invalid(e.to_string()))
}

fn read_field(chart: &Chart, lines: &[Line]) -> Result<VectorField> {
    let table = chart.symbol_table();
    let mut comps = vec![Expr::zero(); chart.dim()];
    for l in lines {
        if let Some(rest) = l.text.strip_prefix("components:") {
            let parts = kundt_core::catalog::split_top(rest, ',');
            if parts.len() != chart.dim() {
                return Err(syntax(l.no, format!("expected {} components", chart.dim())));
            }
            for (c, p) in comps.iter_mut().zip(&parts) {
                *c = parse(p, &table).map_err(|e| syntax(l.no, e.to_string()))?;
            }
        } else {
            let (n, rhs) = l.text.split_once('=').ok_or_else(|| syntax(l.no, "expected 'components: …' or 'coord = expr'"))?;
            let i = chart.index_of(n.trim()).ok_or_else(|| syntax(l.no, format!("unknown coordinate '{}'", n.trim())))?;
            comps[i] = parse(rhs.trim(), &table).map_err(|e| syntax(l.no, e.to_string()))?;
        }
    }
    VectorField::new(chart, comps).map_err(|e| FileError::Invalid(e.to_string()))
}

fn read_roles(metric: &Metric, lines: &[Line]) -> Result<Roles> {
    let text: Vec<&str> = lines.iter().map(|l| l.text).collect();
    let joined = text.join(", ");
    let no = lines.first().map_or(0, |l| l.no);
    let (mut u, mut v, mut trans) = (None, None, Vec::new());
    let mut in_trans = false;
    for part in split_list(&joined) {
        match part.split_once('=') {
            Some((k, val)) => {
                let (k, val) = (k.trim(), val.trim());
                in_trans = false;
                match k {
                    "u" => u = Some(val),
                    "v" => v = Some(val),
                    "transverse" => {
                        in_trans = true;
                        trans.push(val);
                    }
                    other => return Err(syntax(no, format!("unknown role '{}'", other))),
                }
            }
            None if in_trans => trans.push(part),
            None => return Err(syntax(no, format!("expected role=coordinate, got '{}'", part))),
        }
    }
    let (u, v) = (u.ok_or_else(|| syntax(no, "missing u role"))?, v.ok_or_else(|| syntax(no, "missing v role"))?);
    Roles::by_name(metric, u, v, &trans).map_err(|e| FileError::Invalid(e.to_string()))
}

fn read_algebra(lines: &[Line]) -> Result<AlgebraSection> {
    let first = lines.first().ok_or_else(|| FileError::Invalid("[algebra] is empty".into()))?;
    let names_line = first
        .text
        .strip_prefix("basis:")
        .ok_or_else(|| syntax(first.no, "[algebra] must start with 'basis:'"))?;
    let names = split_list(names_line);
    let table = SymbolTable::new(&names, &[]);
    let provisional = LieAlgebra::abelian(&names);
    let vector = |l: &Line, s: &str| -> Result<AlgVector> {
        let e = parse(s, &table).map_err(|e| syntax(l.no, e.to_string()))?;
        provisional.vector_from_expr(&e).map_err(|e| syntax(l.no, e.to_string()))
    };
    let index = |l: &Line, s: &str| provisional.index_of(s).ok_or_else(|| syntax(l.no, format!("unknown basis element '{}'", s)));
    let (mut brackets, mut ips, mut v) = (Vec::new(), Vec::new(), None);
    for l in &lines[1..] {
        if l.text.starts_with("bracket") {
            let (a, b, rhs) = indexed(l, "bracket")?;
            brackets.push((index(l, a)?, index(l, b)?, vector(l, rhs)?));
        } else if l.text.starts_with("ip") {
            let (a, b, rhs) = indexed(l, "ip")?;
            let e = parse(rhs, &SymbolTable::new(&[], &[])).map_err(|e| syntax(l.no, e.to_string()))?;
            let q: Q = Canon::from_expr(&e)
                .ok()
                .and_then(|c| c.as_constant())
                .ok_or_else(|| syntax(l.no, "inner products must be rational numbers"))?;
            ips.push((index(l, a)?, index(l, b)?, q));
        } else if let Some((k, rhs)) = l.text.split_once('=') {
            if k.trim() != "V" {
                return Err(syntax(l.no, format!("unknown algebra line '{}'", l.text)));
            }
            v = Some(vector(l, rhs.trim())?);
        } else {
            return Err(syntax(l.no, format!("unknown algebra line '{}'", l.text)));
        }
    }
    let algebra = LieAlgebra::new(&names, &brackets).map_err(|e| FileError::Invalid(e.to_string()))?;
    if !algebra.check_jacobi() {
        return Err(FileError::Invalid("brackets violate the Jacobi identity".into()));
    }
    let metric = InvariantMetric::from_entries(names.len(), &ips).map_err(|e| FileError::Invalid(e.to_string()))?;
    Ok(AlgebraSection { algebra, metric, v })
}

pub fn parse_metric_file(text: &str) -> Result<MetricFile> {
    let mut sections: Vec<(String, usize, Vec<Line>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        if let Some(h) = t.strip_prefix('[') {
            let h = h.strip_suffix(']').ok_or_else(|| syntax(no, "unterminated section header"))?;
            sections.push((h.trim().to_string(), no, Vec::new()));
        } else {
            let s = sections.last_mut().ok_or_else(|| syntax(no, "content before the first section"))?;
            s.2.push(Line { no, text: t });
        }
    }
    let find = |name: &str| sections.iter().filter(|s| s.0 == name).collect::<Vec<_>>();
    for (name, no, _) in &sections {
        let known = matches!(name.as_str(), "chart" | "metric" | "roles" | "algebra") || name.starts_with("field ");
        if !known {
            return Err(syntax(*no, format!("unknown section [{}]", name)));
        }
        if !name.starts_with("field ") && find(name).len() > 1 {
            return Err(syntax(*no, format!("duplicate section [{}]", name)));
        }
    }
    let algebra = find("algebra").first().map(|s| read_algebra(&s.2)).transpose()?;
    let chart = find("chart").first().map(|s| read_chart(&s.2)).transpose()?;
    let metric = match (&chart, find("metric").first()) {
        (Some(c), Some(s)) => Some(read_metric(c, &s.2)?),
        (None, Some(s)) => return Err(syntax(s.1, "[metric] needs a [chart] section")),
        (Some(_), None) => return Err(FileError::Invalid("[chart] given without [metric]".into())),
        (None, None) => None,
    };
    if metric.is_none() && algebra.is_none() {
        return Err(FileError::Invalid("file has neither [metric] nor [algebra]".into()));
    }
    let mut fields = Vec::new();
    for (name, no, lines) in sections.iter().filter(|s| s.0.starts_with("field ")) {
        let fname = name["field ".len()..].trim().to_string();
        let g = metric.as_ref().ok_or_else(|| syntax(*no, "[field] needs a metric"))?;
        if fields.iter().any(|(n, _): &(String, VectorField)| *n == fname) {
            return Err(syntax(*no, format!("duplicate field '{}'", fname)));
        }
        fields.push((fname, read_field(g.chart(), lines)?));
    }
    let roles = match find("roles").first() {
        Some(s) => Some(read_roles(metric.as_ref().ok_or_else(|| syntax(s.1, "[roles] needs a metric"))?, &s.2)?),
        None => None,
    };
    Ok(MetricFile { metric, fields, roles, algebra })
}

fn linear_text(names: &[String], v: &[Q]) -> String {
    let mut out = String::new();
    for (n, c) in names.iter().zip(v) {
        if *c == q(0) {
            continue;
        }
        let neg = *c < q(0);
        let mag = if neg { -c.clone() } else { c.clone() };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        if mag != q(1) {
            let _ = write!(out, "{}*", rational_to_string(&mag));
        }
        out.push_str(n);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn write_metric_file(f: &MetricFile) -> String {
    let mut out = String::new();
    if let Some(g) = &f.metric {
        let c = g.chart();
        let names: Vec<String> = c.coord_symbols().iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "[chart]\ncoords: {}", names.join(", "));
        let cons: Vec<String> = c
            .coords()
            .iter()
            .filter_map(|k| match k.constraint {
                Constraint::Free => None,
                Constraint::Positive => Some(format!("{} > 0", k.name)),
                Constraint::Interval(a, b) => Some(format!("{} < {} < {}", a, k.name, b)),
            })
            .collect();
        if !cons.is_empty() {
            let _ = writeln!(out, "constraint: {}", cons.join(", "));
        }
        let base: Vec<String> = names.iter().zip(c.base()).map(|(n, v)| format!("{}={}", n, v)).collect();
        let _ = writeln!(out, "base: {}", base.join(", "));
        if !c.params().is_empty() {
            let ps: Vec<String> = c.params().iter().map(|(s, v)| format!("{}={}", s, v)).collect();
            let _ = writeln!(out, "params: {}", ps.join(", "));
        }
        if c.sample_box() != (-2.0, 2.0) {
            let _ = writeln!(out, "box: {}, {}", c.sample_box().0, c.sample_box().1);
        }
        let _ = writeln!(out, "\n[metric]");
        for i in 0..g.dim() {
            for j in i..g.dim() {
                if !g.get(i, j).is_zero() {
                    let _ = writeln!(out, "g({},{}) = {}", names[i], names[j], g.expr(i, j));
                }
            }
        }
        for (n, v) in &f.fields {
            let comps: Vec<String> = v.exprs().iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "\n[field {}]\ncomponents: {}", n, comps.join(", "));
        }
        if let Some(r) = &f.roles {
            let t: Vec<&str> = r.transverse.iter().map(|&i| names[i].as_str()).collect();
            let _ = write!(out, "\n[roles]\nu={}, v={}", names[r.u], names[r.v]);
            if !t.is_empty() {
                let _ = write!(out, ", transverse={}", t.join(", "));
            }
            out.push('\n');
        }
    }
    if let Some(a) = &f.algebra {
        if !out.is_empty() {
            out.push('\n');
        }
        let names = a.algebra.names();
        let _ = writeln!(out, "[algebra]\nbasis: {}", names.join(", "));
        let d = a.algebra.dim();
        for i in 0..d {
            for j in (i + 1)..d {
                let b = a.algebra.bracket(&a.algebra.basis(i), &a.algebra.basis(j));
                if b.iter().any(|x| *x != q(0)) {
                    let _ = writeln!(out, "bracket({},{}) = {}", names[i], names[j], linear_text(names, &b));
                }
            }
        }
        for i in 0..d {
            for j in i..d {
                let x = a.metric.get(i, j);
                if *x != q(0) {
                    let _ = writeln!(out, "ip({},{}) = {}", names[i], names[j], rational_to_string(x));
                }
            }
        }
        if let Some(v) = &a.v {
            let _ = writeln!(out, "V = {}", linear_text(names, v));
        }
    }
    out
}

#[cfg(test)]
mod tests;

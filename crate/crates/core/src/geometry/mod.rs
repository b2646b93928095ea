//! Charts, metrics and tensor calculus on a single coordinate chart.
//!
//! Index conventions, fixed crate-wide:
//!
//! * `Γ^k_{ij}` is stored at `[k][i][j]` and is symmetric in `i, j`.
//! * `R(∂_i, ∂_j) ∂_k = R^l_{kij} ∂_l`, so
//!   `R^l_{kij} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ^l_{im} Γ^m_{jk} − Γ^l_{jm} Γ^m_{ik}`.
//! * `R_{abcd} = g_{al} R^l_{bcd} = g(R(∂_c, ∂_d) ∂_b, ∂_a)`; constant sectional
//!   curvature `K` reads `R_{abcd} = K (g_{ac} g_{bd} − g_{ad} g_{bc})`.
//!
//! All symbolic entries are kept in [`Canon`] form.

mod fields;
mod geodesic;
pub mod linalg;
mod tensor;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::expr::{Canon, DomainBox, EvalPoint, Expr, ExprError, Symbol, SymbolTable, ZeroTest};

pub use fields::{covariant_derivative, inner, is_killing, lie_bracket, lie_derivative_metric};
pub use geodesic::{integrate_geodesic, GeodesicPath, MIN_STEPS};
pub use linalg::SquareMatrix;
pub use tensor::{christoffel, inverse_metric, riemann, ConnectionCoefficients, RiemannTensor};

/// Largest supported chart dimension.
pub const MAX_DIM: usize = 6;
/// Default per-coordinate sampling interval.
pub const DEFAULT_BOX: (f64, f64) = (-2.0, 2.0);
/// Lower end of the sampling interval for strictly positive coordinates.
pub const POSITIVE_FLOOR: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("objects live on different charts")]
    ChartMismatch,
    #[error("expected {expected} components, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("metric entries ({0},{1}) and ({1},{0}) differ")]
    NotSymmetric(usize, usize),
    #[error("metric determinant vanishes identically")]
    SingularMetric,
    #[error("metric is not Lorentzian at the base point ({negative} negative, {zero} zero, {positive} positive eigenvalues)")]
    NotLorentzian { negative: usize, zero: usize, positive: usize },
    #[error("path left the chart domain: {0}")]
    OutOfDomain(String),
}

pub type Result<T> = core::result::Result<T, GeometryError>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Constraint {
    Free,
    Positive,
    Interval(f64, f64),
}

impl Constraint {
    pub fn admits(&self, x: f64) -> bool {
        match *self {
            Constraint::Free => x.is_finite(),
            Constraint::Positive => x > 0.0 && x.is_finite(),
            Constraint::Interval(lo, hi) => lo <= x && x <= hi,
        }
    }

    fn clip(&self, lo: f64, hi: f64) -> (f64, f64) {
        match *self {
            Constraint::Free => (lo, hi),
            Constraint::Positive => {
                let l = lo.max(POSITIVE_FLOOR);
                if l < hi {
                    (l, hi)
                } else {
                    (POSITIVE_FLOOR, DEFAULT_BOX.1)
                }
            }
            Constraint::Interval(a, b) => {
                let (l, h) = (lo.max(a), hi.min(b));
                if l < h {
                    (l, h)
                } else {
                    (a, b)
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coordinate {
    pub name: Symbol,
    pub constraint: Constraint,
}

impl Coordinate {
    pub fn free(name: &str) -> Self {
        Coordinate { name: Symbol::new(name), constraint: Constraint::Free }
    }

    pub fn positive(name: &str) -> Self {
        Coordinate { name: Symbol::new(name), constraint: Constraint::Positive }
    }
}

/// A coordinate chart: ordered coordinates with domain constraints, optional
/// named parameters, and a base point.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    coords: Vec<Coordinate>,
    params: Vec<(Symbol, f64)>,
    base: Vec<f64>,
    sample_box: (f64, f64),
}

impl Chart {
    pub fn new(coords: Vec<Coordinate>, base: Vec<f64>) -> Result<Self> {
        let d = coords.len();
        if !(2..=MAX_DIM).contains(&d) {
            return Err(GeometryError::InvalidChart(alloc::format!(
                "dimension {} outside 2..={}",
                d, MAX_DIM
            )));
        }
        if base.len() != d {
            return Err(GeometryError::DimensionMismatch { expected: d, got: base.len() });
        }
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].iter().any(|o| o.name == c.name) {
                return Err(GeometryError::InvalidChart(alloc::format!("duplicate coordinate '{}'", c.name)));
            }
            if !c.constraint.admits(base[i]) {
                return Err(GeometryError::InvalidChart(alloc::format!(
                    "base point {} = {} violates its constraint",
                    c.name, base[i]
                )));
            }
        }
        Ok(Chart { coords, params: Vec::new(), base, sample_box: DEFAULT_BOX })
    }

    /// Unconstrained coordinates with the base point at the origin.
    pub fn free(names: &[&str]) -> Result<Self> {
        Chart::new(names.iter().map(|n| Coordinate::free(n)).collect(), alloc::vec![0.0; names.len()])
    }

    /// Declare a named parameter with its value at the base point.
    pub fn with_param(mut self, name: &str, base_value: f64) -> Self {
        self.params.push((Symbol::new(name), base_value));
        self
    }

    /// Override the default `[-2, 2]` sampling interval.
    pub fn with_sample_box(mut self, lo: f64, hi: f64) -> Self {
        self.sample_box = (lo, hi);
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Symbol {
        &self.coords[i].name
    }

    pub fn coord_symbols(&self) -> Vec<Symbol> {
        self.coords.iter().map(|c| c.name.clone()).collect()
    }

    pub fn params(&self) -> &[(Symbol, f64)] {
        &self.params
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c.name.as_str() == name)
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn sample_box(&self) -> (f64, f64) {
        self.sample_box
    }

    pub fn symbol_table(&self) -> SymbolTable {
        SymbolTable::from_symbols(self.coord_symbols(), self.params.iter().map(|(s, _)| s.clone()).collect())
    }

    /// Point with the given coordinate values and the parameters at their
    /// base values.
    pub fn point(&self, values: &[f64]) -> EvalPoint {
        let mut p = EvalPoint::new();
        for (c, v) in self.coords.iter().zip(values) {
            p.set(c.name.clone(), *v);
        }
        for (s, v) in &self.params {
            p.set(s.clone(), *v);
        }
        p
    }

    pub fn base_point(&self) -> EvalPoint {
        self.point(&self.base)
    }

    pub fn admits(&self, values: &[f64]) -> bool {
        values.len() == self.dim() && self.coords.iter().zip(values).all(|(c, v)| c.constraint.admits(*v))
    }

    /// Sampling box: the sample interval per coordinate intersected with its
    /// constraint; parameters use the sample interval.
    pub fn domain(&self) -> DomainBox {
        let (lo, hi) = self.sample_box;
        let mut ranges: Vec<(Symbol, f64, f64)> = self
            .coords
            .iter()
            .map(|c| {
                let (l, h) = c.constraint.clip(lo, hi);
                (c.name.clone(), l, h)
            })
            .collect();
        for (s, _) in &self.params {
            ranges.push((s.clone(), lo, hi));
        }
        DomainBox::new(ranges)
    }

    pub fn zero_test(&self, seed: u64) -> ZeroTest {
        ZeroTest::new(self.domain(), seed)
    }

    fn same_coords(&self, other: &Chart) -> bool {
        self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a.name == b.name)
    }
}

/// Lorentzian metric `g_ij` on a chart, stored as a full symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    chart: Arc<Chart>,
    g: SquareMatrix,
}

impl Metric {
    /// Validates symmetry and Lorentzian signature `(−, +, …, +)` at the base
    /// point.
    pub fn new(chart: Chart, entries: Vec<Expr>) -> Result<Self> {
        let d = chart.dim();
        if entries.len() != d * d {
            return Err(GeometryError::DimensionMismatch { expected: d * d, got: entries.len() });
        }
        let canon = entries.iter().map(Canon::from_expr).collect::<core::result::Result<Vec<_>, _>>()?;
        Metric::from_canon(chart, SquareMatrix::new(d, canon))
    }

    /// Build from a sparse list of `(i, j, g_ij)`; the `(j, i)` entry is filled
    /// in, unspecified entries are zero.
    pub fn from_entries(chart: Chart, entries: &[(usize, usize, Expr)]) -> Result<Self> {
        let d = chart.dim();
        let mut m = alloc::vec![Canon::zero(); d * d];
        for (i, j, e) in entries {
            if *i >= d || *j >= d {
                return Err(GeometryError::DimensionMismatch { expected: d, got: (*i).max(*j) + 1 });
            }
            let c = Canon::from_expr(e)?;
            m[i * d + j] = c.clone();
            m[j * d + i] = c;
        }
        Metric::from_canon(chart, SquareMatrix::new(d, m))
    }

    pub fn from_canon(chart: Chart, g: SquareMatrix) -> Result<Self> {
        let d = chart.dim();
        if g.dim() != d {
            return Err(GeometryError::DimensionMismatch { expected: d, got: g.dim() });
        }
        for i in 0..d {
            for j in (i + 1)..d {
                if g.get(i, j) != g.get(j, i) {
                    return Err(GeometryError::NotSymmetric(i, j));
                }
            }
        }
        let base = chart.base_point();
        let numeric = g.eval(&base)?;
        let eig = linalg::symmetric_eigenvalues(&numeric, d);
        let scale = eig.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
        let tol = 1e-12 * (1.0 + scale);
        let negative = eig.iter().filter(|v| **v < -tol).count();
        let positive = eig.iter().filter(|v| **v > tol).count();
        let zero = d - negative - positive;
        if zero > 0 {
            let det = g.determinant();
            if chart.zero_test(0).is_zero_canon(&det)? {
                return Err(GeometryError::SingularMetric);
            }
        }
        if negative != 1 || zero != 0 {
            return Err(GeometryError::NotLorentzian { negative, zero, positive });
        }
        Ok(Metric { chart: Arc::new(chart), g })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub(crate) fn chart_arc(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.g
    }

    pub fn get(&self, i: usize, j: usize) -> &Canon {
        self.g.get(i, j)
    }

    pub fn expr(&self, i: usize, j: usize) -> Expr {
        self.g.get(i, j).to_expr()
    }

    pub fn zero_test(&self, seed: u64) -> ZeroTest {
        self.chart.zero_test(seed)
    }

    /// Same metric on a chart with a different sampling box.
    pub fn with_sample_box(&self, lo: f64, hi: f64) -> Metric {
        Metric { chart: Arc::new((*self.chart).clone().with_sample_box(lo, hi)), g: self.g.clone() }
    }

    pub fn eval(&self, values: &[f64]) -> Result<Vec<f64>> {
        Ok(self.g.eval(&self.chart.point(values))?)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                let e = self.get(i, j);
                if !e.is_zero() {
                    writeln!(f, "g({},{}) = {}", self.chart.coord(i), self.chart.coord(j), e.to_expr())?;
                }
            }
        }
        Ok(())
    }
}

/// Contravariant vector field `X = X^i ∂_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    chart: Arc<Chart>,
    comps: Vec<Canon>,
}

impl VectorField {
    pub fn new(chart: &Chart, comps: Vec<Expr>) -> Result<Self> {
        let canon = comps.iter().map(Canon::from_expr).collect::<core::result::Result<Vec<_>, _>>()?;
        VectorField::from_canon(Arc::new(chart.clone()), canon)
    }

    pub fn from_canon(chart: Arc<Chart>, comps: Vec<Canon>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(GeometryError::DimensionMismatch { expected: chart.dim(), got: comps.len() });
        }
        Ok(VectorField { chart, comps })
    }

    /// Coordinate field `∂_i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut comps = alloc::vec![Canon::zero(); chart.dim()];
        comps[i] = Canon::one();
        VectorField { chart: Arc::new(chart.clone()), comps }
    }

    pub fn zero(chart: &Chart) -> Self {
        VectorField { chart: Arc::new(chart.clone()), comps: alloc::vec![Canon::zero(); chart.dim()] }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub(crate) fn chart_arc(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Canon] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Canon {
        &self.comps[i]
    }

    pub fn exprs(&self) -> Vec<Expr> {
        self.comps.iter().map(Canon::to_expr).collect()
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.check_chart(&other.chart)?;
        Ok(self.map2(other, |a, b| a.add(b)))
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.check_chart(&other.chart)?;
        Ok(self.map2(other, |a, b| a.sub(b)))
    }

    pub fn scale(&self, f: &Canon) -> VectorField {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|c| c.mul(f)).collect() }
    }

    /// `X(f) = X^i ∂_i f`.
    pub fn apply(&self, f: &Canon) -> Canon {
        let mut acc = Canon::zero();
        for (i, xi) in self.comps.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            acc = acc.add(&xi.mul(&f.diff(self.chart.coord(i))));
        }
        acc
    }

    pub fn is_zero(&self, zt: &ZeroTest) -> Result<bool> {
        for c in &self.comps {
            if !zt.is_zero_canon(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn eval(&self, p: &EvalPoint) -> Result<Vec<f64>> {
        self.comps.iter().map(|c| c.eval(p).map_err(GeometryError::from)).collect()
    }

    pub(crate) fn check_chart(&self, other: &Chart) -> Result<()> {
        check_same(&self.chart, other)
    }

    fn map2(&self, other: &VectorField, f: impl Fn(&Canon, &Canon) -> Canon) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

pub(crate) fn check_same(a: &Chart, b: &Chart) -> Result<()> {
    if a.same_coords(b) {
        Ok(())
    } else {
        Err(GeometryError::ChartMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn mink3() -> Chart {
        Chart::free(&["u", "v", "x"]).unwrap()
    }

    #[test]
    fn minkowski_is_lorentzian() {
        let c = mink3();
        let g = Metric::from_entries(c, &[(0, 1, Expr::one()), (2, 2, Expr::one())]).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.get(1, 0), &Canon::one());
    }

    #[test]
    fn degenerate_matrix_is_singular() {
        let c = Chart::free(&["t", "x"]).unwrap();
        let err = Metric::from_entries(c, &[(1, 1, Expr::one())]).unwrap_err();
        assert_eq!(err, GeometryError::SingularMetric);
    }

    #[test]
    fn riemannian_metric_is_rejected() {
        let c = Chart::free(&["t", "x"]).unwrap();
        let err = Metric::from_entries(c, &[(0, 0, Expr::one()), (1, 1, Expr::one())]).unwrap_err();
        assert!(matches!(err, GeometryError::NotLorentzian { negative: 0, .. }));
    }

    #[test]
    fn asymmetric_entries_rejected() {
        let c = Chart::free(&["t", "x"]).unwrap();
        let t = c.symbol_table();
        let entries = alloc::vec![
            Expr::int(-1),
            parse("t", &t).unwrap(),
            Expr::zero(),
            Expr::one()
        ];
        assert_eq!(Metric::new(c, entries).unwrap_err(), GeometryError::NotSymmetric(0, 1));
    }

    #[test]
    fn chart_validation() {
        assert!(Chart::free(&["u"]).is_err());
        assert!(Chart::free(&["u", "u"]).is_err());
        assert!(Chart::free(&["a", "b", "c", "d", "e", "f", "g"]).is_err());
        let bad = Chart::new(alloc::vec![Coordinate::free("u"), Coordinate::positive("y")], alloc::vec![0.0, 0.0]);
        assert!(bad.is_err());
    }

    #[test]
    fn positive_coordinates_get_clipped_box() {
        let c = Chart::new(alloc::vec![Coordinate::free("u"), Coordinate::positive("y")], alloc::vec![0.0, 1.0])
            .unwrap();
        let dom = c.domain();
        assert_eq!(dom.range(&Symbol::new("u")), Some((-2.0, 2.0)));
        assert_eq!(dom.range(&Symbol::new("y")), Some((0.1, 2.0)));
        let narrowed = c.with_sample_box(0.5, 1.5).domain();
        assert_eq!(narrowed.range(&Symbol::new("y")), Some((0.5, 1.5)));
    }
}

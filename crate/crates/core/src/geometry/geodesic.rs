use alloc::format;
use alloc::vec::Vec;

use super::tensor::christoffel;
use super::{GeometryError, Metric, Result};
use crate::expr::{Canon, EvalPoint, ExprError};

/// Smallest accepted step count.
pub const MIN_STEPS: usize = 16;

/// Sampled solution of the geodesic equation, including the initial point.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPath {
    pub times: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
}

impl GeodesicPath {
    pub fn end(&self) -> &[f64] {
        self.points.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// `g(ẋ, ẋ)` at every sample.
    pub fn norms(&self, g: &Metric) -> Result<Vec<f64>> {
        let n = g.dim();
        self.points
            .iter()
            .zip(&self.velocities)
            .map(|(x, v)| {
                let m = g.eval(x)?;
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        s += m[i * n + j] * v[i] * v[j];
                    }
                }
                Ok(s)
            })
            .collect()
    }

    /// Largest deviation of `g(ẋ, ẋ)` from its initial value.
    pub fn norm_drift(&self, g: &Metric) -> Result<f64> {
        let norms = self.norms(g)?;
        let first = norms.first().copied().unwrap_or(0.0);
        Ok(norms.iter().fold(0.0f64, |m, q| m.max(libm::fabs(q - first))))
    }
}

struct Rhs<'a> {
    metric: &'a Metric,
    terms: Vec<(usize, usize, usize, f64, Canon)>,
    base: EvalPoint,
}

impl Rhs<'_> {
    fn accel(&self, x: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        let chart = self.metric.chart();
        if !chart.admits(x) {
            return Err(GeometryError::OutOfDomain(format!("{:?}", x)));
        }
        let mut p = self.base.clone();
        for (i, xi) in x.iter().enumerate() {
            p.set(chart.coord(i).clone(), *xi);
        }
        let mut a = alloc::vec![0.0; x.len()];
        for (k, i, j, mult, c) in &self.terms {
            let val = c.eval(&p).map_err(|e| match e {
                ExprError::Eval(m) => GeometryError::OutOfDomain(format!("{} at {:?}", m, x)),
                other => GeometryError::Expr(other),
            })?;
            a[*k] -= mult * val * v[*i] * v[*j];
        }
        Ok(a)
    }
}

/// Classical fourth-order Runge–Kutta for `ẍ^k + Γ^k_{ij} ẋ^i ẋ^j = 0`, with
/// `Γ` evaluated from its symbolic form. Parameters not set in `p0` take their
/// base values.
pub fn integrate_geodesic(g: &Metric, p0: &EvalPoint, v0: &[f64], t_end: f64, steps: usize) -> Result<GeodesicPath> {
    let n = g.dim();
    let chart = g.chart();
    if v0.len() != n {
        return Err(GeometryError::DimensionMismatch { expected: n, got: v0.len() });
    }
    if steps < MIN_STEPS {
        return Err(GeometryError::InvalidChart(format!("at least {} steps required, got {}", MIN_STEPS, steps)));
    }
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        let s = chart.coord(i);
        x.push(p0.get(s).ok_or_else(|| GeometryError::Expr(ExprError::Eval(format!("start point lacks '{}'", s))))?);
    }
    let mut base = chart.base_point();
    for (s, v) in p0.iter() {
        base.set(s.clone(), v);
    }
    let gamma = christoffel(g)?;
    let mut terms = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let c = gamma.get(k, i, j);
                if !c.is_zero() {
                    terms.push((k, i, j, if i == j { 1.0 } else { 2.0 }, c.clone()));
                }
            }
        }
    }
    let rhs = Rhs { metric: g, terms, base };
    let h = t_end / steps as f64;
    let mut v = v0.to_vec();
    let mut path = GeodesicPath {
        times: alloc::vec![0.0],
        points: alloc::vec![x.clone()],
        velocities: alloc::vec![v.clone()],
    };
    let axpy = |a: &[f64], s: f64, b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| p + s * q).collect() };
    for step in 1..=steps {
        let a1 = rhs.accel(&x, &v)?;
        let (x2, v2) = (axpy(&x, h / 2.0, &v), axpy(&v, h / 2.0, &a1));
        let a2 = rhs.accel(&x2, &v2)?;
        let (x3, v3) = (axpy(&x, h / 2.0, &v2), axpy(&v, h / 2.0, &a2));
        let a3 = rhs.accel(&x3, &v3)?;
        let (x4, v4) = (axpy(&x, h, &v3), axpy(&v, h, &a3));
        let a4 = rhs.accel(&x4, &v4)?;
        for k in 0..n {
            x[k] += h / 6.0 * (v[k] + 2.0 * v2[k] + 2.0 * v3[k] + v4[k]);
            v[k] += h / 6.0 * (a1[k] + 2.0 * a2[k] + 2.0 * a3[k] + a4[k]);
        }
        if !chart.admits(&x) {
            return Err(GeometryError::OutOfDomain(format!("{:?}", x)));
        }
        path.times.push(step as f64 * h);
        path.points.push(x.clone());
        path.velocities.push(v.clone());
    }
    Ok(path)
}

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::SquareMatrix;
use super::{Chart, Metric, Result};
use crate::expr::{Canon, EvalPoint, Expr, ZeroTest};

/// Inverse metric `g^{ij}`.
pub fn inverse_metric(g: &Metric) -> Result<SquareMatrix> {
    Ok(g.matrix().inverse()?)
}

/// Levi-Civita connection coefficients `Γ^k_{ij}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionCoefficients {
    chart: Arc<Chart>,
    n: usize,
    data: Vec<Canon>,
}

impl ConnectionCoefficients {
    /// `Γ^k_{ij}`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> &Canon {
        &self.data[(k * self.n + i) * self.n + j]
    }

    pub fn expr(&self, k: usize, i: usize, j: usize) -> Expr {
        self.get(k, i, j).to_expr()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Numeric values at a point, in the same `[k][i][j]` layout.
    pub fn eval(&self, p: &EvalPoint) -> Result<Vec<f64>> {
        Ok(self.data.iter().map(|c| c.eval(p)).collect::<core::result::Result<Vec<_>, _>>()?)
    }

    pub fn is_zero(&self, zt: &ZeroTest) -> Result<bool> {
        for c in &self.data {
            if !zt.is_zero_canon(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn christoffel(g: &Metric) -> Result<ConnectionCoefficients> {
    let n = g.dim();
    let chart = g.chart_arc().clone();
    let ginv = inverse_metric(g)?;
    // dg[l][i][j] = ∂_l g_ij
    let mut dg = vec![Canon::zero(); n * n * n];
    for l in 0..n {
        let x = chart.coord(l);
        for i in 0..n {
            for j in i..n {
                let d = g.get(i, j).diff(x);
                dg[(l * n + i) * n + j] = d.clone();
                dg[(l * n + j) * n + i] = d;
            }
        }
    }
    let at = |l: usize, i: usize, j: usize| &dg[(l * n + i) * n + j];
    let half = Canon::rational(1, 2);
    let mut first = vec![Canon::zero(); n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in i..n {
                let v = at(i, j, l).add(at(j, i, l)).sub(at(l, i, j)).mul(&half);
                first[(l * n + i) * n + j] = v.clone();
                first[(l * n + j) * n + i] = v;
            }
        }
    }
    let mut data = vec![Canon::zero(); n * n * n];
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = Canon::zero();
                for l in 0..n {
                    let (a, b) = (ginv.get(k, l), &first[(l * n + i) * n + j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                data[(k * n + i) * n + j] = acc.clone();
                data[(k * n + j) * n + i] = acc;
            }
        }
    }
    Ok(ConnectionCoefficients { chart, n, data })
}

/// Riemann tensor `R^l_{kij}` with `R(∂_i, ∂_j) ∂_k = R^l_{kij} ∂_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiemannTensor {
    n: usize,
    data: Vec<Canon>,
}

impl RiemannTensor {
    fn idx(&self, l: usize, k: usize, i: usize, j: usize) -> usize {
        ((l * self.n + k) * self.n + i) * self.n + j
    }

    /// `R^l_{kij}`.
    pub fn get(&self, l: usize, k: usize, i: usize, j: usize) -> &Canon {
        &self.data[self.idx(l, k, i, j)]
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `R_{abcd} = g_{al} R^l_{bcd}`.
    pub fn lowered(&self, g: &Metric) -> RiemannTensor {
        let n = self.n;
        let mut data = vec![Canon::zero(); n * n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in (c + 1)..n {
                        let mut acc = Canon::zero();
                        for l in 0..n {
                            let (x, y) = (g.get(a, l), self.get(l, b, c, d));
                            if !x.is_zero() && !y.is_zero() {
                                acc = acc.add(&x.mul(y));
                            }
                        }
                        data[self.idx(a, b, d, c)] = acc.neg();
                        data[self.idx(a, b, c, d)] = acc;
                    }
                }
            }
        }
        RiemannTensor { n, data }
    }

    pub fn is_zero(&self, zt: &ZeroTest) -> Result<bool> {
        for c in &self.data {
            if !zt.is_zero_canon(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn components(&self) -> impl Iterator<Item = ([usize; 4], &Canon)> {
        let n = self.n;
        self.data.iter().enumerate().map(move |(idx, c)| {
            let j = idx % n;
            let i = (idx / n) % n;
            let k = (idx / (n * n)) % n;
            let l = idx / (n * n * n);
            ([l, k, i, j], c)
        })
    }
}

pub fn riemann(g: &Metric) -> Result<RiemannTensor> {
    let gamma = christoffel(g)?;
    Ok(riemann_from(&gamma))
}

pub(crate) fn riemann_from(gamma: &ConnectionCoefficients) -> RiemannTensor {
    let n = gamma.n;
    let chart = &gamma.chart;
    let mut out = RiemannTensor { n, data: vec![Canon::zero(); n * n * n * n] };
    for l in 0..n {
        for k in 0..n {
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut acc = gamma.get(l, j, k).diff(chart.coord(i)).sub(&gamma.get(l, i, k).diff(chart.coord(j)));
                    for m in 0..n {
                        let (a, b) = (gamma.get(l, i, m), gamma.get(m, j, k));
                        if !a.is_zero() && !b.is_zero() {
                            acc = acc.add(&a.mul(b));
                        }
                        let (c, d) = (gamma.get(l, j, m), gamma.get(m, i, k));
                        if !c.is_zero() && !d.is_zero() {
                            acc = acc.sub(&c.mul(d));
                        }
                    }
                    let (p, q) = (out.idx(l, k, i, j), out.idx(l, k, j, i));
                    out.data[q] = acc.neg();
                    out.data[p] = acc;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::geometry::{Coordinate, Metric};

    fn ads2() -> Metric {
        // (-dt^2 + dz^2)/z^2
        let chart = Chart::new(vec![Coordinate::free("t"), Coordinate::positive("z")], vec![0.0, 1.0]).unwrap();
        let t = chart.symbol_table();
        let m = parse("1/(z^2)", &t).unwrap();
        Metric::from_entries(chart, &[(0, 0, -m.clone()), (1, 1, m)]).unwrap()
    }

    #[test]
    fn ads2_christoffel() {
        let g = ads2();
        let gamma = christoffel(&g).unwrap();
        let t = g.chart().symbol_table();
        let minus_inv_z = Canon::from_expr(&parse("-1/z", &t).unwrap()).unwrap();
        assert_eq!(gamma.get(0, 0, 1), &minus_inv_z);
        assert_eq!(gamma.get(1, 0, 0), &minus_inv_z);
        assert_eq!(gamma.get(1, 1, 1), &minus_inv_z);
        assert!(gamma.get(0, 0, 0).is_zero());
    }

    #[test]
    fn ads2_constant_negative_curvature() {
        let g = ads2();
        let r = riemann(&g).unwrap().lowered(&g);
        // R_{0101} = -(g_00 g_11 - g_01 g_10)
        let expect = g.get(0, 0).mul(g.get(1, 1)).neg();
        assert_eq!(r.get(0, 1, 0, 1), &expect);
        assert_eq!(r.get(0, 1, 1, 0), &expect.neg());
        assert!(r.get(0, 0, 0, 1).is_zero());
    }

    #[test]
    fn flat_space_has_no_curvature() {
        let chart = Chart::free(&["u", "v", "x"]).unwrap();
        let g = Metric::from_entries(chart, &[(0, 1, Expr::one()), (2, 2, Expr::one())]).unwrap();
        let zt = g.zero_test(1);
        assert!(christoffel(&g).unwrap().is_zero(&zt).unwrap());
        assert!(riemann(&g).unwrap().is_zero(&zt).unwrap());
    }
}

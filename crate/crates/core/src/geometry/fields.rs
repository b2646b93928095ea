use alloc::vec::Vec;

use super::linalg::SquareMatrix;
use super::tensor::ConnectionCoefficients;
use super::{check_same, Metric, Result, VectorField};
use crate::expr::{Canon, ZeroTest};

/// `g(X, Y)`.
pub fn inner(g: &Metric, x: &VectorField, y: &VectorField) -> Result<Canon> {
    check_same(g.chart(), x.chart())?;
    check_same(g.chart(), y.chart())?;
    let n = g.dim();
    let mut acc = Canon::zero();
    for i in 0..n {
        if x.comp(i).is_zero() {
            continue;
        }
        for j in 0..n {
            let (gij, yj) = (g.get(i, j), y.comp(j));
            if !gij.is_zero() && !yj.is_zero() {
                acc = acc.add(&x.comp(i).mul(gij).mul(yj));
            }
        }
    }
    Ok(acc)
}

/// `(∇_X Y)^k = X(Y^k) + Γ^k_{ij} X^i Y^j`.
pub fn covariant_derivative(gamma: &ConnectionCoefficients, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    check_same(gamma.chart(), x.chart())?;
    check_same(gamma.chart(), y.chart())?;
    let n = gamma.dim();
    let mut comps = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = x.apply(y.comp(k));
        for i in 0..n {
            if x.comp(i).is_zero() {
                continue;
            }
            for j in 0..n {
                let (c, yj) = (gamma.get(k, i, j), y.comp(j));
                if !c.is_zero() && !yj.is_zero() {
                    acc = acc.add(&c.mul(x.comp(i)).mul(yj));
                }
            }
        }
        comps.push(acc);
    }
    VectorField::from_canon(x.chart_arc().clone(), comps)
}

/// `[X, Y]^k = X(Y^k) − Y(X^k)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    check_same(x.chart(), y.chart())?;
    let comps = (0..x.dim()).map(|k| x.apply(y.comp(k)).sub(&y.apply(x.comp(k)))).collect();
    VectorField::from_canon(x.chart_arc().clone(), comps)
}

/// `(L_X g)_{ij} = X(g_ij) + g_kj ∂_i X^k + g_ik ∂_j X^k`.
pub fn lie_derivative_metric(g: &Metric, x: &VectorField) -> Result<SquareMatrix> {
    check_same(g.chart(), x.chart())?;
    let n = g.dim();
    let chart = g.chart();
    let dx: Vec<Vec<Canon>> = (0..n).map(|i| x.comps().iter().map(|c| c.diff(chart.coord(i))).collect()).collect();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = x.apply(g.get(i, j));
            for k in 0..n {
                if !dx[i][k].is_zero() && !g.get(k, j).is_zero() {
                    acc = acc.add(&g.get(k, j).mul(&dx[i][k]));
                }
                if !dx[j][k].is_zero() && !g.get(i, k).is_zero() {
                    acc = acc.add(&g.get(i, k).mul(&dx[j][k]));
                }
            }
            out.set(j, i, acc.clone());
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

pub fn is_killing(g: &Metric, x: &VectorField, zt: &ZeroTest) -> Result<bool> {
    let l = lie_derivative_metric(g, x)?;
    let n = g.dim();
    for i in 0..n {
        for j in i..n {
            if !zt.is_zero_canon(l.get(i, j))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, Expr};
    use crate::geometry::{christoffel, Chart, GeometryError};

    fn mink() -> Metric {
        let chart = Chart::free(&["t", "x", "y"]).unwrap();
        Metric::from_entries(chart, &[(0, 0, Expr::int(-1)), (1, 1, Expr::one()), (2, 2, Expr::one())]).unwrap()
    }

    fn field(g: &Metric, comps: &[&str]) -> VectorField {
        let t = g.chart().symbol_table();
        VectorField::new(g.chart(), comps.iter().map(|c| parse(c, &t).unwrap()).collect()).unwrap()
    }

    #[test]
    fn rotation_is_killing_dilation_is_not() {
        let g = mink();
        let zt = g.zero_test(3);
        assert!(is_killing(&g, &field(&g, &["0", "-y", "x"]), &zt).unwrap());
        assert!(is_killing(&g, &field(&g, &["x", "t", "0"]), &zt).unwrap());
        assert!(!is_killing(&g, &field(&g, &["t", "x", "y"]), &zt).unwrap());
    }

    #[test]
    fn bracket_of_coordinate_rotation() {
        let g = mink();
        let r = field(&g, &["0", "-y", "x"]);
        let dx = VectorField::coordinate(g.chart(), 1);
        let b = lie_bracket(&dx, &r).unwrap();
        assert_eq!(b, field(&g, &["0", "0", "1"]));
    }

    #[test]
    fn flat_covariant_derivative_is_directional() {
        let g = mink();
        let gamma = christoffel(&g).unwrap();
        let x = field(&g, &["1", "t", "0"]);
        let y = field(&g, &["x^2", "0", "t*y"]);
        let d = covariant_derivative(&gamma, &x, &y).unwrap();
        assert_eq!(d, field(&g, &["2*t*x", "0", "y"]));
        assert_eq!(inner(&g, &x, &x).unwrap(), Canon::from_expr(&parse("t^2 - 1", &g.chart().symbol_table()).unwrap()).unwrap());
    }

    #[test]
    fn chart_mismatch() {
        let g = mink();
        let other = Chart::free(&["a", "b", "c"]).unwrap();
        let x = VectorField::coordinate(&other, 0);
        assert_eq!(inner(&g, &x, &x).unwrap_err(), GeometryError::ChartMismatch);
    }
}

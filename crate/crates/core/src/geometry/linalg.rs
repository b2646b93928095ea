//! Small dense linear algebra: exact over [`Canon`], numeric over `f64`.

use alloc::vec;
use alloc::vec::Vec;

use crate::expr::{Canon, EvalPoint, Expr, Result as ExprResult};

/// Square matrix of canonical expressions, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<Canon>,
}

impl SquareMatrix {
    pub fn new(n: usize, data: Vec<Canon>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data has the wrong length");
        SquareMatrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, data: vec![Canon::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Canon::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Canon {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Canon) {
        self.data[i * self.n + j] = v;
    }

    pub fn expr(&self, i: usize, j: usize) -> Expr {
        self.get(i, j).to_expr()
    }

    pub fn transpose(&self) -> SquareMatrix {
        let mut t = SquareMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        let n = self.n;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Canon::zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn determinant(&self) -> Canon {
        let rows: Vec<usize> = (0..self.n).collect();
        minor_det(self, &rows, &rows)
    }

    /// Inverse through the adjugate; fails when the determinant is the zero
    /// form.
    pub fn inverse(&self) -> ExprResult<SquareMatrix> {
        let n = self.n;
        let det = self.determinant();
        let inv_det = det.inv()?;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|r| *r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|c| *c != i).collect();
                let mut c = minor_det(self, &rows, &cols).mul(&inv_det);
                if (i + j) % 2 == 1 {
                    c = c.neg();
                }
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, p: &EvalPoint) -> ExprResult<Vec<f64>> {
        self.data.iter().map(|c| c.eval(p)).collect()
    }
}

/// Determinant of the submatrix on the given rows and columns, by Laplace
/// expansion memoized over column subsets.
fn minor_det(m: &SquareMatrix, rows: &[usize], cols: &[usize]) -> Canon {
    let k = rows.len();
    if k == 0 {
        return Canon::one();
    }
    let full = (1usize << k) - 1;
    let mut table: Vec<Option<Canon>> = vec![None; full + 1];
    table[0] = Some(Canon::one());
    for mask in 1..=full {
        let size = mask.count_ones() as usize;
        let row = rows[size - 1];
        let mut acc = Canon::zero();
        let mut above = 0;
        for p in (0..k).rev() {
            if mask & (1 << p) == 0 {
                continue;
            }
            let entry = m.get(row, cols[p]);
            if !entry.is_zero() {
                if let Some(sub) = &table[mask & !(1 << p)] {
                    if !sub.is_zero() {
                        let term = entry.mul(sub);
                        acc = if above % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                    }
                }
            }
            above += 1;
        }
        table[mask] = Some(acc);
    }
    table[full].take().unwrap_or_else(Canon::zero)
}

/// Numeric determinant by partial-pivot elimination.
pub fn det_f64(a: &[f64], n: usize) -> f64 {
    let mut m = a.to_vec();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n).max_by(|x, y| libm::fabs(m[x * n + c]).total_cmp(&libm::fabs(m[y * n + c]))).unwrap_or(c);
        if m[piv * n + c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            for j in 0..n {
                m.swap(piv * n + j, c * n + j);
            }
            det = -det;
        }
        det *= m[c * n + c];
        for r in (c + 1)..n {
            let f = m[r * n + c] / m[c * n + c];
            for j in c..n {
                m[r * n + j] -= f * m[c * n + j];
            }
        }
    }
    det
}

/// Solve `a x = b` for a square system; `None` when singular.
pub fn solve_f64(a: &[f64], b: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for c in 0..n {
        let piv = (c..n).max_by(|p, q| libm::fabs(m[p * n + c]).total_cmp(&libm::fabs(m[q * n + c])))?;
        if libm::fabs(m[piv * n + c]) < 1e-300 {
            return None;
        }
        if piv != c {
            for j in 0..n {
                m.swap(piv * n + j, c * n + j);
            }
            x.swap(piv, c);
        }
        for r in 0..n {
            if r != c {
                let f = m[r * n + c] / m[c * n + c];
                for j in c..n {
                    m[r * n + j] -= f * m[c * n + j];
                }
                x[r] -= f * x[c];
            }
        }
    }
    Some((0..n).map(|i| x[i] / m[i * n + i]).collect())
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Vec<f64> {
    let mut m = a.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |j| *j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = libm::copysign(1.0, theta) / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i * n + i]).collect()
}

pub(crate) fn canon_dot(a: &[Canon], b: &[Canon]) -> Canon {
    let mut acc = Canon::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}

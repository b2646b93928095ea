//! Left-invariant Lorentzian metrics on Lie algebras, in exact rational
//! arithmetic.
//!
//! Right-invariant (Killing) fields are represented by their values at the
//! identity, where their bracket is the negative of the algebra bracket:
//! `[ā, b̄]_e = −[a, b]`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::expr::{Canon, Expr, Symbol};

pub type Q = BigRational;
pub type AlgVector = Vec<Q>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("invalid structure: {0}")]
    BadStructure(String),
    #[error("inner product is not symmetric")]
    NotSymmetric,
    #[error("inner product is degenerate")]
    DegenerateMetric,
    #[error("inner product is not Lorentzian ({negative} negative, {positive} positive)")]
    NotLorentzian { negative: usize, positive: usize },
    #[error("V is not lightlike")]
    NotLightlike,
    #[error("matrix is not a derivation")]
    NotADerivation,
    #[error("expected a vector of length {0}")]
    Dimension(usize),
}

pub type Result<T> = core::result::Result<T, LieError>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn zeros(n: usize) -> AlgVector {
    vec![Q::zero(); n]
}

fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Structure constants `c^k_{ij}` on a named basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    c: Vec<Q>,
}

impl LieAlgebra {
    /// `brackets` lists `[e_i, e_j] = Σ_k c_k e_k` for `i ≠ j`; the opposite
    /// order is implied, unlisted pairs commute.
    pub fn new(names: &[&str], brackets: &[(usize, usize, AlgVector)]) -> Result<Self> {
        let d = names.len();
        if d == 0 {
            return Err(LieError::BadStructure("empty basis".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(LieError::BadStructure(format!("duplicate basis name '{}'", n)));
            }
        }
        let mut alg = LieAlgebra { names: names.iter().map(|s| String::from(*s)).collect(), c: zeros(d * d * d) };
        let mut set = vec![false; d * d];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= d || j >= d || v.len() != d {
                return Err(LieError::Dimension(d));
            }
            if i == j {
                if is_zero_vec(v) {
                    continue;
                }
                return Err(LieError::BadStructure(format!("[{0},{0}] must vanish", names[i])));
            }
            let neg: AlgVector = v.iter().map(|x| -x).collect();
            if (set[i * d + j] && alg.basis_bracket(i, j) != *v) || (set[j * d + i] && alg.basis_bracket(j, i) != neg) {
                return Err(LieError::BadStructure(format!("conflicting brackets for ({},{})", names[i], names[j])));
            }
            for k in 0..d {
                alg.c[(i * d + j) * d + k] = v[k].clone();
                alg.c[(j * d + i) * d + k] = neg[k].clone();
            }
            set[i * d + j] = true;
            set[j * d + i] = true;
        }
        Ok(alg)
    }

    pub fn abelian(names: &[&str]) -> Self {
        LieAlgebra::new(names, &[]).expect("abelian algebra is well formed")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn basis(&self, i: usize) -> AlgVector {
        let mut v = zeros(self.dim());
        v[i] = Q::one();
        v
    }

    /// `c^k_{ij}`.
    pub fn structure(&self, i: usize, j: usize, k: usize) -> &Q {
        let d = self.dim();
        &self.c[(i * d + j) * d + k]
    }

    fn basis_bracket(&self, i: usize, j: usize) -> AlgVector {
        (0..self.dim()).map(|k| self.structure(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> AlgVector {
        let d = self.dim();
        let mut out = zeros(d);
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..d {
                    let c = self.structure(i, j, k);
                    if !c.is_zero() {
                        out[k] += &s * c;
                    }
                }
            }
        }
        out
    }

    /// Bracket of the right-invariant fields at the identity.
    pub fn killing_bracket(&self, x: &[Q], y: &[Q]) -> AlgVector {
        self.bracket(x, y).into_iter().map(|c| -c).collect()
    }

    /// Matrix of `ad_x`, row-major: `(ad_x)_{kj} = [x, e_j]^k`.
    pub fn ad(&self, x: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut m = zeros(d * d);
        for j in 0..d {
            let col = self.bracket(x, &self.basis(j));
            for k in 0..d {
                m[k * d + j] = col[k].clone();
            }
        }
        m
    }

    /// Exact Jacobi identity on all basis triples.
    pub fn check_jacobi(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let mut s = self.bracket(&a, &self.bracket(&b, &c));
                    for (x, y) in s.iter_mut().zip(self.bracket(&b, &self.bracket(&c, &a))) {
                        *x += y;
                    }
                    for (x, y) in s.iter_mut().zip(self.bracket(&c, &self.bracket(&a, &b))) {
                        *x += y;
                    }
                    if !is_zero_vec(&s) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `a[x, y] = [a x, y] + [x, a y]` on basis pairs; `a` is row-major.
    pub fn is_derivation(&self, a: &[Q]) -> bool {
        let d = self.dim();
        if a.len() != d * d {
            return false;
        }
        for i in 0..d {
            for j in (i + 1)..d {
                let (x, y) = (self.basis(i), self.basis(j));
                let lhs = mat_vec(a, &self.bracket(&x, &y), d);
                let mut rhs = self.bracket(&mat_vec(a, &x, d), &y);
                for (r, t) in rhs.iter_mut().zip(self.bracket(&x, &mat_vec(a, &y, d))) {
                    *r += t;
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// `ℝ ⋉_a L` with the new generator `t_name` first and `[t, x] = a x`.
    pub fn semidirect(&self, t_name: &str, a: &[Q]) -> Result<LieAlgebra> {
        if !self.is_derivation(a) {
            return Err(LieError::NotADerivation);
        }
        let d = self.dim();
        let mut names: Vec<&str> = vec![t_name];
        names.extend(self.names.iter().map(String::as_str));
        let lift = |v: AlgVector| -> AlgVector { core::iter::once(Q::zero()).chain(v).collect() };
        let mut brackets = Vec::new();
        for j in 0..d {
            let img = mat_vec(a, &self.basis(j), d);
            if !is_zero_vec(&img) {
                brackets.push((0, j + 1, lift(img)));
            }
            for k in (j + 1)..d {
                let b = self.basis_bracket(j, k);
                if !is_zero_vec(&b) {
                    brackets.push((j + 1, k + 1, lift(b)));
                }
            }
        }
        LieAlgebra::new(&names, &brackets)
    }

    /// Read a linear combination of basis names such as `2*X - Y/3`.
    pub fn vector_from_expr(&self, e: &Expr) -> Result<AlgVector> {
        let c = Canon::from_expr(e).map_err(|err| LieError::BadStructure(format!("{}", err)))?;
        let mut out = zeros(self.dim());
        let mut rest = c.clone();
        for (i, name) in self.names.iter().enumerate() {
            let s = Symbol::new(name);
            let coef = c
                .diff(&s)
                .as_constant()
                .ok_or_else(|| LieError::BadStructure(format!("'{}' is not linear in the basis", e)))?;
            rest = rest.sub(&Canon::coord(&s).mul(&Canon::constant(coef.clone())));
            out[i] = coef;
        }
        if !rest.is_zero() {
            return Err(LieError::BadStructure(format!("'{}' is not linear in the basis", e)));
        }
        Ok(out)
    }
}

fn mat_vec(a: &[Q], x: &[Q], d: usize) -> AlgVector {
    (0..d).map(|i| (0..d).fold(Q::zero(), |acc, j| acc + &a[i * d + j] * &x[j])).collect()
}

/// Exact solve of `m z = b` by Gauss–Jordan elimination.
fn solve(m: &[Q], b: &[Q], d: usize) -> Option<AlgVector> {
    let mut a = m.to_vec();
    let mut x = b.to_vec();
    for c in 0..d {
        let piv = (c..d).find(|r| !a[r * d + c].is_zero())?;
        if piv != c {
            for j in 0..d {
                a.swap(piv * d + j, c * d + j);
            }
            x.swap(piv, c);
        }
        let inv = a[c * d + c].recip();
        for j in 0..d {
            a[c * d + j] = &a[c * d + j] * &inv;
        }
        x[c] = &x[c] * &inv;
        for r in 0..d {
            if r != c && !a[r * d + c].is_zero() {
                let f = a[r * d + c].clone();
                for j in 0..d {
                    let t = &f * &a[c * d + j];
                    a[r * d + j] -= t;
                }
                let t = &f * &x[c];
                x[r] -= t;
            }
        }
    }
    Some(x)
}

fn rational_det(m: &[Q], d: usize) -> Q {
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..d {
        let piv = match (c..d).find(|r| !a[r * d + c].is_zero()) {
            Some(p) => p,
            None => return Q::zero(),
        };
        if piv != c {
            for j in 0..d {
                a.swap(piv * d + j, c * d + j);
            }
            det = -det;
        }
        det *= &a[c * d + c];
        for r in (c + 1)..d {
            let f = &a[r * d + c] / &a[c * d + c];
            for j in c..d {
                let t = &f * &a[c * d + j];
                a[r * d + j] -= t;
            }
        }
    }
    det
}

/// Inertia `(negative, zero, positive)` of a symmetric rational matrix, by
/// symmetric elimination with congruence pivoting.
fn inertia(m: &[Q], d: usize) -> (usize, usize, usize) {
    let mut a = m.to_vec();
    let mut active: Vec<usize> = (0..d).collect();
    let (mut neg, mut pos) = (0, 0);
    while !active.is_empty() {
        let diag = active.iter().copied().find(|&i| !a[i * d + i].is_zero());
        let p = match diag {
            Some(p) => p,
            None => {
                // Make a diagonal entry nonzero with e_i ← e_i + e_j.
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !a[i * d + j].is_zero());
                match pair {
                    Some((i, j)) => {
                        for k in 0..d {
                            let t = a[j * d + k].clone();
                            a[i * d + k] += t;
                        }
                        for k in 0..d {
                            let t = a[k * d + j].clone();
                            a[k * d + i] += t;
                        }
                        i
                    }
                    None => break,
                }
            }
        };
        let piv = a[p * d + p].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &r in &active {
            let f = &a[r * d + p] / &piv;
            for &c in &active {
                let t = &f * &a[p * d + c];
                a[r * d + c] -= t;
            }
        }
        for &r in &active {
            a[r * d + p] = Q::zero();
            a[p * d + r] = Q::zero();
        }
    }
    (neg, d - neg - pos, pos)
}

/// Symmetric, nondegenerate, Lorentzian inner product on the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantMetric {
    d: usize,
    m: Vec<Q>,
}

impl InvariantMetric {
    pub fn new(d: usize, m: Vec<Q>) -> Result<Self> {
        if m.len() != d * d {
            return Err(LieError::Dimension(d * d));
        }
        for i in 0..d {
            for j in (i + 1)..d {
                if m[i * d + j] != m[j * d + i] {
                    return Err(LieError::NotSymmetric);
                }
            }
        }
        if rational_det(&m, d).is_zero() {
            return Err(LieError::DegenerateMetric);
        }
        let (negative, _, positive) = inertia(&m, d);
        if negative != 1 {
            return Err(LieError::NotLorentzian { negative, positive });
        }
        Ok(InvariantMetric { d, m })
    }

    /// From a sparse list of `(i, j, value)`; `(j, i)` is implied.
    pub fn from_entries(d: usize, entries: &[(usize, usize, Q)]) -> Result<Self> {
        let mut m = zeros(d * d);
        for (i, j, v) in entries {
            if *i >= d || *j >= d {
                return Err(LieError::Dimension(d));
            }
            m[i * d + j] = v.clone();
            m[j * d + i] = v.clone();
        }
        InvariantMetric::new(d, m)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.m[i * self.d + j]
    }

    pub fn ip(&self, x: &[Q], y: &[Q]) -> Q {
        let d = self.d;
        let mut acc = Q::zero();
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if !y[j].is_zero() && !self.m[i * d + j].is_zero() {
                    acc += &x[i] * &self.m[i * d + j] * &y[j];
                }
            }
        }
        acc
    }

    fn f64_matrix(&self) -> Vec<f64> {
        self.m.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// `g(∇_U V, W)` at the identity for the right-invariant fields generated by
/// `u, v, w`: `2 g(∇_U V, W) = g([U,V],W) + g([V,W],U) − g([W,U],V)` with the
/// Killing-field bracket.
pub fn koszul_killing(l: &LieAlgebra, m: &InvariantMetric, u: &[Q], v: &[Q], w: &[Q]) -> Q {
    let t = m.ip(&l.killing_bracket(u, v), w) + m.ip(&l.killing_bracket(v, w), u) - m.ip(&l.killing_bracket(w, u), v);
    t / q(2)
}

/// `∇_X Y` for left-invariant fields:
/// `2⟨∇_X Y, Z⟩ = ⟨[X,Y],Z⟩ − ⟨[Y,Z],X⟩ + ⟨[Z,X],Y⟩`.
pub fn levi_civita_invariant(l: &LieAlgebra, m: &InvariantMetric, x: &[Q], y: &[Q]) -> Result<AlgVector> {
    let d = l.dim();
    if m.dim() != d || x.len() != d || y.len() != d {
        return Err(LieError::Dimension(d));
    }
    let xy = l.bracket(x, y);
    let rhs: AlgVector = (0..d)
        .map(|k| {
            let e = l.basis(k);
            (m.ip(&xy, &e) - m.ip(&l.bracket(y, &e), x) + m.ip(&l.bracket(&e, x), y)) / q(2)
        })
        .collect();
    solve(&m.m, &rhs, d).ok_or(LieError::DegenerateMetric)
}

/// Exact torsion-freeness `∇_X Y − ∇_Y X = [X, Y]` on basis pairs.
pub fn torsion_free(l: &LieAlgebra, m: &InvariantMetric) -> Result<bool> {
    let d = l.dim();
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (l.basis(i), l.basis(j));
            let a = levi_civita_invariant(l, m, &x, &y)?;
            let b = levi_civita_invariant(l, m, &y, &x)?;
            let diff: AlgVector = a.iter().zip(&b).map(|(p, r)| p - r).collect();
            if diff != l.bracket(&x, &y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact metric compatibility `⟨∇_X Y, Z⟩ + ⟨Y, ∇_X Z⟩ = 0` on basis triples.
pub fn metric_compatible(l: &LieAlgebra, m: &InvariantMetric) -> Result<bool> {
    let d = l.dim();
    let nab: Vec<Vec<AlgVector>> = (0..d)
        .map(|i| (0..d).map(|j| levi_civita_invariant(l, m, &l.basis(i), &l.basis(j))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let s = m.ip(&nab[i][j], &l.basis(k)) + m.ip(&l.basis(j), &nab[i][k]);
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `koszul(u,v,w) − koszul(v,u,w) = g([u,v]_K, w)` on basis triples.
pub fn killing_torsion_identity(l: &LieAlgebra, m: &InvariantMetric) -> bool {
    let d = l.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (u, v, w) = (l.basis(i), l.basis(j), l.basis(k));
                let lhs = koszul_killing(l, m, &u, &v, &w) - koszul_killing(l, m, &v, &u, &w);
                if lhs != m.ip(&l.killing_bracket(&u, &v), &w) {
                    return false;
                }
            }
        }
    }
    true
}

/// Basis of `{w : ⟨w, v⟩ = 0}`.
fn orthogonal_complement(m: &InvariantMetric, v: &[Q]) -> Vec<AlgVector> {
    let d = m.dim();
    let lowered: AlgVector = (0..d).map(|i| (0..d).fold(Q::zero(), |acc, j| acc + m.get(i, j) * &v[j])).collect();
    let p = match lowered.iter().position(|x| !x.is_zero()) {
        Some(p) => p,
        None => return (0..d).map(|i| { let mut e = zeros(d); e[i] = Q::one(); e }).collect(),
    };
    (0..d)
        .filter(|&j| j != p)
        .map(|j| {
            let mut e = zeros(d);
            e[j] = Q::one();
            e[p] = -(&lowered[j] / &lowered[p]);
            e
        })
        .collect()
}

fn parallel(a: &[Q], b: &[Q]) -> bool {
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicReport {
    pub lightlike: bool,
    /// `V^⊥` is closed under the bracket.
    pub perp_subalgebra: bool,
    /// `[V, V^⊥] ⊆ ℝV`.
    pub normal: bool,
    /// `V` is central.
    pub central: bool,
    /// `∇V = 0` at the identity, through the Killing-field Koszul formula.
    pub parallel_at_identity: bool,
    pub algebraic_kundt: bool,
    pub certification: &'static str,
}

pub fn analyze_algebraic(l: &LieAlgebra, m: &InvariantMetric, v: &[Q]) -> Result<AlgebraicReport> {
    let d = l.dim();
    if m.dim() != d || v.len() != d {
        return Err(LieError::Dimension(d));
    }
    if !m.ip(v, v).is_zero() || is_zero_vec(v) {
        return Err(LieError::NotLightlike);
    }
    let perp = orthogonal_complement(m, v);
    let mut sub = true;
    for i in 0..perp.len() {
        for j in (i + 1)..perp.len() {
            if !m.ip(&l.bracket(&perp[i], &perp[j]), v).is_zero() {
                sub = false;
            }
        }
    }
    let normal = perp.iter().all(|w| parallel(&l.bracket(v, w), v));
    let central = (0..d).all(|i| is_zero_vec(&l.bracket(v, &l.basis(i))));
    let parallel_at_identity =
        (0..d).all(|i| (0..d).all(|k| koszul_killing(l, m, &l.basis(i), v, &l.basis(k)).is_zero()));
    Ok(AlgebraicReport {
        lightlike: true,
        perp_subalgebra: sub,
        normal,
        central,
        parallel_at_identity,
        algebraic_kundt: sub && normal,
        certification: "identity-certified",
    })
}

fn mat_exp(a: &[f64], d: usize) -> Vec<f64> {
    let mut sum = vec![0.0; d * d];
    let mut term = vec![0.0; d * d];
    for i in 0..d {
        sum[i * d + i] = 1.0;
        term[i * d + i] = 1.0;
    }
    for n in 1..200 {
        let mut next = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = 0.0;
                for k in 0..d {
                    s += term[i * d + k] * a[k * d + j];
                }
                next[i * d + j] = s / n as f64;
            }
        }
        term = next;
        let tn = term.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)));
        let sn = sum.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)));
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t;
        }
        if tn <= f64::EPSILON * 1e-2 * sn {
            break;
        }
    }
    sum
}

fn mv(a: &[f64], x: &[f64], d: usize) -> Vec<f64> {
    (0..d).map(|i| (0..d).map(|j| a[i * d + j] * x[j]).sum()).collect()
}

/// Monte-Carlo check at group elements `exp(a)`: `⟨Ad⁻¹V, Ad⁻¹V⟩ = 0` and
/// `[Ad⁻¹V, Ad⁻¹w] ∥ Ad⁻¹V` for `w` in `V^⊥`, within `1e-9`.
pub fn sample_group_check(l: &LieAlgebra, m: &InvariantMetric, v: &[Q], samples: usize, seed: u64) -> Result<bool> {
    let d = l.dim();
    if v.len() != d {
        return Err(LieError::Dimension(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gm = m.f64_matrix();
    let ip = |x: &[f64], y: &[f64]| -> f64 { (0..d).map(|i| (0..d).map(|j| x[i] * gm[i * d + j] * y[j]).sum::<f64>()).sum() };
    let bracket = |x: &[f64], y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = l.structure(i, j, k).to_f64().unwrap_or(f64::NAN);
                    if c != 0.0 {
                        out[k] += c * x[i] * y[j];
                    }
                }
            }
        }
        out
    };
    let vf: Vec<f64> = v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let perp: Vec<Vec<f64>> = orthogonal_complement(m, v)
        .iter()
        .map(|w| w.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let ad_f = |a: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; d * d];
        for j in 0..d {
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            let col = bracket(a, &e);
            for k in 0..d {
                out[k * d + j] = col[k];
            }
        }
        out
    };
    for _ in 0..samples {
        let a: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let neg: Vec<f64> = ad_f(&a).iter().map(|x| -x).collect();
        let ad_inv = mat_exp(&neg, d);
        let w = mv(&ad_inv, &vf, d);
        let scale = 1.0 + w.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)));
        if libm::fabs(ip(&w, &w)) > 1e-9 * scale * scale {
            return Ok(false);
        }
        for p in &perp {
            let b = bracket(&w, &mv(&ad_inv, p, d));
            let bs = 1.0 + b.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)));
            for i in 0..d {
                for j in (i + 1)..d {
                    if libm::fabs(b[i] * w[j] - b[j] * w[i]) > 1e-9 * bs * scale {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

//! Null congruences: a lightlike field `V` together with a transversal null
//! field `U` (`g(V, U) = 1`) and a screen frame `E_a` spanning a complement of
//! `V` in `V^⊥`, orthogonal to `U`.
//!
//! The optical matrix is `B_ab = g(∇_{E_a} V, E_b)`. Its antisymmetric part
//! `½(B − Bᵀ)` is the twist, so for screen fields `twist_ab = −½ g(V, [E_a, E_b])`.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::expr::{Canon, Expr, ZeroTest};
use crate::geometry::linalg::{self, SquareMatrix};
use crate::geometry::{
    christoffel, covariant_derivative, inner, lie_bracket, lie_derivative_metric, ConnectionCoefficients,
    GeometryError, Metric, VectorField,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum CongruenceError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("field is not lightlike: g(V,V) = {0}")]
    NotLightlike(String),
    #[error("no valid frame pivot at the base point: {0}")]
    DegenerateAtBasePoint(String),
    #[error("the twist test failed, so V^⊥ is not integrable")]
    RequiresIntegrability,
    #[error("invalid screen frame: {0}")]
    InvalidScreen(String),
}

impl From<crate::expr::ExprError> for CongruenceError {
    fn from(e: crate::expr::ExprError) -> Self {
        CongruenceError::Geometry(GeometryError::Expr(e))
    }
}

pub type Result<T> = core::result::Result<T, CongruenceError>;

/// `V`, `U` and a screen frame, with the Levi-Civita connection of the metric.
#[derive(Clone, Debug)]
pub struct NullCongruence {
    metric: Metric,
    gamma: ConnectionCoefficients,
    v: VectorField,
    u: VectorField,
    screen: Vec<VectorField>,
    zt: ZeroTest,
}

fn all_zero<'a>(zt: &ZeroTest, items: impl IntoIterator<Item = &'a Canon>) -> Result<bool> {
    for c in items {
        if !zt.is_zero_canon(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn field_zero(zt: &ZeroTest, x: &VectorField) -> Result<bool> {
    all_zero(zt, x.comps())
}

/// Lower `V` with the metric: `ω_i = g_ij V^j`.
fn lower(g: &Metric, v: &VectorField) -> Vec<Canon> {
    let n = g.dim();
    (0..n).map(|i| linalg::canon_dot(&(0..n).map(|j| g.get(i, j).clone()).collect::<Vec<_>>(), v.comps())).collect()
}

fn argmax_abs(values: &[f64], skip: Option<usize>) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, x) in values.iter().enumerate() {
        if Some(i) == skip || !x.is_finite() {
            continue;
        }
        if best.is_none_or(|b| libm::fabs(*x) > libm::fabs(values[b])) {
            best = Some(i);
        }
    }
    best.filter(|b| libm::fabs(values[*b]) > 1e-12)
}

pub fn build_congruence(g: &Metric, v: &VectorField, zt: &ZeroTest) -> Result<NullCongruence> {
    let norm = inner(g, v, v)?;
    if !zt.is_zero_canon(&norm)? {
        return Err(CongruenceError::NotLightlike(alloc::format!("{}", norm.to_expr())));
    }
    let base = g.chart().base_point();
    let v_at = v.eval(&base)?;
    if v_at.iter().all(|x| *x == 0.0) {
        return Err(CongruenceError::DegenerateAtBasePoint("V vanishes at the base point".into()));
    }
    let omega = lower(g, v);
    let omega_at = omega.iter().map(|c| c.eval(&base)).collect::<core::result::Result<Vec<_>, _>>()?;
    let p = argmax_abs(&omega_at, None)
        .ok_or_else(|| CongruenceError::DegenerateAtBasePoint("g(V, ·) vanishes at the base point".into()))?;
    let q = argmax_abs(&v_at, Some(p))
        .ok_or_else(|| CongruenceError::DegenerateAtBasePoint("V has no component off the pivot".into()))?;

    let chart = v.chart_arc().clone();
    let n = g.dim();
    let inv_wp = omega[p].inv()?;
    let mut u0 = alloc::vec![Canon::zero(); n];
    u0[p] = inv_wp.clone();
    let u0 = VectorField::from_canon(chart.clone(), u0)?;
    let half_norm = inner(g, &u0, &u0)?.mul(&Canon::rational(1, 2));
    let u = u0.sub(&v.scale(&half_norm))?;

    let mut screen = Vec::new();
    for j in (0..n).filter(|j| *j != p && *j != q) {
        let mut f = alloc::vec![Canon::zero(); n];
        f[j] = Canon::one();
        f[p] = omega[j].mul(&inv_wp).neg();
        let f = VectorField::from_canon(chart.clone(), f)?;
        let e = f.sub(&v.scale(&inner(g, &f, &u)?))?;
        screen.push(e);
    }
    let c = NullCongruence {
        metric: g.clone(),
        gamma: christoffel(g)?,
        v: v.clone(),
        u,
        screen,
        zt: zt.clone(),
    };
    c.check_gram()?;
    Ok(c)
}

impl NullCongruence {
    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn v(&self) -> &VectorField {
        &self.v
    }

    pub fn u(&self) -> &VectorField {
        &self.u
    }

    pub fn screen(&self) -> &[VectorField] {
        &self.screen
    }

    pub fn connection(&self) -> &ConnectionCoefficients {
        &self.gamma
    }

    pub fn zero_test(&self) -> &ZeroTest {
        &self.zt
    }

    /// Replace the screen frame. Each field must be orthogonal to `V`, and
    /// together with `V` they must span `V^⊥` at the base point. `U` is
    /// recomputed so that it stays null and orthogonal to the new screen.
    pub fn with_screen(&self, screen: Vec<VectorField>) -> Result<NullCongruence> {
        let n = self.metric.dim();
        if screen.len() + 2 != n {
            return Err(CongruenceError::InvalidScreen(alloc::format!(
                "expected {} fields, got {}",
                n - 2,
                screen.len()
            )));
        }
        for (a, e) in screen.iter().enumerate() {
            if !self.zt.is_zero_canon(&inner(&self.metric, e, &self.v)?)? {
                return Err(CongruenceError::InvalidScreen(alloc::format!("field {} is not orthogonal to V", a)));
            }
        }
        let mut c = NullCongruence { screen, ..self.clone() };
        let gram = c.gram()?;
        let gram_inv = gram.inverse().map_err(|_| CongruenceError::InvalidScreen("singular Gram matrix".into()))?;
        let k = c.screen.len();
        let gu: Vec<Canon> = c.screen.iter().map(|e| inner(&c.metric, &self.u, e)).collect::<core::result::Result<_, _>>()?;
        let mut u = self.u.clone();
        for a in 0..k {
            let coef = (0..k).fold(Canon::zero(), |acc, b| acc.sub(&gram_inv.get(a, b).mul(&gu[b])));
            u = u.add(&c.screen[a].scale(&coef))?;
        }
        let beta = inner(&c.metric, &u, &u)?.mul(&Canon::rational(-1, 2));
        c.u = u.add(&c.v.scale(&beta))?;
        c.check_gram()?;
        Ok(c)
    }

    /// `G_ab = g(E_a, E_b)`.
    pub fn gram(&self) -> Result<SquareMatrix> {
        let k = self.screen.len();
        let mut m = SquareMatrix::zeros(k);
        for a in 0..k {
            for b in a..k {
                let x = inner(&self.metric, &self.screen[a], &self.screen[b])?;
                m.set(b, a, x.clone());
                m.set(a, b, x);
            }
        }
        Ok(m)
    }

    fn check_gram(&self) -> Result<()> {
        let k = self.screen.len();
        if k == 0 {
            return Ok(());
        }
        let at = self.gram()?.eval(&self.metric.chart().base_point())?;
        let eig = linalg::symmetric_eigenvalues(&at, k);
        if eig.iter().any(|x| !(*x > 1e-12)) {
            return Err(CongruenceError::DegenerateAtBasePoint("screen Gram matrix is not positive definite".into()));
        }
        Ok(())
    }

    pub fn nabla(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        Ok(covariant_derivative(&self.gamma, x, y)?)
    }

    /// The frame `{V, E_1, …}` tangent to `V^⊥`.
    fn perp_frame(&self) -> Vec<&VectorField> {
        core::iter::once(&self.v).chain(self.screen.iter()).collect()
    }
}

/// Outcome of the geodesic test.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicInfo {
    pub geodesic: bool,
    /// `∇_V V = κ V` for some function `κ`.
    pub pre_geodesic: bool,
    /// `κ = g(∇_V V, U)` when pre-geodesic.
    pub kappa: Option<Expr>,
}

pub fn geodesic_info(c: &NullCongruence) -> Result<GeodesicInfo> {
    let acc = c.nabla(&c.v, &c.v)?;
    if field_zero(&c.zt, &acc)? {
        return Ok(GeodesicInfo { geodesic: true, pre_geodesic: true, kappa: Some(Expr::zero()) });
    }
    let kappa = inner(&c.metric, &acc, &c.u)?;
    let rest = acc.sub(&c.v.scale(&kappa))?;
    let pre = field_zero(&c.zt, &rest)?;
    Ok(GeodesicInfo { geodesic: false, pre_geodesic: pre, kappa: pre.then(|| kappa.to_expr()) })
}

/// Geodesic test for a lightlike field.
pub fn is_geodesic_field(g: &Metric, v: &VectorField, zt: &ZeroTest) -> Result<GeodesicInfo> {
    geodesic_info(&build_congruence(g, v, zt)?)
}

/// Frobenius test: `g([W_1, W_2], V)` vanishes on pairs from `{V, E_a}`.
pub fn is_twist_free(c: &NullCongruence) -> Result<bool> {
    let frame = c.perp_frame();
    for a in 0..frame.len() {
        for b in (a + 1)..frame.len() {
            let br = lie_bracket(frame[a], frame[b])?;
            if !c.zt.is_zero_canon(&inner(&c.metric, &br, &c.v)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `α` evaluated on the frame.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameAlpha {
    pub on_v: Expr,
    pub on_screen: Vec<Expr>,
    pub on_u: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OpticalData {
    pub b: SquareMatrix,
    pub gram: SquareMatrix,
    pub expansion: Canon,
    pub shear: SquareMatrix,
    pub twist: SquareMatrix,
    pub alpha: FrameAlpha,
    pub shear_free: bool,
    pub divergence_free: bool,
    pub twist_vanishes: bool,
    /// `B + Bᵀ = (L_V g)(E, E)` entrywise.
    pub cross_identity: bool,
    /// Set when `V` is not geodesic; the scalars then depend on the screen.
    pub advisory: bool,
}

pub fn optical_scalars(c: &NullCongruence) -> Result<OpticalData> {
    let k = c.screen.len();
    let gram = c.gram()?;
    let nabla_e: Vec<VectorField> = c.screen.iter().map(|e| c.nabla(e, &c.v)).collect::<Result<_>>()?;
    let mut b = SquareMatrix::zeros(k);
    for a in 0..k {
        for bb in 0..k {
            b.set(a, bb, inner(&c.metric, &nabla_e[a], &c.screen[bb])?);
        }
    }
    let expansion = if k == 0 {
        Canon::zero()
    } else {
        let gi = gram.inverse()?;
        let mut t = Canon::zero();
        for a in 0..k {
            for bb in 0..k {
                t = t.add(&gi.get(a, bb).mul(b.get(bb, a)));
            }
        }
        t
    };
    let mut shear = SquareMatrix::zeros(k);
    let mut twist = SquareMatrix::zeros(k);
    let half = Canon::rational(1, 2);
    let per_dim = if k == 0 { Canon::zero() } else { expansion.mul(&Canon::rational(1, k as i64)) };
    for a in 0..k {
        for bb in 0..k {
            let (x, y) = (b.get(a, bb), b.get(bb, a));
            twist.set(a, bb, x.sub(y).mul(&half));
            shear.set(a, bb, x.add(y).mul(&half).sub(&per_dim.mul(gram.get(a, bb))));
        }
    }
    let lvg = lie_derivative_metric(&c.metric, &c.v)?;
    let mut cross = true;
    for a in 0..k {
        for bb in a..k {
            let lhs = b.get(a, bb).add(b.get(bb, a));
            let rhs = pair(&lvg, &c.screen[a], &c.screen[bb]);
            if !c.zt.is_zero_canon(&lhs.sub(&rhs))? {
                cross = false;
            }
        }
    }
    let matrix_zero = |m: &SquareMatrix| -> Result<bool> {
        for a in 0..k {
            for bb in 0..k {
                if !c.zt.is_zero_canon(m.get(a, bb))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let geo = geodesic_info(c)?;
    Ok(OpticalData {
        shear_free: matrix_zero(&shear)?,
        divergence_free: c.zt.is_zero_canon(&expansion)?,
        twist_vanishes: matrix_zero(&twist)?,
        cross_identity: cross,
        advisory: !geo.geodesic,
        alpha: frame_alpha(c)?,
        b,
        gram,
        expansion,
        shear,
        twist,
    })
}

/// `T(X, Y)` for a symmetric matrix of components.
fn pair(t: &SquareMatrix, x: &VectorField, y: &VectorField) -> Canon {
    let n = t.dim();
    let mut acc = Canon::zero();
    for i in 0..n {
        if x.comp(i).is_zero() {
            continue;
        }
        for j in 0..n {
            if !y.comp(j).is_zero() && !t.get(i, j).is_zero() {
                acc = acc.add(&x.comp(i).mul(t.get(i, j)).mul(y.comp(j)));
            }
        }
    }
    acc
}

fn frame_alpha(c: &NullCongruence) -> Result<FrameAlpha> {
    let a = |w: &VectorField| -> Result<Expr> { Ok(inner(&c.metric, &c.nabla(w, &c.v)?, &c.u)?.to_expr()) };
    Ok(FrameAlpha {
        on_v: a(&c.v)?,
        on_screen: c.screen.iter().map(a).collect::<Result<_>>()?,
        on_u: a(&c.u)?,
    })
}

/// Item (2): `L_V g` vanishes on `V^⊥`. Requires a twist-free congruence.
pub fn tg_item2(c: &NullCongruence) -> Result<bool> {
    if !is_twist_free(c)? {
        return Err(CongruenceError::RequiresIntegrability);
    }
    let lvg = lie_derivative_metric(&c.metric, &c.v)?;
    let frame = c.perp_frame();
    for a in 0..frame.len() {
        for b in a..frame.len() {
            if !c.zt.is_zero_canon(&pair(&lvg, frame[a], frame[b]))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Item (4): `∇_W V = α(W) V` for `W` in `{V, E_a}`, with `α(W) = g(∇_W V, U)`.
pub fn tg_item4(c: &NullCongruence) -> Result<(bool, FrameAlpha)> {
    let mut ok = true;
    for w in c.perp_frame() {
        let d = c.nabla(w, &c.v)?;
        let alpha = inner(&c.metric, &d, &c.u)?;
        if !field_zero(&c.zt, &d.sub(&c.v.scale(&alpha))?)? {
            ok = false;
            break;
        }
    }
    Ok((ok, frame_alpha(c)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceReport {
    pub lightlike: bool,
    pub geodesic: bool,
    pub pre_geodesic: bool,
    pub kappa: Option<Expr>,
    pub twist_free: bool,
    pub shear_free: bool,
    pub divergence_free: bool,
    /// `None` when the twist test fails and item (2) is not defined.
    pub tg_item2: Option<bool>,
    pub tg_item4: bool,
    pub locally_kundt: bool,
    pub kundt: bool,
    pub alpha: Option<FrameAlpha>,
    /// Items (2) and (4) agree whenever both are defined.
    pub lemma_consistent: bool,
    pub notes: Vec<String>,
}

pub fn analyze_congruence(c: &NullCongruence) -> Result<CongruenceReport> {
    let geo = geodesic_info(c)?;
    let twist_free = is_twist_free(c)?;
    let optical = optical_scalars(c)?;
    let item2 = match tg_item2(c) {
        Ok(b) => Some(b),
        Err(CongruenceError::RequiresIntegrability) => None,
        Err(e) => return Err(e),
    };
    let (item4, alpha) = tg_item4(c)?;
    let mut notes = alloc::vec![String::from("non-singularity of V is certified at the base point only")];
    if optical.advisory {
        notes.push("V is not geodesic; optical scalars are advisory".into());
    }
    if twist_free != optical.twist_vanishes {
        notes.push("Frobenius test and optical twist disagree".into());
    }
    let lemma_consistent = item2.is_none_or(|b| b == item4);
    let locally_kundt = twist_free && item4;
    Ok(CongruenceReport {
        lightlike: true,
        geodesic: geo.geodesic,
        pre_geodesic: geo.pre_geodesic,
        kappa: geo.kappa,
        twist_free,
        shear_free: optical.shear_free,
        divergence_free: optical.divergence_free,
        tg_item2: item2,
        tg_item4: item4,
        locally_kundt,
        kundt: geo.geodesic && locally_kundt,
        alpha: item4.then_some(alpha),
        lemma_consistent,
        notes,
    })
}

/// Build the congruence and run every check.
pub fn analyze(g: &Metric, v: &VectorField, zt: &ZeroTest) -> Result<CongruenceReport> {
    analyze_congruence(&build_congruence(g, v, zt)?)
}

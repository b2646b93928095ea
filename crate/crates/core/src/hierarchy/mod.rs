//! Adapted Kundt coordinates and the class hierarchy
//! `CahenWallach ⊂ PlaneWave ⊂ PpWave ⊂ Brinkmann ⊂ WeaklyBrinkmann ⊂ KundtForm`,
//! with Siklos metrics as a separate branch of `KundtForm`.
//!
//! The adapted form is
//! `g = 2 du dv + H du² + Σ W_i du dx^i + Σ h_ij dx^i dx^j`, where `du dx^i` is
//! the symmetric product, so `g_{u x_i} = W_i / 2`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::congruence::{analyze, CongruenceError};
use crate::expr::{Canon, Expr, Func, Symbol, ZeroTest};
use crate::geometry::linalg::{self, SquareMatrix};
use crate::geometry::{christoffel, Constraint, GeometryError, Metric, VectorField};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum HierarchyError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("invalid coordinate roles: {0}")]
    BadRoles(String),
    #[error("metric is not in adapted form: {}", .0.join("; "))]
    NotAdapted(Vec<String>),
    #[error("the leaf distribution is not totally geodesic: {0}")]
    NotTotallyGeodesic(String),
    #[error("degenerate frame data: {0}")]
    FrameDegenerate(String),
    #[error("assembled metric failed verification: {0}")]
    PostVerificationFailed(String),
}

impl From<crate::expr::ExprError> for HierarchyError {
    fn from(e: crate::expr::ExprError) -> Self {
        HierarchyError::Geometry(GeometryError::Expr(e))
    }
}

pub type Result<T> = core::result::Result<T, HierarchyError>;

/// Which chart coordinates play the roles `u`, `v` and `x^1..x^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roles {
    pub u: usize,
    pub v: usize,
    pub transverse: Vec<usize>,
}

impl Roles {
    pub fn by_name(g: &Metric, u: &str, v: &str, transverse: &[&str]) -> Result<Roles> {
        let chart = g.chart();
        let find = |n: &str| chart.index_of(n).ok_or_else(|| HierarchyError::BadRoles(format!("unknown coordinate '{}'", n)));
        let roles = Roles { u: find(u)?, v: find(v)?, transverse: transverse.iter().map(|n| find(n)).collect::<Result<_>>()? };
        roles.validate(g.dim())?;
        Ok(roles)
    }

    /// `u, v` first, then the remaining coordinates in chart order.
    pub fn leading(g: &Metric) -> Roles {
        Roles { u: 0, v: 1, transverse: (2..g.dim()).collect() }
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        let mut seen = alloc::vec![false; d];
        for i in core::iter::once(self.u).chain(core::iter::once(self.v)).chain(self.transverse.iter().copied()) {
            if i >= d || seen[i] {
                return Err(HierarchyError::BadRoles("roles must name every coordinate exactly once".into()));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(HierarchyError::BadRoles("roles must name every coordinate exactly once".into()));
        }
        Ok(())
    }
}

/// Data `(H, W, h)` of a metric in adapted form.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedKundtForm {
    pub metric: Metric,
    pub roles: Roles,
    pub h_fn: Canon,
    pub w: Vec<Canon>,
    pub h: SquareMatrix,
}

fn sym(g: &Metric, i: usize) -> &Symbol {
    g.chart().coord(i)
}

pub fn detect_kundt_form(g: &Metric, roles: &Roles, zt: &ZeroTest) -> Result<AdaptedKundtForm> {
    roles.validate(g.dim())?;
    let (u, v) = (roles.u, roles.v);
    let vs = sym(g, v).clone();
    let mut failures = Vec::new();
    if !zt.is_zero_canon(g.get(v, v))? {
        failures.push(format!("g({0},{0}) ≠ 0", vs));
    }
    if !zt.is_zero_canon(&g.get(u, v).sub(&Canon::one()))? {
        failures.push(format!("g({},{}) ≠ 1", sym(g, u), vs));
    }
    for &x in &roles.transverse {
        if !zt.is_zero_canon(g.get(v, x))? {
            failures.push(format!("g({},{}) ≠ 0", vs, sym(g, x)));
        }
    }
    let n = roles.transverse.len();
    let mut h = SquareMatrix::zeros(n);
    let mut h_depends_on_v = false;
    for (a, &xa) in roles.transverse.iter().enumerate() {
        for (b, &xb) in roles.transverse.iter().enumerate() {
            let e = g.get(xa, xb).clone();
            if b >= a && !h_depends_on_v && !zt.is_zero_canon(&e.diff(&vs))? {
                h_depends_on_v = true;
            }
            h.set(a, b, e);
        }
    }
    if h_depends_on_v {
        failures.push(format!("∂_{} h ≠ 0", vs));
    }
    if n > 0 {
        let at = h.eval(&g.chart().base_point())?;
        if linalg::symmetric_eigenvalues(&at, n).iter().any(|x| !(*x > 1e-12)) {
            failures.push("h is not positive definite at the base point".into());
        }
    }
    if !failures.is_empty() {
        return Err(HierarchyError::NotAdapted(failures));
    }
    let two = Canon::int(2);
    Ok(AdaptedKundtForm {
        metric: g.clone(),
        roles: roles.clone(),
        h_fn: g.get(u, u).clone(),
        w: roles.transverse.iter().map(|&x| g.get(u, x).mul(&two)).collect(),
        h,
    })
}

/// Assemble the adapted-form metric from `(H, W, h)`.
pub fn assemble_adapted(chart: crate::geometry::Chart, roles: &Roles, h_fn: &Canon, w: &[Canon], h: &SquareMatrix) -> Result<Metric> {
    let d = chart.dim();
    roles.validate(d)?;
    let mut m = SquareMatrix::zeros(d);
    let half = Canon::rational(1, 2);
    m.set(roles.u, roles.v, Canon::one());
    m.set(roles.v, roles.u, Canon::one());
    m.set(roles.u, roles.u, h_fn.clone());
    for (a, &xa) in roles.transverse.iter().enumerate() {
        let wa = w[a].mul(&half);
        m.set(roles.u, xa, wa.clone());
        m.set(xa, roles.u, wa);
        for (b, &xb) in roles.transverse.iter().enumerate() {
            m.set(xa, xb, h.get(a, b).clone());
        }
    }
    Ok(Metric::from_canon(chart, m)?)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpaceClass {
    NotAdapted,
    KundtForm,
    WeaklyBrinkmann,
    Brinkmann,
    PpWave,
    PlaneWave { s: SquareMatrix },
    CahenWallach { s: SquareMatrix },
    Siklos { h: Expr, conformal_factor: Expr },
}

impl SpaceClass {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceClass::NotAdapted => "NotAdapted",
            SpaceClass::KundtForm => "KundtForm",
            SpaceClass::WeaklyBrinkmann => "WeaklyBrinkmann",
            SpaceClass::Brinkmann => "Brinkmann",
            SpaceClass::PpWave => "PpWave",
            SpaceClass::PlaneWave { .. } => "PlaneWave",
            SpaceClass::CahenWallach { .. } => "CahenWallach",
            SpaceClass::Siklos { .. } => "Siklos",
        }
    }
}

/// One boolean per class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Predicates {
    pub kundt_form: bool,
    pub weakly_brinkmann: bool,
    pub brinkmann: bool,
    pub pp_wave: bool,
    pub plane_wave: bool,
    pub cahen_wallach: bool,
    pub siklos: bool,
}

impl Predicates {
    pub fn as_list(&self) -> [(&'static str, bool); 7] {
        [
            ("KundtForm", self.kundt_form),
            ("WeaklyBrinkmann", self.weakly_brinkmann),
            ("Brinkmann", self.brinkmann),
            ("PpWave", self.pp_wave),
            ("PlaneWave", self.plane_wave),
            ("CahenWallach", self.cahen_wallach),
            ("Siklos", self.siklos),
        ]
    }

    /// The inclusion arrows of the hierarchy.
    pub fn is_monotone(&self) -> bool {
        let imp = |a: bool, b: bool| !a || b;
        imp(self.cahen_wallach, self.plane_wave)
            && imp(self.plane_wave, self.pp_wave)
            && imp(self.pp_wave, self.brinkmann)
            && imp(self.brinkmann, self.weakly_brinkmann)
            && imp(self.weakly_brinkmann, self.kundt_form)
            && imp(self.siklos, self.kundt_form)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub predicates: Predicates,
    pub most_specific: SpaceClass,
    /// `S(u) = ½ Hess_x H` whenever the form is a pp-wave.
    pub s: Option<SquareMatrix>,
    pub h_fn: Option<Expr>,
    pub leaf_flat: Option<bool>,
    pub notes: Vec<String>,
}

fn substitute_zero(c: &Canon, syms: &[Symbol]) -> Result<Canon> {
    let mut e = c.to_expr();
    for s in syms {
        e = e.substitute(s, &Expr::zero());
    }
    Ok(Canon::from_expr(&e)?)
}

pub fn classify(f: &AdaptedKundtForm, zt: &ZeroTest) -> Result<ClassificationReport> {
    let g = &f.metric;
    let vs = sym(g, f.roles.v).clone();
    let us = sym(g, f.roles.u).clone();
    let xs: Vec<Symbol> = f.roles.transverse.iter().map(|&i| sym(g, i).clone()).collect();
    let n = xs.len();
    let mut p = Predicates { kundt_form: true, ..Predicates::default() };
    let mut notes = Vec::new();

    p.weakly_brinkmann = true;
    for w in &f.w {
        if !zt.is_zero_canon(&w.diff(&vs))? {
            p.weakly_brinkmann = false;
        }
    }
    p.brinkmann = p.weakly_brinkmann && zt.is_zero_canon(&f.h_fn.diff(&vs))?;
    let mut h_is_identity = true;
    for a in 0..n {
        for b in 0..n {
            let target = if a == b { Canon::one() } else { Canon::zero() };
            if !zt.is_zero_canon(&f.h.get(a, b).sub(&target))? {
                h_is_identity = false;
            }
        }
    }
    let mut w_zero = true;
    for w in &f.w {
        if !zt.is_zero_canon(w)? {
            w_zero = false;
        }
    }
    p.pp_wave = p.brinkmann && w_zero && h_is_identity;

    let mut s = None;
    if p.pp_wave {
        let half = Canon::rational(1, 2);
        let mut sm = SquareMatrix::zeros(n);
        for a in 0..n {
            let da = f.h_fn.diff(&xs[a]);
            for b in a..n {
                let e = da.diff(&xs[b]).mul(&half);
                sm.set(b, a, e.clone());
                sm.set(a, b, e);
            }
        }
        let mut cubic_free = true;
        'outer: for a in 0..n {
            for b in a..n {
                for c in b..n {
                    if !zt.is_zero_canon(&sm.get(a, b).diff(&xs[c]))? {
                        cubic_free = false;
                        break 'outer;
                    }
                }
            }
        }
        let mut affine_free = zt.is_zero_canon(&substitute_zero(&f.h_fn, &xs)?)?;
        for x in &xs {
            if !affine_free {
                break;
            }
            affine_free = zt.is_zero_canon(&substitute_zero(&f.h_fn.diff(x), &xs)?)?;
        }
        if cubic_free && !affine_free {
            notes.push("affine part is removable by a coordinate change, not performed here".into());
        }
        p.plane_wave = cubic_free && affine_free;
        if p.plane_wave {
            let mut constant = true;
            for a in 0..n {
                for b in a..n {
                    if !zt.is_zero_canon(&sm.get(a, b).diff(&us))? {
                        constant = false;
                    }
                }
            }
            p.cahen_wallach = constant && n > 0 && !zt.is_zero_canon(&sm.determinant())?;
        }
        s = Some(sm);
    }
    let most_specific = if p.cahen_wallach {
        SpaceClass::CahenWallach { s: s.clone().expect("plane waves carry S") }
    } else if p.plane_wave {
        SpaceClass::PlaneWave { s: s.clone().expect("plane waves carry S") }
    } else if p.pp_wave {
        SpaceClass::PpWave
    } else if p.brinkmann {
        SpaceClass::Brinkmann
    } else if p.weakly_brinkmann {
        SpaceClass::WeaklyBrinkmann
    } else {
        SpaceClass::KundtForm
    };
    Ok(ClassificationReport { predicates: p, most_specific, s, h_fn: Some(f.h_fn.to_expr()), leaf_flat: None, notes })
}

/// Result of the Siklos test on `(x^n)² g`.
#[derive(Clone, Debug, PartialEq)]
pub struct SiklosReport {
    pub siklos: bool,
    pub h_fn: Option<Expr>,
    pub reasons: Vec<String>,
}

pub fn detect_siklos(g: &Metric, roles: &Roles, zt: &ZeroTest) -> Result<SiklosReport> {
    roles.validate(g.dim())?;
    let xn = *roles
        .transverse
        .last()
        .ok_or_else(|| HierarchyError::BadRoles("a Siklos test needs a transverse coordinate".into()))?;
    if g.chart().coords()[xn].constraint != Constraint::Positive {
        return Err(HierarchyError::BadRoles(format!("{} must be constrained positive", sym(g, xn))));
    }
    let factor = Canon::coord(sym(g, xn)).pow(2);
    let d = g.dim();
    let mut m = SquareMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, g.get(i, j).mul(&factor));
        }
    }
    let rescaled = Metric::from_canon(g.chart().clone(), m)?;
    let form = match detect_kundt_form(&rescaled, roles, zt) {
        Ok(f) => f,
        Err(HierarchyError::NotAdapted(reasons)) => return Ok(SiklosReport { siklos: false, h_fn: None, reasons }),
        Err(e) => return Err(e),
    };
    let c = classify(&form, zt)?;
    if c.predicates.pp_wave {
        Ok(SiklosReport { siklos: true, h_fn: Some(form.h_fn.to_expr()), reasons: Vec::new() })
    } else {
        Ok(SiklosReport { siklos: false, h_fn: None, reasons: alloc::vec!["rescaled metric is not a pp-wave".into()] })
    }
}

/// Curvature of the connection induced on the leaves `u = const`, over the
/// leaf coordinates `(v, x^1, …)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafCurvature {
    pub coords: Vec<Symbol>,
    m: usize,
    data: Vec<Canon>,
    pub flat: bool,
}

impl LeafCurvature {
    /// `R^l_{kij}` in leaf indices.
    pub fn get(&self, l: usize, k: usize, i: usize, j: usize) -> &Canon {
        &self.data[((l * self.m + k) * self.m + i) * self.m + j]
    }

    /// Largest absolute component at a point.
    pub fn max_abs_at(&self, g: &Metric, values: &[f64]) -> Result<f64> {
        let p = g.chart().point(values);
        let mut best = 0.0f64;
        for c in &self.data {
            best = best.max(libm::fabs(c.eval(&p)?));
        }
        Ok(best)
    }
}

pub fn leaf_curvature(g: &Metric, roles: &Roles, zt: &ZeroTest) -> Result<LeafCurvature> {
    roles.validate(g.dim())?;
    let gamma = christoffel(g)?;
    let leaf: Vec<usize> = core::iter::once(roles.v).chain(roles.transverse.iter().copied()).collect();
    let m = leaf.len();
    for &a in &leaf {
        for &b in &leaf {
            if b < a {
                continue;
            }
            if !zt.is_zero_canon(gamma.get(roles.u, a, b))? {
                return Err(HierarchyError::NotTotallyGeodesic(format!(
                    "∇_{} ∂_{} has a ∂_{} component",
                    sym(g, a),
                    sym(g, b),
                    sym(g, roles.u)
                )));
            }
        }
    }
    let gm = |l: usize, i: usize, j: usize| gamma.get(leaf[l], leaf[i], leaf[j]);
    let mut data = alloc::vec![Canon::zero(); m * m * m * m];
    let idx = |l: usize, k: usize, i: usize, j: usize| ((l * m + k) * m + i) * m + j;
    for l in 0..m {
        for k in 0..m {
            for i in 0..m {
                for j in (i + 1)..m {
                    let mut acc = gm(l, j, k).diff(sym(g, leaf[i])).sub(&gm(l, i, k).diff(sym(g, leaf[j])));
                    for q in 0..m {
                        let (a, b) = (gm(l, i, q), gm(q, j, k));
                        if !a.is_zero() && !b.is_zero() {
                            acc = acc.add(&a.mul(b));
                        }
                        let (c, d) = (gm(l, j, q), gm(q, i, k));
                        if !c.is_zero() && !d.is_zero() {
                            acc = acc.sub(&c.mul(d));
                        }
                    }
                    data[idx(l, k, j, i)] = acc.neg();
                    data[idx(l, k, i, j)] = acc;
                }
            }
        }
    }
    let mut flat = true;
    for c in &data {
        if !zt.is_zero_canon(c)? {
            flat = false;
            break;
        }
    }
    Ok(LeafCurvature { coords: leaf.iter().map(|&i| sym(g, i).clone()).collect(), m, data, flat })
}

/// Direct detection, classification, the Siklos test and leaf flatness in one
/// pass. Siklos metrics are Kundt by conformal invariance even though they are
/// not presented with `g_uv = 1`.
pub fn classify_metric(g: &Metric, roles: &Roles, zt: &ZeroTest) -> Result<ClassificationReport> {
    let direct = detect_kundt_form(g, roles, zt);
    let positive_last = roles
        .transverse
        .last()
        .is_some_and(|&x| g.chart().coords()[x].constraint == Constraint::Positive);
    let siklos = if positive_last { Some(detect_siklos(g, roles, zt)?) } else { None };
    let mut report = match (&direct, &siklos) {
        (Ok(f), _) => classify(f, zt)?,
        (Err(HierarchyError::NotAdapted(_)), Some(sk)) if sk.siklos => {
            let h = sk.h_fn.clone().unwrap_or_else(Expr::zero);
            let xn = sym(g, *roles.transverse.last().expect("checked above"));
            ClassificationReport {
                predicates: Predicates { kundt_form: true, siklos: true, ..Predicates::default() },
                most_specific: SpaceClass::Siklos { h: h.clone(), conformal_factor: Expr::Coord(xn.clone()).pow(-2) },
                s: None,
                h_fn: Some(h),
                leaf_flat: None,
                notes: alloc::vec!["adapted form reached after rescaling by the square of the last transverse coordinate".into()],
            }
        }
        (Err(e), _) => return Err(e.clone()),
    };
    report.leaf_flat = match leaf_curvature(g, roles, zt) {
        Ok(l) => Some(l.flat),
        Err(HierarchyError::NotTotallyGeodesic(msg)) => {
            report.notes.push(msg);
            None
        }
        Err(e) => return Err(e),
    };
    Ok(report)
}

/// `e^σ g`, with a warning when `σ` depends on `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rescaled {
    pub metric: Metric,
    pub v_dependent: bool,
}

pub fn conformal_rescale(g: &Metric, sigma: &Expr, v: usize, zt: &ZeroTest) -> Result<Rescaled> {
    let s = Canon::from_expr(sigma)?;
    let factor = Canon::func(Func::Exp, s.clone());
    let d = g.dim();
    let mut m = SquareMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, g.get(i, j).mul(&factor));
        }
    }
    let v_dependent = !zt.is_zero_canon(&s.diff(sym(g, v)))?;
    Ok(Rescaled { metric: Metric::from_canon(g.chart().clone(), m)?, v_dependent })
}

/// Assemble `g` from a null field `V`, screen fields `E_a`, a null transversal
/// `Z`, and a degenerate form `h` (coordinate components) on `span(V, E)`:
/// `g|_{span(V,E)} = h`, `g(E_a, Z) = 0`, `g(V, Z) = 1`, `g(Z, Z) = 0`.
/// The result is checked to be locally Kundt with respect to `V`.
pub fn build_kundt_metric(
    v: &VectorField,
    e: &[VectorField],
    z: &VectorField,
    h: &SquareMatrix,
    zt: &ZeroTest,
) -> Result<Metric> {
    let chart = v.chart().clone();
    let d = chart.dim();
    if e.len() + 2 != d || h.dim() != d {
        return Err(HierarchyError::FrameDegenerate(format!("need {} screen fields and a {}×{} form", d - 2, d, d)));
    }
    let frame: Vec<&VectorField> = core::iter::once(v).chain(e.iter()).chain(core::iter::once(z)).collect();
    let mut p = SquareMatrix::zeros(d);
    for (col, f) in frame.iter().enumerate() {
        for row in 0..d {
            p.set(row, col, f.comp(row).clone());
        }
    }
    let base = chart.base_point();
    if !(libm::fabs(linalg::det_f64(&p.eval(&base)?, d)) > 1e-12) {
        return Err(HierarchyError::FrameDegenerate("V, E, Z are linearly dependent at the base point".into()));
    }
    let form = |x: &VectorField, y: &VectorField| -> Canon {
        let mut acc = Canon::zero();
        for i in 0..d {
            for j in 0..d {
                if !x.comp(i).is_zero() && !y.comp(j).is_zero() && !h.get(i, j).is_zero() {
                    acc = acc.add(&x.comp(i).mul(h.get(i, j)).mul(y.comp(j)));
                }
            }
        }
        acc
    };
    if !zt.is_zero_canon(&form(v, v))? {
        return Err(HierarchyError::FrameDegenerate("h(V, V) ≠ 0".into()));
    }
    for (a, ea) in e.iter().enumerate() {
        if !zt.is_zero_canon(&form(v, ea))? {
            return Err(HierarchyError::FrameDegenerate(format!("h(V, E_{}) ≠ 0", a + 1)));
        }
    }
    let k = e.len();
    let mut gram = SquareMatrix::zeros(d);
    for a in 0..k {
        for b in 0..k {
            gram.set(a + 1, b + 1, form(&e[a], &e[b]));
        }
    }
    gram.set(0, d - 1, Canon::one());
    gram.set(d - 1, 0, Canon::one());
    if k > 0 {
        let mut screen = SquareMatrix::zeros(k);
        for a in 0..k {
            for b in 0..k {
                screen.set(a, b, gram.get(a + 1, b + 1).clone());
            }
        }
        let at = screen.eval(&base)?;
        if linalg::symmetric_eigenvalues(&at, k).iter().any(|x| !(*x > 1e-12)) {
            return Err(HierarchyError::FrameDegenerate("radical of h is larger than ℝV".into()));
        }
    }
    let pinv = p.inverse()?;
    let g = pinv.transpose().mul(&gram).mul(&pinv);
    let metric = Metric::from_canon(chart, g)?;
    let v_on = VectorField::from_canon(metric.chart_arc().clone(), v.comps().to_vec())?;
    let report = analyze(&metric, &v_on, zt)?;
    if !report.locally_kundt {
        return Err(HierarchyError::PostVerificationFailed(format!(
            "twist_free = {}, tg_item4 = {}",
            report.twist_free, report.tg_item4
        )));
    }
    Ok(metric)
}

#[cfg(test)]
mod tests;

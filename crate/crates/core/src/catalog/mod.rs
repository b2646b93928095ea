//! Named example spaces and Lie algebras, each with a designated null field
//! and the outcomes the analysis is expected to reproduce.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Signed;
use thiserror::Error;

use crate::congruence::{analyze, analyze_congruence, build_congruence, CongruenceReport};
use crate::expr::{parse, rational_to_string, Canon, SymbolTable, ZeroTest};
use crate::geometry::linalg::SquareMatrix;
use crate::geometry::{Chart, Coordinate, Metric, VectorField};
use crate::hierarchy::{build_kundt_metric, classify_metric, conformal_rescale, leaf_curvature, ClassificationReport, Roles, SpaceClass};
use crate::liealg::{self, AlgVector, InvariantMetric, LieAlgebra, Q};

pub mod random;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),
    #[error("bad parameter '{param}' for {entry}: {reason}")]
    BadParameter { entry: String, param: String, reason: String },
}

pub type Result<T> = core::result::Result<T, CatalogError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
}

const fn p(name: &'static str, default: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec { name, default, doc }
}

pub const ROSTER: &[EntryInfo] = &[
    EntryInfo {
        name: "minkowski",
        summary: "flat space 2du dv + Σ dx², V = ∂_v",
        params: &[p("dim", "4", "dimension, 2 to 6")],
    },
    EntryInfo {
        name: "pp_wave",
        summary: "2du dv + H(u,x) du² + dx1² + dx2²",
        params: &[p("H", "x1^3 + u*x2^2", "profile, independent of v")],
    },
    EntryInfo {
        name: "plane_wave",
        summary: "pp-wave with H = xᵀ S(u) x",
        params: &[p("S", "[[u^2, 1], [1, -1]]", "symmetric 2×2 matrix in u")],
    },
    EntryInfo {
        name: "cahen_wallach",
        summary: "plane wave with constant non-degenerate S",
        params: &[p("S", "[[1, 0], [0, 1]]", "symmetric rational 2×2 matrix")],
    },
    EntryInfo {
        name: "siklos",
        summary: "x2⁻² (2du dv + H du² + dx1² + dx2²), x2 > 0",
        params: &[p("H", "x1", "profile in u, x1, x2")],
    },
    EntryInfo {
        name: "ads_poincare",
        summary: "anti-de Sitter in Poincaré coordinates",
        params: &[p("dim", "4", "dimension, 3 to 6")],
    },
    EntryInfo {
        name: "kundt_generic",
        summary: "2du dv + H du² + W_i du dx^i + h, with H and W depending on v",
        params: &[
            p("H", "v^2*x1 + u", "any function"),
            p("W", "v*x2, x1", "two functions"),
            p("h", "[[1, 0], [0, 1 + x1^2]]", "positive 2×2 matrix independent of v"),
        ],
    },
    EntryInfo {
        name: "suspension_local",
        summary: "local model of a suspension: V = λ^t ∂_x, E = ∂_t, Z = ∂_y, h = dt²",
        params: &[p("lambda", "2", "positive rational")],
    },
    EntryInfo {
        name: "conformal",
        summary: "e^σ times another entry",
        params: &[p("base", "pp_wave", "geometric entry with defaults"), p("sigma", "u*x1", "exponent, independent of v")],
    },
    EntryInfo {
        name: "twisting_minkowski",
        summary: "Minkowski with the twisting null field ∂_t + cos z ∂_x + sin z ∂_y",
        params: &[],
    },
    EntryInfo {
        name: "heis3",
        summary: "Heisenberg algebra [X,Y] = Z with ⟨X,Z⟩ = ⟨Y,Y⟩ = 1, V = Z",
        params: &[],
    },
    EntryInfo {
        name: "oscillator",
        summary: "oscillator algebra [X,Y] = Z, [T,X] = Y, [T,Y] = -X, V = Z",
        params: &[],
    },
    EntryInfo {
        name: "r_ltimes_heis",
        summary: "ℝ ⋉_A heis3 with ⟨T,Z⟩ = ⟨X,X⟩ = ⟨Y,Y⟩ = 1, V = Z",
        params: &[p("A", "[[1, 0, 0], [0, 0, 0], [0, 0, 1]]", "derivation of heis3 in the basis X, Y, Z")],
    },
    EntryInfo {
        name: "sl2_det",
        summary: "sl(2,ℝ) with ⟨A,A⟩ = -det A, V = F",
        params: &[],
    },
];

pub fn info(name: &str) -> Result<&'static EntryInfo> {
    ROSTER.iter().find(|e| e.name == name).ok_or_else(|| CatalogError::UnknownEntry(name.into()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometricFixture {
    pub metric: Metric,
    pub field: VectorField,
    pub roles: Option<Roles>,
    /// Screen frame to use instead of the automatic one.
    pub screen: Option<Vec<VectorField>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicFixture {
    pub algebra: LieAlgebra,
    pub metric: InvariantMetric,
    pub v: AlgVector,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Fixture {
    Geometric(GeometricFixture),
    Algebraic(AlgebraicFixture),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expect {
    Kundt(bool),
    LocallyKundt(bool),
    TwistFree(bool),
    Geodesic(bool),
    /// Most specific class, by name.
    Class(&'static str),
    Predicate(&'static str, bool),
    HZero,
    S(SquareMatrix),
    LeafFlat(bool),
    LeafCurvedAtBase,
    AlgebraicKundt(bool),
    /// Jacobi, torsion and metric compatibility hold exactly.
    ExactIdentities,
}

impl Expect {
    pub fn label(&self) -> String {
        match self {
            Expect::Kundt(_) => "kundt".into(),
            Expect::LocallyKundt(_) => "locally_kundt".into(),
            Expect::TwistFree(_) => "twist_free".into(),
            Expect::Geodesic(_) => "geodesic".into(),
            Expect::Class(_) => "class".into(),
            Expect::Predicate(n, _) => format!("predicate {}", n),
            Expect::HZero => "H".into(),
            Expect::S(_) => "S".into(),
            Expect::LeafFlat(_) => "leaf_flat".into(),
            Expect::LeafCurvedAtBase => "leaf curvature at base".into(),
            Expect::AlgebraicKundt(_) => "algebraic_kundt".into(),
            Expect::ExactIdentities => "exact identities".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: &'static str,
    /// Resolved parameters in schema order.
    pub params: Vec<(String, String)>,
    pub fixture: Fixture,
    pub expect: Vec<Expect>,
}

fn bad(entry: &str, param: &str, reason: impl ToString) -> CatalogError {
    CatalogError::BadParameter { entry: entry.into(), param: param.into(), reason: reason.to_string() }
}

/// Build an entry, overriding defaults by name.
pub fn get(name: &str, overrides: &[(&str, &str)]) -> Result<Entry> {
    let spec = info(name)?;
    for (k, _) in overrides {
        if !spec.params.iter().any(|s| s.name == *k) {
            return Err(bad(name, k, "no such parameter"));
        }
    }
    let params: Vec<(String, String)> = spec
        .params
        .iter()
        .map(|s| {
            let v = overrides.iter().rev().find(|(k, _)| *k == s.name).map_or(s.default, |(_, v)| *v);
            (s.name.into(), v.trim().into())
        })
        .collect();
    let b = Builder { entry: spec.name, params: &params };
    let (fixture, expect) = match spec.name {
        "minkowski" => b.minkowski()?,
        "pp_wave" => b.pp_wave()?,
        "plane_wave" => b.plane_wave()?,
        "cahen_wallach" => b.cahen_wallach()?,
        "siklos" => b.siklos()?,
        "ads_poincare" => b.ads_poincare()?,
        "kundt_generic" => b.kundt_generic()?,
        "suspension_local" => b.suspension()?,
        "conformal" => b.conformal()?,
        "twisting_minkowski" => b.twisting()?,
        "heis3" => b.heis3()?,
        "oscillator" => b.oscillator()?,
        "r_ltimes_heis" => b.r_ltimes_heis()?,
        "sl2_det" => b.sl2()?,
        other => return Err(CatalogError::UnknownEntry(other.into())),
    };
    Ok(Entry { name: spec.name, params, fixture, expect })
}

struct Builder<'a> {
    entry: &'static str,
    params: &'a [(String, String)],
}

impl Builder<'_> {
    fn raw(&self, name: &str) -> &str {
        &self.params.iter().find(|(k, _)| k == name).expect("schema parameter").1
    }

    fn err(&self, param: &str, reason: impl ToString) -> CatalogError {
        bad(self.entry, param, reason)
    }

    fn int(&self, name: &str, lo: usize, hi: usize) -> Result<usize> {
        let n: usize = self.raw(name).parse().map_err(|_| self.err(name, "expected an integer"))?;
        if !(lo..=hi).contains(&n) {
            return Err(self.err(name, format!("must lie in {}..={}", lo, hi)));
        }
        Ok(n)
    }

    fn expr(&self, name: &str, text: &str, table: &SymbolTable) -> Result<Canon> {
        let e = parse(text, table).map_err(|e| self.err(name, e))?;
        Canon::from_expr(&e).map_err(|e| self.err(name, e))
    }

    fn rational(&self, name: &str, text: &str) -> Result<Q> {
        self.expr(name, text, &SymbolTable::new(&[], &[]))?
            .as_constant()
            .ok_or_else(|| self.err(name, format!("'{}' is not a rational number", text)))
    }

    fn matrix(&self, name: &str, n: usize, table: &SymbolTable) -> Result<SquareMatrix> {
        let rows = matrix_cells(self.raw(name)).ok_or_else(|| self.err(name, "expected [[a, b], [c, d]]"))?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(self.err(name, format!("expected a {}×{} matrix", n, n)));
        }
        let mut m = SquareMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                m.set(i, j, self.expr(name, cell, table)?);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(self.err(name, "matrix must be symmetric"));
                }
            }
        }
        Ok(m)
    }

    fn metric(&self, chart: Chart, m: SquareMatrix) -> Result<Metric> {
        Metric::from_canon(chart, m).map_err(|e| self.err("metric", e))
    }

    fn geometric(&self, g: Metric, roles: bool, expect: Vec<Expect>) -> Result<(Fixture, Vec<Expect>)> {
        let field = d_v(&g);
        let roles = if roles { Some(Roles::leading(&g)) } else { None };
        Ok((Fixture::Geometric(GeometricFixture { metric: g, field, roles, screen: None }), expect))
    }

    fn minkowski(&self) -> Result<(Fixture, Vec<Expect>)> {
        let d = self.int("dim", 2, 6)?;
        let chart = adapted_chart(d, false);
        let g = self.metric(chart, brinkmann(d, &Canon::zero()))?;
        self.geometric(g, true, vec![Expect::Kundt(true), Expect::Predicate("PpWave", true), Expect::HZero, Expect::LeafFlat(true)])
    }

    fn pp_wave(&self) -> Result<(Fixture, Vec<Expect>)> {
        let chart = adapted_chart(4, false);
        let h = self.expr("H", self.raw("H"), &chart.symbol_table())?;
        if h.depends_on(chart.coord(1)) {
            return Err(self.err("H", "must not depend on v"));
        }
        let g = self.metric(chart, brinkmann(4, &h))?;
        self.geometric(g, true, vec![Expect::Kundt(true), Expect::Predicate("PpWave", true), Expect::LeafFlat(true)])
    }

    fn quadratic_profile(&self, chart: &Chart, s: &SquareMatrix) -> Canon {
        let n = s.dim();
        let mut h = Canon::zero();
        for a in 0..n {
            for b in 0..n {
                let xx = Canon::coord(chart.coord(2 + a)).mul(&Canon::coord(chart.coord(2 + b)));
                h = h.add(&s.get(a, b).mul(&xx));
            }
        }
        h
    }

    fn plane_wave(&self) -> Result<(Fixture, Vec<Expect>)> {
        let chart = adapted_chart(4, false);
        let only_u = SymbolTable::from_symbols(vec![chart.coord(0).clone()], Vec::new());
        let s = self.matrix("S", 2, &only_u)?;
        let h = self.quadratic_profile(&chart, &s);
        let g = self.metric(chart, brinkmann(4, &h))?;
        self.geometric(
            g,
            true,
            vec![Expect::Kundt(true), Expect::Predicate("PlaneWave", true), Expect::S(s), Expect::LeafFlat(true)],
        )
    }

    fn cahen_wallach(&self) -> Result<(Fixture, Vec<Expect>)> {
        let chart = adapted_chart(4, false);
        let s = self.matrix("S", 2, &SymbolTable::new(&[], &[]))?;
        if s.determinant().is_zero() {
            return Err(self.err("S", "must be non-degenerate"));
        }
        let h = self.quadratic_profile(&chart, &s);
        let g = self.metric(chart, brinkmann(4, &h))?;
        self.geometric(g, true, vec![Expect::Kundt(true), Expect::Class("CahenWallach"), Expect::S(s), Expect::LeafFlat(true)])
    }

    fn siklos(&self) -> Result<(Fixture, Vec<Expect>)> {
        let chart = adapted_chart(4, true);
        let h = self.expr("H", self.raw("H"), &chart.symbol_table())?;
        if h.depends_on(chart.coord(1)) {
            return Err(self.err("H", "must not depend on v"));
        }
        let m = scaled(&brinkmann(4, &h), &Canon::coord(chart.coord(3)).powi(-2).expect("nonzero base"));
        let g = self.metric(chart, m)?;
        self.geometric(g, true, vec![Expect::Kundt(true), Expect::Class("Siklos"), Expect::LeafCurvedAtBase])
    }

    fn ads_poincare(&self) -> Result<(Fixture, Vec<Expect>)> {
        let d = self.int("dim", 3, 6)?;
        let chart = adapted_chart(d, true);
        let m = scaled(&brinkmann(d, &Canon::zero()), &Canon::coord(chart.coord(d - 1)).powi(-2).expect("nonzero base"));
        let g = self.metric(chart, m)?;
        self.geometric(g, true, vec![Expect::Kundt(true), Expect::Class("Siklos"), Expect::HZero, Expect::LeafCurvedAtBase])
    }

    fn kundt_generic(&self) -> Result<(Fixture, Vec<Expect>)> {
        let chart = adapted_chart(4, false);
        let t = chart.symbol_table();
        let h_fn = self.expr("H", self.raw("H"), &t)?;
        let w_text = split_top(self.raw("W"), ',');
        if w_text.len() != 2 {
            return Err(self.err("W", "expected two comma-separated functions"));
        }
        let w = w_text.iter().map(|s| self.expr("W", s, &t)).collect::<Result<Vec<_>>>()?;
        let h = self.matrix("h", 2, &t)?;
        for a in 0..2 {
            for b in 0..2 {
                if h.get(a, b).depends_on(chart.coord(1)) {
                    return Err(self.err("h", "must not depend on v"));
                }
            }
        }
        let half = Canon::rational(1, 2);
        let mut m = SquareMatrix::zeros(4);
        m.set(0, 1, Canon::one());
        m.set(1, 0, Canon::one());
        m.set(0, 0, h_fn);
        for a in 0..2 {
            m.set(0, 2 + a, w[a].mul(&half));
            m.set(2 + a, 0, w[a].mul(&half));
            for b in 0..2 {
                m.set(2 + a, 2 + b, h.get(a, b).clone());
            }
        }
        let g = self.metric(chart, m)?;
        self.geometric(g, true, vec![Expect::Kundt(true), Expect::Class("KundtForm"), Expect::Predicate("WeaklyBrinkmann", false)])
    }

    fn suspension(&self) -> Result<(Fixture, Vec<Expect>)> {
        let lambda = self.rational("lambda", self.raw("lambda"))?;
        if !lambda.is_positive() {
            return Err(self.err("lambda", "must be positive"));
        }
        let chart = Chart::free(&["x", "y", "t"]).expect("valid chart");
        let t = Canon::coord(chart.coord(2));
        let growth = Canon::func(crate::expr::Func::Exp, t.mul(&Canon::func(crate::expr::Func::Log, Canon::constant(lambda))));
        let arc = Arc::new(chart.clone());
        let field = |c: [Canon; 3]| VectorField::from_canon(arc.clone(), c.to_vec()).expect("three components");
        let v = field([growth, Canon::zero(), Canon::zero()]);
        let e = field([Canon::zero(), Canon::zero(), Canon::one()]);
        let z = field([Canon::zero(), Canon::one(), Canon::zero()]);
        let mut h = SquareMatrix::zeros(3);
        h.set(2, 2, Canon::one());
        let g = build_kundt_metric(&v, &[e], &z, &h, &chart.zero_test(0)).map_err(|e| self.err("lambda", e))?;
        let field = VectorField::from_canon(g.chart_arc().clone(), v.comps().to_vec()).expect("same chart");
        Ok((
            Fixture::Geometric(GeometricFixture { metric: g, field, roles: None, screen: None }),
            vec![Expect::Kundt(true)],
        ))
    }

    fn conformal(&self) -> Result<(Fixture, Vec<Expect>)> {
        let base_name = self.raw("base");
        if base_name == "conformal" {
            return Err(self.err("base", "cannot rescale a rescaled entry"));
        }
        let base = get(base_name, &[]).map_err(|e| self.err("base", e))?;
        let kundt = base.expect.iter().find_map(|x| if let Expect::Kundt(k) = x { Some(*k) } else { None });
        let (Fixture::Geometric(f), Some(kundt)) = (base.fixture, kundt) else {
            return Err(self.err("base", format!("'{}' has no metric with an expected kundt flag", base_name)));
        };
        let sigma = parse(self.raw("sigma"), &f.metric.chart().symbol_table()).map_err(|e| self.err("sigma", e))?;
        let v = f.roles.as_ref().map_or(1, |r| r.v);
        let zt = f.metric.zero_test(0);
        let r = conformal_rescale(&f.metric, &sigma, v, &zt).map_err(|e| self.err("sigma", e))?;
        if r.v_dependent {
            return Err(self.err("sigma", "must not depend on v"));
        }
        let field = VectorField::from_canon(r.metric.chart_arc().clone(), f.field.comps().to_vec()).expect("same chart");
        Ok((
            Fixture::Geometric(GeometricFixture { metric: r.metric, field, roles: None, screen: None }),
            vec![Expect::Kundt(kundt)],
        ))
    }

    fn twisting(&self) -> Result<(Fixture, Vec<Expect>)> {
        let chart = Chart::free(&["t", "x", "y", "z"]).expect("valid chart");
        let mut m = SquareMatrix::identity(4);
        m.set(0, 0, Canon::int(-1));
        let g = self.metric(chart, m)?;
        let z = Canon::coord(g.chart().coord(3));
        let (cos, sin) = (Canon::func(crate::expr::Func::Cos, z.clone()), Canon::func(crate::expr::Func::Sin, z));
        let arc = g.chart_arc().clone();
        let field = |c: [Canon; 4]| VectorField::from_canon(arc.clone(), c.to_vec()).expect("four components");
        let v = field([Canon::one(), cos.clone(), sin.clone(), Canon::zero()]);
        let screen = vec![
            field([Canon::zero(), Canon::zero(), Canon::zero(), Canon::one()]),
            field([Canon::zero(), sin.neg(), cos, Canon::zero()]),
        ];
        Ok((
            Fixture::Geometric(GeometricFixture { metric: g, field: v, roles: None, screen: Some(screen) }),
            vec![Expect::TwistFree(false), Expect::LocallyKundt(false), Expect::Kundt(false)],
        ))
    }

    fn algebraic(&self, algebra: LieAlgebra, metric: InvariantMetric, v: &str) -> Result<(Fixture, Vec<Expect>)> {
        let v = algebra.basis(algebra.index_of(v).expect("fixture basis name"));
        Ok((
            Fixture::Algebraic(AlgebraicFixture { algebra, metric, v }),
            vec![Expect::ExactIdentities, Expect::AlgebraicKundt(true)],
        ))
    }

    fn heis3(&self) -> Result<(Fixture, Vec<Expect>)> {
        let l = heisenberg();
        let m = InvariantMetric::from_entries(3, &[(0, 2, liealg::q(1)), (1, 1, liealg::q(1))]).expect("Lorentzian");
        self.algebraic(l, m, "Z")
    }

    fn oscillator(&self) -> Result<(Fixture, Vec<Expect>)> {
        let e = |k: usize| unit(4, k, 1);
        let l = LieAlgebra::new(&["T", "X", "Y", "Z"], &[(1, 2, e(3)), (0, 1, e(2)), (0, 2, unit(4, 1, -1))])
            .expect("oscillator structure");
        self.algebraic(l, t_z_metric(), "Z")
    }

    fn r_ltimes_heis(&self) -> Result<(Fixture, Vec<Expect>)> {
        let rows = matrix_cells(self.raw("A")).ok_or_else(|| self.err("A", "expected a 3×3 matrix"))?;
        if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
            return Err(self.err("A", "expected a 3×3 matrix"));
        }
        let a = rows.iter().flatten().map(|c| self.rational("A", c)).collect::<Result<Vec<_>>>()?;
        let l = heisenberg().semidirect("T", &a).map_err(|e| self.err("A", e))?;
        self.algebraic(l, t_z_metric(), "Z")
    }

    fn sl2(&self) -> Result<(Fixture, Vec<Expect>)> {
        let l = LieAlgebra::new(&["H", "E", "F"], &[(0, 1, unit(3, 1, 2)), (0, 2, unit(3, 2, -2)), (1, 2, unit(3, 0, 1))])
            .expect("sl2 structure");
        let m = InvariantMetric::from_entries(3, &[(0, 0, liealg::q(1)), (1, 2, liealg::qr(1, 2))]).expect("Lorentzian");
        self.algebraic(l, m, "F")
    }
}

fn unit(d: usize, k: usize, c: i64) -> AlgVector {
    let mut v = vec![liealg::q(0); d];
    v[k] = liealg::q(c);
    v
}

fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(&["X", "Y", "Z"], &[(0, 1, unit(3, 2, 1))]).expect("heisenberg structure")
}

fn t_z_metric() -> InvariantMetric {
    InvariantMetric::from_entries(4, &[(0, 3, liealg::q(1)), (1, 1, liealg::q(1)), (2, 2, liealg::q(1))]).expect("Lorentzian")
}

/// `u, v, x1, …`; with `positive_last` the last coordinate is positive with
/// base value 1.
fn adapted_chart(d: usize, positive_last: bool) -> Chart {
    let mut coords = vec![Coordinate::free("u"), Coordinate::free("v")];
    let mut base = vec![0.0; d];
    for i in 1..=(d - 2) {
        let name = format!("x{}", i);
        if positive_last && i == d - 2 {
            coords.push(Coordinate::positive(&name));
            base[d - 1] = 1.0;
        } else {
            coords.push(Coordinate::free(&name));
        }
    }
    Chart::new(coords, base).expect("valid chart")
}

/// `2du dv + H du² + Σ dx²`.
fn brinkmann(d: usize, h: &Canon) -> SquareMatrix {
    let mut m = SquareMatrix::identity(d);
    m.set(0, 0, h.clone());
    m.set(1, 1, Canon::zero());
    m.set(0, 1, Canon::one());
    m.set(1, 0, Canon::one());
    m
}

fn scaled(m: &SquareMatrix, f: &Canon) -> SquareMatrix {
    let d = m.dim();
    let mut out = SquareMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            out.set(i, j, m.get(i, j).mul(f));
        }
    }
    out
}

fn d_v(g: &Metric) -> VectorField {
    let mut comps = vec![Canon::zero(); g.dim()];
    comps[1] = Canon::one();
    VectorField::from_canon(g.chart_arc().clone(), comps).expect("matching dimension")
}

/// Split at `sep` outside brackets and parentheses.
pub fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(cur.trim().into());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    out.push(cur.trim().into());
    out
}

/// Cells of `[[a, b], [c, d]]`.
pub fn matrix_cells(s: &str) -> Option<Vec<Vec<String>>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    split_top(inner, ',')
        .iter()
        .map(|row| {
            let cells = row.strip_prefix('[')?.strip_suffix(']')?;
            Some(split_top(cells, ','))
        })
        .collect()
}

pub fn matrix_text(m: &SquareMatrix) -> String {
    let rows: Vec<String> = (0..m.dim())
        .map(|i| {
            let cells: Vec<String> = (0..m.dim()).map(|j| format!("{}", m.get(i, j).to_expr())).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// One-line summary such as `CahenWallach, S=[[1,0],[0,1]]`.
pub fn class_text(c: &SpaceClass) -> String {
    match c {
        SpaceClass::PlaneWave { s } | SpaceClass::CahenWallach { s } => format!("{}, S={}", c.name(), matrix_text(s)),
        SpaceClass::Siklos { h, .. } => format!("Siklos, H={}", h),
        other => other.name().into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<CheckOutcome>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub seed: u64,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Live analysis of a geometric fixture.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricAnalysis {
    pub congruence: CongruenceReport,
    pub classification: Option<ClassificationReport>,
}

pub fn analyze_fixture(f: &GeometricFixture, zt: &ZeroTest) -> core::result::Result<GeometricAnalysis, String> {
    let congruence = match &f.screen {
        Some(s) => {
            let c = build_congruence(&f.metric, &f.field, zt).and_then(|c| c.with_screen(s.clone())).map_err(|e| e.to_string())?;
            analyze_congruence(&c).map_err(|e| e.to_string())?
        }
        None => analyze(&f.metric, &f.field, zt).map_err(|e| e.to_string())?,
    };
    let classification = match &f.roles {
        Some(r) => Some(classify_metric(&f.metric, r, zt).map_err(|e| e.to_string())?),
        None => None,
    };
    Ok(GeometricAnalysis { congruence, classification })
}

fn outcome(label: String, expected: impl ToString, actual: impl ToString, pass: bool) -> CheckOutcome {
    CheckOutcome { label, expected: expected.to_string(), actual: actual.to_string(), pass }
}

fn check_geometric(f: &GeometricFixture, expect: &[Expect], seed: u64) -> core::result::Result<Vec<CheckOutcome>, String> {
    let zt = f.metric.zero_test(seed);
    let a = analyze_fixture(f, &zt)?;
    let cls = || a.classification.as_ref().ok_or_else(|| String::from("entry has no coordinate roles"));
    let flag = |label: String, want: bool, got: bool| outcome(label, want, got, want == got);
    let mut out = Vec::new();
    for x in expect {
        let label = x.label();
        out.push(match x {
            Expect::Kundt(b) => flag(label, *b, a.congruence.kundt),
            Expect::LocallyKundt(b) => flag(label, *b, a.congruence.locally_kundt),
            Expect::TwistFree(b) => flag(label, *b, a.congruence.twist_free),
            Expect::Geodesic(b) => flag(label, *b, a.congruence.geodesic),
            Expect::Class(name) => {
                let got = cls()?.most_specific.name();
                outcome(label, name, got, *name == got)
            }
            Expect::Predicate(name, b) => {
                let got = cls()?.predicates.as_list().iter().find(|(n, _)| n == name).map(|p| p.1);
                outcome(label, b, got.map_or("?".into(), |g| g.to_string()), got == Some(*b))
            }
            Expect::HZero => {
                let h = cls()?.h_fn.clone();
                let zero = match &h {
                    Some(e) => zt.is_zero(e).map_err(|e| e.to_string())?,
                    None => false,
                };
                outcome(label, "0", h.map_or("none".into(), |e| e.to_string()), zero)
            }
            Expect::S(s) => {
                let got = cls()?.s.clone();
                let pass = match &got {
                    Some(g) if g.dim() == s.dim() => {
                        let mut same = true;
                        for i in 0..s.dim() {
                            for j in 0..s.dim() {
                                same &= zt.is_zero_canon(&g.get(i, j).sub(s.get(i, j))).map_err(|e| e.to_string())?;
                            }
                        }
                        same
                    }
                    _ => false,
                };
                outcome(label, matrix_text(s), got.as_ref().map_or("none".into(), matrix_text), pass)
            }
            Expect::LeafFlat(b) => {
                let got = cls()?.leaf_flat;
                outcome(label, b, got.map_or("undefined".into(), |g| g.to_string()), got == Some(*b))
            }
            Expect::LeafCurvedAtBase => {
                let roles = f.roles.as_ref().ok_or_else(|| String::from("entry has no coordinate roles"))?;
                let lc = leaf_curvature(&f.metric, roles, &zt).map_err(|e| e.to_string())?;
                let size = lc.max_abs_at(&f.metric, f.metric.chart().base()).map_err(|e| e.to_string())?;
                outcome(label, "> 0", format!("{:.3e}", size), size > 1e-9)
            }
            Expect::AlgebraicKundt(_) | Expect::ExactIdentities => outcome(label, "algebra", "metric", false),
        });
    }
    Ok(out)
}

fn check_algebraic(f: &AlgebraicFixture, expect: &[Expect]) -> core::result::Result<Vec<CheckOutcome>, String> {
    let mut out = Vec::new();
    for x in expect {
        let label = x.label();
        out.push(match x {
            Expect::AlgebraicKundt(b) => {
                let r = liealg::analyze_algebraic(&f.algebra, &f.metric, &f.v).map_err(|e| e.to_string())?;
                outcome(label, b, r.algebraic_kundt, r.algebraic_kundt == *b)
            }
            Expect::ExactIdentities => {
                let jacobi = f.algebra.check_jacobi();
                let torsion = liealg::torsion_free(&f.algebra, &f.metric).map_err(|e| e.to_string())?;
                let compat = liealg::metric_compatible(&f.algebra, &f.metric).map_err(|e| e.to_string())?;
                let got = format!("jacobi={} torsion_free={} compatible={}", jacobi, torsion, compat);
                outcome(label, "all true", got, jacobi && torsion && compat)
            }
            _ => outcome(label, "metric", "algebra", false),
        });
    }
    Ok(out)
}

pub fn check_entry(e: &Entry, seed: u64) -> Row {
    let result = match &e.fixture {
        Fixture::Geometric(f) => check_geometric(f, &e.expect, seed),
        Fixture::Algebraic(f) => check_algebraic(f, &e.expect),
    };
    match result {
        Ok(checks) => Row { name: e.name.into(), pass: checks.iter().all(|c| c.pass), checks, error: None },
        Err(msg) => Row { name: e.name.into(), pass: false, checks: Vec::new(), error: Some(msg) },
    }
}

pub fn run_entries(entries: &[Entry], seed: u64) -> Table {
    Table { seed, rows: entries.iter().map(|e| check_entry(e, seed)).collect() }
}

/// Every roster entry with default parameters.
pub fn run_all(seed: u64) -> Table {
    let rows = ROSTER
        .iter()
        .map(|info| match get(info.name, &[]) {
            Ok(e) => check_entry(&e, seed),
            Err(err) => Row { name: info.name.into(), pass: false, checks: Vec::new(), error: Some(err.to_string()) },
        })
        .collect();
    Table { seed, rows }
}

/// Rational printing for algebra fixtures.
pub fn q_text(x: &Q) -> String {
    rational_to_string(x)
}

#[cfg(test)]
mod tests;

//! Seeded random fixtures: polynomial metrics in adapted form, Brinkmann
//! metrics, Lorentzian perturbations of flat space and frame data for
//! [`build_kundt_metric`](crate::hierarchy::build_kundt_metric).

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Canon, Symbol};
use crate::geometry::linalg::SquareMatrix;
use crate::geometry::{Chart, Metric, VectorField};
use crate::hierarchy::{assemble_adapted, AdaptedKundtForm, Roles};

/// Shape of a random polynomial: monomials of total degree `1..=max_degree`
/// (or `0..` with `constant`), coefficients `k / scale` with `0 < |k| ≤ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolySpec {
    pub max_degree: u32,
    pub terms: usize,
    pub scale: i64,
    pub constant: bool,
}

impl PolySpec {
    pub const fn new(max_degree: u32, terms: usize) -> Self {
        PolySpec { max_degree, terms, scale: 1, constant: false }
    }

    pub const fn scaled(self, scale: i64) -> Self {
        PolySpec { scale, ..self }
    }

    pub const fn with_constant(self) -> Self {
        PolySpec { constant: true, ..self }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn polynomial<R: Rng>(rng: &mut R, vars: &[Symbol], spec: PolySpec) -> Canon {
    let mut p = Canon::zero();
    for _ in 0..spec.terms {
        let lo = if spec.constant { 0 } else { 1 };
        let deg = if vars.is_empty() { 0 } else { rng.gen_range(lo..=spec.max_degree.max(lo)) };
        let mut k = rng.gen_range(1..=3i64);
        if rng.gen_bool(0.5) {
            k = -k;
        }
        let mut term = Canon::rational(k, spec.scale);
        for _ in 0..deg {
            term = term.mul(&Canon::coord(&vars[rng.gen_range(0..vars.len())]));
        }
        p = p.add(&term);
    }
    p
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{}{}", prefix, i)).collect()
}

/// Chart `u, v, x1..xn` with the base point at the origin.
pub fn adapted_chart(n: usize) -> Chart {
    let xs = names("x", n);
    let mut all: Vec<&str> = vec!["u", "v"];
    all.extend(xs.iter().map(String::as_str));
    Chart::free(&all).expect("valid chart")
}

fn transverse_block<R: Rng>(rng: &mut R, vars: &[Symbol], n: usize) -> SquareMatrix {
    let mut h = SquareMatrix::identity(n);
    for a in 0..n {
        for b in a..n {
            let p = polynomial(rng, vars, PolySpec::new(2, 2).scaled(10));
            let e = h.get(a, b).add(&p);
            h.set(a, b, e.clone());
            h.set(b, a, e);
        }
    }
    h
}

/// Adapted form with `H`, `W_i` of degree ≤ 3 in all coordinates and
/// `h = I + small polynomial in (u, x)`. With `v_perturbed` the block `h`
/// also picks up `v`-dependent terms.
pub fn adapted_form(seed: u64, n: usize, v_perturbed: bool) -> AdaptedKundtForm {
    let mut r = rng(seed);
    let chart = adapted_chart(n);
    let all = chart.coord_symbols();
    let ux: Vec<Symbol> = all.iter().enumerate().filter(|(i, _)| *i != 1).map(|(_, s)| s.clone()).collect();
    let h_fn = polynomial(&mut r, &all, PolySpec::new(3, 4).with_constant());
    let w: Vec<Canon> = (0..n).map(|_| polynomial(&mut r, &all, PolySpec::new(3, 3).with_constant())).collect();
    let mut h = transverse_block(&mut r, &ux, n);
    if v_perturbed {
        let v = Canon::coord(&all[1]);
        let k = r.gen_range(1..=3i64);
        let extra = v.mul(&Canon::rational(k, 5)).add(&v.mul(&polynomial(&mut r, &ux, PolySpec::new(1, 1).scaled(10))));
        h.set(0, 0, h.get(0, 0).add(&extra));
    }
    let roles = Roles { u: 0, v: 1, transverse: (2..n + 2).collect() };
    let metric = assemble_adapted(chart, &roles, &h_fn, &w, &h).expect("Lorentzian at the origin");
    AdaptedKundtForm { metric, roles, h_fn, w, h }
}

/// `2du dv + H(u,x) du² + W(u,x) du dx + dx²`.
pub fn brinkmann_3d(seed: u64) -> AdaptedKundtForm {
    let mut r = rng(seed);
    let chart = adapted_chart(1);
    let all = chart.coord_symbols();
    let ux = [all[0].clone(), all[2].clone()];
    let h_fn = polynomial(&mut r, &ux, PolySpec::new(3, 4).with_constant());
    let w = vec![polynomial(&mut r, &ux, PolySpec::new(3, 3).with_constant())];
    let h = SquareMatrix::identity(1);
    let roles = Roles { u: 0, v: 1, transverse: vec![2] };
    let metric = assemble_adapted(chart, &roles, &h_fn, &w, &h).expect("Lorentzian at the origin");
    AdaptedKundtForm { metric, roles, h_fn, w, h }
}

/// `diag(-1, 1, …) + ε p_ij` with polynomials `p_ij` of degree ≤ 2 vanishing
/// at the origin.
pub fn lorentzian(seed: u64, d: usize) -> Metric {
    let mut r = rng(seed);
    let chart = Chart::free(&["t", "x", "y", "z", "w", "s"][..d]).expect("valid chart").with_sample_box(-0.5, 0.5);
    let vars = chart.coord_symbols();
    let mut m = SquareMatrix::identity(d);
    m.set(0, 0, Canon::int(-1));
    for i in 0..d {
        for j in i..d {
            let e = m.get(i, j).add(&polynomial(&mut r, &vars, PolySpec::new(2, 2).scaled(8)));
            m.set(i, j, e.clone());
            m.set(j, i, e);
        }
    }
    Metric::from_canon(chart, m).expect("Lorentzian at the origin")
}

/// Inputs to `build_kundt_metric`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameData {
    pub v: VectorField,
    pub e: Vec<VectorField>,
    pub z: VectorField,
    pub h: SquareMatrix,
}

/// `V = φ ∂_v`, `E_a = ∂_{x_a} + p_a ∂_v`, `Z = ∂_u + q ∂_v + r_a ∂_{x_a}`,
/// `h = s_ab dx^a dx^b` with `φ`, `s` independent of `v`, so `V⊥` is
/// integrable and the flow of `V` preserves `h`.
pub fn frame_data(seed: u64, n: usize) -> FrameData {
    let mut r = rng(seed);
    let chart = adapted_chart(n);
    let d = n + 2;
    let all = chart.coord_symbols();
    let ux: Vec<Symbol> = all.iter().enumerate().filter(|(i, _)| *i != 1).map(|(_, s)| s.clone()).collect();
    let arc = Arc::new(chart);
    let mut vc = vec![Canon::zero(); d];
    vc[1] = Canon::one().add(&polynomial(&mut r, &ux, PolySpec::new(2, 2).scaled(10)));
    let v = VectorField::from_canon(arc.clone(), vc).expect("dimension");
    let e = (0..n)
        .map(|a| {
            let mut c = vec![Canon::zero(); d];
            c[2 + a] = Canon::one();
            c[1] = polynomial(&mut r, &all, PolySpec::new(2, 2));
            VectorField::from_canon(arc.clone(), c).expect("dimension")
        })
        .collect();
    let mut zc = vec![Canon::zero(); d];
    zc[0] = Canon::one();
    zc[1] = polynomial(&mut r, &all, PolySpec::new(2, 2));
    for a in 0..n {
        zc[2 + a] = polynomial(&mut r, &all, PolySpec::new(1, 1).scaled(4));
    }
    let z = VectorField::from_canon(arc, zc).expect("dimension");
    let s = transverse_block(&mut r, &ux, n);
    let mut h = SquareMatrix::zeros(d);
    for a in 0..n {
        for b in 0..n {
            h.set(2 + a, 2 + b, s.get(a, b).clone());
        }
    }
    FrameData { v, e, z, h }
}

/// `σ(u, x)` of degree ≤ 2 on an adapted chart.
pub fn conformal_exponent(seed: u64, chart: &Chart, v: usize) -> Canon {
    let mut r = rng(seed);
    let vars: Vec<Symbol> = chart.coord_symbols().into_iter().enumerate().filter(|(i, _)| *i != v).map(|(_, s)| s).collect();
    polynomial(&mut r, &vars, PolySpec::new(2, 3).scaled(2))
}

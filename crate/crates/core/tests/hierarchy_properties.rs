mod common;

use common::catalog_geometric;
use kundt_core::catalog::random;
use kundt_core::expr::{Canon, Expr, ZeroTest};
use kundt_core::geometry::{christoffel, Metric};
use kundt_core::hierarchy::{assemble_adapted, classify, classify_metric, detect_kundt_form, AdaptedKundtForm, Roles};
use proptest::prelude::*;

fn drop_v(c: &Canon, f: &AdaptedKundtForm) -> Canon {
    let v = f.metric.chart().coord(f.roles.v);
    Canon::from_expr(&c.to_expr().substitute(v, &Expr::zero())).unwrap()
}

/// The original form, then with `W` made `v`-independent, then also `H`.
fn variants(seed: u64, n: usize) -> Vec<AdaptedKundtForm> {
    let f = random::adapted_form(seed, n, false);
    let w: Vec<Canon> = f.w.iter().map(|w| drop_v(w, &f)).collect();
    let h_fn = drop_v(&f.h_fn, &f);
    let build = |h_fn: &Canon, w: &[Canon]| {
        let metric = assemble_adapted(f.metric.chart().clone(), &f.roles, h_fn, w, &f.h).unwrap();
        AdaptedKundtForm { metric, roles: f.roles.clone(), h_fn: h_fn.clone(), w: w.to_vec(), h: f.h.clone() }
    };
    let weak = build(&f.h_fn, &w);
    let brink = build(&h_fn, &w);
    vec![f, weak, brink]
}

/// `∇_X ∂_v` as a multiple of `∂_v` (`Some(true)` when zero), or `None`.
fn v_line_parallel(g: &Metric, v: usize, zt: &ZeroTest) -> Option<bool> {
    let gamma = christoffel(g).unwrap();
    let d = g.dim();
    let mut parallel_field = true;
    for i in 0..d {
        for k in 0..d {
            let zero = zt.is_zero_canon(gamma.get(k, i, v)).unwrap();
            if k != v && !zero {
                return None;
            }
            parallel_field &= zero;
        }
    }
    Some(parallel_field)
}

fn same(a: &Canon, b: &Canon) -> bool {
    a.sub(b).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn assembled_forms_are_detected_exactly(seed in 0u64..10_000, n in 1usize..=3) {
        let f = random::adapted_form(seed, n, false);
        let d = detect_kundt_form(&f.metric, &f.roles, &f.metric.zero_test(seed)).unwrap();
        prop_assert!(same(&d.h_fn, &f.h_fn));
        for (a, b) in d.w.iter().zip(&f.w) {
            prop_assert!(same(a, b));
        }
        for a in 0..n {
            for b in 0..n {
                prop_assert!(same(d.h.get(a, b), f.h.get(a, b)));
            }
        }
    }

    #[test]
    fn brinkmann_predicates_match_the_connection(seed in 0u64..10_000, n in 1usize..=2) {
        for f in variants(seed, n) {
            let zt = f.metric.zero_test(seed);
            let c = classify(&f, &zt).unwrap();
            prop_assert!(c.predicates.is_monotone());
            let line = v_line_parallel(&f.metric, f.roles.v, &zt);
            prop_assert_eq!(c.predicates.weakly_brinkmann, line.is_some());
            prop_assert_eq!(c.predicates.brinkmann, line == Some(true));
        }
    }
}

#[test]
fn variants_cover_the_lower_classes() {
    let seed = (0..)
        .find(|&s| {
            let f = random::adapted_form(s, 2, false);
            let v = f.metric.chart().coord(1);
            f.h_fn.depends_on(v) && f.w.iter().any(|w| w.depends_on(v))
        })
        .unwrap();
    let names: Vec<&str> = variants(seed, 2)
        .iter()
        .map(|f| classify(f, &f.metric.zero_test(0)).unwrap().most_specific.name())
        .collect();
    assert_eq!(names, ["KundtForm", "WeaklyBrinkmann", "Brinkmann"]);
}

#[test]
fn catalog_classifications_are_monotone_and_match_the_connection() {
    for (name, f) in catalog_geometric() {
        let Some(roles) = &f.roles else { continue };
        let zt = f.metric.zero_test(0);
        let c = classify_metric(&f.metric, roles, &zt).unwrap();
        assert!(c.predicates.is_monotone(), "{}", name);
        if c.predicates.siklos {
            continue;
        }
        let line = v_line_parallel(&f.metric, roles.v, &zt);
        assert_eq!(c.predicates.weakly_brinkmann, line.is_some(), "{}", name);
        assert_eq!(c.predicates.brinkmann, line == Some(true), "{}", name);
    }
}

#[test]
fn plane_wave_profiles_are_quadratic_forms() {
    for (name, f) in catalog_geometric() {
        let Some(roles) = &f.roles else { continue };
        let zt = f.metric.zero_test(0);
        let c = classify_metric(&f.metric, roles, &zt).unwrap();
        if !c.predicates.plane_wave {
            continue;
        }
        let s = c.s.as_ref().unwrap();
        let xs: Vec<Canon> = roles.transverse.iter().map(|&i| Canon::coord(f.metric.chart().coord(i))).collect();
        let mut q = Canon::zero();
        for a in 0..xs.len() {
            for b in 0..xs.len() {
                q = q.add(&s.get(a, b).mul(&xs[a]).mul(&xs[b]));
            }
        }
        let h = Canon::from_expr(c.h_fn.as_ref().unwrap()).unwrap();
        assert!(zt.is_zero_canon(&h.sub(&q)).unwrap(), "{}", name);
    }
}

#[test]
fn random_roles_match_by_name() {
    let f = random::adapted_form(1, 2, false);
    assert_eq!(Roles::by_name(&f.metric, "u", "v", &["x1", "x2"]).unwrap(), f.roles);
}

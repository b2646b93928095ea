mod common;

use common::catalog_geometric;
use kundt_core::catalog::random::{self, PolySpec};
use kundt_core::congruence::{analyze, analyze_congruence, build_congruence, is_twist_free, optical_scalars};
use kundt_core::expr::Canon;
use kundt_core::geometry::VectorField;
use kundt_core::hierarchy::conformal_rescale;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lemma_items_agree_on_adapted_metrics(seed in 0u64..10_000, n in 1usize..=2, perturbed: bool) {
        let f = random::adapted_form(seed, n, perturbed);
        let v = VectorField::coordinate(f.metric.chart(), 1);
        let r = analyze(&f.metric, &v, &f.metric.zero_test(seed)).unwrap();
        prop_assert!(r.twist_free);
        prop_assert_eq!(r.tg_item2, Some(r.tg_item4));
        prop_assert_eq!(r.tg_item4, !perturbed);
        prop_assert!(r.lemma_consistent);
    }
}

#[test]
fn frobenius_and_optical_twist_agree() {
    for (name, f) in catalog_geometric() {
        let c = build_congruence(&f.metric, &f.field, &f.metric.zero_test(0)).unwrap();
        let c = match f.screen {
            Some(s) => c.with_screen(s).unwrap(),
            None => c,
        };
        assert_eq!(is_twist_free(&c).unwrap(), optical_scalars(&c).unwrap().twist_vanishes, "{}", name);
    }
}

#[test]
fn verdicts_do_not_depend_on_the_screen() {
    for (name, f) in catalog_geometric() {
        let g = &f.metric;
        if g.dim() < 3 {
            continue;
        }
        let c = build_congruence(g, &f.field, &g.zero_test(0)).unwrap();
        let c = match f.screen {
            Some(s) => c.with_screen(s).unwrap(),
            None => c,
        };
        let base = analyze_congruence(&c).unwrap();
        let k = c.screen().len();
        let coords = g.chart().coord_symbols();
        let mut rng = random::rng(name.len() as u64);
        for _ in 0..20 {
            // Triangular with nonzero diagonal, so always invertible.
            let m: Vec<i64> = (0..k * k)
                .map(|i| match (i / k, i % k) {
                    (a, b) if a == b => [-2, -1, 1, 2][rng.gen_range(0..4)],
                    (a, b) if b > a => rng.gen_range(-2..=2),
                    _ => 0,
                })
                .collect();
            let screen: Vec<VectorField> = (0..k)
                .map(|a| {
                    let shift = random::polynomial(&mut rng, &coords, PolySpec::new(2, 2).with_constant());
                    let mut e = c.v().scale(&shift);
                    for b in 0..k {
                        e = e.add(&c.screen()[b].scale(&Canon::int(m[a * k + b]))).unwrap();
                    }
                    e
                })
                .collect();
            let r = analyze_congruence(&c.with_screen(screen).unwrap()).unwrap();
            assert_eq!(r.twist_free, base.twist_free, "{}", name);
            assert_eq!(r.tg_item4, base.tg_item4, "{}", name);
            assert_eq!(r.geodesic, base.geodesic, "{}", name);
            assert_eq!(r.kundt, base.kundt, "{}", name);
            if base.geodesic {
                assert_eq!(r.shear_free, base.shear_free, "{}", name);
                assert_eq!(r.divergence_free, base.divergence_free, "{}", name);
            }
        }
    }
}

#[test]
fn rescaling_by_functions_of_u_and_x_preserves_kundt() {
    for (name, f) in catalog_geometric() {
        let Some(roles) = &f.roles else { continue };
        let g = &f.metric;
        let zt = g.zero_test(0);
        let before = analyze(g, &f.field, &zt).unwrap();
        for seed in 0..3 {
            let sigma = random::conformal_exponent(seed, g.chart(), roles.v);
            let r = conformal_rescale(g, &sigma.to_expr(), roles.v, &zt).unwrap();
            assert!(!r.v_dependent);
            let after = analyze(&r.metric, &f.field, &r.metric.zero_test(seed)).unwrap();
            assert_eq!(after.kundt, before.kundt, "{} seed {}", name, seed);
            assert_eq!(after.locally_kundt, before.locally_kundt, "{} seed {}", name, seed);
        }
    }
}

use kundt_core::catalog::{get, AlgebraicFixture, Fixture, ROSTER};
use kundt_core::liealg::{
    analyze_algebraic, killing_torsion_identity, koszul_killing, levi_civita_invariant, metric_compatible, q, qr,
    torsion_free, AlgVector, InvariantMetric, LieAlgebra, Q,
};
use proptest::prelude::*;

fn algebraic_entries() -> Vec<(&'static str, AlgebraicFixture)> {
    ROSTER
        .iter()
        .filter_map(|info| match get(info.name, &[]).unwrap().fixture {
            Fixture::Algebraic(f) => Some((info.name, f)),
            Fixture::Geometric(_) => None,
        })
        .collect()
}

fn fixture(name: &str) -> AlgebraicFixture {
    match get(name, &[]).unwrap().fixture {
        Fixture::Algebraic(f) => f,
        Fixture::Geometric(_) => panic!("{} is geometric", name),
    }
}

fn heis3_plus_line() -> (LieAlgebra, InvariantMetric, AlgVector) {
    let l = LieAlgebra::new(&["X", "Y", "Z", "T"], &[(0, 1, vec![q(0), q(0), q(1), q(0)])]).unwrap();
    let m = InvariantMetric::from_entries(4, &[(0, 0, q(1)), (1, 1, q(1)), (2, 3, q(1))]).unwrap();
    (l, m, vec![q(0), q(0), q(1), q(0)])
}

fn rational() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| qr(n, d))
}

fn vector(d: usize) -> impl Strategy<Value = AlgVector> {
    proptest::collection::vec(rational(), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sl2_connection_is_half_the_bracket(x in vector(3), y in vector(3)) {
        let f = fixture("sl2_det");
        let nabla = levi_civita_invariant(&f.algebra, &f.metric, &x, &y).unwrap();
        let half: AlgVector = f.algebra.bracket(&x, &y).iter().map(|c| c / q(2)).collect();
        prop_assert_eq!(nabla, half);
    }

    #[test]
    fn central_null_vectors_are_killing_parallel(x in vector(4), z in vector(4)) {
        let (l, m, v) = heis3_plus_line();
        prop_assert!(koszul_killing(&l, &m, &x, &v, &z) == q(0));
        let osc = fixture("oscillator");
        prop_assert!(koszul_killing(&osc.algebra, &osc.metric, &x, &osc.v, &z) == q(0));
    }

    #[test]
    fn heis3_derivations_match_their_closed_form(a in proptest::collection::vec(-1i64..=1, 9)) {
        let heis = LieAlgebra::new(&["X", "Y", "Z"], &[(0, 1, vec![q(0), q(0), q(1)])]).unwrap();
        let a: Vec<Q> = a.into_iter().map(q).collect();
        let closed = a[2] == q(0) && a[5] == q(0) && a[8] == &a[0] + &a[4];
        prop_assert_eq!(heis.is_derivation(&a), closed);
        match heis.semidirect("T", &a) {
            Ok(l) => prop_assert!(closed && l.check_jacobi()),
            Err(_) => prop_assert!(!closed),
        }
    }
}

#[test]
fn catalog_algebras_are_exactly_levi_civita() {
    for (name, f) in algebraic_entries() {
        assert!(f.algebra.check_jacobi(), "{}", name);
        assert!(torsion_free(&f.algebra, &f.metric).unwrap(), "{}", name);
        assert!(metric_compatible(&f.algebra, &f.metric).unwrap(), "{}", name);
        assert!(killing_torsion_identity(&f.algebra, &f.metric), "{}", name);
    }
}

#[test]
fn central_null_vectors_give_algebraic_kundt() {
    let (l, m, v) = heis3_plus_line();
    let osc = fixture("oscillator");
    for (l, m, v) in [(l, m, v), (osc.algebra, osc.metric, osc.v)] {
        let r = analyze_algebraic(&l, &m, &v).unwrap();
        assert!(r.central && r.normal && r.perp_subalgebra && r.parallel_at_identity && r.algebraic_kundt);
    }
}

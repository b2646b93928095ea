use super::*;
use alloc::vec;
use crate::expr::parse;
use crate::geometry::{covariant_derivative, Chart, Coordinate};

fn chart(coords: &[&str], positive: &[&str], base: &[f64]) -> Chart {
    let cs = coords
        .iter()
        .map(|c| if positive.contains(c) { Coordinate::positive(c) } else { Coordinate::free(c) })
        .collect();
    Chart::new(cs, base.to_vec()).unwrap()
}

fn metric_on(chart: Chart, entries: &[(&str, &str, &str)]) -> Metric {
    let t = chart.symbol_table();
    let list: Vec<_> = entries
        .iter()
        .map(|(a, b, e)| (chart.index_of(a).unwrap(), chart.index_of(b).unwrap(), parse(e, &t).unwrap()))
        .collect();
    Metric::from_entries(chart, &list).unwrap()
}

fn brinkmann4(h: &str) -> Metric {
    metric_on(
        chart(&["u", "v", "x1", "x2"], &[], &[0.0; 4]),
        &[("u", "v", "1"), ("u", "u", h), ("x1", "x1", "1"), ("x2", "x2", "1")],
    )
}

fn canon(g: &Metric, s: &str) -> Canon {
    Canon::from_expr(&parse(s, &g.chart().symbol_table()).unwrap()).unwrap()
}

fn zt(g: &Metric) -> ZeroTest {
    g.zero_test(5)
}

fn run(g: &Metric) -> ClassificationReport {
    classify(&detect_kundt_form(g, &Roles::leading(g), &zt(g)).unwrap(), &zt(g)).unwrap()
}

#[test]
fn minkowski_reads_off_trivially() {
    let g = brinkmann4("0");
    let f = detect_kundt_form(&g, &Roles::leading(&g), &zt(&g)).unwrap();
    assert!(f.h_fn.is_zero() && f.w.iter().all(Canon::is_zero));
    assert_eq!(f.h, SquareMatrix::identity(2));
    let r = run(&g);
    assert!(r.predicates.pp_wave && r.predicates.plane_wave && !r.predicates.cahen_wallach);
    assert_eq!(r.s, Some(SquareMatrix::zeros(2)));
}

#[test]
fn v_dependent_data_is_accepted_in_kundt_form() {
    let g = metric_on(
        chart(&["u", "v", "x1"], &[], &[0.0; 3]),
        &[("u", "v", "1"), ("u", "u", "u*v"), ("u", "x1", "x1/2"), ("x1", "x1", "1")],
    );
    let f = detect_kundt_form(&g, &Roles::leading(&g), &zt(&g)).unwrap();
    assert_eq!(f.w, vec![canon(&g, "x1")]);
    let r = classify(&f, &zt(&g)).unwrap();
    assert!(r.predicates.weakly_brinkmann && !r.predicates.brinkmann);
    assert_eq!(r.most_specific, SpaceClass::WeaklyBrinkmann);
}

#[test]
fn v_dependent_transverse_block_is_rejected() {
    let g = metric_on(chart(&["u", "v", "x"], &[], &[0.0, 1.0, 0.0]), &[("u", "v", "1"), ("x", "x", "v")]);
    match detect_kundt_form(&g, &Roles::leading(&g), &zt(&g)) {
        Err(HierarchyError::NotAdapted(reasons)) => assert_eq!(reasons, vec![String::from("∂_v h ≠ 0")]),
        other => panic!("unexpected {:?}", other),
    }
}

#[test]
fn cahen_wallach_identity() {
    let g = brinkmann4("x1^2 + x2^2");
    let r = run(&g);
    assert_eq!(r.most_specific, SpaceClass::CahenWallach { s: SquareMatrix::identity(2) });
    assert!(r.predicates.is_monotone());
}

#[test]
fn u_dependent_degenerate_profile_is_plane_wave_only() {
    let g = brinkmann4("u*x1^2");
    let r = run(&g);
    let mut s = SquareMatrix::zeros(2);
    s.set(0, 0, canon(&g, "u"));
    assert_eq!(r.most_specific, SpaceClass::PlaneWave { s });
    assert!(!r.predicates.cahen_wallach);
}

#[test]
fn cubic_profile_is_pp_wave_only() {
    let r = run(&brinkmann4("x1^3"));
    assert_eq!(r.most_specific, SpaceClass::PpWave);
    assert!(r.notes.is_empty());
}

#[test]
fn affine_part_is_noted() {
    let r = run(&brinkmann4("x1^2 + x2"));
    assert_eq!(r.most_specific, SpaceClass::PpWave);
    assert_eq!(r.notes.len(), 1);
}

#[test]
fn brinkmann_field_is_parallel() {
    let g = metric_on(
        chart(&["u", "v", "x1"], &[], &[0.0; 3]),
        &[("u", "v", "1"), ("u", "u", "u*x1^3"), ("u", "x1", "u*x1"), ("x1", "x1", "1")],
    );
    let r = run(&g);
    assert!(r.predicates.brinkmann && !r.predicates.pp_wave);
    let gamma = christoffel(&g).unwrap();
    let dv = VectorField::coordinate(g.chart(), 1);
    for i in 0..3 {
        let d = covariant_derivative(&gamma, &VectorField::coordinate(g.chart(), i), &dv).unwrap();
        assert!(d.is_zero(&zt(&g)).unwrap());
    }
}

fn ads4() -> Metric {
    metric_on(
        chart(&["u", "v", "x1", "x2"], &["x2"], &[0.0, 0.0, 0.0, 1.0]),
        &[("u", "v", "1/(x2^2)"), ("x1", "x1", "1/(x2^2)"), ("x2", "x2", "1/(x2^2)")],
    )
}

#[test]
fn anti_de_sitter_is_siklos() {
    let g = ads4();
    let roles = Roles::leading(&g);
    let sk = detect_siklos(&g, &roles, &zt(&g)).unwrap();
    assert!(sk.siklos);
    assert_eq!(sk.h_fn, Some(Expr::zero()));
    let r = classify_metric(&g, &roles, &zt(&g)).unwrap();
    assert!(r.predicates.siklos && r.predicates.kundt_form && !r.predicates.pp_wave);
    assert_eq!(r.most_specific.name(), "Siklos");
    assert_eq!(r.leaf_flat, Some(false));
}

#[test]
fn siklos_round_trip() {
    let g = metric_on(
        chart(&["u", "v", "x1", "x2"], &["x2"], &[0.0, 0.0, 0.0, 1.0]),
        &[("u", "v", "1/(x2^2)"), ("u", "u", "x1/(x2^2)"), ("x1", "x1", "1/(x2^2)"), ("x2", "x2", "1/(x2^2)")],
    );
    let sk = detect_siklos(&g, &Roles::leading(&g), &zt(&g)).unwrap();
    assert_eq!(sk.h_fn, Some(Expr::coord("x1")));
}

#[test]
fn minkowski_is_not_siklos() {
    let g = metric_on(
        chart(&["u", "v", "x1", "x2"], &["x2"], &[0.0, 0.0, 0.0, 1.0]),
        &[("u", "v", "1"), ("x1", "x1", "1"), ("x2", "x2", "1")],
    );
    assert!(!detect_siklos(&g, &Roles::leading(&g), &zt(&g)).unwrap().siklos);
    let free = brinkmann4("0");
    assert!(matches!(detect_siklos(&free, &Roles::leading(&free), &zt(&free)), Err(HierarchyError::BadRoles(_))));
}

#[test]
fn pp_wave_and_three_dimensional_brinkmann_leaves_are_flat() {
    let g = brinkmann4("exp(u)*x1^3 + x2*x1");
    assert!(leaf_curvature(&g, &Roles::leading(&g), &zt(&g)).unwrap().flat);
    let g3 = metric_on(
        chart(&["u", "v", "x"], &[], &[0.0; 3]),
        &[("u", "v", "1"), ("u", "u", "u*x^2 + x^4"), ("u", "x", "u*x^2"), ("x", "x", "1")],
    );
    assert!(leaf_curvature(&g3, &Roles::leading(&g3), &zt(&g3)).unwrap().flat);
}

#[test]
fn siklos_leaf_is_curved_at_base_point() {
    let g = ads4();
    let l = leaf_curvature(&g, &Roles::leading(&g), &zt(&g)).unwrap();
    assert!(!l.flat);
    assert!(l.max_abs_at(&g, g.chart().base()).unwrap() > 1e-3);
}

#[test]
fn leaking_connection_is_not_totally_geodesic() {
    let g = metric_on(chart(&["u", "v", "x"], &[], &[0.0, 1.0, 0.0]), &[("u", "v", "1"), ("x", "x", "exp(v)")]);
    assert!(matches!(leaf_curvature(&g, &Roles::leading(&g), &zt(&g)), Err(HierarchyError::NotTotallyGeodesic(_))));
}

#[test]
fn hyperbolized_pp_wave_is_siklos() {
    let g = metric_on(
        chart(&["u", "v", "x1", "x2"], &["x2"], &[0.0, 0.0, 0.0, 1.0]),
        &[("u", "v", "1"), ("u", "u", "x1^2"), ("x1", "x1", "1"), ("x2", "x2", "1")],
    );
    let sigma = parse("-2*log(x2)", &g.chart().symbol_table()).unwrap();
    let r = conformal_rescale(&g, &sigma, 1, &zt(&g)).unwrap();
    assert!(!r.v_dependent);
    let sk = detect_siklos(&r.metric, &Roles::leading(&g), &zt(&g)).unwrap();
    assert!(sk.siklos);
    assert_eq!(conformal_rescale(&g, &Expr::zero(), 1, &zt(&g)).unwrap().metric, g);
}

#[test]
fn rescaling_by_u_keeps_kundt() {
    let g = metric_on(
        chart(&["u", "v", "x1"], &[], &[0.0; 3]),
        &[("u", "v", "1"), ("u", "u", "u*v"), ("u", "x1", "x1/2"), ("x1", "x1", "1")],
    );
    let sigma = Expr::coord("u");
    let r = conformal_rescale(&g, &sigma, 1, &zt(&g)).unwrap();
    let v = VectorField::coordinate(g.chart(), 1);
    assert!(analyze(&r.metric, &v, &zt(&g)).unwrap().kundt);
    assert!(conformal_rescale(&g, &Expr::coord("v"), 1, &zt(&g)).unwrap().v_dependent);
}

fn fields(c: &Chart, rows: &[&[&str]]) -> Vec<VectorField> {
    let t = c.symbol_table();
    rows.iter().map(|r| VectorField::new(c, r.iter().map(|e| parse(e, &t).unwrap()).collect()).unwrap()).collect()
}

fn form(c: &Chart, entries: &[(usize, usize, &str)]) -> SquareMatrix {
    let t = c.symbol_table();
    let mut m = SquareMatrix::zeros(c.dim());
    for (i, j, e) in entries {
        let v = Canon::from_expr(&parse(e, &t).unwrap()).unwrap();
        m.set(*i, *j, v.clone());
        m.set(*j, *i, v);
    }
    m
}

#[test]
fn assemble_minkowski_from_frame() {
    let c = chart(&["u", "v", "x"], &[], &[0.0; 3]);
    let f = fields(&c, &[&["0", "1", "0"], &["0", "0", "1"], &["1", "0", "0"]]);
    let h = form(&c, &[(2, 2, "1")]);
    let g = build_kundt_metric(&f[0], &f[1..2], &f[2], &h, &c.zero_test(1)).unwrap();
    let expect = metric_on(c, &[("u", "v", "1"), ("x", "x", "1")]);
    assert_eq!(g, expect);
}

#[test]
fn suspension_frame_assembles_to_kundt() {
    let c = chart(&["x", "y", "t"], &[], &[0.0; 3]);
    let f = fields(&c, &[&["exp(t*log(2))", "0", "0"], &["0", "0", "1"], &["0", "1", "0"]]);
    let h = form(&c, &[(2, 2, "1")]);
    let zt = c.zero_test(2);
    let g = build_kundt_metric(&f[0], &f[1..2], &f[2], &h, &zt).unwrap();
    let v = VectorField::from_canon(g.chart_arc().clone(), f[0].comps().to_vec()).unwrap();
    let r = analyze(&g, &v, &zt).unwrap();
    assert!(r.kundt);
    assert!(zt.is_zero_canon(&g.get(0, 1).sub(&canon(&g, "exp(-t*log(2))"))).unwrap());
}

#[test]
fn oversized_radical_is_rejected() {
    let c = chart(&["u", "v", "x"], &[], &[0.0; 3]);
    let f = fields(&c, &[&["0", "1", "0"], &["0", "0", "1"], &["1", "0", "0"]]);
    let h = SquareMatrix::zeros(3);
    assert!(matches!(
        build_kundt_metric(&f[0], &f[1..2], &f[2], &h, &c.zero_test(1)),
        Err(HierarchyError::FrameDegenerate(_))
    ));
    let dependent = fields(&c, &[&["0", "1", "0"], &["0", "2", "0"], &["1", "0", "0"]]);
    assert!(matches!(
        build_kundt_metric(&dependent[0], &dependent[1..2], &dependent[2], &form(&c, &[(2, 2, "1")]), &c.zero_test(1)),
        Err(HierarchyError::FrameDegenerate(_))
    ));
}

#[test]
fn assembled_adapted_form_round_trips() {
    let c = chart(&["u", "v", "x1", "x2"], &[], &[0.0; 4]);
    let t = c.symbol_table();
    let p = |s: &str| Canon::from_expr(&parse(s, &t).unwrap()).unwrap();
    let roles = Roles { u: 0, v: 1, transverse: vec![2, 3] };
    let h_fn = p("v^2*x1 + u");
    let w = vec![p("v*x2"), p("u^3")];
    let mut h = SquareMatrix::identity(2);
    h.set(0, 1, p("u*x1/10"));
    h.set(1, 0, p("u*x1/10"));
    let g = assemble_adapted(c, &roles, &h_fn, &w, &h).unwrap();
    let f = detect_kundt_form(&g, &roles, &zt(&g)).unwrap();
    assert_eq!((f.h_fn, f.w, f.h), (h_fn, w, h));
}

use super::*;

#[test]
fn roster_names_are_unique_and_buildable() {
    for (i, e) in ROSTER.iter().enumerate() {
        assert!(ROSTER[..i].iter().all(|o| o.name != e.name));
        let entry = get(e.name, &[]).unwrap();
        assert_eq!(entry.params.len(), e.params.len());
        assert!(!entry.expect.is_empty());
    }
}

#[test]
fn default_roster_passes() {
    let t = run_all(0);
    for r in &t.rows {
        assert!(r.pass, "{} failed: {:?} {:?}", r.name, r.error, r.checks);
    }
    assert_eq!(t.rows.len(), ROSTER.len());
}

#[test]
fn corrupted_expectation_gives_one_failing_row() {
    let mut entries: Vec<Entry> = ["minkowski", "cahen_wallach", "heis3"].iter().map(|n| get(n, &[]).unwrap()).collect();
    entries[1].expect.push(Expect::Class("PpWave"));
    let t = run_entries(&entries, 3);
    let failing: Vec<_> = t.rows.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    assert_eq!(failing, ["cahen_wallach"]);
    assert!(!t.all_pass());
}

#[test]
fn empty_overrides_use_defaults() {
    let e = get("minkowski", &[]).unwrap();
    assert_eq!(e.params, vec![("dim".to_string(), "4".to_string())]);
    let Fixture::Geometric(f) = e.fixture else { panic!() };
    assert_eq!(f.metric.dim(), 4);
}

#[test]
fn overrides_and_errors() {
    let Fixture::Geometric(f) = get("minkowski", &[("dim", "3")]).unwrap().fixture else { panic!() };
    assert_eq!(f.metric.dim(), 3);
    assert!(matches!(get("nosuch", &[]), Err(CatalogError::UnknownEntry(_))));
    for (name, k, v) in [
        ("minkowski", "dim", "9"),
        ("minkowski", "dim", "four"),
        ("minkowski", "rank", "3"),
        ("pp_wave", "H", "v*x1"),
        ("pp_wave", "H", "x1 +"),
        ("cahen_wallach", "S", "[[1, 0], [0, 0]]"),
        ("cahen_wallach", "S", "[[1, 2], [0, 1]]"),
        ("cahen_wallach", "S", "[[u, 0], [0, 1]]"),
        ("plane_wave", "S", "[[x1, 0], [0, 1]]"),
        ("suspension_local", "lambda", "-2"),
        ("r_ltimes_heis", "A", "[[1, 0, 0], [0, 0, 0], [0, 0, 0]]"),
        ("conformal", "base", "heis3"),
        ("conformal", "sigma", "v"),
    ] {
        assert!(matches!(get(name, &[(k, v)]), Err(CatalogError::BadParameter { .. })), "{} {}={}", name, k, v);
    }
}

#[test]
fn cahen_wallach_reports_its_matrix() {
    let e = get("cahen_wallach", &[("S", "[[2, 1], [1, -3]]")]).unwrap();
    let Fixture::Geometric(f) = &e.fixture else { panic!() };
    let a = analyze_fixture(f, &f.metric.zero_test(1)).unwrap();
    let c = a.classification.unwrap();
    assert_eq!(class_text(&c.most_specific), "CahenWallach, S=[[2,1],[1,-3]]");
    assert!(check_entry(&e, 1).pass);
}

#[test]
fn matrix_cells_respect_nesting() {
    let cells = matrix_cells("[[f(1, 2), 0], [0, [1]]]").unwrap();
    assert_eq!(cells[0], vec!["f(1, 2)".to_string(), "0".to_string()]);
    assert_eq!(cells[1], vec!["0".to_string(), "[1]".to_string()]);
    assert!(matrix_cells("1, 2").is_none());
}

#[test]
fn suspension_matches_frame_data() {
    let e = get("suspension_local", &[("lambda", "3")]).unwrap();
    let Fixture::Geometric(f) = &e.fixture else { panic!() };
    let zt = f.metric.zero_test(5);
    let t = f.metric.chart().symbol_table();
    let expect = Canon::from_expr(&parse("exp(-t*log(3))", &t).unwrap()).unwrap();
    assert!(zt.is_zero_canon(&f.metric.get(0, 1).sub(&expect)).unwrap());
    assert!(check_entry(&e, 5).pass);
}

use super::*;
use kundt_core::catalog::{get, ROSTER};

const SAMPLE: &str = "\
# comment line
[chart]
coords: u, v, x1
constraint: x1 > 0
base: x1=2

[metric]
g(u,v) = 1
g(u,u) = x1^2   # profile
g(x1,x1) = 1

[field V]
v = 1

[field W]
components: 1, 0, 0

[roles]
u=u, v=v, transverse=x1
";

#[test]
fn parses_sections() {
    let f = parse_metric_file(SAMPLE).unwrap();
    let g = f.metric.as_ref().unwrap();
    assert_eq!(g.chart().base(), &[0.0, 0.0, 2.0]);
    assert_eq!(g.chart().coords()[2].constraint, Constraint::Positive);
    assert_eq!(g.expr(0, 0).to_string(), "x1^2");
    assert_eq!(g.get(1, 0), &Canon::one());
    assert_eq!(f.field("V").unwrap().exprs()[1], Expr::one());
    assert_eq!(f.field("W").unwrap().exprs()[0], Expr::one());
    assert_eq!(f.roles, Some(Roles { u: 0, v: 1, transverse: vec![2] }));
}

#[test]
fn positive_coordinates_default_to_one() {
    let f = parse_metric_file("[chart]\ncoords: u, v, y\nconstraint: y > 0\n[metric]\ng(u,v) = 1\ng(y,y) = 1\n").unwrap();
    assert_eq!(f.metric.unwrap().chart().base()[2], 1.0);
}

#[test]
fn errors_carry_line_numbers() {
    let bad = "[chart]\ncoords: u, v\n[metric]\ng(u,v) = 1\ng(u,u) = w\n";
    assert!(matches!(parse_metric_file(bad), Err(FileError::Syntax { line: 5, .. })));
    let conflict = "[chart]\ncoords: u, v\n[metric]\ng(u,v) = 1\ng(v,u) = 2\n";
    assert!(matches!(parse_metric_file(conflict), Err(FileError::Syntax { line: 5, .. })));
    let stray = "coords: u\n";
    assert!(matches!(parse_metric_file(stray), Err(FileError::Syntax { line: 1, .. })));
    for text in [
        "[chart]\ncoords: u, v\n",
        "[chart]\ncoords: u, v\n[metric]\ng(u,v) = 1\n[nonsense]\n",
        "[chart]\ncoords: u, v\n[metric]\ng(u,v) = 1\n[roles]\nu=u\n",
        "[chart]\ncoords: u, v\n[metric]\ng(u,u) = 1\n",
        "[chart]\ncoords: u, v\n[metric]\ng(u,v) = 1\n[field V]\ncomponents: 1\n",
        "[algebra]\nbasis: a, b, c\nbracket(a,b) = c\nbracket(a,c) = a\nip(a,b) = 1\nip(c,c) = 1\n",
        "",
    ] {
        assert!(parse_metric_file(text).is_err(), "{:?}", text);
    }
}

#[test]
fn interval_params_and_box_round_trip() {
    let text = "[chart]\ncoords: u, v, r\nconstraint: -1 < r < 3\nparams: k=1/2\nbox: -1, 1\n[metric]\ng(u,v) = 1\ng(r,r) = 1 + k*r^2\n";
    let f = parse_metric_file(text).unwrap();
    let g = f.metric.as_ref().unwrap();
    assert_eq!(g.chart().coords()[2].constraint, Constraint::Interval(-1.0, 3.0));
    assert_eq!(g.chart().base()[2], 1.0);
    assert_eq!(g.chart().params()[0].1, 0.5);
    assert_eq!(g.chart().sample_box(), (-1.0, 1.0));
    assert_eq!(parse_metric_file(&write_metric_file(&f)).unwrap(), f);
}

#[test]
fn algebra_section() {
    let text = "[algebra]\nbasis: T, X, Y, Z\nbracket(X,Y) = Z\nbracket(T,X) = Y\nbracket(T,Y) = -X\nip(T,Z) = 1\nip(X,X) = 1\nip(Y,Y) = 1\nV = Z\n";
    let f = parse_metric_file(text).unwrap();
    let a = f.algebra.as_ref().unwrap();
    assert_eq!(a.algebra.dim(), 4);
    assert_eq!(a.v, Some(a.algebra.basis(3)));
    assert_eq!(parse_metric_file(&write_metric_file(&f)).unwrap(), f);
}

#[test]
fn linear_combinations_print_readably() {
    let names: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
    assert_eq!(linear_text(&names, &[q(0), q(0), q(0)]), "0");
    assert_eq!(linear_text(&names, &[q(-1), q(2), kundt_core::liealg::qr(1, 3)]), "-A + 2*B + 1/3*C");
    assert_eq!(linear_text(&names, &[q(0), q(-3), q(1)]), "-3*B + C");
}

#[test]
fn every_catalog_entry_round_trips() {
    for info in ROSTER {
        let e = get(info.name, &[]).unwrap();
        let f = MetricFile::from_entry(&e);
        let back = parse_metric_file(&write_metric_file(&f)).unwrap_or_else(|err| panic!("{}: {}", info.name, err));
        assert_eq!(back.roles, f.roles, "{}", info.name);
        assert_eq!(back.algebra, f.algebra, "{}", info.name);
        if let (Some(a), Some(b)) = (&f.metric, &back.metric) {
            let zt = a.zero_test(7);
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    assert!(zt.is_zero_canon(&a.get(i, j).sub(b.get(i, j))).unwrap(), "{} g({},{})", info.name, i, j);
                }
            }
            let (v, w) = (f.field("V").unwrap(), back.field("V").unwrap());
            for i in 0..a.dim() {
                assert!(zt.is_zero_canon(&v.comp(i).sub(w.comp(i))).unwrap(), "{} V", info.name);
            }
        }
    }
}

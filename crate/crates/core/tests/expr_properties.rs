use kundt_core::catalog::random::{polynomial, rng, PolySpec};
use kundt_core::expr::{parse, Canon, DomainBox, EvalPoint, Expr, Func, Symbol, SymbolTable, ZeroTest};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn table() -> SymbolTable {
    SymbolTable::new(&VARS, &[])
}

fn zt(seed: u64) -> ZeroTest {
    let syms: Vec<Symbol> = VARS.iter().map(|s| Symbol::new(s)).collect();
    ZeroTest::new(DomainBox::cube(&syms, -1.5, 1.5), seed)
}

fn sub(a: Expr, b: Expr) -> Expr {
    Expr::Add(vec![a, Expr::Mul(vec![Expr::int(-1), b])])
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (-4i64..=4).prop_map(Expr::int),
        (-4i64..=4, 1i64..=5).prop_map(|(n, d)| Expr::rational(n, d)),
        prop::sample::select(VARS.to_vec()).prop_map(Expr::coord),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Add),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Mul),
            (inner.clone(), 0i32..=3).prop_map(|(e, n)| e.pow(n)),
            (inner.clone(), prop::sample::select(vec![Func::Sin, Func::Cos, Func::Exp]))
                .prop_map(|(e, f)| Expr::func(f, e)),
            (inner.clone(), prop::sample::select(VARS.to_vec())).prop_map(|(e, v)| Expr::Div(
                Box::new(e),
                Box::new(Expr::Add(vec![Expr::int(1), Expr::coord(v).pow(2)]))
            )),
        ]
    })
}

fn var() -> impl Strategy<Value = Symbol> {
    prop::sample::select(VARS.to_vec()).prop_map(Symbol::new)
}

fn point() -> impl Strategy<Value = EvalPoint> {
    prop::array::uniform3(-1.0f64..1.0).prop_map(|v| EvalPoint::from_pairs(VARS.iter().copied().zip(v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printed_expressions_parse_back(e in expr()) {
        let back = parse(&e.to_string(), &table()).unwrap();
        prop_assert!(zt(1).is_zero(&sub(e, back)).unwrap());
    }

    #[test]
    fn simplify_is_idempotent(e in expr()) {
        let once = e.simplify().unwrap();
        prop_assert_eq!(once.simplify().unwrap(), once.clone());
        prop_assert!(zt(2).is_zero(&sub(e, once)).unwrap());
    }

    #[test]
    fn derivative_is_linear(e1 in expr(), e2 in expr(), a in (-5i64..=5, 1i64..=4), b in (-5i64..=5, 1i64..=4), c in var()) {
        let (a, b) = (Expr::rational(a.0, a.1), Expr::rational(b.0, b.1));
        let combo = Expr::Add(vec![Expr::Mul(vec![a.clone(), e1.clone()]), Expr::Mul(vec![b.clone(), e2.clone()])]);
        let lhs = combo.differentiate(&c).unwrap();
        let rhs = Expr::Add(vec![
            Expr::Mul(vec![a, e1.differentiate(&c).unwrap()]),
            Expr::Mul(vec![b, e2.differentiate(&c).unwrap()]),
        ]);
        prop_assert!(zt(3).is_zero(&sub(lhs, rhs)).unwrap());
    }

    #[test]
    fn derivative_obeys_leibniz(e1 in expr(), e2 in expr(), c in var()) {
        let lhs = Expr::Mul(vec![e1.clone(), e2.clone()]).differentiate(&c).unwrap();
        let rhs = Expr::Add(vec![
            Expr::Mul(vec![e1.clone(), e2.differentiate(&c).unwrap()]),
            Expr::Mul(vec![e2, e1.differentiate(&c).unwrap()]),
        ]);
        prop_assert!(zt(4).is_zero(&sub(lhs, rhs)).unwrap());
    }

    #[test]
    fn mixed_partials_commute(seed in any::<u64>(), i in 0usize..3, j in 0usize..3) {
        let syms: Vec<Symbol> = VARS.iter().map(|s| Symbol::new(s)).collect();
        let p = polynomial(&mut rng(seed), &syms, PolySpec::new(5, 6).with_constant());
        prop_assert_eq!(p.diff(&syms[i]).diff(&syms[j]), p.diff(&syms[j]).diff(&syms[i]));
    }

    #[test]
    fn derivative_matches_central_difference(e in expr(), c in var(), p in point()) {
        let d = e.differentiate(&c).unwrap();
        let h = 1e-5;
        let x = p.get(&c).unwrap();
        let (Ok(fp), Ok(fm), Ok(dv)) = (e.eval(&p.clone().with(&c, x + h)), e.eval(&p.clone().with(&c, x - h)), d.eval(&p)) else {
            return Ok(());
        };
        let fd = (fp - fm) / (2.0 * h);
        prop_assume!(dv.is_finite() && fd.is_finite() && dv.abs() < 1e6);
        prop_assert!((fd - dv).abs() <= 1e-4 * (1.0 + dv.abs()), "fd {} vs {}", fd, dv);
    }

    #[test]
    fn nonzero_polynomials_are_never_sampled_as_zero(seed in any::<u64>(), nvars in 1usize..=6, deg in 1u32..=12) {
        let names = ["a", "b", "c", "d", "e", "f"];
        let syms: Vec<Symbol> = names[..nvars].iter().map(|s| Symbol::new(s)).collect();
        let p = polynomial(&mut rng(seed), &syms, PolySpec::new(deg, 5));
        prop_assume!(!p.is_zero());
        let z = ZeroTest::new(DomainBox::cube(&syms, -2.0, 2.0), seed);
        prop_assert!(!z.sampled_zero(&p).unwrap());
    }
}

#[test]
fn sampled_test_accepts_trigonometric_identity() {
    let e = parse("sin(x)^2 + cos(x)^2 - 1", &table()).unwrap();
    assert!(zt(0).is_zero(&e).unwrap());
    let c = Canon::from_expr(&parse("exp(2*log(x + 3)) - (x + 3)^2", &table()).unwrap()).unwrap();
    assert!(zt(0).is_zero_canon(&c).unwrap());
}

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn ctx(names: &[&str]) -> Ctx {
    VarContext::grevlex(names).unwrap()
}

fn p(c: &Ctx, s: &str) -> Polynomial {
    parse(c, s).unwrap()
}

#[test]
fn parse_commutativity_cancels() {
    let c = ctx(&["x", "y"]);
    assert!(p(&c, "x*y - y*x").is_zero());
}

#[test]
fn parse_binomial_identity() {
    let c = ctx(&["x"]);
    assert!(p(&c, "(x+1)^2 - x^2 - 2*x - 1").is_zero());
}

#[test]
fn parse_original_tom_generator() {
    let c = ctx(&["x1", "x2", "x3", "x4", "z1", "z2", "z3", "z4"]);
    let g = p(&c, "x3*z2 - x4*z1");
    let built = &(&Polynomial::var(&c, "x3").unwrap() * &Polynomial::var(&c, "z2").unwrap())
        - &(&Polynomial::var(&c, "x4").unwrap() * &Polynomial::var(&c, "z1").unwrap());
    assert_eq!(g, built);
    // grevlex with x1 > ... > z4: x4*z1 ranks above x3*z2
    assert_eq!(g.to_string(), "-x4*z1 + x3*z2");
}

#[test]
fn canonical_printing() {
    let c = ctx(&["x", "y", "z"]);
    assert_eq!(p(&c, "0").to_string(), "0");
    assert_eq!(p(&c, "-1").to_string(), "-1");
    assert_eq!(p(&c, "3*y*x^2 - 1 + z").to_string(), "3*x^2*y + z - 1");
    assert_eq!(p(&c, "-(x - y)^2").to_string(), "-x^2 + 2*x*y - y^2");
    let lex = VarContext::new(&["x", "y", "z"], MonomialOrder::Lex).unwrap();
    assert_eq!(p(&lex, "z^5 + x").to_string(), "x + z^5");
}

#[test]
fn parse_errors_report_positions() {
    let c = ctx(&["x", "y"]);
    match parse(&c, "2x") {
        Err(Error::Syntax { pos, msg }) => {
            assert_eq!(pos, 1);
            assert!(msg.contains("implicit multiplication"));
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(parse(&c, "x y"), Err(Error::Syntax { pos: 2, .. })));
    assert_eq!(
        parse(&c, "x + q"),
        Err(Error::UndeclaredVariable {
            name: "q".into(),
            pos: 4
        })
    );
    assert_eq!(parse(&c, "x^-1"), Err(Error::NegativeExponent { pos: 2 }));
    assert!(matches!(parse(&c, "x^(2)"), Err(Error::Syntax { pos: 2, .. })));
    assert!(matches!(parse(&c, "(x + y"), Err(Error::Syntax { pos: 6, .. })));
    assert!(matches!(parse(&c, "x $ y"), Err(Error::Syntax { pos: 2, .. })));
    assert!(matches!(parse(&c, ""), Err(Error::Syntax { pos: 0, .. })));
    assert_eq!(parse(&c, "x^4294967296"), Err(Error::ExponentOverflow));
}

#[test]
fn arithmetic_examples() {
    let c = ctx(&["x", "y"]);
    let (x, y) = (p(&c, "x"), p(&c, "y"));
    assert_eq!(x.try_add(&y).unwrap(), p(&c, "x + y"));
    let prod = p(&c, "x+y").try_mul(&p(&c, "x-y")).unwrap();
    assert_eq!(prod, p(&c, "x^2 - y^2"));
    let a = p(&c, "3*x^2*y - 7*y + 11");
    assert!(a.try_sub(&a).unwrap().is_zero());
}

#[test]
fn context_mismatch_is_reported() {
    let a = p(&ctx(&["x"]), "x");
    let b = p(&ctx(&["y"]), "y");
    assert_eq!(a.try_add(&b), Err(Error::ContextMismatch));
    assert_eq!(a.try_mul(&b), Err(Error::ContextMismatch));
    assert_eq!(a.exact_div(&b), Err(Error::ContextMismatch));
}

#[test]
fn exact_division_examples() {
    let c = ctx(&["x", "y"]);
    let q = p(&c, "x^2*y + x*y^2").exact_div(&p(&c, "x*y")).unwrap();
    assert_eq!(q, p(&c, "x + y"));
    assert!(matches!(
        p(&c, "x + 1").exact_div(&p(&c, "x")),
        Err(Error::InexactDivision { .. })
    ));
    // coefficient not divisible over the integers
    assert!(matches!(
        p(&c, "3*x").exact_div(&p(&c, "2*x")),
        Err(Error::InexactDivision { .. })
    ));
    assert_eq!(p(&c, "x").exact_div(&p(&c, "0")), Err(Error::DivisionByZero));
    assert!(p(&c, "0").exact_div(&p(&c, "x")).unwrap().is_zero());
}

#[test]
fn substitution_examples() {
    let src = ctx(&["t2", "t4"]);
    let dst = ctx(&["x1", "x2", "x3", "z2"]);
    let mut s = Substitution::new(&src, &dst);
    s.set("t2", p(&dst, "x1*x2*z2")).unwrap();
    s.set("t4", p(&dst, "x3")).unwrap();
    let img = p(&src, "t4*t4*t2").substitute(&s).unwrap();
    assert_eq!(img, p(&dst, "x3^2*x1*x2*z2"));
    let g1 = img.exact_div(&p(&dst, "x3")).unwrap();
    assert_eq!(g1, p(&dst, "x3*(x1*x2*z2)"));

    let c = ctx(&["x", "y"]);
    let f = p(&c, "x^3 - 2*x*y + y^2 + 5");
    assert_eq!(f.substitute(&Substitution::identity(&c)).unwrap(), f);

    let mut zero = Substitution::new(&c, &c);
    zero.set("x", Polynomial::zero(&c)).unwrap();
    zero.set("y", Polynomial::zero(&c)).unwrap();
    assert!(p(&c, "x + y").substitute(&zero).unwrap().is_zero());
}

#[test]
fn substitution_errors() {
    let c = ctx(&["x", "y"]);
    let d = ctx(&["u"]);
    let mut s = Substitution::new(&c, &d);
    s.set("x", p(&d, "u")).unwrap();
    assert_eq!(
        p(&c, "x").substitute(&s),
        Err(Error::MissingAssignment("y".into()))
    );
    assert_eq!(s.set("y", p(&c, "x")).err(), Some(Error::ContextMismatch));
}

#[test]
fn linear_coefficient_extraction() {
    let c = ctx(&["a", "b", "z1", "z2"]);
    let parts = p(&c, "a*z1 + b*z2").linear_coeffs_named(&["z1", "z2"]).unwrap();
    assert_eq!(parts, vec![p(&c, "a"), p(&c, "b")]);
    match p(&c, "z1*z2").linear_coeffs_named(&["z1", "z2"]) {
        Err(Error::NotLinear { term }) => assert_eq!(term, "z1*z2"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(p(&c, "a + z1").linear_coeffs_named(&["z1", "z2"]).is_err());
}

#[test]
fn embed_into_extension() {
    let c = ctx(&["x", "y"]);
    let e = c.extend("T").unwrap();
    let f = p(&c, "x^2 - y");
    let g = f.embed(&e).unwrap();
    assert_eq!(g, p(&e, "x^2 - y"));
    assert!(g.embed(&c).is_err());
}

#[test]
fn content_and_primitive_part() {
    let c = ctx(&["x", "y"]);
    let f = p(&c, "-6*x^2 + 4*y - 2");
    assert_eq!(f.content(), BigInt::from(2));
    assert_eq!(f.primitive(), p(&c, "3*x^2 - 2*y + 1"));
}

fn poly_strategy(c: Ctx) -> impl Strategy<Value = Polynomial> {
    let n = c.len();
    prop::collection::vec(
        (prop::collection::vec(0u32..=3, n), -9i64..=9),
        0..6,
    )
    .prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= 3)
            .map(|(e, k)| (Monomial::new(e), BigInt::from(k)));
        Polynomial::from_terms(&c, terms)
    })
}

fn ctx4() -> Ctx {
    ctx(&["w", "x", "y", "z"])
}

proptest! {
    #[test]
    fn ring_axioms(a in poly_strategy(ctx4()), b in poly_strategy(ctx4()), c in poly_strategy(ctx4())) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn print_parse_round_trip(a in poly_strategy(ctx4())) {
        let text = a.to_string();
        prop_assert_eq!(parse(a.context(), &text).unwrap(), a);
    }

    #[test]
    fn exact_div_inverts_multiplication(a in poly_strategy(ctx4()), d in poly_strategy(ctx4())) {
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&a * &d).exact_div(&d).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_ring_map(
        a in poly_strategy(ctx4()),
        b in poly_strategy(ctx4()),
        imgs in prop::collection::vec(poly_strategy(ctx(&["s", "t"])), 4),
    ) {
        let src = a.context().clone();
        let dst = imgs[0].context().clone();
        let mut s = Substitution::new(&src, &dst);
        for (name, img) in src.names().iter().zip(imgs) {
            s.set(name, img).unwrap();
        }
        let sa = a.substitute(&s).unwrap();
        let sb = b.substitute(&s).unwrap();
        prop_assert_eq!((&a + &b).substitute(&s).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).substitute(&s).unwrap(), &sa * &sb);
    }

    #[test]
    fn substitution_composes(
        a in poly_strategy(ctx4()),
        first in prop::collection::vec(poly_strategy(ctx(&["s", "t"])), 4),
        second in prop::collection::vec(-3i64..=3, 2),
    ) {
        let src = a.context().clone();
        let mid = first[0].context().clone();
        let dst = ctx(&["u"]);
        let u = Polynomial::var(&dst, "u").unwrap();
        let mut s1 = Substitution::new(&src, &mid);
        for (name, img) in src.names().iter().zip(first.iter()) {
            s1.set(name, img.clone()).unwrap();
        }
        let mut s2 = Substitution::new(&mid, &dst);
        s2.set("s", &u + &Polynomial::constant(&dst, second[0])).unwrap();
        s2.set("t", &u * &Polynomial::constant(&dst, second[1])).unwrap();
        let mut composite = Substitution::new(&src, &dst);
        for (name, img) in src.names().iter().zip(first.iter()) {
            composite.set(name, img.substitute(&s2).unwrap()).unwrap();
        }
        prop_assert_eq!(
            a.substitute(&s1).unwrap().substitute(&s2).unwrap(),
            a.substitute(&composite).unwrap()
        );
    }

    #[test]
    fn linear_coeffs_recombine(cs in prop::collection::vec(poly_strategy(ctx(&["a", "b", "z1", "z2", "z3"])), 3)) {
        let c = cs[0].context().clone();
        let zs = [2usize, 3, 4];
        // force each coefficient z-free by killing z-variables
        let mut kill = Substitution::identity(&c);
        for &z in &zs {
            kill.set(c.name(z), Polynomial::zero(&c)).unwrap();
        }
        let coeffs: Vec<_> = cs.iter().map(|q| q.substitute(&kill).unwrap()).collect();
        let f = coeffs.iter().zip(zs).fold(Polynomial::zero(&c), |acc, (q, z)| {
            &acc + &(q * &Polynomial::var_at(&c, z))
        });
        let back = f.linear_coeffs(&zs).unwrap();
        prop_assert_eq!(&back, &coeffs);
        let again = back.iter().zip(zs).fold(Polynomial::zero(&c), |acc, (q, z)| {
            &acc + &(q * &Polynomial::var_at(&c, z))
        });
        prop_assert_eq!(again, f);
    }
}

//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
pub mod parse;
mod polynomial;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, ParseError};
pub use polynomial::{PolyDisplay, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("ambient mismatch: {left} variables vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("arity mismatch: expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, Rational};
    use proptest::prelude::*;

    fn parse(s: &str, names: &[&str]) -> Polynomial {
        parse_polynomial(s, names, MonomialOrder::GrevLex).unwrap()
    }

    const Y: [&str; 2] = ["y1", "y2"];

    #[test]
    fn add_examples() {
        let xy = ["x", "y"];
        assert_eq!(&parse("x+y", &xy) + &parse("-y", &xy), parse("x", &xy));
        let p = parse("x^3 - y", &xy);
        assert_eq!(&p + &Polynomial::zero(2, MonomialOrder::GrevLex), p);

        let sum = &parse("y1^4 - y2^4", &Y) + &parse("y1^5 - y2^5", &Y);
        let expected = parse("y1^5 + y1^4 - y2^5 - y2^4", &Y);
        assert_eq!(sum, expected);
        // evaluation check at three rational points
        for pt in [[int(2), int(3)], [int(-1), int(5)], [Rational::new(1.into(), 3.into()), int(7)]] {
            let direct = parse("y1^4 - y2^4", &Y).evaluate(&pt).unwrap() + parse("y1^5 - y2^5", &Y).evaluate(&pt).unwrap();
            assert_eq!(expected.evaluate(&pt).unwrap(), direct);
        }
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Polynomial::var(2, MonomialOrder::GrevLex, 0);
        let b = Polynomial::var(3, MonomialOrder::GrevLex, 0);
        assert!(matches!(a.checked_add(&b), Err(PolyError::AmbientMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(PolyError::AmbientMismatch { .. })));
    }

    #[test]
    fn mul_examples() {
        let x = ["x"];
        assert_eq!(&parse("x", &x) * &parse("x", &x), parse("x^2", &x));
        let p = parse("x^2 - 7", &x);
        assert_eq!(&p * &Polynomial::one(1, MonomialOrder::GrevLex), p);
        assert_eq!(
            &parse("y1 + y2", &Y) * &parse("y1^5 - y2^5", &Y),
            parse("y1^6 + y1^5*y2 - y1*y2^5 - y2^6", &Y)
        );
    }

    #[test]
    fn substitute_examples() {
        let t = ["t"];
        let xy = ["x", "y"];
        let cusp = parse("y^2 - x^3", &xy);
        assert!(cusp.substitute(&[parse("t^2", &t), parse("t^3", &t)]).unwrap().is_zero());
        let images = [parse("x", &xy), parse("x*y", &xy)];
        assert_eq!(parse("x", &xy).substitute(&images).unwrap(), parse("x", &xy));
        assert_eq!(parse("y", &xy).substitute(&images).unwrap(), parse("x*y", &xy));
        assert!(matches!(cusp.substitute(&images[..1]), Err(PolyError::Arity { .. })));
    }

    #[test]
    fn evaluate_examples() {
        let names = ["x1", "y1", "x2", "y2"];
        let pt = [int(0), int(1), int(0), int(-1)];
        assert_eq!(parse("y1 - y2", &names).evaluate(&pt).unwrap(), int(2));
        assert_eq!(Polynomial::zero(4, MonomialOrder::GrevLex).evaluate(&pt).unwrap(), int(0));
        assert_eq!(parse("y1^2 - x1 - 1", &names).evaluate(&pt).unwrap(), int(0));
        assert!(parse("y1", &names).evaluate(&pt[..2]).is_err());
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
        let term = (proptest::collection::vec(0u32..=2, nvars), -5i64..=5);
        proptest::collection::vec(term, 0..5).prop_map(move |ts| {
            Polynomial::from_terms(
                nvars,
                MonomialOrder::GrevLex,
                ts.into_iter().map(|(e, c)| (Monomial::new(e), int(c))),
            )
        })
    }

    fn arb_point(nvars: usize) -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), nvars)
            .prop_map(|v| v.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in arb_poly(5), b in arb_poly(5), c in arb_poly(5)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn evaluation_is_a_ring_morphism(a in arb_poly(4), b in arb_poly(4), pt in arb_point(4)) {
            let (ea, eb) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
            prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), ea + eb);
        }

        #[test]
        fn substitution_is_a_ring_morphism(a in arb_poly(3), b in arb_poly(3), imgs in proptest::collection::vec(arb_poly(2), 3)) {
            let sa = a.substitute(&imgs).unwrap();
            let sb = b.substitute(&imgs).unwrap();
            prop_assert_eq!((&a * &b).substitute(&imgs).unwrap(), &sa * &sb);
            prop_assert_eq!((&a + &b).substitute(&imgs).unwrap(), &sa + &sb);
        }

        #[test]
        fn order_change_preserves_value(a in arb_poly(3)) {
            let lex = a.with_order(MonomialOrder::Lex);
            prop_assert_eq!(&lex, &a);
            let back = lex.with_order(MonomialOrder::GrevLex);
            prop_assert_eq!(back.terms(), a.terms());
        }

        #[test]
        fn serde_round_trip(a in arb_poly(3)) {
            let json = serde_json::to_string(&a).unwrap();
            let b: Polynomial = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}

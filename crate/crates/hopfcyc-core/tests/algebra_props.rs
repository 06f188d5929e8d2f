//! Property tests of the exact scalar ring, the expression grammar and the
//! polynomial differential forms.

use std::collections::BTreeMap;

use hopfcyc_core::emit::{self, Format};
use hopfcyc_core::parse::parse_scalar;
use hopfcyc_core::simplex::{dirichlet, integrate_over_simplex, AffineSimplex};
use hopfcyc_core::{q, qf, PolyForm, ScalarExpr, Var};
use proptest::prelude::*;

fn vars() -> Vec<Var> {
    vec![Var::new("x"), Var::new("y"), Var::new("z")]
}

/// Polynomials in x, y, z with up to four terms, small exponents and
/// small rational coefficients, optionally times cos(x).
fn poly() -> impl Strategy<Value = ScalarExpr> {
    let term = (-4i64..=4, 1i64..=3, 0u32..=2, 0u32..=2, 0u32..=1, any::<bool>());
    prop::collection::vec(term, 1..=4).prop_map(|ts| {
        let v = vars();
        let mut acc = ScalarExpr::zero();
        for (n, d, a, b, c, trig) in ts {
            let mut t = ScalarExpr::rational(qf(n, d));
            t = &t * &ScalarExpr::var(v[0].clone()).pow(a);
            t = &t * &ScalarExpr::var(v[1].clone()).pow(b);
            t = &t * &ScalarExpr::var(v[2].clone()).pow(c);
            if trig {
                t = &t * &ScalarExpr::cos(v[0].clone());
            }
            acc += &t;
        }
        acc
    })
}

fn form(deg: usize) -> impl Strategy<Value = PolyForm> {
    prop::collection::vec(poly(), 3).prop_map(move |cs| {
        let v = vars();
        let idx: Vec<Vec<usize>> = hopfcyc_core::lie::subsets(3, deg);
        let mut f = PolyForm::zero(&v);
        for (i, c) in idx.into_iter().zip(cs) {
            f.add_term(i, c);
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(), b in poly()) {
        let x = &vars()[0];
        prop_assert_eq!((&a * &b).diff(x), &(&a.diff(x) * &b) + &(&a * &b.diff(x)));
    }

    #[test]
    fn substitution_is_a_ring_map(a in poly(), b in poly(), s in poly()) {
        let map: BTreeMap<Var, ScalarExpr> = [(vars()[1].clone(), s)].into_iter().collect();
        prop_assert_eq!((&a * &b).subs(&map).unwrap(), &a.subs(&map).unwrap() * &b.subs(&map).unwrap());
        prop_assert_eq!((&a + &b).subs(&map).unwrap(), &a.subs(&map).unwrap() + &b.subs(&map).unwrap());
    }

    #[test]
    fn expr_format_round_trips(a in poly()) {
        prop_assert_eq!(parse_scalar(&emit::scalar(&a, Format::Expr)).unwrap(), a.clone());
        prop_assert_eq!(parse_scalar(&emit::scalar(&a, Format::Text)).unwrap(), a);
    }

    #[test]
    fn exterior_derivative_squares_to_zero(f in form(1)) {
        prop_assert!(f.d().d().is_zero());
    }

    #[test]
    fn leibniz_rule(a in form(1), b in form(1)) {
        // d(a∧b) = da∧b − a∧db for a of degree 1
        let lhs = a.wedge(&b).d();
        let mut expect = a.d().wedge(&b);
        let neg = a.wedge(&b.d()).scale_q(&q(-1));
        for (k, c) in neg.terms() {
            expect.add_term(k.clone(), c.clone());
        }
        prop_assert_eq!(lhs, expect);
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(1), b in form(2)) {
        prop_assert_eq!(a.wedge(&b), b.wedge(&a));
        prop_assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn pullback_commutes_with_d(f in form(1), s in poly()) {
        let v = vars();
        let map: BTreeMap<Var, ScalarExpr> =
            [(v[0].clone(), &ScalarExpr::var(v[0].clone()) + &ScalarExpr::var(v[1].clone())), (v[1].clone(), ScalarExpr::var(v[1].clone())), (v[2].clone(), s)]
                .into_iter()
                .collect();
        prop_assert_eq!(f.pullback(&v, &map).unwrap().d(), f.d().pullback(&v, &map).unwrap());
    }
}

#[test]
fn dirichlet_moments_of_the_standard_simplex() {
    // ∫_{Δ²} t₁ t₂² = 1!·2!/5! = 1/60
    assert_eq!(dirichlet(&[1, 2]), qf(1, 60));
    assert_eq!(dirichlet(&[0, 0, 0]), qf(1, 6));
    let v = vars();
    let s = AffineSimplex::new(vec![
        vec![ScalarExpr::zero(), ScalarExpr::zero()],
        vec![ScalarExpr::one(), ScalarExpr::zero()],
        vec![ScalarExpr::zero(), ScalarExpr::one()],
    ])
    .unwrap();
    let xy = &ScalarExpr::var(v[0].clone()) * &ScalarExpr::var(v[1].clone()).pow(2);
    let f = PolyForm::monomial(&v[..2], &[0, 1], xy);
    assert_eq!(integrate_over_simplex(&f, &s).unwrap(), ScalarExpr::rational(qf(1, 60)));
    // orientation: swapping two vertices flips the sign
    let swapped = AffineSimplex::new(vec![s.vertices()[0].clone(), s.vertices()[2].clone(), s.vertices()[1].clone()]).unwrap();
    assert_eq!(
        integrate_over_simplex(&PolyForm::monomial(&v[..2], &[0, 1], ScalarExpr::one()), &swapped).unwrap(),
        ScalarExpr::rational(qf(-1, 2))
    );
}

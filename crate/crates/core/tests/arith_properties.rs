use idealcore::squarefree::squarefree_part;
use idealcore::{Field, Monomial, Poly, PrimeField, Rationals, Ring};
use proptest::prelude::*;

type Terms = Vec<([u32; 3], i64)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec(([0u32..4, 0u32..4, 0u32..4], -9i64..=9), 0..6)
}

fn build<F: Field>(ring: &Ring<F>, t: &Terms) -> Poly<F> {
    let field = ring.field();
    Poly::from_terms(
        ring,
        t.iter().map(|(e, c)| (Monomial::from_exponents(e), field.from_i64(*c))).collect(),
    )
}

fn ring_axioms<F: Field>(ring: &Ring<F>, a: &Terms, b: &Terms, c: &Terms) {
    let (f, g, h) = (build(ring, a), build(ring, b), build(ring, c));
    assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
    assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    assert_eq!(f.mul(&g), g.mul(&f));
    assert!(f.sub(&f).is_zero());
    assert_eq!(f.mul(&ring.one()), f);
}

fn ring_q() -> Ring<Rationals> {
    Ring::grevlex(Rationals, &["x", "y", "z"]).unwrap()
}

fn ring_p() -> Ring<PrimeField> {
    Ring::grevlex(PrimeField::new(101).unwrap(), &["x", "y", "z"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms_over_q(a in terms(), b in terms(), c in terms()) {
        ring_axioms(&ring_q(), &a, &b, &c);
    }

    #[test]
    fn ring_axioms_over_fp(a in terms(), b in terms(), c in terms()) {
        ring_axioms(&ring_p(), &a, &b, &c);
    }

    #[test]
    fn evaluation_is_multiplicative(a in terms(), b in terms(), vals in prop::collection::vec(-7i64..=7, 3), var in 0usize..3) {
        let ring = ring_q();
        let (f, g) = (build(&ring, &a), build(&ring, &b));
        let sigma = [(var, Rationals.from_i64(vals[var]))];
        prop_assert_eq!(f.mul(&g).evaluate(&sigma), f.evaluate(&sigma).mul(&g.evaluate(&sigma)));
        prop_assert_eq!(f.add(&g).evaluate(&sigma), f.evaluate(&sigma).add(&g.evaluate(&sigma)));
        let point: Vec<_> = vals.iter().map(|v| Rationals.from_i64(*v)).collect();
        prop_assert_eq!(
            f.mul(&g).eval_point(&point),
            Rationals.mul(&f.eval_point(&point), &g.eval_point(&point))
        );
    }

    #[test]
    fn evaluation_is_multiplicative_mod_p(a in terms(), b in terms(), vals in prop::collection::vec(0i64..101, 3)) {
        let ring = ring_p();
        let field = *ring.field();
        let (f, g) = (build(&ring, &a), build(&ring, &b));
        let point: Vec<_> = vals.iter().map(|v| field.from_i64(*v)).collect();
        prop_assert_eq!(f.mul(&g).eval_point(&point), field.mul(&f.eval_point(&point), &g.eval_point(&point)));
    }

    /// Products of distinct binary linear forms with multiplicities.
    #[test]
    fn squarefree_part_of_linear_products(
        forms in prop::collection::btree_set((-6i64..=6, -6i64..=6), 1..4),
        mults in prop::collection::vec(1u32..4, 4),
    ) {
        let ring = Ring::grevlex(Rationals, &["x1", "x2"]).unwrap();
        // keep one representative per line through the origin
        let mut lines: Vec<(i64, i64)> = Vec::new();
        for (a, b) in forms {
            if (a, b) == (0, 0) || lines.iter().any(|(c, d)| a * d == b * c) {
                continue;
            }
            lines.push((a, b));
        }
        prop_assume!(!lines.is_empty());
        let linear = |(a, b): (i64, i64)| ring.var(0).scale(&Rationals.from_i64(a)).add(&ring.var(1).scale(&Rationals.from_i64(b)));
        let mut f = ring.one();
        let mut distinct = ring.one();
        for (k, l) in lines.iter().enumerate() {
            f = f.mul(&linear(*l).pow(mults[k]));
            distinct = distinct.mul(&linear(*l));
        }
        prop_assert_eq!(squarefree_part(&f).unwrap(), distinct.monic());
    }
}

#[test]
fn squarefree_part_univariate() {
    let ring = Ring::grevlex(Rationals, &["t"]).unwrap();
    let f = ring.parse("(t-1)^3*(t+2)^2*t").unwrap();
    assert_eq!(squarefree_part(&f).unwrap(), ring.parse("(t-1)*(t+2)*t").unwrap());
}

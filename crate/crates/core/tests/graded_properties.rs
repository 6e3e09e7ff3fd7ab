mod common;

use std::sync::Arc;

use common::*;
use idealcore::graded::{GenericData, GradedAlgebra};
use idealcore::linalg::rank;
use idealcore::reduction::{is_minimal_reduction, reduction_number_graded};
use idealcore::{Field, Ideal, Monomial, Poly, PrimeField, Rationals, Ring};
use proptest::prelude::*;

const FIXTURES: [&[&str]; 5] = [&CONJUGATE_QUINTIC, &CONJUGATE_CUBIC, &MONOMIAL_QUINTIC, &EMBEDDED_LINE, &CM_LINE];

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn linear_form<F: Field>(ring: &Ring<F>, alpha: &[F::Elem]) -> Poly<F> {
    alpha
        .iter()
        .enumerate()
        .fold(ring.zero(), |acc, (i, a)| acc.add(&ring.var(i).scale(a)))
}

/// `dim_k (ℓ A_{n-1})`, computed from products in `A`.
fn piece_dimension<F: Field>(a: &GradedAlgebra<F>, l: &Poly<F>, n: u32) -> usize {
    let ring = a.ring();
    let rows: Vec<_> = a
        .basis(n - 1)
        .iter()
        .map(|b| a.coordinates(&a.normal_form(&l.mul(&ring.monomial(*b))), n))
        .collect();
    rank(a.field(), a.hilbert(n), &rows)
}

#[test]
fn hilbert_function_is_submultiplicative() {
    for rels in FIXTURES {
        let a = algebra(Rationals, rels);
        for n in 2..10 {
            assert!(a.hilbert(n) <= a.hilbert(1) * a.hilbert(n - 1), "{rels:?} n={n}");
        }
    }
}

#[test]
fn hilbert_numerator_of_cohen_macaulay_line_is_nonnegative() {
    let a = algebra(Rationals, &CM_LINE);
    // (1 - t) Σ h_n t^n for a one-dimensional algebra
    let h: Vec<i64> = (0..12).map(|n| a.hilbert(n) as i64).collect();
    let numerator: Vec<i64> = (0..12).map(|n| h[n] - if n > 0 { h[n - 1] } else { 0 }).collect();
    assert!(numerator.iter().all(|c| *c >= 0), "{numerator:?}");
    assert_eq!(numerator[..4], [1, 1, 1, 0]);
}

/// Moves an ideal of `k[u1,u2]` built for the swapped variable order back,
/// exchanging `u1` and `u2`.
fn swap_u(i: &Ideal<Rationals>, target: &Ring<Rationals>) -> Ideal<Rationals> {
    let gens = i
        .gens()
        .iter()
        .map(|p| {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exponents(&[m.exp(1), m.exp(0)]), c.clone()))
                .collect();
            Poly::from_terms(target, terms)
        })
        .collect();
    Ideal::new(target, gens)
}

#[test]
fn determinantal_ideals_do_not_depend_on_the_basis() {
    // swapping the variable order changes the standard monomials
    for rels in FIXTURES {
        let a = Arc::new(GradedAlgebra::parse(Rationals, &["x1", "x2"], rels).unwrap());
        let b = Arc::new(GradedAlgebra::parse(Rationals, &["x2", "x1"], rels).unwrap());
        let ga = GenericData::new(a, Some(5)).unwrap();
        let gb = GenericData::new(b, Some(5)).unwrap();
        for n in 1..=5 {
            for t in 1..=ga.algebra().hilbert(n as u32) {
                let x = ga.minors(n, t);
                let y = swap_u(&gb.minors(n, t), ga.u_ring());
                assert!(x.radical_equals(&y), "{rels:?} n={n} t={t}");
            }
        }
    }
}

#[test]
fn chain_of_varieties_is_non_increasing() {
    for rels in FIXTURES {
        let (_, c) = analyzed(Rationals, rels);
        assert!(c.monotone);
        for n in 1..c.chain.len() - 1 {
            assert!(c.chain[n + 1].radical_contains_ideal(&c.chain[n]), "{rels:?} n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn specialized_matrix_rank_is_the_piece_dimension(fixture in 0usize..5, a1 in 0u64..101, a2 in 0u64..101) {
        prop_assume!((a1, a2) != (0, 0));
        let (g, _) = analyzed(fp(101), FIXTURES[fixture]);
        let a = g.algebra();
        let alpha = [a1, a2];
        let l = linear_form(a.ring(), &alpha);
        for n in 1..=5usize {
            let rows = g.specialize(n, &alpha);
            prop_assert_eq!(rank(a.field(), a.hilbert(n as u32), &rows), piece_dimension(a, &l, n as u32));
        }
    }

    /// Covers at least 30 sampled points per fixture over the run.
    #[test]
    fn minimal_reductions_are_exactly_the_points_off_v_j(fixture in 0usize..5, a1 in 0u64..101, a2 in 0u64..101) {
        prop_assume!((a1, a2) != (0, 0));
        let (g, c) = analyzed(fp(101), FIXTURES[fixture]);
        let a = g.algebra();
        let alpha = [a1, a2];
        let l = linear_form(a.ring(), &alpha);
        let reduction = reduction_number_graded(a, std::slice::from_ref(&l));
        prop_assert_eq!(is_minimal_reduction(&c.j, &alpha), reduction.is_ok());
        if let Ok(rn) = reduction {
            prop_assert!(rn <= c.r);
            // m^{r+1} lies in every minimal reduction
            let q = a.lift(vec![l]);
            prop_assert!(q.contains_ideal(&a.max_ideal_power(c.r as u32 + 1)));
        }
    }
}

#[test]
fn minimal_reduction_agreement_over_thirty_points() {
    let (g, c) = analyzed(fp(101), &CONJUGATE_CUBIC);
    let a = g.algebra();
    let mut checked = 0;
    for a1 in 0..6u64 {
        for a2 in 0..6u64 {
            if (a1, a2) == (0, 0) {
                continue;
            }
            let l = linear_form(a.ring(), &[a1, a2]);
            assert_eq!(is_minimal_reduction(&c.j, &[a1, a2]), reduction_number_graded(a, &[l]).is_ok());
            checked += 1;
        }
    }
    assert!(checked >= 30);
}

#[test]
fn chain_is_the_same_over_q_and_mod_p_for_monomial_fixture() {
    let (_, q) = analyzed(Rationals, &MONOMIAL_QUINTIC);
    let (_, p) = analyzed(fp(109), &MONOMIAL_QUINTIC);
    assert_eq!(q.r, p.r);
}

mod common;

use common::*;
use idealcore::engine::{
    admissible_sequences, core_bruteforce, core_from_modules, core_onedim_conductor, core_saturation, core_stratified,
    hilbert_function_independent, local_core_bruteforce, localize_graded, partition_check, reduce_mod_p, LocalIdeal,
    Sampling,
};
use idealcore::radical::radical_restricted;
use idealcore::reduction::LocalRing;
use idealcore::{Field, Ideal, PrimeField, Rationals};

const FIXTURES: [&[&str]; 5] = [&CONJUGATE_QUINTIC, &CONJUGATE_CUBIC, &MONOMIAL_QUINTIC, &EMBEDDED_LINE, &CM_LINE];
const PRIMES: [u64; 2] = [101, 109];

/// Whether every binary form cutting out a stratum has all of its roots in
/// `P^1(F_p)`.
fn strata_split(strata: &[Ideal<Rationals>], p: u64) -> bool {
    let fp = PrimeField::new(p).unwrap();
    for s in strata {
        if s.is_zero() || s.is_unit() {
            continue;
        }
        let rad = radical_restricted(s).unwrap();
        if rad.gens().len() != 1 {
            continue; // a point set cut out by both coordinates is empty
        }
        let u = idealcore::Ring::grevlex(fp, s.ring().vars()).unwrap();
        let form = reduce_mod_p(&rad, &u).unwrap().gens()[0].clone();
        let degree = form.total_degree().unwrap() as usize;
        let mut points: Vec<[u64; 2]> = (0..p).map(|t| [1, t]).collect();
        points.push([0, 1]);
        let roots = points.iter().filter(|a| fp.is_zero(&form.eval_point(&a[..]))).count();
        if roots != degree {
            return false;
        }
    }
    true
}

#[test]
fn stratified_formula_matches_exhaustive_enumeration() {
    for rels in FIXTURES {
        let (g, c) = analyzed(Rationals, rels);
        let t = core_stratified(&g, &c).unwrap();
        let cuts: Vec<Ideal<Rationals>> = t.strata.iter().map(|s| s.vanishing.clone()).collect();
        for p in PRIMES {
            assert_eq!(p % 4, 1);
            if !strata_split(&cuts, p) {
                eprintln!("skipping {rels:?} mod {p}: strata do not split");
                continue;
            }
            let (gp, cp) = analyzed(PrimeField::new(p).unwrap(), rels);
            let b = core_bruteforce(&gp, &cp, Sampling::Exhaustive).unwrap();
            let expect = reduce_mod_p(&t.result, gp.algebra().ring()).unwrap();
            assert!(
                b.report.result.equals(&expect),
                "{rels:?} mod {p}: enumeration {:?}, formula {:?}",
                b.report.generator_strings(),
                t.generator_strings()
            );
            assert_eq!(b.samples_used as u64, p + 1 - roots_of_j(&cp.j, p));
        }
    }
}

fn roots_of_j(j: &Ideal<PrimeField>, p: u64) -> u64 {
    let field = *j.ring().field();
    let mut points: Vec<[u64; 2]> = (0..p).map(|t| [1, t]).collect();
    points.push([0, 1]);
    points
        .iter()
        .filter(|a| j.gens().iter().all(|g| field.is_zero(&g.eval_point(&a[..]))))
        .count() as u64
}

#[test]
fn strata_partition_the_projective_line() {
    for rels in FIXTURES {
        for p in PRIMES {
            let (g, c) = analyzed(PrimeField::new(p).unwrap(), rels);
            let strata = admissible_sequences(&g, &c);
            let check = partition_check(&g, &c, &strata).unwrap();
            assert!(check.holds(), "{rels:?} mod {p}: {check:?}");
            assert_eq!(check.points as u64, p + 1 - roots_of_j(&c.j, p));
        }
    }
}

#[test]
fn sampled_intersections_shrink_to_the_final_core() {
    let (g, c) = analyzed(Rationals, &CONJUGATE_QUINTIC);
    let seed = 77;
    let full = core_bruteforce(&g, &c, Sampling::Random { count: 60, seed }).unwrap();
    let settled = full.stabilized_after;
    assert!(settled + 10 <= full.samples_used, "stable after {settled} of {}", full.samples_used);
    for count in [1, 2, settled.max(1), settled + 10] {
        let part = core_bruteforce(&g, &c, Sampling::Random { count, seed }).unwrap();
        assert!(part.report.result.contains_ideal(&full.report.result), "prefix {count}");
        if count >= settled {
            assert!(part.report.result.equals(&full.report.result), "prefix {count}");
        }
    }
}

#[test]
fn saturation_route_agrees_on_cohen_macaulay_line() {
    let (g, c) = analyzed(Rationals, &CM_LINE);
    assert!(hilbert_function_independent(&g, &c));
    let t = core_stratified(&g, &c).unwrap();
    let s = core_saturation(&g, &c, Some(t.strata.len())).unwrap();
    assert_eq!(s.equals_core, Some(true));
    assert!(s.result.equals(&t.result), "{:?} vs {:?}", s.generator_strings(), t.generator_strings());
    assert!(t.result.equals(&g.algebra().max_ideal_power(c.r as u32 + 1)));
}

#[test]
fn module_route_matches_stratified_core() {
    for rels in [&MONOMIAL_QUINTIC[..], &CONJUGATE_CUBIC[..], &CM_LINE[..]] {
        let (g, c) = analyzed(Rationals, rels);
        let t = core_stratified(&g, &c).unwrap();
        let m = core_from_modules(&g, &c).unwrap();
        assert!(m.equals(&t.result), "{rels:?}: {m} vs {:?}", t.generator_strings());
    }
}

#[test]
fn sandwich_holds_on_fixtures() {
    for rels in FIXTURES {
        let (g, c) = analyzed(Rationals, rels);
        let t = core_stratified(&g, &c).unwrap();
        let s = core_saturation(&g, &c, Some(t.strata.len())).unwrap();
        assert!(t.result.contains_ideal(&s.result), "{rels:?}");
        assert!(t.result.contains_ideal(&g.algebra().max_ideal_power(c.r as u32 + 1)), "{rels:?}");
        // the core lies in Q_α for any sampled minimal reduction
        let b = core_bruteforce(&g, &c, Sampling::SmallHeight { count: 12 }).unwrap();
        assert!(b.report.result.contains_ideal(&t.result), "{rels:?}");
    }
}

/// For small `r`, the graded core localizes to the core of the maximal ideal.
/// A small prime makes the special reductions (such as `(x1)` on the
/// embedded line) likely to be drawn.
#[test]
fn graded_core_localizes_when_r_is_small() {
    let fp = PrimeField::new(13).unwrap();
    let mut seen = 0;
    for rels in FIXTURES {
        let (g, c) = analyzed(Rationals, rels);
        if c.r > 2 {
            continue;
        }
        seen += 1;
        let t = core_stratified(&g, &c).unwrap();
        let a = algebra(fp, rels);
        let local = localize_graded(&a).unwrap();
        let m = LocalIdeal::parse(&local, &["x1", "x2"]).unwrap();
        let (b, _) = local_core_bruteforce(&m, 80, 5).unwrap();
        let expect = reduce_mod_p(&t.result, local.ring()).unwrap();
        assert!(local.equal(&b.result, &expect), "{rels:?}: {:?}", b.generator_strings());
    }
    assert!(seen > 0);
}

#[test]
fn conductor_equalities_on_one_dimensional_cohen_macaulay_rings() {
    let cases: [(&[&str], Option<Vec<u32>>, &str); 3] = [
        (&["X^4-Y^3"], Some(vec![3, 4]), "X"),
        (&["X^3-Y^2"], Some(vec![2, 3]), "X"),
        (&["Y^3"], None, "X"),
    ];
    for (rels, weights, x) in cases {
        let l = LocalRing::parse(Rationals, &["X", "Y"], rels, weights).unwrap();
        let i = LocalIdeal::parse(&l, &["X", "Y"]).unwrap();
        let x = l.ring().parse(x).unwrap();
        let (rep, data) = core_onedim_conductor(&i, &x).unwrap();
        assert!(data.equalities_hold, "{rels:?}");
        assert!(l.equal(&rep.result, &data.x_k), "{rels:?}");
        assert!(l.equal(&data.x_k, &l.product(&data.k, &i.ideal)), "{rels:?}");
    }
}

//! Buchberger's algorithm with the coprime and chain criteria and sugar selection.

use std::collections::HashSet;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{Poly, Ring};

/// Full reduction of `f` by `basis`: no term of the result is divisible by a
/// leading monomial of the basis.
pub fn reduce<F: Field>(f: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    reduce_impl(f, basis, true)
}

/// Reduces only until the leading term is irreducible.
pub fn top_reduce<F: Field>(f: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    reduce_impl(f, basis, false)
}

fn reduce_impl<F: Field>(f: &Poly<F>, basis: &[Poly<F>], full: bool) -> Poly<F> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let leads: Vec<(Monomial, u32, F::Elem)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let m = *g.leading_monomial().unwrap();
            (m, m.support(), field.inv(g.leading_coeff().unwrap()))
        })
        .collect();
    let gens: Vec<&Poly<F>> = basis.iter().filter(|g| !g.is_zero()).collect();
    let mut rest: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut p = f.clone();
    // terms of `p` before `start` have already been moved to `rest`
    let mut start = 0;
    loop {
        let Some((m, c)) = p.terms().get(start).cloned() else {
            break;
        };
        let sm = m.support();
        let hit = leads
            .iter()
            .position(|(lm, s, _)| s & !sm == 0 && lm.divides(&m));
        match hit {
            Some(k) => {
                let (lm, _, inv) = &leads[k];
                let q = lm.quotient_of(&m);
                let coef = field.neg(&field.mul(&c, inv));
                if start > 0 {
                    p = Poly::from_sorted_terms(&ring, p.terms()[start..].to_vec());
                    start = 0;
                }
                p = p.add_scaled(&coef, &q, gens[k]);
            }
            None => {
                if !full {
                    break;
                }
                rest.push((m, c));
                start += 1;
            }
        }
    }
    if rest.is_empty() {
        return p;
    }
    rest.extend(p.into_terms().into_iter().skip(start));
    Poly::from_sorted_terms(&ring, rest)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reduced Groebner basis: monic, no leading monomial divides another, tails
/// reduced, sorted by ascending leading monomial. Zero ideal gives `[]`.
pub fn groebner_basis<F: Field>(gens: &[Poly<F>]) -> Vec<Poly<F>> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let mut input: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if input.is_empty() {
        return Vec::new();
    }
    if input.iter().any(|g| g.is_constant()) {
        return vec![ring.one()];
    }
    // cheapest generators first keeps early reductions small
    input.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    input.dedup();

    let mut basis: Vec<Poly<F>> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    for g in input {
        let g = top_reduce(&g, &basis);
        if g.is_zero() {
            continue;
        }
        let s = g.total_degree().unwrap();
        add_to_basis(g.monic(), s, &mut basis, &mut sugar, &mut pairs, &mut pending);
        if basis.last().unwrap().is_constant() {
            return vec![ring.one()];
        }
    }

    while !pairs.is_empty() {
        let k = select_pair(&ring, &pairs);
        let pair = pairs.swap_remove(k);
        pending.remove(&(pair.i, pair.j));
        if chain_criterion(&pair, &basis, &pending) {
            continue;
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm);
        let h = top_reduce(&s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![ring.one()];
        }
        let hs = pair.sugar.max(h.total_degree().unwrap());
        add_to_basis(h.monic(), hs, &mut basis, &mut sugar, &mut pairs, &mut pending);
    }
    interreduce(basis)
}

fn select_pair<F: Field>(ring: &Ring<F>, pairs: &[Pair]) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let better = a.sugar < b.sugar
            || (a.sugar == b.sugar
                && match ring.cmp(&a.lcm, &b.lcm) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => (a.j, a.i) < (b.j, b.i),
                });
        if better {
            best = k;
        }
    }
    best
}

fn add_to_basis<F: Field>(
    g: Poly<F>,
    s: u32,
    basis: &mut Vec<Poly<F>>,
    sugar: &mut Vec<u32>,
    pairs: &mut Vec<Pair>,
    pending: &mut HashSet<(usize, usize)>,
) {
    let j = basis.len();
    let lm = *g.leading_monomial().unwrap();
    for (i, f) in basis.iter().enumerate() {
        let fm = f.leading_monomial().unwrap();
        // coprime leading monomials: the S-polynomial reduces to zero
        if fm.is_coprime(&lm) {
            continue;
        }
        let lcm = fm.lcm(&lm);
        let ps = (sugar[i] + lcm.degree() - fm.degree()).max(s + lcm.degree() - lm.degree());
        pairs.push(Pair { i, j, lcm, sugar: ps });
        pending.insert((i, j));
    }
    basis.push(g);
    sugar.push(s);
}

/// Skips (i, j) when some k has lm(k) | lcm(i, j) and neither (i, k) nor (j, k)
/// is still waiting.
fn chain_criterion<F: Field>(
    pair: &Pair,
    basis: &[Poly<F>],
    pending: &HashSet<(usize, usize)>,
) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    basis.iter().enumerate().any(|(k, g)| {
        k != pair.i
            && k != pair.j
            && g.leading_monomial().unwrap().divides(&pair.lcm)
            && !pending.contains(&key(pair.i, k))
            && !pending.contains(&key(pair.j, k))
    })
}

fn s_polynomial<F: Field>(f: &Poly<F>, g: &Poly<F>, lcm: &Monomial) -> Poly<F> {
    let field = f.field();
    let one = field.one();
    let mf = f.leading_monomial().unwrap().quotient_of(lcm);
    let mg = g.leading_monomial().unwrap().quotient_of(lcm);
    // both inputs are monic
    let a = f.mul_term(&mf, &one);
    a.add_scaled(&field.neg(&one), &mg, g)
}

fn interreduce<F: Field>(basis: Vec<Poly<F>>) -> Vec<Poly<F>> {
    let mut keep: Vec<Poly<F>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let hm = h.leading_monomial().unwrap();
            l != k && hm.divides(lm) && (hm != lm || l < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let ring = keep[0].ring().clone();
    keep.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut out = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let lead = keep[k].terms()[0].clone();
        let tail = Poly::from_sorted_terms(&ring, keep[k].terms()[1..].to_vec());
        let others: Vec<Poly<F>> = keep
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, p)| p.clone())
            .collect();
        let tail = reduce(&tail, &others);
        out.push(ring.term(lead.0, lead.1).add(&tail).monic());
    }
    out
}

/// True when every S-polynomial of `basis` reduces to zero.
pub fn is_groebner_basis<F: Field>(basis: &[Poly<F>]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i]
                .leading_monomial()
                .unwrap()
                .lcm(basis[j].leading_monomial().unwrap());
            let s = s_polynomial(&basis[i].monic(), &basis[j].monic(), &lcm);
            if !reduce(&s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

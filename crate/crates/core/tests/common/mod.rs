//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use idealcore::graded::{GenericData, GradedAlgebra};
use idealcore::linalg::{nullspace, Echelon, Vector};
use idealcore::matrix::PolyMatrix;
use idealcore::monomial::monomials_of_degree;
use idealcore::reduction::{big_reduction_number, ChainAnalysis};
use idealcore::{Field, Ideal, Monomial, Poly, Rationals, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const CONJUGATE_QUINTIC: [&str; 2] = ["x1^3*x2+x1*x2^3", "x2^5"];
pub const CONJUGATE_CUBIC: [&str; 2] = ["x1^2*x2+x2^3", "x2^4"];
pub const MONOMIAL_QUINTIC: [&str; 2] = ["x1^2*x2^2", "x2^5"];
pub const EMBEDDED_LINE: [&str; 2] = ["x1*x2", "x2^3"];
pub const CM_LINE: [&str; 1] = ["x2^3"];

pub fn algebra<F: Field>(field: F, rels: &[&str]) -> Arc<GradedAlgebra<F>> {
    Arc::new(GradedAlgebra::parse(field, &["x1", "x2"], rels).expect("fixture parses"))
}

pub fn analyzed<F: Field>(field: F, rels: &[&str]) -> (GenericData<F>, ChainAnalysis<F>) {
    let g = GenericData::new(algebra(field, rels), None).expect("positive dimension");
    let c = big_reduction_number(&g).expect("chain stabilizes");
    (g, c)
}

pub fn ideal<F: Field>(ring: &Ring<F>, gens: &[&str]) -> Ideal<F> {
    Ideal::parse(ring, gens).expect("ideal parses")
}

pub fn strings<F: Field>(p: &[Poly<F>]) -> Vec<String> {
    p.iter().map(|g| g.to_string()).collect()
}

// ---- random homogeneous monomial/binomial ideals ------------------------

pub fn random_form(ring: &Ring<Rationals>, rng: &mut ChaCha8Rng, deg: u32) -> Poly<Rationals> {
    let monos = monomials_of_degree(ring.nvars(), deg);
    let a = monos[rng.gen_range(0..monos.len())];
    let lead = ring.monomial(a);
    if monos.len() == 1 || rng.gen_bool(0.5) {
        return lead;
    }
    let b = monos[rng.gen_range(0..monos.len())];
    let c = rng.gen_range(-3..=3);
    lead.add(&ring.monomial(b).scale(&Rationals.from_i64(c)))
}

pub fn random_ideal(ring: &Ring<Rationals>, rng: &mut ChaCha8Rng, max_gens: usize, max_deg: u32) -> Ideal<Rationals> {
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            random_form(ring, rng, d)
        })
        .filter(|p| !p.is_zero())
        .collect();
    Ideal::new(ring, gens)
}

// ---- degreewise linear-algebra oracle -----------------------------------

/// Degree-`d` piece of the ideal generated by homogeneous `gens`, over the
/// monomials of degree `d`, by spanning all multiples.
pub fn piece(ring: &Ring<Rationals>, gens: &[Poly<Rationals>], d: u32) -> Echelon<Rationals> {
    let basis = monomials_of_degree(ring.nvars(), d);
    let mut e = Echelon::empty(&Rationals, basis.len());
    for g in gens {
        let Some(gd) = g.total_degree() else { continue };
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), d - gd) {
            e.insert(coords(&g.mul(&ring.monomial(m)), &basis));
        }
    }
    e
}

pub fn coords(p: &Poly<Rationals>, basis: &[Monomial]) -> Vector<Rationals> {
    basis.iter().map(|m| p.coefficient(m)).collect()
}

pub fn same_space(a: &Echelon<Rationals>, b: &Echelon<Rationals>) -> bool {
    a.dim() == b.dim() && a.rows.iter().all(|r| b.contains(r))
}

/// `(I : J)_d = {f ∈ S_d : f g ∈ I for all generators g of J}`.
pub fn colon_piece(ring: &Ring<Rationals>, i: &[Poly<Rationals>], j: &[Poly<Rationals>], d: u32) -> Echelon<Rationals> {
    let basis = monomials_of_degree(ring.nvars(), d);
    let mut columns: Vec<Vector<Rationals>> = vec![Vec::new(); basis.len()];
    for g in j {
        let e = g.total_degree().unwrap();
        let target = monomials_of_degree(ring.nvars(), d + e);
        let ipiece = piece(ring, i, d + e);
        for (k, m) in basis.iter().enumerate() {
            let v = ipiece.reduce(&coords(&g.mul(&ring.monomial(*m)), &target));
            columns[k].extend(v);
        }
    }
    if j.is_empty() {
        return Echelon::from_rows(&Rationals, basis.len(), (0..basis.len()).map(|k| unit(basis.len(), k)));
    }
    let rows: Vec<Vector<Rationals>> = (0..columns[0].len())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    Echelon::from_rows(&Rationals, basis.len(), nullspace(&Rationals, basis.len(), &rows))
}

fn unit(n: usize, k: usize) -> Vector<Rationals> {
    let mut v = vec![Rationals.zero(); n];
    v[k] = Rationals.one();
    v
}

pub fn product_gens(a: &[Poly<Rationals>], b: &[Poly<Rationals>]) -> Vec<Poly<Rationals>> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect()
}

/// `(I : J^N)_d` for the first `N` at which the pieces up to `top` stop
/// changing, capped at `cap`.
pub fn saturation_pieces(ring: &Ring<Rationals>, i: &[Poly<Rationals>], j: &[Poly<Rationals>], top: u32, cap: usize) -> Vec<Echelon<Rationals>> {
    let mut power = j.to_vec();
    let mut prev: Vec<Echelon<Rationals>> = (0..=top).map(|d| colon_piece(ring, i, &power, d)).collect();
    for _ in 1..cap {
        power = product_gens(&power, j);
        let next: Vec<Echelon<Rationals>> = (0..=top).map(|d| colon_piece(ring, i, &power, d)).collect();
        let stable = prev.iter().zip(&next).all(|(a, b)| same_space(a, b));
        prev = next;
        if stable {
            break;
        }
    }
    prev
}

/// Checks colon, intersection and saturation of one random pair against
/// the degreewise oracle and the basic laws.
pub fn check_laws(ring: &Ring<Rationals>, i: &Ideal<Rationals>, j: &Ideal<Rationals>, top: u32) -> Result<(), String> {
    let colon = i.colon(j);
    let inter = i.intersect(j);
    let sat = i.saturate(j);
    if !colon.contains_ideal(i) {
        return Err(format!("I ⊄ I:J for I={i}, J={j}"));
    }
    if !i.contains_ideal(&colon.product(j)) {
        return Err(format!("(I:J)J ⊄ I for I={i}, J={j}"));
    }
    if !i.contains_ideal(&inter) || !j.contains_ideal(&inter) {
        return Err(format!("I∩J not inside both for I={i}, J={j}"));
    }
    if !sat.contains_ideal(&colon) {
        return Err(format!("I:J^∞ ⊉ I:J for I={i}, J={j}"));
    }
    let sat_oracle = saturation_pieces(ring, i.gens(), j.gens(), top, 12);
    for d in 0..=top {
        let c = colon_piece(ring, i.gens(), j.gens(), d);
        if !same_space(&piece(ring, colon.gb(), d), &c) {
            return Err(format!("colon differs in degree {d} for I={i}, J={j}"));
        }
        let x = piece(ring, i.gens(), d).intersect(&piece(ring, j.gens(), d));
        if !same_space(&piece(ring, inter.gb(), d), &x) {
            return Err(format!("intersection differs in degree {d} for I={i}, J={j}"));
        }
        if !same_space(&piece(ring, sat.gb(), d), &sat_oracle[d as usize]) {
            return Err(format!("saturation differs in degree {d} for I={i}, J={j}"));
        }
    }
    Ok(())
}

// ---- random polynomial matrices -----------------------------------------

pub fn random_entry(ring: &Ring<Rationals>, rng: &mut ChaCha8Rng, max_deg: u32) -> Poly<Rationals> {
    let mut p = ring.zero();
    for d in 0..=max_deg {
        for m in monomials_of_degree(ring.nvars(), d) {
            if rng.gen_bool(0.4) {
                p = p.add(&ring.monomial(m).scale(&Rationals.from_i64(rng.gen_range(-3..=3))));
            }
        }
    }
    p
}

/// A random matrix; with probability one half its last row is a
/// combination of the others, so rank deficiency is common.
pub fn random_matrix(ring: &Ring<Rationals>, rng: &mut ChaCha8Rng) -> PolyMatrix<Rationals> {
    let nrows = rng.gen_range(2..=3);
    let ncols = rng.gen_range(2..=4);
    let mut rows: Vec<Vec<Poly<Rationals>>> = (0..nrows)
        .map(|_| (0..ncols).map(|_| random_entry(ring, rng, 1)).collect())
        .collect();
    if rng.gen_bool(0.5) {
        let c = random_entry(ring, rng, 1);
        let last: Vec<Poly<Rationals>> = rows[0].iter().map(|x| x.mul(&c)).collect();
        rows[nrows - 1] = last;
    }
    PolyMatrix::new(ring, rows)
}

/// Rank of `M(α)` maximized over random rational points.
pub fn sampled_rank(m: &PolyMatrix<Rationals>, rng: &mut ChaCha8Rng, points: usize) -> usize {
    let n = m.ring().nvars();
    (0..points)
        .map(|_| {
            let alpha: Vec<_> = (0..n).map(|_| Rationals.from_i64(rng.gen_range(-50..=50))).collect();
            let rows = m.evaluate(&alpha);
            idealcore::linalg::rank(&Rationals, m.ncols(), &rows)
        })
        .max()
        .unwrap_or(0)
}

/// Applies a random elementary row or column operation.
pub fn random_elementary_op(m: &mut PolyMatrix<Rationals>, rng: &mut ChaCha8Rng) {
    let ring = m.ring().clone();
    match rng.gen_range(0..3) {
        0 if m.nrows() > 1 => {
            let i = rng.gen_range(0..m.nrows());
            let j = (i + rng.gen_range(1..m.nrows())) % m.nrows();
            m.add_row_multiple(i, j, &random_entry(&ring, rng, 1));
        }
        1 if m.ncols() > 1 => {
            let i = rng.gen_range(0..m.ncols());
            let j = (i + rng.gen_range(1..m.ncols())) % m.ncols();
            m.add_col_multiple(i, j, &random_entry(&ring, rng, 1));
        }
        _ if m.nrows() > 1 => {
            let i = rng.gen_range(0..m.nrows());
            let j = (i + 1) % m.nrows();
            m.swap_rows(i, j);
        }
        _ => {}
    }
}

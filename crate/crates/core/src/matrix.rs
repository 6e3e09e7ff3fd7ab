//! Matrices over polynomial rings: minors, generic rank, specialization.

use std::collections::HashMap;
use std::fmt;

use crate::field::Field;
use crate::ideal::Ideal;
use crate::poly::{Poly, Ring};

#[derive(Clone)]
pub struct PolyMatrix<F: Field> {
    ring: Ring<F>,
    nrows: usize,
    ncols: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(ring: &Ring<F>, rows: Vec<Vec<Poly<F>>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        PolyMatrix {
            ring: ring.clone(),
            nrows,
            ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(ring: &Ring<F>, nrows: usize, ncols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            nrows,
            ncols,
            entries: vec![ring.zero(); nrows * ncols],
        }
    }

    pub fn parse(ring: &Ring<F>, rows: &[&[&str]]) -> crate::Result<Self> {
        let rows = rows
            .iter()
            .map(|r| ring.parse_list(r))
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(Self::new(ring, rows))
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<F>) {
        self.entries[i * self.ncols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly<F>] {
        &self.entries[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Row `i` += `c` * row `j`.
    pub fn add_row_multiple(&mut self, i: usize, j: usize, c: &Poly<F>) {
        for k in 0..self.ncols {
            let v = self.get(i, k).add(&c.mul(self.get(j, k)));
            self.set(i, k, v);
        }
    }

    /// Column `i` += `c` * column `j`.
    pub fn add_col_multiple(&mut self, i: usize, j: usize, c: &Poly<F>) {
        for k in 0..self.nrows {
            let v = self.get(k, i).add(&c.mul(self.get(k, j)));
            self.set(k, i, v);
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.ncols {
            self.entries.swap(i * self.ncols + k, j * self.ncols + k);
        }
    }

    /// Substitutes a full point for the ring variables.
    pub fn evaluate(&self, point: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        (0..self.nrows)
            .map(|i| self.row(i).iter().map(|p| p.eval_point(point)).collect())
            .collect()
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Poly<F> {
        let mut memo = HashMap::new();
        self.minor_memo(mask(rows), mask(cols), &mut memo)
    }

    fn minor_memo(&self, rows: u64, cols: u64, memo: &mut HashMap<(u64, u64), Poly<F>>) -> Poly<F> {
        if rows == 0 {
            return self.ring.one();
        }
        if let Some(p) = memo.get(&(rows, cols)) {
            return p.clone();
        }
        let r0 = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r0);
        let mut acc = self.ring.zero();
        let mut sign_neg = false;
        for c in 0..self.ncols {
            if cols & (1 << c) == 0 {
                continue;
            }
            let a = self.get(r0, c);
            if !a.is_zero() {
                let sub = self.minor_memo(rest, cols & !(1 << c), memo);
                let term = a.mul(&sub);
                acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_neg = !sign_neg;
        }
        memo.insert((rows, cols), acc.clone());
        acc
    }

    /// Ideal of `t`-minors; `I_0 = (1)` and `I_t = 0` beyond the matrix size.
    pub fn minors(&self, t: usize) -> Ideal<F> {
        if t == 0 {
            return Ideal::unit(&self.ring);
        }
        if t > self.nrows.min(self.ncols) {
            return Ideal::zero(&self.ring);
        }
        assert!(self.nrows <= 64 && self.ncols <= 64, "matrix too large for minors");
        let mut memo = HashMap::new();
        let mut gens = Vec::new();
        for rs in subsets(self.nrows, t) {
            for cs in subsets(self.ncols, t) {
                let d = self.minor_memo(rs, cs, &mut memo);
                if !d.is_zero() {
                    gens.push(d.monic());
                }
            }
        }
        let ideal = Ideal::new(&self.ring, gens);
        if ideal.gens().len() > 1 {
            ideal.reduced()
        } else {
            ideal
        }
    }

    /// Rank over the fraction field, by fraction-free (Bareiss) elimination.
    pub fn generic_rank(&self) -> usize {
        let mut m: Vec<Vec<Poly<F>>> = (0..self.nrows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = self.ring.one();
        let mut rank = 0;
        for k in 0..self.ncols {
            if rank == self.nrows {
                break;
            }
            let Some(p) = (rank..self.nrows).find(|&i| !m[i][k].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..self.nrows {
                for j in k + 1..self.ncols {
                    let num = m[i][j].mul(&m[rank][k]).sub(&m[i][k].mul(&m[rank][j]));
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = self.ring.zero();
            }
            prev = m[rank][k].clone();
            rank += 1;
        }
        rank
    }

    /// Some nonzero maximal minor: its row and column indices.
    pub fn nonzero_maximal_minor(&self) -> Option<(Vec<usize>, Vec<usize>, Poly<F>)> {
        let rank = self.generic_rank();
        if rank == 0 {
            return None;
        }
        let mut memo = HashMap::new();
        for rs in subsets(self.nrows, rank) {
            for cs in subsets(self.ncols, rank) {
                let d = self.minor_memo(rs, cs, &mut memo);
                if !d.is_zero() {
                    return Some((bits(rs), bits(cs), d));
                }
            }
        }
        None
    }
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

fn bits(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m & (1 << i) != 0).collect()
}

/// All `k`-subsets of `0..n` as bitmasks, in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, cur | (1 << i), out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring() -> Ring<Rationals> {
        Ring::grevlex(Rationals, &["u1", "u2"]).unwrap()
    }

    #[test]
    fn two_minors_of_a_band_matrix() {
        let r = ring();
        let m = PolyMatrix::parse(&r, &[&["u1", "u2", "0"], &["0", "u1", "u2"]]).unwrap();
        let expect = Ideal::parse(&r, &["u1", "u2"]).unwrap().pow(2);
        assert!(m.minors(2).equals(&expect));
        assert!(m.minors(0).is_unit());
        assert!(m.minors(3).is_zero());
        assert_eq!(m.generic_rank(), 2);
    }

    #[test]
    fn determinant_and_rank_deficiency() {
        let r = ring();
        let m = PolyMatrix::parse(&r, &[&["u1", "u2"], &["u1^2", "u1*u2"]]).unwrap();
        assert!(m.minor(&[0, 1], &[0, 1]).is_zero());
        assert_eq!(m.generic_rank(), 1);
        let n = PolyMatrix::parse(&r, &[&["u1", "u2", "0"], &["0", "u1", "u2"], &["u2", "0", "u1"]]).unwrap();
        assert_eq!(n.minor(&[0, 1, 2], &[0, 1, 2]), r.parse("u1^3+u2^3").unwrap());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![0]);
    }
}

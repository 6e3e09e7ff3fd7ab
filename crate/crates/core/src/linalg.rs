//! Dense linear algebra over a field: echelon forms, rank, kernels.

use crate::field::Field;

pub type Vector<F> = Vec<<F as Field>::Elem>;

/// A subspace of `k^n` held in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub field: F,
    pub ncols: usize,
    pub rows: Vec<Vector<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn empty(field: &F, ncols: usize) -> Self {
        Echelon {
            field: field.clone(),
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(field: &F, ncols: usize, rows: impl IntoIterator<Item = Vector<F>>) -> Self {
        let mut e = Self::empty(field, ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection onto the pivot columns.
    pub fn reduce(&self, v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds a vector; returns false when it was already in the span.
    pub fn insert(&mut self, v: Vector<F>) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Basis of `{x : <row, x> = 0 for every row}`.
    pub fn orthogonal_complement(&self) -> Vec<Vector<F>> {
        let f = &self.field;
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut x = vec![f.zero(); self.ncols];
            x[free] = f.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = f.neg(&row[free]);
            }
            out.push(x);
        }
        out
    }

    pub fn intersect(&self, other: &Echelon<F>) -> Echelon<F> {
        let mut perp = Echelon::from_rows(&self.field, self.ncols, self.orthogonal_complement());
        for v in other.orthogonal_complement() {
            perp.insert(v);
        }
        Echelon::from_rows(&self.field, self.ncols, perp.orthogonal_complement())
    }
}

pub fn rank<F: Field>(field: &F, ncols: usize, rows: &[Vector<F>]) -> usize {
    Echelon::from_rows(field, ncols, rows.iter().cloned()).dim()
}

/// Right kernel `{x : A x = 0}` of the matrix with the given rows.
pub fn nullspace<F: Field>(field: &F, ncols: usize, rows: &[Vector<F>]) -> Vec<Vector<F>> {
    Echelon::from_rows(field, ncols, rows.iter().cloned()).orthogonal_complement()
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

//! Submodules of a free module `R^h`, handled by flattening: `R^h` becomes the
//! tag-degree-one part of `R[e_1..e_h]/(e)^2`.

use rayon::prelude::*;

use crate::error::Result;
use crate::field::Field;
use crate::ideal::Ideal;
use crate::linalg::{nullspace, Echelon, Vector};
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::poly::{Poly, Ring};
use crate::radical::radical_restricted;

pub type ModuleVector<F> = Vec<Poly<F>>;

/// A map `φ: R^c → R^h` given by its columns; `E` is its image.
#[derive(Clone, Debug)]
pub struct ModulePresentation<F: Field> {
    ring: Ring<F>,
    rank: usize,
    columns: Vec<ModuleVector<F>>,
}

impl<F: Field> ModulePresentation<F> {
    pub fn new(ring: &Ring<F>, rank: usize, columns: Vec<ModuleVector<F>>) -> Self {
        assert!(columns.iter().all(|c| c.len() == rank), "column length differs from rank");
        ModulePresentation {
            ring: ring.clone(),
            rank,
            columns,
        }
    }

    /// The submodule spanned by the rows of `m`.
    pub fn row_space(m: &PolyMatrix<F>) -> Self {
        let columns = (0..m.nrows()).map(|i| m.row(i).to_vec()).collect();
        Self::new(m.ring(), m.ncols(), columns)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn columns(&self) -> &[ModuleVector<F>] {
        &self.columns
    }

    pub fn matrix(&self) -> PolyMatrix<F> {
        let rows = (0..self.rank)
            .map(|i| self.columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        if self.columns.is_empty() {
            return PolyMatrix::zeros(&self.ring, self.rank, 0);
        }
        PolyMatrix::new(&self.ring, rows)
    }

    /// Fitting ideal `I_t(φ)`.
    pub fn minors(&self, t: usize) -> Ideal<F> {
        self.matrix().minors(t)
    }
}

/// `R[e_1..e_h]` with the relations `e_i e_j`.
pub struct Flattening<F: Field> {
    base: Ring<F>,
    flat: Ring<F>,
    rank: usize,
    squares: Vec<Poly<F>>,
}

impl<F: Field> Flattening<F> {
    pub fn new(base: &Ring<F>, rank: usize) -> Result<Self> {
        let mut names: Vec<String> = base.vars().to_vec();
        let stem = base.fresh_name("e");
        for i in 1..=rank {
            names.push(format!("{stem}_{i}"));
        }
        let flat = Ring::new(base.field().clone(), &names, base.order())?;
        let n = base.nvars();
        let mut squares = Vec::new();
        for i in 0..rank {
            for j in i..rank {
                squares.push(flat.var(n + i).mul(&flat.var(n + j)));
            }
        }
        Ok(Flattening {
            base: base.clone(),
            flat,
            rank,
            squares,
        })
    }

    fn tag(&self, i: usize) -> Poly<F> {
        self.flat.var(self.base.nvars() + i)
    }

    pub fn embed_vector(&self, v: &[Poly<F>]) -> Poly<F> {
        let mut acc = self.flat.zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.to_ring(&self.flat).expect("base variables").mul(&self.tag(i)));
            }
        }
        acc
    }

    /// `Ñ = N + (e)^2` for the submodule generated by `gens`.
    pub fn embed(&self, gens: &[ModuleVector<F>]) -> Ideal<F> {
        let mut all: Vec<Poly<F>> = gens.iter().map(|v| self.embed_vector(v)).collect();
        all.extend(self.squares.iter().cloned());
        Ideal::new(&self.flat, all)
    }

    pub fn embed_ideal(&self, i: &Ideal<F>) -> Ideal<F> {
        i.to_ring(&self.flat).expect("base variables")
    }

    fn split(&self, p: &Poly<F>) -> Option<ModuleVector<F>> {
        let n = self.base.nvars();
        let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); self.rank];
        for (m, c) in p.terms() {
            let tags: Vec<usize> = (0..self.rank).filter(|&i| m.exp(n + i) > 0).collect();
            let tdeg: u32 = (0..self.rank).map(|i| m.exp(n + i)).sum();
            if tdeg != 1 {
                return None;
            }
            parts[tags[0]].push((m.without(n + tags[0]).0, c.clone()));
        }
        Some(
            parts
                .into_iter()
                .map(|t| Poly::from_terms(&self.flat, t).to_ring(&self.base).expect("tags removed"))
                .collect(),
        )
    }

    /// Tag-degree-one part of a tag-homogeneous ideal, as module generators.
    pub fn extract(&self, i: &Ideal<F>) -> Vec<ModuleVector<F>> {
        let n = self.base.nvars();
        let tag_mask: u32 = ((1u32 << self.rank) - 1) << n;
        let mut out = Vec::new();
        for g in i.gb() {
            if g.support() & tag_mask == 0 {
                let c = g.to_ring(&self.base).expect("tag-free");
                for k in 0..self.rank {
                    let mut v = vec![self.base.zero(); self.rank];
                    v[k] = c.clone();
                    out.push(v);
                }
            } else if let Some(v) = self.split(g) {
                out.push(v);
            }
        }
        out
    }

    /// `{v ∈ R^h : K v ⊆ N}`.
    pub fn colon(&self, gens: &[ModuleVector<F>], k: &Ideal<F>) -> Vec<ModuleVector<F>> {
        if k.is_zero() {
            return self.free();
        }
        let n = self.embed(gens);
        self.extract(&n.colon(&self.embed_ideal(k)))
    }

    pub fn intersect(&self, a: &[ModuleVector<F>], b: &[ModuleVector<F>]) -> Vec<ModuleVector<F>> {
        self.extract(&self.embed(a).intersect(&self.embed(b)))
    }

    pub fn free(&self) -> Vec<ModuleVector<F>> {
        (0..self.rank)
            .map(|k| {
                let mut v = vec![self.base.zero(); self.rank];
                v[k] = self.base.one();
                v
            })
            .collect()
    }

    pub fn contains(&self, gens: &[ModuleVector<F>], v: &[Poly<F>]) -> bool {
        self.embed(gens).contains(&self.embed_vector(v))
    }
}

/// `∩_{t≥1} [(E + √I_t F) : J I_{t-1}]`; terms with `I_{t-1} = 0` are all of `F`.
pub fn jacobson_intersection<F: Field>(p: &ModulePresentation<F>, j: &Ideal<F>) -> Result<Vec<ModuleVector<F>>> {
    let flat = Flattening::new(p.ring(), p.rank())?;
    let top = p.rank().min(p.columns().len()) + 1;
    let pieces: Vec<Result<Vec<ModuleVector<F>>>> = (1..=top)
        .into_par_iter()
        .map(|t| {
            let prev = p.minors(t - 1);
            if prev.is_zero() {
                return Ok(flat.free());
            }
            let rad = radical_restricted(&p.minors(t))?;
            let mut gens = p.columns().to_vec();
            for g in rad.gens() {
                for k in 0..p.rank() {
                    let mut v = vec![p.ring().zero(); p.rank()];
                    v[k] = g.clone();
                    gens.push(v);
                }
            }
            Ok(flat.colon(&gens, &j.product(&prev)))
        })
        .collect();
    let mut acc = flat.free();
    for piece in pieces {
        acc = flat.intersect(&acc, &piece?);
    }
    Ok(acc)
}

/// `{v ∈ k^h : v ∈ N}`.
pub fn constants_in_submodule<F: Field>(ring: &Ring<F>, rank: usize, gens: &[ModuleVector<F>]) -> Result<Echelon<F>> {
    let field = ring.field();
    let flat = Flattening::new(ring, rank)?;
    let n = flat.embed(gens);
    let forms: Vec<Poly<F>> = (0..rank).map(|i| n.normal_form(&flat.tag(i))).collect();
    let mut monos: Vec<Monomial> = forms.iter().flat_map(|f| f.terms().iter().map(|t| t.0)).collect();
    monos.sort_by(|a, b| flat.flat.cmp(b, a));
    monos.dedup();
    let rows: Vec<Vector<F>> = monos
        .iter()
        .map(|m| forms.iter().map(|f| f.coefficient(m)).collect())
        .collect();
    let basis = if rows.is_empty() {
        Echelon::from_rows(field, rank, (0..rank).map(|i| unit(field, rank, i))).rows
    } else {
        nullspace(field, rank, &rows)
    };
    Ok(Echelon::from_rows(field, rank, basis))
}

fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Constant vectors lying in `E(α)` for every `α` off `V(J)`.
pub fn core_module_pieces<F: Field>(p: &ModulePresentation<F>, j: &Ideal<F>) -> Result<Echelon<F>> {
    let n = jacobson_intersection(p, j)?;
    constants_in_submodule(p.ring(), p.rank(), &n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring() -> Ring<Rationals> {
        Ring::grevlex(Rationals, &["u"]).unwrap()
    }

    #[test]
    fn torsion_at_origin() {
        let r = ring();
        let p = ModulePresentation::new(&r, 1, vec![vec![r.var(0)]]);
        let n = jacobson_intersection(&p, &Ideal::unit(&r)).unwrap();
        let flat = Flattening::new(&r, 1).unwrap();
        assert!(flat.contains(&n, &[r.var(0)]));
        assert!(!flat.contains(&n, &[r.one()]));
        assert_eq!(core_module_pieces(&p, &Ideal::unit(&r)).unwrap().dim(), 0);
    }

    #[test]
    fn identity_presentation_gives_everything() {
        let r = ring();
        let p = ModulePresentation::new(&r, 2, vec![vec![r.one(), r.zero()], vec![r.zero(), r.one()]]);
        let j = Ideal::parse(&r, &["u"]).unwrap();
        assert_eq!(core_module_pieces(&p, &j).unwrap().dim(), 2);
    }

    #[test]
    fn constants() {
        let r = ring();
        let u = r.var(0);
        let scaled = vec![vec![u.clone(), r.zero()], vec![r.zero(), u.clone()]];
        assert_eq!(constants_in_submodule(&r, 2, &scaled).unwrap().dim(), 0);
        let mut with_e1 = scaled.clone();
        with_e1.push(vec![r.one(), r.zero()]);
        let c = constants_in_submodule(&r, 2, &with_e1).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[Rationals.one(), Rationals.zero()]));
    }

    #[test]
    fn colon_and_intersection() {
        let r = Ring::grevlex(Rationals, &["u1", "u2"]).unwrap();
        let flat = Flattening::new(&r, 2).unwrap();
        let (a, b) = (r.var(0), r.var(1));
        let n = vec![vec![a.mul(&b), r.zero()], vec![r.zero(), a.clone()]];
        let c = flat.colon(&n, &Ideal::principal(&a));
        assert!(flat.contains(&c, &[b.clone(), r.zero()]));
        assert!(flat.contains(&c, &[r.zero(), r.one()]));
        assert!(!flat.contains(&c, &[r.one(), r.zero()]));
        let m = vec![vec![b.clone(), b.clone()]];
        let i = flat.intersect(&n, &m);
        assert!(flat.contains(&i, &[a.mul(&b), a.mul(&b)]));
        assert!(!flat.contains(&i, &[b.clone(), b.clone()]));
    }
}

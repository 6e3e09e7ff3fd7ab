//! Standard graded algebras `k[x]/D` and the generic-element matrices `M_n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::linalg::{Echelon, Vector};
use crate::matrix::PolyMatrix;
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::{Poly, Ring};

/// `A = k[x_1..x_m]/D` with `D` homogeneous, in graded reverse lex order.
pub struct GradedAlgebra<F: Field> {
    ring: Ring<F>,
    relations: Ideal<F>,
    bases: Mutex<HashMap<u32, Arc<Vec<Monomial>>>>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn new(ring: &Ring<F>, relations: Vec<Poly<F>>) -> Result<Self> {
        let ring = if ring.order() == MonomialOrder::GrevLex {
            ring.clone()
        } else {
            ring.with_order(MonomialOrder::GrevLex)
        };
        let mut rels = Vec::new();
        for r in relations {
            if !r.is_homogeneous() {
                return Err(AlgebraError::NonHomogeneous(r.to_string()));
            }
            rels.push(r.to_ring(&ring)?);
        }
        if rels.iter().any(|r| !r.is_zero() && r.total_degree() == Some(0)) {
            return Err(AlgebraError::Unsupported("relations generate the unit ideal".into()));
        }
        Ok(GradedAlgebra {
            relations: Ideal::new(&ring, rels),
            ring,
            bases: Mutex::new(HashMap::new()),
        })
    }

    pub fn parse<S: AsRef<str>>(field: F, vars: &[S], relations: &[S]) -> Result<Self> {
        let ring = Ring::grevlex(field, vars)?;
        let rels = ring.parse_list(relations)?;
        Self::new(&ring, rels)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn relations(&self) -> &Ideal<F> {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations
            .gens()
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Default window for the `V_n` chain: twice the top relation degree plus
    /// the number of variables, and at least 3.
    pub fn default_n_max(&self) -> usize {
        (2 * self.max_relation_degree() as usize + self.nvars()).max(3)
    }

    /// Standard monomials of degree `n`, descending.
    pub fn basis(&self, n: u32) -> Arc<Vec<Monomial>> {
        if let Some(b) = self.bases.lock().unwrap().get(&n) {
            return Arc::clone(b);
        }
        let leads: Vec<Monomial> = self
            .relations
            .gb()
            .iter()
            .map(|g| *g.leading_monomial().unwrap())
            .collect();
        let mut b: Vec<Monomial> = monomials_of_degree(self.nvars(), n)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        b.sort_by(|x, y| self.ring.cmp(y, x));
        let b = Arc::new(b);
        self.bases.lock().unwrap().insert(n, Arc::clone(&b));
        b
    }

    pub fn hilbert(&self, n: u32) -> usize {
        self.basis(n).len()
    }

    /// Size of the largest set of variables containing no leading monomial of `D`.
    pub fn krull_dimension(&self) -> usize {
        let leads: Vec<u32> = self
            .relations
            .gb()
            .iter()
            .map(|g| g.leading_monomial().unwrap().support())
            .collect();
        let m = self.nvars();
        (0u32..(1 << m))
            .filter(|s| leads.iter().all(|l| l & !s != 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        self.relations.normal_form(f)
    }

    /// Coordinates of a degree-`n` element over `basis(n)` (after reduction mod `D`).
    pub fn coordinates(&self, f: &Poly<F>, n: u32) -> Vector<F> {
        let nf = self.normal_form(f);
        let b = self.basis(n);
        let field = self.field();
        let mut v = vec![field.zero(); b.len()];
        for (m, c) in nf.terms() {
            let k = b
                .iter()
                .position(|x| x == m)
                .unwrap_or_else(|| panic!("{} is not of degree {n}", nf));
            v[k] = c.clone();
        }
        v
    }

    pub fn from_coordinates(&self, n: u32, v: &[F::Elem]) -> Poly<F> {
        let b = self.basis(n);
        let terms = b.iter().zip(v).map(|(m, c)| (*m, c.clone())).collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Preimage of an ideal of `A` in the polynomial ring.
    pub fn lift(&self, gens: Vec<Poly<F>>) -> Ideal<F> {
        Ideal::new(&self.ring, gens).sum(&self.relations)
    }

    /// `m^n` in `A`, lifted.
    pub fn max_ideal_power(&self, n: u32) -> Ideal<F> {
        let gens = self.basis(n).iter().map(|m| self.ring.monomial(*m)).collect();
        self.lift(gens)
    }

    /// Degree-`n` piece of a homogeneous ideal (lifted, containing `D`), in
    /// reduced echelon form over `basis(n)`.
    pub fn ideal_piece(&self, ideal: &Ideal<F>, n: u32) -> Echelon<F> {
        let field = self.field();
        let b = self.basis(n);
        let images: Vec<Poly<F>> = b.iter().map(|m| ideal.normal_form(&self.ring.monomial(*m))).collect();
        let mut targets: Vec<Monomial> = images.iter().flat_map(|p| p.terms().iter().map(|t| t.0)).collect();
        targets.sort_by(|x, y| self.ring.cmp(y, x));
        targets.dedup();
        let rows: Vec<Vector<F>> = targets
            .iter()
            .map(|t| images.iter().map(|p| p.coefficient(t)).collect())
            .collect();
        let ker = Echelon::from_rows(field, b.len(), rows).orthogonal_complement();
        Echelon::from_rows(field, b.len(), ker)
    }

    /// Minimal homogeneous generators of an ideal of `A` given by its lift,
    /// chosen degreewise from reduced echelon bases; canonical for the ideal.
    pub fn minimal_generators(&self, ideal: &Ideal<F>) -> Vec<Poly<F>> {
        let top = ideal
            .gens()
            .iter()
            .filter(|g| !self.normal_form(g).is_zero())
            .filter_map(|g| g.total_degree())
            .max();
        let Some(top) = top else {
            return Vec::new();
        };
        if ideal.is_unit() {
            return vec![self.ring.one()];
        }
        let mut out = Vec::new();
        let mut prev: Option<Echelon<F>> = None;
        for n in 1..=top {
            let piece = self.ideal_piece(ideal, n);
            let mut span = Echelon::empty(self.field(), self.hilbert(n));
            if let Some(prev) = &prev {
                for v in &prev.rows {
                    let f = self.from_coordinates(n - 1, v);
                    for j in 0..self.nvars() {
                        span.insert(self.coordinates(&f.mul(&self.ring.var(j)), n));
                    }
                }
            }
            for v in &piece.rows {
                if span.insert(v.clone()) {
                    out.push(self.from_coordinates(n, v));
                }
            }
            prev = Some(piece);
        }
        out
    }

    /// The ideal of `A` generated by the given degreewise pieces plus `m^top`.
    pub fn ideal_from_pieces(&self, pieces: &[(u32, Vec<Vector<F>>)], top: u32) -> Ideal<F> {
        let mut gens: Vec<Poly<F>> = Vec::new();
        for (n, vs) in pieces {
            for v in vs {
                gens.push(self.from_coordinates(*n, v));
            }
        }
        gens.extend(self.basis(top).iter().map(|m| self.ring.monomial(*m)));
        let lifted = self.lift(gens);
        let min = self.minimal_generators(&lifted);
        self.lift(min)
    }
}

/// Generic elements `z_i = Σ_j u_ij x_j` and the matrices `M_n` over `k[u]`.
pub struct GenericData<F: Field> {
    algebra: Arc<GradedAlgebra<F>>,
    d: usize,
    u_ring: Ring<F>,
    ux_ring: Ring<F>,
    n_max: usize,
    matrices: Vec<OnceLock<PolyMatrix<F>>>,
    minors: Mutex<HashMap<(usize, usize), Ideal<F>>>,
    ranks: Vec<OnceLock<usize>>,
}

impl<F: Field> GenericData<F> {
    /// `d` generic elements with `d = dim A`.
    pub fn new(algebra: Arc<GradedAlgebra<F>>, n_max: Option<usize>) -> Result<Self> {
        let d = algebra.krull_dimension();
        if d == 0 {
            return Err(AlgebraError::ZeroDimensional);
        }
        Self::with_elements(algebra, d, n_max)
    }

    pub fn with_elements(algebra: Arc<GradedAlgebra<F>>, d: usize, n_max: Option<usize>) -> Result<Self> {
        let m = algebra.nvars();
        let n_max = n_max.unwrap_or_else(|| algebra.default_n_max()).max(1);
        let taken = |stem: &str| algebra.ring().vars().iter().any(|v| v.starts_with(stem));
        let stem = ["u", "v", "w", "s"].into_iter().find(|s| !taken(s)).unwrap_or("g_");
        let names: Vec<String> = (0..d)
            .flat_map(|i| {
                (0..m).map(move |j| {
                    if d == 1 {
                        format!("{stem}{}", j + 1)
                    } else {
                        format!("{stem}{}_{}", i + 1, j + 1)
                    }
                })
            })
            .collect();
        if names.len() + m > crate::monomial::MAX_VARS {
            return Err(AlgebraError::TooManyVariables(names.len() + m));
        }
        let field = algebra.field().clone();
        let u_ring = Ring::grevlex(field.clone(), &names)?;
        let mut all = names.clone();
        all.extend(algebra.ring().vars().iter().cloned());
        let ux_ring = Ring::grevlex(field, &all)?;
        Ok(GenericData {
            algebra,
            d,
            u_ring,
            ux_ring,
            n_max,
            matrices: (0..=n_max + 1).map(|_| OnceLock::new()).collect(),
            minors: Mutex::new(HashMap::new()),
            ranks: (0..=n_max + 1).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn algebra(&self) -> &GradedAlgebra<F> {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<GradedAlgebra<F>> {
        Arc::clone(&self.algebra)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `k[u]`.
    pub fn u_ring(&self) -> &Ring<F> {
        &self.u_ring
    }

    /// `k[u, x]`, u-variables first.
    pub fn ux_ring(&self) -> &Ring<F> {
        &self.ux_ring
    }

    pub fn u_count(&self) -> usize {
        self.u_ring.nvars()
    }

    /// `z_i` in `k[u, x]`.
    pub fn generic_element(&self, i: usize) -> Poly<F> {
        let m = self.algebra.nvars();
        let nu = self.u_count();
        let mut z = self.ux_ring.zero();
        for j in 0..m {
            z = z.add(&self.ux_ring.var(i * m + j).mul(&self.ux_ring.var(nu + j)));
        }
        z
    }

    /// `Q_u + D` in `k[u, x]`.
    pub fn q_u(&self) -> Ideal<F> {
        let mut gens: Vec<Poly<F>> = (0..self.d).map(|i| self.generic_element(i)).collect();
        for r in self.algebra.relations().gens() {
            gens.push(r.to_ring(&self.ux_ring).unwrap());
        }
        Ideal::new(&self.ux_ring, gens)
    }

    /// `D` in `k[u, x]`.
    pub fn relations_ux(&self) -> Ideal<F> {
        self.algebra.relations().to_ring(&self.ux_ring).unwrap()
    }

    /// `M_n` for `n ≥ 1`: rows `(i, f)` with `f ∈ B_{n-1}`, columns `B_n`.
    pub fn matrix(&self, n: usize) -> &PolyMatrix<F> {
        assert!(n >= 1, "M_n is defined for n >= 1");
        if n >= self.matrices.len() {
            panic!("degree {n} beyond the configured window");
        }
        self.matrices[n].get_or_init(|| self.build_matrix(n))
    }

    fn build_matrix(&self, n: usize) -> PolyMatrix<F> {
        let a = &self.algebra;
        let m = a.nvars();
        let prev = a.basis(n as u32 - 1);
        let cols = a.hilbert(n as u32);
        let mut rows = Vec::with_capacity(self.d * prev.len());
        // coords[f][j] = coordinates of x_j * f over B_n
        let coords: Vec<Vec<Vector<F>>> = prev
            .iter()
            .map(|f| {
                (0..m)
                    .map(|j| a.coordinates(&a.ring().monomial(f.mul(&Monomial::var(j, 1))), n as u32))
                    .collect()
            })
            .collect();
        for i in 0..self.d {
            for fc in &coords {
                let row: Vec<Poly<F>> = (0..cols)
                    .map(|b| {
                        let terms = (0..m)
                            .map(|j| (Monomial::var(i * m + j, 1), fc[j][b].clone()))
                            .collect();
                        Poly::from_terms(&self.u_ring, terms)
                    })
                    .collect();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return PolyMatrix::zeros(&self.u_ring, 0, cols);
        }
        PolyMatrix::new(&self.u_ring, rows)
    }

    /// `I_t(M_n)`.
    pub fn minors(&self, n: usize, t: usize) -> Ideal<F> {
        if let Some(i) = self.minors.lock().unwrap().get(&(n, t)) {
            return i.clone();
        }
        let ideal = self.matrix(n).minors(t);
        self.minors.lock().unwrap().insert((n, t), ideal.clone());
        ideal
    }

    /// `I_{h_n}(M_n)`, whose zero locus is `V_n`; `(0)` for `n = 0`.
    pub fn chain_ideal(&self, n: usize) -> Ideal<F> {
        if n == 0 {
            return Ideal::zero(&self.u_ring);
        }
        self.minors(n, self.algebra.hilbert(n as u32))
    }

    /// Rank of `M_n` over `k(u)`.
    pub fn generic_rank(&self, n: usize) -> usize {
        *self.ranks[n].get_or_init(|| self.matrix(n).generic_rank())
    }

    /// Coordinates of a point `α` as `u`-variable values (row-major `d × m`).
    pub fn specialize(&self, n: usize, alpha: &[F::Elem]) -> Vec<Vector<F>> {
        self.matrix(n).evaluate(alpha)
    }
}

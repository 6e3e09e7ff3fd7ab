//! Ideals of polynomial rings and the operations built on Groebner bases.

use std::fmt;
use std::sync::{Arc, OnceLock};

use log::warn;
use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{groebner_basis, reduce};
use crate::monomial::MonomialOrder;
use crate::poly::{Poly, Ring};

/// An ideal given by generators, with its reduced Groebner basis computed on
/// first use and shared between clones.
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Poly<F>>,
    gb: Arc<OnceLock<Vec<Poly<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb: Arc::clone(&self.gb),
        }
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> Ideal<F> {
    /// Drops zero and repeated generators; all generators must live in `ring`.
    pub fn new(ring: &Ring<F>, gens: Vec<Poly<F>>) -> Ideal<F> {
        let mut out: Vec<Poly<F>> = Vec::with_capacity(gens.len());
        for g in gens {
            assert!(g.ring() == ring, "generator from a different ring");
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ideal {
            ring: ring.clone(),
            gens: out,
            gb: Arc::new(OnceLock::new()),
        }
    }

    /// Checked constructor for generators of unknown provenance.
    pub fn try_new(ring: &Ring<F>, gens: Vec<Poly<F>>) -> Result<Ideal<F>> {
        if let Some(g) = gens.iter().find(|g| g.ring() != ring) {
            return Err(AlgebraError::RingMismatch(format!(
                "{:?} vs {:?}",
                g.ring(),
                ring
            )));
        }
        Ok(Ideal::new(ring, gens))
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring<F>, gens: &[S]) -> Result<Ideal<F>> {
        Ok(Ideal::new(ring, ring.parse_list(gens)?))
    }

    pub fn zero(ring: &Ring<F>) -> Ideal<F> {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring<F>) -> Ideal<F> {
        Ideal::new(ring, vec![ring.one()])
    }

    pub fn principal(f: &Poly<F>) -> Ideal<F> {
        Ideal::new(f.ring(), vec![f.clone()])
    }

    /// The ideal generated by the variables with the given indices.
    pub fn variables(ring: &Ring<F>, vars: &[usize]) -> Ideal<F> {
        Ideal::new(ring, vars.iter().map(|&v| ring.var(v)).collect())
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn gb(&self) -> &[Poly<F>] {
        self.gb.get_or_init(|| groebner_basis(&self.gens))
    }

    /// Same ideal, generated by its reduced Groebner basis.
    pub fn reduced(&self) -> Ideal<F> {
        let gb = self.gb().to_vec();
        let cache = Arc::new(OnceLock::new());
        let _ = cache.set(gb.clone());
        Ideal {
            ring: self.ring.clone(),
            gens: gb,
            gb: cache,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().first().is_some_and(|g| g.is_constant())
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn is_weighted_homogeneous(&self, weights: &[u32]) -> bool {
        self.gens.iter().all(|g| g.is_weighted_homogeneous(weights))
    }

    pub fn support(&self) -> u32 {
        self.gens.iter().fold(0, |m, g| m | g.support())
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        reduce(f, self.gb())
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        f.is_zero() || self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Mutual containment of generators.
    pub fn equals(&self, other: &Ideal<F>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_gens(&self, extra: &[Poly<F>]) -> Ideal<F> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Product ideal; generators are pairwise products, then replaced by the
    /// reduced basis when that is shorter.
    pub fn product(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        let p = Ideal::new(&self.ring, gens);
        if p.gens.len() > 4 && p.gb().len() < p.gens.len() {
            p.reduced()
        } else {
            p
        }
    }

    pub fn pow(&self, k: u32) -> Ideal<F> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Re-expresses the ideal in a ring containing all variables it uses.
    pub fn to_ring(&self, target: &Ring<F>) -> Result<Ideal<F>> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_ring(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, gens))
    }

    /// `I ∩ k[remaining variables]`, returned in the same ring.
    pub fn eliminate(&self, drop: &[usize]) -> Ideal<F> {
        let mask = drop.iter().fold(0u32, |m, &v| m | (1 << v));
        if self.support() & mask == 0 {
            return self.clone();
        }
        let elim = self.ring.with_order(MonomialOrder::elimination(drop));
        let moved: Vec<Poly<F>> = self
            .gens
            .iter()
            .map(|g| g.to_ring(&elim).expect("same variables"))
            .collect();
        let gb = groebner_basis(&moved);
        let kept = gb
            .into_iter()
            .filter(|g| g.support() & mask == 0)
            .map(|g| g.to_ring(&self.ring).expect("same variables"))
            .collect();
        Ideal::new(&self.ring, kept).reduced()
    }

    /// Contraction to a ring whose variables are a subset of this ring's.
    pub fn contract(&self, target: &Ring<F>) -> Result<Ideal<F>> {
        let drop: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .filter(|(_, v)| target.var_index(v).is_none())
            .map(|(i, _)| i)
            .collect();
        self.eliminate(&drop).to_ring(target)
    }

    pub fn intersect(&self, other: &Ideal<F>) -> Ideal<F> {
        debug_assert!(self.ring == *other.ring());
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(&self.ring);
        }
        if self.is_monomial() && other.is_monomial() {
            let mut gens = Vec::new();
            for a in &self.gens {
                for b in &other.gens {
                    let l = a.leading_monomial().unwrap().lcm(b.leading_monomial().unwrap());
                    gens.push(self.ring.monomial(l));
                }
            }
            return Ideal::new(&self.ring, gens).reduced();
        }
        if other.contains_ideal(self) {
            return self.clone();
        }
        if self.contains_ideal(other) {
            return other.clone();
        }
        let n = self.ring.nvars();
        let t_name = self.ring.fresh_name("t");
        let mut names: Vec<String> = self.ring.vars().to_vec();
        names.push(t_name);
        let ext = Ring::new(
            self.ring.field().clone(),
            &names,
            MonomialOrder::elimination(&[n]),
        )
        .expect("room for a tag variable");
        let t = ext.var(n);
        let one_minus_t = ext.one().sub(&t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&g.to_ring(&ext).unwrap()));
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&g.to_ring(&ext).unwrap()));
        }
        let gb = groebner_basis(&gens);
        let kept = gb
            .into_iter()
            .filter(|g| g.support() & (1 << n) == 0)
            .map(|g| g.to_ring(&self.ring).unwrap())
            .collect();
        Ideal::new(&self.ring, kept).reduced()
    }

    /// `I : (g)`.
    pub fn colon_poly(&self, g: &Poly<F>) -> Ideal<F> {
        if g.is_zero() || self.contains(g) {
            return Ideal::unit(&self.ring);
        }
        if g.is_constant() {
            return self.clone();
        }
        if self.is_monomial() && g.is_monomial() {
            let gm = g.leading_monomial().unwrap();
            let gens = self
                .gens
                .iter()
                .map(|f| {
                    let fm = f.leading_monomial().unwrap();
                    self.ring.monomial(fm.gcd(gm).quotient_of(fm))
                })
                .collect();
            return Ideal::new(&self.ring, gens).reduced();
        }
        let meet = self.intersect(&Ideal::principal(g));
        let gens = meet
            .gens
            .iter()
            .map(|f| f.div_exact(g).expect("element of (g) is divisible by g"))
            .collect();
        Ideal::new(&self.ring, gens).reduced()
    }

    /// `I : J`, intersecting the colons by single generators of `J`.
    pub fn colon(&self, other: &Ideal<F>) -> Ideal<F> {
        debug_assert!(self.ring == *other.ring());
        if other.is_zero() {
            warn!("colon by the zero ideal is the unit ideal");
            return Ideal::unit(&self.ring);
        }
        let gens: &[Poly<F>] = if other.gb.get().is_some_and(|gb| gb.len() < other.gens.len()) {
            other.gb()
        } else {
            &other.gens
        };
        let parts: Vec<Ideal<F>> = gens.par_iter().map(|g| self.colon_poly(g)).collect();
        let mut acc: Option<Ideal<F>> = None;
        for p in parts {
            acc = Some(match acc {
                None => p,
                Some(a) => a.intersect(&p),
            });
        }
        acc.unwrap()
    }

    /// `I : J^∞` by iterating the colon until it stabilizes.
    pub fn saturate(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other);
            if cur.contains_ideal(&next) {
                return cur;
            }
            cur = next;
        }
    }

    /// `I : g^∞` as `(I + (1 - y g)) ∩ k[vars]`, an independent route to saturation.
    pub fn saturate_by_inversion(&self, g: &Poly<F>) -> Ideal<F> {
        let (ext, y) = self.with_fresh_var("y");
        let mut gens: Vec<Poly<F>> = self.gens.iter().map(|f| f.to_ring(&ext).unwrap()).collect();
        gens.push(ext.one().sub(&y.mul(&g.to_ring(&ext).unwrap())));
        let n = ext.nvars() - 1;
        Ideal::new(&ext, gens)
            .eliminate(&[n])
            .contract(&self.ring)
            .expect("subset of variables")
    }

    fn with_fresh_var(&self, stem: &str) -> (Ring<F>, Poly<F>) {
        let name = self.ring.fresh_name(stem);
        let ext = self.ring.extend(&[name]).expect("room for one more variable");
        let y = ext.var(ext.nvars() - 1);
        (ext, y)
    }

    /// `f ∈ √I` via the Rabinowitsch trick: `1 ∈ I + (1 - y f)`.
    pub fn radical_contains(&self, f: &Poly<F>) -> bool {
        if self.contains(f) {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        let (ext, y) = self.with_fresh_var("y");
        let mut gens: Vec<Poly<F>> = self.gb().iter().map(|g| g.to_ring(&ext).unwrap()).collect();
        gens.push(ext.one().sub(&y.mul(&f.to_ring(&ext).unwrap())));
        Ideal::new(&ext, gens).is_unit()
    }

    pub fn radical_contains_ideal(&self, other: &Ideal<F>) -> bool {
        let gens: &[Poly<F>] = if other.gens.len() > 3 { other.gb() } else { &other.gens };
        gens.iter().all(|g| self.radical_contains(g))
    }

    /// Equal zero sets over the algebraic closure.
    pub fn radical_equals(&self, other: &Ideal<F>) -> bool {
        self.radical_contains_ideal(other) && other.radical_contains_ideal(self)
    }

    /// Minimal homogeneous generators: scans the reduced basis by degree and
    /// keeps elements outside the ideal of those kept so far.
    pub fn minimal_generators(&self) -> Vec<Poly<F>> {
        let mut cands: Vec<Poly<F>> = self.gb().to_vec();
        cands.sort_by(|a, b| {
            a.total_degree()
                .cmp(&b.total_degree())
                .then_with(|| self.ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
        });
        let mut kept: Vec<Poly<F>> = Vec::new();
        for c in cands {
            if kept.is_empty() || !Ideal::new(&self.ring, kept.clone()).contains(&c) {
                kept.push(c);
            }
        }
        kept
    }

    /// Maps generators into another field (for example reduction mod p).
    pub fn map_coefficients<G: Field>(
        &self,
        target: &Ring<G>,
        f: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Result<Ideal<G>> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_coefficients(target, &f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring(vars: &[&str]) -> Ring<Rationals> {
        Ring::grevlex(Rationals, vars).unwrap()
    }

    fn ideal(r: &Ring<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::parse(r, gens).unwrap()
    }

    #[test]
    fn membership_and_normal_form() {
        let r = ring(&["x1", "x2"]);
        let i = ideal(&r, &["x1*x2", "x2^3"]);
        assert!(i.normal_form(&r.parse("x1*x2").unwrap()).is_zero());
        assert_eq!(i.normal_form(&r.parse("x2^2").unwrap()), r.parse("x2^2").unwrap());
        assert!(i.normal_form(&r.zero()).is_zero());
    }

    #[test]
    fn equality() {
        let r = ring(&["x1", "x2"]);
        let m = ideal(&r, &["x1", "x2"]);
        assert!(m.pow(2).equals(&ideal(&r, &["x1^2", "x1*x2", "x2^2"])));
        let d = ["x1*x2", "x2^3"];
        let a = ideal(&r, &["x1"]).add_gens(&r.parse_list(&d).unwrap());
        let b = ideal(&r, &["x1", "x2^2"]).add_gens(&r.parse_list(&d).unwrap());
        assert!(!a.equals(&b));
        let s = ring(&["x"]);
        assert!(Ideal::unit(&s).equals(&ideal(&s, &["x+1", "x"])));
    }

    #[test]
    fn elimination() {
        let r = ring(&["t", "x", "y"]);
        let e = ideal(&r, &["x-t", "y-t^2"]).eliminate(&[0]);
        assert!(e.equals(&ideal(&r, &["y-x^2"])));
        let e = ideal(&r, &["t*x-1"]).eliminate(&[0]);
        assert!(e.is_zero());
        let i = ideal(&r, &["x^2", "y"]);
        assert!(i.eliminate(&[0]).equals(&i));
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        assert!(ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).equals(&ideal(&r, &["x*y"])));
        assert!(ideal(&r, &["x^2"]).intersect(&ideal(&r, &["x"])).equals(&ideal(&r, &["x^2"])));
        let a = ideal(&r, &["x+y"]);
        let b = ideal(&r, &["x-y"]);
        assert!(a.intersect(&b).equals(&ideal(&r, &["x^2-y^2"])));
    }

    #[test]
    fn colons_and_saturation() {
        let r = ring(&["x", "y"]);
        assert!(ideal(&r, &["x*y"]).colon(&ideal(&r, &["x"])).equals(&ideal(&r, &["y"])));
        let s = ideal(&r, &["x^2*y"]).saturate(&ideal(&r, &["y"]));
        assert!(s.equals(&ideal(&r, &["x^2"])));
        let i = ideal(&r, &["x^2+y^2", "x*y"]);
        assert!(i.saturate(&Ideal::unit(&r)).equals(&i));
        // quotient-ring colon: (x1^2) : (x1, x2) modulo (x1 x2, x2^2)
        let q = ring(&["x1", "x2"]);
        let d = q.parse_list(&["x1*x2", "x2^2"]).unwrap();
        let c = ideal(&q, &["x1^2"]).add_gens(&d).colon(&ideal(&q, &["x1", "x2"]));
        assert!(c.equals(&ideal(&q, &["x1", "x2"])));
    }

    #[test]
    fn saturation_routes_agree() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^3*y+x*y^3", "y^5"]);
        let g = r.parse("x").unwrap();
        assert!(i.saturate(&Ideal::principal(&g)).equals(&i.saturate_by_inversion(&g)));
    }

    #[test]
    fn radical_membership() {
        let r = ring(&["u1", "u2"]);
        let m3 = ideal(&r, &["u1", "u2"]).pow(3);
        assert!(m3.radical_contains(&r.parse("u1").unwrap()));
        assert!(!ideal(&r, &["u1"]).radical_contains(&r.parse("u2").unwrap()));
        assert!(ideal(&r, &["u1^2*u2^2"]).radical_contains(&r.parse("u1*u2").unwrap()));
    }
}

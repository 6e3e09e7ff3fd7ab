//! Polynomial rings and sparse multivariate polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::parse;

struct RingInner<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial ring `k[v_1..v_n]` with a fixed monomial order.
/// Cloning is cheap; two rings are the same context when field, variable
/// names and order agree.
pub struct Ring<F: Field> {
    inner: Arc<RingInner<F>>,
}

impl<F: Field> Clone for Ring<F> {
    fn clone(&self) -> Self {
        Ring {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<F: Field> PartialEq for Ring<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order
                && self.inner.vars == other.inner.vars
                && self.inner.field == other.inner.field)
    }
}

impl<F: Field> fmt::Debug for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}] ({:?})",
            self.inner.field.spec(),
            self.inner.vars.join(","),
            self.inner.order
        )
    }
}

impl<F: Field> Ring<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S], order: MonomialOrder) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(vars.len()));
        }
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(AlgebraError::Unsupported(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring {
            inner: Arc::new(RingInner { field, vars, order }),
        })
    }

    pub fn grevlex<S: AsRef<str>>(field: F, vars: &[S]) -> Result<Self> {
        Self::new(field, vars, MonomialOrder::GrevLex)
    }

    pub fn field(&self) -> &F {
        &self.inner.field
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring<F> {
        Ring {
            inner: Arc::new(RingInner {
                field: self.inner.field.clone(),
                vars: self.inner.vars.clone(),
                order,
            }),
        }
    }

    /// Appends fresh variables after the existing ones, keeping the order kind.
    pub fn extend<S: AsRef<str>>(&self, names: &[S]) -> Result<Ring<F>> {
        let mut vars = self.inner.vars.clone();
        vars.extend(names.iter().map(|s| s.as_ref().to_string()));
        Ring::new(self.inner.field.clone(), &vars, self.inner.order)
    }

    /// A variable name not yet used in this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        let mut k = 0;
        while self.var_index(&name).is_some() {
            k += 1;
            name = format!("{stem}{k}");
        }
        name
    }

    pub fn zero(&self) -> Poly<F> {
        Poly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Poly<F> {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        self.term(Monomial::one(), c)
    }

    pub fn from_i64(&self, n: i64) -> Poly<F> {
        self.constant(self.field().from_i64(n))
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F> {
        let terms = if self.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Poly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn monomial(&self, m: Monomial) -> Poly<F> {
        self.term(m, self.field().one())
    }

    pub fn var(&self, index: usize) -> Poly<F> {
        assert!(index < self.nvars(), "variable index out of range");
        self.monomial(Monomial::var(index, 1))
    }

    pub fn var_named(&self, name: &str) -> Result<Poly<F>> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Parses a polynomial in the text grammar (`+ - * ^ /`, parentheses,
    /// integers, variable names; no implicit multiplication).
    pub fn parse(&self, text: &str) -> Result<Poly<F>> {
        parse::parse_poly(self, text)
    }

    pub fn parse_list<S: AsRef<str>>(&self, texts: &[S]) -> Result<Vec<Poly<F>>> {
        texts.iter().map(|t| self.parse(t.as_ref())).collect()
    }

    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.inner.order.cmp(a, b)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, v) in self.inner.vars.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(v.clone()),
                e => parts.push(format!("{v}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// A polynomial: terms strictly descending in the ring's order, no zero
/// coefficients; the empty term list is the zero polynomial.
pub struct Poly<F: Field> {
    ring: Ring<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Clone for Poly<F> {
    fn clone(&self) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}

impl<F: Field> Eq for Poly<F> {}

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic: fails when the operands live in different rings.
pub fn poly_arith<F: Field>(a: &Poly<F>, b: &Poly<F>, op: ArithOp) -> Result<Poly<F>> {
    if a.ring != b.ring {
        return Err(AlgebraError::RingMismatch(format!(
            "{:?} vs {:?}",
            a.ring, b.ring
        )));
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

impl<F: Field> Poly<F> {
    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Ring<F>, mut terms: Vec<(Monomial, F::Elem)>) -> Poly<F> {
        let field = ring.field();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
                _ => {
                    if let Some(last) = out.last() {
                        if field.is_zero(&last.1) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if field.is_zero(&last.1) {
                out.pop();
            }
        }
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms that are already strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Ring<F>, terms: Vec<(Monomial, F::Elem)>) -> Poly<F> {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0).is_gt()));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Constant coefficient (value at the origin).
    pub fn constant_term(&self) -> F::Elem {
        self.coefficient(&Monomial::one())
    }

    pub fn constant_term_is_zero(&self) -> bool {
        self.terms.last().is_none_or(|t| !t.0.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field().zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Common weighted degree of all terms, if any.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut it = self.terms.iter().map(|t| t.0.weighted_degree(weights));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_weighted_homogeneous(&self, weights: &[u32]) -> bool {
        self.is_zero() || self.weighted_degree(weights).is_some()
    }

    /// Bitmask of the variables that occur.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |m, t| m | t.0.support())
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        debug_assert!(self.ring == other.ring);
        let field = self.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&a[i].1, &b[j].1);
                    if !field.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly<F> {
        let field = self.field();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly<F>) -> Poly<F> {
        self.add_scaled(&self.field().neg(&self.field().one()), &Monomial::one(), other)
    }

    /// `self + c * m * g`.
    pub fn add_scaled(&self, c: &F::Elem, m: &Monomial, g: &Poly<F>) -> Poly<F> {
        debug_assert!(self.ring == g.ring);
        let field = self.field();
        if field.is_zero(c) {
            return self.clone();
        }
        let (a, b) = (&self.terms, &g.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(m);
            match self.ring.cmp(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, field.mul(c, &b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(&a[i].1, &field.mul(c, &b[j].1));
                    if !field.is_zero(&s) {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push((t.0.mul(m), field.mul(c, &t.1)));
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        debug_assert!(self.ring == other.ring);
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = self.ring.zero();
        for (m, c) in &small.terms {
            acc = acc.add_scaled(c, m, big);
        }
        acc
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Poly<F> {
        let field = self.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, d)| (t.mul(m), field.mul(c, d)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Poly<F> {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, k: u32) -> Poly<F> {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly<F> {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc)),
        }
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Poly<F>) -> Option<Poly<F>> {
        let (glm, glc) = (g.leading_monomial()?, g.leading_coeff()?);
        let field = self.field();
        let ginv = field.inv(glc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !glm.divides(&m) {
                return None;
            }
            let qm = glm.quotient_of(&m);
            let qc = field.mul(&c, &ginv);
            rem = rem.add_scaled(&field.neg(&qc), &qm, g);
            quot.push((qm, qc));
        }
        Some(Poly {
            ring: self.ring.clone(),
            terms: quot,
        })
    }

    /// Partial derivative with respect to a variable.
    pub fn derivative(&self, var: usize) -> Poly<F> {
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                let mut m2 = *m;
                m2.set_exp(var, e - 1);
                (m2, field.mul(c, &field.from_i64(e as i64)))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Substitutes field values for some variables; the rest stay symbolic.
    pub fn evaluate(&self, assignment: &[(usize, F::Elem)]) -> Poly<F> {
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = *m;
                let mut c2 = c.clone();
                for (v, val) in assignment {
                    let e = m2.exp(*v);
                    if e > 0 {
                        c2 = field.mul(&c2, &field.pow(val, e as u64));
                        m2.set_exp(*v, 0);
                    }
                }
                (m2, c2)
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Evaluates at a full point (one value per ring variable).
    pub fn eval_point(&self, point: &[F::Elem]) -> F::Elem {
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, val) in point.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    t = field.mul(&t, &field.pow(val, e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Re-expresses the polynomial in another ring over the same field,
    /// matching variables by name.
    pub fn to_ring(&self, target: &Ring<F>) -> Result<Poly<F>> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        let map = var_map(&self.ring, target, self.support())?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (remap(m, &map), c.clone()))
            .collect();
        Ok(Poly::from_terms(target, terms))
    }

    /// Maps coefficients into another field, e.g. reduction modulo `p`.
    /// Variables are matched by name.
    pub fn map_coefficients<G: Field>(
        &self,
        target: &Ring<G>,
        f: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Result<Poly<G>> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        let support = self.support();
        for (i, v) in self.ring.vars().iter().enumerate() {
            match target.var_index(v) {
                Some(j) => map.push(Some(j)),
                None if support & (1 << i) == 0 => map.push(None),
                None => return Err(AlgebraError::UnknownVariable(v.clone())),
            }
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c2 = f(c).ok_or(AlgebraError::BadDenominator(
                target.field().characteristic(),
            ))?;
            terms.push((remap(m, &map), c2));
        }
        Ok(Poly::from_terms(target, terms))
    }
}

fn var_map<F: Field>(from: &Ring<F>, to: &Ring<F>, support: u32) -> Result<Vec<Option<usize>>> {
    if from.field() != to.field() {
        return Err(AlgebraError::RingMismatch("different coefficient fields".into()));
    }
    let mut map = Vec::with_capacity(from.nvars());
    for (i, v) in from.vars().iter().enumerate() {
        match to.var_index(v) {
            Some(j) => map.push(Some(j)),
            None if support & (1 << i) == 0 => map.push(None),
            None => return Err(AlgebraError::UnknownVariable(v.clone())),
        }
    }
    Ok(map)
}

fn remap(m: &Monomial, map: &[Option<usize>]) -> Monomial {
    let mut out = Monomial::one();
    for (i, target) in map.iter().enumerate() {
        if let Some(j) = target {
            let e = m.exp(i);
            if e > 0 {
                out.set_exp(*j, e);
            }
        }
    }
    out
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        let minus_one = field.neg(&field.one());
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let body = if m.is_one() {
                field.format(c)
            } else if field.is_one(c) {
                self.ring.format_monomial(m)
            } else if *c == minus_one {
                format!("-{}", self.ring.format_monomial(m))
            } else {
                format!("{}*{}", field.format(c), self.ring.format_monomial(m))
            };
            if k > 0 && !body.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> std::ops::Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Self) -> Poly<F> {
        Poly::add(self, rhs)
    }
}

impl<F: Field> std::ops::Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Self) -> Poly<F> {
        Poly::sub(self, rhs)
    }
}

impl<F: Field> std::ops::Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Self) -> Poly<F> {
        Poly::mul(self, rhs)
    }
}

impl<F: Field> std::ops::Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring() -> Ring<Rationals> {
        Ring::grevlex(Rationals, &["u1", "u2", "x1", "x2"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let a = r.parse("u1+u2").unwrap();
        let b = r.parse("u1-u2").unwrap();
        assert_eq!(&a * &b, r.parse("u1^2-u2^2").unwrap());
        assert_eq!(&a + &r.zero(), a);
    }

    #[test]
    fn modular_coefficients() {
        let r = Ring::grevlex(PrimeField::new(13).unwrap(), &["x"]).unwrap();
        assert_eq!(&r.from_i64(7) * &r.from_i64(2), r.one());
    }

    #[test]
    fn mismatch_is_an_error() {
        let r = ring();
        let s = Ring::grevlex(Rationals, &["y"]).unwrap();
        assert!(poly_arith(&r.one(), &s.one(), ArithOp::Add).is_err());
        assert!(poly_arith(&r.one(), &r.one(), ArithOp::Mul).is_ok());
    }

    #[test]
    fn evaluation_examples() {
        let r = ring();
        let q = Rationals;
        let z = r.parse("u1*x1+u2*x2").unwrap();
        let at = z.evaluate(&[(0, q.from_i64(1)), (1, q.from_i64(0))]);
        assert_eq!(at, r.parse("x1").unwrap());
        let f = r.parse("u1*u2*(u1^2+u2^2)").unwrap();
        assert_eq!(
            f.evaluate(&[(0, q.from_i64(1)), (1, q.from_i64(1))]),
            r.from_i64(2)
        );
        let g = r.parse("u1^2*u2^2").unwrap();
        assert!(g.evaluate(&[(0, q.from_i64(0)), (1, q.from_i64(17))]).is_zero());
    }

    #[test]
    fn canonical_printing() {
        let r = ring();
        let f = r.parse("x1*u1 - 1/2*x2^2 + 3").unwrap();
        assert_eq!(f.to_string(), "u1*x1-1/2*x2^2+3");
        assert_eq!(r.parse("-x1^3").unwrap().to_string(), "-x1^3");
        assert_eq!(r.zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let f = r.parse("u1^3*u2-u1*u2^3").unwrap();
        let g = r.parse("u1+u2").unwrap();
        assert_eq!(f.div_exact(&g).unwrap(), r.parse("u1^2*u2-u1*u2^2").unwrap());
        assert!(r.parse("u1^2+1").unwrap().div_exact(&g).is_none());
    }

    #[test]
    fn reorder_between_rings() {
        let r = ring();
        let lex = r.with_order(MonomialOrder::Lex);
        let f = r.parse("x2^3+u1*x1").unwrap();
        let g = f.to_ring(&lex).unwrap();
        assert_eq!(g.leading_monomial(), Some(&Monomial::from_exponents(&[1, 0, 1, 0])));
        assert_eq!(g.to_ring(&r).unwrap(), f);
    }
}

//! Squarefree parts and gcds for univariate and homogeneous bivariate polynomials.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{Poly, Ring};

/// Dense univariate coefficients, constant term first, no trailing zeros.
type Dense<E> = Vec<E>;

fn trim<F: Field>(field: &F, mut a: Dense<F::Elem>) -> Dense<F::Elem> {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
    a
}

fn make_monic<F: Field>(field: &F, a: Dense<F::Elem>) -> Dense<F::Elem> {
    match a.last() {
        None => a,
        Some(lc) => {
            let inv = field.inv(lc);
            a.iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn divmod<F: Field>(field: &F, a: &Dense<F::Elem>, b: &Dense<F::Elem>) -> (Dense<F::Elem>, Dense<F::Elem>) {
    let mut rem = a.clone();
    let db = b.len() - 1;
    let inv = field.inv(&b[db]);
    if rem.len() <= db {
        return (Vec::new(), trim(field, rem));
    }
    let mut quot = vec![field.zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = field.mul(&rem[k + db], &inv);
        if field.is_zero(&c) {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] = field.sub(&rem[k + i], &field.mul(&c, bc));
        }
        quot[k] = c;
    }
    (trim(field, quot), trim(field, rem))
}

fn gcd_dense<F: Field>(field: &F, a: &Dense<F::Elem>, b: &Dense<F::Elem>) -> Dense<F::Elem> {
    let (mut x, mut y) = (trim(field, a.clone()), trim(field, b.clone()));
    while !y.is_empty() {
        let (_, r) = divmod(field, &x, &y);
        x = y;
        y = r;
    }
    make_monic(field, x)
}

fn derivative<F: Field>(field: &F, a: &Dense<F::Elem>) -> Dense<F::Elem> {
    let d = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| field.mul(c, &field.from_i64(k as i64)))
        .collect();
    trim(field, d)
}

fn squarefree_dense<F: Field>(field: &F, a: &Dense<F::Elem>) -> Dense<F::Elem> {
    if a.len() <= 1 {
        return make_monic(field, a.clone());
    }
    let g = gcd_dense(field, a, &derivative(field, a));
    make_monic(field, divmod(field, a, &g).0)
}

/// Variables a polynomial list lives in, as a sorted index list.
fn support_vars<F: Field>(polys: &[&Poly<F>]) -> Vec<usize> {
    let mask = polys.iter().fold(0u32, |m, p| m | p.support());
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// `f(a, 1)` as dense coefficients in `a`; also the univariate coefficient list.
fn dehomogenize<F: Field>(f: &Poly<F>, a: usize) -> Dense<F::Elem> {
    let field = f.field();
    let deg = f.terms().iter().map(|t| t.0.exp(a)).max().unwrap_or(0) as usize;
    let mut out = vec![field.zero(); deg + 1];
    for (m, c) in f.terms() {
        let k = m.exp(a) as usize;
        out[k] = field.add(&out[k], c);
    }
    trim(field, out)
}

/// `b^deg * g(a/b)` times `b^extra`.
fn homogenize<F: Field>(ring: &Ring<F>, g: &Dense<F::Elem>, a: usize, b: usize, extra: u32) -> Poly<F> {
    let deg = g.len().saturating_sub(1) as u32;
    let terms = g
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut e = vec![0u32; ring.nvars()];
            e[a] = k as u32;
            e[b] = deg - k as u32 + extra;
            (Monomial::from_exponents(&e), c.clone())
        })
        .collect();
    Poly::from_terms(ring, terms)
}

fn from_univariate<F: Field>(ring: &Ring<F>, g: &Dense<F::Elem>, v: usize) -> Poly<F> {
    let terms = g
        .iter()
        .enumerate()
        .map(|(k, c)| (Monomial::var(v, k as u32), c.clone()))
        .collect();
    Poly::from_terms(ring, terms)
}

fn check_char<F: Field>(f: &Poly<F>) -> Result<()> {
    let p = f.field().characteristic();
    let d = f.total_degree().unwrap_or(0) as u64;
    if p != 0 && d >= p {
        return Err(AlgebraError::NotImplemented {
            class: "degree-not-below-characteristic".into(),
            trace: vec![format!("degree {d} >= characteristic {p}")],
        });
    }
    Ok(())
}

/// Product of the distinct irreducible factors of `f` (monic), for univariate
/// and homogeneous bivariate inputs.
pub fn squarefree_part<F: Field>(f: &Poly<F>) -> Result<Poly<F>> {
    let ring = f.ring();
    if f.is_zero() {
        return Ok(f.clone());
    }
    check_char(f)?;
    let vars = support_vars(&[f]);
    match vars.len() {
        0 => Ok(ring.one()),
        1 => {
            let v = vars[0];
            let g = squarefree_dense(ring.field(), &dehomogenize(f, v));
            Ok(from_univariate(ring, &g, v))
        }
        2 => {
            if !f.is_homogeneous() {
                return Err(AlgebraError::NotImplemented {
                    class: "bivariate-non-homogeneous".into(),
                    trace: vec![format!("{f} is not homogeneous")],
                });
            }
            let (a, b) = (vars[0], vars[1]);
            let total = f.total_degree().unwrap();
            let g = dehomogenize(f, a);
            let b_mult = total - (g.len() as u32 - 1);
            let s = squarefree_dense(ring.field(), &g);
            Ok(homogenize(ring, &s, a, b, b_mult.min(1)).monic())
        }
        n => Err(AlgebraError::NotImplemented {
            class: "multivariate".into(),
            trace: vec![format!("{f} involves {n} variables")],
        }),
    }
}

/// Monic gcd of polynomials that together involve at most two variables and
/// are homogeneous when two variables occur.
pub fn gcd_list<F: Field>(polys: &[Poly<F>]) -> Result<Poly<F>> {
    let nonzero: Vec<&Poly<F>> = polys.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Err(AlgebraError::Unsupported("gcd of zero polynomials".into()));
    };
    let ring = first.ring().clone();
    let field = ring.field();
    let vars = support_vars(&nonzero);
    match vars.len() {
        0 => Ok(ring.one()),
        1 => {
            let v = vars[0];
            let mut g = dehomogenize(nonzero[0], v);
            for p in &nonzero[1..] {
                g = gcd_dense(field, &g, &dehomogenize(p, v));
            }
            Ok(from_univariate(&ring, &make_monic(field, g), v))
        }
        2 => {
            if let Some(p) = nonzero.iter().find(|p| !p.is_homogeneous()) {
                return Err(AlgebraError::NotImplemented {
                    class: "bivariate-non-homogeneous".into(),
                    trace: vec![format!("{p} is not homogeneous")],
                });
            }
            let (a, b) = (vars[0], vars[1]);
            let mut g: Option<Dense<F::Elem>> = None;
            let mut b_mult = u32::MAX;
            for p in &nonzero {
                let d = dehomogenize(p, a);
                b_mult = b_mult.min(p.total_degree().unwrap() - (d.len() as u32 - 1));
                g = Some(match g {
                    None => make_monic(field, d),
                    Some(acc) => gcd_dense(field, &acc, &d),
                });
            }
            Ok(homogenize(&ring, &g.unwrap(), a, b, b_mult).monic())
        }
        n => Err(AlgebraError::NotImplemented {
            class: "multivariate".into(),
            trace: vec![format!("gcd over {n} variables")],
        }),
    }
}

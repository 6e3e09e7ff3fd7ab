//! Radicals for the classes the core formulas need.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::poly::Poly;
use crate::squarefree::{gcd_list, squarefree_part};

/// `√I` when `I` is zero, monomial, principal, or homogeneous in two variables.
pub fn radical_restricted<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let mut trace = Vec::new();
    if ideal.is_zero() {
        return Ok(ideal.clone());
    }
    if ideal.is_unit() {
        return Ok(Ideal::unit(ring));
    }
    trace.push("not zero".to_string());
    let gb = ideal.gb();
    if gb.iter().all(|g| g.is_monomial()) {
        let gens = gb
            .iter()
            .map(|g| ring.monomial(g.leading_monomial().unwrap().radical()))
            .collect();
        return Ok(Ideal::new(ring, gens).reduced());
    }
    trace.push("not monomial".to_string());
    if gb.len() == 1 {
        return Ok(Ideal::principal(&squarefree_part(&gb[0])?));
    }
    trace.push(format!("not principal ({} basis elements)", gb.len()));
    let support = ideal.support();
    let nvars = support.count_ones();
    if nvars <= 2 && ideal.is_homogeneous() {
        let g = gcd_list(gb)?;
        if !g.is_constant() {
            return Ok(Ideal::principal(&squarefree_part(&g)?));
        }
        let vars: Vec<Poly<F>> = (0..ring.nvars())
            .filter(|v| support & (1 << v) != 0)
            .map(|v| ring.var(v))
            .collect();
        return Ok(Ideal::new(ring, vars));
    }
    trace.push(format!(
        "not a homogeneous ideal in at most two variables ({nvars} variables, homogeneous: {})",
        ideal.is_homogeneous()
    ));
    Err(AlgebraError::NotImplemented {
        class: "radical".into(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::Ring;

    #[test]
    fn supported_classes() {
        let r = Ring::grevlex(Rationals, &["u1", "u2"]).unwrap();
        let rad = |g: &[&str]| radical_restricted(&Ideal::parse(&r, g).unwrap()).unwrap();
        assert!(rad(&["u1^2*u2^2"]).equals(&Ideal::parse(&r, &["u1*u2"]).unwrap()));
        let m = Ideal::parse(&r, &["u1", "u2"]).unwrap();
        assert!(rad(&["u1^3", "u1^2*u2", "u1*u2^2", "u2^3"]).equals(&m));
        let lin = Ideal::parse(&r, &["u1"]).unwrap();
        assert!(rad(&["u1^3", "u1^2*u2"]).equals(&lin));
        let mixed = rad(&["u1^3+u1*u2^2", "u1^2*u2+u2^3"]);
        assert!(mixed.equals(&Ideal::parse(&r, &["u1^2+u2^2"]).unwrap()));
        assert!(rad(&["u1^2+u2^2", "u1*u2"]).equals(&m));
        assert!(rad(&[]).is_zero());
    }

    #[test]
    fn unsupported_reports_trace() {
        let r = Ring::grevlex(Rationals, &["a", "b", "c"]).unwrap();
        let i = Ideal::parse(&r, &["a*b+c^2", "a^2-b*c"]).unwrap();
        match radical_restricted(&i) {
            Err(AlgebraError::NotImplemented { trace, .. }) => assert_eq!(trace.len(), 4),
            other => panic!("{other:?}"),
        }
    }
}

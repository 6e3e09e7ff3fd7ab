//! Reductions: the `V_n` chain and big reduction number, reduction numbers,
//! the local-ring layer, fiber rings, and the inclusion chain for `𝒬 : 𝒥^∞`.

use std::sync::Arc;

use log::debug;
use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{GenericData, GradedAlgebra};
use crate::ideal::Ideal;
use crate::linalg::Echelon;
use crate::monomial::MonomialOrder;
use crate::poly::{Poly, Ring};

/// The determinantal chain `C_n = I_{h_n}(M_n)` inside the window `0..=n_max`.
#[derive(Clone, Debug)]
pub struct ChainAnalysis<F: Field> {
    /// `C_0 = (0)`, then `I_{h_n}(M_n)`.
    pub chain: Vec<Ideal<F>>,
    /// `distinct[n]`: `V_n ≠ V_{n+1}`.
    pub distinct: Vec<bool>,
    /// Whether `V_{n+1} ⊆ V_n` held at every step.
    pub monotone: bool,
    pub r: usize,
    /// `J = I_{h_{r+1}}(M_{r+1})`.
    pub j: Ideal<F>,
    pub n_max: usize,
}

/// `r = max{n : V_n ≠ V_{n+1}}` with zero sets compared over the algebraic
/// closure; fails when the chain is not seen to be stationary in the window.
pub fn big_reduction_number<F: Field>(g: &GenericData<F>) -> Result<ChainAnalysis<F>> {
    let n_max = g.n_max();
    let chain: Vec<Ideal<F>> = (0..=n_max)
        .into_par_iter()
        .map(|n| g.chain_ideal(n).reduced())
        .collect();
    let steps: Vec<(bool, bool)> = (0..n_max)
        .into_par_iter()
        .map(|n| {
            // V_{n+1} ⊆ V_n  ⇔  C_n ⊆ √C_{n+1}
            let down = chain[n + 1].radical_contains_ideal(&chain[n]);
            let up = chain[n].radical_contains_ideal(&chain[n + 1]);
            (down, up)
        })
        .collect();
    let monotone = steps.iter().all(|s| s.0);
    let distinct: Vec<bool> = steps.iter().map(|&(a, b)| !(a && b)).collect();
    let r = distinct.iter().rposition(|&d| d).unwrap_or(0);
    debug!("chain distinct steps {distinct:?}, r = {r}");
    if r + 2 > n_max {
        return Err(AlgebraError::Inconclusive {
            n_max,
            detail: format!("last change at n={r}; rerun with a larger n_max"),
        });
    }
    let j = chain[r + 1].clone();
    if j.is_zero() {
        return Err(AlgebraError::Inconclusive {
            n_max,
            detail: "J = (0)".into(),
        });
    }
    Ok(ChainAnalysis {
        chain,
        distinct,
        monotone,
        r,
        j,
        n_max,
    })
}

/// `Q_α` is a minimal reduction iff some generator of `J` is nonzero at `α`.
pub fn is_minimal_reduction<F: Field>(j: &Ideal<F>, alpha: &[F::Elem]) -> bool {
    let field = j.ring().field();
    j.gens().iter().any(|g| !field.is_zero(&g.eval_point(alpha)))
}

/// Largest `n` with `Q_n ≠ A_n` for an ideal `Q` generated by linear forms.
pub fn reduction_number_graded<F: Field>(a: &GradedAlgebra<F>, q: &[Poly<F>]) -> Result<usize> {
    if let Some(f) = q.iter().find(|f| !f.is_zero() && f.total_degree() != Some(1) || !f.is_homogeneous()) {
        return Err(AlgebraError::Unsupported(format!("{f} is not a linear form")));
    }
    let window = 2 * a.default_n_max() + 2;
    for n in 1..=window as u32 {
        let h = a.hilbert(n);
        if h == 0 {
            return Ok(n as usize - 1);
        }
        let mut span = Echelon::empty(a.field(), h);
        'fill: for f in a.basis(n - 1).iter() {
            let fm = a.ring().monomial(*f);
            for l in q {
                span.insert(a.coordinates(&l.mul(&fm), n));
                if span.dim() == h {
                    break 'fill;
                }
            }
        }
        if span.dim() == h {
            return Ok(n as usize - 1);
        }
    }
    Err(AlgebraError::NotAReduction(format!(
        "Q_n ≠ A_n for every n ≤ {window}"
    )))
}

/// `k[x]/D` localized at the ideal of the variables. Ideals are handled
/// through their preimages in `k[x]`; comparisons are made after localizing.
pub struct LocalRing<F: Field> {
    ring: Ring<F>,
    relations: Ideal<F>,
    max_ideal: Ideal<F>,
    weights: Option<Vec<u32>>,
}

/// Cap on the searches for reduction numbers and primary-component exponents.
pub const LOCAL_SEARCH_CAP: usize = 48;

impl<F: Field> LocalRing<F> {
    pub fn new(ring: &Ring<F>, relations: Vec<Poly<F>>, weights: Option<Vec<u32>>) -> Result<Self> {
        if let Some(w) = &weights {
            if w.len() != ring.nvars() {
                return Err(AlgebraError::Unsupported(format!(
                    "{} weights for {} variables",
                    w.len(),
                    ring.nvars()
                )));
            }
            if let Some(r) = relations.iter().find(|r| !r.is_weighted_homogeneous(w)) {
                return Err(AlgebraError::NonHomogeneous(format!("{r} under weights {w:?}")));
            }
        }
        if relations.iter().any(|r| !r.constant_term_is_zero()) {
            return Err(AlgebraError::Unsupported(
                "relations must vanish at the origin".into(),
            ));
        }
        let relations = Ideal::new(ring, relations);
        let vars: Vec<usize> = (0..ring.nvars()).collect();
        let max_ideal = Ideal::variables(ring, &vars).sum(&relations);
        Ok(LocalRing {
            ring: ring.clone(),
            relations,
            max_ideal,
            weights,
        })
    }

    pub fn parse<S: AsRef<str>>(field: F, vars: &[S], relations: &[S], weights: Option<Vec<u32>>) -> Result<Self> {
        let ring = Ring::grevlex(field, vars)?;
        let rels = ring.parse_list(relations)?;
        Self::new(&ring, rels, weights)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal<F> {
        &self.relations
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn max_ideal(&self) -> &Ideal<F> {
        &self.max_ideal
    }

    /// Preimage of the ideal generated by `gens`.
    pub fn ideal(&self, gens: Vec<Poly<F>>) -> Ideal<F> {
        Ideal::new(&self.ring, gens).sum(&self.relations)
    }

    pub fn parse_ideal<S: AsRef<str>>(&self, gens: &[S]) -> Result<Ideal<F>> {
        Ok(self.ideal(self.ring.parse_list(gens)?))
    }

    pub fn max_power(&self, n: usize) -> Ideal<F> {
        self.max_ideal.pow(n as u32).sum(&self.relations)
    }

    /// Product in `R`, generators kept modulo `D`.
    pub fn product(&self, a: &Ideal<F>, b: &Ideal<F>) -> Ideal<F> {
        let strip = |i: &Ideal<F>| -> Vec<Poly<F>> {
            i.gens()
                .iter()
                .map(|g| self.relations.normal_form(g))
                .filter(|g| !g.is_zero())
                .collect()
        };
        let (ga, gb) = (strip(a), strip(b));
        Ideal::new(&self.ring, ga).product(&Ideal::new(&self.ring, gb)).sum(&self.relations)
    }

    pub fn power(&self, a: &Ideal<F>, n: usize) -> Ideal<F> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = self.product(&acc, a);
        }
        acc.sum(&self.relations)
    }

    /// `a ⊆ b` after localizing: `b : a` is not inside the maximal ideal.
    pub fn contains(&self, b: &Ideal<F>, a: &Ideal<F>) -> bool {
        if b.contains_ideal(a) {
            return true;
        }
        b.colon(a).gens().iter().any(|g| !g.constant_term_is_zero())
    }

    pub fn contains_element(&self, b: &Ideal<F>, f: &Poly<F>) -> bool {
        self.contains(b, &Ideal::principal(f))
    }

    pub fn equal(&self, a: &Ideal<F>, b: &Ideal<F>) -> bool {
        self.contains(a, b) && self.contains(b, a)
    }

    /// The `m`-primary component `L + m^N` of an ideal that is `m`-primary
    /// after localizing; `N` is the least exponent with `m^N ⊆ L` locally.
    pub fn primary_component(&self, l: &Ideal<F>) -> Result<Ideal<F>> {
        for n in 0..=LOCAL_SEARCH_CAP {
            let mn = self.max_power(n);
            if self.contains(l, &mn) {
                return Ok(l.sum(&mn).reduced());
            }
        }
        Err(AlgebraError::Unsupported(format!(
            "{l} is not primary to the maximal ideal within m^{LOCAL_SEARCH_CAP}"
        )))
    }

    /// `f` is a nonzerodivisor of the local ring: `(D : f) ⊆ D` locally.
    pub fn is_nonzerodivisor(&self, f: &Poly<F>) -> bool {
        let ann = self.relations.colon_poly(f);
        self.contains(&self.relations, &ann)
    }

    /// Short generator list, dropping generators that are locally redundant.
    pub fn minimal_generators(&self, l: &Ideal<F>) -> Vec<Poly<F>> {
        let mut gens: Vec<Poly<F>> = l
            .gb()
            .iter()
            .map(|g| self.relations.normal_form(g))
            .filter(|g| !g.is_zero())
            .collect();
        gens.sort_by(|a, b| {
            self.ring
                .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        });
        gens.dedup();
        let mut k = gens.len();
        while k > 0 {
            k -= 1;
            let others: Vec<Poly<F>> = gens
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, g)| g.clone())
                .collect();
            if self.equal(&self.ideal(others.clone()), l) {
                gens = others;
            }
        }
        gens.sort_by(|a, b| {
            a.total_degree().cmp(&b.total_degree()).then_with(|| {
                self.ring
                    .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
            })
        });
        gens
    }
}

/// Least `n` with `J I^n = I^{n+1}` in the local ring.
pub fn reduction_number_ideal<F: Field>(local: &LocalRing<F>, j: &Ideal<F>, i: &Ideal<F>) -> Result<usize> {
    if !local.contains(i, j) {
        return Err(AlgebraError::NotAReduction(format!("{j} is not inside {i}")));
    }
    let mut ipow = Ideal::unit(local.ring());
    for n in 0..=LOCAL_SEARCH_CAP {
        let next = local.product(&ipow, i);
        if local.contains(&local.product(j, &ipow), &next) {
            return Ok(n);
        }
        ipow = next;
    }
    Err(AlgebraError::NotAReduction(format!(
        "J I^n ≠ I^(n+1) for n ≤ {LOCAL_SEARCH_CAP}"
    )))
}

/// Fiber ring `F(I) = ⊕ I^n / m I^n` presented as `k[T_1..T_s]/K`: the Rees
/// ideal `(D + (T_j - t a_j)) ∩ k[x, T]`, with `x ↦ 0`.
pub fn fiber_ring<F: Field>(local: &LocalRing<F>, gens: &[Poly<F>]) -> Result<GradedAlgebra<F>> {
    if let Some(w) = local.weights() {
        if let Some(a) = gens.iter().find(|a| a.weighted_degree(w).is_none_or(|d| d == 0)) {
            return Err(AlgebraError::Unsupported(format!(
                "generator {a} is not homogeneous of positive weight"
            )));
        }
    }
    if let Some(a) = gens.iter().find(|a| !a.constant_term_is_zero()) {
        return Err(AlgebraError::Unsupported(format!("{a} is a unit")));
    }
    let ring = local.ring();
    let s = gens.len();
    let t_names: Vec<String> = (1..=s).map(|j| format!("T{j}")).collect();
    let tag = ring.fresh_name("t");
    let mut names: Vec<String> = vec![tag];
    names.extend(ring.vars().iter().cloned());
    names.extend(t_names.iter().cloned());
    let big = Ring::new(ring.field().clone(), &names, MonomialOrder::elimination(&[0]))?;
    let t = big.var(0);
    let mut rel: Vec<Poly<F>> = local
        .relations()
        .gens()
        .iter()
        .map(|g| g.to_ring(&big))
        .collect::<Result<_>>()?;
    for (j, a) in gens.iter().enumerate() {
        let tj = big.var(1 + ring.nvars() + j);
        rel.push(tj.sub(&t.mul(&a.to_ring(&big)?)));
    }
    let rees = Ideal::new(&big, rel).eliminate(&[0]);
    let t_ring = Ring::grevlex(ring.field().clone(), &t_names)?;
    let x_zero: Vec<(usize, F::Elem)> = (1..=ring.nvars()).map(|v| (v, ring.field().zero())).collect();
    let fiber: Vec<Poly<F>> = rees
        .gens()
        .iter()
        .map(|g| g.evaluate(&x_zero))
        .filter(|g| !g.is_zero())
        .map(|g| g.to_ring(&t_ring))
        .collect::<Result<_>>()?;
    let ideal = Ideal::new(&t_ring, fiber).reduced();
    GradedAlgebra::new(&t_ring, ideal.gens().to_vec())
}

/// Generic elements `b_i = Σ_j u_ij a_j` of an ideal of a local ring.
pub struct LocalGeneric<F: Field> {
    pub ux_ring: Ring<F>,
    pub u_ring: Ring<F>,
    /// `𝒬 + D` in `k[u, x]`.
    pub q: Ideal<F>,
    pub d: usize,
}

impl<F: Field> LocalGeneric<F> {
    pub fn new(local: &LocalRing<F>, gens: &[Poly<F>], d: usize) -> Result<Self> {
        let m = gens.len();
        let names: Vec<String> = (0..d)
            .flat_map(|i| {
                (0..m).map(move |j| {
                    if d == 1 {
                        format!("u{}", j + 1)
                    } else {
                        format!("u{}_{}", i + 1, j + 1)
                    }
                })
            })
            .collect();
        let u_ring = Ring::grevlex(local.ring().field().clone(), &names)?;
        let mut all = names.clone();
        all.extend(local.ring().vars().iter().cloned());
        let ux_ring = Ring::grevlex(local.ring().field().clone(), &all)?;
        let mut q: Vec<Poly<F>> = Vec::new();
        for i in 0..d {
            let mut b = ux_ring.zero();
            for (j, a) in gens.iter().enumerate() {
                b = b.add(&ux_ring.var(i * m + j).mul(&a.to_ring(&ux_ring)?));
            }
            q.push(b);
        }
        for r in local.relations().gens() {
            q.push(r.to_ring(&ux_ring)?);
        }
        Ok(LocalGeneric {
            q: Ideal::new(&ux_ring, q),
            ux_ring,
            u_ring,
            d,
        })
    }

    pub fn lift(&self, i: &Ideal<F>) -> Ideal<F> {
        i.to_ring(&self.ux_ring).expect("x-variables are present")
    }
}

/// The four ideals `I^{r+1} ⊆ P1 ⊆ P2 ⊆ P3 ⊆ core` and their inclusion verdicts.
#[derive(Clone, Debug)]
pub struct InclusionChain<F: Field> {
    pub power: Ideal<F>,
    pub double_colon: Ideal<F>,
    pub mixed_colon: Ideal<F>,
    pub saturation: Ideal<F>,
    /// Verdicts for the four inclusions, the last one against `core` when given.
    pub holds: Vec<bool>,
    /// Whether the last inclusion is strict (only with a core value).
    pub last_strict: Option<bool>,
}

pub fn inclusion_chain<F: Field>(
    local: &LocalRing<F>,
    i: &Ideal<F>,
    generic: &LocalGeneric<F>,
    r: usize,
    jcal: &Ideal<F>,
    core: Option<&Ideal<F>>,
) -> Result<InclusionChain<F>> {
    let x_ring = local.ring();
    let q = &generic.q;
    let ipow_r = generic.lift(&local.power(i, r));
    let ipow = local.power(i, r + 1);
    let ipow_ux = generic.lift(&ipow);
    let jcal_ux = jcal.to_ring(&generic.ux_ring)?;
    let qi: Ideal<F> = q.colon(&ipow_ux);
    let double_colon = q.colon(&qi).contract(x_ring)?;
    let irq = ipow_r.product(q).sum(&generic.lift(local.relations()));
    let mixed = q.colon(&irq.colon(&ipow_ux)).contract(x_ring)?;
    let sat = q.saturate(&jcal_ux).contract(x_ring)?;
    let mut holds = vec![
        local.contains(&double_colon, &ipow),
        local.contains(&mixed, &double_colon),
        local.contains(&sat, &mixed),
    ];
    let mut last_strict = None;
    if let Some(c) = core {
        holds.push(local.contains(c, &sat));
        last_strict = Some(!local.contains(&sat, c));
    }
    Ok(InclusionChain {
        power: ipow,
        double_colon,
        mixed_colon: mixed,
        saturation: sat,
        holds,
        last_strict,
    })
}

/// Graded algebra of a local ring's fiber data, kept for callers that need both.
pub fn fiber_generic<F: Field>(fiber: GradedAlgebra<F>, n_max: Option<usize>) -> Result<GenericData<F>> {
    GenericData::new(Arc::new(fiber), n_max)
}

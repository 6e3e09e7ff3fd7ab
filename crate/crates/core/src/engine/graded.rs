//! Cores of standard graded algebras from the generic matrices `M_n`.

use log::debug;
use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::GenericData;
use crate::ideal::Ideal;
use crate::linalg::{Echelon, Vector};
use crate::module::{core_module_pieces, ModulePresentation};
use crate::poly::Poly;
use crate::radical::radical_restricted;
use crate::reduction::ChainAnalysis;
use crate::report::{AdmissibleSequence, CoreMethod, CoreReport, FieldSemantics};

/// `I_t(M_n)` with `I_0 = (1)`.
fn fitting<F: Field>(g: &GenericData<F>, n: usize, t: usize) -> Ideal<F> {
    g.minors(n, t)
}

/// All sequences `(a_1..a_r)` with `0 ≤ a_n ≤ rank M_n` whose stratum
/// `V(Σ I_{a_n+1}) ∖ V(J ∏ I_{a_n})` is nonempty over the algebraic closure.
pub fn admissible_sequences<F: Field>(g: &GenericData<F>, chain: &ChainAnalysis<F>) -> Vec<AdmissibleSequence<F>> {
    let r = chain.r;
    let u = g.u_ring();
    let j = &chain.j;
    // per-degree candidates, pruned one degree at a time
    let candidates: Vec<Vec<usize>> = (1..=r)
        .into_par_iter()
        .map(|n| {
            (0..=g.generic_rank(n))
                .filter(|&a| {
                    let low = j.product(&fitting(g, n, a));
                    !fitting(g, n, a + 1).radical_contains_ideal(&low)
                })
                .collect()
        })
        .collect();
    debug!("admissible candidates per degree: {candidates:?}");
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Ideal<F>, Ideal<F>)> = vec![(Vec::new(), Ideal::zero(u), j.clone())];
    while let Some((a, vanishing, nonvanishing)) = stack.pop() {
        let n = a.len() + 1;
        if n > r {
            out.push(AdmissibleSequence {
                a,
                vanishing,
                nonvanishing,
            });
            continue;
        }
        for &t in candidates[n - 1].iter().rev() {
            let van = vanishing.sum(&fitting(g, n, t + 1)).reduced();
            let non = nonvanishing.product(&fitting(g, n, t)).reduced();
            if !van.radical_contains_ideal(&non) {
                let mut a2 = a.clone();
                a2.push(t);
                stack.push((a2, van, non));
            }
        }
    }
    out.sort_by(|x, y| x.a.cmp(&y.a));
    out
}

fn minimal<F: Field>(g: &GenericData<F>, ideal: &Ideal<F>) -> (Ideal<F>, Vec<Poly<F>>) {
    let a = g.algebra();
    let gens = a.minimal_generators(ideal);
    (a.lift(gens.clone()), gens)
}

/// Checks `m^{r+1} ⊆ result`.
fn contains_top_power<F: Field>(g: &GenericData<F>, result: &Ideal<F>, r: usize) -> bool {
    result.contains_ideal(&g.algebra().max_ideal_power(r as u32 + 1))
}

/// Intersection over admissible strata of
/// `[(Q_u + Σ √I_{a_n+1}(M_n)) : J ∏ I_{a_n}(M_n)] ∩ A`.
pub fn core_stratified<F: Field>(g: &GenericData<F>, chain: &ChainAnalysis<F>) -> Result<CoreReport<F>> {
    let strata = admissible_sequences(g, chain);
    let ux = g.ux_ring();
    let x_ring = g.algebra().ring();
    let q = g.q_u();
    let j = chain.j.to_ring(ux)?;
    let pieces: Vec<Result<Ideal<F>>> = strata
        .par_iter()
        .map(|s| {
            let mut base = q.clone();
            let mut divisors = vec![j.clone()];
            for (k, &a) in s.a.iter().enumerate() {
                let n = k + 1;
                let rad = radical_restricted(&fitting(g, n, a + 1)).map_err(|e| match e {
                    AlgebraError::NotImplemented { class, mut trace } => {
                        trace.push(format!("stratum {} at n={n}", s.label()));
                        AlgebraError::NotImplemented { class, trace }
                    }
                    other => other,
                })?;
                base = base.sum(&rad.to_ring(ux)?);
                if a > 0 {
                    divisors.push(fitting(g, n, a).to_ring(ux)?);
                }
            }
            let mut acc = base;
            for d in &divisors {
                acc = acc.colon(d);
            }
            let contracted = acc.contract(x_ring)?;
            debug!("stratum {} contributes {}", s.label(), contracted);
            Ok(contracted)
        })
        .collect();
    let mut result: Option<Ideal<F>> = None;
    for p in pieces {
        let p = p?;
        result = Some(match result {
            None => p,
            Some(acc) => acc.intersect(&p),
        });
    }
    let result = result.unwrap_or_else(|| Ideal::unit(x_ring));
    let (result, gens) = minimal(g, &result);
    let mut report = CoreReport::new(CoreMethod::Stratified, result, gens, FieldSemantics::AlgebraicallyClosedFormula);
    if !contains_top_power(g, &report.result, chain.r) {
        report.notes.push(format!("m^{} is not contained in the result", chain.r + 1));
    }
    report.strata = strata;
    report.r = Some(chain.r);
    report.equals_core = Some(true);
    Ok(report)
}

/// `J ⊆ √I_{rank M_n}(M_n)` for every `n ≤ r`: the Hilbert function of
/// `A/Q_α` is the same for every minimal reduction.
pub fn hilbert_function_independent<F: Field>(g: &GenericData<F>, chain: &ChainAnalysis<F>) -> bool {
    (1..=chain.r).all(|n| fitting(g, n, g.generic_rank(n)).radical_contains_ideal(&chain.j))
}

/// `(Q_u : J^∞) ∩ A`, which is contained in the core and equals it when the
/// Hilbert function of `A/Q_α` does not depend on `α`.
pub fn core_saturation<F: Field>(g: &GenericData<F>, chain: &ChainAnalysis<F>, strata: Option<usize>) -> Result<CoreReport<F>> {
    let ux = g.ux_ring();
    let j = chain.j.to_ring(ux)?;
    let sat = g.q_u().saturate(&j).contract(g.algebra().ring())?;
    let (result, gens) = minimal(g, &sat);
    let mut report = CoreReport::new(CoreMethod::Saturation, result, gens, FieldSemantics::AlgebraicallyClosedFormula);
    report.r = Some(chain.r);
    let independent = strata == Some(1) || hilbert_function_independent(g, chain);
    if independent {
        report.equals_core = Some(true);
    } else {
        report.notes.push("Hilbert function of A/Q varies with the reduction; result is only contained in the core".into());
    }
    Ok(report)
}

/// Degree-`n` part of `Q_u A(u) ∩ A`: constant vectors in the row space of
/// `M_n` over `k(u)`.
pub fn generic_row_space_constants<F: Field>(g: &GenericData<F>, n: usize) -> Echelon<F> {
    let field = g.algebra().field();
    let h = g.algebra().hilbert(n as u32);
    let m = g.matrix(n);
    let Some((rows, cols, det)) = m.nonzero_maximal_minor() else {
        return Echelon::empty(field, h);
    };
    if cols.len() == h {
        return Echelon::from_rows(field, h, (0..h).map(|i| unit(field, h, i)));
    }
    // kernel vectors by Cramer's rule: w_c = det, w_{cols[k]} = -det(cols[k] -> c)
    let mut equations: Vec<Vector<F>> = Vec::new();
    for c in (0..h).filter(|c| !cols.contains(c)) {
        let mut w: Vec<Poly<F>> = vec![g.u_ring().zero(); h];
        w[c] = det.clone();
        for k in 0..cols.len() {
            let mut swapped = cols.clone();
            swapped[k] = c;
            let mut order: Vec<(usize, usize)> = swapped.iter().copied().enumerate().collect();
            order.sort_by_key(|p| p.1);
            // sign of the permutation sorting the swapped columns
            let perm: Vec<usize> = order.iter().map(|p| p.0).collect();
            let sorted: Vec<usize> = order.iter().map(|p| p.1).collect();
            let minor = m.minor(&rows, &sorted);
            let signed = if permutation_is_odd(&perm) { minor.neg() } else { minor };
            w[cols[k]] = signed.neg();
        }
        let mut monos: Vec<_> = w.iter().flat_map(|p| p.terms().iter().map(|t| t.0)).collect();
        monos.sort_by(|a, b| g.u_ring().cmp(a, b));
        monos.dedup();
        for mono in monos {
            equations.push(w.iter().map(|p| p.coefficient(&mono)).collect());
        }
    }
    let solutions = crate::linalg::nullspace(field, h, &equations);
    Echelon::from_rows(field, h, solutions)
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// `Q_u A(u) ∩ A`, assembled degreewise up to `r` plus `m^{r+1}`.
pub fn core_generic_contraction<F: Field>(g: &GenericData<F>, chain: &ChainAnalysis<F>) -> Result<CoreReport<F>> {
    let r = chain.r;
    let pieces: Vec<(u32, Vec<Vector<F>>)> = (1..=r)
        .into_par_iter()
        .map(|n| (n as u32, generic_row_space_constants(g, n).rows))
        .collect();
    let ideal = g.algebra().ideal_from_pieces(&pieces, r as u32 + 1);
    let (result, gens) = minimal(g, &ideal);
    let mut report = CoreReport::new(CoreMethod::GenericContraction, result, gens, FieldSemantics::AlgebraicallyClosedFormula);
    report.r = Some(r);
    report.notes.push("contains the core; equality is not certified".into());
    Ok(report)
}

/// Degree-`n` piece of the core through the module formula applied to the
/// row space of `M_n`.
pub fn core_piece_from_module<F: Field>(g: &GenericData<F>, chain: &ChainAnalysis<F>, n: usize) -> Result<Echelon<F>> {
    let p = ModulePresentation::row_space(g.matrix(n));
    core_module_pieces(&p, &chain.j)
}

/// The core assembled from module pieces in degrees `1..=r` plus `m^{r+1}`.
pub fn core_from_modules<F: Field>(g: &GenericData<F>, chain: &ChainAnalysis<F>) -> Result<Ideal<F>> {
    let r = chain.r;
    let pieces: Vec<Result<(u32, Vec<Vector<F>>)>> = (1..=r)
        .into_par_iter()
        .map(|n| Ok((n as u32, core_piece_from_module(g, chain, n)?.rows)))
        .collect();
    let pieces = pieces.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(g.algebra().ideal_from_pieces(&pieces, r as u32 + 1))
}

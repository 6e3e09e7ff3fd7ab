//! Cores of ideals in one-dimensional local rings, and the local
//! counterparts of graded cores.

use std::sync::Arc;

use log::debug;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{GenericData, GradedAlgebra};
use crate::ideal::Ideal;
use crate::poly::Poly;
use crate::reduction::{big_reduction_number, fiber_ring, inclusion_chain, reduction_number_ideal, InclusionChain, LocalGeneric, LocalRing};
use crate::report::{CoreMethod, CoreReport, FieldSemantics};

/// An ideal `I = (a_1..a_s)` of a local ring.
pub struct LocalIdeal<'a, F: Field> {
    pub ring: &'a LocalRing<F>,
    pub gens: Vec<Poly<F>>,
    pub ideal: Ideal<F>,
}

impl<'a, F: Field> LocalIdeal<'a, F> {
    pub fn new(ring: &'a LocalRing<F>, gens: Vec<Poly<F>>) -> Self {
        let ideal = ring.ideal(gens.clone());
        LocalIdeal { ring, gens, ideal }
    }

    pub fn parse<S: AsRef<str>>(ring: &'a LocalRing<F>, gens: &[S]) -> Result<Self> {
        Ok(Self::new(ring, ring.ring().parse_list(gens)?))
    }

    pub fn power(&self, n: usize) -> Ideal<F> {
        self.ring.power(&self.ideal, n)
    }

    /// Analytic spread: Krull dimension of the fiber ring.
    pub fn analytic_spread(&self) -> Result<usize> {
        Ok(fiber_ring(self.ring, &self.gens)?.krull_dimension())
    }
}

/// A linear combination of the generators that is a nonzerodivisor, if the
/// first few tried combinations contain one.
pub fn nonzerodivisor_in<F: Field>(i: &LocalIdeal<F>) -> Option<Poly<F>> {
    let ring = i.ring.ring();
    let field = ring.field();
    let mut cands: Vec<Poly<F>> = i.gens.clone();
    for k in 1..=6i64 {
        let mut c = ring.zero();
        for (j, a) in i.gens.iter().enumerate() {
            c = c.add(&a.scale(&field.pow(&field.from_i64(k + 1), j as u64)));
        }
        cands.push(c);
    }
    cands.into_iter().find(|c| !c.is_zero() && i.ring.is_nonzerodivisor(c))
}

/// Reports the candidate `(x^{r+1}) : I^r` for a ring with no nonzerodivisor
/// in `I`, together with an element of it outside `(x)` (the core lies in
/// every reduction, so such an element shows the candidate is not the core).
fn not_cohen_macaulay<F: Field>(i: &LocalIdeal<F>, x: &Poly<F>) -> Result<AlgebraError> {
    let local = i.ring;
    let xi = local.ideal(vec![x.clone()]);
    let r = reduction_number_ideal(local, &xi, &i.ideal)?;
    let colon = local.ideal(vec![x.pow(r as u32 + 1)]).colon(&i.power(r));
    let candidate = local.primary_component(&colon)?;
    let gens = local.minimal_generators(&candidate);
    let witness = gens.iter().find(|g| !local.contains_element(&xi, g));
    let certificate = match witness {
        Some(w) => format!("{w} is not in ({x}) locally, so ({x}^{}):I^{r} is not inside the reduction ({x})", r + 1),
        None => format!("({x}^{}):I^{r} lies in ({x}); no certificate found", r + 1),
    };
    Ok(AlgebraError::NotCohenMacaulay {
        candidate: gens.iter().map(|g| g.to_string()).collect(),
        certificate,
    })
}

/// The ideals of the conductor route, all compared in the local ring.
#[derive(Clone, Debug)]
pub struct ConductorData<F: Field> {
    pub r: usize,
    /// `K = (x^r) : I^r`.
    pub k: Ideal<F>,
    pub x_k: Ideal<F>,
    pub k_i: Ideal<F>,
    pub colon: Ideal<F>,
    /// `xK = KI = (x^{r+1}) : I^r`.
    pub equalities_hold: bool,
}

fn char_p_note<F: Field>(i: &LocalIdeal<F>, r: usize, notes: &mut Vec<String>) {
    let p = i.ring.ring().field().characteristic();
    if p == 0 {
        return;
    }
    let maxdeg = i.gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(1) as u64;
    if p <= r as u64 * maxdeg {
        notes.push(format!("characteristic {p} does not exceed r * degree = {}", r as u64 * maxdeg));
    }
}

/// `core(I) = xK` for a one-dimensional Cohen-Macaulay local ring and a
/// minimal reduction `(x)`.
pub fn core_onedim_conductor<F: Field>(i: &LocalIdeal<F>, x: &Poly<F>) -> Result<(CoreReport<F>, ConductorData<F>)> {
    let local = i.ring;
    if nonzerodivisor_in(i).is_none() {
        return Err(not_cohen_macaulay(i, x)?);
    }
    let xi = local.ideal(vec![x.clone()]);
    if !local.is_nonzerodivisor(x) {
        return Err(AlgebraError::NotAReduction(format!("{x} is a zero divisor")));
    }
    let r = reduction_number_ideal(local, &xi, &i.ideal)?;
    let ir = i.power(r);
    let k = local.ideal(vec![x.pow(r as u32)]).colon(&ir);
    let x_k = local.product(&xi, &k);
    let k_i = local.product(&k, &i.ideal);
    let colon = local.ideal(vec![x.pow(r as u32 + 1)]).colon(&ir);
    let equalities_hold = local.equal(&x_k, &k_i) && local.equal(&x_k, &colon);
    debug!("conductor route: r = {r}, K = {k}");
    let core = local.primary_component(&x_k)?;
    let gens = local.minimal_generators(&core);
    let mut report = CoreReport::new(CoreMethod::OnedimConductor, core, gens, FieldSemantics::AlgebraicallyClosedFormula);
    report.r = Some(r);
    report.equals_core = Some(true);
    char_p_note(i, r, &mut report.notes);
    if !equalities_hold {
        report.notes.push("xK, KI and (x^(r+1)):I^r differ".into());
    }
    Ok((
        report,
        ConductorData {
            r,
            k,
            x_k,
            k_i,
            colon,
            equalities_hold,
        },
    ))
}

/// `core(I) = J^{r+1} : I^r` for an equimultiple ideal in a Cohen-Macaulay
/// local ring with minimal reduction `J`.
pub fn core_equimultiple<F: Field>(i: &LocalIdeal<F>, j: &[Poly<F>]) -> Result<CoreReport<F>> {
    let local = i.ring;
    let jid = local.ideal(j.to_vec());
    if nonzerodivisor_in(i).is_none() {
        let x = j.first().cloned().unwrap_or_else(|| i.gens[0].clone());
        return Err(not_cohen_macaulay(i, &x)?);
    }
    let spread = i.analytic_spread()?;
    let m = LocalIdeal::new(local, (0..local.ring().nvars()).map(|v| local.ring().var(v)).collect());
    let dim = m.analytic_spread()?;
    if local.primary_component(&i.ideal).is_err() || spread != dim {
        return Err(AlgebraError::Unsupported(format!(
            "not equimultiple: analytic spread {spread}, dimension {dim}"
        )));
    }
    if j.len() != spread {
        return Err(AlgebraError::NotAReduction(format!(
            "{} generators given, analytic spread is {spread}",
            j.len()
        )));
    }
    let r = reduction_number_ideal(local, &jid, &i.ideal)?;
    let colon = local.power(&jid, r + 1).colon(&i.power(r));
    let core = local.primary_component(&colon)?;
    let gens = local.minimal_generators(&core);
    let mut report = CoreReport::new(CoreMethod::EquimultipleColon, core, gens, FieldSemantics::AlgebraicallyClosedFormula);
    report.r = Some(r);
    report.equals_core = Some(true);
    char_p_note(i, r, &mut report.notes);
    Ok(report)
}

/// Runs the colon formula for each reduction and checks the answers agree.
pub fn equimultiple_independence<F: Field>(i: &LocalIdeal<F>, reductions: &[Vec<Poly<F>>]) -> Result<(Vec<CoreReport<F>>, bool)> {
    let reports = reductions
        .iter()
        .map(|j| core_equimultiple(i, j))
        .collect::<Result<Vec<_>>>()?;
    let agree = reports
        .windows(2)
        .all(|w| i.ring.equal(&w[0].result, &w[1].result));
    Ok((reports, agree))
}

/// Intersection of `count` random principal reductions `(c)`, where `c` is a
/// random combination of the generators plus a random element of `m I`.
pub fn local_core_bruteforce<F: Field>(i: &LocalIdeal<F>, count: usize, seed: u64) -> Result<(CoreReport<F>, Vec<Poly<F>>)> {
    let local = i.ring;
    let ring = local.ring();
    let field = ring.field();
    let p = field.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeff = |rng: &mut ChaCha8Rng| {
        if p == 0 {
            field.from_i64(rng.gen_range(-50..=50))
        } else {
            field.from_i64(rng.gen_range(0..p) as i64)
        }
    };
    let tail_basis: Vec<Poly<F>> = local
        .minimal_generators(&local.product(local.max_ideal(), &i.ideal))
        .into_iter()
        .collect();
    let mut used = Vec::new();
    let mut acc: Option<Ideal<F>> = None;
    let mut tries = 0;
    while used.len() < count && tries < 20 * count {
        tries += 1;
        let mut c = ring.zero();
        for a in &i.gens {
            c = c.add(&a.scale(&coeff(&mut rng)));
        }
        for t in &tail_basis {
            c = c.add(&t.scale(&coeff(&mut rng)));
        }
        if c.is_zero() {
            continue;
        }
        let ci = local.ideal(vec![c.clone()]);
        if reduction_number_ideal(local, &ci, &i.ideal).is_err() {
            continue;
        }
        let comp = local.primary_component(&ci)?;
        acc = Some(match acc {
            None => comp,
            Some(a) => a.intersect(&comp),
        });
        used.push(c);
    }
    let Some(core) = acc else {
        return Err(AlgebraError::Unsupported("no sampled element generates a reduction".into()));
    };
    let semantics = if p == 0 {
        FieldSemantics::RationalPoints
    } else {
        FieldSemantics::PrimeFieldPoints
    };
    let gens = local.minimal_generators(&core);
    let mut report = CoreReport::new(CoreMethod::Bruteforce, core, gens, semantics);
    report.notes.push(format!("intersection of {} sampled reductions (seed {seed})", used.len()));
    Ok((report, used))
}

/// The graded algebra `A` localized at its irrelevant ideal.
pub fn localize_graded<F: Field>(a: &GradedAlgebra<F>) -> Result<LocalRing<F>> {
    let weights = vec![1; a.nvars()];
    LocalRing::new(a.ring(), a.relations().gens().to_vec(), Some(weights))
}

/// Local data for `I = m` of a graded algebra: the generic ideal `𝒬`, the
/// ideal `𝒥` read off the fiber ring, and the inclusion chain.
pub struct LocalMaximalIdeal<F: Field> {
    pub local: LocalRing<F>,
    pub fiber: Arc<GradedAlgebra<F>>,
    pub r: usize,
    pub jcal: Ideal<F>,
    pub chain: InclusionChain<F>,
}

pub fn maximal_ideal_chain<F: Field>(a: &GradedAlgebra<F>, core: Option<&Ideal<F>>, n_max: Option<usize>) -> Result<LocalMaximalIdeal<F>> {
    let local = localize_graded(a)?;
    let vars: Vec<Poly<F>> = (0..a.nvars()).map(|v| a.ring().var(v)).collect();
    let fiber = Arc::new(fiber_ring(&local, &vars)?);
    let fg = GenericData::new(Arc::clone(&fiber), n_max)?;
    let analysis = big_reduction_number(&fg)?;
    let generic = LocalGeneric::new(&local, &vars, fg.d())?;
    let jcal = analysis.j.to_ring(&generic.u_ring)?;
    let m = local.max_ideal().clone();
    let chain = inclusion_chain(&local, &m, &generic, analysis.r, &jcal, core)?;
    Ok(LocalMaximalIdeal {
        local,
        fiber,
        r: analysis.r,
        jcal,
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn cusp_like_curve() {
        let l = LocalRing::parse(Rationals, &["X", "Y"], &["X^4-Y^3"], Some(vec![3, 4])).unwrap();
        let i = LocalIdeal::parse(&l, &["X", "Y"]).unwrap();
        let x = l.ring().parse("X").unwrap();
        let (rep, data) = core_onedim_conductor(&i, &x).unwrap();
        assert_eq!(data.r, 2);
        assert!(data.equalities_hold);
        assert!(l.equal(&data.k, &l.max_power(2)));
        let expect = l.parse_ideal(&["X^3", "X^2*Y", "X*Y^2"]).unwrap();
        assert!(l.equal(&rep.result, &expect));
        let eq = core_equimultiple(&i, &[x]).unwrap();
        assert!(l.equal(&eq.result, &expect));
    }

    #[test]
    fn principal_ideal_is_its_own_core() {
        let l = LocalRing::parse(Rationals, &["X", "Y"], &["X^4-Y^3"], None).unwrap();
        let i = LocalIdeal::parse(&l, &["X"]).unwrap();
        let (rep, data) = core_onedim_conductor(&i, &i.gens[0].clone()).unwrap();
        assert_eq!(data.r, 0);
        assert!(l.equal(&rep.result, &i.ideal));
    }

    #[test]
    fn non_cohen_macaulay_guard() {
        let l = LocalRing::parse(Rationals, &["x1", "x2"], &["x1*x2", "x2^2"], None).unwrap();
        let i = LocalIdeal::parse(&l, &["x1", "x2"]).unwrap();
        let x = l.ring().parse("x1").unwrap();
        match core_onedim_conductor(&i, &x) {
            Err(AlgebraError::NotCohenMacaulay { candidate, certificate }) => {
                assert_eq!(candidate, vec!["x1", "x2"]);
                assert!(certificate.starts_with("x2 is not in (x1)"), "{certificate}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sampled_reductions_over_f101() {
        let l = LocalRing::parse(PrimeField::new(101).unwrap(), &["X", "Y"], &["X^4-Y^3"], None).unwrap();
        let i = LocalIdeal::parse(&l, &["X", "Y"]).unwrap();
        let (rep, used) = local_core_bruteforce(&i, 8, 7).unwrap();
        assert_eq!(used.len(), 8);
        let expect = l.parse_ideal(&["X^3", "X^2*Y", "X*Y^2"]).unwrap();
        assert!(l.equal(&rep.result, &expect));
    }
}

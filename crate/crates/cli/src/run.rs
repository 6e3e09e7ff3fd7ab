//! Executes a job and renders the report.

use std::sync::Arc;

use idealcore::engine::{
    admissible_sequences, core_bruteforce, core_equimultiple, core_generic_contraction, core_onedim_conductor,
    core_saturation, core_stratified, partition_check, reduce_mod_p, strata_split_mod_p, LocalIdeal, Sampling,
};
use idealcore::graded::{GenericData, GradedAlgebra};
use idealcore::linalg::nullspace;
use idealcore::reduction::{
    big_reduction_number, fiber_ring, reduction_number_graded, reduction_number_ideal, ChainAnalysis, LocalRing,
};
use idealcore::report::{CoreMethod, CoreReport};
use idealcore::{AlgebraError, Field, FieldSpec, Ideal, Monomial, Poly, PrimeField, Rationals, Ring};
use serde::Serialize;

use crate::error::JobError;
use crate::job::{Command, Format, JobSpec, SamplingSpec};

/// Primes tried by `check` when the job lists none.
pub const DEFAULT_PRIMES: [u64; 4] = [101, 109, 113, 10009];
const DEFAULT_HEIGHT_SAMPLES: usize = 50;
const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct JsonResult {
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equals_core: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct Diagnostics {
    pub r: Option<usize>,
    pub hilbert: Vec<usize>,
    pub strata: Vec<String>,
    pub oracle_agreement: Option<bool>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_echo: String,
    pub result: JsonResult,
    pub diagnostics: Diagnostics,
    #[serde(skip)]
    pub text: String,
    /// Failed checks; nonzero makes the run fail after printing.
    #[serde(skip)]
    pub failures: usize,
}

impl Report {
    fn new(spec: &JobSpec) -> Self {
        Report {
            command: spec.command().name().to_string(),
            input_echo: spec.to_string(),
            result: JsonResult::default(),
            diagnostics: Diagnostics::default(),
            text: String::new(),
            failures: 0,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
        }
    }
}

pub fn run_job(spec: &JobSpec) -> Result<Report, JobError> {
    spec.validate()?;
    let mut report = Report::new(spec);
    match spec.field {
        FieldSpec::Rational => Runner { field: Rationals, spec }.run(&mut report)?,
        FieldSpec::PrimeField(p) => Runner { field: PrimeField::new(p)?, spec }.run(&mut report)?,
    }
    Ok(report)
}

/// Field-dependent part of the oracle: `Q` results are reduced mod each
/// prime, `F_p` results are compared in place.
trait OracleField: Field {
    fn oracle(spec: &JobSpec, formula: &CoreReport<Self>, primes: &[u64], report: &mut Report) -> Result<Option<bool>, JobError>;
}

impl OracleField for Rationals {
    fn oracle(spec: &JobSpec, formula: &CoreReport<Self>, primes: &[u64], report: &mut Report) -> Result<Option<bool>, JobError> {
        let mut verdict = None;
        for &p in primes {
            let fp = PrimeField::new(p)?;
            let algebra = Arc::new(GradedAlgebra::parse(fp, &spec.variables, &spec.relations)?);
            let g = GenericData::new(algebra, spec.options.n_max)?;
            let split = strata_split_mod_p(&formula.strata, g.u_ring())?;
            if split == Some(false) {
                report.line(format!("oracle F_{p}: skipped, strata do not split"));
                report.diagnostics.notes.push(format!("F_{p}: strata do not split"));
                continue;
            }
            let expect = match reduce_mod_p(&formula.result, g.algebra().ring()) {
                Ok(e) => e,
                Err(AlgebraError::BadDenominator(_)) => {
                    report.line(format!("oracle F_{p}: skipped, denominator not invertible"));
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let agree = exhaustive_agrees(&g, &expect, p, report)?;
            verdict = Some(verdict.unwrap_or(true) && agree);
        }
        Ok(verdict)
    }
}

impl OracleField for PrimeField {
    fn oracle(spec: &JobSpec, formula: &CoreReport<Self>, _primes: &[u64], report: &mut Report) -> Result<Option<bool>, JobError> {
        let p = formula.result.ring().field().characteristic();
        let algebra = Arc::new(GradedAlgebra::parse(*formula.result.ring().field(), &spec.variables, &spec.relations)?);
        let g = GenericData::new(algebra, spec.options.n_max)?;
        Ok(Some(exhaustive_agrees(&g, &formula.result, p, report)?))
    }
}

fn exhaustive_agrees(g: &GenericData<PrimeField>, expect: &Ideal<PrimeField>, p: u64, report: &mut Report) -> Result<bool, JobError> {
    let chain = big_reduction_number(g)?;
    let b = core_bruteforce(g, &chain, Sampling::Exhaustive)?;
    let agree = b.report.result.equals(expect);
    let word = if agree { "consistent" } else { "differs" };
    report.line(format!(
        "oracle F_{p}: {word} ({} points, enumeration gives ({}))",
        b.samples_used,
        b.report.generator_strings().join(", ")
    ));
    report.diagnostics.notes.push(format!("F_{p}: {word}"));
    Ok(agree)
}

struct Runner<'a, F: Field> {
    field: F,
    spec: &'a JobSpec,
}

impl<F: OracleField> Runner<'_, F> {
    fn run(&self, report: &mut Report) -> Result<(), JobError> {
        match self.spec.command() {
            Command::Analyze => self.analyze(report),
            Command::Core => self.core(report),
            Command::Hilbert => self.hilbert(report),
            Command::ReductionNumber => self.reduction_number(report),
            Command::FiberRing => self.fiber_ring(report),
            Command::Check => self.check(report),
        }
    }

    fn algebra(&self) -> Result<Arc<GradedAlgebra<F>>, JobError> {
        if self.spec.is_local() {
            return Err(JobError::Invalid(format!(
                "`{}` works on standard graded algebras; drop `ideal` and `weights`",
                self.spec.command().name()
            )));
        }
        Ok(Arc::new(GradedAlgebra::parse(
            self.field.clone(),
            &self.spec.variables,
            &self.spec.relations,
        )?))
    }

    fn local(&self) -> Result<LocalRing<F>, JobError> {
        Ok(LocalRing::parse(
            self.field.clone(),
            &self.spec.variables,
            &self.spec.relations,
            self.spec.weights.clone(),
        )?)
    }

    fn generic(&self) -> Result<(GenericData<F>, ChainAnalysis<F>), JobError> {
        let g = GenericData::new(self.algebra()?, self.spec.options.n_max)?;
        let chain = big_reduction_number(&g)?;
        Ok((g, chain))
    }

    fn hilbert_values(a: &GradedAlgebra<F>, top: usize) -> Vec<usize> {
        (0..=top as u32).map(|n| a.hilbert(n)).collect()
    }

    fn analyze(&self, report: &mut Report) -> Result<(), JobError> {
        let algebra = self.algebra()?;
        let g = GenericData::new(Arc::clone(&algebra), self.spec.options.n_max)?;
        let hilbert = Self::hilbert_values(&algebra, g.n_max() + 1);
        report.line(format!("field: {}", self.field.spec()));
        report.line(format!("dimension: {}", algebra.krull_dimension()));
        report.line(format!("hilbert: {}", join(&hilbert, " ")));
        report.diagnostics.hilbert = hilbert.clone();
        let chain = big_reduction_number(&g)?;
        report.line("n  h_n  rank  I_h_n(M_n)");
        for n in 1..chain.chain.len() {
            let gens: Vec<String> = chain.chain[n].minimal_generators().iter().map(|p| p.to_string()).collect();
            let ideal = if gens.is_empty() { "(0)".to_string() } else { format!("({})", gens.join(", ")) };
            let mark = match chain.distinct.get(n) {
                Some(false) => "  V_n = V_n+1",
                _ => "",
            };
            report.line(format!("{n:<2} {:<4} {:<5} {ideal}{mark}", hilbert[n], g.generic_rank(n)));
        }
        let j: Vec<String> = chain.j.minimal_generators().iter().map(|p| p.to_string()).collect();
        report.line(format!("r: {}", chain.r));
        report.line(format!("J: ({})", j.join(", ")));
        report.result.generators = j;
        report.diagnostics.r = Some(chain.r);
        Ok(())
    }

    fn hilbert(&self, report: &mut Report) -> Result<(), JobError> {
        let algebra = self.algebra()?;
        let top = self.spec.options.n_max.unwrap_or_else(|| algebra.default_n_max());
        let h = Self::hilbert_values(&algebra, top);
        report.line(format!("dimension: {}", algebra.krull_dimension()));
        for (n, v) in h.iter().enumerate() {
            report.line(format!("h_{n} = {v}"));
        }
        report.result.value = Some(algebra.krull_dimension());
        report.diagnostics.hilbert = h;
        Ok(())
    }

    fn method(&self) -> CoreMethod {
        self.spec.options.method.unwrap_or(if self.spec.is_local() {
            CoreMethod::OnedimConductor
        } else {
            CoreMethod::Stratified
        })
    }

    fn core(&self, report: &mut Report) -> Result<(), JobError> {
        let method = self.method();
        let core = match method {
            CoreMethod::OnedimConductor | CoreMethod::EquimultipleColon => self.local_core(method, report)?,
            _ => self.graded_core(method, report)?,
        };
        report.text.push_str(&core.to_string());
        report.result.generators = core.generator_strings();
        report.result.method = Some(method.name().to_string());
        report.result.equals_core = core.equals_core;
        report.diagnostics.r = core.r;
        report.diagnostics.strata = core.strata.iter().map(|s| s.label()).collect();
        report.diagnostics.oracle_agreement = core.oracle_agreement;
        report.diagnostics.notes.extend(core.notes.iter().cloned());
        Ok(())
    }

    fn graded_core(&self, method: CoreMethod, report: &mut Report) -> Result<CoreReport<F>, JobError> {
        let (g, chain) = self.generic()?;
        report.diagnostics.hilbert = Self::hilbert_values(g.algebra(), chain.r + 1);
        let mut core = match method {
            CoreMethod::Stratified => {
                let mut c = core_stratified(&g, &chain)?;
                if !self.spec.options.primes.is_empty() {
                    let mut oracle = Report::new(self.spec);
                    c.oracle_agreement = F::oracle(self.spec, &c, &self.spec.options.primes, &mut oracle)?;
                    c.notes.extend(oracle.diagnostics.notes);
                }
                c
            }
            CoreMethod::Saturation => core_saturation(&g, &chain, None)?,
            CoreMethod::GenericContraction => core_generic_contraction(&g, &chain)?,
            CoreMethod::Bruteforce => {
                let p = self.field.characteristic();
                let sampling = match self.spec.options.sampling {
                    Some(SamplingSpec::Exhaustive) => Sampling::Exhaustive,
                    Some(SamplingSpec::Random(count)) => {
                        let seed = self.spec.options.seed.unwrap_or(DEFAULT_SEED);
                        report.diagnostics.seed = Some(seed);
                        Sampling::Random { count, seed }
                    }
                    Some(SamplingSpec::Height(count)) => Sampling::SmallHeight { count },
                    None if p > 0 => Sampling::Exhaustive,
                    None => Sampling::SmallHeight {
                        count: DEFAULT_HEIGHT_SAMPLES,
                    },
                };
                core_bruteforce(&g, &chain, sampling)?.report
            }
            _ => unreachable!("local methods are dispatched separately"),
        };
        core.r.get_or_insert(chain.r);
        Ok(core)
    }

    fn local_core(&self, method: CoreMethod, report: &mut Report) -> Result<CoreReport<F>, JobError> {
        let local = self.local()?;
        let i = LocalIdeal::parse(&local, self.spec.ideal.as_deref().unwrap_or_default())?;
        let j = local.ring().parse_list(self.spec.reduction.as_deref().unwrap_or_default())?;
        match method {
            CoreMethod::OnedimConductor => {
                let [x] = j.as_slice() else {
                    return Err(JobError::Invalid("`onedim` needs a principal reduction".into()));
                };
                let (core, data) = core_onedim_conductor(&i, x)?;
                report.line(format!("K: ({})", strings(&local.minimal_generators(&data.k)).join(", ")));
                report.line(format!("reduction number: {}", data.r));
                Ok(core)
            }
            _ => Ok(core_equimultiple(&i, &j)?),
        }
    }

    fn reduction_number(&self, report: &mut Report) -> Result<(), JobError> {
        let reduction = self.spec.reduction.as_deref().unwrap_or_default();
        let r = match &self.spec.ideal {
            Some(gens) => {
                let local = self.local()?;
                let i = local.parse_ideal(gens)?;
                let j = local.parse_ideal(reduction)?;
                reduction_number_ideal(&local, &j, &i)?
            }
            None => {
                let a = self.algebra()?;
                let q = a.ring().parse_list(reduction)?;
                reduction_number_graded(&a, &q)?
            }
        };
        report.line(format!("reduction number: {r}"));
        report.result.value = Some(r);
        Ok(())
    }

    fn fiber_ring(&self, report: &mut Report) -> Result<(), JobError> {
        let local = self.local()?;
        let gens = local.ring().parse_list(self.spec.ideal.as_deref().unwrap_or_default())?;
        let fiber = fiber_ring(&local, &gens)?;
        let rels = fiber.relations().gb().to_vec();
        report.line(format!(
            "F(I) = k[{}]/({})",
            fiber.ring().vars().join(", "),
            strings(&rels).join(", ")
        ));
        report.line(format!("analytic spread: {}", fiber.krull_dimension()));
        let top = self.spec.options.n_max.unwrap_or_else(|| fiber.default_n_max());
        let h = Self::hilbert_values(&fiber, top);
        report.line(format!("hilbert: {}", join(&h, " ")));
        report.result.generators = strings(&rels);
        report.result.value = Some(fiber.krull_dimension());
        report.diagnostics.hilbert = h;
        if let Some(red) = &self.spec.reduction {
            let j = local.parse_ideal(red)?;
            let rj = reduction_number_ideal(&local, &j, &local.ideal(gens.clone()))?;
            report.line(format!("r_J(I) = {rj}"));
            report.diagnostics.r = Some(rj);
            let reduction = local.ring().parse_list(red)?;
            let images: Option<Vec<Poly<F>>> =
                reduction.iter().map(|f| image_in_fiber(f, &gens, fiber.ring())).collect();
            match images {
                Some(q) => {
                    let rq = reduction_number_graded(&fiber, &q)?;
                    report.line(format!("r_Q(F(I)) = {rq} with Q = ({})", strings(&q).join(", ")));
                }
                None => report.line("r_Q(F(I)): reduction is not a constant combination of the generators"),
            }
        }
        Ok(())
    }

    fn check(&self, report: &mut Report) -> Result<(), JobError> {
        let (g, chain) = self.generic()?;
        let a = g.algebra();
        let verdict = |report: &mut Report, name: &str, ok: bool, detail: String| {
            report.line(format!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" }));
            if !ok {
                report.failures += 1;
            }
        };
        verdict(report, "monotone chain", chain.monotone, format!("r = {}", chain.r));
        let t = core_stratified(&g, &chain)?;
        let top = a.max_ideal_power(chain.r as u32 + 1);
        verdict(
            report,
            "m^(r+1) in core",
            t.result.contains_ideal(&top),
            format!("core = ({})", t.generator_strings().join(", ")),
        );
        let s = core_saturation(&g, &chain, Some(t.strata.len()))?;
        verdict(
            report,
            "saturation inside core",
            t.result.contains_ideal(&s.result),
            format!("({})", s.generator_strings().join(", ")),
        );
        let gc = core_generic_contraction(&g, &chain)?;
        verdict(
            report,
            "core inside generic contraction",
            gc.result.contains_ideal(&t.result),
            format!("({})", gc.generator_strings().join(", ")),
        );
        if self.field.characteristic() > 0 {
            let strata = admissible_sequences(&g, &chain);
            let pc = partition_check(&g, &chain, &strata)?;
            verdict(
                report,
                "strata partition",
                pc.holds(),
                format!("{} points, {} unmatched, {} ambiguous", pc.points, pc.unmatched, pc.ambiguous),
            );
        }
        let primes: Vec<u64> = if self.spec.options.primes.is_empty() {
            DEFAULT_PRIMES[..2].to_vec()
        } else {
            self.spec.options.primes.clone()
        };
        let agreement = F::oracle(self.spec, &t, &primes, report)?;
        if let Some(ok) = agreement {
            verdict(report, "oracle agreement", ok, "exhaustive enumeration".into());
        }
        report.result.generators = t.generator_strings();
        report.diagnostics.r = Some(chain.r);
        report.diagnostics.strata = t.strata.iter().map(|s| s.label()).collect();
        report.diagnostics.oracle_agreement = agreement;
        Ok(())
    }
}

/// Writes `f = Σ c_i a_i` with constants `c_i` as `Σ c_i T_i`.
fn image_in_fiber<F: Field>(f: &Poly<F>, gens: &[Poly<F>], target: &Ring<F>) -> Option<Poly<F>> {
    let field = f.field();
    let mut monos: Vec<Monomial> = gens.iter().chain([f]).flat_map(|p| p.terms().iter().map(|t| t.0)).collect();
    monos.sort_by(|a, b| f.ring().order().cmp(a, b));
    monos.dedup();
    let column = |p: &Poly<F>| -> Vec<F::Elem> { monos.iter().map(|m| p.coefficient(m)).collect() };
    let cols: Vec<Vec<F::Elem>> = gens.iter().chain([f]).map(column).collect();
    let rows: Vec<Vec<F::Elem>> = (0..monos.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let kernel = nullspace(field, cols.len(), &rows);
    let v = kernel.iter().find(|v| !field.is_zero(&v[gens.len()]))?;
    let scale = field.neg(&field.inv(&v[gens.len()]));
    Some((0..gens.len()).fold(target.zero(), |acc, i| {
        acc.add(&target.var(i).scale(&field.mul(&v[i], &scale)))
    }))
}

fn strings<F: Field>(p: &[Poly<F>]) -> Vec<String> {
    p.iter().map(|g| g.to_string()).collect()
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

//! Results of core computations.

use std::fmt;

use crate::field::Field;
use crate::ideal::Ideal;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoreMethod {
    Stratified,
    Saturation,
    GenericContraction,
    Bruteforce,
    OnedimConductor,
    EquimultipleColon,
}

impl CoreMethod {
    pub fn name(self) -> &'static str {
        match self {
            CoreMethod::Stratified => "stratified",
            CoreMethod::Saturation => "saturation",
            CoreMethod::GenericContraction => "generic-contraction",
            CoreMethod::Bruteforce => "bruteforce",
            CoreMethod::OnedimConductor => "onedim",
            CoreMethod::EquimultipleColon => "equimultiple",
        }
    }
}

impl fmt::Display for CoreMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which points the result speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSemantics {
    /// Geometric statement over the algebraic closure.
    AlgebraicallyClosedFormula,
    /// Intersection over sampled rational points.
    RationalPoints,
    /// Intersection over points of a finite field.
    PrimeFieldPoints,
}

impl FieldSemantics {
    pub fn name(self) -> &'static str {
        match self {
            FieldSemantics::AlgebraicallyClosedFormula => "algebraically_closed_formula",
            FieldSemantics::RationalPoints => "rational_points",
            FieldSemantics::PrimeFieldPoints => "prime_field_points",
        }
    }
}

/// A Hilbert-function vector realized by some minimal reduction, with the
/// ideals certifying that its stratum is nonempty.
#[derive(Clone, Debug)]
pub struct AdmissibleSequence<F: Field> {
    pub a: Vec<usize>,
    /// `Σ_n I_{a_n+1}(M_n)`: must vanish on the stratum.
    pub vanishing: Ideal<F>,
    /// `J ∏_n I_{a_n}(M_n)`: must not vanish identically on it.
    pub nonvanishing: Ideal<F>,
}

impl<F: Field> AdmissibleSequence<F> {
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct CoreReport<F: Field> {
    pub method: CoreMethod,
    /// The core as an ideal of the quotient ring, lifted (contains the relations).
    pub result: Ideal<F>,
    /// Minimal generators, relations dropped.
    pub generators: Vec<Poly<F>>,
    pub strata: Vec<AdmissibleSequence<F>>,
    pub oracle_agreement: Option<bool>,
    pub field_semantics: FieldSemantics,
    /// Set when the method itself certifies that its output is the core
    /// (`Some(false)` when it certifies the opposite).
    pub equals_core: Option<bool>,
    pub r: Option<usize>,
    pub notes: Vec<String>,
}

impl<F: Field> CoreReport<F> {
    pub fn new(method: CoreMethod, result: Ideal<F>, generators: Vec<Poly<F>>, semantics: FieldSemantics) -> Self {
        CoreReport {
            method,
            result,
            generators,
            strata: Vec::new(),
            oracle_agreement: None,
            field_semantics: semantics,
            equals_core: None,
            r: None,
            notes: Vec::new(),
        }
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

impl<F: Field> fmt::Display for CoreReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "method: {}", self.method)?;
        writeln!(f, "semantics: {}", self.field_semantics.name())?;
        if let Some(r) = self.r {
            writeln!(f, "r: {r}")?;
        }
        if !self.strata.is_empty() {
            let s: Vec<String> = self.strata.iter().map(|s| s.label()).collect();
            writeln!(f, "strata: {}", s.join(" "))?;
        }
        writeln!(f, "core: ({})", self.generator_strings().join(", "))?;
        if let Some(e) = self.equals_core {
            writeln!(f, "equals core: {e}")?;
        }
        if let Some(a) = self.oracle_agreement {
            writeln!(f, "oracle agreement: {a}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

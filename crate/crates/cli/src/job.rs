//! Job files: flat `key = value` lines, `#` comments, lists in brackets.

use std::fmt;
use std::str::FromStr;

use idealcore::report::CoreMethod;
use idealcore::{AlgebraError, Field, FieldSpec, PrimeField, Rationals, Ring};

use crate::error::JobError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Core,
    Hilbert,
    ReductionNumber,
    FiberRing,
    Check,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Analyze,
        Command::Core,
        Command::Hilbert,
        Command::ReductionNumber,
        Command::FiberRing,
        Command::Check,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Core => "core",
            Command::Hilbert => "hilbert",
            Command::ReductionNumber => "reduction-number",
            Command::FiberRing => "fiber-ring",
            Command::Check => "check",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

pub const METHODS: [CoreMethod; 6] = [
    CoreMethod::Stratified,
    CoreMethod::Saturation,
    CoreMethod::GenericContraction,
    CoreMethod::Bruteforce,
    CoreMethod::OnedimConductor,
    CoreMethod::EquimultipleColon,
];

/// Method names as accepted on the command line and in job files.
/// `theorem16` is kept as an alias of `stratified` for existing job files.
pub fn parse_method(s: &str) -> Result<CoreMethod, String> {
    if s == "theorem16" {
        return Ok(CoreMethod::Stratified);
    }
    METHODS
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| format!("unknown method `{s}`"))
}

/// Point sampling for the brute-force oracle; the seed is kept separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingSpec {
    Exhaustive,
    Random(usize),
    Height(usize),
}

impl fmt::Display for SamplingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplingSpec::Exhaustive => write!(f, "exhaustive"),
            SamplingSpec::Random(n) => write!(f, "random:{n}"),
            SamplingSpec::Height(n) => write!(f, "height:{n}"),
        }
    }
}

impl FromStr for SamplingSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "exhaustive" {
            return Ok(SamplingSpec::Exhaustive);
        }
        let count = |rest: &str| {
            rest.parse::<usize>()
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| format!("bad sample count in `{s}`"))
        };
        if let Some(rest) = s.strip_prefix("random:") {
            return Ok(SamplingSpec::Random(count(rest)?));
        }
        if let Some(rest) = s.strip_prefix("height:") {
            return Ok(SamplingSpec::Height(count(rest)?));
        }
        Err(format!("unknown sampling `{s}` (exhaustive, random:N or height:N)"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub method: Option<CoreMethod>,
    pub n_max: Option<usize>,
    pub sampling: Option<SamplingSpec>,
    pub seed: Option<u64>,
    pub primes: Vec<u64>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub relations: Vec<String>,
    pub weights: Option<Vec<u32>>,
    pub ideal: Option<Vec<String>>,
    pub reduction: Option<Vec<String>>,
    pub command: Option<Command>,
    pub options: Options,
}

impl JobSpec {
    pub fn command(&self) -> Command {
        self.command.unwrap_or(Command::Analyze)
    }

    /// Whether the job describes a local problem (an ideal or weights).
    pub fn is_local(&self) -> bool {
        self.ideal.is_some() || self.weights.as_ref().is_some_and(|w| w.iter().any(|x| *x != 1))
    }

    /// Re-checks the invariants after command-line overrides.
    pub fn validate(&self) -> Result<(), JobError> {
        if self.variables.is_empty() {
            return Err(JobError::Missing("vars".into()));
        }
        for (k, v) in self.variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(JobError::Invalid(format!("`{v}` is not a variable name")));
            }
            if self.variables[..k].contains(v) {
                return Err(JobError::Invalid(format!("variable `{v}` declared twice")));
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != self.variables.len() {
                return Err(JobError::Invalid(format!(
                    "{} weights for {} variables",
                    w.len(),
                    self.variables.len()
                )));
            }
        }
        match self.field {
            FieldSpec::Rational => self.check_polys(Rationals),
            FieldSpec::PrimeField(p) => self.check_polys(PrimeField::new(p)?),
        }?;
        let command = self.command();
        let needs_ideal = matches!(command, Command::FiberRing)
            || matches!(
                self.options.method,
                Some(CoreMethod::OnedimConductor | CoreMethod::EquimultipleColon)
            ) && command == Command::Core;
        if needs_ideal && self.ideal.is_none() {
            return Err(JobError::Missing(format!("ideal (required by `{}`)", command.name())));
        }
        let needs_reduction = command == Command::ReductionNumber
            || command == Command::Core
                && matches!(
                    self.options.method,
                    Some(CoreMethod::OnedimConductor | CoreMethod::EquimultipleColon)
                );
        if needs_reduction && self.reduction.is_none() {
            return Err(JobError::Missing(format!("reduction (required by `{}`)", command.name())));
        }
        Ok(())
    }

    fn check_polys<F: Field>(&self, field: F) -> Result<(), JobError> {
        let ring = Ring::grevlex(field, &self.variables)?;
        let weights = self.weights.clone().unwrap_or_else(|| vec![1; self.variables.len()]);
        for r in &self.relations {
            let p = ring.parse(r)?;
            if !p.is_weighted_homogeneous(&weights) {
                return Err(AlgebraError::NonHomogeneous(r.clone()).into());
            }
        }
        for list in [&self.ideal, &self.reduction].into_iter().flatten() {
            ring.parse_list(list)?;
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for JobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[String]| format!("[{}]", v.join(", "));
        writeln!(f, "field = {}", self.field)?;
        writeln!(f, "vars = {}", list(&self.variables))?;
        writeln!(f, "relations = {}", list(&self.relations))?;
        if let Some(w) = &self.weights {
            let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            writeln!(f, "weights = {}", list(&w))?;
        }
        if let Some(i) = &self.ideal {
            writeln!(f, "ideal = {}", list(i))?;
        }
        if let Some(j) = &self.reduction {
            writeln!(f, "reduction = {}", list(j))?;
        }
        if let Some(c) = self.command {
            writeln!(f, "command = {}", c.name())?;
        }
        let o = &self.options;
        if let Some(m) = o.method {
            writeln!(f, "method = {}", m.name())?;
        }
        if let Some(n) = o.n_max {
            writeln!(f, "n_max = {n}")?;
        }
        if let Some(s) = o.sampling {
            writeln!(f, "sample = {s}")?;
        }
        if let Some(s) = o.seed {
            writeln!(f, "seed = {s}")?;
        }
        if !o.primes.is_empty() {
            let p: Vec<String> = o.primes.iter().map(|x| x.to_string()).collect();
            writeln!(f, "primes = {}", list(&p))?;
        }
        if o.format == Format::Json {
            writeln!(f, "format = json")?;
        }
        Ok(())
    }
}

/// Location of a value inside the job text, for error messages.
#[derive(Clone, Copy)]
struct Span {
    line: usize,
    column: usize,
}

impl Span {
    fn error(self, message: impl Into<String>) -> JobError {
        JobError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn shift(self, by: usize) -> Span {
        Span {
            line: self.line,
            column: self.column + by,
        }
    }
}

pub fn parse_field(s: &str) -> Result<FieldSpec, JobError> {
    let words: Vec<&str> = s.split_whitespace().collect();
    match words.as_slice() {
        ["Q"] => Ok(FieldSpec::Rational),
        ["Fp", p] => {
            let p: u64 = p.parse().map_err(|_| JobError::Invalid(format!("modulus `{p}` is not an integer")))?;
            Ok(FieldSpec::prime(p)?)
        }
        _ => Err(JobError::Invalid(format!("unknown field `{s}` (Q or Fp <prime>)"))),
    }
}

/// Splits `[a, b, c]` (brackets optional) into trimmed items with their
/// offsets in `s`.
pub fn split_list(s: &str) -> Result<Vec<(usize, String)>, String> {
    let trimmed = s.trim_end();
    let (body, start) = match trimmed.strip_prefix('[') {
        Some(rest) => match rest.strip_suffix(']') {
            Some(inner) => (inner, 1),
            None => return Err("missing `]`".into()),
        },
        None => (trimmed, 0),
    };
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut items = Vec::new();
    let mut offset = start;
    for piece in body.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let item = piece.trim();
        if item.is_empty() {
            return Err(format!("empty list entry at offset {}", offset + lead));
        }
        items.push((offset + lead, item.to_string()));
        offset += piece.len() + 1;
    }
    Ok(items)
}

pub fn parse_job(text: &str) -> Result<JobSpec, JobError> {
    let mut field = None;
    let mut variables = None;
    let mut relations = None;
    let mut weights = None;
    let mut ideal = None;
    let mut reduction = None;
    let mut command = None;
    let mut options = Options::default();
    // polynomial lists with their spans, checked once the variables are known
    let mut poly_lists: Vec<(Span, bool, Vec<(usize, String)>)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(Span { line, column: col }.error("expected `key = value`"));
        };
        let key = content[..eq].trim();
        let after = &content[eq + 1..];
        let value_col = eq + 2 + (after.len() - after.trim_start().len());
        let value = after.trim();
        let span = Span { line, column: value_col };
        let list = || split_list(value).map_err(|m| span.error(m));
        let seen = |present: bool| {
            if present {
                Err(Span { line, column: 1 }.error(format!("duplicate key `{key}`")))
            } else {
                Ok(())
            }
        };
        match key {
            "field" => {
                seen(field.is_some())?;
                field = Some(parse_field(value).map_err(|e| span.error(e.to_string()))?);
            }
            "vars" => {
                seen(variables.is_some())?;
                let items = list()?;
                for (off, v) in &items {
                    if !is_identifier(v) {
                        return Err(span.shift(*off).error(format!("`{v}` is not a variable name")));
                    }
                }
                variables = Some(items.into_iter().map(|(_, v)| v).collect::<Vec<_>>());
            }
            "relations" | "ideal" | "reduction" => {
                let slot = match key {
                    "relations" => &mut relations,
                    "ideal" => &mut ideal,
                    _ => &mut reduction,
                };
                seen(slot.is_some())?;
                let items = list()?;
                *slot = Some(items.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>());
                poly_lists.push((span, key == "relations", items));
            }
            "weights" => {
                seen(weights.is_some())?;
                let items = list()?;
                let mut w = Vec::new();
                for (off, x) in items {
                    w.push(x.parse::<u32>().map_err(|_| span.shift(off).error(format!("bad weight `{x}`")))?);
                }
                weights = Some(w);
            }
            "command" => command = Some(value.parse::<Command>().map_err(|m| span.error(m))?),
            "method" => options.method = Some(parse_method(value).map_err(|m| span.error(m))?),
            "n_max" => {
                options.n_max = Some(value.parse().map_err(|_| span.error(format!("bad n_max `{value}`")))?);
            }
            "sample" => options.sampling = Some(value.parse().map_err(|m: String| span.error(m))?),
            "seed" => options.seed = Some(value.parse().map_err(|_| span.error(format!("bad seed `{value}`")))?),
            "primes" => {
                for (off, x) in list()? {
                    let p: u64 = x.parse().map_err(|_| span.shift(off).error(format!("bad prime `{x}`")))?;
                    FieldSpec::prime(p).map_err(|e| span.shift(off).error(e.to_string()))?;
                    options.primes.push(p);
                }
            }
            "format" => {
                options.format = match value {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    _ => return Err(span.error(format!("unknown format `{value}`"))),
                }
            }
            _ => return Err(Span { line, column: 1 }.error(format!("unknown key `{key}`"))),
        }
    }

    let spec = JobSpec {
        field: field.ok_or_else(|| JobError::Missing("field".into()))?,
        variables: variables.ok_or_else(|| JobError::Missing("vars".into()))?,
        relations: relations.unwrap_or_default(),
        weights,
        ideal,
        reduction,
        command,
        options,
    };
    // pin polynomial errors to their position in the file
    for (span, homogeneous, items) in &poly_lists {
        for (off, p) in items {
            if let Err(e) = check_one(&spec, p, *homogeneous) {
                return Err(match e {
                    JobError::Algebra(AlgebraError::Parse { column, message, .. }) => {
                        span.shift(off + column - 1).error(message)
                    }
                    other => span.shift(*off).error(other.to_string()),
                });
            }
        }
    }
    spec.validate()?;
    Ok(spec)
}

fn check_one(spec: &JobSpec, p: &str, homogeneous: bool) -> Result<(), JobError> {
    fn go<F: Field>(field: F, spec: &JobSpec, p: &str, homogeneous: bool) -> Result<(), JobError> {
        let poly = Ring::grevlex(field, &spec.variables)?.parse(p)?;
        let weights = spec.weights.clone().unwrap_or_else(|| vec![1; spec.variables.len()]);
        if homogeneous && weights.len() == spec.variables.len() && !poly.is_weighted_homogeneous(&weights) {
            return Err(AlgebraError::NonHomogeneous(p.to_string()).into());
        }
        Ok(())
    }
    match spec.field {
        FieldSpec::Rational => go(Rationals, spec, p, homogeneous),
        FieldSpec::PrimeField(q) => go(PrimeField::new(q)?, spec, p, homogeneous),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUINTIC: &str = "field = Q\nvars = [x1, x2]\nrelations = [x1^2*x2^2, x2^5]\n";

    #[test]
    fn minimal_job_round_trips() {
        let spec = parse_job(QUINTIC).unwrap();
        assert_eq!(spec.variables, ["x1", "x2"]);
        assert_eq!(spec.relations.len(), 2);
        assert_eq!(spec.to_string(), QUINTIC);
        assert_eq!(parse_job(&spec.to_string()).unwrap(), spec);
    }

    #[test]
    fn composite_modulus() {
        let err = parse_job("field = Fp 6\nvars = [x]\n").unwrap_err();
        assert!(err.to_string().contains("not prime"), "{err}");
        assert!(matches!(err, JobError::Syntax { line: 1, column: 9, .. }));
    }

    #[test]
    fn non_homogeneous_relation() {
        let err = parse_job("field = Q\nvars = [x1, x2]\nrelations = [x1^2*x2^2 + x1]\n").unwrap_err();
        assert!(matches!(err, JobError::Syntax { line: 3, column: 14, .. }), "{err:?}");
        assert!(err.to_string().contains("not homogeneous"));
    }

    #[test]
    fn unknown_variable_points_at_it() {
        let err = parse_job("field = Q\nvars = [x1, x2]\nrelations = [x1^2, x2*y]\n").unwrap_err();
        match err {
            JobError::Syntax { line, column, message } => {
                assert_eq!((line, column), (3, 23));
                assert!(message.contains("unknown variable `y`"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_options_and_weights() {
        let text = "# cusp\nfield = Fp 101  # small prime\nvars = [X, Y]\nrelations = [X^4-Y^3]\nweights = [3, 4]\nideal = [X, Y]\nreduction = [X]\ncommand = core\nmethod = onedim\nn_max = 6\nsample = random:20\nseed = 7\nprimes = [101, 109]\nformat = json\n";
        let spec = parse_job(text).unwrap();
        assert!(spec.is_local());
        assert_eq!(spec.options.sampling, Some(SamplingSpec::Random(20)));
        assert_eq!(parse_job(&spec.to_string()).unwrap(), spec);
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_job("field = Q\nvars [x]\n").unwrap_err(),
            JobError::Syntax { line: 2, column: 1, .. }
        ));
        assert!(matches!(parse_job("vars = [x]\n").unwrap_err(), JobError::Missing(_)));
        assert!(matches!(
            parse_job("field = Q\nvars = [x, 2y]\n").unwrap_err(),
            JobError::Syntax { line: 2, column: 12, .. }
        ));
        assert!(parse_job("field = Q\nvars = [x]\nfoo = 1\n").is_err());
        assert!(parse_job("field = Q\nvars = [x]\nrelations = [x^2\n").is_err());
    }

    #[test]
    fn local_commands_need_their_inputs() {
        let err = parse_job("field = Q\nvars = [x]\ncommand = fiber-ring\n").unwrap_err();
        assert!(matches!(err, JobError::Missing(_)));
        let err = parse_job("field = Q\nvars = [x]\ncommand = reduction-number\n").unwrap_err();
        assert!(matches!(err, JobError::Missing(_)));
    }

    #[test]
    fn sampling_strings() {
        for s in ["exhaustive", "random:5", "height:12"] {
            assert_eq!(s.parse::<SamplingSpec>().unwrap().to_string(), s);
        }
        assert!("random:0".parse::<SamplingSpec>().is_err());
        assert!("grid".parse::<SamplingSpec>().is_err());
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use idealcore::report::CoreMethod;
use idealcore_cli::job::{parse_field, parse_method, split_list, Command, Format, SamplingSpec};
use idealcore_cli::{parse_job, run_job, JobError, JobSpec};

/// Cores, reduction numbers and fiber rings of ideals in graded and local rings.
#[derive(Parser, Debug)]
#[command(name = "idealcore", version)]
struct Cli {
    /// Job file (`key = value` lines).
    job: PathBuf,

    #[arg(long, value_parser = |s: &str| s.parse::<Command>())]
    command: Option<Command>,

    /// stratified | saturation | generic-contraction | bruteforce | onedim | equimultiple
    #[arg(long, value_parser = |s: &str| parse_method(s))]
    method: Option<CoreMethod>,

    #[arg(long)]
    n_max: Option<usize>,

    /// Oracle prime; may be repeated.
    #[arg(long = "prime")]
    primes: Vec<u64>,

    /// exhaustive | random:N | height:N
    #[arg(long, value_parser = |s: &str| s.parse::<SamplingSpec>())]
    sample: Option<SamplingSpec>,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long)]
    json: bool,

    /// Overrides the job's ideal, e.g. "[X, Y]".
    #[arg(long)]
    ideal: Option<String>,

    /// Overrides the job's reduction.
    #[arg(long)]
    reduction: Option<String>,

    /// Overrides the job's field: `Q` or `Fp <p>`.
    #[arg(long, num_args = 1..=2)]
    field: Option<Vec<String>>,
}

fn poly_list(s: &str) -> Result<Vec<String>, JobError> {
    let items = split_list(s).map_err(JobError::Invalid)?;
    Ok(items.into_iter().map(|(_, p)| p).collect())
}

fn build(cli: &Cli) -> Result<JobSpec, JobError> {
    let text = std::fs::read_to_string(&cli.job).map_err(|source| JobError::Io {
        path: cli.job.display().to_string(),
        source,
    })?;
    let mut spec = parse_job(&text)?;
    if let Some(c) = cli.command {
        spec.command = Some(c);
    }
    let o = &mut spec.options;
    o.method = cli.method.or(o.method);
    o.n_max = cli.n_max.or(o.n_max);
    o.sampling = cli.sample.or(o.sampling);
    o.seed = cli.seed.or(o.seed);
    if !cli.primes.is_empty() {
        o.primes = cli.primes.clone();
    }
    if cli.json {
        o.format = Format::Json;
    }
    if let Some(f) = &cli.field {
        spec.field = parse_field(&f.join(" "))?;
    }
    if let Some(i) = &cli.ideal {
        spec.ideal = Some(poly_list(i)?);
    }
    if let Some(j) = &cli.reduction {
        spec.reduction = Some(poly_list(j)?);
    }
    spec.validate()?;
    Ok(spec)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = build(&cli).and_then(|spec| {
        let report = run_job(&spec)?;
        print!("{}", report.render(spec.options.format));
        match report.failures {
            0 => Ok(()),
            n => Err(JobError::ChecksFailed(n)),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

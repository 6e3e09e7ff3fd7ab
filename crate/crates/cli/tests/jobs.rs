use std::path::Path;

use idealcore_cli::job::{Command, Format};
use idealcore_cli::{parse_job, run_job, JobError};

fn fixture_texts() -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/examples");
    let mut out: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "job"))
        .map(|p| (p.display().to_string(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn every_fixture_round_trips() {
    let jobs = fixture_texts();
    assert!(jobs.len() >= 8);
    for (name, text) in jobs {
        let spec = parse_job(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = spec.to_string();
        assert_eq!(parse_job(&printed).unwrap(), spec, "{name}");
        assert_eq!(parse_job(&printed).unwrap().to_string(), printed, "{name}");
    }
}

#[test]
fn in_process_run_matches_expectations() {
    let spec = parse_job("field = Q\nvars = [x1, x2]\nrelations = [x1^2*x2^2, x2^5]\ncommand = core\n").unwrap();
    let report = run_job(&spec).unwrap();
    assert_eq!(report.result.generators, ["x1^4", "x1^3*x2", "x1*x2^3"]);
    assert_eq!(report.diagnostics.r, Some(4));
    assert_eq!(report.diagnostics.strata, ["(1,2,3,3)", "(1,2,3,4)"]);
    let json = report.render(Format::Json);
    assert!(json.contains("\"command\": \"core\""));
}

#[test]
fn inconclusive_window_maps_to_exit_three() {
    let mut spec = parse_job("field = Q\nvars = [x1, x2]\nrelations = [x1^2*x2^2, x2^5]\n").unwrap();
    spec.options.n_max = Some(3);
    let err = run_job(&spec).unwrap_err();
    assert_eq!(err.exit_code(), 3, "{err}");
    assert!(err.to_string().contains("not stationary within n_max=3"));
}

#[test]
fn graded_commands_refuse_local_jobs() {
    let mut spec = parse_job("field = Q\nvars = [X, Y]\nrelations = [X^4-Y^3]\nweights = [3, 4]\nideal = [X, Y]\n").unwrap();
    spec.command = Some(Command::Hilbert);
    assert!(matches!(run_job(&spec), Err(JobError::Invalid(_))));
}

#[test]
fn hilbert_command_over_prime_field() {
    let spec = parse_job("field = Fp 7\nvars = [x1, x2]\nrelations = [x2^3]\ncommand = hilbert\nn_max = 4\n").unwrap();
    let report = run_job(&spec).unwrap();
    assert_eq!(report.diagnostics.hilbert, [1, 2, 3, 3, 3]);
    assert_eq!(report.result.value, Some(1));
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn torwidth_bin() -> PathBuf {
    let mut path = PathBuf::from(env!("CARGO_BIN_EXE_torwidth"));
    if !path.exists() {
        path = PathBuf::from("target/debug/torwidth");
    }
    path
}

fn write_job(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(torwidth_bin()).args(args).output().unwrap()
}

const TREFOIL_JOB: &str = "\
torwidth job v1
kind: presentation
generators: a b
relator: a b a B A B
theta: 1 1
rep: trivial
reference-norm: 1
reference-note: genus one from knot tables
";

#[test]
fn torsion_subcommand_detects_the_trefoil() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "trefoil.job", TREFOIL_JOB);
    let out = run(&["torsion", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("torwidth certificate v1\n"));
    assert!(text.contains("\nnumerator: 1@0 -1@1 1@2\n"));
    assert!(text.contains("\ndenominator: 1@0 -1@1\n"));
    assert!(text.contains("\nwidth: 1\n"));
    assert!(text.contains("\nverdict: detected\n"));
}

#[test]
fn repeated_runs_emit_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "trefoil.job", TREFOIL_JOB);
    let first = run(&["torsion", job.to_str().unwrap()]);
    let second = run(&["torsion", job.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn out_flag_writes_the_same_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "trefoil.job", TREFOIL_JOB);
    let cert = dir.path().join("trefoil.cert");
    let piped = run(&["torsion", job.to_str().unwrap()]);
    let to_file = run(&["torsion", job.to_str().unwrap(), "--out", cert.to_str().unwrap()]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(fs::read(cert).unwrap(), piped.stdout);
}

#[test]
fn parse_errors_exit_one_with_a_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "broken.job",
        "torwidth job v1\nkind: presentation\ngenerators: a b\nrelator: a b c\ntheta: 1 1\n",
    );
    let out = run(&["torsion", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "stderr was: {err}");
}

#[test]
fn missing_files_exit_one() {
    let out = run(&["torsion", "/nonexistent/job.file"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn zero_theta_reports_degenerate_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "zero.job",
        "torwidth job v1\nkind: presentation\ngenerators: a b\nrelator: a b a B A B\ntheta: 0 0\nrep: trivial\n",
    );
    let out = run(&["torsion", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\nacyclic: false\n"));
    assert!(text.contains("\nnumerator: 0\n"));
}

#[test]
fn exhausted_budget_exits_three_with_a_partial_table() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "budget.job",
        "torwidth job v1\nkind: presentation\ngenerators: a b\nrelator: a b a B A B\ntheta: 1 1\nsearch: n-max=5 det-budget=3\n",
    );
    let out = run(&["search", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\nbudget-exhausted: true\n"));
    assert!(text.contains("\nbest: "));
}

#[test]
fn search_subcommand_emits_the_full_table() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "search.job",
        "torwidth job v1\nkind: presentation\ngenerators: a b\nrelator: a b a B A B\ntheta: 1 1\nsearch: n-max=2\nprimes: 5\n",
    );
    let out = run(&["search", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = text.lines().filter(|l| l.starts_with("row: ")).count();
    assert_eq!(rows, 1 + 2 * 3);
    assert!(text.contains("\nbudget-exhausted: false\n"));
}

#[test]
fn graph_subcommand_runs_the_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "graph.job",
        "torwidth job v1\nkind: graph\nvertex: v side=+ chi=-1 m=1 alpha=1 slots=1\nvertex: w side=- chi=-2 m=1 alpha=1 slots=1\nedge: v.0 w.0\nrep: augmentation n=3 field=cyclo\n",
    );
    let out = run(&["graph", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\nwidth: 6\n"));
    assert!(text.contains("\nen-norm: 3\n"));
    assert!(text.contains("\nverdict: detected\n"));
}

#[test]
fn modp_subcommand_prints_the_comparison_table() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "modp.job",
        "torwidth job v1\nkind: presentation\ngenerators: a b\nrelator: a b a B A B\ntheta: 1 1\nrep: augmentation n=3 field=q alpha=1,1\nprimes: 2 5 7\n",
    );
    let out = run(&["modp", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\nchar0-width: 2\n"));
    assert!(text.contains("\nbad-primes: none\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("modp: ")).count(), 3);
}

#[test]
fn goodprime_subcommand_reports_direction_and_prime() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "poly.job",
        "torwidth job v1\nkind: polynomials\nvars: 1\npoly: (1; 0) (1; 1)\n",
    );
    let out = run(&["goodprime", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\npsi: -1\n"));
    assert!(text.contains("\nprime: 3\n"));
}

#[test]
fn cover_subcommand_confirms_induction_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "cover.job",
        "torwidth job v1\nkind: presentation\ngenerators: a b\nrelator: a b a B A B\ntheta: 1 1\ncover: n=2 alpha=1,1\nrep: trivial\n",
    );
    let out = run(&["cover", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\ncover-index: 2\n"));
    assert!(text.contains("\nagreement: true\n"));
}

#[test]
fn command_and_job_kind_must_agree() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "trefoil.job", TREFOIL_JOB);
    let out = run(&["graph", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphcx")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("graphcx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_mu3_passes() {
    let o = run(&["verify-mu3", "--format", "kv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("mu3.boundary_G3F3=-3A "));
    assert!(out.ends_with("mu3.result=pass\n"));
}

#[test]
fn rank_six_enumeration_has_184_lines() {
    let o = run(&["chords", "--rank", "6", "--enumerate"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 184);
}

#[test]
fn rank_four_relations() {
    let o = run(&["chords", "--rank", "4", "--relations"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().count() > 0);
}

#[test]
fn star_forest_has_zero_trace() {
    let p = temp_file(
        "k4.txt",
        "vertex 0\nvertex 1\nvertex 2\nvertex 3\n\
         edge 0 0 1\nedge 1 0 2\nedge 2 0 3\nedge 3 1 2\nedge 4 2 3\nedge 5 3 1\n\
         forest 0 1 2\n",
    );
    let o = run(&["trace", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "kind=odd\n");
}

#[test]
fn boundary_reduces_to_chords() {
    let p = temp_file(
        "g3.txt",
        "vertex 0\nvertex 1\nvertex 2\nvertex 3\nvertex 4\nvertex 5\n\
         edge 0 0 3\nedge 1 1 4\nedge 2 2 5\nedge 3 0 1\nedge 4 1 2\nedge 5 2 0\n\
         edge 6 3 4\nedge 7 4 5\nedge 8 5 3\nforest 0 3 4 8\n",
    );
    let o = run(&["boundary", "--chords", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "+1(14)(26)(35)\n");
}

#[test]
fn phi_header_records_degree() {
    let p = temp_file("theta.txt", "vertex 0 type A\nvertex 1 type A\nedge 0 0 1\nedge 1 0 1\nedge 2 0 1\n");
    let o = run(&["phi", p.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("n=2 a=2 b=0 vb=0 degree=4\n"));
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn rank_of_matrix_file() {
    let p = temp_file("m.txt", "cols=3\ncol 0 x\ncol 1 y\ncol 2 z\nrow: 0=1 1=2\nrow: 0=2 1=4\nrow: 2=1/3\n");
    let cert = p.with_file_name("pivots.txt");
    let o = run(&["rank", p.to_str().unwrap(), "--emit-certificate", cert.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "rank=2\n");
    assert!(std::fs::read_to_string(cert).unwrap().starts_with("pivots: "));
}

#[test]
fn top_quotient_certificate_has_full_rank() {
    let cert = temp_file("h9.txt", "");
    let o = run(&["verify-h9", "--emit-certificate", cert.to_str().unwrap()]);
    assert!(o.status.success());
    let o = run(&["rank", cert.to_str().unwrap()]);
    assert_eq!(stdout(&o), "rank=184\n");
}

#[test]
fn output_does_not_depend_on_threads() {
    let one = run(&["selftest", "--seed", "3", "--cases", "40", "--threads", "1"]);
    let four = run(&["selftest", "--seed", "3", "--cases", "40", "--threads", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn parse_errors_exit_nonzero() {
    let p = temp_file("bad.txt", "vertex 0\nedge 0 0 7\n");
    let o = run(&["trace", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

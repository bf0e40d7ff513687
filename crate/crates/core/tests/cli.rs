use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn opgray(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opgray")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_then_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let o = opgray(&["gen", "--input", &data("fan5.txt"), "--restriction", "paf"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# root leaf=0"));
    assert!(text.ends_with("# trees=21 genlex=yes class=paf:yes\n"));
    let listing = dir.path().join("fan5.listing");
    fs::write(&listing, &text).unwrap();
    let v = opgray(&[
        "verify",
        "--listing",
        listing.to_str().unwrap(),
        "--input",
        &data("fan5.txt"),
        "--restriction",
        "paf",
    ]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stderr));
    assert_eq!(stdout(&v), "trees=21 genlex=yes gray=yes class=paf complete=yes\n");
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--input", &data("fan6.txt"), "--tiebreak", "random:7"];
    assert_eq!(opgray(&args).stdout, opgray(&args).stdout);
}

#[test]
fn verify_rejects_a_double_exchange() {
    let dir = TempDir::new().unwrap();
    let listing = dir.path().join("bad.listing");
    // the two diamond trees differ in four edges
    fs::write(&listing, "11010\n00111\n").unwrap();
    let o = opgray(&["verify", "--listing", listing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_reports_parse_errors_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let listing = dir.path().join("garbled.listing");
    fs::write(&listing, "11010\n- 1 + x\n01110\n").unwrap();
    let o = opgray(&["verify", "--listing", listing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn label_lists_every_edge() {
    let o = opgray(&["label", "--input", &data("fan5.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("edge (0,1) [id 0] -> label 1"));
    assert!(text.contains("edge (0,4) [id 6] -> label 7"));
}

#[test]
fn count_and_fibonacci_bound() {
    let o = opgray(&["count", "--input", &data("diamond.txt")]);
    assert_eq!(stdout(&o), "matrix-tree=8 deletion-contraction=8\n");
    let o = opgray(&["count", "--input", &data("fan6.txt"), "--fib"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("t=55"));
}

#[test]
fn multigraph_input_needs_the_flag() {
    let o = opgray(&["count", "--input", &data("triangle_digon.txt")]);
    assert_eq!(o.status.code(), Some(2));
    let o = opgray(&["count", "--input", &data("triangle_digon.txt"), "--multigraph"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("matrix-tree=5"));
}

#[test]
fn flip_graph_exports() {
    let o = opgray(&["flip", "--input", &data("diamond.txt"), "--restriction", "pivot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("graph"));
    let o = opgray(&["flip", "--input", &data("k3_bidirected.txt"), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("nodes 3\n"));
}

#[test]
fn experiment_writes_records() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("paf.txt");
    let o = opgray(&[
        "experiment",
        "--scope",
        "paf",
        "--max-n",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("graph=n4:") && l.contains(" result=cyclic ")));
    assert!(text.trim_end().ends_with("discrepancies=0"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(opgray(&[]).status.code(), Some(2));
    assert_eq!(
        opgray(&["gen", "--input", &data("fan5.txt"), "--tiebreak", "sideways"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        opgray(&["experiment", "--scope", "pivot", "--max-n", "6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        opgray(&["count", "--input", "/nonexistent/graph.txt"]).status.code(),
        Some(2)
    );
}

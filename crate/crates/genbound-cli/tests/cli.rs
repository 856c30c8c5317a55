//! End-to-end runs of the `genbound` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genbound"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let text = stdout(&out);
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (code(&out), value)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("genbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_examples() {
    let out = run(&["eval", "theta:L=1,n=1,i=1", "[1/4,3/4]"]);
    assert_eq!((code(&out), stdout(&out)), (0, "[1/5,4/5]\n".to_string()));
    let out = run(&["eval", "theta:L=1,n=2,i=0", "[1/3,1/3,1/3]"]);
    assert_eq!(stdout(&out), "[1/3,1/3,1/3]\n");
    let out = run(&["eval", "pi_alpha:n=2,alpha=0", "[1/6,2/6,3/6]", "--format", "csv"]);
    assert_eq!(stdout(&out), "input, output\n[1/6,1/3,1/2], [0,1/3,2/3]\n");
    let out = run(&["eval", "counterexample", "[0,1/8,7/8]", "[0,3/10,7/10]"]);
    assert_eq!(stdout(&out), "[0,1/16,15/16]\n[0,1/4,3/4]\n");
    let out = run(&["eval", "face:L=1,n=2,i=1,j=1", "[1/5,4/5]"]);
    assert_eq!(stdout(&out), "[1/6,1/6,2/3]\n");
    let out = run(&["eval", "theta_inv:L=1,n=1,i=0", "[1/6,5/6]"]);
    assert_eq!(stdout(&out), "[1/4,3/4]\n");
}

#[test]
fn eval_exit_codes() {
    assert_eq!(code(&run(&["eval", "theta:L=1,n=1,i=1", "[1/2,1/3]"])), 2);
    assert_eq!(code(&run(&["eval", "theta:L=1,n=1,i=1", "half"])), 2);
    assert_eq!(code(&run(&["eval", "nonsense", "[1/2,1/2]"])), 2);
    assert_eq!(code(&run(&["eval", "face_delete:L=1,n=1,i=1,j=0", "[1/3,2/3]"])), 1);
    assert_eq!(code(&run(&["eval", "theta:L=1,n=2,i=1", "[1/2,1/2]"])), 1);
    assert_eq!(code(&run(&["eval", "theta_inv:L=1,n=2,i=1", "[1/3,1/3,1/3]"])), 2);
}

#[test]
fn equation_suites() {
    let (c, r) = report(&["verify-equations", "--n", "1", "--L", "1", "--grid-denominator", "12"]);
    assert_eq!(c, 0);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["instances"], 12);
    assert_eq!(r["grid"]["denominator"], 12);
    assert!(r["certificate"].as_str().unwrap().contains("sampled"));

    let (c, r) = report(&["verify-equations", "--n", "2"]);
    assert_eq!((c, r["instances"].as_u64()), (0, Some(24)));
    for inst in r["reports"].as_array().unwrap() {
        for key in ["n", "L", "j", "p", "i", "k"] {
            assert!(inst["parameters"][key].is_u64(), "{key} missing");
        }
        assert_eq!(inst["verdict"], "pass");
    }

    let (c, r) = report(&["verify-equations", "--n", "1", "--L", "0"]);
    assert_eq!((c, r["verdict"].as_str()), (0, Some("pass")));
    assert_eq!(r["instances"], 3);

    let out = run(&["verify-equations", "--n", "1", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("check,n,L,j,p,i,k,verdict,pairs_checked,witnesses\n"));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn boundary_suites() {
    let (c, r) = report(&["verify-boundary", "--n", "1", "--m", "9,4"]);
    assert_eq!(c, 0);
    assert_eq!(r["reports"][0]["summands"], 24);
    assert_eq!(r["pairs_checked"], 12);

    let (c, r) = report(&["verify-boundary", "--n", "2", "--m", "1,1"]);
    assert_eq!((c, r["verdict"].as_str()), (0, Some("pass")));
    assert_eq!(r["reports"][0]["summands"], 48);

    let (c, r) = report(&["verify-boundary", "--n", "0", "--m", "1,-1"]);
    assert_eq!((c, r["verdict"].as_str()), (0, Some("pass")));
    assert_eq!(r["reports"][0]["summands"], 8);
}

#[test]
fn reports_are_reproducible() {
    let args = [
        "verify-equations",
        "--n",
        "2",
        "--seed",
        "7",
        "--grid-denominator",
        "20",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    let path = scratch("report.json");
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let c = run(&with_out);
    assert_eq!(code(&c), 0);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);

    let other = run(&[
        "verify-equations",
        "--n",
        "2",
        "--seed",
        "8",
        "--grid-denominator",
        "20",
    ]);
    assert_ne!(other.stdout, a.stdout);
}

#[test]
fn config_files() {
    let path = scratch("run.cfg");
    std::fs::write(&path, "# homology table\nm = 9,4\nn-max = 3\nn = 1\n").unwrap();
    let cfg = path.to_str().unwrap();
    let out = run(&["homology", "--config", cfg]);
    assert_eq!(stdout(&out), "1, 0, Z/13\n2, x13, 0\n3, 0, Z/13\n");
    let out = run(&["homology", "--config", cfg, "--m", "1"]);
    assert_eq!(stdout(&out), "1, 0, 0\n2, x1, 0\n3, 0, 0\n");

    let bad = scratch("bad.cfg");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    assert_eq!(code(&run(&["homology", "--config", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["homology", "--config", "/nonexistent/genbound.cfg"])), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(
        code(&run(&["verify-equations", "--n", "3", "--grid-denominator", "4"])),
        2
    );
    assert_eq!(code(&run(&["verify-equations", "--L", "0", "--m", "9,4"])), 2);
    assert_eq!(code(&run(&["verify-equations", "--L", "2"])), 2);
    assert_eq!(code(&run(&["verify-equations", "--n", "0"])), 2);
    assert_eq!(code(&run(&["verify-boundary", "--n", "3", "--n-max", "2"])), 2);
    assert_eq!(code(&run(&["verify-boundary", "--format", "svg"])), 2);
    assert_eq!(code(&run(&["verify-equations", "--n", "9"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn figures() {
    assert_eq!(code(&run(&["figure", "--n", "3"])), 2);

    let out = run(&["figure", "--m", "9,4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let labels: Vec<&str> = rows.iter().map(|r| r.split(',').nth(1).unwrap()).collect();
    assert_eq!(labels, ["+9", "+4", "-9", "-4", "+9", "+4"]);

    let out = run(&["figure", "--m", "9,4", "--alpha", "1/6", "--format", "csv"]);
    let text = stdout(&out);
    let chords: Vec<&str> = text.lines().filter(|l| l.starts_with("cross,")).collect();
    assert_eq!(chords.len(), 3);
    assert!(chords[0].contains("\"[1/6,5/6,0]\",\"[1/6,0,5/6]\""));

    let out = run(&["figure", "--alpha", "5/6", "--format", "csv"]);
    let text = stdout(&out);
    let corners: Vec<&str> = text.lines().filter(|l| l.starts_with("cross,")).collect();
    assert_eq!(corners.len(), 3);
    assert!(corners[0].contains("\"[5/6,1/6,0]\",\"[5/6,0,1/6]\""));

    let svg = stdout(&run(&["figure", "--m", "9,4", "--alpha", "1/6,5/6"]));
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<line").count(), 12);
    assert!(svg.contains(">-9</text>"));
}

#[test]
fn homology_tables() {
    let table = |m: &str, hi: &str| stdout(&run(&["homology", "--m", m, "--n-max", hi]));
    let col = |t: String| {
        t.lines()
            .map(|l| l.rsplit(", ").next().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(col(table("9,4", "4")), ["Z", "Z/13", "0", "Z/13", "0"]);
    assert_eq!(col(table("1", "3")), ["Z", "0", "0", "0"]);
    assert_eq!(col(table("1,-1", "3")), ["Z", "Z", "Z", "Z"]);
    assert_eq!(stdout(&run(&["homology", "--m", "9,4"])).lines().count(), 9);
}

#[test]
fn comfort_reports() {
    let (c, r) = report(&["verify-comfort", "theta:L=1,n=2,i=1", "--grid-denominator", "12"]);
    assert_eq!(c, 0);
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
    let (c, r) = report(&["verify-comfort", "counterexample", "--grid-denominator", "12"]);
    assert_eq!((c, r["map_id"].as_str()), (0, Some("counterexample")));
    assert_eq!(code(&run(&["verify-comfort", "pi_alpha:n=2,alpha=0"])), 2);
}

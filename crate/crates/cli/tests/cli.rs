use std::path::Path;
use std::process::{Command, Output};

use circuit_descartes_cli::report::{
    BoundReport, CheckReport, CountReport, PlanarReport, SharpenReport,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

const SQUARE: &str = r#"{"cfg": {"points": [[0,0],[1,0],[1,1],[0,1]]},
  "C": [[1, -1, 1, "-1/2"], [2, 1, -3, 1]], "ordering": [0, 1, 3, 2]}"#;
const A1: &str = r#"{"cfg": {"points": [[0,0],[1,0],[1,2],[0,1]]}}"#;
const LINE: &str = r#"{"cfg": {"points": [[0],[1],[2]]}, "C": [[1, -2, 1]]}"#;

fn circdes(args: &[&str], dir: &Path, input: Option<&str>) -> Output {
    let mut args = args.to_vec();
    if let Some(text) = input {
        std::fs::write(dir.join("in.json"), text).unwrap();
        args.push("in.json");
    }
    Command::new(env!("CARGO_BIN_EXE_circdes"))
        .args(&args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn json<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(out: &Output) -> T {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let value: T = serde_json::from_str(&text).unwrap();
    // round trip
    let again: T = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(again, value);
    value
}

#[test]
fn bound_on_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let r: BoundReport = json(&circdes(&["bound"], dir.path(), Some(SQUARE)));
    assert_eq!(r.b, vec![1, -1, 1, -1]);
    assert_eq!(r.bound_new, 2);
    assert_eq!(r.mu, vec![1, 0, -1, 0]);
    assert_eq!(r.ordering_source, "supplied");

    let identity = SQUARE.replace("[0, 1, 3, 2]", "[0, 1, 2, 3]");
    let r: BoundReport = json(&circdes(&["bound"], dir.path(), Some(&identity)));
    assert_eq!((r.bound_new, r.bound_old), (1, 3));
}

#[test]
fn count_with_both_methods() {
    let dir = tempfile::tempdir().unwrap();
    let r: CountReport = json(&circdes(&["count"], dir.path(), Some(LINE)));
    assert_eq!(r.count, 2);
    assert_eq!(r.roots.len(), 1);
    assert_eq!(r.roots[0].multiplicity, 2);
    let r: CountReport = json(&circdes(
        &["count", "--method", "classical", "--no-isolate"],
        dir.path(),
        Some(LINE),
    ));
    assert_eq!(
        (r.count, r.roots.len(), r.method.as_str()),
        (2, 0, "classical")
    );
}

#[test]
fn sharpen_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let r: SharpenReport = json(&circdes(&["sharpen"], dir.path(), Some(A1)));
    assert_eq!((r.bound, r.oracle_count, r.decorated_cells), (3, 3, 3));
    assert!(r.ordering_strict);
    let r: PlanarReport = json(&circdes(&["classify2d"], dir.path(), Some(A1)));
    assert_eq!(r.max_positive, 3);
    let r: CheckReport = json(&circdes(&["check"], dir.path(), Some(SQUARE)));
    assert!(r.circuit);
    assert_eq!(r.volumes.unwrap().vol_za, 2);
}

#[test]
fn text_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = circdes(&["--text", "count"], dir.path(), Some(LINE));
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("count 2"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str], input: &str| circdes(args, dir.path(), Some(input)).status.code();
    assert_eq!(
        code(
            &["count"],
            r#"{"cfg": {"points": [[0],[1],[2]]}, "C": [[1, 2.5, 1]]}"#
        ),
        Some(2)
    );
    assert_eq!(
        code(
            &["count"],
            r#"{"cfg": {"points": [[0],[1]]}, "C": [[1, 2, 1]]}"#
        ),
        Some(2)
    );
    assert_eq!(
        code(&["bound"], r#"{"cfg": {"points": [[0],[1],[2]]}}"#),
        Some(2)
    );
    assert_eq!(
        code(
            &["bound"],
            r#"{"cfg": {"points": [[0,0],[1,1],[2,2],[0,1]]}, "C": [[1,1,1,1],[1,2,3,4]]}"#
        ),
        Some(3)
    );
    assert_eq!(
        code(
            &["count"],
            r#"{"cfg": {"points": [[0],[1],[2]]}, "C": [[0, 0, 0]]}"#
        ),
        Some(4)
    );
    let out = circdes(
        &["count"],
        dir.path(),
        Some(r#"{"cfg": {"points": [[0],[1],[2]]}, "C": [[1, "q", 1]]}"#),
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("`C[0][1]`"));
}

#[test]
fn region_sample_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = circdes(
        &["region-sample", "--grid", "3", "--range=-1,1"],
        dir.path(),
        None,
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0], "b1,b2,class");
    assert_eq!(lines[1], "-1,-1,exceptional");
    assert_eq!(lines[9], "1,1,2");
}

#[test]
fn fuzz_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["fuzz", "--seed", "0", "--trials", "100", "--n-max", "2"];
    let a = circdes(&args, dir.path(), None);
    let b = circdes(&args, dir.path(), None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!dir.path().join("fuzz-reproducer.json").exists());
    let three = circdes(
        &["fuzz", "--trials", "50", "--n-min", "3", "--n-max", "3"],
        dir.path(),
        None,
    );
    assert!(three.status.success());
    assert_eq!(
        circdes(&["fuzz", "--n-min", "0"], dir.path(), None)
            .status
            .code(),
        Some(2)
    );
}

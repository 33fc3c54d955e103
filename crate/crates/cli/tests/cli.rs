use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bqd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bqd")).args(args).env_remove("BQD_MODE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn make(dir: &TempDir, case: &str, params: &[&str]) -> PathBuf {
    let path = dir.path().join(format!("{case}.json"));
    let mut args = vec!["catalog", "make", case];
    for p in params {
        args.push("--param");
        args.push(p);
    }
    let p = path.to_str().unwrap().to_string();
    args.extend(["-o", &p]);
    let o = bqd(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn catalog_list_is_pinned() {
    let o = bqd(&["catalog", "list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), golden("catalog_list.txt"));
    assert_eq!(stdout(&o).lines().count(), 24);
}

#[test]
fn verify_json_is_pinned() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "I.a", &[]);
    let o = bqd(&["--format", "json", "verify", s(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), golden("verify_ia.json"));
    let v = json(&o);
    assert_eq!(v["schema"], "bqd-report/1");
    assert_eq!(v["pass"], true);
}

#[test]
fn dims_json_is_pinned() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "I.a", &[]);
    let o = bqd(&["--format", "json", "dims", s(&f), "--max-total", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), golden("dims_ia.json"));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "III.a", &[]);
    for args in [vec!["verify", s(&f)], vec!["dims", s(&f), "--max-total", "3"], vec!["hecke", s(&f), "--k", "1", "--l", "1"]] {
        let mut full = vec!["--format", "json"];
        full.extend(args.iter().copied());
        let a = bqd(&full);
        let b = bqd(&full);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn make_type_two_b_from_p() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "II.b", &["p=2"]);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(file["q"], "8");
    assert_eq!(file["mode"], "numeric");
    assert_eq!(code(&bqd(&["verify", s(&f)])), 0);
}

#[test]
fn make_without_deformation_is_symbolic() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "II.a", &[]);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(file["mode"], "symbolic");
    let o = bqd(&["verify", s(&f)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    assert_eq!(code(&bqd(&["catalog", "make", "IX.z", "-o", s(&out)])), 2);
    assert_eq!(code(&bqd(&["catalog", "make", "I.e", "--param", "alpha=1", "-o", s(&out)])), 2);
    assert_eq!(code(&bqd(&["catalog", "make", "I.a", "--param", "nonsense", "-o", s(&out)])), 2);
    assert_eq!(code(&bqd(&["verify", s(&dir.path().join("absent.json"))])), 2);
}

#[test]
fn corrupted_tensor_fails_naming_identity() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "I.a", &[]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    v["D"][0][0] = Value::String("5".into());
    std::fs::write(&f, serde_json::to_string(&v).unwrap()).unwrap();
    let o = bqd(&["--format", "json", "verify", s(&f)]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(r["pass"], false);
    let failing: Vec<&str> = r["identities"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(failing.contains(&"(D,1)(1,d)=1"), "{failing:?}");
}

#[test]
fn malformed_files_name_the_problem() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "I.a", &[]);
    let text = std::fs::read_to_string(&f).unwrap();

    std::fs::write(&f, &text[..text.len() / 2]).unwrap();
    let o = bqd(&["verify", s(&f)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("invalid JSON"), "{}", stderr(&o));

    let mut v: Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("b");
    std::fs::write(&f, v.to_string()).unwrap();
    let o = bqd(&["verify", s(&f)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("`b`"), "{}", stderr(&o));
}

#[test]
fn mode_mismatch_is_rejected() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "I.a", &[]);
    let o = bqd(&["--mode", "symbolic", "verify", s(&f)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("mode"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_bqd")).args(["verify", s(&f)]).env("BQD_MODE", "symbolic").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn flip_is_an_involution() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "I.g", &[]);
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    assert_eq!(code(&bqd(&["transform", s(&f), "--flip", "-o", s(&once)])), 0);
    assert_eq!(code(&bqd(&["verify", s(&once)])), 0);
    assert_eq!(code(&bqd(&["transform", s(&once), "--flip", "-o", s(&twice)])), 0);
    assert_eq!(std::fs::read(&f).unwrap(), std::fs::read(&twice).unwrap());
}

#[test]
fn rescale_and_basechange_preserve_validity() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "III.a", &[]);
    let r = dir.path().join("r.json");
    assert_eq!(code(&bqd(&["transform", s(&f), "--rescale", "-2", "3/5", "-o", s(&r)])), 0);
    assert_eq!(code(&bqd(&["verify", s(&r)])), 0);

    let g = dir.path().join("g.json");
    std::fs::write(&g, r#"{"gV": [["1","1","0"],["0","1","0"],["0","0","2"]], "gW": [["0","1","0"],["1","0","0"],["1","0","1"]]}"#).unwrap();
    let out = dir.path().join("bc.json");
    let o = bqd(&["transform", s(&f), "--basechange", s(&g), "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&bqd(&["verify", s(&out)])), 0);

    std::fs::write(&g, r#"{"gV": [["1","1","0"],["1","1","0"],["0","0","2"]], "gW": [["1","0","0"],["0","1","0"],["0","0","1"]]}"#).unwrap();
    assert_ne!(code(&bqd(&["transform", s(&f), "--basechange", s(&g), "-o", s(&out)])), 0);
}

#[test]
fn dims_marks_elliptic_as_evidence() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "I.h", &[]);
    let o = bqd(&["dims", s(&f), "--max-total", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("evidence"), "{}", stdout(&o));
}

#[test]
fn dims_csv_has_header() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "I.a", &[]);
    let o = bqd(&["--format", "csv", "dims", s(&f), "--max-total", "2", "--with-g"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "algebra,k,l,ambient,ideal_rank,quotient,expected,status");
    assert!(text.lines().any(|l| l.starts_with("G,1,1,")), "{text}");
}

#[test]
fn hecke_projector_two_one() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "II.b", &["p=2"]);
    let o = bqd(&["--format", "json", "hecke", s(&f), "--k", "2", "--l", "1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["projector"]["rank"], 15);
    assert_eq!(v["projector"]["expected"], 15);
    assert_eq!(v["projector"]["alphas"].as_array().unwrap().len(), 2);
}

#[test]
fn export_writes_presentation() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "I.a", &[]);
    let out = dir.path().join("pres.json");
    let o = bqd(&["--format", "json", "export", s(&f), "-o", s(&out)]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc.is_object());
    assert_eq!(json(&o)["relations"], 144);
}

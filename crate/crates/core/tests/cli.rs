use uqslcat::category::DecompReport;
use uqslcat::cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("uqslcat").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("uqslcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn ext_between_linked_irreducibles() {
    let (code, out, _) = run(&["ext", "--p", "2", "--from", "X+:1", "--to", "X-:1", "--deg", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2");
}

#[test]
fn center_dimension() {
    assert_eq!(run(&["center", "--p", "3"]).1.trim(), "8");
    let (_, json, _) = run(&["center", "--p", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["dim"], 8);
}

#[test]
fn decompose_regular_from_file() {
    let path = tmp("reg.json");
    let (code, _, _) = run(&["build", "--p", "2", "--label", "regular", "--output", &path]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["decompose", "--p", "2", "--input", &path]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "{X+_2:2, X-_2:2, P+_1:1, P-_1:1}");
    let (_, json, _) = run(&["decompose", "--input", &path, "--format", "json"]);
    let rep = DecompReport::from_json(&json, 2).unwrap();
    let got: Vec<(String, usize)> = rep.0.iter().map(|e| (e.label.clone(), e.mult)).collect();
    let want = [("X+_2", 2), ("X-_2", 2), ("P+_1", 1), ("P-_1", 1)];
    assert_eq!(got, want.map(|(l, m)| (l.to_string(), m)));
}

#[test]
fn text_and_json_agree_on_o_modules() {
    let (_, text, _) = run(&["decompose", "--p", "3", "--label", "O-:1:2:1/q"]);
    let (_, json, _) = run(&["decompose", "--p", "3", "--label", "O-:1:2:1/q", "--format", "json"]);
    let rep = DecompReport::from_json(&json, 3).unwrap();
    assert_eq!(rep.0.len(), 1);
    let e = &rep.0[0];
    assert_eq!((e.label.as_str(), e.n, e.mult), ("O-_1", Some(2), 1));
    let [z1, z2] = e.z.clone().unwrap();
    assert_eq!(text.trim(), format!("{{O-_1[n=2,z={z1}:{z2}]:1}}"));
}

#[test]
fn resolution_and_yoneda() {
    let (code, out, _) = run(&["resolve", "--p", "3", "--label", "X-:1", "--len", "5", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["multiplicities"], serde_json::json!([1, 2, 3, 4, 5]));
    assert_eq!(v["exact"], true);
    let (code, out, _) = run(&["yoneda", "--p", "2", "--s", "1", "--word", "x-:1,x+:1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["degree"].as_u64(), v["zero"].as_bool()), (Some(2), Some(false)));
    let (code, _, err) = run(&["yoneda", "--p", "2", "--s", "1", "--word", "x+:1,x+:2"]);
    assert_eq!(code, 1);
    assert!(err.contains("not composable"));
}

#[test]
fn hom_blocks_verify_and_braiding() {
    assert_eq!(run(&["hom", "--p", "3", "--from", "P+:1", "--to", "X+:1"]).1.trim(), "1");
    let (_, out, _) = run(&["blocks", "--p", "2", "--label", "regular"]);
    assert_eq!(out.trim(), "block 0: dim 4\nblock 1: dim 8\nblock 2: dim 4");
    let (code, out, _) = run(&["verify", "--p", "3", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"all_pass\": true"));
    let (_, out, _) = run(&["verify", "--p", "2", "--negative-control", "--format", "json"]);
    assert!(out.contains("\"all_pass\": false"));
    let (code, out, _) = run(&["braid-check"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("all checks pass"));
}

#[test]
fn kron_classify_from_file() {
    let path = tmp("rep.json");
    let one = r#"{"order":4,"coeffs":["1","0"]}"#;
    let zero = r#"{"order":4,"coeffs":["0","0"]}"#;
    let body = format!(r#"{{"d0":2,"d1":1,"r":[[{one},{zero}]],"rbar":[[{zero},{one}]]}}"#);
    std::fs::write(&path, body).unwrap();
    let (code, out, err) = run(&["kron-classify", "--input", &path]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "{rho_1:1}");
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(run(&["center", "--p", "7"]).0, 1);
    assert_eq!(run(&["center", "--p", "7", "--max-p", "7"]).0, 0);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["ext", "--p", "3", "--from", "X+:4", "--to", "X+:1", "--deg", "1"]).0, 1);
    assert_eq!(run(&["braid-check", "--p", "3"]).0, 1);
    assert_eq!(run(&["decompose", "--input", "/nonexistent/m.json"]).0, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("kron-classify"));
}

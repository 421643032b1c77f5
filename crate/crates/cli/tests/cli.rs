use std::fs;
use std::process::{Command, Output};

fn a4coh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_a4coh")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = a4coh(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn stderr(args: &[&str]) -> (i32, String) {
    let o = a4coh(args);
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stderr).unwrap())
}

#[test]
fn perfect_census_counts() {
    let csv = stdout(&["census", "--fan", "perfect", "--format", "csv"]);
    let counts: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(counts, ["1", "1", "2", "3", "4", "5", "4", "2", "2", "2"]);
    assert!(csv.starts_with("dim,orbits\n"));
}

#[test]
fn voronoi_census_is_thread_independent() {
    let a = stdout(&["census", "--fan", "voronoi", "--format", "json", "--jobs", "1"]);
    let b = stdout(&["census", "--fan", "voronoi", "--format", "json", "--jobs", "4"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["tables"][1]["rows"].as_array().unwrap().len(), 60);
    assert_eq!(v["notes"][0], "total 60");
}

#[test]
fn euler_of_named_cones() {
    let k33 = stdout(&["euler", "--cone", "K33", "--format", "csv"]);
    assert_eq!(k33, "cone,dim,torus_dim,group_order,ec\nK33,9,1,144,L\n");
    let text = stdout(&["euler", "--cone", "K33"]);
    assert!(text.contains("the table prints L - 1 for K33"));
    let c321 = stdout(&["euler", "--cone", "C321", "--format", "csv"]);
    assert!(c321.ends_with(",L^4 + 1\n"), "{c321}");
}

#[test]
fn final_table_keeps_ea4_symbolic() {
    let text = stdout(&["table", "final", "--eA4", "symbolic"]);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["10", "10+e(A4)"]));
    let csv = stdout(&["table", "final", "--eA4", "5", "--format", "csv"]);
    assert!(csv.contains("\n10,15\n"));
    let (code, err) = stderr(&["table", "final", "--r", "symbolic"]);
    assert_eq!(code, 2);
    assert!(err.contains("opaque slot"), "{err}");
}

#[test]
fn epsilon_binding() {
    let sym = stdout(&["table", "beta1", "--format", "csv"]);
    assert!(sym.contains("\n11,eps,Q(-5)^(eps)\n"), "{sym}");
    let zero = stdout(&["table", "beta1", "--epsilon", "0", "--format", "csv"]);
    assert!(!zero.contains("\n11,"));
    let (code, _) = stderr(&["table", "beta1", "--epsilon", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table2.json");
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["table", "table2", "--format", "json", "--out", p]), "");
    let first = fs::read_to_string(&path).unwrap();
    stdout(&["table", "table2", "--format", "json", "--out", p]);
    assert_eq!(fs::read_to_string(&path).unwrap(), first);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["tables"][0]["rows"].as_array().unwrap().len(), 15);
}

#[test]
fn cone_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.json");
    let cone = r#"{"g": 4, "name": "five", "generators": [
        {"vector": [1,0,0,0]}, {"vector": [0,1,0,0]}, {"vector": [1,0,0,-1]},
        {"vector": [0,1,-1,0]}, {"vector": [0,0,1,-1]}]}"#;
    fs::write(&path, cone).unwrap();
    let p = path.to_str().unwrap();
    let e = stdout(&["euler", "--input", p, "--format", "csv"]);
    assert_eq!(e, "cone,dim,torus_dim,group_order,ec\nfive,5,5,240,L^5 - 1\n");
    let list = dir.path().join("list.json");
    fs::write(&list, format!("[{cone}, {cone}]")).unwrap();
    let c = stdout(&["census", "--input", list.to_str().unwrap(), "--format", "csv"]);
    assert!(c.contains("\n5,1\n"), "{c}");
}

#[test]
fn bad_input_points_at_the_offending_value() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let p = path.to_str().unwrap();
    fs::write(&path, r#"{"g": 4, "generators": [{"vector": [1,0,0,0]}, {"vector": [0,0,0,0]}]}"#).unwrap();
    let (code, err) = stderr(&["faces", "--input", p]);
    assert_eq!(code, 2);
    assert!(err.contains("at /generators/1:"), "{err}");
    fs::write(&path, r#"{"g": "four", "generators": []}"#).unwrap();
    assert!(stderr(&["faces", "--input", p]).1.contains("at /g:"));
    fs::write(&path, r#"[{"g": 4, "generators": [{"vector": [1,0,0,0]}]}, {"g": 4}]"#).unwrap();
    assert!(stderr(&["census", "--input", p]).1.contains("at /1"));
    fs::write(&path, "{\"g\": 4,\n").unwrap();
    assert!(stderr(&["faces", "--input", p]).1.contains("line 2"));
}

#[test]
fn oversize_cone_hits_the_guard() {
    let mut vs = Vec::new();
    for a in -1i64..=1 {
        for b in -1i64..=1 {
            for c in -1i64..=1 {
                for d in -1i64..=1 {
                    let v = [a, b, c, d];
                    // One vector per line through the origin.
                    if v.iter().find(|x| **x != 0) == Some(&1) {
                        vs.push(format!("{{\"vector\": {v:?}}}"));
                    }
                }
            }
        }
    }
    vs.truncate(17);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    fs::write(&path, format!("{{\"g\": 4, \"generators\": [{}]}}", vs.join(","))).unwrap();
    let (code, err) = stderr(&["faces", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("desk-scale guard"), "{err}");
}

#[test]
fn suites_and_tables_list() {
    let s = stdout(&["suite", "deltas", "--format", "csv"]);
    assert_eq!(s.lines().filter(|l| l.ends_with(",1")).count(), 5);
    let m = stdout(&["table", "manifest", "--format", "csv"]);
    assert!(m.lines().any(|l| l.starts_with("kummer.degeneration,")));
    let (code, err) = stderr(&["table", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown table"));
}

#[test]
fn verify_passes() {
    let o = a4coh(&["verify", "--format", "csv"]);
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(out.lines().filter(|l| l.contains(",PASS,")).count(), 8, "{out}");
    assert!(o.status.success());
}

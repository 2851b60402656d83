use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilpoisson")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("nilpoisson-cli-{}-{name}", std::process::id()))
}

const COUNTEREXAMPLE: [&str; 6] = ["spectral", "--algebra", "tower:4", "--lambda", "2 v1^v4 - v2^v3", "--pages"];

#[test]
fn spectral_counterexample_table() {
    let mut args = COUNTEREXAMPLE.to_vec();
    args.push("3");
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for page in ["E_1 ", "E_2 ", "E_3 "] {
        assert!(text.contains(page), "{text}");
    }
    assert!(!text.contains("E_4 "));
    assert!(text.contains("fails at r=2 (p=0,q=2)"));
    assert!(text.contains("fails-at-(2,0,2)"));
}

#[test]
fn degeneration_with_theorem2() {
    let o = run(&["degeneration", "--algebra", "kodaira", "--theorem2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degenerates-at-E2"));
}

#[test]
fn torus_cohomology_json() {
    let v = json(&["cohomology", "--algebra", "torus:2", "--coef", "1"]);
    let dims: Vec<u64> = v["cohomology"]["dolbeault"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![2, 4, 2]);
    let first = &v["cohomology"]["dolbeault"][0];
    assert_eq!(first["p"], 1);
    assert_eq!(first["representatives"].as_array().unwrap().len(), 2);
    assert_eq!(first["representatives"][0].as_array().unwrap().len(), first["basis"].as_array().unwrap().len());
}

#[test]
fn report_has_the_documented_keys() {
    let v = json(&["degeneration", "--algebra", "tower:3", "--theorem2"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 6);
    for k in ["algebra", "lambda", "e_pages", "verdict", "cohomology", "timings"] {
        assert!(keys.contains(&k), "{k} missing from {keys:?}");
    }
    assert_eq!(v["verdict"]["code"], "degenerates-at-E2");
}

#[test]
fn formats_report_the_same_dimensions() {
    let mut args = COUNTEREXAMPLE.to_vec();
    args.push("3");
    let v = json(&args);
    let pages = v["e_pages"].as_array().unwrap();
    assert_eq!(pages.len(), 3);
    assert_eq!(v["verdict"]["first_failure"]["r"], 2);

    let mut csv_args = args.clone();
    csv_args.extend(["--format", "csv"]);
    let csv = stdout(&run(&csv_args));
    let mut from_csv = std::collections::BTreeMap::new();
    for line in csv.lines().skip(1).filter(|l| l.starts_with("E,")) {
        let f: Vec<&str> = line.split(',').collect();
        let key = (f[1].parse::<usize>().unwrap(), f[2].parse::<usize>().unwrap(), f[3].parse::<usize>().unwrap());
        from_csv.insert(key, f[5].parse::<u64>().unwrap());
    }
    let table = stdout(&run(&args));
    for page in pages {
        let r = page["r"].as_u64().unwrap() as usize;
        let grid: Vec<Vec<u64>> =
            page["dims"].as_array().unwrap().iter().map(|row| row.as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect()).collect();
        for (p, row) in grid.iter().enumerate() {
            for (q, d) in row.iter().enumerate() {
                assert_eq!(from_csv[&(r, p, q)], *d);
            }
            let expected = format!("{p:>7} {}", row.iter().map(|d| format!("{d:>3}")).collect::<Vec<_>>().join(" "));
            assert!(table.contains(&expected), "E_{r} row {p}: `{expected}` not in\n{table}");
        }
    }
}

#[test]
fn poisson_command_reports_dimensions() {
    let v = json(&["poisson", "--algebra", "tower:4", "--lambda", "2 v1^v4 - v2^v3"]);
    let dims: Vec<u64> = v["cohomology"]["poisson"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 3, 7, 10, 10, 10, 7, 3, 1]);
    assert_eq!(v["lambda"]["ad_identically_zero"], false);
}

#[test]
fn crosscheck_agrees() {
    let v = json(&["crosscheck", "--algebra", "kodaira"]);
    let reports = v["cohomology"]["crosscheck"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r["agrees"] == true));
}

#[test]
fn exit_codes() {
    // usage and parse errors
    assert_eq!(run(&["spectral", "--algebra", "tower:4"]).status.code(), Some(2));
    assert_eq!(run(&["info", "--algebra", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["info", "--algebra", "tower:1"]).status.code(), Some(2));
    assert_eq!(run(&["spectral", "--algebra", "tower:4", "--lambda", "2 v1^^v4"]).status.code(), Some(2));
    assert_eq!(run(&["spectral", "--algebra", "tower:4", "--lambda", "v1^v9"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["info"]).status.code(), Some(2));
    // Λ that is not holomorphic Poisson
    assert_eq!(run(&["spectral", "--algebra", "tower:4", "--lambda", "v1^v2"]).status.code(), Some(1));
    let o = run(&["poisson", "--algebra", "tower:4", "--lambda", "v1^v2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("holomorphic Poisson   no"));
    // theorem2 needs complex dimension 2
    assert_eq!(run(&["degeneration", "--algebra", "torus:1", "--theorem2"]).status.code(), Some(2));
}

#[test]
fn invalid_file_fails_validation() {
    let path = temp("jacobi.json");
    // [e1,e2] = e3, [e1,e3] = e1 breaks Jacobi
    std::fs::write(
        &path,
        r#"{"dim": 4, "brackets": [{"i":1,"j":2,"out":{"3":"1"}}, {"i":1,"j":3,"out":{"1":"1"}}],
            "J": [["0","-1","0","0"],["1","0","0","0"],["0","0","0","-1"],["0","0","1","0"]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["validate", "--file", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Jacobi identity       no"));
    assert_eq!(run(&["cohomology", "--file", p]).status.code(), Some(1));
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(run(&["validate", "--file", p]).status.code(), Some(2));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn file_and_catalog_agree() {
    let path = temp("tower3.json");
    nilpoisson::io::write_algebra(&path, &nilpoisson::catalog::tower(3).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&["cohomology", "--file", p, "--theorem2"]);
    let from_catalog = json(&["cohomology", "--algebra", "tower:3", "--theorem2"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(from_file["cohomology"], from_catalog["cohomology"]);
    assert_eq!(from_file["lambda"], from_catalog["lambda"]);
}

#[test]
fn out_flag_writes_file() {
    let path = temp("report.json");
    let o = run(&["info", "--algebra", "kodaira", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["algebra"]["structure"]["frame"][0], "1/2 e1 - 1/2i e2");
}

use std::path::{Path, PathBuf};
use std::process::Command;

use chevdioph::cli::{run, EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERDICT};
use chevdioph::reduce::{parse_system, System};

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chevdioph-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn chevdioph(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("chevdioph").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_lines(text: &str) -> Vec<serde_json::Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn roots_of_g2() {
    let (code, out, _) = chevdioph(&["roots", "G2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("12 roots, 6 positive\n"));
}

#[test]
fn dcent_over_sp4_gf3() {
    let (code, out, _) = chevdioph(&["--format", "json-lines", "dcent", "--system", "C2", "--rep", "sp", "--ring", "GF(3)", "--root", "e1+e2"]);
    assert_eq!(code, EXIT_OK);
    let v = &json_lines(&out)[0];
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["centralizer"], 54);
}

#[test]
fn unequal_centralizer_is_a_verdict_failure() {
    let (code, out, _) = chevdioph(&["dcent", "--system", "C2", "--rep", "sp", "--ring", "GF(2)", "--root", "e1+e2"]);
    assert_eq!(code, EXIT_VERDICT);
    assert!(out.contains("verdict unequal"));
}

#[test]
fn unsat_ring_system_exits_zero() {
    let (code, out, _) = chevdioph(&["solve", "--in", &corpus("r02_two_is_not_a_square.ring")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "UNSAT");
}

#[test]
fn usage_and_budget_exit_codes() {
    assert_eq!(chevdioph(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(chevdioph(&["roots"]).0, EXIT_USAGE);
    assert_eq!(chevdioph(&["roots", "Q7"]).0, EXIT_USAGE);
    let (code, _, err) = chevdioph(&["--budget-assign", "1", "solve", "--in", &corpus("r12_fourth_power.ring")]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(err.contains("budget"));
    let (code, _, _) = chevdioph(&["--budget-elems", "100", "audit", "--system", "C2", "--rep", "sp", "--ring", "GF(2)"]);
    assert_eq!(code, EXIT_BUDGET);
}

#[test]
fn reduce_writes_a_parseable_system() {
    let dir = scratch("reduce");
    let out_path = dir.join("r01.group");
    let out_arg = out_path.to_string_lossy().into_owned();
    let (code, _, _) = chevdioph(&["reduce", "r2g", "--in", &corpus("r01_square_roots_of_one.ring"), "--out", &out_arg]);
    assert_eq!(code, EXIT_OK);
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(matches!(parse_system(&written).unwrap(), System::Group(_)));
    let (code, out, _) = chevdioph(&["solve", "--in", &out_arg]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("SAT"));

    let (code, out, _) = chevdioph(&["reduce", "g2r", "--in", &corpus("g01_square_root_of_transvection.group")]);
    assert_eq!(code, EXIT_OK);
    assert!(matches!(parse_system(&out).unwrap(), System::Ring(_)));
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn json_lines_systems_reparse() {
    let (code, out, _) =
        chevdioph(&["--format", "json-lines", "reduce", "r2g", "--in", &corpus("r05_unit_sum_zero.ring")]);
    assert_eq!(code, EXIT_OK);
    let lines = json_lines(&out);
    let text = lines.iter().find_map(|v| v["system"].as_str()).unwrap();
    let sys = parse_system(text).unwrap();
    assert_eq!(parse_system(&sys.to_string()).unwrap(), sys);
}

#[test]
fn env_overrides_flags() {
    let dir = scratch("env");
    let bin = env!("CARGO_BIN_EXE_chevdioph");
    let out = Command::new(bin)
        .args(["solve", "--in", &corpus("r12_fourth_power.ring")])
        .env("CHEVDIOPH_BUDGET_ASSIGN", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_BUDGET));
    let out = Command::new(bin)
        .args(["commtab", "--system", "B2"])
        .env("CHEVDIOPH_FORMAT", "json-lines")
        .env("CHEVDIOPH_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(!json_lines(&String::from_utf8(out.stdout).unwrap()).is_empty());
    let cached: Vec<_> = std::fs::read_dir(&dir).unwrap().flatten().collect();
    assert_eq!(cached.len(), 1);
    assert!(cached[0].file_name().to_string_lossy().ends_with(".chevtab"));
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn cache_states_give_identical_bytes() {
    let dir = scratch("cache");
    let dir_arg = dir.to_string_lossy().into_owned();
    let cmd = ["ringcheck", "--system", "C2", "--rep", "sp", "--ring", "Z/4"];
    let seedless = chevdioph(&[&["--seedless"], &cmd[..]].concat());
    let cold = chevdioph(&[&["--cache-dir", &dir_arg], &cmd[..]].concat());
    let warm = chevdioph(&[&["--cache-dir", &dir_arg], &cmd[..]].concat());
    assert_eq!(seedless.0, EXIT_OK);
    assert_eq!(seedless, cold);
    assert_eq!(seedless, warm);
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn roundtrip_over_the_corpus() {
    let (code, out, _) = chevdioph(&["--format", "json-lines", "roundtrip", "--corpus", &corpus("")]);
    assert_eq!(code, EXIT_OK);
    let lines = json_lines(&out);
    assert!(lines.len() >= 20);
}

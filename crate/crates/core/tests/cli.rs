use std::process::{Command, Output};

use serde_json::Value;

fn gslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gslab")).args(args).env_remove("GSLAB_CAP").output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn exact_census_passes_and_embeds_formulas() {
    let o = gslab(&["census", "--rule", "borda", "--q", "4", "--n", "3", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["total"], 13824);
    assert_eq!(v["chain_holds"], true);
    assert_eq!(v["bounds"]["manipulation"]["pass"], true);
    assert!(v["bounds"]["four_manipulation"]["formula"].as_str().unwrap().contains("q^30"));
}

#[test]
fn sampled_reports_are_byte_identical() {
    let args = ["census", "--rule", "plurality", "--q", "3", "--n", "7", "--samples", "100000", "--seed", "7"];
    let a = gslab(&args);
    let b = gslab(&args);
    let mut w = args.to_vec();
    w.extend(["--workers", "3"]);
    let c = gslab(&w);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let s = ["scaling", "--ns", "5,9", "--samples", "5000", "--seed", "11"];
    assert_eq!(gslab(&s).stdout, gslab(&s).stdout);
}

#[test]
fn exact_reports_do_not_depend_on_workers() {
    let one = gslab(&["census", "--rule", "plurality", "--q", "4", "--n", "2", "--workers", "1"]);
    let four = gslab(&["census", "--rule", "plurality", "--q", "4", "--n", "2", "--workers", "4"]);
    assert_eq!(one.stdout, four.stdout);
    let p1 = gslab(&["verify", "--suite", "paths", "--q", "4", "--workers", "1"]);
    let p2 = gslab(&["verify", "--suite", "paths", "--q", "4", "--workers", "2"]);
    assert_eq!(p1.status.code(), Some(0));
    assert_eq!(p1.stdout, p2.stdout);
}

#[test]
fn files_formats_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let o = gslab(&[
        "census",
        "--rule",
        "dictator:2",
        "--q",
        "3",
        "--n",
        "2",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 37);

    let capped = Command::new(env!("CARGO_BIN_EXE_gslab"))
        .args(["census", "--rule", "borda", "--q", "4", "--n", "3", "--exact"])
        .env("GSLAB_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("1000"));

    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    let table = gslab::TabularScf::random(&mut rng, 3, 2);
    let path = dir.path().join("f.txt");
    table.store(&path, false).unwrap();
    let o = gslab(&["census", "--rule", path.to_str().unwrap(), "--q", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let direct = gslab::manipulation::census(&gslab::Scf::tabular(table), gslab::Mode::Exact, 1 << 20).unwrap();
    assert_eq!(json(&o)["counts"]["manip"], direct.counts.manip);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["census", "--samples", "100"][..],
        &["census", "--rule", "dictator:0"],
        &["census", "--q", "2", "--n", "2"],
        &["census", "--rule", "borda", "--q", "3", "--n", "2", "--samples", "100", "--seed", "1", "--format", "csv"],
        &["verify"],
        &["paths", "--kind", "bubble", "--from", "1>2>3", "--to", "1>2>3>4"],
        &["paths", "--kind", "refined", "--from", "1>2>3>4", "--to", "1>2>3>4"],
    ] {
        assert_eq!(gslab(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn suites_report_per_check_status() {
    let o = gslab(&["verify", "--suite", "lemmas", "--rule", "constant:3", "--q", "4", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["suite"], "lemmas");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "not_applicable"));

    let o = gslab(&["verify", "--suite", "gs", "--q", "3", "--n", "2", "--samples", "1000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"][0]["detail"]["witnesses"], 1000);

    let o = gslab(&["verify", "--suite", "neutrality", "--rule", "plurality", "--q", "3", "--n", "3"]);
    let v = json(&o);
    assert_eq!(v["checks"][0]["detail"]["neutral"], true);
    assert_eq!(v["checks"][1]["status"], "pass");

    let o = gslab(&["verify", "--suite", "lemmas", "--rule", "borda", "--q", "4", "--n", "2", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("check,status\n"));
    assert!(text.contains("two_manipulation_from_edges,pass"));
}

#[test]
fn path_dumps() {
    let o = gslab(&["paths", "--kind", "bubble", "--from", "1>2>3", "--to", "3>2>1"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1>2>3\n1>3>2\n3>1>2\n3>2>1\n");

    let o = gslab(&["paths", "--kind", "sim", "--alts", "1,2", "--from", "1>2>3", "--to", "3>1>2"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["1>2>3", "3>1>2", "3>1>2"]);

    let o = gslab(&[
        "paths",
        "--kind",
        "refined",
        "--alts",
        "1,2,3,4",
        "--i",
        "1",
        "--j",
        "2",
        "--from",
        "1>2>4>3|4>3>2>1",
        "--to",
        "2>4>1>3|3>4>1>2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let labels: Vec<&str> = v["parts"].as_array().unwrap().iter().map(|p| p["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["I", "Δ", "Π"]);
    let vs = v["vertices"].as_array().unwrap();
    assert_eq!(vs[0], "1>2>4>3|4>3>2>1 ; 2>1>4>3|4>3>2>1");
    assert_eq!(vs[vs.len() - 1], "2>4>1>3|3>4>1>2 ; 2>4>1>3|4>3>1>2");
}

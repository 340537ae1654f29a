use std::path::PathBuf;
use std::process::{Command, Output};

use flk_cli::config::{FieldSpec, RunConfig};
use flk_cli::manifest::CorpusManifest;
use flk_cli::report::{lifts_to_quantum_group, parse_suites, Suite};
use flk_core::rootdata::RootType;

fn flk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flk")).args(args).output().expect("flk runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("flk-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn field_specs() {
    assert_eq!(FieldSpec::parse(None, None, 3).unwrap(), FieldSpec::Cyclo);
    assert_eq!(FieldSpec::parse(None, Some(7), 3).unwrap(), FieldSpec::Prime(7));
    assert_eq!(FieldSpec::parse(None, Some(5), 3).unwrap(), FieldSpec::Ext(5, 2));
    assert_eq!(FieldSpec::parse(Some("11^2"), None, 5).unwrap(), FieldSpec::Ext(11, 2));
    assert!(FieldSpec::parse(Some("cyclo"), Some(7), 3).is_err());
    assert!(FieldSpec::parse(Some("7"), Some(11), 3).is_err());
}

#[test]
fn strict_mode_hypotheses() {
    let mut c = RunConfig::new(RootType::B2, 3);
    assert!(c.validate().is_err());
    c.strict = false;
    assert!(c.validate().is_ok());
    assert!(c.banner().is_some());
    let mut g = RunConfig::new(RootType::G2, 7);
    g.field = FieldSpec::Ext(3, 6);
    assert!(g.validate().is_err());
    let mut a = RunConfig::new(RootType::A2, 3);
    a.field = FieldSpec::Prime(7);
    assert!(a.validate().is_ok());
    assert!(RunConfig::new(RootType::A1, 4).validate().is_err());
    let mut r1 = RunConfig::new(RootType::A1, 3);
    r1.r = 1;
    assert!(r1.validate().is_err());
}

#[test]
fn manifests_parse() {
    let m = CorpusManifest::parse("t", "# c\ntrivial injective=false\n\nsimple(2)  # st\n").unwrap();
    assert_eq!(m.cases.len(), 2);
    assert_eq!(m.cases[0].expect["injective"], false);
    assert_eq!(m.cases[1].id, "001");
    assert!(CorpusManifest::parse("t", "trivial bogus=true").is_err());
    assert!(CorpusManifest::parse("t", "trivial injective=maybe").is_err());
    assert!(CorpusManifest::parse("t", "verma(").is_err());
    let mut cfg = RunConfig::new(RootType::A1, 3);
    assert!(CorpusManifest::default_for(&cfg).unwrap().cases.len() >= 30);
    cfg.ell = 5;
    assert!(CorpusManifest::default_for(&cfg).unwrap().cases.len() >= 30);
    let a2 = CorpusManifest::default_for(&RunConfig::new(RootType::A2, 3)).unwrap();
    assert!(a2.cases.len() >= 15);
    assert!(CorpusManifest::default_for(&RunConfig::new(RootType::B2, 5)).is_err());
}

#[test]
fn suites_and_lifting() {
    assert_eq!(parse_suites("all").unwrap().len(), Suite::ALL.len());
    assert_eq!(parse_suites("borel,rootcrit,borel").unwrap(), vec![Suite::RootCrit, Suite::Borel]);
    assert!(parse_suites("nope").is_err());
    let lifts = |s: &str| lifts_to_quantum_group(&s.parse().unwrap(), 3);
    assert!(lifts("tensor(simple(1),dual(simple(2)))"));
    assert!(!lifts("simple(4)"));
    assert!(!lifts("verma(0)"));
    assert!(!lifts("randsub(simple(2),1)"));
}

#[test]
fn relations_output() {
    let o = flk(&["--type", "A2", "relations", "1", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("gamma_1 = a1, gamma_3 = a2"), "{s}");
    assert!(s.contains("E_1 E_3 = (q^-1) E_3 E_1"), "{s}");
    assert!(s.contains("+ (1) E_2"), "{s}");
    assert_eq!(flk(&["--type", "A2", "relations", "2", "2"]).status.code(), Some(2));
    assert_eq!(flk(&["--type", "A2", "relations", "3", "1"]).status.code(), Some(2));
    let b2 = stdout(&flk(&["--type", "B2", "--ell", "5", "relations", "1", "3"]));
    assert!(b2.contains("(q^2-q^-2)"), "{b2}");
}

#[test]
fn build_is_atomic_and_reproducible() {
    let d = scratch("build");
    let a = d.join("a.table");
    let b = d.join("b.table");
    for p in [&a, &b] {
        let o = flk(&["--type", "B2", "--ell", "5", "build", "--out", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.contains("|1,0"), "B2 cache should carry a denominator");
    let names: Vec<_> = std::fs::read_dir(&d).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "{names:?}");
    let info = stdout(&flk(&["--type", "B2", "--ell", "5", "cache-info", a.to_str().unwrap()]));
    assert!(info.contains("format_version 1") && info.contains("type B2"), "{info}");
    std::fs::remove_dir_all(&d).unwrap();
}

#[test]
fn corrupted_or_mismatched_caches_fail() {
    let d = scratch("corrupt");
    let good = d.join("a2.table");
    assert!(flk(&["--type", "A2", "build", "--out", good.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(&good).unwrap();
    let line = text.lines().find(|l| l.starts_with("E 1 2")).unwrap();
    let bad = d.join("bad.table");
    std::fs::write(&bad, text.replacen(line, &line.replacen("|0,0", "|0,1", 1), 1)).unwrap();
    let o = flk(&["--type", "A2", "--p", "7", "--cache", bad.to_str().unwrap(), "verify", "--suite", "rootcrit"]);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("denominator vanishes"));
    let v2 = d.join("v2.table");
    std::fs::write(&v2, text.replacen("format_version 1", "format_version 2", 1)).unwrap();
    assert_ne!(flk(&["--type", "A2", "cache-info", v2.to_str().unwrap()]).status.code(), Some(0));
    let o = flk(&["--type", "A2", "--w0", "2,1,2", "--cache", good.to_str().unwrap(), "relations", "1", "2"]);
    assert_ne!(o.status.code(), Some(0));
    let o = flk(&["--type", "A2", "--p", "7", "--cache", good.to_str().unwrap(), "verify", "--suite", "rootcrit"]);
    assert!(o.status.success());
    std::fs::remove_dir_all(&d).unwrap();
}

#[test]
fn skeleton_examples() {
    let s = stdout(&flk(&["--p", "7", "skeleton", "trivial"]));
    assert!(s.starts_with("trivial skeleton(minus): {-a1}"), "{s}");
    let s = stdout(&flk(&["--p", "7", "skeleton", "simple(2)"]));
    assert!(s.starts_with("simple(2) skeleton(minus): {}"), "{s}");
    let a = stdout(&flk(&["--p", "7", "skeleton", "quot(verma(0),7)"]));
    assert_eq!(a, stdout(&flk(&["--p", "7", "skeleton", "quot(verma(0),7)"])));
    let s = stdout(&flk(&["--type", "A2", "--p", "7", "skeleton", "trivial", "--side", "plus"]));
    assert!(s.contains("{a1, a1+a2, a2}"), "{s}");
}

#[test]
fn module_bundle_and_algebra_flag() {
    let s = stdout(&flk(&["--p", "7", "module", "simple(1)", "--algebra", "g"]));
    assert!(s.contains("dim 2, X-graded true"), "{s}");
    assert!(s.contains("projective over g: false (trace criterion)"), "{s}");
    assert!(s.contains("op E(0)"));
    let s = stdout(&flk(&["--p", "7", "module", "verma(2)", "--algebra", "u-"]));
    assert!(s.contains("projective over u-: true (Nakayama)"), "{s}");
    assert_eq!(flk(&["module", "verma(0"]).status.code(), Some(2));
}

#[test]
fn betti_tables() {
    let s = stdout(&flk(&["--p", "7", "betti", "--algebra", "u-"]));
    assert!(s.contains("# cohomology dims 1 0 1 0 1 0 1"), "{s}");
    let j = stdout(&flk(&["--p", "7", "betti", "--json", "--nmax", "3"]));
    let v: serde_json::Value = serde_json::from_str(j.trim()).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 1, 1, 1]));
    assert_ne!(flk(&["betti", "--algebra", "g"]).status.code(), Some(0));
}

#[test]
fn verify_reports_are_sorted_and_job_independent() {
    let d = scratch("verify");
    let a = d.join("a.jsonl");
    let b = d.join("b.jsonl");
    let o1 = flk(&["--p", "7", "--jobs", "1", "verify", "--out", a.to_str().unwrap()]);
    let o4 = flk(&["--p", "7", "--jobs", "4", "verify", "--out", b.to_str().unwrap()]);
    assert!(o1.status.success() && o4.status.success(), "{}", stdout(&o1));
    let ra = std::fs::read(&a).unwrap();
    assert_eq!(ra, std::fs::read(&b).unwrap());
    let text = String::from_utf8(ra).unwrap();
    let keys: Vec<(String, String)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            (v["case"].as_str().unwrap().to_string(), v["check"].as_str().unwrap().to_string())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    std::fs::remove_dir_all(&d).unwrap();
}

#[test]
fn expectations_are_enforced() {
    let d = scratch("expect");
    let m = d.join("m.txt");
    std::fs::write(&m, "simple(1) injective=true\n").unwrap();
    let o = flk(&["--p", "7", "--manifest", m.to_str().unwrap(), "verify", "--suite", "rootcrit"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"status\":\"fail\""));
    std::fs::write(&m, "tensor(verma(0),verma(0))\n").unwrap();
    let o = flk(&["--p", "7", "--budget", "50", "--manifest", m.to_str().unwrap(), "verify", "--suite", "rootcrit"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"status\":\"skipped\""));
    std::fs::remove_dir_all(&d).unwrap();
}

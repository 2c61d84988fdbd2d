//! End-to-end runs of the `rbm2` binary: exit codes, file formats, determinism.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use rbm2_core::catalog::{catalog_operator, CatalogKey, CatalogName};
use rbm2_core::identities::{IdentityKind, Problem};
use rbm2_core::search::{write_rbset, OperatorSet, SearchStats};
use rbm2_core::{make_field, Op4, ProductKind};

fn rbm2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbm2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn enumerate_into(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut all = vec!["enumerate", "--out", &path];
    all.extend_from_slice(args);
    let out = rbm2(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn verify_exit_codes() {
    let ok = rbm2(&["verify", "catalog:R1", "--product", "jordan", "--identity", "rb", "--weight", "0", "--field", "3"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout_json(&ok)["passed"], true);

    let fail = rbm2(&["verify", "catalog:R1", "--product", "associative"]);
    assert_eq!(code(&fail), 1);
    let json = stdout_json(&fail);
    assert_eq!(json["witness"]["args"], serde_json::json!(["e11", "e21"]));

    let sym = rbm2(&["verify", "catalog:S1", "--product", "associative", "--identity", "symmetrized", "--weight", "1"]);
    assert_eq!(code(&sym), 0);

    let fam = rbm2(&["verify", "catalog:fam3?alpha=1&beta=2", "--identity", "symmetrized", "--field", "5"]);
    assert_eq!(code(&fam), 0);
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"field\": {\"p\": 3}}").unwrap();
    let junk = junk.to_str().unwrap();
    for args in [
        vec!["verify", junk],
        vec!["verify", "/nonexistent/op.json"],
        vec!["verify", "catalog:Q9"],
        vec!["verify", "catalog:R1?field=3", "--field", "5"],
        vec!["verify", "catalog:R1", "--field", "4"],
        vec!["verify", "catalog:fam3"],
        vec!["dichotomy", "--in", junk],
        vec!["polysys", "--ansatz", "bogus"],
        vec!["polysys", "--format", "latex"],
        vec!["polysys", "--compare-literature"],
        vec!["enumerate", "--image-span", "e13"],
        vec!["subalgebras", "--jobs", "0"],
        vec!["no-such-command"],
    ] {
        let out = rbm2(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"), "{args:?}");
    }
}

#[test]
fn enumerate_writes_a_sorted_validated_set() {
    let dir = tempfile::tempdir().unwrap();
    let w0 = enumerate_into(dir.path(), "w0.rbset", &["--field", "3", "--weight", "0", "--product", "jordan", "--identity", "rb"]);
    let text = std::fs::read_to_string(&w0).unwrap();
    let mut lines = text.lines();
    let header: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["format"], "rbset");
    assert_eq!(header["problem"]["product"], "jordan");
    assert_eq!(header["field"], serde_json::json!({"p": 3, "deg": 1}));
    let body: Vec<&str> = lines.collect();
    assert_eq!(header["count"], body.len());
    // the naive scan over the same problem writes the same operators
    let naive = enumerate_into(dir.path(), "naive.rbset", &["--naive", "--weight", "0", "--product", "jordan", "--image-span", "e11,e12"]);
    let spanned = enumerate_into(dir.path(), "span.rbset", &["--weight", "0", "--product", "jordan", "--image-span", "e11,e12"]);
    let ops = |p: &str| -> Vec<String> {
        std::fs::read_to_string(p).unwrap().lines().skip(1).map(String::from).collect()
    };
    assert_eq!(ops(&naive), ops(&spanned));
    assert!(ops(&spanned).iter().all(|l| body.contains(&l.as_str())));
}

#[test]
fn dichotomy_and_its_input_checks() {
    let dir = tempfile::tempdir().unwrap();
    let w0 = enumerate_into(dir.path(), "w0.rbset", &["--weight", "0", "--product", "jordan"]);
    let w1 = enumerate_into(dir.path(), "w1.rbset", &["--weight", "1", "--product", "jordan"]);
    for (path, claim) in [(&w0, "weight0-dichotomy-F3"), (&w1, "weight1-dichotomy-F3")] {
        let out = rbm2(&["dichotomy", "--in", path, "--json", "--no-timing"]);
        assert_eq!(code(&out), 0);
        let report = &stdout_json(&out)["reports"][0];
        assert_eq!(report["claim"], claim);
        assert_eq!(report["status"], "pass");
        assert_eq!(report["counts"]["violations"], 0);
        assert!(report.get("wall_time_ms").is_none());
    }
    assert_eq!(code(&rbm2(&["dichotomy", "--in", &w1, "--weight", "0"])), 2);

    let assoc = enumerate_into(dir.path(), "assoc.rbset", &["--weight", "0"]);
    assert_eq!(code(&rbm2(&["dichotomy", "--in", &assoc])), 2);

    // a member that violates the header's problem is an input error
    let f = make_field(3, 1).unwrap();
    let bad = dir.path().join("bad.rbset");
    let set = OperatorSet {
        problem: Problem::new(ProductKind::Jordan, IdentityKind::Rb, f.zero()),
        field: f,
        ops: vec![Op4::zero(f), Op4::identity(f)],
        metadata: SearchStats::default(),
    };
    write_rbset(&set, std::fs::File::create(&bad).unwrap()).unwrap();
    let out = rbm2(&["dichotomy", "--in", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    // the singleton {R1} passes through the symmetrized branch
    let single = dir.path().join("r1.rbset");
    let set = OperatorSet {
        ops: vec![catalog_operator(&CatalogKey::plain(CatalogName::R1), f).unwrap()],
        ..set
    };
    write_rbset(&set, std::fs::File::create(&single).unwrap()).unwrap();
    let out = rbm2(&["dichotomy", "--in", single.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["reports"][0]["counts"]["symmetrized"], 1);
}

#[test]
fn classify_reports_and_group_validation() {
    let dir = tempfile::tempdir().unwrap();
    let w1 = enumerate_into(dir.path(), "w1.rbset", &["--weight", "1", "--product", "jordan"]);
    let out = rbm2(&["classify", "--in", &w1, "--json", "--no-timing"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["reports"][0]["claim"], "weight1-orbit-distinctness-F3");
    assert_eq!(doc["reports"][0]["status"], "pass");
    assert_eq!(doc["reports"][1]["status"], "report-only");
    assert_eq!(code(&rbm2(&["classify", "--in", &w1, "--scalars"])), 2);

    // two representatives in one orbit fail the distinctness claim
    let out = rbm2(&["classify", "--in", &w1, "--transpose", "--phi", "--rep", "catalog:B1", "--rep", "catalog:case1"]);
    assert_eq!(code(&out), 1);

    // the representatives themselves leave nothing unmatched
    let f = make_field(3, 1).unwrap();
    let mut ops: Vec<Op4> = CatalogName::WEIGHT0_REPS
        .iter()
        .map(|n| catalog_operator(&CatalogKey::plain(*n), f).unwrap())
        .collect();
    ops.push(Op4::zero(f));
    ops.sort();
    let reps = dir.path().join("reps.rbset");
    let set = OperatorSet {
        problem: Problem::new(ProductKind::Jordan, IdentityKind::Rb, f.zero()),
        field: f,
        ops,
        metadata: SearchStats::default(),
    };
    write_rbset(&set, std::fs::File::create(&reps).unwrap()).unwrap();
    let out = rbm2(&["classify", "--in", reps.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["reports"][1]["counts"]["unmatched_orbits"], 0);
}

#[test]
fn orbits_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let w0 = enumerate_into(dir.path(), "w0.rbset", &["--weight", "0", "--product", "jordan"]);
    let a = rbm2(&["orbits", "--in", &w0, "--scalars", "--transpose", "--witnesses"]);
    let b = rbm2(&["orbits", "--in", &w0, "--scalars", "--transpose", "--witnesses", "--jobs", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = stdout_json(&a);
    let sizes: u64 = doc["orbits"].as_array().unwrap().iter().map(|o| o["members"].as_u64().unwrap()).sum();
    assert_eq!(sizes, doc["members"].as_u64().unwrap());
    assert!(doc["orbits"][0]["witness"]["move"]["group"]["matrix"].is_array());
}

#[test]
fn polysys_exports() {
    let args = ["polysys", "--weight", "0", "--product", "jordan", "--ansatz", "eq3", "--format", "cas-script"];
    let a = rbm2(&args);
    let b = rbm2(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("ring r = 0, (a11,a12,b11,b12,c11,c12,d11,d12), dp;\nideal I = "));
    assert!(text.ends_with(";\n"));

    let s = rbm2(&["polysys", "--product", "jordan", "--symbolic-weight", "--format", "structured"]);
    assert_eq!(code(&s), 0);
    let polys = stdout_json(&s);
    assert_eq!(polys[0][0]["exponents"].as_array().unwrap().len(), 17);

    let cmp = rbm2(&["polysys", "--weight", "0", "--product", "jordan", "--ansatz", "eq3", "--compare-literature", "--json"]);
    assert_eq!(code(&cmp), 0);
    assert_eq!(stdout_json(&cmp)["reports"][0]["counts"]["points"], 6561);
}

#[test]
fn subalgebras_and_umbrella_without_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sub.json");
    let out = rbm2(&["subalgebras", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["reports"][0]["counts"]["scanned"], 210);
    assert!(doc["reports"][0]["wall_time_ms"].is_u64());

    let out = rbm2(&["paper-check", "--skip-oracle", "--json", "--no-timing"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["status"], "pass");
    let claims: Vec<&str> = doc["reports"].as_array().unwrap().iter().map(|r| r["claim"].as_str().unwrap()).collect();
    assert!(!claims.contains(&"oracle-equivalence-F3"));
    assert!(claims.contains(&"polysys-soundness-F3"));
}

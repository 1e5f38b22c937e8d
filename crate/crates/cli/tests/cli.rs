use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use braceforge_cli::objects::{gamma_to_value, map_to_value};
use braceforge_cli::{json::canonical, run_with};
use braceforge_core::group::{make_dihedral, GroupMap};
use braceforge_core::GammaFunction;
use serde_json::{json, Value};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn report(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("braceforge").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("braceforge-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn claim<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no claim {id}"))
}

fn write(path: &PathBuf, value: &Value) {
    std::fs::write(path, canonical(value)).unwrap();
}

#[test]
fn alpha_family_at_three() {
    let out = cli(&["reproduce", "alpha", "--p", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = out.report();
    assert_eq!(claim(&r, "alpha.p3.a1.class")["verdict"], "NONSPLIT");
    assert_eq!(claim(&r, "alpha.p3.a1.obstruction")["verdict"], "WITNESS");
    assert_eq!(claim(&r, "alpha.p3.a1.complement")["verdict"], "NO_COMPLEMENT");
    for a in [0, 2] {
        assert_eq!(claim(&r, &format!("alpha.p3.a{a}.class"))["verdict"], "SPLIT");
        let op = claim(&r, &format!("alpha.p3.a{a}.operator"));
        assert_eq!(op["status"], "pass");
        assert_eq!(op["detail"]["images"].as_array().unwrap().len(), 27);
    }
    assert_eq!(claim(&r, "alpha.p3.nonsplit_residues")["detail"]["nonsplit"], json!([1]));
    assert_eq!(r["seed"], 0);
}

#[test]
fn p5_example_certificates() {
    let out = cli(&["reproduce", "p5", "--p", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = out.report();
    let class = claim(&r, "p5.p3.class");
    assert_eq!(class["verdict"], "UNSOLVABLE");
    assert_eq!(class["detail"]["unknowns"], 729);
    assert_eq!(class["detail"]["certificate"]["certificate_checked"], true);
    assert!(!class["detail"]["certificate"]["inconsistent_combination"]
        .as_array()
        .unwrap()
        .is_empty());
    let transported = claim(&r, "p5.p3.transported_class");
    assert_eq!(transported["verdict"], "UNSOLVABLE");
    assert_eq!(transported["detail"]["certificate"]["unknowns"], 9);
    let obs = claim(&r, "p5.p3.obstruction");
    assert_eq!(obs["detail"]["witness_name"], "((0,0), k)");
    assert_eq!(obs["detail"]["witness_pair"], json!([1, 0]));
    assert_eq!(obs["detail"]["extension_order"], 6561);
}

#[test]
fn reconstruction_of_the_nonsplit_case_exits_one() {
    let out = cli(&["reconstruct-rb", "--instance", "alpha:3:1"]);
    assert_eq!(out.code, 1);
    let r = out.report();
    let c = claim(&r, "rb.reconstruction");
    assert_eq!(c["verdict"], "CLASS_NONTRIVIAL");
    assert_eq!(c["detail"]["certificate"]["trivial"], false);
    assert_eq!(c["detail"]["certificate"]["certificate_checked"], true);
}

#[test]
fn reconstruction_of_a_split_case_saves_a_verified_operator() {
    let dir = scratch("reconstruct");
    let path = dir.join("b.json");
    let out = cli(&["reconstruct-rb", "--instance", "alpha:5:3", "--save", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = cli(&["verify-rb", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(claim(&out.report(), "rb.identity")["verdict"], "ROTA_BAXTER");
}

#[test]
fn reports_are_deterministic() {
    let a = cli(&["reproduce", "alpha", "--p", "5", "--seed", "7"]);
    let b = cli(&["reproduce", "alpha", "--p", "5", "--seed", "7"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.report()["seed"], 7);
}

#[test]
fn group_files_round_trip_byte_exactly() {
    let dir = scratch("roundtrip");
    let first = dir.join("h.json");
    let second = dir.join("h2.json");
    assert_eq!(cli(&["group", "heisenberg:3", "--save", first.to_str().unwrap()]).code, 0);
    let out = cli(&["group", first.to_str().unwrap(), "--save", second.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
    let r = out.report();
    let detail = &claim(&r, "group.valid")["detail"];
    assert_eq!(detail["order"], 27);
    assert_eq!(detail["center_order"], 3);
}

#[test]
fn corrupted_table_is_an_input_error_naming_the_triple() {
    let dir = scratch("corrupt");
    let path = dir.join("loop.json");
    write(
        &path,
        &json!({
            "order": 5,
            "identity": 0,
            "table": [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]],
        }),
    );
    let out = cli(&["group", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("at /table: not associative: ("), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn schema_errors_carry_json_pointers() {
    let dir = scratch("schema");
    let path = dir.join("bad.json");
    write(&path, &json!({"order": 2, "identity": 0, "table": [[0, 1], [1, -1]]}));
    let out = cli(&["group", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("at /table/1/1"), "{}", out.stderr);

    write(&path, &json!({"order": 1, "identity": 0}));
    let out = cli(&["group", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("at /table: missing field"), "{}", out.stderr);
}

#[test]
fn usage_errors_exit_two() {
    let out = cli(&["frobnicate"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("frobnicate"));
    let out = cli(&["solve-coboundary"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--cocycle"), "{}", out.stderr);
    let out = cli(&["reproduce", "alpha", "--p", "4"]);
    assert_eq!(out.code, 2);
    let out = cli(&["group", "no/such/file.json"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("no/such/file.json"));
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn brace_identity_failure_has_a_witness() {
    let out = cli(&["verify-brace", "--dot", "cyclic:6", "--circle", "dihedral:3"]);
    assert_eq!(out.code, 1);
    let r = out.report();
    let c = claim(&r, "brace.identity");
    assert_eq!(c["detail"]["skew_brace"], false);
    let w: Vec<usize> = serde_json::from_value(c["detail"]["witness"].clone()).unwrap();
    let dot = braceforge_core::group::make_cyclic(6).unwrap();
    let circle = make_dihedral(3).unwrap();
    let (g, h, k) = (w[0], w[1], w[2]);
    assert_ne!(
        circle.mul(g, dot.mul(h, k)),
        dot.product(&[circle.mul(g, h), dot.inv(g), circle.mul(g, k)])
    );
    let out = cli(&["verify-brace", "--instance", "alpha:3:2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn gamma_and_lift_files_drive_reconstruction() {
    let dir = scratch("files");
    let s3 = Arc::new(make_dihedral(3).unwrap());
    let inv = GroupMap::from_fn(s3.clone(), s3.clone(), |g| s3.inv(g)).unwrap();
    let gamma = GammaFunction::from_inner_rep(&inv);
    let gpath = dir.join("gamma.json");
    let lpath = dir.join("lift.json");
    write(&gpath, &gamma_to_value(&gamma));
    write(&lpath, &map_to_value(&s3, inv.images()));

    let out = cli(&["verify-gamma", "--gamma", gpath.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(claim(&out.report(), "gamma.functional_equation")["detail"]["inner"]["all_inner"], true);

    let out = cli(&[
        "reconstruct-rb",
        "--gamma",
        gpath.to_str().unwrap(),
        "--lift",
        lpath.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = out.report();
    let images = &claim(&r, "rb.reconstruction")["detail"]["images"];
    let expected: Vec<usize> = (0..6).map(|g| s3.inv(g)).collect();
    assert_eq!(images, &json!(expected));

    // Replace one value by the identity automorphism: still a valid table,
    // no longer a gamma function.
    let mut broken = gamma_to_value(&gamma);
    broken["action"][1] = json!([0, 1, 2, 3, 4, 5]);
    write(&gpath, &broken);
    let out = cli(&["verify-gamma", "--gamma", gpath.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(claim(&out.report(), "gamma.functional_equation")["verdict"], "NOT_GAMMA");
}

#[test]
fn cocycle_files_round_trip_through_the_solver() {
    let dir = scratch("cocycle");
    let path = dir.join("kappa.json");
    let out = cli(&["extract-cocycle", "--instance", "alpha:3:1", "--save", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let from_file = cli(&["solve-coboundary", "--cocycle", path.to_str().unwrap()]);
    let from_instance = cli(&["solve-coboundary", "--instance", "alpha:3:1"]);
    assert_eq!(from_file.code, 1);
    assert_eq!(from_file.stdout, from_instance.stdout);

    let out = cli(&["obstruction", "--cocycle", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(claim(&out.report(), "extension.obstruction")["detail"]["witness_name"], "k");

    let out = cli(&["find-complement", "--instance", "alpha:3:2"]);
    assert_eq!(out.code, 0);
    let out = cli(&["find-complement", "--instance", "alpha:3:1", "--cap", "5"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("exceeds the cap"), "{}", out.stderr);
}

#[test]
fn enumeration_on_small_cyclic_groups() {
    for (n, count) in [(1, 1), (2, 2), (3, 3), (4, 4)] {
        let out = cli(&["enumerate-rb", &format!("cyclic:{n}")]);
        assert_eq!(out.code, 0);
        assert_eq!(claim(&out.report(), "rb.enumeration")["detail"]["count"], count);
    }
}

#[test]
fn text_format_and_timing() {
    let out = cli(&["--format", "text", "reproduce", "centerless", "--timing"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("PASS  centerless.operator  INVERSE"));
    assert!(out.stdout.contains("time  centerless"));
    assert!(out.stdout.ends_with("2/2 claims hold\n"));
}

#[test]
fn order_cap_comes_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_braceforge");
    let capped = Command::new(bin)
        .args(["group", "heisenberg:3"])
        .env("BRACEFORGE_ORDER_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("27"));
    let bad = Command::new(bin)
        .args(["group", "trivial"])
        .env("BRACEFORGE_ORDER_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(bin)
        .args(["group", "heisenberg:3"])
        .env_remove("BRACEFORGE_ORDER_CAP")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

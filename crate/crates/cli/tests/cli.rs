use hyperdarboux::{run, Outcome};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("hyperdarboux").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = cli(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect()
}

const HAHN003: [&str; 8] = [
    "--family", "hahn", "--param", "alpha=0", "--param", "beta=0", "--param", "N=3",
];

/// `hyperdarboux <sub> --family hahn alpha=0 beta=0 N=3 <rest>`
fn hahn(sub: &str, rest: &[&str]) -> Outcome {
    let args: Vec<&str> = std::iter::once(sub)
        .chain(HAHN003)
        .chain(rest.iter().copied())
        .collect();
    cli(&args)
}

#[test]
fn verify_charlier_passes() {
    let out = cli(&["verify", "--family", "charlier", "--param", "mu=1"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("result   PASS\n"));
}

#[test]
fn verify_hahn_reports_skips_and_passes() {
    let out = hahn("verify", &["--n-max", "6", "--json"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let notices = v["notices"].as_array().unwrap();
    assert_eq!(notices.len(), 2);
    assert_eq!(notices[0]["check"], "factorization");
    assert_eq!(notices[0]["n"], 0);
    assert_eq!(notices[0]["branch"], 2);
    assert_eq!(notices[1]["check"], "ladder_down");
    assert_eq!(
        v["params"].as_object().unwrap().keys().collect::<Vec<_>>(),
        ["alpha", "beta", "N"]
    );
}

#[test]
fn verify_strict_fails_on_degenerate_cell() {
    assert_eq!(hahn("verify", &["--n-max", "3", "--strict"]).code, 1);
}

#[test]
fn inadmissible_parameters_exit_2() {
    for args in [
        &["verify", "--family", "charlier", "--param", "mu=0"][..],
        &[
            "verify", "--family", "meixner", "--param", "gamma=1", "--param", "mu=1",
        ],
        &[
            "verify", "--family", "kravchuk", "--param", "p=1/2", "--param", "N=5/2",
        ],
        &[
            "verify", "--family", "hahn", "--param", "alpha=-1", "--param", "beta=-1", "--param",
            "N=3",
        ],
        &["verify", "--family", "charlier"],
        &["verify", "--family", "charlier", "--param", "mu=0.5"],
        &["verify", "--family", "charlier", "--param", "n=1"],
        &[
            "verify", "--family", "custom", "--sigma", "0,1,0", "--tau", "0,1",
        ],
        &[
            "generate", "--family", "charlier", "--param", "mu=1", "--points", "3..1",
        ],
        &[
            "ladder",
            "--family",
            "charlier",
            "--param",
            "mu=1",
            "--n",
            "0",
            "--direction",
            "down",
        ],
        &["verify", "--family", "nope"],
        &["frobnicate"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(cli(&["--help"]).code, 0);
    assert!(cli(&["--version"])
        .stdout
        .contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn soft_admissibility_warns_but_runs() {
    let out = cli(&[
        "verify", "--family", "charlier", "--param", "mu=-1", "--n-max", "3",
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.starts_with("warning:"), "{}", out.stderr);
}

#[test]
fn factorize_charlier() {
    let v = json(&[
        "factorize",
        "--family",
        "charlier",
        "--param",
        "mu=1",
        "--n",
        "2",
        "--branch",
        "1",
        "--json",
    ]);
    assert_eq!(strings(&v["f"]), ["2", "-1"]);
    assert_eq!(strings(&v["g"]), ["-1"]);
    assert_eq!(v["mu"], "3");
    assert!(v["checks"].as_object().unwrap().values().all(|b| b == true));
    assert!(v["reference"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["matches"] == true));
}

#[test]
fn factorize_hahn() {
    let out = hahn("factorize", &["--n", "1", "--branch", "1", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(
        (v["phi"].as_str(), v["psi"].as_str(), v["mu"].as_str()),
        (Some("-2"), Some("2"), Some("5"))
    );
    assert_eq!(strings(&v["f"]), ["1", "-3", "1"]);
    assert_eq!(strings(&v["g"]), ["-1", "1", "1"]);
}

#[test]
fn factorize_both_branches_is_an_array() {
    let v = json(&[
        "factorize",
        "--family",
        "charlier",
        "--param",
        "mu=1",
        "--n",
        "2",
        "--branch",
        "both",
        "--json",
    ]);
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert_eq!(cells[1]["branch"], 2);
}

#[test]
fn factorize_degenerate_cell() {
    let out = hahn("factorize", &["--n", "0", "--branch", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("degenerate"));
    assert_eq!(
        hahn("factorize", &["--n", "0", "--branch", "2", "--strict"]).code,
        1
    );
}

#[test]
fn meixner_erratum_is_flagged_not_failed() {
    let v = json(&[
        "factorize",
        "--family",
        "meixner",
        "--param",
        "gamma=1/2",
        "--param",
        "mu=1/3",
        "--n",
        "1",
        "--branch",
        "1",
        "--json",
    ]);
    let g1 = v["reference"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["expression"] == "g1")
        .unwrap();
    assert_eq!(g1["matches"], false);
    assert!(g1["known_erratum"].is_string());
}

#[test]
fn ladder_charlier_up() {
    let v = json(&[
        "ladder",
        "--family",
        "charlier",
        "--param",
        "mu=1",
        "--n",
        "2",
        "--direction",
        "up",
        "--json",
    ]);
    assert_eq!(v["c"], "-1");
    assert_eq!(strings(&v["target"]), ["-1", "8", "-6", "1"]);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["n", "direction", "c", "target"]);
}

#[test]
fn ladder_annihilated_step() {
    let out = hahn("ladder", &["--n", "3", "--direction", "down", "--json"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["c"], "0");
    assert!(v["target"].is_null());
}

#[test]
fn generate_hahn() {
    let v: Value =
        serde_json::from_str(&hahn("generate", &["--n-max", "3", "--json"]).stdout).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(strings(&terms[2]["poly"]), ["1/3", "-2", "1"]);
    assert_eq!(terms[2]["c1"], "-3");
    assert!(terms[0]["c1"].is_null());
}

#[test]
fn generate_csv_with_points() {
    let out = cli(&[
        "generate", "--family", "charlier", "--param", "mu=1", "--n-max", "2", "--points", "0..2",
        "--csv",
    ]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "n,c1,poly,x=0,x=1,x=2");
    assert_eq!(lines[1], "0,,[1],1,1,1");
    assert_eq!(lines[2], "1,-1,\"[-1, 1]\",-1,0,1");
    assert_eq!(lines.last().unwrap(), &"rho,,,1,1,1");
}

#[test]
fn verify_csv_has_every_row() {
    let out = cli(&[
        "verify", "--family", "charlier", "--param", "mu=1", "--n-max", "2", "--csv",
    ]);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_bytes());
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["check", "n", "branch", "status", "detail"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert!(rows.iter().all(|r| &r[3] == "pass"));
    assert!(rows.iter().any(|r| &r[0] == "reference"));
}

#[test]
fn custom_family_verifies() {
    // sigma = x, tau = 1 - x: Charlier with mu = 1 written out by hand
    let out = cli(&[
        "verify", "--family", "custom", "--sigma", "0,1,0", "--tau", "-1,1", "--n-max", "5",
        "--json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["params"]["sigma"], serde_json::json!(["0", "1"]));
    assert!(v.get("reference").is_none());
}

#[test]
fn timing_is_opt_in() {
    let base = [
        "verify", "--family", "charlier", "--param", "mu=1", "--n-max", "2", "--json",
    ];
    assert!(!cli(&base).stdout.contains("elapsed_ms"));
    let mut timed = base.to_vec();
    timed.push("--timing");
    assert!(cli(&timed).stdout.contains("elapsed_ms"));
}

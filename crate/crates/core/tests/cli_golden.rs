use std::process::{Command, Output};

use serde_json::Value;

fn rplus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rplus")).args(args).output().expect("binary runs")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

const CASES: [(&str, &[&str], i32); 8] = [
    ("member_sqrt2_half", &["--json", "member", "--field", "x^2-2", "--beta", "1/2"], 0),
    ("member_linear_third", &["--json", "member", "--field", "2x-1", "--beta", "1/3"], 1),
    ("member_gauss_fifth", &["--json", "member", "--field", "x^2+1", "--beta", "1/5"], 1),
    ("describe_sqrt17", &["--json", "describe", "--field", "x^2-17", "--prime-bound", "13"], 0),
    ("generators_sqrt2", &["--json", "generators", "--field", "x^2-2", "--prime-bound", "10"], 0),
    ("neg_one_linear", &["--json", "neg-one", "--field", "2x-1"], 0),
    ("places_sqrt17", &["--json", "places", "--field", "x^2-17", "--prime", "2"], 0),
    ("member_sqrt2_certify", &["--json", "member", "--field", "x^2-2", "--beta", "1/2", "--certify"], 0),
];

#[test]
fn outputs_match_golden_files() {
    for (name, args, code) in CASES {
        let o = rplus(args);
        assert_eq!(o.status.code(), Some(code), "{name}");
        assert_eq!(String::from_utf8(o.stdout).unwrap(), golden(name), "{name}");
    }
}

#[test]
fn output_is_byte_stable() {
    for (name, args, _) in CASES {
        assert_eq!(rplus(args).stdout, rplus(args).stdout, "{name}");
    }
}

#[test]
fn verdicts() {
    assert_eq!(json(&rplus(&["member", "--field", "x^2-2", "--beta", "1/2"]))["member"], true);
    assert_eq!(json(&rplus(&["member", "--field", "2x-1", "--beta", "1/3"]))["member"], false);
    let v = json(&rplus(&["member", "--field", "x^2+1", "--beta", "1/5"]));
    assert_eq!(v["member"], false);
    assert_eq!(v["witness"]["p"], 5);

    let d = json(&rplus(&["describe", "--field", "x^2-17", "--prime-bound", "13"]));
    let inv: Vec<(u64, bool)> =
        d["primes"].as_array().unwrap().iter().map(|p| (p["p"].as_u64().unwrap(), p["inverse_in"].as_bool().unwrap())).collect();
    assert_eq!(inv, [(2, false), (3, true), (5, true), (7, true), (11, true), (13, false)]);

    let g = json(&rplus(&["generators", "--field", "x^2-2", "--prime-bound", "10"]));
    let ps: Vec<u64> = g["generators"].as_array().unwrap().iter().map(|x| x["p"].as_u64().unwrap()).collect();
    assert_eq!(ps, [2, 3, 5, 7]);

    let c = json(&rplus(&["neg-one", "--field", "2x-1"]));
    assert!(c["terms"].as_array().unwrap().iter().any(|t| t[0] == 2 && t[1] == 8));
}

#[test]
fn certificate_round_trips_through_oracle_verify() {
    let c = rplus(&["--json", "neg-one", "--field", "x^2+1"]);
    let cert = String::from_utf8(c.stdout).unwrap();
    let o = rplus(&["oracle-verify", "--field", "x^2+1", "--certificate", cert.trim()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["member", "--field", "x^2", "--beta", "1"][..],
        &["member", "--field", "x^2-2", "--beta", "1/0"],
        &["places", "--field", "x^2-2", "--prime", "4"],
        &["member", "--field", "x^2-2"],
        &["no-such-command"],
    ] {
        let o = rplus(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn functor_existence_follows_membership() {
    let yes = rplus(&["functor-exists", "--t-prime", "x^2-2", "--t", "[0,2]"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(json(&yes)["functor_exists"], true);
    let no = rplus(&["functor-exists", "--t-prime", "x^2-2", "--t", "[1/7,0]"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(json(&no)["functor_exists"], false);
}

mod common;

use common::{coords, element, fields, positive};
use cubeword::cli::parse::format_values;
use cubeword::cli::{parse_direction, run_with};
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cubeword").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn classify_case5() {
    let (code, out, _) = run(&["classify", "(1, sqrt2, sqrt3)"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["classification"]["case_tag"], 5);
    assert_eq!(v["result"]["classification"]["predicted"], "n^2+n+1");
    assert_eq!(v["result"]["classification"]["alpha"]["decimal"], "1.41421356237309504880168872421");
}

#[test]
fn verify_case2_is_linear_and_passes() {
    let (code, out, _) = run(&["verify", "(1, sqrt2, 1/2)", "--length", "1000000", "--nmax", "200"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["growth"]["law"], "linear");
}

#[test]
fn verify_failure_exits_4() {
    let (code, out, _) = run(&["verify", "(1, sqrt2, sqrt3)", "--length", "100000", "--nmax", "40"]);
    assert_eq!(code, 4);
    assert_eq!(json(&out)["result"]["passed"], false);
}

#[test]
fn verify_with_partner() {
    let (code, out, _) = run(&[
        "verify",
        "(1, sqrt2, 1 + sqrt2)",
        "--partner",
        "(1, sqrt3, 1 + sqrt3)",
        "--length",
        "200000",
        "--nmax",
        "60",
    ]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    let checks = v["result"]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "partner_same_complexity" && c["passed"] == true));
}

#[test]
fn word_of_rational_direction() {
    let (code, out, _) = run(&["word", "(1, 2/3, 5/7)", "--length", "100"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let expected =
        cubeword_oracles::rational_orbit_word(&[(1, 1), (2, 3), (5, 7)], &[(1, 7), (1, 11), (1, 13)], 100).unwrap();
    let letters: Vec<u8> = v["result"]["letters"].as_str().unwrap().bytes().map(|b| b - b'0').collect();
    assert_eq!(letters, expected);
    assert_eq!(v["result"]["orbit_period"], "50");

    let (_, out, _) = run(&["word", "(1, 2/3, 5/7)", "--length", "300"]);
    assert_eq!(json(&out)["result"]["periodicity"]["period"], 50);
}

#[test]
fn two_dimensional_profile_is_sturmian() {
    let (code, out, _) =
        run(&["profile", "(1, (sqrt5 - 1)/2)", "--length", "100000", "--nmax", "200", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,p,s,d2,stable"));
    for (n, line) in (1..).zip(lines) {
        let p: u64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(p, n + 1);
    }
}

#[test]
fn errors_are_json_with_exit_codes() {
    let (code, out, _) = run(&["classify", "(1, 2 +, 3)"]);
    assert_eq!(code, 2);
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["position"], 7);

    let (code, out, _) = run(&["classify", "(1, 0, 1)"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "non_positive_coordinate");

    let (code, out, _) = run(&["word", "(1, 1, 2)", "--start", "(0, 0, 0)", "--length", "10"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["error"]["kind"], "singular_orbit");

    let (code, _, _) = run(&["diagonals", "(1, sqrt2, 1 + sqrt2)", "--nmax", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn nmax_shrinks_with_warning() {
    let (code, out, err) = run(&["profile", "(1, sqrt2, sqrt3)", "--length", "2000", "--nmax", "100"]);
    assert_eq!(code, 0);
    assert!(err.contains("warning: nmax reduced"), "{err}");
    let v = json(&out);
    let stable = v["result"]["profile"]["stable_up_to"].as_u64().unwrap();
    assert_eq!(v["result"]["profile"]["p"].as_array().unwrap().len() as u64, stable + 1);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn identical_flags_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for (i, args) in
        [["profile", "--format", "json"], ["profile", "--format", "csv"], ["diagonals", "--format", "json"]]
            .iter()
            .flat_map(|a| [a, a])
            .enumerate()
    {
        let path = dir.path().join(format!("out{i}"));
        let path_str = path.to_str().unwrap();
        let (code, out, _) = run(&[
            args[0],
            "(1, 1/t, 1/(1-t)) in field t^3+t-1 @ [0.6, 0.7]",
            "--length",
            "50000",
            "--nmax",
            "30",
            args[1],
            args[2],
            "--out",
            path_str,
        ]);
        assert_eq!(code, 0);
        assert!(out.is_empty());
        bodies.push(std::fs::read(&path).unwrap());
    }
    for pair in bodies.chunks(2) {
        assert_eq!(pair[0], pair[1]);
    }
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 6, "temporary files left behind: {leftovers:?}");
}

#[test]
fn diagonals_do_not_depend_on_thread_count() {
    let outputs: Vec<String> = [1, 4]
        .iter()
        .map(|&k| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build().unwrap();
            pool.install(|| run(&["diagonals", "(1, sqrt2, sqrt3)", "--nmax", "40"]).1)
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn format_then_parse_round_trips(f in 0usize..3, a in coords(4), b in coords(4), c in coords(4)) {
        let field = fields()[f].clone();
        let d = field.degree();
        let values: Vec<_> = [a, b, c].iter().map(|v| positive(element(&field, &v[..d]))).collect();
        let text = format_values(&values);
        let parsed = parse_direction(&text).unwrap();
        for (x, y) in parsed.coords().iter().zip(&values) {
            prop_assert_eq!(x.coords(), y.coords());
            prop_assert!(x.field().same_as(y.field()));
        }
        prop_assert_eq!(format_values(parsed.coords()), text);
    }
}

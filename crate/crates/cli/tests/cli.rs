use std::path::{Path, PathBuf};

use proptest::prelude::*;
use serde_json::Value;
use tacalc::error::CliError;
use tacalc::files::{parse_algebra, parse_assignment, render_algebra, Target};
use tacalc::Outcome;
use tacalc_core::scalars::{PrimeField, RationalField};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Outcome {
    let mut argv = vec!["tacalc"];
    argv.extend_from_slice(args);
    tacalc::run(argv)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["--format", "json"];
    argv.extend_from_slice(args);
    let out = run(&argv);
    (out.code, serde_json::from_str(&out.stdout).expect("json on stdout"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn examples_parse() {
    let f = RationalField;
    let s = parse_algebra(&f, &std::fs::read_to_string(example("S.alg")).unwrap(), "S").unwrap();
    assert_eq!((s.spec.nvars(), s.spec.relations().len()), (5, 10));
    let q = parse_algebra(&f, &std::fs::read_to_string(example("Q.alg")).unwrap(), "Q").unwrap();
    assert_eq!((q.spec.nvars(), q.spec.relations().len()), (4, 7));
    let h = parse_algebra(&f, &std::fs::read_to_string(example("hypersurface.alg")).unwrap(), "h").unwrap();
    assert_eq!(h.module("k").unwrap().degrees, vec![0]);
}

#[test]
fn rendered_algebra_parses_back() {
    let f = RationalField;
    let text = std::fs::read_to_string(example("R.alg")).unwrap();
    let a = parse_algebra(&f, &text, "R").unwrap();
    let again = parse_algebra(&f, &render_algebra(&a), "R").unwrap();
    assert_eq!(again.spec.var_names(), a.spec.var_names());
    assert_eq!(again.spec.relations(), a.spec.relations());
    assert_eq!(render_algebra(&again), render_algebra(&a));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let f = RationalField;
    let err = parse_algebra(&f, "vars x y\nrel x^2\nrel x*+y\n", "bad.alg").unwrap_err();
    let CliError::Parse(p) = err else { panic!("{err:?}") };
    assert_eq!((p.path.as_str(), p.line), ("bad.alg", 3));
    assert!(p.column >= 5, "{p}");
    let err = parse_algebra(&f, "vars x\nrel z^2\n", "u.alg").unwrap_err();
    assert!(err.to_string().starts_with("u.alg:2:"), "{err}");
    let err = parse_algebra(&f, "rel x^2\n", "v.alg").unwrap_err();
    assert!(err.to_string().contains("before 'vars'"), "{err}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["hilbert"]).code, 2);
    assert_eq!(run(&["hilbert", "/no/such/file.alg"]).code, 2);
    let bad = write(dir.path(), "bad.alg", "vars x\nrel x^^2\n");
    let out = run(&["hilbert", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bad.alg:2:"), "{}", out.stderr);
    // no relations: not Artinian
    let free = write(dir.path(), "free.alg", "vars x y\n");
    assert_eq!(run(&["hilbert", &free]).code, 3);
    assert_eq!(run(&["--hom-cap", "9", "--int-cap", "3", "resolve", &example("S.alg")]).code, 3);
    let out = run(&["pfaffian", "--size", "4"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("odd"), "{}", out.stderr);
    assert_eq!(run(&["pfaffian", "--size", "11"]).code, 3);
}

#[test]
fn errors_in_json_mode_are_reported_on_stdout() {
    let (code, v) = json(&["pfaffian", "--size", "6"]);
    assert_eq!(code, 2);
    assert_eq!(v["command"], "pfaffian");
    assert_eq!(v["exit"], 2);
    assert!(v["error"].as_str().unwrap().contains("odd"));
}

#[test]
fn non_quadratic_relations_are_rejected_by_dual() {
    let dir = tempfile::tempdir().unwrap();
    let cubic = write(dir.path(), "c.alg", "vars x y\nrel x^2\nrel y^3\n");
    let out = run(&["dual", &cubic]);
    assert_eq!(out.code, 2, "{}", out.stderr);
    assert!(out.stderr.contains("quadratic"), "{}", out.stderr);
}

#[test]
fn characteristic_two_is_rejected_and_three_flagged() {
    let ci = example("ci2.alg");
    assert_eq!(run(&["--prime", "2", "pi", &ci]).code, 2);
    let (code, v) = json(&["--prime", "3", "central", &ci]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["center_dim"], 2);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn prime_mode_matches_rationals() {
    let s = example("S.alg");
    let (_, q) = json(&["--hom-cap", "3", "resolve", &s]);
    let (_, p) = json(&["--prime", "32003", "--hom-cap", "3", "resolve", &s]);
    assert_eq!(q["results"]["betti"], p["results"]["betti"]);
    assert_eq!(p["results"]["field"], "F_32003");
}

#[test]
fn tensor_output_reproduces_the_shipped_product() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.alg");
    let o = run(&["tensor", &example("S.alg"), &example("Q.alg"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let f = RationalField;
    let written = parse_algebra(&f, &std::fs::read_to_string(&out).unwrap(), "r").unwrap();
    let shipped = parse_algebra(&f, &std::fs::read_to_string(example("R.alg")).unwrap(), "R").unwrap();
    assert_eq!(written.spec.relations(), shipped.spec.relations());
    assert_eq!(written.spec.relations().len(), 17);
}

#[test]
fn tensor_factors_must_share_a_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.alg", "field F 7\nvars z\nrel z^2\n");
    assert_eq!(run(&["gorenstein", "--tensor", &example("ci2.alg"), &p]).code, 2);
    assert_eq!(run(&["--prime", "7", "gorenstein", "--tensor", &example("ci2.alg"), &p]).code, 0);
}

#[test]
fn assignments_parse_with_missing_entries_zero() {
    let f = PrimeField::new(101).unwrap();
    let text = "vars a b c\nt12 = a\nt23 = c\n";
    let a = parse_assignment(&f, text, Path::new("x.asg"), 3).unwrap();
    assert!(matches!(a.target, Target::Ring(_)));
    assert_eq!(a.images.len(), 3);
    assert!(a.images[1].is_zero());
    assert!(parse_assignment(&f, "vars a\nt14 = a\n", Path::new("y.asg"), 3).is_err());
}

#[test]
fn pfaffian_specializes_into_an_algebra() {
    let (code, v) = json(&["pfaffian", "--size", "3", "--spec", &example("cube_pfaffian.asg")]);
    assert_eq!(code, 0);
    let s = &v["results"]["specialized"];
    assert_eq!(s["composites_zero"], true);
    assert_eq!(s["minimal"], true);
    let degrees: Vec<Value> = s["modules"].as_array().unwrap().iter().map(|m| m["degrees"].clone()).collect();
    assert_eq!(Value::Array(degrees), serde_json::json!([[0], [1, 1, 1], [2, 2, 2], [3]]));
}

#[test]
fn pfaffian_specializes_into_a_ring() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "r.asg", "vars x y z\nt12 = z\nt13 = -y\nt23 = x\n");
    let (code, v) = json(&["pfaffian", "--size", "3", "--spec", &spec]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["specialized"]["sigma"], serde_json::json!(["x", "y", "z"]));
}

#[test]
fn trm_check_needs_a_module_or_complex() {
    assert_eq!(run(&["trm-check", &example("hypersurface.alg")]).code, 2);
    assert_eq!(run(&["trm-check", &example("hypersurface.alg"), "--module", "nope"]).code, 2);
}

/// Every integer in a value, in document order.
fn integers(v: &Value, out: &mut Vec<i64>) {
    match v {
        Value::Number(n) => out.extend(n.as_i64()),
        Value::Array(items) => items.iter().for_each(|x| integers(x, out)),
        Value::Object(m) => m.values().for_each(|x| integers(x, out)),
        _ => {}
    }
}

fn text_integers(text: &str) -> Vec<i64> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_digit() || (ch == '-' && cur.is_empty()) {
            cur.push(ch);
        } else {
            if let Ok(n) = cur.parse() {
                out.push(n);
            }
            cur.clear();
        }
    }
    out
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    for args in [
        vec!["--hom-cap", "3", "resolve"],
        vec!["deviations"],
        vec!["gorenstein"],
        vec!["hilbert"],
    ] {
        let s = example("S.alg");
        let mut a = args.clone();
        a.push(&s);
        let (_, v) = json(&a);
        let mut from_json = Vec::new();
        integers(&v["results"], &mut from_json);
        let text = run(&a).stdout;
        // only the results block; checks and warnings follow it
        let body: String = text
            .lines()
            .skip(1)
            .take_while(|l| *l != "checks:" && !l.starts_with("warning:") && !l.starts_with("exit:"))
            .filter(|l| !l.trim_start().starts_with("vars:") && !l.trim_start().starts_with("socle:"))
            .map(|l| format!("{l}\n"))
            .collect();
        let mut from_text = text_integers(&body);
        let mut from_json_sorted = from_json.clone();
        from_text.sort();
        from_json_sorted.sort();
        assert_eq!(from_text, from_json_sorted, "{args:?}\n{body}");
    }
}

fn monomial_algebra() -> impl Strategy<Value = (usize, Vec<bool>)> {
    (1..=3usize).prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
}

fn algebra_file(n: usize, mixed: &[bool]) -> String {
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut s = format!("vars {}\n", vars.join(" "));
    for v in &vars {
        s.push_str(&format!("rel {v}^2\n"));
    }
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    for ((i, j), on) in pairs.zip(mixed) {
        if *on {
            s.push_str(&format!("rel {}*{}\n", vars[i], vars[j]));
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn json_output_is_deterministic(
        (n, mixed) in monomial_algebra(),
        cmd in prop::sample::select(vec!["hilbert", "resolve", "pi", "obstruction", "gorenstein", "dual"]),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let path = write(dir.path(), "a.alg", &algebra_file(n, &mixed));
        let first = run(&["--format", "json", cmd, &path]);
        let second = run(&["--format", "json", cmd, &path]);
        prop_assert_eq!(first.code, 0, "{}", first.stderr);
        prop_assert_eq!(first, second);
    }

    #[test]
    fn exit_zero_means_every_check_passed(
        (n, mixed) in monomial_algebra(),
        cmd in prop::sample::select(vec!["pi", "obstruction", "deviations"]),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let path = write(dir.path(), "a.alg", &algebra_file(n, &mixed));
        let (code, v) = json(&[cmd, &path]);
        let all = v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true);
        prop_assert_eq!(code == 0, all);
    }
}

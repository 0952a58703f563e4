use std::process::{Command, Output};

fn laysem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laysem")).args(args).env_remove("LAYSEM_SEED").output().unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn axioms_pass_on_small_instance() {
    let o = laysem(&["check-axioms", "--sorting", "trunc:4", "--monoid", "trunc-nat:5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = text(&o);
    assert!(out.lines().count() >= 14);
    assert!(!out.contains(" FAIL"));
    let names: Vec<&str> = out.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn empty_ideal_breaks_distributivity() {
    let o = laysem(&["check-axioms", "--sorting", "trunc:4", "--monoid", "trunc-nat:5", "--force-empty-ideal"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(text(&o).contains("CHECK semiring.distributivity FAIL witness: ("));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["check-axioms", "--bogus"][..],
        &["check-axioms", "--sorting", "trunc:x"],
        &["eval", "1@1 + 2@1 + 3@1"],
        &["truncate"],
        &["check-map", "--kind", "hom", "--map", "no-such-map"],
    ] {
        assert_eq!(laysem(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn eval_examples() {
    let o = laysem(&["eval", "(3@1 + 3@1) * 2@1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(text(&o), "5@2\n");
    assert_eq!(text(&laysem(&["eval", "0/1@1"])), "0@1\n");
    let o = laysem(&["--sorting", "trunc:4", "--monoid", "trunc-nat:5", "eval", "(1@1 * 4@1) + 5@0"]);
    assert_eq!(text(&o), "5@0\n");
    let o = laysem(&["--sorting", "trunc:4", "--monoid", "trunc-nat:5", "eval", "5@1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_map_examples() {
    let o = laysem(&["check-map", "--kind", "layered", "--map", "trunc-nu:5"]);
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    for (kind, map) in [("hom", "ghost"), ("transmission", "ghost"), ("supervaluation", "psi1"), ("surpassing", "frobenius:3")] {
        let o = laysem(&["check-map", "--kind", kind, "--map", map]);
        assert_eq!(o.status.code(), Some(0), "{kind} {map}: {}", text(&o));
    }
    let small = ["--sorting", "trunc:4", "--monoid", "trunc-nat:5"];
    let table = fixture("partial.table");
    let o = laysem(&[&small[..], &["check-map", "--kind", "hom", "--map", &table]].concat());
    assert_eq!(o.status.code(), Some(2));
    let o = laysem(&[&small[..], &["check-map", "--kind", "transmission", "--map", &table]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
}

#[test]
fn tropicalize_examples() {
    let poly = fixture("diff_squares.poly");
    let o = laysem(&["tropicalize", "--poly", &poly, "--roots", &fixture("diff_squares.roots")]);
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    let out = text(&o);
    assert!(out.contains("CHECK kapranov.root0 PASS") && out.contains("CHECK kapranov.root1 PASS"));

    let o = laysem(&["tropicalize", "--poly", &poly, "--roots", &fixture("empty.roots")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!text(&o).contains("CHECK"));
    assert!(text(&o).contains("lambda^2"));

    let o = laysem(&["tropicalize", "--poly", &poly, "--roots", &fixture("not_a_root.roots")]);
    assert_eq!(o.status.code(), Some(1));

    let o = laysem(&["tropicalize", "--poly", &fixture("malformed.poly")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn frobenius_is_surpassing_not_hom() {
    assert_eq!(laysem(&["check-map", "--kind", "hom", "--map", "frobenius:3"]).status.code(), Some(1));
}

#[test]
fn truncate_serializes_finite_instance() {
    let o = laysem(&["--sorting", "trunc:4", "--monoid", "trunc-nat:5", "--sort-trunc", "2", "truncate"]);
    assert_eq!(o.status.code(), Some(0));
    let out = text(&o);
    let carrier = out.lines().find(|l| l.starts_with("carrier ")).unwrap();
    assert!(carrier.starts_with("carrier 11 : "), "{carrier}");
    assert_eq!(out.lines().filter(|l| l.starts_with("add ")).count(), 121);
    let o = laysem(&["--nu-trunc", "3", "truncate"]);
    assert!(text(&o).contains("carrier infinite"));
}

#[test]
fn seed_flag_and_env_agree() {
    let a = laysem(&["--seed", "7", "check-axioms"]);
    let b = Command::new(env!("CARGO_BIN_EXE_laysem")).arg("check-axioms").env("LAYSEM_SEED", "7").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, laysem(&["--seed", "7", "check-axioms"]).stdout);
}

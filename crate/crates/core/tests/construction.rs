use laysem_core::axioms::{full_report, semiring_laws, CheckConfig};
use laysem_core::tropical::{kapranov_check, PuiseuxPoly, PuiseuxSeries};
use laysem_core::*;

fn build(l: &str, m: &str) -> LayeredSemiring {
    LayeredSemiring::build(l.parse().unwrap(), m.parse().unwrap(), IdealSpec::Auto).unwrap()
}

#[test]
fn reports_pass_across_instances() {
    for (l, m) in [
        ("trunc:4", "trunc-nat:5"),
        ("trivial01inf", "trunc-nat:3"),
        ("nat-inf", "qmax"),
        ("nat-inf", "qmax-nonneg"),
        ("trunc:3", "qmax"),
    ] {
        let r = build(l, m);
        let rep = full_report(&r, CheckConfig::default());
        assert!(rep.all_pass(), "{}\n{rep}", r.name());
    }
}

#[test]
fn unreachable_ideal_value_is_reported() {
    // value 1 of trunc-nat:1 is not a sum of nonideal values, so 1@0 is no
    // product of elements outside the zero layer
    let r = build("trunc:2", "trunc-nat:1");
    let rep = full_report(&r, CheckConfig::default());
    let fails: Vec<&str> = rep.failures().iter().map(|e| e.law.as_str()).collect();
    assert_eq!(fails, ["zero-layer.products"]);
    assert!(full_report(&build("trunc:2", "trunc-nat:2"), CheckConfig::default()).all_pass());
}

#[test]
fn forced_empty_ideal_fails_only_on_noncancellative_monoids() {
    let bad = LayeredSemiring::build("trunc:4".parse().unwrap(), ValuedMonoid::TruncNat(5), IdealSpec::ForceEmpty).unwrap();
    assert!(!semiring_laws(&bad, CheckConfig::default()).all_pass());
    let fine = LayeredSemiring::build("trunc:4".parse().unwrap(), ValuedMonoid::qmax(), IdealSpec::ForceEmpty).unwrap();
    assert!(semiring_laws(&fine, CheckConfig::default()).all_pass());
}

#[test]
fn reports_are_sorted_and_deterministic() {
    let r = build("nat-inf", "qmax");
    let a = full_report(&r, CheckConfig::default()).render();
    assert_eq!(a, full_report(&r, CheckConfig::default()).render());
    let names: Vec<&str> = a.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn series_text_round_trips() {
    for s in ["-1/2*t^(-2/3) + 4*t^(0) - 1*t^(5)", "1*t^(-1)", "0"] {
        let p: PuiseuxSeries = s.parse().unwrap();
        assert_eq!(p.to_string().parse::<PuiseuxSeries>().unwrap(), p);
    }
    let x: PuiseuxSeries = "2*t^(1/2) + 3*t^(-1/3)".parse().unwrap();
    assert_eq!(x.val().unwrap(), num_rational::Rational64::new(1, 3));
}

#[test]
fn difference_of_squares_has_corner_roots() {
    let r = build("nat-inf", "qmax");
    let f = PuiseuxPoly::parse_file("lambda^2 : 1*t^(0)\nlambda^0 : -1*t^(-2)\n").unwrap();
    let roots: Vec<PuiseuxSeries> = ["1*t^(-1)", "-1*t^(-1)"].iter().map(|s| s.parse().unwrap()).collect();
    assert!(kapranov_check(&r, &f, &roots).unwrap().all_pass());
    let not_root: PuiseuxSeries = "1*t^(-2)".parse().unwrap();
    assert!(matches!(kapranov_check(&r, &f, &[not_root]), Err(Error::NotARoot(_))));
}

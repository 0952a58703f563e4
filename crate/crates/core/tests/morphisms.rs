use laysem_core::axioms::CheckConfig;
use laysem_core::extensions::{build_u, l_truncate, nu_truncate, relayer, ElemIdeal, UElem};
use laysem_core::morphisms::*;
use laysem_core::subquotient::{quotient_by_upper_ideal, QElem};
use laysem_core::*;

fn e(s: &str) -> Elem {
    s.parse().unwrap()
}

fn cfg() -> CheckConfig {
    CheckConfig::default()
}

fn small() -> LayeredSemiring {
    LayeredSemiring::build(SortingSemiring::truncated(4).unwrap(), ValuedMonoid::TruncNat(5), IdealSpec::Auto).unwrap()
}

fn natinf_qmax() -> LayeredSemiring {
    LayeredSemiring::build(SortingSemiring::nat_inf(), ValuedMonoid::qmax(), IdealSpec::Auto).unwrap()
}

#[test]
fn identity_passes_everything() {
    let r = small();
    let id = LayeredMap::identity(&r);
    for rep in [
        check_semiring_hom(&id, cfg()),
        check_layered_hom(&id, cfg()),
        check_zero_excepted(&id, cfg()),
        check_surpassing_map(&id, cfg()),
        check_surpassed_map(&id, cfg()),
        check_layered_morphism(&id, cfg()),
    ] {
        assert!(rep.all_pass(), "{rep}");
    }
}

#[test]
fn squaring_is_not_additive() {
    let r = small();
    let sq = frobenius_map(&r, 2);
    let rep = check_semiring_hom(&sq, cfg());
    let add = rep.get("hom.add").unwrap();
    assert!(!add.pass);
    let w = add.witness.as_deref().unwrap();
    let (a, b) = w.trim_matches(|c| c == '(' || c == ')').split_once(", ").unwrap();
    let (a, b) = (e(a), e(b));
    assert_ne!(sq.apply(&r.add(&a, &b)), r.add(&sq.apply(&a), &sq.apply(&b)));
    // still surpassing on the whole carrier
    assert!(check_surpassing_map(&sq, cfg()).all_pass());
    for m in 2..=4 {
        assert!(check_surpassing_map(&frobenius_map(&r, m), cfg()).all_pass());
    }
}

#[test]
fn relayering_map_is_layered_hom() {
    let r = LayeredSemiring::build(SortingSemiring::truncated(3).unwrap(), ValuedMonoid::TruncNat(8), IdealSpec::Auto).unwrap();
    let ra = relayer(&r, ElemIdeal::NuAtLeast(Value::int(6)), false).unwrap();
    let f = LayeredMap::natural("relayer", &r, &ra, |a| *a);
    let rep = check_layered_hom(&f, cfg());
    assert!(rep.all_pass(), "{rep}");
    assert!(check_layered_morphism(&f, cfg()).all_pass());
}

fn collapse(s: Sort) -> Sort {
    match s {
        Sort::Fin(0) => Sort::ZERO,
        Sort::Fin(1) => Sort::ONE,
        _ => Sort::Inf,
    }
}

#[test]
fn rho_induced_map() {
    let r = small();
    let t = LayeredSemiring::build(SortingSemiring::trivial01inf(), ValuedMonoid::TruncNat(5), IdealSpec::Auto).unwrap();
    let f = LayeredMap::new("rho", &r, &t, |a| t.mk(a.value, collapse(a.sort)), collapse);
    let rep = check_layered_hom(&f, cfg());
    assert!(rep.all_pass(), "{rep}");
    let rep = check_layered_morphism(&f, cfg());
    assert!(rep.all_pass(), "{rep}");
}

#[test]
fn truncation_projections() {
    let r = small();
    let t = l_truncate(&r, Sort::Fin(2)).unwrap();
    let cap = |s: Sort| s.min(Sort::Fin(2));
    let f = LayeredMap::new("l-trunc", &r, &t, |a| t.mk(a.value, cap(a.sort)), cap);
    assert!(check_layered_hom(&f, cfg()).all_pass());
    assert!(check_layered_morphism(&f, cfg()).all_pass());

    let src = LayeredSemiring::build(SortingSemiring::truncated(3).unwrap(), ValuedMonoid::TruncNat(8), IdealSpec::Auto).unwrap();
    let q = nu_truncate(src.sorting(), src.monoid(), Value::int(5)).unwrap();
    let g = LayeredMap::natural("nu-trunc", &src, &q, |a| q.mk(a.value.min(Value::int(5)), a.sort));
    let rep = check_layered_hom(&g, cfg());
    assert!(rep.all_pass(), "{rep}");
    assert!(check_layered_morphism(&g, cfg()).all_pass());
}

#[test]
fn quotient_projection() {
    let r = LayeredSemiring::build(SortingSemiring::truncated(3).unwrap(), ValuedMonoid::TruncNat(8), IdealSpec::Auto).unwrap();
    for strict in [false, true] {
        let q = quotient_by_upper_ideal(&r, &e("6@1"), strict).unwrap();
        let f = LayeredMap::natural("rees", &r, &q, |a| q.project(a));
        let rep = check_layered_hom(&f, cfg());
        assert!(rep.all_pass(), "{rep}");
        assert_eq!(f.apply(&e("7@2")), QElem::Top);
    }
}

#[test]
fn value_collapse_breaks_m3() {
    // sends sort 2 to value 0, separating ν-equal elements
    let r = small();
    let f = LayeredMap::natural("split", &r, &r, |a| if a.sort == Sort::Fin(2) { r.mk(Value::int(0), a.sort) } else { *a });
    let rep = check_layered_morphism(&f, cfg());
    assert!(!rep.passed("morphism.M3"), "{rep}");
}

#[test]
fn ghost_map_is_transmission() {
    let r = small();
    let u = build_u(&r);
    let g = u.ghost_layer();
    let t = Transmission::on_whole("nu", &r, &g, |a| u.nu_map(&UElem::T(*a)));
    let rep = check_transmission(&t, TransmissionKind::Plain, cfg());
    assert!(rep.all_pass(), "{rep}");
    let nu = LayeredMap::new("nu", &r, &g, |a| u.nu_map(&UElem::T(*a)), |_| r.sorting().top());
    assert!(check_semiring_hom(&nu, cfg()).all_pass());
}

#[test]
fn crossing_map_fails_tm3_and_nu_preservation() {
    let n = LayeredSemiring::build(SortingSemiring::truncated(3).unwrap(), ValuedMonoid::qmax(), IdealSpec::Auto).unwrap();
    let t = Transmission::on_whole("negate", &n, &n, |a| Elem::new(Value::Fin(-a.value.as_q().unwrap()), a.sort));
    let rep = check_transmission(&t, TransmissionKind::Plain, cfg());
    assert!(!rep.passed("transmission.TM3"));
    assert!(!rep.passed("transmission.nu-preserving"));
    assert!(rep.passed("transmission.patch-agree"));
    assert!(rep.passed("transmission.TM2"));
}

#[test]
fn permanents() {
    let r = natinf_qmax();
    assert_eq!(permanent(&r, &[vec![e("3@2")]]), e("3@2"));
    let a = vec![vec![e("1@1"), e("2@1")], vec![e("3@1"), e("4@1")]];
    assert_eq!(permanent(&r, &a), e("5@2"));
    let id3: Vec<Vec<Elem>> = (0..3).map(|i| (0..3).map(|j| if i == j { e("0@1") } else { e("-9@1") }).collect()).collect();
    assert_eq!(permanent(&r, &id3), e("0@1"));
}

#[test]
fn matrix_frobenius() {
    let rep = matrix_frobenius_check(&natinf_qmax(), 2, 2, 500, 7);
    assert!(rep.all_pass(), "{rep}");
    assert!(matrix_frobenius_check(&small(), 3, 3, 200, 7).all_pass());
}

fn ord2(q: &monoids::Q) -> i64 {
    let (mut n, mut d, mut k) = (*q.numer(), *q.denom(), 0);
    while n % 2 == 0 {
        n /= 2;
        k += 1;
    }
    while d % 2 == 0 {
        d /= 2;
        k -= 1;
    }
    k
}

#[test]
fn two_adic_supervaluation() {
    let l = LayeredSemiring::build(SortingSemiring::trivial01inf(), ValuedMonoid::qmax(), IdealSpec::Auto).unwrap();
    let psi = Supervaluation::new("psi2", &Rationals, &l, true, |a| Elem::int(-ord2(a), 1));
    for kind in [SupervaluationKind::Dagger, SupervaluationKind::Zo] {
        let rep = check_supervaluation(&psi, kind, cfg());
        assert!(rep.all_pass(), "{rep}");
    }
    let one = Supervaluation::new("one", &Rationals, &l, false, |_| Elem::int(0, 1));
    let rep = check_supervaluation(&one, SupervaluationKind::Full, cfg());
    assert!(rep.passed("supervaluation.LV2"));
    assert!(!rep.passed("supervaluation.LV4"));
    let two = Supervaluation::new("two", &Rationals, &l, true, |_| Elem::int(2, 1));
    let rep = check_supervaluation(&two, SupervaluationKind::Dagger, cfg());
    assert!(!rep.passed("supervaluation.LV1"));
    assert!(!rep.passed("supervaluation.LV2"));
}

#[test]
fn domination_and_induced_transmission() {
    let fine = LayeredSemiring::build(SortingSemiring::nat_inf(), ValuedMonoid::qmax(), IdealSpec::Auto).unwrap();
    let coarse = LayeredSemiring::build(SortingSemiring::trivial01inf(), ValuedMonoid::qmax(), IdealSpec::Auto).unwrap();
    let v = Supervaluation::new("psi2", &Rationals, &fine, true, |a| Elem::int(-ord2(a), 1)).with_section(|x| {
        let k = x.value.as_q()?;
        (k.is_integer() && x.sort == Sort::ONE).then(|| monoids::Q::from_integer(2).pow(-*k.numer() as i32))
    });
    let w = Supervaluation::new("trivial", &Rationals, &coarse, true, |_| Elem::int(0, 1));
    assert!(check_domination(&v, &w, cfg()).all_pass());
    let rep = check_domination(&w, &v, cfg());
    assert!(!rep.passed("domination.D1"));
    assert!(matches!(induced_transmission(&w, &v, cfg()), Err(Error::NotDominated(_))));

    let alpha = induced_transmission(&v, &w, cfg()).unwrap();
    let rep = check_transmission(&alpha, TransmissionKind::Zo, cfg());
    assert!(rep.all_pass(), "{rep}");
    assert!(!check_strictly_nu_preserving(&alpha, cfg()).pass);
    assert!(!check_homomorphic(&alpha, cfg()).pass);

    let same = induced_transmission(&v, &v, cfg()).unwrap();
    for x in same.domain_elements(cfg()) {
        assert_eq!(same.apply(&x), Some(x));
    }
    assert!(check_strictly_nu_preserving(&same, cfg()).pass);
    assert!(check_homomorphic(&same, cfg()).pass);

    let comp = compose_with_supervaluation(&alpha, &v, cfg()).unwrap();
    assert!(check_supervaluation(&comp, SupervaluationKind::Dagger, cfg()).all_pass());
    assert!(check_domination(&v, &comp, cfg()).all_pass());

    let narrow = Transmission::on_table("narrow", &fine, &coarse, [(fine.one(), coarse.one())].into_iter().collect());
    assert!(matches!(compose_with_supervaluation(&narrow, &v, cfg()), Err(Error::DomainMismatch(_))));
}

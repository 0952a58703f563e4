use crate::instance::InstanceArgs;
use laysem_core::axioms::CheckConfig;
use laysem_core::extensions::{build_u, l_truncate, nu_truncate, UElem};
use laysem_core::morphisms::*;
use laysem_core::tropical::{at_line, kapranov_map, kapranov_properties, Puiseux};
use laysem_core::*;
use std::collections::BTreeMap;

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Hom,
    Layered,
    ZeroExcepted,
    Surpassing,
    Transmission,
    Supervaluation,
}

pub const BUILTINS: &str =
    "id, trunc-nu:<q>, trunc-sort:<m>, frobenius:<m>, collapse, ghost, negate, psi1, trivial";

fn for_kind<S: Layered, D: Layered>(kind: Kind, f: &LayeredMap<'_, S, D>, cfg: CheckConfig) -> Result<CheckReport, Error> {
    Ok(match kind {
        Kind::Hom => check_semiring_hom(f, cfg),
        Kind::Layered => {
            let mut rep = check_layered_hom(f, cfg);
            rep.extend(check_layered_morphism(f, cfg));
            rep
        }
        Kind::ZeroExcepted => check_zero_excepted(f, cfg),
        Kind::Surpassing => check_surpassing_map(f, cfg),
        Kind::Transmission => {
            let t = Transmission::on_whole(f.name.clone(), f.src, f.dst, |a| f.apply(a));
            check_transmission(&t, TransmissionKind::Plain, cfg)
        }
        Kind::Supervaluation => return Err(Error::Config(format!("{} is a map of layered semirings, not a supervaluation", f.name))),
    })
}

fn arg<T: std::str::FromStr>(map: &str, s: &str) -> Result<T, Error> {
    s.parse().map_err(|_| Error::Parse(format!("bad parameter in map `{map}`")))
}

fn collapse(s: Sort) -> Sort {
    match s {
        Sort::Fin(0) => Sort::ZERO,
        Sort::Fin(1) => Sort::ONE,
        _ => Sort::Inf,
    }
}

/// Lines `<src-element> -> <dst-element>`; blank lines and `#` comments
/// are skipped.
pub fn parse_table(r: &LayeredSemiring, text: &str) -> Result<BTreeMap<Elem, Elem>, Error> {
    let mut table = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |m: String| at_line(n + 1, Error::Parse(m));
        let (a, b) = line.split_once("->").ok_or_else(|| at("expected `<elem> -> <elem>`".into()))?;
        let (a, b): (Elem, Elem) = (a.parse().map_err(|e| at_line(n + 1, e))?, b.parse().map_err(|e| at_line(n + 1, e))?);
        for x in [&a, &b] {
            if !r.contains(x) {
                return Err(at(format!("{x} is not in {}", r.name())));
            }
        }
        if table.insert(a, b).is_some_and(|old| old != b) {
            return Err(at(format!("{a} is mapped twice")));
        }
    }
    Ok(table)
}

pub fn check_map(kind: Kind, map: &str, inst: &InstanceArgs, cfg: CheckConfig) -> Result<CheckReport, Error> {
    let r = inst.build()?;
    let (head, param) = map.split_once(':').unwrap_or((map, ""));
    match head {
        "id" => for_kind(kind, &LayeredMap::identity(&r), cfg),
        "frobenius" => for_kind(kind, &frobenius_map(&r, arg(map, param)?), cfg),
        "trunc-sort" => {
            let m = Sort::Fin(arg(map, param)?);
            let t = l_truncate(&r, m)?;
            let cap = move |s: Sort| s.min(m);
            let f = LayeredMap::new(map, &r, &t, |a| t.mk(a.value, cap(a.sort)), cap);
            for_kind(kind, &f, cfg)
        }
        "trunc-nu" => {
            let q: Value = arg(map, param)?;
            // the clamp is only a monoid map on the nonnegative part of qmax
            let src = match r.monoid() {
                ValuedMonoid::QMax => LayeredSemiring::build(r.sorting().clone(), ValuedMonoid::QMaxNonneg, IdealSpec::Auto)?,
                _ => r.clone(),
            };
            let t = nu_truncate(src.sorting(), src.monoid(), q)?;
            let f = LayeredMap::natural(map, &src, &t, |a| t.mk(a.value.min(q), a.sort));
            for_kind(kind, &f, cfg)
        }
        "collapse" => {
            let t = LayeredSemiring::build(SortingSemiring::trivial01inf(), r.monoid().clone(), IdealSpec::Given(r.ideal().clone()))?;
            let f = LayeredMap::new(map, &r, &t, |a| t.mk(a.value, collapse(a.sort)), collapse);
            for_kind(kind, &f, cfg)
        }
        "ghost" => {
            let u = build_u(&r);
            let g = u.ghost_layer();
            let top = r.sorting().top();
            let f = LayeredMap::new(map, &r, &g, |a| u.nu_map(&UElem::T(*a)), move |_| top);
            for_kind(kind, &f, cfg)
        }
        "negate" => {
            if *r.monoid() != ValuedMonoid::QMax {
                return Err(Error::Config("negate needs the qmax monoid".into()));
            }
            let neg = |a: &Elem| Elem::new(Value::Fin(-a.value.as_q().unwrap()), a.sort);
            let f = LayeredMap::natural(map, &r, &r, neg);
            for_kind(kind, &f, cfg)
        }
        "psi1" | "trivial" => {
            if kind != Kind::Supervaluation {
                return Err(Error::Config(format!("{map} is a supervaluation; use --kind supervaluation")));
            }
            if head == "psi1" {
                if *r.monoid() != ValuedMonoid::QMax {
                    return Err(Error::Config("psi1 takes values in the qmax monoid".into()));
                }
                let mut rep = check_supervaluation(&kapranov_map(&r), SupervaluationKind::Zo, cfg);
                rep.extend(kapranov_properties(&r, cfg));
                Ok(rep)
            } else {
                let one = r.one();
                let v = Supervaluation::new("trivial", &Puiseux, &r, true, move |_| one);
                Ok(check_supervaluation(&v, SupervaluationKind::Zo, cfg))
            }
        }
        _ => {
            let text = std::fs::read_to_string(map)
                .map_err(|e| Error::Config(format!("`{map}` is neither a builtin map ({BUILTINS}) nor a readable file: {e}")))?;
            let table = parse_table(&r, &text)?;
            if kind == Kind::Transmission {
                let t = Transmission::on_table(map, &r, &r, table);
                return Ok(check_transmission(&t, TransmissionKind::Plain, cfg));
            }
            let es = r.elements().ok_or_else(|| Error::Config("a table map needs a finite carrier".into()))?;
            if let Some(x) = es.iter().find(|x| !table.contains_key(x)) {
                return Err(Error::Config(format!("table does not cover {x}")));
            }
            let f = LayeredMap::natural(map, &r, &r, |a| table[a]);
            for_kind(kind, &f, cfg)
        }
    }
}

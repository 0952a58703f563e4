//! The tangibly generated sub-semiring and Rees quotients by ν-upper ideals.

use crate::error::Error;
use crate::layered::{Elem, Layered, LayeredSemiring, Structure};
use crate::monoids::Value;
use crate::sorting::{Sort, SortingSemiring};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;

/// Closure of `R₁` under `+` and `·`.
#[derive(Clone, Debug)]
pub struct TangibleSpan<E> {
    pub elements: BTreeSet<E>,
    /// The span is the whole carrier.
    pub tangibly_generated: bool,
}

pub fn tangible_span<R: Layered>(r: &R) -> Result<TangibleSpan<R::E>, Error> {
    let all = r.elements().ok_or_else(|| Error::Infinite(r.name()))?;
    let mut span: BTreeSet<R::E> = all.iter().filter(|a| r.sort(a) == Sort::ONE).cloned().collect();
    loop {
        let cur: Vec<R::E> = span.iter().cloned().collect();
        let mut grew = false;
        for a in &cur {
            for b in &cur {
                grew |= span.insert(r.add(a, b));
                grew |= span.insert(r.mul(a, b));
            }
        }
        if !grew {
            break;
        }
    }
    let tangibly_generated = span.len() == all.len();
    Ok(TangibleSpan { elements: span, tangibly_generated })
}

/// `{0, 1, 2}` with `max` as addition and saturating multiplication. Over it
/// sums of tangibles stay tangible, so sort 2 is never generated.
pub fn max_sorting() -> SortingSemiring {
    let carrier = vec![Sort::ZERO, Sort::ONE, Sort::Fin(2)];
    let fin = |s: Sort| match s {
        Sort::Fin(n) => n,
        Sort::Inf => unreachable!(),
    };
    SortingSemiring::from_fns("max3", carrier, |a, b| a.max(b), |a, b| Sort::Fin((fin(a) * fin(b)).min(2)))
        .expect("closed by construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QElem {
    E(Elem),
    /// The collapsed ideal.
    Top,
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QElem::E(e) => write!(f, "{e}"),
            QElem::Top => write!(f, "top@0"),
        }
    }
}

/// `R / I` for `I = {r : r >=_ν a}` (or `>_ν` when strict), with `I`
/// collapsed to an absorbing class of sort 0.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub base: LayeredSemiring,
    pub threshold: Value,
    pub strict: bool,
    top_nu: Value,
    has_top: bool,
}

pub fn quotient_by_upper_ideal(r: &LayeredSemiring, threshold: &Elem, strict: bool) -> Result<Quotient, Error> {
    let t = r.monoid().v(threshold.value);
    let in_ideal = |x: &Elem| if strict { r.nu(x) > t } else { r.nu(x) >= t };
    let (members, sample): (Vec<Elem>, Vec<Elem>) = match r.elements() {
        Some(es) => (es.iter().copied().filter(|x| in_ideal(x)).collect(), es),
        None if strict => return Err(Error::InvalidIdeal("a strict quotient needs a finite carrier".into())),
        None => {
            let mut rng = crate::check::rng_for(0, "quotient.ideal");
            let es: Vec<Elem> = (0..400).map(|_| r.sample(&mut rng)).collect();
            (es.iter().copied().filter(|x| in_ideal(x)).collect(), es)
        }
    };
    for a in &members {
        for b in &sample {
            let p = r.mul(a, b);
            if !in_ideal(&p) {
                return Err(Error::InvalidIdeal(format!("({a}) * ({b}) = {p} leaves the upper set")));
            }
        }
    }
    let top_nu = members.iter().map(|x| r.nu(x)).min().unwrap_or(t);
    let has_top = !members.is_empty() || !strict;
    Ok(Quotient { base: r.clone(), threshold: t, strict, top_nu, has_top })
}

impl Quotient {
    fn in_ideal(&self, x: &Elem) -> bool {
        let v = self.base.nu(x);
        if self.strict {
            v > self.threshold
        } else {
            v >= self.threshold
        }
    }

    pub fn project(&self, x: &Elem) -> QElem {
        if self.in_ideal(x) {
            QElem::Top
        } else {
            QElem::E(*x)
        }
    }

    fn lift2(&self, x: &QElem, y: &QElem, f: impl Fn(&Elem, &Elem) -> Elem) -> QElem {
        match (x, y) {
            (QElem::E(a), QElem::E(b)) => self.project(&f(a, b)),
            _ => QElem::Top,
        }
    }

    /// Classes of the carrier, when finite.
    pub fn classes(&self) -> Option<Vec<QElem>> {
        self.elements()
    }
}

impl Structure for Quotient {
    type E = QElem;

    fn name(&self) -> String {
        let op = if self.strict { ">" } else { ">=" };
        format!("{} / (nu {op} {})", self.base.name(), self.threshold)
    }
    fn add(&self, x: &QElem, y: &QElem) -> QElem {
        self.lift2(x, y, |a, b| self.base.add(a, b))
    }
    fn mul(&self, x: &QElem, y: &QElem) -> QElem {
        self.lift2(x, y, |a, b| self.base.mul(a, b))
    }
    fn one(&self) -> QElem {
        self.project(&self.base.one())
    }
    fn contains(&self, x: &QElem) -> bool {
        match x {
            QElem::E(a) => self.base.contains(a) && !self.in_ideal(a),
            QElem::Top => self.has_top,
        }
    }
    fn elements(&self) -> Option<Vec<QElem>> {
        let mut out: BTreeSet<QElem> = self.base.elements()?.iter().map(|a| self.project(a)).collect();
        if self.has_top {
            out.insert(QElem::Top);
        }
        Some(out.into_iter().collect())
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> QElem {
        self.project(&self.base.sample(rng))
    }
    fn zero(&self) -> Option<QElem> {
        self.base.zero().map(|z| self.project(&z))
    }
}

impl Layered for Quotient {
    fn sorting(&self) -> &SortingSemiring {
        self.base.sorting()
    }
    fn sort(&self, x: &QElem) -> Sort {
        match x {
            QElem::E(a) => a.sort,
            QElem::Top => Sort::ZERO,
        }
    }
    fn nu(&self, x: &QElem) -> Value {
        match x {
            QElem::E(a) => self.base.nu(a),
            QElem::Top => self.top_nu,
        }
    }
    fn transition(&self, m: Sort, x: &QElem) -> Result<QElem, Error> {
        match x {
            QElem::E(a) => self.base.transition(m, a).map(|b| self.project(&b)),
            QElem::Top => Err(Error::InvalidTransition("the collapsed class has sort 0".into())),
        }
    }
    fn tangible_root(&self, x: &QElem) -> Option<QElem> {
        match x {
            QElem::E(a) => self.base.tangible_root(a).map(QElem::E).filter(|b| self.contains(b)),
            QElem::Top => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{semiring_laws, CheckConfig};
    use crate::layered::IdealSpec;
    use crate::monoids::ValuedMonoid;

    fn e(s: &str) -> Elem {
        s.parse().unwrap()
    }

    #[test]
    fn spans() {
        let r = LayeredSemiring::build(SortingSemiring::truncated(4).unwrap(), ValuedMonoid::TruncNat(5), IdealSpec::Auto).unwrap();
        let s = tangible_span(&r).unwrap();
        assert!(s.tangibly_generated);
        for k in 1..=4 {
            assert!(s.elements.contains(&r.layer_unit(Sort::Fin(k)).unwrap()));
        }
        let h = LayeredSemiring::build(max_sorting(), ValuedMonoid::TruncNat(3), IdealSpec::Auto).unwrap();
        let s = tangible_span(&h).unwrap();
        assert!(!s.tangibly_generated);
        assert!(s.elements.iter().all(|x| x.sort != Sort::Fin(2)));
        assert!(semiring_laws(&h, CheckConfig::default()).all_pass());
        let n = LayeredSemiring::build(SortingSemiring::nat_inf(), ValuedMonoid::qmax(), IdealSpec::Auto).unwrap();
        assert!(matches!(tangible_span(&n), Err(Error::Infinite(_))));
    }

    #[test]
    fn quotients() {
        let r = LayeredSemiring::build(SortingSemiring::truncated(3).unwrap(), ValuedMonoid::TruncNat(8), IdealSpec::Auto).unwrap();
        let q = quotient_by_upper_ideal(&r, &e("6@1"), false).unwrap();
        let classes = q.classes().unwrap();
        // values 0..=5 in sorts 1..=3, plus the collapsed class
        assert_eq!(classes.len(), 6 * 3 + 1);
        assert_eq!(classes.iter().filter(|c| **c == QElem::Top).count(), 1);
        assert!(r.elements().unwrap().iter().filter(|x| q.project(x) == QElem::Top).all(|x| r.nu(x) >= Value::int(6)));
        let rep = semiring_laws(&q, CheckConfig::default());
        assert!(rep.all_pass(), "{rep}");
        assert_eq!(q.mul(&QElem::E(e("3@1")), &QElem::E(e("3@1"))), QElem::Top);

        let above = quotient_by_upper_ideal(&r, &e("9@1"), true).unwrap();
        assert_eq!(above.classes().unwrap().len(), r.elements().unwrap().len());
        let above = quotient_by_upper_ideal(&r, &e("9@1"), false).unwrap();
        assert_eq!(above.classes().unwrap().len(), r.elements().unwrap().len() + 1);

        let neg = LayeredSemiring::build(SortingSemiring::nat_inf(), ValuedMonoid::qmax(), IdealSpec::Auto).unwrap();
        assert!(matches!(quotient_by_upper_ideal(&neg, &e("2@1"), false), Err(Error::InvalidIdeal(_))));
    }
}

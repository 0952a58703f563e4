//! Layered semirings: the generic interface, the pair construction
//! `R(L, M)_𝔞` with its arithmetic, and the ν- and surpassing relations.

use crate::error::Error;
use crate::monoids::{noncancellative_ideal, is_ideal, MonoidIdeal, Value, ValuedMonoid};
use crate::sorting::{Sort, SortingSemiring};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

/// A carrier with `+` and `·`.
pub trait Structure: Sync {
    type E: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn name(&self) -> String;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn one(&self) -> Self::E;
    fn contains(&self, a: &Self::E) -> bool;
    /// Sorted carrier, when finite.
    fn elements(&self) -> Option<Vec<Self::E>>;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::E;

    /// Additive identity that is multiplicatively absorbing. The default
    /// searches a finite carrier.
    fn zero(&self) -> Option<Self::E> {
        let es = self.elements()?;
        es.iter()
            .find(|z| es.iter().all(|x| self.add(z, x) == *x && self.mul(z, x) == **z))
            .cloned()
    }
}

/// A structure sorted by a sorting semiring, with sort transitions and a
/// ν-class key.
pub trait Layered: Structure {
    fn sorting(&self) -> &SortingSemiring;
    fn sort(&self, a: &Self::E) -> Sort;
    /// Totally ordered key of the ν-class of `a`.
    fn nu(&self, a: &Self::E) -> Value;
    /// `ν_{m, s(a)}(a)`; defined for `0 < s(a) <= m`.
    fn transition(&self, m: Sort, a: &Self::E) -> Result<Self::E, Error>;

    /// Some `a₁ ∈ R₁` with `ν_{s(a),1}(a₁) = a`. The default searches a
    /// finite carrier.
    fn tangible_root(&self, a: &Self::E) -> Option<Self::E> {
        let s = self.sort(a);
        if s.is_zero() {
            return None;
        }
        self.elements()?
            .into_iter()
            .find(|b| self.sort(b) == Sort::ONE && self.transition(s, b).ok().as_ref() == Some(a))
    }
}

/// `⟨value⟩^sort`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem {
    pub value: Value,
    pub sort: Sort,
}

impl Elem {
    pub fn new(value: Value, sort: Sort) -> Self {
        Elem { value, sort }
    }

    pub fn int(v: i64, s: u64) -> Self {
        Elem { value: Value::int(v), sort: Sort::Fin(s) }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.sort)
    }
}

impl FromStr for Elem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let (v, k) = s
            .trim()
            .rsplit_once('@')
            .ok_or_else(|| Error::Parse(format!("element `{s}` is not <value>@<sort>")))?;
        Ok(Elem { value: v.parse()?, sort: k.parse()? })
    }
}

/// How the ideal of a construction is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    /// The ideal of noncancellative products.
    Auto,
    /// A supplied ideal, which must contain every noncancellative product.
    Given(MonoidIdeal),
    /// The empty ideal regardless of cancellativity; this is the naive
    /// construction and is expected to break distributivity.
    ForceEmpty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroLayer {
    /// Sort 0 holds exactly the ideal values.
    Ideal,
    /// Every value also occurs at sort 0.
    Full,
}

/// `R(L, M)_𝔞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredSemiring {
    l: SortingSemiring,
    m: ValuedMonoid,
    ideal: MonoidIdeal,
    zero_layer: ZeroLayer,
}

impl LayeredSemiring {
    pub fn build(l: SortingSemiring, m: ValuedMonoid, spec: IdealSpec) -> Result<Self, Error> {
        let ideal = match spec {
            IdealSpec::Auto => noncancellative_ideal(&m)?,
            IdealSpec::ForceEmpty => MonoidIdeal::empty(),
            IdealSpec::Given(i) => {
                let nc = noncancellative_ideal(&m)?;
                if let Some(z) = nc.elements().find(|&z| !i.contains(z)) {
                    return Err(Error::IdealTooSmall(z.to_string()));
                }
                if !is_ideal(&m, &i, 0) {
                    return Err(Error::NotAnIdeal(format!("{i} in {}", m.name())));
                }
                i
            }
        };
        Ok(LayeredSemiring { l, m, ideal, zero_layer: ZeroLayer::Ideal })
    }

    /// Whole zero layer adjoined: carrier `L × M`.
    pub(crate) fn with_full_zero_layer(l: SortingSemiring, m: ValuedMonoid) -> Self {
        LayeredSemiring { l, m, ideal: MonoidIdeal::empty(), zero_layer: ZeroLayer::Full }
    }

    pub fn monoid(&self) -> &ValuedMonoid {
        &self.m
    }

    pub fn ideal(&self) -> &MonoidIdeal {
        &self.ideal
    }

    pub fn zero_layer(&self) -> ZeroLayer {
        self.zero_layer
    }

    /// Same construction over another sorting semiring.
    pub fn with_sorting(&self, l: SortingSemiring) -> Self {
        LayeredSemiring { l, ..self.clone() }
    }

    /// Normalizes a pair so that ideal values sit at sort 0.
    pub fn mk(&self, value: Value, sort: Sort) -> Elem {
        if self.zero_layer == ZeroLayer::Ideal && self.ideal.contains(value) {
            Elem::new(value, Sort::ZERO)
        } else {
            Elem::new(value, sort)
        }
    }

    /// `e_ℓ = ν_{ℓ,1}(1_R)`.
    pub fn layer_unit(&self, l: Sort) -> Result<Elem, Error> {
        if l.is_zero() || !self.l.contains(l) {
            return Err(Error::InvalidTransition(format!("no layer unit at sort {l}")));
        }
        self.transition(l, &self.one())
    }

    /// Representative of `a^ν` in the top available sort. Sort-0 elements
    /// are returned unchanged, since `0 · ∞ = 0`.
    pub fn ghost_image(&self, a: &Elem) -> Elem {
        if a.sort.is_zero() {
            *a
        } else {
            self.mk(a.value, self.l.top())
        }
    }

    /// `M` has an absorbing `v`-least element lying in the zero layer.
    pub fn expected_zero(&self) -> Option<Elem> {
        let z = self.m.zero_candidate()?;
        match self.zero_layer {
            ZeroLayer::Full => Some(Elem::new(z, Sort::ZERO)),
            ZeroLayer::Ideal if self.ideal.contains(z) => Some(Elem::new(z, Sort::ZERO)),
            ZeroLayer::Ideal => None,
        }
    }
}

impl Structure for LayeredSemiring {
    type E = Elem;

    fn name(&self) -> String {
        let mut s = format!("R({}, {}", self.l.name(), self.m.name());
        match self.zero_layer {
            ZeroLayer::Ideal => s.push_str(&format!(", {})", self.ideal)),
            ZeroLayer::Full => s.push_str(", full-zero-layer)"),
        }
        s
    }

    fn add(&self, x: &Elem, y: &Elem) -> Elem {
        let (va, vb) = (self.m.v(x.value), self.m.v(y.value));
        if va > vb {
            *x
        } else if va < vb {
            *y
        } else {
            // ν-equal but distinct values only arise for non-injective v;
            // the smaller label keeps `+` commutative
            self.mk(x.value.min(y.value), self.l.add(x.sort, y.sort))
        }
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        self.mk(self.m.mul(x.value, y.value), self.l.mul(x.sort, y.sort))
    }

    fn one(&self) -> Elem {
        self.mk(self.m.one(), Sort::ONE)
    }

    fn contains(&self, a: &Elem) -> bool {
        if !self.m.contains(a.value) || !self.l.contains(a.sort) {
            return false;
        }
        match self.zero_layer {
            ZeroLayer::Ideal => a.sort.is_zero() == self.ideal.contains(a.value),
            ZeroLayer::Full => true,
        }
    }

    fn elements(&self) -> Option<Vec<Elem>> {
        let vs = self.m.elements()?;
        let ls = self.l.elements()?;
        let mut out = Vec::new();
        for v in vs {
            for &s in &ls {
                let e = Elem::new(v, s);
                if self.contains(&e) {
                    out.push(e);
                }
            }
        }
        out.sort();
        Some(out)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Elem {
        let v = self.m.sample(rng);
        let s = match self.zero_layer {
            ZeroLayer::Full => self.l.sample(rng),
            ZeroLayer::Ideal => self.l.sample_positive(rng),
        };
        self.mk(v, s)
    }

    fn zero(&self) -> Option<Elem> {
        self.expected_zero()
    }
}

impl Layered for LayeredSemiring {
    fn sorting(&self) -> &SortingSemiring {
        &self.l
    }

    fn sort(&self, a: &Elem) -> Sort {
        a.sort
    }

    fn nu(&self, a: &Elem) -> Value {
        self.m.v(a.value)
    }

    fn transition(&self, m: Sort, a: &Elem) -> Result<Elem, Error> {
        if a.sort.is_zero() || !self.l.leq(a.sort, m) || !self.l.contains(m) {
            return Err(Error::InvalidTransition(format!("ν_{{{m},{}}} on {a}", a.sort)));
        }
        Ok(self.mk(a.value, m))
    }

    fn tangible_root(&self, a: &Elem) -> Option<Elem> {
        let b = self.mk(a.value, Sort::ONE);
        (b.sort == Sort::ONE && self.transition(a.sort, &b).ok() == Some(*a)).then_some(b)
    }
}

pub fn nu_equiv<R: Layered>(r: &R, a: &R::E, b: &R::E) -> bool {
    r.nu(a) == r.nu(b)
}

pub fn nu_leq<R: Layered>(r: &R, a: &R::E, b: &R::E) -> bool {
    r.nu(a) <= r.nu(b)
}

/// `s(a)` is an `l`-ghost sort.
pub fn is_ghost<R: Layered>(r: &R, a: &R::E, l: Sort) -> bool {
    r.sorting().is_ghost_sort(r.sort(a), l)
}

/// `a^m`, `m >= 1`.
pub fn power<R: Structure>(r: &R, a: &R::E, m: u32) -> R::E {
    let mut acc = a.clone();
    for _ in 1..m {
        acc = r.mul(&acc, a);
    }
    acc
}

/// The surpassing relation by its three-case definition, searching the
/// carrier for the middle case.
pub fn surpasses_literal<R: Layered>(r: &R, carrier: &[R::E], a: &R::E, b: &R::E) -> bool {
    let sb = r.sort(b);
    a == b
        || (nu_equiv(r, a, b) && is_ghost(r, a, sb))
        || carrier.iter().any(|c| r.add(b, c) == *a && is_ghost(r, c, sb))
}

/// Closed form valid for ν-bipotent structures: `a = b`, or `a >=_ν b` with
/// `a` an `s(b)`-ghost.
pub fn surpasses_closed<R: Layered>(r: &R, a: &R::E, b: &R::E) -> bool {
    a == b || (nu_leq(r, b, a) && is_ghost(r, a, r.sort(b)))
}

/// `a ⊨_L b`.
pub fn surpasses_l<R: Layered>(r: &R, a: &R::E, b: &R::E) -> bool {
    surpasses_closed(r, a, b)
}

/// `a ⊨_{L,ν} b`: surpassing and ν-equivalent.
pub fn surpasses_lnu<R: Layered>(r: &R, a: &R::E, b: &R::E) -> bool {
    nu_equiv(r, a, b) && surpasses_l(r, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoids::ValuedMonoid;

    fn natinf_qmax() -> LayeredSemiring {
        LayeredSemiring::build(SortingSemiring::nat_inf(), ValuedMonoid::qmax(), IdealSpec::Auto).unwrap()
    }

    fn small() -> LayeredSemiring {
        LayeredSemiring::build(
            SortingSemiring::truncated(4).unwrap(),
            ValuedMonoid::truncated_nat(5).unwrap(),
            IdealSpec::Auto,
        )
        .unwrap()
    }

    fn e(s: &str) -> Elem {
        s.parse().unwrap()
    }

    #[test]
    fn construction_shape() {
        let r = small();
        assert_eq!(r.elements().unwrap().len(), 21);
        assert_eq!(r.ideal().elements().collect::<Vec<_>>(), vec![Value::int(5)]);
        let zl: Vec<Elem> = r.elements().unwrap().into_iter().filter(|x| x.sort.is_zero()).collect();
        assert_eq!(zl, vec![e("5@0")]);
        assert!(natinf_qmax().ideal().is_empty());
        let err = LayeredSemiring::build(
            SortingSemiring::truncated(4).unwrap(),
            ValuedMonoid::truncated_nat(5).unwrap(),
            IdealSpec::Given(MonoidIdeal::empty()),
        );
        assert!(matches!(err, Err(Error::IdealTooSmall(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let r = natinf_qmax();
        assert_eq!(r.mul(&e("3@2"), &e("4@3")), e("7@6"));
        assert_eq!(r.add(&e("5@2"), &e("3@7")), e("5@2"));
        assert_eq!(r.add(&e("3@1"), &e("3@1")), e("3@2"));
        assert_eq!(r.mul(&e("7@3"), &r.one()), e("7@3"));
        let s = small();
        assert_eq!(s.mul(&e("2@1"), &e("3@1")), e("5@0"));
        assert_eq!(s.add(&e("3@3"), &e("3@3")), e("3@4"));
    }

    #[test]
    fn transitions_and_units() {
        let r = natinf_qmax();
        assert_eq!(r.transition(Sort::Fin(3), &e("7@1")).unwrap(), e("7@3"));
        assert_eq!(r.transition(Sort::Fin(2), &e("7@2")).unwrap(), e("7@2"));
        assert!(small().transition(Sort::Fin(2), &e("5@0")).is_err());
        assert!(r.transition(Sort::Fin(1), &e("7@2")).is_err());
        assert_eq!(r.layer_unit(Sort::ONE).unwrap(), r.one());
        let (e2, e3) = (r.layer_unit(Sort::Fin(2)).unwrap(), r.layer_unit(Sort::Fin(3)).unwrap());
        assert_eq!(r.mul(&e2, &e3), r.layer_unit(Sort::Fin(6)).unwrap());
        assert_eq!(r.add(&e2, &e3), r.layer_unit(Sort::Fin(5)).unwrap());
        assert!(r.layer_unit(Sort::ZERO).is_err());
    }

    #[test]
    fn relations() {
        let r = natinf_qmax();
        assert!(nu_equiv(&r, &e("3@1"), &e("3@5")));
        assert!(nu_leq(&r, &e("2@7"), &e("3@1")));
        assert_eq!(r.ghost_image(&e("3@2")), e("3@inf"));
        assert!(surpasses_lnu(&r, &e("4@4"), &e("4@2")));
        assert!(!surpasses_lnu(&r, &e("4@2"), &e("4@4")));
        assert!(surpasses_l(&r, &e("1@1"), &e("1@1")));
    }

    #[test]
    fn closed_form_matches_literal() {
        let r = small();
        let es = r.elements().unwrap();
        for a in &es {
            for b in &es {
                assert_eq!(surpasses_literal(&r, &es, a, b), surpasses_closed(&r, a, b), "{a} {b}");
            }
        }
    }

    #[test]
    fn element_syntax() {
        assert_eq!(e("3/2@inf"), Elem::new(Value::q(3, 2), Sort::Inf));
        assert_eq!(e("-inf@0").to_string(), "-inf@0");
        assert!("3".parse::<Elem>().is_err());
    }
}

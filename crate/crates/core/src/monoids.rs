//! Valued monoids `(M, G, v)`, their ideals and morphisms.
//!
//! `v` is stored as a function into [`Value`] ordered by `Ord`, so `G` is
//! identified with the image of `v`.

use crate::check::{CheckReport, Entry, Pool};
use crate::error::Error;
use num_rational::Rational64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub type Q = Rational64;

/// A monoid element or a `G`-value. `Bottom` is an adjoined `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Bottom,
    Fin(Q),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Fin(Q::from_integer(n))
    }

    pub fn q(n: i64, d: i64) -> Value {
        Value::Fin(Q::new(n, d))
    }

    pub fn as_q(&self) -> Option<Q> {
        match self {
            Value::Fin(q) => Some(*q),
            Value::Bottom => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bottom => f.write_str("-inf"),
            Value::Fin(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for Value {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t == "-inf" {
            return Ok(Value::Bottom);
        }
        parse_q(t).map(Value::Fin)
    }
}

pub fn parse_q(t: &str) -> Result<Q, Error> {
    let bad = || Error::Parse(format!("bad rational `{t}`"));
    let t = t.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => t.parse::<i64>().map(Q::from_integer).map_err(|_| bad()),
    }
}

/// Finite monoid given by a multiplication table over labelled elements,
/// with `G`-values attached per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    pub name: String,
    pub carrier: Vec<Value>,
    pub mul: Vec<Vec<usize>>,
    pub one: usize,
    pub gval: Vec<Value>,
}

impl MonoidTable {
    fn idx(&self, a: Value) -> usize {
        self.carrier
            .iter()
            .position(|&c| c == a)
            .unwrap_or_else(|| panic!("{a} not in {}", self.name))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuedMonoid {
    /// `(ℚ, +, 0)`, `v = id`.
    QMax,
    /// `(ℚ≥0, +, 0)`, `v = id`.
    QMaxNonneg,
    /// `{0..q}` with `min(a+b, q)`.
    TruncNat(u64),
    /// `inner` with every product clamped at `q`. `inner` must have its
    /// identity as least element.
    Clamp { inner: Box<ValuedMonoid>, q: Value },
    /// `inner` with an absorbing `-∞` adjoined.
    Pointed(Box<ValuedMonoid>),
    Table(Arc<MonoidTable>),
}

impl ValuedMonoid {
    pub fn qmax() -> Self {
        ValuedMonoid::QMax
    }

    pub fn truncated_nat(q: u64) -> Result<Self, Error> {
        if q == 0 {
            return Err(Error::InvalidThreshold("truncated nat needs q >= 1".into()));
        }
        Ok(ValuedMonoid::TruncNat(q))
    }

    /// Clamps the products of `inner` at `q`.
    pub fn clamp(inner: ValuedMonoid, q: Value) -> Result<Self, Error> {
        if !inner.identity_is_least() {
            return Err(Error::InvalidThreshold(format!(
                "clamping {} needs the identity to be least",
                inner.name()
            )));
        }
        if !(q > inner.one()) || !inner.contains(q) {
            return Err(Error::InvalidThreshold(format!("{q} must exceed the identity of {}", inner.name())));
        }
        Ok(match inner {
            ValuedMonoid::TruncNat(k) => match q {
                Value::Fin(x) if x.is_integer() && *x.numer() as u64 <= k => ValuedMonoid::TruncNat(*x.numer() as u64),
                _ => unreachable!(),
            },
            inner => ValuedMonoid::Clamp { inner: Box::new(inner), q },
        })
    }

    pub fn pointed(inner: ValuedMonoid) -> Result<Self, Error> {
        if inner.contains(Value::Bottom) {
            return Err(Error::AlreadyPointed(inner.name()));
        }
        Ok(ValuedMonoid::Pointed(Box::new(inner)))
    }

    pub fn table(t: MonoidTable) -> Result<Self, Error> {
        let n = t.carrier.len();
        if t.one >= n || t.gval.len() != n || t.mul.len() != n || t.mul.iter().any(|r| r.len() != n || r.iter().any(|&i| i >= n)) {
            return Err(Error::Config(format!("malformed monoid table {}", t.name)));
        }
        Ok(ValuedMonoid::Table(Arc::new(t)))
    }

    pub fn name(&self) -> String {
        match self {
            ValuedMonoid::QMax => "qmax".into(),
            ValuedMonoid::QMaxNonneg => "qmax-nonneg".into(),
            ValuedMonoid::TruncNat(q) => format!("trunc-nat:{q}"),
            ValuedMonoid::Clamp { inner, q } => format!("clamp({},{q})", inner.name()),
            ValuedMonoid::Pointed(i) => format!("pointed({})", i.name()),
            ValuedMonoid::Table(t) => t.name.clone(),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            ValuedMonoid::Pointed(i) => i.one(),
            ValuedMonoid::Clamp { inner, .. } => inner.one(),
            ValuedMonoid::Table(t) => t.carrier[t.one],
            _ => Value::int(0),
        }
    }

    pub fn mul(&self, a: Value, b: Value) -> Value {
        match self {
            ValuedMonoid::QMax | ValuedMonoid::QMaxNonneg => match (a, b) {
                (Value::Fin(x), Value::Fin(y)) => Value::Fin(x + y),
                _ => panic!("-inf is not in {}", self.name()),
            },
            ValuedMonoid::TruncNat(q) => match (a, b) {
                (Value::Fin(x), Value::Fin(y)) => Value::Fin((x + y).min(Q::from_integer(*q as i64))),
                _ => panic!("-inf is not in {}", self.name()),
            },
            ValuedMonoid::Clamp { inner, q } => inner.mul(a, b).min(*q),
            ValuedMonoid::Pointed(i) => match (a, b) {
                (Value::Bottom, _) | (_, Value::Bottom) => Value::Bottom,
                _ => i.mul(a, b),
            },
            ValuedMonoid::Table(t) => t.carrier[t.mul[t.idx(a)][t.idx(b)]],
        }
    }

    /// The m-valuation `v`.
    pub fn v(&self, a: Value) -> Value {
        match self {
            ValuedMonoid::Table(t) => t.gval[t.idx(a)],
            _ => a,
        }
    }

    pub fn contains(&self, a: Value) -> bool {
        match self {
            ValuedMonoid::QMax => a != Value::Bottom,
            ValuedMonoid::QMaxNonneg => matches!(a, Value::Fin(x) if x >= Q::from_integer(0)),
            ValuedMonoid::TruncNat(q) => {
                matches!(a, Value::Fin(x) if x.is_integer() && x >= Q::from_integer(0) && x <= Q::from_integer(*q as i64))
            }
            ValuedMonoid::Clamp { inner, q } => inner.contains(a) && a <= *q,
            ValuedMonoid::Pointed(i) => a == Value::Bottom || i.contains(a),
            ValuedMonoid::Table(t) => t.carrier.contains(&a),
        }
    }

    /// The carrier in increasing order, when finite.
    pub fn elements(&self) -> Option<Vec<Value>> {
        match self {
            ValuedMonoid::QMax | ValuedMonoid::QMaxNonneg => None,
            ValuedMonoid::TruncNat(q) => Some((0..=*q as i64).map(Value::int).collect()),
            ValuedMonoid::Clamp { inner, q } => inner
                .elements()
                .map(|v| v.into_iter().filter(|x| x <= q).collect()),
            ValuedMonoid::Pointed(i) => i.elements().map(|v| {
                let mut out = vec![Value::Bottom];
                out.extend(v);
                out
            }),
            ValuedMonoid::Table(t) => {
                let mut v = t.carrier.clone();
                v.sort();
                Some(v)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.elements().is_some()
    }

    /// Declared cancellative infinite monoids, whose ideal of
    /// noncancellative products is known to be empty.
    pub fn is_declared_cancellative(&self) -> bool {
        matches!(self, ValuedMonoid::QMax | ValuedMonoid::QMaxNonneg)
    }

    /// True when every element is `>=` the identity in the induced order.
    pub fn identity_is_least(&self) -> bool {
        match self {
            ValuedMonoid::QMax | ValuedMonoid::Pointed(_) => false,
            ValuedMonoid::QMaxNonneg | ValuedMonoid::TruncNat(_) | ValuedMonoid::Clamp { .. } => true,
            ValuedMonoid::Table(t) => t.carrier.iter().all(|&a| t.gval[t.idx(a)] >= t.gval[t.one]),
        }
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Value {
        match self {
            ValuedMonoid::QMax => Value::Fin(Q::new(rng.gen_range(-24..=24), rng.gen_range(1..=3))),
            ValuedMonoid::QMaxNonneg => Value::Fin(Q::new(rng.gen_range(0..=24), rng.gen_range(1..=3))),
            ValuedMonoid::Clamp { inner, q } => {
                if rng.gen_range(0..8) == 0 {
                    *q
                } else {
                    inner.sample(rng).min(*q)
                }
            }
            ValuedMonoid::Pointed(i) => {
                if rng.gen_range(0..10) == 0 {
                    Value::Bottom
                } else {
                    i.sample(rng)
                }
            }
            _ => {
                let v = self.elements().unwrap();
                v[rng.gen_range(0..v.len())]
            }
        }
    }

    /// Product in `G`, computed through representatives.
    pub fn g_mul(&self, g: Value, h: Value) -> Value {
        match self {
            ValuedMonoid::Table(t) => {
                let rep = |x: Value| {
                    let i = t.gval.iter().position(|&y| y == x).unwrap_or_else(|| panic!("{x} not a value of {}", t.name));
                    t.carrier[i]
                };
                self.v(self.mul(rep(g), rep(h)))
            }
            _ => self.mul(g, h),
        }
    }

    /// An absorbing element that is also `v`-least: the only candidate for
    /// an additive zero of a layered construction.
    pub fn zero_candidate(&self) -> Option<Value> {
        match self {
            ValuedMonoid::Pointed(_) => Some(Value::Bottom),
            ValuedMonoid::Table(_) => {
                let es = self.elements().unwrap();
                es.iter().copied().find(|&z| {
                    es.iter().all(|&b| self.mul(z, b) == z && self.v(z) <= self.v(b))
                })
            }
            _ => None,
        }
    }
}

impl FromStr for ValuedMonoid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "qmax" => Ok(ValuedMonoid::QMax),
            "qmax-nonneg" => Ok(ValuedMonoid::QMaxNonneg),
            t => match t.strip_prefix("trunc-nat:") {
                Some(q) => {
                    let q = q
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad truncation bound in `{s}`")))?;
                    ValuedMonoid::truncated_nat(q)
                }
                None => Err(Error::Parse(format!("unknown monoid `{s}`"))),
            },
        }
    }
}

/// A monoid ideal given by its (finite) element set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonoidIdeal {
    elems: BTreeSet<Value>,
}

impl MonoidIdeal {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_iter(it: impl IntoIterator<Item = Value>) -> Self {
        MonoidIdeal { elems: it.into_iter().collect() }
    }

    pub fn contains(&self, a: Value) -> bool {
        self.elems.contains(&a)
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Value> + '_ {
        self.elems.iter().copied()
    }

    pub fn is_superset_of(&self, other: &MonoidIdeal) -> bool {
        other.elems.is_subset(&self.elems)
    }
}

impl fmt::Display for MonoidIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The ideal of `v`-noncancellative products: `z` with `v(z) = v(ab) = v(ac)`
/// and `v(b) != v(c)`.
pub fn noncancellative_ideal(m: &ValuedMonoid) -> Result<MonoidIdeal, Error> {
    if let Some(es) = m.elements() {
        let mut zs = BTreeSet::new();
        let mut hit_values = BTreeSet::new();
        for &a in &es {
            for &b in &es {
                for &c in &es {
                    if m.v(b) != m.v(c) && m.v(m.mul(a, b)) == m.v(m.mul(a, c)) {
                        hit_values.insert(m.v(m.mul(a, b)));
                    }
                }
            }
        }
        for &z in &es {
            if hit_values.contains(&m.v(z)) {
                zs.insert(z);
            }
        }
        return Ok(MonoidIdeal { elems: zs });
    }
    match m {
        ValuedMonoid::QMax | ValuedMonoid::QMaxNonneg => Ok(MonoidIdeal::empty()),
        // products with a non-minimal factor reach `q` in more than one way
        ValuedMonoid::Clamp { inner, q } if inner.is_declared_cancellative() => Ok(MonoidIdeal::from_iter([*q])),
        ValuedMonoid::Pointed(i) => {
            let mut inner = noncancellative_ideal(i)?;
            inner.elems.insert(Value::Bottom);
            Ok(inner)
        }
        _ => Err(Error::Infinite(format!("{} is infinite and not declared cancellative", m.name()))),
    }
}

/// `a ∈ I ⇒ ab ∈ I`, exhaustive on finite `m`, sampled otherwise.
pub fn is_ideal(m: &ValuedMonoid, ideal: &MonoidIdeal, seed: u64) -> bool {
    let members: Vec<Value> = ideal.elements().collect();
    if members.iter().any(|&a| !m.contains(a)) {
        return false;
    }
    match m.elements() {
        Some(es) => members.iter().all(|&a| es.iter().all(|&b| ideal.contains(m.mul(a, b)))),
        None => {
            let mut rng = crate::check::rng_for(seed, "ideal-closure");
            members.iter().all(|&a| (0..500).all(|_| ideal.contains(m.mul(a, m.sample(&mut rng)))))
        }
    }
}

/// `ab ∈ I ⇒ a ∈ I or b ∈ I`. Requires a finite monoid unless the answer
/// is known structurally.
pub fn is_prime(m: &ValuedMonoid, ideal: &MonoidIdeal) -> Result<bool, Error> {
    match m.elements() {
        Some(es) => Ok(es.iter().all(|&a| {
            es.iter().all(|&b| !ideal.contains(m.mul(a, b)) || ideal.contains(a) || ideal.contains(b))
        })),
        None => match m {
            ValuedMonoid::QMax | ValuedMonoid::QMaxNonneg if ideal.is_empty() => Ok(true),
            ValuedMonoid::Pointed(i) if i.is_declared_cancellative() && ideal.elements().eq([Value::Bottom]) => Ok(true),
            _ => Err(Error::Infinite(format!("primeness over {}", m.name()))),
        },
    }
}

/// `{b : v(b) = v(a) for some a ∈ I}`.
pub fn nu_closure(m: &ValuedMonoid, ideal: &MonoidIdeal) -> MonoidIdeal {
    match m.elements() {
        Some(es) => {
            let vs: BTreeSet<Value> = ideal.elements().map(|a| m.v(a)).collect();
            MonoidIdeal::from_iter(es.into_iter().filter(|&b| vs.contains(&m.v(b))))
        }
        // v is injective on every infinite instance
        None => ideal.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorbingAnalysis {
    /// `a` with `ab = a` for some `b` other than the identity.
    pub partially_absorbing: Vec<Value>,
    pub absorbing: Vec<Value>,
    /// A unique partially absorbing element is absorbing.
    pub uniqueness_lemma_holds: bool,
}

pub fn absorbing_analysis(m: &ValuedMonoid) -> Result<AbsorbingAnalysis, Error> {
    let es = m.elements().ok_or_else(|| Error::Infinite(m.name()))?;
    let one = m.one();
    let partially: Vec<Value> = es
        .iter()
        .copied()
        .filter(|&a| es.iter().any(|&b| b != one && m.mul(a, b) == a))
        .collect();
    let absorbing: Vec<Value> = es
        .iter()
        .copied()
        .filter(|&a| es.iter().all(|&b| m.mul(a, b) == a && m.mul(b, a) == a))
        .collect();
    let lemma = partially.len() != 1 || absorbing.contains(&partially[0]);
    Ok(AbsorbingAnalysis { partially_absorbing: partially, absorbing, uniqueness_lemma_holds: lemma })
}

/// Commutative monoid laws and multiplicativity of `v`.
pub fn check_valued_monoid(m: &ValuedMonoid, budget: u64, seed: u64) -> CheckReport {
    let es = m.elements();
    let draw = |r: &mut ChaCha8Rng| m.sample(r);
    let pool = match &es {
        Some(v) => Pool::All(v),
        None => Pool::Sample { draw: &draw, budget, seed },
    };
    let one = m.one();
    let mut rep = CheckReport::new();
    rep.push(pool.check3("monoid.mul-assoc", |&a, &b, &c| m.mul(m.mul(a, b), c) == m.mul(a, m.mul(b, c))));
    rep.push(pool.check2("monoid.mul-comm", |&a, &b| m.mul(a, b) == m.mul(b, a)));
    rep.push(pool.check1("monoid.identity", |&a| m.mul(a, one) == a));
    rep.push(pool.check2("monoid.closure", |&a, &b| m.contains(m.mul(a, b))));
    // v(ab) depends only on v(a), v(b) and respects the order
    rep.push(pool.check3("monoid.v-order-compat", |&a, &b, &c| {
        m.v(b) > m.v(c) || m.v(m.mul(a, b)) <= m.v(m.mul(a, c))
    }));
    rep.push(pool.check2("monoid.v-well-defined", |&a, &b| {
        m.v(a) != m.v(b) || es.as_ref().map_or(true, |es| es.iter().all(|&c| m.v(m.mul(a, c)) == m.v(m.mul(b, c))))
    }));
    rep
}

/// A pair `(φ_M, φ_G)`.
#[derive(Clone)]
pub struct TripleMorphism {
    pub name: String,
    pub phi_m: Arc<dyn Fn(Value) -> Value + Send + Sync>,
    pub phi_g: Arc<dyn Fn(Value) -> Value + Send + Sync>,
}

impl fmt::Debug for TripleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TripleMorphism({})", self.name)
    }
}

impl TripleMorphism {
    pub fn new(
        name: &str,
        phi_m: impl Fn(Value) -> Value + Send + Sync + 'static,
        phi_g: impl Fn(Value) -> Value + Send + Sync + 'static,
    ) -> Self {
        TripleMorphism { name: name.into(), phi_m: Arc::new(phi_m), phi_g: Arc::new(phi_g) }
    }

    pub fn identity() -> Self {
        Self::new("id", |a| a, |g| g)
    }

    /// Same map on `M` and `G`, for triples with `v = id`.
    pub fn diagonal(name: &str, f: impl Fn(Value) -> Value + Send + Sync + 'static) -> Self {
        let f = Arc::new(f);
        let g = f.clone();
        TripleMorphism { name: name.into(), phi_m: f, phi_g: Arc::new(move |x| g(x)) }
    }

    /// `a ↦ min(a, q)` on integer-valued triples.
    pub fn saturate(q: u64) -> Self {
        let cap = Value::int(q as i64);
        Self::diagonal(&format!("sat{q}"), move |a| a.min(cap))
    }

    pub fn apply(&self, a: Value) -> Value {
        (self.phi_m)(a)
    }

    pub fn apply_g(&self, g: Value) -> Value {
        (self.phi_g)(g)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &TripleMorphism) -> TripleMorphism {
        let (f, g) = (self.phi_m.clone(), other.phi_m.clone());
        let (fg, gg) = (self.phi_g.clone(), other.phi_g.clone());
        TripleMorphism {
            name: format!("{};{}", self.name, other.name),
            phi_m: Arc::new(move |a| g(f(a))),
            phi_g: Arc::new(move |x| gg(fg(x))),
        }
    }
}

/// Multiplicativity of both parts, order preservation of `φ_G`, and
/// `v'(φ_M(a)) = φ_G(v(a))`.
pub fn check_triple_morphism(f: &TripleMorphism, src: &ValuedMonoid, dst: &ValuedMonoid, budget: u64, seed: u64) -> CheckReport {
    let es = src.elements();
    let draw = |r: &mut ChaCha8Rng| src.sample(r);
    let pool = match &es {
        Some(v) => Pool::All(v),
        None => Pool::Sample { draw: &draw, budget, seed },
    };
    let mut rep = CheckReport::new();
    let one_ok = f.apply(src.one()) == dst.one();
    rep.push(Entry::verdict("triple.unit", one_ok, || format!("({})", src.one()), 1));
    rep.push(pool.check1("triple.well-typed", |&a| dst.contains(f.apply(a))));
    rep.push(pool.check2("triple.phi-m-mul", |&a, &b| f.apply(src.mul(a, b)) == dst.mul(f.apply(a), f.apply(b))));
    rep.push(pool.check2("triple.phi-g-mul", |&a, &b| {
        let (ga, gb) = (src.v(a), src.v(b));
        f.apply_g(src.g_mul(ga, gb)) == dst.g_mul(f.apply_g(ga), f.apply_g(gb))
    }));
    rep.push(pool.check2("triple.phi-g-monotone", |&a, &b| {
        src.v(a) > src.v(b) || f.apply_g(src.v(a)) <= f.apply_g(src.v(b))
    }));
    rep.push(pool.check1("triple.compatibility", |&a| dst.v(f.apply(a)) == f.apply_g(src.v(a))));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_ideal(q: i64) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for a in 0..=q {
            for b in 0..=q {
                for c in 0..=q {
                    let (x, y) = ((a + b).min(q), (a + c).min(q));
                    if b != c && x == y {
                        out.insert(x);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn truncnat_values() {
        let m = ValuedMonoid::truncated_nat(5).unwrap();
        assert_eq!(m.mul(Value::int(3), Value::int(4)), Value::int(5));
        assert_eq!(m.mul(Value::int(2), Value::int(2)), Value::int(4));
        assert_eq!(ValuedMonoid::qmax().mul(Value::int(3), Value::int(4)), Value::int(7));
        assert_eq!(ValuedMonoid::qmax().one(), Value::int(0));
    }

    #[test]
    fn ideals_match_brute_force() {
        for q in 1..=6 {
            let m = ValuedMonoid::truncated_nat(q).unwrap();
            let got: BTreeSet<i64> = noncancellative_ideal(&m)
                .unwrap()
                .elements()
                .map(|v| v.as_q().unwrap().to_integer())
                .collect();
            assert_eq!(got, brute_ideal(q as i64));
            assert!(is_ideal(&m, &noncancellative_ideal(&m).unwrap(), 0));
        }
        assert!(noncancellative_ideal(&ValuedMonoid::qmax()).unwrap().is_empty());
    }

    #[test]
    fn absorbing() {
        let a = absorbing_analysis(&ValuedMonoid::truncated_nat(5).unwrap()).unwrap();
        assert_eq!(a.absorbing, vec![Value::int(5)]);
        assert_eq!(a.partially_absorbing, vec![Value::int(5)]);
        assert!(a.uniqueness_lemma_holds);
        let triv = ValuedMonoid::table(MonoidTable {
            name: "one".into(),
            carrier: vec![Value::int(0)],
            mul: vec![vec![0]],
            one: 0,
            gval: vec![Value::int(0)],
        })
        .unwrap();
        assert_eq!(absorbing_analysis(&triv).unwrap().absorbing, vec![Value::int(0)]);
        assert_eq!(absorbing_analysis(&ValuedMonoid::TruncNat(1)).unwrap().absorbing, vec![Value::int(1)]);
    }

    #[test]
    fn triple_morphisms() {
        let m5 = ValuedMonoid::truncated_nat(5).unwrap();
        let m7 = ValuedMonoid::truncated_nat(7).unwrap();
        assert!(check_triple_morphism(&TripleMorphism::identity(), &m5, &m5, 0, 0).all_pass());
        assert!(check_triple_morphism(&TripleMorphism::saturate(5), &m7, &m5, 0, 0).all_pass());
        let shift = TripleMorphism::diagonal("shift", |a| match a {
            Value::Fin(x) => Value::Fin((x + 1).min(Q::from_integer(5))),
            b => b,
        });
        let r = check_triple_morphism(&shift, &m5, &m5, 0, 0);
        assert!(!r.passed("triple.unit"));
        assert_eq!(r.get("triple.unit").unwrap().witness.as_deref(), Some("(0)"));
    }

    #[test]
    fn monoid_laws() {
        for m in [ValuedMonoid::qmax(), ValuedMonoid::TruncNat(5), ValuedMonoid::pointed(ValuedMonoid::qmax()).unwrap()] {
            assert!(check_valued_monoid(&m, 2000, 1).all_pass(), "{}", m.name());
        }
    }

    #[test]
    fn primeness() {
        let m = ValuedMonoid::TruncNat(5);
        assert!(!is_prime(&m, &noncancellative_ideal(&m).unwrap()).unwrap());
        let m1 = ValuedMonoid::TruncNat(1);
        assert!(is_prime(&m1, &noncancellative_ideal(&m1).unwrap()).unwrap());
    }
}

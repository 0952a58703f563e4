//! Derived constructions: relayering, the two truncations, zero and
//! zero-layer adjunction, the ghost extension `U(R)` and the standard
//! supertropical degeneration.

use crate::error::Error;
use crate::layered::{nu_equiv, Elem, IdealSpec, Layered, LayeredSemiring, Structure, ZeroLayer};
use crate::monoids::{MonoidIdeal, Value, ValuedMonoid};
use crate::sorting::{Sort, SortingSemiring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;

/// A subset of a pair construction, by membership rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemIdeal {
    Explicit(BTreeSet<Elem>),
    /// `{x : v(x) >= t}`.
    NuAtLeast(Value),
    /// `{x : v(x) > t}`.
    NuAbove(Value),
    /// `{x : v(x) ∈ S}`.
    NuIn(BTreeSet<Value>),
}

impl ElemIdeal {
    pub fn contains(&self, r: &LayeredSemiring, x: &Elem) -> bool {
        let v = r.nu(x);
        match self {
            ElemIdeal::Explicit(s) => s.contains(x),
            ElemIdeal::NuAtLeast(t) => v >= *t,
            ElemIdeal::NuAbove(t) => v > *t,
            ElemIdeal::NuIn(s) => s.contains(&v),
        }
    }

    /// `{b : b ≅_ν a for some a in the ideal}`.
    pub fn nu_closure(&self, r: &LayeredSemiring) -> ElemIdeal {
        match self {
            ElemIdeal::Explicit(s) => ElemIdeal::NuIn(s.iter().map(|x| r.nu(x)).collect()),
            other => other.clone(),
        }
    }

    pub fn is_empty_rule(&self) -> bool {
        matches!(self, ElemIdeal::Explicit(s) if s.is_empty()) || matches!(self, ElemIdeal::NuIn(s) if s.is_empty())
    }
}

/// `R_𝔞`: the operations of `R`, with every element of `𝔞` moved to sort 0.
#[derive(Clone, Debug)]
pub struct Relayered {
    pub base: LayeredSemiring,
    pub ideal: ElemIdeal,
}

/// Validates that `ideal` absorbs products, exhaustively or on samples.
fn ideal_witness(r: &LayeredSemiring, ideal: &ElemIdeal, seed: u64) -> Option<String> {
    let members_and_all: (Vec<Elem>, Vec<Elem>) = match r.elements() {
        Some(es) => (es.iter().copied().filter(|x| ideal.contains(r, x)).collect(), es),
        None => {
            let mut rng = crate::check::rng_for(seed, "relayer.ideal");
            let all: Vec<Elem> = (0..400).map(|_| r.sample(&mut rng)).collect();
            let mut mem: Vec<Elem> = all.iter().copied().filter(|x| ideal.contains(r, x)).collect();
            if let ElemIdeal::Explicit(s) = ideal {
                mem.extend(s.iter().copied());
            }
            (mem, all)
        }
    };
    let (members, all) = members_and_all;
    for a in &members {
        if !r.contains(a) {
            return Some(format!("({a}) is not in the carrier"));
        }
        for b in &all {
            let p = r.mul(a, b);
            if !ideal.contains(r, &p) {
                return Some(format!("({a}, {b}) -> {p}"));
            }
        }
    }
    None
}

pub fn relayer(r: &LayeredSemiring, ideal: ElemIdeal, use_nu_closure: bool) -> Result<Relayered, Error> {
    let ideal = if use_nu_closure { ideal.nu_closure(r) } else { ideal };
    if let Some(w) = ideal_witness(r, &ideal, 0) {
        return Err(Error::NotAnIdeal(w));
    }
    Ok(Relayered { base: r.clone(), ideal })
}

impl Structure for Relayered {
    type E = Elem;

    fn name(&self) -> String {
        format!("{} relayered by {:?}", self.base.name(), self.ideal)
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.base.add(a, b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.base.mul(a, b)
    }
    fn one(&self) -> Elem {
        self.base.one()
    }
    fn contains(&self, a: &Elem) -> bool {
        self.base.contains(a)
    }
    fn elements(&self) -> Option<Vec<Elem>> {
        self.base.elements()
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Elem {
        self.base.sample(rng)
    }
    fn zero(&self) -> Option<Elem> {
        self.base.zero()
    }
}

impl Layered for Relayered {
    fn sorting(&self) -> &SortingSemiring {
        self.base.sorting()
    }
    fn sort(&self, a: &Elem) -> Sort {
        if self.ideal.contains(&self.base, a) {
            Sort::ZERO
        } else {
            a.sort
        }
    }
    fn nu(&self, a: &Elem) -> Value {
        self.base.nu(a)
    }
    fn transition(&self, m: Sort, a: &Elem) -> Result<Elem, Error> {
        if self.sort(a).is_zero() {
            return Err(Error::InvalidTransition(format!("{a} lies in the relayered zero layer")));
        }
        self.base.transition(m, a)
    }
    fn tangible_root(&self, a: &Elem) -> Option<Elem> {
        let b = self.base.tangible_root(a)?;
        (self.sort(&b) == Sort::ONE && self.sort(a) != Sort::ZERO).then_some(b)
    }
}

/// The ν-truncation at `q`: values `< q` plus the element `⟨q⟩⁰`, which
/// absorbs every product reaching `q` and every sum. `qmax` is replaced by
/// its nonnegative part, since the construction needs the identity least.
pub fn nu_truncate(l: &SortingSemiring, m: &ValuedMonoid, q: Value) -> Result<LayeredSemiring, Error> {
    let base = match m {
        ValuedMonoid::QMax => ValuedMonoid::QMaxNonneg,
        other => other.clone(),
    };
    let clamped = ValuedMonoid::clamp(base, q)?;
    LayeredSemiring::build(l.clone(), clamped, IdealSpec::Auto)
}

/// Caps every sort at `m`.
pub fn l_truncate(r: &LayeredSemiring, m: Sort) -> Result<LayeredSemiring, Error> {
    Ok(r.with_sorting(r.sorting().cap(m)?))
}

/// Adjoins an absorbing `-∞` at sort 0, which becomes the zero element.
pub fn adjoin_zero(r: &LayeredSemiring) -> Result<LayeredSemiring, Error> {
    if let Some(z) = r.zero() {
        return Err(Error::AlreadyPointed(format!("{} has zero {z}", r.name())));
    }
    let m = ValuedMonoid::pointed(r.monoid().clone())?;
    match r.zero_layer() {
        ZeroLayer::Full => Ok(LayeredSemiring::with_full_zero_layer(r.sorting().clone(), m)),
        ZeroLayer::Ideal => {
            let mut ideal: Vec<Value> = r.ideal().elements().collect();
            ideal.push(Value::Bottom);
            LayeredSemiring::build(r.sorting().clone(), m, IdealSpec::Given(MonoidIdeal::from_iter(ideal)))
        }
    }
}

/// Adjoins the whole layer `e₀R₁`, a copy of the tangible layer at sort 0.
pub fn adjoin_zero_layer(r: &LayeredSemiring) -> Result<LayeredSemiring, Error> {
    if r.zero_layer() != ZeroLayer::Ideal || !r.ideal().is_empty() {
        return Err(Error::NotUniform(format!("{} already has a zero layer", r.name())));
    }
    Ok(LayeredSemiring::with_full_zero_layer(r.sorting().clone(), r.monoid().clone()))
}

/// Element of `U(R) = R ∪̇ R_∞`; ghosts are indexed by `G`-values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UElem {
    T(Elem),
    G(Value),
}

impl fmt::Display for UElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UElem::T(e) => write!(f, "{e}"),
            UElem::G(v) => write!(f, "{v}@nu"),
        }
    }
}

/// `U(R)`. The mixed rules are `a·b^ν = (ab)^ν` and `a + b^ν = a` when
/// `ea > eb`, otherwise `b^ν`. Ghosts are the limit of the positive layers,
/// so a ghost product falling into the ideal is the sort-0 element itself,
/// and `ν` fixes the zero layer.
#[derive(Clone, Debug)]
pub struct Ghosted {
    pub base: LayeredSemiring,
}

pub fn build_u(r: &LayeredSemiring) -> Ghosted {
    Ghosted { base: r.clone() }
}

impl Ghosted {
    fn m(&self) -> &ValuedMonoid {
        self.base.monoid()
    }

    /// The zero-layer element with `G`-value `g`, if any.
    fn ideal_elem(&self, g: Value) -> Option<Elem> {
        if self.base.zero_layer() != ZeroLayer::Ideal {
            return None;
        }
        let m = self.m();
        if m.contains(g) && m.v(g) == g && self.base.ideal().contains(g) {
            return Some(Elem::new(g, Sort::ZERO));
        }
        self.base.ideal().elements().find(|&a| m.v(a) == g).map(|a| Elem::new(a, Sort::ZERO))
    }

    fn lift(&self, g: Value) -> UElem {
        match self.ideal_elem(g) {
            Some(a) => UElem::T(a),
            None => UElem::G(g),
        }
    }

    /// `ν_U`.
    pub fn nu_map(&self, x: &UElem) -> UElem {
        match x {
            UElem::T(a) if a.sort.is_zero() && self.base.zero_layer() == ZeroLayer::Ideal => *x,
            UElem::T(a) => UElem::G(self.base.nu(a)),
            g => *g,
        }
    }

    /// `e = ν(1)`.
    pub fn e(&self) -> UElem {
        self.nu_map(&UElem::T(self.base.one()))
    }

    /// `G`-values of the positive layers.
    pub fn ghost_values(&self) -> Option<Vec<Value>> {
        let m = self.m();
        let vs: BTreeSet<Value> = m
            .elements()?
            .into_iter()
            .filter(|&a| self.ideal_elem(m.v(a)).is_none())
            .map(|a| m.v(a))
            .collect();
        Some(vs.into_iter().collect())
    }

    pub fn is_ghost(&self, x: &UElem) -> bool {
        matches!(x, UElem::G(_))
    }
}

impl Structure for Ghosted {
    type E = UElem;

    fn name(&self) -> String {
        format!("U({})", self.base.name())
    }

    fn add(&self, x: &UElem, y: &UElem) -> UElem {
        use UElem::*;
        match (x, y) {
            (T(a), T(b)) => T(self.base.add(a, b)),
            (G(g), G(h)) => G(*g.max(h)),
            (T(a), G(h)) | (G(h), T(a)) => {
                if self.base.nu(a) > *h {
                    T(*a)
                } else {
                    G(*h)
                }
            }
        }
    }

    fn mul(&self, x: &UElem, y: &UElem) -> UElem {
        use UElem::*;
        match (x, y) {
            (T(a), T(b)) => T(self.base.mul(a, b)),
            (G(g), G(h)) => self.lift(self.m().g_mul(*g, *h)),
            (T(a), G(h)) | (G(h), T(a)) => self.lift(self.m().g_mul(self.base.nu(a), *h)),
        }
    }

    fn one(&self) -> UElem {
        UElem::T(self.base.one())
    }

    fn contains(&self, x: &UElem) -> bool {
        match x {
            UElem::T(a) => self.base.contains(a),
            UElem::G(g) => {
                self.ideal_elem(*g).is_none()
                    && match self.ghost_values() {
                        Some(vs) => vs.contains(g),
                        None => self.m().contains(*g),
                    }
            }
        }
    }

    fn elements(&self) -> Option<Vec<UElem>> {
        let mut out: Vec<UElem> = self.base.elements()?.into_iter().map(UElem::T).collect();
        out.extend(self.ghost_values()?.into_iter().map(UElem::G));
        out.sort();
        Some(out)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> UElem {
        let a = self.base.sample(rng);
        if rng.gen_range(0..4) == 0 {
            self.nu_map(&UElem::T(a))
        } else {
            UElem::T(a)
        }
    }

    fn zero(&self) -> Option<UElem> {
        self.base.zero().map(UElem::T)
    }
}

impl Layered for Ghosted {
    fn sorting(&self) -> &SortingSemiring {
        self.base.sorting()
    }
    /// Ghosts sit at the top sort.
    fn sort(&self, x: &UElem) -> Sort {
        match x {
            UElem::T(a) => a.sort,
            UElem::G(_) => self.base.sorting().top(),
        }
    }
    fn nu(&self, x: &UElem) -> Value {
        match x {
            UElem::T(a) => self.base.nu(a),
            UElem::G(g) => *g,
        }
    }
    fn transition(&self, m: Sort, x: &UElem) -> Result<UElem, Error> {
        match x {
            UElem::T(a) => self.base.transition(m, a).map(UElem::T),
            UElem::G(_) if m == self.base.sorting().top() => Ok(*x),
            UElem::G(_) => Err(Error::InvalidTransition(format!("{x} only maps to the top sort"))),
        }
    }
}

/// `R_∞` as a semiring in its own right, with unit `e`.
#[derive(Clone, Debug)]
pub struct GhostLayer {
    pub u: Ghosted,
}

impl Ghosted {
    pub fn ghost_layer(&self) -> GhostLayer {
        GhostLayer { u: self.clone() }
    }
}

impl Structure for GhostLayer {
    type E = UElem;

    fn name(&self) -> String {
        format!("Rinf({})", self.u.base.name())
    }
    fn add(&self, x: &UElem, y: &UElem) -> UElem {
        self.u.add(x, y)
    }
    fn mul(&self, x: &UElem, y: &UElem) -> UElem {
        self.u.mul(x, y)
    }
    fn one(&self) -> UElem {
        self.u.e()
    }
    fn contains(&self, x: &UElem) -> bool {
        self.u.contains(x) && self.u.nu_map(x) == *x
    }
    fn elements(&self) -> Option<Vec<UElem>> {
        Some(self.u.elements()?.into_iter().filter(|x| self.contains(x)).collect())
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> UElem {
        self.u.nu_map(&self.u.sample(rng))
    }
    fn zero(&self) -> Option<UElem> {
        self.u.zero().map(|z| self.u.nu_map(&z))
    }
}

impl Layered for GhostLayer {
    fn sorting(&self) -> &SortingSemiring {
        self.u.sorting()
    }
    fn sort(&self, x: &UElem) -> Sort {
        self.u.sort(x)
    }
    fn nu(&self, x: &UElem) -> Value {
        self.u.nu(x)
    }
    fn transition(&self, m: Sort, x: &UElem) -> Result<UElem, Error> {
        self.u.transition(m, x)
    }
}

/// `R_{1,∞} = R₁ ∪̇ 𝒢` with `⊕`: the larger ν-value wins and ties go to
/// the ghost ideal `𝒢 = R₀ ∪ R_∞`, which is the image of `ν_U`.
#[derive(Clone, Debug)]
pub struct Standard {
    pub u: Ghosted,
    sorting: SortingSemiring,
}

pub fn degenerate_standard(r: &LayeredSemiring) -> Standard {
    Standard { u: build_u(r), sorting: SortingSemiring::trivial01inf() }
}

impl Standard {
    fn e_val(&self, x: &UElem) -> Value {
        self.u.nu(x)
    }

    /// `U → R_{1,∞}`: identity on `R₁ ∪ 𝒢`, `ν` elsewhere.
    pub fn project(&self, x: &UElem) -> UElem {
        match x {
            UElem::T(a) if a.sort == Sort::ONE => *x,
            _ => self.u.nu_map(x),
        }
    }

    pub fn is_ghost(&self, x: &UElem) -> bool {
        self.u.nu_map(x) == *x
    }
}

impl Structure for Standard {
    type E = UElem;

    fn name(&self) -> String {
        format!("R1inf({})", self.u.base.name())
    }

    fn add(&self, x: &UElem, y: &UElem) -> UElem {
        let (ex, ey) = (self.e_val(x), self.e_val(y));
        if ex > ey {
            *x
        } else if ex < ey {
            *y
        } else {
            self.u.nu_map(x)
        }
    }

    fn mul(&self, x: &UElem, y: &UElem) -> UElem {
        self.project(&self.u.mul(x, y))
    }

    fn one(&self) -> UElem {
        self.u.one()
    }

    fn contains(&self, x: &UElem) -> bool {
        self.u.contains(x) && self.project(x) == *x
    }

    fn elements(&self) -> Option<Vec<UElem>> {
        Some(self.u.elements()?.into_iter().filter(|x| self.contains(x)).collect())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> UElem {
        self.project(&self.u.sample(rng))
    }

    fn zero(&self) -> Option<UElem> {
        self.u.zero()
    }
}

impl Layered for Standard {
    fn sorting(&self) -> &SortingSemiring {
        &self.sorting
    }
    fn sort(&self, x: &UElem) -> Sort {
        match x {
            UElem::T(a) if a.sort.is_zero() => Sort::ZERO,
            UElem::T(_) => Sort::ONE,
            UElem::G(_) => Sort::Inf,
        }
    }
    fn nu(&self, x: &UElem) -> Value {
        self.e_val(x)
    }
    fn transition(&self, m: Sort, x: &UElem) -> Result<UElem, Error> {
        match (self.sort(x), m) {
            (s, m) if s == m && !s.is_zero() => Ok(*x),
            (Sort::Fin(1), Sort::Inf) => Ok(self.u.nu_map(x)),
            _ => Err(Error::InvalidTransition(format!("ν_{{{m}}} on {x}"))),
        }
    }
}

/// `a ⊕ b ≅_ν a + b`, comparing against the addition of `U`.
pub fn oplus_matches_sum(s: &Standard, a: &UElem, b: &UElem) -> bool {
    nu_equiv(&s.u, &s.add(a, b), &s.u.add(a, b))
}

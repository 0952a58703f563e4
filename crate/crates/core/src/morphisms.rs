//! Maps between layered structures and their checkers: homomorphisms,
//! 0-excepted, surpassing and surpassed maps, layered morphisms,
//! supervaluations with domination, and transmissions.

use crate::axioms::CheckConfig;
use crate::check::{rng_for, CheckReport, Entry, Pool};
use crate::error::Error;
use crate::layered::{nu_equiv, nu_leq, power, surpasses_l, surpasses_lnu, Layered};
use crate::monoids::Q;
use crate::sorting::{Sort, SortingSemiring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Carriers with more elements than this are sampled.
pub const EXHAUSTIVE_LIMIT: usize = 64;

fn elems_of<R: Layered>(r: &R) -> Option<Vec<R::E>> {
    r.elements().filter(|v| v.len() <= EXHAUSTIVE_LIMIT)
}

fn with_pool<R: Layered, T>(r: &R, cfg: CheckConfig, f: impl FnOnce(&Pool<'_, R::E>) -> T) -> T {
    let elems = elems_of(r);
    let draw = |rng: &mut ChaCha8Rng| r.sample(rng);
    let pool = match &elems {
        Some(v) => Pool::All(v),
        None => Pool::Sample { draw: &draw, budget: cfg.budget, seed: cfg.seed },
    };
    f(&pool)
}

/// Sorts of `l` to quantify over.
fn sorts_of(l: &SortingSemiring) -> Vec<Sort> {
    l.elements().unwrap_or_else(|| {
        let mut v: Vec<Sort> = (0..=12).map(Sort::Fin).collect();
        v.push(Sort::Inf);
        v
    })
}

/// `n · 1_L` for `n = 1, 2, …` until the values repeat, at most `cap` terms.
pub fn one_multiples(l: &SortingSemiring, cap: usize) -> Vec<Sort> {
    let mut out = vec![l.one()];
    while out.len() < cap {
        let next = l.add(*out.last().unwrap(), l.one());
        if out.contains(&next) {
            break;
        }
        out.push(next);
    }
    out
}

/// `Φ = (φ, ρ)`.
pub struct LayeredMap<'a, S: Layered, D: Layered> {
    pub name: String,
    pub src: &'a S,
    pub dst: &'a D,
    phi: Box<dyn Fn(&S::E) -> D::E + Sync + 'a>,
    rho: Box<dyn Fn(Sort) -> Sort + Sync + 'a>,
}

impl<S: Layered, D: Layered> fmt::Debug for LayeredMap<'_, S, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LayeredMap({}: {} -> {})", self.name, self.src.name(), self.dst.name())
    }
}

impl<'a, S: Layered, D: Layered> LayeredMap<'a, S, D> {
    pub fn new(
        name: impl Into<String>,
        src: &'a S,
        dst: &'a D,
        phi: impl Fn(&S::E) -> D::E + Sync + 'a,
        rho: impl Fn(Sort) -> Sort + Sync + 'a,
    ) -> Self {
        LayeredMap { name: name.into(), src, dst, phi: Box::new(phi), rho: Box::new(rho) }
    }

    /// `ρ = id`.
    pub fn natural(name: impl Into<String>, src: &'a S, dst: &'a D, phi: impl Fn(&S::E) -> D::E + Sync + 'a) -> Self {
        Self::new(name, src, dst, phi, |s| s)
    }

    pub fn apply(&self, a: &S::E) -> D::E {
        (self.phi)(a)
    }

    pub fn rho(&self, s: Sort) -> Sort {
        (self.rho)(s)
    }
}

impl<'a, R: Layered> LayeredMap<'a, R, R> {
    pub fn identity(r: &'a R) -> Self {
        Self::natural("id", r, r, |a| a.clone())
    }
}

/// `a ↦ a^m`.
pub fn frobenius_map<R: Layered>(r: &R, m: u32) -> LayeredMap<'_, R, R> {
    LayeredMap::natural(format!("frobenius-{m}"), r, r, move |a| power(r, a, m))
}

fn monoid_checks<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, p: &Pool<'_, S::E>, prefix: &str) -> CheckReport {
    let (s, d) = (f.src, f.dst);
    let mut rep = CheckReport::new();
    rep.push(Entry::verdict(
        format!("{prefix}.one"),
        f.apply(&s.one()) == d.one(),
        || format!("({} -> {})", s.one(), f.apply(&s.one())),
        1,
    ));
    rep.push(p.check1(&format!("{prefix}.well-typed"), |a| d.contains(&f.apply(a))));
    rep.push(p.check2(&format!("{prefix}.mul"), |a, b| f.apply(&s.mul(a, b)) == d.mul(&f.apply(a), &f.apply(b))));
    rep
}

/// Multiplicativity, additivity and unit preservation.
pub fn check_semiring_hom<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, cfg: CheckConfig) -> CheckReport {
    with_pool(f.src, cfg, |p| {
        let mut rep = monoid_checks(f, p, "hom");
        rep.push(p.check2("hom.add", |a, b| f.apply(&f.src.add(a, b)) == f.dst.add(&f.apply(a), &f.apply(b))));
        rep
    })
}

fn rho_checks<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, prefix: &str) -> CheckReport {
    let (l, l2) = (f.src.sorting(), f.dst.sorting());
    let ks = sorts_of(l);
    let sorts = Pool::All(&ks);
    let mut rep = CheckReport::new();
    rep.push(sorts.check2(&format!("{prefix}.rho-monotone"), |&a, &b| !l.leq(a, b) || l2.leq(f.rho(a), f.rho(b))));
    rep.push(sorts.check2(&format!("{prefix}.rho-hom"), |&a, &b| {
        f.rho(l.add(a, b)) == l2.add(f.rho(a), f.rho(b)) && f.rho(l.mul(a, b)) == l2.mul(f.rho(a), f.rho(b))
    }));
    rep.push(Entry::verdict(
        format!("{prefix}.rho-units"),
        f.rho(l.zero()) == l2.zero() && f.rho(l.one()) == l2.one(),
        || format!("(rho(0)={}, rho(1)={})", f.rho(l.zero()), f.rho(l.one())),
        2,
    ));
    rep
}

/// `φ(e_{n·1}) = e'_{n·1}` for the sorts generated by 1.
fn phidet<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, law: &str) -> Entry {
    let ns = one_multiples(f.src.sorting(), 8);
    let ms = one_multiples(f.dst.sorting(), 8);
    let mut bad = None;
    for (i, &k) in ns.iter().enumerate() {
        let target = ms[i.min(ms.len() - 1)];
        let (Ok(e), Ok(e2)) = (f.src.transition(k, &f.src.one()), f.dst.transition(target, &f.dst.one())) else {
            continue;
        };
        if f.apply(&e) != e2 {
            bad = Some(format!("({e} -> {}, expected {e2})", f.apply(&e)));
            break;
        }
    }
    match bad {
        Some(w) => Entry::fail(law, w, ns.len() as u64),
        None => Entry::pass(law, ns.len() as u64),
    }
}

/// Semiring homomorphism plus M1 on `ρ`, M2′ on sorts, `φ(e_ℓ) = e′_ℓ`
/// and `φ(e_ℓ a₁) = e′_ℓ φ(a₁)`.
pub fn check_layered_hom<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, cfg: CheckConfig) -> CheckReport {
    let mut rep = check_semiring_hom(f, cfg);
    rep.extend(rho_checks(f, "layered"));
    let l2 = f.dst.sorting();
    with_pool(f.src, cfg, |p| {
        rep.push(p.check1("layered.M2prime", |a| {
            let s2 = f.dst.sort(&f.apply(a));
            s2.is_zero() || l2.leq(f.rho(f.src.sort(a)), s2)
        }));
        rep.push(phidet(f, "layered.phidet"));
        let ns = one_multiples(f.src.sorting(), 8);
        rep.push(p.check1("layered.M3-units", |a| {
            if f.src.sort(a) != Sort::ONE {
                return true;
            }
            ns.iter().all(|&k| match f.src.transition(k, &f.src.one()) {
                Ok(e) => f.apply(&f.src.mul(&e, a)) == f.dst.mul(&f.apply(&e), &f.apply(a)),
                Err(_) => true,
            })
        }));
    });
    rep
}

/// Monoid homomorphism, additive on pairs of positive sort.
pub fn check_zero_excepted<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, cfg: CheckConfig) -> CheckReport {
    with_pool(f.src, cfg, |p| {
        let mut rep = monoid_checks(f, p, "zero-excepted");
        rep.push(p.check2("zero-excepted.add", |a, b| {
            f.src.sort(a).is_zero()
                || f.src.sort(b).is_zero()
                || f.apply(&f.src.add(a, b)) == f.dst.add(&f.apply(a), &f.apply(b))
        }));
        rep
    })
}

/// `φ(a+b) ⊨_{L,ν} φ(a) + φ(b)`, and the ν-monotonicity it implies.
pub fn check_surpassing_map<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, cfg: CheckConfig) -> CheckReport {
    with_pool(f.src, cfg, |p| {
        let mut rep = monoid_checks(f, p, "surpassing");
        rep.push(p.check2("surpassing.add", |a, b| {
            surpasses_lnu(f.dst, &f.apply(&f.src.add(a, b)), &f.dst.add(&f.apply(a), &f.apply(b)))
        }));
        rep.push(p.check2("surpassing.nu-monotone", |a, b| {
            !nu_leq(f.src, b, a) || nu_leq(f.dst, &f.apply(b), &f.apply(a))
        }));
        rep
    })
}

/// `φ(a) + φ(b) ⊨_{L,ν} φ(a+b)`.
pub fn check_surpassed_map<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, cfg: CheckConfig) -> CheckReport {
    with_pool(f.src, cfg, |p| {
        let mut rep = monoid_checks(f, p, "surpassed");
        rep.push(p.check2("surpassed.add", |a, b| {
            surpasses_lnu(f.dst, &f.dst.add(&f.apply(a), &f.apply(b)), &f.apply(&f.src.add(a, b)))
        }));
        rep
    })
}

/// Rebuilds `φ(a)` from `φ` on `R₀ ∪ R₁` as `(φ(1)+…+φ(1))·φ(a₁)`, with
/// `a = e_k a₁` and `k = n·1`. `None` when `a` is not of that shape.
pub fn reconstruct<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, a: &S::E) -> Option<D::E> {
    let s = f.src.sort(a);
    if s.is_zero() || s == Sort::ONE {
        return Some(f.apply(a));
    }
    let n = one_multiples(f.src.sorting(), 64).iter().position(|&k| k == s)? + 1;
    let a1 = f.src.tangible_root(a)?;
    let one = f.apply(&f.src.one());
    let mut ek = one.clone();
    for _ in 1..n {
        ek = f.dst.add(&ek, &one);
    }
    Some(f.dst.mul(&ek, &f.apply(&a1)))
}

/// Zero-excepted homomorphism with `ρ` a semiring homomorphism and M1–M3,
/// plus determination by the action on `R₀ ∪ R₁`.
pub fn check_layered_morphism<S: Layered, D: Layered>(f: &LayeredMap<'_, S, D>, cfg: CheckConfig) -> CheckReport {
    let mut rep = check_zero_excepted(f, cfg);
    rep.extend(rho_checks(f, "morphism"));
    let (l, l2) = (f.src.sorting(), f.dst.sorting());
    let ks = sorts_of(l);
    with_pool(f.src, cfg, |p| {
        rep.push(p.check1("morphism.M1", |a| {
            let s2 = f.dst.sort(&f.apply(a));
            s2.is_zero() || l2.leq(f.rho(f.src.sort(a)), s2)
        }));
        rep.push(p.check1("morphism.M2", |a| {
            let k = f.src.sort(a);
            k.is_zero()
                || ks.iter().filter(|&&m| l.leq(k, m)).all(|&m| match f.src.transition(m, a) {
                    Ok(b) => nu_equiv(f.dst, &f.apply(&b), &f.apply(a)),
                    Err(_) => true,
                })
        }));
        rep.push(p.check2("morphism.M3", |a, b| !nu_equiv(f.src, a, b) || nu_equiv(f.dst, &f.apply(a), &f.apply(b))));
        rep.push(p.check1("morphism.determined", |a| reconstruct(f, a).map_or(true, |x| x == f.apply(a))));
    });
    rep
}

/// A ring presented by its operations and a sampler.
pub trait RingDomain: Sync {
    type T: Clone + PartialEq + fmt::Display + Send + Sync;

    fn name(&self) -> String;
    fn add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
    fn zero(&self) -> Self::T;
    fn one(&self) -> Self::T;
    fn is_unit(&self, a: &Self::T) -> bool;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::T;

    fn is_zero(&self, a: &Self::T) -> bool {
        *a == self.zero()
    }

    fn sample_nonzero(&self, rng: &mut ChaCha8Rng) -> Self::T {
        loop {
            let a = self.sample(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }
}

/// `ℚ` with small random elements.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl RingDomain for Rationals {
    type T = Q;

    fn name(&self) -> String {
        "Q".into()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn zero(&self) -> Q {
        Q::from_integer(0)
    }
    fn one(&self) -> Q {
        Q::from_integer(1)
    }
    fn is_unit(&self, a: &Q) -> bool {
        !self.is_zero(a)
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Q {
        if rng.gen_range(0..8) == 0 {
            return self.zero();
        }
        Q::new(rng.gen_range(-20..=20), rng.gen_range(1..=20))
    }
}

/// `Φ : W → R`, or `W^× → R` when `nonzero_only`.
pub struct Supervaluation<'a, W: RingDomain, R: Layered> {
    pub name: String,
    pub domain: &'a W,
    pub target: &'a R,
    pub nonzero_only: bool,
    phi: Box<dyn Fn(&W::T) -> R::E + Sync + 'a>,
    /// Picks a preimage of an element of `Φ(W)`.
    section: Option<Box<dyn Fn(&R::E) -> Option<W::T> + Sync + 'a>>,
}

impl<'a, W: RingDomain, R: Layered> Supervaluation<'a, W, R> {
    pub fn new(
        name: impl Into<String>,
        domain: &'a W,
        target: &'a R,
        nonzero_only: bool,
        phi: impl Fn(&W::T) -> R::E + Sync + 'a,
    ) -> Self {
        Supervaluation { name: name.into(), domain, target, nonzero_only, phi: Box::new(phi), section: None }
    }

    pub fn with_section(mut self, section: impl Fn(&R::E) -> Option<W::T> + Sync + 'a) -> Self {
        self.section = Some(Box::new(section));
        self
    }

    /// A preimage of `x`, checked against `Φ`.
    pub fn preimage(&self, x: &R::E) -> Option<W::T> {
        let a = (self.section.as_ref()?)(x)?;
        (self.apply(&a) == *x).then_some(a)
    }

    pub fn apply(&self, a: &W::T) -> R::E {
        (self.phi)(a)
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> W::T {
        if self.nonzero_only {
            self.domain.sample_nonzero(rng)
        } else {
            self.domain.sample(rng)
        }
    }

    /// `budget` seeded domain samples.
    pub fn samples(&self, cfg: CheckConfig, tag: &str) -> Vec<W::T> {
        let mut rng = rng_for(cfg.seed, tag);
        (0..cfg.budget).map(|_| self.draw(&mut rng)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupervaluationKind {
    /// LV1–LV4 on all of `W`.
    Full,
    /// LV1†–LV3† on `W^×`.
    Dagger,
    /// As the map's domain dictates, plus `Φ(W) ⊆ R₀ ∪ R₁`.
    Zo,
}

fn sample_check<T: fmt::Display>(law: &str, xs: &[T], mut f: impl FnMut(&T) -> bool) -> Entry {
    Pool::All(xs).check1(law, &mut f)
}

fn sample_check2<T: fmt::Display>(law: &str, xs: &[T], mut f: impl FnMut(&T, &T) -> bool) -> Entry {
    let mut n = 0;
    for w in xs.windows(2) {
        n += 1;
        if !f(&w[0], &w[1]) {
            return Entry::fail(law, format!("({}, {})", w[0], w[1]), n);
        }
    }
    for a in xs.iter().take(40) {
        for b in xs.iter().take(40) {
            n += 1;
            if !f(a, b) {
                return Entry::fail(law, format!("({a}, {b})"), n);
            }
        }
    }
    Entry::pass(law, n)
}

pub fn check_supervaluation<W: RingDomain, R: Layered>(
    phi: &Supervaluation<'_, W, R>,
    kind: SupervaluationKind,
    cfg: CheckConfig,
) -> CheckReport {
    let (w, r) = (phi.domain, phi.target);
    let mut rep = CheckReport::new();
    let xs = phi.samples(cfg, "supervaluation");
    let nz = phi.nonzero_only;
    let ok_pair = |a: &W::T, b: &W::T| !nz || (!w.is_zero(a) && !w.is_zero(b));
    rep.push(Entry::verdict(
        "supervaluation.LV1",
        phi.apply(&w.one()) == r.one(),
        || format!("({})", phi.apply(&w.one())),
        1,
    ));
    rep.push(sample_check2("supervaluation.LV2", &xs, |a, b| {
        !ok_pair(a, b) || phi.apply(&w.mul(a, b)) == r.mul(&phi.apply(a), &phi.apply(b))
    }));
    rep.push(sample_check2("supervaluation.LV3", &xs, |a, b| {
        let s = w.add(a, b);
        !ok_pair(a, b) || (nz && w.is_zero(&s)) || nu_leq(r, &phi.apply(&s), &r.add(&phi.apply(a), &phi.apply(b)))
    }));
    // a + (-a) hits 0, which the pairwise samples almost never do
    rep.push(sample_check("supervaluation.LV3-cancel", &xs, |a| {
        let b = w.add(&w.neg(a), &w.mul(a, a));
        let s = w.add(a, &b);
        !ok_pair(a, &b) || (nz && w.is_zero(&s)) || nu_leq(r, &phi.apply(&s), &r.add(&phi.apply(a), &phi.apply(&b)))
    }));
    if kind == SupervaluationKind::Full || (kind == SupervaluationKind::Zo && !nz) {
        let z = phi.apply(&w.zero());
        rep.push(Entry::verdict(
            "supervaluation.LV4",
            r.zero() == Some(z.clone()),
            || format!("(phi(0)={z}, zero={:?})", r.zero().map(|x| x.to_string())),
            1,
        ));
    }
    if kind == SupervaluationKind::Zo {
        rep.push(sample_check("supervaluation.ZO-range", &xs, |a| {
            let s = r.sort(&phi.apply(a));
            s.is_zero() || s == Sort::ONE
        }));
        rep.push(sample_check("supervaluation.units-tangible", &xs, |a| {
            !w.is_unit(a) || r.sort(&phi.apply(a)) == Sort::ONE
        }));
    }
    rep
}

/// D1–D4 on seeded domain samples. For maps on `W^×`, D3 and the
/// proviso of D4 are dropped.
pub fn check_domination<W: RingDomain, R: Layered, R2: Layered>(
    v: &Supervaluation<'_, W, R>,
    w: &Supervaluation<'_, W, R2>,
    cfg: CheckConfig,
) -> CheckReport {
    let xs = v.samples(cfg, "domination");
    let dagger = v.nonzero_only || w.nonzero_only;
    let (r, r2) = (v.target, w.target);
    let mut rep = CheckReport::new();
    // D1 over every collision in the sample, grouped by Φv-image
    let mut groups: BTreeMap<R::E, (W::T, R2::E)> = BTreeMap::new();
    let mut d1 = Entry::pass("domination.D1", xs.len() as u64);
    for (i, a) in xs.iter().enumerate() {
        let (va, wa) = (v.apply(a), w.apply(a));
        match groups.get(&va) {
            Some((b, wb)) if *wb != wa => {
                d1 = Entry::fail("domination.D1", format!("({b}, {a})"), i as u64 + 1);
                break;
            }
            Some(_) => {}
            None => {
                groups.insert(va, (a.clone(), wa));
            }
        }
    }
    rep.push(d1);
    rep.push(sample_check2("domination.D2", &xs, |a, b| {
        !nu_leq(r, &v.apply(a), &v.apply(b)) || nu_leq(r2, &w.apply(a), &w.apply(b))
    }));
    if !dagger {
        rep.push(sample_check("domination.D3", &xs, |a| !r.sort(&v.apply(a)).is_zero() || r2.sort(&w.apply(a)).is_zero()));
    }
    rep.push(sample_check("domination.D4", &xs, |a| {
        let s2 = r2.sort(&w.apply(a));
        (!dagger && s2.is_zero()) || r.sort(&v.apply(a)) <= s2
    }));
    rep
}

/// `α : (R, 𝓜) → R′`. `alpha` is consulted only on `𝓜`.
pub struct Transmission<'a, S: Layered, D: Layered> {
    pub name: String,
    pub src: &'a S,
    pub dst: &'a D,
    alpha: Box<dyn Fn(&S::E) -> Option<D::E> + Sync + 'a>,
    /// Enumerated `𝓜`, when known.
    domain: Option<Vec<S::E>>,
}

impl<'a, S: Layered, D: Layered> Transmission<'a, S, D> {
    /// `𝓜 = R`.
    pub fn on_whole(name: impl Into<String>, src: &'a S, dst: &'a D, alpha: impl Fn(&S::E) -> D::E + Sync + 'a) -> Self {
        Transmission { name: name.into(), src, dst, alpha: Box::new(move |a| Some(alpha(a))), domain: elems_of(src) }
    }

    /// `alpha` is `None` outside `𝓜`; `sample` lists elements of `𝓜` to check.
    pub fn on_subset(
        name: impl Into<String>,
        src: &'a S,
        dst: &'a D,
        alpha: impl Fn(&S::E) -> Option<D::E> + Sync + 'a,
        sample: Vec<S::E>,
    ) -> Self {
        Transmission { name: name.into(), src, dst, alpha: Box::new(alpha), domain: Some(sample) }
    }

    /// `𝓜` given by its elements; `alpha` is `None` outside it.
    pub fn on_table(name: impl Into<String>, src: &'a S, dst: &'a D, table: BTreeMap<S::E, D::E>) -> Self {
        let domain: Vec<S::E> = table.keys().cloned().collect();
        Transmission { name: name.into(), src, dst, alpha: Box::new(move |a| table.get(a).cloned()), domain: Some(domain) }
    }

    pub fn apply(&self, a: &S::E) -> Option<D::E> {
        (self.alpha)(a)
    }

    pub fn in_domain(&self, a: &S::E) -> bool {
        self.apply(a).is_some()
    }

    /// Elements of `𝓜` to quantify over.
    pub fn domain_elements(&self, cfg: CheckConfig) -> Vec<S::E> {
        match &self.domain {
            Some(d) => d.clone(),
            None => {
                let mut rng = rng_for(cfg.seed, "transmission.domain");
                let mut out = Vec::new();
                for _ in 0..cfg.budget.min(400) * 4 {
                    let a = self.src.sample(&mut rng);
                    if self.in_domain(&a) {
                        out.push(a);
                    }
                    if out.len() as u64 >= cfg.budget.min(400) {
                        break;
                    }
                }
                out
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransmissionKind {
    Plain,
    /// `α(𝓜₁) ⊆ R′₁ ∪ R′₀`.
    Zo,
}

fn dom_pairs<S: Layered, D: Layered>(
    t: &Transmission<'_, S, D>,
    xs: &[S::E],
    law: &str,
    mut f: impl FnMut(&S::E, &S::E, &D::E, &D::E) -> bool,
) -> Entry {
    let mut n = 0;
    for a in xs {
        for b in xs {
            n += 1;
            let (Some(x), Some(y)) = (t.apply(a), t.apply(b)) else { continue };
            if !f(a, b, &x, &y) {
                return Entry::fail(law, format!("({a}, {b})"), n);
            }
        }
    }
    Entry::pass(law, n)
}

/// `a ≤_ν b ⇒ α(a) ≤_ν α(b)` on `𝓜`.
pub fn check_nu_preserving<S: Layered, D: Layered>(t: &Transmission<'_, S, D>, cfg: CheckConfig) -> Entry {
    let xs = t.domain_elements(cfg);
    dom_pairs(t, &xs, "transmission.nu-preserving", |a, b, x, y| !nu_leq(t.src, a, b) || nu_leq(t.dst, x, y))
}

/// `a <_ν b ⇒ α(a) ∈ R′₀` or `α(a) <_ν α(b)`.
pub fn check_strictly_nu_preserving<S: Layered, D: Layered>(t: &Transmission<'_, S, D>, cfg: CheckConfig) -> Entry {
    let xs = t.domain_elements(cfg);
    dom_pairs(t, &xs, "transmission.strictly-nu-preserving", |a, b, x, y| {
        !(t.src.nu(a) < t.src.nu(b)) || t.dst.sort(x).is_zero() || t.dst.nu(x) < t.dst.nu(y)
    })
}

/// `α(a+b) = α(a) + α(b)` whenever `a, b, a+b ∈ 𝓜`.
pub fn check_homomorphic<S: Layered, D: Layered>(t: &Transmission<'_, S, D>, cfg: CheckConfig) -> Entry {
    let xs = t.domain_elements(cfg);
    dom_pairs(t, &xs, "transmission.homomorphic", |a, b, x, y| match t.apply(&t.src.add(a, b)) {
        Some(s) => s == t.dst.add(x, y),
        None => true,
    })
}

/// TM1–TM3, the ZO range condition, ν-preservation, and agreement of the
/// TM3 verdict with the ν-preservation verdict.
pub fn check_transmission<S: Layered, D: Layered>(
    t: &Transmission<'_, S, D>,
    kind: TransmissionKind,
    cfg: CheckConfig,
) -> CheckReport {
    let (s, d) = (t.src, t.dst);
    let xs = t.domain_elements(cfg);
    let mut rep = CheckReport::new();
    rep.push(Entry::verdict(
        "transmission.TM1",
        t.apply(&s.one()) == Some(d.one()),
        || format!("({:?})", t.apply(&s.one()).map(|x| x.to_string())),
        1,
    ));
    rep.push(dom_pairs(t, &xs, "transmission.TM2", |a, b, x, y| match t.apply(&s.mul(a, b)) {
        Some(p) => p == d.mul(x, y),
        None => true,
    }));
    let tm3 = dom_pairs(t, &xs, "transmission.TM3", |a, b, x, y| match t.apply(&s.add(a, b)) {
        Some(p) => nu_equiv(d, &p, &d.add(x, y)),
        None => true,
    });
    let np = check_nu_preserving(t, cfg);
    rep.push(Entry::verdict(
        "transmission.patch-agree",
        tm3.pass == np.pass,
        || format!("(TM3={}, nu-preserving={})", tm3.pass, np.pass),
        1,
    ));
    rep.push(tm3);
    rep.push(np);
    if kind == TransmissionKind::Zo {
        rep.push(Pool::All(&xs).check1("transmission.ZO-range", |a| {
            s.sort(a) != Sort::ONE || t.apply(a).map_or(true, |x| d.sort(&x) == Sort::ONE || d.sort(&x).is_zero())
        }));
    }
    rep
}

/// `α_{Φw,Φv}`, with `α(Φv(a)) = Φw(a)`. With a section of `Φv` it is
/// defined on all of `Φv(W)`; otherwise on the sampled image only.
pub fn induced_transmission<'a, W: RingDomain, R: Layered, R2: Layered>(
    v: &'a Supervaluation<'a, W, R>,
    w: &'a Supervaluation<'a, W, R2>,
    cfg: CheckConfig,
) -> Result<Transmission<'a, R, R2>, Error> {
    let dom = check_domination(v, w, cfg);
    if let Some(e) = dom.failures().first() {
        return Err(Error::NotDominated(e.to_string()));
    }
    let mut table = BTreeMap::new();
    for a in v.samples(cfg, "domination").iter().chain(std::iter::once(&v.domain.one())) {
        table.insert(v.apply(a), w.apply(a));
    }
    let name = format!("alpha({}, {})", w.name, v.name);
    if v.section.is_none() {
        return Ok(Transmission::on_table(name, v.target, w.target, table));
    }
    let sample: Vec<R::E> = table.keys().cloned().collect();
    Ok(Transmission::on_subset(name, v.target, w.target, move |x| v.preimage(x).map(|a| w.apply(&a)), sample))
}

/// `α ∘ Φv`.
pub fn compose_with_supervaluation<'a, W: RingDomain, R: Layered, R2: Layered>(
    t: &'a Transmission<'a, R, R2>,
    v: &'a Supervaluation<'a, W, R>,
    cfg: CheckConfig,
) -> Result<Supervaluation<'a, W, R2>, Error> {
    for a in v.samples(cfg, "compose") {
        let x = v.apply(&a);
        if !t.in_domain(&x) {
            return Err(Error::DomainMismatch(format!("{x} = {}({a}) is outside the domain of {}", v.name, t.name)));
        }
    }
    let name = format!("{}.{}", t.name, v.name);
    Ok(Supervaluation::new(name, v.domain, t.dst, v.nonzero_only, move |a| {
        let x = v.apply(a);
        t.apply(&x).unwrap_or_else(|| panic!("{x} is outside the domain of {}", t.name))
    }))
}

/// `Σ_σ Π_i a_{i,σ(i)}`.
pub fn permanent<R: Layered>(r: &R, a: &[Vec<R::E>]) -> R::E {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc: Option<R::E> = None;
    loop {
        let term = (1..n).fold(a[0][perm[0]].clone(), |p, i| r.mul(&p, &a[i][perm[i]]));
        acc = Some(match acc {
            Some(s) => r.add(&s, &term),
            None => term,
        });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    acc.expect("permanent of an empty matrix")
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn mat_mul<R: Layered>(r: &R, a: &[Vec<R::E>], b: &[Vec<R::E>]) -> Vec<Vec<R::E>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (1..n).fold(r.mul(&a[i][0], &b[0][j]), |s, k| r.add(&s, &r.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

/// `(Σ_k a_{ik} b_{kj})^m ⊨_L Σ_k a_{ik}^m b_{kj}^m` entrywise on seeded
/// random `n × n` matrices.
pub fn matrix_frobenius_check<R: Layered>(r: &R, n: usize, m: u32, budget: u64, seed: u64) -> CheckReport {
    let law = format!("matrix-frobenius.n{n}.m{m}");
    let mut rng = rng_for(seed, &law);
    let pw = |x: &Vec<Vec<R::E>>| -> Vec<Vec<R::E>> { x.iter().map(|row| row.iter().map(|e| power(r, e, m)).collect()).collect() };
    let mut rep = CheckReport::new();
    for t in 0..budget {
        let a = crate::axioms::random_matrix(r, n, &mut rng);
        let b = crate::axioms::random_matrix(r, n, &mut rng);
        let lhs = pw(&mat_mul(r, &a, &b));
        let rhs = mat_mul(r, &pw(&a), &pw(&b));
        for i in 0..n {
            for j in 0..n {
                if !surpasses_l(r, &lhs[i][j], &rhs[i][j]) {
                    rep.push(Entry::fail(&law, format!("(A={a:?}, B={b:?}, entry=({i},{j}))"), t + 1));
                    return rep;
                }
            }
        }
    }
    rep.push(Entry::pass(law, budget));
    rep
}

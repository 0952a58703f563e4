//! Finite Puiseux series, the valuation `Val`, the layering and
//! tropicalization functors, and Kapranov corner roots.

use crate::axioms::CheckConfig;
use crate::check::{rng_for, CheckReport, Entry, Pool};
use crate::error::Error;
use crate::layered::{surpasses_l, Elem, IdealSpec, Layered, LayeredSemiring, Structure};
use crate::monoids::{noncancellative_ideal, nu_closure, parse_q, MonoidTable, TripleMorphism, Value, ValuedMonoid, Q};
use crate::morphisms::{check_layered_morphism, check_zero_excepted, LayeredMap, RingDomain, Supervaluation};
use crate::sorting::{Sort, SortingSemiring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// `Σ c_τ t^τ` with finite support and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxSeries {
    terms: BTreeMap<Q, BigRational>,
}

impl PuiseuxSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), Q::from_integer(0))
    }

    /// `c t^τ`.
    pub fn monomial(c: BigRational, tau: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(tau, c);
        p
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Q::from_integer(0))
    }

    /// `t^τ`.
    pub fn t_pow(tau: Q) -> Self {
        Self::monomial(BigRational::one(), tau)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Q, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (tau, c) in it {
            p.add_term(tau, c);
        }
        p
    }

    fn add_term(&mut self, tau: Q, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(tau).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&tau);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Support in increasing order with coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (&Q, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (tau, c) in &other.terms {
            out.add_term(*tau, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries { terms: self.terms.iter().map(|(t, c)| (*t, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(s + t, a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `Val(p) = -min{τ : c_τ ≠ 0}`.
    pub fn val(&self) -> Result<Q, Error> {
        self.terms.keys().next().map(|t| -t).ok_or(Error::ZeroSeries)
    }
}

fn fmt_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (tau, c)) in self.terms.iter().enumerate() {
            let mag = fmt_rat(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            write!(f, "{mag}*t^({tau})")?;
        }
        Ok(())
    }
}

fn parse_big(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(int(n)?, d))
        }
        None => Ok(BigRational::from_integer(int(s)?)),
    }
}

fn parse_term(s: &str) -> Result<(Q, BigRational), Error> {
    let s = s.trim();
    let (coef, pow) = match s.find('t') {
        None => (s, None),
        Some(i) => {
            let (c, rest) = s.split_at(i);
            let c = c.trim();
            let c = match c.strip_suffix('*') {
                Some(c) => c.trim(),
                None if c.is_empty() => "1",
                None => return Err(Error::Parse(format!("expected '*' before t in {s:?}"))),
            };
            (c, Some(&rest[1..]))
        }
    };
    let c = parse_big(coef)?;
    let tau = match pow {
        None => Q::from_integer(0),
        Some(p) if p.trim().is_empty() => Q::from_integer(1),
        Some(p) => {
            let p = p.trim().strip_prefix('^').ok_or_else(|| Error::Parse(format!("expected '^' in {s:?}")))?;
            let inner = p
                .trim()
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .unwrap_or(p.trim());
            parse_q(inner.trim())?
        }
    };
    Ok((tau, c))
}

impl FromStr for PuiseuxSeries {
    type Err = Error;

    /// Terms `<p/q>*t^(<r/s>)` joined by `+` or `-`; a bare rational is a
    /// constant.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty series".into()));
        }
        let mut terms = Vec::new();
        let (mut depth, mut start, mut neg) = (0i32, 0usize, false);
        let bytes = s.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 => {
                    let prev = s[start..i].trim();
                    if prev.is_empty() {
                        // only a single leading sign may stand alone
                        if start != 0 || !terms.is_empty() {
                            return Err(Error::Parse(format!("dangling sign in {s:?}")));
                        }
                        neg = b == b'-';
                    } else {
                        terms.push((neg, prev.to_string()));
                        neg = b == b'-';
                    }
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
        let last = s[start..].trim();
        if last.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {s:?}")));
        }
        terms.push((neg, last.to_string()));
        let mut p = PuiseuxSeries::zero();
        for (neg, t) in terms {
            let (tau, c) = parse_term(&t)?;
            p.add_term(tau, if neg { -c } else { c });
        }
        Ok(p)
    }
}

/// Tags a parse error with its 1-based line number.
pub fn at_line(n: usize, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("line {n}: {m}")),
        e => Error::Parse(format!("line {n}: {e}")),
    }
}

/// Univariate polynomial `Σ f_k λ^k` over Puiseux series.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PuiseuxPoly {
    coeffs: BTreeMap<u32, PuiseuxSeries>,
}

impl PuiseuxPoly {
    pub fn from_coeffs(it: impl IntoIterator<Item = (u32, PuiseuxSeries)>) -> Self {
        let mut f = PuiseuxPoly::default();
        for (k, c) in it {
            f.add_coeff(k, &c);
        }
        f
    }

    /// `λ - r`.
    pub fn linear(r: &PuiseuxSeries) -> Self {
        Self::from_coeffs([(1, PuiseuxSeries::one()), (0, r.neg())])
    }

    fn add_coeff(&mut self, k: u32, c: &PuiseuxSeries) {
        let slot = self.coeffs.entry(k).or_default();
        *slot = slot.add(c);
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, PuiseuxSeries> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = PuiseuxPoly::default();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.add_coeff(i + j, &a.mul(b));
            }
        }
        out
    }

    pub fn eval(&self, x: &PuiseuxSeries) -> PuiseuxSeries {
        self.coeffs.iter().fold(PuiseuxSeries::zero(), |acc, (k, c)| acc.add(&c.mul(&x.pow(*k))))
    }

    /// One `lambda^<k> : <series>` per line; blank lines and `#` comments
    /// are skipped.
    pub fn parse_file(text: &str) -> Result<Self, Error> {
        let mut f = PuiseuxPoly::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |e: Error| at_line(n + 1, e);
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| at(Error::Parse("expected 'lambda^<k> : <series>'".into())))?;
            let k = lhs
                .trim()
                .strip_prefix("lambda^")
                .and_then(|k| k.trim().parse::<u32>().ok())
                .ok_or_else(|| at(Error::Parse(format!("bad monomial {:?}", lhs.trim()))))?;
            let c: PuiseuxSeries = rhs.parse().map_err(at)?;
            f.add_coeff(k, &c);
        }
        Ok(f)
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().rev() {
            writeln!(f, "lambda^{k} : {c}")?;
        }
        Ok(())
    }
}

/// One series per line; blank lines and `#` comments are skipped.
pub fn parse_roots(text: &str) -> Result<Vec<PuiseuxSeries>, Error> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(line.parse().map_err(|e| at_line(n + 1, e))?);
    }
    Ok(out)
}

/// Finite Puiseux series over `ℚ` as a ring domain, for the supervaluation
/// checkers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Puiseux;

fn small_rat(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    let n = loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            break n;
        }
    };
    BigRational::new(n.into(), rng.gen_range(1..=bound).into())
}

fn small_exp(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

impl RingDomain for Puiseux {
    type T = PuiseuxSeries;

    fn name(&self) -> String {
        "Q{{t}}".into()
    }
    fn add(&self, a: &PuiseuxSeries, b: &PuiseuxSeries) -> PuiseuxSeries {
        a.add(b)
    }
    fn mul(&self, a: &PuiseuxSeries, b: &PuiseuxSeries) -> PuiseuxSeries {
        a.mul(b)
    }
    fn neg(&self, a: &PuiseuxSeries) -> PuiseuxSeries {
        a.neg()
    }
    fn zero(&self) -> PuiseuxSeries {
        PuiseuxSeries::zero()
    }
    fn one(&self) -> PuiseuxSeries {
        PuiseuxSeries::one()
    }
    fn is_unit(&self, a: &PuiseuxSeries) -> bool {
        !a.is_zero()
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> PuiseuxSeries {
        if rng.gen_range(0..10) == 0 {
            return PuiseuxSeries::zero();
        }
        let n = rng.gen_range(1..=3);
        PuiseuxSeries::from_terms((0..n).map(|_| (small_exp(rng), small_rat(rng, 20))))
    }
}

/// `ψ_ℓ(p) = ⟨Val(p)⟩^ℓ`, moved to sort 0 when `Val(p)` is a
/// noncancellative product of `R`.
pub fn psi_ell(r: &LayeredSemiring, l: Sort, p: &PuiseuxSeries) -> Result<Elem, Error> {
    let v = Value::Fin(p.val()?);
    if !r.monoid().contains(v) {
        return Err(Error::Config(format!("{v} is not a value of {}", r.monoid().name())));
    }
    if !r.sorting().contains(l) {
        return Err(Error::Config(format!("sort {l} is not in {}", r.sorting().name())));
    }
    Ok(r.mk(v, l))
}

/// `ψ₁` on `W^×` with the section `⟨q⟩¹ ↦ t^{-q}`.
pub fn kapranov_map(r: &LayeredSemiring) -> Supervaluation<'_, Puiseux, LayeredSemiring> {
    static W: Puiseux = Puiseux;
    Supervaluation::new("psi1", &W, r, true, move |p| psi_ell(r, Sort::ONE, p).expect("psi1 on a nonzero series"))
        .with_section(move |x| {
            let q = x.value.as_q()?;
            (x.sort == Sort::ONE).then(|| PuiseuxSeries::t_pow(-q))
        })
}

/// The Kapranov condition `Φ(a) + Φ(b) ⊨_L Φ(a+b)` and the corner
/// property of zero sums, on sampled series.
pub fn kapranov_properties(r: &LayeredSemiring, cfg: CheckConfig) -> CheckReport {
    let psi = |p: &PuiseuxSeries| psi_ell(r, Sort::ONE, p).expect("nonzero series");
    let mut rep = CheckReport::new();

    let mut rng = rng_for(cfg.seed, "kapranov.condition");
    let (mut n, mut witness) = (0, None);
    for _ in 0..cfg.budget {
        let a = Puiseux.sample_nonzero(&mut rng);
        // share the leading exponent half of the time so ties occur
        let b = if rng.gen_bool(0.5) {
            let lead = *a.terms().next().unwrap().0;
            Puiseux.sample_nonzero(&mut rng).add(&PuiseuxSeries::monomial(small_rat(&mut rng, 20), lead))
        } else {
            Puiseux.sample_nonzero(&mut rng)
        };
        let s = a.add(&b);
        if b.is_zero() || s.is_zero() {
            continue;
        }
        n += 1;
        let lhs = r.add(&psi(&a), &psi(&b));
        if !surpasses_l(r, &lhs, &psi(&s)) {
            witness = Some(format!("({a}, {b})"));
            break;
        }
    }
    rep.push(match witness {
        Some(w) => Entry::fail("kapranov.condition", w, n),
        None => Entry::pass("kapranov.condition", n),
    });

    let mut rng = rng_for(cfg.seed, "kapranov.zero-sum");
    let (mut n, mut witness) = (0, None);
    for _ in 0..cfg.budget {
        let k = rng.gen_range(1..=4);
        let mut parts: Vec<PuiseuxSeries> = (0..k).map(|_| Puiseux.sample_nonzero(&mut rng)).collect();
        let rest = parts.iter().fold(PuiseuxSeries::zero(), |acc, p| acc.add(p)).neg();
        if rest.is_zero() {
            continue;
        }
        parts.push(rest);
        n += 1;
        let total = parts.iter().map(psi).reduce(|x, y| r.add(&x, &y)).unwrap();
        if total.sort < Sort::Fin(2) {
            let shown: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
            witness = Some(format!("({})", shown.join(", ")));
            break;
        }
    }
    rep.push(match witness {
        Some(w) => Entry::fail("kapranov.zero-sum-corner", w, n),
        None => Entry::pass("kapranov.zero-sum-corner", n),
    });
    rep
}

/// `Σ F_k λ^k` with layered coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LayeredPolynomial {
    pub coeffs: BTreeMap<u32, Elem>,
}

impl fmt::Display for LayeredPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().rev() {
            writeln!(f, "lambda^{k} : {c}")?;
        }
        Ok(())
    }
}

/// Coefficientwise `ψ₁`.
pub fn tropicalize_poly(r: &LayeredSemiring, f: &PuiseuxPoly) -> Result<LayeredPolynomial, Error> {
    let mut coeffs = BTreeMap::new();
    for (k, c) in f.coeffs() {
        coeffs.insert(*k, psi_ell(r, Sort::ONE, c)?);
    }
    Ok(LayeredPolynomial { coeffs })
}

/// `Σ F_k x^k`; `None` for the zero polynomial.
pub fn eval_layered_poly<R: Structure>(r: &R, f: &BTreeMap<u32, R::E>, x: &R::E) -> Option<R::E> {
    f.iter()
        .map(|(k, c)| if *k == 0 { c.clone() } else { r.mul(c, &crate::layered::power(r, x, *k)) })
        .reduce(|a, b| r.add(&a, &b))
}

/// The evaluation at `x` has sort at least 2.
pub fn is_corner_root(r: &LayeredSemiring, f: &LayeredPolynomial, x: &Elem) -> bool {
    eval_layered_poly(r, &f.coeffs, x).is_some_and(|y| y.sort >= Sort::Fin(2))
}

/// Validates each root exactly, then checks that `ψ₁(root)` is a corner
/// root of the tropicalization.
pub fn kapranov_check(r: &LayeredSemiring, f: &PuiseuxPoly, roots: &[PuiseuxSeries]) -> Result<CheckReport, Error> {
    for root in roots {
        let res = f.eval(root);
        if !res.is_zero() {
            return Err(Error::NotARoot(format!("f({root}) = {res}")));
        }
    }
    let tf = tropicalize_poly(r, f)?;
    let width = roots.len().to_string().len();
    let mut rep = CheckReport::new();
    for (i, root) in roots.iter().enumerate() {
        let x = psi_ell(r, Sort::ONE, root)?;
        let y = eval_layered_poly(r, &tf.coeffs, &x);
        let ok = y.is_some_and(|y| y.sort >= Sort::Fin(2));
        let shown = y.map_or("none".to_string(), |y| y.to_string());
        rep.push(Entry::verdict(format!("kapranov.root{i:0width$}"), ok, || format!("({root} -> {x} -> {shown})"), 1));
    }
    Ok(rep)
}

/// `Π (λ - r_i)` for `degree` random nonzero roots: root exponents have
/// denominators at most 6, coefficients numerators and denominators at
/// most 20.
pub fn random_split_poly(rng: &mut ChaCha8Rng, degree: usize) -> (PuiseuxPoly, Vec<PuiseuxSeries>) {
    let roots: Vec<PuiseuxSeries> = (0..degree)
        .map(|_| {
            let n = rng.gen_range(1..=2);
            PuiseuxSeries::from_terms((0..n).map(|_| (small_exp(rng), small_rat(rng, 20))))
        })
        .map(|p| if p.is_zero() { PuiseuxSeries::one() } else { p })
        .collect();
    let f = roots
        .iter()
        .fold(PuiseuxPoly::from_coeffs([(0, PuiseuxSeries::one())]), |acc, r| acc.mul(&PuiseuxPoly::linear(r)));
    (f, roots)
}

/// `F(M)` together with `a ↦ ⟨a⟩¹`.
#[derive(Clone, Debug)]
pub struct FunctorImage {
    pub semiring: LayeredSemiring,
}

impl FunctorImage {
    pub fn embed(&self, a: Value) -> Elem {
        self.semiring.mk(a, Sort::ONE)
    }
}

/// `M ↦ R(L, M)` with the ν-closure of the noncancellative ideal.
pub fn layering_functor_object(l: &SortingSemiring, m: &ValuedMonoid) -> Result<FunctorImage, Error> {
    let ideal = nu_closure(m, &noncancellative_ideal(m)?);
    Ok(FunctorImage { semiring: LayeredSemiring::build(l.clone(), m.clone(), IdealSpec::Given(ideal))? })
}

fn image_sort(dst: &LayeredSemiring, b: Value, l: Sort) -> Sort {
    if dst.ideal().contains(b) {
        Sort::ZERO
    } else {
        l
    }
}

/// `Fφ`: on `R₀ ∪ R₁` by `⟨a⟩^ℓ ↦ ⟨φ(a)⟩^{ℓ'}`, with `ℓ' = 0` when `φ(a)`
/// is a noncancellative product of the target; elsewhere by
/// `⟨a⟩^k = ⟨a⟩¹ · e_k`.
pub fn layering_functor_morphism<'a>(
    src: &'a FunctorImage,
    dst: &'a FunctorImage,
    phi: &TripleMorphism,
) -> LayeredMap<'a, LayeredSemiring, LayeredSemiring> {
    let phi = phi.clone();
    let (s, d) = (&src.semiring, &dst.semiring);
    LayeredMap::natural(format!("F({})", phi.name), s, d, move |x| {
        let b = phi.apply(x.value);
        let base = |l: Sort| Elem::new(b, image_sort(d, b, l));
        if x.sort == Sort::ZERO || x.sort == Sort::ONE {
            return base(x.sort);
        }
        match d.layer_unit(x.sort) {
            Ok(e) => d.mul(&base(Sort::ONE), &e),
            Err(_) => base(x.sort),
        }
    })
}

/// `G` of the triple, as a monoid valued by the identity.
pub fn value_monoid(m: &ValuedMonoid) -> Result<ValuedMonoid, Error> {
    let ValuedMonoid::Table(t) = m else { return Ok(m.clone()) };
    let carrier: Vec<Value> = t.gval.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let idx = |g: Value| carrier.iter().position(|&c| c == g).unwrap();
    let mul = carrier.iter().map(|&g| carrier.iter().map(|&h| idx(m.g_mul(g, h))).collect()).collect();
    ValuedMonoid::table(MonoidTable {
        name: format!("G({})", t.name),
        one: idx(t.gval[t.one]),
        gval: carrier.clone(),
        carrier,
        mul,
    })
}

/// `(M, G, v) ↦ R(L, G)` over the noncancellative ideal of `G`.
pub fn tropicalization_functor_object(l: &SortingSemiring, m: &ValuedMonoid) -> Result<LayeredSemiring, Error> {
    LayeredSemiring::build(l.clone(), value_monoid(m)?, IdealSpec::Auto)
}

/// `α_φ(⟨a⟩^ℓ) = ⟨φ(a)⟩^k` with `k = 0` when `φ(a)` is noncancellative and
/// `k = ℓ` otherwise, on every sort.
pub fn tropicalization_functor_morphism<'a>(
    src: &'a LayeredSemiring,
    dst: &'a LayeredSemiring,
    phi: &TripleMorphism,
) -> LayeredMap<'a, LayeredSemiring, LayeredSemiring> {
    let phi = phi.clone();
    LayeredMap::natural(format!("Trop({})", phi.name), src, dst, move |x| {
        let b = phi.apply_g(x.value);
        Elem::new(b, image_sort(dst, b, x.sort))
    })
}

/// `R ↦ R₀ ∪ R₁`.
pub fn forget(r: &LayeredSemiring) -> Result<Vec<Elem>, Error> {
    let es = r.elements().ok_or_else(|| Error::Infinite(r.name()))?;
    Ok(es.into_iter().filter(|x| x.sort == Sort::ZERO || x.sort == Sort::ONE).collect())
}

/// `a ↦ ⟨a⟩¹` is a monoid isomorphism from `M` onto the forgotten
/// `R₀ ∪ R₁` of `F(M)`.
pub fn round_trip_check(l: &SortingSemiring, m: &ValuedMonoid, cfg: CheckConfig) -> Result<CheckReport, Error> {
    let img = layering_functor_object(l, m)?;
    let r = &img.semiring;
    let mut rep = CheckReport::new();
    rep.push(Entry::verdict("forgetful.unit", img.embed(m.one()) == r.one(), || format!("({})", m.one()), 1));
    let es = m.elements();
    let draw = |rng: &mut ChaCha8Rng| m.sample(rng);
    let pool = match &es {
        Some(v) => Pool::All(v),
        None => Pool::Sample { draw: &draw, budget: cfg.budget, seed: cfg.seed },
    };
    rep.push(pool.check2("forgetful.mul", |&a, &b| img.embed(m.mul(a, b)) == r.mul(&img.embed(a), &img.embed(b))));
    rep.push(pool.check2("forgetful.injective", |&a, &b| a == b || img.embed(a) != img.embed(b)));
    rep.push(pool.check1("forgetful.tangible-or-zero", |&a| {
        let x = img.embed(a);
        r.contains(&x) && (x.sort == Sort::ZERO || x.sort == Sort::ONE)
    }));
    if let Some(es) = &es {
        let image: BTreeSet<Elem> = es.iter().map(|&a| img.embed(a)).collect();
        let forgot: BTreeSet<Elem> = forget(r)?.into_iter().collect();
        let extra: Vec<String> = forgot.difference(&image).map(|x| x.to_string()).collect();
        rep.push(Entry::verdict("forgetful.surjective", extra.is_empty(), || format!("({})", extra.join(", ")), forgot.len() as u64));
    }
    Ok(rep)
}

/// Identity and composition laws of both functors along a chain
/// `M₀ → M₁ → …`, pointwise on every element, plus the layered-morphism
/// checks for each image.
pub fn functor_law_check(
    l: &SortingSemiring,
    chain: &[ValuedMonoid],
    maps: &[TripleMorphism],
    cfg: CheckConfig,
) -> Result<CheckReport, Error> {
    assert_eq!(chain.len(), maps.len() + 1, "one map per link");
    let objs: Vec<FunctorImage> = chain.iter().map(|m| layering_functor_object(l, m)).collect::<Result<_, _>>()?;
    let trops: Vec<LayeredSemiring> = chain.iter().map(|m| tropicalization_functor_object(l, m)).collect::<Result<_, _>>()?;
    let mut rep = CheckReport::new();
    let pointwise = |name: String, src: &LayeredSemiring, f: &dyn Fn(&Elem) -> Elem, g: &dyn Fn(&Elem) -> Elem| {
        let es = src.elements().expect("finite chain");
        let bad = es.iter().find(|x| f(x) != g(x));
        Entry::verdict(name, bad.is_none(), || format!("({})", bad.unwrap()), es.len() as u64)
    };
    let id = TripleMorphism::identity();
    for (i, o) in objs.iter().enumerate() {
        let f = layering_functor_morphism(o, o, &id);
        rep.push(pointwise(format!("layering.identity.{i}"), &o.semiring, &|x| f.apply(x), &|x| *x));
        let t = tropicalization_functor_morphism(&trops[i], &trops[i], &id);
        rep.push(pointwise(format!("tropicalization.identity.{i}"), &trops[i], &|x| t.apply(x), &|x| *x));
    }
    for (i, phi) in maps.iter().enumerate() {
        let f = layering_functor_morphism(&objs[i], &objs[i + 1], phi);
        let mut sub = check_zero_excepted(&f, cfg);
        sub.extend(check_layered_morphism(&f, cfg));
        rep.push(Entry::verdict(format!("layering.morphism.{i}"), sub.all_pass(), || sub.failures()[0].to_string(), sub.len() as u64));
        let t = tropicalization_functor_morphism(&trops[i], &trops[i + 1], phi);
        let mut sub = check_zero_excepted(&t, cfg);
        sub.extend(check_layered_morphism(&t, cfg));
        rep.push(Entry::verdict(format!("tropicalization.morphism.{i}"), sub.all_pass(), || sub.failures()[0].to_string(), sub.len() as u64));
    }
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            let comp = (i..=j).skip(1).fold(maps[i].clone(), |acc, k| acc.then(&maps[k]));
            let whole = layering_functor_morphism(&objs[i], &objs[j + 1], &comp);
            let steps: Vec<_> = (i..=j).map(|k| layering_functor_morphism(&objs[k], &objs[k + 1], &maps[k])).collect();
            rep.push(pointwise(
                format!("layering.composition.{i}-{}", j + 1),
                &objs[i].semiring,
                &|x| whole.apply(x),
                &|x| steps.iter().fold(*x, |y, s| s.apply(&y)),
            ));
            let whole = tropicalization_functor_morphism(&trops[i], &trops[j + 1], &comp);
            let steps: Vec<_> = (i..=j).map(|k| tropicalization_functor_morphism(&trops[k], &trops[k + 1], &maps[k])).collect();
            rep.push(pointwise(
                format!("tropicalization.composition.{i}-{}", j + 1),
                &trops[i],
                &|x| whole.apply(x),
                &|x| steps.iter().fold(*x, |y, s| s.apply(&y)),
            ));
        }
    }
    Ok(rep)
}

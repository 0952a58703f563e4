//! Exhaustive or sampled verification of semiring laws, the layered axioms
//! and the surpassing relations.

use crate::check::{rng_for, CheckReport, Entry, Pool};
use crate::layered::{
    is_ghost, nu_equiv, nu_leq, power, surpasses_closed, surpasses_l, surpasses_literal, surpasses_lnu,
    Layered, LayeredSemiring, Structure,
};
use crate::monoids::is_prime;
use crate::sorting::Sort;
use rand_chacha::ChaCha8Rng;

/// Carriers up to this size are enumerated exhaustively for ternary laws.
pub const EXHAUSTIVE_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub budget: u64,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { budget: crate::check::DEFAULT_BUDGET, seed: crate::check::DEFAULT_SEED }
    }
}

/// Enumerated carrier or sampler for `r`.
pub struct Domain<'a, R: Structure> {
    pub elems: Option<Vec<R::E>>,
    draw: Box<dyn Fn(&mut ChaCha8Rng) -> R::E + 'a>,
    cfg: CheckConfig,
}

impl<'a, R: Structure> Domain<'a, R> {
    pub fn new(r: &'a R, cfg: CheckConfig) -> Self {
        let elems = r.elements().filter(|v| v.len() <= EXHAUSTIVE_LIMIT);
        Domain { elems, draw: Box::new(move |rng| r.sample(rng)), cfg }
    }

    pub fn pool(&self) -> Pool<'_, R::E> {
        match &self.elems {
            Some(v) => Pool::All(v),
            None => Pool::Sample { draw: &*self.draw, budget: self.cfg.budget, seed: self.cfg.seed },
        }
    }

    pub fn draw(&self, rng: &mut ChaCha8Rng) -> R::E {
        (self.draw)(rng)
    }
}

/// Commutative semiring laws without a required zero, plus closure.
pub fn semiring_laws<R: Structure>(r: &R, cfg: CheckConfig) -> CheckReport {
    let d = Domain::new(r, cfg);
    let p = d.pool();
    let one = r.one();
    let mut rep = CheckReport::new();
    rep.push(p.check3("semiring.add-assoc", |a, b, c| r.add(&r.add(a, b), c) == r.add(a, &r.add(b, c))));
    rep.push(p.check2("semiring.add-comm", |a, b| r.add(a, b) == r.add(b, a)));
    rep.push(p.check3("semiring.mul-assoc", |a, b, c| r.mul(&r.mul(a, b), c) == r.mul(a, &r.mul(b, c))));
    rep.push(p.check2("semiring.mul-comm", |a, b| r.mul(a, b) == r.mul(b, a)));
    rep.push(p.check3("semiring.distributivity", |a, b, c| {
        r.mul(a, &r.add(b, c)) == r.add(&r.mul(a, b), &r.mul(a, c))
    }));
    rep.push(p.check1("semiring.mul-identity", |a| r.mul(a, &one) == *a && r.mul(&one, a) == *a));
    rep.push(p.check2("semiring.closure", |a, b| r.contains(&r.add(a, b)) && r.contains(&r.mul(a, b))));
    if let Some(z) = r.zero() {
        rep.push(p.check1("semiring.zero", |a| r.add(&z, a) == *a && r.mul(&z, a) == z));
    }
    rep
}

/// Sorts at or above `k` to try as transition targets.
fn targets<R: Layered>(r: &R, k: Sort, rng: &mut ChaCha8Rng) -> Vec<Sort> {
    let l = r.sorting();
    match l.elements() {
        Some(v) => v.into_iter().filter(|&m| !m.is_zero() && l.leq(k, m)).collect(),
        None => {
            let mut out = vec![k, Sort::Inf];
            for _ in 0..3 {
                out.push(l.add(k, l.sample(rng)));
            }
            out
        }
    }
}

/// The layered axioms A1–A6 and B, transition laws, ν-bipotence and the
/// structural facts about the zero layer. Includes [`semiring_laws`].
pub fn check_axioms<R: Layered>(r: &R, cfg: CheckConfig) -> CheckReport {
    let mut rep = semiring_laws(r, cfg);
    rep.extend(layered_axioms(r, cfg));
    rep
}

pub fn layered_axioms<R: Layered>(r: &R, cfg: CheckConfig) -> CheckReport {
    let l = r.sorting();
    let d = Domain::new(r, cfg);
    let p = d.pool();
    let mut rep = CheckReport::new();
    let zero = Sort::ZERO;

    let one = r.one();
    rep.push(Entry::verdict("axiom.A1", r.sort(&one) == Sort::ONE, || format!("({one})"), 1));

    rep.push(p.check2("axiom.A2", |a, b| {
        let s = r.sort(&r.mul(a, b));
        s == zero || s == l.mul(r.sort(a), r.sort(b))
    }));

    let mut rng = rng_for(cfg.seed, "axiom.A3.targets");
    rep.push(p.check2("axiom.A3", |a, b| {
        let (k, kl) = (r.sort(a), r.sort(b));
        if k.is_zero() || kl.is_zero() {
            return true;
        }
        let ab = r.mul(a, b);
        let ms = targets(r, k, &mut rng);
        let ms2 = targets(r, kl, &mut rng);
        ms.iter().all(|&m| {
            ms2.iter().all(|&m2| {
                let lhs = r.mul(&r.transition(m, a).unwrap(), &r.transition(m2, b).unwrap());
                if r.sort(&ab).is_zero() {
                    lhs == ab
                } else {
                    r.transition(l.mul(m, m2), &ab).map(|x| x == lhs).unwrap_or(false)
                }
            })
        })
    }));

    let mut rng = rng_for(cfg.seed, "axiom.A4.targets");
    rep.push(p.check1("axiom.A4", |a| {
        let k = r.sort(a);
        if k.is_zero() {
            return true;
        }
        let ms = targets(r, k, &mut rng);
        ms.iter().all(|&m| {
            ms.iter().all(|&m2| {
                let lhs = r.add(&r.transition(m, a).unwrap(), &r.transition(m2, a).unwrap());
                r.transition(l.add(m, m2), a).map(|x| x == lhs).unwrap_or(false)
            })
        })
    }));

    // applied to ν-inequivalent summands; the ν-equivalent case is Axiom B
    let mut rng = rng_for(cfg.seed, "axiom.A5.targets");
    rep.push(p.check2("axiom.A5", |a, b| {
        let (k, kl) = (r.sort(a), r.sort(b));
        let c = r.add(a, b);
        let kc = r.sort(&c);
        if k.is_zero() || kl.is_zero() || kc.is_zero() || nu_equiv(r, a, b) {
            return true;
        }
        let floor = l.add(k, kl);
        targets(r, floor, &mut rng).into_iter().all(|m| {
            match (r.transition(m, &c), r.transition(m, a), r.transition(m, b)) {
                (Ok(lhs), Ok(x), Ok(y)) => lhs == r.add(&x, &y),
                _ => false,
            }
        })
    }));

    rep.push(p.check2("axiom.A6", |a, b| {
        let a0 = r.sort(a).is_zero();
        let b0 = r.sort(b).is_zero();
        (!(a0 && b0) || r.sort(&r.add(a, b)).is_zero()) && (!a0 || r.sort(&r.mul(a, b)).is_zero())
    }));

    rep.push(p.check2("axiom.B", |a, b| {
        if !nu_equiv(r, a, b) {
            return true;
        }
        let c = r.add(a, b);
        let ok = r.sort(&c) == l.add(r.sort(a), r.sort(b)) && nu_equiv(r, &c, a);
        ok && (r.sort(a) != Sort::Inf || c == *a)
    }));

    let mut rng = rng_for(cfg.seed, "transition.targets");
    rep.push(p.check1("transition.identity", |a| {
        let k = r.sort(a);
        k.is_zero() || r.transition(k, a).map(|x| x == *a).unwrap_or(false)
    }));
    rep.push(p.check1("transition.composition", |a| {
        let k = r.sort(a);
        if k.is_zero() {
            return true;
        }
        targets(r, k, &mut rng).into_iter().all(|m1| {
            let mid = r.transition(m1, a).unwrap();
            if r.sort(&mid).is_zero() {
                return true;
            }
            targets(r, m1, &mut rng.clone()).into_iter().all(|m2| {
                r.transition(m2, &mid).ok() == r.transition(m2, a).ok()
            })
        })
    }));
    let mut rng = rng_for(cfg.seed, "transition.nu.targets");
    rep.push(p.check1("transition.nu-preserving", |a| {
        let k = r.sort(a);
        k.is_zero() || targets(r, k, &mut rng).into_iter().all(|m| nu_equiv(r, &r.transition(m, a).unwrap(), a))
    }));

    rep.push(p.check2("nu.bipotent", |a, b| {
        nu_equiv(r, a, b) || {
            let c = r.add(a, b);
            c == *a || c == *b
        }
    }));

    rep.push(p.check3("nu.ordered-monoid", |a, b, c| {
        !nu_leq(r, a, b) || nu_leq(r, &r.mul(a, c), &r.mul(b, c))
    }));

    match &d.elems {
        Some(es) => {
            let mut n = 0;
            let mut bad = None;
            'outer: for a in es {
                for a2 in es.iter().filter(|x| nu_equiv(r, x, a)) {
                    for b in es {
                        for b2 in es.iter().filter(|x| nu_equiv(r, x, b)) {
                            n += 1;
                            if !nu_equiv(r, &r.mul(a, b), &r.mul(a2, b2)) {
                                bad = Some(format!("({a}, {a2}, {b}, {b2})"));
                                break 'outer;
                            }
                        }
                    }
                }
            }
            rep.push(match bad {
                None => Entry::pass("nu.classes-monoid", n),
                Some(w) => Entry::fail("nu.classes-monoid", w, n),
            });
        }
        None => {
            let mut rng = rng_for(cfg.seed, "nu.classes-monoid.targets");
            rep.push(p.check2("nu.classes-monoid", |a, b| {
                let (ka, kb) = (r.sort(a), r.sort(b));
                if ka.is_zero() || kb.is_zero() {
                    return true;
                }
                let a2 = r.transition(*targets(r, ka, &mut rng).last().unwrap(), a).unwrap();
                let b2 = r.transition(*targets(r, kb, &mut rng).last().unwrap(), b).unwrap();
                nu_equiv(r, &r.mul(a, b), &r.mul(&a2, &b2))
            }));
        }
    }

    // the zero layer is an ideal, and a zero element lies in it
    let z = r.zero();
    rep.push(Entry::verdict(
        "zero-layer.contains-zero",
        z.as_ref().map_or(true, |z| r.sort(z).is_zero()),
        || format!("({})", z.clone().unwrap()),
        1,
    ));

    rep.push(p.check3("zero-layer.noncancellative-sort", |a, b, c| {
        if nu_equiv(r, b, c) || !nu_equiv(r, &r.mul(a, b), &r.mul(a, c)) {
            return true;
        }
        let s = r.sort(&r.mul(a, b));
        l.add(s, s) == s
    }));

    // R₀ ∪ R_ℓ is a monoid with unit e_ℓ for multiplicative idempotents ℓ
    let idem: Vec<Sort> = match l.positive_elements() {
        Some(v) => v.into_iter().filter(|&k| l.mul(k, k) == k).collect(),
        None => vec![Sort::ONE, Sort::Inf],
    };
    rep.push(p.check2("zero-layer.idempotent-monoid", |a, b| {
        idem.iter().all(|&k| {
            let sa = r.sort(a);
            let sb = r.sort(b);
            let inside = |s: Sort| s.is_zero() || s == k;
            if !inside(sa) || !inside(sb) {
                return true;
            }
            let ek = r.transition(k, &r.one()).unwrap();
            inside(r.sort(&r.mul(a, b))) && (sa != k || r.mul(&ek, a) == *a)
        })
    }));

    if let Some(es) = &d.elems {
        let r0: Vec<&R::E> = es.iter().filter(|x| r.sort(x).is_zero()).collect();
        let rest: Vec<&R::E> = es.iter().filter(|x| !r.sort(x).is_zero()).collect();
        let missing = r0
            .iter()
            .find(|z| !rest.iter().any(|a| rest.iter().any(|b| r.mul(a, b) == ***z)));
        rep.push(Entry::verdict(
            "zero-layer.products",
            missing.is_none(),
            || format!("({})", missing.unwrap()),
            r0.len() as u64,
        ));
    }
    rep
}

/// Reflexivity and transitivity of `⊨_L` and `⊨_{L,ν}`, diagonal
/// compatibility of `⊨_{L,ν}`; on enumerated carriers the closed form of
/// `⊨_L` is also compared against the literal definition.
pub fn surpassing_suite<R: Layered>(r: &R, cfg: CheckConfig) -> CheckReport {
    let d = Domain::new(r, cfg);
    let p = d.pool();
    let mut rep = CheckReport::new();
    type Rel<R> = fn(&R, &<R as Structure>::E, &<R as Structure>::E) -> bool;
    let rels: [(&str, Rel<R>); 2] = [("surpass-l", surpasses_l::<R>), ("surpass-lnu", surpasses_lnu::<R>)];
    for (name, rel) in rels {
        rep.push(p.check1(&format!("{name}.reflexive"), |a| rel(r, a, a)));
        rep.push(p.check3(&format!("{name}.transitive"), |a, b, c| !(rel(r, a, b) && rel(r, b, c)) || rel(r, a, c)));
    }
    rep.extend(compat_checks(r, &p, "surpass-lnu", surpasses_lnu::<R>));
    // a ⊨_L b makes a + b an s(b)-ghost; sort-0 elements have no 0-ghost doubles
    rep.push(p.check2("surpass-l.sum-is-ghost", |a, b| {
        !surpasses_l(r, a, b) || r.sort(b).is_zero() || is_ghost(r, &r.add(a, b), r.sort(b))
    }));
    if let Some(es) = &d.elems {
        rep.push(p.check2("surpass-l.closed-form", |a, b| surpasses_literal(r, es, a, b) == surpasses_closed(r, a, b)));
    }
    rep
}

/// Diagonal compatibility of `⊨_L`. Addition breaks once some ghost sort is
/// finite (`1@2 ⊨ 0@1` but `1@2 ⊭ 0@2` over `trunc:4`), multiplication once
/// the zero layer is nonempty (`1@inf ⊨ 0@1` but `5@0 ⊭ 4@1` after
/// multiplying by `4@1` over `trunc-nat:5`).
pub fn surpass_l_compat_suite<R: Layered>(r: &R, cfg: CheckConfig) -> CheckReport {
    let d = Domain::new(r, cfg);
    compat_checks(r, &d.pool(), "surpass-l", surpasses_l::<R>)
}

fn compat_checks<R: Layered>(
    r: &R,
    p: &Pool<'_, R::E>,
    name: &str,
    rel: fn(&R, &R::E, &R::E) -> bool,
) -> CheckReport {
    let mut rep = CheckReport::new();
    rep.push(p.check3(&format!("{name}.add-compat"), |a, b, c| !rel(r, a, b) || rel(r, &r.add(a, c), &r.add(b, c))));
    rep.push(p.check3(&format!("{name}.mul-compat"), |a, b, c| !rel(r, a, b) || rel(r, &r.mul(a, c), &r.mul(b, c))));
    rep
}

/// `(a+b)^m ⊨_{L,ν} a^m + b^m` for each `m` in `ms`.
pub fn frobenius_suite<R: Layered>(r: &R, ms: &[u32], cfg: CheckConfig) -> CheckReport {
    let d = Domain::new(r, cfg);
    let p = d.pool();
    let mut rep = CheckReport::new();
    for &m in ms {
        rep.push(p.check2(&format!("frobenius.m{m}"), |a, b| {
            let lhs = power(r, &r.add(a, b), m);
            let rhs = r.add(&power(r, a, m), &power(r, b, m));
            surpasses_lnu(r, &lhs, &rhs)
        }));
    }
    rep
}

/// `R \ R₀` is multiplicatively closed, by enumeration.
pub fn complement_closed<R: Layered>(r: &R) -> Option<bool> {
    let es = r.elements()?;
    let rest: Vec<&R::E> = es.iter().filter(|x| !r.sort(x).is_zero()).collect();
    Some(rest.iter().all(|a| rest.iter().all(|b| !r.sort(&r.mul(a, b)).is_zero())))
}

/// Checks specific to the pair construction: carrier shape, the zero
/// element criterion and the primeness criterion.
pub fn construction_suite(r: &LayeredSemiring, cfg: CheckConfig) -> CheckReport {
    let mut rep = CheckReport::new();
    let d = Domain::new(r, cfg);
    let p = d.pool();
    rep.push(p.check1("construction.carrier-shape", |a| r.contains(a)));
    if let Some(es) = r.elements() {
        // brute-force zero versus the absorbing v-least element of M
        let brute = es
            .iter()
            .find(|z| es.iter().all(|x| r.add(z, x) == *x && r.mul(z, x) == **z))
            .copied();
        let expected = r.expected_zero();
        rep.push(Entry::verdict(
            "construction.zero-iff-pointed",
            brute == expected,
            || format!("(brute={:?}, expected={:?})", brute.map(|x| x.to_string()), expected.map(|x| x.to_string())),
            es.len() as u64,
        ));
        if let (Some(closed), Ok(prime)) = (complement_closed(r), is_prime(r.monoid(), r.ideal())) {
            rep.push(Entry::verdict(
                "construction.prime-iff-closed",
                closed == prime,
                || format!("(closed={closed}, prime={prime})"),
                (es.len() * es.len()) as u64,
            ));
        }
    } else if let Some(z) = r.expected_zero() {
        rep.push(p.check1("construction.zero-iff-pointed", |a| r.add(&z, a) == *a && r.mul(&z, a) == z));
    }
    rep
}

/// The full report for a pair construction: axioms, construction facts,
/// the surpassing half-congruence suite and Frobenius for `m = 2, 3, 4`.
pub fn full_report(r: &LayeredSemiring, cfg: CheckConfig) -> CheckReport {
    let mut rep = check_axioms(r, cfg);
    rep.extend(construction_suite(r, cfg));
    rep.extend(surpassing_suite(r, cfg));
    rep.extend(frobenius_suite(r, &[2, 3, 4], cfg));
    rep
}

/// Draws an `n × n` matrix.
pub fn random_matrix<R: Structure>(r: &R, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<R::E>> {
    (0..n).map(|_| (0..n).map(|_| r.sample(rng)).collect()).collect()
}

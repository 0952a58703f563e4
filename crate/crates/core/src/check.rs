//! Check reports and the enumeration/sampling drivers used by every checker.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Default seed for every sampled check.
pub const DEFAULT_SEED: u64 = 0x1a5e_2024;
/// Default number of sampled tuples per law.
pub const DEFAULT_BUDGET: u64 = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub law: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub count: u64,
}

impl Entry {
    pub fn pass(law: impl Into<String>, count: u64) -> Self {
        Entry { law: law.into(), pass: true, witness: None, count }
    }

    pub fn fail(law: impl Into<String>, witness: impl Into<String>, count: u64) -> Self {
        Entry { law: law.into(), pass: false, witness: Some(witness.into()), count }
    }

    pub fn verdict(law: impl Into<String>, ok: bool, witness: impl FnOnce() -> String, count: u64) -> Self {
        if ok {
            Entry::pass(law, count)
        } else {
            Entry::fail(law, witness(), count)
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {}", self.law, if self.pass { "PASS" } else { "FAIL" })?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        write!(f, " n={}", self.count)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    entries: Vec<Entry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    /// Appends `other` with every law name prefixed by `prefix.`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut e in other.entries {
            e.law = format!("{prefix}.{}", e.law);
            self.entries.push(e);
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, law: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.law == law)
    }

    pub fn passed(&self, law: &str) -> bool {
        self.get(law).map(|e| e.pass).unwrap_or(false)
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical text form: one line per entry, sorted by law name.
    pub fn render(&self) -> String {
        let mut es: Vec<&Entry> = self.entries.iter().collect();
        es.sort_by(|a, b| a.law.cmp(&b.law));
        let mut out = String::new();
        for e in es {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// FNV-1a, used to derive a per-law stream from the run seed so that
/// sampled verdicts do not depend on the order laws are run in.
pub fn derive_seed(seed: u64, tag: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn rng_for(seed: u64, tag: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, tag))
}

/// Where the tuples of a law come from.
pub enum Pool<'a, T> {
    All(&'a [T]),
    Sample {
        draw: &'a dyn Fn(&mut ChaCha8Rng) -> T,
        budget: u64,
        seed: u64,
    },
}

impl<'a, T: fmt::Display> Pool<'a, T> {
    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Pool::All(_))
    }

    pub fn check1(&self, law: &str, mut f: impl FnMut(&T) -> bool) -> Entry {
        let mut n = 0;
        match self {
            Pool::All(xs) => {
                for a in xs.iter() {
                    n += 1;
                    if !f(a) {
                        return Entry::fail(law, format!("({a})"), n);
                    }
                }
            }
            Pool::Sample { draw, budget, seed } => {
                let mut rng = rng_for(*seed, law);
                for _ in 0..*budget {
                    let a = draw(&mut rng);
                    n += 1;
                    if !f(&a) {
                        return Entry::fail(law, format!("({a})"), n);
                    }
                }
            }
        }
        Entry::pass(law, n)
    }

    pub fn check2(&self, law: &str, mut f: impl FnMut(&T, &T) -> bool) -> Entry {
        let mut n = 0;
        match self {
            Pool::All(xs) => {
                for a in xs.iter() {
                    for b in xs.iter() {
                        n += 1;
                        if !f(a, b) {
                            return Entry::fail(law, format!("({a}, {b})"), n);
                        }
                    }
                }
            }
            Pool::Sample { draw, budget, seed } => {
                let mut rng = rng_for(*seed, law);
                for _ in 0..*budget {
                    let a = draw(&mut rng);
                    let b = draw(&mut rng);
                    n += 1;
                    if !f(&a, &b) {
                        return Entry::fail(law, format!("({a}, {b})"), n);
                    }
                }
            }
        }
        Entry::pass(law, n)
    }

    pub fn check3(&self, law: &str, mut f: impl FnMut(&T, &T, &T) -> bool) -> Entry {
        let mut n = 0;
        match self {
            Pool::All(xs) => {
                for a in xs.iter() {
                    for b in xs.iter() {
                        for c in xs.iter() {
                            n += 1;
                            if !f(a, b, c) {
                                return Entry::fail(law, format!("({a}, {b}, {c})"), n);
                            }
                        }
                    }
                }
            }
            Pool::Sample { draw, budget, seed } => {
                let mut rng = rng_for(*seed, law);
                for _ in 0..*budget {
                    let a = draw(&mut rng);
                    let b = draw(&mut rng);
                    let c = draw(&mut rng);
                    n += 1;
                    if !f(&a, &b, &c) {
                        return Entry::fail(law, format!("({a}, {b}, {c})"), n);
                    }
                }
            }
        }
        Entry::pass(law, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_sorts_by_law() {
        let mut r = CheckReport::new();
        r.push(Entry::pass("b", 3));
        r.push(Entry::fail("a", "(1)", 1));
        assert_eq!(r.render(), "CHECK a FAIL witness: (1) n=1\nCHECK b PASS n=3\n");
        assert!(!r.all_pass());
    }

    #[test]
    fn exhaustive_witness_is_first_in_order() {
        let xs = [1, 2, 3, 4];
        let e = Pool::All(&xs).check2("lt", |a, b| a + b < 6);
        assert_eq!(e.witness.as_deref(), Some("(2, 4)"));
    }

    #[test]
    fn sampled_is_reproducible() {
        let draw = |r: &mut ChaCha8Rng| rand::Rng::gen_range(r, 0..100u32);
        let p = Pool::Sample { draw: &draw, budget: 50, seed: 7 };
        let a = p.check1("x", |v| *v != 42);
        let b = p.check1("x", |v| *v != 42);
        assert_eq!(a, b);
    }
}

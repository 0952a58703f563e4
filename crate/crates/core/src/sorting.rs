//! Sorting semirings: the index structures `L` whose elements label layers.

use crate::check::{CheckReport, Pool};
use crate::error::Error;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Element of a sorting semiring. `Inf` is a distinguished symbol, never a
/// sentinel integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Fin(u64),
    Inf,
}

impl Sort {
    pub const ZERO: Sort = Sort::Fin(0);
    pub const ONE: Sort = Sort::Fin(1);

    pub fn is_zero(self) -> bool {
        self == Sort::ZERO
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Fin(n) => write!(f, "{n}"),
            Sort::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Sort {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "∞" => Ok(Sort::Inf),
            t => t
                .parse::<u64>()
                .map(Sort::Fin)
                .map_err(|_| Error::Parse(format!("bad sort `{s}`"))),
        }
    }
}

/// Hand-built finite sorting semiring given by operation tables over
/// `carrier`. The order is the numeric order of the labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortTable {
    pub name: String,
    pub carrier: Vec<Sort>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl SortTable {
    fn idx(&self, s: Sort) -> usize {
        self.carrier
            .iter()
            .position(|&c| c == s)
            .unwrap_or_else(|| panic!("sort {s} not in carrier of {}", self.name))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SortingKind {
    Trivial01Inf,
    NatInf,
    Truncated(u64),
    Table(SortTable),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortingSemiring {
    kind: SortingKind,
}

impl SortingSemiring {
    /// `{0, 1, ∞}` with `1 + 1 = ∞`.
    pub fn trivial01inf() -> Self {
        SortingSemiring { kind: SortingKind::Trivial01Inf }
    }

    /// `ℕ₀ ∪ {∞}` with the usual arithmetic and `0 · ∞ = 0`.
    pub fn nat_inf() -> Self {
        SortingSemiring { kind: SortingKind::NatInf }
    }

    /// `{0, …, m}` with saturating addition and multiplication.
    pub fn truncated(m: u64) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::InvalidThreshold("truncated sorting needs m >= 1".into()));
        }
        Ok(SortingSemiring { kind: SortingKind::Truncated(m) })
    }

    /// A table instance. Tables are validated for shape and closure only;
    /// semiring laws are left to [`check_sorting_semiring`].
    pub fn table(t: SortTable) -> Result<Self, Error> {
        let n = t.carrier.len();
        if !t.carrier.contains(&Sort::ZERO) || !t.carrier.contains(&Sort::ONE) {
            return Err(Error::Config(format!("table {} must contain 0 and 1", t.name)));
        }
        let shape_ok = |tab: &Vec<Vec<usize>>| tab.len() == n && tab.iter().all(|r| r.len() == n && r.iter().all(|&i| i < n));
        if !shape_ok(&t.add) || !shape_ok(&t.mul) {
            return Err(Error::Config(format!("table {} has a malformed operation table", t.name)));
        }
        Ok(SortingSemiring { kind: SortingKind::Table(t) })
    }

    /// Builds a table instance from closures over a finite carrier.
    pub fn from_fns(
        name: &str,
        carrier: Vec<Sort>,
        add: impl Fn(Sort, Sort) -> Sort,
        mul: impl Fn(Sort, Sort) -> Sort,
    ) -> Result<Self, Error> {
        let pos = |s: Sort| {
            carrier
                .iter()
                .position(|&c| c == s)
                .ok_or_else(|| Error::Config(format!("table {name} is not closed: {s}")))
        };
        let mut at = vec![vec![0; carrier.len()]; carrier.len()];
        let mut mt = at.clone();
        for (i, &a) in carrier.iter().enumerate() {
            for (j, &b) in carrier.iter().enumerate() {
                at[i][j] = pos(add(a, b))?;
                mt[i][j] = pos(mul(a, b))?;
            }
        }
        Self::table(SortTable { name: name.into(), carrier, add: at, mul: mt })
    }

    pub fn kind(&self) -> &SortingKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        match &self.kind {
            SortingKind::Trivial01Inf => "trivial01inf".into(),
            SortingKind::NatInf => "nat-inf".into(),
            SortingKind::Truncated(m) => format!("trunc:{m}"),
            SortingKind::Table(t) => t.name.clone(),
        }
    }

    pub fn zero(&self) -> Sort {
        Sort::ZERO
    }

    pub fn one(&self) -> Sort {
        Sort::ONE
    }

    pub fn add(&self, a: Sort, b: Sort) -> Sort {
        use Sort::*;
        match &self.kind {
            SortingKind::Trivial01Inf => match (a, b) {
                (Fin(0), x) | (x, Fin(0)) => x,
                _ => Inf,
            },
            SortingKind::NatInf => match (a, b) {
                (Fin(x), Fin(y)) => Fin(x.checked_add(y).expect("sort overflow")),
                _ => Inf,
            },
            SortingKind::Truncated(m) => Fin(fin(a).saturating_add(fin(b)).min(*m)),
            SortingKind::Table(t) => t.carrier[t.add[t.idx(a)][t.idx(b)]],
        }
    }

    pub fn mul(&self, a: Sort, b: Sort) -> Sort {
        use Sort::*;
        match &self.kind {
            SortingKind::Trivial01Inf | SortingKind::NatInf => match (a, b) {
                (Fin(0), _) | (_, Fin(0)) => Fin(0),
                (Fin(x), Fin(y)) => Fin(x.checked_mul(y).expect("sort overflow")),
                _ => Inf,
            },
            SortingKind::Truncated(m) => Fin(fin(a).saturating_mul(fin(b)).min(*m)),
            SortingKind::Table(t) => t.carrier[t.mul[t.idx(a)][t.idx(b)]],
        }
    }

    /// The numeric order, with `∞` on top.
    pub fn leq(&self, a: Sort, b: Sort) -> bool {
        a <= b
    }

    pub fn contains(&self, s: Sort) -> bool {
        match &self.kind {
            SortingKind::Trivial01Inf => matches!(s, Sort::Fin(0) | Sort::Fin(1) | Sort::Inf),
            SortingKind::NatInf => true,
            SortingKind::Truncated(m) => matches!(s, Sort::Fin(k) if k <= *m),
            SortingKind::Table(t) => t.carrier.contains(&s),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.kind, SortingKind::NatInf)
    }

    pub fn has_inf(&self) -> bool {
        self.contains(Sort::Inf)
    }

    /// All sorts in increasing order, when finite.
    pub fn elements(&self) -> Option<Vec<Sort>> {
        match &self.kind {
            SortingKind::Trivial01Inf => Some(vec![Sort::Fin(0), Sort::Fin(1), Sort::Inf]),
            SortingKind::NatInf => None,
            SortingKind::Truncated(m) => Some((0..=*m).map(Sort::Fin).collect()),
            SortingKind::Table(t) => {
                let mut v = t.carrier.clone();
                v.sort();
                Some(v)
            }
        }
    }

    /// Nonzero sorts, in increasing order, when finite.
    pub fn positive_elements(&self) -> Option<Vec<Sort>> {
        self.elements().map(|v| v.into_iter().filter(|s| !s.is_zero()).collect())
    }

    /// The largest sort: `∞` when present, else the finite maximum.
    pub fn top(&self) -> Sort {
        match &self.kind {
            SortingKind::Trivial01Inf | SortingKind::NatInf => Sort::Inf,
            SortingKind::Truncated(m) => Sort::Fin(*m),
            SortingKind::Table(t) => *t.carrier.iter().max().unwrap(),
        }
    }

    /// Draws a sort; nat-inf draws are biased toward small values so that
    /// coincidences actually occur.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Sort {
        match self.elements() {
            Some(v) => v[rng.gen_range(0..v.len())],
            None => match rng.gen_range(0..20u32) {
                0 | 1 => Sort::Inf,
                2 => Sort::ZERO,
                _ => Sort::Fin(rng.gen_range(1..=9)),
            },
        }
    }

    pub fn sample_positive(&self, rng: &mut ChaCha8Rng) -> Sort {
        loop {
            let s = self.sample(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// `s` is an `l`-ghost sort: `s = l + k` for some nonzero `k`.
    pub fn is_ghost_sort(&self, s: Sort, l: Sort) -> bool {
        match &self.kind {
            SortingKind::NatInf => match (s, l) {
                (Sort::Inf, _) => true,
                (Sort::Fin(_), Sort::Inf) => false,
                (Sort::Fin(a), Sort::Fin(b)) => a > b,
            },
            _ => self
                .positive_elements()
                .unwrap()
                .into_iter()
                .any(|k| self.add(l, k) == s),
        }
    }

    /// Caps every sort at `m`. For the shipped instances this yields the
    /// saturating `{0, …, m}`; capping at `∞` is the identity.
    pub fn cap(&self, m: Sort) -> Result<Self, Error> {
        let bad = || Error::InvalidThreshold(format!("cannot cap {} at {m}", self.name()));
        match (&self.kind, m) {
            (_, Sort::Fin(k)) if k <= 1 => Err(bad()),
            (_, Sort::Inf) if self.has_inf() => Ok(self.clone()),
            (SortingKind::NatInf, Sort::Fin(k)) => Self::truncated(k),
            (SortingKind::Truncated(t), Sort::Fin(k)) if k <= *t => Self::truncated(k),
            _ => Err(bad()),
        }
    }
}

impl FromStr for SortingSemiring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "trivial01inf" => Ok(Self::trivial01inf()),
            "nat-inf" | "natinf" => Ok(Self::nat_inf()),
            t => match t.strip_prefix("trunc:") {
                Some(m) => {
                    let m = m
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad truncation bound in `{s}`")))?;
                    Self::truncated(m)
                }
                None => Err(Error::Parse(format!("unknown sorting `{s}`"))),
            },
        }
    }
}

fn fin(s: Sort) -> u64 {
    match s {
        Sort::Fin(n) => n,
        Sort::Inf => u64::MAX,
    }
}

/// Semiring laws, directedness and order compatibility of `l`; exhaustive on
/// finite carriers, otherwise `budget` seeded samples per law.
pub fn check_sorting_semiring(l: &SortingSemiring, budget: u64, seed: u64) -> CheckReport {
    let elems = l.elements();
    let draw = |r: &mut ChaCha8Rng| l.sample(r);
    let pool = match &elems {
        Some(v) => Pool::All(v),
        None => Pool::Sample { draw: &draw, budget, seed },
    };
    let (z, o) = (l.zero(), l.one());
    let mut rep = CheckReport::new();
    rep.push(pool.check3("sorting.add-assoc", |&a, &b, &c| l.add(l.add(a, b), c) == l.add(a, l.add(b, c))));
    rep.push(pool.check2("sorting.add-comm", |&a, &b| l.add(a, b) == l.add(b, a)));
    rep.push(pool.check3("sorting.mul-assoc", |&a, &b, &c| l.mul(l.mul(a, b), c) == l.mul(a, l.mul(b, c))));
    rep.push(pool.check2("sorting.mul-comm", |&a, &b| l.mul(a, b) == l.mul(b, a)));
    rep.push(pool.check3("sorting.distributivity", |&a, &b, &c| {
        l.mul(a, l.add(b, c)) == l.add(l.mul(a, b), l.mul(a, c))
    }));
    rep.push(pool.check1("sorting.add-identity", |&a| l.add(a, z) == a));
    rep.push(pool.check1("sorting.mul-identity", |&a| l.mul(a, o) == a));
    rep.push(pool.check1("sorting.zero-absorbing", |&a| l.mul(a, z) == z));
    rep.push(pool.check1("sorting.zero-least", |&a| l.leq(z, a)));
    rep.push(pool.check2("sorting.directed", |&a, &b| match &elems {
        Some(v) => v.iter().any(|&c| l.leq(a, c) && l.leq(b, c)),
        None => {
            let c = l.add(a, b);
            l.leq(a, c) && l.leq(b, c)
        }
    }));
    rep.push(pool.check3("sorting.order-add-compat", |&a, &b, &c| {
        !l.leq(b, c) || l.leq(l.add(a, b), l.add(a, c))
    }));
    rep.push(pool.check3("sorting.order-mul-compat", |&a, &b, &c| {
        !l.leq(b, c) || (l.leq(l.mul(a, b), l.mul(a, c)) && l.leq(l.mul(b, a), l.mul(c, a)))
    }));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::DEFAULT_SEED;

    #[test]
    fn instance_tables() {
        let t4 = SortingSemiring::truncated(4).unwrap();
        assert_eq!(t4.add(Sort::Fin(3), Sort::Fin(2)), Sort::Fin(4));
        let tri = SortingSemiring::trivial01inf();
        assert_eq!(tri.add(Sort::ONE, Sort::ONE), Sort::Inf);
        assert_eq!(tri.mul(Sort::ONE, Sort::ONE), Sort::ONE);
        assert_eq!(tri.mul(Sort::ZERO, Sort::Inf), Sort::ZERO);
        let n = SortingSemiring::nat_inf();
        assert_eq!(n.mul(Sort::Fin(2), Sort::Fin(3)), Sort::Fin(6));
        assert_eq!(n.mul(Sort::Fin(0), Sort::Inf), Sort::Fin(0));
        assert_eq!(n.add(Sort::Fin(4), Sort::Inf), Sort::Inf);
        assert!(SortingSemiring::truncated(0).is_err());
    }

    #[test]
    fn ghost_sorts() {
        let n = SortingSemiring::nat_inf();
        assert!(n.is_ghost_sort(Sort::Fin(4), Sort::Fin(2)));
        assert!(!n.is_ghost_sort(Sort::Fin(2), Sort::Fin(4)));
        assert!(!n.is_ghost_sort(Sort::Fin(2), Sort::Fin(2)));
        assert!(n.is_ghost_sort(Sort::Inf, Sort::Inf));
        let t4 = SortingSemiring::truncated(4).unwrap();
        assert!(t4.is_ghost_sort(Sort::Fin(4), Sort::Fin(4)));
        assert!(!t4.is_ghost_sort(Sort::Fin(3), Sort::Fin(3)));
        let tri = SortingSemiring::trivial01inf();
        assert!(tri.is_ghost_sort(Sort::Inf, Sort::ONE));
        assert!(!tri.is_ghost_sort(Sort::ONE, Sort::ONE));
    }

    #[test]
    fn shipped_instances_pass() {
        for l in [
            SortingSemiring::trivial01inf(),
            SortingSemiring::truncated(4).unwrap(),
            SortingSemiring::truncated(1).unwrap(),
            SortingSemiring::nat_inf(),
        ] {
            let r = check_sorting_semiring(&l, 10_000, DEFAULT_SEED);
            assert!(r.all_pass(), "{}:\n{r}", l.name());
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        // 2+2 := 3 instead of saturating to 4
        let carrier: Vec<Sort> = (0..=4).map(Sort::Fin).collect();
        let l = SortingSemiring::from_fns(
            "corrupt",
            carrier,
            |a, b| match (a, b) {
                (Sort::Fin(2), Sort::Fin(2)) => Sort::Fin(3),
                (Sort::Fin(x), Sort::Fin(y)) => Sort::Fin((x + y).min(4)),
                _ => unreachable!(),
            },
            |a, b| match (a, b) {
                (Sort::Fin(x), Sort::Fin(y)) => Sort::Fin((x * y).min(4)),
                _ => unreachable!(),
            },
        )
        .unwrap();
        let r = check_sorting_semiring(&l, 0, 0);
        let bad: Vec<_> = r.failures().iter().map(|e| e.law.clone()).collect();
        assert!(
            bad.iter().any(|l| l == "sorting.add-assoc" || l == "sorting.distributivity"),
            "{r}"
        );
        assert!(r.failures().iter().all(|e| e.witness.is_some()));
    }

    #[test]
    fn parse_flags() {
        assert_eq!("trunc:4".parse::<SortingSemiring>().unwrap(), SortingSemiring::truncated(4).unwrap());
        assert_eq!("nat-inf".parse::<SortingSemiring>().unwrap(), SortingSemiring::nat_inf());
        assert!("trunc:x".parse::<SortingSemiring>().is_err());
        assert_eq!("inf".parse::<Sort>().unwrap(), Sort::Inf);
    }
}

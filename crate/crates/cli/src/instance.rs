use laysem_core::extensions::{l_truncate, nu_truncate};
use laysem_core::layered::ZeroLayer;
use laysem_core::*;

/// Instance flags shared by every subcommand.
#[derive(clap::Args, Clone, Debug)]
pub struct InstanceArgs {
    /// trivial01inf, nat-inf or trunc:<m>
    #[arg(long, default_value = "nat-inf", global = true)]
    pub sorting: String,
    /// qmax, qmax-nonneg or trunc-nat:<q>
    #[arg(long, default_value = "qmax", global = true)]
    pub monoid: String,
    /// Clamp values at q (qmax is first restricted to its nonnegative part)
    #[arg(long, global = true, value_name = "q")]
    pub nu_trunc: Option<String>,
    /// Cap sorts at m
    #[arg(long, global = true, value_name = "m")]
    pub sort_trunc: Option<u64>,
    /// Build with an empty ideal, skipping the noncancellativity check
    #[arg(long, global = true)]
    pub force_empty_ideal: bool,
}

impl InstanceArgs {
    pub fn sorting(&self) -> Result<SortingSemiring, Error> {
        self.sorting.parse()
    }

    pub fn monoid(&self) -> Result<ValuedMonoid, Error> {
        self.monoid.parse()
    }

    pub fn build(&self) -> Result<LayeredSemiring, Error> {
        let (l, m) = (self.sorting()?, self.monoid()?);
        let spec = if self.force_empty_ideal { IdealSpec::ForceEmpty } else { IdealSpec::Auto };
        let mut r = match &self.nu_trunc {
            Some(q) => {
                let t = nu_truncate(&l, &m, q.parse()?)?;
                LayeredSemiring::build(l, t.monoid().clone(), spec)?
            }
            None => LayeredSemiring::build(l, m, spec)?,
        };
        if let Some(m) = self.sort_trunc {
            r = l_truncate(&r, Sort::Fin(m))?;
        }
        Ok(r)
    }
}

/// Text form of an instance: header lines, then the carrier and both
/// operation tables when the carrier is finite.
pub fn serialize(r: &LayeredSemiring) -> String {
    let mut out = String::new();
    out.push_str(&format!("instance {}\n", r.name()));
    out.push_str(&format!("sorting {}\n", r.sorting().name()));
    out.push_str(&format!("monoid {}\n", r.monoid().name()));
    out.push_str(&format!("ideal {}\n", r.ideal()));
    let zl = match r.zero_layer() {
        ZeroLayer::Ideal => "ideal",
        ZeroLayer::Full => "full",
    };
    out.push_str(&format!("zero-layer {zl}\n"));
    match r.elements() {
        None => out.push_str("carrier infinite\n"),
        Some(es) => {
            let shown: Vec<String> = es.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("carrier {} : {}\n", es.len(), shown.join(" ")));
            for (op, f) in [("add", LayeredSemiring::add as fn(&_, &_, &_) -> _), ("mul", LayeredSemiring::mul)] {
                for a in &es {
                    for b in &es {
                        out.push_str(&format!("{op} {a} {b} = {}\n", f(r, a, b)));
                    }
                }
            }
        }
    }
    out
}

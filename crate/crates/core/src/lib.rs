//! Exact layered (supertropical) semirings over valued monoids, with
//! checkers for their axioms, morphisms and tropicalization.

pub mod axioms;
pub mod check;
pub mod error;
pub mod extensions;
pub mod layered;
pub mod monoids;
pub mod morphisms;
pub mod sorting;
pub mod subquotient;
pub mod tropical;

pub use check::{CheckReport, Entry};
pub use error::Error;
pub use layered::{Elem, IdealSpec, Layered, LayeredSemiring, Structure};
pub use monoids::{Value, ValuedMonoid};
pub use sorting::{Sort, SortingSemiring};

//! Exact computations for classical Lie algebras: weight orders, Berenstein–Zelevinsky
//! g-partitions, admissible-partition constructions, generalized exponents and the
//! minuscule recurrence, each paired with an independent brute-force oracle.

pub mod constructor;
pub mod error;
pub mod exterior_oracle;
pub mod genexp;
pub mod gpartitions;
pub mod orders;
pub mod poly;
pub mod recurrence;
pub mod rootdata;
pub mod weyl_oracle;

pub use error::{Error, Result};
pub use poly::{LaurentQS, PolyT};
pub use rootdata::{build_root_datum, Family, RootDatum, Weight};

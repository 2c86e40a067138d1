//! Finite computational algebra over Cayley tables.
//!
//! The crate builds, classifies and exhaustively checks quasigroups, loops and
//! metagroups given as explicit multiplication tables. On top of the core
//! representation it provides right-coset decompositions with transversal
//! factorizations, smashed twisted products, smashed twisted wreath products,
//! and finite-topology compatibility checks.
//!
//! Elements are dense indices `0..n`. When a structure has a two-sided identity
//! it always sits at index 0.

pub mod analysis;
pub mod bitset;
pub mod catalog;
pub mod coset;
pub mod error;
pub mod io;
pub mod magma;
pub mod products;
pub mod report;
pub mod search;
pub mod subset;
pub mod topology;
pub mod wreath;

pub use analysis::Verdict;
pub use bitset::BitSet;
pub use coset::{QuotientSpace, Transversal};
pub use error::{Error, Result};
pub use magma::{ClassTag, Elem, FiniteBinarySystem};
pub use products::SmashingFactors;
pub use report::{CheckItem, Report, Status};
pub use subset::Subset;
pub use topology::{BaseFamily, FiniteTopology};
pub use wreath::{FunctionSpace, WreathSpec, WreathStructure};

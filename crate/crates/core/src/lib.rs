//! Incidence structures built from quasi difference sets in finite groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`groups`]: finite group arithmetic (cyclic products, Cayley tables)
//! * [`qds`]: quasi difference sets, condition (★), sums, Singer sets
//! * [`incidence`]: the coset structure `D(G,D)` and its anatomy
//! * [`geometry`]: Veblen, Desargues, Pappus and completion checks
//! * [`autgroup`]: automorphism groups and isomorphism testing

pub mod autgroup;
pub mod budget;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod incidence;
pub mod qds;

pub use budget::{Budget, Caps};
pub use error::{Error, Result};
pub use groups::{Element, GroupDescription, GroupSpec};
pub use incidence::IncidenceStructure;
pub use qds::QDSet;

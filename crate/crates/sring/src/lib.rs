//! S-rings over finite abelian groups.

pub mod autsearch;
pub mod bitset;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod group;
pub mod io;
pub mod perm;
pub mod repro;
pub mod schurity;
pub mod sring;

pub use bitset::ElemSet;
pub use error::{Error, Result};
pub use group::{AbelianGroup, Section, Subgroup};
pub use sring::SRing;

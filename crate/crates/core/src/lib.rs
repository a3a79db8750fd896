//! Exact computation toolkit for finite permutation groups, centered on
//! Wielandt subnormalizers: the probability spr(G) that a random cyclic
//! subgroup is subnormal in the subgroup generated with a second random
//! element, p-element censuses, fixed-point ratios, and the identities
//! connecting them to Sylow theory. All ratios are exact rationals.

pub mod catalog;
pub mod config;
pub mod counting;
pub mod error;
pub mod field;
pub mod group;
pub mod io;
pub mod perm;
pub mod ratio;
pub mod spr;
pub mod subnormal;
pub mod verify;

pub use config::Caps;
pub use error::{Error, Result};
pub use group::{Group, SylowSystem};
pub use perm::{Permutation, Point};
pub use ratio::ExactRatio;

//! Exact-arithmetic toolkit for modular representation theory of finite
//! groups: finite fields, groups and their quotients, group algebras and
//! blocks, module categories with the Auslander-Reiten translate, support
//! tau-tilting pairs / two-term silting complexes, semibricks, and
//! machine-checked quotient-reduction verifications.

pub mod algebra;
pub mod artifact;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod reduction;
pub mod rng;
pub mod tilting;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec};
pub use linalg::{Mat, Subspace};
pub use rng::Rng;

/// Stable 64-bit FNV-1a hash used for content fingerprints in artifacts.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

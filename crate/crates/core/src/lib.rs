//! Exact computations for recollements of module categories.

pub mod algebra;
pub mod analyzer;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod hochschild;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod report;
pub mod resolution;

pub use algebra::{Algebra, Idempotent};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use module::{Bimodule, ModuleRep};
pub use quiver::{build_algebra, parse_algebra_file, QuiverPresentation};

/// Deterministic generator used by every randomized search in the crate.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

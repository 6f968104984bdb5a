#![allow(dead_code)]

pub mod props;

use std::sync::Arc;

use recollement::fixtures;
use recollement::{Algebra, PrimeField};

pub const POOL: &[&str] = &["a2", "fix_a", "fix_b", "fix_c", "k", "kk", "nakayama_2_2", "nakayama_3_2", "fix_t"];

pub fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

/// A bundled algebra by name; `fix_t` is the triangular fixture.
pub fn algebra(name: &str, f: &PrimeField) -> Arc<Algebra<PrimeField>> {
    if name == "fix_t" {
        fixtures::triangular("fix_t", f).unwrap().algebra().unwrap()
    } else {
        fixtures::algebra(name, f).unwrap()
    }
}

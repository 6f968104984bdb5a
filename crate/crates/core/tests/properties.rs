//! Randomized structural checks over the bundled fixtures. Every assertion
//! is exact; proptest drives the choice of fixture and seed.

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use recollement::analyzer::make_context;
use recollement::hochschild::{enveloping, epsilon, DEFAULT_DIM_CAP};
use recollement::module::sample::random_idempotent;
use recollement::seeded_rng;

use common::props::{self, Check};
use common::{algebra, f101, POOL};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 200, ..ProptestConfig::default() }
}

fn fixture() -> impl Strategy<Value = &'static str> {
    prop::sample::select(POOL)
}

fn lift(c: Check) -> Result<(), TestCaseError> {
    c.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rank_nullity(rows in 1usize..8, cols in 1usize..8, p in prop::sample::select(vec![2u64, 3, 5, 101, 0]), seed: u64) {
        lift(props::rank_nullity(rows, cols, p, seed))?;
    }

    #[test]
    fn associativity(name in fixture(), seed: u64) {
        lift(props::associativity(name, seed))?;
    }

    #[test]
    fn injective_dimension_matches_ext(name in fixture(), seed: u64) {
        lift(props::duality(name, seed))?;
    }

    #[test]
    fn resolutions_are_minimal(name in fixture(), seed: u64) {
        lift(props::minimality(name, seed))?;
    }

    #[test]
    fn euler_characteristic(name in fixture(), seed: u64) {
        lift(props::euler(name, seed))?;
    }

    #[test]
    fn adjunctions_and_vanishing(name in fixture(), seed: u64) {
        lift(props::adjunctions(name, seed))?;
    }

    #[test]
    fn recollement_units(name in fixture(), seed: u64) {
        lift(props::units(name, seed))?;
    }

    #[test]
    fn pd_of_tensor_products(first in fixture(), second in fixture(), seed: u64) {
        lift(props::pd_tensor(first, second, seed))?;
    }

    #[test]
    fn pd_of_epsilon_corner(name in fixture(), seed: u64) {
        lift(props::pd_epsilon(name, seed))?;
    }
}

#[test]
fn epsilon_corner_is_enveloping_of_corner() {
    let f = f101();
    for name in POOL {
        let lambda = algebra(name, &f);
        if lambda.dim() > DEFAULT_DIM_CAP {
            continue;
        }
        let mut rng = seeded_rng(7);
        for _ in 0..3 {
            let a = random_idempotent(lambda.vertex_count(), &mut rng);
            let ctx = make_context(&lambda, a.clone()).unwrap();
            let env = enveloping(&lambda, DEFAULT_DIM_CAP).unwrap();
            let eps = epsilon(lambda.vertex_count(), &a).unwrap();
            let (corner_of_env, _) = env.algebra.corner(&eps).unwrap();
            let env_of_corner = enveloping(ctx.corner(), DEFAULT_DIM_CAP).unwrap();
            assert!(Arc::new(corner_of_env).same_as(&env_of_corner.algebra), "{name}");
        }
    }
}

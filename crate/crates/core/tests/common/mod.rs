#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::test_runner::{Config, RngSeed};
use stabform::classify::Registry;
use stabform::{KForm, LinMap, Matrix, Scalar};

pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| Registry::bundled().expect("bundled registry verifies"))
}

pub fn form(name: &str) -> &'static KForm {
    &registry()
        .get(name)
        .unwrap_or_else(|| panic!("no registry entry '{name}'"))
        .form
}

/// Seed-fixed configuration that never writes regression files.
pub fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::from_int(x)).collect()
}

pub fn apply(g: &LinMap, v: &[Scalar]) -> Vec<Scalar> {
    g.matrix().mul_vec(v).unwrap()
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// `xᵀ G y`.
pub fn pair(gram: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let gy = gram.mul_vec(y).unwrap();
    x.iter().zip(&gy).map(|(a, b)| a * b).sum()
}

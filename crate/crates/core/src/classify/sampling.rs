//! Seeded random sampling: orbit elements `g*γ` and random sparse forms.
//!
//! Every sample draws from its own ChaCha stream (`seed`, stream = sample
//! index), so results do not depend on how the work is split across
//! threads.

use std::fmt;
use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exterior::{binomial, blades, pullback, KForm, LinMap};
use crate::field::{Matrix, Scalar};
use crate::invariants::is_nondegenerate;

const MAX_FACTORS: usize = 6;
const FACTOR_ENTRY: i64 = 3;

fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Nonzero integer in `[-FACTOR_ENTRY, FACTOR_ENTRY]`.
fn nonzero_entry(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.random_range(1..=FACTOR_ENTRY);
    if rng.random_bool(0.5) {
        c
    } else {
        -c
    }
}

/// A product of 0 to 6 elementary factors: shears `I + c·E_ij` and
/// single-coordinate scalings, with `c ∈ {−3..3} \ {0}`.
fn random_group_element(n: usize, rng: &mut ChaCha8Rng) -> Result<LinMap> {
    let mut g = Matrix::identity(n);
    let factors = rng.random_range(0..=MAX_FACTORS);
    for _ in 0..factors {
        let mut f = Matrix::identity(n);
        let i = rng.random_range(0..n);
        let c = Scalar::from_int(nonzero_entry(rng));
        if n > 1 && rng.random_bool(0.5) {
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            f[(i, j)] = c;
        } else {
            f[(i, i)] = c;
        }
        g = g.mul(&f)?;
    }
    LinMap::new(g)
}

/// `count` pairs `(g, g*γ)`, deterministic in `seed`.
pub fn orbit_sample(gamma: &KForm, seed: u64, count: usize) -> Result<Vec<(LinMap, KForm)>> {
    (0..count)
        .into_par_iter()
        .map(|t| {
            let g = random_group_element(gamma.dim(), &mut stream(seed, t))?;
            let image = pullback(&g, gamma)?;
            Ok((g, image))
        })
        .collect()
}

fn sparse_form(
    n: usize,
    k: usize,
    terms: usize,
    pool: &RangeInclusive<i64>,
    rng: &mut ChaCha8Rng,
) -> KForm {
    let all: Vec<_> = blades(n, k).collect();
    let mut form = KForm::zero(n, k);
    for idx in sample(rng, all.len(), terms.min(all.len())).into_vec() {
        let c = rng.random_range(pool.clone());
        form.add_unsorted(&all[idx], Scalar::from_int(c))
            .expect("blade indices are in range");
    }
    form
}

/// A random `k`-form on `R^n` with `terms` distinct basis blades and
/// integer coefficients drawn from `pool` (zeros allowed).
pub fn random_form(
    n: usize,
    k: usize,
    terms: usize,
    pool: RangeInclusive<i64>,
    seed: u64,
) -> KForm {
    sparse_form(n, k, terms, &pool, &mut stream(seed, 0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    /// Trial index; with the report's seed this regenerates the form.
    pub trial: usize,
    pub form: KForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub hits: Vec<SearchHit>,
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hits.is_empty() {
            write!(f, "no hit in {} trials", self.trials)
        } else {
            write!(f, "{} hit(s) in {} trials", self.hits.len(), self.trials)
        }
    }
}

fn check_pool(pool: &RangeInclusive<i64>) -> Result<()> {
    if pool.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "empty coefficient pool {}..={}",
            pool.start(),
            pool.end()
        )));
    }
    Ok(())
}

fn run_trials(
    n: usize,
    trials: usize,
    seed: u64,
    make: impl Fn(&mut ChaCha8Rng) -> Result<KForm> + Sync,
) -> Result<SearchReport> {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let form = make(&mut stream(seed, t))?;
            Ok(is_nondegenerate(&form)?.then_some(SearchHit { trial: t, form }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchReport {
        n,
        trials,
        seed,
        hits: outcomes.into_iter().flatten().collect(),
    })
}

/// Samples random sparse 3-forms on `R^n` (`n ≡ 2 mod 3`) with `2n`
/// terms and coefficients from `pool`, and records those with a
/// non-degenerate trace form.
pub fn search_nondegenerate(
    n: usize,
    trials: usize,
    seed: u64,
    pool: RangeInclusive<i64>,
) -> Result<SearchReport> {
    check_pool(&pool)?;
    if n % 3 != 2 || n < 5 {
        return Err(Error::WrongResidue {
            n,
            reason: "search needs n ≡ 2 (mod 3) and n ≥ 5".into(),
        });
    }
    let terms = (2 * n).min(binomial(n, 3));
    run_trials(n, trials, seed, |rng| {
        Ok(sparse_form(n, 3, terms, &pool, rng))
    })
}

/// Like [`search_nondegenerate`], but each trial is `g*base + δ` with `g`
/// drawn as in [`orbit_sample`] and `δ` a sparse `n`-term form from `pool`
/// (use `0..=0` for pure orbit samples).
pub fn search_orbit(
    base: &KForm,
    trials: usize,
    seed: u64,
    pool: RangeInclusive<i64>,
) -> Result<SearchReport> {
    check_pool(&pool)?;
    let n = base.dim();
    run_trials(n, trials, seed, |rng| {
        let g = random_group_element(n, rng)?;
        let delta = sparse_form(n, base.degree(), n, &pool, rng);
        pullback(&g, base)?.add(&delta)
    })
}

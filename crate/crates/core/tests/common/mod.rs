//! Shared generators and brute-force oracles for the integration suites.
#![allow(dead_code)] // each test target uses a different subset

use mivote::{PreferenceProfile, Proposal, Rational, VotingInstance, WeightScheme};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn proposal(signs: &[i8]) -> Proposal {
    Proposal::from_signs(signs).unwrap()
}

pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, t: usize) -> Vec<Vec<i8>> {
    (0..n)
        .map(|_| (0..t).map(|_| if rng.gen() { 1 } else { -1 }).collect())
        .collect()
}

pub fn random_profile(rng: &mut ChaCha8Rng, n: usize, t: usize) -> PreferenceProfile {
    PreferenceProfile::from_rows(&random_rows(rng, n, t)).unwrap()
}

/// Biased rows: each entry is +1 with probability `num`/`den`.
pub fn biased_rows(rng: &mut ChaCha8Rng, n: usize, t: usize, num: u32, den: u32) -> Vec<Vec<i8>> {
    (0..n)
        .map(|_| {
            (0..t)
                .map(|_| if rng.gen_range(0..den) < num { 1 } else { -1 })
                .collect()
        })
        .collect()
}

/// A random unit-sum weight vector with integer parts in 1..=max_part.
pub fn random_unit_weights(rng: &mut ChaCha8Rng, t: usize, max_part: i64) -> Vec<Rational> {
    let parts: Vec<i64> = (0..t).map(|_| rng.gen_range(1..=max_part)).collect();
    let total: i64 = parts.iter().sum();
    parts.iter().map(|&x| rat(x, total)).collect()
}

pub fn random_external_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    t: usize,
    max_part: i64,
) -> VotingInstance {
    VotingInstance::new(
        random_profile(rng, n, t),
        WeightScheme::External(random_unit_weights(rng, t, max_part)),
    )
    .unwrap()
}

pub fn random_internal_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    t: usize,
    max_part: i64,
) -> VotingInstance {
    let rows = (0..n).map(|_| random_unit_weights(rng, t, max_part)).collect();
    VotingInstance::new(random_profile(rng, n, t), WeightScheme::Internal(rows)).unwrap()
}

/// A planted SSWNF yes-instance with pairwise-distinct columns: presented
/// rows are prefix or suffix runs of +1, columns are then scattered by a
/// random permutation. Returns the scrambled profile and the planted order
/// (source column of each presented position).
pub fn planted_sswnf(
    rng: &mut ChaCha8Rng,
    n: usize,
    t: usize,
) -> (PreferenceProfile, Vec<usize>) {
    let presented = loop {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let cut = rng.gen_range(0..=t);
            let suffix = rng.gen::<bool>();
            let row: Vec<i8> = (0..t)
                .map(|j| {
                    let one = if suffix { j >= t - cut } else { j < cut };
                    if one {
                        1
                    } else {
                        -1
                    }
                })
                .collect();
            rows.push(row);
        }
        let mut cols: Vec<Vec<i8>> = (0..t)
            .map(|j| rows.iter().map(|r| r[j]).collect())
            .collect();
        cols.sort();
        cols.dedup();
        if cols.len() == t {
            break rows;
        }
    };
    // planted[j] = source column in the scrambled profile holding presented
    // column j.
    let mut planted: Vec<usize> = (0..t).collect();
    for j in (1..t).rev() {
        planted.swap(j, rng.gen_range(0..=j));
    }
    let mut scrambled = vec![vec![0i8; t]; n];
    for (j, &src) in planted.iter().enumerate() {
        for i in 0..n {
            scrambled[i][src] = presented[i][j];
        }
    }
    (PreferenceProfile::from_rows(&scrambled).unwrap(), planted)
}

/// A planted single-switch profile: planted SSWNF plus random column flips.
pub fn planted_ssw(rng: &mut ChaCha8Rng, n: usize, t: usize) -> PreferenceProfile {
    let (profile, _) = planted_sswnf(rng, n, t);
    let flips: Vec<bool> = (0..t).map(|_| rng.gen()).collect();
    profile.with_flipped_columns(&flips).unwrap()
}

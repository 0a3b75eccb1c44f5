//! Parallel versus sequential proposal-space scans on a realistic instance.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};

use mivote::majority::iwm_proposals;
use mivote::representation::{best_supported_oracle, best_supported_oracle_seq};
use mivote::{PreferenceProfile, Proposal, Rational, VotingInstance, WeightScheme};

fn random_external(n: usize, t: usize, seed: u64) -> VotingInstance {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<i8>> = (0..n)
        .map(|_| (0..t).map(|_| if rng.gen() { 1 } else { -1 }).collect())
        .collect();
    let parts: Vec<i64> = (0..t).map(|_| rng.gen_range(1..=16)).collect();
    let total: i64 = parts.iter().sum();
    let w: Vec<Rational> = parts
        .iter()
        .map(|&x| Rational::new(x.into(), total.into()))
        .collect();
    VotingInstance::new(
        PreferenceProfile::from_rows(&rows).unwrap(),
        WeightScheme::External(w),
    )
    .unwrap()
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("supported-proposal-oracle");
    group.sample_size(10);
    for &t in &[14usize, 18] {
        let inst = random_external(64, t, 7);
        let iwm = iwm_proposals(&inst).unwrap().canonical;
        let check = |a: &Proposal, b: &Proposal| assert_eq!(a, b);
        let par = best_supported_oracle(&inst, &iwm).unwrap();
        let seq = best_supported_oracle_seq(&inst, &iwm).unwrap();
        check(&par.proposal, &seq.proposal);
        group.bench_with_input(BenchmarkId::new("parallel", t), &t, |b, _| {
            b.iter(|| best_supported_oracle(&inst, &iwm).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", t), &t, |b, _| {
            b.iter(|| best_supported_oracle_seq(&inst, &iwm).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_oracle);
criterion_main!(benches);

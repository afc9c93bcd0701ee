use criterion::{criterion_group, criterion_main, Criterion};
use hibi_core::harness::{run_campaign, Campaign};

fn config(jobs: usize) -> Campaign {
    let mut cfg = Campaign { max_poset_size: 4, lattice_max_size: 7, jobs, ..Campaign::default() };
    cfg.toggles.rees = false;
    cfg
}

fn campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("campaign_n4");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| run_campaign(&config(1)).unwrap()));
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    group.bench_function(format!("parallel_{workers}"), |b| b.iter(|| run_campaign(&config(workers)).unwrap()));
    group.finish();
}

criterion_group!(benches, campaign);
criterion_main!(benches);

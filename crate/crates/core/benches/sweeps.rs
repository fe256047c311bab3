use std::collections::BTreeSet;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use dimerweb::dimer::{self, subsets};
use dimerweb::network::PlanarNetwork;
use dimerweb::par;
use dimerweb::tl;
use dimerweb::web::Web;
use dimerweb::webimm;

fn grid() -> PlanarNetwork {
    PlanarNetwork::parse(include_str!("../../../fixtures/grid33.net")).unwrap()
}

fn tl_pairs(c: &mut Criterion) {
    let net = grid();
    let k = net.stats().k as usize;
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = subsets(net.n(), k)
        .into_iter()
        .flat_map(|i| subsets(net.n(), k).into_iter().map(move |j| (i.clone(), j)))
        .take(24)
        .collect();
    let check = |(i, j): &(Vec<usize>, Vec<usize>)| tl::verify_tl_identity(&net, i, j).passed();
    let mut group = c.benchmark_group("double-dimer identity, grid33, 24 pairs");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| black_box(par::map(&pairs, check))));
    group.bench_function("sequential", |b| b.iter(|| black_box(par::map_seq(&pairs, check))));
    group.finish();
}

fn reductions(c: &mut Criterion) {
    let net = grid();
    let mut seen = BTreeSet::new();
    let webs: Vec<Web> = webimm::enumerate_weblike(&net)
        .iter()
        .map(|(g, _)| webimm::web_of(&net, g))
        .filter(|w| !w.is_nonelliptic() && seen.insert(w.key()))
        .take(300)
        .collect();
    let mut group = c.benchmark_group("web reduction, grid33, 300 webs");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| black_box(par::map(&webs, |w| w.reduce()))));
    group.bench_function("sequential", |b| b.iter(|| black_box(par::map_seq(&webs, |w| w.reduce()))));
    group.finish();
}

fn matchings(c: &mut Criterion) {
    let net = grid();
    let ms = dimer::enumerate_matchings(&net);
    let f = |m: &dimer::Matching| (dimer::boundary_subset(&net, m), m.weight(&net));
    let mut group = c.benchmark_group("matching weights, grid33");
    group.bench_function("parallel", |b| b.iter(|| black_box(par::map(&ms, f))));
    group.bench_function("sequential", |b| b.iter(|| black_box(par::map_seq(&ms, f))));
    group.finish();
}

criterion_group!(benches, tl_pairs, reductions, matchings);
criterion_main!(benches);

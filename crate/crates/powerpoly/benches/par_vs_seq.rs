//! Compares the data-parallel batch drivers against their sequential
//! fallbacks. The switch is a compile-time feature, so the comparison is two
//! runs of the same benchmarks:
//!
//! ```text
//! cargo bench --bench par_vs_seq -- --save-baseline par
//! cargo bench --bench par_vs_seq --no-default-features -- --baseline par
//! ```
//!
//! The second run reports each benchmark's change relative to the saved
//! parallel baseline. Workloads are sized so a full run stays under a minute
//! per mode.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use powerpoly::{
    average_index, distance_study, enumerate_weighted_games, integer_representation_census,
    IndexKind, WeightedGame,
};

fn game(text: &str) -> WeightedGame {
    WeightedGame::parse(text).unwrap()
}

/// Exact centroid of a six-voter weight polytope; dominated by the simplex
/// decomposition and moment sums inside `integrate`.
fn bench_average_index(c: &mut Criterion) {
    let g = game("[7;5,4,3,2,1,1]");
    c.bench_function("awi_six_voters", |b| {
        b.iter(|| average_index(black_box(&g), IndexKind::Awi).unwrap())
    });
}

/// Full five-voter catalog; dominated by canonicalizing candidate tables.
fn bench_catalog(c: &mut Criterion) {
    c.bench_function("catalog_five_voters", |b| {
        b.iter(|| enumerate_weighted_games(black_box(5)).unwrap())
    });
}

/// Integer representations of [3;2,1,1] at one weight total; dominated by
/// the per-leading-weight partition scan.
fn bench_integer_census(c: &mut Criterion) {
    let g = game("[3;2,1,1]");
    c.bench_function("integer_census_total_120", |b| {
        b.iter(|| integer_representation_census(black_box(&g), 120, false).unwrap())
    });
}

/// Pairwise index distances over every game with up to four voters; one
/// exact integration per game and index.
fn bench_distance_study(c: &mut Criterion) {
    let kinds = [
        IndexKind::Awi,
        IndexKind::Ari,
        IndexKind::Banzhaf,
        IndexKind::ShapleyShubik,
    ];
    c.bench_function("distance_study_four_voters", |b| {
        b.iter(|| distance_study(black_box(4), &kinds).unwrap())
    });
}

fn config() -> Criterion {
    Criterion::default()
        .sample_size(10)
        .measurement_time(Duration::from_secs(8))
}

criterion_group! {
    name = benches;
    config = config();
    targets = bench_average_index, bench_catalog, bench_integer_census, bench_distance_study
}
criterion_main!(benches);

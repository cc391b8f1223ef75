//! Criterion benchmarks for `maxsub-core`; see `benches/`.

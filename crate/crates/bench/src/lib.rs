//! Criterion benchmarks for the census pipeline live under `benches/`.

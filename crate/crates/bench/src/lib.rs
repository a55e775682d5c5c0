//! Criterion benchmarks for `cdc-core` live in `benches/`.

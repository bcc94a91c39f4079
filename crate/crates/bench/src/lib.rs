//! Criterion benchmarks for the exact sweeps; see `benches/`.

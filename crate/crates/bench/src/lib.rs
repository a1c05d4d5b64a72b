//! Criterion benchmarks for the closed forms and the oracle; see `benches/`.

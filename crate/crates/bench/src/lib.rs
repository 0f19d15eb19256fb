//! Criterion benchmarks for the `weakhopf` constructions; see `benches/`.

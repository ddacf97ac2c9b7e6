//! Criterion benchmarks for su2opt; see `benches/`.

//! Criterion benchmarks for the quartica kernels; see `benches/`.

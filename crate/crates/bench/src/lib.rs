//! Criterion benchmarks for the toric-lagrangian kernels; see `benches/`.

//! Benchmarks for the cubemob kernels live in `benches/`.

//! Criterion benchmarks for the overconvergent lift. See benches/.

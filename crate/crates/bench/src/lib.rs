//! Criterion benchmarks for coherence-lab live in `benches/`.

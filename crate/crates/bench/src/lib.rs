//! Benchmark-only crate; see `benches/groupoid.rs`.

//! Criterion benchmarks for the Gröbner and Hilbert–Kunz engines live in
//! `benches/`; run them with `cargo bench -p hklab-bench`.

//! Empty by design: this package only exists to host the criterion
//! benchmarks in `benches/`.

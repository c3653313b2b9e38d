//! Shared fixtures for the criterion benchmarks; see `benches/`.

use resamp_core::{EmpiricalSample, FunctionalSpec, PopulationModel};

/// Standard-normal draw of size `n`, fixed seed.
pub fn normal_sample(n: usize) -> EmpiricalSample {
    PopulationModel::parse("normal(0,1)")
        .unwrap()
        .draw(n, 0xbe9c)
        .unwrap()
}

/// The functional pair exercised throughout: one smooth-of-mean, one trimmed L.
pub fn bench_specs() -> (FunctionalSpec, FunctionalSpec) {
    (
        FunctionalSpec::paper_sgn(),
        FunctionalSpec::parse("mesa(0.2,0.3,0.7,0.8)").unwrap(),
    )
}

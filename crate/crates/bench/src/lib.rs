//! Fixed inputs shared by the benchmarks.

use critmon_core::sample::{sample_many, SampleSpec};
use critmon_core::{MonoidPresentation, NorthcottExponents, NorthcottInstance};

/// diag = (1,2,3,4), xn = (5,2,3,4), mvec = (1,1,1,1): ⟨359,199,139,123,119⟩.
pub fn five_generated() -> NorthcottInstance {
    NorthcottExponents::new(5, &[1, 2, 3, 4], &[5, 2, 3, 4], &[1, 1, 1, 1])
        .validate()
        .expect("valid fixture")
}

/// Numerical instances with `n` variables and `a_n ≤ 5000`.
pub fn numerical_batch(n: usize, count: usize) -> Vec<(NorthcottInstance, MonoidPresentation)> {
    let spec = SampleSpec::new(n..=n, 4).numerical().max_an(5000);
    sample_many(0xC0FFEE + n as u64, &spec, count)
}

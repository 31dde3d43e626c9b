//! Seeded random instances for tests, benchmarks and the `search` command.

use std::ops::RangeInclusive;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::northcott::{monoid_presentation, MonoidPresentation, NorthcottExponents, NorthcottInstance};

#[derive(Debug, Clone)]
pub struct SampleSpec {
    pub n: RangeInclusive<usize>,
    pub max_exp: u64,
    pub mvec_all_ones: bool,
    pub numerical_only: bool,
    /// Reject numerical instances whose `a_n` exceeds this.
    pub max_an: Option<u64>,
}

impl SampleSpec {
    pub fn new(n: RangeInclusive<usize>, max_exp: u64) -> Self {
        SampleSpec {
            n,
            max_exp,
            mvec_all_ones: false,
            numerical_only: false,
            max_an: None,
        }
    }

    pub fn numerical(mut self) -> Self {
        self.numerical_only = true;
        self
    }

    pub fn all_ones(mut self) -> Self {
        self.mvec_all_ones = true;
        self
    }

    pub fn max_an(mut self, bound: u64) -> Self {
        self.max_an = Some(bound);
        self
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_exponents<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_exp: u64,
    all_ones: bool,
) -> NorthcottExponents {
    let max = max_exp.max(1) as i64;
    let draw = |rng: &mut R| -> Vec<i64> { (0..n - 1).map(|_| rng.random_range(1..=max)).collect() };
    let diag = draw(rng);
    let xn = draw(rng);
    let mvec = if all_ones { vec![1; n - 1] } else { draw(rng) };
    NorthcottExponents {
        n: n as i64,
        diag,
        xn,
        mvec,
    }
}

/// Draws until an instance meets `spec`; `None` after `max_tries` draws.
pub fn sample<R: Rng + ?Sized>(
    rng: &mut R,
    spec: &SampleSpec,
    max_tries: usize,
) -> Option<(NorthcottInstance, MonoidPresentation)> {
    for _ in 0..max_tries {
        let n = rng.random_range(spec.n.clone());
        let inst = random_exponents(rng, n, spec.max_exp, spec.mvec_all_ones)
            .validate()
            .expect("sampled exponents are positive");
        let pres = monoid_presentation(&inst).expect("presentation of a valid instance");
        if spec.numerical_only && !pres.is_numerical {
            continue;
        }
        if let Some(bound) = spec.max_an {
            match pres.weight_u64() {
                Ok(w) if w[n - 1] <= bound => {}
                _ => continue,
            }
        }
        return Some((inst, pres));
    }
    None
}

/// `count` instances from a fixed seed.
pub fn sample_many(seed: u64, spec: &SampleSpec, count: usize) -> Vec<(NorthcottInstance, MonoidPresentation)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| sample(&mut r, spec, 100_000).expect("sampling spec is satisfiable"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let spec = SampleSpec::new(3..=6, 4).numerical();
        let a: Vec<_> = sample_many(7, &spec, 5).into_iter().map(|x| x.0).collect();
        let b: Vec<_> = sample_many(7, &spec, 5).into_iter().map(|x| x.0).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn respects_spec() {
        let spec = SampleSpec::new(4..=5, 3).numerical().all_ones().max_an(500);
        for (inst, pres) in sample_many(1, &spec, 20) {
            assert!((4..=5).contains(&inst.n()));
            assert!(inst.mvec_all_ones());
            assert!(pres.is_numerical);
            assert!(pres.weight_u64().unwrap()[inst.n() - 1] <= 500);
            assert!(inst.diag().iter().chain(inst.xn()).all(|&u| (1..=3).contains(&u)));
        }
    }
}

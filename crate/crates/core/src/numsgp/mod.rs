//! Brute-force numerical semigroup toolkit, used as an independent oracle
//! for the closed forms.
//!
//! Everything here works from a membership table filled by the recurrence
//! `s ∈ S ⇔ s = 0 or s - g ∈ S for some generator g`.

mod critical;
mod factor;
mod gluing;

pub use critical::Criticality;
pub use factor::{BettiElement, DeltaCatenary, FactorizationSet, Presentation, Relation};
pub use critical::DEFAULT_CRITICAL_CAP;
pub use factor::{delta_and_catenary_of, element_catenary, factorization_distance};
pub use gluing::{glue, Gluing, GluingDecomposition};

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumsgpError {
    #[error("no generators given")]
    Empty,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(u64),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{0} is not an element of the semigroup")]
    NotMember(u64),
    #[error("gluing: lambda = {0} is not in S2")]
    LambdaNotInS2(u64),
    #[error("gluing: lambda = {0} is a minimal generator of S2")]
    LambdaMinimal(u64),
    #[error("gluing: mu = {0} is not in S1")]
    MuNotInS1(u64),
    #[error("gluing: mu = {0} is a minimal generator of S1")]
    MuMinimal(u64),
    #[error("gluing: gcd(lambda, mu) = {0}, expected 1")]
    GluingGcd(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    minimal_generators: Vec<u64>,
    /// `table[s]` iff `s ∈ S`; covers `0..conductor + max(generators)`.
    table: Vec<bool>,
    frobenius: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicInvariants {
    pub frobenius: i64,
    pub genus: u64,
    pub pseudo_frobenius: Vec<i64>,
    pub type_: usize,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self, NumsgpError> {
        if gens.is_empty() {
            return Err(NumsgpError::Empty);
        }
        if gens.contains(&0) {
            return Err(NumsgpError::ZeroGenerator);
        }
        let g = gens.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(NumsgpError::GcdNotOne(g));
        }
        let mut distinct: Vec<u64> = Vec::with_capacity(gens.len());
        for &x in gens {
            if !distinct.contains(&x) {
                distinct.push(x);
            }
        }
        let min = *distinct.iter().min().unwrap() as usize;
        let max = *distinct.iter().max().unwrap() as usize;

        let mut table = vec![true];
        let mut run = 1usize;
        while run < min {
            let s = table.len();
            let member = distinct.iter().any(|&g| s >= g as usize && table[s - g as usize]);
            run = if member { run + 1 } else { 0 };
            table.push(member);
        }
        // the last `min` entries are members, so every larger s is too
        let conductor = table.len() - run;
        table.resize(conductor + max, true);
        let frobenius = conductor as i64 - 1;

        let minimal_generators = distinct
            .iter()
            .copied()
            .filter(|&g| {
                !distinct
                    .iter()
                    .any(|&h| h < g && table[(g - h) as usize])
            })
            .collect();
        Ok(NumericalSemigroup {
            generators: gens.to_vec(),
            minimal_generators,
            table,
            frobenius,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Minimal generators in the order they first appear in the input.
    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal_generators
    }

    pub fn embedding_dimension(&self) -> usize {
        self.minimal_generators.len()
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> u64 {
        (self.frobenius + 1) as u64
    }

    pub fn multiplicity(&self) -> u64 {
        *self.minimal_generators.iter().min().unwrap()
    }

    pub fn contains(&self, s: u64) -> bool {
        match self.table.get(s as usize) {
            Some(&b) => b,
            None => true,
        }
    }

    pub fn contains_signed(&self, s: i64) -> bool {
        s >= 0 && self.contains(s as u64)
    }

    /// Gaps in increasing order.
    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor()).filter(|&s| !self.contains(s)).collect()
    }

    /// Least element of `S` in each residue class mod `z`, indexed by residue.
    pub fn apery_by_residue(&self, z: u64) -> Result<Vec<u64>, NumsgpError> {
        if z == 0 {
            return Err(NumsgpError::ZeroModulus);
        }
        let mut least = vec![None; z as usize];
        let mut found = 0u64;
        let mut s = 0u64;
        while found < z {
            let r = (s % z) as usize;
            if least[r].is_none() && self.contains(s) {
                least[r] = Some(s);
                found += 1;
            }
            s += 1;
        }
        Ok(least.into_iter().map(Option::unwrap).collect())
    }

    /// `Ap(S, z)` sorted increasingly.
    pub fn apery(&self, z: u64) -> Result<Vec<u64>, NumsgpError> {
        let mut ap = self.apery_by_residue(z)?;
        ap.sort_unstable();
        Ok(ap)
    }

    /// Frobenius number and genus by Selmer's formulas, pseudo-Frobenius
    /// numbers from the maximal elements of `Ap(S, m)` under `≤_S`.
    ///
    /// For `S = ℕ` this gives `F = -1`, `g = 0`, `PF = {-1}`.
    pub fn basic_invariants(&self) -> BasicInvariants {
        let m = self.multiplicity();
        let ap = self.apery(m).expect("multiplicity is positive");
        let max = *ap.last().unwrap();
        let frobenius = max as i64 - m as i64;
        let sum: u64 = ap.iter().sum();
        let genus = (sum - m * (m - 1) / 2) / m;
        let pseudo_frobenius: Vec<i64> = ap
            .iter()
            .filter(|&&w| !ap.iter().any(|&v| v > w && self.contains(v - w)))
            .map(|&w| w as i64 - m as i64)
            .collect();
        BasicInvariants {
            frobenius,
            genus,
            type_: pseudo_frobenius.len(),
            pseudo_frobenius,
        }
    }

    /// `e(S)·n(S) - c(S)` with `n(S) = c(S) - g(S)`.
    pub fn wilf_margin(&self) -> i64 {
        let c = self.conductor() as i64;
        let g = self.gaps().len() as i64;
        self.embedding_dimension() as i64 * (c - g) - c
    }

    /// For each minimal generator `g_i`, the least `k ≥ 1` with `k·g_i` in the
    /// monoid generated by the other minimal generators. Empty when `e = 1`.
    pub fn critical_exponents(&self) -> Vec<u64> {
        let gens = &self.minimal_generators;
        if gens.len() < 2 {
            return Vec::new();
        }
        (0..gens.len())
            .map(|i| {
                let others: Vec<usize> = gens
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &g)| g as usize)
                    .collect();
                let g = gens[i] as usize;
                let mut reach = vec![true];
                let mut k = 1usize;
                loop {
                    let target = k * g;
                    while reach.len() <= target {
                        let s = reach.len();
                        let member = others.iter().any(|&h| s >= h && reach[s - h]);
                        reach.push(member);
                    }
                    if reach[target] {
                        return k as u64;
                    }
                    k += 1;
                }
            })
            .collect()
    }
}

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::NumericalSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criticality {
    Critical,
    NotCritical,
    /// The witness search hit its cap before deciding.
    Inconclusive,
}

impl Criticality {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Criticality::Critical => Some(true),
            Criticality::NotCritical => Some(false),
            Criticality::Inconclusive => None,
        }
    }
}

pub const DEFAULT_CRITICAL_CAP: u64 = 1_000_000;

impl NumericalSemigroup {
    pub fn is_critical(&self) -> Criticality {
        self.is_critical_with_cap(DEFAULT_CRITICAL_CAP)
    }

    /// Whether some choice of critical binomials `x_i^{c_i} - x^{u_i}`, one
    /// per generator, generates the defining ideal.
    ///
    /// A set of relations generates iff, at every Betti element `b`, its
    /// relations of degree `b` connect the R-classes of `Z(b)`. Only the
    /// critical binomial of `x_i` has degree `c_i·g_i`, and its right-hand side
    /// may be any factorization of that degree avoiding `g_i`, so each Betti
    /// element is an independent search over those choices. At most `cap`
    /// choice vectors are tried overall.
    pub fn is_critical_with_cap(&self, cap: u64) -> Criticality {
        let gens = self.minimal_generators();
        if gens.len() < 2 {
            return Criticality::NotCritical;
        }
        let c = self.critical_exponents();
        let mut budget = cap;
        let mut inconclusive = false;
        for b in self.betti_and_presentation().betti {
            let crit: Vec<usize> = (0..gens.len()).filter(|&i| c[i] * gens[i] == b.element).collect();
            if crit.len() + 1 < b.class_count {
                return Criticality::NotCritical;
            }
            // for each critical index: (class of c_i·e_i, classes reachable by its right-hand side)
            let choices: Vec<(usize, Vec<usize>)> = crit
                .iter()
                .map(|&i| {
                    let own = b
                        .factorizations
                        .iter()
                        .position(|f| {
                            f[i] == c[i] && f.iter().enumerate().all(|(j, &x)| j == i || x == 0)
                        })
                        .map(|p| b.class_of[p])
                        .expect("c_i·e_i factors c_i·g_i");
                    let targets: BTreeSet<usize> = b
                        .factorizations
                        .iter()
                        .zip(&b.class_of)
                        .filter(|(f, _)| f[i] == 0)
                        .map(|(_, &k)| k)
                        .collect();
                    (own, targets.into_iter().collect())
                })
                .collect();
            match connects(&choices, b.class_count, &mut budget) {
                Some(true) => {}
                Some(false) => return Criticality::NotCritical,
                None => inconclusive = true,
            }
        }
        if inconclusive {
            Criticality::Inconclusive
        } else {
            Criticality::Critical
        }
    }
}

/// Some pick of one target per choice whose edges connect `classes` nodes;
/// `None` when the budget runs out.
fn connects(choices: &[(usize, Vec<usize>)], classes: usize, budget: &mut u64) -> Option<bool> {
    let mut pick = vec![0usize; choices.len()];
    loop {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut parent: Vec<usize> = (0..classes).collect();
        let mut components = classes;
        for (k, (own, targets)) in choices.iter().enumerate() {
            let (a, b) = (root(&mut parent, *own), root(&mut parent, targets[pick[k]]));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        if components == 1 {
            return Some(true);
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == choices.len() {
                return Some(false);
            }
            pick[k] += 1;
            if pick[k] < choices[k].1.len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numsgp::gluing::glue;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn three_generated_are_critical() {
        assert_eq!(sg(&[3, 4, 5]).is_critical(), Criticality::Critical);
        assert_eq!(sg(&[3, 5, 7]).is_critical(), Criticality::Critical);
        assert_eq!(sg(&[2, 3]).is_critical(), Criticality::Critical);
        assert_eq!(sg(&[4, 6, 9]).is_critical(), Criticality::Critical);
    }

    #[test]
    fn five_generated_fixture_is_critical() {
        // every relation of its minimal presentation is x_i^{c_i} - x^u with c = (3,2,2,2,2)
        assert_eq!(sg(&[11, 13, 14, 15, 19]).is_critical(), Criticality::Critical);
    }

    #[test]
    fn non_critical() {
        // c = (3,2,2,2) gives degrees 12, 10, 12, 14; the Betti element
        // 11 = 4+7 = 5+6 is none of them
        assert_eq!(sg(&[4, 5, 6, 7]).is_critical(), Criticality::NotCritical);
        assert_eq!(sg(&[1]).is_critical(), Criticality::NotCritical);
    }

    #[test]
    fn gluing_with_n_preserves() {
        let g = glue(&sg(&[3, 4, 5]), &sg(&[1]), 2, 9).unwrap();
        assert_eq!(g.semigroup.is_critical(), Criticality::Critical);
        let g = glue(&sg(&[3, 5, 7]), &sg(&[1]), 2, 21).unwrap();
        assert_eq!(g.semigroup.is_critical(), Criticality::Critical);
    }

    #[test]
    fn zero_cap_is_inconclusive() {
        assert_eq!(sg(&[3, 4, 5]).is_critical_with_cap(0), Criticality::Inconclusive);
    }
}

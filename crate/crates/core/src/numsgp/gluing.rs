use num_integer::Integer;

use super::factor::Relation;
use super::{NumericalSemigroup, NumsgpError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    /// `⟨λ·A_1 ∪ μ·A_2⟩` with generators in that order.
    pub semigroup: NumericalSemigroup,
    pub lambda: u64,
    pub mu: u64,
    /// `x^u - x^v` of degree `λμ`: `u` writes `μ` in `S1`, `v` writes `λ` in `S2`.
    pub relation: Relation,
}

/// A split `A = A_1 ∪ A_2` of the minimal generators, each part sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingDecomposition {
    pub first: Vec<u64>,
    pub second: Vec<u64>,
}

fn gcd_all(v: &[u64]) -> u64 {
    v.iter().fold(0, |g, &x| g.gcd(&x))
}

/// `λ·S1 + μ·S2`, requiring `λ ∈ S2`, `μ ∈ S1`, neither a minimal generator,
/// and `gcd(λ, μ) = 1`.
pub fn glue(
    s1: &NumericalSemigroup,
    s2: &NumericalSemigroup,
    lambda: u64,
    mu: u64,
) -> Result<Gluing, NumsgpError> {
    if !s2.contains(lambda) || lambda == 0 {
        return Err(NumsgpError::LambdaNotInS2(lambda));
    }
    if s2.minimal_generators().contains(&lambda) {
        return Err(NumsgpError::LambdaMinimal(lambda));
    }
    if !s1.contains(mu) || mu == 0 {
        return Err(NumsgpError::MuNotInS1(mu));
    }
    if s1.minimal_generators().contains(&mu) {
        return Err(NumsgpError::MuMinimal(mu));
    }
    let g = lambda.gcd(&mu);
    if g != 1 {
        return Err(NumsgpError::GluingGcd(g));
    }
    let gens: Vec<u64> = s1
        .minimal_generators()
        .iter()
        .map(|&a| lambda * a)
        .chain(s2.minimal_generators().iter().map(|&b| mu * b))
        .collect();
    let semigroup = NumericalSemigroup::from_generators(&gens)?;
    let u = s1.factorizations(mu)?.factorizations.pop().unwrap();
    let v = s2.factorizations(lambda)?.factorizations.pop().unwrap();
    let e1 = u.len();
    let mut lhs = u;
    lhs.resize(gens.len(), 0);
    let mut rhs = vec![0; e1];
    rhs.extend(v);
    Ok(Gluing {
        semigroup,
        lambda,
        mu,
        relation: Relation {
            element: lambda * mu,
            lhs,
            rhs,
        },
    })
}

impl NumericalSemigroup {
    /// Splits `A_1 ∪ A_2` with `A_i = d_i·B_i`, `d_i = gcd(A_i)`, such that
    /// `d_1 ∈ ⟨B_2⟩ \ B_2`, `d_2 ∈ ⟨B_1⟩ \ B_1` and `gcd(d_1, d_2) = 1`.
    /// The part holding the multiplicity is listed first.
    pub fn detect_gluing(&self) -> Vec<GluingDecomposition> {
        let mut gens = self.minimal_generators().to_vec();
        gens.sort_unstable();
        let e = gens.len();
        let mut out = Vec::new();
        if e < 2 {
            return out;
        }
        for mask in 0u64..(1 << (e - 1)) - 1 {
            // bit j of mask puts gens[j+1] in the first part
            let (mut first, mut second) = (vec![gens[0]], Vec::new());
            for (j, &g) in gens[1..].iter().enumerate() {
                if mask >> j & 1 == 1 {
                    first.push(g);
                } else {
                    second.push(g);
                }
            }
            if is_gluing(&first, &second) {
                out.push(GluingDecomposition { first, second });
            }
        }
        out
    }
}

fn is_gluing(a1: &[u64], a2: &[u64]) -> bool {
    let (d1, d2) = (gcd_all(a1), gcd_all(a2));
    if d1.gcd(&d2) != 1 {
        return false;
    }
    let b1: Vec<u64> = a1.iter().map(|&a| a / d1).collect();
    let b2: Vec<u64> = a2.iter().map(|&a| a / d2).collect();
    let (s1, s2) = match (
        NumericalSemigroup::from_generators(&b1),
        NumericalSemigroup::from_generators(&b2),
    ) {
        (Ok(s1), Ok(s2)) => (s1, s2),
        _ => return false,
    };
    s2.contains(d1) && !b2.contains(&d1) && s1.contains(d2) && !b1.contains(&d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn dec(a: &[u64], b: &[u64]) -> GluingDecomposition {
        GluingDecomposition { first: a.to_vec(), second: b.to_vec() }
    }

    #[test]
    fn glue_fixtures() {
        let g = glue(&sg(&[3, 5, 7]), &sg(&[1]), 2, 21).unwrap();
        assert_eq!(g.semigroup.minimal_generators(), &[6, 10, 14, 21]);
        assert_eq!(g.relation.element, 42);
        let w: u64 = g
            .relation
            .lhs
            .iter()
            .zip(g.semigroup.generators())
            .map(|(a, b)| a * b)
            .sum();
        assert_eq!(w, 42);
        assert_eq!(g.relation.rhs, vec![0, 0, 0, 2]);

        let g = glue(&sg(&[1]), &sg(&[1]), 2, 3).unwrap();
        assert_eq!(g.semigroup.minimal_generators(), &[2, 3]);
    }

    #[test]
    fn glue_errors() {
        let s = sg(&[3, 5, 7]);
        let n = sg(&[1]);
        assert_eq!(glue(&s, &n, 2, 5), Err(NumsgpError::MuMinimal(5)));
        assert_eq!(glue(&s, &n, 2, 4), Err(NumsgpError::MuNotInS1(4)));
        assert_eq!(glue(&s, &n, 1, 21), Err(NumsgpError::LambdaMinimal(1)));
        assert_eq!(glue(&s, &n, 3, 21), Err(NumsgpError::GluingGcd(3)));
        assert_eq!(glue(&s, &sg(&[2, 3]), 1, 10), Err(NumsgpError::LambdaNotInS2(1)));
    }

    #[test]
    fn detection() {
        assert_eq!(sg(&[6, 10, 14, 21]).detect_gluing(), vec![dec(&[6, 10, 14], &[21])]);
        assert!(sg(&[11, 13, 14, 15, 19]).detect_gluing().is_empty());
        assert_eq!(sg(&[2, 3]).detect_gluing(), vec![dec(&[2], &[3])]);
        assert!(sg(&[1]).detect_gluing().is_empty());
    }

    #[test]
    fn detection_recovers_glue() {
        for (s1, s2, l, m) in [
            (vec![3u64, 4, 5], vec![1u64], 2u64, 9u64),
            (vec![2, 3], vec![2, 5], 7, 5),
            (vec![3, 5, 7], vec![1], 4, 11),
        ] {
            let g = glue(&sg(&s1), &sg(&s2), l, m).unwrap();
            let mut first: Vec<u64> = s1.iter().map(|a| l * a).collect();
            let mut second: Vec<u64> = s2.iter().map(|b| m * b).collect();
            first.sort();
            second.sort();
            if first[0] > second[0] {
                std::mem::swap(&mut first, &mut second);
            }
            assert!(g.semigroup.detect_gluing().contains(&dec(&first, &second)));
        }
    }
}

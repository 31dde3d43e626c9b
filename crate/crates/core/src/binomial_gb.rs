//! Pure difference binomials, a weighted term order and just enough
//! Buchberger machinery to confirm that a claimed binomial generating set is
//! a Gröbner basis. Coefficients are always ±1, so reducing a monomial by a
//! binomial gives another monomial and normal forms never leave the set of
//! binomials.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::northcott::{monoid_presentation, NorthcottError, NorthcottInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight vector must be strictly positive to define a well-order")]
    NonPositiveWeight,
    #[error(transparent)]
    Northcott(#[from] NorthcottError),
}

/// Exponent vector `x^u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u64>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn power(vars: usize, var: usize, exp: u64) -> Self {
        let mut m = Self::one(vars);
        m.0[var] = exp;
        m
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees `other.divides(self)`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x_{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// `x^plus - x^minus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PureBinomial {
    pub plus: Monomial,
    pub minus: Monomial,
}

impl PureBinomial {
    pub fn new(plus: Monomial, minus: Monomial) -> Self {
        PureBinomial { plus, minus }
    }

    /// `(leading, trailing)` under `ord`.
    pub fn oriented(&self, ord: &WeightedOrder) -> (&Monomial, &Monomial) {
        match ord.compare(&self.plus, &self.minus) {
            Ordering::Less => (&self.minus, &self.plus),
            _ => (&self.plus, &self.minus),
        }
    }

    pub fn leading<'a>(&'a self, ord: &WeightedOrder) -> &'a Monomial {
        self.oriented(ord).0
    }

    /// Integer exponent difference `plus - minus`.
    pub fn difference(&self) -> Vec<i128> {
        self.plus
            .0
            .iter()
            .zip(&self.minus.0)
            .map(|(a, b)| *a as i128 - *b as i128)
            .collect()
    }
}

impl fmt::Display for PureBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

/// How ties in weight and in the last variable are broken among `x_1..x_{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    RevLex,
    Lex,
}

/// Weight order with the last variable least: compare `w`-degree, then the
/// smaller power of `x_n` wins, then the tie-break on the remaining variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedOrder {
    weight: Vec<u64>,
    tie_break: TieBreak,
}

impl WeightedOrder {
    pub fn new(weight: Vec<u64>) -> Result<Self, GroebnerError> {
        Self::with_tie_break(weight, TieBreak::RevLex)
    }

    pub fn with_tie_break(weight: Vec<u64>, tie_break: TieBreak) -> Result<Self, GroebnerError> {
        if weight.is_empty() || weight.contains(&0) {
            return Err(GroebnerError::NonPositiveWeight);
        }
        Ok(WeightedOrder { weight, tie_break })
    }

    pub fn weight(&self) -> &[u64] {
        &self.weight
    }

    pub fn degree(&self, m: &Monomial) -> u128 {
        m.0.iter()
            .zip(&self.weight)
            .map(|(e, w)| *e as u128 * *w as u128)
            .sum()
    }

    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, GroebnerError> {
        for m in [a, b] {
            if m.vars() != self.weight.len() {
                return Err(GroebnerError::DimensionMismatch {
                    expected: self.weight.len(),
                    got: m.vars(),
                });
            }
        }
        Ok(self.compare(a, b))
    }

    /// Panics if the monomials do not have `weight.len()` variables.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(a.vars(), self.weight.len());
        assert_eq!(b.vars(), self.weight.len());
        let last = self.weight.len() - 1;
        self.degree(a)
            .cmp(&self.degree(b))
            .then_with(|| b.0[last].cmp(&a.0[last]))
            .then_with(|| {
                let (ra, rb) = (&a.0[..last], &b.0[..last]);
                match self.tie_break {
                    // larger iff the last differing exponent is smaller
                    TieBreak::RevLex => ra
                        .iter()
                        .zip(rb)
                        .rev()
                        .find(|(x, y)| x != y)
                        .map_or(Ordering::Equal, |(x, y)| y.cmp(x)),
                    TieBreak::Lex => ra.cmp(rb),
                }
            })
    }
}

/// S-polynomial of two pure binomials; `None` when it vanishes.
pub fn s_polynomial(
    f: &PureBinomial,
    g: &PureBinomial,
    ord: &WeightedOrder,
) -> Option<PureBinomial> {
    let (lf, tf) = f.oriented(ord);
    let (lg, tg) = g.oriented(ord);
    let l = lf.lcm(lg);
    let p = l.div(lg).mul(tg);
    let q = l.div(lf).mul(tf);
    orient(p, q, ord)
}

fn orient(p: Monomial, q: Monomial, ord: &WeightedOrder) -> Option<PureBinomial> {
    match ord.compare(&p, &q) {
        Ordering::Equal => None,
        Ordering::Greater => Some(PureBinomial::new(p, q)),
        Ordering::Less => Some(PureBinomial::new(q, p)),
    }
}

/// Normal form of a monomial: rewrite while some leading term divides it.
pub fn reduce_monomial(m: &Monomial, basis: &[PureBinomial], ord: &WeightedOrder) -> Monomial {
    let oriented: Vec<(&Monomial, &Monomial)> = basis.iter().map(|b| b.oriented(ord)).collect();
    let mut cur = m.clone();
    while let Some((lead, trail)) = oriented.iter().find(|(lead, _)| lead.divides(&cur)) {
        cur = cur.div(lead).mul(trail);
    }
    cur
}

/// Reduce both terms of `f` to normal form; `None` means `f` reduced to zero.
pub fn reduce(f: &PureBinomial, basis: &[PureBinomial], ord: &WeightedOrder) -> Option<PureBinomial> {
    let p = reduce_monomial(&f.plus, basis, ord);
    let q = reduce_monomial(&f.minus, basis, ord);
    orient(p, q, ord)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroebnerReport {
    pub is_basis: bool,
    /// Leading terms of `f_1, …, f_{n-1}, D` in that order.
    pub initial_gens: Vec<Monomial>,
    /// Initial terms predicted from the exponents.
    pub expected_initial_gens: Vec<Monomial>,
    /// Number of S-pairs examined.
    pub pairs_checked: usize,
    /// Pairs whose leading terms are coprime.
    pub coprime_pairs: usize,
    /// First pair `(i, j)` whose S-polynomial does not reduce to zero.
    pub first_failure: Option<(usize, usize)>,
}

/// Checks that `{f_1, …, f_{n-1}, D}` is a Gröbner basis for the order whose
/// first row is the free part of the generators and whose second row makes
/// `x_n` least.
pub fn verify_groebner(inst: &NorthcottInstance) -> Result<GroebnerReport, GroebnerError> {
    verify_groebner_with(inst, TieBreak::RevLex)
}

pub fn verify_groebner_with(
    inst: &NorthcottInstance,
    tie_break: TieBreak,
) -> Result<GroebnerReport, GroebnerError> {
    let pres = monoid_presentation(inst)?;
    let weight = pres.weight_u64()?;
    let ord = WeightedOrder::with_tie_break(weight, tie_break)?;
    let basis = inst.binomials().relations;

    let initial_gens: Vec<Monomial> = basis.iter().map(|b| b.leading(&ord).clone()).collect();
    let expected_initial_gens = inst.expected_initial_terms();

    let mut pairs_checked = 0;
    let mut coprime_pairs = 0;
    let mut first_failure = None;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs_checked += 1;
            if initial_gens[i].is_coprime(&initial_gens[j]) {
                coprime_pairs += 1;
            }
            // coprime pairs are reduced anyway; the criterion is cross-checked, not trusted
            let s = s_polynomial(&basis[i], &basis[j], &ord);
            let reduced = s.and_then(|s| reduce(&s, &basis, &ord));
            if reduced.is_some() && first_failure.is_none() {
                first_failure = Some((i, j));
            }
        }
    }
    Ok(GroebnerReport {
        is_basis: first_failure.is_none() && initial_gens == expected_initial_gens,
        initial_gens,
        expected_initial_gens,
        pairs_checked,
        coprime_pairs,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::northcott::NorthcottExponents;

    fn mono(v: &[u64]) -> Monomial {
        Monomial(v.to_vec())
    }

    fn inst(n: i64, diag: &[i64], xn: &[i64], mvec: &[i64]) -> NorthcottInstance {
        NorthcottExponents::new(n, diag, xn, mvec).validate().unwrap()
    }

    #[test]
    fn compare_by_weight_then_last_variable() {
        let ord = WeightedOrder::new(vec![5, 4, 3]).unwrap();
        assert_eq!(ord.compare(&mono(&[2, 0, 0]), &mono(&[0, 1, 1])), Ordering::Greater);
        assert_eq!(ord.compare(&mono(&[0, 2, 0]), &mono(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(ord.compare(&mono(&[1, 0, 1]), &mono(&[1, 0, 1])), Ordering::Equal);
        assert!(ord.try_compare(&mono(&[1, 0]), &mono(&[1, 0, 1])).is_err());
    }

    #[test]
    fn revlex_and_lex_tie_breaks() {
        let rev = WeightedOrder::with_tie_break(vec![1, 1, 1, 1], TieBreak::RevLex).unwrap();
        let lex = WeightedOrder::with_tie_break(vec![1, 1, 1, 1], TieBreak::Lex).unwrap();
        let a = mono(&[1, 0, 1, 0]);
        let b = mono(&[0, 2, 0, 0]);
        assert_eq!(rev.compare(&a, &b), Ordering::Less);
        assert_eq!(lex.compare(&a, &b), Ordering::Greater);
        // x_4 is least in both
        let c = mono(&[0, 1, 0, 1]);
        assert_eq!(rev.compare(&c, &b), Ordering::Less);
        assert_eq!(lex.compare(&c, &b), Ordering::Less);
    }

    #[test]
    fn zero_weight_rejected() {
        assert_eq!(WeightedOrder::new(vec![1, 0]), Err(GroebnerError::NonPositiveWeight));
    }

    #[test]
    fn s_polynomial_of_self_vanishes() {
        let ord = WeightedOrder::new(vec![5, 4, 3]).unwrap();
        let f = PureBinomial::new(mono(&[2, 0, 0]), mono(&[0, 1, 2]));
        assert_eq!(s_polynomial(&f, &f, &ord), None);
        assert_eq!(reduce(&f, std::slice::from_ref(&f), &ord), None);
        // multiple of a generator
        let g = PureBinomial::new(mono(&[3, 1, 0]), mono(&[1, 2, 2]));
        assert_eq!(reduce(&g, &[f], &ord), None);
    }

    #[test]
    fn example_with_torsion_is_a_basis() {
        let e = inst(4, &[2, 2, 4], &[1, 2, 1], &[1, 2, 1]);
        let report = verify_groebner(&e).unwrap();
        assert!(report.is_basis, "{report:?}");
        assert_eq!(report.pairs_checked, 6);
        assert_eq!(report.coprime_pairs, 3);

        let pres = monoid_presentation(&e).unwrap();
        let ord = WeightedOrder::new(pres.weight_u64().unwrap()).unwrap();
        let sys = e.binomials().relations;
        let s = s_polynomial(&sys[0], &sys[3], &ord).expect("nonzero S-polynomial");
        assert_eq!(ord.degree(&s.plus), ord.degree(&s.minus));
        assert_eq!(reduce(&s, &sys, &ord), None);
    }

    #[test]
    fn coprime_leading_terms_reduce_to_zero() {
        let e = inst(5, &[1, 2, 3, 4], &[5, 2, 3, 4], &[1, 1, 1, 1]);
        let pres = monoid_presentation(&e).unwrap();
        let ord = WeightedOrder::new(pres.weight_u64().unwrap()).unwrap();
        let sys = e.binomials().relations;
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(sys[i].leading(&ord).is_coprime(sys[j].leading(&ord)));
                let s = s_polynomial(&sys[i], &sys[j], &ord);
                assert_eq!(s.and_then(|s| reduce(&s, &sys, &ord)), None);
            }
            let s = s_polynomial(&sys[i], &sys[4], &ord);
            assert_eq!(s.and_then(|s| reduce(&s, &sys, &ord)), None);
        }
    }

    #[test]
    fn initial_terms_of_known_instances() {
        let e = inst(5, &[1, 2, 3, 4], &[5, 2, 3, 4], &[1, 1, 1, 1]);
        let r = verify_groebner(&e).unwrap();
        assert!(r.is_basis);
        assert_eq!(
            r.initial_gens,
            vec![
                mono(&[2, 0, 0, 0, 0]),
                mono(&[0, 3, 0, 0, 0]),
                mono(&[0, 0, 4, 0, 0]),
                mono(&[0, 0, 0, 5, 0]),
                mono(&[1, 2, 3, 4, 0]),
            ]
        );

        let e = inst(3, &[1, 1], &[2, 1], &[1, 1]);
        let r = verify_groebner(&e).unwrap();
        assert!(r.is_basis);
        assert_eq!(
            r.initial_gens,
            vec![mono(&[2, 0, 0]), mono(&[0, 2, 0]), mono(&[1, 1, 0])]
        );
    }

    #[test]
    fn not_a_basis_is_detected() {
        // {x^2 - y^2... } : x^2 - yz, xy - z^2 under w=(1,1,1) is not a Gröbner basis
        let ord = WeightedOrder::new(vec![1, 1, 1]).unwrap();
        let g = vec![
            PureBinomial::new(mono(&[2, 0, 0]), mono(&[0, 1, 1])),
            PureBinomial::new(mono(&[1, 1, 0]), mono(&[0, 0, 2])),
        ];
        let s = s_polynomial(&g[0], &g[1], &ord).unwrap();
        assert!(reduce(&s, &g, &ord).is_some());
    }

    #[test]
    fn display() {
        let b = PureBinomial::new(mono(&[3, 0, 0, 0]), mono(&[0, 0, 1, 1]));
        assert_eq!(b.to_string(), "x_1^3 - x_3*x_4");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }
}

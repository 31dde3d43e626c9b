//! Closed-form invariants of numerical semigroups of Northcott type,
//! evaluated from the exponents and generators without enumerating `S`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::northcott::{MonoidPresentation, NorthcottError, NorthcottInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error(transparent)]
    Northcott(#[from] NorthcottError),
    #[error("Apéry box of {0} elements is too large to enumerate")]
    TooLarge(u128),
    #[error("closed forms disagree: {0}")]
    Inconsistent(String),
}

/// Largest `a_n` for which the Apéry set is listed.
pub const MAX_APERY_SIZE: u128 = 50_000_000;

/// `{ Σ u_i a_i : 0 ≤ u_i < c_i, u_j < diag_j for some j }`, sorted.
pub fn apery_closed(
    inst: &NorthcottInstance,
    pres: &MonoidPresentation,
) -> Result<Vec<u64>, InvariantsError> {
    let a = pres.numerical_generators()?;
    let k = inst.n() - 1;
    let c = inst.critical_exponents();
    let boxed: u128 = c[..k].iter().map(|&x| x as u128).product();
    if boxed > MAX_APERY_SIZE * 4 || a[k] as u128 > MAX_APERY_SIZE {
        return Err(InvariantsError::TooLarge(boxed));
    }
    let diag = inst.diag();
    let mut out = Vec::with_capacity(a[k] as usize);
    let mut u = vec![0u64; k];
    loop {
        if u.iter().zip(diag).any(|(x, d)| x < d) {
            out.push(u.iter().zip(&a).map(|(x, g)| x * g).sum());
        }
        let mut i = 0;
        loop {
            if i == k {
                out.sort_unstable();
                return Ok(out);
            }
            u[i] += 1;
            if u[i] < c[i] {
                break;
            }
            u[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedInvariants {
    /// `N = Σ (c_i - 1) a_i`.
    pub n_constant: u64,
    pub pseudo_frobenius: Vec<i64>,
    pub frobenius: i64,
    pub type_: usize,
    pub genus: u64,
}

/// `PF = { N - mvec_j·a_j - a_n }`, `F = max PF`, `t = n - 1`, and the genus
/// from the Apéry box sums (checked against `(a_n - 1)(Σxn - 1)/2` when
/// `mvec` is all ones).
pub fn invariants_closed(
    inst: &NorthcottInstance,
    pres: &MonoidPresentation,
) -> Result<ClosedInvariants, InvariantsError> {
    let a = pres.numerical_generators()?;
    let k = inst.n() - 1;
    let c = inst.critical_exponents();
    let m = inst.mvec();
    let an = a[k] as i128;
    let n_constant: i128 = (0..k).map(|i| (c[i] as i128 - 1) * a[i] as i128).sum();

    let mut pseudo_frobenius: Vec<i64> = (0..k)
        .map(|j| (n_constant - m[j] as i128 * a[j] as i128 - an) as i64)
        .collect();
    pseudo_frobenius.sort_unstable();
    if pseudo_frobenius.windows(2).any(|w| w[0] == w[1]) {
        return Err(InvariantsError::Inconsistent(format!(
            "repeated pseudo-Frobenius number in {pseudo_frobenius:?}"
        )));
    }
    let frobenius = *pseudo_frobenius.last().unwrap();

    let genus = genus_general(inst, &a)?;
    if inst.mvec_all_ones() {
        let simple = genus_all_ones(inst, &a);
        if simple != genus {
            return Err(InvariantsError::Inconsistent(format!(
                "genus {genus} by box sums, {simple} by the all-ones form"
            )));
        }
        if n_constant != inst.xn_sum() as i128 * an {
            return Err(InvariantsError::Inconsistent(format!(
                "N = {n_constant} differs from Σxn·a_n"
            )));
        }
    }
    Ok(ClosedInvariants {
        n_constant: n_constant as u64,
        pseudo_frobenius,
        frobenius,
        type_: k,
        genus,
    })
}

/// `2·a_n·g = Σ_i (c_i - 1)c_i ∏_{j≠i} c_j a_i
///          - Σ_i ((m_i - 1)m_i + 2·diag_i·m_i) ∏_{j≠i} m_j a_i - a_n(a_n - 1)`.
fn genus_general(inst: &NorthcottInstance, a: &[u64]) -> Result<u64, InvariantsError> {
    let k = inst.n() - 1;
    let c: Vec<i128> = inst.critical_exponents()[..k].iter().map(|&x| x as i128).collect();
    let m: Vec<i128> = inst.mvec().iter().map(|&x| x as i128).collect();
    let d: Vec<i128> = inst.diag().iter().map(|&x| x as i128).collect();
    let an = a[k] as i128;
    let mut twice = -an * (an - 1);
    for i in 0..k {
        let pc: i128 = (0..k).filter(|&j| j != i).map(|j| c[j]).product();
        let pm: i128 = (0..k).filter(|&j| j != i).map(|j| m[j]).product();
        twice += (c[i] - 1) * c[i] * pc * a[i] as i128;
        twice -= ((m[i] - 1) * m[i] + 2 * d[i] * m[i]) * pm * a[i] as i128;
    }
    let (g, r) = twice.div_rem(&(2 * an));
    if r != 0 || g < 0 {
        return Err(InvariantsError::Inconsistent(format!(
            "2·a_n·g = {twice} is not a nonnegative multiple of {}",
            2 * an
        )));
    }
    Ok(g as u64)
}

/// `(a_n - 1)(Σxn - 1)/2`.
fn genus_all_ones(inst: &NorthcottInstance, a: &[u64]) -> u64 {
    let an = a[inst.n() - 1];
    (an - 1) * (inst.xn_sum() - 1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationInvariants {
    /// `|len(lhs) - len(rhs)|` for `f_1, …, f_{n-1}, D`.
    pub gaps: Vec<u64>,
    pub delta_min: Option<u64>,
    pub delta_max: Option<u64>,
    pub catenary: u64,
}

/// Delta set bounds and catenary degree from the length gaps of the
/// defining binomials; defined for every instance.
pub fn factorization_closed(inst: &NorthcottInstance) -> FactorizationInvariants {
    let mut gaps = Vec::with_capacity(inst.n());
    let mut catenary = 0;
    for b in inst.binomials().relations {
        let (l, r) = (b.plus.degree(), b.minus.degree());
        gaps.push(l.abs_diff(r));
        catenary = catenary.max(l.max(r));
    }
    let gcd = gaps.iter().fold(0u64, |g, &x| g.gcd(&x));
    let max = gaps.iter().copied().max().unwrap_or(0);
    FactorizationInvariants {
        delta_min: (gcd > 0).then_some(gcd),
        delta_max: (max > 0).then_some(max),
        gaps,
        catenary,
    }
}

/// `e·n(S) - c(S)` with `e = n`, `c = F + 1`, `n(S) = c - g`.
pub fn wilf_margin(
    inst: &NorthcottInstance,
    pres: &MonoidPresentation,
) -> Result<i64, InvariantsError> {
    let inv = invariants_closed(inst, pres)?;
    let c = inv.frobenius + 1;
    Ok(inst.n() as i64 * (c - inv.genus as i64) - c)
}

/// Everything the closed forms give for a numerical instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub apery: Vec<u64>,
    pub frobenius: i64,
    pub pf: Vec<i64>,
    #[serde(rename = "type")]
    pub type_: usize,
    pub genus: u64,
    pub delta_min: Option<u64>,
    pub delta_max: Option<u64>,
    pub catenary: u64,
    pub wilf_margin: i64,
    #[serde(rename = "N")]
    pub n_constant: u64,
}

impl InvariantReport {
    pub fn compute(
        inst: &NorthcottInstance,
        pres: &MonoidPresentation,
    ) -> Result<Self, InvariantsError> {
        let apery = apery_closed(inst, pres)?;
        let inv = invariants_closed(inst, pres)?;
        let fact = factorization_closed(inst);
        let wilf = wilf_margin(inst, pres)?;
        Ok(InvariantReport {
            apery,
            frobenius: inv.frobenius,
            pf: inv.pseudo_frobenius,
            type_: inv.type_,
            genus: inv.genus,
            delta_min: fact.delta_min,
            delta_max: fact.delta_max,
            catenary: fact.catenary,
            wilf_margin: wilf,
            n_constant: inv.n_constant,
        })
    }
}

//! Northcott-type instances: the cyclic exponent data, the binomials it
//! defines, the relation matrix `M`, and the monoid recovered from the Smith
//! normal form of `M`.
//!
//! Variables are 0-indexed in code (`x_1` is index 0, `x_n` is index `n-1`).
//! For `i < n-1` the `i`-th binomial is
//!
//! ```text
//!     f_i = x_i^{c_i} - x_{p(i)}^{mvec[p(i)]} * x_n^{xn[i]},   c_i = diag[i] + mvec[i]
//! ```
//!
//! where `p(i)` is the cyclic predecessor of `i` in `0..n-1` (`p(0) = n-2`), and
//!
//! ```text
//!     D = x_1^{diag[0]} ··· x_{n-1}^{diag[n-2]} - x_n^{Σ xn}.
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binomial_gb::{Monomial, PureBinomial};
use crate::linalg::{smith_normal_form, IntMatrix, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("n must be at least 3, got {0}")]
    TooFewVariables(i64),
    #[error("{field} has length {len}, expected n-1 = {expected}")]
    LengthMismatch {
        field: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("exponent must be positive: {field}[{index}] = {value}")]
    NonPositive {
        field: &'static str,
        index: usize,
        value: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NorthcottError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("operation requires mvec = (1, ..., 1)")]
    NotAllOnes,
    #[error("monoid is not a numerical semigroup (torsion of order {0})")]
    NotNumerical(BigInt),
    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Raw exponent data as read from JSON: `{"n", "diag", "xn", "mvec"}`.
///
/// * `diag[i]` is the exponent of `x_{i+1}` on the diagonal of Φ.
/// * `xn[i]` is the exponent of `x_n` in row `i+1` of Φ.
/// * `mvec[i]` is the exponent of `x_{i+1}` in the vector `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NorthcottExponents {
    pub n: i64,
    pub diag: Vec<i64>,
    pub xn: Vec<i64>,
    pub mvec: Vec<i64>,
}

impl NorthcottExponents {
    pub fn new(n: i64, diag: &[i64], xn: &[i64], mvec: &[i64]) -> Self {
        NorthcottExponents {
            n,
            diag: diag.to_vec(),
            xn: xn.to_vec(),
            mvec: mvec.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<NorthcottInstance, InstanceError> {
        if self.n < 3 {
            return Err(InstanceError::TooFewVariables(self.n));
        }
        let expected = (self.n - 1) as usize;
        let fields = [("diag", &self.diag), ("xn", &self.xn), ("mvec", &self.mvec)];
        for (field, v) in fields {
            if v.len() != expected {
                return Err(InstanceError::LengthMismatch {
                    field,
                    len: v.len(),
                    expected,
                });
            }
        }
        let mut out = Vec::with_capacity(3);
        for (field, v) in fields {
            let mut checked = Vec::with_capacity(expected);
            for (index, &value) in v.iter().enumerate() {
                if value <= 0 {
                    return Err(InstanceError::NonPositive { field, index, value });
                }
                checked.push(value as u64);
            }
            out.push(checked);
        }
        let mvec = out.pop().unwrap();
        let xn = out.pop().unwrap();
        let diag = out.pop().unwrap();
        Ok(NorthcottInstance {
            n: self.n as usize,
            diag,
            xn,
            mvec,
        })
    }
}

/// A validated instance; every exponent is strictly positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NorthcottInstance {
    n: usize,
    diag: Vec<u64>,
    xn: Vec<u64>,
    mvec: Vec<u64>,
}

impl NorthcottInstance {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diag(&self) -> &[u64] {
        &self.diag
    }

    pub fn xn(&self) -> &[u64] {
        &self.xn
    }

    pub fn mvec(&self) -> &[u64] {
        &self.mvec
    }

    pub fn to_exponents(&self) -> NorthcottExponents {
        let conv = |v: &[u64]| v.iter().map(|&x| x as i64).collect();
        NorthcottExponents {
            n: self.n as i64,
            diag: conv(&self.diag),
            xn: conv(&self.xn),
            mvec: conv(&self.mvec),
        }
    }

    pub fn mvec_all_ones(&self) -> bool {
        self.mvec.iter().all(|&m| m == 1)
    }

    /// Cyclic predecessor on `0..n-1`.
    pub fn predecessor(&self, i: usize) -> usize {
        let k = self.n - 1;
        (i + k - 1) % k
    }

    /// Critical exponents `c_1, …, c_n`; the last one is `Σ xn`.
    pub fn critical_exponents(&self) -> Vec<u64> {
        let mut c: Vec<u64> = self.diag.iter().zip(&self.mvec).map(|(d, m)| d + m).collect();
        c.push(self.xn_sum());
        c
    }

    pub fn xn_sum(&self) -> u64 {
        self.xn.iter().sum()
    }

    pub fn diag_sum(&self) -> u64 {
        self.diag.iter().sum()
    }

    pub fn binomials(&self) -> BinomialSystem {
        let n = self.n;
        let mut relations = Vec::with_capacity(n);
        for i in 0..n - 1 {
            let plus = Monomial::power(n, i, self.diag[i] + self.mvec[i]);
            let p = self.predecessor(i);
            let mut minus = Monomial::one(n);
            minus.0[p] = self.mvec[p];
            minus.0[n - 1] = self.xn[i];
            relations.push(PureBinomial::new(plus, minus));
        }
        let mut plus = Monomial::one(n);
        plus.0[..n - 1].copy_from_slice(&self.diag);
        relations.push(PureBinomial::new(plus, Monomial::power(n, n - 1, self.xn_sum())));
        BinomialSystem { relations }
    }

    /// Row `i` is the critical side minus the other side of the `i`-th
    /// relation, so `D` contributes `Σxn · e_n - diag`. Rows sum to zero.
    pub fn defining_matrix(&self) -> IntMatrix {
        let n = self.n;
        let sys = self.binomials();
        let rows: Vec<Vec<BigInt>> = sys
            .relations
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let sign: i128 = if i + 1 == n { -1 } else { 1 };
                b.difference().into_iter().map(|d| BigInt::from(sign * d)).collect()
            })
            .collect();
        IntMatrix::from_rows(&rows).expect("n >= 3")
    }

    /// Initial terms of `f_1, …, f_{n-1}, D` for the graded order with `x_n` least.
    pub fn expected_initial_terms(&self) -> Vec<Monomial> {
        let n = self.n;
        let mut out: Vec<Monomial> = (0..n - 1)
            .map(|i| Monomial::power(n, i, self.diag[i] + self.mvec[i]))
            .collect();
        let mut d = Monomial::one(n);
        d.0[..n - 1].copy_from_slice(&self.diag);
        out.push(d);
        out
    }
}

/// `f_1, …, f_{n-1}, D` in that order; `plus` is the side without `x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialSystem {
    pub relations: Vec<PureBinomial>,
}

/// One generator `a_j` of the monoid inside `T ⊕ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidElement {
    /// Coordinates in `ℤ/d_i` for each torsion factor, reduced to `0..d_i`.
    pub torsion: Vec<BigInt>,
    pub free: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    /// `d_1, …, d_n` with `d_n = 0`.
    pub invariant_factors: Vec<BigInt>,
    /// The invariant factors greater than one.
    pub torsion_moduli: Vec<BigInt>,
    pub generators: Vec<MonoidElement>,
    pub is_numerical: bool,
}

impl MonoidPresentation {
    /// Order of the torsion group `T`.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_moduli.iter().product()
    }

    pub fn weight(&self) -> Vec<BigInt> {
        self.generators.iter().map(|g| g.free.clone()).collect()
    }

    pub fn weight_u64(&self) -> Result<Vec<u64>, NorthcottError> {
        self.generators.iter().map(|g| to_u64(&g.free)).collect()
    }

    /// Generators as plain integers; fails unless the monoid is numerical.
    pub fn numerical_generators(&self) -> Result<Vec<u64>, NorthcottError> {
        if !self.is_numerical {
            return Err(NorthcottError::NotNumerical(self.torsion_order()));
        }
        self.weight_u64()
    }

    /// Image of an integer vector under `A`: torsion parts reduced mod `d_i`.
    pub fn evaluate(&self, v: &[BigInt]) -> MonoidElement {
        let mut torsion = vec![BigInt::zero(); self.torsion_moduli.len()];
        let mut free = BigInt::zero();
        for (vj, g) in v.iter().zip(&self.generators) {
            for (t, gt) in torsion.iter_mut().zip(&g.torsion) {
                *t += vj * gt;
            }
            free += vj * &g.free;
        }
        for (t, d) in torsion.iter_mut().zip(&self.torsion_moduli) {
            *t = t.mod_floor(d);
        }
        MonoidElement { torsion, free }
    }
}

pub(crate) fn to_u64(x: &BigInt) -> Result<u64, NorthcottError> {
    x.to_u64().ok_or_else(|| NorthcottError::Overflow(x.to_string()))
}

fn internal(msg: impl Into<String>) -> NorthcottError {
    NorthcottError::Internal(msg.into())
}

/// Recovers `A ⊂ T ⊕ ℤ` with `I_A` equal to the Northcott ideal.
///
/// With `U·M·V = D`, the generator `a_j` is row `j` of `V` restricted to the
/// columns whose invariant factor is not 1; torsion coordinates are reduced
/// modulo `d_i` and the free coordinate (column of `d_n = 0`) is made positive.
pub fn monoid_presentation(inst: &NorthcottInstance) -> Result<MonoidPresentation, NorthcottError> {
    let m = inst.defining_matrix();
    let snf = smith_normal_form(&m);
    presentation_from_snf(inst, &m, snf)
}

fn presentation_from_snf(
    inst: &NorthcottInstance,
    m: &IntMatrix,
    mut snf: SmithDecomposition,
) -> Result<MonoidPresentation, NorthcottError> {
    let n = inst.n();
    for j in 0..n {
        let s: BigInt = (0..n).map(|i| m.get(i, j)).sum();
        if !s.is_zero() {
            return Err(internal(format!("column {j} of M does not sum to zero")));
        }
    }
    let product = snf
        .left
        .mul(m)
        .and_then(|um| um.mul(&snf.right))
        .map_err(|e| internal(e.to_string()))?;
    if product != snf.diagonal {
        return Err(internal("U·M·V differs from the diagonal form"));
    }
    let d = snf.invariant_factors.clone();
    if snf.rank() != n - 1 || !d[n - 1].is_zero() {
        return Err(internal(format!("M must have rank n-1, factors {d:?}")));
    }

    let free_col = n - 1;
    if snf.right.get(0, free_col).is_negative() {
        snf.right.negate_col(free_col);
    }
    let kernel = snf.right.column(free_col);
    if kernel.iter().any(|k| !k.is_positive()) {
        return Err(internal(format!("kernel vector {kernel:?} is not positive")));
    }

    let torsion_cols: Vec<usize> = (0..n - 1).filter(|&i| !d[i].is_one()).collect();
    let torsion_moduli: Vec<BigInt> = torsion_cols.iter().map(|&i| d[i].clone()).collect();
    let generators: Vec<MonoidElement> = (0..n)
        .map(|j| MonoidElement {
            torsion: torsion_cols
                .iter()
                .map(|&i| snf.right.get(j, i).mod_floor(&d[i]))
                .collect(),
            free: kernel[j].clone(),
        })
        .collect();
    let pres = MonoidPresentation {
        invariant_factors: d,
        is_numerical: torsion_moduli.is_empty(),
        torsion_moduli,
        generators,
    };
    check_congruence(m, &pres)?;
    Ok(pres)
}

/// `ker A` equals the row lattice of `M`: every row maps to zero, and `A`
/// maps `ℤ^n` onto `T ⊕ ℤ`. Since `ℤ^n / rowspace(M) ≅ T ⊕ ℤ` already, the
/// induced surjection is an isomorphism, i.e. the index is 1.
fn check_congruence(m: &IntMatrix, pres: &MonoidPresentation) -> Result<(), NorthcottError> {
    let zero = MonoidElement {
        torsion: vec![BigInt::zero(); pres.torsion_moduli.len()],
        free: BigInt::zero(),
    };
    for i in 0..m.rows() {
        if pres.evaluate(m.row(i)) != zero {
            return Err(internal(format!("row {i} of M is not in ker A")));
        }
    }
    // rows: one per torsion coordinate plus the free one; columns: the n
    // generators followed by the relations d_i·e_i
    let n = pres.generators.len();
    let t = pres.torsion_moduli.len();
    let mut aug = IntMatrix::zeros(t + 1, n + t).map_err(|e| internal(e.to_string()))?;
    for (j, g) in pres.generators.iter().enumerate() {
        for (r, x) in g.torsion.iter().enumerate() {
            aug.set(r, j, x.clone());
        }
        aug.set(t, j, g.free.clone());
    }
    for (r, dr) in pres.torsion_moduli.iter().enumerate() {
        aug.set(r, n + r, dr.clone());
    }
    let snf = smith_normal_form(&aug);
    if !snf.invariant_factors.iter().all(One::is_one) {
        return Err(internal(format!(
            "A is not onto T ⊕ ℤ (factors {:?})",
            snf.invariant_factors
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalTest {
    pub is_numerical: bool,
    pub invariant_factors: Vec<BigInt>,
    /// The closed gcd for `d_{n-1}`, present only when `mvec` is all ones.
    pub formula_gcd: Option<BigInt>,
}

/// Numerical iff every nonzero invariant factor of `M` is 1.
pub fn numerical_test(inst: &NorthcottInstance) -> Result<NumericalTest, NorthcottError> {
    let snf = smith_normal_form(&inst.defining_matrix());
    let d = snf.invariant_factors;
    let is_numerical = d.iter().all(|x| x.is_zero() || x.is_one());
    let formula_gcd = if inst.mvec_all_ones() {
        let g = all_ones_gcd(inst);
        let n = inst.n();
        if g != d[n - 2] {
            return Err(internal(format!("closed gcd {g} differs from d_(n-1) = {}", d[n - 2])));
        }
        Some(g)
    } else {
        None
    };
    Ok(NumericalTest {
        is_numerical,
        invariant_factors: d,
        formula_gcd,
    })
}

/// `gcd(∏(diag_i+1) - 1, xn_1 + Σ_{i=1}^{n-2} ∏_{j≤i}(diag_j+1) · xn_{i+1})`.
fn all_ones_gcd(inst: &NorthcottInstance) -> BigInt {
    let prod: BigInt = inst.diag().iter().map(|&u| BigInt::from(u + 1)).product();
    let first: BigInt = prod - 1;
    let mut second = BigInt::from(inst.xn()[0]);
    let mut partial = BigInt::one();
    for i in 1..inst.n() - 1 {
        partial *= inst.diag()[i - 1] + 1;
        second += &partial * inst.xn()[i];
    }
    first.gcd(&second)
}

/// Absolute `(n-1)`-minors of `M` with the last row removed, from their
/// closed form; only defined for `mvec = (1, …, 1)`.
pub fn minor_generators(inst: &NorthcottInstance) -> Result<Vec<BigInt>, NorthcottError> {
    if !inst.mvec_all_ones() {
        return Err(NorthcottError::NotAllOnes);
    }
    let k = inst.n() - 1;
    let diag = inst.diag();
    let xn = inst.xn();
    // 0-indexed rotation: shift^s(j) = (j + s) mod k
    let rot = |s: usize, j: usize| (j + s) % k;

    let mut a = Vec::with_capacity(k + 1);
    for s in 1..=k {
        let mut ak = BigInt::from(xn[rot(s, 0)]);
        let mut partial = BigInt::one();
        for i in 1..k {
            partial *= diag[rot(s, i - 1)] + 1;
            ak += &partial * xn[rot(s, i)];
        }
        a.push(ak);
    }
    let an: BigInt = diag.iter().map(|&u| BigInt::from(u + 1)).product::<BigInt>() - 1;
    a.push(an.clone());

    // (diag_k + 1)·a_k - a_{pred(k)} - xn_k·a_n = 0
    for i in 0..k {
        let lhs = (diag[i] + 1) * &a[i] - &a[inst.predecessor(i)] - xn[i] * &an;
        if !lhs.is_zero() {
            return Err(internal(format!("minor recurrence fails at k = {}", i + 1)));
        }
    }
    Ok(a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    /// Order of `Sat(L)/L` for the row lattice `L` of `M`.
    pub index: BigInt,
    pub is_prime: bool,
}

pub fn saturation_index(inst: &NorthcottInstance) -> Saturation {
    let snf = smith_normal_form(&inst.defining_matrix());
    let index: BigInt = snf
        .invariant_factors
        .iter()
        .filter(|d| !d.is_zero())
        .product();
    Saturation {
        is_prime: index.is_one(),
        index,
    }
}

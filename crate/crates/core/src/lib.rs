//! Monoids and numerical semigroups of Northcott type: construction from
//! exponent data, closed-form invariants, and brute-force cross-checks.

pub mod binomial_gb;
pub mod invariants;
pub mod linalg;
pub mod northcott;
pub mod numsgp;
pub mod sample;

pub use binomial_gb::{
    reduce, s_polynomial, verify_groebner, verify_groebner_with, GroebnerError, GroebnerReport,
    Monomial, PureBinomial, TieBreak, WeightedOrder,
};
pub use invariants::{
    apery_closed, factorization_closed, invariants_closed, wilf_margin, ClosedInvariants,
    FactorizationInvariants, InvariantReport, InvariantsError,
};
pub use linalg::{
    determinant, row_lattice_contains, smith_normal_form, IntMatrix, LinalgError,
    SmithDecomposition,
};
pub use northcott::{
    minor_generators, monoid_presentation, numerical_test, saturation_index, BinomialSystem,
    InstanceError, MonoidElement, MonoidPresentation, NorthcottError, NorthcottExponents,
    NorthcottInstance, NumericalTest, Saturation,
};
pub use numsgp::{
    glue, BasicInvariants, Criticality, FactorizationSet, Gluing, GluingDecomposition,
    NumericalSemigroup, NumsgpError, Presentation,
};

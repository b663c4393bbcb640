//! Exact Galois theory over `Q` and `F_p`: rational and modular arithmetic,
//! polynomials, factorization, extension towers, and automorphism groups
//! with the checks that characterize Galois extensions.
//!
//! ```
//! use galois_kit::{galois_report, splitting_field, Poly, Rationals, TowerField};
//!
//! let q = TowerField::base_field(Rationals);
//! let f = q.lift_base_poly(&Poly::from_i64s(Rationals, &[-2, 0, 0, 1]));
//! let split = splitting_field(&f, 0).unwrap();
//! assert_eq!(split.field.degree(), 6);
//!
//! let report = galois_report(&split.field, &split.field.generators(), 0).unwrap();
//! assert!(report.verdict);
//! assert_eq!(report.group_order, 6);
//! ```

pub mod arith;
pub mod error;
pub mod extension;
pub mod factor;
pub mod field;
pub mod galois;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod search;

pub use arith::{ff_inverse, is_prime, rat_normalize, Integer, PrimeScalar, Rational};
pub use error::{Error, Result};
pub use extension::{
    adjoin_root, collapse_to_simple, degree, minimal_polynomial, minimal_polynomial_over_base,
    splitting_field, SimpleForm, SplittingField, TowerField, TowerSpec,
};
pub use factor::{
    factor, factor_over_extension, factor_over_prime_field, factor_over_rationals, is_irreducible,
    Factorization,
};
pub use field::{BaseField, Field, PrimeField, Rationals};
pub use galois::{
    automorphism_group, fixed_field, galois_report, generic_element, intermediate_fixed_check,
    orbit_polynomial, outside_union_witness, subfield_element_census, AutStrategy, Automorphism,
    AutomorphismGroup, CensusReport, FixedFieldResult, GaloisReport,
};
pub use linalg::Matrix;
pub use poly::Poly;

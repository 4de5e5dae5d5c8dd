//! The standard so_N / sp_N R-matrices and their diagonal multiparametric twists.

mod bundle;
mod standard;
mod twist;

pub use bundle::{family_checks, prepare_family, FamilyBundle};
pub use standard::{
    build_standard, expected_pairings, family_spec, standard_rmatrix, FamilySpec, Series,
};
pub use twist::{
    build_f, build_multiparametric, check_twist_compat, multiparametric_rmatrix, twist_r,
    twisted_expected, validate_twist, TwistSpec, TwistValidity,
};

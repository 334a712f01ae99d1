//! Numerical and analytic positivity checks.

pub mod form;
pub mod profile;
pub mod seesaw;
pub mod witness;

pub use form::{form_value, ProductForm};
pub use profile::{
    analytic_det, case2_lower_bound, classify_profile, f_value, fd_hessian, hessian_scale, hessian_shat,
    profile_matrix, DiagonalProfile, HessianData, ProfileCase,
};
pub use seesaw::{
    polish, seesaw_minimize, seesaw_starts, Polished, PositivityReport, SeesawOptions, StartOutcome, Verdict,
};
pub use witness::{pro2_witness_value, EvenWitness};

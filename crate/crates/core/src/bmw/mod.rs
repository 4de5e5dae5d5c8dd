//! Relation suites and derived data for skew-invertible BMW-type R-matrices.
//!
//! Every check produces an [`Outcome`] whose pass status is the exact
//! vanishing of a residual operator; nothing here uses tolerances.

mod kappa;
mod outcome;
mod pairing;
mod rank_one;
mod relations;
mod rtt;
mod skew;
mod system;
mod verify;
mod xy;

pub use kappa::{kappa_of, kappa_unchecked, KappaData};
pub use outcome::Outcome;
pub use pairing::{factor_pairings, factor_pairings_gauged, PairingPair, Pivot};
pub use rank_one::rank_one_suite;
pub use relations::check_bmw_relations;
pub use rtt::rtt_lemma;
pub use skew::{check_intertwining, skew_inverse, skew_inverse_mirror, skew_outcomes, SkewData};
pub use system::{check_yang_baxter, detect_nu, yang_baxter_outcome, RMatrixSystem};
pub use verify::{full_verification, Derived, Verification};
pub use xy::{xy_matrices, xy_outcomes, XYPair};

pub(crate) use relations::two_site;

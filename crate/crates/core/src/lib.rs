//! Exact constant-term workbench: a sparse Z[q] / Laurent-polynomial
//! engine, tournament combinatorics, closed-form identity right-hand
//! sides, and a brute-force verification oracle over all of them.

pub mod identities;
pub mod laurent;
pub mod qring;
pub mod tournament;
pub mod verify;

pub use identities::{IdentityError, IdentityInstance, Theorem};
pub use laurent::{
    build_product, LaurentError, LaurentPoly, ProductSpec, DEFAULT_TERM_CEILING,
};
pub use qring::{qbinom, qfac, qmultinomial, QPoly, QRat, QRingError};
pub use tournament::{GroundSet, QSet, Tournament, TournamentError};
pub use verify::{
    default_ceiling, sweep, verify_instance, QPolicy, SweepSpec, SweepSummary,
    VerificationReport, Verdict,
};

//! Residual thresholds, by kind of identity.

/// Direct constructions (sharp round trip, projector laws, `S^V`).
pub const CONSTRUCTION: f64 = 1e-9;
/// Theorem-level identities.
pub const THEOREM: f64 = 1e-8;
/// Identities involving third derivatives through the sharp solve (`d_h ω`).
pub const THIRD_ORDER: f64 = 1e-7;

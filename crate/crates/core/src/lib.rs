//! Semi-quantum CHSH game with quantum inputs and postselection.
//!
//! Two parties receive qubit *program* states that select their measurement
//! settings, output conclusive bits or an inconclusive flag, and are scored
//! by the postselected Bell functional `S(γ)`. The crate provides
//!
//! - dense complex Hermitian linear algebra on 2-, 4- and 16-dimensional
//!   spaces ([`linalg`]),
//! - the quantum-input ensembles, the target function and the induced
//!   state-discrimination pair ρ₀/ρ₁ ([`inputs`]),
//! - strategy evaluation (local models and entangled programmable
//!   measurements), Bell reports and seeded Monte Carlo ([`game`]),
//! - semidefinite programs for the general-measurement and PPT-measurement
//!   discrimination bounds, a real-embedding interior-point solver, and
//!   verifiers for the closed-form feasibility certificates ([`sdp`]),
//! - grid sweeps producing the efficiency-vs-violation and Werner-state
//!   curves ([`sweep`]).
//!
//! With the default `parallel` feature, sweeps and simulations distribute
//! over a rayon pool; disabling it leaves bit-identical sequential
//! evaluation paths.

pub mod game;
pub mod inputs;
pub mod linalg;
pub mod sdp;
pub mod sweep;

/// Revision tag stamped into every JSON document this crate emits.
pub const SCHEMA_REV: &str = "1";

/// Tolerances shared across modules. Values are part of the crate contract:
/// changing them changes which operators and tables are accepted.
pub mod tol {
    /// Max-norm defect allowed between a matrix and its conjugate transpose
    /// at [`crate::linalg::HermitianOperator`] construction.
    pub const HERMITICITY: f64 = 1e-12;
    /// Default eigenvalue floor when validating measurement operators.
    pub const PSD: f64 = 1e-9;
    /// Allowed deviation of a POVM element sum from the identity.
    pub const POVM_SUM: f64 = 1e-10;
    /// Allowed deviation of per-input conclusive rates from γ (and γ²).
    pub const EFFICIENCY: f64 = 1e-8;
}

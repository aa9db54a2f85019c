//! Semidefinite programs for the discrimination bounds and their solver.
//!
//! Problems are stated over complex Hermitian PSD blocks with affine
//! equality constraints and a linear objective to **maximize**. The solver
//! works in real arithmetic throughout: every Hermitian coefficient is
//! mapped through [`real_embedding`] (X = A + iB ↦ [[A, −B], [B, A]]) and
//! the optimum is mapped back by halving.
//!
//! # JSON schema
//!
//! [`SdpProblem`] and [`SdpSolution`] serialize to a stable JSON layout used
//! by the golden-file tests:
//!
//! ```json
//! {
//!   "spec_rev": "1",
//!   "family": "general_primal",
//!   "gamma": 0.5,
//!   "blocks": [{"name": "pi_0", "dim": 4}, ...],
//!   "objective": [{"block": 0, "op": {"matrix": {"dim": 4, "re": [...], "im": [...]},
//!                  "subsystem_dims": [2, 2]}}, ...],
//!   "constraints": [{"coeffs": [...], "rhs": 1.0}, ...]
//! }
//! ```
//!
//! Coefficient matrices are row-major with real and imaginary parts split
//! into separate arrays.

mod build;
mod certificates;
mod embed;
mod realmat;
mod solver;

pub use build::{
    build_general, build_ppt, build_werner, closed_form_general, closed_form_ppt, Direction,
};
pub use certificates::{
    appendix_certificates, verify_certificate, CertFamily, Certificate, CertificateReport,
    DualWitness, PrimalWitness,
};
pub use embed::{real_embedding, unembed};
pub use realmat::RealMatrix;
pub use solver::solve;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::HermitianOperator;

#[derive(Debug, Error)]
pub enum SdpError {
    #[error("parameter {name} = {value} outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("malformed problem: {reason}")]
    MalformedProblem { reason: String },
}

/// Which of the printed program families an [`SdpProblem`] instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemFamily {
    GeneralPrimal,
    GeneralDual,
    PptPrimal,
    PptDual,
    Werner,
}

/// Terminal state of a solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    MaxIterations,
    Infeasible,
}

impl Serialize for SolveStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let name = match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::MaxIterations => "max_iterations",
            SolveStatus::Infeasible => "infeasible",
        };
        s.serialize_str(name)
    }
}

/// A PSD variable block.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockSpec {
    pub name: String,
    pub dim: usize,
}

/// One coefficient operator applied to one block.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockCoeff {
    pub block: usize,
    pub op: HermitianOperator,
}

/// Affine equality Σ_b ⟨coeffs_b, X_b⟩ = rhs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<BlockCoeff>,
    pub rhs: f64,
}

/// Block-PSD maximization with affine equality constraints.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SdpProblem {
    pub spec_rev: String,
    pub family: ProblemFamily,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    pub blocks: Vec<BlockSpec>,
    pub objective: Vec<BlockCoeff>,
    pub constraints: Vec<Constraint>,
}

impl SdpProblem {
    pub(crate) fn validate(&self) -> Result<(), SdpError> {
        if self.constraints.is_empty() {
            return Err(SdpError::MalformedProblem {
                reason: "constraint list is empty".into(),
            });
        }
        let check = |c: &BlockCoeff| -> Result<(), SdpError> {
            let spec = self.blocks.get(c.block).ok_or(SdpError::MalformedProblem {
                reason: format!("coefficient names unknown block {}", c.block),
            })?;
            if spec.dim != c.op.dim() {
                return Err(SdpError::MalformedProblem {
                    reason: format!(
                        "coefficient on block {} has dim {}, block has {}",
                        c.block,
                        c.op.dim(),
                        spec.dim
                    ),
                });
            }
            Ok(())
        };
        self.objective
            .iter()
            .chain(self.constraints.iter().flat_map(|c| c.coeffs.iter()))
            .try_for_each(check)
    }
}

/// Certificate that a dropped equality row contradicts the kept rows: the
/// row equals `combination` of earlier kept rows but its right-hand side
/// differs by `mismatch`.
#[derive(Clone, Debug, Serialize)]
pub struct InfeasibilityCertificate {
    pub row: usize,
    pub combination: Vec<(usize, f64)>,
    pub mismatch: f64,
}

/// Residual summary of a solve.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Residuals {
    /// Scaled max equality violation of the returned primal point.
    pub primal: f64,
    /// Scaled max dual slack violation.
    pub dual: f64,
    /// Smallest eigenvalue over all returned blocks.
    pub min_block_eigenvalue: f64,
}

/// Solver output: block values (complex, unembedded), one multiplier per
/// original constraint, objective bracket and status.
#[derive(Clone, Debug, Serialize)]
pub struct SdpSolution {
    pub status: SolveStatus,
    pub block_values: Vec<HermitianOperator>,
    pub dual_multipliers: Vec<f64>,
    pub primal_objective: f64,
    pub dual_objective: f64,
    /// |dual − primal| at the returned iterates.
    pub gap: f64,
    pub iterations: usize,
    pub residuals: Residuals,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infeasibility: Option<InfeasibilityCertificate>,
}

/// Options for [`solve`].
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub gap_tol: f64,
    pub feas_tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            gap_tol: 1e-7,
            feas_tol: 1e-8,
            max_iter: 200,
        }
    }
}

/// Where a curve's values came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveSource {
    ClosedForm,
    Solver,
    Strategy,
}

/// A sampled bound curve over γ or ξ.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub source: CurveSource,
}

impl BoundCurve {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, source: CurveSource) -> Self {
        assert_eq!(grid.len(), values.len(), "curve grid/value length mismatch");
        assert!(
            grid.windows(2).all(|w| w[0] < w[1]),
            "curve grid must be strictly increasing"
        );
        assert!(
            values.iter().all(|v| v.is_finite()),
            "curve values must be finite"
        );
        Self {
            grid,
            values,
            source,
        }
    }
}

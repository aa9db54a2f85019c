//! Grid sweeps for the efficiency-vs-violation and Werner-detection curves.
//!
//! Rows are independent, so with the `parallel` feature each sweep fans out
//! over the rayon pool; results always come back in grid order. The
//! `*_sequential` variants run the identical row computation on one thread
//! and exist for benchmarking and as a determinism reference.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::game::{
    evaluate_quantum, pretty_good_strategy, werner_pretty_good_strategy, GameError,
};
use crate::inputs::{build_pair, DiscriminationPair, EncodingScheme};
use crate::sdp::{
    build_general, build_ppt, build_werner, closed_form_general, closed_form_ppt, solve,
    Direction, SolveOptions, SolveStatus,
};

/// Outcome of the solver work behind one row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    MaxIterations,
    Infeasible,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::MaxIterations => "max_iterations",
            RowStatus::Infeasible => "infeasible",
        }
    }

    fn from_solve(status: SolveStatus) -> Self {
        match status {
            SolveStatus::Optimal => RowStatus::Ok,
            SolveStatus::MaxIterations => RowStatus::MaxIterations,
            SolveStatus::Infeasible => RowStatus::Infeasible,
        }
    }

    fn worst(self, other: Self) -> Self {
        use RowStatus::*;
        match (self, other) {
            (Infeasible, _) | (_, Infeasible) => Infeasible,
            (MaxIterations, _) | (_, MaxIterations) => MaxIterations,
            _ => Ok,
        }
    }
}

/// One row of the efficiency sweep, in Bell units S = 8(G − ½).
#[derive(Clone, Debug)]
pub struct BoundsRow {
    pub gamma: f64,
    /// Postselected local bound √2, derived from the PPT optimum.
    pub local_bound: f64,
    /// General-measurement upper bound from the closed form.
    pub quantum_upper: f64,
    /// Value attained by the pretty-good strategy.
    pub pretty_good_s: f64,
    pub solver_general_s: Option<f64>,
    pub solver_ppt_s: Option<f64>,
    pub status: RowStatus,
}

/// One row of the Werner sweep at γ = ½.
#[derive(Clone, Debug)]
pub struct WernerRow {
    pub xi: f64,
    /// SDP upper bound on S for strategies whose entanglement comes from
    /// the Werner state φ_ξ only.
    pub sdp_bound_s: f64,
    /// S of the pretty-good strategy on the same resource.
    pub pretty_good_s: f64,
    pub status: RowStatus,
}

/// Evenly spaced γ grid with the breakpoints ½ and 1/√2 injected.
pub fn gamma_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    grid_with_breakpoints(min, max, steps, &[0.5, FRAC_1_SQRT_2])
}

/// Evenly spaced ξ grid with the thresholds 1/3 and ½ injected.
pub fn xi_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    grid_with_breakpoints(min, max, steps, &[1.0 / 3.0, 0.5])
}

fn grid_with_breakpoints(min: f64, max: f64, steps: usize, breakpoints: &[f64]) -> Vec<f64> {
    assert!(steps >= 2, "grid needs at least two points");
    assert!(min < max, "grid bounds must be increasing");
    let mut grid: Vec<f64> = (0..steps)
        .map(|k| min + (max - min) * k as f64 / (steps - 1) as f64)
        .collect();
    for &b in breakpoints {
        if b > min && b < max {
            grid.push(b);
        }
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    grid
}

fn maybe_parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(&f).collect()
    }
}

/// Converts an unnormalized discrimination objective γ²·G into Bell units.
pub fn objective_to_bell(objective: f64, gamma: f64) -> f64 {
    8.0 * (objective / (gamma * gamma) - 0.5)
}

fn bounds_row(
    gamma: f64,
    pair: &DiscriminationPair,
    with_solver: bool,
    opts: &SolveOptions,
) -> Result<BoundsRow, GameError> {
    let local_bound = 8.0 * (closed_form_ppt() - 0.5);
    let quantum_upper = 8.0
        * (closed_form_general(gamma).map_err(|_| GameError::GammaOutOfRange(gamma))? - 0.5);
    let pretty_good_s = evaluate_quantum(&pretty_good_strategy(gamma)?, gamma)?.bell_value;
    let mut status = RowStatus::Ok;
    let (solver_general_s, solver_ppt_s) = if with_solver {
        let general = build_general(gamma, pair, Direction::Primal)
            .and_then(|p| solve(&p, opts))
            .map_err(|e| GameError::TableInvalid {
                reason: e.to_string(),
            })?;
        status = status.worst(RowStatus::from_solve(general.status));
        let ppt = build_ppt(gamma, pair, Direction::Primal)
            .and_then(|p| solve(&p, opts))
            .map_err(|e| GameError::TableInvalid {
                reason: e.to_string(),
            })?;
        status = status.worst(RowStatus::from_solve(ppt.status));
        (
            Some(objective_to_bell(general.primal_objective, gamma)),
            Some(objective_to_bell(ppt.primal_objective, gamma)),
        )
    } else {
        (None, None)
    };
    Ok(BoundsRow {
        gamma,
        local_bound,
        quantum_upper,
        pretty_good_s,
        solver_general_s,
        solver_ppt_s,
        status,
    })
}

/// Efficiency sweep over the grid; solver columns only with `with_solver`.
pub fn bounds_rows(
    grid: &[f64],
    with_solver: bool,
    opts: &SolveOptions,
) -> Result<Vec<BoundsRow>, GameError> {
    let pair = build_pair(EncodingScheme::default());
    maybe_parallel_map(grid, |&gamma| bounds_row(gamma, &pair, with_solver, opts))
        .into_iter()
        .collect()
}

/// Single-threaded sweep with identical output, for benches and debugging.
pub fn bounds_rows_sequential(
    grid: &[f64],
    with_solver: bool,
    opts: &SolveOptions,
) -> Result<Vec<BoundsRow>, GameError> {
    let pair = build_pair(EncodingScheme::default());
    grid.iter()
        .map(|&gamma| bounds_row(gamma, &pair, with_solver, opts))
        .collect()
}

fn werner_row(
    xi: f64,
    pair: &DiscriminationPair,
    strict: bool,
    opts: &SolveOptions,
) -> Result<WernerRow, GameError> {
    let problem = build_werner(xi, pair, strict).map_err(|e| GameError::TableInvalid {
        reason: e.to_string(),
    })?;
    let solution = solve(&problem, opts).map_err(|e| GameError::TableInvalid {
        reason: e.to_string(),
    })?;
    let pretty_good_s = evaluate_quantum(&werner_pretty_good_strategy(0.5, xi)?, 0.5)?.bell_value;
    Ok(WernerRow {
        xi,
        sdp_bound_s: objective_to_bell(solution.primal_objective, 0.5),
        pretty_good_s,
        status: RowStatus::from_solve(solution.status),
    })
}

/// Werner sweep over the ξ grid at γ = ½.
pub fn werner_rows(
    grid: &[f64],
    strict: bool,
    opts: &SolveOptions,
) -> Result<Vec<WernerRow>, GameError> {
    let pair = build_pair(EncodingScheme::default());
    maybe_parallel_map(grid, |&xi| werner_row(xi, &pair, strict, opts))
        .into_iter()
        .collect()
}

/// Single-threaded Werner sweep with identical output.
pub fn werner_rows_sequential(
    grid: &[f64],
    strict: bool,
    opts: &SolveOptions,
) -> Result<Vec<WernerRow>, GameError> {
    let pair = build_pair(EncodingScheme::default());
    grid.iter()
        .map(|&xi| werner_row(xi, &pair, strict, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_inject_breakpoints_in_order() {
        let g = gamma_grid(0.05, 1.0, 60);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.iter().any(|&x| (x - 0.5).abs() < 1e-15));
        assert!(g.iter().any(|&x| (x - FRAC_1_SQRT_2).abs() < 1e-15));
        assert!((g[0] - 0.05).abs() < 1e-15);
        assert!((g.last().unwrap() - 1.0).abs() < 1e-15);

        let x = xi_grid(0.0, 1.0, 30);
        assert!(x.iter().any(|&v| (v - 1.0 / 3.0).abs() < 1e-15));
        assert!(x.iter().any(|&v| (v - 0.5).abs() < 1e-15));
    }

    #[test]
    fn bounds_rows_without_solver() {
        let rows = bounds_rows(&[0.4, 1.0], false, &SolveOptions::default()).unwrap();
        assert_eq!(rows.len(), 2);
        let sqrt2 = 2.0f64.sqrt();
        assert!((rows[0].local_bound - sqrt2).abs() < 1e-12);
        assert!((rows[0].quantum_upper - 2.0 * sqrt2).abs() < 1e-12);
        assert!((rows[0].pretty_good_s - 2.0 * sqrt2).abs() < 1e-9);
        // At γ = 1 the quantum upper bound collapses onto the local bound.
        assert!((rows[1].quantum_upper - rows[1].local_bound).abs() < 1e-12);
        assert!(rows[0].solver_general_s.is_none());
        assert_eq!(rows[0].status, RowStatus::Ok);
    }
}

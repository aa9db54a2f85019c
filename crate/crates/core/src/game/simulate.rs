//! Seeded Monte Carlo sampling of a probability table.
//!
//! Rounds are partitioned into fixed batches of 2¹⁶; batch `i` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `i`. Within a round the
//! input pair comes first (uniform over the 16), then the outcome pair by
//! inverse CDF over the nine-entry row in `joint_index` order. Batching
//! makes the counts — and therefore the whole report — bit-identical
//! whether batches run sequentially or on a rayon pool.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_efficiency, GameError, ProbabilityTable};
use crate::inputs::InputPair;

const BATCH_SIZE: u64 = 1 << 16;

/// Empirical Bell scorecard with binomial standard errors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub gamma: f64,
    pub rounds: u64,
    pub seed: u64,
    /// Empirical Ŝ(γ).
    pub bell_value: f64,
    /// Standard error of Ŝ propagated from the per-input correlation
    /// estimates.
    pub std_error: f64,
    /// Empirical guessing probability Pr[a⊕b = f]/γ².
    pub guessing: f64,
    /// Empirical correlations Ĉ(x̄,ȳ).
    pub correlations: [f64; 16],
    pub correlation_std_errors: [f64; 16],
    /// Rounds observed per input pair.
    pub rounds_per_input: [u64; 16],
    /// Empirical joint conclusive rate per input pair (the table promises γ²).
    pub joint_rates: [f64; 16],
}

#[derive(Clone)]
struct Counts {
    per_input: Vec<[u64; 9]>,
}

impl Counts {
    fn zero() -> Self {
        Self {
            per_input: vec![[0; 9]; 16],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.per_input.iter_mut().zip(other.per_input) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self
    }
}

fn batch_counts(table: &ProbabilityTable, seed: u64, batch: u64, len: u64) -> Counts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let mut counts = Counts::zero();
    for _ in 0..len {
        let input = rng.random_range(0..16usize);
        let u: f64 = rng.random();
        let row = &table.row(InputPair::from_index(input));
        let mut acc = 0.0;
        let mut outcome = 8;
        for (k, &p) in row.iter().enumerate() {
            acc += p.max(0.0);
            if u < acc {
                outcome = k;
                break;
            }
        }
        counts.per_input[input][outcome] += 1;
    }
    counts
}

fn batch_lengths(rounds: u64) -> impl Iterator<Item = (u64, u64)> {
    let n_batches = rounds.div_ceil(BATCH_SIZE);
    (0..n_batches).map(move |b| {
        let start = b * BATCH_SIZE;
        (b, (rounds - start).min(BATCH_SIZE))
    })
}

/// Runs the simulation, distributing batches over the rayon pool when the
/// `parallel` feature is enabled. Output is bit-identical to
/// [`simulate_sequential`].
pub fn simulate(
    table: &ProbabilityTable,
    gamma: f64,
    rounds: u64,
    seed: u64,
) -> Result<EmpiricalReport, GameError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if rounds == 0 {
            return Err(GameError::NoRounds);
        }
        check_efficiency(table, gamma)?;
        let pairs: Vec<(u64, u64)> = batch_lengths(rounds).collect();
        let counts = pairs
            .par_iter()
            .map(|&(b, len)| batch_counts(table, seed, b, len))
            .reduce(Counts::zero, Counts::merge);
        Ok(report_from_counts(counts, gamma, rounds, seed))
    }
    #[cfg(not(feature = "parallel"))]
    {
        simulate_sequential(table, gamma, rounds, seed)
    }
}

/// Single-threaded evaluation kernel; useful as a determinism reference and
/// for benchmarking against the parallel path.
pub fn simulate_sequential(
    table: &ProbabilityTable,
    gamma: f64,
    rounds: u64,
    seed: u64,
) -> Result<EmpiricalReport, GameError> {
    if rounds == 0 {
        return Err(GameError::NoRounds);
    }
    check_efficiency(table, gamma)?;
    let counts = batch_lengths(rounds)
        .map(|(b, len)| batch_counts(table, seed, b, len))
        .fold(Counts::zero(), Counts::merge);
    Ok(report_from_counts(counts, gamma, rounds, seed))
}

fn report_from_counts(counts: Counts, gamma: f64, rounds: u64, seed: u64) -> EmpiricalReport {
    let gamma2 = gamma * gamma;
    let mut correlations = [0.0; 16];
    let mut correlation_std_errors = [0.0; 16];
    let mut rounds_per_input = [0u64; 16];
    let mut joint_rates = [0.0; 16];
    let mut signed_sum = 0.0;
    let mut variance_sum = 0.0;
    let mut wins = 0u64;

    for p in InputPair::all() {
        let i = p.index();
        let row = &counts.per_input[i];
        let n: u64 = row.iter().sum();
        rounds_per_input[i] = n;
        // Conclusive joint outcomes occupy indices 3a+b with a,b < 2.
        let same = row[0] + row[4];
        let diff = row[1] + row[3];
        wins += if p.target() { diff } else { same };
        if n == 0 {
            continue;
        }
        let nf = n as f64;
        let c = (same as f64 - diff as f64) / nf;
        let p_conclusive = (same + diff) as f64 / nf;
        correlations[i] = c;
        joint_rates[i] = p_conclusive;
        let variance = (p_conclusive - c * c).max(0.0) / nf;
        correlation_std_errors[i] = variance.sqrt();
        variance_sum += variance;
        signed_sum += if p.target() { -c } else { c };
    }

    EmpiricalReport {
        gamma,
        rounds,
        seed,
        bell_value: signed_sum / (4.0 * gamma2),
        std_error: variance_sum.sqrt() / (4.0 * gamma2),
        guessing: wins as f64 / (rounds as f64 * gamma2),
        correlations,
        correlation_std_errors,
        rounds_per_input,
        joint_rates,
    }
}

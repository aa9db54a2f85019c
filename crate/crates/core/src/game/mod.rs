//! Strategy evaluation for the semi-quantum game.
//!
//! A strategy is either a local model (shared randomness plus local
//! three-outcome POVMs on the program qubits) or a quantum model (a shared
//! bipartite state measured jointly with each program qubit by a
//! programmable measurement). Either reduces to an effective nine-outcome
//! measurement on the two program qubits; from its probability table we
//! score the postselected Bell value S(γ) and the guessing probability
//! G(γ) = ½ + S(γ)/8.

mod simulate;

pub use simulate::{simulate, simulate_sequential, EmpiricalReport};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::inputs::{
    bell_basis, build_pair, werner, DiscriminationPair, EncodingScheme, InputError, InputPair,
};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::tol;

#[derive(Debug, Error)]
pub enum GameError {
    #[error("POVM element {index} is not PSD (min eigenvalue {min_eigenvalue:.3e})")]
    PovmElementNotPsd { index: usize, min_eigenvalue: f64 },
    #[error("POVM elements do not sum to the identity (defect {defect:.3e})")]
    PovmIncomplete { defect: f64 },
    #[error("POVM elements have mismatched dimensions")]
    PovmDimensionMismatch,
    #[error("component weights must be nonnegative and sum to 1 (sum {sum})")]
    WeightsInvalid { sum: f64 },
    #[error("shared state must be a 4-dim density operator (min eigenvalue {min_eigenvalue:.3e}, trace {trace})")]
    SharedStateInvalid { min_eigenvalue: f64, trace: f64 },
    #[error("measurement efficiency {0} outside (0, 1]")]
    GammaOutOfRange(f64),
    #[error("round count must be at least 1")]
    NoRounds,
    #[error("{party} conclusive rate at {input} is {actual:.12}, expected {expected:.12} (deviation {deviation:.3e})")]
    EfficiencyMismatch {
        party: &'static str,
        input: InputPair,
        expected: f64,
        actual: f64,
        deviation: f64,
    },
    #[error("probability table invalid: {reason}")]
    TableInvalid { reason: String },
    #[error(transparent)]
    Input(#[from] InputError),
}

/// A single device outcome: a conclusive bit or the inconclusive flag ∅.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Zero,
    One,
    Inconclusive,
}

impl Outcome {
    pub const ALL: [Outcome; 3] = [Outcome::Zero, Outcome::One, Outcome::Inconclusive];
    pub const CONCLUSIVE: [Outcome; 2] = [Outcome::Zero, Outcome::One];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Outcome::Zero => 0,
            Outcome::One => 1,
            Outcome::Inconclusive => 2,
        }
    }

    #[inline]
    pub fn conclusive_bit(self) -> Option<bool> {
        match self {
            Outcome::Zero => Some(false),
            Outcome::One => Some(true),
            Outcome::Inconclusive => None,
        }
    }
}

/// Index of a joint outcome pair in 0..9.
#[inline]
pub fn joint_index(a: Outcome, b: Outcome) -> usize {
    3 * a.index() + b.index()
}

/// Labeled positive-operator-valued measure. Elements must be PSD within
/// [`tol::PSD`] and sum to the identity within [`tol::POVM_SUM`].
#[derive(Clone, Debug)]
pub struct Povm<L> {
    elements: Vec<(L, HermitianOperator)>,
}

pub type LocalPovm = Povm<Outcome>;
pub type JointPovm = Povm<(Outcome, Outcome)>;

impl<L: Copy + PartialEq> Povm<L> {
    pub fn new(elements: Vec<(L, HermitianOperator)>) -> Result<Self, GameError> {
        assert!(!elements.is_empty(), "POVM must have at least one element");
        let dim = elements[0].1.dim();
        if elements.iter().any(|(_, op)| op.dim() != dim) {
            return Err(GameError::PovmDimensionMismatch);
        }
        let mut sum = HermitianOperator::zero(elements[0].1.subsystem_dims());
        for (index, (_, op)) in elements.iter().enumerate() {
            let min_eigenvalue = op.min_eigenvalue();
            if min_eigenvalue < -tol::PSD {
                return Err(GameError::PovmElementNotPsd {
                    index,
                    min_eigenvalue,
                });
            }
            sum = sum.add(op);
        }
        let defect = sum
            .sub(&HermitianOperator::identity(sum.subsystem_dims()))
            .matrix()
            .max_norm();
        if defect > tol::POVM_SUM {
            return Err(GameError::PovmIncomplete { defect });
        }
        Ok(Self { elements })
    }

    pub fn dim(&self) -> usize {
        self.elements[0].1.dim()
    }

    pub fn elements(&self) -> &[(L, HermitianOperator)] {
        &self.elements
    }

    pub fn element(&self, label: L) -> &HermitianOperator {
        &self
            .elements
            .iter()
            .find(|(l, _)| *l == label)
            .expect("POVM is missing a label")
            .1
    }
}

/// One branch of a local model: a weight and a POVM per party.
#[derive(Clone, Debug)]
pub struct LosrComponent {
    pub weight: f64,
    pub alice: LocalPovm,
    pub bob: LocalPovm,
}

/// Shared-randomness mixture of local three-outcome measurements on the
/// program qubits.
#[derive(Clone, Debug)]
pub struct LosrStrategy {
    components: Vec<LosrComponent>,
}

impl LosrStrategy {
    pub fn new(components: Vec<LosrComponent>) -> Result<Self, GameError> {
        let sum: f64 = components.iter().map(|c| c.weight).sum();
        if components.iter().any(|c| c.weight < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(GameError::WeightsInvalid { sum });
        }
        if components
            .iter()
            .any(|c| c.alice.dim() != 2 || c.bob.dim() != 2)
        {
            return Err(GameError::PovmDimensionMismatch);
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[LosrComponent] {
        &self.components
    }
}

/// Entangled-resource model: a shared state on A′⊗B′ and a programmable
/// measurement per party, Alice's on A⊗A′ and Bob's on B′⊗B.
#[derive(Clone, Debug)]
pub struct QuantumStrategy {
    shared_state: HermitianOperator,
    alice_pqm: LocalPovm,
    bob_pqm: LocalPovm,
}

impl QuantumStrategy {
    pub fn new(
        shared_state: HermitianOperator,
        alice_pqm: LocalPovm,
        bob_pqm: LocalPovm,
    ) -> Result<Self, GameError> {
        let min_eigenvalue = shared_state.min_eigenvalue();
        let trace = shared_state.trace();
        if shared_state.dim() != 4 || min_eigenvalue < -tol::PSD || (trace - 1.0).abs() > 1e-10 {
            return Err(GameError::SharedStateInvalid {
                min_eigenvalue,
                trace,
            });
        }
        if alice_pqm.dim() != 4 || bob_pqm.dim() != 4 {
            return Err(GameError::PovmDimensionMismatch);
        }
        Ok(Self {
            shared_state,
            alice_pqm,
            bob_pqm,
        })
    }

    pub fn shared_state(&self) -> &HermitianOperator {
        &self.shared_state
    }

    pub fn alice_pqm(&self) -> &LocalPovm {
        &self.alice_pqm
    }

    pub fn bob_pqm(&self) -> &LocalPovm {
        &self.bob_pqm
    }
}

/// Conditional distribution over the nine outcome pairs for each of the 16
/// inputs. Rows are indexed by [`InputPair::index`], columns by
/// [`joint_index`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbabilityTable {
    entries: Vec<[f64; 9]>,
}

impl ProbabilityTable {
    pub fn new(entries: Vec<[f64; 9]>) -> Result<Self, GameError> {
        if entries.len() != 16 {
            return Err(GameError::TableInvalid {
                reason: format!("expected 16 input rows, got {}", entries.len()),
            });
        }
        for (i, row) in entries.iter().enumerate() {
            if row.iter().any(|&p| p < -1e-12 || !p.is_finite()) {
                return Err(GameError::TableInvalid {
                    reason: format!("negative or non-finite probability in row {i}"),
                });
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-10 {
                return Err(GameError::TableInvalid {
                    reason: format!("row {i} sums to {sum}"),
                });
            }
        }
        Ok(Self { entries })
    }

    #[inline]
    pub fn prob(&self, input: InputPair, a: Outcome, b: Outcome) -> f64 {
        self.entries[input.index()][joint_index(a, b)]
    }

    pub fn row(&self, input: InputPair) -> &[f64; 9] {
        &self.entries[input.index()]
    }
}

/// Postselected Bell scorecard for one probability table at efficiency γ.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BellReport {
    pub gamma: f64,
    /// Alice's conclusive rate per x̄ (averaged over ȳ; the preconditions
    /// force it constant).
    pub alice_eff: [f64; 4],
    /// Bob's conclusive rate per ȳ.
    pub bob_eff: [f64; 4],
    /// Joint conclusive rate per input pair.
    pub joint_eff: [f64; 16],
    /// Unnormalized conditional correlations C(x̄,ȳ).
    pub correlations: [f64; 16],
    /// S(γ) = (1/4) Σ (−1)^f C(x̄,ȳ)/γ².
    pub bell_value: f64,
    /// G(γ) = Pr[a⊕b = f]/γ², computed directly from the table.
    pub guessing: f64,
}

/// Effective two-qubit measurement of a quantum strategy:
/// M_{a,b} = Tr_{A′B′}[(Q_a ⊗ R_b)(𝟙 ⊗ φ ⊗ 𝟙)] in the A⊗A′⊗B′⊗B layout.
pub fn effective_measurement(strategy: &QuantumStrategy) -> Result<JointPovm, GameError> {
    let id2 = HermitianOperator::identity(&[2]);
    let sandwich = id2.kron(strategy.shared_state()).kron(&id2);
    let mut elements = Vec::with_capacity(9);
    for (la, qa) in strategy.alice_pqm().elements() {
        for (lb, rb) in strategy.bob_pqm().elements() {
            let prod = qa.kron(rb).matrix().mul(sandwich.matrix());
            let traced = crate::linalg::partial_trace_matrix(&prod, &[2, 2, 2, 2], &[0, 3]);
            elements.push((
                (*la, *lb),
                HermitianOperator::symmetrized(traced, vec![2, 2]),
            ));
        }
    }
    Povm::new(elements)
}

/// Effective measurement of a local model: M_{a,b} = Σ_λ Pr[λ] Q_a^λ ⊗ R_b^λ.
/// Separable by construction.
pub fn losr_effective_measurement(strategy: &LosrStrategy) -> Result<JointPovm, GameError> {
    let mut elements: Vec<((Outcome, Outcome), HermitianOperator)> = Outcome::ALL
        .iter()
        .flat_map(|&a| Outcome::ALL.iter().map(move |&b| (a, b)))
        .map(|label| (label, HermitianOperator::zero(&[2, 2])))
        .collect();
    for component in strategy.components() {
        for (la, qa) in component.alice.elements() {
            for (lb, rb) in component.bob.elements() {
                let term = qa.kron(rb).scale(component.weight);
                let slot = elements
                    .iter_mut()
                    .find(|(l, _)| *l == (*la, *lb))
                    .expect("joint label table is complete");
                slot.1 = slot.1.add(&term);
            }
        }
    }
    Povm::new(elements)
}

/// Born-rule table Pr[a,b | x̄,ȳ] = Tr[M_{a,b}(ω_x̄ ⊗ τ_ȳ)].
pub fn probability_table(
    measurement: &JointPovm,
    scheme: EncodingScheme,
) -> Result<ProbabilityTable, GameError> {
    assert_eq!(measurement.dim(), 4, "joint measurement must act on A⊗B");
    let pair = build_pair(scheme);
    let entries: Vec<[f64; 9]> = InputPair::all()
        .map(|p| {
            let state = pair.input_state(p);
            let mut row = [0.0; 9];
            for (label, op) in measurement.elements() {
                row[joint_index(label.0, label.1)] = op.hs_inner(state);
            }
            row
        })
        .collect();
    ProbabilityTable::new(entries)
}

/// Validates the standing efficiency assumptions: each party's conclusive
/// rate is γ and the joint rate is γ², per input, within [`tol::EFFICIENCY`].
fn check_efficiency(table: &ProbabilityTable, gamma: f64) -> Result<(), GameError> {
    check_gamma(gamma)?;
    let gamma2 = gamma * gamma;
    for p in InputPair::all() {
        let row = table.row(p);
        let mut alice = 0.0;
        let mut bob = 0.0;
        let mut joint = 0.0;
        for a in Outcome::ALL {
            for b in Outcome::ALL {
                let pr = row[joint_index(a, b)];
                if a != Outcome::Inconclusive {
                    alice += pr;
                }
                if b != Outcome::Inconclusive {
                    bob += pr;
                }
                if a != Outcome::Inconclusive && b != Outcome::Inconclusive {
                    joint += pr;
                }
            }
        }
        for (party, actual, expected) in [
            ("alice", alice, gamma),
            ("bob", bob, gamma),
            ("joint", joint, gamma2),
        ] {
            let deviation = (actual - expected).abs();
            if deviation > tol::EFFICIENCY {
                return Err(GameError::EfficiencyMismatch {
                    party,
                    input: p,
                    expected,
                    actual,
                    deviation,
                });
            }
        }
    }
    Ok(())
}

/// Scores a probability table: correlations, Bell value S(γ) and guessing
/// probability, after checking the efficiency preconditions.
pub fn bell_report(table: &ProbabilityTable, gamma: f64) -> Result<BellReport, GameError> {
    check_efficiency(table, gamma)?;
    let gamma2 = gamma * gamma;

    let mut alice_eff = [0.0; 4];
    let mut bob_eff = [0.0; 4];
    let mut joint_eff = [0.0; 16];
    let mut correlations = [0.0; 16];
    let mut signed_sum = 0.0;
    let mut win = 0.0;

    for p in InputPair::all() {
        let row = table.row(p);
        let mut same = 0.0;
        let mut diff = 0.0;
        for a in Outcome::CONCLUSIVE {
            for b in Outcome::CONCLUSIVE {
                let pr = row[joint_index(a, b)];
                if a == b {
                    same += pr;
                } else {
                    diff += pr;
                }
            }
        }
        let i = p.index();
        correlations[i] = same - diff;
        joint_eff[i] = same + diff;

        let mut alice_conclusive = 0.0;
        let mut bob_conclusive = 0.0;
        for a in Outcome::ALL {
            for b in Outcome::ALL {
                let pr = row[joint_index(a, b)];
                if a != Outcome::Inconclusive {
                    alice_conclusive += pr;
                }
                if b != Outcome::Inconclusive {
                    bob_conclusive += pr;
                }
            }
        }
        alice_eff[i >> 2] += alice_conclusive / 4.0;
        bob_eff[i & 3] += bob_conclusive / 4.0;

        if p.target() {
            signed_sum -= same - diff;
            win += diff;
        } else {
            signed_sum += same - diff;
            win += same;
        }
    }

    Ok(BellReport {
        gamma,
        alice_eff,
        bob_eff,
        joint_eff,
        correlations,
        bell_value: signed_sum / (4.0 * gamma2),
        guessing: win / (16.0 * gamma2),
    })
}

/// Trace-form objective ½ Tr[ρ₀ Π₀ + ρ₁ Π₁] with Π₀ = M₀,₀ + M₁,₁ and
/// Π₁ = M₀,₁ + M₁,₀; equals γ²·G(γ) for any admissible strategy.
pub fn trace_form_guessing(measurement: &JointPovm, pair: &DiscriminationPair) -> f64 {
    let (even, odd, _) = parity_elements(measurement);
    0.5 * (pair.rho0().hs_inner(&even) + pair.rho1().hs_inner(&odd))
}

/// Collapses a joint measurement into the parity outcomes (a⊕b = 0,
/// a⊕b = 1, anything inconclusive).
pub fn parity_elements(
    measurement: &JointPovm,
) -> (HermitianOperator, HermitianOperator, HermitianOperator) {
    let mut even = HermitianOperator::zero(&[2, 2]);
    let mut odd = HermitianOperator::zero(&[2, 2]);
    for (label, op) in measurement.elements() {
        match (label.0.conclusive_bit(), label.1.conclusive_bit()) {
            (Some(a), Some(b)) if a == b => even = even.add(op),
            (Some(_), Some(_)) => odd = odd.add(op),
            _ => {}
        }
    }
    let inconclusive = HermitianOperator::identity(&[2, 2]).sub(&even).sub(&odd);
    (even, odd, inconclusive)
}

fn check_gamma(gamma: f64) -> Result<(), GameError> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(())
    } else {
        Err(GameError::GammaOutOfRange(gamma))
    }
}

fn x_basis_povm(gamma: f64) -> Result<LocalPovm, GameError> {
    let x = crate::inputs::pauli_x();
    let id = HermitianOperator::identity(&[2]);
    Povm::new(vec![
        (Outcome::Zero, id.add(&x).scale(gamma / 2.0)),
        (Outcome::One, id.sub(&x).scale(gamma / 2.0)),
        (Outcome::Inconclusive, id.scale(1.0 - gamma)),
    ])
}

/// The X-basis local strategy: each device measures X with probability γ and
/// otherwise flags ∅. Attains the local optimum S = √2 for every γ.
pub fn losr_x_basis(gamma: f64) -> Result<LosrStrategy, GameError> {
    check_gamma(gamma)?;
    LosrStrategy::new(vec![LosrComponent {
        weight: 1.0,
        alice: x_basis_povm(gamma)?,
        bob: x_basis_povm(gamma)?,
    }])
}

/// Local model that always announces a = b = 0, conclusively.
pub fn deterministic_strategy() -> LosrStrategy {
    let povm = || {
        Povm::new(vec![
            (Outcome::Zero, HermitianOperator::identity(&[2])),
            (Outcome::One, HermitianOperator::zero(&[2])),
            (Outcome::Inconclusive, HermitianOperator::zero(&[2])),
        ])
        .expect("deterministic POVM is valid")
    };
    LosrStrategy::new(vec![LosrComponent {
        weight: 1.0,
        alice: povm(),
        bob: povm(),
    }])
    .expect("deterministic strategy is valid")
}

/// Inefficient Bell-state-measurement PQM with strength γ₁ = min(2γ, 1) on
/// the Ψ± projectors and γ₂ = max(γ − ½, 0) on the computational doublet.
fn pretty_good_pqm(gamma: f64, swap_labels: bool) -> Result<LocalPovm, GameError> {
    let gamma1 = (2.0 * gamma).min(1.0);
    let gamma2 = (gamma - 0.5).max(0.0);
    let bell = bell_basis();
    let psi_plus = HermitianOperator::projector(&bell[2], &[2, 2]);
    let psi_minus = HermitianOperator::projector(&bell[3], &[2, 2]);
    let mut doublet = ComplexMatrix::zeros(4);
    doublet.set(0, 0, num_complex::Complex64::new(1.0, 0.0));
    doublet.set(3, 3, num_complex::Complex64::new(1.0, 0.0));
    let doublet = HermitianOperator::new(doublet, &[2, 2]).expect("diagonal doublet");
    let q0 = psi_plus.scale(gamma1).add(&doublet.scale(gamma2));
    let q1 = psi_minus.scale(gamma1).add(&doublet.scale(gamma2));
    let q_inc = HermitianOperator::identity(&[2, 2]).sub(&q0).sub(&q1);
    let (first, second) = if swap_labels { (q1, q0) } else { (q0, q1) };
    Povm::new(vec![
        (Outcome::Zero, first),
        (Outcome::One, second),
        (Outcome::Inconclusive, q_inc),
    ])
}

/// The pretty-good quantum strategy: shared |Ψ⁺⟩ and identical inefficient
/// Bell-state measurements on both sides. Reaches S = 2√2 for γ ≤ ½ and
/// S = 1/(γ²√2) for ½ < γ < 1/√2.
pub fn pretty_good_strategy(gamma: f64) -> Result<QuantumStrategy, GameError> {
    check_gamma(gamma)?;
    let shared = HermitianOperator::projector(&bell_basis()[2], &[2, 2]);
    QuantumStrategy::new(
        shared,
        pretty_good_pqm(gamma, false)?,
        pretty_good_pqm(gamma, false)?,
    )
}

/// Pretty-good measurements running on a Werner-state resource of the given
/// singlet fraction. Bob's conclusive labels are swapped so the winning
/// parity tracks the singlet term; with that alignment S(F) = 2√2·F at γ = ½.
pub fn werner_pretty_good_strategy(
    gamma: f64,
    fidelity: f64,
) -> Result<QuantumStrategy, GameError> {
    check_gamma(gamma)?;
    let shared = werner(fidelity)?.into_operator();
    QuantumStrategy::new(
        shared,
        pretty_good_pqm(gamma, false)?,
        pretty_good_pqm(gamma, true)?,
    )
}

/// S(F) of the pretty-good strategy on Werner resources at γ = ½, for each
/// fidelity in `grid`.
pub fn werner_pretty_good_curve(grid: &[f64]) -> Result<Vec<(f64, f64)>, GameError> {
    grid.iter()
        .map(|&fidelity| {
            let report = evaluate_quantum(&werner_pretty_good_strategy(0.5, fidelity)?, 0.5)?;
            Ok((fidelity, report.bell_value))
        })
        .collect()
}

/// Fidelity at which the analytic Werner curve crosses the local bound √2,
/// located by bisection to the given absolute width.
pub fn werner_threshold(width: f64) -> Result<f64, GameError> {
    let local_bound = 2.0f64.sqrt();
    let margin = |fidelity: f64| -> Result<f64, GameError> {
        let report = evaluate_quantum(&werner_pretty_good_strategy(0.5, fidelity)?, 0.5)?;
        Ok(report.bell_value - local_bound)
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if margin(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Random local strategy with exact per-party rate γ: each component draws a
/// random effect 0 ⪯ K ⪯ 𝟙 and measures {γK, γ(𝟙−K)}, flagging ∅ with the
/// remaining (1−γ)𝟙.
pub fn random_losr_strategy<R: Rng>(gamma: f64, rng: &mut R) -> Result<LosrStrategy, GameError> {
    check_gamma(gamma)?;
    let n_components = rng.random_range(1..=3usize);
    let mut weights: Vec<f64> = (0..n_components)
        .map(|_| rng.random::<f64>() + 0.05)
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    // Renormalization leaves a last-place residue; fold it into the first weight.
    weights[0] += 1.0 - weights.iter().sum::<f64>();

    let components = weights
        .into_iter()
        .map(|weight| {
            Ok(LosrComponent {
                weight,
                alice: random_rate_povm(gamma, rng)?,
                bob: random_rate_povm(gamma, rng)?,
            })
        })
        .collect::<Result<Vec<_>, GameError>>()?;
    LosrStrategy::new(components)
}

fn random_rate_povm<R: Rng>(gamma: f64, rng: &mut R) -> Result<LocalPovm, GameError> {
    let mut m = ComplexMatrix::zeros(2);
    for r in 0..2 {
        for c in r..2 {
            let z = if r == c {
                num_complex::Complex64::new(rng.random::<f64>() - 0.5, 0.0)
            } else {
                num_complex::Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            };
            m.set(r, c, z);
            m.set(c, r, z.conj());
        }
    }
    let h = HermitianOperator::new(m, &[2]).expect("random matrix built Hermitian");
    let eigs = h.eig().expect("2x2 eigensolve").eigenvalues;
    let spectral = eigs.iter().fold(0.0f64, |acc, &l| acc.max(l.abs())).max(1e-9);
    let k = h
        .scale(0.5 / spectral)
        .add(&HermitianOperator::identity(&[2]).scale(0.5));
    let id = HermitianOperator::identity(&[2]);
    Povm::new(vec![
        (Outcome::Zero, k.scale(gamma)),
        (Outcome::One, id.sub(&k).scale(gamma)),
        (Outcome::Inconclusive, id.scale(1.0 - gamma)),
    ])
}

/// Random admissible quantum strategy: a Bell-diagonal shared state with
/// pretty-good PQMs at a random efficiency, Bob's labels swapped on a coin
/// flip. Returns the strategy together with its γ.
pub fn random_bell_diagonal_strategy<R: Rng>(
    rng: &mut R,
) -> Result<(QuantumStrategy, f64), GameError> {
    let gamma = 0.05 + 0.95 * rng.random::<f64>();
    let mut probs: Vec<f64> = (0..4).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= total;
    }
    probs[0] += 1.0 - probs.iter().sum::<f64>();
    let bell = bell_basis();
    let mut shared = HermitianOperator::zero(&[2, 2]);
    for (p, ket) in probs.iter().zip(bell.iter()) {
        shared = shared.add(&HermitianOperator::projector(ket, &[2, 2]).scale(*p));
    }
    let swap = rng.random::<bool>();
    let strategy = QuantumStrategy::new(
        shared,
        pretty_good_pqm(gamma, false)?,
        pretty_good_pqm(gamma, swap)?,
    )?;
    Ok((strategy, gamma))
}

/// Evaluates a local strategy end to end at the default encoding.
pub fn evaluate_losr(strategy: &LosrStrategy, gamma: f64) -> Result<BellReport, GameError> {
    let table = probability_table(
        &losr_effective_measurement(strategy)?,
        EncodingScheme::default(),
    )?;
    bell_report(&table, gamma)
}

/// Evaluates a quantum strategy end to end at the default encoding.
pub fn evaluate_quantum(strategy: &QuantumStrategy, gamma: f64) -> Result<BellReport, GameError> {
    let table = probability_table(&effective_measurement(strategy)?, EncodingScheme::default())?;
    bell_report(&table, gamma)
}

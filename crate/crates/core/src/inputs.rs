//! Quantum input ensembles for the game, the target function, and the mixed
//! discrimination pair they induce.
//!
//! Each party encodes two uniformly random bits into a program qubit. Two
//! encodings are supported: the Hadamard scheme (conjugate coding in the Z/X
//! bases, used by the appendix material) and the Pauli X/Y scheme under
//! which the averaged states ρ₀, ρ₁ are Bell-diagonal. Both yield unitarily
//! equivalent games.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{ComplexMatrix, HermitianOperator};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("Werner fidelity {0} outside [0, 1]")]
    FidelityOutOfRange(f64),
}

/// Pauli X on a single qubit.
pub fn pauli_x() -> HermitianOperator {
    let one = Complex64::new(1.0, 0.0);
    let m = ComplexMatrix::from_fn(2, |r, c| if r != c { one } else { Complex64::ZERO });
    HermitianOperator::new(m, &[2]).expect("Pauli X is Hermitian")
}

/// Pauli Y on a single qubit.
pub fn pauli_y() -> HermitianOperator {
    let i = Complex64::new(0.0, 1.0);
    let m = ComplexMatrix::from_fn(2, |r, c| match (r, c) {
        (0, 1) => -i,
        (1, 0) => i,
        _ => Complex64::ZERO,
    });
    HermitianOperator::new(m, &[2]).expect("Pauli Y is Hermitian")
}

/// Pauli Z on a single qubit.
pub fn pauli_z() -> HermitianOperator {
    let m = ComplexMatrix::from_fn(2, |r, c| match (r, c) {
        (0, 0) => Complex64::new(1.0, 0.0),
        (1, 1) => Complex64::new(-1.0, 0.0),
        _ => Complex64::ZERO,
    });
    HermitianOperator::new(m, &[2]).expect("Pauli Z is Hermitian")
}

/// The two bits drawn by each party: x̄ = x₁x₂ for Alice, ȳ = y₁y₂ for Bob.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InputPair {
    pub x1: bool,
    pub x2: bool,
    pub y1: bool,
    pub y2: bool,
}

impl InputPair {
    pub fn new(x1: bool, x2: bool, y1: bool, y2: bool) -> Self {
        Self { x1, x2, y1, y2 }
    }

    /// All 16 input pairs in index order.
    pub fn all() -> impl Iterator<Item = InputPair> {
        (0..16).map(Self::from_index)
    }

    /// Index in 0..16 with bit layout (x₁ x₂ y₁ y₂), x₁ most significant.
    pub fn index(self) -> usize {
        ((self.x1 as usize) << 3)
            | ((self.x2 as usize) << 2)
            | ((self.y1 as usize) << 1)
            | (self.y2 as usize)
    }

    pub fn from_index(index: usize) -> Self {
        assert!(index < 16, "input pair index out of range");
        Self {
            x1: index & 8 != 0,
            x2: index & 4 != 0,
            y1: index & 2 != 0,
            y2: index & 1 != 0,
        }
    }

    pub fn alice_bits(self) -> (bool, bool) {
        (self.x1, self.x2)
    }

    pub fn bob_bits(self) -> (bool, bool) {
        (self.y1, self.y2)
    }

    /// The balanced boolean target x₁∧y₁ ⊕ x₂ ⊕ y₂ the devices must guess.
    pub fn target(self) -> bool {
        (self.x1 & self.y1) ^ self.x2 ^ self.y2
    }
}

impl std::fmt::Display for InputPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "x̄={}{} ȳ={}{}",
            self.x1 as u8, self.x2 as u8, self.y1 as u8, self.y2 as u8
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

/// Program-qubit encoding scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EncodingScheme {
    /// H^{b₁}|b₂⟩⟨b₂|H^{b₁} for both parties.
    Hadamard,
    /// Alice uses the X/Y Pauli bases, Bob the two diagonal bases between
    /// them; makes ρ₀ and ρ₁ Bell-diagonal.
    #[default]
    PauliXY,
}

fn sign(bit: bool) -> f64 {
    if bit {
        -1.0
    } else {
        1.0
    }
}

/// Bloch vector of the encoded program qubit.
fn bloch_vector(party: Party, bits: (bool, bool), scheme: EncodingScheme) -> [f64; 3] {
    let (b1, b2) = bits;
    let s = sign(b2);
    match (scheme, party) {
        (EncodingScheme::Hadamard, _) => {
            if b1 {
                [s, 0.0, 0.0]
            } else {
                [0.0, 0.0, s]
            }
        }
        (EncodingScheme::PauliXY, Party::Alice) => {
            if b1 {
                [0.0, s, 0.0]
            } else {
                [s, 0.0, 0.0]
            }
        }
        (EncodingScheme::PauliXY, Party::Bob) => {
            [s * FRAC_1_SQRT_2, s * sign(b1) * FRAC_1_SQRT_2, 0.0]
        }
    }
}

fn bloch_projector(v: [f64; 3]) -> HermitianOperator {
    let m = pauli_x()
        .scale(v[0])
        .add(&pauli_y().scale(v[1]))
        .add(&pauli_z().scale(v[2]))
        .add(&HermitianOperator::identity(&[2]))
        .scale(0.5);
    m
}

/// Encodes a party's two bits into the program-qubit state (a rank-1
/// projector with unit trace).
pub fn encode(party: Party, bits: (bool, bool), scheme: EncodingScheme) -> HermitianOperator {
    bloch_projector(bloch_vector(party, bits, scheme))
}

/// The two averaged states to discriminate, together with the 16 product
/// inputs they average: ρ_b = (1/8) Σ_{target=b} ω_x̄ ⊗ τ_ȳ.
#[derive(Clone, Debug)]
pub struct DiscriminationPair {
    scheme: EncodingScheme,
    rho0: HermitianOperator,
    rho1: HermitianOperator,
    inputs: Vec<HermitianOperator>,
}

impl DiscriminationPair {
    pub fn scheme(&self) -> EncodingScheme {
        self.scheme
    }

    pub fn rho0(&self) -> &HermitianOperator {
        &self.rho0
    }

    pub fn rho1(&self) -> &HermitianOperator {
        &self.rho1
    }

    /// ρ₀ or ρ₁ by target bit.
    pub fn rho(&self, bit: bool) -> &HermitianOperator {
        if bit {
            &self.rho1
        } else {
            &self.rho0
        }
    }

    /// The product state ω_x̄ ⊗ τ_ȳ handed to the devices for this input.
    pub fn input_state(&self, pair: InputPair) -> &HermitianOperator {
        &self.inputs[pair.index()]
    }

    pub fn inputs(&self) -> &[HermitianOperator] {
        &self.inputs
    }
}

/// Builds the discrimination pair for a scheme.
pub fn build_pair(scheme: EncodingScheme) -> DiscriminationPair {
    let inputs: Vec<HermitianOperator> = InputPair::all()
        .map(|p| {
            encode(Party::Alice, p.alice_bits(), scheme)
                .kron(&encode(Party::Bob, p.bob_bits(), scheme))
        })
        .collect();
    let mut rho0 = HermitianOperator::zero(&[2, 2]);
    let mut rho1 = HermitianOperator::zero(&[2, 2]);
    for p in InputPair::all() {
        let state = &inputs[p.index()];
        if p.target() {
            rho1 = rho1.add(state);
        } else {
            rho0 = rho0.add(state);
        }
    }
    DiscriminationPair {
        scheme,
        rho0: rho0.scale(1.0 / 8.0),
        rho1: rho1.scale(1.0 / 8.0),
        inputs,
    }
}

/// The four Bell states as amplitude vectors, ordered Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn bell_basis() -> [[Complex64; 4]; 4] {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::ZERO;
    [
        [h, z, z, h],
        [h, z, z, -h],
        [z, h, h, z],
        [z, h, -h, z],
    ]
}

/// Two-qubit Werner state F|Ψ⁻⟩⟨Ψ⁻| + (1−F)𝟙/4.
#[derive(Clone, Debug)]
pub struct WernerState {
    fidelity: f64,
    operator: HermitianOperator,
}

impl WernerState {
    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn into_operator(self) -> HermitianOperator {
        self.operator
    }
}

/// Builds the Werner state with singlet fraction `fidelity`. It stays PPT
/// (hence separable) exactly for fidelity ≤ 1/3.
pub fn werner(fidelity: f64) -> Result<WernerState, InputError> {
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(InputError::FidelityOutOfRange(fidelity));
    }
    let singlet = bell_basis()[3];
    let proj = HermitianOperator::projector(&singlet, &[2, 2]);
    let operator = proj
        .scale(fidelity)
        .add(&HermitianOperator::identity(&[2, 2]).scale((1.0 - fidelity) / 4.0));
    Ok(WernerState {
        fidelity,
        operator,
    })
}

/// Single-qubit unitary U with `encode(party, bits, to) = U encode(party,
/// bits, from) U†` for all four bit patterns of that party.
///
/// The encodings of one party share a rigid Bloch frame across schemes, so
/// the change of scheme is a rotation; this returns the corresponding SU(2)
/// element.
pub fn frame_rotation(party: Party, from: EncodingScheme, to: EncodingScheme) -> ComplexMatrix {
    let f1 = bloch_vector(party, (false, false), from);
    let f2 = bloch_vector(party, (true, false), from);
    let g1 = bloch_vector(party, (false, false), to);
    let g2 = bloch_vector(party, (true, false), to);
    let f3 = cross(f1, f2);
    let g3 = cross(g1, g2);
    // R maps the f-frame onto the g-frame: R = Σ_k g_k f_kᵀ.
    let mut r = [[0.0; 3]; 3];
    for (g, f) in [(g1, f1), (g2, f2), (g3, f3)] {
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] += g[i] * f[j];
            }
        }
    }
    rotation_to_su2(&r)
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Converts a rotation matrix to the SU(2) element U = w𝟙 − i(xX + yY + zZ)
/// with quaternion (w, x, y, z) extracted by Shepperd's method.
fn rotation_to_su2(r: &[[f64; 3]; 3]) -> ComplexMatrix {
    let t = r[0][0] + r[1][1] + r[2][2];
    let (w, x, y, z);
    if t > 0.0 {
        let s = (t + 1.0).sqrt() * 2.0;
        w = s / 4.0;
        x = (r[2][1] - r[1][2]) / s;
        y = (r[0][2] - r[2][0]) / s;
        z = (r[1][0] - r[0][1]) / s;
    } else if r[0][0] >= r[1][1] && r[0][0] >= r[2][2] {
        let s = (1.0 + r[0][0] - r[1][1] - r[2][2]).sqrt() * 2.0;
        w = (r[2][1] - r[1][2]) / s;
        x = s / 4.0;
        y = (r[0][1] + r[1][0]) / s;
        z = (r[0][2] + r[2][0]) / s;
    } else if r[1][1] >= r[2][2] {
        let s = (1.0 + r[1][1] - r[0][0] - r[2][2]).sqrt() * 2.0;
        w = (r[0][2] - r[2][0]) / s;
        x = (r[0][1] + r[1][0]) / s;
        y = s / 4.0;
        z = (r[1][2] + r[2][1]) / s;
    } else {
        let s = (1.0 + r[2][2] - r[0][0] - r[1][1]).sqrt() * 2.0;
        w = (r[1][0] - r[0][1]) / s;
        x = (r[0][2] + r[2][0]) / s;
        y = (r[1][2] + r[2][1]) / s;
        z = s / 4.0;
    }
    let i = Complex64::new(0.0, 1.0);
    let mut u = ComplexMatrix::identity(2).scale(Complex64::new(w, 0.0));
    for (coeff, pauli) in [(x, pauli_x()), (y, pauli_y()), (z, pauli_z())] {
        u = u.sub(&pauli.matrix().scale(i * coeff));
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALPHA_PLUS: f64 = (1.0 + FRAC_1_SQRT_2) / 4.0;
    const ALPHA_MINUS: f64 = (1.0 - FRAC_1_SQRT_2) / 4.0;

    #[test]
    fn target_function_examples() {
        assert!(!InputPair::from_index(0b0000).target());
        assert!(InputPair::new(true, false, true, false).target());
        assert!(!InputPair::new(true, true, false, true).target());
    }

    #[test]
    fn target_function_is_balanced() {
        let ones = InputPair::all().filter(|p| p.target()).count();
        assert_eq!(ones, 8);
    }

    #[test]
    fn encode_hadamard_examples() {
        let w00 = encode(Party::Alice, (false, false), EncodingScheme::Hadamard);
        assert!((w00.matrix().get(0, 0).re - 1.0).abs() < 1e-15);
        assert!(w00.matrix().get(1, 1).norm() < 1e-15);

        let w10 = encode(Party::Alice, (true, false), EncodingScheme::Hadamard);
        for r in 0..2 {
            for c in 0..2 {
                assert!((w10.matrix().get(r, c) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn encode_pauli_bob_off_diagonal() {
        let tau = encode(Party::Bob, (false, false), EncodingScheme::PauliXY);
        let expect = Complex64::new(1.0, -1.0) / (2.0 * 2.0f64.sqrt());
        assert!((tau.matrix().get(0, 1) - expect).norm() < 1e-15);
    }

    #[test]
    fn encodings_are_rank_one_projectors_resolving_twice_identity() {
        for scheme in [EncodingScheme::Hadamard, EncodingScheme::PauliXY] {
            for party in [Party::Alice, Party::Bob] {
                let mut sum = HermitianOperator::zero(&[2]);
                for bits in [(false, false), (false, true), (true, false), (true, true)] {
                    let op = encode(party, bits, scheme);
                    assert!((op.trace() - 1.0).abs() < 1e-12);
                    let eigs = op.eig().unwrap().eigenvalues;
                    assert!(eigs[0].abs() < 1e-12 && (eigs[1] - 1.0).abs() < 1e-12);
                    sum = sum.add(&op);
                }
                let defect = sum
                    .sub(&HermitianOperator::identity(&[2]).scale(2.0))
                    .matrix()
                    .max_norm();
                assert!(defect < 1e-12, "{scheme:?} {party:?} defect {defect}");
            }
        }
    }

    #[test]
    fn pair_states_match_uniform_average_of_inputs() {
        // Independent accumulation straight from the encodings.
        let pair = build_pair(EncodingScheme::PauliXY);
        for bit in [false, true] {
            let mut acc = ComplexMatrix::zeros(4);
            for p in InputPair::all().filter(|p| p.target() == bit) {
                let w = encode(Party::Alice, p.alice_bits(), EncodingScheme::PauliXY);
                let t = encode(Party::Bob, p.bob_bits(), EncodingScheme::PauliXY);
                for r in 0..4 {
                    for c in 0..4 {
                        let v = acc.get(r, c)
                            + w.matrix().get(r / 2, c / 2) * t.matrix().get(r % 2, c % 2) / 8.0;
                        acc.set(r, c, v);
                    }
                }
            }
            assert!(acc.sub(pair.rho(bit).matrix()).max_norm() < 1e-15);
        }
    }

    #[test]
    fn pair_invariants() {
        for scheme in [EncodingScheme::Hadamard, EncodingScheme::PauliXY] {
            let pair = build_pair(scheme);
            assert!((pair.rho0().trace() - 1.0).abs() < 1e-12);
            assert!((pair.rho1().trace() - 1.0).abs() < 1e-12);
            let sum = pair.rho0().add(pair.rho1());
            let defect = sum
                .sub(&HermitianOperator::identity(&[2, 2]).scale(0.5))
                .matrix()
                .max_norm();
            assert!(defect < 1e-12);
            // The two averaged states commute.
            let m0 = pair.rho0().matrix();
            let m1 = pair.rho1().matrix();
            assert!(m0.mul(m1).sub(&m1.mul(m0)).max_norm() < 1e-12);
        }
    }

    #[test]
    fn pair_spectrum_matches_both_schemes() {
        for scheme in [EncodingScheme::Hadamard, EncodingScheme::PauliXY] {
            let pair = build_pair(scheme);
            for rho in [pair.rho0(), pair.rho1()] {
                let eigs = rho.eig().unwrap().eigenvalues;
                let expect = [ALPHA_MINUS, 0.25, 0.25, ALPHA_PLUS];
                for (got, want) in eigs.iter().zip(expect) {
                    assert!((got - want).abs() < 1e-12, "{scheme:?}: {eigs:?}");
                }
            }
        }
    }

    #[test]
    fn pauli_pair_diagonal_in_bell_basis_with_plus_on_psi_plus() {
        // The Pauli-XY pair is Bell-diagonal with α⁺ sitting on Ψ⁺ for ρ₀
        // and on Ψ⁻ for ρ₁ (computed, not assumed).
        let pair = build_pair(EncodingScheme::PauliXY);
        let bell = bell_basis();
        let overlap = |rho: &HermitianOperator, k: usize| -> f64 {
            let v = bell[k];
            let proj = HermitianOperator::projector(&v, &[2, 2]);
            rho.hs_inner(&proj)
        };
        assert!((overlap(pair.rho0(), 2) - ALPHA_PLUS).abs() < 1e-12);
        assert!((overlap(pair.rho0(), 3) - ALPHA_MINUS).abs() < 1e-12);
        assert!((overlap(pair.rho1(), 3) - ALPHA_PLUS).abs() < 1e-12);
        assert!((overlap(pair.rho1(), 2) - ALPHA_MINUS).abs() < 1e-12);
        for k in [0, 1] {
            assert!((overlap(pair.rho0(), k) - 0.25).abs() < 1e-12);
        }
        // Off-diagonal Bell elements vanish.
        let spec = pair.rho0().eig().unwrap();
        assert!(spec.reconstruction_error(pair.rho0()) < 1e-12);
    }

    #[test]
    fn difference_spectrum_and_entangled_eigenvectors() {
        let half_inv_sqrt2 = 0.5 * FRAC_1_SQRT_2;
        for scheme in [EncodingScheme::Hadamard, EncodingScheme::PauliXY] {
            let pair = build_pair(scheme);
            let diff = pair.rho0().sub(pair.rho1());
            let spec = diff.eig().unwrap();
            let expect = [-half_inv_sqrt2, 0.0, 0.0, half_inv_sqrt2];
            for (got, want) in spec.eigenvalues.iter().zip(expect) {
                assert!((got - want).abs() < 1e-12);
            }
            // Trace distance ½‖ρ₀−ρ₁‖₁ = 1/(2√2).
            let trace_distance: f64 =
                0.5 * spec.eigenvalues.iter().map(|l| l.abs()).sum::<f64>();
            assert!((trace_distance - half_inv_sqrt2).abs() < 1e-12);
            // The two nonzero eigenvectors are maximally entangled.
            for k in [0, 3] {
                let v = spec.eigenvector(k);
                let proj = HermitianOperator::projector(&v, &[2, 2]);
                for keep in [[0usize], [1usize]] {
                    let reduced = proj.partial_trace(&keep);
                    let defect = reduced
                        .sub(&HermitianOperator::identity(&[2]).scale(0.5))
                        .matrix()
                        .max_norm();
                    assert!(defect < 1e-9, "{scheme:?} eigenvector {k}: {defect}");
                }
            }
        }
    }

    #[test]
    fn bell_basis_properties() {
        let bell = bell_basis();
        for (i, a) in bell.iter().enumerate() {
            for (j, b) in bell.iter().enumerate() {
                let dot: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).norm() < 1e-15);
            }
            let proj = HermitianOperator::projector(a, &[2, 2]);
            for keep in [[0usize], [1usize]] {
                let reduced = proj.partial_trace(&keep);
                let defect = reduced
                    .sub(&HermitianOperator::identity(&[2]).scale(0.5))
                    .matrix()
                    .max_norm();
                assert!(defect < 1e-15);
            }
        }
        let psi_plus = bell[2];
        assert!(psi_plus[0].norm() < 1e-15 && psi_plus[3].norm() < 1e-15);
        assert!((psi_plus[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((psi_plus[2].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn werner_endpoints_and_ppt_threshold() {
        let w0 = werner(0.0).unwrap();
        let quarter_identity = HermitianOperator::identity(&[2, 2]).scale(0.25);
        assert!(w0.operator().sub(&quarter_identity).matrix().max_norm() < 1e-15);

        let w1 = werner(1.0).unwrap();
        let singlet = HermitianOperator::projector(&bell_basis()[3], &[2, 2]);
        assert!(w1.operator().sub(&singlet).matrix().max_norm() < 1e-15);

        let boundary = werner(1.0 / 3.0).unwrap();
        let pt_min = boundary.operator().partial_transpose(1).min_eigenvalue();
        assert!(pt_min.abs() < 1e-12);

        let entangled = werner(0.6).unwrap();
        let pt_min = entangled.operator().partial_transpose(1).min_eigenvalue();
        assert!((pt_min - (1.0 - 3.0 * 0.6) / 4.0).abs() < 1e-12);

        assert!(werner(-0.1).is_err());
        assert!(werner(1.1).is_err());
    }

    #[test]
    fn frame_rotation_maps_encodings_between_schemes() {
        for party in [Party::Alice, Party::Bob] {
            let u = frame_rotation(party, EncodingScheme::PauliXY, EncodingScheme::Hadamard);
            // Unitarity.
            let udu = u.adjoint().mul(&u);
            assert!(udu.sub(&ComplexMatrix::identity(2)).max_norm() < 1e-12);
            for bits in [(false, false), (false, true), (true, false), (true, true)] {
                let from = encode(party, bits, EncodingScheme::PauliXY);
                let to = encode(party, bits, EncodingScheme::Hadamard);
                let conj = u.mul(from.matrix()).mul(&u.adjoint());
                assert!(
                    conj.sub(to.matrix()).max_norm() < 1e-12,
                    "{party:?} {bits:?}"
                );
            }
        }
    }
}

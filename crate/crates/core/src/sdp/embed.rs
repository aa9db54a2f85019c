//! Real embedding of complex Hermitian operators.
//!
//! X = A + iB maps to [[A, −B], [B, A]], a real symmetric matrix of doubled
//! dimension whose spectrum is that of X with every multiplicity doubled.
//! PSD is preserved in both directions and Tr[embed(X)·embed(Y)] =
//! 2·Tr[X·Y], so a real-arithmetic solver can process embedded problems and
//! map optima back by halving.

use num_complex::Complex64;

use super::realmat::RealMatrix;
use crate::linalg::{ComplexMatrix, HermitianOperator};

/// Embeds a Hermitian operator as a real symmetric matrix of doubled
/// dimension.
pub fn real_embedding(op: &HermitianOperator) -> RealMatrix {
    let n = op.dim();
    let mut out = RealMatrix::zeros(2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = op.matrix().get(r, c);
            out.set(r, c, z.re);
            out.set(r + n, c + n, z.re);
            out.set(r, c + n, -z.im);
            out.set(r + n, c, z.im);
        }
    }
    out
}

/// Inverse of [`real_embedding`] for (possibly roundoff-skewed) solver
/// iterates: averages the two real diagonal blocks into A and the two
/// off-diagonal blocks into B, returning the Hermitian A + iB.
///
/// For a generic symmetric PSD input this is the J-symmetrization onto the
/// embedded subspace, so positivity survives the trip back.
pub fn unembed(m: &RealMatrix, subsystem_dims: &[usize]) -> HermitianOperator {
    let n = m.dim() / 2;
    assert_eq!(m.dim(), 2 * n, "embedded dimension must be even");
    assert_eq!(
        subsystem_dims.iter().product::<usize>(),
        n,
        "subsystem dims do not match the unembedded dimension"
    );
    let mut out = ComplexMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let a = 0.5 * (m.get(r, c) + m.get(r + n, c + n));
            let b = 0.5 * (m.get(r + n, c) - m.get(r, c + n));
            out.set(r, c, Complex64::new(a, b));
        }
    }
    HermitianOperator::symmetrized(out, subsystem_dims.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inputs::{build_pair, pauli_y, EncodingScheme};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn identity_embeds_to_identity() {
        let id2 = HermitianOperator::identity(&[2]);
        let emb = real_embedding(&id2);
        let mut diff = emb.clone();
        diff.add_scaled(&RealMatrix::identity(4), -1.0);
        assert!(diff.max_norm() == 0.0);
    }

    #[test]
    fn pauli_y_embedding_is_symmetric_with_doubled_spectrum() {
        let emb = real_embedding(&pauli_y());
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(emb.get(r, c), emb.get(c, r));
            }
        }
        let (eigs, _) = emb.sym_eig();
        let expect = [-1.0, -1.0, 1.0, 1.0];
        for (got, want) in eigs.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn rho0_embedding_doubles_multiplicities() {
        let pair = build_pair(EncodingScheme::PauliXY);
        let emb = real_embedding(pair.rho0());
        let (eigs, _) = emb.sym_eig();
        let a_minus = (1.0 - FRAC_1_SQRT_2) / 4.0;
        let a_plus = (1.0 + FRAC_1_SQRT_2) / 4.0;
        let expect = [a_minus, a_minus, 0.25, 0.25, 0.25, 0.25, a_plus, a_plus];
        for (got, want) in eigs.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn unembed_roundtrips_and_preserves_psd() {
        let pair = build_pair(EncodingScheme::PauliXY);
        let emb = real_embedding(pair.rho1());
        let back = unembed(&emb, &[2, 2]);
        assert!(back.sub(pair.rho1()).matrix().max_norm() < 1e-15);
        // Inner-product doubling.
        let e0 = real_embedding(pair.rho0());
        let inner_embedded = e0.sym_inner(&emb);
        let inner_complex = pair.rho0().hs_inner(pair.rho1());
        assert!((inner_embedded - 2.0 * inner_complex).abs() < 1e-13);
    }
}

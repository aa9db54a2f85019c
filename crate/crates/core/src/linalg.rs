//! Dense complex linear algebra for operators on small multi-qubit spaces.
//!
//! Everything here is sized for Hilbert-space dimensions up to 64 with an
//! explicit tensor-factor structure. Basis ordering is |0…0⟩, |0…1⟩, …,
//! with tensor factors ordered left to right and the leftmost factor
//! slowest-varying, so `kron(a, b)` places `a` on the leading factor.

use std::fmt;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::tol;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Off-diagonal norm threshold (relative to the Frobenius norm) at which the
/// Jacobi eigensolver declares convergence.
const JACOBI_THRESHOLD: f64 = 1e-14;
/// Sweep cap for the Jacobi eigensolver.
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: max |M - M†| = {defect:.3e}")]
    NotHermitian { defect: f64 },
    #[error("subsystem dims {dims:?} have product {product}, expected {dim}")]
    SubsystemMismatch {
        dims: Vec<usize>,
        product: usize,
        dim: usize,
    },
    #[error("eigensolver did not converge: off-diagonal norm {off_norm:.3e} after {sweeps} sweeps")]
    ConvergenceFailure { off_norm: f64, sweeps: usize },
    #[error("entry count {len} is not a perfect square")]
    NotSquare { len: usize },
}

/// Dense complex square matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix(dim={})", self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| format!("{:+.4}{:+.4}i", self.get(r, c).re, self.get(r, c).im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Builds from a row-major entry list. The length must be a perfect square.
    pub fn from_entries(entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() {
            return Err(LinalgError::NotSquare {
                len: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// |ket⟩⟨bra| outer product.
    pub fn outer(ket: &[Complex64], bra: &[Complex64]) -> Self {
        assert_eq!(ket.len(), bra.len(), "outer product dimension mismatch");
        let dim = ket.len();
        Self::from_fn(dim, |r, c| ket[r] * bra[c].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix add dimension mismatch");
        Self::from_fn(self.dim, |r, c| self.get(r, c) + other.get(r, c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix sub dimension mismatch");
        Self::from_fn(self.dim, |r, c| self.get(r, c) - other.get(r, c))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(r, c) * s)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix mul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max-norm Hermiticity defect ‖M − M†‖.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                defect = defect.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        defect
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "matrix apply dimension mismatch");
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Split {
            dim: usize,
            re: Vec<f64>,
            im: Vec<f64>,
        }
        Split {
            dim: self.dim,
            re: self.entries.iter().map(|z| z.re).collect(),
            im: self.entries.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Split {
            dim: usize,
            re: Vec<f64>,
            im: Vec<f64>,
        }
        let s = Split::deserialize(deserializer)?;
        if s.re.len() != s.dim * s.dim || s.im.len() != s.dim * s.dim {
            return Err(D::Error::custom(format!(
                "matrix entry arrays must have {} elements",
                s.dim * s.dim
            )));
        }
        let entries = s
            .re
            .iter()
            .zip(&s.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        Ok(ComplexMatrix {
            dim: s.dim,
            entries,
        })
    }
}

/// Hermitian operator on a tensor product of subsystems.
///
/// Construction symmetrizes to (M + M†)/2 once the defect is verified to be
/// below [`tol::HERMITICITY`]; all derived operations preserve Hermiticity
/// exactly up to roundoff and re-symmetrize.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
    subsystem_dims: Vec<usize>,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix, subsystem_dims: &[usize]) -> Result<Self, LinalgError> {
        let product: usize = subsystem_dims.iter().product();
        if product != matrix.dim() {
            return Err(LinalgError::SubsystemMismatch {
                dims: subsystem_dims.to_vec(),
                product,
                dim: matrix.dim(),
            });
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol::HERMITICITY {
            return Err(LinalgError::NotHermitian { defect });
        }
        Ok(Self::symmetrized(matrix, subsystem_dims.to_vec()))
    }

    /// Internal constructor for results that are Hermitian by construction;
    /// symmetrizes away roundoff without the strict defect gate.
    pub(crate) fn symmetrized(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Self {
        debug_assert!(
            matrix.hermiticity_defect() <= 1e-9,
            "internal operator has a large Hermiticity defect"
        );
        let half = Complex64::new(0.5, 0.0);
        let sym = matrix.add(&matrix.adjoint()).scale(half);
        Self {
            matrix: sym,
            subsystem_dims,
        }
    }

    pub fn identity(subsystem_dims: &[usize]) -> Self {
        let dim = subsystem_dims.iter().product();
        Self {
            matrix: ComplexMatrix::identity(dim),
            subsystem_dims: subsystem_dims.to_vec(),
        }
    }

    pub fn zero(subsystem_dims: &[usize]) -> Self {
        let dim = subsystem_dims.iter().product();
        Self {
            matrix: ComplexMatrix::zeros(dim),
            subsystem_dims: subsystem_dims.to_vec(),
        }
    }

    /// |ket⟩⟨ket| as an operator with the given factor structure.
    pub fn projector(ket: &[Complex64], subsystem_dims: &[usize]) -> Self {
        let dim: usize = subsystem_dims.iter().product();
        assert_eq!(ket.len(), dim, "projector ket has wrong dimension");
        Self::symmetrized(ComplexMatrix::outer(ket, ket), subsystem_dims.to_vec())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "operator add dimension mismatch");
        Self {
            matrix: self.matrix.add(&other.matrix),
            subsystem_dims: self.subsystem_dims.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "operator sub dimension mismatch");
        Self {
            matrix: self.matrix.sub(&other.matrix),
            subsystem_dims: self.subsystem_dims.clone(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            matrix: self.matrix.scale(Complex64::new(s, 0.0)),
            subsystem_dims: self.subsystem_dims.clone(),
        }
    }

    /// Trace, which is real for a Hermitian operator.
    pub fn trace(&self) -> f64 {
        let t = self.matrix.trace();
        debug_assert!(t.im.abs() <= 1e-10, "trace imaginary residue {}", t.im);
        t.re
    }

    /// Kronecker product; `self` occupies the leading factors of the result.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim(), other.dim());
        let mut m = ComplexMatrix::zeros(da * db);
        for ra in 0..da {
            for ca in 0..da {
                let a = self.matrix.get(ra, ca);
                if a == ZERO {
                    continue;
                }
                for rb in 0..db {
                    for cb in 0..db {
                        m.set(ra * db + rb, ca * db + cb, a * other.matrix.get(rb, cb));
                    }
                }
            }
        }
        let mut dims = self.subsystem_dims.clone();
        dims.extend_from_slice(&other.subsystem_dims);
        Self {
            matrix: m,
            subsystem_dims: dims,
        }
    }

    /// Traces out every subsystem not listed in `keep`, preserving the
    /// original ordering of the kept factors.
    ///
    /// # Panics
    /// If `keep` is empty, unsorted, or names an invalid subsystem — those
    /// are caller bugs, not data conditions.
    pub fn partial_trace(&self, keep: &[usize]) -> Self {
        let n_sub = self.subsystem_dims.len();
        assert!(!keep.is_empty(), "partial_trace: keep set is empty");
        assert!(
            keep.windows(2).all(|w| w[0] < w[1]),
            "partial_trace: keep set must be strictly increasing"
        );
        assert!(
            keep.iter().all(|&k| k < n_sub),
            "partial_trace: subsystem index out of range ({:?} with {} subsystems)",
            keep,
            n_sub
        );
        let kept_dims: Vec<usize> = keep.iter().map(|&k| self.subsystem_dims[k]).collect();
        let out = partial_trace_matrix(&self.matrix, &self.subsystem_dims, keep);
        Self::symmetrized(out, kept_dims)
    }

    /// Transposes the given subsystem, leaving the others untouched.
    ///
    /// # Panics
    /// If `subsystem` is out of range.
    pub fn partial_transpose(&self, subsystem: usize) -> Self {
        assert!(
            subsystem < self.subsystem_dims.len(),
            "partial_transpose: subsystem {} out of range ({} subsystems)",
            subsystem,
            self.subsystem_dims.len()
        );
        let dim = self.dim();
        let mut out = ComplexMatrix::zeros(dim);
        for r in 0..dim {
            let mut rd = self.digits(r);
            for c in 0..dim {
                let mut cd = self.digits(c);
                std::mem::swap(&mut rd[subsystem], &mut cd[subsystem]);
                let rs = compose_all(&rd, &self.subsystem_dims);
                let cs = compose_all(&cd, &self.subsystem_dims);
                out.set(rs, cs, self.matrix.get(r, c));
                std::mem::swap(&mut rd[subsystem], &mut cd[subsystem]);
            }
        }
        Self {
            matrix: out,
            subsystem_dims: self.subsystem_dims.clone(),
        }
    }

    /// Reorders tensor factors so that new factor `p` is old factor `perm[p]`.
    pub fn permute_subsystems(&self, perm: &[usize]) -> Self {
        let n_sub = self.subsystem_dims.len();
        assert_eq!(perm.len(), n_sub, "permutation length mismatch");
        let mut seen = vec![false; n_sub];
        for &p in perm {
            assert!(p < n_sub && !seen[p], "invalid subsystem permutation {perm:?}");
            seen[p] = true;
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.subsystem_dims[p]).collect();
        let dim = self.dim();
        let mut out = ComplexMatrix::zeros(dim);
        for r in 0..dim {
            let rd = self.digits(r);
            let rn: Vec<usize> = perm.iter().map(|&p| rd[p]).collect();
            for c in 0..dim {
                let cd = self.digits(c);
                let cn: Vec<usize> = perm.iter().map(|&p| cd[p]).collect();
                out.set(
                    compose_all(&rn, &new_dims),
                    compose_all(&cn, &new_dims),
                    self.matrix.get(r, c),
                );
            }
        }
        Self {
            matrix: out,
            subsystem_dims: new_dims,
        }
    }

    /// Full eigendecomposition by cyclic Jacobi rotations.
    pub fn eig(&self) -> Result<Spectrum, LinalgError> {
        let n = self.dim();
        let mut a = self.matrix.clone();
        let mut v = ComplexMatrix::identity(n);
        let scale = self.matrix.frobenius_norm().max(1.0);
        let threshold = JACOBI_THRESHOLD * scale;

        let mut sweeps = 0;
        loop {
            let off = off_diagonal_norm(&a);
            if off <= threshold {
                break;
            }
            if sweeps >= JACOBI_MAX_SWEEPS {
                return Err(LinalgError::ConvergenceFailure {
                    off_norm: off,
                    sweeps,
                });
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q, threshold / (n as f64));
                }
            }
            sweeps += 1;
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
        let mut vecs = ComplexMatrix::zeros(n);
        for (new_col, &old_col) in order.iter().enumerate() {
            // Phase convention: first component above threshold made real positive.
            let phase = (0..n)
                .map(|r| v.get(r, old_col))
                .find(|z| z.norm() > 1e-9)
                .map(|z| z.conj() / z.norm())
                .unwrap_or(ONE);
            for r in 0..n {
                vecs.set(r, new_col, v.get(r, old_col) * phase);
            }
        }
        Ok(Spectrum {
            eigenvalues,
            eigenvectors: vecs,
        })
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eig()
            .expect("eigensolver failed on a well-formed Hermitian operator")
            .eigenvalues[0]
    }

    /// True when every eigenvalue is ≥ −tol.
    pub fn is_psd(&self, tol: f64) -> bool {
        assert!(tol >= 0.0, "PSD tolerance must be nonnegative");
        self.min_eigenvalue() >= -tol
    }

    /// Hilbert–Schmidt inner product Tr[self · other], real for Hermitian
    /// arguments.
    ///
    /// # Panics
    /// On dimension mismatch.
    pub fn hs_inner(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "hs_inner dimension mismatch");
        let n = self.dim();
        let mut acc = ZERO;
        for r in 0..n {
            for c in 0..n {
                acc += self.matrix.get(r, c) * other.matrix.get(c, r);
            }
        }
        debug_assert!(
            acc.im.abs() <= 1e-12 * (1.0 + acc.re.abs()),
            "hs_inner imaginary residue {}",
            acc.im
        );
        acc.re
    }

    fn digits(&self, index: usize) -> Vec<usize> {
        digits_of(index, &self.subsystem_dims)
    }
}

/// Eigendecomposition of a Hermitian operator: real eigenvalues ascending,
/// orthonormal eigenvectors as matching columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.eigenvectors.dim())
            .map(|r| self.eigenvectors.get(r, k))
            .collect()
    }

    /// Max-norm error of V diag(λ) V† against `op`.
    pub fn reconstruction_error(&self, op: &HermitianOperator) -> f64 {
        let n = self.eigenvectors.dim();
        let mut recon = ComplexMatrix::zeros(n);
        for k in 0..n {
            let lambda = self.eigenvalues[k];
            for r in 0..n {
                for c in 0..n {
                    let v = recon.get(r, c)
                        + self.eigenvectors.get(r, k)
                            * self.eigenvectors.get(c, k).conj()
                            * lambda;
                    recon.set(r, c, v);
                }
            }
        }
        recon.sub(op.matrix()).max_norm()
    }

    /// Max-norm defect of V†V against the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let v = &self.eigenvectors;
        let n = v.dim();
        let mut defect: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut dot = ZERO;
                for r in 0..n {
                    dot += v.get(r, i).conj() * v.get(r, j);
                }
                let expect = if i == j { ONE } else { ZERO };
                defect = defect.max((dot - expect).norm());
            }
        }
        defect
    }
}

/// Partial trace over every tensor factor not in `keep`, on a raw matrix
/// with the given factor structure. `keep` must be strictly increasing.
/// The result keeps the original ordering of the retained factors.
pub fn partial_trace_matrix(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> ComplexMatrix {
    let n_sub = dims.len();
    let full_dim: usize = dims.iter().product();
    assert_eq!(m.dim(), full_dim, "matrix dimension does not match factors");
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let mut out = ComplexMatrix::zeros(out_dim);
    for r in 0..full_dim {
        let rd = digits_of(r, dims);
        for c in 0..full_dim {
            let cd = digits_of(c, dims);
            // Contributes only when the traced digits agree.
            if (0..n_sub).any(|i| !keep.contains(&i) && rd[i] != cd[i]) {
                continue;
            }
            let ro = compose(&rd, keep, &kept_dims);
            let co = compose(&cd, keep, &kept_dims);
            let v = out.get(ro, co) + m.get(r, c);
            out.set(ro, co, v);
        }
    }
    out
}

fn digits_of(index: usize, dims: &[usize]) -> Vec<usize> {
    let mut rem = index;
    let mut out = vec![0; dims.len()];
    for (i, &d) in dims.iter().enumerate().rev() {
        out[i] = rem % d;
        rem /= d;
    }
    out
}

fn compose_all(digits: &[usize], dims: &[usize]) -> usize {
    digits
        .iter()
        .zip(dims)
        .fold(0, |acc, (&digit, &dim)| acc * dim + digit)
}

fn compose(digits: &[usize], keep: &[usize], kept_dims: &[usize]) -> usize {
    keep.iter()
        .zip(kept_dims)
        .fold(0, |acc, (&k, &dim)| acc * dim + digits[k])
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a.get(r, c).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation zeroing A[p][q], accumulating into `v`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, skip: f64) {
    let g = a.get(p, q);
    let mag = g.norm();
    if mag <= skip {
        return;
    }
    // Absorb the phase so the (p,q) block becomes real, then rotate.
    let w = g.conj() / mag;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let zeta = (aqq - app) / (2.0 * mag);
    let t = if zeta == 0.0 {
        1.0
    } else {
        zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let cs = Complex64::new(c, 0.0);
    let sw = w * s;

    let n = a.dim();
    // Column update A·J, J columns: (c·e_p − s·w·e_q, s·e_p + c·w·e_q).
    for r in 0..n {
        let arp = a.get(r, p);
        let arq = a.get(r, q);
        a.set(r, p, arp * cs - arq * sw);
        a.set(r, q, arp * s + arq * (w * c));
    }
    // Row update J†·A.
    for col in 0..n {
        let apc = a.get(p, col);
        let aqc = a.get(q, col);
        a.set(p, col, apc * cs - aqc * sw.conj());
        a.set(q, col, apc * s + aqc * (w.conj() * c));
    }
    // Clean the roundoff remainder exactly.
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);
    let app_new = a.get(p, p);
    let aqq_new = a.get(q, q);
    a.set(p, p, Complex64::new(app_new.re, 0.0));
    a.set(q, q, Complex64::new(aqq_new.re, 0.0));

    for r in 0..n {
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, vrp * cs - vrq * sw);
        v.set(r, q, vrp * s + vrq * (w * c));
    }
}

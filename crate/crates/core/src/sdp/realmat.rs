//! Dense real square matrices sized for the embedded SDP blocks (≤ 32).

/// Row-major dense real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn scaled_identity(dim: usize, s: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, s);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.dim + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.dim + c] += v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn scale_in_place(&mut self, s: f64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: f64) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[r * n..(r + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    /// Entrywise inner product; equals Tr[A·B] when either factor is
    /// symmetric.
    pub fn sym_inner(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Lower-triangular Cholesky factor; `None` if a pivot drops below
    /// `min_pivot`.
    pub fn cholesky(&self, min_pivot: f64) -> Option<RealMatrix> {
        let n = self.dim;
        let mut g = RealMatrix::zeros(n);
        for r in 0..n {
            for c in 0..=r {
                let mut sum = self.get(r, c);
                for k in 0..c {
                    sum -= g.get(r, k) * g.get(c, k);
                }
                if r == c {
                    if sum <= min_pivot {
                        return None;
                    }
                    g.set(r, r, sum.sqrt());
                } else {
                    g.set(r, c, sum / g.get(c, c));
                }
            }
        }
        Some(g)
    }

    /// Solves G·x = b in place for lower-triangular `self`.
    pub fn forward_solve_vec(&self, b: &mut [f64]) {
        let n = self.dim;
        for r in 0..n {
            let mut sum = b[r];
            for k in 0..r {
                sum -= self.get(r, k) * b[k];
            }
            b[r] = sum / self.get(r, r);
        }
    }

    /// Solves Gᵀ·x = b in place for lower-triangular `self`.
    pub fn backward_solve_vec(&self, b: &mut [f64]) {
        let n = self.dim;
        for r in (0..n).rev() {
            let mut sum = b[r];
            for k in (r + 1)..n {
                sum -= self.get(k, r) * b[k];
            }
            b[r] = sum / self.get(r, r);
        }
    }

    /// G⁻¹ · M · G⁻ᵀ for lower-triangular `self`; `M` must be symmetric.
    pub fn congruence_inverse(&self, m: &RealMatrix) -> RealMatrix {
        let n = self.dim;
        // Z = G⁻¹ M, column by column.
        let mut z = RealMatrix::zeros(n);
        let mut col = vec![0.0; n];
        for c in 0..n {
            for r in 0..n {
                col[r] = m.get(r, c);
            }
            self.forward_solve_vec(&mut col);
            for r in 0..n {
                z.set(r, c, col[r]);
            }
        }
        // K = Z G⁻ᵀ, i.e. Kᵀ = G⁻¹ Zᵀ.
        let mut k = RealMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                col[c] = z.get(r, c);
            }
            self.forward_solve_vec(&mut col);
            for c in 0..n {
                k.set(c, r, col[c]);
            }
        }
        // Symmetrize away the roundoff skew.
        for r in 0..n {
            for c in (r + 1)..n {
                let avg = 0.5 * (k.get(r, c) + k.get(c, r));
                k.set(r, c, avg);
                k.set(c, r, avg);
            }
        }
        k
    }

    /// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
    /// Returns eigenvalues ascending and eigenvector columns.
    pub fn sym_eig(&self) -> (Vec<f64>, RealMatrix) {
        let n = self.dim;
        let mut a = self.clone();
        let mut v = RealMatrix::identity(n);
        let scale = self
            .data
            .iter()
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
            .max(1.0);
        let threshold = 1e-14 * scale;
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += 2.0 * a.get(p, q) * a.get(p, q);
                }
            }
            if off.sqrt() <= threshold {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    if apq.abs() <= threshold / (n as f64) {
                        continue;
                    }
                    let zeta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                    let t = if zeta == 0.0 {
                        1.0
                    } else {
                        zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    for r in 0..n {
                        let arp = a.get(r, p);
                        let arq = a.get(r, q);
                        a.set(r, p, c * arp - s * arq);
                        a.set(r, q, s * arp + c * arq);
                    }
                    for col in 0..n {
                        let apc = a.get(p, col);
                        let aqc = a.get(q, col);
                        a.set(p, col, c * apc - s * aqc);
                        a.set(q, col, s * apc + c * aqc);
                    }
                    a.set(p, q, 0.0);
                    a.set(q, p, 0.0);
                    for r in 0..n {
                        let vrp = v.get(r, p);
                        let vrq = v.get(r, q);
                        v.set(r, p, c * vrp - s * vrq);
                        v.set(r, q, s * vrp + c * vrq);
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
        let mut vecs = RealMatrix::zeros(n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                vecs.set(r, new_col, v.get(r, old_col));
            }
        }
        (eigenvalues, vecs)
    }

    /// Smallest eigenvalue of a symmetric matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        self.sym_eig().0[0]
    }

    /// Rebuilds V·diag(f(λ))·Vᵀ from an eigendecomposition.
    pub fn from_eig(eigenvalues: &[f64], vectors: &RealMatrix, f: impl Fn(f64) -> f64) -> Self {
        let n = vectors.dim();
        let mut out = RealMatrix::zeros(n);
        for k in 0..n {
            let w = f(eigenvalues[k]);
            if w == 0.0 {
                continue;
            }
            for r in 0..n {
                let vr = vectors.get(r, k) * w;
                if vr == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.add_to(r, c, vr * vectors.get(c, k));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_and_solves_roundtrip() {
        let mut a = RealMatrix::zeros(3);
        let entries = [[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 2.0]];
        for r in 0..3 {
            for c in 0..3 {
                a.set(r, c, entries[r][c]);
            }
        }
        let g = a.cholesky(0.0).unwrap();
        let mut b = vec![1.0, 2.0, 3.0];
        let x0 = b.clone();
        g.forward_solve_vec(&mut b);
        g.backward_solve_vec(&mut b);
        // A·x should reproduce the original right-hand side.
        for r in 0..3 {
            let ax: f64 = (0..3).map(|c| a.get(r, c) * b[c]).sum();
            assert!((ax - x0[r]).abs() < 1e-12);
        }
    }

    #[test]
    fn sym_eig_reconstructs() {
        let mut a = RealMatrix::zeros(4);
        let vals = [[2.0, -1.0, 0.0, 0.3], [-1.0, 2.0, -1.0, 0.0], [0.0, -1.0, 2.0, -1.0], [0.3, 0.0, -1.0, 2.0]];
        for r in 0..4 {
            for c in 0..4 {
                a.set(r, c, vals[r][c]);
            }
        }
        let (eigs, v) = a.sym_eig();
        assert!(eigs.windows(2).all(|w| w[0] <= w[1]));
        let recon = RealMatrix::from_eig(&eigs, &v, |x| x);
        let mut diff = recon;
        diff.add_scaled(&a, -1.0);
        assert!(diff.max_norm() < 1e-12);
    }

    #[test]
    fn congruence_inverse_matches_direct() {
        let mut x = RealMatrix::identity(3);
        x.set(0, 1, 0.4);
        x.set(1, 0, 0.4);
        x.set(2, 2, 3.0);
        let g = x.cholesky(0.0).unwrap();
        let mut m = RealMatrix::identity(3);
        m.set(0, 2, -0.7);
        m.set(2, 0, -0.7);
        let k = g.congruence_inverse(&m);
        // G K Gᵀ should equal M.
        let mut gt = RealMatrix::zeros(3);
        for r in 0..3 {
            for c in 0..3 {
                gt.set(r, c, g.get(c, r));
            }
        }
        let back = g.mul(&k).mul(&gt);
        let mut diff = back;
        diff.add_scaled(&m, -1.0);
        assert!(diff.max_norm() < 1e-12);
    }
}

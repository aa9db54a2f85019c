//! Infeasible primal-dual interior-point solver with Nesterov–Todd scaling.
//!
//! The complex Hermitian problem is embedded into real symmetric blocks
//! (see [`super::embed`]), dependent equality rows are removed by an
//! incremental Cholesky rank filter — which doubles as the detector for
//! contradictory equalities — and the reduced system is driven down the
//! central path with a Mehrotra-style adaptive centering parameter and a
//! 0.98 fraction-to-boundary step rule.

use super::embed::{real_embedding, unembed};
use super::realmat::RealMatrix;
use super::{
    InfeasibilityCertificate, Residuals, SdpError, SdpProblem, SdpSolution, SolveOptions,
    SolveStatus,
};

/// Relative squared-residual threshold below which an equality row counts as
/// linearly dependent on the rows kept so far.
const RANK_TOL: f64 = 1e-10;

struct SparseCoeff {
    block: usize,
    triplets: Vec<(usize, usize, f64)>,
}

struct EmbRow {
    coeffs: Vec<SparseCoeff>,
    rhs: f64,
}

fn embed_triplets(op: &crate::linalg::HermitianOperator) -> Vec<(usize, usize, f64)> {
    let n = op.dim();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let z = op.matrix().get(r, c);
            if z.re != 0.0 {
                out.push((r, c, z.re));
                out.push((r + n, c + n, z.re));
            }
            if z.im != 0.0 {
                out.push((r, c + n, -z.im));
                out.push((r + n, c, z.im));
            }
        }
    }
    out
}

fn row_inner(a: &EmbRow, b: &EmbRow, dims: &[usize]) -> f64 {
    let _ = dims;
    let mut acc = 0.0;
    for ca in &a.coeffs {
        for cb in &b.coeffs {
            if ca.block != cb.block {
                continue;
            }
            // Triplet lists are tiny; quadratic matching is fine for the
            // sparse rows and the dense ones amortize over the solve.
            if ca.triplets.len() * cb.triplets.len() <= 4096 {
                for &(r1, c1, v1) in &ca.triplets {
                    for &(r2, c2, v2) in &cb.triplets {
                        if r1 == r2 && c1 == c2 {
                            acc += v1 * v2;
                        }
                    }
                }
            } else {
                let n = dims[ca.block];
                let mut dense = RealMatrix::zeros(n);
                for &(r, c, v) in &ca.triplets {
                    dense.add_to(r, c, v);
                }
                for &(r, c, v) in &cb.triplets {
                    acc += v * dense.get(r, c);
                }
            }
        }
    }
    acc
}

/// Tr[A_row · X] over all blocks; X blocks are symmetric.
fn row_apply(row: &EmbRow, x: &[RealMatrix]) -> f64 {
    row.coeffs
        .iter()
        .map(|c| {
            c.triplets
                .iter()
                .map(|&(r, cc, v)| v * x[c.block].get(cc, r))
                .sum::<f64>()
        })
        .sum()
}

/// W · A_row · W per touched block, exploiting coefficient sparsity.
fn sandwich(row_coeff: &SparseCoeff, w: &RealMatrix) -> RealMatrix {
    let n = w.dim();
    if row_coeff.triplets.len() > 2 * n {
        let mut dense = RealMatrix::zeros(n);
        for &(r, c, v) in &row_coeff.triplets {
            dense.add_to(r, c, v);
        }
        return w.mul(&dense).mul(w);
    }
    let mut out = RealMatrix::zeros(n);
    for &(r, c, v) in &row_coeff.triplets {
        for i in 0..n {
            let wir = v * w.get(i, r);
            if wir == 0.0 {
                continue;
            }
            for j in 0..n {
                out.add_to(i, j, wir * w.get(c, j));
            }
        }
    }
    out
}

fn sparse_dot_dense(coeff: &SparseCoeff, dense: &RealMatrix) -> f64 {
    coeff
        .triplets
        .iter()
        .map(|&(r, c, v)| v * dense.get(c, r))
        .sum()
}

struct Reduction {
    kept: Vec<usize>,
    infeasible: Option<InfeasibilityCertificate>,
}

/// Incremental Cholesky of the row Gram matrix. Dependent rows with a
/// consistent right-hand side are dropped; an inconsistent one yields a
/// Farkas-style certificate.
fn reduce_rows(rows: &[EmbRow], dims: &[usize]) -> Reduction {
    let rhs_scale = rows.iter().fold(0.0f64, |m, r| m.max(r.rhs.abs()));
    let consistency_tol = 1e-9 * (1.0 + rhs_scale);
    let mut kept: Vec<usize> = Vec::new();
    let mut lrows: Vec<Vec<f64>> = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut w: Vec<f64> = kept
            .iter()
            .map(|&k| row_inner(row, &rows[k], dims))
            .collect();
        for i in 0..w.len() {
            let mut s = w[i];
            for j in 0..i {
                s -= lrows[i][j] * w[j];
            }
            w[i] = s / lrows[i][i];
        }
        let self_dot = row_inner(row, row, dims);
        let resid2 = self_dot - w.iter().map(|x| x * x).sum::<f64>();
        if resid2 > RANK_TOL * self_dot.max(f64::MIN_POSITIVE) {
            let mut lrow = w;
            lrow.push(resid2.sqrt());
            lrows.push(lrow);
            kept.push(r);
        } else {
            let mut lambda = w;
            for i in (0..lambda.len()).rev() {
                let mut s = lambda[i];
                for j in (i + 1)..lambda.len() {
                    s -= lrows[j][i] * lambda[j];
                }
                lambda[i] = s / lrows[i][i];
            }
            let predicted: f64 = lambda.iter().zip(&kept).map(|(l, &k)| l * rows[k].rhs).sum();
            let mismatch = row.rhs - predicted;
            if mismatch.abs() > consistency_tol {
                let combination = kept
                    .iter()
                    .zip(&lambda)
                    .filter(|(_, l)| l.abs() > 1e-12)
                    .map(|(&k, &l)| (k, l))
                    .collect();
                return Reduction {
                    kept,
                    infeasible: Some(InfeasibilityCertificate {
                        row: r,
                        combination,
                        // Back to problem units (embedded rhs is doubled).
                        mismatch: mismatch / 2.0,
                    }),
                };
            }
        }
    }
    Reduction {
        kept,
        infeasible: None,
    }
}

struct Scaling {
    /// NT scaling point per block (W S W = X).
    w: Vec<RealMatrix>,
    /// Cholesky factor of X per block.
    gx: Vec<RealMatrix>,
    /// Cholesky factor of S per block.
    gs: Vec<RealMatrix>,
    /// S⁻¹ per block.
    s_inv: Vec<RealMatrix>,
}

fn nt_scaling(x: &[RealMatrix], s: &[RealMatrix]) -> Option<Scaling> {
    let mut w = Vec::with_capacity(x.len());
    let mut gx_all = Vec::with_capacity(x.len());
    let mut gs_all = Vec::with_capacity(x.len());
    let mut s_inv = Vec::with_capacity(x.len());
    for (xb, sb) in x.iter().zip(s) {
        let gx = xb.cholesky(0.0)?;
        let gs = sb.cholesky(0.0)?;
        // M = Gxᵀ S Gx, eig M = U D Uᵀ, W = Gx U D^{-1/2} Uᵀ Gxᵀ.
        let n = xb.dim();
        let mut gxt = RealMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                gxt.set(r, c, gx.get(c, r));
            }
        }
        let m = gxt.mul(sb).mul(&gx);
        let (d, u) = m.sym_eig();
        if d[0] <= 0.0 {
            return None;
        }
        let t = gx.mul(&u);
        let mut wb = RealMatrix::zeros(n);
        for k in 0..n {
            let scale = 1.0 / d[k].sqrt();
            for r in 0..n {
                let tr = t.get(r, k) * scale;
                if tr == 0.0 {
                    continue;
                }
                for c in 0..n {
                    wb.add_to(r, c, tr * t.get(c, k));
                }
            }
        }
        // S⁻¹ from the Cholesky factor of S.
        let mut sinv = RealMatrix::zeros(n);
        let mut col = vec![0.0; n];
        for c in 0..n {
            col.iter_mut().for_each(|v| *v = 0.0);
            col[c] = 1.0;
            gs.forward_solve_vec(&mut col);
            gs.backward_solve_vec(&mut col);
            for r in 0..n {
                sinv.set(r, c, col[r]);
            }
        }
        w.push(wb);
        gx_all.push(gx);
        gs_all.push(gs);
        s_inv.push(sinv);
    }
    Some(Scaling {
        w,
        gx: gx_all,
        gs: gs_all,
        s_inv,
    })
}

/// Largest α with M + α·ΔM ⪰ 0, given the Cholesky factor of M.
fn step_to_boundary(chol: &[RealMatrix], delta: &[RealMatrix]) -> f64 {
    let mut alpha = f64::INFINITY;
    for (g, d) in chol.iter().zip(delta) {
        let k = g.congruence_inverse(d);
        let lambda_min = k.min_eigenvalue();
        if lambda_min < 0.0 {
            alpha = alpha.min(-1.0 / lambda_min);
        }
    }
    alpha
}

/// Solves the block-PSD maximization. Returns `Optimal` when the duality
/// gap and scaled residuals pass the tolerances in `opts`, `Infeasible`
/// with a certificate when the equality rows contradict each other, and
/// `MaxIterations` with the best iterate otherwise.
pub fn solve(problem: &SdpProblem, opts: &SolveOptions) -> Result<SdpSolution, SdpError> {
    problem.validate()?;

    let dims: Vec<usize> = problem.blocks.iter().map(|b| 2 * b.dim).collect();
    let n_blocks = dims.len();
    let total_dim: f64 = dims.iter().map(|&d| d as f64).sum();

    // Embedded objective, dense per block.
    let mut obj: Vec<RealMatrix> = dims.iter().map(|&d| RealMatrix::zeros(d)).collect();
    for coeff in &problem.objective {
        obj[coeff.block].add_scaled(&real_embedding(&coeff.op), 1.0);
    }

    // Embedded constraint rows (rhs doubles with the inner product).
    let rows: Vec<EmbRow> = problem
        .constraints
        .iter()
        .map(|c| EmbRow {
            coeffs: c
                .coeffs
                .iter()
                .map(|bc| SparseCoeff {
                    block: bc.block,
                    triplets: embed_triplets(&bc.op),
                })
                .collect(),
            rhs: 2.0 * c.rhs,
        })
        .collect();

    let zero_solution = |status: SolveStatus, infeasibility| SdpSolution {
        status,
        block_values: problem
            .blocks
            .iter()
            .map(|b| {
                crate::linalg::HermitianOperator::zero(&infer_subsystem_dims(problem, b.dim))
            })
            .collect(),
        dual_multipliers: vec![0.0; problem.constraints.len()],
        primal_objective: 0.0,
        dual_objective: 0.0,
        gap: f64::INFINITY,
        iterations: 0,
        residuals: Residuals::default(),
        infeasibility,
    };

    let reduction = reduce_rows(&rows, &dims);
    if let Some(cert) = reduction.infeasible {
        return Ok(zero_solution(SolveStatus::Infeasible, Some(cert)));
    }
    let kept = reduction.kept;
    let m = kept.len();
    if m == 0 {
        return Err(SdpError::MalformedProblem {
            reason: "no independent equality constraints".into(),
        });
    }

    // Rows of `kept` touching each block, as indices into `kept`.
    let mut rows_by_block: Vec<Vec<usize>> = vec![Vec::new(); n_blocks];
    for (ki, &r) in kept.iter().enumerate() {
        for c in &rows[r].coeffs {
            rows_by_block[c.block].push(ki);
        }
    }

    let b_vec: Vec<f64> = kept.iter().map(|&r| rows[r].rhs).collect();
    let b_scale = 1.0 + b_vec.iter().fold(0.0f64, |mx, v| mx.max(v.abs()));
    let c_scale = 1.0 + obj.iter().map(|o| o.max_norm()).fold(0.0, f64::max);

    // Identity-multiple start scaled to the data.
    let tau_p = b_scale.max(1.0);
    let tau_d = c_scale.max(1.0);
    let mut x: Vec<RealMatrix> = dims
        .iter()
        .map(|&d| RealMatrix::scaled_identity(d, tau_p))
        .collect();
    let mut s: Vec<RealMatrix> = dims
        .iter()
        .map(|&d| RealMatrix::scaled_identity(d, tau_d))
        .collect();
    let mut y = vec![0.0; m];

    let mut status = SolveStatus::MaxIterations;
    let mut iterations = 0;
    let mut primal_res = f64::INFINITY;
    let mut dual_res = f64::INFINITY;
    let mut gap = f64::INFINITY;

    for iter in 0..opts.max_iter {
        iterations = iter;

        // Residuals.
        let rp: Vec<f64> = kept
            .iter()
            .zip(&b_vec)
            .map(|(&r, &b)| b - row_apply(&rows[r], &x))
            .collect();
        primal_res = rp.iter().fold(0.0f64, |mx, v| mx.max(v.abs())) / b_scale;

        // Rd = C + S − A*(y).
        let mut rd: Vec<RealMatrix> = obj.iter().zip(&s).map(|(c, sb)| {
            let mut m = c.clone();
            m.add_scaled(sb, 1.0);
            m
        }).collect();
        for (ki, &r) in kept.iter().enumerate() {
            for c in &rows[r].coeffs {
                for &(rr, cc, v) in &c.triplets {
                    rd[c.block].add_to(rr, cc, -v * y[ki]);
                }
            }
        }
        dual_res = rd.iter().map(|m| m.max_norm()).fold(0.0, f64::max) / c_scale;

        let pobj: f64 = obj.iter().zip(&x).map(|(c, xb)| c.sym_inner(xb)).sum::<f64>() / 2.0;
        let dobj: f64 = y.iter().zip(&b_vec).map(|(yi, bi)| yi * bi).sum::<f64>() / 2.0;
        gap = (dobj - pobj).abs();

        if primal_res <= opts.feas_tol && dual_res <= opts.feas_tol && gap <= opts.gap_tol {
            status = SolveStatus::Optimal;
            break;
        }

        let mu: f64 = x.iter().zip(&s).map(|(xb, sb)| xb.sym_inner(sb)).sum::<f64>() / total_dim;

        let scaling = match nt_scaling(&x, &s) {
            Some(sc) => sc,
            None => break,
        };

        // Schur complement H_ij = Σ_b ⟨A_i, W A_j W⟩ over kept rows.
        let mut h = RealMatrix::zeros(m);
        for kj in 0..m {
            let row_j = &rows[kept[kj]];
            for cj in &row_j.coeffs {
                let t = sandwich(cj, &scaling.w[cj.block]);
                for &ki in &rows_by_block[cj.block] {
                    if ki > kj {
                        continue;
                    }
                    let row_i = &rows[kept[ki]];
                    let mut acc = 0.0;
                    for ci in &row_i.coeffs {
                        if ci.block == cj.block {
                            acc += sparse_dot_dense(ci, &t);
                        }
                    }
                    h.add_to(ki, kj, acc);
                }
            }
        }
        for r in 0..m {
            for c in (r + 1)..m {
                let v = h.get(r, c);
                h.set(c, r, v);
            }
        }
        let reg = 1e-13 * (1.0 + h.trace() / m as f64);
        for i in 0..m {
            h.add_to(i, i, reg);
        }
        let h_chol = match h.cholesky(0.0) {
            Some(g) => g,
            None => break,
        };

        // W Rd W per block, shared by predictor and corrector.
        let wrdw: Vec<RealMatrix> = rd
            .iter()
            .zip(&scaling.w)
            .map(|(rdb, wb)| wb.mul(rdb).mul(wb))
            .collect();

        let solve_direction = |sigma_mu: f64| -> (Vec<f64>, Vec<RealMatrix>, Vec<RealMatrix>) {
            // H Δy = A(σμ S⁻¹ + W Rd W) − b.
            let mut rhs: Vec<f64> = Vec::with_capacity(m);
            for (ki, &r) in kept.iter().enumerate() {
                let mut acc = -b_vec[ki];
                for c in &rows[r].coeffs {
                    let mut p = wrdw[c.block].clone();
                    if sigma_mu != 0.0 {
                        p.add_scaled(&scaling.s_inv[c.block], sigma_mu);
                    }
                    acc += sparse_dot_dense(c, &p);
                }
                rhs.push(acc);
            }
            let mut dy = rhs;
            h_chol.forward_solve_vec(&mut dy);
            h_chol.backward_solve_vec(&mut dy);

            // ΔS = A*(Δy) − Rd.
            let mut ds: Vec<RealMatrix> = rd.iter().map(|m| {
                let mut n = m.clone();
                n.scale_in_place(-1.0);
                n
            }).collect();
            for (ki, &r) in kept.iter().enumerate() {
                for c in &rows[r].coeffs {
                    for &(rr, cc, v) in &c.triplets {
                        ds[c.block].add_to(rr, cc, v * dy[ki]);
                    }
                }
            }
            // ΔX = σμ S⁻¹ − X − W ΔS W.
            let dx: Vec<RealMatrix> = (0..n_blocks)
                .map(|b| {
                    let mut m = scaling.w[b].mul(&ds[b]).mul(&scaling.w[b]);
                    m.scale_in_place(-1.0);
                    m.add_scaled(&x[b], -1.0);
                    if sigma_mu != 0.0 {
                        m.add_scaled(&scaling.s_inv[b], sigma_mu);
                    }
                    m
                })
                .collect();
            (dy, dx, ds)
        };

        // Predictor probes the affine direction to pick the centering weight.
        let (_dy_aff, dx_aff, ds_aff) = solve_direction(0.0);
        let ap_aff = step_to_boundary(&scaling.gx, &dx_aff).min(1.0);
        let ad_aff = step_to_boundary(&scaling.gs, &ds_aff).min(1.0);
        let mut mu_aff = 0.0;
        for b in 0..n_blocks {
            let mut xn = x[b].clone();
            xn.add_scaled(&dx_aff[b], ap_aff);
            let mut sn = s[b].clone();
            sn.add_scaled(&ds_aff[b], ad_aff);
            mu_aff += xn.sym_inner(&sn);
        }
        mu_aff = (mu_aff / total_dim).max(0.0);
        let sigma = ((mu_aff / mu).powi(3)).clamp(1e-10, 1.0);

        let (dy, dx, ds) = solve_direction(sigma * mu);
        let ap = (0.98 * step_to_boundary(&scaling.gx, &dx)).min(1.0);
        let ad = (0.98 * step_to_boundary(&scaling.gs, &ds)).min(1.0);

        for b in 0..n_blocks {
            x[b].add_scaled(&dx[b], ap);
            s[b].add_scaled(&ds[b], ad);
        }
        for (yi, di) in y.iter_mut().zip(&dy) {
            *yi += ad * di;
        }
    }

    // Map back to complex units.
    let pobj: f64 = obj.iter().zip(&x).map(|(c, xb)| c.sym_inner(xb)).sum::<f64>() / 2.0;
    let dobj: f64 = y.iter().zip(&b_vec).map(|(yi, bi)| yi * bi).sum::<f64>() / 2.0;
    let min_block_eigenvalue = x
        .iter()
        .map(|xb| xb.min_eigenvalue())
        .fold(f64::INFINITY, f64::min);

    let mut dual_multipliers = vec![0.0; problem.constraints.len()];
    for (ki, &r) in kept.iter().enumerate() {
        dual_multipliers[r] = y[ki];
    }

    let block_values: Vec<_> = problem
        .blocks
        .iter()
        .zip(&x)
        .map(|(spec, xb)| unembed(xb, &infer_subsystem_dims(problem, spec.dim)))
        .collect();

    Ok(SdpSolution {
        status,
        block_values,
        dual_multipliers,
        primal_objective: pobj,
        dual_objective: dobj,
        gap,
        iterations,
        residuals: Residuals {
            primal: primal_res,
            dual: dual_res,
            min_block_eigenvalue,
        },
        infeasibility: None,
    })
}

/// Subsystem structure for reporting block values: qubit factors when the
/// dimension is a power of two, a single factor otherwise.
fn infer_subsystem_dims(_problem: &SdpProblem, dim: usize) -> Vec<usize> {
    if dim.is_power_of_two() && dim > 1 {
        vec![2; dim.trailing_zeros() as usize]
    } else {
        vec![dim]
    }
}

#[cfg(test)]
mod tests {
    use super::super::{
        build_general, build_ppt, closed_form_general, closed_form_ppt, BlockCoeff, BlockSpec,
        Constraint, Direction, ProblemFamily, SolveOptions,
    };
    use super::*;
    use crate::inputs::{build_pair, EncodingScheme};
    use crate::linalg::{ComplexMatrix, HermitianOperator};
    use num_complex::Complex64;

    fn assert_bracketing(sol: &SdpSolution, opts: &SolveOptions) {
        assert!(
            sol.primal_objective <= sol.dual_objective + opts.gap_tol,
            "weak duality violated: {} > {}",
            sol.primal_objective,
            sol.dual_objective
        );
    }

    #[test]
    fn general_primal_reproduces_closed_form() {
        let pair = build_pair(EncodingScheme::PauliXY);
        let opts = SolveOptions::default();
        for gamma in [0.5, 0.9] {
            let problem = build_general(gamma, &pair, Direction::Primal).unwrap();
            let sol = solve(&problem, &opts).unwrap();
            assert_eq!(sol.status, SolveStatus::Optimal, "γ={gamma}: {sol:?}");
            let expect = gamma * gamma * closed_form_general(gamma).unwrap();
            assert!(
                (sol.primal_objective - expect).abs() < 1e-6,
                "γ={gamma}: {} vs {expect} ({} iterations)",
                sol.primal_objective,
                sol.iterations
            );
            assert_bracketing(&sol, &opts);
            assert!(sol.residuals.min_block_eigenvalue >= -opts.feas_tol);
            // Returned blocks satisfy the completeness rows.
            let sum = sol.block_values[0]
                .add(&sol.block_values[1])
                .add(&sol.block_values[2]);
            let defect = sum
                .sub(&HermitianOperator::identity(&[2, 2]))
                .matrix()
                .max_norm();
            assert!(defect < 1e-6);
        }
        // Spot value from the low branch: γ² (1 + 1/√2)/2 at γ = 0.5.
        let problem = build_general(0.5, &pair, Direction::Primal).unwrap();
        let sol = solve(&problem, &opts).unwrap();
        assert!((sol.primal_objective - 0.21338834764831843).abs() < 1e-7);
    }

    #[test]
    fn ppt_primal_is_gamma_independent() {
        let pair = build_pair(EncodingScheme::PauliXY);
        let opts = SolveOptions::default();
        let mut values = Vec::new();
        for gamma in [0.25, 1.0] {
            let problem = build_ppt(gamma, &pair, Direction::Primal).unwrap();
            let sol = solve(&problem, &opts).unwrap();
            assert_eq!(sol.status, SolveStatus::Optimal, "γ={gamma}");
            assert_bracketing(&sol, &opts);
            values.push(sol.primal_objective / (gamma * gamma));
        }
        for g in &values {
            assert!((g - closed_form_ppt()).abs() < 1e-6, "G={g}");
        }
    }

    #[test]
    fn dual_encodings_negate_the_printed_minimum() {
        let pair = build_pair(EncodingScheme::PauliXY);
        let opts = SolveOptions::default();
        let dual = build_general(0.5, &pair, Direction::Dual).unwrap();
        let sol = solve(&dual, &opts).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!(
            (-sol.primal_objective - 0.21338834764831843).abs() < 1e-6,
            "solved {} ({} iterations)",
            sol.primal_objective,
            sol.iterations
        );

        let dual_ppt = build_ppt(1.0, &pair, Direction::Dual).unwrap();
        let sol = solve(&dual_ppt, &opts).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((-sol.primal_objective - closed_form_ppt()).abs() < 1e-6);
    }

    #[test]
    fn contradictory_equalities_are_infeasible() {
        let mut diag = ComplexMatrix::zeros(2);
        diag.set(0, 0, Complex64::new(1.0, 0.0));
        let sel = HermitianOperator::new(diag, &[2]).unwrap();
        let problem = SdpProblem {
            spec_rev: crate::SCHEMA_REV.to_string(),
            family: ProblemFamily::GeneralPrimal,
            gamma: None,
            xi: None,
            blocks: vec![BlockSpec {
                name: "x".into(),
                dim: 2,
            }],
            objective: vec![BlockCoeff {
                block: 0,
                op: HermitianOperator::identity(&[2]),
            }],
            constraints: vec![
                Constraint {
                    coeffs: vec![BlockCoeff {
                        block: 0,
                        op: sel.clone(),
                    }],
                    rhs: 0.0,
                },
                Constraint {
                    coeffs: vec![BlockCoeff {
                        block: 0,
                        op: sel,
                    }],
                    rhs: 1.0,
                },
            ],
        };
        let sol = solve(&problem, &SolveOptions::default()).unwrap();
        assert_eq!(sol.status, SolveStatus::Infeasible);
        let cert = sol.infeasibility.unwrap();
        assert_eq!(cert.row, 1);
        assert!((cert.mismatch.abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dependent_but_consistent_rows_are_dropped() {
        // A tiny feasibility problem with a duplicated row: max Tr[X] is
        // unbounded, so pin the trace an extra (redundant) time.
        let mut diag = ComplexMatrix::zeros(2);
        diag.set(0, 0, Complex64::new(1.0, 0.0));
        diag.set(1, 1, Complex64::new(1.0, 0.0));
        let tr = HermitianOperator::new(diag, &[2]).unwrap();
        let problem = SdpProblem {
            spec_rev: crate::SCHEMA_REV.to_string(),
            family: ProblemFamily::GeneralPrimal,
            gamma: None,
            xi: None,
            blocks: vec![BlockSpec {
                name: "x".into(),
                dim: 2,
            }],
            objective: vec![BlockCoeff {
                block: 0,
                op: crate::inputs::pauli_x(),
            }],
            constraints: vec![
                Constraint {
                    coeffs: vec![BlockCoeff {
                        block: 0,
                        op: tr.clone(),
                    }],
                    rhs: 1.0,
                },
                Constraint {
                    coeffs: vec![BlockCoeff {
                        block: 0,
                        op: tr.scale(2.0),
                    }],
                    rhs: 2.0,
                },
            ],
        };
        let sol = solve(&problem, &SolveOptions::default()).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        // max Tr[X·σx] with Tr X = 1, X ⪰ 0 is 1/2·2 = 1 at X = |+⟩⟨+|.
        assert!((sol.primal_objective - 1.0).abs() < 1e-6);
        // The duplicated row carries no multiplier of its own.
        assert_eq!(sol.dual_multipliers[1], 0.0);
    }
}

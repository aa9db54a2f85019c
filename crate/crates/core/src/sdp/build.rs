//! Builders for the discrimination programs.
//!
//! Three families: general measurements (Theorem-1 style), PPT-constrained
//! measurements (Theorem-2 style), and the Werner-resource program on the
//! sixteen-dimensional A⊗A′⊗B⊗B′ space at fixed conclusive rate γ² = ¼.
//! Each primal maximizes ½Tr[ρ₀Π₀ + ρ₁Π₁]; the printed duals are encoded
//! as maximizations of the negated objective, so the printed minimum is the
//! negative of the solved value.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;

use super::{BlockCoeff, BlockSpec, Constraint, ProblemFamily, SdpError, SdpProblem};
use crate::inputs::{werner, DiscriminationPair, InputPair};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::SCHEMA_REV;

/// Which side of a program family a builder should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Primal,
    Dual,
}

fn check_gamma(gamma: f64) -> Result<(), SdpError> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(())
    } else {
        Err(SdpError::ParameterOutOfRange {
            name: "gamma",
            value: gamma,
            range: "(0, 1]",
        })
    }
}

/// Optimal guessing probability over unrestricted two-qubit measurements at
/// conclusive rate γ²: ½(1 + 1/(γ²·2√2)) above γ = 1/√2 and the constant
/// ½ + 1/(2√2) at or below it. Continuous at the breakpoint.
pub fn closed_form_general(gamma: f64) -> Result<f64, SdpError> {
    check_gamma(gamma)?;
    Ok(if gamma > FRAC_1_SQRT_2 {
        0.5 * (1.0 + 1.0 / (gamma * gamma * 2.0 * SQRT_2))
    } else {
        0.5 + 0.5 * FRAC_1_SQRT_2
    })
}

/// Optimal guessing probability over PPT (equivalently separable)
/// measurements: ½ + 1/(4√2), independent of the conclusive rate.
pub fn closed_form_ppt() -> f64 {
    0.5 + 0.25 * FRAC_1_SQRT_2
}

/// Entrywise equality selectors for a Hermitian matrix on the given factor
/// structure: ⟨selector, M⟩ extracts one real degree of freedom of M. The
/// returned triple (k, l, imag) names the entry and which part it reads.
fn entry_selectors(subsystem_dims: &[usize]) -> Vec<(HermitianOperator, usize, usize, bool)> {
    let dim: usize = subsystem_dims.iter().product();
    let mut out = Vec::with_capacity(dim * dim);
    for k in 0..dim {
        let mut m = ComplexMatrix::zeros(dim);
        m.set(k, k, Complex64::new(1.0, 0.0));
        out.push((
            HermitianOperator::new(m, subsystem_dims).expect("diagonal selector"),
            k,
            k,
            false,
        ));
    }
    for k in 0..dim {
        for l in (k + 1)..dim {
            let mut re = ComplexMatrix::zeros(dim);
            re.set(k, l, Complex64::new(0.5, 0.0));
            re.set(l, k, Complex64::new(0.5, 0.0));
            out.push((
                HermitianOperator::new(re, subsystem_dims).expect("real-part selector"),
                k,
                l,
                false,
            ));
            let mut im = ComplexMatrix::zeros(dim);
            im.set(k, l, Complex64::new(0.0, 0.5));
            im.set(l, k, Complex64::new(0.0, -0.5));
            out.push((
                HermitianOperator::new(im, subsystem_dims).expect("imag-part selector"),
                k,
                l,
                true,
            ));
        }
    }
    out
}

fn extract(target: &HermitianOperator, k: usize, l: usize, imag: bool) -> f64 {
    let z = target.matrix().get(k, l);
    if imag {
        z.im
    } else {
        z.re
    }
}

fn scalar_block(v: f64) -> HermitianOperator {
    let mut m = ComplexMatrix::zeros(1);
    m.set(0, 0, Complex64::new(v, 0.0));
    HermitianOperator::new(m, &[1]).expect("1x1 scalar block")
}

fn qubit_blocks(names: &[&str]) -> Vec<BlockSpec> {
    names
        .iter()
        .map(|n| BlockSpec {
            name: (*n).to_string(),
            dim: 4,
        })
        .collect()
}

/// Completeness rows Π₀ + Π₁ + Π_∅ = 𝟙 imposed entrywise on the listed
/// blocks.
fn completeness_rows(
    blocks: &[usize],
    subsystem_dims: &[usize],
) -> Vec<Constraint> {
    let identity = HermitianOperator::identity(subsystem_dims);
    entry_selectors(subsystem_dims)
        .into_iter()
        .map(|(sel, k, l, imag)| Constraint {
            coeffs: blocks
                .iter()
                .map(|&b| BlockCoeff {
                    block: b,
                    op: sel.clone(),
                })
                .collect(),
            rhs: extract(&identity, k, l, imag),
        })
        .collect()
}

/// Rows linking a partial-transpose copy block to its source:
/// P − T(Π) = 0 entrywise, where `transpose` applies T to a selector.
fn linking_rows(
    source: usize,
    copy: usize,
    subsystem_dims: &[usize],
    transpose: impl Fn(&HermitianOperator) -> HermitianOperator,
) -> Vec<Constraint> {
    entry_selectors(subsystem_dims)
        .into_iter()
        .map(|(sel, _, _, _)| Constraint {
            coeffs: vec![
                BlockCoeff {
                    block: copy,
                    op: sel.clone(),
                },
                BlockCoeff {
                    block: source,
                    op: transpose(&sel).scale(-1.0),
                },
            ],
            rhs: 0.0,
        })
        .collect()
}

/// Theorem-1 program: discrimination of ρ₀/ρ₁ over unrestricted two-qubit
/// measurements at fixed conclusive rate γ².
///
/// `Primal` maximizes ½Tr[ρ₀Π₀ + ρ₁Π₁] over PSD blocks Π₀, Π₁, Π_∅ with
/// Π₀+Π₁+Π_∅ = 𝟙 and Tr[(ω⊗τ)Π_∅] = 1−γ² for every input. `Dual` encodes
/// the printed minimization over Hermitian Y and scalar γ̃ subject to
/// 2Y − ρᵢ ⪰ 0 and 4Y − γ̃𝟙 ⪰ 0, via slack blocks and PSD splittings; its
/// solved maximum is the negated printed minimum.
pub fn build_general(
    gamma: f64,
    pair: &DiscriminationPair,
    direction: Direction,
) -> Result<SdpProblem, SdpError> {
    check_gamma(gamma)?;
    match direction {
        Direction::Primal => {
            let blocks = qubit_blocks(&["pi_0", "pi_1", "pi_inc"]);
            let mut constraints = completeness_rows(&[0, 1, 2], &[2, 2]);
            for p in InputPair::all() {
                constraints.push(Constraint {
                    coeffs: vec![BlockCoeff {
                        block: 2,
                        op: pair.input_state(p).clone(),
                    }],
                    rhs: 1.0 - gamma * gamma,
                });
            }
            Ok(SdpProblem {
                spec_rev: SCHEMA_REV.to_string(),
                family: ProblemFamily::GeneralPrimal,
                gamma: Some(gamma),
                xi: None,
                blocks,
                objective: vec![
                    BlockCoeff {
                        block: 0,
                        op: pair.rho0().scale(0.5),
                    },
                    BlockCoeff {
                        block: 1,
                        op: pair.rho1().scale(0.5),
                    },
                ],
                constraints,
            })
        }
        Direction::Dual => {
            let mut blocks = qubit_blocks(&["z_0", "z_1", "z_2", "y_pos", "y_neg"]);
            blocks.push(BlockSpec {
                name: "gt_pos".into(),
                dim: 1,
            });
            blocks.push(BlockSpec {
                name: "gt_neg".into(),
                dim: 1,
            });
            let constraints = dual_constraints(pair, None);
            Ok(SdpProblem {
                spec_rev: SCHEMA_REV.to_string(),
                family: ProblemFamily::GeneralDual,
                gamma: Some(gamma),
                xi: None,
                blocks,
                objective: dual_objective(gamma),
                constraints,
            })
        }
    }
}

/// Shared objective of the dual encodings: maximize −Tr[Y] + (1−γ²)γ̃ with
/// Y = Y⁺ − Y⁻ and γ̃ = g⁺ − g⁻.
fn dual_objective(gamma: f64) -> Vec<BlockCoeff> {
    let id = HermitianOperator::identity(&[2, 2]);
    let slack = 1.0 - gamma * gamma;
    vec![
        BlockCoeff {
            block: 3,
            op: id.scale(-1.0),
        },
        BlockCoeff {
            block: 4,
            op: id,
        },
        BlockCoeff {
            block: 5,
            op: scalar_block(slack),
        },
        BlockCoeff {
            block: 6,
            op: scalar_block(-slack),
        },
    ]
}

/// Constraint rows shared by the two dual encodings. With `q_base` set, the
/// partial-transposed PSD multipliers Q₀, Q₁, Q₂ of the PPT dual enter as
/// blocks `q_base`, `q_base`+1, `q_base`+2.
fn dual_constraints(pair: &DiscriminationPair, q_base: Option<usize>) -> Vec<Constraint> {
    let mut constraints = Vec::new();
    let selectors = entry_selectors(&[2, 2]);
    for i in 0..2 {
        let rho = pair.rho(i == 1);
        for (sel, k, l, imag) in &selectors {
            let mut coeffs = vec![
                BlockCoeff {
                    block: i,
                    op: sel.clone(),
                },
                BlockCoeff {
                    block: 3,
                    op: sel.scale(-2.0),
                },
                BlockCoeff {
                    block: 4,
                    op: sel.scale(2.0),
                },
            ];
            if let Some(q) = q_base {
                coeffs.push(BlockCoeff {
                    block: q + i,
                    op: sel.partial_transpose(1).scale(2.0),
                });
            }
            constraints.push(Constraint {
                coeffs,
                rhs: -extract(rho, *k, *l, *imag),
            });
        }
    }
    for (sel, k, l, imag) in &selectors {
        let mut coeffs = vec![
            BlockCoeff {
                block: 2,
                op: sel.clone(),
            },
            BlockCoeff {
                block: 3,
                op: sel.scale(-4.0),
            },
            BlockCoeff {
                block: 4,
                op: sel.scale(4.0),
            },
        ];
        if let Some(q) = q_base {
            coeffs.push(BlockCoeff {
                block: q + 2,
                op: sel.partial_transpose(1).scale(4.0),
            });
        }
        let trace_part = if k == l && !imag { 1.0 } else { 0.0 };
        if trace_part != 0.0 {
            coeffs.push(BlockCoeff {
                block: 5,
                op: scalar_block(trace_part),
            });
            coeffs.push(BlockCoeff {
                block: 6,
                op: scalar_block(-trace_part),
            });
        }
        constraints.push(Constraint { coeffs, rhs: 0.0 });
    }
    constraints
}

/// Theorem-2 program: same discrimination with every Π additionally PPT.
/// The primal realizes the PPT cone by a partial-transpose copy block per Π
/// linked entrywise and constrained PSD.
pub fn build_ppt(
    gamma: f64,
    pair: &DiscriminationPair,
    direction: Direction,
) -> Result<SdpProblem, SdpError> {
    check_gamma(gamma)?;
    match direction {
        Direction::Primal => {
            let mut base = build_general(gamma, pair, Direction::Primal)?;
            base.family = ProblemFamily::PptPrimal;
            base.blocks
                .extend(qubit_blocks(&["pi_0_tb", "pi_1_tb", "pi_inc_tb"]));
            for i in 0..3 {
                base.constraints.extend(linking_rows(i, 3 + i, &[2, 2], |s| {
                    s.partial_transpose(1)
                }));
            }
            Ok(base)
        }
        Direction::Dual => {
            let mut blocks = qubit_blocks(&["z_0", "z_1", "z_2", "y_pos", "y_neg"]);
            blocks.push(BlockSpec {
                name: "gt_pos".into(),
                dim: 1,
            });
            blocks.push(BlockSpec {
                name: "gt_neg".into(),
                dim: 1,
            });
            blocks.extend(qubit_blocks(&["q_0", "q_1", "q_2"]));
            let constraints = dual_constraints(pair, Some(7));
            Ok(SdpProblem {
                spec_rev: SCHEMA_REV.to_string(),
                family: ProblemFamily::PptDual,
                gamma: Some(gamma),
                xi: None,
                blocks,
                objective: dual_objective(gamma),
                constraints,
            })
        }
    }
}

/// Werner-resource program at conclusive rate γ² = ¼: measurements live on
/// A⊗A′⊗B⊗B′, are PPT across the AA′:BB′ cut, and are scored against
/// ρᵢ ⊗ φ_ξ. With `strict_inputs` the single averaged inconclusive-rate
/// equality is replaced by all sixteen per-input equalities.
pub fn build_werner(
    xi: f64,
    pair: &DiscriminationPair,
    strict_inputs: bool,
) -> Result<SdpProblem, SdpError> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(SdpError::ParameterOutOfRange {
            name: "xi",
            value: xi,
            range: "[0, 1]",
        });
    }
    let phi = werner(xi)
        .expect("xi validated above")
        .into_operator();
    // ρ ⊗ φ is built on (A,B,A′,B′); reorder to A⊗A′⊗B⊗B′.
    let perm = [0usize, 2, 1, 3];
    let layout = [2usize, 2, 2, 2];
    let reorder = |op: &HermitianOperator| op.kron(&phi).permute_subsystems(&perm);
    let obj0 = reorder(pair.rho0()).scale(0.5);
    let obj1 = reorder(pair.rho1()).scale(0.5);

    let names = ["pi_0", "pi_1", "pi_inc", "pi_0_tb", "pi_1_tb", "pi_inc_tb"];
    let blocks: Vec<BlockSpec> = names
        .iter()
        .map(|n| BlockSpec {
            name: (*n).to_string(),
            dim: 16,
        })
        .collect();

    let mut constraints = completeness_rows(&[0, 1, 2], &layout);
    if strict_inputs {
        for p in InputPair::all() {
            constraints.push(Constraint {
                coeffs: vec![BlockCoeff {
                    block: 2,
                    op: reorder(pair.input_state(p)),
                }],
                rhs: 0.75,
            });
        }
    } else {
        // The averaged rate row exactly as printed:
        // ½Tr[(ρ₀+ρ₁)⊗φ_ξ · Π_∅] = 3/4.
        constraints.push(Constraint {
            coeffs: vec![BlockCoeff {
                block: 2,
                op: reorder(&pair.rho0().add(pair.rho1())).scale(0.5),
            }],
            rhs: 0.75,
        });
    }
    for i in 0..3 {
        constraints.extend(linking_rows(i, 3 + i, &layout, |s| {
            s.partial_transpose(2).partial_transpose(3)
        }));
    }

    Ok(SdpProblem {
        spec_rev: SCHEMA_REV.to_string(),
        family: ProblemFamily::Werner,
        gamma: Some(0.5),
        xi: Some(xi),
        blocks,
        objective: vec![
            BlockCoeff { block: 0, op: obj0 },
            BlockCoeff { block: 1, op: obj1 },
        ],
        constraints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inputs::{build_pair, EncodingScheme};

    #[test]
    fn closed_forms_match_reported_values() {
        assert!((closed_form_general(1.0).unwrap() - 0.6767766952966369).abs() < 1e-15);
        assert!((closed_form_general(0.3).unwrap() - 0.8535533905932737).abs() < 1e-15);
        // Both branches agree at the representable breakpoint.
        let at_break = closed_form_general(FRAC_1_SQRT_2).unwrap();
        let above = 0.5 * (1.0 + 1.0 / (FRAC_1_SQRT_2 * FRAC_1_SQRT_2 * 2.0 * SQRT_2));
        assert!((at_break - 0.8535533905932737).abs() < 1e-15);
        assert!((at_break - above).abs() < 1e-12);
        assert!((closed_form_ppt() - 0.6767766952966369).abs() < 1e-15);
        // Eq. 5 at γ = 1 coincides with the PPT constant.
        assert!((closed_form_general(1.0).unwrap() - closed_form_ppt()).abs() < 1e-15);
        // The derived local bound in Bell units.
        assert!((8.0 * (closed_form_ppt() - 0.5) - SQRT_2).abs() < 1e-15);
        assert!(closed_form_general(0.0).is_err());
        assert!(closed_form_general(1.5).is_err());
    }

    #[test]
    fn general_primal_shape() {
        let pair = build_pair(EncodingScheme::PauliXY);
        let p = build_general(0.5, &pair, Direction::Primal).unwrap();
        assert_eq!(p.blocks.len(), 3);
        // 16 entrywise completeness rows + 16 input rows.
        assert_eq!(p.constraints.len(), 32);
        p.validate().unwrap();
        // At γ = 1 the inconclusive rate pins Π_∅ to annihilate every input.
        let p1 = build_general(1.0, &pair, Direction::Primal).unwrap();
        for c in &p1.constraints[16..] {
            assert_eq!(c.rhs, 0.0);
        }
    }

    #[test]
    fn ppt_and_werner_shapes() {
        let pair = build_pair(EncodingScheme::PauliXY);
        let p = build_ppt(0.5, &pair, Direction::Primal).unwrap();
        assert_eq!(p.blocks.len(), 6);
        assert_eq!(p.constraints.len(), 32 + 3 * 16);
        p.validate().unwrap();

        let w = build_werner(0.4, &pair, false).unwrap();
        assert_eq!(w.blocks.len(), 6);
        assert_eq!(w.constraints.len(), 256 + 1 + 3 * 256);
        assert_eq!(w.blocks[0].dim, 16);
        w.validate().unwrap();

        let ws = build_werner(0.4, &pair, true).unwrap();
        assert_eq!(ws.constraints.len(), 256 + 16 + 3 * 256);

        assert!(build_werner(-0.1, &pair, false).is_err());
        assert!(build_werner(1.0001, &pair, false).is_err());
    }

    #[test]
    fn dual_shapes() {
        let pair = build_pair(EncodingScheme::PauliXY);
        let d = build_general(0.5, &pair, Direction::Dual).unwrap();
        assert_eq!(d.blocks.len(), 7);
        assert_eq!(d.constraints.len(), 48);
        d.validate().unwrap();
        let dp = build_ppt(0.5, &pair, Direction::Dual).unwrap();
        assert_eq!(dp.blocks.len(), 10);
        assert_eq!(dp.constraints.len(), 48);
        dp.validate().unwrap();
    }
}

//! Instruction-set hidden variables for a single qubit built on the
//! twinned tetrahedral SICs: the six Spekkens-admissible instruction
//! sets, the map from hidden-variable distributions to SIC
//! probabilities, the classical cube of qubit state space, the
//! dispersion-free octahedron outside the Bloch sphere, and the
//! bipartite anti-coincidence statistics that hidden variables can
//! reproduce.

use crate::qmath::{BlochVector, DensityOperator, Ket, Operator, C64};
use crate::repr::{probs_to_state, state_to_probs, ReprError, SicProbVector};
use crate::sics::{build_qubit_sic, Orientation, SicLabel, SicSet};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// Signs prescribing the outcome of each of the four detector settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstructionSet {
    pub signs: [i8; 4],
}

impl InstructionSet {
    pub fn flipped(&self) -> InstructionSet {
        InstructionSet {
            signs: self.signs.map(|s| -s),
        }
    }

    pub fn pattern(&self) -> String {
        self.signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect()
    }
}

/// Derive the admissible instruction sets from the Spekkens rules rather
/// than hard-coding them: each w(Pi_i) is 0 or 1 (projectors), and the
/// scaled SIC POVM forces sum_i w(Pi_i) = 2. Of the 16 sign patterns,
/// exactly the six with two plus signs survive.
pub fn enumerate_instruction_sets() -> Vec<InstructionSet> {
    let mut out = Vec::new();
    for bits in 0..16u8 {
        let signs: [i8; 4] = std::array::from_fn(|k| if bits >> (3 - k) & 1 == 0 { 1 } else { -1 });
        let plus_count = signs.iter().filter(|&&s| s > 0).count();
        if plus_count == 2 {
            out.push(InstructionSet { signs });
        }
    }
    out
}

/// Probabilities over the six instruction sets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HvDistribution {
    pub weights: [f64; 6],
}

#[derive(Debug, thiserror::Error)]
pub enum HvError {
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error("hidden-variable distribution not normalized: sum = {0}")]
    NotNormalized(f64),
}

/// p(H_i) = (1/2) sum_lambda rho(lambda) [lambda_i = +]: pick an
/// instruction set, then flip a fair coin between its two plus slots.
pub fn probs_from_hv(rho_hv: &HvDistribution) -> Result<SicProbVector, HvError> {
    let sum: f64 = rho_hv.weights.iter().sum();
    if (sum - 1.0).abs() > 1e-8 {
        return Err(HvError::NotNormalized(sum));
    }
    let sets = enumerate_instruction_sets();
    let mut p = vec![0.0f64; 4];
    for (w, set) in rho_hv.weights.iter().zip(sets.iter()) {
        for (i, &s) in set.signs.iter().enumerate() {
            if s > 0 {
                p[i] += 0.5 * w;
            }
        }
    }
    Ok(SicProbVector::new(2, p)?)
}

/// Outcome of solving for the hidden-variable distribution implied by a
/// state's SIC probabilities. `margin` is the minimum weight of the
/// canonical solution; it is negative exactly when the state lies
/// outside the classical cube.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeasibilityResult {
    pub feasible: bool,
    pub witness: Option<[f64; 6]>,
    pub margin: f64,
}

/// Solve probs_from_hv(rho_hv) = state_to_probs(rho) for rho_hv.
///
/// The linear system is underdetermined (4 independent constraints, 6
/// unknowns), so "the" distribution implied by a state is taken to be
/// the canonical symmetric solution, the minimum-norm / pseudoinverse
/// one. It has the closed form
///
///   weight(lambda) = sum over the two plus slots of lambda of p(H_i),
///   minus 1/3,
///
/// and its nonnegativity region in the Bloch ball is exactly the cube
/// spanned by the twinned tetrahedra. (The full solution family adds a
/// two-dimensional kernel; sweeping it would admit signed combinations
/// reaching the entire Bloch ball and dissolve the classical region, so
/// the canonical solution is the meaningful one.)
pub fn hv_from_state(rho: &DensityOperator, sic_plus: &SicSet) -> Result<FeasibilityResult, HvError> {
    assert_eq!(sic_plus.label, SicLabel::QubitPlus);
    let p = state_to_probs(rho, sic_plus)?;
    Ok(feasibility_from_probs(&p))
}

fn membership_matrix(sets: &[InstructionSet]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(4, 6);
    for (s, set) in sets.iter().enumerate() {
        for (i, &sign) in set.signs.iter().enumerate() {
            if sign > 0 {
                m[(i, s)] = 1.0;
            }
        }
    }
    m
}

fn feasibility_from_probs(p: &SicProbVector) -> FeasibilityResult {
    let sets = enumerate_instruction_sets();
    // canonical pseudoinverse solution: with M the 4x6 plus-slot
    // membership matrix, M M^T = 2I + J and (M M^T)^{-1} = (I - J/6)/2,
    // which collapses to weight_s = q_s - 1/3 with q_s the total
    // probability on the two plus slots of s
    let weights: [f64; 6] = std::array::from_fn(|s| {
        let q: f64 = sets[s]
            .signs
            .iter()
            .zip(p.p.iter())
            .filter(|(&sign, _)| sign > 0)
            .map(|(_, &pi)| pi)
            .sum();
        q - 1.0 / 3.0
    });
    debug_assert!({
        let m = membership_matrix(&sets);
        let back = &m * DVector::from_column_slice(&weights) * 0.5;
        back.iter().zip(p.p.iter()).all(|(a, b)| (a - b).abs() < 1e-10)
    });
    let margin = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let feasible = margin >= -1e-9;
    FeasibilityResult {
        feasible,
        witness: if feasible { Some(weights) } else { None },
        margin,
    }
}

/// Half-width of the classical cube spanned by the eight tetrahedra
/// vertices (±1,±1,±1)/√3.
pub const CUBE_HALF_WIDTH: f64 = 0.577_350_269_189_625_76; // 1/sqrt(3)

/// Cube-geometry membership check, the cross-check for the feasibility
/// solver.
pub fn classical_cube_contains(b: &BlochVector, slack: f64) -> bool {
    b.x.abs() <= CUBE_HALF_WIDTH + slack
        && b.y.abs() <= CUBE_HALF_WIDTH + slack
        && b.z.abs() <= CUBE_HALF_WIDTH + slack
}

/// True iff the state admits a nonnegative distribution over the six
/// instruction sets.
pub fn classical_region_contains(rho: &DensityOperator, sic_plus: &SicSet) -> Result<bool, HvError> {
    Ok(hv_from_state(rho, sic_plus)?.feasible)
}

/// Map an instruction set to its dispersion-free pseudo-state: 1/2 on
/// its two plus slots, then the reconstruction formula. Hermitian with
/// unit trace, never PSD, Bloch norm √3.
pub fn dispersion_free_operator(
    s: &InstructionSet,
    sic_plus: &SicSet,
) -> Result<(Operator, BlochVector), HvError> {
    let p: Vec<f64> = s.signs.iter().map(|&x| if x > 0 { 0.5 } else { 0.0 }).collect();
    let p = SicProbVector::new(2, p)?;
    let (op, _psd) = probs_to_state(&p, sic_plus)?;
    let bloch = BlochVector::from_operator(&op);
    Ok((op, bloch))
}

/// The singlet state (|01> - |10>)/√2: the maximally entangled state for
/// which a left outcome Pi_i^± updates the right-hand state to Pi_i^∓.
pub fn singlet_state() -> DensityOperator {
    let s = 1.0 / 2.0f64.sqrt();
    let entries = vec![
        C64::new(0.0, 0.0),
        C64::new(s, 0.0),
        C64::new(-s, 0.0),
        C64::new(0.0, 0.0),
    ];
    DensityOperator::pure(&Ket::new(entries)).expect("unit ket")
}

/// Anti-coincidence probability for detector settings (i, j): quantum
/// prediction from the singlet ascription and the hidden-variable
/// prediction from the uniform distribution over the six anticorrelated
/// instruction-set pairs. The two agree on all 16 cells.
pub fn anticoincidence(setting_left: usize, setting_right: usize) -> (f64, f64) {
    assert!(setting_left < 4 && setting_right < 4);
    let plus = build_qubit_sic(Orientation::Plus);
    let minus = build_qubit_sic(Orientation::Minus);
    let rho = singlet_state();
    let pl_plus = &plus.projectors[setting_left];
    let pl_minus = &minus.projectors[setting_left];
    let pr_plus = &plus.projectors[setting_right];
    let pr_minus = &minus.projectors[setting_right];
    let quantum = rho.expectation(&pl_plus.tensor(pr_minus)).re
        + rho.expectation(&pl_minus.tensor(pr_plus)).re;

    let sets = enumerate_instruction_sets();
    let anti = sets
        .iter()
        .filter(|s| {
            // left carries s, right carries the flipped set
            let left = s.signs[setting_left];
            let right = -s.signs[setting_right];
            left != right
        })
        .count();
    let hv = anti as f64 / sets.len() as f64;
    (quantum, hv)
}

/// 4x4 table of (quantum, hidden-variable) anti-coincidence
/// probabilities as CSV.
pub fn anticoincidence_csv() -> String {
    let mut out = String::from("left\\right,0,1,2,3\n");
    for i in 0..4 {
        out.push_str(&i.to_string());
        for j in 0..4 {
            let (q, h) = anticoincidence(i, j);
            out.push_str(&format!(",{q:.12}/{h:.12}"));
        }
        out.push('\n');
    }
    out
}

/// Verify the update rule behind the bipartite scenario: projecting the
/// left half of the singlet onto Pi_i^+ leaves the right half in Pi_i^-.
pub fn singlet_update_rule_defect() -> f64 {
    let plus = build_qubit_sic(Orientation::Plus);
    let minus = build_qubit_sic(Orientation::Minus);
    let rho = singlet_state();
    let mut worst = 0.0f64;
    for i in 0..4 {
        let proj_left = plus.projectors[i].tensor(&Operator::identity(2));
        // post-measurement joint state, unnormalized
        let joint = proj_left.mul(rho.operator()).mul(&proj_left);
        let norm = joint.trace().re;
        // partial trace over the left qubit
        let mut right = nalgebra::DMatrix::<C64>::zeros(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                for l in 0..2 {
                    right[(a, b)] += joint.matrix()[(2 * l + a, 2 * l + b)];
                }
            }
        }
        let right = Operator::new(right).scale_re(1.0 / norm);
        worst = worst.max(right.sub(&minus.projectors[i]).max_norm());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::DEFAULT_TOL;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn paper_patterns() -> Vec<&'static str> {
        vec!["++--", "--++", "-++-", "+--+", "+-+-", "-+-+"]
    }

    #[test]
    fn instruction_sets_derived() {
        let sets = enumerate_instruction_sets();
        assert_eq!(sets.len(), 6);
        let mut got: Vec<String> = sets.iter().map(|s| s.pattern()).collect();
        let mut expect: Vec<String> = paper_patterns().iter().map(|s| s.to_string()).collect();
        got.sort();
        expect.sort();
        assert_eq!(got, expect);
        assert!(!sets.iter().any(|s| s.pattern() == "++++"));
        // closed under the sign flip that pairs anticorrelated partners
        for s in &sets {
            assert!(sets.contains(&s.flipped()));
        }
    }

    #[test]
    fn probs_from_hv_cases() {
        let uniform = HvDistribution {
            weights: [1.0 / 6.0; 6],
        };
        let p = probs_from_hv(&uniform).unwrap();
        for &pi in &p.p {
            assert_abs_diff_eq!(pi, 0.25, epsilon = 1e-12);
        }
        // concentrated on ++--
        let sets = enumerate_instruction_sets();
        let idx = sets.iter().position(|s| s.pattern() == "++--").unwrap();
        let mut weights = [0.0; 6];
        weights[idx] = 1.0;
        let p = probs_from_hv(&HvDistribution { weights }).unwrap();
        assert_eq!(p.p, vec![0.5, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn conditioning_on_plus_in_slot_zero() {
        // T(0) = 1: uniform over the three sets with + in slot 0 gives
        // p_0 = 1/2 and 1/6 elsewhere
        let sets = enumerate_instruction_sets();
        let mut weights = [0.0; 6];
        for (i, s) in sets.iter().enumerate() {
            if s.signs[0] > 0 {
                weights[i] = 1.0 / 3.0;
            }
        }
        let p = probs_from_hv(&HvDistribution { weights }).unwrap();
        assert_abs_diff_eq!(p.p[0], 0.5, epsilon = 1e-12);
        for &pi in &p.p[1..] {
            assert_abs_diff_eq!(pi, 1.0 / 6.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn feasibility_landmarks() {
        let plus = build_qubit_sic(Orientation::Plus);
        let minus = build_qubit_sic(Orientation::Minus);
        // maximally mixed: uniform distribution is a witness
        let result = hv_from_state(&DensityOperator::maximally_mixed(2), &plus).unwrap();
        assert!(result.feasible);
        assert!(result.margin >= 1.0 / 6.0 - 1e-9);
        // all eight tetrahedron vertices are classical
        for sic in [&plus, &minus] {
            for k in &sic.kets {
                let rho = DensityOperator::pure(k).unwrap();
                assert!(hv_from_state(&rho, &plus).unwrap().feasible);
            }
        }
        // Pauli eigenstates are not
        for b in [
            BlochVector::new(0.0, 0.0, 1.0),
            BlochVector::new(0.0, 0.0, -1.0),
            BlochVector::new(1.0, 0.0, 0.0),
            BlochVector::new(-1.0, 0.0, 0.0),
            BlochVector::new(0.0, 1.0, 0.0),
            BlochVector::new(0.0, -1.0, 0.0),
        ] {
            let rho = b.to_density(DEFAULT_TOL).unwrap();
            let result = hv_from_state(&rho, &plus).unwrap();
            assert!(!result.feasible, "{b:?} should be outside the cube");
            assert!(result.margin < 0.0);
        }
    }

    #[test]
    fn witness_reproduces_probabilities() {
        let plus = build_qubit_sic(Orientation::Plus);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let b = BlochVector::new(
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.5..0.5),
            );
            let rho = b.to_density(DEFAULT_TOL).unwrap();
            let result = hv_from_state(&rho, &plus).unwrap();
            assert!(result.feasible);
            let witness = HvDistribution {
                weights: result.witness.unwrap(),
            };
            let p = probs_from_hv(&witness).unwrap();
            let expect = state_to_probs(&rho, &plus).unwrap();
            for (a, b) in p.p.iter().zip(expect.p.iter()) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn solver_agrees_with_cube_geometry() {
        let plus = build_qubit_sic(Orientation::Plus);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut checked = 0;
        while checked < 1000 {
            let b = BlochVector::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            if b.norm() > 1.0 {
                continue;
            }
            checked += 1;
            let face_distance = [b.x.abs(), b.y.abs(), b.z.abs()]
                .iter()
                .map(|c| (c - CUBE_HALF_WIDTH).abs())
                .fold(f64::INFINITY, f64::min);
            let rho = b.to_density(DEFAULT_TOL).unwrap();
            let solver = classical_region_contains(&rho, &plus).unwrap();
            let cube = classical_cube_contains(&b, 1e-9);
            if face_distance < 1e-6 {
                // boundary-adjacent: either verdict acceptable
                continue;
            }
            assert_eq!(solver, cube, "disagreement at {b:?}");
        }
    }

    #[test]
    fn dispersion_free_octahedron() {
        let plus = build_qubit_sic(Orientation::Plus);
        let sets = enumerate_instruction_sets();
        let mut blochs = Vec::new();
        for s in &sets {
            let (op, bloch) = dispersion_free_operator(s, &plus).unwrap();
            assert!(op.is_hermitian(1e-12));
            assert_abs_diff_eq!(op.trace().re, 1.0, epsilon = 1e-12);
            assert!(!op.is_psd(DEFAULT_TOL).unwrap());
            assert_abs_diff_eq!(bloch.norm(), 3.0f64.sqrt(), epsilon = 1e-10);
            blochs.push(bloch);
        }
        // three antipodal pairs along mutually orthogonal axes
        let mut pairs = 0;
        for i in 0..6 {
            for j in (i + 1)..6 {
                let dot = blochs[i].dot(&blochs[j]);
                if (dot + 3.0).abs() < 1e-9 {
                    pairs += 1;
                } else {
                    assert!(dot.abs() < 1e-9, "axes must be orthogonal: {dot}");
                }
            }
        }
        assert_eq!(pairs, 3);
    }

    #[test]
    fn anticoincidence_table() {
        for i in 0..4 {
            for j in 0..4 {
                let (q, h) = anticoincidence(i, j);
                let expect = if i == j { 1.0 } else { 1.0 / 3.0 };
                assert_abs_diff_eq!(q, expect, epsilon = 1e-10);
                assert_abs_diff_eq!(h, expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn singlet_update_rule() {
        assert!(singlet_update_rule_defect() < 1e-10);
    }
}


//! The 21-vector qutrit Kochen-Specker contradiction: the 9 Hesse SIC
//! kets together with the 12 MUB kets form an orthogonality graph whose
//! admissible {0,1} value assignments cap the SIC weight sum at 2,
//! while POVM normalization demands 3.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::random::random_density;
use crate::sics::{MubSet, SicSet, AFFINE_LINES};

#[derive(Debug, Error)]
pub enum KsError {
    #[error(
        "ambiguous squared overlap {overlap:.3e} between SIC ket {sic} and MUB ket M{mub:?}: \
         inside the band [1e-10, 1e-6] where neither edge nor non-edge is safe"
    )]
    AmbiguousOverlap {
        sic: usize,
        mub: [usize; 3],
        overlap: f64,
    },
    #[error("SIC vertex {index} has degree {degree}, expected 4")]
    SicDegree { index: usize, degree: usize },
    #[error("MUB vertex M{label:?} has degree {degree}, expected 3")]
    MubDegree { label: [usize; 3], degree: usize },
}

/// Squared overlaps below this count as orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;
const AMBIGUOUS_LO: f64 = 1e-10;
const AMBIGUOUS_HI: f64 = 1e-6;

/// Bipartite orthogonality incidence between the 9 Hesse SIC kets and
/// the 12 MUB kets. Edge iff the squared overlap vanishes numerically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityGraph {
    /// mub_labels[c][v] is the line label of MUB vector v in basis c.
    pub mub_labels: [[[usize; 3]; 3]; 4],
    /// adjacency[i][c][v] = true iff SIC ket i+1 is orthogonal to MUB
    /// vector (c, v).
    pub adjacency: [[[bool; 3]; 4]; 9],
}

impl OrthogonalityGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().flatten().flatten().filter(|&&e| e).count()
    }

    pub fn sic_degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().flatten().filter(|&&e| e).count()
    }

    pub fn mub_degree(&self, basis: usize, vector: usize) -> usize {
        (0..9).filter(|&i| self.adjacency[i][basis][vector]).count()
    }

    /// DOT-format rendering of the bipartite graph for external tools.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph orthogonality {\n  rank=same;\n");
        for i in 0..9 {
            out.push_str(&format!("  sic{} [label=\"\u{03c0}{}\", shape=circle];\n", i + 1, i + 1));
        }
        for (c, basis) in self.mub_labels.iter().enumerate() {
            for (v, label) in basis.iter().enumerate() {
                out.push_str(&format!(
                    "  mub{}_{} [label=\"M{}{}{}\", shape=box];\n",
                    c, v, label[0], label[1], label[2]
                ));
            }
        }
        for i in 0..9 {
            for c in 0..4 {
                for v in 0..3 {
                    if self.adjacency[i][c][v] {
                        out.push_str(&format!("  sic{} -- mub{}_{};\n", i + 1, c, v));
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Build the orthogonality graph from numerically constructed kets,
/// refusing to decide edges in the ambiguous overlap band.
pub fn build_graph(hesse: &SicSet, mubs: &MubSet) -> Result<OrthogonalityGraph, KsError> {
    assert_eq!(hesse.dim, 3);
    let mut mub_labels = [[[0usize; 3]; 3]; 4];
    let mut adjacency = [[[false; 3]; 4]; 9];
    for (c, basis) in mubs.bases.iter().enumerate() {
        for (v, mk) in basis.iter().enumerate() {
            mub_labels[c][v] = mk.label;
            for (i, sic_ket) in hesse.kets.iter().enumerate() {
                let ov = sic_ket.overlap2(&mk.ket);
                if (AMBIGUOUS_LO..=AMBIGUOUS_HI).contains(&ov) {
                    return Err(KsError::AmbiguousOverlap {
                        sic: i + 1,
                        mub: mk.label,
                        overlap: ov,
                    });
                }
                adjacency[i][c][v] = ov < ORTHOGONALITY_TOL;
            }
        }
    }
    let g = OrthogonalityGraph { mub_labels, adjacency };
    for i in 0..9 {
        let d = g.sic_degree(i);
        if d != 4 {
            return Err(KsError::SicDegree { index: i + 1, degree: d });
        }
    }
    for c in 0..4 {
        for v in 0..3 {
            let d = g.mub_degree(c, v);
            if d != 3 {
                return Err(KsError::MubDegree {
                    label: g.mub_labels[c][v],
                    degree: d,
                });
            }
        }
    }
    Ok(g)
}

/// AG(2,3): nine points, twelve lines in four parallel classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePlane {
    pub points: [usize; 9],
    /// parallel_classes[c] is a partition of the points into 3 lines.
    pub parallel_classes: [[[usize; 3]; 3]; 4],
}

impl AffinePlane {
    pub fn lines(&self) -> impl Iterator<Item = &[usize; 3]> {
        self.parallel_classes.iter().flatten()
    }
}

/// The affine plane on nine points in row-major layout; the 12 lines
/// are exactly the MUB vector labels.
pub fn affine_plane() -> AffinePlane {
    AffinePlane {
        points: [1, 2, 3, 4, 5, 6, 7, 8, 9],
        parallel_classes: AFFINE_LINES,
    }
}

/// One vector per MUB basis assigned the value 1: choice[c] is the
/// index (0..3) of the chosen vector in basis c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisChoice {
    pub choice: [usize; 4],
}

pub fn all_basis_choices() -> Vec<BasisChoice> {
    let mut out = Vec::with_capacity(81);
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    out.push(BasisChoice { choice: [a, b, c, d] });
                }
            }
        }
    }
    out
}

/// For each of the 81 basis choices, count the SIC kets orthogonal to
/// none of the four chosen MUB vectors (the kets still eligible for a
/// nonzero weight). Pure set arithmetic on the precomputed graph.
pub fn enumerate_assignments(g: &OrthogonalityGraph) -> Vec<(BasisChoice, usize)> {
    all_basis_choices()
        .into_iter()
        .map(|bc| {
            let survivors = (0..9)
                .filter(|&i| (0..4).all(|c| !g.adjacency[i][c][bc.choice[c]]))
                .count();
            (bc, survivors)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssignmentRecord {
    pub choice: [usize; 4],
    pub survivors: usize,
}

/// The contradiction: POVM normalization forces the SIC weights to sum
/// to 3, but every admissible assignment leaves at most 2 SIC kets with
/// any weight at all.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContradictionReport {
    pub required_sum: u32,
    pub max_achievable: usize,
    pub min_achievable: usize,
    pub contradiction: bool,
    /// max over 20 random states of |sum_i tr(rho Pi_i) - 3|
    pub born_check_max_deviation: f64,
    pub per_assignment: Vec<AssignmentRecord>,
}

pub fn ks_report(hesse: &SicSet, mubs: &MubSet) -> Result<ContradictionReport, KsError> {
    let g = build_graph(hesse, mubs)?;
    let assignments = enumerate_assignments(&g);
    let max_achievable = assignments.iter().map(|&(_, s)| s).max().unwrap();
    let min_achievable = assignments.iter().map(|&(_, s)| s).min().unwrap();

    // Born-rule cross-check: for any state, sum_i tr(rho Pi_i) = d = 3,
    // since the projectors resolve the identity after scaling by 1/d.
    let mut rng = ChaCha12Rng::seed_from_u64(0x4b53);
    let mut born_dev: f64 = 0.0;
    for _ in 0..20 {
        let rho = random_density(3, &mut rng);
        let total: f64 = hesse
            .projectors
            .iter()
            .map(|pi| rho.expectation(pi).re)
            .sum();
        born_dev = born_dev.max((total - 3.0).abs());
    }

    Ok(ContradictionReport {
        required_sum: 3,
        max_achievable,
        min_achievable,
        contradiction: max_achievable < 3,
        born_check_max_deviation: born_dev,
        per_assignment: assignments
            .into_iter()
            .map(|(bc, s)| AssignmentRecord { choice: bc.choice, survivors: s })
            .collect(),
    })
}

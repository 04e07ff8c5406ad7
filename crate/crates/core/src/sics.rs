//! Construction of the sporadic SICs (qubit tetrahedra, Hesse, Hoggar)
//! and the four qutrit MUBs dual to the Hesse SIC.
//!
//! Each SIC is a set of d^2 unit kets with pairwise squared overlap
//! 1/(d+1); the rank-1 projectors scaled by 1/d form a minimal
//! informationally complete POVM.

use crate::qmath::{projector, BlochVector, Ket, KetJson, Operator, QmathError, C64, DEFAULT_TOL};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum SicError {
    #[error(transparent)]
    Qmath(#[from] QmathError),
    #[error("equiangularity check failed: max deviation {0:.3e} exceeds tolerance")]
    Equiangularity(f64),
    #[error("null space for MUB line {0:?} is not one-dimensional (sigma = {1:.3e}, {2:.3e})")]
    NullSpace([usize; 3], f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SicLabel {
    QubitPlus,
    QubitMinus,
    Hesse,
    Hoggar,
}

impl SicLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SicLabel::QubitPlus => "qubit-plus",
            SicLabel::QubitMinus => "qubit-minus",
            SicLabel::Hesse => "hesse",
            SicLabel::Hoggar => "hoggar",
        }
    }
}

/// d^2 equiangular unit kets and their projectors.
#[derive(Debug, Clone)]
pub struct SicSet {
    pub dim: usize,
    pub label: SicLabel,
    pub kets: Vec<Ket>,
    pub projectors: Vec<Operator>,
}

impl SicSet {
    fn from_kets(dim: usize, label: SicLabel, kets: Vec<Ket>) -> Result<Self, SicError> {
        debug_assert_eq!(kets.len(), dim * dim);
        let projectors = kets
            .iter()
            .map(|k| projector(k).map_err(SicError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SicSet {
            dim,
            label,
            kets,
            projectors,
        })
    }

    pub fn len(&self) -> usize {
        self.kets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kets.is_empty()
    }

    /// The MIC elements H_i = (1/d) Pi_i.
    pub fn povm_elements(&self) -> Vec<Operator> {
        let s = 1.0 / self.dim as f64;
        self.projectors.iter().map(|p| p.scale_re(s)).collect()
    }
}

/// Verification of the SIC defining properties at a given tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub dim: usize,
    pub label: String,
    /// max_{i,j} | |<pi_i|pi_j>|^2 - (d delta_ij + 1)/(d+1) |
    pub max_overlap_deviation: f64,
    /// max-norm of sum_i (1/d) Pi_i - I
    pub max_resolution_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn verify_sic(s: &SicSet, tol: f64) -> VerificationReport {
    let d = s.dim as f64;
    let mut max_overlap = 0.0f64;
    for i in 0..s.len() {
        for j in 0..s.len() {
            let target = if i == j { 1.0 } else { 1.0 / (d + 1.0) };
            let dev = (s.kets[i].overlap2(&s.kets[j]) - target).abs();
            max_overlap = max_overlap.max(dev);
        }
    }
    let mut sum = Operator::zeros(s.dim);
    for p in &s.projectors {
        sum = sum.add(&p.scale_re(1.0 / d));
    }
    let max_res = sum.sub(&Operator::identity(s.dim)).max_norm();
    VerificationReport {
        dim: s.dim,
        label: s.label.as_str().to_string(),
        max_overlap_deviation: max_overlap,
        max_resolution_deviation: max_res,
        tolerance: tol,
        pass: max_overlap < tol && max_res < tol,
    }
}

// ---------------------------------------------------------------------------
// Qubit tetrahedra
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Plus,
    Minus,
}

/// Bloch vectors of the plus tetrahedron: (±1,±1,±1)/√3 with an even
/// number of minus signs. The paper never fixes coordinates; this choice
/// is canonical and all downstream results are orientation-invariant.
pub fn tetrahedron_bloch(orientation: Orientation) -> [BlochVector; 4] {
    let s = 1.0 / 3.0f64.sqrt();
    let plus = [
        BlochVector::new(s, s, s),
        BlochVector::new(s, -s, -s),
        BlochVector::new(-s, s, -s),
        BlochVector::new(-s, -s, s),
    ];
    match orientation {
        Orientation::Plus => plus,
        Orientation::Minus => plus.map(|b| BlochVector::new(-b.x, -b.y, -b.z)),
    }
}

fn bloch_to_ket(b: &BlochVector) -> Ket {
    // top eigenvector of (I + b.sigma)/2 for a unit Bloch vector
    let op = b.to_operator();
    let (vals, vecs) = op.hermitian_eigen(DEFAULT_TOL).expect("Hermitian by construction");
    let top = vals.len() - 1;
    debug_assert!((vals[top] - 1.0).abs() < 1e-12);
    vecs[top].phase_canonical(1e-8)
}

pub fn build_qubit_sic(orientation: Orientation) -> SicSet {
    let label = match orientation {
        Orientation::Plus => SicLabel::QubitPlus,
        Orientation::Minus => SicLabel::QubitMinus,
    };
    let kets = tetrahedron_bloch(orientation)
        .iter()
        .map(bloch_to_ket)
        .collect();
    SicSet::from_kets(2, label, kets).expect("tetrahedron kets are unit vectors")
}

// ---------------------------------------------------------------------------
// Hesse SIC (d = 3)
// ---------------------------------------------------------------------------

/// ω = e^{2πi/3}.
pub fn omega() -> C64 {
    C64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// The nine Hesse SIC kets, read column-by-column from the 3x9 matrix
/// and scaled by 1/√2.
pub fn build_hesse_sic() -> SicSet {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let w = omega();
    let w2 = w * w;
    // columns of the generating matrix
    let cols: [[C64; 3]; 9] = [
        [z, one, -one],
        [-one, z, one],
        [one, -one, z],
        [z, w, -w2],
        [-one, z, w2],
        [one, -w, z],
        [z, w2, -w],
        [-one, z, w],
        [one, -w2, z],
    ];
    let s = C64::new(1.0 / 2.0f64.sqrt(), 0.0);
    let kets = cols
        .iter()
        .map(|c| Ket::new(c.iter().map(|&e| e * s).collect()))
        .collect();
    SicSet::from_kets(3, SicLabel::Hesse, kets).expect("Hesse kets are unit vectors")
}

// ---------------------------------------------------------------------------
// Three-qubit Pauli group and the Hoggar SIC (d = 8)
// ---------------------------------------------------------------------------

/// One element of the three-qubit Pauli group, phase dropped: per qubit
/// the exponents (a, b) of X^a Z^b. The Hermitian tensor representative
/// uses Y for (1,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliElement {
    /// (a_k, b_k) for qubits k = 1..3, leftmost factor first.
    pub exps: [(u8, u8); 3],
}

impl PauliElement {
    pub fn single_qubit_factor(a: u8, b: u8) -> Operator {
        match (a, b) {
            (0, 0) => Operator::identity(2),
            (1, 0) => crate::qmath::pauli_x(),
            (0, 1) => crate::qmath::pauli_z(),
            (1, 1) => crate::qmath::pauli_y(),
            _ => unreachable!("exponents are bits"),
        }
    }

    pub fn operator(&self) -> Operator {
        let [(a1, b1), (a2, b2), (a3, b3)] = self.exps;
        Self::single_qubit_factor(a1, b1)
            .tensor(&Self::single_qubit_factor(a2, b2))
            .tensor(&Self::single_qubit_factor(a3, b3))
    }

    /// Letters like "XYI" for display / CSV row labels.
    pub fn letters(&self) -> String {
        self.exps
            .iter()
            .map(|&(a, b)| match (a, b) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                (1, 1) => 'Y',
                _ => unreachable!(),
            })
            .collect()
    }
}

/// All 64 elements, ordered lexicographically by the exponent 6-tuple
/// (a1, b1, a2, b2, a3, b3).
pub fn three_qubit_pauli_elements() -> Vec<PauliElement> {
    let mut out = Vec::with_capacity(64);
    for bits in 0..64u8 {
        let e = |shift: u8| (bits >> shift) & 1;
        out.push(PauliElement {
            exps: [(e(5), e(4)), (e(3), e(2)), (e(1), e(0))],
        });
    }
    out
}

pub fn three_qubit_pauli_group() -> Vec<Operator> {
    three_qubit_pauli_elements()
        .iter()
        .map(|p| p.operator())
        .collect()
}

/// Hoggar fiducial (-1+2i, 1, 1, 1, 1, 1, 1, 1)^T / √12.
pub fn hoggar_fiducial() -> Ket {
    let s = 1.0 / 12.0f64.sqrt();
    let mut entries = vec![C64::new(s, 0.0); 8];
    entries[0] = C64::new(-s, 2.0 * s);
    Ket::new(entries)
}

/// The Hoggar SIC: the orbit of the fiducial under the three-qubit Pauli
/// group. Fails loudly if the orbit is not equiangular, which would
/// indicate a corrupted fiducial.
pub fn build_hoggar_sic() -> Result<SicSet, SicError> {
    let fid = hoggar_fiducial();
    let kets: Vec<Ket> = three_qubit_pauli_elements()
        .iter()
        .map(|p| p.operator().apply(&fid))
        .collect();
    let set = SicSet::from_kets(8, SicLabel::Hoggar, kets)?;
    let report = verify_sic(&set, DEFAULT_TOL);
    if !report.pass {
        return Err(SicError::Equiangularity(
            report
                .max_overlap_deviation
                .max(report.max_resolution_deviation),
        ));
    }
    Ok(set)
}

// ---------------------------------------------------------------------------
// Qutrit MUBs dual to the Hesse SIC
// ---------------------------------------------------------------------------

/// The 12 lines of AG(2,3) over points 1..9 laid out row-major in a 3x3
/// grid, grouped into the four parallel classes of the paper's basis
/// table (rows; columns; diagonals; anti-diagonals).
pub const AFFINE_LINES: [[[usize; 3]; 3]; 4] = [
    [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
    [[1, 4, 7], [2, 5, 8], [3, 6, 9]],
    [[1, 5, 9], [2, 6, 7], [3, 4, 8]],
    [[1, 6, 8], [2, 4, 9], [3, 5, 7]],
];

/// One MUB ket, labeled M_{ijk} by the three Hesse SIC kets it
/// annihilates.
#[derive(Debug, Clone)]
pub struct MubKet {
    pub label: [usize; 3],
    pub ket: Ket,
}

/// The four canonical qutrit MUBs, one basis per parallel class.
#[derive(Debug, Clone)]
pub struct MubSet {
    /// bases[c][v] is the v-th vector of the basis for parallel class c.
    pub bases: [[MubKet; 3]; 4],
}

impl MubSet {
    pub fn iter(&self) -> impl Iterator<Item = &MubKet> {
        self.bases.iter().flatten()
    }
}

/// For each affine line {i,j,k}, the unique-up-to-phase unit ket
/// orthogonal to Hesse kets π_i, π_j, π_k, found as the null space of
/// the 3x3 system of bra rows.
pub fn build_qutrit_mubs(hesse: &SicSet) -> Result<MubSet, SicError> {
    assert_eq!(hesse.dim, 3);
    assert_eq!(hesse.label, SicLabel::Hesse);
    let mut bases: Vec<[MubKet; 3]> = Vec::with_capacity(4);
    for class in &AFFINE_LINES {
        let mut basis: Vec<MubKet> = Vec::with_capacity(3);
        for &line in class {
            basis.push(MubKet {
                label: line,
                ket: null_ket(hesse, line)?,
            });
        }
        bases.push(basis.try_into().unwrap());
    }
    Ok(MubSet {
        bases: bases.try_into().unwrap(),
    })
}

fn null_ket(hesse: &SicSet, line: [usize; 3]) -> Result<Ket, SicError> {
    let mut m = nalgebra::DMatrix::<C64>::zeros(3, 3);
    for (r, &idx) in line.iter().enumerate() {
        let k = &hesse.kets[idx - 1];
        for c in 0..3 {
            m[(r, c)] = k.entries()[c].conj();
        }
    }
    let svd = m.svd(true, true);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let smallest = sv[2];
    let second = sv[1];
    // the null space must be exactly one-dimensional
    if smallest > 1e-10 || second < 1e-6 {
        return Err(SicError::NullSpace(line, smallest, second));
    }
    let v_t = svd.v_t.as_ref().expect("requested");
    // row of V^H with the smallest singular value; conjugate back to a ket
    let pos = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0;
    let ket = Ket::new((0..3).map(|c| v_t[(pos, c)].conj()).collect());
    Ok(ket.normalized().phase_canonical(1e-8))
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct SicSetJson {
    pub dim: usize,
    pub label: SicLabel,
    pub kets: Vec<KetJson>,
}

impl From<&SicSet> for SicSetJson {
    fn from(s: &SicSet) -> Self {
        SicSetJson {
            dim: s.dim,
            label: s.label,
            kets: s.kets.iter().map(KetJson::from).collect(),
        }
    }
}

impl TryFrom<&SicSetJson> for SicSet {
    type Error = SicError;

    fn try_from(j: &SicSetJson) -> Result<Self, SicError> {
        let kets: Vec<Ket> = j.kets.iter().map(Ket::from).collect();
        SicSet::from_kets(j.dim, j.label, kets)
    }
}

pub fn build_by_label(label: SicLabel) -> Result<SicSet, SicError> {
    match label {
        SicLabel::QubitPlus => Ok(build_qubit_sic(Orientation::Plus)),
        SicLabel::QubitMinus => Ok(build_qubit_sic(Orientation::Minus)),
        SicLabel::Hesse => Ok(build_hesse_sic()),
        SicLabel::Hoggar => build_hoggar_sic(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn qubit_tetrahedra_overlaps() {
        let plus = build_qubit_sic(Orientation::Plus);
        let minus = build_qubit_sic(Orientation::Minus);
        for i in 0..4 {
            for j in 0..4 {
                let t = plus.projectors[i].mul(&plus.projectors[j]).trace().re;
                let expect = if i == j { 1.0 } else { 1.0 / 3.0 };
                assert_abs_diff_eq!(t, expect, epsilon = 1e-12);
            }
            // antipodal pairs are orthogonal and sum to I
            let cross = plus.projectors[i].mul(&minus.projectors[i]).trace().re;
            assert_abs_diff_eq!(cross, 0.0, epsilon = 1e-12);
            let sum = plus.projectors[i].add(&minus.projectors[i]);
            assert!(sum.sub(&Operator::identity(2)).max_norm() < 1e-12);
        }
        assert!(verify_sic(&plus, DEFAULT_TOL).pass);
        assert!(verify_sic(&minus, DEFAULT_TOL).pass);
    }

    #[test]
    fn hesse_first_column_and_overlaps() {
        let hesse = build_hesse_sic();
        let s = 1.0 / 2.0f64.sqrt();
        let k1 = &hesse.kets[0];
        assert!(k1.entries()[0].norm() < 1e-15);
        assert_abs_diff_eq!(k1.entries()[1].re, s, epsilon = 1e-15);
        assert_abs_diff_eq!(k1.entries()[2].re, -s, epsilon = 1e-15);
        for i in 0..9 {
            for j in 0..9 {
                if i != j {
                    assert_abs_diff_eq!(
                        hesse.kets[i].overlap2(&hesse.kets[j]),
                        0.25,
                        epsilon = 1e-12
                    );
                }
            }
        }
        let report = verify_sic(&hesse, 1e-12);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn pauli_group_structure() {
        let elems = three_qubit_pauli_elements();
        assert_eq!(elems.len(), 64);
        assert_eq!(elems[0].letters(), "III");
        let ops = three_qubit_pauli_group();
        assert!(ops[0].sub(&Operator::identity(8)).max_norm() < 1e-15);
        let letters: Vec<String> = elems.iter().map(|e| e.letters()).collect();
        for needed in ["XXX", "XYY", "YXY", "YYX"] {
            assert!(letters.iter().any(|l| l == needed), "missing {needed}");
        }
        // pairwise orthogonality under tr(A^dag B)/8
        for i in 0..64 {
            for j in 0..64 {
                let t = ops[i].dagger().mul(&ops[j]).trace().re / 8.0;
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(t, expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn hoggar_sic_properties() {
        let hoggar = build_hoggar_sic().unwrap();
        assert_eq!(hoggar.kets.len(), 64);
        for i in 0..64 {
            for j in 0..64 {
                if i != j {
                    assert_abs_diff_eq!(
                        hoggar.kets[i].overlap2(&hoggar.kets[j]),
                        1.0 / 9.0,
                        epsilon = 1e-10
                    );
                }
            }
        }
        let report = verify_sic(&hoggar, DEFAULT_TOL);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn hoggar_fiducial_norm() {
        // squared norm of the raw fiducial (-1+2i, 1, ..., 1) is 5 + 7 = 12
        assert_abs_diff_eq!(hoggar_fiducial().norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn hoggar_orbit_closure() {
        let hoggar = build_hoggar_sic().unwrap();
        for p in three_qubit_pauli_elements() {
            let op = p.operator();
            for k in &hoggar.kets {
                let image = op.apply(k);
                let matches = hoggar
                    .kets
                    .iter()
                    .filter(|other| (image.overlap2(other) - 1.0).abs() < 1e-10)
                    .count();
                assert_eq!(matches, 1);
            }
        }
    }

    #[test]
    fn perturbed_set_fails_verification() {
        let mut hesse = build_hesse_sic();
        let mut entries: Vec<C64> = hesse.kets[0].entries().iter().copied().collect();
        entries[1] += C64::new(1e-3, 0.0);
        hesse.kets[0] = Ket::new(entries).normalized();
        hesse.projectors[0] = projector(&hesse.kets[0]).unwrap();
        assert!(!verify_sic(&hesse, DEFAULT_TOL).pass);
    }

    #[test]
    fn mub_duality() {
        let hesse = build_hesse_sic();
        let mubs = build_qutrit_mubs(&hesse).unwrap();
        // labels annihilate exactly their three SIC kets
        for mk in mubs.iter() {
            for m in 1..=9usize {
                let ov = mk.ket.overlap2(&hesse.kets[m - 1]);
                if mk.label.contains(&m) {
                    assert!(ov < 1e-10, "M_{:?} vs pi_{m}: {ov}", mk.label);
                } else {
                    assert!(ov > 1e-6);
                }
            }
        }
        // each SIC ket orthogonal to exactly 4 MUB kets
        for k in &hesse.kets {
            let count = mubs.iter().filter(|mk| mk.ket.overlap2(k) < 1e-10).count();
            assert_eq!(count, 4);
        }
        // orthonormal within a basis, squared overlap 1/3 across bases
        for (c1, basis1) in mubs.bases.iter().enumerate() {
            for (c2, basis2) in mubs.bases.iter().enumerate() {
                for (v1, m1) in basis1.iter().enumerate() {
                    for (v2, m2) in basis2.iter().enumerate() {
                        let ov = m1.ket.overlap2(&m2.ket);
                        let expect = if c1 == c2 {
                            if v1 == v2 {
                                1.0
                            } else {
                                0.0
                            }
                        } else {
                            1.0 / 3.0
                        };
                        assert_abs_diff_eq!(ov, expect, epsilon = 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn sic_json_round_trip() {
        let hesse = build_hesse_sic();
        let json = serde_json::to_string(&SicSetJson::from(&hesse)).unwrap();
        let back: SicSetJson = serde_json::from_str(&json).unwrap();
        let set = SicSet::try_from(&back).unwrap();
        for (a, b) in hesse.kets.iter().zip(set.kets.iter()) {
            assert!((a.overlap2(b) - 1.0).abs() < 1e-15);
        }
    }
}

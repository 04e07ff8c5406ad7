//! Mermin's three-qubit Bell inequality: the local-hidden-variable bound
//! by exhaustive enumeration, the GHZ state's algebraic violation, and
//! the Hoggar-SIC expectation-value analysis that locates the violation
//! in the deformation factor d+1.

use crate::qmath::{pauli_x, pauli_y, DensityOperator, Ket, Operator, C64};
use crate::repr::{state_to_probs, ConditionalMatrix, ReprError, SicProbVector};
use crate::sics::{three_qubit_pauli_elements, SicSet};
use serde::{Deserialize, Serialize};

/// The four observables of the inequality. The signed combination uses
/// O in {XXX, -XYY, -YXY, -YYX}.
pub struct MerminOperators {
    pub xxx: Operator,
    pub xyy: Operator,
    pub yxy: Operator,
    pub yyx: Operator,
}

impl MerminOperators {
    pub fn new() -> Self {
        let x = pauli_x();
        let y = pauli_y();
        MerminOperators {
            xxx: x.tensor(&x).tensor(&x),
            xyy: x.tensor(&y).tensor(&y),
            yxy: y.tensor(&x).tensor(&y),
            yyx: y.tensor(&y).tensor(&x),
        }
    }

    pub fn as_array(&self) -> [&Operator; 4] {
        [&self.xxx, &self.xyy, &self.yxy, &self.yyx]
    }
}

impl Default for MerminOperators {
    fn default() -> Self {
        Self::new()
    }
}

/// The GHZ state (|000> + |111>)/sqrt(2), the +1 eigenstate of XXX and
/// -1 eigenstate of XYY, YXY and YYX.
pub fn ghz_state() -> DensityOperator {
    let s = 1.0 / 2.0f64.sqrt();
    let mut entries = vec![C64::new(0.0, 0.0); 8];
    entries[0] = C64::new(s, 0.0);
    entries[7] = C64::new(s, 0.0);
    DensityOperator::pure(&Ket::new(entries)).expect("GHZ ket is normalized")
}

/// B(rho) = <XXX> - <XYY> - <YXY> - <YYX>.
pub fn bell_value(rho: &DensityOperator) -> f64 {
    assert_eq!(rho.dim(), 8, "Mermin's inequality lives in d = 8");
    let ops = MerminOperators::new();
    rho.expectation(&ops.xxx).re
        - rho.expectation(&ops.xyy).re
        - rho.expectation(&ops.yxy).re
        - rho.expectation(&ops.yyx).re
}

/// One dispersion-free assignment: signs for (X, Y) on each of the three
/// qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaAssignment {
    /// (lambda_1X, lambda_1Y, lambda_2X, lambda_2Y, lambda_3X, lambda_3Y)
    pub signs: [i8; 6],
}

impl LambdaAssignment {
    /// lX1 lX2 lX3 - lX1 lY2 lY3 - lY1 lX2 lY3 - lY1 lY2 lX3,
    /// in integer arithmetic.
    pub fn bell_combination(&self) -> i32 {
        let [x1, y1, x2, y2, x3, y3] = self.signs.map(i32::from);
        x1 * x2 * x3 - x1 * y2 * y3 - y1 * x2 * y3 - y1 * y2 * x3
    }
}

/// All 64 dispersion-free assignments with their Bell combinations.
/// Every value is exactly +2 or -2, which is the LHV bound.
pub fn enumerate_lhv() -> Vec<(LambdaAssignment, i32)> {
    (0..64u8)
        .map(|bits| {
            let signs =
                std::array::from_fn(|k| if bits >> (5 - k) & 1 == 0 { 1i8 } else { -1 });
            let lambda = LambdaAssignment { signs };
            let value = lambda.bell_combination();
            (lambda, value)
        })
        .collect()
}

/// 64 x 4 table of tr(O Pi_i) over the Hoggar projectors for
/// O in {XXX, XYY, YXY, YYX}. Every entry is +-1/3.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpectationTable {
    /// row labels: Pauli letters of the group element generating ket i
    pub labels: Vec<String>,
    /// rows[i] = [<XXX>_i, <XYY>_i, <YXY>_i, <YYX>_i]
    pub rows: Vec<[f64; 4]>,
}

impl ExpectationTable {
    /// Signed per-row combination <XXX>_i - <XYY>_i - <YXY>_i - <YYX>_i.
    pub fn row_combination(&self, i: usize) -> f64 {
        let [a, b, c, d] = self.rows[i];
        a - b - c - d
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("element,XXX,XYY,YXY,YYX,combination\n");
        for (label, i) in self.labels.iter().zip(0..) {
            let [a, b, c, d] = self.rows[i];
            out.push_str(&format!(
                "{label},{a:.12},{b:.12},{c:.12},{d:.12},{:.12}\n",
                self.row_combination(i)
            ));
        }
        out
    }
}

pub fn expectation_table(hoggar: &SicSet) -> ExpectationTable {
    assert_eq!(hoggar.dim, 8);
    let ops = MerminOperators::new();
    let labels = three_qubit_pauli_elements()
        .iter()
        .map(|e| e.letters())
        .collect();
    let rows = hoggar
        .projectors
        .iter()
        .map(|pi| ops.as_array().map(|op| op.mul(pi).trace().re))
        .collect();
    ExpectationTable { labels, rows }
}

/// How the GHZ Bell violation looks through the Hoggar SIC: each of the
/// four signed operators contributes a weighted sum of 1/9; the naive
/// (classical) total 4/9 sits inside [-2, 2]; the urgleichung factor
/// d + 1 = 9 lifts the total to 4.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GhzReport {
    pub per_operator_sums: [f64; 4],
    pub undeformed_total: f64,
    pub deformed_total: f64,
    pub lhv_interval: [f64; 2],
    pub undeformed_within_lhv: bool,
    pub deformed_within_lhv: bool,
    pub bell_value_direct: f64,
}

pub fn ghz_sic_analysis(hoggar: &SicSet) -> Result<GhzReport, ReprError> {
    let rho = ghz_state();
    let p = state_to_probs(&rho, hoggar)?;
    let table = expectation_table(hoggar);
    // signed operators O in {XXX, -XYY, -YXY, -YYX}
    let signs = [1.0, -1.0, -1.0, -1.0];
    let mut per_operator_sums = [0.0f64; 4];
    for (i, &pi) in p.p.iter().enumerate() {
        for k in 0..4 {
            per_operator_sums[k] += pi * signs[k] * table.rows[i][k];
        }
    }
    let undeformed_total: f64 = per_operator_sums.iter().sum();
    let deformed_total = 9.0 * undeformed_total;
    Ok(GhzReport {
        per_operator_sums,
        undeformed_total,
        deformed_total,
        lhv_interval: [-2.0, 2.0],
        undeformed_within_lhv: (-2.0..=2.0).contains(&undeformed_total),
        deformed_within_lhv: (-2.0..=2.0).contains(&deformed_total),
        bell_value_direct: bell_value(&rho),
    })
}

/// X eigenstate |+> or |-> as a qubit ket.
fn x_eigenket(sign: i8) -> Ket {
    let s = 1.0 / 2.0f64.sqrt();
    Ket::new(vec![C64::new(s, 0.0), C64::new(s * sign as f64, 0.0)])
}

/// Three-qubit X-basis ket for a sign pattern like (+, -, -).
pub fn x_basis_ket(signs: [i8; 3]) -> Ket {
    x_eigenket(signs[0])
        .tensor(&x_eigenket(signs[1]))
        .tensor(&x_eigenket(signs[2]))
}

/// The GHZ parity computation: the SIC overlap sum with each odd-parity
/// X-basis state is 5/288, and the urgleichung assembles those fractions
/// into P(odd) = 72 * 4 * (5/288) - 4 = 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParityReport {
    /// sum_i p_GHZ(H_i) p_s(H_i) for s in {+++, +--, -+-, --+}
    pub overlap_sums: [f64; 4],
    /// from the closed-form combination d(d+1) * sum - counting term
    pub p_odd: f64,
    /// the same probability computed through the urgleichung with the
    /// full X-basis POVM
    pub p_odd_urgleichung: f64,
}

const ODD_PARITY_SIGNS: [[i8; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

pub fn ghz_parity(hoggar: &SicSet) -> Result<ParityReport, ReprError> {
    let rho = ghz_state();
    let p_ghz = state_to_probs(&rho, hoggar)?;
    let parity_probs: Vec<SicProbVector> = ODD_PARITY_SIGNS
        .iter()
        .map(|&signs| {
            let state = DensityOperator::pure(&x_basis_ket(signs)).expect("unit ket");
            state_to_probs(&state, hoggar)
        })
        .collect::<Result<_, _>>()?;
    let overlap_sums: [f64; 4] = std::array::from_fn(|k| {
        p_ghz
            .p
            .iter()
            .zip(parity_probs[k].p.iter())
            .map(|(a, b)| a * b)
            .sum()
    });
    // P(odd) = d(d+1) sum_i p_GHZ [sum of the four p_s] - sum_i [same],
    // where the subtracted term is 4 because each p_s sums to 1.
    let combined: f64 = overlap_sums.iter().sum();
    let p_odd = 72.0 * combined - 4.0;

    // cross-check through the urgleichung with the complete X-basis POVM
    let mut odd_indices = Vec::new();
    let mut povm = Vec::with_capacity(8);
    for bits in 0..8u8 {
        let signs: [i8; 3] = std::array::from_fn(|k| if bits >> (2 - k) & 1 == 0 { 1 } else { -1 });
        if ODD_PARITY_SIGNS.contains(&signs) {
            odd_indices.push(povm.len());
        }
        povm.push(crate::qmath::projector(&x_basis_ket(signs)).expect("unit ket"));
    }
    let cond = ConditionalMatrix::new(&povm, hoggar, 1e-8)?;
    let q = crate::repr::urgleichung(&p_ghz, &cond)?;
    let p_odd_urgleichung = odd_indices.iter().map(|&j| q[j]).sum();

    Ok(ParityReport {
        overlap_sums,
        p_odd,
        p_odd_urgleichung,
    })
}

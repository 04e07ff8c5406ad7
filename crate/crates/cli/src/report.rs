//! The `report` battery: recompute every headline quantity and compare
//! against its expected value in one flat table.

use rand::Rng;
use serde::Serialize;

use sporadic_sics::hv::{
    anticoincidence, classical_cube_contains, dispersion_free_operator,
    enumerate_instruction_sets, hv_from_state, CUBE_HALF_WIDTH,
};
use sporadic_sics::ks::ks_report;
use sporadic_sics::mermin::{
    bell_value, enumerate_lhv, expectation_table, ghz_parity, ghz_sic_analysis, ghz_state,
};
use sporadic_sics::sics::{build_by_label, build_qutrit_mubs, verify_sic, SicLabel};
use sporadic_sics::{BlochVector, DensityOperator};

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub quantity: String,
    pub expected: f64,
    pub computed: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub pass: bool,
}

struct Battery {
    rows: Vec<ReportRow>,
    tol: f64,
}

impl Battery {
    fn row(&mut self, quantity: &str, expected: f64, computed: f64) {
        self.row_at(quantity, expected, computed, self.tol);
    }

    fn row_at(&mut self, quantity: &str, expected: f64, computed: f64, tol: f64) {
        let delta = (expected - computed).abs();
        self.rows.push(ReportRow {
            quantity: quantity.to_string(),
            expected,
            computed,
            delta,
            tolerance: tol,
            pass: delta <= tol,
        });
    }
}

pub fn full_battery(tol: f64, rng: &mut impl Rng) -> Result<Vec<ReportRow>, String> {
    let mut b = Battery { rows: Vec::new(), tol };
    let err = |e: &dyn std::fmt::Display| e.to_string();

    // equiangularity of the three families (criterion 1)
    for label in [
        SicLabel::QubitPlus,
        SicLabel::QubitMinus,
        SicLabel::Hesse,
        SicLabel::Hoggar,
    ] {
        let set = build_by_label(label).map_err(|e| err(&e))?;
        let d = set.dim as f64;
        let report = verify_sic(&set, tol);
        let max_offdiag = set
            .kets
            .iter()
            .enumerate()
            .flat_map(|(i, a)| {
                set.kets[..i].iter().map(move |c| a.overlap2(c))
            })
            .fold(0.0f64, f64::max);
        let name = serde_json::to_value(label)
            .expect("serializable")
            .as_str()
            .expect("string label")
            .to_string();
        b.row(
            &format!("cross overlap |<pi_i|pi_j>|^2 ({name})"),
            1.0 / (d + 1.0),
            max_offdiag,
        );
        b.row(
            &format!("resolution-of-identity deviation ({name})"),
            0.0,
            report.max_resolution_deviation,
        );
    }

    // LHV enumeration (criterion 2)
    let lhv = enumerate_lhv();
    b.row("lambda assignments", 64.0, lhv.len() as f64);
    b.row(
        "LHV minimum",
        -2.0,
        lhv.iter().map(|&(_, v)| v).min().unwrap() as f64,
    );
    b.row(
        "LHV maximum",
        2.0,
        lhv.iter().map(|&(_, v)| v).max().unwrap() as f64,
    );

    // Bell violation (criterion 3)
    b.row("B(GHZ)", 4.0, bell_value(&ghz_state()));

    let hoggar = build_by_label(SicLabel::Hoggar).map_err(|e| err(&e))?;

    // Hoggar expectation table (criterion 4)
    let table = expectation_table(&hoggar);
    let entries: Vec<f64> = table.rows.iter().flatten().map(|e| e.abs()).collect();
    b.row(
        "Hoggar table |entry| max",
        1.0 / 3.0,
        entries.iter().copied().fold(f64::MIN, f64::max),
    );
    b.row(
        "Hoggar table |entry| min",
        1.0 / 3.0,
        entries.iter().copied().fold(f64::MAX, f64::min),
    );
    let combos: Vec<f64> = (0..64).map(|i| table.row_combination(i).abs()).collect();
    b.row(
        "Hoggar row combination |value| max",
        2.0 / 3.0,
        combos.iter().copied().fold(f64::MIN, f64::max),
    );
    b.row(
        "Hoggar row combination |value| min",
        2.0 / 3.0,
        combos.iter().copied().fold(f64::MAX, f64::min),
    );

    // GHZ SIC analysis (criterion 5)
    let ghz = ghz_sic_analysis(&hoggar).map_err(|e| err(&e))?;
    for (k, label) in ["XXX", "-XYY", "-YXY", "-YYX"].iter().enumerate() {
        b.row(
            &format!("GHZ weighted sum ({label})"),
            1.0 / 9.0,
            ghz.per_operator_sums[k],
        );
    }
    b.row("GHZ un-deformed total", 4.0 / 9.0, ghz.undeformed_total);
    b.row("GHZ deformed total", 4.0, ghz.deformed_total);

    // GHZ parity (criterion 6): overlap sums at the tighter 1e-12
    let parity = ghz_parity(&hoggar).map_err(|e| err(&e))?;
    for (k, s) in ["+++", "+--", "-+-", "--+"].iter().enumerate() {
        b.row_at(
            &format!("GHZ X-basis overlap sum ({s})"),
            5.0 / 288.0,
            parity.overlap_sums[k],
            tol.min(1e-12),
        );
    }
    b.row("P(odd parity)", 1.0, parity.p_odd);
    b.row("P(odd) via urgleichung", 1.0, parity.p_odd_urgleichung);

    // instruction sets and anti-coincidence (criterion 7)
    let sets = enumerate_instruction_sets();
    b.row("instruction sets", 6.0, sets.len() as f64);
    let expected_patterns = ["++--", "+-+-", "+--+", "-++-", "-+-+", "--++"];
    let matched = sets
        .iter()
        .zip(expected_patterns.iter())
        .filter(|(s, &p)| s.pattern() == p)
        .count();
    b.row("instruction-set patterns matched", 6.0, matched as f64);
    let mut diag = Vec::new();
    let mut offdiag = Vec::new();
    let mut qh_dev: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let (quantum, hv) = anticoincidence(i, j);
            qh_dev = qh_dev.max((quantum - hv).abs());
            if i == j {
                diag.push(quantum);
            } else {
                offdiag.push(quantum);
            }
        }
    }
    b.row(
        "anti-coincidence diagonal max",
        1.0,
        diag.iter().copied().fold(f64::MIN, f64::max),
    );
    b.row(
        "anti-coincidence diagonal min",
        1.0,
        diag.iter().copied().fold(f64::MAX, f64::min),
    );
    b.row(
        "anti-coincidence off-diagonal max",
        1.0 / 3.0,
        offdiag.iter().copied().fold(f64::MIN, f64::max),
    );
    b.row(
        "anti-coincidence off-diagonal min",
        1.0 / 3.0,
        offdiag.iter().copied().fold(f64::MAX, f64::min),
    );
    b.row("anti-coincidence quantum-vs-HV deviation", 0.0, qh_dev);

    // classical region (criterion 8)
    let sic_plus = build_by_label(SicLabel::QubitPlus).map_err(|e| err(&e))?;
    let feasible_of = |bloch: &BlochVector| -> Result<bool, String> {
        let rho = DensityOperator::new(bloch.to_operator(), 1e-8).map_err(|e| e.to_string())?;
        Ok(hv_from_state(&rho, &sic_plus).map_err(|e| e.to_string())?.feasible)
    };
    let mut vertex_feasible = 0usize;
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                let v = BlochVector::new(
                    sx * CUBE_HALF_WIDTH,
                    sy * CUBE_HALF_WIDTH,
                    sz * CUBE_HALF_WIDTH,
                );
                if feasible_of(&v)? {
                    vertex_feasible += 1;
                }
            }
        }
    }
    b.row("cube vertices feasible", 8.0, vertex_feasible as f64);
    let mut pauli_infeasible = 0usize;
    for axis in 0..3 {
        for sign in [-1.0, 1.0] {
            let mut c = [0.0; 3];
            c[axis] = sign;
            let v = BlochVector::new(c[0], c[1], c[2]);
            if !feasible_of(&v)? {
                pauli_infeasible += 1;
            }
        }
    }
    b.row("Pauli eigenstates infeasible", 6.0, pauli_infeasible as f64);
    let mut agree = 0usize;
    let total = 1000usize;
    let mut sampled = 0usize;
    while sampled < total {
        let v = BlochVector::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm() > 1.0 {
            continue;
        }
        sampled += 1;
        // skip the knife edge where the two predicates may legitimately
        // round differently
        let near_face = [v.x, v.y, v.z]
            .iter()
            .any(|c| (c.abs() - CUBE_HALF_WIDTH).abs() < 1e-9);
        if near_face || feasible_of(&v)? == classical_cube_contains(&v, 1e-9) {
            agree += 1;
        }
    }
    b.row(
        "solver/cube agreement on random Bloch points",
        total as f64,
        agree as f64,
    );

    // dispersion-free octahedron (criterion 9)
    let mut non_psd = 0usize;
    let mut norms = Vec::new();
    for s in &sets {
        let (op, bloch) = dispersion_free_operator(s, &sic_plus).map_err(|e| err(&e))?;
        if !op.is_psd(1e-8).map_err(|e| e.to_string())? {
            non_psd += 1;
        }
        norms.push(bloch.norm());
    }
    b.row("octahedron operators non-PSD", 6.0, non_psd as f64);
    let sqrt3 = 3.0f64.sqrt();
    b.row(
        "octahedron Bloch norm max",
        sqrt3,
        norms.iter().copied().fold(f64::MIN, f64::max),
    );
    b.row(
        "octahedron Bloch norm min",
        sqrt3,
        norms.iter().copied().fold(f64::MAX, f64::min),
    );

    // Kochen-Specker contradiction (criterion 10)
    let hesse = build_by_label(SicLabel::Hesse).map_err(|e| err(&e))?;
    let mubs = build_qutrit_mubs(&hesse).map_err(|e| err(&e))?;
    let graph = sporadic_sics::ks::build_graph(&hesse, &mubs).map_err(|e| err(&e))?;
    let sic_degrees: Vec<usize> = (0..9).map(|i| graph.sic_degree(i)).collect();
    let mub_degrees: Vec<usize> = (0..4)
        .flat_map(|c| (0..3).map(move |v| (c, v)))
        .map(|(c, v)| graph.mub_degree(c, v))
        .collect();
    b.row(
        "KS SIC vertex degree",
        4.0,
        *sic_degrees.iter().max().unwrap() as f64,
    );
    b.row(
        "KS MUB vertex degree",
        3.0,
        *mub_degrees.iter().max().unwrap() as f64,
    );
    let ks = ks_report(&hesse, &mubs).map_err(|e| err(&e))?;
    b.row("KS basis choices", 81.0, ks.per_assignment.len() as f64);
    b.row("KS max sum of weights", 2.0, ks.max_achievable as f64);
    b.row("KS required sum of weights", 3.0, ks.required_sum as f64);
    b.row(
        "KS Born-rule check deviation",
        0.0,
        ks.born_check_max_deviation,
    );

    Ok(b.rows)
}

//! End-to-end acceptance battery: one pass/fail line per criterion,
//! covering the full library surface plus the CLI report command.
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines even on success.

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use sporadic_sics::hv::{
    anticoincidence, classical_cube_contains, dispersion_free_operator,
    enumerate_instruction_sets, hv_from_state, CUBE_HALF_WIDTH,
};
use sporadic_sics::ks::{build_graph, ks_report};
use sporadic_sics::mermin::{
    bell_value, enumerate_lhv, expectation_table, ghz_parity, ghz_sic_analysis, ghz_state,
};
use sporadic_sics::random::{random_density, random_povm};
use sporadic_sics::repr::{
    gauge_apply, probs_to_state, state_to_probs, urgleichung, ConditionalMatrix, GaugePlacement,
};
use sporadic_sics::sics::{build_by_label, build_qutrit_mubs, verify_sic, SicLabel};
use sporadic_sics::{BlochVector, DensityOperator};

const TOL: f64 = 1e-10;

struct Ledger {
    results: Vec<(usize, &'static str, bool)>,
}

impl Ledger {
    fn record(&mut self, n: usize, name: &'static str, pass: bool) {
        println!(
            "criterion {n:2} [{}] {name}",
            if pass { "PASS" } else { "FAIL" }
        );
        self.results.push((n, name, pass));
    }
}

#[test]
fn acceptance_criteria() {
    let mut ledger = Ledger { results: Vec::new() };

    // 1. equiangularity of all three SIC families
    let families = [
        SicLabel::QubitPlus,
        SicLabel::QubitMinus,
        SicLabel::Hesse,
        SicLabel::Hoggar,
    ];
    let pass1 = families.iter().all(|&label| {
        build_by_label(label)
            .map(|set| verify_sic(&set, TOL).pass)
            .unwrap_or(false)
    });
    ledger.record(1, "equiangularity: all SIC families verify at 1e-10", pass1);

    // 2. LHV enumeration is integer-exact with range {-2, +2}
    let lhv = enumerate_lhv();
    let values: Vec<i32> = lhv.iter().map(|&(_, v)| v).collect();
    let pass2 = values.len() == 64
        && values.iter().all(|&v| v == 2 || v == -2)
        && values.iter().any(|&v| v == 2)
        && values.iter().any(|&v| v == -2);
    ledger.record(2, "LHV bound: 64 assignments, exactly {+2, -2}", pass2);

    // 3. Bell violation from GHZ
    let pass3 = (bell_value(&ghz_state()) - 4.0).abs() <= TOL;
    ledger.record(3, "Bell violation: B(GHZ) = 4", pass3);

    let hoggar = build_by_label(SicLabel::Hoggar).expect("Hoggar SIC");

    // 4. Hoggar expectation table entries and row combinations
    let table = expectation_table(&hoggar);
    let entries_ok = table
        .rows
        .iter()
        .flatten()
        .all(|e| (e.abs() - 1.0 / 3.0).abs() <= TOL);
    let rows_ok = (0..64).all(|i| (table.row_combination(i).abs() - 2.0 / 3.0).abs() <= TOL);
    ledger.record(
        4,
        "Hoggar table: 256 entries = ±1/3, 64 row combinations = ±2/3",
        entries_ok && rows_ok,
    );

    // 5. GHZ SIC analysis totals
    let ghz = ghz_sic_analysis(&hoggar).expect("GHZ analysis");
    let pass5 = ghz
        .per_operator_sums
        .iter()
        .all(|&s| (s - 1.0 / 9.0).abs() <= TOL)
        && (ghz.undeformed_total - 4.0 / 9.0).abs() <= TOL
        && (ghz.deformed_total - 4.0).abs() <= TOL;
    ledger.record(
        5,
        "GHZ SIC analysis: per-operator 1/9, totals 4/9 and 4",
        pass5,
    );

    // 6. GHZ parity: overlap sums 5/288 at 1e-12, P(odd) = 1
    let parity = ghz_parity(&hoggar).expect("GHZ parity");
    let pass6 = parity
        .overlap_sums
        .iter()
        .all(|&s| (s - 5.0 / 288.0).abs() <= 1e-12)
        && (parity.p_odd - 1.0).abs() <= TOL
        && (parity.p_odd_urgleichung - 1.0).abs() <= TOL;
    ledger.record(6, "GHZ parity: overlap sums 5/288, P(odd) = 1", pass6);

    // 7. instruction sets and the singlet anti-coincidence table
    let sets = enumerate_instruction_sets();
    let expected_patterns = ["++--", "+-+-", "+--+", "-++-", "-+-+", "--++"];
    let patterns_ok = sets.len() == 6
        && sets
            .iter()
            .zip(expected_patterns.iter())
            .all(|(s, &p)| s.pattern() == p);
    let mut anti_ok = true;
    for i in 0..4 {
        for j in 0..4 {
            let (quantum, hv) = anticoincidence(i, j);
            let expected = if i == j { 1.0 } else { 1.0 / 3.0 };
            anti_ok &= (quantum - expected).abs() <= TOL && (quantum - hv).abs() <= TOL;
        }
    }
    ledger.record(
        7,
        "instruction sets: six patterns, anti-coincidence 1 / 1/3, quantum = HV",
        patterns_ok && anti_ok,
    );

    // 8. classical region: cube vertices in, Pauli eigenstates out,
    // solver matches cube geometry on random Bloch points
    let sic_plus = build_by_label(SicLabel::QubitPlus).expect("qubit SIC");
    let feasible_of = |b: &BlochVector| {
        let rho = DensityOperator::new(b.to_operator(), 1e-8).expect("valid state");
        hv_from_state(&rho, &sic_plus).expect("solver").feasible
    };
    let mut vertices_ok = true;
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                vertices_ok &= feasible_of(&BlochVector::new(
                    sx * CUBE_HALF_WIDTH,
                    sy * CUBE_HALF_WIDTH,
                    sz * CUBE_HALF_WIDTH,
                ));
            }
        }
    }
    let mut pauli_ok = true;
    for axis in 0..3 {
        for sign in [-1.0f64, 1.0] {
            let mut c = [0.0; 3];
            c[axis] = sign;
            pauli_ok &= !feasible_of(&BlochVector::new(c[0], c[1], c[2]));
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    let mut agreement_ok = true;
    let mut sampled = 0;
    while sampled < 1000 {
        let v = BlochVector::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm() > 1.0 {
            continue;
        }
        sampled += 1;
        let near_face = [v.x, v.y, v.z]
            .iter()
            .any(|c| (c.abs() - CUBE_HALF_WIDTH).abs() < 1e-9);
        if !near_face {
            agreement_ok &= feasible_of(&v) == classical_cube_contains(&v, 1e-9);
        }
    }
    ledger.record(
        8,
        "classical region: 8 vertices feasible, 6 eigenstates not, 1000-point cube agreement",
        vertices_ok && pauli_ok && agreement_ok,
    );

    // 9. dispersion-free octahedron
    let mut pass9 = sets.len() == 6;
    for s in &sets {
        let (op, bloch) = dispersion_free_operator(s, &sic_plus).expect("pseudo-state");
        pass9 &= !op.is_psd(1e-8).expect("eigensolve");
        pass9 &= (bloch.norm() - 3.0f64.sqrt()).abs() <= TOL;
    }
    ledger.record(
        9,
        "dispersion-free octahedron: six non-PSD operators at Bloch radius sqrt(3)",
        pass9,
    );

    // 10. Kochen-Specker contradiction
    let hesse = build_by_label(SicLabel::Hesse).expect("Hesse SIC");
    let mubs = build_qutrit_mubs(&hesse).expect("MUBs");
    let graph = build_graph(&hesse, &mubs).expect("orthogonality graph");
    let degrees_ok = (0..9).all(|i| graph.sic_degree(i) == 4)
        && (0..4).all(|c| (0..3).all(|v| graph.mub_degree(c, v) == 3));
    let ks = ks_report(&hesse, &mubs).expect("KS report");
    let pass10 = degrees_ok
        && ks.per_assignment.len() == 81
        && ks.max_achievable == 2
        && ks.required_sum == 3
        && ks.contradiction
        && ks.born_check_max_deviation <= TOL;
    ledger.record(
        10,
        "KS contradiction: degrees (4,3), 81 assignments, max 2 vs required 3",
        pass10,
    );

    // 11. property suites: round trip, urgleichung = Born, gauge placements
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    let mut round_trip_ok = true;
    for label in [SicLabel::QubitPlus, SicLabel::Hesse, SicLabel::Hoggar] {
        let sic = build_by_label(label).expect("SIC");
        for _ in 0..100 {
            let rho = random_density(sic.dim, &mut rng);
            let p = state_to_probs(&rho, &sic).expect("probs");
            let (op, psd) = probs_to_state(&p, &sic).expect("state");
            round_trip_ok &= psd && op.sub(rho.operator()).max_norm() <= TOL;
        }
    }
    let mut born_ok = true;
    let mut gauge_ok = true;
    for trial in 0..50 {
        let dim = if trial % 2 == 0 { 2 } else { 3 };
        let label = if dim == 2 { SicLabel::QubitPlus } else { SicLabel::Hesse };
        let sic = build_by_label(label).expect("SIC");
        let rho = random_density(dim, &mut rng);
        let povm = random_povm(dim, 5, &mut rng);
        let p = state_to_probs(&rho, &sic).expect("probs");
        let cond = ConditionalMatrix::new(&povm, &sic, 1e-8).expect("conditional");
        let q = urgleichung(&p, &cond).expect("urgleichung");
        for (j, d_j) in povm.iter().enumerate() {
            born_ok &= (q[j] - rho.expectation(d_j).re).abs() <= TOL;
        }
        let right = gauge_apply(&cond, &p, GaugePlacement::Right).expect("right");
        let left = gauge_apply(&cond, &p, GaugePlacement::Left).expect("left");
        let split = gauge_apply(&cond, &p, GaugePlacement::Split).expect("split");
        for j in 0..right.len() {
            gauge_ok &= (right[j] - left[j]).abs() <= TOL && (right[j] - split[j]).abs() <= TOL;
        }
    }
    ledger.record(
        11,
        "property suites: round trip, urgleichung = Born rule, gauge placements agree",
        round_trip_ok && born_ok && gauge_ok,
    );

    // 12. CLI report exits 0 and carries the paper-vs-computed table
    let output = Command::new(env!("CARGO_BIN_EXE_sics"))
        .args(["report", "--format", "markdown"])
        .output()
        .expect("run sics report");
    let stdout = String::from_utf8_lossy(&output.stdout);
    let pass12 = output.status.success()
        && [
            "B(GHZ)",
            "LHV minimum",
            "cross overlap",
            "Hoggar table",
            "GHZ X-basis overlap sum",
            "anti-coincidence",
            "cube vertices feasible",
            "octahedron Bloch norm",
            "KS max sum of weights",
            "KS required sum of weights",
        ]
        .iter()
        .all(|needle| stdout.contains(needle));
    ledger.record(12, "CLI: report exits 0 with the full comparison table", pass12);

    let failures: Vec<String> = ledger
        .results
        .iter()
        .filter(|(_, _, pass)| !pass)
        .map(|(n, name, _)| format!("criterion {n}: {name}"))
        .collect();
    assert!(failures.is_empty(), "failed: {}", failures.join("; "));
}

//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the computed evidence (run with `--nocapture` to see them). Every
//! tolerance is pinned here; the exact-identity criteria run at zero
//! tolerance.

use volrig::complex::{braced_hinge, SimplicialComplex};
use volrig::geometry::{random_rational_embedding, LengthTable};
use volrig::inclusion::{inclusion_rank, scaled_jacobian_reduction};
use volrig::matching::{
    cm_matching_check, hall_deficiency, matching_rank_check, DeficiencyCfg, OracleCfg,
};
use volrig::matrices::fd_jacobian_check;
use volrig::rank::{generic_rank_cm, generic_rank_rigidity, generic_rank_volume, rows_rank, LengthMode};
use volrig::util::binomial;
use volrig::verify::{
    check_altitude_factorization, check_chain_rule, check_complete_rank, check_top_rank,
    check_vertex_addition, check_volume_quadratic,
};
use volrig::RankCfg;

fn cfg(seed: u64) -> RankCfg {
    RankCfg {
        seed,
        ..RankCfg::default()
    }
}

/// Grid cells of the main rank formula: for each ambient dimension d, every
/// face dimension k < d with n in the formula's range, capped at n <= 8.
fn formula_grid(d_max: usize, n_max: usize) -> Vec<(usize, usize, usize)> {
    let mut cells = Vec::new();
    for d in 2..=d_max {
        for k in 1..d {
            let n_min = if k + 1 == d { d + 2 } else { d + 1 };
            for n in n_min..=n_max {
                cells.push((d, k, n));
            }
        }
    }
    cells
}

#[test]
fn criterion_1_complete_rank_grid() {
    let mut lines = Vec::new();
    for (d, k, n) in formula_grid(4, 8) {
        let v = check_complete_rank(d, k, n, &cfg(0xACC1)).unwrap();
        let expected = d * n - binomial(d + 1, 2);
        assert!(
            v.pass,
            "grid cell d={d} k={k} n={n}: computed {:?}, expected {expected}",
            v.computed
        );
        assert!(v.mode == "certified", "cell d={d} k={k} n={n} not certified");
        lines.push(format!("({d},{k},{n})={expected}"));
    }
    println!(
        "criterion 1: PASS, complete-complex rank dn-C(d+1,2) exact-confirmed on {} cells: {}",
        lines.len(),
        lines.join(" ")
    );
}

#[test]
fn criterion_2_simplex_skeleton_rank() {
    for d in 2..=5usize {
        let x = SimplicialComplex::complete(d + 1, d - 1).unwrap();
        let report = generic_rank_volume(&x, d, &cfg(0xACC2)).unwrap();
        assert_eq!(report.value, d + 1, "d = {d}");
        assert!(report.certified_equal, "d = {d}: full row rank pins the value");
    }
    println!("criterion 2: PASS, rank d+1 for the (d-1)-skeleton of the d-simplex, d = 2..5, exact");
}

#[test]
fn criterion_3_top_dimension_rank() {
    for (d, n) in [(2usize, 4usize), (2, 5), (3, 5), (3, 6)] {
        let v = check_top_rank(d, n, &cfg(0xACC3)).unwrap();
        let expected = d * n - (d * d + d - 1);
        assert!(v.pass, "d={d} n={n}: {:?} vs {expected}", v.computed);
    }
    println!("criterion 3: PASS, k=d rank dn-(d^2+d-1) exact on (2,4),(2,5),(3,5),(3,6)");
}

#[test]
fn criterion_4_braced_hinge_ranks() {
    let (x, labels) = braced_hinge();
    let c = cfg(0xACC4);
    let r = generic_rank_rigidity(&x.one_skeleton().unwrap(), 3, &c).unwrap();
    assert_eq!(r.value, 21);
    assert!(r.certified_equal);
    let cm = generic_rank_cm(&x, LengthMode::FromEmbedding(3), &c).unwrap();
    assert_eq!(cm.value, 21);
    assert!(cm.certified_equal);
    let b = generic_rank_volume(&x, 3, &c).unwrap();
    assert_eq!(b.value, 20);
    let hinge_faces: Vec<_> = x
        .faces(2)
        .iter()
        .filter(|f| !f.contains_vertex(labels.apex))
        .cloned()
        .collect();
    assert_eq!(hinge_faces.len(), 18);
    let rows = rows_rank(&x, 3, &hinge_faces, &c).unwrap();
    assert_eq!(rows.value, 17);
    let scan = hall_deficiency(
        &x,
        3,
        &DeficiencyCfg {
            seed: c.seed,
            budget: 2048,
            ..DeficiencyCfg::default()
        },
    )
    .unwrap();
    assert_eq!(scan.min_deficiency, -1);
    assert_eq!(scan.witness.len(), 18);
    assert!(scan.witness.iter().all(|f| !f.contains_vertex(labels.apex)));
    println!(
        "criterion 4: PASS, braced hinge: skeleton rank 21, length-Jacobian rank 21, volume rank 20, \
         hinged rows rank 17 with 18 faces, deficiency witness -1 found"
    );
}

#[test]
fn criterion_5_exact_identities_three_seeds() {
    let (hinge, _) = braced_hinge();
    for seed in [101u64, 202, 303] {
        // chain rule: product path vs independent per-simplex assembly
        let x = SimplicialComplex::complete(4, 2).unwrap();
        assert!(check_chain_rule(&x, 3, seed).unwrap().pass, "seed {seed}");
        assert!(check_chain_rule(&hinge, 3, seed).unwrap().pass, "seed {seed}");
        // altitude factorization (scalar -2/k^2; equals -2/(k!)^2 at k = 2)
        // and the per-face altitude-sum identity, both exact
        let t = SimplicialComplex::complete(4, 2).unwrap();
        assert!(check_altitude_factorization(&t, 2, seed).unwrap().pass);
        let q = SimplicialComplex::complete(5, 3).unwrap();
        assert!(check_altitude_factorization(&q, 3, seed).unwrap().pass);
    }
    // centroid-embedding Jacobian reduces to the inclusion matrix by exact
    // row/column scaling (deterministic construction, no sampling)
    for d in 2..=4usize {
        let r = scaled_jacobian_reduction(d).unwrap();
        assert!(r.pass(), "scaling reduction d = {d}");
    }
    println!(
        "criterion 5: PASS, chain rule, altitude factorization (scalar -2/k^2, forced by the \
         Jacobian normalization; equal to -2/(k!)^2 at k = 2), altitude sums, and scaling \
         reduction d=2..4, all exact, 3 seeds"
    );
}

#[test]
fn criterion_6_inclusion_ranks() {
    // square case over d+2 elements: invertible
    for d in 2..=5usize {
        assert_eq!(
            inclusion_rank(d + 2, d, 2).unwrap(),
            binomial(d + 2, 2),
            "d = {d}"
        );
    }
    // full column rank over d+1 elements for k <= d-2
    for d in 3..=6usize {
        for k in 1..=d - 2 {
            assert_eq!(
                inclusion_rank(d + 1, k + 1, 2).unwrap(),
                binomial(d + 1, 2),
                "d = {d}, k = {k}"
            );
        }
    }
    // full row rank d+1 for the (d, 2) matrix over d+1 elements
    for d in 2..=6usize {
        assert_eq!(inclusion_rank(d + 1, d, 2).unwrap(), d + 1, "d = {d}");
    }
    println!("criterion 6: PASS, inclusion-matrix ranks exact for all required (n, s, t) cells");
}

#[test]
fn criterion_7_vertex_addition_chain() {
    for d in 2..=4usize {
        for k in 1..d {
            // chain: complete complexes on d+1, d+2, d+3 vertices
            for n in [d + 2, d + 3] {
                let x = SimplicialComplex::complete(n, k).unwrap();
                let v = check_vertex_addition(&x, 0, d, &cfg(0xACC7)).unwrap();
                assert!(v.pass, "d={d} k={k} n={n}: {:?}", v.computed);
            }
        }
    }
    println!(
        "criterion 7: PASS, vertex addition raises the rank by >= d along every \
         complete-complex chain on the grid"
    );
}

#[test]
fn criterion_8_volume_quadratic_coefficients() {
    let v = check_volume_quadratic(&LengthTable::regular_unit(3)).unwrap();
    assert!(v.pass);
    assert_eq!(v.computed["a"], "-1/16");
    assert_eq!(
        v.computed["roots"],
        serde_json::json!(["0", "4"]),
        "unit triangle roots"
    );
    assert_eq!(v.computed["critical"], "2");
    let v = check_volume_quadratic(&LengthTable::regular_unit(4)).unwrap();
    assert!(v.pass);
    assert_eq!(v.computed["a"], "-1/144");
    assert_eq!(v.computed["roots"], serde_json::json!(["0", "3"]));
    println!(
        "criterion 8: PASS, leading coefficients -1/16 (k=2) and -1/144 (k=3), \
         critical point strictly interior, exact rationals"
    );
}

#[test]
fn criterion_9_fd_jacobian() {
    // small integer coordinates keep the float evaluation exact enough for
    // the central difference (the map is quadratic per coordinate)
    let x = SimplicialComplex::complete(4, 2).unwrap();
    let p = random_rational_embedding(4, 3, 0xACC9, 6);
    let dev1 = fd_jacobian_check(&x, &p, 1e-6).unwrap();
    assert!(dev1 < 1e-5, "deviation {dev1}");
    let x = SimplicialComplex::complete(5, 3).unwrap();
    let p = random_rational_embedding(5, 4, 0xACC9 + 1, 6);
    let dev2 = fd_jacobian_check(&x, &p, 1e-6).unwrap();
    assert!(dev2 < 1e-5, "deviation {dev2}");
    let (hinge, _) = braced_hinge();
    let p = random_rational_embedding(9, 3, 0xACC9 + 2, 6);
    let dev3 = fd_jacobian_check(&hinge, &p, 1e-6).unwrap();
    assert!(dev3 < 1e-5, "deviation {dev3}");
    println!(
        "criterion 9: PASS, central-difference deviations {dev1:.2e}, {dev2:.2e}, {dev3:.2e}, \
         all below 1e-5"
    );
}

#[test]
fn criterion_10_matching_characterizations() {
    let oracle = OracleCfg {
        seed: 0xACCA,
        bits: 16,
    };
    // complete 2-complex on 5 vertices: both sides 9 (left side certified)
    let x = SimplicialComplex::complete(5, 2).unwrap();
    let check = matching_rank_check(&x, 3, &cfg(0xACCA), &oracle).unwrap();
    assert_eq!(check.lhs.value, 9);
    assert_eq!(check.rhs.value, 9);
    assert!(check.agree);
    // braced hinge: left side is pinned at 20; the right side is reported,
    // and a disagreement would be a finding with full witness data, not a
    // test failure
    let (hinge, _) = braced_hinge();
    let hc = matching_rank_check(&hinge, 3, &cfg(0xACCA), &oracle).unwrap();
    assert_eq!(hc.lhs.value, 20);
    if hc.agree {
        println!(
            "criterion 10: report, braced hinge: volume rank {} == matroid intersection {} \
             (dual {}, certified: {})",
            hc.lhs.value, hc.rhs.value, hc.rhs.dual_value, hc.rhs.certified
        );
    } else {
        println!(
            "criterion 10: FINDING, braced hinge instance disagreement: volume rank {} vs \
             matroid intersection {} (dual {}, certified: {}); witness edges: {:?}",
            hc.lhs.value, hc.rhs.value, hc.rhs.dual_value, hc.rhs.certified,
            hc.rhs.independent_edges
        );
    }
    // length-Jacobian matching characterization on the same complete complex
    let cm = cm_matching_check(&x, &cfg(0xACCA)).unwrap();
    assert_eq!(cm.lhs.value, 10);
    assert_eq!(cm.rhs, 10);
    assert!(cm.agree);
    println!("criterion 10: PASS, instance agreements 9=9 and 10=10; hinge sides reported above");
}

#[test]
fn criterion_11_finite_grid_substitutes_for_unbounded_n() {
    // the unbounded-n statements are represented by: (a) the exact finite
    // grid of criteria 1-3, and (b) the vertex-addition inequality as the
    // inductive step, checked here once more on the largest grid dimension
    let x = SimplicialComplex::complete(7, 3).unwrap();
    let v = check_vertex_addition(&x, 0, 4, &cfg(0xACCB)).unwrap();
    assert!(v.pass);
    let report = generic_rank_volume(&SimplicialComplex::complete(8, 3).unwrap(), 4, &cfg(0xACCB))
        .unwrap();
    assert!(report.certified_equal);
    assert_eq!(report.value, 4 * 8 - binomial(5, 2));
    println!(
        "criterion 11: PASS, finite grid (criteria 1-3) plus the vertex-addition step \
         (criterion 7) stand in for the unbounded-n statements; no claim beyond desk scale"
    );
}

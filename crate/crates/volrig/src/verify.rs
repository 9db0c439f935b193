//! One named checker per claim. Each checker computes the claim's quantities
//! on a concrete instance and returns a structured verdict; the test suite
//! and the CLI both drive these.
//!
//! Verdicts are data, not logs. A verdict never reports a pass on a
//! Monte-Carlo equality without flagging the sampling semantics in its
//! `mode` field: `exact` means no sampling was involved, `certified` means
//! the sampled lower bound met the a-priori upper bound, and `lower-bound`
//! means the computed value is an exactly verified rank of a sampled
//! instance that the genericity heuristic cannot promote to a proof.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{braced_hinge, SimplicialComplex};
use crate::geometry::{
    cm_squared_volume, random_rational_embedding, squared_edge_lengths, volume_quadratic,
    LengthTable,
};
use crate::inclusion::scaled_jacobian_reduction;
use crate::linalg::RationalMatrix;
use crate::matching::{
    cm_matching_check, hall_deficiency, matching_rank_check, DeficiencyCfg, OracleCfg,
};
use crate::matrices::{
    altitude_factor_scalar, altitude_factorization, cm_jacobian, rigidity_matrix,
    volume_rigidity_matrix,
};
use crate::rank::{
    generic_rank_cm, generic_rank_rigidity, generic_rank_volume, rows_rank, LengthMode, RankCfg,
    RankReport,
};
use crate::util::binomial;
use crate::{Error, Result};

/// Structured outcome of one checker run.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub params: Value,
    pub computed: Value,
    pub expected: Value,
    pub pass: bool,
    pub mode: String,
    pub seed: u64,
    pub runtime_ms: u128,
}

fn finish(
    claim: &str,
    params: Value,
    computed: Value,
    expected: Value,
    pass: bool,
    mode: &str,
    seed: u64,
    start: Instant,
) -> Verdict {
    Verdict {
        claim: claim.to_string(),
        params,
        computed,
        expected,
        pass,
        mode: mode.to_string(),
        seed,
        runtime_ms: start.elapsed().as_millis(),
    }
}

fn report_mode(r: &RankReport) -> &'static str {
    if r.certified_equal {
        "certified"
    } else {
        "lower-bound"
    }
}

fn report_json(r: &RankReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

/// Rank of the complete k-complex on n vertices in dimension d equals
/// `dn - C(d+1, 2)`. Routes the boundary parameter cells to the checkers
/// that cover them: k = d to [`check_top_rank`], (k, n) = (d-1, d+1) to
/// [`check_simplex_skeleton_rank`].
pub fn check_complete_rank(d: usize, k: usize, n: usize, cfg: &RankCfg) -> Result<Verdict> {
    if k == d {
        return check_top_rank(d, n, cfg);
    }
    if k + 1 == d && n == d + 1 {
        return check_simplex_skeleton_rank(d, cfg);
    }
    let start = Instant::now();
    if d < 2 || k < 1 || k >= d {
        return Err(Error::ParamRange(format!(
            "need d >= 2 and 1 <= k <= d-1, got d={d} k={k}"
        )));
    }
    let min_n = if k + 1 == d { d + 2 } else { d + 1 };
    if n < min_n {
        return Err(Error::ParamRange(format!(
            "need n >= {min_n} for d={d} k={k}, got n={n}"
        )));
    }
    let x = SimplicialComplex::complete(n, k)?;
    let report = generic_rank_volume(&x, d, cfg)?;
    let expected = d * n - binomial(d + 1, 2);
    let pass = report.value == expected && report.certified_equal;
    Ok(finish(
        "complete-rank",
        json!({ "d": d, "k": k, "n": n }),
        report_json(&report),
        json!(expected),
        pass,
        report_mode(&report),
        cfg.seed,
        start,
    ))
}

/// Rank of the (d-1)-skeleton of the d-simplex in dimension d equals d+1:
/// the matrix has exactly d+1 rows, so full row rank forces the value.
pub fn check_simplex_skeleton_rank(d: usize, cfg: &RankCfg) -> Result<Verdict> {
    let start = Instant::now();
    if d < 2 {
        return Err(Error::ParamRange("need d >= 2".into()));
    }
    let x = SimplicialComplex::complete(d + 1, d - 1)?;
    let rows = x.face_count(d - 1);
    let report = generic_rank_volume(&x, d, cfg)?;
    let expected = d + 1;
    let pass = report.value == expected && rows == expected && report.certified_equal;
    Ok(finish(
        "skeleton-rank",
        json!({ "d": d }),
        json!({ "report": report_json(&report), "row_count": rows }),
        json!(expected),
        pass,
        report_mode(&report),
        cfg.seed,
        start,
    ))
}

/// Rank of the complete d-complex on n vertices in dimension d equals
/// `dn - (d^2 + d - 1)`. That sits strictly below the a-priori bound, so the
/// verdict can only certify the sampled value, never the generic one.
pub fn check_top_rank(d: usize, n: usize, cfg: &RankCfg) -> Result<Verdict> {
    let start = Instant::now();
    if d < 1 || n < d + 1 {
        return Err(Error::ParamRange(format!(
            "need n >= d+1 >= 2, got d={d} n={n}"
        )));
    }
    let x = SimplicialComplex::complete(n, d)?;
    let report = generic_rank_volume(&x, d, cfg)?;
    let expected = d * n - (d * d + d - 1);
    let pass = report.value == expected;
    Ok(finish(
        "top-rank",
        json!({ "d": d, "n": n }),
        report_json(&report),
        json!(expected),
        pass,
        report_mode(&report),
        cfg.seed,
        start,
    ))
}

/// Adding a vertex whose link is the complete (k-1)-complex raises the
/// volume rank by at least d.
pub fn check_vertex_addition(
    x: &SimplicialComplex,
    v: usize,
    d: usize,
    cfg: &RankCfg,
) -> Result<Verdict> {
    let start = Instant::now();
    let k = x.dim();
    let n = x.n_vertices();
    if k < 1 || k + 1 > d || n < d + 1 {
        return Err(Error::ParamRange(format!(
            "need 1 <= k <= d-1 and n >= d+1, got k={k} d={d} n={n}"
        )));
    }
    let link = x.link(v)?;
    let complete_link = if k == 1 {
        // complete 0-complex: the bare vertex set
        link.dim() == 0 && link.n_vertices() == n - 1
    } else {
        link == SimplicialComplex::complete(n - 1, k - 1)?
    };
    if !complete_link {
        return Err(Error::ParamRange(format!(
            "link of vertex {v} is not the complete {}-complex",
            k as i64 - 1
        )));
    }
    let whole = generic_rank_volume(x, d, cfg)?;
    // deleting a vertex can strand edges outside every top face; the rank
    // only involves top-face rows (stranded edges are zero columns of the
    // length Jacobian), so restrict to the top-dimensional part
    let deleted_complex = x.delete_vertex(v)?;
    let deleted = if deleted_complex.dim() < k {
        RankReport {
            value: 0,
            trials: cfg.trials,
            seed: cfg.seed,
            mode: cfg.mode,
            upper_bound: 0,
            certified_equal: true,
        }
    } else {
        let pure_part = if deleted_complex.is_pure() {
            deleted_complex
        } else {
            let top: Vec<crate::complex::Face> = deleted_complex.faces(k).to_vec();
            deleted_complex.restriction(&top)?
        };
        generic_rank_volume(&pure_part, d, cfg)?
    };
    let pass = whole.value >= deleted.value + d;
    // the inequality direction is sound when the smaller side is certified;
    // otherwise both sides are lower bounds and the verdict says so
    let mode = if deleted.certified_equal {
        if whole.certified_equal {
            "certified"
        } else {
            "lower-bound-vs-certified"
        }
    } else {
        "heuristic-both-lower-bounds"
    };
    Ok(finish(
        "vertex-addition",
        json!({ "v": v, "d": d, "n": n, "k": k }),
        json!({ "whole": report_json(&whole), "deleted": report_json(&deleted) }),
        json!(format!("whole >= deleted + {d}")),
        pass,
        mode,
        cfg.seed,
        start,
    ))
}

/// The squared volume of a k-simplex as a function of one squared edge
/// length is a downward parabola: leading coefficient
/// `-vol_{k-2}(opposite)^2 / (4 k^2 (k-1)^2)`, a unique critical point at
/// `-B/2A` strictly between the two roots.
pub fn check_volume_quadratic(fixed: &LengthTable) -> Result<Verdict> {
    let start = Instant::now();
    let q = volume_quadratic(fixed)?;
    let k = q.k;
    let opposite: Vec<usize> = (2..=k).collect();
    let opp_vol2 = cm_squared_volume(&fixed.sub_table(&opposite));
    let scale = BigInt::from(4 * k * k * (k - 1) * (k - 1));
    let expected_a = -opp_vol2 / BigRational::from_integer(scale);
    let crit = q.critical_point();
    let disc = q.discriminant();
    let a_matches = q.a == expected_a;
    let critical_unique = q.derivative(&crit).is_zero() && q.a.is_negative();
    // with A < 0 the critical point lies strictly between the roots exactly
    // when the parabola's maximum is positive, i.e. the discriminant is > 0
    let interior = disc.is_positive();
    let roots = q.rational_roots();
    let roots_vanish = roots
        .as_ref()
        .map(|(r1, r2)| q.eval(r1).is_zero() && q.eval(r2).is_zero())
        .unwrap_or(true);
    let pass = a_matches && critical_unique && interior && roots_vanish;
    let rat = crate::util::rat_to_string;
    Ok(finish(
        "volume-quadratic",
        json!({ "k": k }),
        json!({
            "a": rat(&q.a),
            "b": rat(&q.b),
            "c": rat(&q.c),
            "critical": rat(&crit),
            "roots": roots.map(|(r1, r2)| vec![rat(&r1), rat(&r2)]),
        }),
        json!({ "a": rat(&expected_a) }),
        pass,
        "exact",
        0,
        start,
    ))
}

/// Optional stretch form of the quadratic check, off the default paths:
/// with t* the critical squared length and v*^2 = f(t*) the maximal squared
/// volume, verifies `B = -2 A t*` and `C = A t*^2 + v*^2` exactly.
pub fn check_volume_quadratic_stretch(fixed: &LengthTable) -> Result<Verdict> {
    let start = Instant::now();
    let q = volume_quadratic(fixed)?;
    let crit = q.critical_point();
    let peak = q.eval(&crit);
    let two = BigRational::from_integer(BigInt::from(2));
    let b_ok = q.b == -(&two * &q.a * &crit);
    let c_ok = q.c == &q.a * &crit * &crit + &peak;
    let rat = crate::util::rat_to_string;
    Ok(finish(
        "volume-quadratic-stretch",
        json!({ "k": q.k }),
        json!({
            "critical": rat(&crit),
            "peak": rat(&peak),
            "b_identity": b_ok,
            "c_identity": c_ok,
        }),
        json!({ "b_identity": true, "c_identity": true }),
        b_ok && c_ok,
        "exact",
        0,
        start,
    ))
}

/// The chain rule is exact: the volume rigidity matrix equals the
/// Cayley–Menger Jacobian times the rigidity matrix, entry for entry, and
/// also equals an independently assembled per-simplex product (local
/// quadratic-coefficient derivatives times local rigidity rows).
pub fn check_chain_rule(x: &SimplicialComplex, d: usize, seed: u64) -> Result<Verdict> {
    let start = Instant::now();
    let n = x.n_vertices();
    let k = x.dim();
    let p = random_rational_embedding(n, d, seed, 12);
    let b = volume_rigidity_matrix(x, &p)?;
    let lengths = squared_edge_lengths(x, &p)?;
    let c = cm_jacobian(x, &lengths)?;
    let r = rigidity_matrix(&x.one_skeleton()?, &p)?;
    let product_equal = b.matrix == c.matrix.matmul(&r.matrix)?;

    // independent per-simplex assembly; for k >= 2 the derivative of each
    // squared volume in one squared edge length comes from the quadratic
    // coefficients (2At + B), a different algebraic route than the cofactor
    // entries of the Jacobian builder
    let mut alt = RationalMatrix::zeros(b.matrix.rows(), b.matrix.cols());
    let edge_positions: std::collections::HashMap<(usize, usize), usize> = x
        .edges()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    for (row, sigma) in x.faces(k).iter().enumerate() {
        let vs = sigma.vertices();
        for (a_idx, b_idx) in sigma
            .edge_pairs()
            .iter()
            .map(|&(u, v)| {
                (
                    vs.iter().position(|&w| w == u).unwrap(),
                    vs.iter().position(|&w| w == v).unwrap(),
                )
            })
            .collect::<Vec<_>>()
        {
            let (u, v) = (vs[a_idx], vs[b_idx]);
            let t = &lengths.values[edge_positions[&(u, v)]];
            let deriv = if k == 1 {
                BigRational::from_integer(1.into())
            } else {
                // reorder so the edge under study is the local {0, 1}
                let mut order = vec![u, v];
                order.extend(vs.iter().copied().filter(|&w| w != u && w != v));
                let mut table = LengthTable::zeros(k + 1);
                for i in 0..=k {
                    for j in i + 1..=k {
                        let (a, bb) = if order[i] < order[j] {
                            (order[i], order[j])
                        } else {
                            (order[j], order[i])
                        };
                        table.set(i, j, lengths.values[edge_positions[&(a, bb)]].clone());
                    }
                }
                let quad = volume_quadratic(&table)?;
                quad.derivative(t)
            };
            // scatter derivative times the local rigidity row
            for c_idx in 0..d {
                let diff = (&p.point(u)?[c_idx] - &p.point(v)?[c_idx])
                    * BigRational::from_integer(2.into());
                let add_u = alt.get(row, u * d + c_idx) + &deriv * &diff;
                alt.set(row, u * d + c_idx, add_u);
                let add_v = alt.get(row, v * d + c_idx) - &deriv * &diff;
                alt.set(row, v * d + c_idx, add_v);
            }
        }
    }
    let local_equal = alt == b.matrix;
    let pass = product_equal && local_equal;
    Ok(finish(
        "chain-rule",
        json!({ "d": d, "n": n, "k": k }),
        json!({ "product_equal": product_equal, "local_assembly_equal": local_equal }),
        json!(true),
        pass,
        "exact",
        seed,
        start,
    ))
}

/// The altitude factorization is exact: `B = -2/k^2 L D P`, and each
/// k-face's altitude vectors weighted by their facet's squared volume sum
/// to zero.
pub fn check_altitude_factorization(
    x: &SimplicialComplex,
    d: usize,
    seed: u64,
) -> Result<Verdict> {
    let start = Instant::now();
    let k = x.dim();
    let n = x.n_vertices();
    // resample on degenerate facets; generic integer embeddings avoid them
    let mut attempt = 0;
    let (p, b, l, dm, pm) = loop {
        let p = random_rational_embedding(n, d, crate::rng::derive_seed(seed, attempt), 12);
        match altitude_factorization(x, &p) {
            Ok((l, dm, pm)) => {
                let b = volume_rigidity_matrix(x, &p)?;
                break (p, b, l, dm, pm);
            }
            Err(Error::DegenerateBase) if attempt < 8 => attempt += 1,
            Err(e) => return Err(e),
        }
    };
    let product = l.matrix.matmul(&dm.matrix)?.matmul(&pm.matrix)?;
    let scalar = altitude_factor_scalar(k);
    let mut factored_ok = true;
    'cmp: for i in 0..product.rows() {
        for j in 0..product.cols() {
            if product.get(i, j) * &scalar != *b.matrix.get(i, j) {
                factored_ok = false;
                break 'cmp;
            }
        }
    }
    // altitude-sum identity per k-face
    let mut sums_ok = true;
    for sigma in x.faces(k) {
        let mut acc = vec![BigRational::zero(); d];
        for &v in sigma.vertices() {
            let base = sigma.without(v).expect("k >= 1");
            let w = crate::geometry::simplex_squared_volume(&p, &base)?;
            let h = crate::geometry::altitude_vector(&p, sigma, v)?;
            for (a, hc) in acc.iter_mut().zip(&h) {
                *a += &w * hc;
            }
        }
        if acc.iter().any(|c| !c.is_zero()) {
            sums_ok = false;
        }
    }
    let pass = factored_ok && sums_ok;
    Ok(finish(
        "altitude-factorization",
        json!({ "d": d, "n": n, "k": k }),
        json!({ "factorization_exact": factored_ok, "altitude_sums_vanish": sums_ok }),
        json!(true),
        pass,
        "exact",
        seed,
        start,
    ))
}

/// The braced-hinge complex: skeleton rank 21 and Cayley–Menger Jacobian
/// rank 21, but volume rank 20; the hinged part's 18 triangles span a
/// skeleton of rank 17, the Hall-type witness.
pub fn check_braced_hinge(cfg: &RankCfg) -> Result<Verdict> {
    let start = Instant::now();
    let (x, labels) = braced_hinge();
    let r_rank = generic_rank_rigidity(&x.one_skeleton()?, 3, cfg)?;
    let c_rank = generic_rank_cm(&x, LengthMode::FromEmbedding(3), cfg)?;
    let b_rank = generic_rank_volume(&x, 3, cfg)?;
    let hinge_faces: Vec<crate::complex::Face> = x
        .faces(2)
        .iter()
        .filter(|f| !f.contains_vertex(labels.apex))
        .cloned()
        .collect();
    let rows = rows_rank(&x, 3, &hinge_faces, cfg)?;
    let scan = hall_deficiency(
        &x,
        3,
        &DeficiencyCfg {
            seed: cfg.seed,
            budget: 2048,
            ..DeficiencyCfg::default()
        },
    )?;
    let witness_ok = scan.min_deficiency == -1 && scan.witness.len() == 18;
    let pass = r_rank.value == 21
        && c_rank.value == 21
        && b_rank.value == 20
        && rows.value == 17
        && hinge_faces.len() == 18
        && witness_ok;
    // the 20 and 17 sit strictly below their a-priori bounds, so the claim
    // as a whole stays a sampled lower-bound statement even though the
    // skeleton and Jacobian ranks certify
    let mode = "lower-bound";
    Ok(finish(
        "braced-hinge",
        json!({ "d": 3 }),
        json!({
            "rigidity_rank": report_json(&r_rank),
            "cm_rank": report_json(&c_rank),
            "volume_rank": report_json(&b_rank),
            "hinge_rows_rank": report_json(&rows),
            "hinge_face_count": hinge_faces.len(),
            "min_deficiency": scan.min_deficiency,
            "witness_size": scan.witness.len(),
        }),
        json!({
            "rigidity_rank": 21, "cm_rank": 21, "volume_rank": 20,
            "hinge_rows_rank": 17, "hinge_face_count": 18, "min_deficiency": -1
        }),
        pass,
        mode,
        cfg.seed,
        start,
    ))
}

/// The centroid-embedding Jacobian reduces to the subset inclusion matrix by
/// row/column scaling, and the inclusion matrix has full rank.
pub fn check_scaling_reduction(d: usize) -> Result<Verdict> {
    let start = Instant::now();
    let r = scaled_jacobian_reduction(d)?;
    let rat = crate::util::rat_to_string;
    Ok(finish(
        "scaling-reduction",
        json!({ "d": d }),
        json!({
            "alpha": rat(&r.alpha),
            "beta": rat(&r.beta),
            "gamma": rat(&r.gamma),
            "all_nonzero": r.all_nonzero,
            "matches_inclusion": r.matches_inclusion,
        }),
        json!({ "all_nonzero": true, "matches_inclusion": true }),
        r.pass(),
        "exact",
        0,
        start,
    ))
}

/// Instance check of the matching characterization of the volume rank:
/// generic rank of B against the matroid-intersection optimum. Disagreement
/// is reported, not asserted away.
pub fn check_matching_rank(x: &SimplicialComplex, d: usize, cfg: &RankCfg) -> Result<Verdict> {
    let start = Instant::now();
    let oracle_cfg = OracleCfg {
        seed: cfg.seed,
        bits: cfg.bits,
    };
    let check = matching_rank_check(x, d, cfg, &oracle_cfg)?;
    let mode = if check.lhs.certified_equal && check.rhs.certified {
        "certified"
    } else {
        "lower-bound"
    };
    Ok(finish(
        "matching-rank",
        json!({ "d": d, "n": x.n_vertices(), "k": x.dim() }),
        json!({
            "lhs": report_json(&check.lhs),
            "rhs": check.rhs.value,
            "rhs_dual": check.rhs.dual_value,
            "rhs_certified": check.rhs.certified,
            "witness_edges": check.rhs.independent_edges,
        }),
        json!("lhs == rhs"),
        check.agree,
        mode,
        cfg.seed,
        start,
    ))
}

/// Hall-type deficiency scan: minimum of `rank(skeleton of X[S]) - |S|` over
/// scanned S, with the witness.
pub fn check_hall_deficiency(
    x: &SimplicialComplex,
    d: usize,
    cfg: &DeficiencyCfg,
) -> Result<Verdict> {
    let start = Instant::now();
    let scan = hall_deficiency(x, d, cfg)?;
    let witness: Vec<Vec<usize>> = scan
        .witness
        .iter()
        .map(|f| f.vertices().to_vec())
        .collect();
    Ok(finish(
        "hall-deficiency",
        json!({ "d": d, "n": x.n_vertices(), "k": x.dim(), "budget": cfg.budget }),
        json!({
            "min_deficiency": scan.min_deficiency,
            "witness": witness,
            "scanned": scan.scanned,
            "complete": scan.complete,
        }),
        json!("min deficiency over scanned subsets"),
        scan.min_deficiency >= 0,
        if scan.complete { "exhaustive" } else { "budget-capped" },
        cfg.seed,
        start,
    ))
}

/// Instance check of the matching characterization of the Cayley–Menger
/// Jacobian rank at free generic lengths.
pub fn check_cm_matching(x: &SimplicialComplex, cfg: &RankCfg) -> Result<Verdict> {
    let start = Instant::now();
    let check = cm_matching_check(x, cfg)?;
    Ok(finish(
        "cm-matching",
        json!({ "n": x.n_vertices(), "k": x.dim() }),
        json!({ "lhs": report_json(&check.lhs), "rhs": check.rhs }),
        json!("lhs == rhs"),
        check.agree,
        report_mode(&check.lhs),
        cfg.seed,
        start,
    ))
}

/// True when the verdict's computed values rest on certified-or-exact
/// arithmetic rather than an unpromoted sampled lower bound.
pub fn verdict_is_certified(v: &Verdict) -> bool {
    matches!(
        v.mode.as_str(),
        "exact" | "certified" | "exhaustive" | "lower-bound-vs-certified"
    )
}

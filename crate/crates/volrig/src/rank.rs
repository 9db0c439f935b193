//! Generic-rank estimation by randomized evaluation.
//!
//! The generic rank of a matrix whose entries are algebraic in the embedding
//! is its maximum over all evaluations, so the rank at any sampled point is a
//! lower bound. Reports carry the sampling seed, trial count, backend mode,
//! and an a-priori upper bound; `certified_equal` is set only when the lower
//! bound meets the upper bound, which pins the generic rank exactly. A value
//! below the upper bound is never presented as the proven generic rank.
//!
//! A priori bounds come from three sources only: the matrix shape, the
//! rigidity bound `rank R <= dn - C(d+1, 2)` for n >= d+1, and the fact that
//! a product's rank is at most each factor's.

use serde::{Deserialize, Serialize};

use crate::complex::{Face, Graph, SimplicialComplex};
use crate::geometry::{random_rational_embedding, squared_edge_lengths, SquaredLengths};
use crate::linalg::RationalMatrix;
use crate::matrices::{cm_jacobian, rigidity_matrix, volume_rigidity_matrix};
use crate::modp::{random_prime, rank_modp};
use crate::rng::{derive_seed, Rng};
use crate::util::binomial;
use crate::{Error, Result};

/// Rank backend for trials.
///
/// `ModP` runs the trials over random 62-bit prime fields and then confirms
/// the best trial with one exact rational elimination, so the reported value
/// is always an exactly computed rank of a sampled matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Exact,
    ModP,
}

/// Trial configuration shared by every generic-rank operation.
#[derive(Clone, Copy, Debug)]
pub struct RankCfg {
    pub trials: usize,
    pub seed: u64,
    pub mode: RankMode,
    /// Coordinate size for sampled embeddings (integers in [-2^bits, 2^bits]).
    pub bits: u32,
}

impl Default for RankCfg {
    fn default() -> Self {
        RankCfg {
            trials: 3,
            seed: 1,
            mode: RankMode::ModP,
            bits: 20,
        }
    }
}

/// Outcome of a generic-rank estimation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    /// Max rank over the trials; an exactly computed lower bound for the
    /// generic rank.
    pub value: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: RankMode,
    /// A-priori upper bound from shape and the rigidity bound.
    pub upper_bound: usize,
    /// True iff `value == upper_bound`, i.e. the generic rank is pinned.
    pub certified_equal: bool,
}

/// Max-over-trials rank of the matrices produced by `build`, one per trial
/// seed. In `ModP` mode each trial is ranked over a fresh random prime and
/// the best trial is confirmed exactly.
fn rank_over_trials<F>(build: F, upper_bound: usize, cfg: &RankCfg) -> Result<RankReport>
where
    F: Fn(u64) -> Result<RationalMatrix>,
{
    let trials = cfg.trials.max(1);
    let value = match cfg.mode {
        RankMode::Exact => {
            let mut best = 0;
            for t in 0..trials {
                let m = build(derive_seed(cfg.seed, t as u64))?;
                best = best.max(m.rank());
            }
            best
        }
        RankMode::ModP => {
            let mut best: Option<(usize, RationalMatrix)> = None;
            for t in 0..trials {
                let m = build(derive_seed(cfg.seed, t as u64))?;
                let mut prime_rng = Rng::new(derive_seed(cfg.seed, 0x7000 + t as u64));
                let r = loop {
                    // a denominator can vanish mod p; retry with a new prime
                    match rank_modp(&m, random_prime(&mut prime_rng)) {
                        Ok(r) => break r,
                        Err(Error::BadPrime(_)) => continue,
                        Err(e) => return Err(e),
                    }
                };
                if best.as_ref().is_none_or(|(b, _)| r > *b) {
                    best = Some((r, m));
                }
            }
            let (_, m) = best.expect("at least one trial");
            // exact confirmation of the best trial
            m.rank()
        }
    };
    debug_assert!(value <= upper_bound);
    Ok(RankReport {
        value,
        trials,
        seed: cfg.seed,
        mode: cfg.mode,
        upper_bound,
        certified_equal: value == upper_bound,
    })
}

/// `min(edge_count, dn - C(m, 2))` with `m = min(n, d+1)`: the rank bound of
/// a rigidity matrix on n vertices in dimension d.
pub fn rigidity_rank_bound(n: usize, d: usize, edge_count: usize) -> usize {
    let m = n.min(d + 1);
    edge_count.min(d * n - binomial(m, 2))
}

/// Generic rank of the volume rigidity matrix of `x` in dimension `d`.
pub fn generic_rank_volume(x: &SimplicialComplex, d: usize, cfg: &RankCfg) -> Result<RankReport> {
    let k = x.dim();
    if d < k {
        return Err(Error::ParamRange(format!(
            "ambient dimension {d} below complex dimension {k}"
        )));
    }
    let n = x.n_vertices();
    let upper = x
        .face_count(k)
        .min(x.face_count(1))
        .min(rigidity_rank_bound(n, d, x.face_count(1)));
    let x = x.clone();
    rank_over_trials(
        move |seed| {
            let p = random_rational_embedding(n, d, seed, cfg.bits);
            Ok(volume_rigidity_matrix(&x, &p)?.matrix)
        },
        upper,
        cfg,
    )
}

/// Generic rank of the rigidity matrix of a graph in dimension `d`.
pub fn generic_rank_rigidity(g: &Graph, d: usize, cfg: &RankCfg) -> Result<RankReport> {
    let upper = rigidity_rank_bound(g.n, d, g.edges.len());
    let g = g.clone();
    rank_over_trials(
        move |seed| {
            let p = random_rational_embedding(g.n, d, seed, cfg.bits);
            Ok(rigidity_matrix(&g, &p)?.matrix)
        },
        upper,
        cfg,
    )
}

/// How squared edge lengths are sampled for the Cayley–Menger Jacobian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthMode {
    /// Lengths induced by a random embedding in the given dimension.
    FromEmbedding(usize),
    /// Independent random positive integers per edge.
    Free,
}

/// Generic rank of the Cayley–Menger Jacobian of `x` under the given length
/// sampling mode.
pub fn generic_rank_cm(
    x: &SimplicialComplex,
    mode: LengthMode,
    cfg: &RankCfg,
) -> Result<RankReport> {
    let k = x.dim();
    if k < 1 || !x.is_pure() {
        return Err(Error::NotPure(k));
    }
    let upper = x.face_count(k).min(x.face_count(1));
    let n = x.n_vertices();
    let edge_count = x.face_count(1);
    let x = x.clone();
    rank_over_trials(
        move |seed| {
            let lengths = match mode {
                LengthMode::FromEmbedding(d) => {
                    let p = random_rational_embedding(n, d, seed, cfg.bits);
                    squared_edge_lengths(&x, &p)?
                }
                LengthMode::Free => {
                    let mut rng = Rng::new(seed);
                    SquaredLengths {
                        values: (0..edge_count)
                            .map(|_| {
                                let v = rng.below(1u64 << cfg.bits.min(32)) + 1;
                                num_rational::BigRational::from_integer(v.into())
                            })
                            .collect(),
                    }
                }
            };
            Ok(cm_jacobian(&x, &lengths)?.matrix)
        },
        upper,
        cfg,
    )
}

/// Generic rank of the altitude matrix L of `x` in dimension `d`.
pub fn generic_rank_altitude(x: &SimplicialComplex, d: usize, cfg: &RankCfg) -> Result<RankReport> {
    let k = x.dim();
    if d < k {
        return Err(Error::ParamRange(format!(
            "ambient dimension {d} below complex dimension {k}"
        )));
    }
    let n = x.n_vertices();
    let upper = x.face_count(k).min(d * x.face_count(k.saturating_sub(1)));
    let x = x.clone();
    rank_over_trials(
        move |seed| {
            let p = random_rational_embedding(n, d, seed, cfg.bits);
            let (l, _, _) = crate::matrices::altitude_factorization(&x, &p)?;
            Ok(l.matrix)
        },
        upper,
        cfg,
    )
}

/// Generic rank of the rigidity rows of a chosen edge set on n vertices.
/// The edge set is independent in the generic rigidity matroid iff the value
/// equals its size.
pub fn edge_set_rank(
    edges: &[(usize, usize)],
    n: usize,
    d: usize,
    cfg: &RankCfg,
) -> Result<RankReport> {
    let g = Graph::from_edges(n, edges.to_vec())?;
    if g.edges.len() != edges.len() {
        return Err(Error::ParamRange("duplicate edges in edge set".into()));
    }
    generic_rank_rigidity(&g, d, cfg)
}

/// Generic rank of the row submatrix of the volume rigidity matrix given by
/// a subset of top-dimensional faces.
pub fn rows_rank(
    x: &SimplicialComplex,
    d: usize,
    subset: &[Face],
    cfg: &RankCfg,
) -> Result<RankReport> {
    let k = x.dim();
    if d < k {
        return Err(Error::ParamRange(format!(
            "ambient dimension {d} below complex dimension {k}"
        )));
    }
    let rows: Vec<usize> = subset
        .iter()
        .map(|f| {
            if f.dim() != k {
                return Err(Error::NotAFace(f.vertices().to_vec()));
            }
            x.face_index(f)
                .ok_or_else(|| Error::NotAFace(f.vertices().to_vec()))
        })
        .collect::<Result<_>>()?;
    let n = x.n_vertices();
    let upper = subset
        .len()
        .min(x.face_count(1))
        .min(rigidity_rank_bound(n, d, x.face_count(1)));
    let x = x.clone();
    rank_over_trials(
        move |seed| {
            let p = random_rational_embedding(n, d, seed, cfg.bits);
            Ok(volume_rigidity_matrix(&x, &p)?.matrix.select_rows(&rows))
        },
        upper,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64) -> RankCfg {
        RankCfg {
            seed,
            ..RankCfg::default()
        }
    }

    #[test]
    fn complete_complex_ranks_match_formula() {
        // (d, k, n) -> dn - C(d+1, 2)
        for (d, k, n, expected) in [(3usize, 2usize, 5usize, 9usize), (4, 2, 5, 10), (4, 3, 6, 14)]
        {
            let x = SimplicialComplex::complete(n, k).unwrap();
            let report = generic_rank_volume(&x, d, &cfg(11)).unwrap();
            assert_eq!(report.value, expected, "d={d} k={k} n={n}");
            assert!(report.certified_equal);
        }
    }

    #[test]
    fn small_skeleton_rank() {
        // (d-1)-skeleton of a d-simplex: d+1 rows, full row rank; d = 3
        let x = SimplicialComplex::complete(4, 2).unwrap();
        let report = generic_rank_volume(&x, 3, &cfg(5)).unwrap();
        assert_eq!(report.value, 4);
        assert!(report.certified_equal); // 4 = |X_k| here
    }

    #[test]
    fn top_dimension_rank_is_uncertified() {
        // k = d on the complete complex: dn - (d^2 + d - 1) < the bound
        let x = SimplicialComplex::complete(5, 2).unwrap();
        let report = generic_rank_volume(&x, 2, &cfg(7)).unwrap();
        assert_eq!(report.value, 5);
        assert!(!report.certified_equal);
        assert_eq!(report.upper_bound, 7); // 2*5 - 3
    }

    #[test]
    fn rigidity_ranks() {
        let report = generic_rank_rigidity(&Graph::complete(5), 3, &cfg(3)).unwrap();
        assert_eq!(report.value, 9);
        assert!(report.certified_equal);
        // exact mode agrees
        let exact = generic_rank_rigidity(
            &Graph::complete(5),
            3,
            &RankCfg {
                mode: RankMode::Exact,
                trials: 1,
                seed: 3,
                bits: 20,
            },
        )
        .unwrap();
        assert_eq!(exact.value, 9);
    }

    #[test]
    fn reports_are_deterministic() {
        let x = SimplicialComplex::complete(5, 2).unwrap();
        let a = generic_rank_volume(&x, 3, &cfg(42)).unwrap();
        let b = generic_rank_volume(&x, 3, &cfg(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_low_dimension() {
        let x = SimplicialComplex::complete(5, 2).unwrap();
        assert!(generic_rank_volume(&x, 1, &cfg(1)).is_err());
    }

    #[test]
    fn edge_sets() {
        // spanning tree is independent
        let tree: Vec<(usize, usize)> = (1..6).map(|v| (0, v)).collect();
        let r = edge_set_rank(&tree, 6, 3, &cfg(9)).unwrap();
        assert_eq!(r.value, tree.len());
        // all edges of K_{d+2} are dependent: rank d(d+2) - C(d+1,2) < |E|
        let k5 = Graph::complete(5);
        let r = edge_set_rank(&k5.edges, 5, 3, &cfg(9)).unwrap();
        assert_eq!(r.value, 9);
        assert!(r.value < k5.edges.len());
    }

    #[test]
    fn henneberg_vertex_additions_stay_independent() {
        // start from K_4 in dimension 3 and repeatedly join a new vertex to
        // 3 existing ones: the result has 3n - 6 edges and full rank
        let mut edges: Vec<(usize, usize)> = Graph::complete(4).edges;
        for n in 5..=8usize {
            let v = n - 1;
            edges.push((0, v));
            edges.push((1, v));
            edges.push((v - 1, v));
            assert_eq!(edges.len(), 3 * n - 6);
            let r = edge_set_rank(&edges, n, 3, &cfg(13)).unwrap();
            assert_eq!(r.value, 3 * n - 6, "n = {n}");
        }
    }

    #[test]
    fn row_subsets() {
        let x = SimplicialComplex::complete(5, 2).unwrap();
        // the full row set reproduces the volume rank
        let all: Vec<Face> = x.faces(2).to_vec();
        let r = rows_rank(&x, 3, &all, &cfg(21)).unwrap();
        assert_eq!(r.value, 9);
        // a single row has rank 1
        let r = rows_rank(&x, 3, &all[..1], &cfg(21)).unwrap();
        assert_eq!(r.value, 1);
        assert!(r.certified_equal);
        // a non-face is rejected
        let bogus = Face::new(vec![0, 1, 9]).unwrap();
        assert!(rows_rank(&x, 3, &[bogus], &cfg(1)).is_err());
    }

    #[test]
    fn cm_ranks() {
        // single k-simplex: one nonzero row
        let x = SimplicialComplex::complete(3, 2).unwrap();
        let r = generic_rank_cm(&x, LengthMode::Free, &cfg(2)).unwrap();
        assert_eq!(r.value, 1);
        // free mode and from-embedding at d = n - 1 agree generically
        let x = SimplicialComplex::complete(5, 2).unwrap();
        let free = generic_rank_cm(&x, LengthMode::Free, &cfg(4)).unwrap();
        let emb = generic_rank_cm(&x, LengthMode::FromEmbedding(4), &cfg(4)).unwrap();
        assert_eq!(free.value, emb.value);
        assert_eq!(free.value, 10);
    }

    #[test]
    fn hinged_part_skeleton_rank() {
        // skeleton of the hinged part: 8 vertices, 19 edges, one rotational
        // freedom about the hinge, so rank 17 in dimension 3. The hinged
        // part is the restriction to the triangles avoiding the apex (a bare
        // vertex deletion would also keep the three bracing edges).
        let (x, labels) = crate::complex::braced_hinge();
        let hinge_faces: Vec<Face> = x
            .faces(2)
            .iter()
            .filter(|f| !f.contains_vertex(labels.apex))
            .cloned()
            .collect();
        let z = x.restriction(&hinge_faces).unwrap();
        let g = z.one_skeleton().unwrap();
        assert_eq!(g.edges.len(), 19);
        let r = generic_rank_rigidity(&g, 3, &cfg(15)).unwrap();
        assert_eq!(r.value, 17);
        assert!(!r.certified_equal); // 17 < 3*8 - 6
        // the full skeleton is rigid: 3*9 - 6
        let full = generic_rank_rigidity(&x.one_skeleton().unwrap(), 3, &cfg(15)).unwrap();
        assert_eq!(full.value, 21);
        assert!(full.certified_equal);
    }

    #[test]
    fn value_is_monotone_in_trials() {
        let (x, _) = crate::complex::braced_hinge();
        let mut prev = 0;
        for trials in 1..=4 {
            let r = generic_rank_volume(
                &x,
                3,
                &RankCfg {
                    trials,
                    seed: 60,
                    mode: RankMode::ModP,
                    bits: 20,
                },
            )
            .unwrap();
            assert!(r.value >= prev, "trials = {trials}");
            prev = r.value;
        }
    }

    #[test]
    fn volume_rank_sandwiched_by_factors() {
        // rank of a product is at most each factor's rank
        for (n, k, d) in [(5usize, 2usize, 3usize), (6, 2, 3), (5, 3, 4)] {
            let x = SimplicialComplex::complete(n, k).unwrap();
            let b = generic_rank_volume(&x, d, &cfg(33)).unwrap();
            let c = generic_rank_cm(&x, LengthMode::FromEmbedding(d), &cfg(33)).unwrap();
            let r = generic_rank_rigidity(&x.one_skeleton().unwrap(), d, &cfg(33)).unwrap();
            assert!(b.value <= c.value.min(r.value), "n={n} k={k} d={d}");
        }
    }

    #[test]
    fn report_json_schema() {
        let x = SimplicialComplex::complete(5, 2).unwrap();
        let r = generic_rank_volume(&x, 3, &cfg(11)).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        for key in ["value", "trials", "seed", "mode", "upper_bound", "certified_equal"] {
            assert!(j.get(key).is_some(), "missing {key}");
        }
        assert_eq!(j["mode"], "modp");
    }
}

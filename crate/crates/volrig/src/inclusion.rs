//! Subset inclusion matrices and their ranks.
//!
//! The inclusion matrix of (s, t) over an n-set has rows indexed by the
//! s-subsets and columns by the t-subsets, with a 1 exactly at containments.
//! Over the rationals these matrices have full rank min(C(n,s), C(n,t))
//! (Gottlieb's theorem), which is what turns the specially-embedded
//! Cayley–Menger Jacobians into rank certificates: at the centroid embedding
//! the Jacobian collapses onto three orbit values and row/column scaling
//! reduces it to an inclusion matrix exactly.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complex::SimplicialComplex;
use crate::geometry::{centroid_augmented_unit_table, SquaredLengths};
use crate::linalg::RationalMatrix;
use crate::matrices::{cm_jacobian, IndexedMatrix, Label};
use crate::util::subsets_of_size;
use crate::{Error, Result};

/// The 0/1 containment matrix between s-subsets (rows) and t-subsets
/// (columns) of `{0..n}`, both in lexicographic order.
pub fn inclusion_matrix(n: usize, s: usize, t: usize) -> Result<IndexedMatrix> {
    if t == 0 || t > s || s > n {
        return Err(Error::ParamRange(format!(
            "inclusion matrix needs 0 < t <= s <= n, got n={n} s={s} t={t}"
        )));
    }
    let rows = subsets_of_size(n, s);
    let cols = subsets_of_size(n, t);
    let mut m = RationalMatrix::zeros(rows.len(), cols.len());
    for (i, big) in rows.iter().enumerate() {
        for (j, small) in cols.iter().enumerate() {
            if small.iter().all(|v| big.binary_search(v).is_ok()) {
                m.set(i, j, BigRational::one());
            }
        }
    }
    let face = |vs: &Vec<usize>| {
        Label::Face(crate::complex::Face::new(vs.clone()).expect("subset is a face"))
    };
    Ok(IndexedMatrix {
        matrix: m,
        row_labels: rows.iter().map(face).collect(),
        col_labels: cols.iter().map(face).collect(),
    })
}

/// Exact rank of the inclusion matrix.
pub fn inclusion_rank(n: usize, s: usize, t: usize) -> Result<usize> {
    Ok(inclusion_matrix(n, s, t)?.matrix.rank())
}

/// Result of reducing the centroid-embedding Jacobian to an inclusion
/// matrix by row and column scaling.
#[derive(Clone, Debug)]
pub struct ScalingReduction {
    /// Entry value on faces avoiding the centroid vertex.
    pub alpha: BigRational,
    /// Entry value when the centroid vertex lies in the edge.
    pub beta: BigRational,
    /// Entry value when the centroid vertex lies in the face but not the
    /// edge (1 when that orbit is empty, i.e. k = 1).
    pub gamma: BigRational,
    pub all_nonzero: bool,
    /// Scaled matrix equals the inclusion matrix entry for entry.
    pub matches_inclusion: bool,
}

impl ScalingReduction {
    pub fn pass(&self) -> bool {
        self.all_nonzero && self.matches_inclusion
    }
}

/// Builds the Cayley–Menger Jacobian of the complete (d-1)-complex on d+2
/// vertices at the centroid embedding lengths (vertex 0 at the centroid of a
/// unit regular d-simplex on the rest), checks that its entries take exactly
/// three values by symmetry orbit, scales rows and columns, and compares the
/// result with the inclusion matrix of (d, 2) over the d+2 vertices.
pub fn scaled_jacobian_reduction(d: usize) -> Result<ScalingReduction> {
    if d < 2 {
        return Err(Error::ParamRange("reduction needs d >= 2".into()));
    }
    let k = d - 1;
    let n = d + 2;
    let x = SimplicialComplex::complete(n, k)?;
    let table = centroid_augmented_unit_table(d);
    let lengths = SquaredLengths {
        values: x
            .edges()
            .iter()
            .map(|&(u, v)| table.get(u, v).clone())
            .collect(),
    };
    let c = cm_jacobian(&x, &lengths)?;

    // designated orbit representatives
    let top = x.faces(k);
    let edges = x.faces(1);
    let entry = |row: usize, col: usize| c.matrix.get(row, col);
    let find_face = |want: &[usize]| top.iter().position(|f| f.vertices() == want).unwrap();
    let find_edge = |want: &[usize]| edges.iter().position(|f| f.vertices() == want).unwrap();
    let no_centroid: Vec<usize> = (1..=d).collect(); // face {1..d}, avoids 0
    let with_centroid: Vec<usize> = (0..d).collect(); // face {0..d-1}
    let alpha = entry(find_face(&no_centroid), find_edge(&[1, 2])).clone();
    let beta = entry(find_face(&with_centroid), find_edge(&[0, 1])).clone();
    let gamma = if k >= 2 {
        entry(find_face(&with_centroid), find_edge(&[1, 2])).clone()
    } else {
        BigRational::one()
    };

    // every entry must match its orbit's value exactly
    for (i, face) in top.iter().enumerate() {
        for (j, edge) in edges.iter().enumerate() {
            let got = entry(i, j);
            let expected = if !edge.is_subface_of(face) {
                BigRational::zero()
            } else if !face.contains_vertex(0) {
                alpha.clone()
            } else if edge.contains_vertex(0) {
                beta.clone()
            } else {
                gamma.clone()
            };
            if got != &expected {
                return Err(Error::OracleAudit(format!(
                    "orbit structure violated at face {:?}, edge {:?}",
                    face.vertices(),
                    edge.vertices()
                )));
            }
        }
    }

    let all_nonzero = !alpha.is_zero() && !beta.is_zero() && !gamma.is_zero();
    let mut matches_inclusion = false;
    if all_nonzero {
        // scale rows by 1/alpha (faces avoiding 0) or 1/gamma, then columns
        // through the centroid vertex by gamma/beta
        let mut scaled = c.matrix.clone();
        for (i, face) in top.iter().enumerate() {
            let rs = if face.contains_vertex(0) {
                gamma.recip()
            } else {
                alpha.recip()
            };
            for j in 0..scaled.cols() {
                let v = scaled.get(i, j) * &rs;
                scaled.set(i, j, v);
            }
        }
        for (j, edge) in edges.iter().enumerate() {
            if edge.contains_vertex(0) {
                let cs = &gamma / &beta;
                for i in 0..scaled.rows() {
                    let v = scaled.get(i, j) * &cs;
                    scaled.set(i, j, v);
                }
            }
        }
        let a = inclusion_matrix(n, k + 1, 2)?;
        matches_inclusion = scaled == a.matrix;
    }

    Ok(ScalingReduction {
        alpha,
        beta,
        gamma,
        all_nonzero,
        matches_inclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::rank_modp;
    use crate::util::binomial;

    #[test]
    fn small_matrices() {
        // s = t gives the identity
        let a = inclusion_matrix(4, 2, 2).unwrap();
        assert_eq!(a.matrix, RationalMatrix::identity(6));
        // each 3-subset of a 5-set contains three 2-subsets
        let a = inclusion_matrix(5, 3, 2).unwrap();
        assert_eq!((a.matrix.rows(), a.matrix.cols()), (10, 10));
        for i in 0..10 {
            let ones: usize = (0..10).filter(|&j| a.matrix.get(i, j).is_one()).count();
            assert_eq!(ones, 3);
        }
        let a = inclusion_matrix(4, 3, 2).unwrap();
        assert_eq!((a.matrix.rows(), a.matrix.cols()), (4, 6));
        assert!(inclusion_matrix(4, 2, 3).is_err());
        assert!(inclusion_matrix(4, 2, 0).is_err());
    }

    #[test]
    fn row_and_column_sums() {
        for (n, s, t) in [(6, 3, 2), (7, 4, 2), (6, 4, 3)] {
            let a = inclusion_matrix(n, s, t).unwrap();
            for i in 0..a.matrix.rows() {
                let sum: usize = (0..a.matrix.cols())
                    .filter(|&j| a.matrix.get(i, j).is_one())
                    .count();
                assert_eq!(sum, binomial(s, t));
            }
            for j in 0..a.matrix.cols() {
                let sum: usize = (0..a.matrix.rows())
                    .filter(|&i| a.matrix.get(i, j).is_one())
                    .count();
                assert_eq!(sum, binomial(n - t, s - t));
            }
        }
    }

    #[test]
    fn special_embedding_base_ranks() {
        // (k+1, 2) over d+2 vertices is invertible; d = 3 gives the 10x10
        assert_eq!(inclusion_rank(5, 3, 2).unwrap(), 10);
        // (k+1, 2) over d+1 vertices has full column rank for k <= d-2
        assert_eq!(inclusion_rank(5, 3, 2).unwrap(), binomial(5, 2));
        // (d, 2) over d+1 vertices has rank d+1; d = 3
        assert_eq!(inclusion_rank(4, 3, 2).unwrap(), 4);
    }

    #[test]
    fn full_rank_over_q_up_to_n_12() {
        // rank = min of the two dimensions for every 0 < t <= s <= n <= 12.
        // The mod-p rank is a certified lower bound and the shape is the
        // upper bound, so equality pins the rational rank without big-integer
        // elimination.
        let p = (1u64 << 61) - 1;
        for n in 1..=12usize {
            for s in 1..=n {
                for t in 1..=s {
                    let expected = binomial(n, s).min(binomial(n, t));
                    if s == t {
                        continue; // identity
                    }
                    let a = inclusion_matrix(n, s, t).unwrap();
                    let r = rank_modp(&a.matrix, p).unwrap();
                    assert_eq!(r, expected, "n={n} s={s} t={t}");
                }
            }
        }
    }

    #[test]
    fn scaling_reduction_small() {
        // d = 2 reduces to the identity inclusion matrix
        let r = scaled_jacobian_reduction(2).unwrap();
        assert!(r.pass(), "alpha={} beta={}", r.alpha, r.beta);
        for d in 3..=5 {
            let r = scaled_jacobian_reduction(d).unwrap();
            assert!(r.pass(), "d = {d}");
            assert!(r.all_nonzero);
        }
        assert!(scaled_jacobian_reduction(1).is_err());
    }
}

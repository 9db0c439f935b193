//! The Jacobian matrices of volume rigidity, built exactly:
//!
//! * `rigidity_matrix`: the standard rigidity matrix R of a graph: the
//!   Jacobian of the squared edge-length map.
//! * `cm_jacobian`: the Jacobian C of squared k-volumes with respect to
//!   squared edge lengths, entry by entry through Cayley–Menger cofactors.
//! * `volume_rigidity_matrix`: B = C * R, the Jacobian of squared k-volumes
//!   with respect to vertex coordinates (chain rule).
//! * `altitude_factorization`: the factor matrices L (altitude vectors),
//!   D (squared facet volumes), P (vertex incidence blocks) with
//!   B = -2/k^2 * L * D * P.
//!
//! Columns are vertex-major, coordinate-minor with vertices ascending; rows
//! follow the lexicographic face order of the complex. This makes every
//! builder reproducible byte for byte.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::complex::{Face, Graph, SimplicialComplex};
use crate::geometry::{
    altitude_vector, cm_volume_derivative, simplex_squared_volume, squared_edge_lengths,
    Embedding, LengthTable, SquaredLengths,
};
use crate::linalg::RationalMatrix;
use crate::util::rat_to_string;
use crate::{Error, Result};

/// Row/column labels of an indexed matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    Face(Face),
    VertexCoord { vertex: usize, coord: usize },
    FaceCoord { face: Face, coord: usize },
}

impl Label {
    fn to_json(&self) -> serde_json::Value {
        match self {
            Label::Face(f) => serde_json::json!({ "face": f.vertices() }),
            Label::VertexCoord { vertex, coord } => {
                serde_json::json!({ "vertex": vertex, "coord": coord })
            }
            Label::FaceCoord { face, coord } => {
                serde_json::json!({ "face": face.vertices(), "coord": coord })
            }
        }
    }
}

/// A rational matrix with face/vertex labels attached to its rows and
/// columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedMatrix {
    pub matrix: RationalMatrix,
    pub row_labels: Vec<Label>,
    pub col_labels: Vec<Label>,
}

impl IndexedMatrix {
    fn new(matrix: RationalMatrix, row_labels: Vec<Label>, col_labels: Vec<Label>) -> Self {
        assert_eq!(matrix.rows(), row_labels.len());
        assert_eq!(matrix.cols(), col_labels.len());
        IndexedMatrix {
            matrix,
            row_labels,
            col_labels,
        }
    }

    /// Debug dump with labels; entries as "num/den" strings.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<String>> = (0..self.matrix.rows())
            .map(|i| self.matrix.row(i).iter().map(rat_to_string).collect())
            .collect();
        serde_json::json!({
            "rows": self.matrix.rows(),
            "cols": self.matrix.cols(),
            "row_labels": self.row_labels.iter().map(Label::to_json).collect::<Vec<_>>(),
            "col_labels": self.col_labels.iter().map(Label::to_json).collect::<Vec<_>>(),
            "entries": entries,
        })
    }
}

fn vertex_coord_labels(n: usize, d: usize) -> Vec<Label> {
    (0..n)
        .flat_map(|vertex| (0..d).map(move |coord| Label::VertexCoord { vertex, coord }))
        .collect()
}

fn face_coord_labels(faces: &[Face], d: usize) -> Vec<Label> {
    faces
        .iter()
        .flat_map(|f| {
            (0..d).map(move |coord| Label::FaceCoord {
                face: f.clone(),
                coord,
            })
        })
        .collect()
}

/// The rigidity matrix of a graph at an embedding: row e = {u, v} carries
/// `2 (p(u) - p(v))` in u's block and the negative in v's block.
pub fn rigidity_matrix(g: &Graph, p: &Embedding) -> Result<IndexedMatrix> {
    let d = p.dim();
    let mut m = RationalMatrix::zeros(g.edges.len(), d * g.n);
    for (row, &(u, v)) in g.edges.iter().enumerate() {
        let pu = p.point(u)?;
        let pv = p.point(v)?;
        for c in 0..d {
            let diff = (&pu[c] - &pv[c]) * BigRational::from_integer(2.into());
            m.set(row, u * d + c, diff.clone());
            m.set(row, v * d + c, -diff);
        }
    }
    let row_labels = g
        .edges
        .iter()
        .map(|&(u, v)| Label::Face(Face::new(vec![u, v]).expect("edge is a face")))
        .collect();
    Ok(IndexedMatrix::new(m, row_labels, vertex_coord_labels(g.n, d)))
}

fn edge_index_map(x: &SimplicialComplex) -> HashMap<(usize, usize), usize> {
    x.edges().into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

fn require_pure(x: &SimplicialComplex) -> Result<usize> {
    let k = x.dim();
    if k < 1 {
        return Err(Error::ParamRange("complex must have dimension >= 1".into()));
    }
    if !x.is_pure() {
        return Err(Error::NotPure(k));
    }
    Ok(k)
}

/// The Jacobian of squared k-volumes with respect to squared edge lengths,
/// evaluated at `lengths`. Entry (sigma, e) vanishes unless e is an edge of
/// sigma; on the support it is the Cayley–Menger cofactor derivative.
pub fn cm_jacobian(x: &SimplicialComplex, lengths: &SquaredLengths) -> Result<IndexedMatrix> {
    let k = require_pure(x)?;
    let edges = x.edges();
    if lengths.values.len() != edges.len() {
        return Err(Error::DimMismatch(format!(
            "{} lengths for {} edges",
            lengths.values.len(),
            edges.len()
        )));
    }
    let index = edge_index_map(x);
    let top = x.faces(k);
    let mut m = RationalMatrix::zeros(top.len(), edges.len());
    for (row, sigma) in top.iter().enumerate() {
        let vs = sigma.vertices();
        // local table of this simplex's squared lengths
        let mut t = LengthTable::zeros(vs.len());
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let e = index[&(vs[i], vs[j])];
                t.set(i, j, lengths.values[e].clone());
            }
        }
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let col = index[&(vs[i], vs[j])];
                m.set(row, col, cm_volume_derivative(&t, i, j));
            }
        }
    }
    let row_labels = top.iter().cloned().map(Label::Face).collect();
    let col_labels = x.faces(1).iter().cloned().map(Label::Face).collect();
    Ok(IndexedMatrix::new(m, row_labels, col_labels))
}

/// The volume rigidity matrix B at `p`: the exact product of the
/// Cayley–Menger Jacobian at the induced lengths with the rigidity matrix.
pub fn volume_rigidity_matrix(x: &SimplicialComplex, p: &Embedding) -> Result<IndexedMatrix> {
    require_pure(x)?;
    let lengths = squared_edge_lengths(x, p)?;
    let c = cm_jacobian(x, &lengths)?;
    let r = rigidity_matrix(&x.one_skeleton()?, p)?;
    let b = c.matrix.matmul(&r.matrix)?;
    Ok(IndexedMatrix::new(b, c.row_labels, r.col_labels))
}

/// The altitude factorization of B: returns (L, D, P) with
/// `B = -2/k^2 * L * D * P`, where L holds the altitude vectors per
/// (k-face, facet) pair, D is the diagonal of squared facet volumes repeated
/// per coordinate, and P scatters facet blocks to their vertices.
pub fn altitude_factorization(
    x: &SimplicialComplex,
    p: &Embedding,
) -> Result<(IndexedMatrix, IndexedMatrix, IndexedMatrix)> {
    let k = require_pure(x)?;
    let d = p.dim();
    let top = x.faces(k);
    let facets = x.faces(k - 1);
    let n = x.n_vertices();

    let mut l = RationalMatrix::zeros(top.len(), d * facets.len());
    for (row, sigma) in top.iter().enumerate() {
        for &v in sigma.vertices() {
            let tau = sigma.without(v).expect("k >= 1");
            let col = x
                .face_index(&tau)
                .expect("facet of a stored face is stored");
            let h = altitude_vector(p, sigma, v)?;
            for (c, val) in h.into_iter().enumerate() {
                l.set(row, col * d + c, val);
            }
        }
    }

    let mut dm = RationalMatrix::zeros(d * facets.len(), d * facets.len());
    for (i, tau) in facets.iter().enumerate() {
        let w = simplex_squared_volume(p, tau)?;
        for c in 0..d {
            dm.set(i * d + c, i * d + c, w.clone());
        }
    }

    let mut pm = RationalMatrix::zeros(d * facets.len(), d * n);
    for (i, tau) in facets.iter().enumerate() {
        for &v in tau.vertices() {
            for c in 0..d {
                pm.set(i * d + c, v * d + c, BigRational::from_integer(1.into()));
            }
        }
    }

    let fc = face_coord_labels(facets, d);
    Ok((
        IndexedMatrix::new(l, top.iter().cloned().map(Label::Face).collect(), fc.clone()),
        IndexedMatrix::new(dm, fc.clone(), fc.clone()),
        IndexedMatrix::new(pm, fc, vertex_coord_labels(n, d)),
    ))
}

/// `-2/k^2`, the scalar of the altitude factorization with geometric
/// altitude vectors.
///
/// The volume recursion `vol_k = vol_{k-1} * height / k` fixes this
/// constant: the gradient of a squared volume in one vertex is
/// `2/k^2 * vol_{k-1}^2 * h`, and the facet sum of `vol_{k-1}^2 * h`
/// vanishes, leaving `-2/k^2` in front of L*D*P. (For k = 2 this equals
/// `-2/(k!)^2`.)
pub fn altitude_factor_scalar(k: usize) -> BigRational {
    -BigRational::new(2.into(), (k * k).into())
}

fn float_det(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for i in col + 1..n {
            let f = a[i][col] / a[col][col];
            for j in col..n {
                a[i][j] -= f * a[col][j];
            }
        }
    }
    det
}

/// Squared k-volume in floating point via the Gram determinant of the edge
/// vectors from the first vertex. Used only as a cross-check oracle.
fn vol2_float(points: &[&[f64]]) -> f64 {
    let k = points.len() - 1;
    if k == 0 {
        return 1.0;
    }
    let dirs: Vec<Vec<f64>> = (1..=k)
        .map(|i| {
            points[i]
                .iter()
                .zip(points[0])
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    let gram: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| dirs[i].iter().zip(&dirs[j]).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let kf: f64 = (1..=k).map(|i| i as f64).product();
    float_det(gram) / (kf * kf)
}

/// Central-difference check of the volume rigidity matrix: perturbs every
/// coordinate by `step`, differences the squared volumes in floating point,
/// and returns the worst deviation from the exact entries, measured relative
/// to `max(1, ||row||_inf)` per row.
///
/// Squared volume is quadratic in each single coordinate, so the central
/// difference is exact up to floating-point rounding; with small integer
/// coordinates the deviation sits many orders below any honest tolerance.
pub fn fd_jacobian_check(x: &SimplicialComplex, p: &Embedding, step: f64) -> Result<f64> {
    let b = volume_rigidity_matrix(x, p)?;
    let k = x.dim();
    let d = p.dim();
    let n = x.n_vertices();
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|v| {
            Ok(p.point(v)?
                .iter()
                .map(|c| c.to_f64().expect("coordinate fits f64"))
                .collect())
        })
        .collect::<Result<_>>()?;
    let top = x.faces(k);
    let row_scales: Vec<f64> = (0..top.len())
        .map(|r| {
            b.matrix.row(r).iter().fold(1.0f64, |acc, e| {
                acc.max(e.to_f64().map_or(f64::INFINITY, f64::abs))
            })
        })
        .collect();
    let mut worst = 0.0f64;
    for (r, sigma) in top.iter().enumerate() {
        let local: Vec<usize> = sigma.vertices().to_vec();
        for &v in &local {
            for c in 0..d {
                let eval = |delta: f64| -> f64 {
                    let moved: Vec<Vec<f64>> = local
                        .iter()
                        .map(|&u| {
                            let mut q = pts[u].clone();
                            if u == v {
                                q[c] += delta;
                            }
                            q
                        })
                        .collect();
                    vol2_float(&moved.iter().map(Vec::as_slice).collect::<Vec<_>>())
                };
                let fd = (eval(step) - eval(-step)) / (2.0 * step);
                let exact = b.matrix.get(r, v * d + c).to_f64().expect("entry fits f64");
                let dev = (fd - exact).abs() / row_scales[r];
                worst = worst.max(dev);
            }
        }
    }
    Ok(worst)
}

/// Floating-point cross-check of the per-entry product form of B:
/// `2 vol_k(sigma) / k * vol_{k-1}(sigma - v) * N`, with N the unit altitude
/// direction. The exact builder never uses this factored form (its factors
/// are irrational); this confirms the two agree numerically.
pub fn factored_form_float_check(x: &SimplicialComplex, p: &Embedding) -> Result<f64> {
    let b = volume_rigidity_matrix(x, p)?;
    let k = x.dim();
    let d = p.dim();
    let kf = k as f64;
    let mut worst = 0.0f64;
    for (r, sigma) in x.faces(k).iter().enumerate() {
        let row_scale = b.matrix.row(r).iter().fold(1.0f64, |acc, e| {
            acc.max(e.to_f64().map_or(f64::INFINITY, f64::abs))
        });
        let vol = simplex_squared_volume(p, sigma)?
            .to_f64()
            .expect("fits f64")
            .max(0.0)
            .sqrt();
        for &v in sigma.vertices() {
            let base = sigma.without(v).expect("k >= 1");
            let bvol = simplex_squared_volume(p, &base)?
                .to_f64()
                .expect("fits f64")
                .max(0.0)
                .sqrt();
            let h: Vec<f64> = altitude_vector(p, sigma, v)?
                .iter()
                .map(|c| c.to_f64().expect("fits f64"))
                .collect();
            let norm = h.iter().map(|c| c * c).sum::<f64>().sqrt();
            for c in 0..d {
                let predicted = 2.0 * vol / kf * bvol * h[c] / norm;
                let exact = b.matrix.get(r, v * d + c).to_f64().expect("fits f64");
                worst = worst.max((predicted - exact).abs() / row_scale);
            }
        }
    }
    Ok(worst)
}

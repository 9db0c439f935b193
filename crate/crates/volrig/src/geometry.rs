//! Embeddings with rational coordinates, Cayley–Menger volume evaluation,
//! squared edge lengths, altitude vectors, and the special embeddings used by
//! the rank reductions.
//!
//! Everything here is exact. Squared volumes come from the bordered
//! Cayley–Menger determinant
//! `vol_k^2 = (-1)^(k+1) / ((k!)^2 2^k) * det [ [D, 1], [1^T, 0] ]`
//! where `D` is the table of squared pairwise distances, so every quantity is
//! a rational function of squared lengths and coordinates never need to leave
//! the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::linalg::RationalMatrix;
use crate::rng::Rng;
use crate::util::{factorial, rat_from_str, rat_to_string};
use crate::{Error, Result};

/// A map from dense vertex identifiers to points in `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    dim: usize,
    points: Vec<Vec<BigRational>>,
}

impl Embedding {
    pub fn new(dim: usize, points: Vec<Vec<BigRational>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimMismatch(format!(
                "point with {} coordinates in dimension {}",
                p.len(),
                dim
            )));
        }
        Ok(Embedding { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, v: usize) -> Result<&[BigRational]> {
        self.points
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::MissingPoint(v))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let points: Vec<Vec<String>> = self
            .points
            .iter()
            .map(|p| p.iter().map(rat_to_string).collect())
            .collect();
        serde_json::to_value(EmbeddingJson {
            d: self.dim,
            points,
        })
        .expect("embedding serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Embedding> {
        let parsed: EmbeddingJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let points = parsed
            .points
            .into_iter()
            .map(|p| p.iter().map(|s| rat_from_str(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Embedding::new(parsed.d, points)
    }
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    d: usize,
    points: Vec<Vec<String>>,
}

/// Squared edge lengths aligned with the lexicographic edge order of the
/// complex they were computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaredLengths {
    pub values: Vec<BigRational>,
}

/// Exact squared length of every edge of `x` under `p`.
pub fn squared_edge_lengths(x: &SimplicialComplex, p: &Embedding) -> Result<SquaredLengths> {
    let values = x
        .edges()
        .iter()
        .map(|&(u, v)| point_sq_dist(p.point(u)?, p.point(v)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(SquaredLengths { values })
}

fn point_sq_dist(a: &[BigRational], b: &[BigRational]) -> Result<BigRational> {
    if a.len() != b.len() {
        return Err(Error::DimMismatch("points of different dimension".into()));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .sum())
}

/// A symmetric table of squared distances with zero diagonal, indexed by the
/// local vertices `0..size` of one simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthTable {
    size: usize,
    vals: Vec<BigRational>,
}

impl LengthTable {
    pub fn zeros(size: usize) -> Self {
        LengthTable {
            size,
            vals: vec![BigRational::zero(); size * size],
        }
    }

    /// Build from full rows; rejects asymmetry or a nonzero diagonal.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::DimMismatch("length table is not square".into()));
        }
        let t = LengthTable {
            size,
            vals: rows.into_iter().flatten().collect(),
        };
        for i in 0..size {
            if !t.get(i, i).is_zero() {
                return Err(Error::DimMismatch("nonzero diagonal".into()));
            }
            for j in 0..i {
                if t.get(i, j) != t.get(j, i) {
                    return Err(Error::DimMismatch("asymmetric table".into()));
                }
            }
        }
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.vals[i * self.size + j]
    }

    /// Sets both symmetric positions.
    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        assert_ne!(i, j, "diagonal stays zero");
        self.vals[i * self.size + j] = v.clone();
        self.vals[j * self.size + i] = v;
    }

    /// Table restricted to the given local vertices, in the given order.
    pub fn sub_table(&self, keep: &[usize]) -> LengthTable {
        let mut t = LengthTable::zeros(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if a < b {
                    t.set(a, b, self.get(i, j).clone());
                }
            }
        }
        t
    }

    /// Table of a face's pairwise squared distances under an embedding,
    /// local order = the face's sorted vertex order.
    pub fn from_embedding(p: &Embedding, face: &Face) -> Result<LengthTable> {
        let vs = face.vertices();
        let mut t = LengthTable::zeros(vs.len());
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                t.set(i, j, point_sq_dist(p.point(vs[i])?, p.point(vs[j])?)?);
            }
        }
        Ok(t)
    }

    /// Table over all-unit squared distances (the regular simplex table).
    pub fn regular_unit(size: usize) -> LengthTable {
        let mut t = LengthTable::zeros(size);
        for i in 0..size {
            for j in i + 1..size {
                t.set(i, j, BigRational::one());
            }
        }
        t
    }
}

/// `(-1)^(k+1) / ((k!)^2 2^k)`.
pub fn cm_prefactor(k: usize) -> BigRational {
    let f = factorial(k);
    let den = &f * &f * BigInt::from(2).pow(k as u32);
    let num = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    BigRational::new(num, den)
}

/// The bordered distance matrix: the table with an extra all-ones row and
/// column and a zero corner.
fn cm_bordered(t: &LengthTable) -> RationalMatrix {
    let m = t.size();
    let mut b = RationalMatrix::zeros(m + 1, m + 1);
    for i in 0..m {
        for j in 0..m {
            b.set(i, j, t.get(i, j).clone());
        }
        b.set(i, m, BigRational::one());
        b.set(m, i, BigRational::one());
    }
    b
}

/// Exact squared k-volume of a simplex from its squared-distance table
/// (k = size - 1). Degenerate configurations give values <= 0; the caller
/// decides what to do with them.
pub fn cm_squared_volume(t: &LengthTable) -> BigRational {
    let k = t.size() - 1;
    let det = cm_bordered(t).det().expect("bordered matrix is square");
    cm_prefactor(k) * det
}

/// Squared volume of an embedded face.
pub fn simplex_squared_volume(p: &Embedding, face: &Face) -> Result<BigRational> {
    Ok(cm_squared_volume(&LengthTable::from_embedding(p, face)?))
}

/// Derivative of the squared k-volume with respect to the squared distance
/// between local vertices i and j.
///
/// The variable sits at the two symmetric positions (i, j) and (j, i) of the
/// bordered matrix, so the derivative of the determinant is twice the
/// corresponding cofactor; the Cayley–Menger prefactor carries over.
pub fn cm_volume_derivative(t: &LengthTable, i: usize, j: usize) -> BigRational {
    assert_ne!(i, j);
    let k = t.size() - 1;
    let b = cm_bordered(t);
    let m = b.rows();
    // minor with row i and column j removed
    let rows: Vec<Vec<BigRational>> = (0..m)
        .filter(|&r| r != i)
        .map(|r| {
            (0..m)
                .filter(|&c| c != j)
                .map(|c| b.get(r, c).clone())
                .collect()
        })
        .collect();
    let minor = RationalMatrix::from_rows(rows)
        .unwrap()
        .det()
        .expect("minor is square");
    let sign = if (i + j) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    cm_prefactor(k) * BigRational::from_integer(sign * 2) * minor
}

/// Altitude vector of the embedded face `sigma` with respect to its vertex
/// `v`: the vector from the orthogonal projection of `p(v)` onto the affine
/// span of the opposite facet, to `p(v)` itself.
pub fn altitude_vector(p: &Embedding, sigma: &Face, v: usize) -> Result<Vec<BigRational>> {
    if !sigma.contains_vertex(v) {
        return Err(Error::MissingVertex(v));
    }
    let base = sigma.without(v).ok_or(Error::DegenerateBase)?;
    let foot = altitude_foot(p, &base, v)?;
    let pv = p.point(v)?;
    Ok(pv.iter().zip(&foot).map(|(a, b)| a - b).collect())
}

/// Orthogonal projection of `p(v)` onto the affine span of `p(base)`.
/// Solves the Gram normal equations exactly; errors when the base is
/// affinely dependent.
pub fn altitude_foot(p: &Embedding, base: &Face, v: usize) -> Result<Vec<BigRational>> {
    let q: Vec<&[BigRational]> = base
        .vertices()
        .iter()
        .map(|&u| p.point(u))
        .collect::<Result<Vec<_>>>()?;
    let pv = p.point(v)?;
    let m = q.len() - 1;
    if m == 0 {
        return Ok(q[0].to_vec());
    }
    let dirs: Vec<Vec<BigRational>> = (1..=m)
        .map(|i| q[i].iter().zip(q[0]).map(|(a, b)| a - b).collect())
        .collect();
    let dot = |a: &[BigRational], b: &[BigRational]| -> BigRational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };
    let mut gram = RationalMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            gram.set(i, j, dot(&dirs[i], &dirs[j]));
        }
    }
    if gram.rank() < m {
        return Err(Error::DegenerateBase);
    }
    let rel: Vec<BigRational> = pv.iter().zip(q[0]).map(|(a, b)| a - b).collect();
    let rhs: Vec<BigRational> = (0..m).map(|i| dot(&dirs[i], &rel)).collect();
    let x = gram
        .solve(&rhs)?
        .expect("full-rank Gram system is consistent");
    let mut foot = q[0].to_vec();
    for (i, coeff) in x.iter().enumerate() {
        for (f, d) in foot.iter_mut().zip(&dirs[i]) {
            *f += coeff * d;
        }
    }
    Ok(foot)
}

/// The d+1 scaled standard basis vectors of `R^(d+1)` (squared edge length 2
/// between any two), optionally followed by their centroid.
///
/// A regular d-simplex has no all-rational coordinates in `R^d` for most d,
/// so the ambient dimension is d+1 here; every quantity downstream depends
/// only on the squared-length table, which is exactly that of a regular
/// simplex.
pub fn regular_simplex_embedding(d: usize, with_centroid: bool) -> Embedding {
    assert!(d >= 1);
    let n = d + 1;
    let mut points = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut p = vec![BigRational::zero(); n];
        p[i] = BigRational::one();
        points.push(p);
    }
    if with_centroid {
        let c = BigRational::new(BigInt::one(), BigInt::from(n));
        points.push(vec![c; n]);
    }
    Embedding::new(n, points).expect("coordinates are consistent")
}

/// Deterministic random embedding: each coordinate an integer drawn
/// uniformly from `[-2^bits, 2^bits]`.
pub fn random_rational_embedding(n: usize, d: usize, seed: u64, bits: u32) -> Embedding {
    let mut rng = Rng::new(seed);
    let points = (0..n)
        .map(|_| {
            (0..d)
                .map(|_| BigRational::from_integer(BigInt::from(rng.int_with_bits(bits))))
                .collect()
        })
        .collect();
    Embedding::new(d, points).expect("coordinates are consistent")
}

/// Squared distance from the centroid of the local vertices `base` to the
/// local vertex `i`, computed purely from the squared-distance table via
/// polarization: `<q_j - q_i, q_l - q_i> = (t_ij + t_il - t_jl) / 2`.
pub fn centroid_sq_dist(t: &LengthTable, base: &[usize], i: usize) -> BigRational {
    let m = BigInt::from(base.len());
    let mut acc = BigRational::zero();
    for &j in base {
        for &l in base {
            let inner = t.get(i, j) + t.get(i, l) - t.get(j, l);
            acc += inner / BigRational::from_integer(BigInt::from(2));
        }
    }
    acc / BigRational::from_integer(&m * &m)
}

/// Squared-distance table of a unit regular d-simplex together with its
/// centroid as local vertex 0: entry (0, j) is the centroid-to-vertex
/// distance derived from the centroid definition, entries among 1..=d+1
/// are 1.
pub fn centroid_augmented_unit_table(d: usize) -> LengthTable {
    let unit = LengthTable::regular_unit(d + 1);
    let base: Vec<usize> = (0..d + 1).collect();
    // centroid-to-vertex squared distance in the unit table; the same for
    // every vertex by symmetry, but computed per vertex anyway
    let mut t = LengthTable::zeros(d + 2);
    for i in 1..d + 2 {
        t.set(0, i, centroid_sq_dist(&unit, &base, i - 1));
        for j in i + 1..d + 2 {
            t.set(i, j, BigRational::one());
        }
    }
    t
}

/// The coefficients of the squared-volume quadratic `f(t) = A t^2 + B t + C`,
/// where `t` is the squared length of the local edge {0, 1} and all other
/// entries of the table are held fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeQuadratic {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    /// Dimension of the simplex whose squared volume this is.
    pub k: usize,
}

impl VolumeQuadratic {
    pub fn eval(&self, t: &BigRational) -> BigRational {
        (&self.a * t + &self.b) * t + &self.c
    }

    pub fn derivative(&self, t: &BigRational) -> BigRational {
        &self.a * t * BigRational::from_integer(BigInt::from(2)) + &self.b
    }

    /// The unique critical point `-B / 2A`.
    pub fn critical_point(&self) -> BigRational {
        -&self.b / (&self.a * BigRational::from_integer(BigInt::from(2)))
    }

    pub fn discriminant(&self) -> BigRational {
        &self.b * &self.b - BigRational::from_integer(BigInt::from(4)) * &self.a * &self.c
    }

    /// The two roots of `f`, sorted, when the discriminant is a rational
    /// square.
    pub fn rational_roots(&self) -> Option<(BigRational, BigRational)> {
        let s = crate::util::rat_sqrt(&self.discriminant())?;
        let two_a = &self.a * BigRational::from_integer(BigInt::from(2));
        let r1 = (-&self.b + &s) / &two_a;
        let r2 = (-&self.b - &s) / &two_a;
        Some(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
    }
}

/// Exact quadratic coefficients of the squared volume as a function of the
/// squared length of the local edge {0, 1}; the (0, 1) entry of `fixed` is
/// ignored. Errors when the opposite simplex on {2, ..., k} is degenerate
/// (that is exactly when the leading coefficient would vanish).
pub fn volume_quadratic(fixed: &LengthTable) -> Result<VolumeQuadratic> {
    let k = fixed.size() - 1;
    if k < 2 {
        return Err(Error::ParamRange(
            "volume quadratic needs a simplex of dimension >= 2".into(),
        ));
    }
    let opposite: Vec<usize> = (2..=k).collect();
    let opp_vol2 = cm_squared_volume(&fixed.sub_table(&opposite));
    if !opp_vol2.is_positive() {
        return Err(Error::DegenerateBase);
    }
    let eval = |t: i64| -> BigRational {
        let mut table = fixed.clone();
        table.set(0, 1, BigRational::from_integer(BigInt::from(t)));
        cm_squared_volume(&table)
    };
    let (f0, f1, f2) = (eval(0), eval(1), eval(2));
    let two = BigRational::from_integer(BigInt::from(2));
    let a = (&f2 - &two * &f1 + &f0) / &two;
    let b = &f1 - &f0 - &a;
    let c = f0;
    debug_assert!(a.is_negative());
    Ok(VolumeQuadratic { a, b, c, k })
}

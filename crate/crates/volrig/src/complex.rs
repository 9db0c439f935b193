//! Simplicial complexes and the combinatorial operations performed on them:
//! links, vertex deletions, restrictions, skeleta, complete complexes.
//!
//! Vertices are dense integers `0..n`, which is what matrix column indexing
//! needs. Operations that drop a vertex relabel the remaining ones downward
//! so the dense-identifier invariant is preserved; constructions that care
//! about designated vertices return a label struct alongside the complex.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::util::subsets_of_size;
use crate::{Error, Result};

/// A face: a nonempty, strictly increasing list of vertex identifiers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    vertices: Vec<usize>,
}

impl Face {
    /// Canonicalizes the vertex list (sorts); rejects empty or duplicated
    /// vertex lists.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::NotAFace(vertices));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotAFace(vertices));
        }
        Ok(Face { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Subset test against another face.
    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.vertices.iter().all(|v| other.contains_vertex(*v))
    }

    /// The face with `v` removed; `None` if that would empty it.
    pub fn without(&self, v: usize) -> Option<Face> {
        if self.vertices.len() == 1 {
            return None;
        }
        Some(Face {
            vertices: self.vertices.iter().copied().filter(|&u| u != v).collect(),
        })
    }

    /// All sub-faces with `size` vertices, in lexicographic order.
    pub fn subfaces(&self, size: usize) -> Vec<Face> {
        subsets_of_size(self.vertices.len(), size)
            .into_iter()
            .map(|idx| Face {
                vertices: idx.into_iter().map(|i| self.vertices[i]).collect(),
            })
            .collect()
    }

    /// The vertex pairs inside this face, as (u, v) with u < v.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let vs = &self.vertices;
        let mut out = Vec::with_capacity(vs.len() * (vs.len() - 1) / 2);
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                out.push((vs[i], vs[j]));
            }
        }
        out
    }
}

/// A finite simplicial complex: a downward-closed family of faces on a dense
/// vertex set `0..n`. The 0-faces always cover the whole vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    faces_by_dim: Vec<Vec<Face>>,
}

impl SimplicialComplex {
    /// The complete k-dimensional complex on n vertices: every subset of
    /// `0..n` with at most k+1 elements is a face.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k >= n {
            return Err(Error::DimensionTooLarge { k, n });
        }
        let faces_by_dim = (0..=k)
            .map(|i| {
                subsets_of_size(n, i + 1)
                    .into_iter()
                    .map(|vertices| Face { vertices })
                    .collect()
            })
            .collect();
        Ok(SimplicialComplex {
            n_vertices: n,
            faces_by_dim,
        })
    }

    /// Downward closure of a facet list on the vertex set `0..n`.
    pub fn from_facets(n: usize, facets: &[Face]) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyFacets);
        }
        for f in facets {
            if let Some(&v) = f.vertices().iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange(v, n));
            }
        }
        let dim = facets.iter().map(Face::dim).max().unwrap();
        let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); dim + 1];
        for v in 0..n {
            sets[0].insert(Face { vertices: vec![v] });
        }
        for f in facets {
            for i in 1..=f.dim() {
                for sub in f.subfaces(i + 1) {
                    sets[i].insert(sub);
                }
            }
        }
        Ok(SimplicialComplex {
            n_vertices: n,
            faces_by_dim: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn dim(&self) -> usize {
        self.faces_by_dim.len() - 1
    }

    /// The i-dimensional faces, in lexicographic order. Empty slice when the
    /// complex has no faces of that dimension.
    pub fn faces(&self, i: usize) -> &[Face] {
        self.faces_by_dim.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn face_count(&self, i: usize) -> usize {
        self.faces(i).len()
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.faces_by_dim
            .get(f.dim())
            .is_some_and(|fs| fs.binary_search(f).is_ok())
    }

    /// Position of a face within its dimension's lexicographic order.
    pub fn face_index(&self, f: &Face) -> Option<usize> {
        self.faces_by_dim.get(f.dim())?.binary_search(f).ok()
    }

    /// Edges as (u, v) pairs with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces(1)
            .iter()
            .map(|f| (f.vertices()[0], f.vertices()[1]))
            .collect()
    }

    /// True when every face lies in some top-dimensional face.
    pub fn is_pure(&self) -> bool {
        let k = self.dim();
        for i in 0..k {
            for f in self.faces(i) {
                let extended = self
                    .faces(i + 1)
                    .iter()
                    .any(|g| f.is_subface_of(g));
                if !extended {
                    return false;
                }
            }
        }
        true
    }

    /// Maximal faces, in lexicographic order within each dimension, lower
    /// dimensions first.
    pub fn facets(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for i in 0..=self.dim() {
            for f in self.faces(i) {
                let covered = self.faces(i + 1).iter().any(|g| f.is_subface_of(g));
                if !covered {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    fn relabel_after_removal(face: &Face, removed: usize) -> Face {
        Face {
            vertices: face
                .vertices()
                .iter()
                .map(|&u| if u > removed { u - 1 } else { u })
                .collect(),
        }
    }

    /// The link of `v`: the complex on the remaining vertices whose faces are
    /// `sigma - v` over all faces `sigma` containing `v`. Remaining vertices
    /// are relabeled downward to stay dense.
    pub fn link(&self, v: usize) -> Result<SimplicialComplex> {
        if v >= self.n_vertices {
            return Err(Error::MissingVertex(v));
        }
        let mut facets = Vec::new();
        for i in (1..=self.dim()).rev() {
            for f in self.faces(i) {
                if !f.contains_vertex(v) {
                    continue;
                }
                let g = Self::relabel_after_removal(&f.without(v).unwrap(), v);
                if !facets.iter().any(|h| g.is_subface_of(h)) {
                    facets.push(g);
                }
            }
        }
        let n = self.n_vertices - 1;
        if facets.is_empty() {
            // v is isolated: the link is the bare vertex set
            facets = (0..n).map(|u| Face { vertices: vec![u] }).collect();
            if facets.is_empty() {
                return Err(Error::MissingVertex(v));
            }
        }
        SimplicialComplex::from_facets(n, &facets)
    }

    /// The deletion of `v`: all faces avoiding `v`, relabeled densely.
    pub fn delete_vertex(&self, v: usize) -> Result<SimplicialComplex> {
        if v >= self.n_vertices {
            return Err(Error::MissingVertex(v));
        }
        if self.n_vertices == 1 {
            return Err(Error::ParamRange(
                "cannot delete the only vertex".into(),
            ));
        }
        // every face avoiding v survives, including proper faces of facets
        // that contain v
        let mut facets: Vec<Face> = Vec::new();
        for i in (1..=self.dim()).rev() {
            for f in self.faces(i) {
                if f.contains_vertex(v) {
                    continue;
                }
                let g = Self::relabel_after_removal(f, v);
                if !facets.iter().any(|h| g.is_subface_of(h)) {
                    facets.push(g);
                }
            }
        }
        let n = self.n_vertices - 1;
        if facets.is_empty() {
            let singletons: Vec<Face> = (0..n).map(|u| Face { vertices: vec![u] }).collect();
            return SimplicialComplex::from_facets(n, &singletons);
        }
        SimplicialComplex::from_facets(n, &facets)
    }

    /// The restriction to a set of top-dimensional faces: the downward
    /// closure of `selection`, on the vertices it touches (relabeled densely
    /// in ascending order of original identifier).
    pub fn restriction(&self, selection: &[Face]) -> Result<SimplicialComplex> {
        if selection.is_empty() {
            return Err(Error::EmptyFacets);
        }
        let k = self.dim();
        for f in selection {
            if f.dim() != k || !self.contains(f) {
                return Err(Error::NotAFace(f.vertices().to_vec()));
            }
        }
        let used: BTreeSet<usize> = selection
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        let remap: std::collections::HashMap<usize, usize> =
            used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let facets: Vec<Face> = selection
            .iter()
            .map(|f| Face {
                vertices: f.vertices().iter().map(|v| remap[v]).collect(),
            })
            .collect();
        SimplicialComplex::from_facets(used.len(), &facets)
    }

    /// The 1-skeleton as a graph; requires dimension at least 1.
    pub fn one_skeleton(&self) -> Result<Graph> {
        if self.dim() < 1 {
            return Err(Error::ParamRange(
                "1-skeleton requires dimension >= 1".into(),
            ));
        }
        Ok(Graph {
            n: self.n_vertices,
            edges: self.edges(),
        })
    }

    /// Exhaustive downward-closure check over all stored faces.
    pub fn closure_holds(&self) -> bool {
        if self.face_count(0) != self.n_vertices {
            return false;
        }
        for i in 1..=self.dim() {
            for f in self.faces(i) {
                for sub in f.subfaces(i) {
                    if !self.contains(&sub) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        let facets: Vec<Vec<usize>> = self
            .facets()
            .iter()
            .map(|f| f.vertices().to_vec())
            .collect();
        serde_json::json!({
            "n": self.n_vertices,
            "dim": self.dim(),
            "facets": facets,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SimplicialComplex> {
        let parsed: ComplexJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(e.to_string()))?;
        let facets = parsed
            .facets
            .into_iter()
            .map(Face::new)
            .collect::<Result<Vec<_>>>()?;
        let complex = SimplicialComplex::from_facets(parsed.n, &facets)?;
        if complex.dim() != parsed.dim {
            return Err(Error::Parse(format!(
                "declared dim {} but facets give {}",
                parsed.dim,
                complex.dim()
            )));
        }
        Ok(complex)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: usize,
    dim: usize,
    facets: Vec<Vec<usize>>,
}

/// A finite simple graph on dense vertices, edges as (u, v) with u < v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph { n, edges }
    }

    pub fn from_edges(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Graph> {
        for e in edges.iter_mut() {
            if e.0 == e.1 {
                return Err(Error::NotAFace(vec![e.0, e.1]));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.1 >= n {
                return Err(Error::VertexOutOfRange(e.1, n));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Graph { n, edges })
    }
}

/// Designated vertices of the braced-hinge complex built by [`braced_hinge`].
#[derive(Clone, Copy, Debug)]
pub struct HingeLabels {
    /// Vertices unique to the first sheet.
    pub first_rim: [usize; 3],
    /// Vertices unique to the second sheet, paired componentwise with
    /// `first_rim` through the apex triangles.
    pub second_rim: [usize; 3],
    /// The shared edge of the two sheets.
    pub hinge: (usize, usize),
    /// The bracing vertex.
    pub apex: usize,
}

/// Two copies of the complete 2-complex on 5 vertices, each with one
/// triangle removed, glued along the edge {3,4}; a ninth vertex braces the
/// rims pairwise with three more triangles.
///
/// Sheet one lives on {0..4} with triangle {0,1,2} removed; sheet two on
/// {3..7} with {5,6,7} removed; the apex is vertex 8 with triangles
/// {0,5,8}, {1,6,8}, {2,7,8}. The hinged part (vertices 0..7) has 18
/// triangles and its skeleton can rotate about the hinge, which is what the
/// bracing triangles are there to obstruct at the level of the skeleton.
pub fn braced_hinge() -> (SimplicialComplex, HingeLabels) {
    let mut facets = Vec::new();
    for s in subsets_of_size(5, 3) {
        if s != [0, 1, 2] {
            facets.push(Face::new(s).unwrap());
        }
    }
    for s in subsets_of_size(5, 3) {
        let shifted: Vec<usize> = s.iter().map(|v| v + 3).collect();
        if shifted != [5, 6, 7] {
            facets.push(Face::new(shifted).unwrap());
        }
    }
    facets.push(Face::new(vec![0, 5, 8]).unwrap());
    facets.push(Face::new(vec![1, 6, 8]).unwrap());
    facets.push(Face::new(vec![2, 7, 8]).unwrap());
    let complex = SimplicialComplex::from_facets(9, &facets).unwrap();
    (
        complex,
        HingeLabels {
            first_rim: [0, 1, 2],
            second_rim: [5, 6, 7],
            hinge: (3, 4),
            apex: 8,
        },
    )
}

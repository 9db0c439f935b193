//! Bipartite containment graphs, maximum matching, matroid intersection
//! between the generic rigidity matroid and the transversal matroid of
//! edge-in-face containments, and the Hall-type deficiency scan.
//!
//! The rigidity matroid is queried through a rank oracle backed by one fixed
//! random evaluation: at a fixed embedding and prime the rank function is the
//! rank function of an honest linear matroid, so the intersection algorithm
//! is exact for the sampled matroid. Sampling can only shrink the matroid,
//! hence results are certified lower bounds for the generic quantities; the
//! final common independent set and the dual cover are re-verified with exact
//! rational arithmetic, and any internal inconsistency aborts with an audit
//! error instead of returning a wrong answer.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::complex::{Face, SimplicialComplex};
use crate::geometry::random_rational_embedding;
use crate::linalg::RationalMatrix;
use crate::modp::{random_prime, PrimeFieldMatrix};
use crate::rank::{generic_rank_cm, generic_rank_volume, LengthMode, RankCfg, RankReport};
use crate::rng::{derive_seed, Rng};
use crate::{Error, Result};

/// Bipartite containment graph between two families of faces: an adjacency
/// from each left face to every right face that contains it.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    pub left: Vec<Face>,
    pub right: Vec<Face>,
    /// `adjacency[i]` holds the right indices containing left face i
    pub adjacency: Vec<Vec<usize>>,
}

/// Containment is non-strict, so equal faces are adjacent; for families of
/// different dimensions (edges inside k-faces, k >= 2) this coincides with
/// strict containment, and for equal families it matches each face to
/// itself, which is what the k = 1 degenerate cases need.
pub fn incidence_graph(left: &[Face], right: &[Face]) -> IncidenceGraph {
    let adjacency = left
        .iter()
        .map(|a| {
            right
                .iter()
                .enumerate()
                .filter(|(_, b)| a.is_subface_of(b))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    IncidenceGraph {
        left: left.to_vec(),
        right: right.to_vec(),
        adjacency,
    }
}

impl IncidenceGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }
}

/// Maximum matching size of the incidence graph.
pub fn matching_number(h: &IncidenceGraph) -> usize {
    hopcroft_karp(&h.adjacency, h.right.len())
}

/// Hopcroft–Karp maximum bipartite matching on a left-to-right adjacency.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> usize {
    const NIL: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_left = vec![NIL; n_left];
    let mut match_right = vec![NIL; n_right];
    let mut dist = vec![NIL; n_left];
    let mut total = 0;

    fn dfs(
        u: usize,
        adj: &[Vec<usize>],
        match_left: &mut [usize],
        match_right: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        for &v in &adj[u] {
            let w = match_right[v];
            if w == NIL
                || (dist[w] == dist[u].wrapping_add(1)
                    && dfs(w, adj, match_left, match_right, dist))
            {
                match_left[u] = v;
                match_right[v] = u;
                return true;
            }
        }
        dist[u] = NIL;
        false
    }

    loop {
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_left[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_right[v];
                if w == NIL {
                    reachable_free = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free {
            break;
        }
        for u in 0..n_left {
            if match_left[u] == NIL && dfs(u, adj, &mut match_left, &mut match_right, &mut dist) {
                total += 1;
            }
        }
    }
    total
}

/// Reduced echelon basis over Z/p, for incremental row-span membership.
struct ModpEchelon {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    leads: Vec<usize>,
}

impl ModpEchelon {
    fn new(p: u64, cols: usize) -> Self {
        ModpEchelon {
            p,
            cols,
            rows: Vec::new(),
            leads: Vec::new(),
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn reduce(&self, row: &mut [u64]) {
        for (r, &lead) in self.rows.iter().zip(&self.leads) {
            let f = row[lead];
            if f == 0 {
                continue;
            }
            for j in lead..self.cols {
                let sub = self.mul(f, r[j]);
                row[j] = if row[j] >= sub {
                    row[j] - sub
                } else {
                    row[j] + self.p - sub
                };
            }
        }
    }

    /// True iff the row lies in the current span.
    fn contains(&self, row: &[u64]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(|&v| v == 0)
    }

    /// Inserts the row; returns true if the rank grew.
    fn insert(&mut self, row: &[u64]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        let Some(lead) = r.iter().position(|&v| v != 0) else {
            return false;
        };
        let inv = self.pow(r[lead], self.p - 2);
        for v in r.iter_mut() {
            *v = self.mul(*v, inv);
        }
        self.rows.push(r);
        self.leads.push(lead);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Configuration for the rigidity rank oracle: which evaluation to fix.
#[derive(Clone, Copy, Debug)]
pub struct OracleCfg {
    pub seed: u64,
    pub bits: u32,
}

impl Default for OracleCfg {
    fn default() -> Self {
        OracleCfg { seed: 1, bits: 20 }
    }
}

/// Rank oracle for edge subsets in the d-dimensional rigidity matroid,
/// backed by one fixed random embedding.
///
/// Fast queries run over a fixed 62-bit prime; `rank_exact` re-computes over
/// the rationals at the same embedding. Since both are rank functions of
/// genuine linear matroids, monotonicity and unit increase hold by
/// construction; the sampled matroid can only be smaller than the generic
/// one, never larger.
pub struct RigidityOracle {
    edges: Vec<(usize, usize)>,
    exact_rows: RationalMatrix,
    modp_rows: Vec<Vec<u64>>,
    prime: u64,
    cols: usize,
    cache: HashMap<Vec<u16>, usize>,
    queries: usize,
}

impl RigidityOracle {
    pub fn new(
        n: usize,
        d: usize,
        edges: &[(usize, usize)],
        cfg: &OracleCfg,
    ) -> Result<RigidityOracle> {
        let p = random_rational_embedding(n, d, derive_seed(cfg.seed, 0xE), cfg.bits);
        let cols = n * d;
        let mut exact = RationalMatrix::zeros(edges.len(), cols);
        for (row, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u.max(v), n));
            }
            let (pu, pv) = (p.point(u)?.to_vec(), p.point(v)?.to_vec());
            for c in 0..d {
                let diff = (&pu[c] - &pv[c]) * num_rational::BigRational::from_integer(2.into());
                exact.set(row, u * d + c, diff.clone());
                exact.set(row, v * d + c, -diff);
            }
        }
        let mut prime_rng = Rng::new(derive_seed(cfg.seed, 0xF));
        let prime = random_prime(&mut prime_rng);
        let reduced = PrimeFieldMatrix::from_rational(&exact, prime)?;
        let modp_rows = (0..edges.len()).map(|i| reduced.row(i).to_vec()).collect();
        Ok(RigidityOracle {
            edges: edges.to_vec(),
            exact_rows: exact,
            modp_rows,
            prime,
            cols,
            cache: HashMap::new(),
            queries: 0,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    /// Fast rank of an edge-index subset.
    pub fn rank(&mut self, subset: &[usize]) -> usize {
        self.queries += 1;
        let mut key: Vec<u16> = subset.iter().map(|&i| i as u16).collect();
        key.sort_unstable();
        key.dedup();
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let mut ech = ModpEchelon::new(self.prime, self.cols);
        for &i in key.iter() {
            ech.insert(&self.modp_rows[i as usize]);
        }
        let r = ech.rank();
        self.cache.insert(key, r);
        r
    }

    /// Rank query audited against known bounds from a queried chain; a value
    /// outside `[lo, hi]` aborts with a diagnostic.
    pub fn rank_audited(&mut self, subset: &[usize], lo: usize, hi: usize) -> Result<usize> {
        let r = self.rank(subset);
        if r < lo || r > hi {
            return Err(Error::OracleAudit(format!(
                "rank {r} outside audited range [{lo}, {hi}] for subset of size {}",
                subset.len()
            )));
        }
        Ok(r)
    }

    /// Exact rational rank of the subset's rows at the fixed embedding.
    pub fn rank_exact(&self, subset: &[usize]) -> usize {
        self.exact_rows.select_rows(subset).rank()
    }

    /// Echelon of the subset's reduced rows, for repeated span queries.
    fn echelon(&self, subset: &[usize]) -> ModpEchelon {
        let mut ech = ModpEchelon::new(self.prime, self.cols);
        for &i in subset {
            ech.insert(&self.modp_rows[i]);
        }
        ech
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.modp_rows[i]
    }
}

/// Matroid-intersection outcome for the rigidity and transversal matroids.
#[derive(Clone, Debug)]
pub struct RadoReport {
    /// Size of the best common independent set found.
    pub value: usize,
    /// The edges of that set, each independent in the sampled rigidity
    /// matroid and matched injectively into the top faces.
    pub independent_edges: Vec<(usize, usize)>,
    /// Dual cover value r1(U) + r2(E - U); equals `value` when certified.
    pub dual_value: usize,
    /// Both the common independent set and the dual equalities re-verified
    /// with exact rational rank at the sampled embedding.
    pub certified: bool,
    pub seed: u64,
}

/// Maximum size of an edge set that is independent in the d-dimensional
/// rigidity matroid and admits a matching into the top faces containing the
/// edges; computed by augmenting-path matroid intersection.
pub fn rado_rank(x: &SimplicialComplex, d: usize, cfg: &OracleCfg) -> Result<RadoReport> {
    let k = x.dim();
    if k < 1 {
        return Err(Error::ParamRange("complex must have dimension >= 1".into()));
    }
    if x.face_count(k) == 0 {
        return Ok(RadoReport {
            value: 0,
            independent_edges: Vec::new(),
            dual_value: 0,
            certified: true,
            seed: cfg.seed,
        });
    }
    let mut last_err = None;
    for attempt in 0..3 {
        let attempt_cfg = OracleCfg {
            seed: derive_seed(cfg.seed, attempt),
            bits: cfg.bits,
        };
        match rado_attempt(x, d, &attempt_cfg) {
            Ok(report) if report.certified => {
                return Ok(RadoReport {
                    seed: cfg.seed,
                    ..report
                })
            }
            Ok(report) if attempt == 2 => return Ok(report),
            Ok(_) => {}
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::OracleAudit("no certified run".into())))
}

fn rado_attempt(x: &SimplicialComplex, d: usize, cfg: &OracleCfg) -> Result<RadoReport> {
    let k = x.dim();
    let edges = x.edges();
    let m = edges.len();
    let edge_faces: Vec<Face> = x.faces(1).to_vec();
    let top: Vec<Face> = x.faces(k).to_vec();
    let h = incidence_graph(&edge_faces, &top);
    let mut oracle = RigidityOracle::new(x.n_vertices(), d, &edges, cfg)?;

    // transversal independence: the subset matches injectively into `top`
    let transversal_independent = |subset: &[usize]| -> bool {
        let adj: Vec<Vec<usize>> = subset.iter().map(|&i| h.adjacency[i].clone()).collect();
        hopcroft_karp(&adj, top.len()) == subset.len()
    };

    let mut in_set = vec![false; m];
    let mut size = 0usize;
    loop {
        let members: Vec<usize> = (0..m).filter(|&i| in_set[i]).collect();
        let outside: Vec<usize> = (0..m).filter(|&i| !in_set[i]).collect();

        // audit: the current set must still look independent on both sides
        let r = oracle.rank_audited(&members, size, size)?;
        debug_assert_eq!(r, size);
        if !transversal_independent(&members) {
            return Err(Error::OracleAudit(
                "current set lost transversal independence".into(),
            ));
        }

        // sources: rigidity side extends; sinks: transversal side extends
        let base_ech = oracle.echelon(&members);
        let sources: Vec<usize> = outside
            .iter()
            .copied()
            .filter(|&y| !base_ech.contains(oracle.row(y)))
            .collect();
        let sinks: HashSet<usize> = outside
            .iter()
            .copied()
            .filter(|&y| {
                let mut s = members.clone();
                s.push(y);
                transversal_independent(&s)
            })
            .collect();

        // exchange digraph: arc (x in I) -> (y not in I) when I - x + y stays
        // rigidity-independent; arc y -> x when I - x + y stays transversal-
        // independent. BFS for a shortest source-to-sink path.
        let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &xr in &members {
            let without: Vec<usize> = members.iter().copied().filter(|&i| i != xr).collect();
            let ech = oracle.echelon(&without);
            let mut swap_set = without.clone();
            swap_set.push(0); // placeholder slot
            for &y in &outside {
                if !ech.contains(oracle.row(y)) {
                    arcs[xr].push(y);
                }
                *swap_set.last_mut().unwrap() = y;
                if transversal_independent(&swap_set) {
                    arcs[y].push(xr);
                }
            }
        }

        let mut parent = vec![usize::MAX; m];
        let mut visited = vec![false; m];
        let mut queue = VecDeque::new();
        for &s in &sources {
            visited[s] = true;
            queue.push_back(s);
        }
        let mut found = None;
        'bfs: while let Some(u) = queue.pop_front() {
            if sinks.contains(&u) {
                found = Some(u);
                break 'bfs;
            }
            for &w in &arcs[u] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }

        match found {
            Some(mut v) => {
                // toggle membership along the augmenting path
                loop {
                    in_set[v] = !in_set[v];
                    if parent[v] == usize::MAX {
                        break;
                    }
                    v = parent[v];
                }
                size += 1;
            }
            None => {
                // dual cover: U = vertices that can reach a sink (reverse
                // reachability); r1(U) = |I ∩ U| and r2(E - U) = |I - U|
                let mut rev: Vec<Vec<usize>> = vec![Vec::new(); m];
                for (u, outs) in arcs.iter().enumerate() {
                    for &w in outs {
                        rev[w].push(u);
                    }
                }
                let mut in_u = vec![false; m];
                let mut queue: VecDeque<usize> = sinks.iter().copied().collect();
                for &s in &sinks {
                    in_u[s] = true;
                }
                while let Some(u) = queue.pop_front() {
                    for &w in &rev[u] {
                        if !in_u[w] {
                            in_u[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
                let u_side: Vec<usize> = (0..m).filter(|&i| in_u[i]).collect();
                let rest: Vec<usize> = (0..m).filter(|&i| !in_u[i]).collect();
                let members: Vec<usize> = (0..m).filter(|&i| in_set[i]).collect();

                // exact re-verification of everything the report claims
                let independent_ok = oracle.rank_exact(&members) == size
                    && transversal_independent(&members);
                let r1_exact = oracle.rank_exact(&u_side);
                let adj_rest: Vec<Vec<usize>> =
                    rest.iter().map(|&i| h.adjacency[i].clone()).collect();
                let r2_rest = hopcroft_karp(&adj_rest, top.len());
                let dual_value = r1_exact + r2_rest;
                let in_u_count = members.iter().filter(|&&i| in_u[i]).count();
                let dual_ok =
                    r1_exact == in_u_count && r2_rest == size - in_u_count;
                return Ok(RadoReport {
                    value: size,
                    independent_edges: members.iter().map(|&i| edges[i]).collect(),
                    dual_value,
                    certified: independent_ok && dual_ok,
                    seed: cfg.seed,
                });
            }
        }
    }
}

/// Configuration of the deficiency scan.
#[derive(Clone, Copy, Debug)]
pub struct DeficiencyCfg {
    pub seed: u64,
    pub bits: u32,
    /// Cap on the number of scanned subsets.
    pub budget: usize,
    /// Restrict the scan to subsets of at most this many faces.
    pub max_size: Option<usize>,
    /// Stop at the first negative-deficiency witness.
    pub stop_at_first_negative: bool,
}

impl Default for DeficiencyCfg {
    fn default() -> Self {
        DeficiencyCfg {
            seed: 1,
            bits: 20,
            budget: 1 << 16,
            max_size: None,
            stop_at_first_negative: false,
        }
    }
}

/// Outcome of the deficiency scan.
#[derive(Clone, Debug)]
pub struct DeficiencyReport {
    /// Minimum over scanned subsets S of `rank(skeleton of X[S]) - |S|`.
    pub min_deficiency: i64,
    /// A subset attaining the minimum (empty for deficiency 0).
    pub witness: Vec<Face>,
    pub scanned: usize,
    /// Whether the scan covered every subset in the requested range.
    pub complete: bool,
}

/// Scans subsets S of the top faces and reports the minimum of
/// `rank_d(edges of X[S]) - |S|`, with the witness attaining it.
///
/// A negative minimum certifies a Hall-type obstruction. The scan first
/// visits every vertex-induced family (all top faces inside a vertex subset)
/// because minimizers are edge-saturated and the induced families catch the
/// structured witnesses cheaply; it then enumerates subsets exhaustively in
/// increasing size and lexicographic order within the budget.
pub fn hall_deficiency(
    x: &SimplicialComplex,
    d: usize,
    cfg: &DeficiencyCfg,
) -> Result<DeficiencyReport> {
    let k = x.dim();
    if k < 1 {
        return Err(Error::ParamRange("complex must have dimension >= 1".into()));
    }
    let top: Vec<Face> = x.faces(k).to_vec();
    let edges = x.edges();
    let edge_index: HashMap<(usize, usize), usize> = edges
        .iter()
        .copied()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let mut oracle = RigidityOracle::new(
        x.n_vertices(),
        d,
        &edges,
        &OracleCfg {
            seed: cfg.seed,
            bits: cfg.bits,
        },
    )?;

    let cap = cfg.max_size.unwrap_or(top.len()).min(top.len());
    let mut scanned = 1usize; // the empty set, deficiency 0 by definition
    let mut min_def = 0i64;
    let mut witness: Vec<usize> = Vec::new();
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut violators: Vec<Vec<usize>> = Vec::new();
    let mut complete = true;

    let edge_set_of = |subset: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = subset
            .iter()
            .flat_map(|&i| top[i].edge_pairs())
            .map(|e| edge_index[&e])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };

    let consider = |subset: Vec<usize>,
                        oracle: &mut RigidityOracle,
                        scanned: &mut usize,
                        min_def: &mut i64,
                        witness: &mut Vec<usize>,
                        violators: &mut Vec<Vec<usize>>|
     -> Result<bool> {
        *scanned += 1;
        let rank = oracle.rank(&edge_set_of(&subset));
        let mut def = rank as i64 - subset.len() as i64;
        if def < 0 {
            // re-check negatives exactly before reporting them
            let exact = oracle.rank_exact(&edge_set_of(&subset));
            def = exact as i64 - subset.len() as i64;
            if def < 0 {
                violators.push(subset.clone());
            }
        }
        if def < *min_def {
            *min_def = def;
            *witness = subset;
            if cfg.stop_at_first_negative {
                return Ok(true);
            }
        }
        Ok(false)
    };

    // vertex-induced families first
    let n = x.n_vertices();
    if n <= 20 {
        'outer: for mask in 1u64..(1 << n) {
            let subset: Vec<usize> = top
                .iter()
                .enumerate()
                .filter(|(_, f)| f.vertices().iter().all(|&v| mask >> v & 1 == 1))
                .map(|(i, _)| i)
                .collect();
            if subset.is_empty() || subset.len() > cap {
                continue;
            }
            let key: Vec<u16> = subset.iter().map(|&i| i as u16).collect();
            if !seen.insert(key) {
                continue;
            }
            if scanned >= cfg.budget {
                complete = false;
                break 'outer;
            }
            if consider(
                subset,
                &mut oracle,
                &mut scanned,
                &mut min_def,
                &mut witness,
                &mut violators,
            )? {
                let witness_faces = witness.iter().map(|&i| top[i].clone()).collect();
                return Ok(DeficiencyReport {
                    min_deficiency: min_def,
                    witness: witness_faces,
                    scanned,
                    complete: false,
                });
            }
        }
    }

    // exhaustive enumeration by increasing size, lexicographic within size
    'sizes: for size in 1..=cap {
        for subset in crate::util::subsets_of_size(top.len(), size) {
            if scanned >= cfg.budget {
                complete = false;
                break 'sizes;
            }
            let key: Vec<u16> = subset.iter().map(|&i| i as u16).collect();
            if seen.contains(&key) {
                continue;
            }
            if cfg.stop_at_first_negative
                && violators
                    .iter()
                    .any(|v| v.iter().all(|i| subset.binary_search(i).is_ok()))
            {
                continue; // supersets of a known violator add nothing here
            }
            if consider(
                subset,
                &mut oracle,
                &mut scanned,
                &mut min_def,
                &mut witness,
                &mut violators,
            )? {
                complete = false;
                break 'sizes;
            }
        }
    }

    // final witness re-verified exactly
    if !witness.is_empty() {
        let exact = oracle.rank_exact(&edge_set_of(&witness));
        min_def = exact as i64 - witness.len() as i64;
    }
    Ok(DeficiencyReport {
        min_deficiency: min_def,
        witness: witness.into_iter().map(|i| top[i].clone()).collect(),
        scanned,
        complete,
    })
}

/// Both sides of the matching characterization of the volume rank: the
/// generic rank of the volume rigidity matrix against the matroid
/// intersection optimum. Reports agreement per instance, never a general
/// truth claim.
#[derive(Clone, Debug)]
pub struct MatchingRankCheck {
    pub lhs: RankReport,
    pub rhs: RadoReport,
    pub agree: bool,
}

pub fn matching_rank_check(
    x: &SimplicialComplex,
    d: usize,
    rank_cfg: &RankCfg,
    oracle_cfg: &OracleCfg,
) -> Result<MatchingRankCheck> {
    let lhs = generic_rank_volume(x, d, rank_cfg)?;
    let rhs = rado_rank(x, d, oracle_cfg)?;
    let agree = lhs.value == rhs.value;
    Ok(MatchingRankCheck { lhs, rhs, agree })
}

/// Both sides of the matching characterization of the Cayley–Menger Jacobian
/// rank at free generic lengths: generic rank of C against the matching
/// number of the edge/top-face containment graph.
#[derive(Clone, Debug)]
pub struct CmMatchingCheck {
    pub lhs: RankReport,
    pub rhs: usize,
    pub agree: bool,
}

pub fn cm_matching_check(x: &SimplicialComplex, cfg: &RankCfg) -> Result<CmMatchingCheck> {
    let k = x.dim();
    let n = x.n_vertices();
    if k < 2 || k + 2 > n {
        return Err(Error::ParamRange(format!(
            "matching characterization needs 2 <= k <= n-2, got k={k} n={n}"
        )));
    }
    let lhs = generic_rank_cm(x, LengthMode::Free, cfg)?;
    let h = incidence_graph(x.faces(1), x.faces(k));
    let rhs = matching_number(&h);
    Ok(CmMatchingCheck {
        agree: lhs.value == rhs,
        lhs,
        rhs,
    })
}

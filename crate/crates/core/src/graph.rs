//! Rotation systems of 3-valent multigraphs.
//!
//! A graph is stored as a single involution on its darts. Darts are numbered
//! canonically: vertex `v` owns darts `3v`, `3v+1`, `3v+2`, and the cyclic
//! order at `v` (the embedding) is implicit in that numbering:
//! `rot(3v+j) = 3v+(j+1)%3`. The [`RotationGraph::opposite`] involution
//! carries all remaining structure. Facet boundary walks follow
//! `face_next(d) = rot(opposite(d))`.
//!
//! Construction enforces the ambient assumptions once and for all: every
//! graph held by this type is 3-valent, connected, and embedded in the
//! sphere (Euler characteristic 2). Loops and multiple edges are allowed at
//! this layer; the stronger *niceness* conditions are a separate, explicit
//! check ([`RotationGraph::validate_nice`]).

use crate::error::{Error, ParseError, Result, ValidationError};
use std::collections::BTreeMap;
use std::fmt;

/// Index of a vertex.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex(pub usize);

/// Index of a dart (half-edge). Dart `d` is based at vertex `d / 3`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dart(pub usize);

/// Index of an edge, i.e. an orbit of the opposite involution.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

/// Index of a facet, i.e. an orbit of the face-walk permutation.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FacetId(pub usize);

impl Dart {
    /// The vertex this dart is based at.
    pub fn vertex(self) -> Vertex {
        Vertex(self.0 / 3)
    }

    /// Position of this dart in its vertex's cyclic order (`0..3`).
    pub fn slot(self) -> usize {
        self.0 % 3
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One facet boundary walk: the darts in walk order, starting from the
/// smallest dart on the walk.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Facet {
    darts: Vec<Dart>,
}

impl Facet {
    /// The boundary darts in walk order.
    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    /// Number of edges (equivalently darts) on the walk.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    /// True if the walk is empty (never the case for a real facet).
    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Base vertices in walk order (with repetitions, if any).
    pub fn vertex_walk(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.darts.iter().map(|d| d.vertex())
    }

    /// Sorted, deduplicated vertex set.
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.vertex_walk().collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// True if the walk passes through the vertex.
    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertex_walk().any(|w| w == v)
    }
}

/// A 3-valent multigraph with a sphere embedding.
#[derive(Clone, PartialEq, Eq)]
pub struct RotationGraph {
    opposite: Vec<usize>,
    edges: Vec<(Dart, Dart)>,
    edge_of_dart: Vec<usize>,
    facets: Vec<Facet>,
    facet_of_dart: Vec<usize>,
}

impl fmt::Debug for RotationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RotationGraph(V={}, opposite={:?})", self.vertex_count(), self.opposite)
    }
}

impl RotationGraph {
    /// Build from the opposite involution over canonical darts.
    ///
    /// Checks that the table is an involution without fixed points and that
    /// the resulting map is connected and spherical.
    pub fn from_opposite(opposite: Vec<usize>) -> std::result::Result<Self, ValidationError> {
        let n = opposite.len();
        if n == 0 || n % 3 != 0 {
            return Err(ValidationError::BadDartTable(format!(
                "dart count {n} is not a positive multiple of 3"
            )));
        }
        for (d, &o) in opposite.iter().enumerate() {
            if o >= n {
                return Err(ValidationError::BadDartTable(format!(
                    "dart {d} pairs with {o}, which does not exist"
                )));
            }
            if o == d {
                return Err(ValidationError::BadDartTable(format!("dart {d} pairs with itself")));
            }
            if opposite[o] != d {
                return Err(ValidationError::BadDartTable(format!(
                    "pairing is not an involution at dart {d}"
                )));
            }
        }

        // Edge table: orbit (d, opposite(d)) keyed by its smaller dart.
        let mut edges = Vec::with_capacity(n / 2);
        let mut edge_of_dart = vec![usize::MAX; n];
        for d in 0..n {
            let o = opposite[d];
            if d < o {
                edge_of_dart[d] = edges.len();
                edge_of_dart[o] = edges.len();
                edges.push((Dart(d), Dart(o)));
            }
        }

        let g = RotationGraph {
            opposite,
            edges,
            edge_of_dart,
            facets: Vec::new(),
            facet_of_dart: vec![usize::MAX; n],
        };
        let g = g.with_facets();

        if !g.is_connected() {
            return Err(ValidationError::Disconnected);
        }
        let euler = g.euler();
        if euler != 2 {
            return Err(ValidationError::NotSphere { euler });
        }
        Ok(g)
    }

    fn with_facets(mut self) -> Self {
        let n = self.opposite.len();
        let mut facet_of = vec![usize::MAX; n];
        let mut facets = Vec::new();
        // Walks are collected in order of their smallest dart: scanning darts
        // ascending and starting a new walk at each unseen dart yields
        // exactly that order, with each walk beginning at its minimum.
        for start in 0..n {
            if facet_of[start] != usize::MAX {
                continue;
            }
            let id = facets.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                facet_of[d] = id;
                walk.push(Dart(d));
                d = self.face_next(Dart(d)).0;
                if d == start {
                    break;
                }
            }
            facets.push(Facet { darts: walk });
        }
        self.facets = facets;
        self.facet_of_dart = facet_of;
        self
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.opposite.len() / 3
    }

    /// Number of darts (always `3 * vertex_count`).
    pub fn dart_count(&self) -> usize {
        self.opposite.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All vertices.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.vertex_count()).map(Vertex)
    }

    /// All darts.
    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.dart_count()).map(Dart)
    }

    /// The other dart of the edge.
    pub fn opposite(&self, d: Dart) -> Dart {
        Dart(self.opposite[d.0])
    }

    /// Next dart in the cyclic order at the same vertex.
    pub fn rot(&self, d: Dart) -> Dart {
        Dart(d.0 - d.slot() + (d.slot() + 1) % 3)
    }

    /// `rot` applied twice (equivalently the previous dart at the vertex).
    pub fn rot2(&self, d: Dart) -> Dart {
        self.rot(self.rot(d))
    }

    /// The three darts based at `v`, in cyclic order.
    pub fn darts_at(&self, v: Vertex) -> [Dart; 3] {
        [Dart(3 * v.0), Dart(3 * v.0 + 1), Dart(3 * v.0 + 2)]
    }

    /// The vertex a dart points toward.
    pub fn head(&self, d: Dart) -> Vertex {
        self.opposite(d).vertex()
    }

    /// Neighbor vertices of `v` in slot order (with multiplicity).
    pub fn neighbors(&self, v: Vertex) -> [Vertex; 3] {
        let ds = self.darts_at(v);
        [self.head(ds[0]), self.head(ds[1]), self.head(ds[2])]
    }

    /// Edge list: each entry is the dart pair `(d, opposite(d))` with
    /// `d < opposite(d)`, sorted by `d`.
    pub fn edges(&self) -> &[(Dart, Dart)] {
        &self.edges
    }

    /// The edge a dart belongs to.
    pub fn edge_of(&self, d: Dart) -> EdgeId {
        EdgeId(self.edge_of_dart[d.0])
    }

    /// The dart pair of an edge.
    pub fn edge_darts(&self, e: EdgeId) -> (Dart, Dart) {
        self.edges[e.0]
    }

    /// Both endpoints of an edge (equal for a loop).
    pub fn edge_endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        let (a, b) = self.edges[e.0];
        (a.vertex(), b.vertex())
    }

    /// True if the edge is a loop.
    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.edge_endpoints(e);
        a == b
    }

    /// True if no two vertices are joined by more than one edge and there
    /// are no loops.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for e in 0..self.edge_count() {
            let (a, b) = self.edge_endpoints(EdgeId(e));
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return false;
            }
        }
        true
    }

    /// Successor along the facet boundary to the left of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot(self.opposite(d))
    }

    /// All facet boundary walks, ordered by their smallest dart.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// The facet whose boundary walk contains `d`.
    pub fn facet_of(&self, d: Dart) -> FacetId {
        FacetId(self.facet_of_dart[d.0])
    }

    /// The three facets at `v`, indexed by slot: entry `j` is the facet whose
    /// walk contains dart `3v+j`.
    pub fn facets_at(&self, v: Vertex) -> [FacetId; 3] {
        let ds = self.darts_at(v);
        [self.facet_of(ds[0]), self.facet_of(ds[1]), self.facet_of(ds[2])]
    }

    /// The two facets bordering the edge of `d`, as seen at the base vertex
    /// of `d`: the walks of `d` and of `rot(d)`.
    pub fn facets_along(&self, d: Dart) -> [FacetId; 2] {
        [self.facet_of(d), self.facet_of(self.rot(d))]
    }

    /// The facet at the base vertex of `d` that does *not* border the edge
    /// of `d` (its "normal" facet there).
    pub fn normal_facet(&self, d: Dart) -> FacetId {
        self.facet_of(self.rot2(d))
    }

    /// Euler characteristic `V - E + F` of the embedding.
    pub fn euler(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.facets.len() as i64
    }

    /// True if the underlying graph is connected.
    pub fn is_connected(&self) -> bool {
        self.component_count(&[], &[]) == 1
    }

    /// Number of connected components after deleting the listed vertices and
    /// edges. Isolated remaining vertices count as components.
    pub(crate) fn component_count(&self, del_vertices: &[Vertex], del_edges: &[EdgeId]) -> usize {
        self.components(del_vertices, del_edges).0
    }

    /// Component decomposition after deletions: `(count, id per vertex)`.
    /// Deleted vertices get `usize::MAX`.
    pub(crate) fn components(
        &self,
        del_vertices: &[Vertex],
        del_edges: &[EdgeId],
    ) -> (usize, Vec<usize>) {
        let n = self.vertex_count();
        let mut gone = vec![false; n];
        for &v in del_vertices {
            gone[v.0] = true;
        }
        let mut edge_gone = vec![false; self.edge_count()];
        for &e in del_edges {
            edge_gone[e.0] = true;
        }
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if gone[start] || comp[start] != usize::MAX {
                continue;
            }
            let id = count;
            count += 1;
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(v) = stack.pop() {
                for d in self.darts_at(Vertex(v)) {
                    if edge_gone[self.edge_of_dart[d.0]] {
                        continue;
                    }
                    let w = self.head(d).0;
                    if !gone[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
        }
        (count, comp)
    }

    /// Check the niceness conditions, in deterministic order: for each facet
    /// (ascending), first that no edge contributes both of its darts to the
    /// walk, then that the walk visits no vertex twice; finally that the
    /// three facets at each vertex are pairwise distinct.
    ///
    /// Facets are allowed to share up to two (disjoint) edges; niceness does
    /// not forbid that.
    pub fn validate_nice(&self) -> std::result::Result<(), ValidationError> {
        // Stamped with the facet index, so one buffer serves every facet.
        let mut edge_seen = vec![usize::MAX; self.edge_count()];
        let mut vertex_seen = vec![usize::MAX; self.vertex_count()];
        for (fi, facet) in self.facets.iter().enumerate() {
            for &d in &facet.darts {
                let e = self.edge_of_dart[d.0];
                if edge_seen[e] == fi {
                    return Err(ValidationError::FacetSelfIntersects { facet: fi, edge: e });
                }
                edge_seen[e] = fi;
            }
            for &d in &facet.darts {
                let v = d.vertex().0;
                if vertex_seen[v] == fi {
                    return Err(ValidationError::FacetNotSimple { facet: fi, vertex: v });
                }
                vertex_seen[v] = fi;
            }
        }
        for v in self.vertices() {
            let [a, b, c] = self.facets_at(v);
            if a == b || a == c || b == c {
                return Err(ValidationError::RepeatedFacetAtVertex { vertex: v.0 });
            }
        }
        Ok(())
    }

    /// True if [`validate_nice`](Self::validate_nice) passes.
    pub fn is_nice(&self) -> bool {
        self.validate_nice().is_ok()
    }

    /// The face poset of the embedded graph (the boundary complex together
    /// with a least and a greatest element).
    pub fn face_poset(&self) -> FacePoset {
        FacePoset::new(self)
    }

    /// True if the graph has more than `k` vertices and stays connected
    /// whenever fewer than `k` vertices are removed.
    pub fn is_k_connected(&self, k: usize) -> bool {
        let n = self.vertex_count();
        if n <= k {
            return false;
        }
        // All removal sets of size < k. Sizes are tiny (k <= 3 in practice).
        fn subsets(
            n: usize,
            size: usize,
            from: usize,
            cur: &mut Vec<Vertex>,
            g: &RotationGraph,
        ) -> bool {
            if cur.len() == size {
                return g.component_count(cur, &[]) == 1;
            }
            for v in from..n {
                cur.push(Vertex(v));
                if !subsets(n, size, v + 1, cur, g) {
                    cur.pop();
                    return false;
                }
                cur.pop();
            }
            true
        }
        (0..k).all(|size| subsets(n, size, 0, &mut Vec::new(), self))
    }

    /// All vertex pairs whose removal disconnects the graph, ascending.
    /// Pairs that would remove every vertex are excluded by convention.
    ///
    /// Every returned pair is checked to lie on a common facet; a pair that
    /// does not contradicts a structural theorem about valid graphs and is
    /// reported as an internal invariant violation.
    pub fn separating_pairs(&self) -> Result<Vec<(Vertex, Vertex)>> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        if n <= 2 {
            return Ok(out);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if self.component_count(&[Vertex(p), Vertex(q)], &[]) > 1 {
                    let share = self
                        .facets
                        .iter()
                        .any(|f| f.contains_vertex(Vertex(p)) && f.contains_vertex(Vertex(q)));
                    if !share {
                        return Err(Error::internal(format!(
                            "separating pair ({p},{q}) lies on no common facet"
                        )));
                    }
                    out.push((Vertex(p), Vertex(q)));
                }
            }
        }
        Ok(out)
    }

    /// The mirror image: every vertex's cyclic order reversed.
    pub fn mirrored(&self) -> RotationGraph {
        // Reversing the rotation swaps slots 1 and 2 at every vertex.
        let m = |d: usize| -> usize {
            let v = d / 3;
            3 * v + [0, 2, 1][d % 3]
        };
        let n = self.opposite.len();
        let mut opp = vec![0; n];
        for d in 0..n {
            opp[m(d)] = m(self.opposite[d]);
        }
        RotationGraph::from_opposite(opp).expect("mirror of a sphere map is a sphere map")
    }
}

/// Build a rotation graph from the external description: per-vertex rotation
/// rows of arbitrary dart identifiers plus an edge list pairing them up.
///
/// Identifier-level problems (unknown, duplicated, or unpaired darts) are
/// reported as validation errors; the structural sphere/connectivity checks
/// are those of [`RotationGraph::from_opposite`].
pub fn build_rotation_graph(
    vertices: usize,
    rotations: &[[u64; 3]],
    edges: &[[u64; 2]],
) -> Result<RotationGraph> {
    if rotations.len() != vertices {
        return Err(ParseError::Schema(format!(
            "vertex count {} does not match {} rotation rows",
            vertices,
            rotations.len()
        ))
        .into());
    }
    let mut canonical: BTreeMap<u64, usize> = BTreeMap::new();
    for (v, row) in rotations.iter().enumerate() {
        for (j, &id) in row.iter().enumerate() {
            if canonical.insert(id, 3 * v + j).is_some() {
                return Err(ValidationError::NotTrivalent(format!(
                    "dart {id} appears in more than one rotation slot"
                ))
                .into());
            }
        }
    }
    let n = 3 * vertices;
    if edges.len() * 2 != n {
        return Err(ValidationError::BadDartTable(format!(
            "{} edges cannot pair {} darts",
            edges.len(),
            n
        ))
        .into());
    }
    let mut opposite = vec![usize::MAX; n];
    for pair in edges {
        let a = *canonical
            .get(&pair[0])
            .ok_or_else(|| ValidationError::BadDartTable(format!("unknown dart {}", pair[0])))?;
        let b = *canonical
            .get(&pair[1])
            .ok_or_else(|| ValidationError::BadDartTable(format!("unknown dart {}", pair[1])))?;
        if a == b {
            return Err(ValidationError::BadDartTable(format!(
                "dart {} paired with itself",
                pair[0]
            ))
            .into());
        }
        if opposite[a] != usize::MAX || opposite[b] != usize::MAX {
            return Err(ValidationError::BadDartTable(format!(
                "dart {} or {} appears in more than one edge",
                pair[0], pair[1]
            ))
            .into());
        }
        opposite[a] = b;
        opposite[b] = a;
    }
    if let Some(d) = opposite.iter().position(|&o| o == usize::MAX) {
        return Err(ValidationError::BadDartTable(format!(
            "dart in rotation slot {d} is missing from the edge list"
        ))
        .into());
    }
    Ok(RotationGraph::from_opposite(opposite)?)
}

/// An element of the face poset.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum FaceElem {
    /// The least element.
    Empty,
    /// A vertex of the graph.
    Vertex(Vertex),
    /// An edge of the graph.
    Edge(EdgeId),
    /// A facet of the embedding.
    Facet(FacetId),
    /// The greatest element (the whole body).
    Body,
}

/// The face poset: empty set, vertices, edges, facets, and the whole body,
/// ordered by inclusion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FacePoset {
    vertex_count: usize,
    edge_endpoints: Vec<(Vertex, Vertex)>,
    facet_vertices: Vec<Vec<Vertex>>,
    facet_edges: Vec<Vec<EdgeId>>,
}

impl FacePoset {
    fn new(g: &RotationGraph) -> Self {
        let edge_endpoints = (0..g.edge_count()).map(|e| g.edge_endpoints(EdgeId(e))).collect();
        let mut facet_vertices = Vec::with_capacity(g.facets().len());
        let mut facet_edges = Vec::with_capacity(g.facets().len());
        for f in g.facets() {
            facet_vertices.push(f.vertex_set());
            let mut es: Vec<EdgeId> = f.darts().iter().map(|&d| g.edge_of(d)).collect();
            es.sort();
            es.dedup();
            facet_edges.push(es);
        }
        FacePoset { vertex_count: g.vertex_count(), edge_endpoints, facet_vertices, facet_edges }
    }

    /// Number of vertices in rank 0.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of edges in rank 1.
    pub fn edge_count(&self) -> usize {
        self.edge_endpoints.len()
    }

    /// Number of facets in rank 2.
    pub fn facet_count(&self) -> usize {
        self.facet_vertices.len()
    }

    /// Total number of poset elements, including least and greatest.
    pub fn element_count(&self) -> usize {
        2 + self.vertex_count + self.edge_endpoints.len() + self.facet_vertices.len()
    }

    /// Sorted vertex set of a facet.
    pub fn facet_vertices(&self, f: FacetId) -> &[Vertex] {
        &self.facet_vertices[f.0]
    }

    /// Sorted edge set of a facet.
    pub fn facet_edges(&self, f: FacetId) -> &[EdgeId] {
        &self.facet_edges[f.0]
    }

    /// The order relation (non-strict).
    pub fn leq(&self, a: FaceElem, b: FaceElem) -> bool {
        use FaceElem::*;
        match (a, b) {
            (Empty, _) | (_, Body) => true,
            (x, y) if x == y => true,
            (Vertex(v), Edge(e)) => {
                let (p, q) = self.edge_endpoints[e.0];
                v == p || v == q
            }
            (Vertex(v), Facet(f)) => self.facet_vertices[f.0].binary_search(&v).is_ok(),
            (Edge(e), Facet(f)) => self.facet_edges[f.0].binary_search(&e).is_ok(),
            _ => false,
        }
    }

    /// Facets above a vertex.
    pub fn facets_at_vertex(&self, v: Vertex) -> Vec<FacetId> {
        (0..self.facet_count())
            .map(FacetId)
            .filter(|&f| self.leq(FaceElem::Vertex(v), FaceElem::Facet(f)))
            .collect()
    }

    /// Facets above an edge.
    pub fn facets_at_edge(&self, e: EdgeId) -> Vec<FacetId> {
        (0..self.facet_count())
            .map(FacetId)
            .filter(|&f| self.leq(FaceElem::Edge(e), FaceElem::Facet(f)))
            .collect()
    }

    /// True if the poset is simplicial in the dual sense appropriate for
    /// these boundary complexes: every upper interval is Boolean. Concretely:
    /// each edge lies below exactly two distinct facets, each vertex below
    /// exactly three distinct facets and three distinct edges, and at each
    /// vertex the assignment edge -> facet pair above it is a bijection onto
    /// the three pairs of facets at the vertex.
    pub fn is_simplicial(&self) -> bool {
        for e in 0..self.edge_count() {
            if self.facets_at_edge(EdgeId(e)).len() != 2 {
                return false;
            }
        }
        for v in 0..self.vertex_count {
            let v = Vertex(v);
            let fs = self.facets_at_vertex(v);
            if fs.len() != 3 {
                return false;
            }
            let es: Vec<EdgeId> = (0..self.edge_count())
                .map(EdgeId)
                .filter(|&e| self.leq(FaceElem::Vertex(v), FaceElem::Edge(e)))
                .collect();
            if es.len() != 3 {
                return false;
            }
            let mut pairs: Vec<(FacetId, FacetId)> = es
                .iter()
                .map(|&e| {
                    let fs = self.facets_at_edge(e);
                    (fs[0].min(fs[1]), fs[0].max(fs[1]))
                })
                .collect();
            pairs.sort();
            pairs.dedup();
            if pairs.len() != 3 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
pub(crate) mod test_tables {
    use super::*;

    /// The 2-vertex graph with a triple edge, as a frozen dart table.
    /// Verified by hand: facets are the three 2-gons {0,4}, {1,3}, {2,5}.
    pub fn theta() -> RotationGraph {
        build_rotation_graph(2, &[[0, 1, 2], [3, 4, 5]], &[[0, 3], [1, 5], [2, 4]]).unwrap()
    }

    /// The complete graph on 4 vertices with its spherical rotation system.
    /// Frozen facet walks (verified by hand, in walk order):
    /// [0,4,9], [1,7,3], [2,10,6], [5,8,11].
    pub fn k4() -> RotationGraph {
        build_rotation_graph(
            4,
            &[[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]],
            &[[0, 3], [1, 6], [2, 9], [4, 11], [5, 7], [8, 10]],
        )
        .unwrap()
    }

    /// Two loop vertices joined by a bridge. A sphere map that is not nice.
    pub fn dumbbell() -> RotationGraph {
        build_rotation_graph(2, &[[0, 1, 2], [3, 4, 5]], &[[0, 1], [2, 5], [3, 4]]).unwrap()
    }

    /// The 3-cube graph with its standard planar rotation system.
    ///
    /// Bottom square 0,1,2,3 and top square 4,5,6,7 with verticals i -- i+4,
    /// drawn with the top square nested inside the bottom one. Slots: bottom
    /// vertex (next, vertical, prev), top vertex (next, prev, vertical).
    /// Frozen walks verified by hand: bottom {0,3,6,9}, sides {1,12,17,5},
    /// {2,10,21,14}, {4,15,20,8}, {7,18,23,11}, top {13,22,19,16}.
    pub fn cube() -> RotationGraph {
        build_rotation_graph(
            8,
            &[
                [0, 1, 2],
                [3, 4, 5],
                [6, 7, 8],
                [9, 10, 11],
                [12, 13, 14],
                [15, 16, 17],
                [18, 19, 20],
                [21, 22, 23],
            ],
            &[
                // bottom square
                [0, 5],
                [3, 8],
                [6, 11],
                [9, 2],
                // top square
                [12, 16],
                [15, 19],
                [18, 22],
                [21, 13],
                // verticals
                [1, 14],
                [4, 17],
                [7, 20],
                [10, 23],
            ],
        )
        .unwrap()
    }
}

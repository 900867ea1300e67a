//! Torus graphs: axial labels on a 3-valent sphere map.
//!
//! A [`TorusGraph`] pairs a nice [`RotationGraph`] with an *axial function*
//! assigning a lattice covector to every dart, and optionally a vertex sign
//! (orientation) function. The validity axioms are:
//!
//! 1. the two labels of an edge are equal or opposite;
//! 2. the three labels at each vertex form a unimodular basis;
//! 3. across every edge there is a unique *connection*: a bijection between
//!    the dart triples at its endpoints that maps the edge to itself
//!    reversed and changes labels by multiples of the edge label.
//!
//! When vertex signs are present they must satisfy the sign rule
//! `sigma(p) * A(p->q) + sigma(q) * A(q->p) = 0` on every edge.
//!
//! Characteristic data (one lattice vector per facet) and axial labels
//! determine each other exactly: [`from_characteristic`] solves the duality
//! system at each dart, [`recover_characteristic`] inverts it. The dart
//! label is the covector annihilating the two facet vectors along the edge
//! and pairing to one with the vector of the remaining facet at the vertex.

use crate::error::{Error, Result, ValidationError};
use crate::graph::{Dart, EdgeId, FacetId, RotationGraph, Vertex};
use crate::lattice::{
    self, solve_dual, solve_dual_cov, LatticeCovector, LatticeVector, Mat3, SignClass,
};
use num_bigint::BigInt;
use num_traits::Zero;
use std::sync::OnceLock;

/// One lattice vector per facet of a rotation graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacteristicData {
    values: Vec<LatticeVector>,
}

impl CharacteristicData {
    /// Wrap a per-facet vector table (indexed by facet id).
    pub fn new(values: Vec<LatticeVector>) -> Self {
        CharacteristicData { values }
    }

    /// Number of facets covered.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True if empty (never the case for real data).
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The vector of one facet.
    pub fn get(&self, f: FacetId) -> &LatticeVector {
        &self.values[f.0]
    }

    /// All vectors in facet order.
    pub fn values(&self) -> &[LatticeVector] {
        &self.values
    }

    /// Forget signs facet-wise.
    pub fn forget_signs(&self) -> std::result::Result<UnorientedCharacteristic, ValidationError> {
        let values =
            self.values.iter().map(SignClass::new).collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(UnorientedCharacteristic { values })
    }

    /// Check the vertex condition against a graph: at every vertex the three
    /// facet vectors must form a unimodular basis.
    pub fn validate_against(&self, g: &RotationGraph) -> std::result::Result<(), ValidationError> {
        if self.values.len() != g.facets().len() {
            return Err(ValidationError::WrongLength {
                what: "characteristic data",
                expected: g.facets().len(),
                got: self.values.len(),
            });
        }
        for v in g.vertices() {
            let [f1, f2, f3] = g.facets_at(v);
            if !lattice::is_unimodular_basis(self.get(f1), self.get(f2), self.get(f3)) {
                return Err(ValidationError::NotUnimodular { vertex: v.0 });
            }
        }
        Ok(())
    }
}

/// One sign class (vector up to sign) per facet: characteristic data of a
/// graph without a chosen omniorientation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnorientedCharacteristic {
    values: Vec<SignClass>,
}

impl UnorientedCharacteristic {
    /// Wrap a per-facet sign-class table.
    pub fn new(values: Vec<SignClass>) -> Self {
        UnorientedCharacteristic { values }
    }

    /// Number of facets covered.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True if empty.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The sign class of one facet.
    pub fn get(&self, f: FacetId) -> &SignClass {
        &self.values[f.0]
    }

    /// All sign classes in facet order.
    pub fn values(&self) -> &[SignClass] {
        &self.values
    }
}

/// Choose a sign per facet, turning sign classes into concrete vectors.
/// `signs[i]` applies to facet `i` and must be `+1` or `-1`.
pub fn lift_signs(
    unoriented: &UnorientedCharacteristic,
    signs: &[i8],
) -> std::result::Result<CharacteristicData, ValidationError> {
    if signs.len() != unoriented.len() {
        return Err(ValidationError::WrongLength {
            what: "sign choice",
            expected: unoriented.len(),
            got: signs.len(),
        });
    }
    let mut values = Vec::with_capacity(signs.len());
    for (i, (s, class)) in signs.iter().zip(&unoriented.values).enumerate() {
        let rep = class.representative();
        match s {
            1 => values.push(rep.clone()),
            -1 => values.push(-rep),
            _ => return Err(ValidationError::BadSigma { vertex: i }),
        }
    }
    Ok(CharacteristicData { values })
}

/// The connection of a torus graph: for each dart `p -> q`, the unique
/// label-compatible bijection from the darts at `p` to the darts at `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
    map: Vec<[Dart; 3]>,
}

impl Connection {
    /// Image of dart `e` (based at the tail of `along`) under the connection
    /// across `along`.
    pub fn image(&self, along: Dart, e: Dart) -> Dart {
        self.map[along.0][e.slot()]
    }
}

/// A 3-valent sphere map with axial labels and an optional orientation.
#[derive(Clone, Debug)]
pub struct TorusGraph {
    graph: RotationGraph,
    axial: Vec<LatticeCovector>,
    sigma: Option<Vec<i8>>,
    connection: OnceLock<Connection>,
}

impl PartialEq for TorusGraph {
    fn eq(&self, other: &Self) -> bool {
        // The cached connection is derived data and never part of identity.
        self.graph == other.graph && self.axial == other.axial && self.sigma == other.sigma
    }
}

impl Eq for TorusGraph {}

impl TorusGraph {
    /// Assemble a torus graph from parts. Checks table lengths and sign
    /// values only; the axioms are checked by [`TorusGraph::validate`].
    pub fn new(
        graph: RotationGraph,
        axial: Vec<LatticeCovector>,
        sigma: Option<Vec<i8>>,
    ) -> std::result::Result<Self, ValidationError> {
        if axial.len() != graph.dart_count() {
            return Err(ValidationError::WrongLength {
                what: "axial table",
                expected: graph.dart_count(),
                got: axial.len(),
            });
        }
        if let Some(s) = &sigma {
            if s.len() != graph.vertex_count() {
                return Err(ValidationError::WrongLength {
                    what: "sigma table",
                    expected: graph.vertex_count(),
                    got: s.len(),
                });
            }
            if let Some(v) = s.iter().position(|&x| x != 1 && x != -1) {
                return Err(ValidationError::BadSigma { vertex: v });
            }
        }
        Ok(TorusGraph { graph, axial, sigma, connection: OnceLock::new() })
    }

    /// The underlying embedded graph.
    pub fn graph(&self) -> &RotationGraph {
        &self.graph
    }

    /// The label of one dart.
    pub fn axial(&self, d: Dart) -> &LatticeCovector {
        &self.axial[d.0]
    }

    /// All labels, indexed by dart.
    pub fn axial_table(&self) -> &[LatticeCovector] {
        &self.axial
    }

    /// The vertex signs, if present.
    pub fn sigma(&self) -> Option<&[i8]> {
        self.sigma.as_deref()
    }

    /// The sign of one vertex, if signs are present.
    pub fn sigma_at(&self, v: Vertex) -> Option<i8> {
        self.sigma.as_ref().map(|s| s[v.0])
    }

    /// Same graph and labels with the given signs installed.
    pub fn with_sigma(&self, sigma: Vec<i8>) -> std::result::Result<Self, ValidationError> {
        TorusGraph::new(self.graph.clone(), self.axial.clone(), Some(sigma))
    }

    /// Same graph and labels with signs removed.
    pub fn without_sigma(&self) -> Self {
        TorusGraph {
            graph: self.graph.clone(),
            axial: self.axial.clone(),
            sigma: None,
            connection: OnceLock::new(),
        }
    }

    /// Check all axioms, in deterministic order: niceness of the embedding,
    /// then the edge sign axiom, then vertex unimodularity, then existence
    /// of the connection, then (if signs are present) the sign rule.
    pub fn validate(&self) -> std::result::Result<(), ValidationError> {
        self.graph.validate_nice()?;
        for (e, &(d, o)) in self.graph.edges().iter().enumerate() {
            if !equal_or_opposite(&self.axial[d.0], &self.axial[o.0]) {
                return Err(ValidationError::SignAxiom {
                    dart: self.graph.edge_darts(EdgeId(e)).0 .0,
                });
            }
        }
        for v in self.graph.vertices() {
            let [d0, d1, d2] = self.graph.darts_at(v);
            if !lattice::is_unimodular_basis_cov(
                &self.axial[d0.0],
                &self.axial[d1.0],
                &self.axial[d2.0],
            ) {
                return Err(ValidationError::NotUnimodularBasis { vertex: v.0 });
            }
        }
        self.connection()?;
        if self.sigma.is_some() {
            self.validate_sigma_rule()?;
        }
        Ok(())
    }

    fn validate_sigma_rule(&self) -> std::result::Result<(), ValidationError> {
        let sigma = self.sigma.as_ref().expect("caller checks presence");
        for &(d, o) in self.graph.edges() {
            let p = d.vertex();
            let q = o.vertex();
            let lhs = self.axial[d.0].scale(&BigInt::from(sigma[p.0]));
            let rhs = self.axial[o.0].scale(&BigInt::from(sigma[q.0]));
            if !(&lhs + &rhs).is_zero() {
                return Err(ValidationError::SigmaRule { dart: d.0 });
            }
        }
        Ok(())
    }

    /// The connection, computed on first use and cached. Failures are not
    /// cached; they recur on each call.
    pub fn connection(&self) -> std::result::Result<&Connection, ValidationError> {
        if let Some(c) = self.connection.get() {
            return Ok(c);
        }
        let c = compute_connection_table(self)?;
        Ok(self.connection.get_or_init(|| c))
    }

    /// The mirror image: rotations reversed, labels and signs carried along
    /// the dart relabeling. The abstract labeled graph is unchanged, so the
    /// mirror is always exactly equivalent to the original.
    pub fn mirrored(&self) -> TorusGraph {
        let g = self.graph.mirrored();
        let mut axial = Vec::with_capacity(self.axial.len());
        for v in 0..g.vertex_count() {
            for j in [0usize, 2, 1] {
                axial.push(self.axial[3 * v + j].clone());
            }
        }
        TorusGraph { graph: g, axial, sigma: self.sigma.clone(), connection: OnceLock::new() }
    }

    /// Apply a lattice automorphism to every label. Signs are preserved.
    pub fn twist(&self, m: &Mat3) -> TorusGraph {
        let axial = self.axial.iter().map(|a| lattice::mat_apply_cov(m, a)).collect();
        TorusGraph {
            graph: self.graph.clone(),
            axial,
            sigma: self.sigma.clone(),
            connection: OnceLock::new(),
        }
    }

    /// Negate the label of every dart whose normal facet lies in `flips`.
    /// This realizes a different lift of the same unoriented characteristic
    /// data (flipping the sign choice of those facets).
    pub fn flip_facets(&self, flips: &[bool]) -> TorusGraph {
        let axial = self
            .graph
            .darts()
            .map(|d| {
                let f = self.graph.normal_facet(d);
                if flips[f.0] {
                    -&self.axial[d.0]
                } else {
                    self.axial[d.0].clone()
                }
            })
            .collect();
        TorusGraph {
            graph: self.graph.clone(),
            axial,
            sigma: self.sigma.clone(),
            connection: OnceLock::new(),
        }
    }
}

/// Check all axioms of a torus graph. See [`TorusGraph::validate`].
pub fn validate_torus_graph(tg: &TorusGraph) -> std::result::Result<(), ValidationError> {
    tg.validate()
}

fn compute_connection_table(tg: &TorusGraph) -> std::result::Result<Connection, ValidationError> {
    let g = tg.graph();
    // Labels are compared ~9 times per dart; convert each to machine
    // integers once instead of once per comparison.
    let smalls: Vec<Option<[i64; 3]>> = tg.axial_table().iter().map(lattice::small_cov).collect();
    let mut map = Vec::with_capacity(g.dart_count());
    for along in g.darts() {
        map.push(connection_across(tg, along, &smalls)?);
    }
    Ok(Connection { map })
}

fn small_multiple_test(t: [i64; 3], f: [i64; 3], b: [i64; 3]) -> bool {
    let d = [t[0] - f[0], t[1] - f[1], t[2] - f[2]];
    let Some(i) = (0..3).find(|&i| b[i] != 0) else {
        return d == [0, 0, 0];
    };
    if d[i] % b[i] != 0 {
        return false;
    }
    let k = d[i] / b[i];
    (0..3).all(|j| d[j] == k * b[j])
}

/// The unique dart at the head of `along` whose label differs from each
/// source label by an integer multiple of the label of `along`.
fn connection_across(
    tg: &TorusGraph,
    along: Dart,
    smalls: &[Option<[i64; 3]>],
) -> std::result::Result<[Dart; 3], ValidationError> {
    let g = tg.graph();
    let a = tg.axial(along);
    let p = along.vertex();
    let q = g.head(along);
    let mut images = [Dart(0); 3];
    for (slot, e) in g.darts_at(p).into_iter().enumerate() {
        let mut found: Option<Dart> = None;
        for e2 in g.darts_at(q) {
            let hit = match (smalls[e2.0], smalls[e.0], smalls[along.0]) {
                (Some(t), Some(f), Some(b)) => small_multiple_test(t, f, b),
                _ => differs_by_multiple(tg.axial(e2), tg.axial(e), a),
            };
            if hit {
                if found.is_some() {
                    return Err(ValidationError::NoConnection {
                        dart: along.0,
                        reason: format!("two candidates for the dart in slot {slot}"),
                    });
                }
                found = Some(e2);
            }
        }
        images[slot] = found.ok_or(ValidationError::NoConnection {
            dart: along.0,
            reason: format!("no candidate for the dart in slot {slot}"),
        })?;
    }
    if images[0] == images[1] || images[0] == images[2] || images[1] == images[2] {
        return Err(ValidationError::NoConnection {
            dart: along.0,
            reason: "candidate map is not a bijection".into(),
        });
    }
    Ok(images)
}

fn equal_or_opposite(a: &LatticeCovector, b: &LatticeCovector) -> bool {
    if let (Some(x), Some(y)) = (lattice::small_cov(a), lattice::small_cov(b)) {
        return x == y || (x[0] == -y[0] && x[1] == -y[1] && x[2] == -y[2]);
    }
    a == b || *a == -b
}

/// True if `to - from == k * base` for some integer `k` (including zero),
/// without materializing the difference when everything is machine-sized.
fn differs_by_multiple(
    to: &LatticeCovector,
    from: &LatticeCovector,
    base: &LatticeCovector,
) -> bool {
    if let (Some(t), Some(f), Some(b)) =
        (lattice::small_cov(to), lattice::small_cov(from), lattice::small_cov(base))
    {
        return small_multiple_test(t, f, b);
    }
    is_integer_multiple(&(to - from), base)
}

/// True if `diff == k * base` for some integer `k` (including zero).
fn is_integer_multiple(diff: &LatticeCovector, base: &LatticeCovector) -> bool {
    if diff.is_zero() {
        return true;
    }
    // base is never zero in validated graphs, but handle it defensively.
    let Some(i) = base.coords().iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let (k, rem) = num_integer::div_rem(diff.coords()[i].clone(), base.coords()[i].clone());
    if !rem.is_zero() {
        return false;
    }
    diff == &base.scale(&k)
}

/// Compute the connection across every dart without using the cache.
pub fn compute_connection(tg: &TorusGraph) -> std::result::Result<Connection, ValidationError> {
    compute_connection_table(tg)
}

/// Build the axial labels induced by characteristic data.
///
/// At each dart the label is the solution of the duality system against the
/// two facet vectors along the edge and the remaining facet vector at the
/// vertex. The graph must be nice; the data must satisfy the vertex
/// unimodularity condition.
pub fn from_characteristic(
    g: &RotationGraph,
    lam: &CharacteristicData,
) -> std::result::Result<TorusGraph, ValidationError> {
    g.validate_nice()?;
    lam.validate_against(g)?;
    let mut axial = Vec::with_capacity(g.dart_count());
    for d in g.darts() {
        let [f1, f2] = g.facets_along(d);
        let f3 = g.normal_facet(d);
        let label = solve_dual(lam.get(f1), lam.get(f2), lam.get(f3))
            .map_err(|_| ValidationError::NotUnimodular { vertex: d.vertex().0 })?;
        axial.push(label);
    }
    TorusGraph::new(g.clone(), axial, None)
}

/// Recover the characteristic data from axial labels: at every corner of a
/// facet the facet's vector is the dual-basis solution of the labels there;
/// all corners of one facet must agree.
pub fn recover_characteristic(
    tg: &TorusGraph,
) -> std::result::Result<CharacteristicData, ValidationError> {
    let g = tg.graph();
    let mut values: Vec<Option<LatticeVector>> = vec![None; g.facets().len()];
    for (fi, facet) in g.facets().iter().enumerate() {
        for &d in facet.darts() {
            // The facet of dart d borders the edges of d and rot2(d) at the
            // base vertex; its vector pairs to one with the label of rot(d).
            let cand = solve_dual_cov(tg.axial(d), tg.axial(g.rot2(d)), tg.axial(g.rot(d)))
                .map_err(|_| ValidationError::NotUnimodularBasis { vertex: d.vertex().0 })?;
            match &values[fi] {
                None => values[fi] = Some(cand),
                Some(prev) if *prev == cand => {}
                Some(_) => return Err(ValidationError::InconsistentFacetVector { facet: fi }),
            }
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.ok_or(ValidationError::InconsistentFacetVector { facet: usize::MAX }))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(CharacteristicData { values })
}

/// Synthesize vertex signs satisfying the sign rule, fixing vertex 0 to +1.
/// Fails with [`ValidationError::NotOrientable`] if no assignment exists and
/// with [`ValidationError::SignAxiom`] if some edge's labels are neither
/// equal nor opposite.
pub fn synthesize_sigma(tg: &TorusGraph) -> std::result::Result<Vec<i8>, ValidationError> {
    let g = tg.graph();
    let n = g.vertex_count();
    let mut sigma = vec![0i8; n];
    sigma[0] = 1;
    let mut queue = vec![Vertex(0)];
    while let Some(p) = queue.pop() {
        for d in g.darts_at(p) {
            let o = g.opposite(d);
            let q = o.vertex();
            // Edge sign s with A(q->p) = s * A(p->q).
            let s = if tg.axial(o) == tg.axial(d) {
                1
            } else if *tg.axial(o) == -tg.axial(d) {
                -1
            } else {
                return Err(ValidationError::SignAxiom { dart: d.0 });
            };
            // sigma(p) A(pq) + sigma(q) A(qp) = 0 forces sigma(q) = -sigma(p) s.
            let needed = -sigma[p.0] * s;
            if sigma[q.0] == 0 {
                sigma[q.0] = needed;
                queue.push(q);
            } else if sigma[q.0] != needed {
                return Err(ValidationError::NotOrientable);
            }
        }
    }
    debug_assert!(sigma.iter().all(|&s| s != 0), "graph is connected");
    Ok(sigma)
}

/// Return `tg` itself if it carries signs, otherwise a copy with synthesized
/// signs installed.
pub fn ensure_sigma(tg: &TorusGraph) -> std::result::Result<TorusGraph, ValidationError> {
    if tg.sigma().is_some() {
        return Ok(tg.clone());
    }
    let sigma = synthesize_sigma(tg)?;
    tg.with_sigma(sigma)
}

/// A label-preserving isomorphism between two torus graphs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Isomorphism {
    /// Image of each vertex of the source in the target.
    pub vertex_map: Vec<Vertex>,
    /// Image of each dart of the source in the target.
    pub dart_map: Vec<Dart>,
}

/// How labels are compared by equivalence tests.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum EquivalenceMode {
    /// Labels must match exactly.
    Exact,
    /// Labels must match after re-choosing facet signs (lifts of the same
    /// unoriented characteristic data).
    Lifts,
}

/// Find a graph isomorphism matching labels exactly. Vertex signs are
/// ignored: equivalence is about the labeled graph.
pub fn find_isomorphism(tg1: &TorusGraph, tg2: &TorusGraph) -> Option<Isomorphism> {
    let g1 = tg1.graph();
    let g2 = tg2.graph();
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    for w in g2.vertices() {
        if let Some(iso) = try_isomorphism_from(tg1, tg2, w) {
            return Some(iso);
        }
    }
    None
}

/// Grow an isomorphism from `vertex 0 -> w`, forcing dart images by label
/// equality. Labels at a vertex are pairwise distinct (they form a basis),
/// so the local dart map is forced whenever it exists.
fn try_isomorphism_from(tg1: &TorusGraph, tg2: &TorusGraph, w: Vertex) -> Option<Isomorphism> {
    let g1 = tg1.graph();
    let g2 = tg2.graph();
    let n = g1.vertex_count();
    let mut vmap: Vec<Option<Vertex>> = vec![None; n];
    let mut dmap: Vec<Option<Dart>> = vec![None; g1.dart_count()];

    let match_vertex = |v: Vertex, w: Vertex, dmap: &mut Vec<Option<Dart>>| -> bool {
        for d in g1.darts_at(v) {
            let mut found = None;
            for d2 in g2.darts_at(w) {
                if tg2.axial(d2) == tg1.axial(d) {
                    if found.is_some() {
                        return false;
                    }
                    found = Some(d2);
                }
            }
            match found {
                Some(d2) => dmap[d.0] = Some(d2),
                None => return false,
            }
        }
        true
    };

    vmap[0] = Some(w);
    if !match_vertex(Vertex(0), w, &mut dmap) {
        return None;
    }
    let mut queue = vec![Vertex(0)];
    while let Some(p) = queue.pop() {
        for d in g1.darts_at(p) {
            let image = dmap[d.0].expect("darts of processed vertices are mapped");
            let o = g1.opposite(d);
            let io = g2.opposite(image);
            let q = o.vertex();
            match vmap[q.0] {
                None => {
                    vmap[q.0] = Some(io.vertex());
                    if !match_vertex(q, io.vertex(), &mut dmap) {
                        return None;
                    }
                    // The forced local map must agree with the edge pairing.
                    if dmap[o.0] != Some(io) {
                        return None;
                    }
                    queue.push(q);
                }
                Some(_) => {
                    if dmap[o.0] != Some(io) {
                        return None;
                    }
                }
            }
        }
    }
    // Connectedness guarantees every vertex was reached; require injectivity.
    let mut seen = vec![false; n];
    for v in vmap.iter().flatten() {
        if seen[v.0] {
            return None;
        }
        seen[v.0] = true;
    }
    Some(Isomorphism {
        vertex_map: vmap.into_iter().map(|v| v.expect("connected")).collect(),
        dart_map: dmap.into_iter().map(|d| d.expect("connected")).collect(),
    })
}

/// Equivalence of torus graphs in the requested mode.
pub fn is_equivalent(tg1: &TorusGraph, tg2: &TorusGraph, mode: EquivalenceMode) -> bool {
    match mode {
        EquivalenceMode::Exact => find_isomorphism(tg1, tg2).is_some(),
        EquivalenceMode::Lifts => {
            let fcount = tg2.graph().facets().len();
            if tg1.graph().facets().len() != fcount {
                return false;
            }
            // Try every re-choice of facet signs on one side.
            let mut flips = vec![false; fcount];
            for mask in 0u64..(1u64 << fcount) {
                for (i, f) in flips.iter_mut().enumerate() {
                    *f = mask & (1 << i) != 0;
                }
                if find_isomorphism(tg1, &tg2.flip_facets(&flips)).is_some() {
                    return true;
                }
            }
            false
        }
    }
}

/// Find a lattice automorphism `P` and an isomorphism `f` with
/// `A2(f(d)) == P * A1(d)` for all darts.
pub fn find_twisted_isomorphism(tg1: &TorusGraph, tg2: &TorusGraph) -> Option<(Mat3, Isomorphism)> {
    let g1 = tg1.graph();
    let g2 = tg2.graph();
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let [a0, a1, a2] = g1.darts_at(Vertex(0));
    let m1 = lattice::mat_from_cov_columns([tg1.axial(a0), tg1.axial(a1), tg1.axial(a2)]);
    let m1_inv = lattice::mat_inverse_unimodular(&m1).ok()?;
    for w in g2.vertices() {
        let ds = g2.darts_at(w);
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let cols = [tg2.axial(ds[perm[0]]), tg2.axial(ds[perm[1]]), tg2.axial(ds[perm[2]])];
            let m2 = lattice::mat_from_cov_columns(cols);
            let p = lattice::mat_mul(&m2, &m1_inv);
            debug_assert!(lattice::mat_is_unimodular(&p));
            if let Some(iso) = find_isomorphism(&tg1.twist(&p), tg2) {
                return Some((p, iso));
            }
        }
    }
    None
}

/// A subgraph given by its vertex and edge sets, both sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Subgraph {
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    /// Sorted edge set.
    pub edges: Vec<EdgeId>,
}

/// The `k`-dimensional face subgraphs of a valid torus graph:
/// single vertices (`k = 0`), single edges (`k = 1`), the 2-valent
/// connection-closed subgraphs (`k = 2`), or the whole graph (`k = 3`).
pub fn face_subgraphs(tg: &TorusGraph, k: usize) -> Result<Vec<Subgraph>> {
    let g = tg.graph();
    match k {
        0 => Ok(g.vertices().map(|v| Subgraph { vertices: vec![v], edges: vec![] }).collect()),
        1 => Ok((0..g.edge_count())
            .map(|e| {
                let (a, b) = g.edge_endpoints(EdgeId(e));
                let mut vertices = vec![a, b];
                vertices.dedup();
                Subgraph { vertices, edges: vec![EdgeId(e)] }
            })
            .collect()),
        2 => two_dimensional_subgraphs(tg),
        3 => Ok(vec![Subgraph {
            vertices: g.vertices().collect(),
            edges: (0..g.edge_count()).map(EdgeId).collect(),
        }]),
        _ => Err(Error::internal(format!("no faces of dimension {k}"))),
    }
}

/// Close each vertex corner under the connection. Every 2-dimensional face
/// subgraph is such a closure; on valid graphs these are exactly the facet
/// boundaries, which is checked against the embedding elsewhere.
fn two_dimensional_subgraphs(tg: &TorusGraph) -> Result<Vec<Subgraph>> {
    let g = tg.graph();
    let conn = tg.connection().map_err(Error::Validation)?;
    // A corner is an unordered pair of darts at one vertex, keyed here by
    // (lower dart, higher dart).
    let corner_key = |a: Dart, b: Dart| -> (usize, usize) { (a.0.min(b.0), a.0.max(b.0)) };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for v in g.vertices() {
        let ds = g.darts_at(v);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let start = corner_key(ds[i], ds[j]);
            if seen.contains(&start) {
                continue;
            }
            // Walk: leave along `walk`, carrying `other` as the second dart
            // of the current corner.
            let mut vertices = Vec::new();
            let mut edges = Vec::new();
            let (mut walk, mut other) = (ds[i], ds[j]);
            let limit = 2 * g.edge_count() + 2;
            for step in 0.. {
                if step > limit {
                    return Err(Error::internal(
                        "connection closure of a corner did not terminate",
                    ));
                }
                seen.insert(corner_key(walk, other));
                vertices.push(walk.vertex());
                edges.push(g.edge_of(walk));
                let next_other = g.opposite(walk);
                let next_walk = conn.image(walk, other);
                walk = next_walk;
                other = next_other;
                if corner_key(walk, other) == start {
                    break;
                }
            }
            vertices.sort();
            vertices.dedup();
            edges.sort();
            edges.dedup();
            out.push(Subgraph { vertices, edges });
        }
    }
    Ok(out)
}

//! Decomposition of torus graphs into basic summands.
//!
//! Every valid torus graph splits as an iterated connected sum of four
//! basic shapes: the two-vertex triple edge, the labelled complete graph
//! on four vertices, the four-vertex double-edge block, and simple
//! 3-connected graphs. [`classify`] finds such a decomposition
//! constructively: recognize a basic graph, otherwise split along a
//! preferred admissible cut and recurse. Every internal node keeps the
//! gluing record and the vertex provenance of both sides, and the finished
//! tree is re-folded and compared with the input dart by dart before it is
//! returned.
//!
//! The module also hosts [`enumerate_characteristic`], a streaming search
//! for all facet assignments over a nice graph with bounded coordinates;
//! it is the exhaustive-oracle side of the validator tests.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, OpError, Result};
use crate::graph::{Dart, EdgeId, FacetId, RotationGraph, Vertex};
use crate::lattice::{
    mat_apply_cov, mat_from_cov_columns, mat_inverse_unimodular, LatticeCovector, LatticeVector,
};
use crate::surgery::{connected_sum, find_splits, split, GluingRecord, SumSite};
use crate::torus::{ensure_sigma, CharacteristicData, TorusGraph};

/// The shape of a basic summand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LeafKind {
    /// Two vertices joined by a triple edge; `basis` holds the labels at
    /// vertex 0 in slot order.
    S6 { basis: [LatticeCovector; 3] },
    /// The complete graph on four vertices, simple edges only.
    Simplex,
    /// Four vertices and two double edges, in normal form `(eps, a, b)`.
    SB { eps: i8, a: BigInt, b: BigInt },
    /// Simple and 3-connected; the witness graph itself is the datum.
    QT,
}

impl LeafKind {
    /// Short display name of the kind.
    pub fn name(&self) -> &'static str {
        match self {
            LeafKind::S6 { .. } => "S6",
            LeafKind::Simplex => "Simplex",
            LeafKind::SB { .. } => "SB",
            LeafKind::QT => "QT",
        }
    }
}

/// A certified basic piece: its recognized kind and the piece itself.
#[derive(Clone, Debug)]
pub struct Leaf {
    pub kind: LeafKind,
    pub witness: TorusGraph,
}

/// A decomposition into basic summands. Leaves are basic pieces; every
/// node records how its two subtrees glue back together and which input
/// vertex each piece vertex came from (caps excluded, piece numbering).
#[derive(Clone, Debug)]
pub enum DecompositionTree {
    Leaf(Leaf),
    Node {
        record: GluingRecord,
        /// Source vertex of each non-cap vertex of the left piece.
        left_sources: Vec<Vertex>,
        /// Source vertex of each non-cap vertex of the right piece.
        right_sources: Vec<Vertex>,
        left: Box<DecompositionTree>,
        right: Box<DecompositionTree>,
    },
}

impl DecompositionTree {
    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&Leaf> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Leaf>) {
        match self {
            DecompositionTree::Leaf(l) => out.push(l),
            DecompositionTree::Node { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    /// Number of leaves.
    pub fn leaf_count(&self) -> usize {
        match self {
            DecompositionTree::Leaf(_) => 1,
            DecompositionTree::Node { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    /// Number of internal nodes.
    pub fn node_count(&self) -> usize {
        match self {
            DecompositionTree::Leaf(_) => 0,
            DecompositionTree::Node { left, right, .. } => {
                1 + left.node_count() + right.node_count()
            }
        }
    }
}

/// One-line summary of the leaf kinds: bare `"S6"` for the single-leaf
/// sphere, otherwise counts like `"QT×2 SB×1"` with zero counts omitted.
/// Simplex pieces count as QT.
pub fn summarize(tree: &DecompositionTree) -> String {
    let leaves = tree.leaves();
    if let [leaf] = leaves[..] {
        if matches!(leaf.kind, LeafKind::S6 { .. }) {
            return "S6".into();
        }
    }
    let (mut qt, mut sb, mut s6) = (0usize, 0usize, 0usize);
    for leaf in &leaves {
        match leaf.kind {
            LeafKind::S6 { .. } => s6 += 1,
            LeafKind::SB { .. } => sb += 1,
            LeafKind::Simplex | LeafKind::QT => qt += 1,
        }
    }
    let mut parts = Vec::new();
    if qt > 0 {
        parts.push(format!("QT×{qt}"));
    }
    if sb > 0 {
        parts.push(format!("SB×{sb}"));
    }
    if s6 > 0 {
        parts.push(format!("S6×{s6}"));
    }
    parts.join(" ")
}

/// Vertex pairs joined by more than one edge, ascending.
fn double_pairs(g: &RotationGraph) -> Vec<(Vertex, Vertex)> {
    let mut count: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_endpoints(EdgeId(e));
        let key = if a <= b { (a, b) } else { (b, a) };
        *count.entry(key).or_insert(0) += 1;
    }
    count.into_iter().filter(|&(_, c)| c >= 2).map(|(k, _)| k).collect()
}

/// Recognize a graph that is already a basic piece.
///
/// Two vertices always mean the triple-edge sphere; four vertices are
/// either the simple complete graph or a double-edge block; anything
/// simple and 3-connected is of quasitoric type. Everything else needs a
/// cut first.
pub fn recognize_basic(tg: &TorusGraph) -> Option<Leaf> {
    let g = tg.graph();
    let kind = match g.vertex_count() {
        2 => {
            let ds = g.darts_at(Vertex(0));
            LeafKind::S6 {
                basis: [tg.axial(ds[0]).clone(), tg.axial(ds[1]).clone(), tg.axial(ds[2]).clone()],
            }
        }
        4 => {
            if g.is_simple() {
                LeafKind::Simplex
            } else {
                let (eps, a, b) = normalize_sb_params(tg).ok()?;
                LeafKind::SB { eps, a, b }
            }
        }
        _ => {
            if g.is_simple() && g.is_k_connected(3) {
                LeafKind::QT
            } else {
                return None;
            }
        }
    };
    Some(Leaf { kind, witness: tg.clone() })
}

/// Read the normal-form parameters off a four-vertex double-edge graph.
///
/// The graph must consist of two double edges joined by two simple edges.
/// The junction is the double pair containing the lowest vertex; the three
/// labels there form the reference basis, and the labels across a single
/// edge must then read `(±1, 0, 0)`, `(a, 1, 0)` and `(b, 0, 1)` in basis
/// coordinates. Both orders of the two junction strands are tried and the
/// lexicographically smaller `(a, b)` is reported, so swapping the strands
/// or twisting every label by one unimodular matrix cannot change the
/// answer.
pub fn normalize_sb_params(tg: &TorusGraph) -> Result<(i8, BigInt, BigInt)> {
    let g = tg.graph();
    let shape = |msg: &str| Error::Op(OpError::NotSBShaped(msg.into()));
    if g.vertex_count() != 4 {
        return Err(shape("need exactly four vertices"));
    }
    let doubles = double_pairs(g);
    if doubles.len() != 2 {
        return Err(shape("need exactly two double edges"));
    }
    let (p, q) = doubles[0];
    let mut strands = Vec::new();
    let mut single = None;
    for d in g.darts_at(p) {
        if g.head(d) == q {
            strands.push(d);
        } else {
            single = Some(d);
        }
    }
    let Some(sd) = single else {
        return Err(shape("junction pair is not a double edge"));
    };
    let &[s1, s2] = strands.as_slice() else {
        return Err(shape("junction pair is not a double edge"));
    };
    let r = g.head(sd);
    let mut far_single = None;
    let mut far_strands = Vec::new();
    for d in g.darts_at(r) {
        if g.head(d) == p {
            far_single = Some(d);
        } else {
            far_strands.push(d);
        }
    }
    let Some(fs) = far_single else {
        return Err(shape("single edges do not join the double pairs"));
    };
    let &[f1, f2] = far_strands.as_slice() else {
        return Err(shape("single edges do not join the double pairs"));
    };

    let mut best: Option<(i8, BigInt, BigInt)> = None;
    for (b1, b2) in [(s1, s2), (s2, s1)] {
        let m = mat_from_cov_columns([tg.axial(sd), tg.axial(b1), tg.axial(b2)]);
        let Ok(inv) = mat_inverse_unimodular(&m) else {
            continue;
        };
        let coords = |d: Dart| mat_apply_cov(&inv, tg.axial(d)).0;
        let cs = coords(fs);
        if !cs[0].abs().is_one() || !cs[1].is_zero() || !cs[2].is_zero() {
            continue;
        }
        let eps = if cs[0].is_positive() { 1 } else { -1 };
        let c1 = coords(f1);
        let c2 = coords(f2);
        // One strand must read (a, 1, 0), the other (b, 0, 1).
        let (ca, cb) = if c1[1].is_one() { (c1, c2) } else { (c2, c1) };
        if !ca[1].is_one() || !ca[2].is_zero() || !cb[1].is_zero() || !cb[2].is_one() {
            continue;
        }
        let (a, b) = (ca[0].clone(), cb[0].clone());
        if best.as_ref().is_none_or(|(_, ba, bb)| (&a, &b) < (ba, bb)) {
            best = Some((eps, a, b));
        }
    }
    best.ok_or_else(|| shape("labels do not fit the double-edge normal form"))
}

/// Boundary cut of the double-edge block at `(p, q)`: the third edge of
/// `q` plus the two non-`p` edges of `p`'s third neighbour.
fn block_cut(g: &RotationGraph, p: Vertex, q: Vertex) -> Result<[EdgeId; 3]> {
    let pr = g
        .darts_at(p)
        .into_iter()
        .find(|&d| g.head(d) != q)
        .ok_or_else(|| Error::internal("triple edge outside a two-vertex graph"))?;
    let r = g.head(pr);
    let qd = g
        .darts_at(q)
        .into_iter()
        .find(|&d| g.head(d) != p)
        .ok_or_else(|| Error::internal("triple edge outside a two-vertex graph"))?;
    if g.head(qd) == r {
        // the rest of the graph would hang off r by a single edge
        return Err(Error::internal("double-edge block with a bridged remainder"));
    }
    let mut cut = vec![g.edge_of(qd)];
    for d in g.darts_at(r) {
        if g.head(d) != p {
            cut.push(g.edge_of(d));
        }
    }
    if cut.len() != 3 {
        return Err(Error::internal("double-edge block boundary is degenerate"));
    }
    cut.sort();
    Ok([cut[0], cut[1], cut[2]])
}

/// Cut the lowest double-edge block out of a larger graph.
///
/// The block consists of the double pair `{p, q}` and the third neighbour
/// of `p`; cutting its three boundary edges leaves a bundle-shaped piece
/// (the cap doubles up with that neighbour) and a remainder two vertices
/// smaller. Needs a double edge and at least five vertices; smaller
/// graphs are already basic. In the returned record the left piece is the
/// side holding the input's vertex 0, which may be either the block or
/// the remainder.
pub fn reduce_multi_edge(tg: &TorusGraph) -> Result<(Leaf, TorusGraph, GluingRecord)> {
    let g = tg.graph();
    let Some(&(p, q)) = double_pairs(g).first() else {
        return Err(Error::Op(OpError::NoMultipleEdge));
    };
    if g.vertex_count() < 5 {
        return Err(Error::Op(OpError::NoMultipleEdge));
    }
    let cut = block_cut(g, p, q)?;
    let (left, right, record) = split(tg, cut)?;
    let (_, comp) = g.components(&[], &cut);
    let (block, rest) = if comp[p.0] == comp[0] { (left, right) } else { (right, left) };
    let (eps, a, b) = normalize_sb_params(&block)
        .map_err(|e| Error::internal(format!("block is not bundle-shaped: {e}")))?;
    Ok((Leaf { kind: LeafKind::SB { eps, a, b }, witness: block }, rest, record))
}

/// How a graph that is not 3-connected comes apart at a singular facet.
#[derive(Clone, Debug)]
pub enum SingularFacetSplit {
    /// Two pieces glued at a vertex; the cut needed no middle block.
    Plain { left: TorusGraph, right: TorusGraph, record: GluingRecord },
    /// A double-edge block sits between the two pieces. `records[0]` is
    /// the outer split, `records[1]` the block peel.
    WithBlock { left: TorusGraph, block: Leaf, right: TorusGraph, records: [GluingRecord; 2] },
}

/// Facets that contain a separating pair non-adjacently, with their
/// distinct-vertex counts.
fn singular_facets(g: &RotationGraph) -> Result<Vec<(FacetId, usize)>> {
    let pairs = g.separating_pairs()?;
    let mut out = Vec::new();
    for (i, facet) in g.facets().iter().enumerate() {
        let walk: Vec<Vertex> = facet.vertex_walk().collect();
        let adjacent = |p: Vertex, q: Vertex| {
            (0..walk.len()).any(|k| {
                let next = walk[(k + 1) % walk.len()];
                (walk[k] == p && next == q) || (walk[k] == q && next == p)
            })
        };
        for &(p, q) in &pairs {
            if walk.contains(&p) && walk.contains(&q) && !adjacent(p, q) {
                out.push((FacetId(i), facet.vertex_set().len()));
                break;
            }
        }
    }
    Ok(out)
}

/// Pick the cut to split at: pairwise vertex-disjoint cuts first, then the
/// designated double-edge block boundary, then any admissible cut, each in
/// lexicographic order.
fn preferred_cut(tg: &TorusGraph, cuts: &[[EdgeId; 3]]) -> Option<[EdgeId; 3]> {
    let g = tg.graph();
    let disjoint = |cut: &[EdgeId; 3]| {
        let mut vs: Vec<Vertex> = cut
            .iter()
            .flat_map(|&e| {
                let (a, b) = g.edge_endpoints(e);
                [a, b]
            })
            .collect();
        vs.sort();
        vs.dedup();
        vs.len() == 6
    };
    if let Some(c) = cuts.iter().find(|c| disjoint(c)) {
        return Some(*c);
    }
    if let Some(&(p, q)) = double_pairs(g).first() {
        if let Ok(c) = block_cut(g, p, q) {
            if cuts.contains(&c) {
                return Some(c);
            }
        }
    }
    cuts.first().copied()
}

/// Split a graph that is not 3-connected through a singular facet.
///
/// The cut is chosen like in [`classify`]. When neither side ends up with
/// a double edge the result is a plain two-piece split; otherwise the
/// double-edge block (created by the cap, or inherited from the input) is
/// peeled off the side carrying it, left side first, giving the
/// three-piece form. Inputs with double edges are accepted.
pub fn reduce_singular_facet(tg: &TorusGraph) -> Result<SingularFacetSplit> {
    tg.validate().map_err(Error::Validation)?;
    let tg = ensure_sigma(tg).map_err(Error::Validation)?;
    let g = tg.graph();
    if g.is_k_connected(3) {
        return Err(Error::Op(OpError::Already3Connected));
    }
    let cuts = find_splits(&tg)?;
    let Some(cut) = preferred_cut(&tg, &cuts) else {
        let sizes: Vec<usize> = singular_facets(g)?.into_iter().map(|(_, n)| n).collect();
        return Err(Error::internal(if sizes.iter().all(|&n| n <= 5) {
            format!(
                "no admissible cut: singular facets have {sizes:?} vertices, \
                 all below six; valid inputs cannot reach this"
            )
        } else {
            "no admissible cut despite a big singular facet".into()
        }));
    };
    let (left, right, record) = split(&tg, cut)?;
    let left_double = !left.graph().is_simple();
    let right_double = !right.graph().is_simple();
    if !left_double && !right_double {
        return Ok(SingularFacetSplit::Plain { left, right, record });
    }
    if left_double {
        let (block, rest, peel) = reduce_multi_edge(&left)?;
        Ok(SingularFacetSplit::WithBlock { left: rest, block, right, records: [record, peel] })
    } else {
        let (block, rest, peel) = reduce_multi_edge(&right)?;
        Ok(SingularFacetSplit::WithBlock { left, block, right: rest, records: [record, peel] })
    }
}

/// Original vertices on each side of a cut, ascending; the side holding
/// vertex 0 comes first, matching the split's left piece.
fn cut_sources(g: &RotationGraph, cut: &[EdgeId; 3]) -> (Vec<Vertex>, Vec<Vertex>) {
    let (_, comp) = g.components(&[], cut);
    let side0 = comp[0];
    let mut left = Vec::new();
    let mut right = Vec::new();
    for v in g.vertices() {
        if comp[v.0] == side0 {
            left.push(v);
        } else {
            right.push(v);
        }
    }
    (left, right)
}

/// Decompose a valid torus graph into basic summands.
///
/// Signs are synthesized when absent. The recursion recognizes basic
/// pieces and otherwise splits at the preferred admissible cut; it
/// terminates because every split strictly decreases the vertex count.
/// Before returning, the tree is folded back together and checked against
/// the input dart for dart; a mismatch is an internal error, never a
/// silently wrong tree.
pub fn classify(tg: &TorusGraph) -> Result<DecompositionTree> {
    tg.validate().map_err(Error::Validation)?;
    let tg = ensure_sigma(tg).map_err(Error::Validation)?;
    let tree = classify_inner(&tg)?;
    verify_fold(&tree, &tg)?;
    Ok(tree)
}

fn classify_inner(tg: &TorusGraph) -> Result<DecompositionTree> {
    if let Some(leaf) = recognize_basic(tg) {
        return Ok(DecompositionTree::Leaf(leaf));
    }
    let cuts = find_splits(tg)?;
    let Some(cut) = preferred_cut(tg, &cuts) else {
        return Err(Error::internal("no admissible cut in a non-basic graph"));
    };
    let (left, right, record) = split(tg, cut)?;
    let (left_sources, right_sources) = cut_sources(tg.graph(), &cut);
    Ok(DecompositionTree::Node {
        record,
        left_sources,
        right_sources,
        left: Box::new(classify_inner(&left)?),
        right: Box::new(classify_inner(&right)?),
    })
}

/// Rebuild a torus graph from a decomposition tree.
///
/// Returns the folded graph and, for each of its vertices, the vertex of
/// the originally classified graph it represents.
pub fn fold(tree: &DecompositionTree) -> Result<(TorusGraph, Vec<Vertex>)> {
    match tree {
        DecompositionTree::Leaf(leaf) => {
            let map = leaf.witness.graph().vertices().collect();
            Ok((leaf.witness.clone(), map))
        }
        DecompositionTree::Node { record, left_sources, right_sources, left, right } => {
            let (lg, lsrc) = fold(left)?;
            let (rg, rsrc) = fold(right)?;
            let cap_pos = |src: &[Vertex], cap: Vertex| {
                src.iter()
                    .position(|&v| v == cap)
                    .map(Vertex)
                    .ok_or_else(|| Error::internal("cap vertex lost while folding"))
            };
            let lcap = cap_pos(&lsrc, record.left_cap)?;
            let rcap = cap_pos(&rsrc, record.right_cap)?;
            let (sum, _) = connected_sum(&lg, &rg, &SumSite { left: lcap, right: rcap })?;
            // Sum numbering: left kept ascending, then right kept.
            let through = |piece: Vertex, sources: &[Vertex]| {
                sources
                    .get(piece.0)
                    .copied()
                    .ok_or_else(|| Error::internal("cap leaked into a source map"))
            };
            let mut src = Vec::with_capacity(sum.graph().vertex_count());
            for (i, &s) in lsrc.iter().enumerate() {
                if Vertex(i) != lcap {
                    src.push(through(s, left_sources)?);
                }
            }
            for (i, &s) in rsrc.iter().enumerate() {
                if Vertex(i) != rcap {
                    src.push(through(s, right_sources)?);
                }
            }
            Ok((sum, src))
        }
    }
}

/// Check that folding the tree reproduces `target` exactly under the
/// source maps: same rotations, same labels, same signs.
fn verify_fold(tree: &DecompositionTree, target: &TorusGraph) -> Result<()> {
    let (folded, src) = fold(tree)?;
    let n = target.graph().vertex_count();
    let mismatch = |what: &str| Error::internal(format!("refolded tree differs: {what}"));
    if folded.graph().vertex_count() != n || src.len() != n {
        return Err(mismatch("vertex count"));
    }
    let mut seen = vec![false; n];
    for &s in &src {
        if s.0 >= n || seen[s.0] {
            return Err(mismatch("source map is not a bijection"));
        }
        seen[s.0] = true;
    }
    let fg = folded.graph();
    let to_target = |d: Dart| Dart(3 * src[d.vertex().0].0 + d.slot());
    for d in fg.darts() {
        if target.graph().opposite(to_target(d)) != to_target(fg.opposite(d)) {
            return Err(mismatch("rotation structure"));
        }
        if target.axial(to_target(d)) != folded.axial(d) {
            return Err(mismatch("axial labels"));
        }
    }
    if let (Some(fs), Some(ts)) = (folded.sigma(), target.sigma()) {
        for v in 0..n {
            if fs[v] != ts[src[v].0] {
                return Err(mismatch("signs"));
            }
        }
    }
    Ok(())
}

/// Streaming enumeration of all facet assignments with coordinates in
/// `[-bound, bound]` that are unimodular around every vertex.
///
/// Facets are assigned over a greedy order that closes vertices early;
/// a partial assignment is dropped as soon as a closed vertex fails the
/// determinant test or a half-assigned vertex can no longer be completed
/// (the minors of its two vectors are not coprime). Coordinates are kept
/// in machine integers, which is exact far beyond any practical bound.
pub struct CharacteristicEnumerator {
    /// Facet ids in assignment order.
    order: Vec<FacetId>,
    /// Per order position, the pruning checks that become decidable there.
    checks: Vec<Vec<Check>>,
    bound: i64,
    /// Candidates per facet: `(2 bound + 1)^3`.
    per_facet: u64,
    /// Chosen candidate counter per assigned depth.
    stack: Vec<u64>,
    /// Current value per facet id.
    values: Vec<[i64; 3]>,
    done: bool,
}

enum Check {
    /// All three facets at a vertex assigned: determinant must be a unit.
    Full(FacetId, FacetId),
    /// Two of three assigned: their minors must be coprime.
    Pair(FacetId),
}

fn det3_i64(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn cross_i64(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Greedy facet order: next, the facet closing the most vertices, then
/// the one creating the most half-assigned vertices, lowest id on ties.
fn facet_order(g: &RotationGraph) -> Vec<FacetId> {
    let count = g.facets().len();
    let at: Vec<[FacetId; 3]> = g.vertices().map(|v| g.facets_at(v)).collect();
    let mut chosen = vec![false; count];
    let mut order = Vec::with_capacity(count);
    for _ in 0..count {
        let mut best: Option<(FacetId, (usize, usize))> = None;
        for f in (0..count).map(FacetId) {
            if chosen[f.0] {
                continue;
            }
            let mut closed = 0;
            let mut halved = 0;
            for fs in &at {
                if !fs.contains(&f) {
                    continue;
                }
                match fs.iter().filter(|x| chosen[x.0]).count() {
                    2 => closed += 1,
                    1 => halved += 1,
                    _ => {}
                }
            }
            let score = (closed, halved);
            if best.as_ref().is_none_or(|&(_, s)| score > s) {
                best = Some((f, score));
            }
        }
        let (f, _) = best.expect("unchosen facet exists");
        chosen[f.0] = true;
        order.push(f);
    }
    order
}

/// All assignments of a lattice vector to every facet, coordinates within
/// `[-bound, bound]`, such that the three facets at each vertex receive a
/// unimodular triple. Results stream in a deterministic order.
pub fn enumerate_characteristic(g: &RotationGraph, bound: u32) -> Result<CharacteristicEnumerator> {
    g.validate_nice().map_err(Error::Validation)?;
    let order = facet_order(g);
    let mut position = vec![usize::MAX; order.len()];
    for (i, f) in order.iter().enumerate() {
        position[f.0] = i;
    }
    let mut checks: Vec<Vec<Check>> = (0..order.len()).map(|_| Vec::new()).collect();
    for v in g.vertices() {
        let mut fs = g.facets_at(v);
        fs.sort_by_key(|f| position[f.0]);
        checks[position[fs[1].0]].push(Check::Pair(fs[0]));
        checks[position[fs[2].0]].push(Check::Full(fs[0], fs[1]));
    }
    let bound = i64::from(bound);
    let side = (2 * bound + 1) as u64;
    Ok(CharacteristicEnumerator {
        values: vec![[0; 3]; order.len()],
        order,
        checks,
        bound,
        per_facet: side * side * side,
        stack: Vec::new(),
        done: false,
    })
}

impl CharacteristicEnumerator {
    fn decode(&self, c: u64) -> [i64; 3] {
        let side = 2 * self.bound + 1;
        let c = c as i64;
        [c % side - self.bound, (c / side) % side - self.bound, c / (side * side) - self.bound]
    }

    fn passes(&self, depth: usize) -> bool {
        let current = self.values[self.order[depth].0];
        self.checks[depth].iter().all(|check| match check {
            Check::Full(f1, f2) => {
                det3_i64(self.values[f1.0], self.values[f2.0], current).abs() == 1
            }
            Check::Pair(f1) => {
                let m = cross_i64(self.values[f1.0], current);
                num_integer::gcd(num_integer::gcd(m[0], m[1]), m[2]) == 1
            }
        })
    }

    /// Try candidates at `depth` starting from counter `start`.
    fn descend(&mut self, depth: usize, start: u64) -> Option<u64> {
        for c in start..self.per_facet {
            let val = self.decode(c);
            if val == [0, 0, 0] {
                continue;
            }
            self.values[self.order[depth].0] = val;
            if self.passes(depth) {
                return Some(c);
            }
        }
        None
    }

    fn emit(&self) -> CharacteristicData {
        let values = self.values.iter().map(|v| LatticeVector::new(*v)).collect();
        CharacteristicData::new(values)
    }
}

impl Iterator for CharacteristicEnumerator {
    type Item = CharacteristicData;

    fn next(&mut self) -> Option<CharacteristicData> {
        if self.done || self.order.is_empty() {
            self.done = true;
            return None;
        }
        // After an emission the stack is full: resume by advancing its top.
        let mut resume = if self.stack.len() == self.order.len() {
            self.stack.pop().map(|c| c + 1)
        } else {
            None
        };
        loop {
            let depth = self.stack.len();
            match self.descend(depth, resume.take().unwrap_or(0)) {
                Some(c) => {
                    self.stack.push(c);
                    if self.stack.len() == self.order.len() {
                        return Some(self.emit());
                    }
                }
                None => match self.stack.pop() {
                    Some(c) => resume = Some(c + 1),
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        cube_product, figure_example, simplex, simplex_conjugate, six_sphere, sphere_bundle,
    };
    use crate::surgery::find_sum_sites;
    use crate::torus::{from_characteristic, is_equivalent, EquivalenceMode};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn std_bundle(eps: i8, a: i64, b: i64) -> TorusGraph {
        sphere_bundle(eps, &big(a), &big(b))
    }

    #[test]
    fn recognizes_all_basic_kinds() {
        let s6 = six_sphere([
            LatticeCovector::std_basis(0),
            LatticeCovector::std_basis(1),
            LatticeCovector::std_basis(2),
        ])
        .unwrap();
        assert!(matches!(recognize_basic(&s6).unwrap().kind, LeafKind::S6 { .. }));
        assert!(matches!(recognize_basic(&simplex()).unwrap().kind, LeafKind::Simplex));
        assert!(matches!(recognize_basic(&std_bundle(1, 2, 0)).unwrap().kind, LeafKind::SB { .. }));
        assert!(matches!(recognize_basic(&cube_product()).unwrap().kind, LeafKind::QT));
        assert!(recognize_basic(&figure_example()).is_none());
    }

    #[test]
    fn normalize_recovers_generating_params() {
        for (eps, a, b) in [(1i8, 0i64, 0i64), (1, 2, 3), (-1, 3, -2), (1, -1, -4), (-1, 0, 5)] {
            let (e, x, y) = normalize_sb_params(&std_bundle(eps, a, b)).unwrap();
            let expected = if (a, b) <= (b, a) { (a, b) } else { (b, a) };
            assert_eq!((e, x, y), (eps, big(expected.0), big(expected.1)));
        }
    }

    #[test]
    fn normalize_is_twist_invariant() {
        let m: crate::lattice::Mat3 =
            [[big(1), big(2), big(0)], [big(0), big(1), big(0)], [big(3), big(-1), big(1)]];
        let tg = std_bundle(-1, 4, -3);
        assert_eq!(normalize_sb_params(&tg.twist(&m)).unwrap(), normalize_sb_params(&tg).unwrap());
    }

    #[test]
    fn normalize_rejects_wrong_shapes() {
        assert!(matches!(normalize_sb_params(&simplex()), Err(Error::Op(OpError::NotSBShaped(_)))));
        assert!(matches!(
            normalize_sb_params(&figure_example()),
            Err(Error::Op(OpError::NotSBShaped(_)))
        ));
    }

    #[test]
    fn multi_edge_reduction_peels_the_figure_block() {
        let (leaf, rest, _) = reduce_multi_edge(&figure_example()).unwrap();
        assert!(matches!(leaf.kind, LeafKind::SB { .. }));
        assert_eq!(leaf.witness.graph().vertex_count(), 4);
        assert_eq!(rest.graph().vertex_count(), 6);
        assert!(rest.graph().is_simple());
        rest.validate().unwrap();
    }

    #[test]
    fn multi_edge_reduction_peels_chains_one_block_per_call() {
        let sb1 = std_bundle(1, 1, 0);
        let sb2 = std_bundle(1, 2, 1);
        let site = find_sum_sites(&sb1, &sb2).unwrap()[0];
        let (chain, _) = connected_sum(&sb1, &sb2, &site).unwrap();
        let sx = simplex();
        let site = find_sum_sites(&chain, &sx).unwrap()[0];
        let (chain, _) = connected_sum(&chain, &sx, &site).unwrap();
        assert_eq!(chain.graph().vertex_count(), 8);

        let (leaf, rest, _) = reduce_multi_edge(&chain).unwrap();
        assert!(matches!(leaf.kind, LeafKind::SB { .. }));
        assert_eq!(rest.graph().vertex_count(), 6);
        assert!(!rest.graph().is_simple());
        let (leaf, rest, _) = reduce_multi_edge(&rest).unwrap();
        assert!(matches!(leaf.kind, LeafKind::SB { .. }));
        assert_eq!(rest.graph().vertex_count(), 4);
        assert!(rest.graph().is_simple());
        assert!(matches!(reduce_multi_edge(&rest), Err(Error::Op(OpError::NoMultipleEdge))));
    }

    #[test]
    fn singular_facet_reduction_gives_three_pieces_on_the_figure() {
        match reduce_singular_facet(&figure_example()).unwrap() {
            SingularFacetSplit::WithBlock { left, block, right, .. } => {
                assert_eq!(left.graph().vertex_count(), 4);
                assert!(left.graph().is_simple());
                assert!(matches!(block.kind, LeafKind::SB { .. }));
                assert_eq!(right.graph().vertex_count(), 4);
                assert!(right.graph().is_simple());
            }
            other => panic!("expected a middle block, got {other:?}"),
        }
    }

    #[test]
    fn vertex_sums_of_3_connected_pieces_stay_3_connected() {
        // Summing removes one vertex per side and threads three vertex-disjoint
        // joints between the remainders; a pair removal kills at most two of
        // them, so 3-connectivity survives. Such sums are recognized whole.
        let c1 = cube_product();
        let c2 = c1.with_sigma(vec![-1; 8]).unwrap();
        let (sum, _) =
            connected_sum(&c1, &c2, &SumSite { left: Vertex(0), right: Vertex(0) }).unwrap();
        assert_eq!(sum.graph().vertex_count(), 14);
        assert!(sum.graph().is_simple());
        assert!(sum.graph().is_k_connected(3));
        assert!(matches!(reduce_singular_facet(&sum), Err(Error::Op(OpError::Already3Connected))));
        let tree = classify(&sum).unwrap();
        assert_eq!(tree.node_count(), 0);
        assert!(matches!(tree.leaves()[0].kind, LeafKind::QT));
        assert_eq!(summarize(&tree), "QT×1");
    }

    /// Chain a bundle between two simplices, consuming both of its junction
    /// vertices. Both doubled pairs disappear, leaving a simple graph whose
    /// only 3-edge cuts pinch at a vertex, so both reductions must rebuild a
    /// middle block from scratch.
    fn hidden_block_chain() -> TorusGraph {
        let sb = std_bundle(1, 0, 0);
        let (step, _) = connected_sum(
            &simplex_conjugate(),
            &sb,
            &SumSite { left: Vertex(0), right: Vertex(0) },
        )
        .unwrap();
        // The far pair of the bundle landed on vertices 4 and 5; vertex 4
        // still carries its double and admits the second simplex.
        let (chain, _) =
            connected_sum(&step, &simplex(), &SumSite { left: Vertex(4), right: Vertex(0) })
                .unwrap();
        chain
    }

    #[test]
    fn singular_facet_reduction_recovers_a_hidden_block() {
        let chain = hidden_block_chain();
        assert_eq!(chain.graph().vertex_count(), 8);
        assert!(chain.graph().is_simple());
        assert!(!chain.graph().is_k_connected(3));
        match reduce_singular_facet(&chain).unwrap() {
            SingularFacetSplit::WithBlock { left, block, right, .. } => {
                assert!(matches!(block.kind, LeafKind::SB { .. }));
                for piece in [left, right] {
                    assert_eq!(piece.graph().vertex_count(), 4);
                    assert!(piece.graph().is_simple());
                    piece.validate().unwrap();
                }
            }
            other => panic!("expected a middle block, got {other:?}"),
        }
        let tree = classify(&chain).unwrap();
        let kinds: Vec<&'static str> = tree.leaves().iter().map(|l| l.kind.name()).collect();
        assert_eq!(kinds, ["Simplex", "SB", "Simplex"]);
        assert_eq!(tree.node_count(), 2);
    }

    #[test]
    fn singular_facet_reduction_rejects_3_connected_input() {
        assert!(matches!(
            reduce_singular_facet(&cube_product()),
            Err(Error::Op(OpError::Already3Connected))
        ));
    }

    #[test]
    fn classifies_basics_to_single_leaves() {
        let s6 = six_sphere([
            LatticeCovector::std_basis(0),
            LatticeCovector::std_basis(1),
            LatticeCovector::std_basis(2),
        ])
        .unwrap();
        let tree = classify(&s6).unwrap();
        assert_eq!(tree.node_count(), 0);
        assert_eq!(summarize(&tree), "S6");

        let tree = classify(&simplex()).unwrap();
        assert!(matches!(tree.leaves()[0].kind, LeafKind::Simplex));
        assert_eq!(summarize(&tree), "QT×1");

        let tree = classify(&std_bundle(-1, 2, 5)).unwrap();
        let LeafKind::SB { eps, ref a, ref b } = tree.leaves()[0].kind else {
            panic!("expected an SB leaf");
        };
        assert_eq!((eps, a.clone(), b.clone()), (-1, big(2), big(5)));
    }

    #[test]
    fn classifies_the_figure_into_three_pieces() {
        let tree = classify(&figure_example()).unwrap();
        assert_eq!(tree.node_count(), 2);
        let kinds: Vec<&'static str> = tree.leaves().iter().map(|l| l.kind.name()).collect();
        assert_eq!(kinds, ["Simplex", "SB", "Simplex"]);
        // The block boundary is not the construction junction: the block
        // absorbs the adjoining corner, so its normal form differs from
        // the parameters the figure was generated with. Only refolding is
        // promised, not leaf multiset uniqueness.
        let sb = &tree.leaves()[1].kind;
        let LeafKind::SB { eps, a, b } = sb else { unreachable!() };
        assert_eq!((*eps, a.clone(), b.clone()), (-1, big(-1), big(-1)));
        assert_eq!(summarize(&tree), "QT×2 SB×1");

        let (folded, _) = fold(&tree).unwrap();
        let oriented = ensure_sigma(&figure_example()).unwrap();
        assert!(is_equivalent(&folded, &oriented, EquivalenceMode::Exact));
    }

    #[test]
    fn classifies_random_chains_and_refolds_them() {
        let mut rng = ChaCha8Rng::seed_from_u64(701);
        for round in 0..12 {
            let mut acc = random_piece(&mut rng);
            let pieces = rng.gen_range(2..=4);
            for _ in 1..pieces {
                let next = random_piece(&mut rng);
                let sites = find_sum_sites(&acc, &next).unwrap();
                if sites.is_empty() {
                    continue;
                }
                let site = sites[rng.gen_range(0..sites.len())];
                acc = connected_sum(&acc, &next, &site).unwrap().0;
            }
            let tree = classify(&acc).unwrap();
            let total: usize = tree.leaves().iter().map(|l| l.witness.graph().vertex_count()).sum();
            assert_eq!(
                total,
                acc.graph().vertex_count() + 2 * tree.node_count(),
                "vertex bookkeeping broke in round {round}"
            );
            for leaf in tree.leaves() {
                let again = recognize_basic(&leaf.witness).expect("leaf must stay basic");
                assert_eq!(again.kind, leaf.kind);
            }
            let (folded, _) = fold(&tree).unwrap();
            assert!(is_equivalent(&folded, &acc, EquivalenceMode::Exact));
        }
    }

    fn random_piece(rng: &mut ChaCha8Rng) -> TorusGraph {
        match rng.gen_range(0..4) {
            0 => six_sphere([
                LatticeCovector::std_basis(0),
                LatticeCovector::std_basis(1),
                LatticeCovector::std_basis(2),
            ])
            .unwrap(),
            1 => simplex(),
            2 => simplex_conjugate(),
            _ => {
                let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
                std_bundle(eps, rng.gen_range(-3..=3), rng.gen_range(-3..=3))
            }
        }
    }

    #[test]
    fn enumerates_theta_assignments_at_bound_one() {
        let g = crate::families::theta_graph();
        let all: Vec<CharacteristicData> = enumerate_characteristic(&g, 1).unwrap().collect();
        assert!(!all.is_empty());
        let standard = CharacteristicData::new(vec![
            LatticeVector::new([0, 1, 0]),
            LatticeVector::new([0, 0, 1]),
            LatticeVector::new([1, 0, 0]),
        ]);
        assert!(all.contains(&standard));
        for data in all.iter().take(64) {
            let tg = from_characteristic(&g, data).unwrap();
            tg.validate().unwrap();
        }
    }

    #[test]
    fn enumerates_the_projective_assignment_on_k4() {
        let g = crate::families::simplex_graph();
        let want = CharacteristicData::new(vec![
            LatticeVector::new([1, 0, 0]),
            LatticeVector::new([0, 1, 0]),
            LatticeVector::new([0, 0, 1]),
            LatticeVector::new([-1, -1, -1]),
        ]);
        let mut found = false;
        for data in enumerate_characteristic(&g, 1).unwrap() {
            if data == want {
                found = true;
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn enumeration_at_bound_zero_is_empty() {
        for g in [crate::families::theta_graph(), crate::families::simplex_graph()] {
            assert_eq!(enumerate_characteristic(&g, 0).unwrap().count(), 0);
        }
    }
}

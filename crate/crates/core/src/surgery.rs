//! Surgery on torus graphs: connected sum at a vertex pair and the inverse
//! split along a 3-edge cut.
//!
//! A *sum site* is a vertex in each graph with equal label sets and opposite
//! signs. The sum removes both vertices and splices the loose edge ends,
//! pairing them by label. A *cut* is a set of three edges whose removal
//! leaves exactly two components, each cut edge crossing between them; the
//! split caps each side with a new vertex whose labels are forced by the
//! sign rule. Splitting a sum at its record and re-summing the pieces
//! reproduces the original graph up to vertex numbering.

use crate::error::{Error, OpError, Result, ValidationError};
use crate::graph::{Dart, EdgeId, RotationGraph, Vertex};
use crate::lattice::{is_unimodular_basis_cov, LatticeCovector};
use crate::torus::TorusGraph;
use num_bigint::BigInt;

/// A pair of vertices, one per summand, where a connected sum can happen.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct SumSite {
    /// Vertex removed from the left graph.
    pub left: Vertex,
    /// Vertex removed from the right graph.
    pub right: Vertex,
}

/// Everything needed to undo a sum or redo a split: the three edges crossing
/// the gluing 2-sphere, their labels from both sides, and the cap vertex
/// restored on each piece with its labels and sign.
///
/// Joint index `i` is consistent across all fields: `joint_labels[i]`,
/// `left_cap_labels[i]` and `right_cap_labels[i]` all describe
/// `joint_edges[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GluingRecord {
    /// The three crossing edges, in the joined graph's numbering.
    pub joint_edges: [EdgeId; 3],
    /// Per joint edge: its label read from the left side and from the right.
    pub joint_labels: [(LatticeCovector, LatticeCovector); 3],
    /// The cap vertex of the left piece.
    pub left_cap: Vertex,
    /// Labels at the left cap, toward each joint.
    pub left_cap_labels: [LatticeCovector; 3],
    /// Sign of the left cap.
    pub left_cap_sigma: i8,
    /// The cap vertex of the right piece.
    pub right_cap: Vertex,
    /// Labels at the right cap, toward each joint.
    pub right_cap_labels: [LatticeCovector; 3],
    /// Sign of the right cap.
    pub right_cap_sigma: i8,
}

fn require_sigma(tg: &TorusGraph) -> Result<&[i8]> {
    tg.sigma().ok_or(Error::Validation(ValidationError::MissingSigma))
}

fn sorted_labels(tg: &TorusGraph, v: Vertex) -> Vec<LatticeCovector> {
    let mut ls: Vec<_> = tg.graph().darts_at(v).into_iter().map(|d| tg.axial(d).clone()).collect();
    ls.sort_by(|a, b| a.coords().cmp(b.coords()));
    ls
}

/// All admissible sum sites: vertex pairs with equal label sets and opposite
/// signs. Both graphs must carry signs.
pub fn find_sum_sites(tg1: &TorusGraph, tg2: &TorusGraph) -> Result<Vec<SumSite>> {
    let s1 = require_sigma(tg1)?;
    let s2 = require_sigma(tg2)?;
    let mut sites = Vec::new();
    for p in tg1.graph().vertices() {
        let lp = sorted_labels(tg1, p);
        for q in tg2.graph().vertices() {
            if s1[p.0] != s2[q.0] && lp == sorted_labels(tg2, q) {
                sites.push(SumSite { left: p, right: q });
            }
        }
    }
    Ok(sites)
}

/// Connected sum at a site: remove both site vertices and splice the loose
/// ends, pairing them by equal labels. The spliced darts keep their labels
/// and all other vertices keep their signs. Kept vertices are renumbered
/// left side first (ascending, skipping the site vertex), then right side.
///
/// Exactly one of the right graph and its mirror image joins into a sphere;
/// the mirror is tried automatically, and since mirroring does not change
/// the abstract labeled graph the result is the same up to equivalence.
pub fn connected_sum(
    tg1: &TorusGraph,
    tg2: &TorusGraph,
    site: &SumSite,
) -> Result<(TorusGraph, GluingRecord)> {
    let s1 = require_sigma(tg1)?;
    let s2 = require_sigma(tg2)?;
    let (p, q) = (site.left, site.right);
    if p.0 >= tg1.graph().vertex_count() || q.0 >= tg2.graph().vertex_count() {
        return Err(Error::Op(OpError::InadmissibleSite("no such vertex".into())));
    }
    if s1[p.0] == s2[q.0] {
        return Err(Error::Op(OpError::InadmissibleSite(format!("signs at {p} and {q} agree"))));
    }
    if sorted_labels(tg1, p) != sorted_labels(tg2, q) {
        return Err(Error::Op(OpError::InadmissibleSite(format!(
            "label sets at {p} and {q} differ"
        ))));
    }
    match splice(tg1, tg2, p, q) {
        Ok(out) => Ok(out),
        Err(Error::Validation(ValidationError::NotSphere { .. })) => {
            splice(tg1, &tg2.mirrored(), p, q)
        }
        Err(e) => Err(e),
    }
}

fn splice(
    tg1: &TorusGraph,
    tg2: &TorusGraph,
    p: Vertex,
    q: Vertex,
) -> Result<(TorusGraph, GluingRecord)> {
    let g1 = tg1.graph();
    let g2 = tg2.graph();
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());

    // Renumber kept vertices: left side ascending, then right side.
    let mut v1_new = vec![usize::MAX; n1];
    let mut next = 0;
    for v in 0..n1 {
        if v != p.0 {
            v1_new[v] = next;
            next += 1;
        }
    }
    let mut v2_new = vec![usize::MAX; n2];
    for v in 0..n2 {
        if v != q.0 {
            v2_new[v] = next;
            next += 1;
        }
    }
    let d1_new = |d: Dart| -> usize { 3 * v1_new[d.vertex().0] + d.slot() };
    let d2_new = |d: Dart| -> usize { 3 * v2_new[d.vertex().0] + d.slot() };

    let dart_count = 3 * (n1 + n2 - 2);
    let mut opposite = vec![usize::MAX; dart_count];
    let mut axial: Vec<Option<LatticeCovector>> = vec![None; dart_count];
    for &(d, o) in g1.edges() {
        if d.vertex() == p || o.vertex() == p {
            continue;
        }
        opposite[d1_new(d)] = d1_new(o);
        opposite[d1_new(o)] = d1_new(d);
    }
    for d in g1.darts() {
        if d.vertex() != p {
            axial[d1_new(d)] = Some(tg1.axial(d).clone());
        }
    }
    for &(d, o) in g2.edges() {
        if d.vertex() == q || o.vertex() == q {
            continue;
        }
        opposite[d2_new(d)] = d2_new(o);
        opposite[d2_new(o)] = d2_new(d);
    }
    for d in g2.darts() {
        if d.vertex() != q {
            axial[d2_new(d)] = Some(tg2.axial(d).clone());
        }
    }

    // Splice: pair the loose ends by equal labels at the site vertices.
    let mut joint_stubs = [(Dart(0), Dart(0)); 3];
    for (i, a) in g1.darts_at(p).into_iter().enumerate() {
        let mut found = None;
        for b in g2.darts_at(q) {
            if tg2.axial(b) == tg1.axial(a) {
                found = Some(b);
                break;
            }
        }
        let b = found.expect("label sets were checked equal");
        let x_stub = g1.opposite(a);
        let y_stub = g2.opposite(b);
        opposite[d1_new(x_stub)] = d2_new(y_stub);
        opposite[d2_new(y_stub)] = d1_new(x_stub);
        joint_stubs[i] = (x_stub, y_stub);
    }

    let graph = RotationGraph::from_opposite(opposite).map_err(Error::Validation)?;
    let axial: Vec<LatticeCovector> =
        axial.into_iter().map(|a| a.expect("every dart labeled")).collect();
    let mut sigma = Vec::with_capacity(n1 + n2 - 2);
    let s1 = tg1.sigma().expect("checked by caller");
    let s2 = tg2.sigma().expect("checked by caller");
    for v in 0..n1 {
        if v != p.0 {
            sigma.push(s1[v]);
        }
    }
    for v in 0..n2 {
        if v != q.0 {
            sigma.push(s2[v]);
        }
    }
    let tg = TorusGraph::new(graph, axial, Some(sigma)).map_err(Error::Validation)?;
    tg.validate().map_err(Error::Validation)?;

    let joint_edges = joint_stubs.map(|(x, _)| tg.graph().edge_of(Dart(d1_new(x))));
    let joint_labels = joint_stubs.map(|(x, y)| (tg1.axial(x).clone(), tg2.axial(y).clone()));
    let left_cap_labels: [LatticeCovector; 3] = {
        let ds = g1.darts_at(p);
        [tg1.axial(ds[0]).clone(), tg1.axial(ds[1]).clone(), tg1.axial(ds[2]).clone()]
    };
    let right_cap_labels = left_cap_labels.clone();
    let record = GluingRecord {
        joint_edges,
        joint_labels,
        left_cap: p,
        left_cap_labels,
        left_cap_sigma: s1[p.0],
        right_cap: q,
        right_cap_labels,
        right_cap_sigma: s2[q.0],
    };
    Ok((tg, record))
}

/// One side of a cut, before labels are chosen: the capped rotation graph
/// plus the dart bookkeeping needed to label it.
struct PieceGraph {
    graph: RotationGraph,
    /// New id of each kept original vertex (MAX elsewhere).
    vertex_new: Vec<usize>,
    /// The cap vertex (last).
    cap: Vertex,
    /// For each joint index: the kept dart crossing the cut, old numbering.
    stubs: [Dart; 3],
    /// For each cap slot: which joint index it was paired with.
    cap_joint: [usize; 3],
}

fn build_piece_graph(
    g: &RotationGraph,
    cut: &[EdgeId; 3],
    comp: &[usize],
    side: usize,
) -> Result<PieceGraph> {
    let n = g.vertex_count();
    let mut vertex_new = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if comp[v] == side {
            vertex_new[v] = next;
            next += 1;
        }
    }
    let cap = Vertex(next);
    let dart_new = |d: Dart| -> usize { 3 * vertex_new[d.vertex().0] + d.slot() };
    let cut_index = |e: EdgeId| -> Option<usize> { cut.iter().position(|&c| c == e) };

    let mut stubs = [Dart(0); 3];
    for (i, &e) in cut.iter().enumerate() {
        let (d, o) = g.edge_darts(e);
        stubs[i] = if comp[d.vertex().0] == side { d } else { o };
    }

    let dart_count = 3 * (next + 1);
    let mut base = vec![usize::MAX; dart_count];
    for &(d, o) in g.edges() {
        if cut_index(g.edge_of(d)).is_some() {
            continue;
        }
        if comp[d.vertex().0] == side && comp[o.vertex().0] == side {
            base[dart_new(d)] = dart_new(o);
            base[dart_new(o)] = dart_new(d);
        }
    }

    // The cap's rotation must close the piece into a sphere; of the two
    // cyclic orders of the three stubs exactly the right one does.
    let mut last_err = Error::internal("cut has no spherical capping");
    for order in [[0usize, 1, 2], [0, 2, 1]] {
        let mut opposite = base.clone();
        for (slot, &joint) in order.iter().enumerate() {
            let cap_dart = 3 * cap.0 + slot;
            opposite[cap_dart] = dart_new(stubs[joint]);
            opposite[dart_new(stubs[joint])] = cap_dart;
        }
        match RotationGraph::from_opposite(opposite) {
            Ok(graph) => return Ok(PieceGraph { graph, vertex_new, cap, stubs, cap_joint: order }),
            Err(e) => last_err = Error::Validation(e),
        }
    }
    Err(last_err)
}

/// Label one side of the cut with the given cap sign and validate it.
fn label_piece(
    tg: &TorusGraph,
    piece: &PieceGraph,
    cap_sigma: i8,
) -> Result<(TorusGraph, [LatticeCovector; 3])> {
    let g = tg.graph();
    let sigma_in = tg.sigma().expect("checked by split");
    // Sign rule: A(cap -> x_i) = -sigma(cap) sigma(x_i) A(x_i -> cap).
    let cap_labels: [LatticeCovector; 3] = {
        let mk = |i: usize| -> LatticeCovector {
            let stub = piece.stubs[i];
            let s = BigInt::from(-cap_sigma * sigma_in[stub.vertex().0]);
            tg.axial(stub).scale(&s)
        };
        [mk(0), mk(1), mk(2)]
    };
    if !is_unimodular_basis_cov(&cap_labels[0], &cap_labels[1], &cap_labels[2]) {
        return Err(Error::Op(OpError::InvalidCap));
    }
    let dart_count = piece.graph.dart_count();
    let mut axial: Vec<Option<LatticeCovector>> = vec![None; dart_count];
    for d in g.darts() {
        let v = piece.vertex_new[d.vertex().0];
        if v != usize::MAX {
            axial[3 * v + d.slot()] = Some(tg.axial(d).clone());
        }
    }
    for (slot, &joint) in piece.cap_joint.iter().enumerate() {
        axial[3 * piece.cap.0 + slot] = Some(cap_labels[joint].clone());
    }
    let axial: Vec<LatticeCovector> =
        axial.into_iter().map(|a| a.expect("every dart labeled")).collect();
    let mut sigma = vec![0i8; piece.graph.vertex_count()];
    for v in 0..g.vertex_count() {
        if piece.vertex_new[v] != usize::MAX {
            sigma[piece.vertex_new[v]] = sigma_in[v];
        }
    }
    sigma[piece.cap.0] = cap_sigma;
    let out =
        TorusGraph::new(piece.graph.clone(), axial, Some(sigma)).map_err(Error::Validation)?;
    out.validate().map_err(Error::Validation)?;
    Ok((out, cap_labels))
}

/// Check that `cut` is three distinct existing edges whose removal leaves
/// exactly two components with every cut edge crossing between them.
/// Returns the component table and the two side ids (left contains vertex 0).
fn check_cut(g: &RotationGraph, cut: &[EdgeId; 3]) -> Result<(Vec<usize>, usize, usize)> {
    for &e in cut {
        if e.0 >= g.edge_count() {
            return Err(Error::Op(OpError::NotACut(format!("no such edge {e}"))));
        }
    }
    if cut[0] == cut[1] || cut[0] == cut[2] || cut[1] == cut[2] {
        return Err(Error::Op(OpError::NotACut("cut edges must be distinct".into())));
    }
    let (count, comp) = g.components(&[], cut);
    if count != 2 {
        return Err(Error::Op(OpError::NotACut(format!(
            "removal leaves {count} components, need 2"
        ))));
    }
    for &e in cut {
        let (a, b) = g.edge_endpoints(e);
        if comp[a.0] == comp[b.0] {
            return Err(Error::Op(OpError::NotACut(format!("edge {e} does not cross"))));
        }
    }
    let left = comp[0];
    let right = 1 - left;
    Ok((comp, left, right))
}

/// Split along a 3-edge cut. Each side keeps its vertices (renumbered
/// ascending) and gains a cap vertex (last); stub darts keep their labels
/// and the cap labels are forced by the sign rule once the cap signs are
/// chosen. The caps get opposite signs; the pair is chosen (left `+1`
/// preferred) so that both pieces validate. The two pieces can always be
/// re-summed at their caps, reproducing the input up to vertex numbering.
pub fn split(tg: &TorusGraph, cut: [EdgeId; 3]) -> Result<(TorusGraph, TorusGraph, GluingRecord)> {
    require_sigma(tg)?;
    let g = tg.graph();
    let mut cut = cut;
    cut.sort();
    let (comp, left_side, right_side) = check_cut(g, &cut)?;
    let left_graph = build_piece_graph(g, &cut, &comp, left_side)?;
    let right_graph = build_piece_graph(g, &cut, &comp, right_side)?;

    let mut last_err = Error::Op(OpError::InvalidCap);
    for cap_sigma in [1i8, -1] {
        let left = match label_piece(tg, &left_graph, cap_sigma) {
            Ok(l) => l,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let right = match label_piece(tg, &right_graph, -cap_sigma) {
            Ok(r) => r,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let (left, left_cap_labels) = left;
        let (right, right_cap_labels) = right;
        let joint_labels = [0, 1, 2].map(|i| {
            let d = left_graph.stubs[i];
            let o = g.opposite(d);
            (tg.axial(d).clone(), tg.axial(o).clone())
        });
        let record = GluingRecord {
            joint_edges: cut,
            joint_labels,
            left_cap: left_graph.cap,
            left_cap_labels,
            left_cap_sigma: cap_sigma,
            right_cap: right_graph.cap,
            right_cap_labels,
            right_cap_sigma: -cap_sigma,
        };
        return Ok((left, right, record));
    }
    Err(last_err)
}

/// All admissible proper cuts: 3-edge cuts where both sides keep at least
/// two original vertices and the split succeeds. Cuts are returned as
/// ascending triples in lexicographic order.
pub fn find_splits(tg: &TorusGraph) -> Result<Vec<[EdgeId; 3]>> {
    require_sigma(tg)?;
    let g = tg.graph();
    let m = g.edge_count();
    let mut cuts = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let cut = [EdgeId(i), EdgeId(j), EdgeId(k)];
                let Ok((comp, left, right)) = check_cut(g, &cut) else {
                    continue;
                };
                let left_count = comp.iter().filter(|&&c| c == left).count();
                let right_count = comp.iter().filter(|&&c| c == right).count();
                if left_count < 2 || right_count < 2 {
                    continue;
                }
                if split(tg, cut).is_ok() {
                    cuts.push(cut);
                }
            }
        }
    }
    Ok(cuts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{figure_example, simplex, simplex_conjugate, six_sphere, sphere_bundle};
    use crate::torus::{find_isomorphism, is_equivalent, EquivalenceMode};
    use proptest::prelude::*;

    fn cv(c: [i64; 3]) -> LatticeCovector {
        LatticeCovector::new(c)
    }

    fn std_basis() -> [LatticeCovector; 3] {
        [cv([1, 0, 0]), cv([0, 1, 0]), cv([0, 0, 1])]
    }

    #[test]
    fn sum_sites_of_simplex_and_sphere() {
        let sx = simplex();
        let s6 = six_sphere(std_basis()).unwrap();
        // Only the standard-basis vertex of the simplex matches, and only
        // against the negative-sign sphere vertex.
        let sites = find_sum_sites(&sx, &s6).unwrap();
        assert_eq!(sites, vec![SumSite { left: Vertex(0), right: Vertex(1) }]);
        // Against the conjugate simplex the sphere offers its plus vertex.
        let sites = find_sum_sites(&simplex_conjugate(), &s6).unwrap();
        assert_eq!(sites, vec![SumSite { left: Vertex(0), right: Vertex(0) }]);
    }

    #[test]
    fn summing_with_the_sphere_is_neutral() {
        let sx = simplex();
        let s6 = six_sphere(std_basis()).unwrap();
        let (sum, record) =
            connected_sum(&sx, &s6, &SumSite { left: Vertex(0), right: Vertex(1) }).unwrap();
        sum.validate().unwrap();
        assert_eq!(sum.graph().vertex_count(), 4);
        assert_eq!(sum.graph().edge_count(), 6);
        assert_eq!(sum.graph().facets().len(), 4);
        assert!(is_equivalent(&sum, &sx, EquivalenceMode::Exact));
        assert_eq!(record.left_cap, Vertex(0));
        assert_eq!(record.right_cap, Vertex(1));
        assert_eq!(record.left_cap_sigma, 1);
        assert_eq!(record.right_cap_sigma, -1);
        // Joint labels read from the left are the stub labels into the old
        // site, which for the simplex point back at vertex 0.
        for (l, _r) in &record.joint_labels {
            assert!(sum.axial_table().contains(l));
        }
    }

    #[test]
    fn theta_cut_splits_into_two_spheres() {
        let s6 = six_sphere(std_basis()).unwrap();
        let cut = [EdgeId(0), EdgeId(1), EdgeId(2)];
        let (left, right, record) = split(&s6, cut).unwrap();
        left.validate().unwrap();
        right.validate().unwrap();
        // The left piece reproduces the sphere graph exactly: the +1 cap is
        // invalid (no connection), so the -1 cap is chosen and the labels
        // come out equal on both strands of each edge.
        assert_eq!(left, s6);
        assert_eq!(record.left_cap_sigma, -1);
        assert_eq!(record.right_cap_sigma, 1);
        assert!(find_isomorphism(&right, &s6).is_some());
        // Re-summing at the record site reproduces the input.
        let (resum, _) = connected_sum(
            &left,
            &right,
            &SumSite { left: record.left_cap, right: record.right_cap },
        )
        .unwrap();
        assert!(is_equivalent(&resum, &s6, EquivalenceMode::Exact));
        // This cut is not proper (single original vertex per side).
        assert!(find_splits(&s6).unwrap().is_empty());
    }

    #[test]
    fn basic_pieces_have_no_proper_cuts() {
        assert!(find_splits(&simplex()).unwrap().is_empty());
        let sb = sphere_bundle(1, &BigInt::from(2), &BigInt::from(-1));
        assert!(find_splits(&sb).unwrap().is_empty());
    }

    #[test]
    fn figure_example_splits_at_both_junctions() {
        let fig = figure_example();
        let cuts = find_splits(&fig).unwrap();
        // Two junction triples, plus two cuts where the double-edge block
        // absorbs the adjacent simplex corner into a bundle-shaped side.
        assert_eq!(cuts.len(), 4);
        // Matching cuts: three pairwise vertex-disjoint edges. The figure
        // has exactly its two junction triples.
        let g = fig.graph();
        let matching: Vec<_> = cuts
            .iter()
            .filter(|cut| {
                let mut vs = Vec::new();
                for &e in cut.iter() {
                    let (a, b) = g.edge_endpoints(e);
                    vs.push(a);
                    vs.push(b);
                }
                vs.sort();
                vs.dedup();
                vs.len() == 6
            })
            .collect();
        assert_eq!(matching.len(), 2);
        // Splitting at a junction yields a simplex piece and a 6-vertex rest.
        let (left, right, record) = split(&fig, *matching[0]).unwrap();
        let (small, big) =
            if left.graph().vertex_count() == 4 { (&left, &right) } else { (&right, &left) };
        assert_eq!(small.graph().vertex_count(), 4);
        assert_eq!(big.graph().vertex_count(), 6);
        assert!(find_isomorphism(small, &simplex()).is_some());
        let (resum, _) = connected_sum(
            &left,
            &right,
            &SumSite { left: record.left_cap, right: record.right_cap },
        )
        .unwrap();
        assert!(is_equivalent(&resum, &fig, EquivalenceMode::Exact));
    }

    #[test]
    fn inadmissible_sites_are_rejected() {
        let sx = simplex();
        let s6 = six_sphere(std_basis()).unwrap();
        // Equal signs.
        let err = connected_sum(&sx, &s6, &SumSite { left: Vertex(0), right: Vertex(0) });
        assert!(matches!(err, Err(Error::Op(OpError::InadmissibleSite(_)))));
        // Different label sets.
        let err = connected_sum(&sx, &s6, &SumSite { left: Vertex(1), right: Vertex(1) });
        assert!(matches!(err, Err(Error::Op(OpError::InadmissibleSite(_)))));
        // Missing signs.
        let bare = sx.without_sigma();
        let err = connected_sum(&bare, &s6, &SumSite { left: Vertex(0), right: Vertex(1) });
        assert!(matches!(err, Err(Error::Validation(ValidationError::MissingSigma))));
    }

    #[test]
    fn bad_cuts_are_rejected() {
        let fig = figure_example();
        // Three edges around a triangle do not separate the sphere.
        let g = fig.graph();
        let mut tri = None;
        'outer: for i in 0..g.edge_count() {
            for j in i + 1..g.edge_count() {
                for k in j + 1..g.edge_count() {
                    let cut = [EdgeId(i), EdgeId(j), EdgeId(k)];
                    let mut vs = Vec::new();
                    let mut pairs = Vec::new();
                    for &e in &cut {
                        let (a, b) = g.edge_endpoints(e);
                        vs.push(a);
                        vs.push(b);
                        pairs.push((a.min(b), a.max(b)));
                    }
                    vs.sort();
                    vs.dedup();
                    pairs.sort();
                    pairs.dedup();
                    // Three vertices and three distinct endpoint pairs
                    // rule out a double edge plus a pendant edge.
                    if vs.len() == 3 && pairs.len() == 3 {
                        tri = Some(cut);
                        break 'outer;
                    }
                }
            }
        }
        let err = split(&fig, tri.expect("figure has a triangle"));
        assert!(matches!(err, Err(Error::Op(OpError::NotACut(_)))));
        let err = split(&fig, [EdgeId(0), EdgeId(0), EdgeId(1)]);
        assert!(matches!(err, Err(Error::Op(OpError::NotACut(_)))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn sum_then_split_then_resum_round_trips(
            eps in prop::sample::select(vec![1i8, -1]),
            a in -3i64..=3,
            b in -3i64..=3,
            site_v in 0usize..2,
        ) {
            let sb = sphere_bundle(eps, &BigInt::from(a), &BigInt::from(b));
            let s6 = six_sphere(std_basis()).unwrap();
            // Bundle vertices 0 and 1 carry the standard labels with signs
            // +1 and -1; pick the sphere vertex with the opposite sign.
            let partner = if site_v == 0 { Vertex(1) } else { Vertex(0) };
            let site = SumSite { left: Vertex(site_v), right: partner };
            let (sum, record) = connected_sum(&sb, &s6, &site).unwrap();
            sum.validate().unwrap();
            prop_assert_eq!(sum.graph().vertex_count(), 4);
            let (left, right, rec2) = split(&sum, record.joint_edges).unwrap();
            let (resum, _) = connected_sum(
                &left,
                &right,
                &SumSite { left: rec2.left_cap, right: rec2.right_cap },
            ).unwrap();
            prop_assert!(is_equivalent(&resum, &sum, EquivalenceMode::Exact));
        }
    }
}

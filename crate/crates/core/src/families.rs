//! Reference constructions: the standard embedded graphs and the basic
//! torus-graph families the classifier recognizes.
//!
//! The graph tables here are frozen by hand from planar drawings; tests pin
//! their facet structure. The torus graphs come in three basic families:
//!
//! * [`six_sphere`]: two vertices joined by three edges, both labels of an
//!   edge equal, signs `(+1, -1)`;
//! * [`simplex`]: the tetrahedral graph with the projective-space labels,
//!   plus its conjugate (all signs negated) and a variant with arbitrary
//!   labels at one vertex;
//! * [`sphere_bundle`]: four vertices, two double edges, parameters
//!   `(eps, a, b)` with `eps = +-1`.
//!
//! [`cube_product`] (the 3-cube with product labels) and [`figure_example`]
//! (a three-piece connected sum) are the standard composite examples.

use crate::error::ValidationError;
use crate::graph::{build_rotation_graph, RotationGraph, Vertex};
use crate::lattice::{solve_dual_cov, LatticeCovector, LatticeVector};
use crate::surgery::{connected_sum, SumSite};
use crate::torus::{from_characteristic, synthesize_sigma, CharacteristicData, TorusGraph};
use num_bigint::BigInt;

/// Two vertices joined by three parallel edges, with opposite rotations.
pub fn theta_graph() -> RotationGraph {
    build_rotation_graph(2, &[[0, 1, 2], [3, 4, 5]], &[[0, 3], [1, 5], [2, 4]])
        .expect("frozen table")
}

/// Two loop vertices joined by a bridge. Spherical but not nice: both
/// loop facets traverse the bridge twice.
pub fn dumbbell_graph() -> RotationGraph {
    build_rotation_graph(2, &[[0, 1, 2], [3, 4, 5]], &[[0, 1], [2, 5], [3, 4]])
        .expect("frozen table")
}

/// The tetrahedral graph with its planar rotations.
pub fn simplex_graph() -> RotationGraph {
    build_rotation_graph(
        4,
        &[[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]],
        &[[0, 3], [1, 6], [2, 9], [4, 11], [5, 7], [8, 10]],
    )
    .expect("frozen table")
}

/// The 3-cube graph: bottom square 0..4, top square 4..8, verticals in
/// between, drawn with the top square nested inside the bottom.
pub fn cube_graph() -> RotationGraph {
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
            [0, 5],
            [3, 8],
            [6, 11],
            [9, 2],
            [12, 16],
            [15, 19],
            [18, 22],
            [21, 13],
            [1, 14],
            [4, 17],
            [7, 20],
            [10, 23],
        ],
    )
    .expect("frozen table")
}

/// Four vertices, two double edges: vertices 0,1 are joined by a double
/// edge, as are 2,3; single edges join 0-2 and 1-3. The two 2-gons are the
/// facets of the double edges; the other two facets are squares.
pub fn bundle_graph() -> RotationGraph {
    build_rotation_graph(
        4,
        &[[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]],
        &[[0, 6], [3, 9], [2, 4], [1, 5], [8, 10], [7, 11]],
    )
    .expect("frozen table")
}

/// The torus graph of the 6-sphere: the theta graph with the given basis
/// as labels at both endpoints (edge labels equal) and signs `(+1, -1)`.
/// Fails if the covectors are not a unimodular basis.
pub fn six_sphere(basis: [LatticeCovector; 3]) -> std::result::Result<TorusGraph, ValidationError> {
    let [a, b, c] = basis;
    // Dart layout: 0,1,2 at vertex 0; the involution (0 3)(1 5)(2 4) places
    // the same labels at vertex 1 in slots (a, c, b).
    let axial = vec![a.clone(), b.clone(), c.clone(), a, c, b];
    let tg = TorusGraph::new(theta_graph(), axial, Some(vec![1, -1]))?;
    tg.validate()?;
    Ok(tg)
}

/// Facet vectors of the simplex graph in canonical facet order.
fn simplex_characteristic() -> CharacteristicData {
    CharacteristicData::new(vec![
        LatticeVector::new([0, 1, 0]),
        LatticeVector::new([0, 0, 1]),
        LatticeVector::new([1, 0, 0]),
        LatticeVector::new([-1, -1, -1]),
    ])
}

/// The simplex torus graph: tetrahedral graph, facet vectors the standard
/// basis plus the negated sum, all signs `+1`. The labels at vertex 0 are
/// the standard dual basis.
pub fn simplex() -> TorusGraph {
    from_characteristic(&simplex_graph(), &simplex_characteristic())
        .expect("frozen data")
        .with_sigma(vec![1; 4])
        .expect("frozen data")
}

/// The simplex torus graph with all signs `-1` (the conjugate orientation).
pub fn simplex_conjugate() -> TorusGraph {
    simplex().with_sigma(vec![-1; 4]).expect("frozen data")
}

/// A simplex-shaped torus graph with prescribed labels at vertex 0 (in
/// slot order: the darts toward vertices 1, 2, 3) and the given uniform
/// sign. The fourth facet vector is chosen as the negated sum of the other
/// three, which keeps every vertex unimodular and makes all edge labels
/// opposite, so a constant sign is always consistent.
pub fn simplex_with(
    junction: [LatticeCovector; 3],
    sign: i8,
) -> std::result::Result<TorusGraph, ValidationError> {
    let [c0, c1, c2] = junction;
    // Facet vectors at vertex 0, one per facet there, by the corner duality.
    let fa = solve_dual_cov(&c0, &c2, &c1)?;
    let fb = solve_dual_cov(&c1, &c0, &c2)?;
    let fc = solve_dual_cov(&c2, &c1, &c0)?;
    let fd = -&(&(&fa + &fb) + &fc);
    let lam = CharacteristicData::new(vec![fa, fb, fc, fd]);
    let tg = from_characteristic(&simplex_graph(), &lam)?;
    debug_assert_eq!(tg.axial(crate::graph::Dart(0)), &c0);
    let mut sigma = synthesize_sigma(&tg)?;
    if sigma[0] != sign {
        for s in &mut sigma {
            *s = -*s;
        }
    }
    tg.with_sigma(sigma)
}

/// Facet vectors of [`sphere_bundle`] in canonical facet order, derived
/// from the two squares and two 2-gons of the bundle graph. This is the
/// independent cross-check for label recovery on the bundle family.
pub fn sphere_bundle_characteristic(eps: i8, a: &BigInt, b: &BigInt) -> CharacteristicData {
    assert!(eps == 1 || eps == -1, "eps must be +1 or -1");
    let e = BigInt::from(eps);
    CharacteristicData::new(vec![
        LatticeVector::new([0, 0, 1]),
        LatticeVector::new([0, 1, 0]),
        LatticeVector::new([1, 0, 0]),
        LatticeVector([e.clone(), -(&e * a), -(&e * b)]),
    ])
}

/// The two-double-edge torus graph with parameters `(eps, a, b)`:
/// vertices 0, 1 carry the standard dual basis, vertices 2, 3 carry
/// `eps*x1, a*x1 + x2, b*x1 + x3`, signs `(+1, -1, -eps, +eps)`.
pub fn sphere_bundle(eps: i8, a: &BigInt, b: &BigInt) -> TorusGraph {
    assert!(eps == 1 || eps == -1, "eps must be +1 or -1");
    let al = LatticeCovector::new([1, 0, 0]);
    let be = LatticeCovector::new([0, 1, 0]);
    let ga = LatticeCovector::new([0, 0, 1]);
    let ea = al.scale(&BigInt::from(eps));
    let ab = LatticeCovector([a.clone(), 1.into(), 0.into()]);
    let bg = LatticeCovector([b.clone(), 0.into(), 1.into()]);
    // Slot layout per vertex: (single edge, one double strand, the other).
    let axial = vec![
        al.clone(),
        ga.clone(),
        be.clone(),
        al,
        be,
        ga,
        ea.clone(),
        ab.clone(),
        bg.clone(),
        ea,
        bg,
        ab,
    ];
    TorusGraph::new(bundle_graph(), axial, Some(vec![1, -1, -eps, eps])).expect("frozen layout")
}

/// The 3-cube with the labels of a product of three 2-spheres: opposite
/// facets carry opposite vectors, all signs `+1`.
pub fn cube_product() -> TorusGraph {
    let lam = CharacteristicData::new(vec![
        LatticeVector::new([0, 0, 1]),
        LatticeVector::new([0, 1, 0]),
        LatticeVector::new([1, 0, 0]),
        LatticeVector::new([-1, 0, 0]),
        LatticeVector::new([0, -1, 0]),
        LatticeVector::new([0, 0, -1]),
    ]);
    from_characteristic(&cube_graph(), &lam)
        .expect("frozen data")
        .with_sigma(vec![1; 8])
        .expect("frozen data")
}

/// The standard three-piece composite: a simplex summed onto one end of the
/// trivial sphere bundle, a conjugate simplex onto the other. Eight
/// vertices, one double edge, not 3-connected.
pub fn figure_example() -> TorusGraph {
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    let bundle = sphere_bundle(1, &zero, &zero);
    let _ = one;
    // Vertex 0 of the simplex carries the standard dual basis with sign +1;
    // vertex 1 of the bundle carries the same labels with sign -1.
    let (sum1, _) =
        connected_sum(&simplex(), &bundle, &SumSite { left: Vertex(0), right: Vertex(1) })
            .expect("admissible by construction");
    // Vertex 0 of the bundle (standard labels, sign +1) survives as vertex 3
    // of the first sum; glue the conjugate simplex (sign -1 at vertex 0).
    let (sum2, _) =
        connected_sum(&sum1, &simplex_conjugate(), &SumSite { left: Vertex(3), right: Vertex(0) })
            .expect("admissible by construction");
    sum2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Dart;
    use crate::lattice::{mat_from_cov_columns, Mat3};
    use crate::torus::{find_isomorphism, is_equivalent, recover_characteristic, EquivalenceMode};

    fn cv(c: [i64; 3]) -> LatticeCovector {
        LatticeCovector::new(c)
    }

    fn std_basis_cov() -> [LatticeCovector; 3] {
        [cv([1, 0, 0]), cv([0, 1, 0]), cv([0, 0, 1])]
    }

    fn label_set(tg: &TorusGraph, v: Vertex) -> Vec<LatticeCovector> {
        let mut ls: Vec<_> =
            tg.graph().darts_at(v).into_iter().map(|d| tg.axial(d).clone()).collect();
        ls.sort_by_key(|c| c.coords().to_vec());
        ls
    }

    #[test]
    fn graph_tables_have_frozen_shapes() {
        assert_eq!(theta_graph().facets().len(), 3);
        assert_eq!(simplex_graph().facets().len(), 4);
        assert_eq!(cube_graph().facets().len(), 6);
        let bg = bundle_graph();
        let mut sizes: Vec<usize> = bg.facets().iter().map(|f| f.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 4, 4]);
        bg.validate_nice().unwrap();
        assert!(!bg.is_simple());
        assert!(!bg.is_k_connected(3));
    }

    #[test]
    fn six_sphere_standard_is_valid() {
        let tg = six_sphere(std_basis_cov()).unwrap();
        tg.validate().unwrap();
        assert_eq!(tg.sigma(), Some(&[1i8, -1][..]));
        // A dependent triple is rejected.
        assert!(six_sphere([cv([1, 0, 0]), cv([0, 1, 0]), cv([1, 1, 0])]).is_err());
    }

    #[test]
    fn simplex_has_frozen_vertex_labels() {
        let tg = simplex();
        tg.validate().unwrap();
        assert_eq!(label_set(&tg, Vertex(0)), vec![cv([0, 0, 1]), cv([0, 1, 0]), cv([1, 0, 0])]);
        assert_eq!(label_set(&tg, Vertex(1)), vec![cv([-1, 0, 0]), cv([-1, 0, 1]), cv([-1, 1, 0])]);
        assert_eq!(label_set(&tg, Vertex(2)), vec![cv([0, -1, 0]), cv([0, -1, 1]), cv([1, -1, 0])]);
        assert_eq!(label_set(&tg, Vertex(3)), vec![cv([0, 0, -1]), cv([0, 1, -1]), cv([1, 0, -1])]);
        simplex_conjugate().validate().unwrap();
        // Round trip through the facet vectors.
        assert_eq!(recover_characteristic(&tg).unwrap(), simplex_characteristic());
    }

    #[test]
    fn simplex_with_standard_junction_reproduces_simplex() {
        let tg = simplex_with(std_basis_cov(), 1).unwrap();
        assert_eq!(tg, simplex());
        let conj = simplex_with(std_basis_cov(), -1).unwrap();
        assert_eq!(conj, simplex_conjugate());
        // An arbitrary unimodular junction validates and keeps its labels.
        let junction = [cv([1, 2, 0]), cv([0, 1, 3]), cv([1, 3, 4])];
        let tg = simplex_with(junction.clone(), -1).unwrap();
        tg.validate().unwrap();
        for (slot, want) in junction.iter().enumerate() {
            assert_eq!(tg.axial(Dart(slot)), want);
        }
        assert_eq!(tg.sigma(), Some(&[-1i8; 4][..]));
    }

    #[test]
    fn sphere_bundle_validates_and_recovers_its_facet_vectors() {
        for eps in [1i8, -1] {
            for (a, b) in [(0, 0), (1, 0), (2, 3), (-1, 4), (-3, -5)] {
                let (a, b) = (BigInt::from(a), BigInt::from(b));
                let tg = sphere_bundle(eps, &a, &b);
                tg.validate().unwrap();
                assert_eq!(
                    recover_characteristic(&tg).unwrap(),
                    sphere_bundle_characteristic(eps, &a, &b),
                    "eps={eps} a={a} b={b}"
                );
            }
        }
        // Frozen labels at the far double pair for (1, 2, 3).
        let tg = sphere_bundle(1, &BigInt::from(2), &BigInt::from(3));
        assert_eq!(label_set(&tg, Vertex(2)), vec![cv([1, 0, 0]), cv([2, 1, 0]), cv([3, 0, 1])]);
        assert_eq!(tg.sigma(), Some(&[1i8, -1, -1, 1][..]));
    }

    #[test]
    fn sphere_bundle_twist_carries_junction_labels() {
        // Twisting by the matrix with the junction labels as columns moves
        // the standard basis at vertices 0, 1 onto the junction labels.
        let junction = [cv([1, 0, 1]), cv([0, 1, 1]), cv([1, 1, 1])];
        let m: Mat3 = mat_from_cov_columns([&junction[0], &junction[1], &junction[2]]);
        let tg = sphere_bundle(-1, &BigInt::from(2), &BigInt::from(-1)).twist(&m);
        tg.validate().unwrap();
        let mut want = junction.to_vec();
        want.sort_by_key(|c| c.coords().to_vec());
        assert_eq!(label_set(&tg, Vertex(0)), want);
        assert_eq!(label_set(&tg, Vertex(1)), want);
    }

    #[test]
    fn cube_product_is_three_connected_and_valid() {
        let tg = cube_product();
        tg.validate().unwrap();
        assert!(tg.graph().is_simple());
        assert!(tg.graph().is_k_connected(3));
        assert_eq!(tg.graph().vertex_count(), 8);
    }

    #[test]
    fn figure_example_shape() {
        let tg = figure_example();
        tg.validate().unwrap();
        let g = tg.graph();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 12);
        assert!(!g.is_simple());
        // Exactly one double edge survives from the middle bundle piece,
        // so exactly two edges see a parallel partner.
        let mut doubled = 0;
        for e in 0..g.edge_count() {
            let (p, q) = g.edge_endpoints(crate::graph::EdgeId(e));
            let same: Vec<_> = (0..g.edge_count())
                .filter(|&f| {
                    let (r, s) = g.edge_endpoints(crate::graph::EdgeId(f));
                    (r, s) == (p, q) || (r, s) == (q, p)
                })
                .collect();
            if same.len() == 2 {
                doubled += 1;
            }
        }
        assert_eq!(doubled, 2);
        assert!(!g.is_k_connected(3));
        assert!(g.is_k_connected(2));
    }

    #[test]
    fn basic_families_are_pairwise_inequivalent() {
        let s6 = six_sphere(std_basis_cov()).unwrap();
        let sx = simplex();
        let sb = sphere_bundle(1, &BigInt::from(0), &BigInt::from(0));
        assert!(find_isomorphism(&s6, &sx).is_none());
        assert!(find_isomorphism(&sx, &sb).is_none());
        assert!(is_equivalent(&sx, &sx, EquivalenceMode::Exact));
        assert!(is_equivalent(&sb, &sb, EquivalenceMode::Lifts));
    }
}

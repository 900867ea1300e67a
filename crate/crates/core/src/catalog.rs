//! Exhaustive generation of small sphere maps.
//!
//! Test corpora and exhaustive oracles need every connected 3-valent sphere
//! map with a given vertex count, one representative per isomorphism class
//! (mirror images identified). Maps are generated inductively: every map on
//! V vertices either contains an edge whose removal-and-smoothing yields a
//! map on V-2 vertices, or it has no such edge, in which case every non-loop
//! edge is a bridge or touches a looped vertex and the map is a tree of
//! degree-3 vertices with looped leaves. The induction therefore runs chord
//! insertions over all maps on V-2 vertices and unions in the looped trees,
//! deduplicating by a canonical code.
//!
//! Intermediate maps carry loops and bridges and are never nice; they are
//! still required, because smoothing can create a loop out of a doubled
//! edge. [`nice_maps`] filters the survivors.

use crate::graph::RotationGraph;

/// A map as a bare opposite table over canonical darts: dart `3v + j` sits
/// at vertex `v`, and the rotation is `j -> j+1 (mod 3)` within the vertex.
type Opp = Vec<usize>;

fn rot_next(d: usize) -> usize {
    3 * (d / 3) + (d % 3 + 1) % 3
}

fn rot_prev(d: usize) -> usize {
    3 * (d / 3) + (d % 3 + 2) % 3
}

/// Connectivity plus the Euler check, on the bare table.
fn is_spherical(opp: &[usize]) -> bool {
    let n = opp.len();
    // Darts are connected under rotation and edge moves exactly when the
    // graph is connected.
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut visited = 1;
    while let Some(d) = stack.pop() {
        for nb in [rot_next(d), opp[d]] {
            if !seen[nb] {
                seen[nb] = true;
                visited += 1;
                stack.push(nb);
            }
        }
    }
    if visited != n {
        return false;
    }
    // Count face orbits of d -> rot(opp(d)).
    let mut face_of = vec![usize::MAX; n];
    let mut faces = 0usize;
    for start in 0..n {
        if face_of[start] != usize::MAX {
            continue;
        }
        faces += 1;
        let mut d = start;
        while face_of[d] == usize::MAX {
            face_of[d] = faces;
            d = rot_next(opp[d]);
        }
    }
    let v = (n / 3) as i64;
    let e = (n / 2) as i64;
    v - e + faces as i64 == 2
}

/// Canonical code of a map: breadth-first dart relabeling from every start
/// dart in both chiralities, the lexicographically smallest transcript wins.
/// Two tables get the same code exactly when the maps are isomorphic, up to
/// mirror image.
fn canonical_code(opp: &[usize]) -> Vec<u32> {
    let n = opp.len();
    let mut best: Option<Vec<u32>> = None;
    let mut newid = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    for mirror in [false, true] {
        let step = |d: usize| if mirror { rot_prev(d) } else { rot_next(d) };
        for start in 0..n {
            newid.iter_mut().for_each(|x| *x = usize::MAX);
            order.clear();
            newid[start] = 0;
            order.push(start);
            let mut code = Vec::with_capacity(2 * n);
            let mut i = 0;
            while i < order.len() {
                let d = order[i];
                for nb in [step(d), opp[d]] {
                    if newid[nb] == usize::MAX {
                        newid[nb] = order.len();
                        order.push(nb);
                    }
                }
                code.push(newid[step(d)] as u32);
                code.push(newid[opp[d]] as u32);
                i += 1;
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.expect("maps have at least one dart")
}

/// All maps obtained from `parent` by subdividing two edge sides on a common
/// face and joining the new vertices by a chord across it. Spherical results
/// only; duplicates are left to the caller's dedup.
fn chord_insertions(parent: &[usize]) -> Vec<Opp> {
    let n = parent.len();
    let u0 = n; // first dart of the first new vertex
    let v0 = n + 3;

    // Face walks, to restrict chord endpoints to a common face.
    let mut face_of = vec![usize::MAX; n];
    let mut walks: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if face_of[start] != usize::MAX {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        while face_of[d] == usize::MAX {
            face_of[d] = walks.len();
            walk.push(d);
            d = rot_next(parent[d]);
        }
        walks.push(walk);
    }

    let mut out = Vec::new();
    for walk in &walks {
        for i in 0..walk.len() {
            for j in i..walk.len() {
                let (d1, d2) = (walk[i], walk[j]);
                let o1 = parent[d1];
                let o2 = parent[d2];
                // Two slot assignments per new vertex sweep both cyclic
                // orders; the sphere filter rejects combinations that would
                // put the chord on the wrong side.
                for su in 0..2usize {
                    for sv in 0..2usize {
                        let slot = |base: usize, s: usize, k: usize| {
                            base + if s == 0 { k } else { [0, 2, 1][k] }
                        };
                        let ua = slot(u0, su, 0);
                        let ub = slot(u0, su, 1);
                        let uc = slot(u0, su, 2);
                        let va = slot(v0, sv, 0);
                        let vb = slot(v0, sv, 1);
                        let vc = slot(v0, sv, 2);
                        let mut opp = vec![usize::MAX; n + 6];
                        opp[..n].copy_from_slice(parent);
                        let pair = |opp: &mut Vec<usize>, a: usize, b: usize| {
                            opp[a] = b;
                            opp[b] = a;
                        };
                        if d1 == d2 {
                            // Both points on one edge side: a - u - v - b.
                            pair(&mut opp, d1, ua);
                            pair(&mut opp, ub, va);
                            pair(&mut opp, vb, o1);
                        } else if d2 == o1 {
                            // Points on the two sides of one edge.
                            pair(&mut opp, d1, ua);
                            pair(&mut opp, ub, vb);
                            pair(&mut opp, va, d2);
                        } else {
                            pair(&mut opp, d1, ua);
                            pair(&mut opp, ub, o1);
                            pair(&mut opp, va, d2);
                            pair(&mut opp, vb, o2);
                        }
                        pair(&mut opp, uc, vc);
                        if is_spherical(&opp) {
                            out.push(opp);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The maps with no removable chord: trees whose internal vertices have
/// degree 3, with a loop at every leaf. `vertices` must be even and >= 4.
fn looped_trees(vertices: usize) -> Vec<Opp> {
    let internal = (vertices - 2) / 2;
    let mut out = Vec::new();
    // Trees on `internal` vertices, as parent pointers; up to isomorphism
    // every tree has such an increasing labeling, and the canonical dedup
    // downstream absorbs relabelings.
    let mut parents = vec![0usize; internal];
    enumerate_trees(&mut parents, 1, &mut |tree| {
        let mut degree = vec![0usize; internal];
        for (child, &p) in tree.iter().enumerate().skip(1) {
            degree[child] += 1;
            degree[p] += 1;
        }
        if degree.iter().any(|&d| d > 3) {
            return;
        }
        // Logical edges: tree edges, then a stem and a loop per leaf.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (child, &p) in tree.iter().enumerate().skip(1) {
            edges.push((child, p));
        }
        let mut next_leaf = internal;
        let mut loops: Vec<(usize, usize)> = Vec::new();
        for (i, &d) in degree.iter().enumerate() {
            for _ in d..3 {
                edges.push((i, next_leaf));
                loops.push((next_leaf, next_leaf));
                next_leaf += 1;
            }
        }
        debug_assert_eq!(next_leaf, vertices);
        // Ports: each vertex's incident edge ends, in construction order.
        let mut ports: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices];
        for (idx, &(a, b)) in edges.iter().enumerate() {
            ports[a].push((idx, 0));
            ports[b].push((idx, 1));
        }
        for (idx, &(a, _)) in loops.iter().enumerate() {
            ports[a].push((edges.len() + idx, 0));
            ports[a].push((edges.len() + idx, 1));
        }
        debug_assert!(ports.iter().all(|p| p.len() == 3));
        // Every combination of the two cyclic orders per vertex.
        for mask in 0..(1usize << vertices) {
            let mut dart_of_end = vec![[usize::MAX; 2]; edges.len() + loops.len()];
            for (v, port) in ports.iter().enumerate() {
                for (k, &(e, end)) in port.iter().enumerate() {
                    let s = if mask >> v & 1 == 0 { k } else { [0, 2, 1][k] };
                    dart_of_end[e][end] = 3 * v + s;
                }
            }
            let mut opp = vec![usize::MAX; 3 * vertices];
            for [a, b] in dart_of_end {
                opp[a] = b;
                opp[b] = a;
            }
            if is_spherical(&opp) {
                out.push(opp);
            }
        }
    });
    out
}

fn enumerate_trees(parents: &mut Vec<usize>, at: usize, emit: &mut impl FnMut(&[usize])) {
    if at == parents.len() {
        emit(parents);
        return;
    }
    for p in 0..at {
        parents[at] = p;
        enumerate_trees(parents, at + 1, emit);
    }
}

fn theta_table() -> Opp {
    vec![3, 5, 4, 0, 2, 1]
}

fn dumbbell_table() -> Opp {
    vec![3, 2, 1, 0, 5, 4]
}

/// All connected 3-valent sphere maps with exactly `vertices` vertices, one
/// per isomorphism class with mirror images identified, in a deterministic
/// order. `vertices` must be even and at least 2.
pub fn sphere_maps(vertices: usize) -> Vec<RotationGraph> {
    assert!(vertices >= 2 && vertices % 2 == 0, "sphere maps need an even vertex count >= 2");
    let mut layer: Vec<(Vec<u32>, Opp)> = vec![
        (canonical_code(&theta_table()), theta_table()),
        (canonical_code(&dumbbell_table()), dumbbell_table()),
    ];
    layer.sort();
    let mut v = 2;
    while v < vertices {
        v += 2;
        let mut next: std::collections::BTreeMap<Vec<u32>, Opp> = std::collections::BTreeMap::new();
        for (_, parent) in &layer {
            for cand in chord_insertions(parent) {
                next.entry(canonical_code(&cand)).or_insert(cand);
            }
        }
        for cand in looped_trees(v) {
            next.entry(canonical_code(&cand)).or_insert(cand);
        }
        layer = next.into_iter().collect();
    }
    layer
        .into_iter()
        .map(|(_, opp)| {
            RotationGraph::from_opposite(opp).expect("generated maps are connected sphere maps")
        })
        .collect()
}

/// The nice maps with exactly `vertices` vertices: [`sphere_maps`] filtered
/// by the facet conditions. Everything with a bridge or a loop drops out.
pub fn nice_maps(vertices: usize) -> Vec<RotationGraph> {
    sphere_maps(vertices).into_iter().filter(|g| g.is_nice()).collect()
}

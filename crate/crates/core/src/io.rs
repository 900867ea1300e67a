//! JSON and DOT serialization.
//!
//! One JSON document per file, UTF-8. Integers are unbounded: a coordinate
//! within `i64` is written as a JSON number, anything larger as a decimal
//! string, and both forms are accepted on input. Serialization always emits
//! canonical dart identifiers (`3v + slot`), so parse(serialize(x)) = x;
//! parsing accepts arbitrary identifiers and canonicalizes them. DOT output
//! is a drawing aid only and is never re-imported.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::classify::{DecompositionTree, Leaf, LeafKind};
use crate::error::{ParseError, Result};
use crate::graph::{build_rotation_graph, EdgeId, RotationGraph, Vertex};
use crate::lattice::{LatticeCovector, LatticeVector};
use crate::surgery::GluingRecord;
use crate::torus::{CharacteristicData, TorusGraph};

/// An integer in a JSON document: a number while it fits `i64`, a decimal
/// string beyond that.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum JsonInt {
    /// Fits in an `i64`, written as a JSON number.
    Small(i64),
    /// Written as a decimal string.
    Big(String),
}

impl JsonInt {
    /// Encode, preferring the numeric form.
    pub fn encode(x: &BigInt) -> JsonInt {
        match x.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(x.to_string()),
        }
    }

    /// Decode either form.
    pub fn decode(&self) -> std::result::Result<BigInt, ParseError> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s
                .parse::<BigInt>()
                .map_err(|e| ParseError::Schema(format!("invalid integer literal {s:?}: {e}"))),
        }
    }
}

fn cov_doc(c: &LatticeCovector) -> [JsonInt; 3] {
    let [x, y, z] = c.coords();
    [JsonInt::encode(x), JsonInt::encode(y), JsonInt::encode(z)]
}

fn cov_from(doc: &[JsonInt; 3]) -> std::result::Result<LatticeCovector, ParseError> {
    Ok(LatticeCovector([doc[0].decode()?, doc[1].decode()?, doc[2].decode()?]))
}

fn vec_doc(v: &LatticeVector) -> [JsonInt; 3] {
    let [x, y, z] = v.coords();
    [JsonInt::encode(x), JsonInt::encode(y), JsonInt::encode(z)]
}

fn vec_from(doc: &[JsonInt; 3]) -> std::result::Result<LatticeVector, ParseError> {
    Ok(LatticeVector([doc[0].decode()?, doc[1].decode()?, doc[2].decode()?]))
}

/// Document form of a bare embedded graph.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GraphDoc {
    /// Vertex count.
    pub vertices: u64,
    /// Per vertex, its three dart identifiers in rotation order.
    pub rotations: Vec<[u64; 3]>,
    /// Edges as unordered dart pairs.
    pub edges: Vec<[u64; 2]>,
}

impl GraphDoc {
    /// Document for a graph, in canonical dart identifiers.
    pub fn of(g: &RotationGraph) -> GraphDoc {
        GraphDoc {
            vertices: g.vertex_count() as u64,
            rotations: g.vertices().map(|v| g.darts_at(v).map(|d| d.0 as u64)).collect(),
            edges: g.edges().iter().map(|&(a, b)| [a.0 as u64, b.0 as u64]).collect(),
        }
    }

    /// Build and structurally validate the graph.
    pub fn build(&self) -> Result<RotationGraph> {
        build_rotation_graph(self.vertices as usize, &self.rotations, &self.edges)
    }

    /// The canonical dart for each identifier used by this document.
    fn canonical_ids(&self) -> BTreeMap<u64, usize> {
        let mut map = BTreeMap::new();
        for (v, row) in self.rotations.iter().enumerate() {
            for (j, &id) in row.iter().enumerate() {
                map.insert(id, 3 * v + j);
            }
        }
        map
    }
}

/// Document form of a torus graph: the graph schema plus the labels and
/// optional vertex signs, both keyed by identifier.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TorusDoc {
    /// Vertex count.
    pub vertices: u64,
    /// Per vertex, its three dart identifiers in rotation order.
    pub rotations: Vec<[u64; 3]>,
    /// Edges as unordered dart pairs.
    pub edges: Vec<[u64; 2]>,
    /// Label of each dart.
    pub axial: BTreeMap<u64, [JsonInt; 3]>,
    /// Vertex signs, if the graph is oriented.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<BTreeMap<u64, i8>>,
}

impl TorusDoc {
    /// Document for a torus graph, in canonical dart identifiers.
    pub fn of(tg: &TorusGraph) -> TorusDoc {
        let g = tg.graph();
        let graph = GraphDoc::of(g);
        let axial = g.darts().map(|d| (d.0 as u64, cov_doc(tg.axial(d)))).collect();
        let sigma = tg.sigma().map(|s| s.iter().enumerate().map(|(v, &x)| (v as u64, x)).collect());
        TorusDoc {
            vertices: graph.vertices,
            rotations: graph.rotations,
            edges: graph.edges,
            axial,
            sigma,
        }
    }

    /// Assemble the torus graph. Structural graph checks run here; the
    /// axioms are left to [`TorusGraph::validate`].
    pub fn build(&self) -> Result<TorusGraph> {
        let graph_doc = GraphDoc {
            vertices: self.vertices,
            rotations: self.rotations.clone(),
            edges: self.edges.clone(),
        };
        let g = graph_doc.build()?;
        let canon = graph_doc.canonical_ids();
        let mut axial: Vec<Option<LatticeCovector>> = vec![None; g.dart_count()];
        for (id, coords) in &self.axial {
            let &d = canon
                .get(id)
                .ok_or_else(|| ParseError::Schema(format!("axial entry for unknown dart {id}")))?;
            axial[d] = Some(cov_from(coords)?);
        }
        let axial: Vec<LatticeCovector> = axial
            .into_iter()
            .enumerate()
            .map(|(d, c)| {
                c.ok_or_else(|| {
                    ParseError::Schema(format!("axial table misses the dart in slot {d}"))
                })
            })
            .collect::<std::result::Result<_, _>>()?;
        let sigma = match &self.sigma {
            None => None,
            Some(map) => {
                let mut s = vec![0i8; g.vertex_count()];
                for (v, &x) in map {
                    let v = *v as usize;
                    if v >= s.len() {
                        return Err(ParseError::Schema(format!(
                            "sigma entry for unknown vertex {v}"
                        ))
                        .into());
                    }
                    s[v] = x;
                }
                if let Some(v) = s.iter().position(|&x| x == 0) {
                    return Err(ParseError::Schema(format!("sigma misses vertex {v}")).into());
                }
                Some(s)
            }
        };
        Ok(TorusGraph::new(g, axial, sigma)?)
    }
}

/// Document form of a characteristic assignment, one vector per facet in
/// facet order.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CharacteristicDoc {
    /// Facet vectors.
    pub assignment: Vec<[JsonInt; 3]>,
}

impl CharacteristicDoc {
    /// Document for an assignment.
    pub fn of(c: &CharacteristicData) -> CharacteristicDoc {
        CharacteristicDoc { assignment: c.values().iter().map(vec_doc).collect() }
    }

    /// Decode the vectors.
    pub fn build(&self) -> Result<CharacteristicData> {
        let values =
            self.assignment.iter().map(vec_from).collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CharacteristicData::new(values))
    }
}

/// Document form of a gluing record.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RecordDoc {
    /// The three crossing edges in the joined graph.
    pub joint_edges: [u64; 3],
    /// Per joint edge, its label read from each side.
    pub joint_labels: [[[JsonInt; 3]; 2]; 3],
    /// Cap vertex of the left piece.
    pub left_cap: u64,
    /// Left cap labels toward the joints.
    pub left_cap_labels: [[JsonInt; 3]; 3],
    /// Left cap sign.
    pub left_cap_sigma: i8,
    /// Cap vertex of the right piece.
    pub right_cap: u64,
    /// Right cap labels toward the joints.
    pub right_cap_labels: [[JsonInt; 3]; 3],
    /// Right cap sign.
    pub right_cap_sigma: i8,
}

impl RecordDoc {
    /// Document for a record.
    pub fn of(r: &GluingRecord) -> RecordDoc {
        RecordDoc {
            joint_edges: r.joint_edges.map(|e| e.0 as u64),
            joint_labels: [0, 1, 2].map(|i| {
                let (l, r) = &r.joint_labels[i];
                [cov_doc(l), cov_doc(r)]
            }),
            left_cap: r.left_cap.0 as u64,
            left_cap_labels: [0, 1, 2].map(|i| cov_doc(&r.left_cap_labels[i])),
            left_cap_sigma: r.left_cap_sigma,
            right_cap: r.right_cap.0 as u64,
            right_cap_labels: [0, 1, 2].map(|i| cov_doc(&r.right_cap_labels[i])),
            right_cap_sigma: r.right_cap_sigma,
        }
    }

    /// Decode the record.
    pub fn build(&self) -> Result<GluingRecord> {
        let joint_labels = [0, 1, 2].map(|i| {
            let [l, r] = &self.joint_labels[i];
            (cov_from(l), cov_from(r))
        });
        let mut labels = Vec::new();
        for (l, r) in joint_labels {
            labels.push((l?, r?));
        }
        let left_cap_labels = [
            cov_from(&self.left_cap_labels[0])?,
            cov_from(&self.left_cap_labels[1])?,
            cov_from(&self.left_cap_labels[2])?,
        ];
        let right_cap_labels = [
            cov_from(&self.right_cap_labels[0])?,
            cov_from(&self.right_cap_labels[1])?,
            cov_from(&self.right_cap_labels[2])?,
        ];
        Ok(GluingRecord {
            joint_edges: self.joint_edges.map(|e| EdgeId(e as usize)),
            joint_labels: labels.try_into().expect("three joint labels"),
            left_cap: Vertex(self.left_cap as usize),
            left_cap_labels,
            left_cap_sigma: self.left_cap_sigma,
            right_cap: Vertex(self.right_cap as usize),
            right_cap_labels,
            right_cap_sigma: self.right_cap_sigma,
        })
    }
}

/// Leaf parameters, shape-dependent.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum ParamsDoc {
    /// Two-vertex leaf: the label basis at vertex 0.
    S6 {
        /// The three covectors in slot order.
        basis: [[JsonInt; 3]; 3],
    },
    /// Bundle leaf normal form.
    SB {
        /// Sign parameter.
        eps: i8,
        /// First twist coefficient.
        a: JsonInt,
        /// Second twist coefficient.
        b: JsonInt,
    },
}

/// Document form of a decomposition tree.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub enum TreeDoc {
    /// A certified basic piece.
    #[serde(rename = "leaf")]
    Leaf {
        /// Leaf kind name: "S6", "Simplex", "SB", or "QT".
        kind: String,
        /// Kind-specific parameters, when any.
        #[serde(skip_serializing_if = "Option::is_none")]
        params: Option<ParamsDoc>,
        /// The piece itself.
        witness: TorusDoc,
    },
    /// An undone connected sum.
    #[serde(rename = "node")]
    Node {
        /// How the two pieces glue back together.
        record: RecordDoc,
        /// For each left-piece vertex, its vertex in the graph at this node.
        left_sources: Vec<u64>,
        /// Likewise for the right piece.
        right_sources: Vec<u64>,
        /// Left subtree.
        left: Box<TreeDoc>,
        /// Right subtree.
        right: Box<TreeDoc>,
    },
}

impl TreeDoc {
    /// Document for a tree.
    pub fn of(tree: &DecompositionTree) -> TreeDoc {
        match tree {
            DecompositionTree::Leaf(leaf) => {
                let params = match &leaf.kind {
                    LeafKind::S6 { basis } => {
                        Some(ParamsDoc::S6 { basis: [0, 1, 2].map(|i| cov_doc(&basis[i])) })
                    }
                    LeafKind::SB { eps, a, b } => Some(ParamsDoc::SB {
                        eps: *eps,
                        a: JsonInt::encode(a),
                        b: JsonInt::encode(b),
                    }),
                    LeafKind::Simplex | LeafKind::QT => None,
                };
                TreeDoc::Leaf {
                    kind: leaf.kind.name().to_string(),
                    params,
                    witness: TorusDoc::of(&leaf.witness),
                }
            }
            DecompositionTree::Node { record, left_sources, right_sources, left, right } => {
                TreeDoc::Node {
                    record: RecordDoc::of(record),
                    left_sources: left_sources.iter().map(|v| v.0 as u64).collect(),
                    right_sources: right_sources.iter().map(|v| v.0 as u64).collect(),
                    left: Box::new(TreeDoc::of(left)),
                    right: Box::new(TreeDoc::of(right)),
                }
            }
        }
    }

    /// Decode the tree.
    pub fn build(&self) -> Result<DecompositionTree> {
        match self {
            TreeDoc::Leaf { kind, params, witness } => {
                let witness = witness.build()?;
                let kind = match (kind.as_str(), params) {
                    ("S6", Some(ParamsDoc::S6 { basis })) => {
                        let decoded =
                            [cov_from(&basis[0])?, cov_from(&basis[1])?, cov_from(&basis[2])?];
                        LeafKind::S6 { basis: decoded }
                    }
                    ("SB", Some(ParamsDoc::SB { eps, a, b })) => {
                        LeafKind::SB { eps: *eps, a: a.decode()?, b: b.decode()? }
                    }
                    ("Simplex", None) => LeafKind::Simplex,
                    ("QT", None) => LeafKind::QT,
                    (other, _) => {
                        return Err(ParseError::Schema(format!(
                            "leaf kind {other:?} does not match its parameters"
                        ))
                        .into())
                    }
                };
                Ok(DecompositionTree::Leaf(Leaf { kind, witness }))
            }
            TreeDoc::Node { record, left_sources, right_sources, left, right } => {
                Ok(DecompositionTree::Node {
                    record: record.build()?,
                    left_sources: left_sources.iter().map(|&v| Vertex(v as usize)).collect(),
                    right_sources: right_sources.iter().map(|&v| Vertex(v as usize)).collect(),
                    left: Box::new(left.build()?),
                    right: Box::new(right.build()?),
                })
            }
        }
    }
}

/// Serialize a bare graph.
pub fn graph_to_json(g: &RotationGraph) -> String {
    serde_json::to_string_pretty(&GraphDoc::of(g)).expect("graph documents always serialize")
}

/// Parse a bare graph.
pub fn graph_from_json(s: &str) -> Result<RotationGraph> {
    let doc: GraphDoc = serde_json::from_str(s).map_err(ParseError::from)?;
    doc.build()
}

/// Serialize a torus graph.
pub fn torus_to_json(tg: &TorusGraph) -> String {
    serde_json::to_string_pretty(&TorusDoc::of(tg)).expect("torus documents always serialize")
}

/// Parse a torus graph.
pub fn torus_from_json(s: &str) -> Result<TorusGraph> {
    let doc: TorusDoc = serde_json::from_str(s).map_err(ParseError::from)?;
    doc.build()
}

/// Serialize a characteristic assignment.
pub fn characteristic_to_json(c: &CharacteristicData) -> String {
    serde_json::to_string_pretty(&CharacteristicDoc::of(c)).expect("assignments always serialize")
}

/// Parse a characteristic assignment.
pub fn characteristic_from_json(s: &str) -> Result<CharacteristicData> {
    let doc: CharacteristicDoc = serde_json::from_str(s).map_err(ParseError::from)?;
    doc.build()
}

/// Serialize a decomposition tree.
pub fn tree_to_json(tree: &DecompositionTree) -> String {
    serde_json::to_string_pretty(&TreeDoc::of(tree)).expect("trees always serialize")
}

/// Parse a decomposition tree.
pub fn tree_from_json(s: &str) -> Result<DecompositionTree> {
    let doc: TreeDoc = serde_json::from_str(s).map_err(ParseError::from)?;
    doc.build()
}

/// Either kind of graph document, told apart by the presence of labels.
pub enum AnyGraph {
    /// A bare embedded graph.
    Plain(RotationGraph),
    /// A labeled graph.
    Torus(TorusGraph),
}

/// Parse a graph document of either kind: documents with an "axial" member
/// are torus graphs, the rest are bare graphs.
pub fn any_from_json(s: &str) -> Result<AnyGraph> {
    let value: serde_json::Value = serde_json::from_str(s).map_err(ParseError::from)?;
    if value.get("axial").is_some() {
        let doc: TorusDoc = serde_json::from_value(value).map_err(ParseError::from)?;
        Ok(AnyGraph::Torus(doc.build()?))
    } else {
        let doc: GraphDoc = serde_json::from_value(value).map_err(ParseError::from)?;
        Ok(AnyGraph::Plain(doc.build()?))
    }
}

/// DOT drawing of a bare graph: one arc per edge, labeled by edge index.
pub fn graph_to_dot(g: &RotationGraph) -> String {
    let mut out = String::from("digraph g {\n");
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        out.push_str(&format!(
            "  {} -> {} [label=\"e{}\", dir=none];\n",
            a.vertex().0,
            b.vertex().0,
            i
        ));
    }
    out.push_str("}\n");
    out
}

/// DOT drawing of a torus graph: one arc per dart, labeled "(x,y,z)";
/// vertex signs, when present, decorate the node labels.
pub fn torus_to_dot(tg: &TorusGraph) -> String {
    let g = tg.graph();
    let mut out = String::from("digraph tg {\n");
    for v in g.vertices() {
        match tg.sigma_at(v) {
            Some(s) => out.push_str(&format!(
                "  {} [label=\"{} ({})\"];\n",
                v.0,
                v.0,
                if s > 0 { "+" } else { "-" }
            )),
            None => out.push_str(&format!("  {} [label=\"{}\"];\n", v.0, v.0)),
        }
    }
    for d in g.darts() {
        let [x, y, z] = tg.axial(d).coords();
        out.push_str(&format!(
            "  {} -> {} [label=\"({},{},{})\"];\n",
            d.vertex().0,
            g.head(d).0,
            x,
            y,
            z
        ));
    }
    out.push_str("}\n");
    out
}

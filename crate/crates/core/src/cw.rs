//! Combinatorial two-dimensional CW-complexes.
//!
//! A complex is a set of labelled vertices, oriented edges between them, and
//! faces whose attaching maps are closed edge words. The signed letter counts
//! of a face word are its cellular boundary; nothing finer is modelled.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FgAbelianGroup;
use crate::linalg::{self, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CwError {
    #[error("malformed complex description: {0}")]
    Format(String),
    #[error("duplicate {kind} label {label:?}")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("{cell} refers to unknown {kind} {reference:?}")]
    DanglingReference {
        cell: String,
        kind: &'static str,
        reference: String,
    },
    #[error("complex has no basepoint")]
    MissingBasepoint,
    #[error("attaching word of face {face:?} is not a closed edge loop (breaks after letter {position})")]
    NonClosedWord { face: String, position: usize },
    #[error("1-skeleton is not path-connected: vertex {unreachable:?} is unreachable from the basepoint")]
    Disconnected { unreachable: String },
    #[error("cell {cell:?} has dimension {dim}; only complexes of dimension at most 2 are supported")]
    Dimension { cell: String, dim: u32 },
    #[error("invalid standard space: {0}")]
    InvalidStandard(String),
}

/// Orientation of a letter in an attaching word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn inverse(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One oriented edge occurrence in a word; JSON form `["a", 1]` or `["a", -1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub edge: String,
    pub sign: Sign,
}

impl Letter {
    pub fn new(edge: impl Into<String>, sign: Sign) -> Self {
        Letter {
            edge: edge.into(),
            sign,
        }
    }

    pub fn plus(edge: impl Into<String>) -> Self {
        Self::new(edge, Sign::Plus)
    }

    pub fn minus(edge: impl Into<String>) -> Self {
        Self::new(edge, Sign::Minus)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.edge)?;
        t.serialize_element(&self.sign.as_i64())?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (edge, exponent) = <(String, i64)>::deserialize(deserializer)?;
        let sign = match exponent {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            other => {
                return Err(de::Error::custom(format!(
                    "letter exponent must be +1 or -1, got {other}"
                )))
            }
        };
        Ok(Letter { edge, sign })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Face {
    pub name: String,
    pub word: Vec<Letter>,
}

/// A cell of dimension three or more. Accepted on load only so that it can be
/// rejected with a dimension error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HigherCell {
    pub name: String,
    pub dim: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CwComplex2 {
    pub name: String,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub faces: Vec<Face>,
    #[serde(default)]
    pub basepoint: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub higher_cells: Vec<HigherCell>,
}

/// Summary produced by a successful [`CwComplex2::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub path_connected: bool,
}

/// Cellular boundary maps `C₂ → C₁ → C₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMaps {
    /// `|vertices| × |edges|`
    pub d1: IntMatrix,
    /// `|edges| × |faces|`
    pub d2: IntMatrix,
}

/// Index-resolved view of a complex that passed validation.
struct Resolved {
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<(usize, Sign)>>,
    basepoint: usize,
}

fn label_index<'a>(
    kind: &'static str,
    labels: impl Iterator<Item = &'a String>,
) -> Result<HashMap<&'a str, usize>, CwError> {
    let mut index = HashMap::new();
    for (i, label) in labels.enumerate() {
        if index.insert(label.as_str(), i).is_some() {
            return Err(CwError::DuplicateLabel {
                kind,
                label: label.clone(),
            });
        }
    }
    Ok(index)
}

impl CwComplex2 {
    /// Parses the JSON complex format. Unknown fields are rejected.
    pub fn from_json(text: &str) -> Result<Self, CwError> {
        serde_json::from_str(text).map_err(|e| CwError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }

    fn resolve(&self) -> Result<Resolved, CwError> {
        if let Some(cell) = self.higher_cells.first() {
            if cell.dim <= 2 {
                return Err(CwError::Format(format!(
                    "higher cell {:?} declares dimension {}",
                    cell.name, cell.dim
                )));
            }
            return Err(CwError::Dimension {
                cell: cell.name.clone(),
                dim: cell.dim,
            });
        }

        let vertex_ix = label_index("vertex", self.vertices.iter())?;
        let edge_ix = label_index("edge", self.edges.iter().map(|e| &e.name))?;
        label_index("face", self.faces.iter().map(|f| &f.name))?;

        let vertex = |cell: &str, v: &str| {
            vertex_ix
                .get(v)
                .copied()
                .ok_or_else(|| CwError::DanglingReference {
                    cell: format!("edge {cell:?}"),
                    kind: "vertex",
                    reference: v.to_string(),
                })
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Ok((vertex(&e.name, &e.src)?, vertex(&e.name, &e.dst)?)))
            .collect::<Result<Vec<_>, CwError>>()?;

        let mut faces = Vec::with_capacity(self.faces.len());
        for face in &self.faces {
            let word = face
                .word
                .iter()
                .map(|l| {
                    edge_ix
                        .get(l.edge.as_str())
                        .map(|&e| (e, l.sign))
                        .ok_or_else(|| CwError::DanglingReference {
                            cell: format!("face {:?}", face.name),
                            kind: "edge",
                            reference: l.edge.clone(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            faces.push(word);
        }

        let basepoint = match self.basepoint.as_deref() {
            None | Some("") => return Err(CwError::MissingBasepoint),
            Some(b) => *vertex_ix.get(b).ok_or_else(|| CwError::DanglingReference {
                cell: "basepoint".to_string(),
                kind: "vertex",
                reference: b.to_string(),
            })?,
        };

        for (face, word) in self.faces.iter().zip(&faces) {
            check_closed(&face.name, word, &edges)?;
        }

        let reached = bfs_tree(self.vertices.len(), &edges, basepoint).reached;
        if let Some(v) = reached.iter().position(|r| !r) {
            return Err(CwError::Disconnected {
                unreachable: self.vertices[v].clone(),
            });
        }

        Ok(Resolved {
            edges,
            faces,
            basepoint,
        })
    }

    /// Checks every structural invariant: unique labels, resolved references,
    /// closed attaching words, a basepoint, a connected 1-skeleton and no cells
    /// above dimension two.
    pub fn validate(&self) -> Result<ValidationReport, CwError> {
        self.resolve()?;
        Ok(ValidationReport {
            name: self.name.clone(),
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            faces: self.faces.len(),
            euler_characteristic: self.euler_count(),
            path_connected: true,
        })
    }

    fn euler_count(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn euler_characteristic(&self) -> Result<i64, CwError> {
        self.resolve()?;
        Ok(self.euler_count())
    }

    pub fn boundary_matrices(&self) -> Result<BoundaryMaps, CwError> {
        let r = self.resolve()?;
        let mut d1 = IntMatrix::zeros(self.vertices.len(), self.edges.len());
        for (j, &(src, dst)) in r.edges.iter().enumerate() {
            if src != dst {
                d1.set(dst, j, BigInt::from(1));
                d1.set(src, j, BigInt::from(-1));
            }
        }
        let mut counts = vec![0i64; self.edges.len() * self.faces.len()];
        for (f, word) in r.faces.iter().enumerate() {
            for &(e, sign) in word {
                counts[e * self.faces.len() + f] += sign.as_i64();
            }
        }
        let d2 = IntMatrix::from_i64(self.edges.len(), self.faces.len(), &counts)
            .expect("shape matches");
        Ok(BoundaryMaps { d1, d2 })
    }

    /// Presentation of the fundamental group at the basepoint: generators are
    /// the edges outside a breadth-first spanning tree, relators are the face
    /// words with tree edges deleted.
    pub fn fundamental_group_presentation(&self) -> Result<GroupPresentation, CwError> {
        let r = self.resolve()?;
        let tree = bfs_tree(self.vertices.len(), &r.edges, r.basepoint);
        let generators = self
            .edges
            .iter()
            .zip(&tree.tree_edge)
            .filter(|(_, &in_tree)| !in_tree)
            .map(|(e, _)| e.name.clone())
            .collect();
        let relators = r
            .faces
            .iter()
            .map(|word| {
                word.iter()
                    .filter(|(e, _)| !tree.tree_edge[*e])
                    .map(|&(e, sign)| Letter::new(self.edges[e].name.clone(), sign))
                    .collect()
            })
            .collect();
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }
}

fn check_closed(face: &str, word: &[(usize, Sign)], edges: &[(usize, usize)]) -> Result<(), CwError> {
    let ends = |&(e, sign): &(usize, Sign)| {
        let (s, d) = edges[e];
        match sign {
            Sign::Plus => (s, d),
            Sign::Minus => (d, s),
        }
    };
    for (i, pair) in word.windows(2).enumerate() {
        if ends(&pair[0]).1 != ends(&pair[1]).0 {
            return Err(CwError::NonClosedWord {
                face: face.to_string(),
                position: i,
            });
        }
    }
    if let (Some(first), Some(last)) = (word.first(), word.last()) {
        if ends(last).1 != ends(first).0 {
            return Err(CwError::NonClosedWord {
                face: face.to_string(),
                position: word.len() - 1,
            });
        }
    }
    Ok(())
}

struct SpanningTree {
    reached: Vec<bool>,
    tree_edge: Vec<bool>,
}

/// Breadth-first search from `root`, scanning edges in input order.
fn bfs_tree(n_vertices: usize, edges: &[(usize, usize)], root: usize) -> SpanningTree {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
    for (j, &(s, d)) in edges.iter().enumerate() {
        incident[s].push(j);
        if d != s {
            incident[d].push(j);
        }
    }
    let mut reached = vec![false; n_vertices];
    let mut tree_edge = vec![false; edges.len()];
    let mut queue = VecDeque::from([root]);
    reached[root] = true;
    while let Some(v) = queue.pop_front() {
        for &j in &incident[v] {
            let (s, d) = edges[j];
            let other = if s == v { d } else { s };
            if !reached[other] {
                reached[other] = true;
                tree_edge[j] = true;
                queue.push_back(other);
            }
        }
    }
    SpanningTree { reached, tree_edge }
}

/// A finite group presentation with signed-letter relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    /// Exponent-sum matrix: `generators × relators`.
    pub fn relator_matrix(&self) -> IntMatrix {
        let ix: HashMap<&str, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        let cols = self.relators.len();
        let mut counts = vec![0i64; self.generators.len() * cols];
        for (r, word) in self.relators.iter().enumerate() {
            for l in word {
                let g = ix[l.edge.as_str()];
                counts[g * cols + r] += l.sign.as_i64();
            }
        }
        IntMatrix::from_i64(self.generators.len(), cols, &counts).expect("shape matches")
    }

    pub fn abelianization(&self) -> FgAbelianGroup {
        linalg::cokernel_invariants(&self.relator_matrix())
    }

    /// Relator letters all name declared generators.
    pub fn is_well_formed(&self) -> bool {
        let gens: HashSet<&str> = self.generators.iter().map(String::as_str).collect();
        self.relators
            .iter()
            .flatten()
            .all(|l| gens.contains(l.edge.as_str()))
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &Vec<Letter>| {
            if w.is_empty() {
                return "1".to_string();
            }
            w.iter()
                .map(|l| match l.sign {
                    Sign::Plus => l.edge.clone(),
                    Sign::Minus => format!("{}^-1", l.edge),
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "<{}", self.generators.join(", "))?;
        if !self.relators.is_empty() {
            let rels: Vec<String> = self.relators.iter().map(word).collect();
            write!(f, " | {}", rels.join(", "))?;
        }
        write!(f, ">")
    }
}

/// The standard one-vertex cell structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardSpace {
    /// Closed orientable surface of genus `g`; genus 0 is the sphere.
    Orientable { genus: u32 },
    /// Connected sum of `k ≥ 1` projective planes.
    NonOrientable { crosscaps: u32 },
    Sphere,
    /// Wedge of `n` circles.
    Wedge { circles: u32 },
}

impl fmt::Display for StandardSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardSpace::Orientable { genus } => write!(f, "genus={genus}"),
            StandardSpace::NonOrientable { crosscaps } => write!(f, "crosscaps={crosscaps}"),
            StandardSpace::Sphere => f.write_str("sphere"),
            StandardSpace::Wedge { circles } => write!(f, "wedge={circles}"),
        }
    }
}

/// Accepts `genus=g`, `crosscaps=k`, `sphere`, `torus`, `wedge=n`.
impl FromStr for StandardSpace {
    type Err = CwError;

    fn from_str(text: &str) -> Result<Self, CwError> {
        let bad = |why: &str| CwError::InvalidStandard(format!("{text:?}: {why}"));
        let t = text.trim();
        match t {
            "sphere" => return Ok(StandardSpace::Sphere),
            "torus" => return Ok(StandardSpace::Orientable { genus: 1 }),
            _ => {}
        }
        let (key, value) = t
            .split_once('=')
            .ok_or_else(|| bad("expected genus=g, crosscaps=k, wedge=n or sphere"))?;
        let value = value.trim();
        if value.starts_with('-') {
            return Err(bad("parameters must be non-negative"));
        }
        if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("parameter is not a non-negative integer"));
        }
        let n: u32 = value.parse().map_err(|_| bad("parameter out of range"))?;
        let space = match key.trim() {
            "genus" => StandardSpace::Orientable { genus: n },
            "crosscaps" => StandardSpace::NonOrientable { crosscaps: n },
            "wedge" => StandardSpace::Wedge { circles: n },
            other => return Err(bad(&format!("unknown family {other:?}"))),
        };
        space.check()?;
        Ok(space)
    }
}

impl StandardSpace {
    fn check(&self) -> Result<(), CwError> {
        if let StandardSpace::NonOrientable { crosscaps: 0 } = self {
            return Err(CwError::InvalidStandard(
                "a non-orientable surface needs at least one crosscap".into(),
            ));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<CwComplex2, CwError> {
        build_standard(*self)
    }
}

/// Builds the standard one-vertex model of `space`.
pub fn build_standard(space: StandardSpace) -> Result<CwComplex2, CwError> {
    space.check()?;
    let edge = |name: String| Edge {
        name,
        src: "x0".into(),
        dst: "x0".into(),
    };
    let (edges, faces): (Vec<Edge>, Vec<Face>) = match space {
        StandardSpace::Sphere | StandardSpace::Orientable { genus: 0 } => (
            Vec::new(),
            vec![Face {
                name: "e2".into(),
                word: Vec::new(),
            }],
        ),
        StandardSpace::Orientable { genus } => {
            let mut edges = Vec::new();
            let mut word = Vec::new();
            for i in 1..=genus {
                let (a, b) = (format!("a{i}"), format!("b{i}"));
                word.extend([
                    Letter::plus(&a),
                    Letter::plus(&b),
                    Letter::minus(&a),
                    Letter::minus(&b),
                ]);
                edges.push(edge(a));
                edges.push(edge(b));
            }
            (edges, vec![Face { name: "e2".into(), word }])
        }
        StandardSpace::NonOrientable { crosscaps } => {
            let mut edges = Vec::new();
            let mut word = Vec::new();
            for i in 1..=crosscaps {
                let a = format!("a{i}");
                word.extend([Letter::plus(&a), Letter::plus(&a)]);
                edges.push(edge(a));
            }
            (edges, vec![Face { name: "e2".into(), word }])
        }
        StandardSpace::Wedge { circles } => (
            (1..=circles).map(|i| edge(format!("a{i}"))).collect(),
            Vec::new(),
        ),
    };
    Ok(CwComplex2 {
        name: space.to_string(),
        vertices: vec!["x0".into()],
        edges,
        faces,
        basepoint: Some("x0".into()),
        higher_cells: Vec::new(),
    })
}

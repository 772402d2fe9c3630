//! Net JSON.
//!
//! ```json
//! {"polyhedron": "cube", "cycle": "1-5-6-2-3-7-8-4", "join_edge": [1, 5],
//!  "faces": [{"face": 1, "side": "A", "vertices2d": [[x, y], ...]}, ...],
//!  "boundary": [[x, y], ...], "cut_edges": [[5, 6], ...]}
//! ```
//!
//! Vertex and face indices are 1-based. Coordinates are written with 17
//! significant digits. `vertices2d` follows the face's vertex order in the
//! polyhedron, so reading a net back needs the polyhedron.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;
use thiserror::Error;

use crate::geom::Point2;
use crate::mesh::Polyhedron;
use crate::search::{CycleError, HamCycle};
use crate::unfold::{Net, PlacedFace, Side};

#[derive(Debug, Error)]
pub enum NetIoError {
    #[error("invalid net JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("face {0} does not exist on the polyhedron")]
    UnknownFace(usize),
    #[error("face {face} has {got} points but {expected} vertices")]
    VertexCount { face: usize, got: usize, expected: usize },
    #[error("edge {}-{} is not on the cycle", .0, .1)]
    NotOnCycle(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Coord(f64);

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        f64::deserialize(d).map(Coord)
    }
}

#[derive(Serialize, Deserialize)]
struct FaceDoc {
    face: usize,
    side: Side,
    vertices2d: Vec<[Coord; 2]>,
}

#[derive(Serialize, Deserialize)]
struct NetDoc {
    polyhedron: String,
    cycle: String,
    join_edge: [usize; 2],
    faces: Vec<FaceDoc>,
    boundary: Vec<[Coord; 2]>,
    cut_edges: Vec<[usize; 2]>,
}

fn pt(p: &Point2) -> [Coord; 2] {
    [Coord(p.x), Coord(p.y)]
}

pub fn net_to_json(net: &Net) -> String {
    let doc = NetDoc {
        polyhedron: net.polyhedron.clone(),
        cycle: net.cycle.to_string(),
        join_edge: [net.join_edge.0 + 1, net.join_edge.1 + 1],
        faces: net
            .faces
            .iter()
            .map(|f| FaceDoc { face: f.face + 1, side: f.side, vertices2d: f.points.iter().map(pt).collect() })
            .collect(),
        boundary: net.boundary.iter().map(pt).collect(),
        cut_edges: net.cut_edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("net documents always serialize")
}

/// The `polyhedron` field of a net document, without interpreting the rest.
pub fn net_polyhedron_name(text: &str) -> Result<String, NetIoError> {
    #[derive(Deserialize)]
    struct Head {
        polyhedron: String,
    }
    Ok(serde_json::from_str::<Head>(text)?.polyhedron)
}

pub fn net_from_json(p: &Polyhedron, text: &str) -> Result<Net, NetIoError> {
    let doc: NetDoc = serde_json::from_str(text)?;
    let cycle = HamCycle::parse(p, &doc.cycle)?;
    let edge = |[a, b]: [usize; 2]| -> Result<(usize, usize), NetIoError> {
        if a == 0 || b == 0 {
            return Err(NetIoError::NotOnCycle(a, b));
        }
        cycle.directed_edge(a - 1, b - 1).ok_or(NetIoError::NotOnCycle(a, b))
    };
    let join_edge = edge(doc.join_edge)?;
    let cut_edges = doc.cut_edges.iter().map(|&e| edge(e)).collect::<Result<_, _>>()?;
    let mut faces = Vec::with_capacity(doc.faces.len());
    for f in doc.faces {
        let idx = f.face.checked_sub(1).filter(|&i| i < p.num_faces()).ok_or(NetIoError::UnknownFace(f.face))?;
        let vertices = p.face(idx).to_vec();
        if vertices.len() != f.vertices2d.len() {
            return Err(NetIoError::VertexCount { face: f.face, got: f.vertices2d.len(), expected: vertices.len() });
        }
        faces.push(PlacedFace {
            face: idx,
            side: f.side,
            vertices,
            points: f.vertices2d.iter().map(|[x, y]| Point2::new(x.0, y.0)).collect(),
        });
    }
    Ok(Net {
        polyhedron: doc.polyhedron,
        cycle,
        join_edge,
        faces,
        boundary: doc.boundary.iter().map(|[x, y]| Point2::new(x.0, y.0)).collect(),
        boundary_vertices: Vec::new(),
        cut_edges,
        seeds: (0, 0),
    })
}

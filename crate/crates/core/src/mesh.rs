//! Closed polyhedral surfaces: OFF loading, validation, and intrinsic measurements.
//!
//! Faces are stored counterclockwise as seen from outside. Everything derived
//! from them (edges, per-vertex rotation systems, corner angles) is computed once
//! at construction; a [`Polyhedron`] is immutable afterwards.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::geom::{Point2, Vec3};
use crate::report::CheckResult;
use crate::verify;

/// Relative to the bounding-box diagonal.
pub const TOL_PLANAR_REL: f64 = 1e-8;
/// Relative to the bounding-box diagonal.
pub const TOL_CONVEX_REL: f64 = 1e-8;
/// Absolute, radians.
pub const TOL_ANGLE: f64 = 1e-9;

fn at(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("{}{msg}", at(line))]
    Parse { line: Option<usize>, msg: String },
    #[error("{}vertex index {index} out of range (vertex count {count})", at(line))]
    IndexOutOfRange { line: Option<usize>, index: usize, count: usize },
    #[error("{}face {face} has fewer than 3 distinct vertices", at(line))]
    DegenerateFace { line: Option<usize>, face: usize },
    #[error("{}edge ({a}, {b}) appears in {count} faces, expected 2", at(line))]
    NonManifoldEdge { line: Option<usize>, a: usize, b: usize, count: usize },
    #[error("{}edge ({a}, {b}) is traversed in the same direction by two faces; inconsistent orientation", at(line))]
    InconsistentOrientation { line: Option<usize>, a: usize, b: usize },
    #[error("the faces around vertex {vertex} do not form a single disk")]
    NonManifoldStar { vertex: usize },
    #[error("vertex {vertex} is not on face {face}")]
    VertexNotOnFace { face: usize, vertex: usize },
}

/// One step of a rotation system: the edge towards `neighbor`, followed
/// counterclockwise by `face`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Wedge {
    pub neighbor: usize,
    pub face: usize,
}

#[derive(Clone, Debug)]
pub struct Polyhedron {
    name: String,
    vertices: Vec<Vec3>,
    faces: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    half_edges: HashMap<(usize, usize), usize>,
    neighbors: Vec<Vec<usize>>,
    rotation: Vec<Vec<Wedge>>,
    normals: Vec<Vec3>,
    corner_angles: Vec<Vec<f64>>,
}

impl Polyhedron {
    /// Builds a surface from vertex coordinates and vertex-index face cycles.
    ///
    /// If every face is consistently oriented but the enclosed volume comes out
    /// negative, all faces are reversed so that the outward-counterclockwise
    /// convention holds. Mixed orientation is rejected.
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<Vec3>,
        faces: Vec<Vec<usize>>,
    ) -> Result<Self, MeshError> {
        Self::build(name.into(), vertices, faces, None)
    }

    fn build(
        name: String,
        vertices: Vec<Vec3>,
        mut faces: Vec<Vec<usize>>,
        lines: Option<&[usize]>,
    ) -> Result<Self, MeshError> {
        let line_of = |f: usize| lines.map(|l| l[f]);
        let nv = vertices.len();
        for (fi, face) in faces.iter().enumerate() {
            if let Some(&bad) = face.iter().find(|&&i| i >= nv) {
                return Err(MeshError::IndexOutOfRange { line: line_of(fi), index: bad, count: nv });
            }
            let mut sorted = face.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if face.len() < 3 || sorted.len() != face.len() {
                return Err(MeshError::DegenerateFace { line: line_of(fi), face: fi });
            }
        }

        // undirected edge -> (face, a, b) for each directed traversal a->b
        let mut uses: BTreeMap<(usize, usize), Vec<(usize, usize, usize)>> = BTreeMap::new();
        for (fi, face) in faces.iter().enumerate() {
            for (a, b) in cycle_pairs(face) {
                uses.entry((a.min(b), a.max(b))).or_default().push((fi, a, b));
            }
        }
        for (&(a, b), u) in &uses {
            if u.len() != 2 {
                return Err(MeshError::NonManifoldEdge {
                    line: line_of(u[u.len().min(3) - 1].0),
                    a,
                    b,
                    count: u.len(),
                });
            }
            if u[0].1 == u[1].1 {
                let later = u[0].0.max(u[1].0);
                return Err(MeshError::InconsistentOrientation { line: line_of(later), a, b });
            }
        }

        if signed_volume(&vertices, &faces) < 0.0 {
            for face in &mut faces {
                face[1..].reverse();
            }
        }

        let edges: Vec<(usize, usize)> = uses.keys().copied().collect();
        let mut half_edges = HashMap::with_capacity(2 * edges.len());
        for (fi, face) in faces.iter().enumerate() {
            for (a, b) in cycle_pairs(face) {
                half_edges.insert((a, b), fi);
            }
        }
        let mut neighbors = vec![Vec::new(); nv];
        for &(a, b) in &edges {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }

        let mut rotation = Vec::with_capacity(nv);
        for v in 0..nv {
            rotation.push(walk_rotation(v, &neighbors[v], &faces, &half_edges)?);
        }

        let normals: Vec<Vec3> = faces.iter().map(|f| newell_normal(&vertices, f)).collect();
        let corner_angles = faces
            .iter()
            .zip(&normals)
            .map(|(f, &n)| {
                (0..f.len())
                    .map(|i| {
                        let k = f.len();
                        corner_angle_at(&vertices, f[(i + k - 1) % k], f[i], f[(i + 1) % k], n)
                    })
                    .collect()
            })
            .collect();

        Ok(Polyhedron {
            name,
            vertices,
            faces,
            edges,
            half_edges,
            neighbors,
            rotation,
            normals,
            corner_angles,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Vec3 {
        self.vertices[v]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    /// Undirected edges as `(min, max)` pairs, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.half_edges.contains_key(&(a, b))
    }

    /// The face whose boundary traverses `a -> b`.
    pub fn face_of_half_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.half_edges.get(&(a, b)).copied()
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Unit outward normal from Newell's method.
    pub fn face_normal(&self, f: usize) -> Vec3 {
        self.normals[f]
    }

    /// Counterclockwise (from outside) cyclic order of edges and faces around `v`,
    /// starting at the edge towards the smallest neighbour.
    pub fn rotation_order(&self, v: usize) -> &[Wedge] {
        &self.rotation[v]
    }

    /// Interior angle of `face` at `vertex`, from 3D coordinates.
    pub fn corner_angle(&self, face: usize, vertex: usize) -> Result<f64, MeshError> {
        let pos = self.faces[face]
            .iter()
            .position(|&v| v == vertex)
            .ok_or(MeshError::VertexNotOnFace { face, vertex })?;
        Ok(self.corner_angles[face][pos])
    }

    /// Corner angles of `face` in face-vertex order.
    pub fn corner_angles(&self, face: usize) -> &[f64] {
        &self.corner_angles[face]
    }

    /// Sum of the corner angles incident to `v`.
    pub fn total_angle(&self, v: usize) -> f64 {
        self.rotation[v]
            .iter()
            .map(|w| self.corner_angle(w.face, v).expect("rotation faces contain their vertex"))
            .sum()
    }

    /// Angle defect `2π − total_angle(v)`.
    pub fn vertex_curvature(&self, v: usize) -> f64 {
        2.0 * PI - self.total_angle(v)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        let mut lo = Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = -lo;
        for p in &self.vertices {
            lo = Vec3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
            hi = Vec3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
        }
        if self.vertices.is_empty() {
            0.0
        } else {
            (hi - lo).norm()
        }
    }

    /// The face's vertices in a planar frame: first vertex at the origin, first
    /// edge along +x, outward normal towards +z (so the polygon is counterclockwise).
    pub fn face_local_coords(&self, f: usize) -> Vec<Point2> {
        let face = &self.faces[f];
        let o = self.vertices[face[0]];
        let u = (self.vertices[face[1]] - o).normalized();
        let w = self.normals[f].cross(u);
        face.iter()
            .map(|&v| {
                let d = self.vertices[v] - o;
                Point2::new(d.dot(u), d.dot(w))
            })
            .collect()
    }

    /// Same combinatorics, vertex coordinates mapped through `f`.
    pub fn map_vertices(&self, f: impl Fn(Vec3) -> Vec3) -> Result<Polyhedron, MeshError> {
        Polyhedron::new(
            self.name.clone(),
            self.vertices.iter().map(|&v| f(v)).collect(),
            self.faces.clone(),
        )
    }

    /// First 16 hex digits of SHA-256 over the OFF serialization.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(emit_off(self).as_bytes());
        digest.iter().take(8).fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

fn cycle_pairs(face: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..face.len()).map(move |i| (face[i], face[(i + 1) % face.len()]))
}

fn prev_in_face(face: &[usize], v: usize) -> usize {
    let k = face.len();
    let i = face.iter().position(|&x| x == v).expect("vertex on face");
    face[(i + k - 1) % k]
}

fn walk_rotation(
    v: usize,
    neighbors: &[usize],
    faces: &[Vec<usize>],
    half_edges: &HashMap<(usize, usize), usize>,
) -> Result<Vec<Wedge>, MeshError> {
    let Some(&start) = neighbors.first() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::with_capacity(neighbors.len());
    let mut w = start;
    loop {
        let face = half_edges[&(v, w)];
        out.push(Wedge { neighbor: w, face });
        w = prev_in_face(&faces[face], v);
        if w == start {
            break;
        }
        if out.len() > neighbors.len() {
            return Err(MeshError::NonManifoldStar { vertex: v });
        }
    }
    if out.len() != neighbors.len() {
        return Err(MeshError::NonManifoldStar { vertex: v });
    }
    Ok(out)
}

fn signed_volume(vertices: &[Vec3], faces: &[Vec<usize>]) -> f64 {
    let mut vol = 0.0;
    for f in faces {
        let a = vertices[f[0]];
        for i in 1..f.len() - 1 {
            vol += a.dot(vertices[f[i]].cross(vertices[f[i + 1]]));
        }
    }
    vol / 6.0
}

pub(crate) fn newell_normal(vertices: &[Vec3], face: &[usize]) -> Vec3 {
    let mut n = Vec3::ZERO;
    for (a, b) in cycle_pairs(face) {
        let (p, q) = (vertices[a], vertices[b]);
        n.x += (p.y - q.y) * (p.z + q.z);
        n.y += (p.z - q.z) * (p.x + q.x);
        n.z += (p.x - q.x) * (p.y + q.y);
    }
    n.normalized()
}

fn corner_angle_at(vertices: &[Vec3], prev: usize, v: usize, next: usize, normal: Vec3) -> f64 {
    let a = vertices[next] - vertices[v];
    let b = vertices[prev] - vertices[v];
    let mut t = normal.dot(a.cross(b)).atan2(a.dot(b));
    if t < 0.0 {
        t += 2.0 * PI;
    }
    t
}

/// Parses OFF text: `OFF`, then `V F E`, then `V` coordinate lines and `F` face
/// lines `k i1 .. ik`. `#` starts a comment; blank lines are ignored. Trailing
/// tokens on a face line (colours) are ignored.
pub fn load_off(text: &str) -> Result<Polyhedron, MeshError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
    });
    let parse_err = |line: usize, msg: String| MeshError::Parse { line: Some(line), msg };

    let (hline, mut header) = lines
        .next()
        .ok_or_else(|| MeshError::Parse { line: None, msg: "empty input".into() })?;
    if header[0] != "OFF" {
        return Err(parse_err(hline, format!("expected header \"OFF\", found {:?}", header[0])));
    }
    header.remove(0);
    let (cline, counts) = if header.is_empty() {
        lines
            .next()
            .ok_or_else(|| MeshError::Parse { line: None, msg: "missing counts line".into() })?
    } else {
        (hline, header)
    };
    let nums: Vec<usize> = counts
        .iter()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| parse_err(cline, format!("bad counts: {e}")))?;
    if nums.len() != 3 {
        return Err(parse_err(cline, format!("expected 3 counts (V F E), found {}", nums.len())));
    }
    let (nv, nf) = (nums[0], nums[1]);

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (l, toks) = lines
            .next()
            .ok_or_else(|| MeshError::Parse { line: None, msg: format!("expected {nv} vertices") })?;
        if toks.len() != 3 {
            return Err(parse_err(l, format!("expected 3 coordinates, found {}", toks.len())));
        }
        let c: Vec<f64> = toks
            .iter()
            .map(|t| t.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| parse_err(l, format!("bad coordinate: {e}")))?;
        vertices.push(Vec3::new(c[0], c[1], c[2]));
    }

    let mut faces = Vec::with_capacity(nf);
    let mut face_lines = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (l, toks) = lines
            .next()
            .ok_or_else(|| MeshError::Parse { line: None, msg: format!("expected {nf} faces") })?;
        let k: usize = toks[0].parse().map_err(|e| parse_err(l, format!("bad face size: {e}")))?;
        if toks.len() < k + 1 {
            return Err(parse_err(l, format!("face declares {k} vertices, found {}", toks.len() - 1)));
        }
        let idx: Vec<usize> = toks[1..=k]
            .iter()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| parse_err(l, format!("bad vertex index: {e}")))?;
        faces.push(idx);
        face_lines.push(l);
    }
    if let Some((l, _)) = lines.next() {
        return Err(parse_err(l, "unexpected data after the last face".into()));
    }

    let p = Polyhedron::build(String::new(), vertices, faces, Some(&face_lines))?;
    let name = format!("off:{}", p.content_hash());
    Ok(p.with_name(name))
}

/// OFF text with shortest round-trip coordinates.
pub fn emit_off(p: &Polyhedron) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "OFF");
    let _ = writeln!(s, "{} {} {}", p.num_vertices(), p.num_faces(), p.num_edges());
    for v in p.vertices() {
        let _ = writeln!(s, "{:?} {:?} {:?}", v.x, v.y, v.z);
    }
    for f in p.faces() {
        let _ = write!(s, "{}", f.len());
        for i in f {
            let _ = write!(s, " {i}");
        }
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub convex_required: bool,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Pass/fail report for every surface invariant. Convexity is only checked
/// when `convex_required` is set.
pub fn validate(p: &Polyhedron, convex_required: bool) -> ValidationReport {
    let mut checks = Vec::new();
    let diag = p.bbox_diagonal();

    let manifold = p.edges.iter().all(|&(a, b)| p.has_edge(a, b) && p.has_edge(b, a));
    checks.push(CheckResult::new(
        "manifold",
        manifold,
        format!("{} edges, each shared by two oppositely oriented faces", p.num_edges()),
    ));

    let chi = p.num_vertices() as i64 - p.num_edges() as i64 + p.num_faces() as i64;
    checks.push(CheckResult::new(
        "euler",
        chi == 2,
        format!("V - E + F = {} - {} + {} = {chi}", p.num_vertices(), p.num_edges(), p.num_faces()),
    ));

    let tol_planar = TOL_PLANAR_REL * diag;
    let mut worst = (0.0f64, 0usize);
    for (fi, f) in p.faces.iter().enumerate() {
        let n = p.normals[fi];
        let d = f.iter().map(|&v| n.dot(p.vertices[v])).sum::<f64>() / f.len() as f64;
        for &v in f {
            let dev = (n.dot(p.vertices[v]) - d).abs();
            if dev > worst.0 {
                worst = (dev, fi);
            }
        }
    }
    checks.push(CheckResult::new(
        "planarity",
        worst.0 <= tol_planar,
        format!("max deviation {:.3e} (face {}), tolerance {:.3e}", worst.0, worst.1, tol_planar),
    ));

    let non_simple: Vec<usize> = (0..p.num_faces())
        .filter(|&f| {
            let pts = p.face_local_coords(f);
            verify::check_simple(&pts).map(|r| !r.is_simple || r.area <= 0.0).unwrap_or(true)
        })
        .collect();
    checks.push(CheckResult::new(
        "simple_faces",
        non_simple.is_empty(),
        if non_simple.is_empty() {
            "every face is a simple polygon in its plane".to_string()
        } else {
            format!("non-simple faces: {non_simple:?}")
        },
    ));

    if convex_required {
        let tol_convex = TOL_CONVEX_REL * diag;
        let mut worst = (f64::NEG_INFINITY, 0usize, 0usize);
        for (fi, f) in p.faces.iter().enumerate() {
            let n = p.normals[fi];
            let d = n.dot(p.vertices[f[0]]);
            for (vi, &v) in p.vertices.iter().enumerate() {
                let s = n.dot(v) - d;
                if s > worst.0 {
                    worst = (s, fi, vi);
                }
            }
        }
        checks.push(CheckResult::new(
            "convexity",
            worst.0 <= tol_convex,
            format!(
                "max height above a face plane {:.3e} (face {}, vertex {}), tolerance {:.3e}",
                worst.0, worst.1, worst.2, tol_convex
            ),
        ));
    }

    let low: Vec<usize> = (0..p.num_vertices()).filter(|&v| p.degree(v) < 3).collect();
    checks.push(CheckResult::new(
        "degree",
        low.is_empty(),
        if low.is_empty() {
            "every vertex has degree >= 3".to_string()
        } else {
            format!("vertices of degree < 3: {low:?}")
        },
    ));

    ValidationReport { convex_required, checks }
}

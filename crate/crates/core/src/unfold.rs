//! Cutting a surface along a Hamiltonian quasigeodesic and laying it flat.
//!
//! The cycle splits the faces into a left half `A` and a right half `B`. Neither
//! half contains a vertex in its interior, so each develops isometrically into
//! the plane, and the quasigeodesic angle condition makes each development a
//! convex polygon. Gluing the two polygons back together along a single cycle
//! edge puts them on opposite sides of that edge's supporting line, so the
//! result never overlaps itself.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Point2, Rigid2};
use crate::mesh::Polyhedron;
use crate::search::{CycleError, HamCycle};
use crate::verify;

/// Relative to the 3D bounding-box diagonal.
pub const TOL_FIT_REL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnfoldError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("face {face} is left of the cycle at one edge and right of it at another")]
    AssignmentConflict { face: usize },
    #[error("face {face} is not reachable from the cycle")]
    Unassigned { face: usize },
    #[error("the faces of half {side:?} are not connected across interior edges")]
    Disconnected { side: Side },
    #[error("seed face {face} is not in half {side:?}")]
    SeedNotInHalf { face: usize, side: Side },
    #[error("edge ({}, {}) of face {face} does not fit its placed neighbour (residual {residual:.3e})", .a + 1, .b + 1)]
    EdgeMismatch { face: usize, a: usize, b: usize, residual: f64 },
    #[error("{}-{} is not an edge of the cycle", .0 + 1, .1 + 1)]
    NotOnCycle(usize, usize),
    #[error("layouts do not match along the join edge ({}, {})", .0 + 1, .1 + 1)]
    CorrespondenceMismatch(usize, usize),
    #[error("expected layouts for sides A and B, got {0:?} and {1:?}")]
    WrongSides(Side, Side),
    #[error("the supplied dual tree is not a spanning tree of the crossable faces")]
    NotASpanningTree,
    #[error("the net joined at ({}, {}) is not a simple polygon", .0 + 1, .1 + 1)]
    NotSimple(usize, usize),
}

/// `A` is left of the directed cycle, `B` right of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HalfSurface {
    pub side: Side,
    /// Sorted face indices.
    pub faces: Vec<usize>,
    /// The cycle for `A`, its reverse for `B`; counterclockwise around the half
    /// when seen from outside.
    pub boundary: Vec<usize>,
    /// Edges with both incident faces in this half, as `(min, max)`.
    pub interior_edges: Vec<(usize, usize)>,
}

/// A face laid out in the plane, with 2D points in the face's own vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct PlacedFace {
    pub face: usize,
    pub side: Side,
    pub vertices: Vec<usize>,
    pub points: Vec<Point2>,
}

impl PlacedFace {
    pub fn point_of(&self, v: usize) -> Option<Point2> {
        self.vertices.iter().position(|&x| x == v).map(|i| self.points[i])
    }

    fn transformed(&self, t: &Rigid2) -> PlacedFace {
        PlacedFace { points: self.points.iter().map(|&p| t.apply(p)).collect(), ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanarLayout {
    pub side: Side,
    pub seed_face: usize,
    /// Placed faces sorted by face index.
    pub faces: Vec<PlacedFace>,
    pub boundary_vertices: Vec<usize>,
    pub boundary: Vec<Point2>,
    /// Largest mismatch seen when fitting a face to an already placed neighbour,
    /// or between two placements of the same vertex.
    pub residual: f64,
}

impl PlanarLayout {
    pub fn position(&self, v: usize) -> Option<Point2> {
        self.boundary_vertices.iter().position(|&x| x == v).map(|i| self.boundary[i])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Net {
    pub polyhedron: String,
    pub cycle: HamCycle,
    /// The uncut cycle edge, in the cycle's traversal direction.
    pub join_edge: (usize, usize),
    /// Sorted by face index.
    pub faces: Vec<PlacedFace>,
    pub boundary: Vec<Point2>,
    /// Polyhedron vertex at each boundary point; empty when unknown.
    pub boundary_vertices: Vec<usize>,
    /// Cycle edges other than the join edge, in traversal order.
    pub cut_edges: Vec<(usize, usize)>,
    /// Seed faces the two halves were developed from.
    pub seeds: (usize, usize),
}

fn successor(q: &HamCycle, v: usize) -> usize {
    let i = q.position(v).expect("vertex on cycle");
    q.vertices()[(i + 1) % q.len()]
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Splits the faces into the halves left (`A`) and right (`B`) of `q`.
pub fn partition(p: &Polyhedron, q: &HamCycle) -> Result<(HalfSurface, HalfSurface), UnfoldError> {
    let nf = p.num_faces();
    let cycle_edges: HashSet<(usize, usize)> = q.edges().map(|(a, b)| key(a, b)).collect();
    let mut side: Vec<Option<Side>> = vec![None; nf];
    let mut queue = VecDeque::new();
    let assign = |f: usize, s: Side, side: &mut Vec<Option<Side>>, queue: &mut VecDeque<usize>| {
        match side[f] {
            Some(t) if t != s => Err(UnfoldError::AssignmentConflict { face: f }),
            Some(_) => Ok(()),
            None => {
                side[f] = Some(s);
                queue.push_back(f);
                Ok(())
            }
        }
    };
    for (a, b) in q.edges() {
        let left = p.face_of_half_edge(a, b).ok_or(CycleError::NotAnEdge(a, b))?;
        let right = p.face_of_half_edge(b, a).ok_or(CycleError::NotAnEdge(b, a))?;
        assign(left, Side::A, &mut side, &mut queue)?;
        assign(right, Side::B, &mut side, &mut queue)?;
    }
    while let Some(f) = queue.pop_front() {
        let s = side[f].expect("queued faces are assigned");
        let face = p.face(f);
        for i in 0..face.len() {
            let (a, b) = (face[i], face[(i + 1) % face.len()]);
            if cycle_edges.contains(&key(a, b)) {
                continue;
            }
            let g = p.face_of_half_edge(b, a).expect("closed surface");
            assign(g, s, &mut side, &mut queue)?;
        }
    }
    if let Some(f) = side.iter().position(Option::is_none) {
        return Err(UnfoldError::Unassigned { face: f });
    }

    let make = |s: Side| -> Result<HalfSurface, UnfoldError> {
        let faces: Vec<usize> = (0..nf).filter(|&f| side[f] == Some(s)).collect();
        let interior_edges: Vec<(usize, usize)> = p
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| {
                !cycle_edges.contains(&(a, b))
                    && side[p.face_of_half_edge(a, b).expect("edge")] == Some(s)
                    && side[p.face_of_half_edge(b, a).expect("edge")] == Some(s)
            })
            .collect();
        let boundary = match s {
            Side::A => q.vertices().to_vec(),
            Side::B => q.reversed().vertices().to_vec(),
        };
        let h = HalfSurface { side: s, faces, boundary, interior_edges };
        if h.faces.is_empty() || !dual_connected(p, &h.faces, &h.interior_edges) {
            return Err(UnfoldError::Disconnected { side: s });
        }
        Ok(h)
    };
    Ok((make(Side::A)?, make(Side::B)?))
}

fn dual_connected(p: &Polyhedron, faces: &[usize], crossable: &[(usize, usize)]) -> bool {
    let allowed: HashSet<usize> = faces.iter().copied().collect();
    let cross: HashSet<(usize, usize)> = crossable.iter().copied().collect();
    let mut seen = HashSet::from([faces[0]]);
    let mut stack = vec![faces[0]];
    while let Some(f) = stack.pop() {
        let face = p.face(f);
        for i in 0..face.len() {
            let (a, b) = (face[i], face[(i + 1) % face.len()]);
            if !cross.contains(&key(a, b)) {
                continue;
            }
            let g = p.face_of_half_edge(b, a).expect("closed surface");
            if allowed.contains(&g) && seen.insert(g) {
                stack.push(g);
            }
        }
    }
    seen.len() == faces.len()
}

/// Breadth-first development of `faces` across the edges in `crossable`,
/// starting from `seed` in its local frame moved by `pose`. Returns placements
/// in visiting order and the largest shared-edge residual.
pub fn develop(
    p: &Polyhedron,
    faces: &[usize],
    crossable: &HashSet<(usize, usize)>,
    seed: usize,
    pose: Rigid2,
    side_of: impl Fn(usize) -> Side,
) -> Result<(Vec<PlacedFace>, f64), UnfoldError> {
    let tol = TOL_FIT_REL * p.bbox_diagonal();
    let allowed: HashSet<usize> = faces.iter().copied().collect();
    let mut placed: Vec<Option<PlacedFace>> = vec![None; p.num_faces()];
    let mut order = Vec::with_capacity(faces.len());
    let mut residual = 0.0f64;

    let local = p.face_local_coords(seed);
    placed[seed] = Some(PlacedFace {
        face: seed,
        side: side_of(seed),
        vertices: p.face(seed).to_vec(),
        points: local.iter().map(|&x| pose.apply(x)).collect(),
    });
    let mut queue = VecDeque::from([seed]);
    while let Some(f) = queue.pop_front() {
        let cur = placed[f].clone().expect("queued faces are placed");
        let k = cur.vertices.len();
        for i in 0..k {
            let (a, b) = (cur.vertices[i], cur.vertices[(i + 1) % k]);
            if !crossable.contains(&key(a, b)) {
                continue;
            }
            let g = p.face_of_half_edge(b, a).expect("closed surface");
            if !allowed.contains(&g) || placed[g].is_some() {
                continue;
            }
            let gv = p.face(g);
            let local = p.face_local_coords(g);
            let ia = gv.iter().position(|&x| x == a).expect("shared edge");
            let ib = gv.iter().position(|&x| x == b).expect("shared edge");
            let (pa, pb) = (cur.points[i], cur.points[(i + 1) % k]);
            let t = Rigid2::aligning(local[ia], local[ib], pa, pb);
            let r = t.apply(local[ib]).dist(pb);
            if r > tol {
                return Err(UnfoldError::EdgeMismatch { face: g, a, b, residual: r });
            }
            residual = residual.max(r);
            placed[g] = Some(PlacedFace {
                face: g,
                side: side_of(g),
                vertices: gv.to_vec(),
                points: local.iter().map(|&x| t.apply(x)).collect(),
            });
            queue.push_back(g);
        }
        order.push(cur);
    }
    if order.len() != faces.len() {
        return Err(UnfoldError::NotASpanningTree);
    }
    Ok((order, residual))
}

/// Develops one half from `seed_face`. With `Rigid2::IDENTITY` the seed's first
/// vertex sits at the origin with its first edge along +x, seen from outside.
pub fn unfold_half(
    p: &Polyhedron,
    h: &HalfSurface,
    seed_face: usize,
    pose: Rigid2,
) -> Result<PlanarLayout, UnfoldError> {
    if h.faces.binary_search(&seed_face).is_err() {
        return Err(UnfoldError::SeedNotInHalf { face: seed_face, side: h.side });
    }
    let crossable: HashSet<(usize, usize)> = h.interior_edges.iter().copied().collect();
    let side = h.side;
    let (mut faces, mut residual) = develop(p, &h.faces, &crossable, seed_face, pose, |_| side)
        .map_err(|e| match e {
            UnfoldError::NotASpanningTree => UnfoldError::Disconnected { side },
            e => e,
        })?;
    faces.sort_by_key(|f| f.face);

    let mut boundary = Vec::with_capacity(h.boundary.len());
    for &v in &h.boundary {
        let mut at: Option<Point2> = None;
        for f in &faces {
            if let Some(x) = f.point_of(v) {
                match at {
                    None => at = Some(x),
                    Some(y) => residual = residual.max(x.dist(y)),
                }
            }
        }
        boundary.push(at.expect("every vertex lies on both halves"));
    }
    Ok(PlanarLayout {
        side,
        seed_face,
        faces,
        boundary_vertices: h.boundary.clone(),
        boundary,
        residual,
    })
}

/// Glues the developed halves along the cycle edge `e`: `A` stays put, `B` is
/// moved rigidly so its copy of `e` lands on `A`'s with the same endpoints.
pub fn join(
    p: &Polyhedron,
    q: &HamCycle,
    la: &PlanarLayout,
    lb: &PlanarLayout,
    e: (usize, usize),
) -> Result<Net, UnfoldError> {
    if la.side != Side::A || lb.side != Side::B {
        return Err(UnfoldError::WrongSides(la.side, lb.side));
    }
    let (a, b) = q.directed_edge(e.0, e.1).ok_or(UnfoldError::NotOnCycle(e.0, e.1))?;
    let mismatch = || UnfoldError::CorrespondenceMismatch(a, b);
    let (aa, ab) = (la.position(a).ok_or_else(mismatch)?, la.position(b).ok_or_else(mismatch)?);
    let (ba, bb) = (lb.position(a).ok_or_else(mismatch)?, lb.position(b).ok_or_else(mismatch)?);
    let tol = TOL_FIT_REL * p.bbox_diagonal();
    if (aa.dist(ab) - ba.dist(bb)).abs() > tol {
        return Err(mismatch());
    }
    let t = Rigid2::aligning(bb, ba, ab, aa);

    let mut faces: Vec<PlacedFace> = la.faces.clone();
    faces.extend(lb.faces.iter().map(|f| f.transformed(&t)));
    faces.sort_by_key(|f| f.face);

    let n = q.len();
    let i = q.position(a).expect("edge endpoint on cycle");
    // around A from b to a, then around B from a to b
    let mut boundary_vertices: Vec<usize> = (1..=n).map(|k| q.vertices()[(i + k) % n]).collect();
    boundary_vertices.extend((1..n - 1).map(|k| q.vertices()[(i + n - k) % n]));
    let mut boundary = Vec::with_capacity(boundary_vertices.len());
    for (k, &v) in boundary_vertices.iter().enumerate() {
        let pt = if k < n { la.position(v) } else { lb.position(v).map(|x| t.apply(x)) };
        boundary.push(pt.ok_or_else(mismatch)?);
    }

    Ok(Net {
        polyhedron: p.name().to_string(),
        cycle: q.clone(),
        join_edge: (a, b),
        faces,
        boundary,
        boundary_vertices,
        cut_edges: q.edges().filter(|&x| x != (a, b)).collect(),
        seeds: (la.seed_face, lb.seed_face),
    })
}

/// Partition, develop both halves from their smallest faces, and join along `e`.
pub fn unfold(p: &Polyhedron, q: &HamCycle, e: (usize, usize)) -> Result<Net, UnfoldError> {
    let (ha, hb) = partition(p, q)?;
    let la = unfold_half(p, &ha, ha.faces[0], Rigid2::IDENTITY)?;
    let lb = unfold_half(p, &hb, hb.faces[0], Rigid2::IDENTITY)?;
    join(p, q, &la, &lb, e)
}

/// Edges that may be crossed when every cycle edge except `e` is cut, as `(min, max)`.
pub fn crossable_edges(p: &Polyhedron, q: &HamCycle, e: (usize, usize)) -> Result<Vec<(usize, usize)>, UnfoldError> {
    let (a, b) = q.directed_edge(e.0, e.1).ok_or(UnfoldError::NotOnCycle(e.0, e.1))?;
    let cut: HashSet<(usize, usize)> =
        q.edges().filter(|&x| x != (a, b)).map(|(x, y)| key(x, y)).collect();
    Ok(p.edges().iter().copied().filter(|x| !cut.contains(x)).collect())
}

/// Whole-surface development after cutting all cycle edges but `e`, across the
/// given dual spanning tree (mesh edges to cross), or breadth-first when `None`.
/// The seed is `A`'s smallest face at its default pose.
pub fn unfold_via_cut_tree(
    p: &Polyhedron,
    q: &HamCycle,
    e: (usize, usize),
    tree: Option<&[(usize, usize)]>,
) -> Result<Net, UnfoldError> {
    let (a, b) = q.directed_edge(e.0, e.1).ok_or(UnfoldError::NotOnCycle(e.0, e.1))?;
    let crossable: HashSet<(usize, usize)> = crossable_edges(p, q, e)?.into_iter().collect();
    let tree_set: HashSet<(usize, usize)> = match tree {
        Some(t) => {
            let s: HashSet<(usize, usize)> = t.iter().map(|&(x, y)| key(x, y)).collect();
            if s.len() != p.num_faces() - 1 || !s.is_subset(&crossable) {
                return Err(UnfoldError::NotASpanningTree);
            }
            s
        }
        None => crossable.clone(),
    };
    let (ha, hb) = partition(p, q)?;
    let all: Vec<usize> = (0..p.num_faces()).collect();
    let side_of = |f: usize| if ha.faces.binary_search(&f).is_ok() { Side::A } else { Side::B };
    let (mut faces, _) = develop(p, &all, &tree_set, ha.faces[0], Rigid2::IDENTITY, side_of)?;
    faces.sort_by_key(|f| f.face);

    let cut: HashSet<(usize, usize)> = p.edges().iter().copied().filter(|x| !tree_set.contains(x)).collect();
    let (boundary_vertices, boundary) = boundary_walk(p, &faces, &cut, (b, successor(q, b)));
    Ok(Net {
        polyhedron: p.name().to_string(),
        cycle: q.clone(),
        join_edge: (a, b),
        faces,
        boundary,
        boundary_vertices,
        cut_edges: q.edges().filter(|&x| x != (a, b)).collect(),
        seeds: (ha.faces[0], hb.faces[0]),
    })
}

/// Traces the outline of a development: from each boundary half-edge, turn
/// around its head across uncut edges until the next cut edge. `start` is a
/// directed cut half-edge; the walk begins at its tail.
pub fn boundary_walk(
    p: &Polyhedron,
    faces: &[PlacedFace],
    cut: &HashSet<(usize, usize)>,
    start: (usize, usize),
) -> (Vec<usize>, Vec<Point2>) {
    let placed = |f: usize| faces.iter().find(|x| x.face == f).expect("all faces placed");
    let next_in = |f: usize, v: usize| {
        let face = p.face(f);
        face[(face.iter().position(|&x| x == v).expect("on face") + 1) % face.len()]
    };
    let mut verts = Vec::new();
    let mut pts = Vec::new();
    let (mut u, mut v) = start;
    let limit = 2 * p.num_edges() + 1;
    loop {
        let f = p.face_of_half_edge(u, v).expect("half-edge");
        verts.push(u);
        pts.push(placed(f).point_of(u).expect("on face"));
        // advance to the next cut half-edge leaving v
        let mut g = f;
        let mut w = next_in(g, v);
        while !cut.contains(&key(v, w)) {
            g = p.face_of_half_edge(w, v).expect("closed surface");
            w = next_in(g, v);
        }
        (u, v) = (v, w);
        if (u, v) == start || verts.len() > limit {
            break;
        }
    }
    (verts, pts)
}

/// One net per cycle edge, in traversal order. Every boundary is checked for
/// simplicity; with `dedupe`, nets whose outlines are congruent to an earlier
/// one are dropped.
pub fn enumerate_nets(p: &Polyhedron, q: &HamCycle, dedupe: bool) -> Result<Vec<Net>, UnfoldError> {
    let (ha, hb) = partition(p, q)?;
    let la = unfold_half(p, &ha, ha.faces[0], Rigid2::IDENTITY)?;
    let lb = unfold_half(p, &hb, hb.faces[0], Rigid2::IDENTITY)?;
    let edges: Vec<(usize, usize)> = q.edges().collect();
    let nets: Vec<Net> = edges
        .par_iter()
        .map(|&e| {
            let net = join(p, q, &la, &lb, e)?;
            match verify::check_simple(&net.boundary) {
                Ok(r) if r.is_simple => Ok(net),
                _ => Err(UnfoldError::NotSimple(e.0, e.1)),
            }
        })
        .collect::<Result<_, _>>()?;
    if !dedupe {
        return Ok(nets);
    }
    let mut kept: Vec<Net> = Vec::new();
    for net in nets {
        if !kept.iter().any(|k| verify::congruent(&k.boundary, &net.boundary)) {
            kept.push(net);
        }
    }
    Ok(kept)
}

/// Every spanning tree of the face-adjacency graph restricted to `crossable`
/// mesh edges, each given as the list of mesh edges it crosses.
pub fn dual_spanning_trees(p: &Polyhedron, crossable: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let arcs: Vec<(usize, usize, (usize, usize))> = crossable
        .iter()
        .map(|&(a, b)| {
            let f = p.face_of_half_edge(a, b).expect("edge");
            let g = p.face_of_half_edge(b, a).expect("edge");
            (f, g, key(a, b))
        })
        .collect();
    let n = p.num_faces();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut parent: Vec<usize> = (0..n).collect();
    spanning_rec(&arcs, 0, n, &mut parent, &mut chosen, &mut out);
    out
}

fn find(parent: &[usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

fn spanning_rec(
    arcs: &[(usize, usize, (usize, usize))],
    i: usize,
    n: usize,
    parent: &mut Vec<usize>,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if chosen.len() == n - 1 {
        out.push(chosen.clone());
        return;
    }
    if arcs.len() - i < n - 1 - chosen.len() {
        return;
    }
    let (f, g, e) = arcs[i];
    let (rf, rg) = (find(parent, f), find(parent, g));
    if rf != rg {
        parent[rf] = rg;
        chosen.push(e);
        spanning_rec(arcs, i + 1, n, parent, chosen, out);
        chosen.pop();
        parent[rf] = rf;
    }
    spanning_rec(arcs, i + 1, n, parent, chosen, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::f64::consts::PI;

    fn cube_q() -> (Polyhedron, HamCycle) {
        let cube = fixtures::cube();
        let q = HamCycle::parse(&cube, "15623784").unwrap();
        (cube, q)
    }

    #[test]
    fn cube_halves_are_three_and_three() {
        let (cube, q) = cube_q();
        let (a, b) = partition(&cube, &q).unwrap();
        assert_eq!((a.faces.len(), b.faces.len()), (3, 3));
        assert_eq!(a.interior_edges.len(), 2);
        let mut all: Vec<usize> = a.faces.iter().chain(&b.faces).copied().collect();
        all.sort();
        assert_eq!(all, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn octahedron_halves_are_four_and_four() {
        let oct = fixtures::octahedron();
        let q = HamCycle::parse(&oct, "123645").unwrap();
        let (a, b) = partition(&oct, &q).unwrap();
        assert_eq!((a.faces.len(), b.faces.len()), (4, 4));
    }

    #[test]
    fn pyramid_halves() {
        let p = fixtures::square_pyramid_octa_half();
        let q = HamCycle::parse(&p, "12534").unwrap();
        let (a, b) = partition(&p, &q).unwrap();
        // frozen from the fixture run
        assert_eq!((a.faces.len(), b.faces.len()), (3, 2));
    }

    #[test]
    fn seed_must_belong_to_half() {
        let (cube, q) = cube_q();
        let (a, b) = partition(&cube, &q).unwrap();
        assert_eq!(
            unfold_half(&cube, &a, b.faces[0], Rigid2::IDENTITY),
            Err(UnfoldError::SeedNotInHalf { face: b.faces[0], side: Side::A })
        );
    }

    #[test]
    fn default_pose_puts_seed_edge_on_x_axis() {
        let (cube, q) = cube_q();
        let (a, _) = partition(&cube, &q).unwrap();
        let l = unfold_half(&cube, &a, a.faces[0], Rigid2::IDENTITY).unwrap();
        let seed = l.faces.iter().find(|f| f.face == a.faces[0]).unwrap();
        assert_eq!(seed.points[0], Point2::new(0.0, 0.0));
        assert!(seed.points[1].y.abs() < 1e-15 && (seed.points[1].x - 1.0).abs() < 1e-15);
        assert!(crate::geom::signed_area(&seed.points) > 0.0);
    }

    #[test]
    fn join_rejects_non_cycle_edge_and_swapped_sides() {
        let (cube, q) = cube_q();
        let (a, b) = partition(&cube, &q).unwrap();
        let la = unfold_half(&cube, &a, a.faces[0], Rigid2::IDENTITY).unwrap();
        let lb = unfold_half(&cube, &b, b.faces[0], Rigid2::IDENTITY).unwrap();
        // 1-2 is a cube edge but not on this cycle
        assert_eq!(join(&cube, &q, &la, &lb, (0, 1)), Err(UnfoldError::NotOnCycle(0, 1)));
        assert_eq!(join(&cube, &q, &lb, &la, (0, 4)), Err(UnfoldError::WrongSides(Side::B, Side::A)));
    }

    #[test]
    fn boundary_walk_of_join_matches_assembly() {
        let (cube, q) = cube_q();
        for e in q.edges() {
            let net = unfold(&cube, &q, e).unwrap();
            let cut: HashSet<(usize, usize)> = net.cut_edges.iter().map(|&(a, b)| key(a, b)).collect();
            let (verts, pts) = boundary_walk(&cube, &net.faces, &cut, (e.1, successor(&q, e.1)));
            let n = verts.len();
            assert_eq!(n, net.boundary.len());
            let ok = (0..n).any(|s| {
                (0..n).all(|k| pts[k].dist(net.boundary[(s + k) % n]) < 1e-12)
            });
            assert!(ok, "edge {e:?}");
        }
    }

    #[test]
    fn dual_tree_counts() {
        // the cube's face graph is the octahedral graph: 384 spanning trees
        let cube = fixtures::cube();
        assert_eq!(dual_spanning_trees(&cube, cube.edges()).len(), 384);
        // the tetrahedron's is K4: 16
        let tet = fixtures::tetrahedron();
        assert_eq!(dual_spanning_trees(&tet, tet.edges()).len(), 16);
    }

    #[test]
    fn single_face_half_is_the_face() {
        // no closed surface splits off a single face, so build the half by hand
        let cube = fixtures::cube();
        let h = HalfSurface {
            side: Side::A,
            faces: vec![2],
            boundary: cube.face(2).to_vec(),
            interior_edges: Vec::new(),
        };
        let l = unfold_half(&cube, &h, 2, Rigid2::IDENTITY).unwrap();
        assert_eq!(l.boundary, cube.face_local_coords(2));
        for i in 0..4 {
            let a = crate::geom::interior_angle(l.boundary[(i + 3) % 4], l.boundary[i], l.boundary[(i + 1) % 4]);
            assert!((a - PI / 2.0).abs() < 1e-12);
        }
    }
}

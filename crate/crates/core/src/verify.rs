//! Numerical checks on planar layouts and nets.
//!
//! Everything here works from 2D coordinates plus the intrinsic 3D
//! measurements of the polyhedron; none of it reuses the placement code that
//! produced the coordinates.

use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::geom::{self, bbox_diagonal2, interior_angle, point_segment_distance, signed_area, Point2};
use crate::mesh::{Polyhedron, TOL_ANGLE};
use crate::report::CheckResult;
use crate::unfold::{HalfSurface, Net, PlacedFace, PlanarLayout, Side};

/// Relative to the layout's bounding-box diagonal.
pub const TOL_GEOM_REL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("polygon has {0} vertices, need at least 3")]
    TooFewVertices(usize),
    #[error("consecutive points {0} and {1} coincide")]
    RepeatedPoint(usize, usize),
    #[error("polygon is not simple")]
    NotSimple,
    #[error("face {0} has zero area in the layout")]
    DegenerateFace(usize),
    #[error("the join edge is not an edge of any side-A face")]
    MissingJoinEdge,
    #[error("face {0} of the layout does not match the surface")]
    FaceMismatch(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    /// Indices of the two offending segments (segment `i` runs from point `i` to `i + 1`).
    pub segments: (usize, usize),
    pub point: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplePolygonReport {
    pub is_simple: bool,
    pub violations: Vec<Violation>,
    pub area: f64,
}

fn tol_for(points: &[Point2]) -> f64 {
    TOL_GEOM_REL * bbox_diagonal2(points.iter().copied())
}

/// Brute-force segment-pair simplicity test. Straight vertices are allowed.
pub fn check_simple(poly: &[Point2]) -> Result<SimplePolygonReport, VerifyError> {
    check_simple_tol(poly, tol_for(poly))
}

pub fn check_simple_tol(poly: &[Point2], tol: f64) -> Result<SimplePolygonReport, VerifyError> {
    let n = poly.len();
    if n < 3 {
        return Err(VerifyError::TooFewVertices(n));
    }
    for i in 0..n {
        if poly[i].dist(poly[(i + 1) % n]) <= tol {
            return Err(VerifyError::RepeatedPoint(i, (i + 1) % n));
        }
    }
    let seg = |i: usize| (poly[i], poly[(i + 1) % n]);
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            if j == i + 1 || (i == 0 && j == n - 1) {
                // adjacent: they may only share the common vertex
                let (shared, far_i, far_j) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if point_segment_distance(far_j, a, b) <= tol || point_segment_distance(far_i, c, d) <= tol {
                    violations.push(Violation { segments: (i, j), point: (shared.x, shared.y) });
                }
                continue;
            }
            let (dist, at) = geom::segment_distance(a, b, c, d);
            if dist <= tol {
                violations.push(Violation { segments: (i, j), point: (at.x, at.y) });
            }
        }
    }
    Ok(SimplePolygonReport { is_simple: violations.is_empty(), violations, area: signed_area(poly) })
}

/// Non-strict convexity: every turn has the same sign, or is straight within tolerance.
pub fn check_convex(poly: &[Point2]) -> Result<bool, VerifyError> {
    let tol = tol_for(poly);
    if !check_simple_tol(poly, tol)?.is_simple {
        return Err(VerifyError::NotSimple);
    }
    let n = poly.len();
    let (mut left, mut right) = (false, false);
    for i in 0..n {
        let (p, c, x) = (poly[i], poly[(i + 1) % n], poly[(i + 2) % n]);
        let d = (c - p).cross(x - c) / (c - p).norm();
        if d > tol {
            left = true;
        } else if d < -tol {
            right = true;
        }
    }
    Ok(!(left && right))
}

/// Pairs of faces whose interiors overlap, with the overlap area.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct OverlapReport {
    pub pairs: Vec<(usize, usize, f64)>,
    pub total_area: f64,
}

impl OverlapReport {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn ccw(mut poly: Vec<Point2>) -> Vec<Point2> {
    if signed_area(&poly) < 0.0 {
        poly.reverse();
    }
    poly
}

/// Area of the intersection of two convex polygons (Sutherland-Hodgman).
pub fn convex_intersection_area(subject: &[Point2], clip: &[Point2]) -> f64 {
    let clip = ccw(clip.to_vec());
    let mut out = ccw(subject.to_vec());
    for i in 0..clip.len() {
        if out.is_empty() {
            return 0.0;
        }
        let (a, b) = (clip[i], clip[(i + 1) % clip.len()]);
        let side = |p: Point2| (b - a).cross(p - a);
        let input = std::mem::take(&mut out);
        for k in 0..input.len() {
            let (p, q) = (input[k], input[(k + 1) % input.len()]);
            let (sp, sq) = (side(p), side(q));
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp >= 0.0) != (sq >= 0.0) {
                let t = sp / (sp - sq);
                out.push(p + (q - p) * t);
            }
        }
    }
    if out.len() < 3 {
        0.0
    } else {
        signed_area(&out).abs()
    }
}

fn fan(points: &[Point2]) -> Vec<[Point2; 3]> {
    (1..points.len() - 1).map(|i| [points[0], points[i], points[i + 1]]).collect()
}

fn bbox(points: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

/// Fan-triangulates every face and sums triangle-pair intersection areas for
/// each face pair. Pairs whose overlap exceeds `tol_geom²` are reported.
pub fn check_no_overlap(faces: &[PlacedFace]) -> Result<OverlapReport, VerifyError> {
    let all: Vec<Point2> = faces.iter().flat_map(|f| f.points.iter().copied()).collect();
    let tol = tol_for(&all);
    let threshold = tol * tol;
    for f in faces {
        if f.points.len() < 3 || signed_area(&f.points).abs() <= threshold {
            return Err(VerifyError::DegenerateFace(f.face));
        }
    }
    let tris: Vec<Vec<[Point2; 3]>> = faces.iter().map(|f| fan(&f.points)).collect();
    let boxes: Vec<(Point2, Point2)> = faces.iter().map(|f| bbox(&f.points)).collect();
    let mut report = OverlapReport::default();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            let (bi, bj) = (boxes[i], boxes[j]);
            if bi.1.x <= bj.0.x + tol || bj.1.x <= bi.0.x + tol || bi.1.y <= bj.0.y + tol || bj.1.y <= bi.0.y + tol {
                continue;
            }
            let area: f64 = tris[i]
                .iter()
                .flat_map(|s| tris[j].iter().map(move |c| convex_intersection_area(s, c)))
                .sum();
            if area > threshold {
                report.pairs.push((faces[i].face, faces[j].face, area));
                report.total_area += area;
            }
        }
    }
    Ok(report)
}

/// Whether the side-A faces and side-B faces lie in opposite closed half-planes
/// of the line through the join edge.
pub fn check_half_planes(net: &Net) -> Result<bool, VerifyError> {
    let (a, b) = net.join_edge;
    let (pa, pb) = net
        .faces
        .iter()
        .filter(|f| f.side == Side::A)
        .find_map(|f| {
            let k = f.vertices.len();
            (0..k).find_map(|i| {
                let (u, v) = (f.vertices[i], f.vertices[(i + 1) % k]);
                ((u, v) == (a, b) || (u, v) == (b, a))
                    .then(|| (f.point_of(a).expect("on face"), f.point_of(b).expect("on face")))
            })
        })
        .ok_or(VerifyError::MissingJoinEdge)?;
    let all: Vec<Point2> = net.faces.iter().flat_map(|f| f.points.iter().copied()).collect();
    let tol = tol_for(&all);
    let dir = pb - pa;
    let len = dir.norm();
    let range = |side: Side| {
        net.faces
            .iter()
            .filter(|f| f.side == side)
            .flat_map(|f| f.points.iter())
            .map(|&p| dir.cross(p - pa) / len)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)))
    };
    let (a_lo, a_hi) = range(Side::A);
    let (b_lo, b_hi) = range(Side::B);
    Ok((a_lo >= -tol && b_hi <= tol) || (a_hi <= tol && b_lo >= -tol))
}

/// Largest deviation of placed faces from their 3D originals: relative error
/// for edge lengths, absolute for corner angles.
pub fn face_isometry_error(p: &Polyhedron, faces: &[PlacedFace]) -> Result<f64, VerifyError> {
    let mut worst = 0.0f64;
    for f in faces {
        if f.face >= p.num_faces() || p.face(f.face) != f.vertices.as_slice() || f.points.len() != f.vertices.len() {
            return Err(VerifyError::FaceMismatch(f.face));
        }
        let k = f.vertices.len();
        for i in 0..k {
            let (u, v) = (f.vertices[i], f.vertices[(i + 1) % k]);
            let l3 = (p.vertex(v) - p.vertex(u)).norm();
            let l2 = f.points[i].dist(f.points[(i + 1) % k]);
            worst = worst.max((l2 - l3).abs() / l3);
            // a mirrored placement reads 2π − angle here and fails
            let planar = interior_angle(f.points[(i + k - 1) % k], f.points[i], f.points[(i + 1) % k]);
            worst = worst.max((planar - p.corner_angles(f.face)[i]).abs());
        }
    }
    Ok(worst)
}

/// Isometry error of a half's layout; the layout must place exactly the half's faces.
pub fn check_isometry(p: &Polyhedron, h: &HalfSurface, l: &PlanarLayout) -> Result<f64, VerifyError> {
    let placed: Vec<usize> = l.faces.iter().map(|f| f.face).collect();
    let mut sorted = placed.clone();
    sorted.sort_unstable();
    if sorted != h.faces {
        let odd = placed
            .iter()
            .chain(&h.faces)
            .find(|f| !(placed.contains(f) && h.faces.contains(f)))
            .copied()
            .unwrap_or(0);
        return Err(VerifyError::FaceMismatch(odd));
    }
    face_isometry_error(p, &l.faces)
}

/// Smallest max-distance between `b` and a rigid image of `a`, with points
/// matched by index. Least-squares rotation about the centroids.
pub fn rigid_residual(a: &[Point2], b: &[Point2], allow_reflection: bool) -> f64 {
    assert_eq!(a.len(), b.len(), "correspondence requires equal lengths");
    let fit = |a: &[Point2]| {
        let n = a.len() as f64;
        let ca = a.iter().fold(Point2::default(), |s, &p| s + p) * (1.0 / n);
        let cb = b.iter().fold(Point2::default(), |s, &p| s + p) * (1.0 / n);
        let (mut sc, mut ss) = (0.0, 0.0);
        for (&p, &q) in a.iter().zip(b) {
            let (u, v) = (p - ca, q - cb);
            sc += u.dot(v);
            ss += u.cross(v);
        }
        let th = ss.atan2(sc);
        let (s, c) = th.sin_cos();
        a.iter()
            .zip(b)
            .map(|(&p, &q)| {
                let u = p - ca;
                let r = Point2::new(c * u.x - s * u.y, s * u.x + c * u.y) + cb;
                r.dist(q)
            })
            .fold(0.0, f64::max)
    };
    let direct = fit(a);
    if !allow_reflection {
        return direct;
    }
    let mirrored: Vec<Point2> = a.iter().map(|p| Point2::new(-p.x, p.y)).collect();
    direct.min(fit(&mirrored))
}

fn drop_straight(poly: &[Point2], tol: f64) -> Vec<Point2> {
    let n = poly.len();
    (0..n)
        .filter(|&i| {
            let (p, c, x) = (poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
            let d = (c - p).cross(x - c) / (c - p).norm();
            let forward = (c - p).dot(x - c) > 0.0;
            !(d.abs() <= tol && forward)
        })
        .map(|i| poly[i])
        .collect()
}

/// Congruence up to rotation, translation and reflection, ignoring straight
/// vertices. Candidate correspondences come from matching edge-length/angle
/// sequences; a match is accepted when the best rigid alignment is within
/// `1e-7 ×` the diagonal of `p1`.
pub fn congruent(p1: &[Point2], p2: &[Point2]) -> bool {
    let tol = tol_for(p1);
    let a = ccw(drop_straight(p1, tol));
    let b = ccw(drop_straight(p2, tol));
    if a.len() != b.len() || a.len() < 3 {
        return false;
    }
    let n = a.len();
    let signature = |poly: &[Point2]| -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let (p, c, x) = (poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
                (c.dist(x), interior_angle(p, c, x))
            })
            .collect()
    };
    let sa = signature(&a);
    let mirrored: Vec<Point2> = a.iter().rev().map(|p| Point2::new(-p.x, p.y)).collect();
    let sm = signature(&mirrored);
    let sb = signature(&b);
    for (src, sig) in [(&a, &sa), (&mirrored, &sm)] {
        for shift in 0..n {
            let matches = (0..n).all(|k| {
                let (l1, t1) = sig[(k + shift) % n];
                let (l2, t2) = sb[k];
                (l1 - l2).abs() <= 10.0 * tol && (t1 - t2).abs() <= 1e-6
            });
            if !matches {
                continue;
            }
            let aligned: Vec<Point2> = (0..n).map(|k| src[(k + shift) % n]).collect();
            if rigid_residual(&aligned, &b, false) <= tol {
                return true;
            }
        }
    }
    false
}

/// Interior angles of a counterclockwise polygon.
pub fn interior_angles(poly: &[Point2]) -> Vec<f64> {
    let n = poly.len();
    (0..n)
        .map(|i| interior_angle(poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]))
        .collect()
}

/// Whether the cut edges plus the join edge are exactly the cycle's edges and the
/// cuts form a path through every vertex.
pub fn check_cut_path(net: &Net) -> bool {
    let key = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let cycle: HashSet<(usize, usize)> = net.cycle.edges().map(key).collect();
    let mut cuts: HashSet<(usize, usize)> = net.cut_edges.iter().copied().map(key).collect();
    if cuts.len() != net.cut_edges.len() || cuts.contains(&key(net.join_edge)) {
        return false;
    }
    let n = net.cycle.len();
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in &cuts {
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    let path_like = cuts.len() == n - 1 && degree.len() == n && degree.values().all(|&d| d <= 2);
    cuts.insert(key(net.join_edge));
    path_like && cuts == cycle
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub worst_residual: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Every check applicable to a net. The isometry check needs the polyhedron.
pub fn verify_net(p: Option<&Polyhedron>, net: &Net) -> VerificationReport {
    let mut checks = Vec::new();
    let mut worst = 0.0f64;

    checks.push(match check_simple(&net.boundary) {
        Ok(r) => CheckResult::new(
            "simple",
            r.is_simple,
            format!("{} boundary vertices, {} violations, area {:.9}", net.boundary.len(), r.violations.len(), r.area),
        ),
        Err(e) => CheckResult::new("simple", false, e.to_string()),
    });
    checks.push(match check_no_overlap(&net.faces) {
        Ok(r) => {
            worst = worst.max(r.total_area);
            CheckResult::new(
                "no_overlap",
                r.is_empty(),
                format!("{} faces, {} overlapping pairs, total overlap {:.3e}", net.faces.len(), r.pairs.len(), r.total_area),
            )
        }
        Err(e) => CheckResult::new("no_overlap", false, e.to_string()),
    });
    checks.push(match check_half_planes(net) {
        Ok(ok) => CheckResult::new("half_planes", ok, "halves on opposite sides of the join line"),
        Err(e) => CheckResult::new("half_planes", false, e.to_string()),
    });
    checks.push(CheckResult::new(
        "cut_path",
        check_cut_path(net),
        format!("{} cut edges + join edge = cycle", net.cut_edges.len()),
    ));
    if let Some(p) = p {
        let mut seen: Vec<usize> = net.faces.iter().map(|f| f.face).collect();
        seen.sort_unstable();
        seen.dedup();
        checks.push(CheckResult::new(
            "all_faces",
            seen.len() == net.faces.len() && seen == (0..p.num_faces()).collect::<Vec<_>>(),
            format!("{} of {} faces placed once", seen.len(), p.num_faces()),
        ));
        checks.push(match face_isometry_error(p, &net.faces) {
            Ok(err) => {
                worst = worst.max(err);
                CheckResult::new("isometry", err <= 1e-9, format!("max error {err:.3e}"))
            }
            Err(e) => CheckResult::new("isometry", false, e.to_string()),
        });
    }
    VerificationReport { checks, worst_residual: worst }
}

/// Boundary angles of a half's layout against the side angles of the cycle.
/// Returns the largest absolute difference.
pub fn boundary_angle_error(l: &PlanarLayout, side_angle: impl Fn(usize) -> f64) -> f64 {
    interior_angles(&l.boundary)
        .iter()
        .zip(&l.boundary_vertices)
        .map(|(&a, &v)| (a - side_angle(v)).abs())
        .fold(0.0, f64::max)
}

/// Whether every boundary angle is at most π (+ `TOL_ANGLE`).
pub fn boundary_angles_convex(l: &PlanarLayout) -> bool {
    interior_angles(&l.boundary).iter().all(|&a| a <= PI + TOL_ANGLE)
}

//! Convex hulls of small point sets.
//!
//! [`supporting_facets`] enumerates every supporting plane through three input
//! points and merges coplanar vertices into one face; it is exact about
//! non-triangular faces and is what the named fixtures are built with.
//! [`incremental_hull`] is the usual incremental construction for points in
//! general position and produces triangles only.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::geom::Vec3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HullError {
    #[error("need at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("the points are (nearly) coplanar")]
    Flat,
    #[error("point {0} is not a hull vertex")]
    InteriorPoint(usize),
}

/// Faces of the convex hull of `points`, each counterclockwise about its outward
/// normal and starting at its smallest vertex index; faces sorted lexicographically.
/// `tol` is an absolute plane-distance tolerance. Cubic in the number of points.
pub fn supporting_facets(points: &[Vec3], tol: f64) -> Result<Vec<Vec<usize>>, HullError> {
    let n = points.len();
    if n < 4 {
        return Err(HullError::TooFewPoints(n));
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = (points[j] - points[i]).cross(points[k] - points[i]);
                if normal.norm() <= tol {
                    continue;
                }
                let mut normal = normal.normalized();
                let offset = normal.dot(points[i]);
                let heights: Vec<f64> = points.iter().map(|p| normal.dot(*p) - offset).collect();
                let above = heights.iter().any(|&h| h > tol);
                let below = heights.iter().any(|&h| h < -tol);
                match (above, below) {
                    (true, true) => continue,
                    (false, false) => return Err(HullError::Flat),
                    (true, false) => normal = -normal,
                    (false, true) => {}
                }
                let on: Vec<usize> = (0..n).filter(|&m| heights[m].abs() <= tol).collect();
                if seen.insert(on.clone()) {
                    faces.push(order_ccw(points, &on, normal));
                }
            }
        }
    }
    faces.sort();
    Ok(faces)
}

fn order_ccw(points: &[Vec3], idx: &[usize], normal: Vec3) -> Vec<usize> {
    let c = idx.iter().fold(Vec3::ZERO, |acc, &i| acc + points[i]) * (1.0 / idx.len() as f64);
    let u = (points[idx[0]] - c).normalized();
    let w = normal.cross(u);
    let mut with_angle: Vec<(f64, usize)> = idx
        .iter()
        .map(|&i| {
            let d = points[i] - c;
            (d.dot(w).atan2(d.dot(u)), i)
        })
        .collect();
    with_angle.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<usize> = with_angle.into_iter().map(|(_, i)| i).collect();
    let m = out.iter().enumerate().min_by_key(|(_, &v)| v).map(|(p, _)| p).unwrap_or(0);
    out.rotate_left(m);
    out
}

/// Triangulated hull, outward-counterclockwise. Every input point must end up
/// a hull vertex; `eps` is the visibility threshold (absolute distance).
pub fn incremental_hull(points: &[Vec3], eps: f64) -> Result<Vec<[usize; 3]>, HullError> {
    let n = points.len();
    if n < 4 {
        return Err(HullError::TooFewPoints(n));
    }
    // initial tetrahedron from the first four points, which must span space
    let vol = (points[1] - points[0]).cross(points[2] - points[0]).dot(points[3] - points[0]);
    if vol.abs() <= eps {
        return Err(HullError::Flat);
    }
    let mut faces: Vec<Option<[usize; 3]>> = if vol > 0.0 {
        // point 3 is on the positive side of (0,1,2); orient that face away from it
        vec![Some([0, 2, 1]), Some([0, 1, 3]), Some([1, 2, 3]), Some([2, 0, 3])]
    } else {
        vec![Some([0, 1, 2]), Some([0, 3, 1]), Some([1, 3, 2]), Some([2, 3, 0])]
    };

    let height = |f: &[usize; 3], p: Vec3| {
        let n = (points[f[1]] - points[f[0]]).cross(points[f[2]] - points[f[0]]).normalized();
        n.dot(p - points[f[0]])
    };

    for (pi, &p) in points.iter().enumerate().skip(4) {
        let visible: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter_map(|(fi, f)| f.filter(|f| height(f, p) > eps).map(|_| fi))
            .collect();
        if visible.is_empty() {
            return Err(HullError::InteriorPoint(pi));
        }
        let mut directed: HashMap<(usize, usize), bool> = HashMap::new();
        for f in faces.iter().flatten() {
            for e in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                directed.insert(e, false);
            }
        }
        for &fi in &visible {
            let f = faces[fi].expect("visible face is live");
            for e in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                directed.insert(e, true);
            }
        }
        let mut horizon = Vec::new();
        for &fi in &visible {
            let f = faces[fi].expect("visible face is live");
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                if !directed[&(b, a)] {
                    horizon.push((a, b));
                }
            }
        }
        for &fi in &visible {
            faces[fi] = None;
        }
        for (a, b) in horizon {
            faces.push(Some([a, b, pi]));
        }
    }

    let out: Vec<[usize; 3]> = faces.into_iter().flatten().collect();
    let mut used = vec![false; n];
    for f in &out {
        for &v in f {
            used[v] = true;
        }
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(HullError::InteriorPoint(i));
    }
    Ok(out)
}

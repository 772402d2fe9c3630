//! Random convex polyhedra for property runs.
//!
//! Points are drawn from `ChaCha8Rng::seed_from_u64(seed)`: for each point,
//! `z = 2u - 1` and `t = 2πu'` with `u, u'` uniform in `[0, 1)`, giving
//! `(sqrt(1 - z²) cos t, sqrt(1 - z²) sin t, z)` on the unit sphere. A draw
//! whose hull is degenerate (a point not on the hull, a sliver face, or two
//! nearly coplanar neighbouring faces) is discarded and the stream continues.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::Vec3;
use crate::hull;
use crate::mesh::{validate, Polyhedron};

pub const MAX_ATTEMPTS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorpusError {
    #[error("need at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("no non-degenerate hull after {0} attempts")]
    Degenerate(usize),
}

fn sphere_point(rng: &mut ChaCha8Rng) -> Vec3 {
    let z = 2.0 * rng.random::<f64>() - 1.0;
    let t = 2.0 * PI * rng.random::<f64>();
    let r = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(r * t.cos(), r * t.sin(), z)
}

/// Convex hull of `n_points` random points on the unit sphere. Always simplicial.
pub fn corpus_gen(n_points: usize, seed: u64) -> Result<Polyhedron, CorpusError> {
    if n_points < 4 {
        return Err(CorpusError::TooFewPoints(n_points));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let points: Vec<Vec3> = (0..n_points).map(|_| sphere_point(&mut rng)).collect();
        let Ok(tris) = hull::incremental_hull(&points, 1e-9) else { continue };
        let faces: Vec<Vec<usize>> = tris.iter().map(|t| t.to_vec()).collect();
        let Ok(p) = Polyhedron::new(format!("random-n{n_points}-seed{seed}"), points, faces) else { continue };
        if well_shaped(&p) && validate(&p, true).is_valid() {
            return Ok(p);
        }
    }
    Err(CorpusError::Degenerate(MAX_ATTEMPTS))
}

fn well_shaped(p: &Polyhedron) -> bool {
    let min_angle = (0..p.num_faces()).flat_map(|f| p.corner_angles(f).iter().copied()).fold(PI, f64::min);
    let flattest = p
        .edges()
        .iter()
        .map(|&(a, b)| {
            let f = p.face_of_half_edge(a, b).expect("edge");
            let g = p.face_of_half_edge(b, a).expect("edge");
            p.face_normal(f).dot(p.face_normal(g))
        })
        .fold(-1.0, f64::max);
    min_angle > 1e-3 && flattest < 1.0 - 1e-6
}

/// `count` solids with 8..=16 vertices: solid `i` has `8 + i % 9` points and seed `i`.
pub fn default_corpus(count: usize) -> Vec<Polyhedron> {
    (0..count)
        .map(|i| corpus_gen(8 + i % 9, i as u64).expect("default corpus seeds are non-degenerate"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_points_make_a_tetrahedron() {
        for seed in 0..5 {
            let p = corpus_gen(4, seed).unwrap();
            assert_eq!((p.num_vertices(), p.num_faces()), (4, 4));
        }
    }

    #[test]
    fn simplicial_counts() {
        let p = corpus_gen(8, 1).unwrap();
        assert_eq!((p.num_vertices(), p.num_edges(), p.num_faces()), (8, 18, 12));
        for n in 5..20 {
            let p = corpus_gen(n, 7).unwrap();
            assert_eq!(p.num_edges(), 3 * n - 6);
            assert_eq!(p.num_faces(), 2 * n - 4);
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let a = corpus_gen(12, 42).unwrap();
        let b = corpus_gen(12, 42).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert_eq!(a.faces(), b.faces());
        assert_ne!(a.vertices(), corpus_gen(12, 43).unwrap().vertices());
    }

    #[test]
    fn too_few_points() {
        assert_eq!(corpus_gen(3, 0).unwrap_err(), CorpusError::TooFewPoints(3));
    }

    #[test]
    fn every_vertex_is_below_every_face_plane() {
        // all-pairs plane-side test, independent of the hull construction
        for seed in 0..20 {
            let p = corpus_gen(8 + (seed as usize % 9), seed).unwrap();
            for f in 0..p.num_faces() {
                let face = p.face(f);
                let (a, b, c) = (p.vertex(face[0]), p.vertex(face[1]), p.vertex(face[2]));
                let n = (b - a).cross(c - a);
                for v in 0..p.num_vertices() {
                    if !face.contains(&v) {
                        assert!(n.dot(p.vertex(v) - a) < 0.0, "seed {seed} face {f} vertex {v}");
                    }
                }
            }
        }
    }
}

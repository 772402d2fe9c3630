//! Named solids with closed-form coordinates.
//!
//! Labelings (1-based, as used on the command line):
//!
//! * `square_pyramid_octa_half`: unit square base 1-2-3-4 counterclockwise seen
//!   from above, apex 5. The cycle `12534` is a Hamiltonian quasigeodesic.
//! * `octahedron` (unit edge): 1 top, 2-3-4-5 the equator counterclockwise seen
//!   from above, 6 bottom. Cycle `123645`.
//! * `cube` (unit edge): bottom square 1-2-3-4, top square 5-6-7-8 with 5 above 1,
//!   6 above 2, and so on. Cycle `15623784` is used in the examples.
//! * `tetrahedron`, `icosahedron`, `dodecahedron`: unit edge, vertices in the
//!   order of their usual coordinate descriptions (see the constructors).
//! * `rhombic_dodecahedron`: the eight cube vertices (±1, ±1, ±1) first, then the
//!   six axis points (±2, 0, 0), (0, ±2, 0), (0, 0, ±2).
//!
//! Faces are the supporting planes of the vertex set, counterclockwise from
//! outside, each starting at its smallest vertex, sorted.

use crate::geom::Vec3;
use crate::hull;
use crate::mesh::Polyhedron;

pub const NAMES: [&str; 7] = [
    "tetrahedron",
    "cube",
    "octahedron",
    "dodecahedron",
    "icosahedron",
    "rhombic_dodecahedron",
    "square_pyramid_octa_half",
];

pub fn by_name(name: &str) -> Option<Polyhedron> {
    Some(match name {
        "tetrahedron" => tetrahedron(),
        "cube" => cube(),
        "octahedron" => octahedron(),
        "dodecahedron" => dodecahedron(),
        "icosahedron" => icosahedron(),
        "rhombic_dodecahedron" => rhombic_dodecahedron(),
        "square_pyramid_octa_half" => square_pyramid_octa_half(),
        _ => return None,
    })
}

pub fn all() -> Vec<Polyhedron> {
    NAMES.iter().map(|n| by_name(n).expect("known fixture")).collect()
}

fn golden() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

fn from_points(name: &str, vertices: Vec<Vec3>) -> Polyhedron {
    let faces = hull::supporting_facets(&vertices, 1e-9).expect("fixture points are in convex position");
    Polyhedron::new(name, vertices, faces).expect("fixture surfaces are closed manifolds")
}

pub fn tetrahedron() -> Polyhedron {
    let s = 1.0 / (2.0 * 2f64.sqrt());
    let v = [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)];
    from_points("tetrahedron", v.iter().map(|&(x, y, z)| Vec3::new(x, y, z) * s).collect())
}

pub fn cube() -> Polyhedron {
    let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    let vertices = [0.0, 1.0]
        .iter()
        .flat_map(|&z| sq.iter().map(move |&(x, y)| Vec3::new(x, y, z)))
        .collect();
    from_points("cube", vertices)
}

pub fn octahedron() -> Polyhedron {
    let s = 1.0 / 2f64.sqrt();
    from_points(
        "octahedron",
        vec![
            Vec3::new(0.0, 0.0, s),
            Vec3::new(s, 0.0, 0.0),
            Vec3::new(0.0, s, 0.0),
            Vec3::new(-s, 0.0, 0.0),
            Vec3::new(0.0, -s, 0.0),
            Vec3::new(0.0, 0.0, -s),
        ],
    )
}

/// Even permutations of (±1/φ, ±φ, 0) plus (±1, ±1, ±1), scaled to unit edge.
pub fn dodecahedron() -> Polyhedron {
    let phi = golden();
    let s = phi / 2.0;
    let mut v = Vec::new();
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                v.push(Vec3::new(x, y, z));
            }
        }
    }
    for &a in &[-1.0, 1.0] {
        for &b in &[-1.0, 1.0] {
            v.push(Vec3::new(0.0, a / phi, b * phi));
            v.push(Vec3::new(a / phi, b * phi, 0.0));
            v.push(Vec3::new(b * phi, 0.0, a / phi));
        }
    }
    from_points("dodecahedron", v.into_iter().map(|p| p * s).collect())
}

/// Cyclic permutations of (0, ±1, ±φ), scaled to unit edge.
pub fn icosahedron() -> Polyhedron {
    let phi = golden();
    let mut v = Vec::new();
    for &a in &[-1.0, 1.0] {
        for &b in &[-1.0, 1.0] {
            v.push(Vec3::new(0.0, a, b * phi));
            v.push(Vec3::new(a, b * phi, 0.0));
            v.push(Vec3::new(b * phi, 0.0, a));
        }
    }
    from_points("icosahedron", v.into_iter().map(|p| p * 0.5).collect())
}

pub fn rhombic_dodecahedron() -> Polyhedron {
    let mut v = Vec::new();
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                v.push(Vec3::new(x, y, z));
            }
        }
    }
    for &s in &[2.0, -2.0] {
        v.push(Vec3::new(s, 0.0, 0.0));
        v.push(Vec3::new(0.0, s, 0.0));
        v.push(Vec3::new(0.0, 0.0, s));
    }
    from_points("rhombic_dodecahedron", v)
}

/// Unit square base and four equilateral sides: the upper half of a unit-edge
/// regular octahedron.
pub fn square_pyramid_octa_half() -> Polyhedron {
    from_points(
        "square_pyramid_octa_half",
        vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.5, 0.5, 1.0 / 2f64.sqrt()),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::validate;

    #[test]
    fn counts_and_validity() {
        let expect = [
            ("tetrahedron", 4, 6, 4),
            ("cube", 8, 12, 6),
            ("octahedron", 6, 12, 8),
            ("dodecahedron", 20, 30, 12),
            ("icosahedron", 12, 30, 20),
            ("rhombic_dodecahedron", 14, 24, 12),
            ("square_pyramid_octa_half", 5, 8, 5),
        ];
        for (name, v, e, f) in expect {
            let p = by_name(name).unwrap();
            assert_eq!((p.num_vertices(), p.num_edges(), p.num_faces()), (v, e, f), "{name}");
            let r = validate(&p, true);
            assert!(r.is_valid(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn unit_edges() {
        for name in ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron", "square_pyramid_octa_half"] {
            let p = by_name(name).unwrap();
            for &(a, b) in p.edges() {
                let len = (p.vertex(a) - p.vertex(b)).norm();
                assert!((len - 1.0).abs() < 1e-12, "{name} edge ({a},{b}) = {len}");
            }
        }
    }

    #[test]
    fn example_cycles_are_edge_cycles() {
        for (name, cycle) in [
            ("square_pyramid_octa_half", "12534"),
            ("octahedron", "123645"),
            ("cube", "15623784"),
        ] {
            let p = by_name(name).unwrap();
            let labels: Vec<usize> = cycle.bytes().map(|b| (b - b'1') as usize).collect();
            for i in 0..labels.len() {
                let (a, b) = (labels[i], labels[(i + 1) % labels.len()]);
                assert!(p.has_edge(a, b), "{name}: {}-{} not an edge", a + 1, b + 1);
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert!(by_name("torus").is_none());
    }
}

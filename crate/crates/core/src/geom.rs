//! Small fixed-size vector types and planar predicates.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            self * (1.0 / n)
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Orientation-preserving rigid motion of the plane: rotation then translation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rigid2 {
    pub cos: f64,
    pub sin: f64,
    pub tx: f64,
    pub ty: f64,
}

impl Default for Rigid2 {
    fn default() -> Self {
        Rigid2::IDENTITY
    }
}

impl Rigid2 {
    pub const IDENTITY: Rigid2 = Rigid2 { cos: 1.0, sin: 0.0, tx: 0.0, ty: 0.0 };

    pub fn new(angle: f64, translation: Point2) -> Self {
        Rigid2 { cos: angle.cos(), sin: angle.sin(), tx: translation.x, ty: translation.y }
    }

    /// The motion sending `src_a` to `dst_a` and the direction of `src_b - src_a`
    /// onto the direction of `dst_b - dst_a`.
    pub fn aligning(src_a: Point2, src_b: Point2, dst_a: Point2, dst_b: Point2) -> Self {
        let s = src_b - src_a;
        let d = dst_b - dst_a;
        let angle = d.y.atan2(d.x) - s.y.atan2(s.x);
        let (sin, cos) = angle.sin_cos();
        let rotated = Point2::new(cos * src_a.x - sin * src_a.y, sin * src_a.x + cos * src_a.y);
        Rigid2 { cos, sin, tx: dst_a.x - rotated.x, ty: dst_a.y - rotated.y }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        Point2::new(
            self.cos * p.x - self.sin * p.y + self.tx,
            self.sin * p.x + self.cos * p.y + self.ty,
        )
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Rigid2) -> Rigid2 {
        let t = self.apply(Point2::new(first.tx, first.ty));
        Rigid2 {
            cos: self.cos * first.cos - self.sin * first.sin,
            sin: self.sin * first.cos + self.cos * first.sin,
            tx: t.x,
            ty: t.y,
        }
    }
}

/// Shoelace area, positive for counterclockwise cycles.
pub fn signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    let mut s = 0.0;
    for i in 0..n {
        s += poly[i].cross(poly[(i + 1) % n]);
    }
    0.5 * s
}

/// Interior angle at `v` of a counterclockwise polygon with neighbours `prev`, `next`,
/// in `(0, 2π)`.
pub fn interior_angle(prev: Point2, v: Point2, next: Point2) -> f64 {
    let a = next - v;
    let b = prev - v;
    let mut t = a.cross(b).atan2(a.dot(b));
    if t < 0.0 {
        t += 2.0 * PI;
    }
    t
}

pub fn bbox_diagonal2(points: impl IntoIterator<Item = Point2>) -> f64 {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut any = false;
    for p in points {
        any = true;
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    if any {
        (hi - lo).norm()
    } else {
        0.0
    }
}

/// Closest distance from `p` to the segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    p.dist(closest_on_segment(p, a, b))
}

pub fn closest_on_segment(p: Point2, a: Point2, b: Point2) -> Point2 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return a;
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    a + d * t
}

/// Minimum distance between two closed segments and a witness point between them.
pub fn segment_distance(a: Point2, b: Point2, c: Point2, d: Point2) -> (f64, Point2) {
    if let Some(x) = proper_crossing(a, b, c, d) {
        return (0.0, x);
    }
    let candidates = [
        (a, closest_on_segment(a, c, d)),
        (b, closest_on_segment(b, c, d)),
        (closest_on_segment(c, a, b), c),
        (closest_on_segment(d, a, b), d),
    ];
    let mut best = (f64::INFINITY, a);
    for (p, q) in candidates {
        let dist = p.dist(q);
        if dist < best.0 {
            best = (dist, (p + q) * 0.5);
        }
    }
    best
}

/// Intersection point when the open segments cross transversally.
pub fn proper_crossing(a: Point2, b: Point2, c: Point2, d: Point2) -> Option<Point2> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    if denom == 0.0 {
        return None;
    }
    let t = (c - a).cross(s) / denom;
    let u = (c - a).cross(r) / denom;
    if t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0 {
        Some(a + r * t)
    } else {
        None
    }
}

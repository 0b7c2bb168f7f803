//! Exact 2D primitives: vectors, rays, specular reflection and the
//! intersection routines used by the tracer.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used when checking that a direction is unit length.
pub const UNIT_TOLERANCE: f64 = 1e-9;

/// Two directions whose cross product is below this are treated as parallel.
pub const PARALLEL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("{what} is not a unit vector (length {length})")]
    NotUnit { what: &'static str, length: f64 },
    #[error("ray arrives from behind the surface (incident·normal = {0})")]
    BehindSurface(f64),
    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),
    #[error("zero-length direction")]
    ZeroDirection,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn length_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let len = self.length();
        if len == 0.0 || !len.is_finite() {
            None
        } else {
            Some(self * (1.0 / len))
        }
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).length()
    }

    /// Unsigned angle between two non-zero vectors, in radians.
    pub fn angle_to(self, other: Vec2) -> f64 {
        self.cross(other).abs().atan2(self.dot(other))
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(v: [f64; 2]) -> Self {
        Vec2::new(v[0], v[1])
    }
}

fn check_unit(what: &'static str, v: Vec2) -> Result<(), GeometryError> {
    if !v.is_finite() {
        return Err(GeometryError::NonFinite(what));
    }
    let length = v.length();
    if (length - 1.0).abs() > UNIT_TOLERANCE {
        return Err(GeometryError::NotUnit { what, length });
    }
    Ok(())
}

/// A half-line with a unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub origin: Vec2,
    pub direction: Vec2,
}

impl Ray {
    /// Builds a ray, normalizing `direction`.
    pub fn new(origin: Vec2, direction: Vec2) -> Result<Ray, GeometryError> {
        if !origin.is_finite() {
            return Err(GeometryError::NonFinite("ray origin"));
        }
        if !direction.is_finite() {
            return Err(GeometryError::NonFinite("ray direction"));
        }
        let direction = direction.normalized().ok_or(GeometryError::ZeroDirection)?;
        Ok(Ray { origin, direction })
    }

    /// Ray from `origin` aimed at `target`.
    pub fn towards(origin: Vec2, target: Vec2) -> Result<Ray, GeometryError> {
        Ray::new(origin, target - origin)
    }

    pub fn at(&self, t: f64) -> Vec2 {
        self.origin + self.direction * t
    }
}

/// A ray/surface intersection. `normal` faces the arriving ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hit {
    pub point: Vec2,
    pub normal: Vec2,
    pub t: f64,
}

/// Mirror `incident` about the surface with unit `normal`.
///
/// The normal must face the incoming ray (`incident·normal < 0`).
pub fn reflect_direction(incident: Vec2, normal: Vec2) -> Result<Vec2, GeometryError> {
    check_unit("incident direction", incident)?;
    check_unit("surface normal", normal)?;
    let cos = incident.dot(normal);
    if cos >= 0.0 {
        return Err(GeometryError::BehindSurface(cos));
    }
    Ok(incident - normal * (2.0 * cos))
}

/// Ray parameters `t` (ascending, each `> 1e-12·radius`) where the ray
/// meets the circle. Tangency yields a single root.
pub fn ray_circle_roots(ray: &Ray, center: Vec2, radius: f64) -> Vec<f64> {
    let rel = ray.origin - center;
    let c = rel.length_squared() - radius * radius;
    circle_roots(ray, rel, c, radius)
}

/// Like [`ray_circle_roots`] but uses a known point `anchor` on the circle
/// to form the constant term without cancellation. Needed for very large
/// radii where `|origin - center|² - r²` loses every significant digit.
pub fn ray_circle_roots_anchored(ray: &Ray, center: Vec2, radius: f64, anchor: Vec2) -> Vec<f64> {
    let w = ray.origin - anchor;
    let to_anchor = anchor - center;
    let c = w.length_squared() + 2.0 * w.dot(to_anchor);
    let rel = w + to_anchor;
    circle_roots(ray, rel, c, radius)
}

fn circle_roots(ray: &Ray, rel: Vec2, c: f64, radius: f64) -> Vec<f64> {
    // t² + 2bt + c = 0
    let b = ray.direction.dot(rel);
    let disc = b * b - c;
    let eps = 1e-12 * radius;
    if !disc.is_finite() || disc < 0.0 {
        return Vec::new();
    }
    let mut roots = if disc == 0.0 {
        vec![-b]
    } else {
        let q = -b - b.signum() * disc.sqrt();
        let (r1, r2) = if q == 0.0 {
            // b = 0 and c = 0: origin on the circle moving tangentially
            (0.0, 0.0)
        } else {
            (q, c / q)
        };
        if r1 <= r2 {
            vec![r1, r2]
        } else {
            vec![r2, r1]
        }
    };
    roots.retain(|&t| t > eps);
    roots.dedup();
    roots
}

fn hit_at(ray: &Ray, center: Vec2, t: f64) -> Hit {
    let point = ray.at(t);
    let mut normal = (point - center).normalized().unwrap_or(-ray.direction);
    if normal.dot(ray.direction) > 0.0 {
        normal = -normal;
    }
    Hit { point, normal, t }
}

/// Nearest intersection of `ray` with the circle, ignoring hits closer than
/// `1e-12·radius` so a ray leaving the surface does not re-hit its origin.
pub fn intersect_ray_circle(ray: &Ray, center: Vec2, radius: f64) -> Option<Hit> {
    debug_assert!(radius > 0.0);
    ray_circle_roots(ray, center, radius)
        .first()
        .map(|&t| hit_at(ray, center, t))
}

/// Hit on a circle at a previously computed root.
pub fn circle_hit(ray: &Ray, center: Vec2, t: f64) -> Hit {
    hit_at(ray, center, t)
}

/// Result of crossing two infinite lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineCrossing {
    Point(Vec2),
    /// Parallel and disjoint.
    Parallel,
    /// Parallel and coincident: every point is shared.
    Coincident,
}

impl LineCrossing {
    pub fn point(self) -> Option<Vec2> {
        match self {
            LineCrossing::Point(p) => Some(p),
            _ => None,
        }
    }
}

fn line_key(p: Vec2, d: Vec2) -> [f64; 4] {
    [p.x, p.y, d.x, d.y]
}

/// Crossing of the lines `p1 + s·d1` and `p2 + s·d2`.
///
/// The result does not depend on argument order: the pair is put in a
/// canonical order before solving.
pub fn intersect_lines(p1: Vec2, d1: Vec2, p2: Vec2, d2: Vec2) -> LineCrossing {
    let (k1, k2) = (line_key(p1, d1), line_key(p2, d2));
    let swap = k1
        .iter()
        .zip(&k2)
        .map(|(a, b)| a.total_cmp(b))
        .find(|o| o.is_ne())
        .is_some_and(|o| o.is_gt());
    let ((p1, d1), (p2, d2)) = if swap {
        ((p2, d2), (p1, d1))
    } else {
        ((p1, d1), (p2, d2))
    };

    let denom = d1.cross(d2);
    let gap = p2 - p1;
    if denom.abs() < PARALLEL_TOLERANCE {
        let offset = gap.cross(d1).abs();
        let scale = gap.length().max(1.0);
        return if offset <= 1e-12 * scale {
            LineCrossing::Coincident
        } else {
            LineCrossing::Parallel
        };
    }
    let s = gap.cross(d2) / denom;
    LineCrossing::Point(p1 + d1 * s)
}

/// Signed parameter of `point` along the line `(origin, direction)`.
pub fn param_along(origin: Vec2, direction: Vec2, point: Vec2) -> f64 {
    (point - origin).dot(direction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: Vec2, b: Vec2, tol: f64) -> bool {
        (a - b).length() <= tol
    }

    fn unit(theta: f64) -> Vec2 {
        Vec2::new(theta.cos(), theta.sin())
    }

    #[test]
    fn normal_incidence_retroreflects() {
        let r = reflect_direction(Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0)).unwrap();
        assert_eq!(r, Vec2::new(-1.0, 0.0));
    }

    #[test]
    fn forty_five_degree_flip() {
        let i = Vec2::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
        let r = reflect_direction(i, Vec2::new(0.0, 1.0)).unwrap();
        assert!(close(r, Vec2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2), 1e-15));
    }

    #[test]
    fn reflect_rejects_bad_inputs() {
        let n = Vec2::new(0.0, 1.0);
        assert!(matches!(
            reflect_direction(Vec2::new(2.0, 0.0), n),
            Err(GeometryError::NotUnit { .. })
        ));
        assert!(matches!(
            reflect_direction(Vec2::new(0.0, 1.0), n),
            Err(GeometryError::BehindSurface(_))
        ));
        assert!(matches!(
            reflect_direction(Vec2::new(1.0, 0.0), n),
            Err(GeometryError::BehindSurface(_))
        ));
        assert!(reflect_direction(Vec2::new(f64::NAN, 0.0), n).is_err());
    }

    #[test]
    fn reflection_preserves_angle_to_normal() {
        // Oracle: angle from atan2(|cross|, dot), independent of the
        // subtraction formula used by reflect_direction.
        let mut rng = StdRng::seed_from_u64(7);
        let mut done = 0;
        while done < 10_000 {
            let n = unit(rng.random_range(0.0..2.0 * PI));
            let i = unit(rng.random_range(0.0..2.0 * PI));
            if i.dot(n) >= -1e-6 {
                continue;
            }
            let r = reflect_direction(i, n).unwrap();
            let before = (-i).angle_to(n);
            let after = r.angle_to(n);
            assert!((before - after).abs() <= 1e-12, "{before} vs {after}");
            assert!((r.length() - 1.0).abs() <= 1e-12);
            // r lies on the other side of the normal from -i
            assert!((-i).cross(n) * r.cross(n) <= 1e-15);
            done += 1;
        }
    }

    #[test]
    fn reflection_is_an_involution() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10_000 {
            let n = unit(rng.random_range(0.0..2.0 * PI));
            let i = unit(rng.random_range(0.0..2.0 * PI));
            if i.dot(n) >= -1e-6 {
                continue;
            }
            let r = reflect_direction(i, n).unwrap();
            // the second bounce happens off the same plane seen from the other side
            let back = reflect_direction(r, -n).unwrap();
            assert!(close(back, i, 1e-12));
        }
    }

    #[test]
    fn axis_aligned_circle_hit() {
        let ray = Ray::new(Vec2::ZERO, Vec2::new(1.0, 0.0)).unwrap();
        let hit = intersect_ray_circle(&ray, Vec2::new(2.0, 0.0), 1.0).unwrap();
        assert!(close(hit.point, Vec2::new(1.0, 0.0), 1e-15));
        assert!((hit.t - 1.0).abs() < 1e-15);
        assert_eq!(hit.normal, Vec2::new(-1.0, 0.0));
    }

    #[test]
    fn disjoint_circle_misses() {
        let ray = Ray::new(Vec2::new(0.0, 2.0), Vec2::new(1.0, 0.0)).unwrap();
        assert!(intersect_ray_circle(&ray, Vec2::new(2.0, 0.0), 1.0).is_none());
    }

    #[test]
    fn tangent_ray_touches_once() {
        let ray = Ray::new(Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)).unwrap();
        let roots = ray_circle_roots(&ray, Vec2::new(2.0, 0.0), 1.0);
        assert_eq!(roots.len(), 1);
        assert!(close(ray.at(roots[0]), Vec2::new(2.0, 1.0), 1e-12));
    }

    #[test]
    fn inside_origin_hits_far_wall_with_inward_normal() {
        let ray = Ray::new(Vec2::new(2.0, 0.0), Vec2::new(1.0, 0.0)).unwrap();
        let hit = intersect_ray_circle(&ray, Vec2::new(2.0, 0.0), 1.0).unwrap();
        assert!(close(hit.point, Vec2::new(3.0, 0.0), 1e-15));
        assert_eq!(hit.normal, Vec2::new(-1.0, 0.0));
    }

    #[test]
    fn random_hits_lie_on_circle() {
        let mut rng = StdRng::seed_from_u64(3);
        let mut hits = 0;
        for _ in 0..10_000 {
            let center = Vec2::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            let radius = rng.random_range(0.1..5.0);
            let origin = Vec2::new(rng.random_range(-15.0..15.0), rng.random_range(-15.0..15.0));
            let ray = Ray::new(origin, unit(rng.random_range(0.0..2.0 * PI))).unwrap();
            if let Some(hit) = intersect_ray_circle(&ray, center, radius) {
                hits += 1;
                assert!(((hit.point - center).length() - radius).abs() <= 1e-9 * radius);
                assert!(hit.normal.dot(ray.direction) <= 0.0);
                assert!(close(ray.at(hit.t), hit.point, 1e-9));
                assert!(hit.t > 0.0);
            }
        }
        assert!(hits > 1000);
    }

    #[test]
    fn reflected_ray_never_rehits_its_origin() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..5_000 {
            let center = Vec2::ZERO;
            let radius = rng.random_range(0.5..3.0);
            let origin = unit(rng.random_range(0.0..2.0 * PI)) * (radius * 3.0);
            let ray = Ray::towards(origin, unit(rng.random_range(0.0..2.0 * PI)) * (radius * 0.5)).unwrap();
            let Some(hit) = intersect_ray_circle(&ray, center, radius) else {
                continue;
            };
            let out = Ray::new(hit.point, reflect_direction(ray.direction, hit.normal).unwrap()).unwrap();
            // reflected off the outside: escapes
            if let Some(again) = intersect_ray_circle(&out, center, radius) {
                assert!(again.t > 1e-9 * radius, "re-hit at t = {}", again.t);
            }
        }
    }

    #[test]
    fn anchored_roots_survive_huge_radius() {
        let radius = 1e8;
        let center = Vec2::new(radius, 0.0);
        let ray = Ray::towards(Vec2::new(1.0, 0.3), Vec2::ZERO).unwrap();
        let roots = ray_circle_roots_anchored(&ray, center, radius, Vec2::ZERO);
        let p = ray.at(roots[0]);
        // the cap is within 1e-9 of the vertex plane near the axis
        assert!(p.x.abs() < 1e-9 && p.y.abs() < 1e-9, "{p:?}");
    }

    #[test]
    fn axis_crossing() {
        let x = intersect_lines(
            Vec2::ZERO,
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(0.0, 1.0),
        );
        assert_eq!(x, LineCrossing::Point(Vec2::new(1.0, 0.0)));
    }

    #[test]
    fn parallel_and_coincident_are_distinct() {
        let d = Vec2::new(1.0, 0.0);
        assert_eq!(
            intersect_lines(Vec2::ZERO, d, Vec2::new(0.0, 1.0), d),
            LineCrossing::Parallel
        );
        assert_eq!(
            intersect_lines(Vec2::ZERO, d, Vec2::new(5.0, 0.0), -d),
            LineCrossing::Coincident
        );
        assert_eq!(LineCrossing::Parallel.point(), None);
    }

    #[test]
    fn random_crossings_lie_on_both_lines() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..10_000 {
            let p1 = Vec2::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            let p2 = Vec2::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            let d1 = unit(rng.random_range(0.0..2.0 * PI));
            let d2 = unit(rng.random_range(0.0..2.0 * PI));
            if d1.cross(d2).abs() < 1e-3 {
                continue;
            }
            let x = intersect_lines(p1, d1, p2, d2).point().unwrap();
            // residual: perpendicular distance to each line
            assert!((x - p1).cross(d1).abs() <= 1e-9);
            assert!((x - p2).cross(d2).abs() <= 1e-9);
            assert_eq!(intersect_lines(p2, d2, p1, d1).point(), Some(x));
        }
    }
}

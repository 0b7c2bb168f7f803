//! Plane and spherical-cap mirrors.
//!
//! Every mirror carries its own principal axis: a vertex `O` on the surface
//! and a unit `axis` pointing from `O` into the region in front of the
//! mirrored face. Axial coordinates are measured from `O` along `axis`, so
//! positive means in front of the face and negative means behind it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{self, GeometryError, Ray, Vec2};

/// Cap half-angle used when a scene does not give one.
pub const DEFAULT_APERTURE_DEG: f64 = 30.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MirrorError {
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("aperture half-angle must lie in (0, π/2), got {0} rad")]
    BadAperture(f64),
    #[error("plane mirror extent must be positive and finite, got {0}")]
    BadExtent(f64),
    #[error("axis direction must be a non-zero finite vector")]
    BadAxis,
    #[error("vertex must be finite")]
    BadVertex,
    #[error("ray reaches the mirror from behind its reflecting face")]
    BackSide,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Concave,
    Convex,
}

/// Focal length, signed: positive for concave, negative for convex and
/// infinite for a plane mirror.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FocalLength {
    Finite(f64),
    Infinite,
}

impl FocalLength {
    /// `1/f`, zero for a plane mirror.
    pub fn power(self) -> f64 {
        match self {
            FocalLength::Finite(f) => 1.0 / f,
            FocalLength::Infinite => 0.0,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            FocalLength::Finite(f) => Some(f),
            FocalLength::Infinite => None,
        }
    }
}

/// Orthonormal frame of a mirror's principal axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisFrame {
    pub vertex: Vec2,
    pub axis: Vec2,
}

impl AxisFrame {
    fn new(vertex: Vec2, axis: Vec2) -> Result<Self, MirrorError> {
        if !vertex.is_finite() {
            return Err(MirrorError::BadVertex);
        }
        if !axis.is_finite() {
            return Err(MirrorError::BadAxis);
        }
        let axis = axis.normalized().ok_or(MirrorError::BadAxis)?;
        Ok(AxisFrame { vertex, axis })
    }

    /// Unit vector across the axis (axis turned a quarter counter-clockwise).
    pub fn transverse(&self) -> Vec2 {
        self.axis.perp()
    }

    /// (axial, transverse) coordinates of a world point.
    pub fn to_local(&self, p: Vec2) -> (f64, f64) {
        let w = p - self.vertex;
        (w.dot(self.axis), w.dot(self.transverse()))
    }

    /// Local direction components (along axis, across axis).
    pub fn dir_to_local(&self, d: Vec2) -> (f64, f64) {
        (d.dot(self.axis), d.dot(self.transverse()))
    }

    pub fn to_world(&self, axial: f64, transverse: f64) -> Vec2 {
        self.vertex + self.axis * axial + self.transverse() * transverse
    }

    pub fn dir_to_world(&self, axial: f64, transverse: f64) -> Vec2 {
        self.axis * axial + self.transverse() * transverse
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalMirror {
    radius: f64,
    orientation: Orientation,
    aperture: f64,
    frame: AxisFrame,
}

impl SphericalMirror {
    /// `aperture` is the cap half-angle in radians, measured at the center
    /// of curvature from the principal axis.
    pub fn new(
        radius: f64,
        orientation: Orientation,
        aperture: f64,
        vertex: Vec2,
        axis: Vec2,
    ) -> Result<Self, MirrorError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(MirrorError::BadRadius(radius));
        }
        if !(aperture > 0.0 && aperture < std::f64::consts::FRAC_PI_2) {
            return Err(MirrorError::BadAperture(aperture));
        }
        Ok(SphericalMirror {
            radius,
            orientation,
            aperture,
            frame: AxisFrame::new(vertex, axis)?,
        })
    }

    /// Mirror at the origin facing +x with the default aperture.
    pub fn on_x_axis(radius: f64, orientation: Orientation) -> Result<Self, MirrorError> {
        Self::new(
            radius,
            orientation,
            DEFAULT_APERTURE_DEG.to_radians(),
            Vec2::ZERO,
            Vec2::new(1.0, 0.0),
        )
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn aperture(&self) -> f64 {
        self.aperture
    }

    pub fn frame(&self) -> &AxisFrame {
        &self.frame
    }

    pub fn vertex(&self) -> Vec2 {
        self.frame.vertex
    }

    pub fn axis(&self) -> Vec2 {
        self.frame.axis
    }

    /// +1 for concave, -1 for convex.
    fn side(&self) -> f64 {
        match self.orientation {
            Orientation::Concave => 1.0,
            Orientation::Convex => -1.0,
        }
    }

    pub fn focal_length(&self) -> f64 {
        self.side() * self.radius / 2.0
    }

    /// Center of curvature C.
    pub fn center(&self) -> Vec2 {
        self.frame.vertex + self.frame.axis * (self.side() * self.radius)
    }

    pub fn focus_point(&self) -> Vec2 {
        self.frame.vertex + self.frame.axis * self.focal_length()
    }

    /// Largest transverse height reached by the cap.
    pub fn max_height(&self) -> f64 {
        self.radius * self.aperture.sin()
    }

    /// Axial coordinate of the surface at transverse height `h` (|h| ≤ R).
    pub fn sag(&self, h: f64) -> f64 {
        let r = self.radius;
        // R - sqrt(R² - h²) without cancellation
        let s = h * h / (r + ((r - h) * (r + h)).max(0.0).sqrt());
        self.side() * s
    }

    /// Surface point at transverse height `h`.
    pub fn surface_point(&self, h: f64) -> Vec2 {
        self.frame.to_world(self.sag(h), h)
    }

    /// Whether a point on the generating circle lies on the cap.
    fn on_cap(&self, p: Vec2) -> bool {
        let c = self.center();
        let angle = (p - c).angle_to(self.frame.vertex - c);
        angle <= self.aperture * (1.0 + 1e-12)
    }

    fn reflect(&self, ray: &Ray) -> Result<Option<Ray>, MirrorError> {
        let center = self.center();
        let roots = geometry::ray_circle_roots_anchored(ray, center, self.radius, self.frame.vertex);
        for t in roots {
            let hit = geometry::circle_hit(ray, center, t);
            if !self.on_cap(hit.point) {
                continue;
            }
            // outward radial direction at the hit
            let outward = (hit.point - center).normalized().ok_or(MirrorError::BackSide)?;
            let moving_out = ray.direction.dot(outward) > 0.0;
            let front_face = match self.orientation {
                Orientation::Concave => moving_out,
                Orientation::Convex => !moving_out,
            };
            if !front_face {
                return Err(MirrorError::BackSide);
            }
            let dir = geometry::reflect_direction(ray.direction, hit.normal)?;
            return Ok(Some(Ray::new(hit.point, dir)?));
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneMirror {
    extent: f64,
    frame: AxisFrame,
}

impl PlaneMirror {
    /// `extent` is the half-length of the mirror segment.
    pub fn new(vertex: Vec2, axis: Vec2, extent: f64) -> Result<Self, MirrorError> {
        if !(extent.is_finite() && extent > 0.0) {
            return Err(MirrorError::BadExtent(extent));
        }
        Ok(PlaneMirror {
            extent,
            frame: AxisFrame::new(vertex, axis)?,
        })
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn frame(&self) -> &AxisFrame {
        &self.frame
    }

    pub fn vertex(&self) -> Vec2 {
        self.frame.vertex
    }

    pub fn axis(&self) -> Vec2 {
        self.frame.axis
    }

    /// Mirror image of a point through the mirror plane.
    pub fn image_of(&self, p: Vec2) -> Vec2 {
        let (axial, transverse) = self.frame.to_local(p);
        self.frame.to_world(-axial, transverse)
    }

    fn reflect(&self, ray: &Ray) -> Result<Option<Ray>, MirrorError> {
        let a = self.frame.axis;
        let height = (ray.origin - self.frame.vertex).dot(a);
        let closing = ray.direction.dot(a);
        if height < 0.0 || (height == 0.0 && closing > 0.0) {
            return Err(MirrorError::BackSide);
        }
        if closing >= 0.0 {
            return Ok(None);
        }
        let t = -height / closing;
        let point = ray.at(t);
        let (_, across) = self.frame.to_local(point);
        if across.abs() > self.extent {
            return Ok(None);
        }
        let point = self.frame.to_world(0.0, across);
        let dir = geometry::reflect_direction(ray.direction, a)?;
        Ok(Some(Ray::new(point, dir)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mirror {
    Spherical(SphericalMirror),
    Plane(PlaneMirror),
}

impl Mirror {
    pub fn focal_length(&self) -> FocalLength {
        match self {
            Mirror::Spherical(m) => FocalLength::Finite(m.focal_length()),
            Mirror::Plane(_) => FocalLength::Infinite,
        }
    }

    pub fn frame(&self) -> &AxisFrame {
        match self {
            Mirror::Spherical(m) => m.frame(),
            Mirror::Plane(m) => m.frame(),
        }
    }

    /// Transverse half-height of the reflecting surface.
    pub fn max_height(&self) -> f64 {
        match self {
            Mirror::Spherical(m) => m.max_height(),
            Mirror::Plane(m) => m.extent(),
        }
    }

    pub fn surface_point(&self, h: f64) -> Vec2 {
        match self {
            Mirror::Spherical(m) => m.surface_point(h),
            Mirror::Plane(m) => m.frame().to_world(0.0, h),
        }
    }

    /// Exact specular reflection off the mirror surface.
    ///
    /// Returns `Ok(None)` when the ray misses the cap or segment, and
    /// [`MirrorError::BackSide`] when it would strike the back of the mirror.
    pub fn reflect_off(&self, ray: &Ray) -> Result<Option<Ray>, MirrorError> {
        match self {
            Mirror::Spherical(m) => m.reflect(ray),
            Mirror::Plane(m) => m.reflect(ray),
        }
    }
}

impl From<SphericalMirror> for Mirror {
    fn from(m: SphericalMirror) -> Self {
        Mirror::Spherical(m)
    }
}

impl From<PlaneMirror> for Mirror {
    fn from(m: PlaneMirror) -> Self {
        Mirror::Plane(m)
    }
}

pub fn focal_length(m: &Mirror) -> FocalLength {
    m.focal_length()
}

pub fn focus_point(m: &SphericalMirror) -> Vec2 {
    m.focus_point()
}

pub fn reflect_off(m: &Mirror, ray: &Ray) -> Result<Option<Ray>, MirrorError> {
    m.reflect_off(ray)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const X: Vec2 = Vec2::new(1.0, 0.0);

    fn concave(r: f64) -> SphericalMirror {
        SphericalMirror::on_x_axis(r, Orientation::Concave).unwrap()
    }

    fn convex(r: f64) -> SphericalMirror {
        SphericalMirror::on_x_axis(r, Orientation::Convex).unwrap()
    }

    fn axis_crossing(ray: &Ray) -> f64 {
        ray.origin.x - ray.origin.y * ray.direction.x / ray.direction.y
    }

    #[test]
    fn focal_lengths() {
        assert_eq!(Mirror::from(concave(2.0)).focal_length(), FocalLength::Finite(1.0));
        assert_eq!(Mirror::from(convex(2.0)).focal_length(), FocalLength::Finite(-1.0));
        let plane = Mirror::from(PlaneMirror::new(Vec2::ZERO, X, 1.0).unwrap());
        assert_eq!(plane.focal_length(), FocalLength::Infinite);
        assert_eq!(plane.focal_length().power(), 0.0);
    }

    #[test]
    fn focus_and_center() {
        let m = concave(2.0);
        assert_eq!(m.focus_point(), Vec2::new(1.0, 0.0));
        assert_eq!(m.center(), Vec2::new(2.0, 0.0));
        let mid = (m.vertex() + m.center()) * 0.5;
        assert_eq!(m.focus_point(), mid);
        assert_eq!(convex(2.0).focus_point(), Vec2::new(-1.0, 0.0));
        assert_eq!(convex(2.0).center(), Vec2::new(-2.0, 0.0));
    }

    #[test]
    fn focus_lies_on_tilted_axis() {
        let axis = Vec2::new(0.6, -0.8);
        for orientation in [Orientation::Concave, Orientation::Convex] {
            let m = SphericalMirror::new(3.7, orientation, 0.4, Vec2::new(1.5, -2.0), axis).unwrap();
            let off = (m.focus_point() - m.vertex()).cross(m.axis());
            assert!(off.abs() <= 1e-12);
        }
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            SphericalMirror::on_x_axis(-2.0, Orientation::Concave),
            Err(MirrorError::BadRadius(-2.0))
        );
        assert!(matches!(
            SphericalMirror::new(2.0, Orientation::Concave, 1.6, Vec2::ZERO, X),
            Err(MirrorError::BadAperture(_))
        ));
        assert_eq!(
            SphericalMirror::new(2.0, Orientation::Concave, 0.5, Vec2::ZERO, Vec2::ZERO),
            Err(MirrorError::BadAxis)
        );
        assert_eq!(PlaneMirror::new(Vec2::ZERO, X, 0.0), Err(MirrorError::BadExtent(0.0)));
    }

    #[test]
    fn plane_normal_incidence() {
        let m = Mirror::from(PlaneMirror::new(Vec2::ZERO, X, 1.0).unwrap());
        let ray = Ray::new(Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0)).unwrap();
        let out = m.reflect_off(&ray).unwrap().unwrap();
        assert_eq!(out.origin, Vec2::ZERO);
        assert_eq!(out.direction, Vec2::new(1.0, 0.0));
    }

    #[test]
    fn plane_misses_and_back_side() {
        let m = Mirror::from(PlaneMirror::new(Vec2::ZERO, X, 1.0).unwrap());
        let wide = Ray::towards(Vec2::new(1.0, 0.0), Vec2::new(0.0, 2.0)).unwrap();
        assert_eq!(m.reflect_off(&wide), Ok(None));
        let away = Ray::new(Vec2::new(1.0, 0.0), X).unwrap();
        assert_eq!(m.reflect_off(&away), Ok(None));
        let behind = Ray::new(Vec2::new(-1.0, 0.0), X).unwrap();
        assert_eq!(m.reflect_off(&behind), Err(MirrorError::BackSide));
    }

    #[test]
    fn plane_double_bounce_restores_direction() {
        let mut rng = StdRng::seed_from_u64(21);
        let a = Mirror::from(PlaneMirror::new(Vec2::ZERO, X, 100.0).unwrap());
        let b = Mirror::from(PlaneMirror::new(Vec2::new(5.0, 0.0), -X, 100.0).unwrap());
        for _ in 0..1000 {
            let theta: f64 = rng.random_range(-1.2..1.2);
            let start = Vec2::new(2.5, rng.random_range(-1.0..1.0));
            let ray = Ray::new(start, Vec2::new(-theta.cos(), theta.sin())).unwrap();
            let once = a.reflect_off(&ray).unwrap().unwrap();
            let twice = b.reflect_off(&once).unwrap().unwrap();
            assert!((twice.direction - ray.direction).length() <= 1e-12);
        }
    }

    #[test]
    fn paraxial_ray_crosses_axis_at_focus() {
        let m = Mirror::from(concave(2.0));
        let ray = Ray::new(Vec2::new(3.0, 1e-6), Vec2::new(-1.0, 0.0)).unwrap();
        let out = m.reflect_off(&ray).unwrap().unwrap();
        // exact oracle R - R/(2 cos α), sin α = h/R
        let alpha = (1e-6f64 / 2.0).asin();
        let expected = 2.0 - 2.0 / (2.0 * alpha.cos());
        let x = axis_crossing(&out);
        assert!((x - expected).abs() <= 1e-9);
        assert!((x - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn ray_outside_cap_misses() {
        let m = Mirror::from(concave(2.0));
        // 30° cap reaches height 1.0
        let ray = Ray::new(Vec2::new(1.0, 1.5), Vec2::new(-1.0, 0.0)).unwrap();
        assert_eq!(m.reflect_off(&ray), Ok(None));
        let inside = Ray::new(Vec2::new(1.0, 0.9), Vec2::new(-1.0, 0.0)).unwrap();
        assert!(m.reflect_off(&inside).unwrap().is_some());
    }

    #[test]
    fn back_side_arrival_rejected() {
        let cave = Mirror::from(concave(2.0));
        let from_behind = Ray::new(Vec2::new(-1.0, 0.1), X).unwrap();
        assert_eq!(cave.reflect_off(&from_behind), Err(MirrorError::BackSide));
        let vex = Mirror::from(convex(2.0));
        // starts inside the generating sphere, strikes the cap's inner face
        let inner = Ray::new(Vec2::new(-1.0, 0.1), X).unwrap();
        assert_eq!(vex.reflect_off(&inner), Err(MirrorError::BackSide));
    }

    #[test]
    fn law_of_reflection_on_caps() {
        let mut rng = StdRng::seed_from_u64(4);
        for m in [concave(2.0), convex(2.0), concave(10.0)] {
            let mirror = Mirror::from(m);
            for _ in 0..2000 {
                let origin = Vec2::new(rng.random_range(0.5..4.0), rng.random_range(-1.0..1.0));
                let target = m.surface_point(rng.random_range(-0.95..0.95) * m.max_height());
                let ray = Ray::towards(origin, target).unwrap();
                let Some(out) = mirror.reflect_off(&ray).unwrap() else {
                    continue;
                };
                let n = (out.origin - m.center()).normalized().unwrap();
                let incidence = (-ray.direction).cross(n).abs().atan2((-ray.direction).dot(n).abs());
                let reflection = out.direction.cross(n).abs().atan2(out.direction.dot(n).abs());
                assert!((incidence - reflection).abs() <= 1e-12);
                assert!((out.origin.distance(m.center()) - m.radius()).abs() <= 1e-9 * m.radius());
            }
        }
    }

    #[test]
    fn headlight_property() {
        let m = concave(2.0);
        let mirror = Mirror::from(m);
        for k in 1..=100 {
            let alpha = 1e-3 * k as f64 / 100.0;
            for sign in [-1.0, 1.0] {
                let target = m.center() + Vec2::new(-(alpha.cos()), sign * alpha.sin()) * m.radius();
                let ray = Ray::towards(m.focus_point(), target).unwrap();
                let out = mirror.reflect_off(&ray).unwrap().unwrap();
                let tilt = out.direction.angle_to(m.axis());
                assert!(tilt <= 2e-6, "alpha {alpha}: tilt {tilt}");
            }
        }
    }

    #[test]
    fn sag_matches_circle() {
        for m in [concave(2.0), convex(3.0)] {
            for h in [0.0, 1e-8, 0.3, -0.7, m.max_height()] {
                let p = m.surface_point(h);
                assert!((p.distance(m.center()) - m.radius()).abs() <= 1e-14 * m.radius());
            }
        }
    }
}

//! Image formation by rays: the two-ray principal construction (idealized
//! or exactly traced) and exact fan tracing with a crossing-spread measure
//! of spherical aberration.

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{self, LineCrossing, Ray, Vec2};
use crate::mirrors::{AxisFrame, Mirror, MirrorError, Orientation, SphericalMirror};
use crate::paraxial::ImageKind;

/// Spreads below this fraction of the scene scale are floating-point noise
/// and are reported as zero.
pub const SPREAD_RESOLUTION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ImagingError {
    #[error("object lies on the principal axis; the two-ray construction is degenerate")]
    OnAxis,
    #[error("object must be in front of the mirror (axial {0} ≤ 0)")]
    ObjectNotInFront(f64),
    #[error("{0} ray misses the mirror aperture")]
    RayMissed(PrincipalRay),
    #[error("only {0} ray(s) survive the aperture; need at least 2")]
    TooFewRays(usize),
    #[error("fan needs at least 3 rays, got {0}")]
    FanTooSmall(usize),
    #[error("fan height must be positive and finite, got {0}")]
    BadFanHeight(f64),
    #[error("reflected rays converge on both sides of the face; no single image")]
    Straddling,
    #[error("height {0} is outside the open interval (0, R·sin(aperture))")]
    HeightOutsideAperture(f64),
    #[error("operation needs a concave mirror")]
    NotConcave,
    #[error("principal rays need a spherical mirror")]
    NotSpherical,
    #[error(transparent)]
    Mirror(#[from] MirrorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrincipalRay {
    Chief,
    Parallel,
    Focal,
}

impl std::fmt::Display for PrincipalRay {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PrincipalRay::Chief => "chief",
            PrincipalRay::Parallel => "parallel",
            PrincipalRay::Focal => "focal",
        })
    }
}

/// How the principal rays are reflected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RayMode {
    /// Textbook reflections at the vertex plane: the parallel ray goes
    /// exactly through F and the focal ray leaves exactly axis-parallel.
    Ideal,
    /// Reflections computed on the real spherical surface.
    Exact,
}

/// Launch rays of the principal construction, all leaving the object.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrincipalRaySet {
    /// Aimed at the vertex O.
    pub chief: Ray,
    /// Parallel to the principal axis.
    pub parallel: Ray,
    /// Along the line through F; absent when that line never reaches the
    /// mirror (object in the focal plane).
    pub focal: Option<Ray>,
}

/// The three launch rays together with their reflections.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracedPrincipalRays {
    pub launch: PrincipalRaySet,
    pub chief: Ray,
    pub parallel: Ray,
    pub focal: Option<Ray>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceImage {
    /// `None` when the image is at infinity.
    pub point: Option<Vec2>,
    pub kind: ImageKind,
    /// RMS distance of the pairwise crossings from their centroid.
    pub spread: f64,
    pub rays_used: usize,
}

fn object_coords(frame: &AxisFrame, object: Vec2) -> Result<(f64, f64), ImagingError> {
    let (p, y) = frame.to_local(object);
    if p.is_nan() || p <= 0.0 {
        return Err(ImagingError::ObjectNotInFront(p));
    }
    Ok((p, y))
}

/// Launch rays of the principal construction for an off-axis object.
pub fn principal_rays(object: Vec2, m: &SphericalMirror) -> Result<PrincipalRaySet, ImagingError> {
    let frame = m.frame();
    let (p, y) = object_coords(frame, object)?;
    if y.abs() <= 1e-12 * p.max(m.radius()) {
        return Err(ImagingError::OnAxis);
    }
    let f = m.focal_length();
    let chief = Ray::towards(object, m.vertex()).map_err(MirrorError::from)?;
    let parallel = Ray::new(object, -m.axis()).map_err(MirrorError::from)?;
    let focal = if (p - f).abs() <= 1e-12 * p.max(f.abs()) {
        None
    } else {
        // along the line PF, heading toward the mirror
        let along = frame.dir_to_world(f - p, -y);
        let along = if (f - p) > 0.0 { -along } else { along };
        Some(Ray::new(object, along).map_err(MirrorError::from)?)
    };
    Ok(PrincipalRaySet { chief, parallel, focal })
}

fn ideal_reflections(set: &PrincipalRaySet, m: &SphericalMirror) -> Result<TracedPrincipalRays, ImagingError> {
    let frame = m.frame();
    let (p, y) = frame.to_local(set.chief.origin);
    let f = m.focal_length();
    let chief = Ray::new(m.vertex(), frame.dir_to_world(p, -y)).map_err(MirrorError::from)?;
    let parallel =
        Ray::new(frame.to_world(0.0, y), frame.dir_to_world(f.abs(), -f.signum() * y)).map_err(MirrorError::from)?;
    let focal = match set.focal {
        Some(_) => {
            let h = -f * y / (p - f);
            Some(Ray::new(frame.to_world(0.0, h), m.axis()).map_err(MirrorError::from)?)
        }
        None => None,
    };
    Ok(TracedPrincipalRays {
        launch: *set,
        chief,
        parallel,
        focal,
    })
}

fn exact_reflections(set: &PrincipalRaySet, m: &SphericalMirror) -> Result<TracedPrincipalRays, ImagingError> {
    let mirror = Mirror::Spherical(*m);
    let bounce = |ray: &Ray, which| mirror.reflect_off(ray)?.ok_or(ImagingError::RayMissed(which));
    let chief = bounce(&set.chief, PrincipalRay::Chief)?;
    let parallel = bounce(&set.parallel, PrincipalRay::Parallel)?;
    // the focal ray is drawn but not needed for the crossing
    let focal = match &set.focal {
        Some(r) => mirror.reflect_off(r)?,
        None => None,
    };
    Ok(TracedPrincipalRays {
        launch: *set,
        chief,
        parallel,
        focal,
    })
}

/// Principal rays and their reflections in the requested mode.
pub fn trace_principal_rays(
    object: Vec2,
    m: &SphericalMirror,
    mode: RayMode,
) -> Result<TracedPrincipalRays, ImagingError> {
    let set = principal_rays(object, m)?;
    match mode {
        RayMode::Ideal => ideal_reflections(&set, m),
        RayMode::Exact => exact_reflections(&set, m),
    }
}

/// Where two reflected rays meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RayCrossing {
    /// The rays themselves cross in front of the mirror.
    Real(Vec2),
    /// Only their backward extensions cross.
    Virtual(Vec2),
    /// Parallel rays.
    AtInfinity,
    /// One ray must be extended backward and the other not, or the lines
    /// coincide.
    Mixed,
}

/// Classify the crossing of two reflected rays.
pub fn cross_reflected(a: &Ray, b: &Ray) -> RayCrossing {
    match geometry::intersect_lines(a.origin, a.direction, b.origin, b.direction) {
        LineCrossing::Parallel => RayCrossing::AtInfinity,
        LineCrossing::Coincident => RayCrossing::Mixed,
        LineCrossing::Point(x) => {
            let sa = geometry::param_along(a.origin, a.direction, x);
            let sb = geometry::param_along(b.origin, b.direction, x);
            if sa > 0.0 && sb > 0.0 {
                RayCrossing::Real(x)
            } else if sa < 0.0 && sb < 0.0 {
                RayCrossing::Virtual(x)
            } else {
                RayCrossing::Mixed
            }
        }
    }
}

fn classified(point: Vec2, kind: ImageKind, frame: &AxisFrame) -> Result<(), ImagingError> {
    let (axial, _) = frame.to_local(point);
    match kind {
        ImageKind::Real if axial <= 0.0 => Err(ImagingError::Straddling),
        ImageKind::Virtual if axial >= 0.0 => Err(ImagingError::Straddling),
        _ => Ok(()),
    }
}

/// Image of an off-axis point from the crossing of the reflected chief and
/// parallel rays (or of their backward extensions).
pub fn principal_ray_image(object: Vec2, m: &SphericalMirror, mode: RayMode) -> Result<TraceImage, ImagingError> {
    let traced = trace_principal_rays(object, m, mode)?;
    let (point, kind) = match cross_reflected(&traced.chief, &traced.parallel) {
        RayCrossing::Real(x) => (Some(x), ImageKind::Real),
        RayCrossing::Virtual(x) => (Some(x), ImageKind::Virtual),
        RayCrossing::AtInfinity => (None, ImageKind::AtInfinity),
        RayCrossing::Mixed => return Err(ImagingError::Straddling),
    };
    if let Some(x) = point {
        classified(x, kind, m.frame())?;
    }
    Ok(TraceImage {
        point,
        kind,
        spread: 0.0,
        rays_used: 2,
    })
}

/// Axial coordinate where an axis-parallel ray at height `h` crosses the
/// axis after reflecting off a concave mirror.
pub fn exact_focus_crossing(m: &SphericalMirror, h: f64) -> Result<f64, ImagingError> {
    if m.orientation() != Orientation::Concave {
        return Err(ImagingError::NotConcave);
    }
    if !(h > 0.0 && h < m.max_height()) {
        return Err(ImagingError::HeightOutsideAperture(h));
    }
    let frame = m.frame();
    let launch = Ray::new(frame.to_world(m.radius(), h), -m.axis()).map_err(MirrorError::from)?;
    let out = Mirror::Spherical(*m)
        .reflect_off(&launch)?
        .ok_or(ImagingError::HeightOutsideAperture(h))?;
    let (a0, t0) = frame.to_local(out.origin);
    let (da, dt) = frame.dir_to_local(out.direction);
    Ok(a0 - t0 * da / dt)
}

/// Closed form `R - R/(2 cos α)`, `sin α = h/R`, for [`exact_focus_crossing`].
pub fn focus_crossing_closed_form(radius: f64, h: f64) -> f64 {
    let alpha = (h / radius).asin();
    radius - radius / (2.0 * alpha.cos())
}

/// Angle between the principal axis and the reflection of a ray launched
/// from the focus toward the cap point at angle `alpha` (seen from C).
pub fn headlight_tilt(m: &SphericalMirror, alpha: f64) -> Result<f64, ImagingError> {
    if m.orientation() != Orientation::Concave {
        return Err(ImagingError::NotConcave);
    }
    let target = m
        .frame()
        .to_world(m.radius() * (1.0 - alpha.cos()), m.radius() * alpha.sin());
    let ray = Ray::towards(m.focus_point(), target).map_err(MirrorError::from)?;
    let out = Mirror::Spherical(*m)
        .reflect_off(&ray)?
        .ok_or(ImagingError::HeightOutsideAperture(m.radius() * alpha.sin()))?;
    Ok(out.direction.angle_to(m.axis()))
}

/// Launch and reflected rays of a fan; rays that miss are dropped.
pub fn fan_rays(object: Vec2, m: &Mirror, n_rays: usize, max_height: f64) -> Result<Vec<(Ray, Ray)>, ImagingError> {
    if n_rays < 3 {
        return Err(ImagingError::FanTooSmall(n_rays));
    }
    if !(max_height.is_finite() && max_height > 0.0) {
        return Err(ImagingError::BadFanHeight(max_height));
    }
    object_coords(m.frame(), object)?;
    let last = (n_rays - 1) as f64;
    let mut traced = Vec::with_capacity(n_rays);
    for k in 0..n_rays {
        let h = max_height * (2.0 * k as f64 / last - 1.0);
        let launch = Ray::towards(object, m.surface_point(h)).map_err(MirrorError::from)?;
        if let Some(out) = m.reflect_off(&launch)? {
            traced.push((launch, out));
        }
    }
    Ok(traced)
}

/// Image of a point from an exactly traced fan of `n_rays` rays aimed at
/// heights spread evenly over `[-max_height, max_height]` on the mirror.
pub fn fan_image(object: Vec2, m: &Mirror, n_rays: usize, max_height: f64) -> Result<TraceImage, ImagingError> {
    let traced = fan_rays(object, m, n_rays, max_height)?;
    let reflected: Vec<Ray> = traced.into_iter().map(|(_, out)| out).collect();
    if reflected.len() < 2 {
        return Err(ImagingError::TooFewRays(reflected.len()));
    }

    let mut points = Vec::new();
    let mut kind = None;
    for (i, a) in reflected.iter().enumerate() {
        for b in &reflected[i + 1..] {
            let (x, k) = match cross_reflected(a, b) {
                RayCrossing::Real(x) => (x, ImageKind::Real),
                RayCrossing::Virtual(x) => (x, ImageKind::Virtual),
                RayCrossing::AtInfinity => continue,
                RayCrossing::Mixed => return Err(ImagingError::Straddling),
            };
            if kind.is_some_and(|seen| seen != k) {
                return Err(ImagingError::Straddling);
            }
            kind = Some(k);
            points.push(x);
        }
    }
    let rays_used = reflected.len();
    let Some(kind) = kind else {
        return Ok(TraceImage {
            point: None,
            kind: ImageKind::AtInfinity,
            spread: 0.0,
            rays_used,
        });
    };

    let n = points.len() as f64;
    let sum = points.iter().fold(Vec2::ZERO, |acc, &p| acc + p);
    let centroid = sum * (1.0 / n);
    let mean_sq = points.iter().map(|&p| (p - centroid).length_squared()).sum::<f64>() / n;
    let frame = m.frame();
    let scale = (centroid - frame.vertex).length().max((object - frame.vertex).length());
    let mut spread = mean_sq.sqrt();
    if spread <= SPREAD_RESOLUTION * scale {
        spread = 0.0;
    }
    classified(centroid, kind, frame)?;
    Ok(TraceImage {
        point: Some(centroid),
        kind,
        spread,
        rays_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirrors::{FocalLength, PlaneMirror};
    use crate::paraxial::{gauss_image, magnification_heights};
    use proptest::prelude::*;

    fn concave(r: f64) -> SphericalMirror {
        SphericalMirror::on_x_axis(r, Orientation::Concave).unwrap()
    }

    fn convex(r: f64) -> SphericalMirror {
        SphericalMirror::on_x_axis(r, Orientation::Convex).unwrap()
    }

    fn close(a: Vec2, b: Vec2, tol: f64) -> bool {
        (a - b).length() <= tol
    }

    #[test]
    fn ideal_concave_real_image() {
        let img = principal_ray_image(Vec2::new(3.0, 0.5), &concave(2.0), RayMode::Ideal).unwrap();
        assert_eq!(img.kind, ImageKind::Real);
        assert!(close(img.point.unwrap(), Vec2::new(1.5, -0.25), 1e-14));
        assert_eq!(img.spread, 0.0);
        assert_eq!(img.rays_used, 2);
    }

    #[test]
    fn ideal_convex_virtual_image() {
        let img = principal_ray_image(Vec2::new(1.0, 0.2), &convex(2.0), RayMode::Ideal).unwrap();
        assert_eq!(img.kind, ImageKind::Virtual);
        assert!(close(img.point.unwrap(), Vec2::new(-0.5, 0.1), 1e-14));
    }

    #[test]
    fn near_plane_concave_images_like_a_plane_mirror() {
        let m = concave(1e8);
        for mode in [RayMode::Ideal, RayMode::Exact] {
            let img = principal_ray_image(Vec2::new(1.0, 0.3), &m, mode).unwrap();
            assert_eq!(img.kind, ImageKind::Virtual);
            let p = img.point.unwrap();
            assert!(
                (p.x + 1.0).abs() <= 1e-6 && (p.y - 0.3).abs() <= 1e-6,
                "{mode:?}: {p:?}"
            );
        }
    }

    #[test]
    fn on_axis_and_behind_rejected() {
        let m = concave(2.0);
        assert_eq!(
            principal_ray_image(Vec2::new(3.0, 0.0), &m, RayMode::Ideal),
            Err(ImagingError::OnAxis)
        );
        assert_eq!(
            principal_ray_image(Vec2::new(-1.0, 0.2), &m, RayMode::Ideal),
            Err(ImagingError::ObjectNotInFront(-1.0))
        );
    }

    #[test]
    fn exact_mode_reports_missed_rays() {
        // object taller than the cap: the parallel ray passes above it
        let err = principal_ray_image(Vec2::new(3.0, 1.5), &concave(2.0), RayMode::Exact).unwrap_err();
        assert_eq!(err, ImagingError::RayMissed(PrincipalRay::Parallel));
    }

    #[test]
    fn object_at_focus_images_at_infinity() {
        let img = principal_ray_image(Vec2::new(1.0, 0.1), &concave(2.0), RayMode::Ideal).unwrap();
        assert_eq!(img.kind, ImageKind::AtInfinity);
        assert_eq!(img.point, None);
        let rays = trace_principal_rays(Vec2::new(1.0, 0.1), &concave(2.0), RayMode::Ideal).unwrap();
        assert!(rays.launch.focal.is_none());
    }

    #[test]
    fn ideal_focal_ray_leaves_parallel() {
        for (m, obj) in [
            (concave(2.0), Vec2::new(3.0, 0.5)),
            (concave(2.0), Vec2::new(0.5, 0.2)),
            (convex(2.0), Vec2::new(1.0, 0.2)),
        ] {
            let rays = trace_principal_rays(obj, &m, RayMode::Ideal).unwrap();
            let focal = rays.focal.unwrap();
            assert_eq!(focal.direction, m.axis());
            // launch line passes through F
            let launch = rays.launch.focal.unwrap();
            assert!((m.focus_point() - launch.origin).cross(launch.direction).abs() <= 1e-12);
            assert!(launch.direction.dot(m.axis()) < 0.0);
            // and the third ray meets the image as well
            let img = principal_ray_image(obj, &m, RayMode::Ideal).unwrap().point.unwrap();
            assert!((img - focal.origin).cross(focal.direction).abs() <= 1e-12);
        }
    }

    #[test]
    fn exact_focus_crossing_examples() {
        let m = concave(2.0);
        assert!((exact_focus_crossing(&m, 1e-6).unwrap() - 1.0).abs() <= 1e-9);
        let x = exact_focus_crossing(&m, 1.0 - 1e-12).unwrap();
        assert!((x - 0.845299).abs() <= 1e-6, "{x}");
        assert!((x - focus_crossing_closed_form(2.0, 1.0 - 1e-12)).abs() <= 1e-9 * 2.0);
        assert_eq!(
            exact_focus_crossing(&m, 0.0),
            Err(ImagingError::HeightOutsideAperture(0.0))
        );
        assert_eq!(
            exact_focus_crossing(&m, 1.2),
            Err(ImagingError::HeightOutsideAperture(1.2))
        );
        assert_eq!(exact_focus_crossing(&convex(2.0), 0.1), Err(ImagingError::NotConcave));
    }

    #[test]
    fn focus_crossing_decreases_with_height() {
        let m = concave(2.0);
        let xs: Vec<f64> = (1..200)
            .map(|k| exact_focus_crossing(&m, k as f64 / 200.0).unwrap())
            .collect();
        assert!(xs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn plane_fan_is_stigmatic() {
        let m = Mirror::Plane(PlaneMirror::new(Vec2::new(0.5, -0.2), Vec2::new(0.8, 0.6), 3.0).unwrap());
        let Mirror::Plane(plane) = m else { unreachable!() };
        for obj in [Vec2::new(2.0, 1.0), Vec2::new(1.0, -0.5), Vec2::new(4.0, 4.0)] {
            for (n, h) in [(3, 0.1), (16, 1.0), (64, 2.5)] {
                let img = fan_image(obj, &m, n, h).unwrap();
                assert_eq!(img.kind, ImageKind::Virtual);
                assert_eq!(img.spread, 0.0);
                assert!(close(img.point.unwrap(), plane.image_of(obj), 1e-12));
            }
        }
    }

    #[test]
    fn paraxial_fan_converges_to_gauss() {
        let m = Mirror::Spherical(concave(2.0));
        let img = fan_image(Vec2::new(3.0, 0.01), &m, 64, 2e-3).unwrap();
        assert_eq!(img.kind, ImageKind::Real);
        assert!(close(img.point.unwrap(), Vec2::new(1.5, -0.005), 1e-4));
        // 40-digit reference computation of the same fan
        assert!((img.spread - 3.0860707e-6).abs() <= 1e-13, "{}", img.spread);
        let nearer = fan_image(Vec2::new(3.0, 0.001), &m, 64, 2e-3).unwrap();
        assert!((nearer.spread - 3.159575e-7).abs() <= 1e-13, "{}", nearer.spread);
        let wide = fan_image(Vec2::new(3.0, 0.01), &m, 64, 1.0).unwrap();
        assert!(wide.spread > 1e-3, "{}", wide.spread);
    }

    #[test]
    fn fan_errors() {
        let m = Mirror::Spherical(concave(2.0));
        assert_eq!(
            fan_image(Vec2::new(3.0, 0.1), &m, 2, 0.1),
            Err(ImagingError::FanTooSmall(2))
        );
        assert_eq!(
            fan_image(Vec2::new(3.0, 0.1), &m, 8, 0.0),
            Err(ImagingError::BadFanHeight(0.0))
        );
        assert_eq!(
            fan_image(Vec2::new(-1.0, 0.1), &m, 8, 0.1),
            Err(ImagingError::ObjectNotInFront(-1.0))
        );
    }

    #[test]
    fn two_surviving_rays_have_zero_spread() {
        let m = Mirror::Spherical(concave(2.0));
        // three rays at -H, 0, H; the outer two miss the 30° cap
        let img = fan_image(Vec2::new(3.0, 0.01), &m, 3, 1.5);
        assert!(matches!(img, Err(ImagingError::TooFewRays(1))));
        let img = fan_image(Vec2::new(3.0, 0.3), &m, 4, 1.2).unwrap();
        assert_eq!(img.rays_used, 2);
        assert_eq!(img.spread, 0.0);
    }

    #[test]
    fn convex_normal_bisects_incident_and_reflected() {
        let m = convex(2.0);
        let mirror = Mirror::Spherical(m);
        for k in 1..50 {
            let h = k as f64 * 0.02;
            let ray = Ray::new(Vec2::new(3.0, h), Vec2::new(-1.0, 0.0)).unwrap();
            let out = mirror.reflect_off(&ray).unwrap().unwrap();
            // line through C and the hit point
            let bisector = (out.origin - m.center()).normalized().unwrap();
            let to_source = -ray.direction;
            let a = to_source.angle_to(bisector);
            let b = out.direction.angle_to(bisector);
            assert!((a - b).abs() <= 1e-12);
            // the backward extension crosses the axis behind the face
            let (a0, t0) = m.frame().to_local(out.origin);
            let (da, dt) = m.frame().dir_to_local(out.direction);
            let x = a0 - t0 * da / dt;
            assert!(x < 0.0 && x > -1.0 - 1e-12);
        }
    }

    #[test]
    fn headlight_rays_leave_parallel() {
        let m = concave(2.0);
        for k in 1..=50 {
            let alpha = 1e-3 * k as f64 / 50.0;
            assert!(headlight_tilt(&m, alpha).unwrap() <= 2e-6);
        }
    }

    proptest! {
        #[test]
        fn ideal_construction_is_the_gauss_equation(
            radius in 0.5f64..20.0,
            convex_face in any::<bool>(),
            p in 0.2f64..30.0,
            y in prop_oneof![0.01f64..2.0, -2.0f64..-0.01],
        ) {
            let orientation = if convex_face { Orientation::Convex } else { Orientation::Concave };
            let m = SphericalMirror::on_x_axis(radius, orientation).unwrap();
            let f = m.focal_length();
            prop_assume!((p - f).abs() > 0.05 * f.abs());
            let img = principal_ray_image(Vec2::new(p, y), &m, RayMode::Ideal).unwrap();
            let gauss = gauss_image(p, FocalLength::Finite(f)).unwrap();
            let p_im = gauss.p_im.finite().unwrap();
            let height = magnification_heights(y.abs(), p, p_im).unwrap() * y.signum() * -(p_im / p).signum();
            let point = img.point.unwrap();
            prop_assert_eq!(img.kind, gauss.kind);
            prop_assert!((point.x - p_im).abs() <= 1e-12 * p_im.abs().max(1.0), "{} vs {}", point.x, p_im);
            prop_assert!((point.y - height).abs() <= 1e-12 * height.abs().max(1.0));
        }
    }
}

//! SVG figures of a mirror, an object, its principal rays and its image.
//!
//! The figure is drawn in the mirror's own frame: the principal axis runs
//! horizontally and the front of the mirrored face is to the right.
//! Output depends only on the inputs, so it can be compared byte for byte.

use std::fmt::Write as _;

use crate::geometry::{Ray, Vec2};
use crate::imaging::{self, RayCrossing, RayMode};
use crate::mirrors::{AxisFrame, Mirror};
use crate::paraxial::{gauss_image, ImageKind};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 40.0;

const FACE: &str = "#00a0b0";
const RAY: &str = "#7a1fa2";
const EXTENSION: &str = "#e07b00";
const AXIS: &str = "#888888";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub mode: RayMode,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { mode: RayMode::Exact }
    }
}

/// Local-frame bounding box mapped onto the canvas.
struct View {
    min: Vec2,
    max: Vec2,
    scale: f64,
}

impl View {
    fn fit(points: &[Vec2]) -> View {
        let mut min = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min = Vec2::new(min.x.min(p.x), min.y.min(p.y));
            max = Vec2::new(max.x.max(p.x), max.y.max(p.y));
        }
        let span = Vec2::new((max.x - min.x).max(1e-9), (max.y - min.y).max(1e-9));
        let pad = Vec2::new(span.x * 0.1, span.y * 0.15);
        let (min, max) = (min - pad, max + pad);
        let scale = ((WIDTH - 2.0 * MARGIN) / (max.x - min.x)).min((HEIGHT - 2.0 * MARGIN) / (max.y - min.y));
        let used = Vec2::new((max.x - min.x) * scale, (max.y - min.y) * scale);
        let offset = Vec2::new((WIDTH - used.x) / 2.0, (HEIGHT - used.y) / 2.0);
        // grow the box to the whole canvas so clipped lines reach the edge
        let min = Vec2::new(min.x - offset.x / scale, min.y - offset.y / scale);
        let max = Vec2::new(max.x + offset.x / scale, max.y + offset.y / scale);
        View { min, max, scale }
    }

    fn px(&self, p: Vec2) -> (f64, f64) {
        ((p.x - self.min.x) * self.scale, (self.max.y - p.y) * self.scale)
    }

    fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    /// Largest `s ≥ 0` keeping `origin + s·dir` inside the box.
    fn exit(&self, origin: Vec2, dir: Vec2) -> f64 {
        let mut s = f64::INFINITY;
        for (o, d, lo, hi) in [
            (origin.x, dir.x, self.min.x, self.max.x),
            (origin.y, dir.y, self.min.y, self.max.y),
        ] {
            if d > 0.0 {
                s = s.min((hi - o) / d);
            } else if d < 0.0 {
                s = s.min((lo - o) / d);
            }
        }
        s.max(0.0)
    }
}

fn fmt(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    // avoid "-0"
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

struct Canvas<'a> {
    view: &'a View,
    out: String,
}

impl Canvas<'_> {
    fn line(&mut self, a: Vec2, b: Vec2, stroke: &str, dashed: bool) {
        let (x1, y1) = self.view.px(a);
        let (x2, y2) = self.view.px(b);
        let dash = if dashed { " stroke-dasharray=\"6 4\"" } else { "" };
        let _ = writeln!(
            self.out,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"1.5\"{dash}/>",
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        );
    }

    fn polyline(&mut self, pts: &[Vec2], stroke: &str, width: f64) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.view.px(p);
                format!("{},{}", fmt(x), fmt(y))
            })
            .collect();
        let _ = writeln!(
            self.out,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>",
            coords.join(" ")
        );
    }

    fn dot(&mut self, p: Vec2, fill: &str, label: &str) {
        if !self.view.contains(p) {
            return;
        }
        let (x, y) = self.view.px(p);
        let _ = writeln!(
            self.out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"{fill}\"/>",
            fmt(x),
            fmt(y)
        );
        let _ = writeln!(
            self.out,
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\">{label}</text>",
            fmt(x + 5.0),
            fmt(y + 16.0)
        );
    }

    fn arrow(&mut self, foot: Vec2, tip: Vec2, stroke: &str, dashed: bool) {
        self.line(foot, tip, stroke, dashed);
        let (x, y) = self.view.px(tip);
        let _ = writeln!(
            self.out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{stroke}\"/>",
            fmt(x),
            fmt(y)
        );
    }

    /// Draw a ray to `end` or, if `None`, to the edge of the view.
    fn ray(&mut self, ray: &Ray, end: Option<Vec2>, stroke: &str) {
        let stop = match end {
            Some(p) => p,
            None => ray.at(self.view.exit(ray.origin, ray.direction)),
        };
        self.line(ray.origin, stop, stroke, false);
    }
}

fn to_local_ray(frame: &AxisFrame, r: &Ray) -> Ray {
    let (a, t) = frame.to_local(r.origin);
    let (da, dt) = frame.dir_to_local(r.direction);
    Ray {
        origin: Vec2::new(a, t),
        direction: Vec2::new(da, dt),
    }
}

fn local(frame: &AxisFrame, p: Vec2) -> Vec2 {
    let (a, t) = frame.to_local(p);
    Vec2::new(a, t)
}

/// Launch and reflected ray pairs drawn for the figure.
fn figure_rays(mirror: &Mirror, object: Vec2, mode: RayMode) -> Vec<(Ray, Ray)> {
    match mirror {
        Mirror::Spherical(m) => match imaging::trace_principal_rays(object, m, mode) {
            Ok(t) => {
                let mut rays = vec![(t.launch.chief, t.chief), (t.launch.parallel, t.parallel)];
                if let (Some(l), Some(r)) = (t.launch.focal, t.focal) {
                    rays.push((l, r));
                }
                rays
            }
            Err(_) => Vec::new(),
        },
        Mirror::Plane(p) => {
            let launches = [Ray::towards(object, p.vertex()), Ray::new(object, -p.axis())];
            launches
                .into_iter()
                .filter_map(|l| l.ok())
                .filter_map(|l| mirror.reflect_off(&l).ok().flatten().map(|r| (l, r)))
                .collect()
        }
    }
}

/// Render `object` in front of `mirror` as an SVG 1.1 document.
pub fn render_svg(mirror: &Mirror, object: Vec2, opts: &RenderOptions) -> String {
    let frame = *mirror.frame();
    let obj = local(&frame, object);
    let rays: Vec<(Ray, Ray)> = figure_rays(mirror, object, opts.mode)
        .iter()
        .map(|(l, r)| (to_local_ray(&frame, l), to_local_ray(&frame, r)))
        .collect();

    // image from the first two reflected rays, paraxial otherwise
    let crossing = match rays.as_slice() {
        [(_, a), (_, b), ..] => imaging::cross_reflected(a, b),
        _ => RayCrossing::Mixed,
    };
    let paraxial = gauss_image(obj.x, mirror.focal_length()).ok();
    let (image, kind) = match crossing {
        RayCrossing::Real(p) => (Some(p), ImageKind::Real),
        RayCrossing::Virtual(p) => (Some(p), ImageKind::Virtual),
        RayCrossing::AtInfinity => (None, ImageKind::AtInfinity),
        RayCrossing::Mixed => match paraxial.and_then(|g| g.p_im.finite().map(|p| (p, g))) {
            Some((p_im, g)) => (Some(Vec2::new(p_im, obj.y * g.magnification.unwrap_or(1.0))), g.kind),
            None => (None, ImageKind::AtInfinity),
        },
    };

    let h = mirror.max_height();
    let mut frame_pts = vec![
        Vec2::ZERO,
        obj,
        Vec2::new(0.0, h),
        Vec2::new(0.0, -h),
        Vec2::new(obj.x, 0.0),
    ];
    let reach = obj.x.abs().max(h);
    if let Some(p) = image {
        if p.x.abs() <= 8.0 * reach && p.y.abs() <= 8.0 * reach {
            frame_pts.push(p);
        }
    }
    if let Mirror::Spherical(m) = mirror {
        for p in [m.focus_point(), m.center()] {
            let p = local(&frame, p);
            if p.x.abs() <= 3.0 * reach {
                frame_pts.push(p);
            }
        }
    }
    let view = View::fit(&frame_pts);
    let mut c = Canvas {
        view: &view,
        out: String::new(),
    };

    let _ = writeln!(c.out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        c.out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(c.out, "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");

    c.line(Vec2::new(view.min.x, 0.0), Vec2::new(view.max.x, 0.0), AXIS, true);

    match mirror {
        Mirror::Spherical(m) => {
            let pts: Vec<Vec2> = (0..=64)
                .map(|k| {
                    let hk = h * (2.0 * k as f64 / 64.0 - 1.0);
                    Vec2::new(m.sag(hk), hk)
                })
                .collect();
            c.polyline(&pts, FACE, 3.0);
        }
        Mirror::Plane(_) => c.polyline(&[Vec2::new(0.0, -h), Vec2::new(0.0, h)], FACE, 3.0),
    }

    c.dot(Vec2::ZERO, "black", "O");
    if let Mirror::Spherical(m) = mirror {
        c.dot(local(&frame, m.focus_point()), "black", "F");
        c.dot(local(&frame, m.center()), "black", "C");
    }

    c.arrow(Vec2::new(obj.x, 0.0), obj, "black", false);
    c.dot(obj, "black", "P");

    for (launch, reflected) in &rays {
        c.line(launch.origin, reflected.origin, RAY, false);
        let end = match (kind, image) {
            (ImageKind::Real, Some(p)) if view.contains(p) => {
                // continue past the real image to the edge
                let s = view.exit(reflected.origin, reflected.direction);
                Some(reflected.at(s))
            }
            _ => None,
        };
        c.ray(reflected, end, RAY);
        if kind == ImageKind::Virtual {
            if let Some(p) = image {
                let back = p.clamp_into(&view);
                c.line(reflected.origin, back, EXTENSION, true);
            }
        }
    }

    if let Some(p) = image {
        let dashed = kind == ImageKind::Virtual;
        if view.contains(p) {
            c.arrow(Vec2::new(p.x, 0.0), p, "#c62828", dashed);
            c.dot(p, "#c62828", "P′");
        }
    }

    let caption = match (kind, paraxial.and_then(|g| g.p_im.finite())) {
        (ImageKind::AtInfinity, _) => "image at infinity".to_string(),
        (k, Some(p_im)) => format!("{} image, p_im = {}", k.as_str(), fmt(p_im)),
        (k, None) => format!("{} image", k.as_str()),
    };
    let _ = writeln!(
        c.out,
        "  <text x=\"12\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\">{caption}</text>"
    );
    c.out.push_str("</svg>\n");
    c.out
}

trait ClampInto {
    fn clamp_into(self, view: &View) -> Vec2;
}

impl ClampInto for Vec2 {
    fn clamp_into(self, view: &View) -> Vec2 {
        Vec2::new(
            self.x.clamp(view.min.x, view.max.x),
            self.y.clamp(view.min.y, view.max.y),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirrors::{Orientation, PlaneMirror, SphericalMirror};

    fn concave() -> Mirror {
        SphericalMirror::on_x_axis(2.0, Orientation::Concave).unwrap().into()
    }

    #[test]
    fn deterministic_output() {
        let a = render_svg(&concave(), Vec2::new(3.0, 0.5), &RenderOptions::default());
        let b = render_svg(&concave(), Vec2::new(3.0, 0.5), &RenderOptions::default());
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert!(a.contains("real image, p_im = 1.5"));
        for label in [">O<", ">F<", ">C<", ">P<", ">P′<"] {
            assert!(a.contains(label), "missing {label}");
        }
    }

    #[test]
    fn convex_draws_extensions() {
        let m: Mirror = SphericalMirror::on_x_axis(2.0, Orientation::Convex).unwrap().into();
        let svg = render_svg(&m, Vec2::new(1.0, 0.2), &RenderOptions::default());
        assert!(svg.contains("virtual image"));
        assert!(svg.contains(EXTENSION));
    }

    #[test]
    fn plane_and_on_axis_objects_render() {
        let m: Mirror = PlaneMirror::new(Vec2::ZERO, Vec2::new(1.0, 0.0), 1.0).unwrap().into();
        let svg = render_svg(&m, Vec2::new(1.0, 0.3), &RenderOptions::default());
        assert!(svg.contains("virtual image, p_im = -1"));
        let svg = render_svg(&concave(), Vec2::new(3.0, 0.0), &RenderOptions::default());
        assert!(svg.contains("real image, p_im = 1.5"));
    }

    #[test]
    fn object_at_focus() {
        let svg = render_svg(&concave(), Vec2::new(1.0, 0.2), &RenderOptions { mode: RayMode::Ideal });
        assert!(svg.contains("image at infinity"));
    }
}

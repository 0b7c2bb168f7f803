//! Line-delimited JSON records shared by the CLI and the session protocol.

use serde_json::{json, Value};

use crate::geometry::Vec2;
use crate::imaging::{RayMode, TraceImage};
use crate::mirrors::{FocalLength, Mirror, Orientation};
use crate::numberline::ArithmeticStep;
use crate::paraxial::{LimitRow, ParaxialImage};

pub const PROTOCOL_VERSION: u64 = 1;

pub fn focal_value(f: FocalLength) -> Value {
    match f {
        FocalLength::Finite(f) => json!(f),
        FocalLength::Infinite => json!("infinity"),
    }
}

pub fn point_value(p: Vec2) -> Value {
    json!([p.x, p.y])
}

/// Mirror parameters with its landmark points O, C and F.
pub fn mirror_value(m: &Mirror) -> Value {
    match m {
        Mirror::Spherical(s) => json!({
            "type": "spherical",
            "orientation": match s.orientation() {
                Orientation::Concave => "concave",
                Orientation::Convex => "convex",
            },
            "radius": s.radius(),
            "aperture_deg": s.aperture().to_degrees(),
            "focal_length": s.focal_length(),
            "vertex": point_value(s.vertex()),
            "axis": point_value(s.axis()),
            "center": point_value(s.center()),
            "focus": point_value(s.focus_point()),
        }),
        Mirror::Plane(p) => json!({
            "type": "plane",
            "extent": p.extent(),
            "focal_length": "infinity",
            "vertex": point_value(p.vertex()),
            "axis": point_value(p.axis()),
        }),
    }
}

pub fn paraxial_value(img: &ParaxialImage) -> Value {
    serde_json::to_value(img).expect("paraxial image serializes")
}

pub fn trace_value(img: &TraceImage) -> Value {
    json!({
        "point": img.point.map(point_value),
        "kind": img.kind,
        "spread": img.spread,
        "rays_used": img.rays_used,
    })
}

pub fn gauss_record(p_ob: f64, f: FocalLength, img: &ParaxialImage) -> Value {
    json!({
        "v": PROTOCOL_VERSION,
        "record": "gauss",
        "p_ob": p_ob,
        "f": focal_value(f),
        "p_im": img.p_im,
        "magnification": img.magnification,
        "kind": img.kind,
    })
}

pub fn trace_record(method: &str, mode: Option<RayMode>, img: &TraceImage) -> Value {
    let mut v = trace_value(img);
    let obj = v.as_object_mut().expect("object");
    obj.insert("v".into(), json!(PROTOCOL_VERSION));
    obj.insert("record".into(), json!("trace"));
    obj.insert("method".into(), json!(method));
    if let Some(mode) = mode {
        obj.insert("mode".into(), json!(mode));
    }
    v
}

pub fn limit_record(p_ob: f64, row: &LimitRow) -> Value {
    json!({
        "v": PROTOCOL_VERSION,
        "record": "limit",
        "p_ob": p_ob,
        "radius": row.radius,
        "p_im": row.p_im,
        "kind": row.kind,
        "regime_change": row.regime_change,
    })
}

pub fn step_value(step: &ArithmeticStep) -> Value {
    serde_json::to_value(step).expect("step serializes")
}

pub fn step_record(step: &ArithmeticStep) -> Value {
    let mut v = step_value(step);
    let obj = v.as_object_mut().expect("object");
    obj.insert("v".into(), json!(PROTOCOL_VERSION));
    obj.insert("record".into(), json!("step"));
    v
}

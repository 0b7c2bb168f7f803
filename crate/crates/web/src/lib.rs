//! Browser bindings: the session protocol, a bench figure and the plane-limit
//! sweep.

use mirrorlab::geometry::Vec2;
use mirrorlab::imaging::{self, RayMode};
use mirrorlab::mirrors::{Mirror, Orientation, PlaneMirror, SphericalMirror, DEFAULT_APERTURE_DEG};
use mirrorlab::paraxial::{gauss_image, plane_limit_sweep};
use mirrorlab::shell::svg::{render_svg, RenderOptions};
use mirrorlab::shell::{report, Session};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const PLANE_EXTENT: f64 = 10.0;

/// A protocol session held by the page.
#[wasm_bindgen]
#[derive(Default)]
pub struct Lab {
    session: Session,
}

#[wasm_bindgen]
impl Lab {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Lab {
        Lab::default()
    }

    /// Handle one command line and return the reply line.
    pub fn send(&mut self, line: &str) -> String {
        self.session.handle_line(line)
    }
}

fn bench_mirror(orientation: &str, radius: f64) -> Result<Mirror, String> {
    let x = Vec2::new(1.0, 0.0);
    let aperture = DEFAULT_APERTURE_DEG.to_radians();
    let mirror: Mirror = match orientation {
        "concave" => SphericalMirror::new(radius, Orientation::Concave, aperture, Vec2::ZERO, x)
            .map_err(|e| e.to_string())?
            .into(),
        "convex" => SphericalMirror::new(radius, Orientation::Convex, aperture, Vec2::ZERO, x)
            .map_err(|e| e.to_string())?
            .into(),
        "plane" => PlaneMirror::new(Vec2::ZERO, x, PLANE_EXTENT)
            .map_err(|e| e.to_string())?
            .into(),
        other => return Err(format!("unknown orientation {other:?}")),
    };
    Ok(mirror)
}

/// SVG figure of the bench: mirror, object at (`axial`, `height`), rays
/// and image.
#[wasm_bindgen]
pub fn bench_svg(orientation: &str, radius: f64, axial: f64, height: f64, exact: bool) -> Result<String, String> {
    let mirror = bench_mirror(orientation, radius)?;
    let mode = if exact { RayMode::Exact } else { RayMode::Ideal };
    let object = mirror.frame().to_world(axial, height);
    Ok(render_svg(&mirror, object, &RenderOptions { mode }))
}

/// Paraxial and traced image of the bench as JSON.
#[wasm_bindgen]
pub fn bench_readout(orientation: &str, radius: f64, axial: f64, height: f64, exact: bool) -> Result<String, String> {
    let mirror = bench_mirror(orientation, radius)?;
    let object = mirror.frame().to_world(axial, height);
    let paraxial = gauss_image(axial, mirror.focal_length())
        .map(|img| report::paraxial_value(&img))
        .map_err(|e| e.to_string());
    let mode = if exact { RayMode::Exact } else { RayMode::Ideal };
    let traced = match &mirror {
        Mirror::Spherical(s) => imaging::principal_ray_image(object, s, mode),
        Mirror::Plane(_) => imaging::fan_image(object, &mirror, 16, 0.1 * mirror.max_height()),
    }
    .map(|img| report::trace_value(&img))
    .map_err(|e| e.to_string());
    let field = |r: Result<Value, String>| match r {
        Ok(v) => v,
        Err(e) => json!({ "error": e }),
    };
    Ok(json!({
        "mirror": report::mirror_value(&mirror),
        "paraxial": field(paraxial),
        "trace": field(traced),
    })
    .to_string())
}

/// Image positions for concave mirrors of the given radii, as JSON rows.
#[wasm_bindgen]
pub fn plane_limit(p_ob: f64, radii: Vec<f64>) -> Result<String, String> {
    let rows = plane_limit_sweep(p_ob, &radii).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = rows.iter().map(|row| report::limit_record(p_ob, row)).collect();
    Ok(Value::Array(rows).to_string())
}

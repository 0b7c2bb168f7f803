//! Scene files.
//!
//! Scenes are TOML documents:
//!
//! ```toml
//! version = 1
//!
//! [options]
//! fan_rays = 64            # default 64
//! fan_max_height = 0.002   # optional, default 0.1 × mirror height
//! tolerance = 0.0001       # default 1e-4, relative
//!
//! [[mirror]]
//! id = "m1"
//! type = "spherical"       # or "plane"
//! orientation = "concave"  # spherical only: "concave" | "convex"
//! radius = 2.0             # spherical only
//! vertex = [0.0, 0.0]
//! axis = [1.0, 0.0]        # points toward the front of the mirrored face
//! aperture_deg = 30.0      # spherical only, default 30
//! # extent = 5.0           # plane only, required: half-length
//!
//! [[object]]
//! id = "p"
//! position = [3.0, 0.5]    # or: axial = 3.0, height = 0.5
//! mirror = "m1"            # optional; required with several mirrors
//! ```
//!
//! Unknown keys are errors. Every diagnostic carries a 1-based line and
//! column.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::ops::Range;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::geometry::Vec2;
use crate::mirrors::{Mirror, MirrorError, Orientation, PlaneMirror, SphericalMirror, DEFAULT_APERTURE_DEG};

pub const DEFAULT_FAN_RAYS: usize = 64;
pub const DEFAULT_TOLERANCE: f64 = 1e-4;
/// Fan height as a fraction of the mirror's half-height when unspecified.
pub const DEFAULT_FAN_FRACTION: f64 = 0.1;

/// A parse or validation failure at a position in the source.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Diagnostic {
    fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        Diagnostic {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("no mirror named {0:?}")]
    UnknownMirror(String),
    #[error("no object named {0:?}")]
    UnknownObject(String),
    #[error("scene has {0} mirrors; name one")]
    AmbiguousMirror(usize),
    #[error("scene has {0} objects; name one")]
    AmbiguousObject(usize),
    #[error("scene has no objects")]
    NoObject,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MirrorShape {
    Spherical {
        orientation: Orientation,
        radius: f64,
        vertex: Vec2,
        axis: Vec2,
        aperture_deg: f64,
    },
    Plane {
        vertex: Vec2,
        axis: Vec2,
        extent: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorSpec {
    pub id: String,
    pub shape: MirrorShape,
}

impl MirrorSpec {
    pub fn build(&self) -> Result<Mirror, MirrorError> {
        Ok(match self.shape {
            MirrorShape::Spherical {
                orientation,
                radius,
                vertex,
                axis,
                aperture_deg,
            } => SphericalMirror::new(radius, orientation, aperture_deg.to_radians(), vertex, axis)?.into(),
            MirrorShape::Plane { vertex, axis, extent } => PlaneMirror::new(vertex, axis, extent)?.into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Placement {
    Point(Vec2),
    /// Axial distance and transverse height in the mirror's own frame.
    Axial {
        axial: f64,
        height: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectSpec {
    pub id: String,
    pub placement: Placement,
    pub mirror: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneOptions {
    pub fan_rays: usize,
    pub fan_max_height: Option<f64>,
    pub tolerance: f64,
}

impl Default for SceneOptions {
    fn default() -> Self {
        SceneOptions {
            fan_rays: DEFAULT_FAN_RAYS,
            fan_max_height: None,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneDoc {
    pub mirrors: Vec<MirrorSpec>,
    pub objects: Vec<ObjectSpec>,
    pub options: SceneOptions,
}

/// A resolved imaging query: one mirror, one object point.
#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub mirror_id: String,
    pub object_id: String,
    pub mirror: Mirror,
    pub object: Vec2,
}

impl SceneDoc {
    pub fn mirror(&self, id: &str) -> Option<&MirrorSpec> {
        self.mirrors.iter().find(|m| m.id == id)
    }

    pub fn object(&self, id: &str) -> Option<&ObjectSpec> {
        self.objects.iter().find(|o| o.id == id)
    }

    /// Resolve the mirror and object of an imaging query. Omitted ids are
    /// allowed when the choice is unambiguous.
    pub fn query(&self, mirror: Option<&str>, object: Option<&str>) -> Result<Query, QueryError> {
        let obj = match object {
            Some(id) => self.object(id).ok_or_else(|| QueryError::UnknownObject(id.into()))?,
            None => match self.objects.as_slice() {
                [] => return Err(QueryError::NoObject),
                [only] => only,
                many => return Err(QueryError::AmbiguousObject(many.len())),
            },
        };
        let mirror_id = mirror.or(obj.mirror.as_deref());
        let spec = match mirror_id {
            Some(id) => self.mirror(id).ok_or_else(|| QueryError::UnknownMirror(id.into()))?,
            None => match self.mirrors.as_slice() {
                [only] => only,
                many => return Err(QueryError::AmbiguousMirror(many.len())),
            },
        };
        // validated at parse time
        let built = spec.build().expect("scene mirrors are validated");
        let point = match obj.placement {
            Placement::Point(p) => p,
            Placement::Axial { axial, height } => built.frame().to_world(axial, height),
        };
        Ok(Query {
            mirror_id: spec.id.clone(),
            object_id: obj.id.clone(),
            mirror: built,
            object: point,
        })
    }

    /// Fan height for a query: the configured value or a tenth of the
    /// mirror's half-height.
    pub fn fan_height(&self, mirror: &Mirror) -> f64 {
        self.options
            .fan_max_height
            .unwrap_or(DEFAULT_FAN_FRACTION * mirror.max_height())
    }
}

/// A number that may be written as a TOML integer or float.
#[derive(Debug, Clone, Copy)]
struct Num(f64);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct NumVisitor;
        impl Visitor<'_> for NumVisitor {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                Ok(Num(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(v as f64))
            }
        }
        d.deserialize_any(NumVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    version: Option<Spanned<i64>>,
    options: Option<Spanned<RawOptions>>,
    #[serde(default)]
    mirror: Vec<Spanned<RawMirror>>,
    #[serde(default)]
    object: Vec<Spanned<RawObject>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    fan_rays: Option<Spanned<i64>>,
    fan_max_height: Option<Spanned<Num>>,
    tolerance: Option<Spanned<Num>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMirror {
    id: Spanned<String>,
    #[serde(rename = "type")]
    kind: Spanned<String>,
    orientation: Option<Spanned<String>>,
    radius: Option<Spanned<Num>>,
    vertex: Option<Spanned<[Num; 2]>>,
    axis: Option<Spanned<[Num; 2]>>,
    aperture_deg: Option<Spanned<Num>>,
    extent: Option<Spanned<Num>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObject {
    id: Spanned<String>,
    position: Option<Spanned<[Num; 2]>>,
    axial: Option<Spanned<Num>>,
    height: Option<Spanned<Num>>,
    mirror: Option<Spanned<String>>,
}

struct Validator<'a> {
    src: &'a str,
}

impl Validator<'_> {
    fn err(&self, span: Range<usize>, message: impl Into<String>) -> Diagnostic {
        Diagnostic::at(self.src, span.start, message)
    }

    fn required<T>(&self, v: Option<Spanned<T>>, table: &Range<usize>, what: &str) -> Result<Spanned<T>, Diagnostic> {
        v.ok_or_else(|| self.err(table.clone(), format!("missing field `{what}`")))
    }

    fn finite(&self, v: &Spanned<Num>, what: &str) -> Result<f64, Diagnostic> {
        let x = v.get_ref().0;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(self.err(v.span(), format!("`{what}` must be finite")))
        }
    }

    fn positive(&self, v: &Spanned<Num>, what: &str) -> Result<f64, Diagnostic> {
        let x = self.finite(v, what)?;
        if x > 0.0 {
            Ok(x)
        } else {
            Err(self.err(v.span(), format!("`{what}` must be positive, got {x}")))
        }
    }

    fn point(&self, v: &Spanned<[Num; 2]>, what: &str) -> Result<Vec2, Diagnostic> {
        let [x, y] = *v.get_ref();
        let p = Vec2::new(x.0, y.0);
        if p.is_finite() {
            Ok(p)
        } else {
            Err(self.err(v.span(), format!("`{what}` must be finite")))
        }
    }

    fn axis(&self, v: &Spanned<[Num; 2]>) -> Result<Vec2, Diagnostic> {
        let a = self.point(v, "axis")?;
        if a.length() == 0.0 {
            return Err(self.err(v.span(), "`axis` must be non-zero"));
        }
        Ok(a)
    }

    fn mirror(&self, raw: Spanned<RawMirror>) -> Result<MirrorSpec, Diagnostic> {
        let table = raw.span();
        let raw = raw.into_inner();
        let vertex = self.point(&self.required(raw.vertex, &table, "vertex")?, "vertex")?;
        let axis = self.axis(&self.required(raw.axis, &table, "axis")?)?;
        let shape = match raw.kind.get_ref().as_str() {
            "spherical" => {
                if let Some(e) = raw.extent {
                    return Err(self.err(e.span(), "`extent` applies to plane mirrors only"));
                }
                let o = self.required(raw.orientation, &table, "orientation")?;
                let orientation = match o.get_ref().as_str() {
                    "concave" => Orientation::Concave,
                    "convex" => Orientation::Convex,
                    other => {
                        return Err(self.err(
                            o.span(),
                            format!("`orientation` must be \"concave\" or \"convex\", got {other:?}"),
                        ))
                    }
                };
                let radius = self.positive(&self.required(raw.radius, &table, "radius")?, "radius")?;
                let aperture_deg = match &raw.aperture_deg {
                    Some(a) => {
                        let deg = self.positive(a, "aperture_deg")?;
                        if deg >= 90.0 {
                            return Err(self.err(a.span(), format!("`aperture_deg` must be below 90, got {deg}")));
                        }
                        deg
                    }
                    None => DEFAULT_APERTURE_DEG,
                };
                MirrorShape::Spherical {
                    orientation,
                    radius,
                    vertex,
                    axis,
                    aperture_deg,
                }
            }
            "plane" => {
                for (key, present) in [
                    ("orientation", raw.orientation.as_ref().map(|v| v.span())),
                    ("radius", raw.radius.as_ref().map(|v| v.span())),
                    ("aperture_deg", raw.aperture_deg.as_ref().map(|v| v.span())),
                ] {
                    if let Some(span) = present {
                        return Err(self.err(span, format!("`{key}` applies to spherical mirrors only")));
                    }
                }
                let extent = self.positive(&self.required(raw.extent, &table, "extent")?, "extent")?;
                MirrorShape::Plane { vertex, axis, extent }
            }
            other => {
                return Err(self.err(
                    raw.kind.span(),
                    format!("`type` must be \"spherical\" or \"plane\", got {other:?}"),
                ))
            }
        };
        Ok(MirrorSpec {
            id: raw.id.into_inner(),
            shape,
        })
    }

    fn object(&self, raw: Spanned<RawObject>) -> Result<ObjectSpec, Diagnostic> {
        let table = raw.span();
        let raw = raw.into_inner();
        let placement = match (&raw.position, &raw.axial, &raw.height) {
            (Some(p), None, None) => Placement::Point(self.point(p, "position")?),
            (None, Some(a), Some(h)) => Placement::Axial {
                axial: self.finite(a, "axial")?,
                height: self.finite(h, "height")?,
            },
            (Some(p), _, _) => return Err(self.err(p.span(), "give either `position` or `axial` + `height`, not both")),
            (None, None, None) => return Err(self.err(table, "missing field `position`")),
            (None, None, Some(_)) => return Err(self.err(table, "missing field `axial`")),
            (None, Some(_), None) => return Err(self.err(table, "missing field `height`")),
        };
        Ok(ObjectSpec {
            id: raw.id.into_inner(),
            placement,
            mirror: raw.mirror.map(Spanned::into_inner),
        })
    }

    fn options(&self, raw: Option<Spanned<RawOptions>>) -> Result<SceneOptions, Diagnostic> {
        let mut opts = SceneOptions::default();
        let Some(raw) = raw else { return Ok(opts) };
        let raw = raw.into_inner();
        if let Some(n) = raw.fan_rays {
            if *n.get_ref() < 3 {
                return Err(self.err(n.span(), format!("`fan_rays` must be at least 3, got {}", n.get_ref())));
            }
            opts.fan_rays = *n.get_ref() as usize;
        }
        if let Some(h) = &raw.fan_max_height {
            opts.fan_max_height = Some(self.positive(h, "fan_max_height")?);
        }
        if let Some(t) = &raw.tolerance {
            opts.tolerance = self.positive(t, "tolerance")?;
        }
        Ok(opts)
    }
}

/// Parse and validate a scene document.
pub fn parse_scene(src: &str) -> Result<SceneDoc, Diagnostic> {
    let raw: RawDoc = toml::from_str(src).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        Diagnostic::at(src, offset, e.message().trim_end())
    })?;
    let v = Validator { src };
    if let Some(version) = &raw.version {
        if *version.get_ref() != 1 {
            return Err(v.err(
                version.span(),
                format!("unsupported scene version {}", version.get_ref()),
            ));
        }
    }
    if raw.mirror.is_empty() {
        return Err(Diagnostic::at(src, 0, "no mirror"));
    }
    let options = v.options(raw.options)?;

    let mut seen = HashSet::new();
    let mut check_id = |id: &Spanned<String>| {
        if id.get_ref().is_empty() {
            return Err(v.err(id.span(), "`id` must not be empty"));
        }
        if !seen.insert(id.get_ref().clone()) {
            return Err(v.err(id.span(), format!("duplicate id {:?}", id.get_ref())));
        }
        Ok(())
    };
    let mut mirrors = Vec::with_capacity(raw.mirror.len());
    for m in raw.mirror {
        check_id(&m.get_ref().id)?;
        mirrors.push(v.mirror(m)?);
    }
    let mirror_ids: HashSet<&str> = mirrors.iter().map(|m| m.id.as_str()).collect();
    let mut objects = Vec::with_capacity(raw.object.len());
    for o in raw.object {
        check_id(&o.get_ref().id)?;
        if let Some(m) = &o.get_ref().mirror {
            if !mirror_ids.contains(m.get_ref().as_str()) {
                return Err(v.err(m.span(), format!("unknown mirror {:?}", m.get_ref())));
            }
        }
        objects.push(v.object(o)?);
    }
    let doc = SceneDoc {
        mirrors,
        objects,
        options,
    };
    for m in &doc.mirrors {
        m.build()
            .map_err(|e| Diagnostic::at(src, 0, format!("mirror {:?}: {e}", m.id)))?;
    }
    Ok(doc)
}

fn num(v: f64) -> String {
    // Debug keeps a decimal point or exponent, so TOML reads a float back
    format!("{v:?}")
}

fn pair(v: Vec2) -> String {
    format!("[{}, {}]", num(v.x), num(v.y))
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Canonical text of a scene: fixed key order, every default spelled out.
pub fn serialize_scene(doc: &SceneDoc) -> String {
    let mut out = String::from("version = 1\n\n[options]\n");
    let o = &doc.options;
    let _ = writeln!(out, "fan_rays = {}", o.fan_rays);
    if let Some(h) = o.fan_max_height {
        let _ = writeln!(out, "fan_max_height = {}", num(h));
    }
    let _ = writeln!(out, "tolerance = {}", num(o.tolerance));
    for m in &doc.mirrors {
        let _ = writeln!(out, "\n[[mirror]]\nid = {}", quoted(&m.id));
        match &m.shape {
            MirrorShape::Spherical {
                orientation,
                radius,
                vertex,
                axis,
                aperture_deg,
            } => {
                let o = match orientation {
                    Orientation::Concave => "concave",
                    Orientation::Convex => "convex",
                };
                let _ = writeln!(
                    out,
                    "type = \"spherical\"\norientation = \"{o}\"\nradius = {}",
                    num(*radius)
                );
                let _ = writeln!(out, "vertex = {}\naxis = {}", pair(*vertex), pair(*axis));
                let _ = writeln!(out, "aperture_deg = {}", num(*aperture_deg));
            }
            MirrorShape::Plane { vertex, axis, extent } => {
                let _ = writeln!(out, "type = \"plane\"");
                let _ = writeln!(out, "vertex = {}\naxis = {}", pair(*vertex), pair(*axis));
                let _ = writeln!(out, "extent = {}", num(*extent));
            }
        }
    }
    for obj in &doc.objects {
        let _ = writeln!(out, "\n[[object]]\nid = {}", quoted(&obj.id));
        match obj.placement {
            Placement::Point(p) => {
                let _ = writeln!(out, "position = {}", pair(p));
            }
            Placement::Axial { axial, height } => {
                let _ = writeln!(out, "axial = {}\nheight = {}", num(axial), num(height));
            }
        }
        if let Some(m) = &obj.mirror {
            let _ = writeln!(out, "mirror = {}", quoted(m));
        }
    }
    out
}

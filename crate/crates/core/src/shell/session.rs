//! Interactive session protocol.
//!
//! Newline-delimited JSON over any byte stream. Every message carries
//! `v: 1`, a `kind` (`command` or `event`), a `name`, a `seq` and a
//! `payload` object:
//!
//! ```text
//! {"v":1,"kind":"command","name":"displace","seq":2,"payload":{"delta":5}}
//! {"v":1,"kind":"event","name":"state","seq":2,"payload":{...}}
//! ```
//!
//! Each command gets exactly one reply with the same `seq`: a `state`
//! event carrying the full derived state, an `error` event (the session
//! keeps running), or `bye` after `shutdown`. Command `seq` values must
//! strictly increase.

use std::io::{self, BufRead, Write};

use serde_json::{json, Map, Value};

use crate::geometry::Vec2;
use crate::imaging::{self, ImagingError, RayMode, TraceImage};
use crate::mirrors::{Mirror, Orientation, PlaneMirror, SphericalMirror, DEFAULT_APERTURE_DEG};
use crate::numberline::NumberLineScene;
use crate::paraxial::gauss_image;
use crate::shell::report::{self, PROTOCOL_VERSION};
use crate::shell::scene::{self, DEFAULT_FAN_RAYS};

const DEFAULT_PLANE_EXTENT: f64 = 10.0;

/// How `query_image` traces the bench.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TraceMode {
    Principal(RayMode),
    Fan { rays: usize, max_height: Option<f64> },
}

impl TraceMode {
    fn name(&self) -> &'static str {
        match self {
            TraceMode::Principal(RayMode::Ideal) => "ideal",
            TraceMode::Principal(RayMode::Exact) => "exact",
            TraceMode::Fan { .. } => "fan",
        }
    }
}

/// Mirror, object and imaging mode of the optics bench.
#[derive(Debug, Clone, PartialEq)]
pub struct Bench {
    pub mirror: Mirror,
    pub axial: f64,
    pub height: f64,
    pub trace_mode: Option<TraceMode>,
}

impl Default for Bench {
    fn default() -> Self {
        Bench {
            mirror: SphericalMirror::on_x_axis(2.0, Orientation::Concave)
                .expect("valid default mirror")
                .into(),
            axial: 3.0,
            height: 0.5,
            trace_mode: None,
        }
    }
}

impl Bench {
    pub fn object_point(&self) -> Vec2 {
        self.mirror.frame().to_world(self.axial, self.height)
    }

    pub fn trace(&self, mode: TraceMode) -> Result<TraceImage, ImagingError> {
        let object = self.object_point();
        match (mode, &self.mirror) {
            (TraceMode::Principal(m), Mirror::Spherical(s)) => imaging::principal_ray_image(object, s, m),
            (TraceMode::Principal(_), Mirror::Plane(_)) => Err(ImagingError::NotSpherical),
            (TraceMode::Fan { rays, max_height }, m) => imaging::fan_image(
                object,
                m,
                rays,
                max_height.unwrap_or(scene::DEFAULT_FAN_FRACTION * m.max_height()),
            ),
        }
    }
}

#[derive(Debug, Default)]
pub struct Session {
    last_seq: Option<u64>,
    numberline: NumberLineScene,
    bench: Bench,
    closed: bool,
}

/// A rejected command: an error code and a human-readable message.
struct Rejection {
    code: &'static str,
    message: String,
}

impl Rejection {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Rejection {
            code,
            message: message.into(),
        }
    }
}

fn field<'a>(payload: &'a Map<String, Value>, key: &str) -> Result<&'a Value, Rejection> {
    payload
        .get(key)
        .ok_or_else(|| Rejection::new("bad_payload", format!("missing payload field `{key}`")))
}

fn int(payload: &Map<String, Value>, key: &str) -> Result<i64, Rejection> {
    field(payload, key)?
        .as_i64()
        .ok_or_else(|| Rejection::new("bad_payload", format!("`{key}` must be an integer")))
}

fn real(payload: &Map<String, Value>, key: &str) -> Result<f64, Rejection> {
    field(payload, key)?
        .as_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Rejection::new("bad_payload", format!("`{key}` must be a finite number")))
}

fn opt_real(payload: &Map<String, Value>, key: &str) -> Result<Option<f64>, Rejection> {
    match payload.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => real(payload, key).map(Some),
    }
}

fn domain(e: impl std::fmt::Display) -> Rejection {
    Rejection::new("domain", e.to_string())
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn numberline(&self) -> &NumberLineScene {
        &self.numberline
    }

    pub fn bench(&self) -> &Bench {
        &self.bench
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Full derived state, as carried by every `state` event.
    pub fn state(&self) -> Value {
        let b = &self.bench;
        let paraxial = gauss_image(b.axial, b.mirror.focal_length())
            .ok()
            .map(|img| report::paraxial_value(&img));
        let (trace, trace_error) = match b.trace_mode.map(|m| b.trace(m)) {
            Some(Ok(img)) => (report::trace_value(&img), Value::Null),
            Some(Err(e)) => (Value::Null, json!(e.to_string())),
            None => (Value::Null, Value::Null),
        };
        json!({
            "numberline": {
                "token": self.numberline.token(),
                "image": self.numberline.image(),
                "last_step": self.numberline.last_step().map(report::step_value),
                "log_length": self.numberline.log().len(),
            },
            "bench": {
                "mirror": report::mirror_value(&b.mirror),
                "object": {
                    "axial": b.axial,
                    "height": b.height,
                    "point": report::point_value(b.object_point()),
                },
                "paraxial": paraxial,
                "trace_mode": b.trace_mode.map(|m| m.name()),
                "trace": trace,
                "trace_error": trace_error,
            },
        })
    }

    fn event(name: &str, seq: Value, payload: Value) -> Value {
        json!({ "v": PROTOCOL_VERSION, "kind": "event", "name": name, "seq": seq, "payload": payload })
    }

    fn error_event(&self, seq: Value, r: Rejection) -> Value {
        Self::event(
            "error",
            seq,
            json!({ "code": r.code, "message": r.message, "state": self.state() }),
        )
    }

    /// Handle one line of input and return the reply line (without newline).
    pub fn handle_line(&mut self, line: &str) -> String {
        self.handle(line).to_string()
    }

    /// Handle one message and return the reply event.
    pub fn handle(&mut self, line: &str) -> Value {
        let msg: Value = match serde_json::from_str(line) {
            Ok(v) => v,
            Err(e) => return self.error_event(Value::Null, Rejection::new("malformed", e.to_string())),
        };
        let seq_echo = msg.get("seq").cloned().unwrap_or(Value::Null);
        match self.dispatch(&msg) {
            Ok(reply) => reply,
            Err(r) => self.error_event(seq_echo, r),
        }
    }

    fn dispatch(&mut self, msg: &Value) -> Result<Value, Rejection> {
        let obj = msg
            .as_object()
            .ok_or_else(|| Rejection::new("malformed", "message must be a JSON object"))?;
        if obj.get("v").and_then(Value::as_u64) != Some(PROTOCOL_VERSION) {
            return Err(Rejection::new("version", "unsupported or missing protocol version `v`"));
        }
        if obj.get("kind").and_then(Value::as_str) != Some("command") {
            return Err(Rejection::new("malformed", "`kind` must be \"command\""));
        }
        let seq = obj
            .get("seq")
            .and_then(Value::as_u64)
            .ok_or_else(|| Rejection::new("malformed", "`seq` must be a non-negative integer"))?;
        if self.last_seq.is_some_and(|last| seq <= last) {
            return Err(Rejection::new(
                "seq",
                format!("seq {seq} is not greater than the previous command's"),
            ));
        }
        self.last_seq = Some(seq);
        let name = obj
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Rejection::new("malformed", "`name` must be a string"))?;
        let empty = Map::new();
        let payload = match obj.get("payload") {
            None | Some(Value::Null) => &empty,
            Some(Value::Object(p)) => p,
            Some(_) => return Err(Rejection::new("malformed", "`payload` must be an object")),
        };
        if self.closed {
            return Err(Rejection::new("closed", "session has shut down"));
        }

        match name {
            "load_scene" => self.load_scene(payload)?,
            "place_token" => {
                let z = int(payload, "z")?;
                self.numberline.place_token(z).map_err(domain)?;
            }
            "displace" => {
                let delta = int(payload, "delta")?;
                self.numberline.displace(delta).map_err(domain)?;
            }
            "set_mirror" => self.set_mirror(payload)?,
            "set_object" => {
                let axial = real(payload, "axial")?;
                let height = real(payload, "height")?;
                self.bench.axial = axial;
                self.bench.height = height;
            }
            "query_image" => self.query_image(payload)?,
            "reset" => {
                self.numberline.reset();
                self.bench = Bench::default();
            }
            "shutdown" => {
                self.closed = true;
                return Ok(Self::event("bye", json!(seq), json!({ "state": self.state() })));
            }
            other => return Err(Rejection::new("unknown_command", format!("unknown command {other:?}"))),
        }
        Ok(Self::event("state", json!(seq), self.state()))
    }

    fn load_scene(&mut self, payload: &Map<String, Value>) -> Result<(), Rejection> {
        let text = field(payload, "text")?
            .as_str()
            .ok_or_else(|| Rejection::new("bad_payload", "`text` must be a string"))?;
        let doc = scene::parse_scene(text).map_err(|d| Rejection::new("scene", d.to_string()))?;
        let mirror_id = payload.get("mirror").and_then(Value::as_str);
        let object_id = payload
            .get("object")
            .and_then(Value::as_str)
            .or_else(|| doc.objects.first().map(|o| o.id.as_str()));
        let (mirror, point) = match object_id {
            Some(_) => {
                let q = doc.query(mirror_id, object_id).map_err(domain)?;
                (q.mirror, Some(q.object))
            }
            None => {
                let spec = match mirror_id {
                    Some(id) => doc
                        .mirror(id)
                        .ok_or_else(|| domain(format!("no mirror named {id:?}")))?,
                    None => &doc.mirrors[0],
                };
                (spec.build().map_err(domain)?, None)
            }
        };
        self.bench.mirror = mirror;
        if let Some(p) = point {
            let (axial, height) = mirror.frame().to_local(p);
            self.bench.axial = axial;
            self.bench.height = height;
        }
        if let Some(TraceMode::Fan { rays, max_height }) = &mut self.bench.trace_mode {
            *rays = doc.options.fan_rays;
            *max_height = doc.options.fan_max_height;
        }
        Ok(())
    }

    fn set_mirror(&mut self, payload: &Map<String, Value>) -> Result<(), Rejection> {
        let orientation = field(payload, "orientation")?
            .as_str()
            .ok_or_else(|| Rejection::new("bad_payload", "`orientation` must be a string"))?;
        let mirror: Mirror = match orientation {
            "plane" => {
                let extent = opt_real(payload, "extent")?.unwrap_or(DEFAULT_PLANE_EXTENT);
                PlaneMirror::new(Vec2::ZERO, Vec2::new(1.0, 0.0), extent)
                    .map_err(domain)?
                    .into()
            }
            "concave" | "convex" => {
                let o = if orientation == "concave" {
                    Orientation::Concave
                } else {
                    Orientation::Convex
                };
                let key = if payload.contains_key("R") { "R" } else { "radius" };
                let radius = real(payload, key)?;
                let aperture = opt_real(payload, "aperture_deg")?.unwrap_or(DEFAULT_APERTURE_DEG);
                SphericalMirror::new(radius, o, aperture.to_radians(), Vec2::ZERO, Vec2::new(1.0, 0.0))
                    .map_err(domain)?
                    .into()
            }
            other => {
                return Err(Rejection::new(
                    "bad_payload",
                    format!("`orientation` must be concave, convex or plane, got {other:?}"),
                ))
            }
        };
        self.bench.mirror = mirror;
        Ok(())
    }

    fn query_image(&mut self, payload: &Map<String, Value>) -> Result<(), Rejection> {
        let mode = match payload.get("mode").and_then(Value::as_str).unwrap_or("exact") {
            "ideal" => TraceMode::Principal(RayMode::Ideal),
            "exact" => TraceMode::Principal(RayMode::Exact),
            "fan" => {
                let rays = match payload.get("rays") {
                    None | Some(Value::Null) => DEFAULT_FAN_RAYS,
                    Some(v) => v
                        .as_u64()
                        .map(|n| n as usize)
                        .ok_or_else(|| Rejection::new("bad_payload", "`rays` must be a positive integer"))?,
                };
                TraceMode::Fan {
                    rays,
                    max_height: opt_real(payload, "max_height")?,
                }
            }
            other => return Err(Rejection::new("bad_payload", format!("unknown mode {other:?}"))),
        };
        self.bench.trace(mode).map_err(domain)?;
        self.bench.trace_mode = Some(mode);
        Ok(())
    }
}

/// Run a session over a line transport until `shutdown` or end of input.
pub fn session_loop<R: BufRead, W: Write>(input: R, mut output: W) -> io::Result<Session> {
    let mut session = Session::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let reply = session.handle_line(&line);
        output.write_all(reply.as_bytes())?;
        output.write_all(b"\n")?;
        output.flush()?;
        if session.is_closed() {
            break;
        }
    }
    Ok(session)
}

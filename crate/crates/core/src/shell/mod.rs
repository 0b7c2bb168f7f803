//! Scene files, JSON reports, SVG figures and the session protocol.

pub mod report;
pub mod scene;
pub mod session;
pub mod svg;

pub use scene::{parse_scene, serialize_scene, Diagnostic, SceneDoc};
pub use session::{session_loop, Session};
pub use svg::{render_svg, RenderOptions};

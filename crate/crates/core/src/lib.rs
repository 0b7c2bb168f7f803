//! Mirror optics in the plane: exact ray tracing and paraxial imaging for
//! plane and spherical mirrors, plus the ruler-and-mirror model of signed
//! integer arithmetic.

pub mod geometry;
pub mod imaging;
pub mod mirrors;
pub mod numberline;
pub mod paraxial;
pub mod shell;

pub use geometry::{Hit, Ray, Vec2};
pub use imaging::{RayMode, TraceImage};
pub use mirrors::{FocalLength, Mirror, Orientation, PlaneMirror, SphericalMirror};
pub use numberline::{ArithmeticStep, NumberLineScene};
pub use paraxial::{AxialPosition, ImageKind, ParaxialImage};

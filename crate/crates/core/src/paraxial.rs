//! Closed-form paraxial imaging.
//!
//! Positions are signed axial distances from the vertex: positive in front
//! of the mirrored face, negative behind it. Magnification is signed,
//! `-p_im / p_ob`, with a negative value meaning an inverted image.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::mirrors::FocalLength;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParaxialError {
    #[error("object must be in front of the mirror (p_ob > 0), got {0}")]
    ObjectNotInFront(f64),
    #[error("radius must be positive, got {0}")]
    BadRadius(f64),
    #[error("focal length must be finite and non-zero, got {0}")]
    BadFocalLength(f64),
    #[error("object at the focal point: image at infinity")]
    AtInfinity,
    #[error("image position must be finite and non-zero, got {0}")]
    BadImagePosition(f64),
    #[error("object height must be positive, got {0}")]
    BadHeight(f64),
}

/// Signed position on the principal axis, or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxialPosition {
    Finite(f64),
    Infinite,
}

impl AxialPosition {
    pub fn finite(self) -> Option<f64> {
        match self {
            AxialPosition::Finite(v) => Some(v),
            AxialPosition::Infinite => None,
        }
    }
}

impl Serialize for AxialPosition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AxialPosition::Finite(v) => s.serialize_f64(*v),
            AxialPosition::Infinite => s.serialize_str("infinity"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImageKind {
    Real,
    Virtual,
    AtInfinity,
}

impl ImageKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ImageKind::Real => "real",
            ImageKind::Virtual => "virtual",
            ImageKind::AtInfinity => "at-infinity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParaxialImage {
    pub p_im: AxialPosition,
    /// `None` when the image is at infinity.
    pub magnification: Option<f64>,
    pub kind: ImageKind,
}

impl ParaxialImage {
    pub fn is_inverted(&self) -> bool {
        self.magnification.is_some_and(|m| m < 0.0)
    }
}

fn check_object(p_ob: f64) -> Result<(), ParaxialError> {
    if p_ob.is_finite() && p_ob > 0.0 {
        Ok(())
    } else {
        Err(ParaxialError::ObjectNotInFront(p_ob))
    }
}

/// Solve `1/p_ob + 1/p_im = 1/f` for the image of an object in front of the
/// mirror.
pub fn gauss_image(p_ob: f64, f: FocalLength) -> Result<ParaxialImage, ParaxialError> {
    check_object(p_ob)?;
    let p_im = match f {
        FocalLength::Infinite => -p_ob,
        FocalLength::Finite(f) => {
            if !f.is_finite() || f == 0.0 {
                return Err(ParaxialError::BadFocalLength(f));
            }
            if p_ob == f {
                return Ok(ParaxialImage {
                    p_im: AxialPosition::Infinite,
                    magnification: None,
                    kind: ImageKind::AtInfinity,
                });
            }
            // same root as 1/(1/f - 1/p_ob), but without cancelling the
            // two reciprocals when the object sits near the focus
            p_ob * f / (p_ob - f)
        }
    };
    if !p_im.is_finite() {
        return Ok(ParaxialImage {
            p_im: AxialPosition::Infinite,
            magnification: None,
            kind: ImageKind::AtInfinity,
        });
    }
    let kind = if p_im > 0.0 {
        ImageKind::Real
    } else {
        ImageKind::Virtual
    };
    Ok(ParaxialImage {
        p_im: AxialPosition::Finite(p_im),
        magnification: Some(-p_im / p_ob),
        kind,
    })
}

/// `|1/p_ob + 1/p_im - 1/f|`, the Gauss equation as a residual.
pub fn gauss_residual(p_ob: f64, p_im: f64, f: FocalLength) -> f64 {
    (1.0 / p_ob + 1.0 / p_im - f.power()).abs()
}

/// One row of a plane-limit sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitRow {
    pub radius: AxialPosition,
    pub p_im: AxialPosition,
    pub kind: ImageKind,
    /// The image kind differs from the previous row's.
    pub regime_change: bool,
}

/// Images of an object at `p_ob` in front of concave mirrors of growing
/// radius. `f64::INFINITY` in `radii` stands for the plane mirror.
pub fn plane_limit_sweep(p_ob: f64, radii: &[f64]) -> Result<Vec<LimitRow>, ParaxialError> {
    check_object(p_ob)?;
    let mut rows: Vec<LimitRow> = Vec::with_capacity(radii.len());
    for &r in radii {
        if r.is_nan() || r <= 0.0 {
            return Err(ParaxialError::BadRadius(r));
        }
        let (radius, f) = if r.is_infinite() {
            (AxialPosition::Infinite, FocalLength::Infinite)
        } else {
            (AxialPosition::Finite(r), FocalLength::Finite(r / 2.0))
        };
        let image = gauss_image(p_ob, f)?;
        let regime_change = rows.last().is_some_and(|prev| prev.kind != image.kind);
        rows.push(LimitRow {
            radius,
            p_im: image.p_im,
            kind: image.kind,
            regime_change,
        });
    }
    Ok(rows)
}

/// Which similar-triangle relation converts the height ratio into `p_im`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleRelation {
    /// Triangles on either side of the vertex cut by the chief ray:
    /// `d_ob / d_im = p_ob / p_im`.
    Chief,
    /// Triangles on either side of the focus cut by the reflected parallel
    /// ray: `d_ob / d_im = f / (p_im - f)`.
    Focal,
}

/// Image position from the two similar-triangle relations of the two-ray
/// construction.
///
/// Equating the relations fixes the height ratio `k = d_im/d_ob = f/(p_ob - f)`;
/// the selected relation then turns `k` into a position (`p_ob·k` for
/// [`TriangleRelation::Chief`], `f·(1 + k)` for [`TriangleRelation::Focal`]).
pub fn triangle_image(p_ob: f64, f: f64, via: TriangleRelation) -> Result<f64, ParaxialError> {
    check_object(p_ob)?;
    if !f.is_finite() || f == 0.0 {
        return Err(ParaxialError::BadFocalLength(f));
    }
    if p_ob == f {
        return Err(ParaxialError::AtInfinity);
    }
    let ratio = f / (p_ob - f);
    Ok(match via {
        TriangleRelation::Chief => p_ob * ratio,
        TriangleRelation::Focal => f * (1.0 + ratio),
    })
}

/// Unsigned image height `d_ob·|p_im|/p_ob`.
pub fn magnification_heights(d_ob: f64, p_ob: f64, p_im: f64) -> Result<f64, ParaxialError> {
    if !(d_ob.is_finite() && d_ob > 0.0) {
        return Err(ParaxialError::BadHeight(d_ob));
    }
    check_object(p_ob)?;
    if !p_im.is_finite() || p_im == 0.0 {
        return Err(ParaxialError::BadImagePosition(p_im));
    }
    Ok(d_ob * p_im.abs() / p_ob)
}

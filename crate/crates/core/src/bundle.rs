//! Equation bundles: the rendered raster plus the text elements extracted
//! from the source document.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::BBox;
use crate::raster::{RasterError, RasterImage};

pub type ElementId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextElement {
    pub id: ElementId,
    pub text: String,
    pub bbox: BBox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImageEncoding {
    #[serde(rename = "png-base64")]
    PngBase64,
    #[serde(rename = "pgm-inline")]
    PgmInline,
}

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("cannot read bundle {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed bundle: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("bad image: {0}")]
    Image(#[from] RasterError),
    #[error("invalid bundle: {0}")]
    Invalid(#[from] ValidationError),
}

/// A violated bundle invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("bundle has no elements")]
    NoElements,
    #[error("duplicate element id {0}")]
    DuplicateId(ElementId),
    #[error("element {0} has empty text")]
    EmptyText(ElementId),
    #[error("element {0} text contains non-printable characters")]
    UnprintableText(ElementId),
    #[error("element {0} has a zero-area bounding box")]
    EmptyBBox(ElementId),
    #[error("element {id} bounding box {bbox:?} exceeds the {width}x{height} image")]
    OutOfBounds { id: ElementId, bbox: [u32; 4], width: u32, height: u32 },
    #[error("declared size {declared_width}x{declared_height} does not match image data")]
    SizeMismatch { declared_width: u32, declared_height: u32 },
}

/// The two inputs for one equation. Immutable once validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationBundle {
    image: RasterImage,
    elements: Vec<TextElement>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ImageDoc {
    width: u32,
    height: u32,
    encoding: ImageEncoding,
    data: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleDoc {
    image: ImageDoc,
    elements: Vec<TextElement>,
}

impl EquationBundle {
    pub fn new(image: RasterImage, elements: Vec<TextElement>) -> Result<Self, ValidationError> {
        if elements.is_empty() {
            return Err(ValidationError::NoElements);
        }
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.id) {
                return Err(ValidationError::DuplicateId(e.id));
            }
            if e.text.is_empty() {
                return Err(ValidationError::EmptyText(e.id));
            }
            if e.text.chars().any(char::is_control) {
                return Err(ValidationError::UnprintableText(e.id));
            }
            if e.bbox.is_empty() {
                return Err(ValidationError::EmptyBBox(e.id));
            }
            if !e.bbox.fits_within(image.width(), image.height()) {
                return Err(ValidationError::OutOfBounds {
                    id: e.id,
                    bbox: e.bbox.into(),
                    width: image.width(),
                    height: image.height(),
                });
            }
        }
        Ok(EquationBundle { image, elements })
    }

    pub fn image(&self) -> &RasterImage {
        &self.image
    }

    /// Elements in file order.
    pub fn elements(&self) -> &[TextElement] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> Option<&TextElement> {
        self.elements.iter().find(|e| e.id == id)
    }

    /// Position of `id` in file order.
    pub fn index_of(&self, id: ElementId) -> Option<usize> {
        self.elements.iter().position(|e| e.id == id)
    }

    pub fn from_json(text: &str) -> Result<Self, BundleError> {
        let doc: BundleDoc = serde_json::from_str(text)?;
        let image = match doc.image.encoding {
            ImageEncoding::PngBase64 => RasterImage::from_png_base64(&doc.image.data)?,
            ImageEncoding::PgmInline => RasterImage::from_pgm(&doc.image.data)?,
        };
        if image.width() != doc.image.width || image.height() != doc.image.height {
            return Err(ValidationError::SizeMismatch {
                declared_width: doc.image.width,
                declared_height: doc.image.height,
            }
            .into());
        }
        Ok(EquationBundle::new(image, doc.elements)?)
    }

    pub fn to_json(&self, encoding: ImageEncoding) -> Result<String, BundleError> {
        let data = match encoding {
            ImageEncoding::PngBase64 => self.image.to_png_base64()?,
            ImageEncoding::PgmInline => self.image.to_pgm(),
        };
        let doc = BundleDoc {
            image: ImageDoc { width: self.image.width(), height: self.image.height(), encoding, data },
            elements: self.elements.clone(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    /// Normalized 0-100 coordinates of an element's center.
    pub fn normalized_position(&self, id: ElementId) -> Option<(u32, u32)> {
        let e = self.element(id)?;
        let (cx, cy) = e.bbox.center();
        Some(normalized_point(cx, cy, self.image.width(), self.image.height()))
    }
}

/// Reads and validates a bundle file.
pub fn load_bundle(path: impl AsRef<Path>) -> Result<EquationBundle, BundleError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|source| BundleError::Io { path: path.display().to_string(), source })?;
    EquationBundle::from_json(&text)
}

/// Maps a pixel point onto the 0-100 grid, rounding to the nearest integer.
pub fn normalized_point(x: f64, y: f64, width: u32, height: u32) -> (u32, u32) {
    let h = (100.0 * x / width as f64).round();
    let v = (100.0 * y / height as f64).round();
    (h.clamp(0.0, 100.0) as u32, v.clamp(0.0, 100.0) as u32)
}

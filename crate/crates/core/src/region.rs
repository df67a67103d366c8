//! Ink regions around a focus element: the raster areas that get sonified
//! when the reader asks about graphics in a direction or moves past them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundle::{ElementId, EquationBundle, TextElement};
use crate::dom::{classify_direction, line_of_sight, Dom, Primary};
use crate::geometry::BBox;
use crate::raster::RasterImage;

/// Vertical growth of left/right regions stops after this many focus heights
/// on each side.
pub const GROWTH_LIMIT_FACTOR: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InkRegion {
    pub bbox: BBox,
    pub origin: Option<Primary>,
    pub ink_pixels: u64,
}

impl InkRegion {
    /// Region over `bbox` with its ink counted from `image`.
    pub fn measure(image: &RasterImage, bbox: BBox, origin: Option<Primary>) -> Self {
        InkRegion { bbox, origin, ink_pixels: image.ink_count(&bbox) }
    }

    pub fn has_ink(&self) -> bool {
        self.ink_pixels > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("no element with id {0}")]
    UnknownElement(ElementId),
    #[error("transition needs two distinct elements")]
    SameElement,
}

fn lookup(bundle: &EquationBundle, id: ElementId) -> Result<&TextElement, RegionError> {
    bundle.element(id).ok_or(RegionError::UnknownElement(id))
}

/// The box running from the focus edge in `dir` up to the nearest element in
/// line of sight across the scan corridor, or the image edge.
///
/// Up/down regions keep the focus columns. Left/right regions start with the
/// focus rows and grow a row at a time while the next row holds ink.
/// Returns `None` when the box is empty or contains no ink.
pub fn directional_region(
    bundle: &EquationBundle,
    dom: &Dom,
    focus: ElementId,
    dir: Primary,
) -> Result<Option<InkRegion>, RegionError> {
    if !dom.contains(focus) {
        return Err(RegionError::UnknownElement(focus));
    }
    let f = lookup(bundle, focus)?;
    let image = bundle.image();
    let fb = f.bbox;
    let blockers = bundle
        .elements()
        .iter()
        .filter(|e| e.id != focus && line_of_sight(f, e, bundle));

    let rect = match dir {
        Primary::Up => {
            let stop = blockers
                .filter(|e| e.bbox.bottom() <= fb.top && e.bbox.overlaps_columns(fb.left, fb.right()))
                .map(|e| e.bbox.bottom())
                .max()
                .unwrap_or(0);
            BBox::from_edges(fb.left, stop, fb.right(), fb.top)
        }
        Primary::Down => {
            let stop = blockers
                .filter(|e| e.bbox.top >= fb.bottom() && e.bbox.overlaps_columns(fb.left, fb.right()))
                .map(|e| e.bbox.top)
                .min()
                .unwrap_or(image.height());
            BBox::from_edges(fb.left, fb.bottom(), fb.right(), stop)
        }
        Primary::Left => {
            let stop = blockers
                .filter(|e| e.bbox.right() <= fb.left && e.bbox.overlaps_rows(fb.top, fb.bottom()))
                .map(|e| e.bbox.right())
                .max()
                .unwrap_or(0);
            grow_vertically(image, stop, fb.left, fb)
        }
        Primary::Right => {
            let stop = blockers
                .filter(|e| e.bbox.left >= fb.right() && e.bbox.overlaps_rows(fb.top, fb.bottom()))
                .map(|e| e.bbox.left)
                .min()
                .unwrap_or(image.width());
            grow_vertically(image, fb.right(), stop, fb)
        }
    };
    Ok(rect
        .map(|r| InkRegion::measure(image, r, Some(dir)))
        .filter(InkRegion::has_ink))
}

fn grow_vertically(image: &RasterImage, left: u32, right: u32, focus: BBox) -> Option<BBox> {
    if right <= left {
        return None;
    }
    let limit = GROWTH_LIMIT_FACTOR * focus.height;
    let min_top = focus.top.saturating_sub(limit);
    let max_bottom = (focus.bottom() + limit).min(image.height());
    let mut top = focus.top;
    while top > min_top && image.row_has_ink(top - 1, left, right) {
        top -= 1;
    }
    let mut bottom = focus.bottom();
    while bottom < max_bottom && image.row_has_ink(bottom, left, right) {
        bottom += 1;
    }
    BBox::from_edges(left, top, right, bottom)
}

/// Number of maximal runs of consecutive ink-bearing rows in the region.
pub fn ink_bands(region: &InkRegion, bundle: &EquationBundle) -> usize {
    row_runs(bundle.image(), &region.bbox).len()
}

/// Row ranges `[start, end)` of each ink band inside `rect`.
pub fn row_runs(image: &RasterImage, rect: &BBox) -> Vec<(u32, u32)> {
    let mut runs = Vec::new();
    let mut start = None;
    for y in rect.top..rect.bottom() {
        match (image.row_has_ink(y, rect.left, rect.right()), start) {
            (true, None) => start = Some(y),
            (false, Some(s)) => {
                runs.push((s, y));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((s, rect.bottom()));
    }
    runs
}

/// The gap crossed when moving from one element to another: the strip
/// between the boxes along the movement axis, spanning both boxes on the
/// other axis. `None` when the boxes touch or overlap along that axis, or
/// the strip holds no ink.
pub fn transition_region(
    bundle: &EquationBundle,
    from: ElementId,
    to: ElementId,
) -> Result<Option<InkRegion>, RegionError> {
    if from == to {
        return Err(RegionError::SameElement);
    }
    let a = lookup(bundle, from)?.bbox;
    let b = lookup(bundle, to)?.bbox;
    let Ok(dir) = classify_direction(&a, &b) else {
        return Ok(None);
    };
    let span = a.union(&b);
    let rect = match dir.primary {
        Primary::Right => BBox::from_edges(a.right(), span.top, b.left, span.bottom()),
        Primary::Left => BBox::from_edges(b.right(), span.top, a.left, span.bottom()),
        Primary::Down => BBox::from_edges(span.left, a.bottom(), span.right(), b.top),
        Primary::Up => BBox::from_edges(span.left, b.bottom(), span.right(), a.top),
    };
    Ok(rect
        .map(|r| InkRegion::measure(bundle.image(), r, Some(dir.primary)))
        .filter(InkRegion::has_ink))
}

/// Directions in which `directional_region` finds ink.
pub fn has_graphics(
    bundle: &EquationBundle,
    dom: &Dom,
    focus: ElementId,
) -> Result<BTreeSet<Primary>, RegionError> {
    let mut dirs = BTreeSet::new();
    for dir in Primary::ALL {
        if directional_region(bundle, dom, focus, dir)?.is_some() {
            dirs.insert(dir);
        }
    }
    Ok(dirs)
}

/// The element's own box as a region.
pub fn element_region(bundle: &EquationBundle, id: ElementId) -> Result<InkRegion, RegionError> {
    let e = lookup(bundle, id)?;
    Ok(InkRegion::measure(bundle.image(), e.bbox, None))
}

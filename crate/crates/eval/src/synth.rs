//! Synthetic test images: one-pixel strokes on a white canvas.

use eqnav_core::RasterImage;
use thiserror::Error;

pub const INK: u8 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Opens to the right, like `(`.
    Left,
    /// Opens to the left, like `)`.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stroke {
    /// Row `y`, columns `x0..=x1`.
    HRule { y: u32, x0: u32, x1: u32 },
    /// Column `x`, rows `y0..=y1`.
    VRule { x: u32, y0: u32, y1: u32 },
    Diagonal { from: (u32, u32), to: (u32, u32) },
    /// A radical sign in the box at `(left, top)` of the given size, with
    /// its overbar running along the top edge to the right edge.
    Radical { left: u32, top: u32, width: u32, height: u32 },
    /// A round bracket spanning rows `top..=bottom` whose ends sit in
    /// column `x` and whose middle bulges `depth` columns outward.
    BracketArc { x: u32, top: u32, bottom: u32, depth: u32, side: Side },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("stroke {index} ({stroke:?}) leaves the {width}x{height} canvas")]
pub struct StrokeOutOfBounds {
    pub index: usize,
    pub stroke: Stroke,
    pub width: u32,
    pub height: u32,
}

/// Pixels of the 8-connected Bresenham line from `a` to `b`, both ends included.
pub fn line_pixels(a: (i64, i64), b: (i64, i64)) -> Vec<(i64, i64)> {
    let (mut x, mut y) = a;
    let dx = (b.0 - a.0).abs();
    let dy = -(b.1 - a.1).abs();
    let sx = if a.0 < b.0 { 1 } else { -1 };
    let sy = if a.1 < b.1 { 1 } else { -1 };
    let mut err = dx + dy;
    let mut out = Vec::with_capacity((dx.max(-dy) + 1) as usize);
    loop {
        out.push((x, y));
        if (x, y) == b {
            return out;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

fn polyline(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut out = vec![points[0]];
    for w in points.windows(2) {
        out.extend(line_pixels(w[0], w[1]).into_iter().skip(1));
    }
    out
}

impl Stroke {
    pub fn pixels(&self) -> Vec<(i64, i64)> {
        match *self {
            Stroke::HRule { y, x0, x1 } => line_pixels((x0 as i64, y as i64), (x1 as i64, y as i64)),
            Stroke::VRule { x, y0, y1 } => line_pixels((x as i64, y0 as i64), (x as i64, y1 as i64)),
            Stroke::Diagonal { from, to } => line_pixels((from.0 as i64, from.1 as i64), (to.0 as i64, to.1 as i64)),
            Stroke::Radical { left, top, width, height } => {
                let (l, t) = (left as i64, top as i64);
                let (w, h) = ((width as i64 - 1).max(1), (height as i64 - 1).max(1));
                let sign_w = (w / 3).clamp(1, (h / 2).max(1));
                polyline(&[
                    (l, t + h * 6 / 10),
                    (l + sign_w / 3, t + h / 2),
                    (l + sign_w * 2 / 3, t + h),
                    (l + sign_w, t),
                    (l + w, t),
                ])
            }
            Stroke::BracketArc { x, top, bottom, depth, side } => {
                let (t, b) = (top as f64, bottom as f64);
                let steps = (bottom - top).max(1) as usize;
                let points: Vec<(i64, i64)> = (0..=steps)
                    .map(|i| {
                        let s = i as f64 / steps as f64;
                        let bulge = (depth as f64 * (std::f64::consts::PI * s).sin()).round() as i64;
                        let px = match side {
                            Side::Left => x as i64 - bulge,
                            Side::Right => x as i64 + bulge,
                        };
                        (px, (t + s * (b - t)).round() as i64)
                    })
                    .collect();
                polyline(&points)
            }
        }
    }
}

/// Draws every stroke in ink on a white `width` x `height` canvas.
pub fn synth_image(width: u32, height: u32, strokes: &[Stroke]) -> Result<RasterImage, StrokeOutOfBounds> {
    let mut img = RasterImage::blank(width, height);
    for (index, stroke) in strokes.iter().enumerate() {
        let pixels = stroke.pixels();
        let inside = |&(x, y): &(i64, i64)| x >= 0 && y >= 0 && x < width as i64 && y < height as i64;
        if !pixels.iter().all(inside) {
            return Err(StrokeOutOfBounds { index, stroke: *stroke, width, height });
        }
        for (x, y) in pixels {
            img.set(x as u32, y as u32, INK);
        }
    }
    Ok(img)
}

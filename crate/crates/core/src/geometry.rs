//! Pixel-space rectangles and the segment tests used for line of sight.

use serde::{Deserialize, Serialize};

/// An axis-aligned pixel rectangle with a top-left origin.
///
/// The box covers columns `left..left + width` and rows `top..top + height`.
/// Serialized as `[left, top, width, height]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u32; 4]", into = "[u32; 4]")]
pub struct BBox {
    pub left: u32,
    pub top: u32,
    pub width: u32,
    pub height: u32,
}

impl From<[u32; 4]> for BBox {
    fn from([left, top, width, height]: [u32; 4]) -> Self {
        BBox { left, top, width, height }
    }
}

impl From<BBox> for [u32; 4] {
    fn from(b: BBox) -> Self {
        [b.left, b.top, b.width, b.height]
    }
}

impl BBox {
    pub const fn new(left: u32, top: u32, width: u32, height: u32) -> Self {
        BBox { left, top, width, height }
    }

    /// Builds the box spanning `left..right` and `top..bottom` (exclusive ends).
    pub fn from_edges(left: u32, top: u32, right: u32, bottom: u32) -> Option<Self> {
        (right > left && bottom > top).then(|| BBox::new(left, top, right - left, bottom - top))
    }

    /// Exclusive right edge.
    pub fn right(&self) -> u32 {
        self.left + self.width
    }

    /// Exclusive bottom edge.
    pub fn bottom(&self) -> u32 {
        self.top + self.height
    }

    pub fn center(&self) -> (f64, f64) {
        (
            self.left as f64 + self.width as f64 / 2.0,
            self.top as f64 + self.height as f64 / 2.0,
        )
    }

    pub fn area(&self) -> u64 {
        self.width as u64 * self.height as u64
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0 || self.height == 0
    }

    pub fn contains_pixel(&self, x: u32, y: u32) -> bool {
        x >= self.left && x < self.right() && y >= self.top && y < self.bottom()
    }

    pub fn fits_within(&self, width: u32, height: u32) -> bool {
        self.right() <= width && self.bottom() <= height
    }

    pub fn overlaps_columns(&self, left: u32, right: u32) -> bool {
        self.left < right && left < self.right()
    }

    pub fn overlaps_rows(&self, top: u32, bottom: u32) -> bool {
        self.top < bottom && top < self.bottom()
    }

    pub fn intersects(&self, other: &BBox) -> bool {
        self.overlaps_columns(other.left, other.right()) && self.overlaps_rows(other.top, other.bottom())
    }

    pub fn union(&self, other: &BBox) -> BBox {
        let left = self.left.min(other.left);
        let top = self.top.min(other.top);
        let right = self.right().max(other.right());
        let bottom = self.bottom().max(other.bottom());
        BBox::new(left, top, right - left, bottom - top)
    }

    /// Euclidean distance between the two box centers.
    pub fn center_distance(&self, other: &BBox) -> f64 {
        let (ax, ay) = self.center();
        let (bx, by) = other.center();
        (bx - ax).hypot(by - ay)
    }
}

/// Returns true if the open segment `a -> b` meets the closed rectangle
/// `[left, right] x [top, bottom]` covered by `rect`.
///
/// Liang-Barsky clipping; endpoints themselves are excluded.
pub fn segment_hits_rect(a: (f64, f64), b: (f64, f64), rect: &BBox) -> bool {
    let (x0, y0) = a;
    let dx = b.0 - x0;
    let dy = b.1 - y0;
    let mut t_enter = 0.0f64;
    let mut t_exit = 1.0f64;
    let bounds = [
        (-dx, x0 - rect.left as f64),
        (dx, rect.right() as f64 - x0),
        (-dy, y0 - rect.top as f64),
        (dy, rect.bottom() as f64 - y0),
    ];
    for (p, q) in bounds {
        if p == 0.0 {
            if q < 0.0 {
                return false;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                t_enter = t_enter.max(t);
            } else {
                t_exit = t_exit.min(t);
            }
        }
    }
    if t_enter > t_exit {
        return false;
    }
    // The open segment is (0, 1); a hit confined to an endpoint does not count.
    t_exit > 0.0 && t_enter < 1.0 && !(t_enter == t_exit && (t_enter == 0.0 || t_enter == 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampled_hit(a: (f64, f64), b: (f64, f64), r: &BBox) -> bool {
        let n = 20_000;
        (1..n).any(|i| {
            let t = i as f64 / n as f64;
            let x = a.0 + t * (b.0 - a.0);
            let y = a.1 + t * (b.1 - a.1);
            x >= r.left as f64 && x <= r.right() as f64 && y >= r.top as f64 && y <= r.bottom() as f64
        })
    }

    #[test]
    fn horizontal_segment_through_box() {
        let r = BBox::new(10, 0, 5, 10);
        assert!(segment_hits_rect((0.0, 5.0), (30.0, 5.0), &r));
        assert!(!segment_hits_rect((0.0, 15.0), (30.0, 15.0), &r));
    }

    #[test]
    fn segment_stopping_short() {
        let r = BBox::new(10, 0, 5, 10);
        assert!(!segment_hits_rect((0.0, 5.0), (9.0, 5.0), &r));
    }

    #[test]
    fn matches_sampling_on_grid() {
        let r = BBox::new(7, 9, 6, 4);
        for ax in (0..24).step_by(3) {
            for ay in (0..24).step_by(5) {
                for bx in (1..24).step_by(4) {
                    for by in (2..24).step_by(3) {
                        let a = (ax as f64 + 0.5, ay as f64 + 0.25);
                        let b = (bx as f64 + 0.25, by as f64 + 0.5);
                        assert_eq!(segment_hits_rect(a, b, &r), sampled_hit(a, b, &r), "{a:?} {b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn union_and_edges() {
        let a = BBox::new(0, 0, 2, 2);
        let b = BBox::new(5, 1, 1, 4);
        assert_eq!(a.union(&b), BBox::new(0, 0, 6, 5));
        assert_eq!(BBox::from_edges(3, 3, 3, 9), None);
        assert_eq!(a.center(), (1.0, 1.0));
    }
}

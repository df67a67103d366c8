//! A miniature math typesetter used to build equation bundles from
//! transcripts: boxes in em units, a stroke font, and rasterization to a
//! fixed pixel width.
//!
//! Text symbols become elements; fraction bars, radical overbars, brackets
//! and matrix delimiters are drawn as ink only. An element's box spans its
//! glyph ink horizontally and at least the baseline to x-height band
//! vertically, as glyph boxes from PDF text extraction do.

use std::f64::consts::PI;

use eqnav_core::bundle::TextElement;
use eqnav_core::{BBox, EquationBundle, RasterImage};

use crate::synth::{line_pixels, INK};
use crate::tree::{AnswerTree, Bracket};

pub const X_HEIGHT: f64 = 0.43;

type Path = Vec<(f64, f64)>;

#[derive(Debug, Clone, PartialEq)]
pub struct TypesetParams {
    pub width_px: u32,
    pub margin_px: u32,
    pub sup_scale: f64,
    /// Minimum superscript baseline raise.
    pub sup_raise: f64,
    /// Superscript baseline sits at most this far below the base's top.
    pub sup_drop: f64,
    /// Height of the fraction bar above the baseline.
    pub axis: f64,
    pub frac_gap: f64,
    pub frac_overhang: f64,
    /// Extra space on each side of operators.
    pub op_space: f64,
    pub root_clearance: f64,
    pub matrix_col_gap: f64,
    pub matrix_row_gap: f64,
    /// Symbols drawn as ink but not reported as elements.
    pub hidden: Vec<String>,
}

impl Default for TypesetParams {
    fn default() -> Self {
        TypesetParams {
            width_px: 300,
            margin_px: 6,
            sup_scale: 0.7,
            sup_raise: 0.23,
            sup_drop: 0.36,
            axis: 0.25,
            frac_gap: 0.15,
            frac_overhang: 0.08,
            op_space: 0.06,
            root_clearance: 0.12,
            matrix_col_gap: 0.7,
            matrix_row_gap: 0.3,
            hidden: Vec::new(),
        }
    }
}

/// A glyph outline: advance width and strokes, baseline at y = 0, y up.
struct Glyph {
    advance: f64,
    strokes: Vec<Path>,
}

fn ellipse(cx: f64, cy: f64, rx: f64, ry: f64) -> Path {
    (0..=16).map(|i| {
        let a = i as f64 * PI / 8.0;
        (cx + rx * a.sin(), cy + ry * a.cos())
    })
    .collect()
}

const SIX: [(f64, f64); 11] = [
    (0.39, 0.64), (0.28, 0.68), (0.15, 0.61), (0.09, 0.38), (0.10, 0.12), (0.20, 0.0),
    (0.33, 0.02), (0.41, 0.13), (0.39, 0.30), (0.27, 0.38), (0.13, 0.31),
];

fn glyph(c: char) -> Glyph {
    let g = |advance: f64, strokes: &[&[(f64, f64)]]| Glyph { advance, strokes: strokes.iter().map(|s| s.to_vec()).collect() };
    match c {
        '0' => Glyph { advance: 0.5, strokes: vec![ellipse(0.25, 0.34, 0.17, 0.34)] },
        '1' => g(0.5, &[&[(0.14, 0.54), (0.26, 0.68), (0.26, 0.0)], &[(0.13, 0.0), (0.39, 0.0)]]),
        '2' => g(0.5, &[&[(0.09, 0.54), (0.14, 0.64), (0.25, 0.68), (0.36, 0.64), (0.41, 0.54), (0.39, 0.43), (0.09, 0.0), (0.42, 0.0)]]),
        '3' => g(0.5, &[&[(0.09, 0.62), (0.2, 0.68), (0.34, 0.66), (0.41, 0.56), (0.37, 0.44), (0.22, 0.37), (0.37, 0.31), (0.42, 0.18), (0.36, 0.05), (0.22, 0.0), (0.08, 0.06)]]),
        '4' => g(0.5, &[&[(0.34, 0.0), (0.34, 0.68), (0.06, 0.22), (0.44, 0.22)]]),
        '5' => g(0.5, &[&[(0.41, 0.68), (0.12, 0.68), (0.1, 0.39), (0.24, 0.43), (0.38, 0.37), (0.42, 0.2), (0.36, 0.05), (0.21, 0.0), (0.08, 0.06)]]),
        '6' => g(0.5, &[&SIX]),
        '7' => g(0.5, &[&[(0.08, 0.68), (0.42, 0.68), (0.2, 0.0)]]),
        '8' => Glyph { advance: 0.5, strokes: vec![ellipse(0.25, 0.52, 0.13, 0.16), ellipse(0.25, 0.18, 0.16, 0.18)] },
        '9' => Glyph { advance: 0.5, strokes: vec![SIX.iter().map(|&(x, y)| (0.5 - x, 0.68 - y)).collect()] },
        'x' => g(0.57, &[&[(0.07, 0.0), (0.5, 0.43)], &[(0.07, 0.43), (0.5, 0.0)]]),
        'y' => g(0.52, &[&[(0.07, 0.43), (0.27, 0.06)], &[(0.45, 0.43), (0.17, -0.2), (0.09, -0.2)]]),
        '=' => g(0.78, &[&[(0.1, 0.13), (0.68, 0.13)], &[(0.1, 0.37), (0.68, 0.37)]]),
        '+' => g(0.78, &[&[(0.39, 0.0), (0.39, 0.5)], &[(0.1, 0.25), (0.68, 0.25)]]),
        '−' => g(0.78, &[&[(0.1, 0.25), (0.68, 0.25)]]),
        '×' => g(0.78, &[&[(0.2, 0.05), (0.58, 0.45)], &[(0.2, 0.45), (0.58, 0.05)]]),
        '·' => g(0.3, &[&[(0.13, 0.23), (0.17, 0.27)]]),
        '±' => g(0.78, &[&[(0.39, 0.1), (0.39, 0.5)], &[(0.1, 0.3), (0.68, 0.3)], &[(0.1, 0.0), (0.68, 0.0)]]),
        '÷' => g(0.78, &[&[(0.1, 0.25), (0.68, 0.25)], &[(0.37, 0.45), (0.41, 0.45)], &[(0.37, 0.05), (0.41, 0.05)]]),
        c if c.is_lowercase() => g(0.55, &[&[(0.07, 0.0), (0.48, 0.0), (0.48, 0.43), (0.07, 0.43), (0.07, 0.0)]]),
        _ => g(0.6, &[&[(0.07, 0.0), (0.53, 0.0), (0.53, 0.68), (0.07, 0.68), (0.07, 0.0)]]),
    }
}

fn is_operator(text: &str) -> bool {
    matches!(text, "=" | "+" | "−" | "×" | "·" | "±" | "÷" | "<" | ">")
}

/// Ink belonging to one element, or free-standing graphics.
#[derive(Debug, Clone)]
struct Piece {
    paths: Vec<Path>,
    /// Element text and metric box `(x0, y0, x1, y1)`, y up.
    element: Option<(String, [f64; 4])>,
}

#[derive(Debug, Clone, Default)]
struct LBox {
    width: f64,
    height: f64,
    depth: f64,
    pieces: Vec<Piece>,
}

impl LBox {
    fn translate(mut self, dx: f64, dy: f64) -> Self {
        for p in &mut self.pieces {
            for path in &mut p.paths {
                for pt in path.iter_mut() {
                    pt.0 += dx;
                    pt.1 += dy;
                }
            }
            if let Some((_, b)) = &mut p.element {
                b[0] += dx;
                b[2] += dx;
                b[1] += dy;
                b[3] += dy;
            }
        }
        self
    }

    /// Appends `other` placed with its origin at `(dx, dy)`.
    fn place(&mut self, other: LBox, dx: f64, dy: f64) {
        self.height = self.height.max(other.height + dy);
        self.depth = self.depth.max(other.depth - dy);
        self.pieces.extend(other.translate(dx, dy).pieces);
    }

    fn graphic(&mut self, path: Path) {
        self.pieces.push(Piece { paths: vec![path], element: None });
    }
}

struct Typesetter<'a> {
    p: &'a TypesetParams,
}

impl Typesetter<'_> {
    fn symbol(&self, text: &str, k: f64) -> LBox {
        let pad = if is_operator(text) { self.p.op_space * k } else { 0.0 };
        let mut x = pad;
        let mut paths = Vec::new();
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, 0.0f64, X_HEIGHT * k);
        for c in text.chars() {
            let g = glyph(c);
            for s in &g.strokes {
                let path: Path = s.iter().map(|&(gx, gy)| (x + gx * k, gy * k)).collect();
                for &(px, py) in &path {
                    x0 = x0.min(px);
                    x1 = x1.max(px);
                    y0 = y0.min(py);
                    y1 = y1.max(py);
                }
                paths.push(path);
            }
            x += g.advance * k;
        }
        let element = (!self.p.hidden.iter().any(|h| h == text)).then(|| (text.to_string(), [x0, y0, x1, y1]));
        LBox { width: x + pad, height: y1, depth: -y0, pieces: vec![Piece { paths, element }] }
    }

    fn sequence(&self, items: &[AnswerTree], k: f64) -> LBox {
        let mut out = LBox::default();
        for item in items {
            let b = self.layout(item, k);
            let w = b.width;
            let x = out.width;
            out.place(b, x, 0.0);
            out.width = x + w;
        }
        out
    }

    fn layout(&self, tree: &AnswerTree, k: f64) -> LBox {
        let p = self.p;
        match tree {
            AnswerTree::Symbol(t) => self.symbol(t, k),
            AnswerTree::Sequence(items) => self.sequence(items, k),
            AnswerTree::Exponent { base, power } => {
                let mut out = self.layout(base, k);
                let sup = self.layout(power, (k * p.sup_scale).max(0.5));
                let raise = (p.sup_raise * k).max(out.height - p.sup_drop * k);
                let x = out.width + 0.03 * k;
                let w = sup.width;
                out.place(sup, x, raise);
                out.width = x + w;
                out
            }
            AnswerTree::Fraction { num, den } => {
                let n = self.layout(num, k);
                let d = self.layout(den, k);
                let inner = n.width.max(d.width);
                let width = inner + 2.0 * p.frac_overhang * k + 2.0 * p.op_space * k;
                let bar_l = p.op_space * k;
                let mut out = LBox { width, ..LBox::default() };
                let (nw, nd) = (n.width, n.depth);
                let (dw, dh) = (d.width, d.height);
                out.place(n, (width - nw) / 2.0, (p.axis + p.frac_gap) * k + nd);
                out.place(d, (width - dw) / 2.0, (p.axis - p.frac_gap) * k - dh);
                out.graphic(vec![(bar_l, p.axis * k), (width - bar_l, p.axis * k)]);
                out
            }
            AnswerTree::Root(r) => {
                let body = self.layout(r, k);
                let top = body.height.max(X_HEIGHT * k) + p.root_clearance * k;
                let bottom = -body.depth - 0.04 * k;
                let h = top - bottom;
                let sign_w = 0.5 * k;
                let sign = vec![(0.0, bottom + 0.5 * h), (0.1 * k, bottom + 0.58 * h), (0.26 * k, bottom), (sign_w, top)];
                let body_x = sign_w + 0.06 * k;
                let end = body_x + body.width + 0.06 * k;
                let mut out = LBox { width: end + 0.04 * k, ..LBox::default() };
                out.pieces.push(Piece { paths: vec![sign], element: Some(("√".into(), [0.0, bottom, sign_w, top])) });
                out.graphic(vec![(sign_w, top), (end, top)]);
                out.height = top;
                out.depth = -bottom;
                out.place(body, body_x, 0.0);
                out
            }
            AnswerTree::Bracketed { body, shape } => {
                let inner = self.layout(body, k);
                let top = inner.height.max(0.68 * k) + 0.08 * k;
                let bottom = -inner.depth.max(0.2 * k) - 0.08 * k;
                let side = 0.36 * k;
                let mut out = LBox { height: top, depth: -bottom, ..LBox::default() };
                let iw = inner.width;
                out.place(inner, side, 0.0);
                out.width = 2.0 * side + iw;
                let right = out.width;
                for (open, x_edge) in [(true, 0.0), (false, right)] {
                    out.graphic(delimiter(*shape, open, x_edge, bottom, top, k));
                }
                out
            }
            AnswerTree::Matrix(rows) => {
                let cells: Vec<Vec<LBox>> = rows.iter().map(|r| r.iter().map(|c| self.layout(c, k)).collect()).collect();
                let cols = cells[0].len();
                let col_w: Vec<f64> = (0..cols).map(|c| cells.iter().map(|r| r[c].width).fold(0.0, f64::max)).collect();
                let row_h: Vec<f64> = cells.iter().map(|r| r.iter().map(|b| b.height).fold(X_HEIGHT * k, f64::max)).collect();
                let row_d: Vec<f64> = cells.iter().map(|r| r.iter().map(|b| b.depth).fold(0.0, f64::max)).collect();
                let total: f64 = row_h.iter().chain(&row_d).sum::<f64>() + p.matrix_row_gap * k * (rows.len() - 1) as f64;
                let block_top = p.axis * k + total / 2.0;
                let side = 0.36 * k;
                let mut out = LBox::default();
                let mut y = block_top;
                for (ri, row) in cells.into_iter().enumerate() {
                    let baseline = y - row_h[ri];
                    let mut x = side + 0.1 * k;
                    for (ci, cell) in row.into_iter().enumerate() {
                        let cw = cell.width;
                        out.place(cell, x + (col_w[ci] - cw) / 2.0, baseline);
                        x += col_w[ci] + p.matrix_col_gap * k;
                    }
                    y = baseline - row_d[ri] - p.matrix_row_gap * k;
                }
                let inner_w: f64 = col_w.iter().sum::<f64>() + p.matrix_col_gap * k * (cols - 1) as f64;
                out.width = 2.0 * side + inner_w + 0.2 * k;
                let (top, bottom) = (block_top + 0.1 * k, block_top - total - 0.1 * k);
                out.height = out.height.max(top);
                out.depth = out.depth.max(-bottom);
                let right = out.width;
                out.graphic(delimiter(Bracket::Square, true, 0.0, bottom, top, k));
                out.graphic(delimiter(Bracket::Square, false, right, bottom, top, k));
                out
            }
        }
    }
}

/// Outline of one delimiter; `x_edge` is the outer edge of its slot.
fn delimiter(shape: Bracket, open: bool, x_edge: f64, bottom: f64, top: f64, k: f64) -> Path {
    let dir = if open { 1.0 } else { -1.0 };
    match shape {
        Bracket::Round => {
            let ends = x_edge + dir * 0.28 * k;
            (0..=24)
                .map(|i| {
                    let s = i as f64 / 24.0;
                    (ends - dir * 0.17 * k * (PI * s).sin(), top - s * (top - bottom))
                })
                .collect()
        }
        Bracket::Square => {
            let stem = x_edge + dir * 0.12 * k;
            let serif = x_edge + dir * 0.28 * k;
            vec![(serif, top), (stem, top), (stem, bottom), (serif, bottom)]
        }
    }
}

/// A rendered equation before conversion to a bundle.
#[derive(Debug, Clone)]
pub struct Rendering {
    pub image: RasterImage,
    pub elements: Vec<TextElement>,
}

/// Typesets `tree` at `params.width_px` pixels wide.
pub fn render(tree: &AnswerTree, params: &TypesetParams) -> Rendering {
    let lbox = Typesetter { p: params }.layout(&tree.normalized(), 1.0);
    let m = params.margin_px as f64;
    let s = (params.width_px as f64 - 2.0 * m) / lbox.width;
    let height_px = ((lbox.height + lbox.depth) * s).ceil() as u32 + 2 * params.margin_px;
    let to_px = |(x, y): (f64, f64)| ((m + x * s).round() as i64, (m + (lbox.height - y) * s).round() as i64);

    let mut image = RasterImage::blank(params.width_px, height_px);
    let mut elements = Vec::new();
    for piece in &lbox.pieces {
        let mut ink: Option<(i64, i64, i64, i64)> = None;
        for path in &piece.paths {
            let pts: Vec<(i64, i64)> = path.iter().copied().map(to_px).collect();
            let mut pixels = vec![pts[0]];
            for w in pts.windows(2) {
                pixels.extend(line_pixels(w[0], w[1]));
            }
            for (x, y) in pixels {
                let x = x.clamp(0, params.width_px as i64 - 1);
                let y = y.clamp(0, height_px as i64 - 1);
                image.set(x as u32, y as u32, INK);
                ink = Some(match ink {
                    None => (x, y, x, y),
                    Some((a, b, c, d)) => (a.min(x), b.min(y), c.max(x), d.max(y)),
                });
            }
        }
        if let (Some((text, [x0, y0, x1, y1])), Some((il, it, ir, ib))) = (&piece.element, ink) {
            let left = ((m + x0 * s).floor() as i64).min(il).max(0);
            let right = ((m + x1 * s).ceil() as i64).max(ir + 1).min(params.width_px as i64);
            let top = ((m + (lbox.height - y1) * s).floor() as i64).min(it).max(0);
            let bottom = ((m + (lbox.height - y0) * s).ceil() as i64).max(ib + 1).min(height_px as i64);
            elements.push(TextElement {
                id: elements.len() as u32 + 1,
                text: text.clone(),
                bbox: BBox::new(left as u32, top as u32, (right - left) as u32, (bottom - top) as u32),
            });
        }
    }
    Rendering { image, elements }
}

pub fn render_bundle(tree: &AnswerTree, params: &TypesetParams) -> EquationBundle {
    let r = render(tree, params);
    EquationBundle::new(r.image, r.elements).expect("typeset boxes lie inside the canvas")
}

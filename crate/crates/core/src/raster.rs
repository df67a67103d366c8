//! 8-bit grayscale rasters and their inline encodings.

use std::io::Cursor;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use thiserror::Error;

use crate::geometry::BBox;

/// Pixel values at or below this level count as ink.
pub const INK_THRESHOLD: u8 = 128;

pub const WHITE: u8 = 255;

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("invalid base64 image data: {0}")]
    Base64(#[from] base64::DecodeError),
    #[error("invalid PNG data: {0}")]
    Png(#[from] png::DecodingError),
    #[error("PNG encoding failed: {0}")]
    PngEncode(#[from] png::EncodingError),
    #[error("only 8-bit grayscale images are supported (got {0})")]
    NotGrayscale(String),
    #[error("invalid PGM data: {0}")]
    Pgm(String),
    #[error("image is {actual_width}x{actual_height} but declared {width}x{height}")]
    DimensionMismatch { width: u32, height: u32, actual_width: u32, actual_height: u32 },
    #[error("image has zero area")]
    Empty,
    #[error("pixel buffer holds {actual} values, expected {expected}")]
    PixelCount { expected: usize, actual: usize },
}

/// Row-major grayscale pixels; 0 is black ink, 255 is white paper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl RasterImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::Empty);
        }
        let expected = width as usize * height as usize;
        if pixels.len() != expected {
            return Err(RasterError::PixelCount { expected, actual: pixels.len() });
        }
        Ok(RasterImage { width, height, pixels })
    }

    /// An all-white canvas.
    pub fn blank(width: u32, height: u32) -> Self {
        assert!(width > 0 && height > 0, "blank raster needs a nonzero size");
        RasterImage { width, height, pixels: vec![WHITE; width as usize * height as usize] }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn bounds(&self) -> BBox {
        BBox::new(0, 0, self.width, self.height)
    }

    /// Panics if `(x, y)` lies outside the image.
    pub fn get(&self, x: u32, y: u32) -> u8 {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) outside {}x{}", self.width, self.height);
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, value: u8) {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) outside {}x{}", self.width, self.height);
        self.pixels[y as usize * self.width as usize + x as usize] = value;
    }

    pub fn is_ink(&self, x: u32, y: u32) -> bool {
        self.get(x, y) <= INK_THRESHOLD
    }

    /// Counts ink pixels inside `rect`, which must lie within the image.
    pub fn ink_count(&self, rect: &BBox) -> u64 {
        (rect.top..rect.bottom())
            .map(|y| self.row_ink(y, rect.left, rect.right()) as u64)
            .sum()
    }

    /// Number of ink pixels in row `y` over columns `left..right`.
    pub fn row_ink(&self, y: u32, left: u32, right: u32) -> usize {
        let start = y as usize * self.width as usize;
        self.pixels[start + left as usize..start + right as usize]
            .iter()
            .filter(|&&p| p <= INK_THRESHOLD)
            .count()
    }

    pub fn row_has_ink(&self, y: u32, left: u32, right: u32) -> bool {
        self.row_ink(y, left, right) > 0
    }

    /// Decodes a base64 PNG. Palette and sub-byte depths are expanded; color
    /// and 16-bit images are rejected.
    pub fn from_png_base64(data: &str) -> Result<Self, RasterError> {
        let bytes = BASE64.decode(data.trim())?;
        Self::from_png(&bytes)
    }

    pub fn from_png(bytes: &[u8]) -> Result<Self, RasterError> {
        let mut decoder = png::Decoder::new(Cursor::new(bytes));
        decoder.set_transformations(png::Transformations::EXPAND);
        let mut reader = decoder.read_info()?;
        let mut buf = vec![0; reader.output_buffer_size()];
        let frame = reader.next_frame(&mut buf)?;
        let (color, depth) = (frame.color_type, frame.bit_depth);
        if depth != png::BitDepth::Eight {
            return Err(RasterError::NotGrayscale(format!("{depth:?} bit depth")));
        }
        let pixels: Vec<u8> = match color {
            png::ColorType::Grayscale => buf[..frame.buffer_size()].to_vec(),
            // Transparent areas composite onto white paper.
            png::ColorType::GrayscaleAlpha => buf[..frame.buffer_size()]
                .chunks_exact(2)
                .map(|ga| {
                    let (g, a) = (ga[0] as u32, ga[1] as u32);
                    ((g * a + 255 * (255 - a)) / 255) as u8
                })
                .collect(),
            other => return Err(RasterError::NotGrayscale(format!("{other:?}"))),
        };
        RasterImage::new(frame.width, frame.height, pixels)
    }

    pub fn to_png(&self) -> Result<Vec<u8>, RasterError> {
        let mut out = Vec::new();
        {
            let mut encoder = png::Encoder::new(&mut out, self.width, self.height);
            encoder.set_color(png::ColorType::Grayscale);
            encoder.set_depth(png::BitDepth::Eight);
            encoder.set_compression(png::Compression::Best);
            let mut writer = encoder.write_header()?;
            writer.write_image_data(&self.pixels)?;
        }
        Ok(out)
    }

    pub fn to_png_base64(&self) -> Result<String, RasterError> {
        Ok(BASE64.encode(self.to_png()?))
    }

    /// Parses a plain (`P2`) PGM document. Comments (`#` to end of line) are
    /// allowed; samples are rescaled to 0-255 when maxval differs.
    pub fn from_pgm(text: &str) -> Result<Self, RasterError> {
        let mut tokens = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace);
        let magic = tokens.next().ok_or_else(|| RasterError::Pgm("empty document".into()))?;
        if magic != "P2" {
            return Err(RasterError::Pgm(format!("expected magic P2, found {magic:?}")));
        }
        let mut header = |name: &str| -> Result<u32, RasterError> {
            let tok = tokens.next().ok_or_else(|| RasterError::Pgm(format!("missing {name}")))?;
            tok.parse::<u32>().map_err(|_| RasterError::Pgm(format!("bad {name} {tok:?}")))
        };
        let width = header("width")?;
        let height = header("height")?;
        let maxval = header("maxval")?;
        if maxval == 0 || maxval > 65535 {
            return Err(RasterError::Pgm(format!("maxval {maxval} out of range")));
        }
        let expected = width as usize * height as usize;
        if expected == 0 {
            return Err(RasterError::Empty);
        }
        let mut pixels = Vec::with_capacity(expected.min(1 << 24));
        for tok in tokens {
            let v: u32 = tok.parse().map_err(|_| RasterError::Pgm(format!("bad sample {tok:?}")))?;
            if v > maxval {
                return Err(RasterError::Pgm(format!("sample {v} exceeds maxval {maxval}")));
            }
            if pixels.len() == expected {
                return Err(RasterError::PixelCount { expected, actual: expected + 1 });
            }
            pixels.push(if maxval == 255 { v as u8 } else { ((v * 255 + maxval / 2) / maxval) as u8 });
        }
        RasterImage::new(width, height, pixels)
    }

    pub fn to_pgm(&self) -> String {
        let mut out = format!("P2\n{} {}\n255\n", self.width, self.height);
        for row in self.pixels.chunks(self.width as usize) {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RasterImage {
        let mut img = RasterImage::blank(5, 3);
        img.set(1, 1, 0);
        img.set(4, 2, 128);
        img.set(0, 0, 129);
        img
    }

    #[test]
    fn ink_threshold_is_inclusive() {
        let img = sample();
        assert!(img.is_ink(1, 1));
        assert!(img.is_ink(4, 2));
        assert!(!img.is_ink(0, 0));
        assert_eq!(img.ink_count(&img.bounds()), 2);
    }

    #[test]
    fn png_round_trip() {
        let img = sample();
        let back = RasterImage::from_png_base64(&img.to_png_base64().unwrap()).unwrap();
        assert_eq!(back, img);
    }

    #[test]
    fn pgm_round_trip_and_comments() {
        let img = sample();
        assert_eq!(RasterImage::from_pgm(&img.to_pgm()).unwrap(), img);
        let doc = "P2 # plain\n2 1\n# max\n15\n0 15\n";
        let parsed = RasterImage::from_pgm(doc).unwrap();
        assert_eq!(parsed.pixels(), &[0, 255]);
    }

    #[test]
    fn pgm_rejects_short_and_long_bodies() {
        assert!(matches!(RasterImage::from_pgm("P2 2 2 255 0 0 0"), Err(RasterError::PixelCount { .. })));
        assert!(matches!(RasterImage::from_pgm("P2 1 1 255 0 0"), Err(RasterError::PixelCount { .. })));
        assert!(matches!(RasterImage::from_pgm("P5 1 1 255 0"), Err(RasterError::Pgm(_))));
    }

    #[test]
    fn rgb_png_is_rejected() {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, 1, 1);
            enc.set_color(png::ColorType::Rgb);
            enc.set_depth(png::BitDepth::Eight);
            enc.write_header().unwrap().write_image_data(&[1, 2, 3]).unwrap();
        }
        assert!(matches!(RasterImage::from_png(&out), Err(RasterError::NotGrayscale(_))));
    }
}

//! Image-to-sound mapping: columns are scanned left to right as chords,
//! each ink pixel contributing a sinusoid whose pitch rises with height and
//! whose stereo position follows the column.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audio::AudioClip;
use crate::bundle::EquationBundle;
use crate::raster::{RasterImage, INK_THRESHOLD};
use crate::region::InkRegion;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SonifyParams {
    pub sample_rate: u32,
    pub f_min: f64,
    pub f_max: f64,
    /// Time spent on each column, in milliseconds.
    pub dwell_ms: f64,
    pub min_duration_ms: f64,
    pub max_duration_ms: f64,
    pub emphasis_gain: f64,
    pub emphasis_radius: u32,
    /// Raised-cosine crossfade applied wherever a tone's level changes.
    pub ramp_ms: f64,
    /// Overall scale applied before the hard-clip guard.
    pub master_gain: f64,
}

impl Default for SonifyParams {
    fn default() -> Self {
        SonifyParams {
            sample_rate: 44_100,
            f_min: 200.0,
            f_max: 4000.0,
            dwell_ms: 8.0,
            min_duration_ms: 300.0,
            max_duration_ms: 2000.0,
            emphasis_gain: 3.0,
            emphasis_radius: 8,
            ramp_ms: 5.0,
            master_gain: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SonifyError {
    #[error("invalid parameters: {0}")]
    Params(&'static str),
    #[error("region has zero area")]
    EmptyRegion,
    #[error("region {0:?} lies outside the image")]
    RegionOutOfBounds([u32; 4]),
    #[error("column {x} outside image of width {width}")]
    ColumnOutOfRange { x: u32, width: u32 },
    #[error("point ({0}, {1}) outside the image")]
    PointOutOfRange(u32, u32),
    #[error("segment endpoints coincide")]
    DegenerateSegment,
}

impl SonifyParams {
    /// Negated comparisons reject NaN along with out-of-range values.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), SonifyError> {
        if self.sample_rate == 0 {
            return Err(SonifyError::Params("sample rate must be positive"));
        }
        if !(self.f_min > 0.0 && self.f_min < self.f_max && self.f_max < self.sample_rate as f64 / 2.0) {
            return Err(SonifyError::Params("need 0 < f_min < f_max < sample_rate / 2"));
        }
        if !(self.dwell_ms > 0.0) {
            return Err(SonifyError::Params("dwell must be positive"));
        }
        if !(self.min_duration_ms > 0.0 && self.min_duration_ms <= self.max_duration_ms) {
            return Err(SonifyError::Params("need 0 < min duration <= max duration"));
        }
        if !(self.ramp_ms >= 0.0 && self.master_gain > 0.0 && self.emphasis_gain > 0.0) {
            return Err(SonifyError::Params("ramp, gain and emphasis must be non-negative"));
        }
        Ok(())
    }

    fn ms_to_frames(&self, ms: f64) -> usize {
        (ms * self.sample_rate as f64 / 1000.0).round() as usize
    }

    /// Pitch for a position `t` in `[0, 1]` measured from the top.
    fn pitch_at(&self, t: f64) -> f64 {
        self.f_min * (self.f_max / self.f_min).powf(1.0 - t)
    }
}

/// Frequency for `row` within a region `region_height` rows tall; the top
/// row maps to `f_max`, the bottom row to `f_min`.
pub fn pitch_of_row(row: u32, region_height: u32, params: &SonifyParams) -> f64 {
    if region_height <= 1 {
        return (params.f_min * params.f_max).sqrt();
    }
    params.pitch_at(row as f64 / (region_height - 1) as f64)
}

/// Left and right gains for a pan position in `[0, 1]`.
pub fn pan_gains(p: f64) -> (f64, f64) {
    ((FRAC_PI_2 * p).cos(), (FRAC_PI_2 * p).sin())
}

fn pixel_amplitude(value: u8) -> f64 {
    (255 - value) as f64 / 255.0
}

/// One sounding tone within a chord. `voice` identifies the oscillator so
/// that a tone held across columns keeps its phase.
#[derive(Debug, Clone, Copy)]
struct Partial {
    voice: usize,
    freq: f64,
    amp: f64,
}

#[derive(Debug, Clone, Default)]
struct Chord {
    partials: Vec<Partial>,
    pan: f64,
}

impl Chord {
    /// Scales partial amplitudes by `1 / max(1, sqrt(K))`.
    fn normalized(mut self) -> Self {
        let k = self.partials.len() as f64;
        let norm = 1.0 / k.sqrt().max(1.0);
        for p in &mut self.partials {
            p.amp *= norm;
        }
        self
    }
}

/// Renders a sequence of equal-length chords into `total_frames` frames.
///
/// Each voice runs a continuous-phase oscillator; its per-channel level
/// changes only through raised-cosine crossfades at chord boundaries, and the
/// clip fades in and out at its ends.
fn render(chords: &[Chord], total_frames: usize, params: &SonifyParams) -> AudioClip {
    let mut out = vec![0.0f64; total_frames * 2];
    let columns = chords.len();
    if columns == 0 || total_frames == 0 {
        return AudioClip::silent(params.sample_rate, total_frames);
    }
    let bounds: Vec<usize> = (0..=columns).map(|c| c * total_frames / columns).collect();
    let ramp = params.ms_to_frames(params.ramp_ms);

    let voices = chords.iter().flat_map(|c| c.partials.iter().map(|p| p.voice)).max().map_or(0, |v| v + 1);
    // Per-voice (left, right) level and frequency for each column.
    let mut levels = vec![vec![(0.0f64, 0.0f64); columns]; voices];
    let mut freqs = vec![0.0f64; voices];
    for (c, chord) in chords.iter().enumerate() {
        let (gl, gr) = pan_gains(chord.pan);
        for p in &chord.partials {
            let a = p.amp * params.master_gain;
            levels[p.voice][c].0 += a * gl;
            levels[p.voice][c].1 += a * gr;
            freqs[p.voice] = p.freq;
        }
    }

    let step = |k: usize, len: usize| -> f64 {
        // Raised-cosine rise from 0 to 1 over `len` frames.
        if k >= len {
            1.0
        } else {
            0.5 - 0.5 * (PI * (k as f64 + 0.5) / len as f64).cos()
        }
    };

    let sr = params.sample_rate as f64;
    for (voice, cols) in levels.iter().enumerate() {
        let omega = TAU * freqs[voice] / sr;
        for c in 0..columns {
            let (start, end) = (bounds[c], bounds[c + 1]);
            let cur = cols[c];
            let prev = if c == 0 { (0.0, 0.0) } else { cols[c - 1] };
            if cur == (0.0, 0.0) && prev == (0.0, 0.0) {
                continue;
            }
            let len = end - start;
            let fade_in = ramp.min(len);
            let last = c + 1 == columns;
            let fade_out = if last { ramp.min(len) } else { 0 };
            for n in start..end {
                let k = n - start;
                let w = step(k, fade_in);
                let mut l = prev.0 + (cur.0 - prev.0) * w;
                let mut r = prev.1 + (cur.1 - prev.1) * w;
                if fade_out > 0 {
                    let tail = step(end - 1 - n, fade_out);
                    l *= tail;
                    r *= tail;
                }
                let s = (omega * n as f64).sin();
                out[2 * n] += l * s;
                out[2 * n + 1] += r * s;
            }
        }
    }
    AudioClip::new(params.sample_rate, out.into_iter().map(|s| s as f32).collect())
}

fn column_chord(image: &RasterImage, x: u32, top: u32, height: u32, params: &SonifyParams) -> Chord {
    let partials = (0..height)
        .filter_map(|r| {
            let v = image.get(x, top + r);
            (v <= INK_THRESHOLD).then(|| Partial {
                voice: r as usize,
                freq: pitch_of_row(r, height, params),
                amp: pixel_amplitude(v),
            })
        })
        .collect();
    Chord { partials, pan: 0.5 }
}

/// Scans `region` left to right, one chord per column.
///
/// The clip lasts `width * dwell` clamped to the duration bounds. Pan runs
/// across the region, from `0.5 / width` at the first column to
/// `1 - 0.5 / width` at the last.
pub fn sonify_region(
    bundle: &EquationBundle,
    region: &InkRegion,
    params: &SonifyParams,
) -> Result<AudioClip, SonifyError> {
    params.validate()?;
    let b = region.bbox;
    if b.is_empty() {
        return Err(SonifyError::EmptyRegion);
    }
    let image = bundle.image();
    if !b.fits_within(image.width(), image.height()) {
        return Err(SonifyError::RegionOutOfBounds(b.into()));
    }
    let duration = (b.width as f64 * params.dwell_ms).clamp(params.min_duration_ms, params.max_duration_ms);
    let frames = params.ms_to_frames(duration);
    let chords: Vec<Chord> = (0..b.width)
        .map(|c| {
            let mut chord = column_chord(image, b.left + c, b.top, b.height, params).normalized();
            chord.pan = (c as f64 + 0.5) / b.width as f64;
            chord
        })
        .collect();
    Ok(render(&chords, frames, params))
}

/// A single chord from the whole image column at `x`. Pixels within the
/// emphasis radius of `emphasis_row` are boosted before normalization.
pub fn sonify_column(
    bundle: &EquationBundle,
    x: u32,
    emphasis_row: Option<u32>,
    params: &SonifyParams,
) -> Result<AudioClip, SonifyError> {
    params.validate()?;
    let image = bundle.image();
    if x >= image.width() {
        return Err(SonifyError::ColumnOutOfRange { x, width: image.width() });
    }
    let mut chord = column_chord(image, x, 0, image.height(), params);
    if let Some(centre) = emphasis_row {
        for p in &mut chord.partials {
            if (p.voice as u32).abs_diff(centre) <= params.emphasis_radius {
                p.amp *= params.emphasis_gain;
            }
        }
    }
    let mut chord = chord.normalized();
    chord.pan = (x as f64 + 0.5) / image.width() as f64;
    Ok(render(&[chord], params.ms_to_frames(params.min_duration_ms), params))
}

/// A single chord from pixels sampled along the segment `p1 -> p2`.
///
/// `ceil(length)` evenly spaced samples are taken; an ink sample at
/// parameter `t` sounds at `f_min * (f_max / f_min)^(1 - t)`, so the `p1`
/// end is the high end of the chord.
pub fn sonify_segment(
    bundle: &EquationBundle,
    p1: (u32, u32),
    p2: (u32, u32),
    params: &SonifyParams,
) -> Result<AudioClip, SonifyError> {
    params.validate()?;
    let image = bundle.image();
    for p in [p1, p2] {
        if p.0 >= image.width() || p.1 >= image.height() {
            return Err(SonifyError::PointOutOfRange(p.0, p.1));
        }
    }
    if p1 == p2 {
        return Err(SonifyError::DegenerateSegment);
    }
    let (x1, y1) = (p1.0 as f64, p1.1 as f64);
    let (dx, dy) = (p2.0 as f64 - x1, p2.1 as f64 - y1);
    let samples = (dx.hypot(dy).ceil() as usize).max(2);
    let partials = (0..samples)
        .filter_map(|i| {
            let t = i as f64 / (samples - 1) as f64;
            let x = (x1 + t * dx).round() as u32;
            let y = (y1 + t * dy).round() as u32;
            let v = image.get(x, y);
            (v <= INK_THRESHOLD).then(|| Partial { voice: i, freq: params.pitch_at(t), amp: pixel_amplitude(v) })
        })
        .collect();
    let mid_x = (p1.0 as f64 + p2.0 as f64) / 2.0;
    let mut chord = Chord { partials, pan: 0.5 }.normalized();
    chord.pan = (mid_x + 0.5) / image.width() as f64;
    Ok(render(&[chord], params.ms_to_frames(params.min_duration_ms), params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::TextElement;
    use crate::geometry::BBox;

    fn bundle_with(image: RasterImage) -> EquationBundle {
        let el = TextElement { id: 1, text: "x".into(), bbox: BBox::new(0, 0, 1, 1) };
        EquationBundle::new(image, vec![el]).unwrap()
    }

    #[test]
    fn pitch_endpoints_and_midpoint() {
        let p = SonifyParams::default();
        assert!((pitch_of_row(62, 63, &p) - 200.0).abs() < 1e-9);
        assert!((pitch_of_row(0, 63, &p) - 4000.0).abs() < 1e-9);
        // sqrt(200 * 4000) = 894.427...
        assert!((pitch_of_row(31, 63, &p) - 894.427_191).abs() < 1e-3);
        assert!((pitch_of_row(0, 1, &p) - 894.427_191).abs() < 1e-3);
    }

    #[test]
    fn params_validation() {
        let ok = SonifyParams::default();
        assert!(ok.validate().is_ok());
        assert!(SonifyParams { f_max: 30_000.0, ..ok }.validate().is_err());
        assert!(SonifyParams { f_min: 0.0, ..ok }.validate().is_err());
        assert!(SonifyParams { dwell_ms: 0.0, ..ok }.validate().is_err());
        assert!(SonifyParams { min_duration_ms: 3000.0, ..ok }.validate().is_err());
    }

    #[test]
    fn blank_region_is_silent_with_clamped_duration() {
        let b = bundle_with(RasterImage::blank(100, 20));
        let region = InkRegion::measure(b.image(), BBox::new(0, 0, 10, 20), None);
        let clip = sonify_region(&b, &region, &SonifyParams::default()).unwrap();
        assert!(clip.is_silent());
        assert!((clip.duration_secs() - 0.3).abs() < 1e-4);

        let wide = InkRegion::measure(b.image(), BBox::new(0, 0, 100, 20), None);
        let clip = sonify_region(&b, &wide, &SonifyParams::default()).unwrap();
        assert!((clip.duration_secs() - 0.8).abs() < 1e-4);
    }

    #[test]
    fn long_regions_cap_at_max_duration() {
        let b = bundle_with(RasterImage::blank(400, 4));
        let region = InkRegion::measure(b.image(), BBox::new(0, 0, 400, 4), None);
        let clip = sonify_region(&b, &region, &SonifyParams::default()).unwrap();
        assert!((clip.duration_secs() - 2.0).abs() < 1e-4);
    }

    #[test]
    fn error_paths() {
        let b = bundle_with(RasterImage::blank(10, 10));
        let p = SonifyParams::default();
        let empty = InkRegion { bbox: BBox::new(0, 0, 0, 4), origin: None, ink_pixels: 0 };
        assert_eq!(sonify_region(&b, &empty, &p), Err(SonifyError::EmptyRegion));
        let outside = InkRegion { bbox: BBox::new(5, 5, 6, 2), origin: None, ink_pixels: 0 };
        assert!(matches!(sonify_region(&b, &outside, &p), Err(SonifyError::RegionOutOfBounds(_))));
        assert!(matches!(sonify_column(&b, 10, None, &p), Err(SonifyError::ColumnOutOfRange { .. })));
        assert_eq!(sonify_segment(&b, (3, 3), (3, 3), &p), Err(SonifyError::DegenerateSegment));
        assert!(matches!(sonify_segment(&b, (3, 3), (3, 10), &p), Err(SonifyError::PointOutOfRange(3, 10))));
    }

    #[test]
    fn dense_column_stays_in_range() {
        let mut img = RasterImage::blank(3, 200);
        for y in 0..200 {
            img.set(1, y, 0);
        }
        let b = bundle_with(img);
        let clip = sonify_column(&b, 1, Some(100), &SonifyParams::default()).unwrap();
        assert!(clip.peak() <= 1.0);
        assert!(!clip.is_silent());
    }
}

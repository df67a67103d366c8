//! Stereo sample buffers and their WAV / PCM encodings.

use std::io::{Cursor, Seek, Write};
use std::path::Path;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;

pub const CHANNELS: u16 = 2;

/// Interleaved stereo samples in `[-1.0, 1.0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioClip {
    sample_rate: u32,
    samples: Vec<f32>,
}

impl AudioClip {
    /// Builds a clip, hard-clipping every sample into range.
    ///
    /// Panics if `samples` is not a whole number of stereo frames.
    pub fn new(sample_rate: u32, mut samples: Vec<f32>) -> Self {
        assert!(samples.len().is_multiple_of(2), "interleaved stereo needs an even sample count");
        for s in &mut samples {
            *s = if s.is_nan() { 0.0 } else { s.clamp(-1.0, 1.0) };
        }
        AudioClip { sample_rate, samples }
    }

    pub fn silent(sample_rate: u32, frames: usize) -> Self {
        AudioClip { sample_rate, samples: vec![0.0; frames * 2] }
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn samples(&self) -> &[f32] {
        &self.samples
    }

    pub fn frames(&self) -> usize {
        self.samples.len() / 2
    }

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / (2.0 * self.sample_rate as f64)
    }

    pub fn left(&self) -> impl Iterator<Item = f32> + '_ {
        self.samples.iter().step_by(2).copied()
    }

    pub fn right(&self) -> impl Iterator<Item = f32> + '_ {
        self.samples.iter().skip(1).step_by(2).copied()
    }

    pub fn is_silent(&self) -> bool {
        self.samples.iter().all(|&s| s == 0.0)
    }

    pub fn peak(&self) -> f32 {
        self.samples.iter().fold(0.0f32, |m, s| m.max(s.abs()))
    }

    /// Channel RMS as `(left, right)`.
    pub fn channel_rms(&self) -> (f64, f64) {
        let rms = |it: &mut dyn Iterator<Item = f32>| {
            let (sum, n) = it.fold((0.0f64, 0usize), |(s, n), x| (s + (x as f64).powi(2), n + 1));
            if n == 0 {
                0.0
            } else {
                (sum / n as f64).sqrt()
            }
        };
        (rms(&mut self.left()), rms(&mut self.right()))
    }

    /// Interleaved 16-bit PCM.
    pub fn to_pcm16(&self) -> Vec<i16> {
        self.samples.iter().map(|&s| (s * i16::MAX as f32).round() as i16).collect()
    }

    /// Little-endian 16-bit PCM, base64 encoded.
    pub fn to_pcm16_base64(&self) -> String {
        let bytes: Vec<u8> = self.to_pcm16().iter().flat_map(|s| s.to_le_bytes()).collect();
        BASE64.encode(bytes)
    }

    pub fn write_wav_to<W: Write + Seek>(&self, writer: W) -> Result<(), hound::Error> {
        let spec = hound::WavSpec {
            channels: CHANNELS,
            sample_rate: self.sample_rate,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut w = hound::WavWriter::new(writer, spec)?;
        for s in self.to_pcm16() {
            w.write_sample(s)?;
        }
        w.finalize()
    }

    pub fn to_wav_bytes(&self) -> Vec<u8> {
        let mut cursor = Cursor::new(Vec::new());
        self.write_wav_to(&mut cursor).expect("writing WAV to memory cannot fail");
        cursor.into_inner()
    }

    pub fn write_wav(&self, path: impl AsRef<Path>) -> Result<(), hound::Error> {
        let spec_writer = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_wav_to(spec_writer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_clips_and_scrubs_nan() {
        let clip = AudioClip::new(8000, vec![1.5, -2.0, f32::NAN, 0.25]);
        assert_eq!(clip.samples(), &[1.0, -1.0, 0.0, 0.25]);
        assert_eq!(clip.frames(), 2);
        assert!((clip.duration_secs() - 2.0 / 8000.0).abs() < 1e-12);
    }

    #[test]
    fn wav_header_matches_contract() {
        let clip = AudioClip::new(44100, vec![0.5, -0.5, 0.0, 1.0]);
        let bytes = clip.to_wav_bytes();
        assert_eq!(&bytes[0..4], b"RIFF");
        assert_eq!(&bytes[8..12], b"WAVE");
        let reader = hound::WavReader::new(Cursor::new(bytes)).unwrap();
        let spec = reader.spec();
        assert_eq!((spec.channels, spec.sample_rate, spec.bits_per_sample), (2, 44100, 16));
        let samples: Vec<i16> = reader.into_samples::<i16>().map(Result::unwrap).collect();
        assert_eq!(samples, vec![16384, -16384, 0, 32767]);
    }

    #[test]
    fn pcm_base64_is_little_endian() {
        let clip = AudioClip::new(44100, vec![1.0, -1.0]);
        let bytes = BASE64.decode(clip.to_pcm16_base64()).unwrap();
        assert_eq!(bytes, vec![0xff, 0x7f, 0x01, 0x80]);
    }
}

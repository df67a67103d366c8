//! Messages exchanged with a UI, one JSON object per line or WebSocket
//! text frame. Both directions are tagged by `kind`.

use eqnav_core::navigator::Mode;
use eqnav_core::shell::OutputBlock;
use eqnav_core::{AudioClip, ElementId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointerPhase {
    Start,
    Move,
    End,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Request {
    /// A line of text-mode input.
    Command { text: String },
    /// A key name: `ArrowLeft`, `ArrowUp`, `ArrowRight`, `ArrowDown`,
    /// `m` to toggle modes, space to play the focus.
    Key { key: String },
    /// One point sonifies the column under it; two points the segment
    /// between them. Coordinates are image pixels.
    Pointer { phase: PointerPhase, points: Vec<[u32; 2]> },
    Mode { mode: Mode },
    ActivateLink { link: usize },
}

pub const PCM_ENCODING: &str = "pcm-s16le-base64";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Response {
    TextBlock { block: OutputBlock },
    Status { text: String },
    /// Interleaved stereo PCM.
    Audio { sample_rate: u32, channels: u16, frames: usize, encoding: String, data: String },
    FocusChanged { element: ElementId, text: String, bbox: [u32; 4] },
}

impl Response {
    pub fn status(text: impl Into<String>) -> Self {
        Response::Status { text: text.into() }
    }

    pub fn audio(clip: &AudioClip) -> Self {
        Response::Audio {
            sample_rate: clip.sample_rate(),
            channels: eqnav_core::audio::CHANNELS,
            frames: clip.frames(),
            encoding: PCM_ENCODING.to_string(),
            data: clip.to_pcm16_base64(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("responses always serialize")
    }

    /// How the response reads on a terminal; empty for responses that only
    /// matter to graphical clients.
    pub fn render_human(&self) -> String {
        match self {
            Response::TextBlock { block } => {
                let mut s = block.render_cli();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Response::Status { text } => format!("{text}\n"),
            Response::Audio { sample_rate, frames, .. } => {
                format!("(audio, {:.2} s)\n", *frames as f64 / *sample_rate as f64)
            }
            Response::FocusChanged { .. } => String::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_wire_format() {
        let r: Request = serde_json::from_str(r#"{"kind":"activate-link","link":3}"#).unwrap();
        assert_eq!(r, Request::ActivateLink { link: 3 });
        let r: Request =
            serde_json::from_str(r#"{"kind":"pointer","phase":"move","points":[[1,2],[3,4]]}"#).unwrap();
        assert_eq!(r, Request::Pointer { phase: PointerPhase::Move, points: vec![[1, 2], [3, 4]] });
        let r: Request = serde_json::from_str(r#"{"kind":"mode","mode":"graphical"}"#).unwrap();
        assert_eq!(r, Request::Mode { mode: Mode::Graphical });
        assert!(serde_json::from_str::<Request>(r#"{"kind":"command","text":"x","extra":1}"#).is_err());
    }

    #[test]
    fn response_wire_format() {
        let clip = AudioClip::new(44100, vec![1.0, -1.0]);
        let json = Response::audio(&clip).to_json();
        assert_eq!(
            json,
            r#"{"kind":"audio","sample_rate":44100,"channels":2,"frames":1,"encoding":"pcm-s16le-base64","data":"/38BgA=="}"#
        );
        let json = Response::status("raised, 2").to_json();
        assert_eq!(json, r#"{"kind":"status","text":"raised, 2"}"#);
    }
}

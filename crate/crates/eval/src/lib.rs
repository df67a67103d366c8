//! Evaluation support: scoring of structured transcriptions, the fixture
//! corpus, and synthetic images for sonifier tests.

pub mod fixtures;
pub mod score;
pub mod synth;
pub mod transcript;
pub mod tree;
pub mod typeset;

pub use score::{completely_correct, correctness_score, ScoreReport};
pub use synth::{synth_image, Stroke};
pub use transcript::{parse_transcript, TranscriptError};
pub use tree::{AnswerTree, Bracket};

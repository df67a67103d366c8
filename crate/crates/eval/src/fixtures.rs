//! The fixture corpus: the twelve evaluation equations plus two worked
//! examples, each stored as a bundle (`<name>.json`) and a reference
//! transcript (`<name>.tex`) under `fixtures/`.

use std::path::PathBuf;

use eqnav_core::{load_bundle, BundleError, EquationBundle};
use thiserror::Error;

use crate::transcript::{parse_transcript, TranscriptError};
use crate::tree::AnswerTree;
use crate::typeset::{render_bundle, TypesetParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    /// Evaluation stage (1 or 2); `None` for the worked examples.
    pub stage: Option<u8>,
    pub transcript: &'static str,
    /// Symbols drawn but not extracted as elements.
    pub hidden: &'static [&'static str],
}

const fn fx(name: &'static str, stage: u8, transcript: &'static str) -> Fixture {
    Fixture { name, stage: Some(stage), transcript, hidden: &[] }
}

/// The twelve evaluation equations, stage 1 then stage 2.
pub const EVALUATION: [Fixture; 12] = [
    fx("stage1-1", 1, "y=\\frac{x}{2}+x^{2}"),
    fx("stage1-2", 1, "y=\\sqrt{x}+x^{2}"),
    fx("stage1-3", 1, "y=\\frac{2}{\\sqrt{x}}"),
    fx("stage1-4", 1, "y=\\frac{\\sqrt{x}+x^{4}}{x-2}"),
    fx("stage1-5", 1, "y=(\\frac{x}{2}+2)^{2}"),
    fx("stage1-6", 1, "[2,4;2,4]\\times[1;2]"),
    fx("stage2-1", 2, "y=x^{2}+\\frac{2}{x}"),
    fx("stage2-2", 2, "y=x^{3}+\\sqrt{x}"),
    fx("stage2-3", 2, "y=\\frac{\\sqrt{x}}{2}"),
    fx("stage2-4", 2, "y=(\\frac{x\\sqrt{x}}{x+2})^{5}"),
    fx("stage2-5", 2, "y=(1+\\frac{2}{x})^{5}"),
    fx("stage2-6", 2, "[1,2,3;2,3,4]\\times[1,2;2,3;3,4]"),
];

/// The graph-construction example. Its `+` is ink only, so the six
/// elements are y, =, x, 2, 4, 3.
pub const DOM_EXAMPLE: Fixture =
    Fixture { name: "dom-example", stage: None, transcript: "y=\\frac{x^{2}+4}{3}", hidden: &["+"] };

/// The example where x sits under two rules and 2 under one.
pub const TWO_LINES: Fixture =
    Fixture { name: "two-lines", stage: None, transcript: "y=\\frac{3}{\\sqrt{x}+2}", hidden: &[] };

pub fn all() -> impl Iterator<Item = Fixture> {
    EVALUATION.into_iter().chain([DOM_EXAMPLE, TWO_LINES])
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().find(|f| f.name == name)
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("reference transcript of {name}: {source}")]
    Transcript { name: &'static str, source: TranscriptError },
}

/// Directory holding the checked-in corpus.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

impl Fixture {
    pub fn bundle_path(&self) -> PathBuf {
        fixtures_dir().join(format!("{}.json", self.name))
    }

    pub fn transcript_path(&self) -> PathBuf {
        fixtures_dir().join(format!("{}.tex", self.name))
    }

    pub fn typeset_params(&self) -> TypesetParams {
        TypesetParams { hidden: self.hidden.iter().map(|s| s.to_string()).collect(), ..TypesetParams::default() }
    }

    pub fn reference(&self) -> AnswerTree {
        parse_transcript(self.transcript).expect("built-in transcripts parse")
    }

    /// Renders the bundle from the transcript.
    pub fn generate(&self) -> EquationBundle {
        render_bundle(&self.reference(), &self.typeset_params())
    }

    pub fn load_bundle(&self) -> Result<EquationBundle, FixtureError> {
        Ok(load_bundle(self.bundle_path())?)
    }

    /// The reference transcript as stored on disk.
    pub fn load_reference(&self) -> Result<AnswerTree, FixtureError> {
        let path = self.transcript_path();
        let text = std::fs::read_to_string(&path).map_err(|source| FixtureError::Io { path, source })?;
        parse_transcript(text.trim()).map_err(|source| FixtureError::Transcript { name: self.name, source })
    }
}

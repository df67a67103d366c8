//! Non-visual exploration of typeset equations.
//!
//! An [`EquationBundle`](bundle::EquationBundle) pairs a rendered raster with
//! the text elements extracted from it. Text elements become nodes of a
//! spatial graph ([`dom`]) that the reader moves through; everything else on
//! the page (fraction lines, radical bars, brackets) is only ever heard,
//! through an image-to-sound scan of selected raster regions ([`sonify`]).

pub mod audio;
pub mod bundle;
pub mod dom;
pub mod geometry;
pub mod navigator;
pub mod raster;
pub mod region;
pub mod shell;
pub mod sonify;

pub use audio::AudioClip;
pub use bundle::{load_bundle, BundleError, ElementId, EquationBundle, TextElement};
pub use dom::{build_dom, Direction12, Dom, Primary, Secondary};
pub use geometry::BBox;
pub use raster::RasterImage;
pub use region::InkRegion;
pub use sonify::SonifyParams;

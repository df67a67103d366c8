//! Regenerates the fixture corpus from the built-in transcripts.
//!
//! Usage: gen-fixtures [output-dir]

use std::path::PathBuf;
use std::process::ExitCode;

use eqnav_core::bundle::ImageEncoding;
use eqnav_eval::fixtures::{self, fixtures_dir};

fn main() -> ExitCode {
    let dir = std::env::args_os().nth(1).map(PathBuf::from).unwrap_or_else(fixtures_dir);
    if let Err(e) = std::fs::create_dir_all(&dir) {
        eprintln!("gen-fixtures: {}: {e}", dir.display());
        return ExitCode::FAILURE;
    }
    for f in fixtures::all() {
        let bundle = f.generate();
        let json = bundle.to_json(ImageEncoding::PngBase64).expect("PNG encoding of a valid raster");
        let written = std::fs::write(dir.join(format!("{}.json", f.name)), json + "\n")
            .and_then(|_| std::fs::write(dir.join(format!("{}.tex", f.name)), format!("{}\n", f.transcript)));
        if let Err(e) = written {
            eprintln!("gen-fixtures: {}: {e}", f.name);
            return ExitCode::FAILURE;
        }
        println!("{:<12} {:>2} elements  {}x{}", f.name, bundle.elements().len(), bundle.image().width(), bundle.image().height());
    }
    ExitCode::SUCCESS
}

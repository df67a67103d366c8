#![no_main]

use eqnav_core::RasterImage;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(img) = RasterImage::from_pgm(text) {
        assert_eq!(img.pixels().len(), img.width() as usize * img.height() as usize);
        assert_eq!(RasterImage::from_pgm(&img.to_pgm()).unwrap(), img);
    }
});

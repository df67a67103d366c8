#![no_main]

use eqnav_core::RasterImage;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(img) = RasterImage::from_png(data) {
        assert_eq!(RasterImage::from_png(&img.to_png().unwrap()).unwrap(), img);
    }
});

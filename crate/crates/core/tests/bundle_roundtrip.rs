use eqnav_core::bundle::{normalized_point, ImageEncoding, TextElement};
use eqnav_core::{load_bundle, EquationBundle, RasterImage};
use proptest::prelude::*;

fn sample() -> EquationBundle {
    let mut img = RasterImage::blank(30, 20);
    for x in 2..28 {
        img.set(x, 10, 0);
    }
    img.set(3, 3, 90);
    EquationBundle::new(
        img,
        vec![
            TextElement { id: 4, text: "x".into(), bbox: [2, 2, 6, 6].into() },
            TextElement { id: 9, text: "√".into(), bbox: [12, 12, 5, 7].into() },
        ],
    )
    .unwrap()
}

#[test]
fn json_round_trips_in_both_encodings() {
    let b = sample();
    for enc in [ImageEncoding::PngBase64, ImageEncoding::PgmInline] {
        let json = b.to_json(enc).unwrap();
        assert_eq!(EquationBundle::from_json(&json).unwrap(), b);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.json");
        std::fs::write(&path, json).unwrap();
        assert_eq!(load_bundle(&path).unwrap(), b);
    }
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_bundle("/nonexistent/eq.json").unwrap_err();
    assert!(err.to_string().contains("/nonexistent/eq.json"));
}

proptest! {
    #[test]
    fn normalized_position_is_monotone(w in 1u32..2000, h in 1u32..2000, a in 0.0f64..2000.0, d in 0.0f64..50.0) {
        let (x1, y1) = normalized_point(a, a, w, h);
        let (x2, y2) = normalized_point(a + d, a + d, w, h);
        prop_assert!(x1 <= x2 && y1 <= y2);
        prop_assert!(x2 <= 100 && y2 <= 100);
    }
}

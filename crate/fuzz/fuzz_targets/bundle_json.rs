#![no_main]

use eqnav_core::bundle::ImageEncoding;
use eqnav_core::{build_dom, EquationBundle};
use libfuzzer_sys::fuzz_target;

// Any bundle that validates must build a graph and survive a round trip.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(bundle) = EquationBundle::from_json(text) else { return };
    let dom = build_dom(&bundle);
    assert!(dom.contains(dom.initial_focus()));
    let again = EquationBundle::from_json(&bundle.to_json(ImageEncoding::PgmInline).unwrap()).unwrap();
    assert_eq!(again, bundle);
});

#![no_main]

use std::sync::{Arc, OnceLock};

use eqnav_core::{build_dom, Dom, EquationBundle, SonifyParams};
use eqnav_service::ServiceSession;
use libfuzzer_sys::fuzz_target;

fn parts() -> &'static (Arc<EquationBundle>, Arc<Dom>) {
    static PARTS: OnceLock<(Arc<EquationBundle>, Arc<Dom>)> = OnceLock::new();
    PARTS.get_or_init(|| {
        let bundle = EquationBundle::from_json(include_str!("../../crates/eval/fixtures/dom-example.json")).unwrap();
        let dom = build_dom(&bundle);
        (Arc::new(bundle), Arc::new(dom))
    })
}

// Each input line is one request to a fresh session; the focus must stay valid.
fuzz_target!(|input: &str| {
    let (bundle, dom) = parts();
    let (mut session, _) = ServiceSession::with_parts(bundle.clone(), dom.clone(), SonifyParams::default());
    for line in input.lines().take(64) {
        session.handle_json(line);
        assert!(dom.contains(session.session().focus()));
    }
});

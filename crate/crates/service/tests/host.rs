//! Request handling without a transport.

use std::path::PathBuf;

use eqnav_core::navigator::Mode;
use eqnav_service::{PointerPhase, Request, Response, ServiceSession};

fn open(name: &str) -> (ServiceSession, Vec<Response>) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../eval/fixtures").join(format!("{name}.json"));
    ServiceSession::open(path).unwrap()
}

fn kinds(out: &[Response]) -> Vec<&'static str> {
    out.iter()
        .map(|r| match r {
            Response::TextBlock { .. } => "text-block",
            Response::Status { .. } => "status",
            Response::Audio { .. } => "audio",
            Response::FocusChanged { .. } => "focus-changed",
        })
        .collect()
}

fn status(out: &[Response]) -> &str {
    out.iter()
        .find_map(|r| match r {
            Response::Status { text } => Some(text.as_str()),
            _ => None,
        })
        .expect("a status")
}

#[test]
fn opening_describes_the_initial_focus() {
    let (s, out) = open("dom-example");
    assert_eq!(kinds(&out), ["text-block", "focus-changed"]);
    assert_eq!(s.session().focus(), 4);
    match &out[1] {
        Response::FocusChanged { element, text, bbox } => {
            assert_eq!((*element, text.as_str()), (4, "2"));
            assert_eq!(*bbox, [164, 6, 18, 35]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn arrow_keys_need_graphical_mode() {
    let (mut s, _) = open("dom-example");
    let out = s.handle(Request::Key { key: "ArrowRight".into() });
    assert_eq!(kinds(&out), ["status"]);
    assert!(status(&out).contains("graphical mode"));
    assert_eq!(s.session().focus(), 4);
}

#[test]
fn graphical_move_reports_then_plays_transit_and_target() {
    let (mut s, _) = open("dom-example");
    s.handle(Request::Command { text: "move #1".into() });
    s.handle(Request::Key { key: "m".into() });
    assert_eq!(s.session().mode(), Mode::Graphical);
    // The gap between y and = is blank, so only = plays.
    let out = s.handle(Request::Key { key: "ArrowRight".into() });
    assert_eq!(kinds(&out), ["focus-changed", "status", "audio"]);
    assert_eq!(status(&out), "=");
    // The gap between = and x crosses the fraction bar and plays first.
    let out = s.handle(Request::Key { key: "ArrowRight".into() });
    assert_eq!(kinds(&out), ["focus-changed", "status", "audio", "audio"]);
    assert_eq!(status(&out), "raised, x");
    // The exponent touches x, so there is no gap to play.
    let out = s.handle(Request::Key { key: "ArrowRight".into() });
    assert_eq!(kinds(&out), ["focus-changed", "status", "audio"]);
    assert_eq!(status(&out), "raised, 2");
    let out = s.handle(Request::Key { key: "m".into() });
    assert_eq!(status(&out), "Text mode.");
}

#[test]
fn failed_move_is_a_status_without_audio() {
    let (mut s, _) = open("dom-example");
    s.handle(Request::Mode { mode: Mode::Graphical });
    let out = s.handle(Request::Key { key: "ArrowUp".into() });
    assert_eq!(kinds(&out), ["status"]);
    assert_eq!(status(&out), "Nothing that way.");
}

#[test]
fn space_plays_the_focus_and_other_keys_explain() {
    let (mut s, _) = open("dom-example");
    let out = s.handle(Request::Key { key: " ".into() });
    assert_eq!(kinds(&out), ["status", "audio"]);
    assert_eq!(status(&out), "2");
    let out = s.handle(Request::Key { key: "q".into() });
    assert_eq!(status(&out), "The key \"q\" does nothing.");
}

#[test]
fn pointer_requests() {
    let (mut s, _) = open("dom-example");
    let out = s.handle(Request::Pointer { phase: PointerPhase::Start, points: vec![[10, 10]] });
    assert_eq!(status(&out), "Touch exploration works in graphical mode.");
    s.handle(Request::Mode { mode: Mode::Graphical });
    let out = s.handle(Request::Pointer { phase: PointerPhase::Start, points: vec![[130, 30], [140, 60]] });
    assert_eq!(kinds(&out), ["audio"]);
    let out = s.handle(Request::Pointer { phase: PointerPhase::End, points: vec![] });
    assert!(out.is_empty());
    let out = s.handle(Request::Pointer { phase: PointerPhase::Move, points: vec![[1, 1], [2, 2], [3, 3]] });
    assert_eq!(status(&out), "A pointer request carries one or two points.");
    let out = s.handle(Request::Pointer { phase: PointerPhase::Move, points: vec![[5, 5], [5, 5]] });
    assert!(status(&out).starts_with("Pointer ignored"));
}

#[test]
fn links_and_mode_requests() {
    let (mut s, out) = open("dom-example");
    let links = match &out[0] {
        Response::TextBlock { block } => block.links().count(),
        other => panic!("{other:?}"),
    };
    assert!(links > 0);
    let out = s.handle(Request::ActivateLink { link: 1 });
    assert_eq!(kinds(&out)[0], "focus-changed");
    let out = s.handle(Request::Mode { mode: Mode::Text });
    assert_eq!(status(&out), "Already in text mode.");
    let out = s.handle_json(r#"{"kind":"activate-link","link":0}"#);
    assert_eq!(kinds(&out), ["text-block"]);
}

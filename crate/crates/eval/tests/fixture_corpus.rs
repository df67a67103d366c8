//! The checked-in corpus stays in sync with the generator and the
//! reference transcripts.

use eqnav_eval::fixtures::{self, EVALUATION};
use eqnav_eval::synth::{line_pixels, Side};
use eqnav_eval::{synth_image, AnswerTree, Stroke};
use proptest::prelude::*;

/// Symbols and root signs in reading order, which is the element order.
fn reading_order(t: &AnswerTree, out: &mut Vec<String>) {
    match t {
        AnswerTree::Symbol(s) => out.push(s.clone()),
        AnswerTree::Exponent { base, power } => {
            reading_order(base, out);
            reading_order(power, out);
        }
        AnswerTree::Fraction { num, den } => {
            reading_order(num, out);
            reading_order(den, out);
        }
        AnswerTree::Root(r) => {
            out.push("√".into());
            reading_order(r, out);
        }
        AnswerTree::Bracketed { body, .. } => reading_order(body, out),
        AnswerTree::Matrix(rows) => rows.iter().flatten().for_each(|c| reading_order(c, out)),
        AnswerTree::Sequence(v) => v.iter().for_each(|c| reading_order(c, out)),
    }
}

#[test]
fn twelve_evaluation_fixtures_in_two_stages() {
    assert_eq!(EVALUATION.iter().filter(|f| f.stage == Some(1)).count(), 6);
    assert_eq!(EVALUATION.iter().filter(|f| f.stage == Some(2)).count(), 6);
    assert_eq!(fixtures::all().count(), 14);
    assert!(fixtures::by_name("two-lines").is_some() && fixtures::by_name("nope").is_none());
}

#[test]
fn stored_transcripts_match_built_in_ones() {
    for f in fixtures::all() {
        assert_eq!(f.load_reference().unwrap(), f.reference(), "{}", f.name);
        assert_eq!(f.reference().to_string(), f.transcript, "{}", f.name);
    }
}

#[test]
fn stored_bundles_match_the_generator() {
    for f in fixtures::all() {
        assert_eq!(f.load_bundle().unwrap(), f.generate(), "{} is stale; rerun gen-fixtures", f.name);
    }
}

#[test]
fn elements_follow_the_reference_reading_order() {
    for f in fixtures::all() {
        let mut want = Vec::new();
        reading_order(&f.reference(), &mut want);
        want.retain(|s| !f.hidden.contains(&s.as_str()));
        let bundle = f.load_bundle().unwrap();
        let got: Vec<String> = bundle.elements().iter().map(|e| e.text.clone()).collect();
        assert_eq!(got, want, "{}", f.name);
        for (i, e) in bundle.elements().iter().enumerate() {
            assert_eq!(e.id as usize, i + 1);
        }
    }
}

fn stroke(w: u32, h: u32) -> impl Strategy<Value = Stroke> {
    prop_oneof![
        (0..h, 0..w, 0..w).prop_map(|(y, a, b)| Stroke::HRule { y, x0: a.min(b), x1: a.max(b) }),
        (0..w, 0..h, 0..h).prop_map(|(x, a, b)| Stroke::VRule { x, y0: a.min(b), y1: a.max(b) }),
        (0..w, 0..h, 0..w, 0..h).prop_map(|(a, b, c, d)| Stroke::Diagonal { from: (a, b), to: (c, d) }),
        (0..w / 2, 0..h / 2, 2..w / 2, 2..h / 2)
            .prop_map(|(left, top, width, height)| Stroke::Radical { left, top, width, height }),
        (8..w - 8, 0..h / 2, 0..8u32, any::<bool>()).prop_map(move |(x, top, depth, left)| Stroke::BracketArc {
            x,
            top,
            bottom: h - 1,
            depth,
            side: if left { Side::Left } else { Side::Right },
        }),
    ]
}

proptest! {
    #[test]
    fn strokes_ink_exactly_their_pixels(strokes in prop::collection::vec(stroke(48, 32), 1..4)) {
        let img = synth_image(48, 32, &strokes).unwrap();
        let mut want: Vec<(i64, i64)> = strokes.iter().flat_map(|s| s.pixels()).collect();
        want.sort_unstable();
        want.dedup();
        let mut got = Vec::new();
        for y in 0..32 {
            for x in 0..48 {
                if img.is_ink(x, y) {
                    got.push((x as i64, y as i64));
                }
            }
        }
        got.sort_unstable();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn lines_are_symmetric_sets(a in (-20i64..20, -20i64..20), b in (-20i64..20, -20i64..20)) {
        let fwd = line_pixels(a, b);
        prop_assert_eq!(fwd.len() as i64, (b.0 - a.0).abs().max((b.1 - a.1).abs()) + 1);
        prop_assert_eq!(fwd[0], a);
    }
}

#![no_main]

use eqnav_eval::{correctness_score, parse_transcript};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: &str| {
    if let Ok(tree) = parse_transcript(input) {
        assert_eq!(parse_transcript(&tree.to_string()).unwrap(), tree);
        if tree.size() <= 24 {
            assert_eq!(correctness_score(&tree, &tree).correctness, 100.0);
        }
    }
});

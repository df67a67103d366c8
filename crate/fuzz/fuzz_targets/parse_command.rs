#![no_main]

use eqnav_core::shell::parse_command;
use libfuzzer_sys::fuzz_target;

// Parsed commands render back to text that parses to the same command.
fuzz_target!(|input: &str| {
    if let Ok(cmd) = parse_command(input) {
        assert_eq!(parse_command(&cmd.to_string()).unwrap(), cmd);
    }
});

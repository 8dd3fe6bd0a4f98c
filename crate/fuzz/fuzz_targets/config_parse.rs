#![no_main]
use libfuzzer_sys::fuzz_target;

// The configuration parser must reject arbitrary input with an error, never
// a panic. Validation is part of parsing, so it is exercised too.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = selfdual_cli::config::Config::from_toml_str(text);
    }
});

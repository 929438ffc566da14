#![no_main]

use copos_cli::document::{format_matrix_text, parse_matrix_text};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix_text(s) {
        // accepted matrices survive a format/parse cycle unchanged
        if let Ok(back) = parse_matrix_text(&format_matrix_text(&m)) {
            assert_eq!(back.n(), m.n());
        }
    }
});

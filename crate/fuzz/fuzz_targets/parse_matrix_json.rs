#![no_main]

use copos_cli::document::{parse_matrix_json, to_json, MatrixDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix_json(s) {
        let again = parse_matrix_json(&to_json(&MatrixDocument::from_matrix(&m))).expect("re-parse");
        assert_eq!(again, m);
    }
});

#![no_main]

use copos_cli::document::{parse_operator_json, to_json, OperatorDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(op) = parse_operator_json(s) {
        let again = parse_operator_json(&to_json(&OperatorDocument::from_op(&op))).expect("re-parse");
        assert_eq!(again, op);
    }
});

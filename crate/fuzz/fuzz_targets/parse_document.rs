#![no_main]

use libfuzzer_sys::fuzz_target;
use mci::format::{parse_document, NoLoader};

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let _ = parse_document(&text, &mut NoLoader);
});

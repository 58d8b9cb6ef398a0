#![no_main]

use libfuzzer_sys::fuzz_target;
use mci::format::{parse_document, write_bundle, NoLoader};

// Anything that parses must print to text that parses back to the same subject.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = parse_document(text, &mut NoLoader) else {
        return;
    };
    let Some(subject) = doc.subject() else { return };
    let Ok(printed) = write_bundle(subject) else { return };
    let again = parse_document(&printed, &mut NoLoader).expect("printed text parses");
    assert_eq!(again.subject(), Some(subject));
    assert_eq!(write_bundle(subject).unwrap(), printed);
});

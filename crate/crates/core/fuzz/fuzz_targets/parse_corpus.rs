#![no_main]

use libfuzzer_sys::fuzz_target;
use tgain::verify::{parse_corpus_spec, CorpusItem};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(items) = parse_corpus_spec(text) {
        for item in items {
            if let CorpusItem::Family(spec) = item {
                let _ = spec.build();
            }
        }
    }
});

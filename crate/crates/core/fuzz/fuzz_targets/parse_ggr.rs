#![no_main]

use libfuzzer_sys::fuzz_target;
use tgain::graph::parse_gain_graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_gain_graph(text) {
        let serialized = g.to_ggr();
        let back = parse_gain_graph(&serialized).expect("serialized graph must parse");
        assert_eq!(back, g);
        assert_eq!(back.to_ggr(), serialized);
    }
});

// Fuzz target: the region-box and domain-tag string parsers used on the
// CLI surface.
//
// Run with:
//   cargo +nightly fuzz run region_and_domain
#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(bx) = crownlab::nets::RegionBox::parse(s) {
        assert!(bx.b_lo < bx.b_hi && 0.0 < bx.a_lo && bx.a_lo < bx.a_hi);
    }
    if let Ok(tag) = crownlab::crown::DomainTag::parse(s) {
        // the label printed for a parsed tag parses back to the same tag
        let label = tag.label();
        let back = crownlab::crown::DomainTag::parse(&label).expect("label must parse");
        assert_eq!(back, tag);
    }
});

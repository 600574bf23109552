// Fuzz target: the `re+imi` complex literal parser.
//
// Run with:
//   cargo +nightly fuzz run complex_literal
//
// The parser must never panic on arbitrary input; it may return `Err`.
#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(z) = crownlab::complexnum::parse_complex(s) {
        // accepted values must round-trip through the formatter
        if z.re.is_finite() && z.im.is_finite() {
            let back = crownlab::complexnum::parse_complex(&crownlab::complexnum::format_complex(z))
                .expect("formatter output must parse");
            assert_eq!(back, z);
        }
    }
});

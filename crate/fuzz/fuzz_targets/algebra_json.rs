// Fuzz target: the structure-constant JSON loader.
//
// Run with:
//   cargo +nightly fuzz run algebra_json -- -max_len=65536
//
// Arbitrary input must yield `Ok` with validated invariants or a clean
// `Err`; panics and non-finite structure constants are bugs.
#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(alg) = crownlab::lie::LieAlgebra::from_json_str(s) {
        // a successfully loaded algebra must satisfy its own invariants
        assert!(alg.jacobi_residual() <= 1e-12);
        assert!(alg.dim() > 0);
    }
});

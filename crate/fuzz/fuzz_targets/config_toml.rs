// Fuzz target: the TOML run-configuration loader.
//
// Run with:
//   cargo +nightly fuzz run config_toml
#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = crownlab::config::RunConfig::from_toml_str(s) {
        // accepted configurations re-validate and re-serialize
        cfg.validate().expect("accepted config must validate");
        let text = toml::to_string(&cfg).expect("serializable");
        let back = crownlab::config::RunConfig::from_toml_str(&text).expect("roundtrip");
        assert_eq!(back, cfg);
    }
});

#![no_main]

use aidig::implication::InvertiblePairCertificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cert) = InvertiblePairCertificate::parse(text) {
        let reparsed = InvertiblePairCertificate::parse(&cert.to_text()).unwrap();
        assert_eq!(cert, reparsed);
    }
});

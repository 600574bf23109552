//! Complex-number text and JSON formats used on the tool surface.
//!
//! CLI arguments use the compact literal form `re+imi` (e.g. `0+0.5i`,
//! `-1.25i`, `3`, `1e-3-2e2i`); JSON reports carry `{ "re": .., "im": .. }`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// JSON shape of a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(c: ComplexJson) -> Self {
        Complex64::new(c.re, c.im)
    }
}

/// Parse a complex literal of the form `a`, `bi`, `a+bi` or `a-bi`.
///
/// The split point is the last sign that is neither leading nor part of a
/// float exponent, so scientific notation works in both components.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err(Error::ComplexParse(s.to_string()));
    }
    let bytes = t.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let parse_imag = |u: &str| -> Result<f64> {
        let body = &u[..u.len() - 1];
        match body {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => body.parse::<f64>().map_err(|_| Error::ComplexParse(s.to_string())),
        }
    };
    if let Some(i) = split {
        let (head, tail) = t.split_at(i);
        if tail.ends_with('i') || tail.ends_with('I') {
            let re = head.parse::<f64>().map_err(|_| Error::ComplexParse(s.to_string()))?;
            let im = parse_imag(tail)?;
            return Ok(Complex64::new(re, im));
        }
        return Err(Error::ComplexParse(s.to_string()));
    }
    if t.ends_with('i') || t.ends_with('I') {
        return Ok(Complex64::new(0.0, parse_imag(&t)?));
    }
    t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| Error::ComplexParse(s.to_string()))
}

/// Format a complex number in the CLI literal form.
pub fn format_complex(z: Complex64) -> String {
    // normalize -0.0 so the sign never doubles up as "+-0"
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im >= 0.0 || im.is_nan() {
        format!("{}+{im}i", z.re)
    } else {
        format!("{}{im}i", z.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_complex("0+0.5i").unwrap(), Complex64::new(0.0, 0.5));
        assert_eq!(parse_complex("1+0i").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), Complex64::new(-2.5, 0.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("3i").unwrap(), Complex64::new(0.0, 3.0));
        assert_eq!(parse_complex("1e-3-2e2i").unwrap(), Complex64::new(1e-3, -2e2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1+", "+", "1+2j", "2i+3", "1.2.3", "i7", "--4"] {
            assert!(parse_complex(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn roundtrip_through_format() {
        for z in [Complex64::new(1.5, -0.25), Complex64::new(0.0, 2.0), Complex64::new(-3.0, 0.0)] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }
}

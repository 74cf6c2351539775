//! JSON serialization with floats written at 17 significant digits, the
//! shortest precision that round-trips every `f64` exactly.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

struct SigDigits17;

impl Formatter for SigDigits17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes `value` as compact JSON with 17-significant-digit floats.
pub(crate) fn to_string_17<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits17);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_exactly() {
        let xs = [
            1.0 / 3.0,
            -0.577350269189625_8,
            1e-300,
            0.0,
            -0.0,
            1.0,
            std::f64::consts::PI,
        ];
        for &x in &xs {
            let text = to_string_17(&x).unwrap();
            let back: f64 = serde_json::from_str(&text).unwrap();
            assert_eq!(x.to_bits(), back.to_bits(), "text was {text}");
        }
    }

    #[test]
    fn nested_structures_use_the_format() {
        let text = to_string_17(&vec![[0.5f64, -0.25f64]]).unwrap();
        assert_eq!(text, "[[5.0000000000000000e-1,-2.5000000000000000e-1]]");
    }
}

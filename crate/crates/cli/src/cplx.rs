//! Complex literals in the CLI grammar `a+bi` / `a-bi` / `bi` / `a`,
//! whitespace forbidden.

use num_complex::Complex64;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(format!("invalid complex literal '{s}'"));
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // find the sign separating re from im: not at index 0 and not part of
        // an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let ch = bytes[idx];
            if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re: f64 =
                    body[..idx].parse().map_err(|_| format!("invalid real part in '{s}'"))?;
                let im = parse_signed_unit(&body[idx..])
                    .ok_or_else(|| format!("invalid imaginary part in '{s}'"))?;
                Ok(Complex64::new(re, im))
            }
            None => {
                let im = parse_signed_unit(body)
                    .ok_or_else(|| format!("invalid imaginary part in '{s}'"))?;
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().map_err(|_| format!("invalid real literal '{s}'"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn parse_signed_unit(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => s.parse().ok(),
    }
}

/// 17 significant digits, complex as `re+imi`.
pub fn format_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im.is_sign_negative() {
        format!("{re:.16e}-{:.16e}i", -im)
    } else {
        format!("{re:.16e}+{im:.16e}i")
    }
}

//! Angles on the command line: raw radians or rational multiples of π
//! ("pi", "0.75pi", "3pi/4", "-pi/2", "2*pi").

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t: String = s.trim().to_ascii_lowercase().replace('π', "pi");
    let bad = || format!("cannot read {s:?} as an angle (use radians or forms like 0.75pi, 3pi/4)");
    let value = match t.find("pi") {
        None => t.parse::<f64>().map_err(|_| bad())?,
        Some(at) => {
            let coef = t[..at].trim_end_matches('*').trim();
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            let rest = t[at + 2..].trim();
            let denom = match rest.strip_prefix('/') {
                None if rest.is_empty() => 1.0,
                None => return Err(bad()),
                Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
            };
            if denom == 0.0 {
                return Err(bad());
            }
            coef * PI / denom
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let cases = [
            ("pi", PI),
            ("0.75pi", 0.75 * PI),
            ("3pi/4", 0.75 * PI),
            ("-pi/2", -PI / 2.0),
            ("2*pi", 2.0 * PI),
            ("1.5", 1.5),
            (" 3π/2 ", 1.5 * PI),
            ("PI/3", PI / 3.0),
        ];
        for (s, want) in cases {
            assert!((parse_angle(s).unwrap() - want).abs() < 1e-15, "{s}");
        }
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "pie", "pi/0", "x", "3pi/", "nan", "inf"] {
            assert!(parse_angle(s).is_err(), "{s}");
        }
    }
}

//! Parsers for numeric flag values and signal descriptions.

use ergodic_lab::circle_method::RationalFrequency;
use ergodic_lab::signals::SignalZ;
use ergodic_lab::Complex64;

/// Reads `1e6`, `2^20`, `1/3`, `sqrt(2)`, `inf` and plain decimals.
pub fn number(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let bad = || format!("cannot parse number '{s}'");
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return Ok(number(inner)?.sqrt());
    }
    if let Some(rest) = t.strip_prefix('-') {
        if !rest.starts_with('-') && (rest.contains('^') || rest.contains('/') || rest.starts_with("sqrt(")) {
            return Ok(-number(rest)?);
        }
    }
    if let Some((b, e)) = t.split_once('^') {
        return Ok(number(b)?.powf(number(e)?));
    }
    if let Some((a, b)) = t.split_once('/') {
        return Ok(number(a)? / number(b)?);
    }
    match t {
        "inf" | "infinity" | "∞" => return Ok(f64::INFINITY),
        _ => {}
    }
    t.parse::<f64>().map_err(|_| bad())
}

/// Comma-separated list of [`number`]s.
pub fn numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(number).collect()
}

pub fn integers(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<i64>().map_err(|_| format!("cannot parse integer '{p}'")))
        .collect()
}

/// Non-negative integer, also accepting `2^k`.
pub fn count(s: &str) -> Result<u64, String> {
    let x = number(s)?;
    if x < 0.0 || x.fract() != 0.0 || x > u64::MAX as f64 {
        return Err(format!("'{s}' is not a non-negative integer"));
    }
    Ok(x as u64)
}

pub fn rationals(s: &str) -> Result<Vec<RationalFrequency>, String> {
    s.split(',')
        .map(|p| p.parse::<RationalFrequency>().map_err(|e| e.to_string()))
        .collect()
}

/// `delta:X`, `OFFSET:v0;v1;...` (real or `a+bi` values) or `file:PATH`
/// holding `x,re,im` CSV.
pub fn signal(s: &str) -> Result<SignalZ, String> {
    let (head, body) = s
        .split_once(':')
        .ok_or_else(|| format!("signal '{s}' must look like delta:X, OFFSET:v;v;... or file:PATH"))?;
    match head {
        "delta" => Ok(SignalZ::delta(body.trim().parse().map_err(|_| format!("bad delta position in '{s}'"))?)),
        "file" => {
            let text = std::fs::read_to_string(body).map_err(|e| format!("cannot read {body}: {e}"))?;
            SignalZ::from_csv(&text).map_err(|e| e.to_string())
        }
        _ => {
            let offset: i64 = head.trim().parse().map_err(|_| format!("bad offset in signal '{s}'"))?;
            let values = body
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(complex)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SignalZ::new(offset, values))
        }
    }
}

/// `a`, `bi`, `a+bi` or `a-bi`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let bad = || format!("cannot parse complex value '{s}'");
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(number(t)?, 0.0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
        .map(|(i, _)| i)
        .last();
    match split {
        Some(i) => {
            let im_part = &body[i..];
            let im = if im_part == "+" || im_part == "-" { format!("{im_part}1") } else { im_part.to_string() };
            Ok(Complex64::new(number(&body[..i])?, im.parse::<f64>().map_err(|_| bad())?))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => body.parse::<f64>().map_err(|_| bad())?,
            };
            Ok(Complex64::new(0.0, im))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_powers() {
        assert_eq!(number("2^16").unwrap(), 65536.0);
        assert_eq!(number("1e6").unwrap(), 1e6);
        assert_eq!(number("1/4").unwrap(), 0.25);
        assert_eq!(number("-2^3").unwrap(), -8.0);
        assert_eq!(number("sqrt(2)").unwrap(), 2f64.sqrt());
        assert_eq!(number("inf").unwrap(), f64::INFINITY);
        assert_eq!(count("2^10").unwrap(), 1024);
        assert!(count("1.5").is_err());
        assert!(number("abc").is_err());
    }

    #[test]
    fn complex_values() {
        assert_eq!(complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(complex("1.5e-3-2i").unwrap(), Complex64::new(1.5e-3, -2.0));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn signals() {
        assert_eq!(signal("delta:-2").unwrap(), SignalZ::delta(-2));
        let s = signal("3:1;0;2i").unwrap();
        assert_eq!(s.offset(), 3);
        assert_eq!(s.values()[2], Complex64::new(0.0, 2.0));
        assert!(signal("nonsense").is_err());
    }
}

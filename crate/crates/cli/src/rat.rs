//! Exact rational parsing and printing for CLI values.
//!
//! Grid and window values are carried as exact rationals end to end:
//! `p/q` strings stay `p/q`, decimal strings get denominator `10^k`, and
//! reports echo a canonical decimal form so output never drifts through
//! float printing.

use fareycorr::Rational64;

/// Parses `p/q`, a decimal like `0.25`, or a plain integer.
pub fn parse_ratio(s: &str) -> Result<Rational64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in '{s}'"))?;
        let den: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in '{s}'"))?;
        if den <= 0 {
            return Err(format!("denominator must be positive in '{s}'"));
        }
        return Ok(Rational64::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal '{s}'"));
        }
        if frac_part.len() > 18 {
            return Err(format!("too many decimal digits in '{s}'"));
        }
        let neg = int_part.starts_with('-');
        let int_digits = int_part.strip_prefix(['-', '+']).unwrap_or(int_part);
        let int_val: i64 = if int_digits.is_empty() {
            0
        } else {
            int_digits
                .parse()
                .map_err(|_| format!("bad decimal '{s}'"))?
        };
        let den = 10i64.pow(frac_part.len() as u32);
        let frac_val: i64 = frac_part
            .parse()
            .map_err(|_| format!("bad decimal '{s}'"))?;
        let num = int_val
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(|| format!("decimal '{s}' out of range"))?;
        return Ok(Rational64::new(if neg { -num } else { num }, den));
    }
    let n: i64 = s.parse().map_err(|_| format!("bad rational '{s}'"))?;
    Ok(Rational64::new(n, 1))
}

/// Canonical string: exact decimal when the reduced denominator is
/// `2^a 5^b`, otherwise `p/q`.
pub fn format_ratio(r: Rational64) -> String {
    let num = *r.numer();
    let den = *r.denom();
    let (mut rest, mut twos, mut fives) = (den as u128, 0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return format!("{num}/{den}");
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return format!("{num}");
    }
    let scale = 10u128.pow(digits);
    let value = num.unsigned_abs() as u128 * (scale / den as u128);
    let sign = if num < 0 { "-" } else { "" };
    let int_part = value / scale;
    let mut frac = format!("{:0width$}", value % scale, width = digits as usize);
    while frac.ends_with('0') {
        frac.pop();
    }
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

//! Command-line value syntax: ranges `a:b`, grids `NxM`, comma-separated
//! triples. Numbers are constant expressions, so `0:pi` and `sinh(1)` work.

use pseudoiso::expr::{eval, parse};
use pseudoiso::{Error, Result};

pub fn number(text: &str) -> Result<f64> {
    Ok(eval(&parse(text, &[])?, &[])?)
}

pub fn range(text: &str) -> Result<(f64, f64)> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Error::InvalidParams(format!("range `{text}` is not of the form a:b")))?;
    let r = (number(a)?, number(b)?);
    if r.0.partial_cmp(&r.1) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidParams(format!("range `{text}` is empty")));
    }
    Ok(r)
}

pub fn grid(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidParams(format!("grid `{text}` is not of the form NxM"));
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let n: usize = a.trim().parse().map_err(|_| bad())?;
    let m: usize = b.trim().parse().map_err(|_| bad())?;
    if n < 2 || m < 2 {
        return Err(Error::TooFewSamples(n.min(m)));
    }
    Ok((n, m))
}

/// Three comma-separated components. The expression grammar has no commas,
/// so splitting is unambiguous.
pub fn triple(text: &str) -> Result<[&str; 3]> {
    let parts: Vec<&str> = text.split(',').collect();
    match parts[..] {
        [x, y, z] => Ok([x, y, z]),
        _ => Err(Error::InvalidParams(format!(
            "expected three comma-separated components, found {}",
            parts.len()
        ))),
    }
}

pub fn names(text: &str, count: usize) -> Result<Vec<&str>> {
    let v: Vec<&str> = text.split(',').map(str::trim).collect();
    if v.len() != count || v.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidParams(format!(
            "expected {count} variable names, got `{text}`"
        )));
    }
    Ok(v)
}

//! Command-line values: circle elements, characters and lattice elements.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use satake_core::lattice::ExactCircle;

/// `(a, b)` meaning `q^a · e^{2πi b}`, with rational `a`, `b`.
pub fn parse_circle(text: &str) -> Result<ExactCircle, String> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("expected '(a, b)', found {text:?}"))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected '(a, b)', found {text:?}"))?;
    let rational = |s: &str| {
        BigRational::from_str(s.trim()).map_err(|_| format!("bad rational {:?}", s.trim()))
    };
    Ok(ExactCircle::new(rational(a)?, rational(b)?))
}

/// Values on `n` generators. Entries are separated by `;` and are either all
/// positional `(a, b)` or all of the form `i=(a, b)` with `i` counted from 0;
/// generators not named are sent to 1.
pub fn parse_character(text: &str, n: usize) -> Result<Vec<ExactCircle>, String> {
    let entries: Vec<&str> = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let mut values = vec![ExactCircle::identity(); n];
    if entries.iter().all(|e| e.contains('=')) {
        let mut seen = vec![false; n];
        for e in entries {
            let (i, v) = e.split_once('=').expect("checked");
            let i: usize = i
                .trim()
                .parse()
                .map_err(|_| format!("bad generator index {:?}", i.trim()))?;
            if i >= n {
                return Err(format!(
                    "generator {i} out of range; the group has {n} generators"
                ));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(format!("generator {i} given twice"));
            }
            values[i] = parse_circle(v)?;
        }
    } else if entries.iter().any(|e| e.contains('=')) {
        return Err("mix of positional and named values".into());
    } else {
        if entries.len() != n {
            return Err(format!("expected {n} values, found {}", entries.len()));
        }
        for (slot, e) in values.iter_mut().zip(entries) {
            *slot = parse_circle(e)?;
        }
    }
    Ok(values)
}

/// Comma-separated integers.
pub fn parse_element(text: &str, n: usize) -> Result<Vec<BigInt>, String> {
    let text = text.trim().trim_start_matches('[').trim_end_matches(']');
    let v: Vec<BigInt> = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|s| BigInt::from_str(s.trim()).map_err(|_| format!("bad integer {:?}", s.trim())))
            .collect::<Result<_, _>>()?
    };
    if v.len() != n {
        return Err(format!("expected {n} coordinates, found {}", v.len()));
    }
    Ok(v)
}

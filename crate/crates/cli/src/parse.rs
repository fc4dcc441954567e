//! Parsers for targets, degrees, class lists and pins.

use gwcalc::{Bidegree, Degree, ExponentVector, TargetSpace};

use crate::CliError;

/// `p<r>` for ℙʳ, `p1xp1` for the quadric.
pub fn target(s: &str) -> Result<TargetSpace, CliError> {
    let lower = s.trim().to_ascii_lowercase();
    if lower == "p1xp1" {
        return Ok(TargetSpace::P1xP1);
    }
    let r = lower
        .strip_prefix('p')
        .and_then(|r| r.parse::<u32>().ok())
        .filter(|&r| r >= 1)
        .ok_or_else(|| CliError::usage(format!("unknown target {s:?}; expected p<r> or p1xp1")))?;
    Ok(TargetSpace::Projective(r))
}

/// An integer degree, or `d,e` for a bidegree.
pub fn degree(target: TargetSpace, s: &str) -> Result<Degree, CliError> {
    let bad = || CliError::usage(format!("bad degree {s:?} for {target}"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let nums: Vec<u32> = parts
        .iter()
        .map(|p| p.parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    match (target, nums.as_slice()) {
        (TargetSpace::Projective(_), &[d]) => Ok(Degree::Single(d)),
        (TargetSpace::P1xP1, &[d, e]) => Ok(Degree::Bi(Bidegree::new(d, e))),
        _ => Err(bad()),
    }
}

/// Class lists such as `h2:4,h1:2`, `h2^4 h1 h1` or `T3:3`.
pub fn classes(target: TargetSpace, s: &str) -> Result<ExponentVector, CliError> {
    let mut exps = ExponentVector::zeros(target.basis_len());
    for item in s.split(|c: char| c == ',' || c.is_whitespace()) {
        if item.is_empty() {
            continue;
        }
        let (name, count) = match item.split_once([':', '^']) {
            Some((n, c)) => {
                let c = c
                    .parse::<u32>()
                    .map_err(|_| CliError::usage(format!("bad multiplicity in {item:?}")))?;
                (n, c)
            }
            None => (item, 1),
        };
        let index = target
            .parse_class(name)
            .map_err(|e| CliError::usage(e.to_string()))?;
        exps.add(index, count);
    }
    Ok(exps)
}

pub fn class_index(target: TargetSpace, s: &str) -> Result<usize, CliError> {
    target
        .parse_class(s)
        .map_err(|e| CliError::usage(e.to_string()))
}

/// `i,j:k,l`.
pub fn pins(s: &str) -> Result<[String; 4], CliError> {
    let bad = || CliError::usage(format!("bad pins {s:?}; expected i,j:k,l"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let side = |t: &str| -> Result<(String, String), CliError> {
        let (x, y) = t.split_once(',').ok_or_else(bad)?;
        let (x, y) = (x.trim(), y.trim());
        if x.is_empty() || y.is_empty() {
            return Err(bad());
        }
        Ok((x.to_string(), y.to_string()))
    };
    let (i, j) = side(a)?;
    let (k, l) = side(b)?;
    Ok([i, j, k, l])
}

/// Comma-separated list of basis indices, e.g. `1,1,2,2`.
pub fn indices(s: &str) -> Result<[usize; 4], CliError> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("bad index list {s:?}")))?;
    v.try_into()
        .map_err(|_| CliError::usage(format!("expected four indices, got {s:?}")))
}

use super::{CayleyGroup, CyclicProductGroup, Group};
use crate::error::{Error, Result};
use crate::ptuple::LambdaSignature;

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad {what} '{s}'")))
}

/// Parses a group literal.
///
/// Accepted forms: `Z4xZ8` (also `Z2^6`), `p=3;lambda=1,3,5`, `S3`, `D4`
/// (dihedral of order 8), `trivial`, or a JSON multiplication table.
pub fn parse_group(spec: &str) -> Result<Group> {
    let s = spec.trim();
    if s.starts_with('[') {
        let rows: Vec<Vec<usize>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("Cayley table JSON: {e}")))?;
        return Ok(Group::Table(CayleyGroup::new(rows)?));
    }
    if s.eq_ignore_ascii_case("trivial") || s == "1" {
        return Ok(Group::Product(CyclicProductGroup::new(vec![])?));
    }
    if s.starts_with("p=") || s.starts_with("p =") {
        let sig = parse_signature(s)?;
        return Ok(Group::Product(CyclicProductGroup::from_signature(&sig)?));
    }
    if let Some(rest) = s.strip_prefix('S') {
        let n = parse_u64(rest, "symmetric degree")?;
        return Ok(Group::Table(CayleyGroup::symmetric(n as usize)?));
    }
    if let Some(rest) = s.strip_prefix('D') {
        let n = parse_u64(rest, "dihedral parameter")?;
        return Ok(Group::Table(CayleyGroup::dihedral(n as usize)?));
    }
    let mut moduli = Vec::new();
    for factor in s.split(['x', 'X', '*', '×']) {
        let f = factor.trim();
        let body = f
            .strip_prefix('Z')
            .or_else(|| f.strip_prefix('C'))
            .ok_or_else(|| Error::Parse(format!("factor '{f}' should look like Z<m>")))?;
        match body.split_once('^') {
            Some((m, k)) => {
                let m = parse_u64(m, "modulus")?;
                let k = parse_u64(k, "exponent")?;
                moduli.extend(std::iter::repeat_n(m, k as usize));
            }
            None => moduli.push(parse_u64(body, "modulus")?),
        }
    }
    Ok(Group::Product(CyclicProductGroup::new(moduli)?))
}

/// Parses `p=<prime>;lambda=<l1>,<l2>,...`.
pub fn parse_signature(spec: &str) -> Result<LambdaSignature> {
    let mut p = None;
    let mut lambda = None;
    for part in spec.split(';') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value in '{part}'")))?;
        match k.trim() {
            "p" => p = Some(parse_u64(v, "prime")?),
            "lambda" => {
                lambda = Some(
                    v.split(',')
                        .map(|x| parse_u64(x, "exponent").map(|e| e as u32))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            other => return Err(Error::Parse(format!("unknown key '{other}'"))),
        }
    }
    let p = p.ok_or_else(|| Error::Parse("missing p".into()))?;
    let lambda = lambda.ok_or_else(|| Error::Parse("missing lambda".into()))?;
    LambdaSignature::new(p, lambda)
}

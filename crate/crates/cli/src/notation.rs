//! Type parsing at the command-line boundary.
//!
//! Besides the canonical text form (`k+:[2,1] k-:[2] l:[1]`), types may be
//! written multiplicatively as comma-separated components, e.g.
//! `(1^1 2^1, 2^1, 1^1)`. A component is empty, `∅`, or a list of `k^a`
//! (or bare `k`) tokens.

use real_hurwitz_core::nonsep::TildeType;
use real_hurwitz_core::{Partition, RamificationType};

use crate::CliError;

fn component(s: &str) -> Result<Partition, CliError> {
    let s = s.trim();
    let mut parts = Vec::new();
    if s.is_empty() || s == "∅" || s == "-" {
        return Ok(Partition::empty());
    }
    for tok in s.split_whitespace() {
        let (k, a) = match tok.split_once('^') {
            Some((k, a)) => (k, a),
            None => (tok, "1"),
        };
        let k: u32 = k.parse().map_err(|_| CliError::Usage(format!("bad part `{tok}`")))?;
        let a: usize = a.parse().map_err(|_| CliError::Usage(format!("bad exponent in `{tok}`")))?;
        if k == 0 {
            return Err(CliError::Usage("parts must be positive".into()));
        }
        parts.extend(std::iter::repeat(k).take(a));
    }
    Partition::new(parts).map_err(|e| CliError::Usage(e.to_string()))
}

fn components(s: &str, expected: usize) -> Result<Vec<Partition>, CliError> {
    let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let fields: Vec<&str> = inner.split(',').collect();
    if fields.len() != expected {
        return Err(CliError::Usage(format!("expected {expected} comma-separated components in `{s}`")));
    }
    fields.into_iter().map(component).collect()
}

/// Parses a separating-case type in canonical or multiplicative notation.
pub fn parse_type(s: &str) -> Result<RamificationType, CliError> {
    if s.contains(':') {
        return s.parse().map_err(|e: real_hurwitz_core::Error| CliError::Usage(e.to_string()));
    }
    let [kp, km, l]: [Partition; 3] = components(s, 3)?.try_into().expect("three components");
    Ok(RamificationType::new(kp, km, l))
}

/// Parses a quadruple `(κ⁺, κ⁻, κ, λ)` in either notation.
pub fn parse_tilde_type(s: &str) -> Result<TildeType, CliError> {
    if s.contains(':') {
        return s.parse().map_err(|e: real_hurwitz_core::Error| CliError::Usage(e.to_string()));
    }
    let [kp, km, k, l]: [Partition; 4] = components(s, 4)?.try_into().expect("four components");
    TildeType::new(kp, km, k, l).map_err(|e| CliError::Usage(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicative() {
        let mu = parse_type("(1^1 2^1, 2^1, 1^1)").unwrap();
        assert_eq!(mu, RamificationType::from_parts(&[2, 1], &[2], &[1]));
        assert_eq!(parse_type("(∅,∅,3^2)").unwrap(), RamificationType::from_parts(&[], &[], &[3, 3]));
        assert_eq!(parse_type("3, , ").unwrap(), RamificationType::from_parts(&[3], &[], &[]));
    }

    #[test]
    fn canonical() {
        let mu = parse_type("k+:[2,1] k-:[2] l:[1]").unwrap();
        assert_eq!(mu, RamificationType::from_parts(&[2, 1], &[2], &[1]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_type("(1, 2)").is_err());
        assert!(parse_type("(x, , )").is_err());
        assert!(parse_type("(0, , )").is_err());
        assert!(parse_tilde_type("(3, , , )").is_err());
    }

    #[test]
    fn tilde() {
        let mu = parse_tilde_type("(∅, ∅, 3^1, ∅)").unwrap();
        assert_eq!(mu, TildeType::from_parts(&[], &[], &[3], &[]));
    }
}

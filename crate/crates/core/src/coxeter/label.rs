use super::{CoxeterError, CoxeterType};

/// Parses a label into its factors; the flag marks a `2` prefix.
///
/// Factors are joined by `x` or `×`; a factor is an optional `2` followed by
/// `A_n`, `B_n`/`C_n`/`BC_n`, `D_n`, `E6`-`E8`, `F4`, `G2`, `H3`, `H4` or
/// `I2(m)`. Underscores and surrounding whitespace are ignored.
pub fn parse_label(label: &str) -> Result<Vec<(CoxeterType, bool)>, CoxeterError> {
    let unknown = || CoxeterError::UnknownLabel(label.to_string());
    let cleaned: String = label
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .collect();
    if cleaned.is_empty() {
        return Err(unknown());
    }
    cleaned
        .split(['x', '×'])
        .map(|f| parse_factor(f).ok_or_else(unknown))
        .collect()
}

fn parse_factor(f: &str) -> Option<(CoxeterType, bool)> {
    let (twisted, body) = match f.strip_prefix('2') {
        Some(rest) if rest.starts_with(|c: char| c.is_ascii_alphabetic()) => (true, rest),
        _ => (false, f),
    };
    let kind = if let Some(m) = body.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = m.parse().ok()?;
        (m >= 3).then_some(CoxeterType::I2(m))?
    } else {
        let split = body.find(|c: char| c.is_ascii_digit())?;
        let (letters, digits) = body.split_at(split);
        let n: usize = digits.parse().ok()?;
        match (letters, n) {
            ("A", n) if n >= 1 => CoxeterType::A(n),
            ("B" | "C" | "BC", n) if n >= 2 => CoxeterType::BC(n),
            ("D", n) if n >= 4 => CoxeterType::D(n),
            ("E", 6..=8) => CoxeterType::E(n),
            ("F", 4) => CoxeterType::F4,
            ("G", 2) => CoxeterType::I2(6),
            ("H", 3 | 4) => CoxeterType::H(n),
            _ => return None,
        }
    };
    Some((kind, twisted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors() {
        assert_eq!(parse_label("A3").unwrap(), vec![(CoxeterType::A(3), false)]);
        assert_eq!(
            parse_label("2D_4").unwrap(),
            vec![(CoxeterType::D(4), true)]
        );
        assert_eq!(
            parse_label("2G2").unwrap(),
            vec![(CoxeterType::I2(6), true)]
        );
        assert_eq!(
            parse_label("2I2(9)").unwrap(),
            vec![(CoxeterType::I2(9), true)]
        );
        assert_eq!(
            parse_label("A1 × A2").unwrap(),
            vec![(CoxeterType::A(1), false), (CoxeterType::A(2), false)]
        );
        assert_eq!(
            parse_label("C3").unwrap(),
            vec![(CoxeterType::BC(3), false)]
        );
    }
}

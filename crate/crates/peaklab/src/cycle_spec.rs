//! Text syntax for cycle types: `"2^250 4^125"`, `"identity:6"`, `"cycle:5"`.

use std::fmt;

use peaklab_core::CycleType;

/// A parse failure located at a 1-based character column of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        column,
        message: message.into(),
    }
}

fn parse_number(text: &str, column: usize, what: &str) -> Result<usize, ParseError> {
    if text.is_empty() {
        return Err(err(column, format!("missing {what}")));
    }
    if let Some(pos) = text.find(|c: char| !c.is_ascii_digit()) {
        return Err(err(
            column + text[..pos].chars().count(),
            format!("expected a digit in {what}, found {:?}", text[pos..].chars().next().unwrap()),
        ));
    }
    text.parse()
        .map_err(|_| err(column, format!("{what} {text} is too large")))
}

fn parse_shorthand(text: &str, column: usize, colon: usize) -> Result<CycleType, ParseError> {
    let name = &text[..colon];
    let arg_col = column + name.chars().count() + 1;
    let n = parse_number(&text[colon + 1..], arg_col, "n")?;
    if n == 0 {
        return Err(err(arg_col, "n must be at least 1"));
    }
    match name {
        "identity" => Ok(CycleType::identity(n).expect("n >= 1")),
        "cycle" => Ok(CycleType::cycle(n).expect("n >= 1")),
        "derangement" => Err(err(
            column,
            format!(
                "derangement:{n} names the union of all fixed-point-free classes, not a single \
                 class; run once per cycle type without 1-cycles instead (for example \"2^{}\")",
                n / 2
            ),
        )),
        other => Err(err(
            column,
            format!("unknown shorthand {other:?} (expected identity:n or cycle:n)"),
        )),
    }
}

/// Parses a cycle type. Tokens `part^mult` are separated by whitespace and
/// repeated parts accumulate, so `"2^1 2^1"` equals `"2^2"`. The shorthands
/// `identity:n` and `cycle:n` stand alone.
pub fn parse_cycle_type(text: &str) -> Result<CycleType, ParseError> {
    let mut pairs = Vec::new();
    let mut tokens = Vec::new();
    let mut col = 1;
    let mut start = None;
    for (idx, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((idx, col)),
            (true, Some((s, sc))) => {
                tokens.push((&text[s..idx], sc));
                start = None;
            }
            _ => {}
        }
        col += 1;
    }
    if let Some((s, sc)) = start {
        tokens.push((&text[s..], sc));
    }
    if tokens.is_empty() {
        return Err(err(1, "empty cycle type"));
    }

    for &(tok, tcol) in &tokens {
        if let Some(colon) = tok.find(':') {
            if tokens.len() > 1 {
                return Err(err(tcol, "a shorthand must be the only token"));
            }
            return parse_shorthand(tok, tcol, colon);
        }
        let Some(caret) = tok.find('^') else {
            return Err(err(tcol, format!("expected part^mult, found {tok:?}")));
        };
        let part = parse_number(&tok[..caret], tcol, "part")?;
        let mcol = tcol + tok[..caret].chars().count() + 1;
        let mult = parse_number(&tok[caret + 1..], mcol, "multiplicity")?;
        if part == 0 {
            return Err(err(tcol, "parts must be at least 1"));
        }
        if mult == 0 {
            return Err(err(mcol, format!("zero multiplicity for part {part}")));
        }
        pairs.push((part, mult));
    }
    CycleType::new(pairs).map_err(|e| err(1, e.to_string()))
}

/// [`parse_cycle_type`], additionally requiring `Σ i n_i = n` when `n` is
/// given.
pub fn parse_cycle_type_for(text: &str, n: Option<usize>) -> Result<CycleType, ParseError> {
    let lambda = parse_cycle_type(text)?;
    match n {
        Some(n) if lambda.n() != n => Err(err(
            1,
            format!("cycle type {lambda} has size {}, expected {n}", lambda.n()),
        )),
        _ => Ok(lambda),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let l = parse_cycle_type("2^250 4^125").unwrap();
        assert_eq!(l.n(), 1000);
        assert_eq!((l.mult(2), l.mult(4)), (250, 125));
        assert_eq!(parse_cycle_type("1^5").unwrap(), CycleType::identity(5).unwrap());
        let l = parse_cycle_type("3^2 2^1").unwrap();
        assert_eq!((l.n(), l.mult(3), l.mult(2)), (8, 2, 1));
    }

    #[test]
    fn repeats_accumulate() {
        assert_eq!(parse_cycle_type("2^1 2^1").unwrap(), parse_cycle_type("2^2").unwrap());
        assert_eq!(parse_cycle_type("  3^1\t1^2 ").unwrap().n(), 5);
    }

    #[test]
    fn shorthands() {
        assert_eq!(parse_cycle_type("identity:6").unwrap(), CycleType::identity(6).unwrap());
        assert_eq!(parse_cycle_type("cycle:5").unwrap(), CycleType::cycle(5).unwrap());
        let e = parse_cycle_type("derangement:6").unwrap_err();
        assert!(e.message.contains("per cycle type") || e.message.contains("once per"));
        assert!(parse_cycle_type("cycle:0").is_err());
        assert!(parse_cycle_type("cycle:4 2^1").is_err());
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(parse_cycle_type("2^0").unwrap_err().column, 3);
        assert_eq!(parse_cycle_type("2^3 x^1").unwrap_err().column, 5);
        assert_eq!(parse_cycle_type("2^3 4").unwrap_err().column, 5);
        assert_eq!(parse_cycle_type("2^3 4^1a").unwrap_err().column, 8);
        assert_eq!(parse_cycle_type("0^2").unwrap_err().column, 1);
        assert_eq!(parse_cycle_type("").unwrap_err().column, 1);
        assert!(parse_cycle_type("2^").is_err());
    }

    #[test]
    fn explicit_size() {
        assert!(parse_cycle_type_for("3^2 2^1", Some(8)).is_ok());
        assert!(parse_cycle_type_for("3^2 2^1", Some(9)).is_err());
        assert!(parse_cycle_type_for("3^2 2^1", None).is_ok());
    }
}

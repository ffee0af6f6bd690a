//! Canonical text form shared by permutations, words and embeddings.
//!
//! A sequence renders as bare digits when every entry is a single digit
//! and as a comma-separated list otherwise. Parsing accepts either form;
//! delimited input may use commas, whitespace or both.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

/// Parsed letters plus whether the input used the compact digit form.
pub(crate) struct Letters {
    pub letters: Vec<u32>,
    pub compact: bool,
}

pub(crate) fn parse_letters(text: &str) -> Result<Letters> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Empty);
    }
    let delimited = text.chars().any(|c| c == ',' || c.is_whitespace());
    if !delimited {
        let letters = text
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(0) => Err(Error::NonPositive("0".into())),
                Some(d) => Ok(d),
                None if c == '-' => Err(Error::NonPositive(text.into())),
                None => Err(Error::InvalidToken(c.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Letters {
            letters,
            compact: true,
        });
    }
    let mut letters = Vec::new();
    for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
        if token.is_empty() {
            continue;
        }
        if let Some(rest) = token.strip_prefix('-') {
            if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
                return Err(Error::NonPositive(token.into()));
            }
            return Err(Error::InvalidToken(token.into()));
        }
        let value: u64 = token
            .parse()
            .map_err(|_| Error::InvalidToken(token.into()))?;
        if value == 0 {
            return Err(Error::NonPositive(token.into()));
        }
        let value = u32::try_from(value).map_err(|_| Error::LetterTooLarge(value))?;
        letters.push(value);
    }
    if letters.is_empty() {
        return Err(Error::Empty);
    }
    Ok(Letters {
        letters,
        compact: false,
    })
}

/// Writes `values` in canonical form. Zeros are allowed (embeddings use them).
pub(crate) fn write_sequence(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    if values.iter().all(|&v| v <= 9) {
        for &v in values {
            f.write_char(char::from_digit(v, 10).expect("single digit"))?;
        }
    } else {
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{v}")?;
        }
        // A lone multi-digit letter would otherwise read back as digits.
        if values.len() == 1 {
            f.write_char(',')?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_and_delimited_forms() {
        assert_eq!(parse_letters("2132").unwrap().letters, vec![2, 1, 3, 2]);
        assert_eq!(
            parse_letters(" 10, 2 3\t4 ").unwrap().letters,
            vec![10, 2, 3, 4]
        );
        assert!(!parse_letters("1,2").unwrap().compact);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert_eq!(parse_letters("   ").err(), Some(Error::Empty));
        assert_eq!(parse_letters(",,").err(), Some(Error::Empty));
        assert!(matches!(parse_letters("120"), Err(Error::NonPositive(_))));
        assert!(matches!(parse_letters("1,-2"), Err(Error::NonPositive(_))));
        assert!(matches!(parse_letters("1a"), Err(Error::InvalidToken(_))));
        assert!(matches!(
            parse_letters("1,99999999999"),
            Err(Error::LetterTooLarge(_))
        ));
    }

    struct Seq(Vec<u32>);

    impl fmt::Display for Seq {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_sequence(f, &self.0)
        }
    }

    #[test]
    fn written_forms_read_back() {
        for values in [vec![3, 1, 2], vec![10], vec![1, 10], vec![0, 2, 0]] {
            let text = Seq(values.clone()).to_string();
            if values.contains(&0) {
                assert_eq!(text, "020");
            } else {
                assert_eq!(parse_letters(&text).unwrap().letters, values, "{text}");
            }
        }
        assert_eq!(Seq(vec![10]).to_string(), "10,");
    }
}

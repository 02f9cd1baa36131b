//! Alphabet, free-monoid words and their text format.
//!
//! Words are written as whitespace-separated tokens `h<k>` (for `η_k`) and
//! `e<k>` (for `ε_k`); the lone token `1` is the empty word. On input the
//! Unicode letters `η` and `ε` are accepted as well and whitespace between
//! tokens is optional, so `ε0η0` parses the same as `e0 h0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Generator index. The alphabet is `{η_k, ε_k : k ∈ ℕ}`.
pub type Index = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Eta,
    Eps,
}

/// One letter of the alphabet.
///
/// Ordering is `(kind, index)` with every η before every ε; it is only used
/// to make enumerations reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: Kind,
    pub index: Index,
}

impl Generator {
    pub const fn eta(index: Index) -> Self {
        Generator {
            kind: Kind::Eta,
            index,
        }
    }

    pub const fn eps(index: Index) -> Self {
        Generator {
            kind: Kind::Eps,
            index,
        }
    }

    pub fn is_eta(self) -> bool {
        self.kind == Kind::Eta
    }

    pub fn is_eps(self) -> bool {
        self.kind == Kind::Eps
    }

    /// Weight of the letter under the degree morphism: `index + 1`.
    pub fn degree(self) -> u128 {
        u128::from(self.index) + 1
    }

    /// The same letter with its index raised by `by`.
    ///
    /// # Panics
    ///
    /// If the index would leave the `u64` range.
    pub fn shifted(self, by: Index) -> Self {
        let index = self
            .index
            .checked_add(by)
            .expect("generator index overflowed u64");
        Generator { index, ..self }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Eta => write!(f, "h{}", self.index),
            Kind::Eps => write!(f, "e{}", self.index),
        }
    }
}

/// An element of the free monoid on the alphabet. The empty word is `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Generator>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Free-monoid product: the letters of `self` followed by those of `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The degree morphism into `(ℕ, +)`: each letter contributes `index + 1`.
    pub fn degree(&self) -> u128 {
        self.0.iter().map(|g| g.degree()).sum()
    }

    /// Letterwise index shift by `by`.
    pub fn shifted(&self, by: Index) -> Word {
        Word(self.0.iter().map(|g| g.shifted(by)).collect())
    }

    /// Replaces the `len` letters starting at `at` by `with`.
    pub fn splice(&self, at: usize, len: usize, with: &[Generator]) -> Word {
        let mut letters = Vec::with_capacity(self.len() - len + with.len());
        letters.extend_from_slice(&self.0[..at]);
        letters.extend_from_slice(with);
        letters.extend_from_slice(&self.0[at + len..]);
        Word(letters)
    }

    pub fn largest_index(&self) -> Option<Index> {
        self.0.iter().map(|g| g.index).max()
    }
}

impl From<Vec<Generator>> for Word {
    fn from(letters: Vec<Generator>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<T: IntoIterator<Item = Generator>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, g) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input (write `1` for the identity)")]
    Empty,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("missing index after {0:?}")]
    MissingIndex(char),
    #[error("negative index")]
    NegativeIndex,
    #[error("index out of range")]
    IndexOverflow,
    #[error("`1` must stand alone")]
    IdentityMixed,
}

/// A rejected word, with the byte offset of the first bad token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad word at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }
}

pub fn parse(text: &str) -> Result<Word, ParseError> {
    let mut letters = Vec::new();
    let mut identity_at = None;
    let mut chars = text.char_indices().peekable();

    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        chars.next();
        let kind = match c {
            'h' | 'η' => Kind::Eta,
            'e' | 'ε' => Kind::Eps,
            '1' => {
                if matches!(chars.peek(), Some((_, d)) if d.is_ascii_digit()) {
                    return Err(ParseError::at(start, ParseErrorKind::UnexpectedChar(c)));
                }
                if identity_at.is_some() || !letters.is_empty() {
                    return Err(ParseError::at(start, ParseErrorKind::IdentityMixed));
                }
                identity_at = Some(start);
                continue;
            }
            other => return Err(ParseError::at(start, ParseErrorKind::UnexpectedChar(other))),
        };
        if let Some(at) = identity_at {
            return Err(ParseError::at(at, ParseErrorKind::IdentityMixed));
        }

        let mut digits_end = None;
        while let Some(&(pos, d)) = chars.peek() {
            if !d.is_ascii_digit() {
                break;
            }
            digits_end = Some(pos + 1);
            chars.next();
        }
        let Some(end) = digits_end else {
            let kind = match chars.peek() {
                Some((_, '-')) => ParseErrorKind::NegativeIndex,
                _ => ParseErrorKind::MissingIndex(c),
            };
            return Err(ParseError::at(start, kind));
        };
        let digits = &text[start + c.len_utf8()..end];
        let index = digits
            .parse::<Index>()
            .map_err(|_| ParseError::at(start, ParseErrorKind::IndexOverflow))?;
        letters.push(Generator { kind, index });
    }

    if letters.is_empty() && identity_at.is_none() {
        return Err(ParseError::at(0, ParseErrorKind::Empty));
    }
    Ok(Word(letters))
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// ASCII rendering, identical to `Display`.
pub fn print(w: &Word) -> String {
    w.to_string()
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// The letters `η_0..=η_max_index` and `ε_0..=ε_max_index`, in `Ord` order.
pub fn alphabet(max_index: Index) -> Vec<Generator> {
    (0..=max_index)
        .map(Generator::eta)
        .chain((0..=max_index).map(Generator::eps))
        .collect()
}

/// Every word of length at most `max_len` over [`alphabet`]`(max_index)`,
/// ordered by length and then lexicographically.
pub fn all_words(max_len: usize, max_index: Index) -> Vec<Word> {
    let letters = alphabet(max_index);
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &g in &letters {
                let mut v = w.0.clone();
                v.push(g);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(Word::empty().concat(&w("h0")), w("h0"));
        assert_eq!(w("h0").concat(&w("e0")).to_string(), "h0 e0");
        assert_eq!(w("e0 h1").concat(&w("e2")).to_string(), "e0 h1 e2");
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Word::empty().degree(), 0);
        assert_eq!(w("e0 h0").degree(), 2);
        assert_eq!(w("h2 e0").degree(), 4);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            w("h0 e2 h1").letters(),
            &[Generator::eta(0), Generator::eps(2), Generator::eta(1)]
        );
        assert!(w("1").is_empty());
        assert_eq!(w("ε0η0").letters(), &[Generator::eps(0), Generator::eta(0)]);
        assert_eq!(w("  h12e3\th0 ").to_string(), "h12 e3 h0");
        assert_eq!(w("h007").to_string(), "h7");
    }

    #[test]
    fn print_examples() {
        assert_eq!(print(&Word::empty()), "1");
        assert_eq!(
            print(&Word::from_letters([Generator::eta(0), Generator::eps(0)])),
            "h0 e0"
        );
        assert_eq!(print(&Word::from_letters([Generator::eps(3)])), "e3");
    }

    #[test]
    fn parse_rejects_with_offsets() {
        let err = |s: &str| parse(s).unwrap_err();
        assert_eq!(
            err("h0 x1"),
            ParseError::at(3, ParseErrorKind::UnexpectedChar('x'))
        );
        assert_eq!(
            err("h0 e"),
            ParseError::at(3, ParseErrorKind::MissingIndex('e'))
        );
        assert_eq!(err("h-1"), ParseError::at(0, ParseErrorKind::NegativeIndex));
        assert_eq!(
            err("h0 1"),
            ParseError::at(3, ParseErrorKind::IdentityMixed)
        );
        assert_eq!(
            err("1 h0"),
            ParseError::at(0, ParseErrorKind::IdentityMixed)
        );
        assert_eq!(err("1 1"), ParseError::at(2, ParseErrorKind::IdentityMixed));
        assert_eq!(
            err("12"),
            ParseError::at(0, ParseErrorKind::UnexpectedChar('1'))
        );
        assert_eq!(err("   "), ParseError::at(0, ParseErrorKind::Empty));
        assert_eq!(
            err("η0 ε"),
            ParseError::at(4, ParseErrorKind::MissingIndex('ε'))
        );
        assert_eq!(
            err("e99999999999999999999999"),
            ParseError::at(0, ParseErrorKind::IndexOverflow)
        );
    }

    #[test]
    fn large_indices_roundtrip() {
        let big = Word::from_letters([Generator::eta(u64::MAX), Generator::eps(u64::MAX - 1)]);
        assert_eq!(parse(&big.to_string()).unwrap(), big);
        assert_eq!(big.degree(), 2 * u128::from(u64::MAX) + 1);
    }

    #[test]
    fn degree_is_additive_exhaustively() {
        let words = all_words(3, 3);
        for u in words.iter().step_by(7) {
            for v in &words {
                assert_eq!(u.concat(v).degree(), u.degree() + v.degree());
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        // 1 + 4 + 16 + 64
        let words = all_words(3, 1);
        assert_eq!(words.len(), 85);
        assert!(words
            .windows(2)
            .all(|p| (p[0].len(), &p[0]) < (p[1].len(), &p[1])));
    }

    #[test]
    fn serde_uses_text_format() {
        let json = serde_json::to_string(&w("h0 e0")).unwrap();
        assert_eq!(json, "\"h0 e0\"");
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w("h0 e0"));
    }
}

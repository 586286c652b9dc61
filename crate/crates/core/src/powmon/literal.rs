//! Set literals such as `{0,1,3}` or `{(0,0),(1,-2;1)}`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::ambient::{GroupElement, GroupSignature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

/// Byte-oriented cursor over ASCII input; positions are byte offsets.
pub(crate) struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor { text: text.as_bytes(), pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    pub(crate) fn eat_keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    pub(crate) fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.text.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }

    fn integer_list(&mut self, close: &[u8]) -> Result<Vec<BigInt>, ParseError> {
        let mut out = Vec::new();
        if self.peek().is_some_and(|c| close.contains(&c)) {
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            if !self.eat(b',') {
                return Ok(out);
            }
        }
    }

    /// A bare integer (rank-one free signatures) or `(free…;torsion…)`.
    pub(crate) fn element(&mut self, sig: &GroupSignature) -> Result<GroupElement, ParseError> {
        let start = self.pos();
        let (free, torsion) = if self.eat(b'(') {
            let free = self.integer_list(b";)")?;
            let torsion = if self.eat(b';') { self.integer_list(b")")? } else { Vec::new() };
            self.expect(b')')?;
            (free, torsion)
        } else {
            (vec![self.integer()?], Vec::new())
        };
        if free.len() != sig.free_rank() || torsion.len() != sig.torsion_orders().len() {
            return Err(ParseError::new(
                start,
                format!(
                    "element has {} free and {} torsion coordinates, signature {sig} needs {} and {}",
                    free.len(),
                    torsion.len(),
                    sig.free_rank(),
                    sig.torsion_orders().len()
                ),
            ));
        }
        Ok(sig.element(free, torsion).expect("coordinate counts checked"))
    }

    pub(crate) fn set(&mut self, sig: &GroupSignature) -> Result<Vec<GroupElement>, ParseError> {
        self.expect(b'{')?;
        let mut out = Vec::new();
        if self.eat(b'}') {
            return Ok(out);
        }
        loop {
            out.push(self.element(sig)?);
            if self.eat(b'}') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }
}

/// Parses a whole set literal over `sig`.
pub fn parse_set_literal(sig: &GroupSignature, text: &str) -> Result<Vec<GroupElement>, ParseError> {
    let mut cursor = Cursor::new(text);
    let set = cursor.set(sig)?;
    if !cursor.at_end() {
        return Err(cursor.error("trailing input after set literal"));
    }
    Ok(set)
}

/// Parses a single element literal over `sig`.
pub fn parse_element(sig: &GroupSignature, text: &str) -> Result<GroupElement, ParseError> {
    let mut cursor = Cursor::new(text);
    let u = cursor.element(sig)?;
    if !cursor.at_end() {
        return Err(cursor.error("trailing input after element"));
    }
    Ok(u)
}

pub fn format_set(elements: &[GroupElement]) -> String {
    let parts: Vec<String> = elements.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_and_tuples() {
        let z = GroupSignature::free(1);
        assert_eq!(parse_set_literal(&z, "{0, 1,-3}").unwrap().len(), 3);
        let sig = GroupSignature::new(2, vec![BigInt::from(3)]).unwrap();
        let set = parse_set_literal(&sig, "{(0,0;0),(1,-2;4)}").unwrap();
        assert_eq!(set[1].torsion(), &[BigInt::from(1)]);
        assert_eq!(format_set(&set), "{(0,0;0),(1,-2;1)}");
    }

    #[test]
    fn errors_carry_position() {
        let z2 = GroupSignature::free(2);
        let err = parse_set_literal(&z2, "{(0,0),(1,x)}").unwrap_err();
        assert_eq!(err.position, 10);
        let err = parse_set_literal(&z2, "{(0,0),(1)}").unwrap_err();
        assert_eq!(err.position, 7);
        assert!(parse_set_literal(&z2, "{(0,0)} extra").is_err());
    }
}

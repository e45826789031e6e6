//! Text form of group elements.
//!
//! ```text
//! expr  := term ("*" term)*
//! term  := "t[" int ("," int)* "]" | "s" index | "omega(" int ")" | "e"
//! ```
//!
//! Whitespace around `*` and inside brackets is ignored. The value of an
//! expression is the product of its terms from left to right.

use crate::affine_weyl::{AffineWeylElt, AffineWeylGroup};
use crate::error::{Error, Result};
use crate::root_datum::Coweight;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        self.skip_ws();
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected '{lit}'"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        match text.parse::<i64>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }
}

/// Parses an element expression in the group `g`.
pub fn parse_element(g: &AffineWeylGroup, text: &str) -> Result<AffineWeylElt> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut acc = g.identity();
    loop {
        cur.skip_ws();
        let term = parse_term(g, &mut cur)?;
        acc = g.mul(&acc, &term);
        cur.skip_ws();
        match cur.peek() {
            None => return Ok(acc),
            Some(b'*') => cur.pos += 1,
            Some(_) => return cur.err("expected '*' or end of input"),
        }
    }
}

fn parse_term(g: &AffineWeylGroup, cur: &mut Cursor<'_>) -> Result<AffineWeylElt> {
    let start = cur.pos;
    if cur.eat("t[") {
        let mut coords = vec![cur.int()?];
        loop {
            cur.skip_ws();
            if cur.eat("]") {
                break;
            }
            cur.expect(",")?;
            coords.push(cur.int()?);
        }
        if coords.len() != g.rank() {
            return Err(Error::RankMismatch { expected: g.rank(), got: coords.len() });
        }
        Ok(g.translation(Coweight::new(&coords)))
    } else if cur.eat("omega(") {
        let j = cur.int()?;
        cur.expect(")")?;
        g.omega_element(j).map_err(|e| Error::Parse { pos: start, msg: e.to_string() })
    } else if cur.eat("s") {
        let digits_start = cur.pos;
        while matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            cur.pos += 1;
        }
        let idx: usize = std::str::from_utf8(&cur.src[digits_start..cur.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Parse { pos: digits_start, msg: "expected a reflection index".into() })?;
        if idx >= g.num_simple() {
            return Err(Error::Parse {
                pos: digits_start,
                msg: format!("reflection index {idx} out of range 0..={}", g.num_simple() - 1),
            });
        }
        Ok(g.simple_reflection(idx).clone())
    } else if cur.eat("e") {
        Ok(g.identity())
    } else {
        cur.err("expected 't[', 's', 'omega(' or 'e'")
    }
}

/// Parses a comma-separated coweight such as `1,0,-1`.
pub fn parse_coweight(g: &AffineWeylGroup, text: &str) -> Result<Coweight> {
    let inner = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let mut coords = Vec::new();
    let mut offset = 0;
    for part in inner.split(',') {
        let v: i64 = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse { pos: offset, msg: format!("'{}' is not an integer", part.trim()) })?;
        coords.push(v);
        offset += part.len() + 1;
    }
    if coords.len() != g.rank() {
        return Err(Error::RankMismatch { expected: g.rank(), got: coords.len() });
    }
    Ok(Coweight::new(&coords))
}

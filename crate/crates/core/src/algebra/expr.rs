//! A small expression language over `ℝ_max` and `𝕊`.
//!
//! ```text
//! expr    := term ('+' term)*          ⊕
//! term    := power ('*' power)*        ⊗
//! power   := atom ('^' integer)?
//! atom    := number | 'eps' | 'p:' number | 'm:' number | 'b:' number | '(' expr ')'
//! ```
//!
//! A bare number `r` is `⊕r`; `p:`, `m:` and `b:` tag `⊕r`, `⊖r` and `r•`.
//! Tagged literals are rejected in [`Mode::Mpa`].

use std::str::FromStr;

use super::{ExtReal, SElem, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Plain max-plus arithmetic in `ℝ_max`.
    Mpa,
    /// Symmetrized arithmetic in `𝕊`.
    Smpa,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mpa" => Ok(Mode::Mpa),
            "smpa" => Ok(Mode::Smpa),
            other => Err(Error::InvalidValue(format!("unknown mode `{other}`"))),
        }
    }
}

/// Parses and evaluates `source`.
pub fn eval_expr(source: &str, mode: Mode) -> Result<SElem> {
    let mut parser = Parser { src: source.as_bytes(), pos: 0, mode };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: Mode,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SElem> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.oplus(self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SElem> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = acc.otimes(self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<SElem> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let k = self.integer()?;
            return base.power(k).map_err(|e| match e {
                Error::ZeroToNegativePower { .. } | Error::BalancedNegativePower { .. } => {
                    Error::Parse { pos: start, msg: e.to_string() }
                }
                other => other,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SElem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(v)
            }
            Some(b'e') => {
                if self.src[self.pos..].starts_with(b"eps") {
                    self.pos += 3;
                    Ok(SElem::ZERO)
                } else {
                    Err(self.error("unknown identifier"))
                }
            }
            Some(c @ (b'p' | b'm' | b'b')) => {
                let start = self.pos;
                if self.src.get(self.pos + 1) != Some(&b':') {
                    return Err(self.error("expected `:` after sign tag"));
                }
                self.pos += 2;
                let r = self.number()?;
                if self.mode == Mode::Mpa {
                    let literal = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                    return Err(Error::ModeViolation { pos: start, literal });
                }
                let sign = match c {
                    b'p' => Sign::Plus,
                    b'm' => Sign::Minus,
                    _ => Sign::Balanced,
                };
                Ok(SElem::new(sign, r))
            }
            Some(c) if c.is_ascii_digit() || c == b'-' || c == b'.' => {
                Ok(SElem::new(Sign::Plus, self.number()?))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn scan_number(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src;
        let mut i = self.pos;
        if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
            i += 1;
        }
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
            i += 1;
        }
        // Scientific notation, but only when digits follow the `e`.
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'-' || bytes[j] == b'+') {
                j += 1;
            }
            if j < bytes.len() && bytes[j].is_ascii_digit() {
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        self.pos = i;
        std::str::from_utf8(&bytes[start..i]).unwrap_or("")
    }

    fn number(&mut self) -> Result<ExtReal> {
        let start = self.pos;
        let text = self.scan_number().to_string();
        let x: f64 = text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("invalid number `{text}`"),
        })?;
        ExtReal::new(x).map_err(|e| Error::Parse { pos: start, msg: e.to_string() })
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        let text = self.scan_number().to_string();
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("power must be an integer, got `{text}`"),
        })
    }
}

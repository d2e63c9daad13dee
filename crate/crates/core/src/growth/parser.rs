//! Recursive-descent parser for the growth-spec mini-language.
//!
//! ```text
//! spec := "pow" ":" float | "exp" ":" float
//!       | "table" ":" "[" float ("," float)* "]" ("+" float)?
//!       | "shift" "(" spec ")" | "ptw" "(" spec "," spec ")" | "kang" "(" spec "," spec ")"
//!       | "offset" "(" spec "," float ")" | "lift" "(" spec "," float ")"
//!       | "sub" "(" spec "," int ")" | "rem" "(" spec "," int ")"
//! ```
//!
//! The optional `+ float` after a table is the arithmetic extension step
//! applied past the prefix (e.g. `table:[1,1,2,3,5]+1`). The float literals
//! `e` and `pi` are accepted as the usual constants. Errors carry the byte
//! position and the expected token so the CLI can print caret diagnostics.

use super::{GrowthError, GrowthFunction};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("at position {pos}: expected {expected}, found {found:?}")]
    Unexpected { pos: usize, expected: String, found: String },
    #[error("at position {pos}: {source}")]
    Invalid { pos: usize, source: GrowthError },
}

impl ParseError {
    /// Byte offset of the error in the input.
    pub fn position(&self) -> usize {
        match self {
            ParseError::Unexpected { pos, .. } | ParseError::Invalid { pos, .. } => *pos,
        }
    }
}

pub fn parse_growth_spec(input: &str) -> Result<GrowthFunction, ParseError> {
    let mut p = Parser { input, pos: 0 };
    let spec = p.parse_spec()?;
    p.skip_ws();
    if p.pos < p.input.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found: String = self.rest().chars().take(12).collect();
        ParseError::Unexpected {
            pos: self.pos,
            expected: expected.to_string(),
            found: if found.is_empty() { "end of input".to_string() } else { found },
        }
    }

    fn invalid(&self, pos: usize, source: GrowthError) -> ParseError {
        ParseError::Invalid { pos, source }
    }

    fn eat(&mut self, token: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.unexpected(&format!("{token:?}")))
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().chars().take_while(|c| c.is_ascii_alphabetic()).count();
        if len == 0 {
            return Err(self.unexpected("an operator name"));
        }
        self.pos += len;
        Ok(&self.input[start..start + len])
    }

    fn float(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        // Named constants first so "e" in "exp" contexts parses naturally.
        for (name, value) in [("pi", std::f64::consts::PI), ("e", std::f64::consts::E)] {
            if self.rest().starts_with(name) {
                let after = &self.rest()[name.len()..];
                if !after.starts_with(|c: char| c.is_ascii_alphanumeric()) {
                    self.pos += name.len();
                    return Ok(value);
                }
            }
        }
        let len = self
            .rest()
            .chars()
            .take_while(|&c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
            .count();
        let text = &self.input[start..start + len];
        match text.parse::<f64>() {
            Ok(v) if len > 0 => {
                self.pos += len;
                Ok(v)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().chars().take_while(|c| c.is_ascii_digit()).count();
        let text = &self.input[start..start + len];
        match text.parse::<u64>() {
            Ok(v) if len > 0 => {
                self.pos += len;
                Ok(v)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn parse_spec(&mut self) -> Result<GrowthFunction, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let name = self.ident()?;
        match name {
            "pow" => {
                self.eat(":")?;
                let r = self.float()?;
                GrowthFunction::power(r).map_err(|e| self.invalid(at, e))
            }
            "exp" => {
                self.eat(":")?;
                let b = self.float()?;
                GrowthFunction::exponential(b).map_err(|e| self.invalid(at, e))
            }
            "table" => {
                self.eat(":")?;
                self.eat("[")?;
                let mut prefix = vec![self.float()?];
                loop {
                    self.skip_ws();
                    if self.rest().starts_with(',') {
                        self.pos += 1;
                        prefix.push(self.float()?);
                    } else {
                        break;
                    }
                }
                self.eat("]")?;
                self.skip_ws();
                let step = if self.rest().starts_with('+') {
                    self.pos += 1;
                    Some(self.float()?)
                } else {
                    None
                };
                GrowthFunction::table(prefix, step).map_err(|e| self.invalid(at, e))
            }
            "shift" => {
                self.eat("(")?;
                let inner = self.parse_spec()?;
                self.eat(")")?;
                Ok(GrowthFunction::shift(inner))
            }
            "ptw" => {
                let (f, g) = self.two_specs()?;
                Ok(GrowthFunction::pointwise_product(f, g))
            }
            "kang" => {
                let (f, g) = self.two_specs()?;
                Ok(GrowthFunction::kang_product(f, g))
            }
            "offset" => {
                self.eat("(")?;
                let f = self.parse_spec()?;
                self.eat(",")?;
                let lambda = self.float()?;
                self.eat(")")?;
                GrowthFunction::offset(f, lambda).map_err(|e| self.invalid(at, e))
            }
            "lift" => {
                self.eat("(")?;
                let f = self.parse_spec()?;
                self.eat(",")?;
                let kappa = self.float()?;
                self.eat(")")?;
                GrowthFunction::power_lift(f, kappa).map_err(|e| self.invalid(at, e))
            }
            "sub" => {
                self.eat("(")?;
                let f = self.parse_spec()?;
                self.eat(",")?;
                let k = self.integer()?;
                self.eat(")")?;
                GrowthFunction::subsample(f, k).map_err(|e| self.invalid(at, e))
            }
            "rem" => {
                self.eat("(")?;
                let f = self.parse_spec()?;
                self.eat(",")?;
                let k = self.integer()?;
                self.eat(")")?;
                GrowthFunction::interleave_remainder(f, k).map_err(|e| self.invalid(at, e))
            }
            other => Err(ParseError::Unexpected {
                pos: at,
                expected: "one of pow, exp, table, shift, ptw, kang, offset, lift, sub, rem"
                    .to_string(),
                found: other.to_string(),
            }),
        }
    }

    fn two_specs(&mut self) -> Result<(GrowthFunction, GrowthFunction), ParseError> {
        self.eat("(")?;
        let f = self.parse_spec()?;
        self.eat(",")?;
        let g = self.parse_spec()?;
        self.eat(")")?;
        Ok((f, g))
    }
}

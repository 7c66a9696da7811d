//! Minimal cursor shared by the text parsers.

use crate::error::{Error, Result};

pub(crate) struct Cursor<'a> {
    pub src: &'a str,
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        self.err_at(self.pos, msg)
    }

    pub fn err_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::syntax(self.src[..pos].chars().count() + 1, msg)
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    pub fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphabetic() || (i > 0 && (c.is_ascii_digit() || c == '_'))))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected generator name"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    pub fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let mut len = 0;
        if rest.starts_with('-') {
            len = 1;
        }
        len += rest[len..].chars().take_while(char::is_ascii_digit).count();
        rest[..len]
            .parse()
            .inspect(|_| self.pos += len)
            .map_err(|_| self.err("expected integer"))
    }

    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    /// Consumes `c` if it is the next non-space character.
    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// A run of ASCII letters, possibly empty.
    pub fn letters(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .chars()
            .take_while(char::is_ascii_alphabetic)
            .count();
        self.pos += len;
        &self.src[start..start + len]
    }

    pub fn uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .chars()
            .take_while(char::is_ascii_digit)
            .count();
        self.src[start..start + len]
            .parse()
            .inspect(|_| self.pos += len)
            .map_err(|_| self.err("expected non-negative integer"))
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

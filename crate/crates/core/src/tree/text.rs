//! The bracket grammar for trees.
//!
//! ```text
//! labeled:  tree := "." | "(" INT ":" tree ("," INT ":" tree)* ")"
//! clear:    tree := "." | "(" tree ("," tree)* ")"
//! ```

use alloc::vec::Vec;
use core::fmt;

use super::{Bonsai, Variant};

/// Nested form used while parsing and for edits that need re-sorting.
#[derive(Clone, Debug, Default)]
pub(crate) struct Node {
    pub children: Vec<(u16, Node)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    DuplicateLabel,
    LabelOutOfRange,
    ArityExceeded,
    UnexpectedLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind:?} at byte {pos}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    variant: Variant,
}

impl Parser<'_> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            pos: self.pos,
        }
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(ParseErrorKind::Syntax))
        }
    }

    fn label(&mut self) -> Result<u16, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(ParseErrorKind::Syntax));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        let l: u32 = digits.parse().map_err(|_| ParseError {
            kind: ParseErrorKind::LabelOutOfRange,
            pos: start,
        })?;
        let m = self.variant.label_count() as u32;
        if l == 0 || l > m {
            return Err(ParseError {
                kind: ParseErrorKind::LabelOutOfRange,
                pos: start,
            });
        }
        Ok(l as u16)
    }

    fn tree(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Some(b'.') => {
                self.pos += 1;
                Ok(Node::default())
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let mut children = Vec::new();
                loop {
                    let at = self.pos;
                    let l = if self.variant.is_labeled() {
                        let l = self.label()?;
                        self.expect(b':')?;
                        if children.iter().any(|(k, _)| *k == l) {
                            return Err(ParseError {
                                kind: ParseErrorKind::DuplicateLabel,
                                pos: at,
                            });
                        }
                        l
                    } else {
                        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                            return Err(self.err(ParseErrorKind::UnexpectedLabel));
                        }
                        0
                    };
                    children.push((l, self.tree()?));
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err(ParseErrorKind::Syntax)),
                    }
                }
                if !self.variant.arity_ok(children.len()) {
                    return Err(ParseError {
                        kind: ParseErrorKind::ArityExceeded,
                        pos: open,
                    });
                }
                Ok(Node { children })
            }
            _ => Err(self.err(ParseErrorKind::Syntax)),
        }
    }
}

pub(crate) fn parse(text: &str, variant: Variant) -> Result<Bonsai, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        variant,
    };
    let node = p.tree()?;
    if p.peek().is_some() {
        return Err(p.err(ParseErrorKind::Syntax));
    }
    Ok(Bonsai::from_node(&node, variant.is_labeled()))
}

impl Bonsai {
    /// Parse a tree in bracket notation, canonicalizing label order.
    pub fn parse(text: &str, variant: Variant) -> Result<Bonsai, ParseError> {
        parse(text, variant)
    }
}

impl fmt::Display for Bonsai {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn walk(t: &Bonsai, v: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let ch = t.children(v);
            if ch.is_empty() {
                return f.write_str(".");
            }
            f.write_str("(")?;
            for (i, &w) in ch.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                if t.label(w) > 0 {
                    write!(f, "{}:", t.label(w))?;
                }
                walk(t, w, f)?;
            }
            f.write_str(")")
        }
        walk(self, 0, f)
    }
}

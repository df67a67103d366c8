//! Linear transcript notation, a small LaTeX-like subset:
//!
//! ```text
//! y=\frac{x^{2}+4}{3}      fractions, exponents
//! \sqrt{x}+(x-2)^5         roots, round brackets, single-character powers
//! [1,2;3,4]\times[1;2]     matrices: ',' between entries, ';' between rows
//! ```
//!
//! Letters are single symbols, digit runs are one symbol, `-` reads as the
//! minus sign `−`, `\times` `\cdot` `\pm` `\div` name operators, `{..}`
//! groups without adding a node, and `[..]` with no `,` or `;` is a square
//! bracket pair. Whitespace only separates tokens.

use thiserror::Error;

use crate::tree::{AnswerTree, Bracket};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {position}")]
pub struct TranscriptError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

/// Parses a transcript into its normalized tree.
pub fn parse_transcript(text: &str) -> Result<AnswerTree, TranscriptError> {
    let mut p = Parser { src: text, pos: 0 };
    let items = p.sequence(&[])?;
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected '{c}'")));
    }
    if items.is_empty() {
        return Err(p.error("empty transcript"));
    }
    Ok(AnswerTree::Sequence(items).normalized())
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> TranscriptError {
        TranscriptError { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.src[self.pos..].chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect(&mut self, want: char) -> Result<(), TranscriptError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    /// Terms up to (not including) a stop character or the end.
    fn sequence(&mut self, stops: &[char]) -> Result<Vec<AnswerTree>, TranscriptError> {
        let mut items: Vec<AnswerTree> = Vec::new();
        while let Some(c) = self.peek() {
            if stops.contains(&c) {
                break;
            }
            if c == '^' {
                let Some(base) = items.pop() else {
                    return Err(self.error("'^' needs something to raise"));
                };
                self.bump();
                let power = self.power()?;
                items.push(AnswerTree::exponent(base, power));
                continue;
            }
            items.push(self.atom()?);
        }
        Ok(items)
    }

    fn nonempty(&mut self, items: Vec<AnswerTree>, what: &str) -> Result<AnswerTree, TranscriptError> {
        if items.is_empty() {
            return Err(self.error(format!("empty {what}")));
        }
        Ok(AnswerTree::Sequence(items).normalized())
    }

    fn group(&mut self, what: &str) -> Result<AnswerTree, TranscriptError> {
        self.expect('{')?;
        let items = self.sequence(&['}'])?;
        let node = self.nonempty(items, what)?;
        self.expect('}')?;
        Ok(node)
    }

    fn power(&mut self) -> Result<AnswerTree, TranscriptError> {
        match self.peek() {
            Some('{') => self.group("exponent"),
            Some(c) if c.is_ascii_digit() => {
                self.bump();
                Ok(AnswerTree::sym(c.to_string()))
            }
            Some(c) if c.is_alphabetic() => {
                self.bump();
                Ok(AnswerTree::sym(c.to_string()))
            }
            Some('\\') => self.command(),
            Some(c) => Err(self.error(format!("unexpected '{c}' after '^'"))),
            None => Err(self.error("missing exponent")),
        }
    }

    fn command(&mut self) -> Result<AnswerTree, TranscriptError> {
        let start = self.pos;
        self.bump();
        let name_len = self.src[self.pos..].chars().take_while(|c| c.is_ascii_alphabetic()).count();
        let name = &self.src[self.pos..self.pos + name_len];
        self.pos += name_len;
        match name {
            "frac" => {
                let num = self.group("numerator")?;
                let den = self.group("denominator")?;
                Ok(AnswerTree::fraction(num, den))
            }
            "sqrt" => Ok(AnswerTree::root(self.group("radicand")?)),
            "times" => Ok(AnswerTree::sym("×")),
            "cdot" => Ok(AnswerTree::sym("·")),
            "pm" => Ok(AnswerTree::sym("±")),
            "div" => Ok(AnswerTree::sym("÷")),
            "" => Err(TranscriptError { position: start, message: "'\\' must start a command".into() }),
            other => Err(TranscriptError { position: start, message: format!("unknown command \\{other}") }),
        }
    }

    fn atom(&mut self) -> Result<AnswerTree, TranscriptError> {
        let c = self.peek().expect("caller checked for input");
        match c {
            '\\' => self.command(),
            '{' => {
                self.bump();
                let items = self.sequence(&['}'])?;
                let node = self.nonempty(items, "group")?;
                self.expect('}')?;
                Ok(node)
            }
            '(' => {
                self.bump();
                let items = self.sequence(&[')'])?;
                let body = self.nonempty(items, "brackets")?;
                self.expect(')')?;
                Ok(AnswerTree::bracketed(body, Bracket::Round))
            }
            '[' => self.square(),
            '}' | ')' | ']' | ',' | ';' => Err(self.error(format!("unexpected '{c}'"))),
            '-' => {
                self.bump();
                Ok(AnswerTree::sym("−"))
            }
            c if c.is_ascii_digit() => {
                let len = self.src[self.pos..].chars().take_while(char::is_ascii_digit).count();
                let text = &self.src[self.pos..self.pos + len];
                self.pos += len;
                Ok(AnswerTree::sym(text))
            }
            c => {
                self.bump();
                Ok(AnswerTree::sym(c.to_string()))
            }
        }
    }

    fn square(&mut self) -> Result<AnswerTree, TranscriptError> {
        self.bump();
        let mut rows: Vec<Vec<AnswerTree>> = vec![Vec::new()];
        let mut separated = false;
        loop {
            let items = self.sequence(&[',', ';', ']'])?;
            let cell = self.nonempty(items, "matrix entry")?;
            rows.last_mut().unwrap().push(cell);
            match self.peek() {
                Some(',') => {
                    separated = true;
                    self.bump();
                }
                Some(';') => {
                    separated = true;
                    self.bump();
                    rows.push(Vec::new());
                }
                Some(']') => break,
                _ => return Err(self.error("unclosed '['")),
            }
        }
        if !separated {
            self.bump();
            return Ok(AnswerTree::bracketed(rows.pop().unwrap().pop().unwrap(), Bracket::Square));
        }
        let cols = rows[0].len();
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(self.error(format!("matrix row {} has {} entries, expected {cols}", bad + 1, rows[bad].len())));
        }
        self.bump();
        Ok(AnswerTree::Matrix(rows))
    }
}

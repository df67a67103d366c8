//! Structured transcriptions of equations.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracket {
    Round,
    Square,
}

impl Bracket {
    pub fn delimiters(self) -> (char, char) {
        match self {
            Bracket::Round => ('(', ')'),
            Bracket::Square => ('[', ']'),
        }
    }
}

/// An equation as an ordered expression tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnswerTree {
    Symbol(String),
    Exponent { base: Box<AnswerTree>, power: Box<AnswerTree> },
    Fraction { num: Box<AnswerTree>, den: Box<AnswerTree> },
    Root(Box<AnswerTree>),
    Bracketed { body: Box<AnswerTree>, shape: Bracket },
    /// Row-major entries.
    Matrix(Vec<Vec<AnswerTree>>),
    Sequence(Vec<AnswerTree>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("symbol with empty text")]
    EmptySymbol,
    #[error("matrix with no entries")]
    EmptyMatrix,
    #[error("matrix row {row} has {len} entries, expected {expected}")]
    RaggedMatrix { row: usize, len: usize, expected: usize },
}

impl AnswerTree {
    pub fn sym(text: impl Into<String>) -> Self {
        AnswerTree::Symbol(text.into())
    }

    pub fn exponent(base: AnswerTree, power: AnswerTree) -> Self {
        AnswerTree::Exponent { base: Box::new(base), power: Box::new(power) }
    }

    pub fn fraction(num: AnswerTree, den: AnswerTree) -> Self {
        AnswerTree::Fraction { num: Box::new(num), den: Box::new(den) }
    }

    pub fn root(radicand: AnswerTree) -> Self {
        AnswerTree::Root(Box::new(radicand))
    }

    pub fn bracketed(body: AnswerTree, shape: Bracket) -> Self {
        AnswerTree::Bracketed { body: Box::new(body), shape }
    }

    pub fn validate(&self) -> Result<(), TreeError> {
        match self {
            AnswerTree::Symbol(t) if t.is_empty() => Err(TreeError::EmptySymbol),
            AnswerTree::Symbol(_) => Ok(()),
            AnswerTree::Exponent { base: a, power: b } | AnswerTree::Fraction { num: a, den: b } => {
                a.validate()?;
                b.validate()
            }
            AnswerTree::Root(a) | AnswerTree::Bracketed { body: a, .. } => a.validate(),
            AnswerTree::Matrix(rows) => {
                let expected = rows.first().map_or(0, Vec::len);
                if expected == 0 {
                    return Err(TreeError::EmptyMatrix);
                }
                for (row, r) in rows.iter().enumerate() {
                    if r.len() != expected {
                        return Err(TreeError::RaggedMatrix { row, len: r.len(), expected });
                    }
                    r.iter().try_for_each(AnswerTree::validate)?;
                }
                Ok(())
            }
            AnswerTree::Sequence(items) => items.iter().try_for_each(AnswerTree::validate),
        }
    }

    /// Nested sequences flattened and one-element sequences unwrapped, at
    /// every level. Two trees transcribe the same equation iff their
    /// normal forms are equal.
    pub fn normalized(&self) -> AnswerTree {
        match self {
            AnswerTree::Symbol(_) => self.clone(),
            AnswerTree::Exponent { base, power } => AnswerTree::exponent(base.normalized(), power.normalized()),
            AnswerTree::Fraction { num, den } => AnswerTree::fraction(num.normalized(), den.normalized()),
            AnswerTree::Root(r) => AnswerTree::root(r.normalized()),
            AnswerTree::Bracketed { body, shape } => AnswerTree::bracketed(body.normalized(), *shape),
            AnswerTree::Matrix(rows) => {
                AnswerTree::Matrix(rows.iter().map(|r| r.iter().map(AnswerTree::normalized).collect()).collect())
            }
            AnswerTree::Sequence(items) => {
                let mut flat = Vec::new();
                for item in items {
                    match item.normalized() {
                        AnswerTree::Sequence(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                if flat.len() == 1 {
                    flat.pop().unwrap()
                } else {
                    AnswerTree::Sequence(flat)
                }
            }
        }
    }

    /// The top-level terms: the items of a sequence, or the tree itself.
    pub fn terms(&self) -> &[AnswerTree] {
        match self {
            AnswerTree::Sequence(items) => items,
            other => std::slice::from_ref(other),
        }
    }

    /// Number of nodes, sequences excluded.
    pub fn size(&self) -> usize {
        match self {
            AnswerTree::Symbol(_) => 1,
            AnswerTree::Exponent { base: a, power: b } | AnswerTree::Fraction { num: a, den: b } => {
                1 + a.size() + b.size()
            }
            AnswerTree::Root(a) | AnswerTree::Bracketed { body: a, .. } => 1 + a.size(),
            AnswerTree::Matrix(rows) => 1 + rows.iter().flatten().map(AnswerTree::size).sum::<usize>(),
            AnswerTree::Sequence(items) => items.iter().map(AnswerTree::size).sum(),
        }
    }
}

fn symbol_source(text: &str) -> &str {
    match text {
        "−" => "-",
        "×" => "\\times",
        "·" => "\\cdot",
        "±" => "\\pm",
        "÷" => "\\div",
        other => other,
    }
}

fn write_group(f: &mut fmt::Formatter<'_>, t: &AnswerTree) -> fmt::Result {
    write!(f, "{{{t}}}")
}

/// Canonical transcript; parsing it back yields the normalized tree.
impl fmt::Display for AnswerTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnswerTree::Symbol(t) => f.write_str(symbol_source(t)),
            AnswerTree::Exponent { base, power } => {
                match base.as_ref() {
                    AnswerTree::Sequence(_) | AnswerTree::Exponent { .. } => write_group(f, base)?,
                    _ => write!(f, "{base}")?,
                }
                f.write_str("^")?;
                write_group(f, power)
            }
            AnswerTree::Fraction { num, den } => {
                f.write_str("\\frac")?;
                write_group(f, num)?;
                write_group(f, den)
            }
            AnswerTree::Root(r) => {
                f.write_str("\\sqrt")?;
                write_group(f, r)
            }
            AnswerTree::Bracketed { body, shape } => {
                let (open, close) = shape.delimiters();
                write!(f, "{open}{body}{close}")
            }
            AnswerTree::Matrix(rows) => {
                f.write_str("[")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    for (j, cell) in row.iter().enumerate() {
                        if j > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{cell}")?;
                    }
                }
                f.write_str("]")
            }
            AnswerTree::Sequence(items) => {
                let mut prev = String::new();
                for item in items {
                    let text = item.to_string();
                    let digit_run = prev.ends_with(|c: char| c.is_ascii_digit())
                        && text.starts_with(|c: char| c.is_ascii_digit());
                    let after_command = prev.starts_with('\\')
                        && prev[1..].chars().all(|c| c.is_ascii_alphabetic())
                        && text.starts_with(|c: char| c.is_ascii_alphabetic());
                    // Keeps numbers from merging and command names from growing.
                    if digit_run || after_command {
                        f.write_str(" ")?;
                    }
                    f.write_str(&text)?;
                    prev = text;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_flattens_and_unwraps() {
        let t = AnswerTree::Sequence(vec![
            AnswerTree::Sequence(vec![AnswerTree::sym("x")]),
            AnswerTree::Sequence(vec![AnswerTree::sym("+"), AnswerTree::Sequence(vec![AnswerTree::sym("1")])]),
        ]);
        assert_eq!(
            t.normalized(),
            AnswerTree::Sequence(vec![AnswerTree::sym("x"), AnswerTree::sym("+"), AnswerTree::sym("1")])
        );
        assert_eq!(AnswerTree::Sequence(vec![AnswerTree::sym("x")]).normalized(), AnswerTree::sym("x"));
    }

    #[test]
    fn validation() {
        assert_eq!(AnswerTree::sym("").validate(), Err(TreeError::EmptySymbol));
        let ragged = AnswerTree::Matrix(vec![vec![AnswerTree::sym("1")], vec![]]);
        assert!(matches!(ragged.validate(), Err(TreeError::RaggedMatrix { row: 1, .. })));
        assert_eq!(AnswerTree::Matrix(vec![]).validate(), Err(TreeError::EmptyMatrix));
    }

    #[test]
    fn display_separates_numbers_and_commands() {
        let t = AnswerTree::Sequence(vec![
            AnswerTree::sym("1"),
            AnswerTree::sym("2"),
            AnswerTree::sym("×"),
            AnswerTree::sym("x"),
        ]);
        assert_eq!(t.to_string(), "1 2\\times x");
    }
}

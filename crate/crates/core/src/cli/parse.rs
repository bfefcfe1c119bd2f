//! Concrete syntax for diagonal forms.
//!
//! ```text
//! form  := '<' [entry (',' entry)*] '>'
//! entry := ['-'] term ('*' term)*
//! term  := '1' | 's' | 'pi' | 'L' digits
//! ```
//!
//! Whitespace between tokens is ignored and `⟨ ⟩` are accepted for the brackets.
//! Output always uses ASCII and never a leading `-`.

use crate::base_groups::{CurveConfig, PicTorsionClass, UnitSquareClass};
use crate::error::{Result, WittError};
use crate::quadratic_forms::{DiagonalForm, Generator};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    cfg: &'a CurveConfig,
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.chars.len(), |&(i, _)| i)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(WittError::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, accepted: &[char], what: &str) -> Result<()> {
        match self.peek() {
            Some(c) if accepted.contains(&c) => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(format!("expected {what}, found '{c}'")),
            None => self.error(format!("expected {what}, found end of input")),
        }
    }

    fn form(&mut self) -> Result<DiagonalForm> {
        self.expect(&['<', '⟨'], "'<'")?;
        let mut entries = Vec::new();
        if !matches!(self.peek(), Some('>' | '⟩')) {
            entries.push(self.entry()?);
            while self.peek() == Some(',') {
                self.pos += 1;
                entries.push(self.entry()?);
            }
        }
        self.expect(&['>', '⟩'], "',' or '>'")?;
        if let Some(c) = self.peek() {
            return self.error(format!("unexpected trailing '{c}'"));
        }
        DiagonalForm::new(*self.cfg, entries)
    }

    fn entry(&mut self) -> Result<Generator> {
        let mut g = Generator::ONE;
        if self.peek() == Some('-') {
            self.pos += 1;
            g = g.negated(self.cfg);
        }
        g = g * self.term()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            g = g * self.term()?;
        }
        Ok(g)
    }

    fn term(&mut self) -> Result<Generator> {
        let start = self.offset();
        match self.bump() {
            Some('1') => Ok(Generator::ONE),
            Some('s') => Ok(Generator::residue(UnitSquareClass::S, PicTorsionClass::O)),
            Some('p') => {
                if self.chars.get(self.pos).map(|&(_, c)| c) == Some('i') {
                    self.pos += 1;
                    Ok(Generator::PI)
                } else {
                    self.error("expected 'pi'")
                }
            }
            Some('L') => {
                let digits_start = self.pos;
                while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                if self.pos == digits_start {
                    return self.error("expected bundle index after 'L'");
                }
                let digits: String = self.chars[digits_start..self.pos].iter().map(|&(_, c)| c).collect();
                let rank = self.cfg.picard_rank();
                let label: u64 = digits.parse().unwrap_or(u64::MAX);
                if label == 0 {
                    return Err(WittError::Syntax {
                        position: start,
                        message: "bundle labels start at L1".into(),
                    });
                }
                if label > rank as u64 {
                    return Err(WittError::UnknownBundleLabel {
                        label,
                        picard_rank: rank,
                    });
                }
                Ok(Generator::residue(UnitSquareClass::ONE, PicTorsionClass::basis(label as u32)))
            }
            Some(c) => Err(WittError::Syntax {
                position: start,
                message: format!("unexpected '{c}', expected one of 1, s, pi, L<k>"),
            }),
            None => self.error("unexpected end of input, expected a term"),
        }
    }
}

/// Parses `text` into a form over `cfg`. Syntax errors carry a character offset.
pub fn parse_form(text: &str, cfg: &CurveConfig) -> Result<DiagonalForm> {
    let mut parser = Parser {
        chars: text.chars().enumerate().collect(),
        pos: 0,
        cfg,
    };
    parser.form()
}

pub fn format_form(form: &DiagonalForm) -> String {
    form.to_string()
}

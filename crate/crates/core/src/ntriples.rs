//! N-Triples reading and canonical writing.
//!
//! Canonical output is one triple per line, LF-terminated, with lines sorted
//! byte-lexicographically. Plain `xsd:string` literals are written without a
//! datatype suffix.

use std::io::{self, Write};

use thiserror::Error;

use crate::rdf::{Dataset, Iri, Literal, ModelError, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

/// Parses an N-Triples document. Duplicate statements collapse; blank lines
/// and `#` comments are skipped.
pub fn parse_ntriples(input: &[u8]) -> Result<Dataset, ParseError> {
    let text = std::str::from_utf8(input).map_err(|e| {
        let line = input[..e.valid_up_to()]
            .iter()
            .filter(|&&b| b == b'\n')
            .count()
            + 1;
        ParseError {
            line,
            reason: format!("invalid UTF-8: {e}"),
        }
    })?;
    parse_str(text)
}

pub fn parse_str(text: &str) -> Result<Dataset, ParseError> {
    let mut dataset = Dataset::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if let Some(triple) = parse_line(raw).map_err(|reason| ParseError { line, reason })? {
            dataset.insert(triple);
        }
    }
    Ok(dataset)
}

/// Parses a single N-Triples term such as `<http://x>` or `"1959"^^<...>`.
pub fn parse_term(text: &str) -> Result<Term, String> {
    let mut cursor = Cursor::new(text.trim());
    let term = cursor.term()?;
    cursor.skip_ws();
    if !cursor.at_end() {
        return Err(format!("trailing input after term: {:?}", cursor.rest()));
    }
    Ok(term)
}

fn parse_line(raw: &str) -> Result<Option<Triple>, String> {
    let mut cursor = Cursor::new(raw);
    cursor.skip_ws();
    if cursor.at_end() || cursor.peek() == Some('#') {
        return Ok(None);
    }
    let subject = cursor.term()?;
    if subject.is_literal() {
        return Err(ModelError::LiteralSubject.to_string());
    }
    cursor.expect_ws()?;
    let predicate = match cursor.term()? {
        Term::Iri(iri) => iri,
        other => return Err(format!("predicate must be an IRI, found {other}")),
    };
    cursor.expect_ws()?;
    let object = cursor.term()?;
    cursor.skip_ws();
    if cursor.peek() != Some('.') {
        return Err("expected '.' at end of triple".into());
    }
    cursor.bump();
    cursor.skip_ws();
    if !cursor.at_end() && cursor.peek() != Some('#') {
        return Err(format!("unexpected trailing input {:?}", cursor.rest()));
    }
    Triple::new(subject, predicate, object)
        .map(Some)
        .map_err(|e| e.to_string())
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
    }

    fn expect_ws(&mut self) -> Result<(), String> {
        let before = self.pos;
        self.skip_ws();
        // `<a><b>` is legal N-Triples; only demand a separator before bare tokens
        if self.pos == before && !matches!(self.peek(), Some('<' | '"')) {
            return Err("expected whitespace between terms".into());
        }
        Ok(())
    }

    fn term(&mut self) -> Result<Term, String> {
        match self.peek() {
            Some('<') => self.iri().map(Term::Iri),
            Some('_') => self.blank(),
            Some('"') => self.literal().map(Term::Literal),
            Some(c) => Err(format!("unexpected character {c:?}")),
            None => Err("unexpected end of line".into()),
        }
    }

    fn iri(&mut self) -> Result<Iri, String> {
        self.bump();
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => value.push(self.unicode_escape()?),
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(format!("illegal character {c:?} in IRI"))
                }
                Some(c) => value.push(c),
                None => return Err("unterminated IRI".into()),
            }
        }
        Iri::new(&value).map_err(|e| e.to_string())
    }

    fn blank(&mut self) -> Result<Term, String> {
        self.bump();
        if self.bump() != Some(':') {
            return Err("expected '_:' blank node prefix".into());
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || matches!(c, '_' | '-' | '.')) {
            self.bump();
        }
        // a trailing '.' terminates the statement, not the label
        let mut label = &self.src[start..self.pos];
        while let Some(stripped) = label.strip_suffix('.') {
            label = stripped;
            self.pos -= 1;
        }
        Term::blank(label).map_err(|e| e.to_string())
    }

    fn literal(&mut self) -> Result<Literal, String> {
        self.bump();
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => match self.peek() {
                    Some('u') | Some('U') => lexical.push(self.unicode_escape()?),
                    Some(c) => {
                        self.bump();
                        lexical.push(match c {
                            't' => '\t',
                            'b' => '\u{08}',
                            'n' => '\n',
                            'r' => '\r',
                            'f' => '\u{0C}',
                            '"' => '"',
                            '\'' => '\'',
                            '\\' => '\\',
                            other => return Err(format!("unknown escape \\{other}")),
                        });
                    }
                    None => return Err("unterminated escape".into()),
                },
                Some('\n') | Some('\r') => return Err("raw line break in literal".into()),
                Some(c) => lexical.push(c),
                None => return Err("unterminated literal".into()),
            }
        }
        match self.peek() {
            Some('@') => {
                self.bump();
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                    self.bump();
                }
                let tag = &self.src[start..self.pos];
                if tag.is_empty() || !tag.chars().next().unwrap().is_ascii_alphabetic() {
                    return Err("invalid language tag".into());
                }
                Ok(Literal::lang(lexical, tag))
            }
            Some('^') => {
                self.bump();
                if self.bump() != Some('^') || self.peek() != Some('<') {
                    return Err("expected '^^<datatype>'".into());
                }
                let datatype = self.iri()?;
                if datatype.as_str() == vocab::RDF_LANG_STRING {
                    return Err("rdf:langString literal without language tag".into());
                }
                Ok(Literal::typed(lexical, datatype))
            }
            _ => Ok(Literal::string(lexical)),
        }
    }

    /// Reads the `uXXXX` / `UXXXXXXXX` part of an escape (the backslash is consumed).
    fn unicode_escape(&mut self) -> Result<char, String> {
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err("expected \\u or \\U escape".into()),
        };
        let end = self.pos + width;
        let hex = self
            .src
            .get(self.pos..end)
            .ok_or_else(|| "truncated unicode escape".to_string())?;
        let code = u32::from_str_radix(hex, 16).map_err(|_| format!("bad hex {hex:?}"))?;
        self.pos = end;
        char::from_u32(code).ok_or_else(|| format!("invalid code point U+{code:X}"))
    }
}

/// Canonical N-Triples text: sorted lines, LF endings, empty string for an
/// empty dataset.
pub fn serialize_ntriples(dataset: &Dataset) -> String {
    let mut lines: Vec<String> = dataset.iter().map(Triple::to_ntriples).collect();
    lines.sort_unstable();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_ntriples<W: Write>(dataset: &Dataset, mut writer: W) -> io::Result<()> {
    writer.write_all(serialize_ntriples(dataset).as_bytes())
}

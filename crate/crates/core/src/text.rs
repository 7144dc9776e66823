//! Plain-text matrix format.
//!
//! ```text
//! # Mal'tsev
//! params n=2 m=3 m'=1 l=2 k=2
//! x1 x2 x2 | x1
//! x1 x1 x2 | x2
//! ```
//!
//! The params line is optional on input and any subset of the keys may be
//! given. Each remaining non-blank line is a row with exactly one `|`.
//! `#` starts a comment. Output always carries the full params line and uses
//! single spaces, so writing is byte-deterministic.

use std::fmt;

use thiserror::Error;

use crate::error::MatrixError;
use crate::matrix::{validate, ExtendedMatrix, RawMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}{}: {kind}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
pub struct ParseError {
    pub line: usize,
    pub column: Option<usize>,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected token `{0}` (expected x<index> or `|`)")]
    BadToken(String),
    #[error("row has no `|` separating left and right parts")]
    MissingBar,
    #[error("row has more than one `|`")]
    ExtraBar,
    #[error("malformed params entry `{0}`")]
    BadParam(String),
    #[error("params line must precede all rows")]
    MisplacedParams,
    #[error("duplicate params key `{0}`")]
    DuplicateParam(String),
    #[error("no rows found")]
    Empty,
    #[error(transparent)]
    Invalid(#[from] MatrixError),
}

impl ParseError {
    fn at(line: usize, column: Option<usize>, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

/// Parses and validates a matrix.
pub fn parse_matrix(text: &str) -> Result<ExtendedMatrix, ParseError> {
    let mut raw = RawMatrix::default();
    let mut row_lines = Vec::new();
    let mut params_line = None;

    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match full_line.find('#') {
            Some(pos) => &full_line[..pos],
            None => full_line,
        };
        let tokens = tokens_with_columns(content);
        let Some(&(first_col, first)) = tokens.first() else {
            continue;
        };
        if first == "params" {
            if !row_lines.is_empty() {
                return Err(ParseError::at(
                    line_no,
                    Some(first_col),
                    ParseErrorKind::MisplacedParams,
                ));
            }
            if params_line.is_some() {
                return Err(ParseError::at(
                    line_no,
                    Some(first_col),
                    ParseErrorKind::DuplicateParam("params".into()),
                ));
            }
            params_line = Some(line_no);
            parse_params(&tokens[1..], line_no, &mut raw)?;
            continue;
        }

        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut seen_bar = false;
        for &(col, tok) in &tokens {
            if tok == "|" {
                if seen_bar {
                    return Err(ParseError::at(line_no, Some(col), ParseErrorKind::ExtraBar));
                }
                seen_bar = true;
                continue;
            }
            let v = parse_variable(tok)
                .ok_or_else(|| ParseError::at(line_no, Some(col), ParseErrorKind::BadToken(tok.to_string())))?;
            if seen_bar {
                right.push(v);
            } else {
                left.push(v);
            }
        }
        if !seen_bar {
            return Err(ParseError::at(line_no, None, ParseErrorKind::MissingBar));
        }
        raw.left.push(left);
        raw.right.push(right);
        row_lines.push(line_no);
    }

    if row_lines.is_empty() {
        let line = params_line.unwrap_or(1);
        return Err(ParseError::at(line, None, ParseErrorKind::Empty));
    }

    validate(raw).map_err(|err| {
        let row = match &err {
            MatrixError::Ragged { row, .. }
            | MatrixError::LeftOutOfRange { row, .. }
            | MatrixError::RightOutOfRange { row, .. } => Some(*row),
            _ => None,
        };
        let line = row
            .and_then(|r| row_lines.get(r - 1).copied())
            .or(params_line)
            .unwrap_or(row_lines[0]);
        ParseError::at(line, None, ParseErrorKind::Invalid(err))
    })
}

fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices() {
        let is_bar = ch == '|';
        if ch.is_whitespace() || is_bar {
            if let Some(s) = start.take() {
                out.push((s, &line[s..pos]));
            }
            if is_bar {
                out.push((pos, "|"));
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    // byte offsets to 1-based character columns
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn parse_variable(tok: &str) -> Option<u32> {
    let digits = tok.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&v| v > 0)
}

fn parse_params(tokens: &[(usize, &str)], line: usize, raw: &mut RawMatrix) -> Result<(), ParseError> {
    let mut seen = Vec::new();
    for &(col, tok) in tokens {
        let bad = || ParseError::at(line, Some(col), ParseErrorKind::BadParam(tok.to_string()));
        let (key, value) = tok.split_once('=').ok_or_else(bad)?;
        let value: usize = value.parse().map_err(|_| bad())?;
        if seen.contains(&key) {
            return Err(ParseError::at(
                line,
                Some(col),
                ParseErrorKind::DuplicateParam(key.to_string()),
            ));
        }
        seen.push(key);
        let as_bound = || u32::try_from(value).map_err(|_| bad());
        match key {
            "n" => raw.n = Some(value),
            "m" => raw.m = Some(value),
            "m'" => raw.m_prime = Some(value),
            "l" => raw.l = Some(as_bound()?),
            "k" => raw.k = Some(as_bound()?),
            _ => return Err(bad()),
        }
    }
    Ok(())
}

/// Canonical text form, including the params line and a trailing newline.
pub fn to_text(matrix: &ExtendedMatrix) -> String {
    matrix.to_string()
}

impl fmt::Display for ExtendedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "params n={} m={} m'={} l={} k={}",
            self.n(),
            self.m(),
            self.m_prime(),
            self.l(),
            self.k()
        )?;
        for i in 0..self.n() {
            let mut parts: Vec<String> = self.left_row(i).iter().map(|v| v.to_string()).collect();
            parts.push("|".into());
            parts.extend(self.right_row(i).iter().map(|v| v.to_string()));
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

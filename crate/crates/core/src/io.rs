//! b-file and CSV serialization.
//!
//! A b-file holds one `n a(n)` pair per line, separated by a single space,
//! each line newline-terminated. Lines starting with `#` and blank lines are
//! skipped on input.

use std::io::{BufRead, Write};

use crate::buffer::SequenceBuffer;
use crate::error::{Error, Result};

pub fn write_bfile<W: Write>(buf: &SequenceBuffer, mut out: W) -> Result<()> {
    for (n, a) in buf.iter() {
        writeln!(out, "{n} {a}")?;
    }
    Ok(())
}

pub fn to_bfile_string(buf: &SequenceBuffer) -> String {
    let mut out = Vec::new();
    write_bfile(buf, &mut out).expect("writing to memory");
    String::from_utf8(out).expect("ascii")
}

/// Parses a b-file into a frozen buffer. Indices must be consecutive.
pub fn read_bfile<R: BufRead>(input: R) -> Result<SequenceBuffer> {
    let mut origin = None;
    let mut terms = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        let mut fields = text.split_whitespace();
        let (Some(n), Some(a), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected 'n a(n)', got '{text}'")));
        };
        let n: i64 = n
            .parse()
            .map_err(|e| parse_err(format!("index '{n}': {e}")))?;
        let a: i64 = a
            .parse()
            .map_err(|e| parse_err(format!("value '{a}': {e}")))?;
        let first = *origin.get_or_insert(n);
        let expected = first + terms.len() as i64;
        if n != expected {
            return Err(parse_err(format!("index {n} follows {}", expected - 1)));
        }
        terms.push(a);
    }
    let origin = origin.ok_or(Error::Parse {
        line: 0,
        message: "no terms".into(),
    })?;
    Ok(SequenceBuffer::from_terms(origin, terms))
}

pub fn parse_bfile(text: &str) -> Result<SequenceBuffer> {
    read_bfile(text.as_bytes())
}

pub fn write_csv<W: Write>(buf: &SequenceBuffer, mut out: W) -> Result<()> {
    writeln!(out, "n,value")?;
    for (n, a) in buf.iter() {
        writeln!(out, "{n},{a}")?;
    }
    Ok(())
}

/// Parses a comma- or whitespace-separated list of integers, e.g. `3,1,4,4`.
pub fn parse_ic(text: &str) -> Result<Vec<i64>> {
    let items: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(Error::EmptyInitialCondition);
    }
    items
        .iter()
        .map(|s| {
            s.parse::<i64>().map_err(|e| Error::Parse {
                line: 1,
                message: format!("'{s}': {e}"),
            })
        })
        .collect()
}

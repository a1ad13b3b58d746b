//! Plain-text formats.
//!
//! A matrix is one row per line with tokens separated by spaces or tabs.
//! Tokens are integers (`-12`), fractions (`3/4`, denominator nonzero
//! without sign) or decimals (`-0.25`, converted exactly). Patterns use the
//! same layout restricted to integers. Multi-matrix files separate blocks
//! with blank lines.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, PermPattern, Scalar};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_int(s: &str) -> Option<i128> {
    s.parse::<i128>().ok()
}

/// Parses one scalar token. On failure returns a message for the caller to
/// attach a position to.
pub fn parse_scalar(token: &str) -> std::result::Result<Scalar, String> {
    let bad = || format!("invalid number `{token}`");
    let (neg, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let signed = |v: i128| if neg { -v } else { v };
    if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) || den.starts_with('0') {
            return Err(bad());
        }
        let num = parse_int(num).ok_or_else(|| format!("`{token}` is out of range"))?;
        let den = parse_int(den).ok_or_else(|| format!("`{token}` is out of range"))?;
        Ok(Scalar::new(signed(num), den))
    } else if let Some((whole, frac)) = body.split_once('.') {
        if !digits(whole) || !digits(frac) {
            return Err(bad());
        }
        let den = u32::try_from(frac.len())
            .ok()
            .and_then(|k| 10i128.checked_pow(k))
            .ok_or_else(|| format!("`{token}` has too many decimal places"))?;
        let num = parse_int(&format!("{whole}{frac}"))
            .ok_or_else(|| format!("`{token}` is out of range"))?;
        Ok(Scalar::new(signed(num), den))
    } else if digits(body) {
        let v = parse_int(body).ok_or_else(|| format!("`{token}` is out of range"))?;
        Ok(Scalar::from_integer(signed(v)))
    } else {
        Err(bad())
    }
}

/// `(1-based column, token)` for each token on a line.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut col = 0;
    let mut start_col = 0;
    for (idx, ch) in line.char_indices() {
        col += 1;
        if ch == ' ' || ch == '\t' {
            if let Some(s) = start.take() {
                out.push((start_col, &line[s..idx]));
            }
        } else if start.is_none() {
            start = Some(idx);
            start_col = col;
        }
    }
    if let Some(s) = start {
        out.push((start_col, &line[s..]));
    }
    out.into_iter()
}

fn lines(text: &str, first_line: usize) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(move |(i, l)| (first_line + i, l.strip_suffix('\r').unwrap_or(l)))
}

fn is_blank(line: &str) -> bool {
    line.chars().all(|c| c == ' ' || c == '\t')
}

fn grid<T>(
    text: &str,
    first_line: usize,
    parse: impl Fn(&str) -> std::result::Result<T, String>,
) -> Result<(usize, usize, Vec<T>)> {
    let mut rows = 0;
    let mut cols = None;
    let mut out = Vec::new();
    for (lineno, line) in lines(text, first_line) {
        if is_blank(line) {
            continue;
        }
        let before = out.len();
        for (col, tok) in tokens(line) {
            out.push(parse(tok).map_err(|m| syntax(lineno, col, m))?);
        }
        let width = out.len() - before;
        match cols {
            None => cols = Some(width),
            Some(c) if c != width => {
                return Err(Error::Dimension(format!(
                    "line {lineno} has {width} entries, expected {c}"
                )))
            }
            _ => {}
        }
        rows += 1;
    }
    match cols {
        Some(c) => Ok((rows, c, out)),
        None => Err(Error::Dimension("no rows".into())),
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    parse_matrix_at(text, 1)
}

fn parse_matrix_at(text: &str, first_line: usize) -> Result<Matrix> {
    let (rows, cols, entries) = grid(text, first_line, parse_scalar)?;
    Matrix::new(rows, cols, entries)
}

pub fn parse_pattern(text: &str) -> Result<PermPattern> {
    parse_pattern_at(text, 1)
}

fn parse_pattern_at(text: &str, first_line: usize) -> Result<PermPattern> {
    let (rows, cols, ranks) = grid(text, first_line, |tok| {
        let (neg, body) = match tok.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, tok),
        };
        if !digits(body) {
            return Err(format!("rank `{tok}` is not an integer"));
        }
        let v: i64 = body
            .parse()
            .map_err(|_| format!("rank `{tok}` is out of range"))?;
        Ok(if neg { -v } else { v })
    })?;
    PermPattern::new(rows, cols, ranks)
}

/// Splits text into blank-line separated blocks, each with the 1-based line
/// number it starts on.
pub fn blocks(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur: Option<(usize, String)> = None;
    for (lineno, line) in lines(text, 1) {
        if is_blank(line) {
            if let Some(b) = cur.take() {
                out.push(b);
            }
        } else {
            let b = cur.get_or_insert_with(|| (lineno, String::new()));
            b.1.push_str(line);
            b.1.push('\n');
        }
    }
    out.extend(cur);
    out
}

/// Blank-line separated patterns.
pub fn parse_patterns(text: &str) -> Result<Vec<PermPattern>> {
    blocks(text)
        .iter()
        .map(|(line, b)| parse_pattern_at(b, *line))
        .collect()
}

/// Blank-line separated matrices.
pub fn parse_matrices(text: &str) -> Result<Vec<Matrix>> {
    blocks(text)
        .iter()
        .map(|(line, b)| parse_matrix_at(b, *line))
        .collect()
}

fn parse_count(tok: &str) -> std::result::Result<u64, String> {
    if !digits(tok) {
        return Err(format!("`{tok}` is not a nonnegative integer"));
    }
    tok.parse().map_err(|_| format!("`{tok}` is out of range"))
}

fn count_row(line: &str, lineno: usize, col_offset: usize) -> Result<Vec<u64>> {
    tokens(line)
        .map(|(col, tok)| parse_count(tok).map_err(|m| syntax(lineno, col + col_offset, m)))
        .collect()
}

/// Transport instance: utility matrix, blank line, supply row, demand row.
/// Returns `(utility, supply, demand)` without checking balance.
pub fn parse_instance(text: &str) -> Result<(Matrix, Vec<u64>, Vec<u64>)> {
    let bs = blocks(text);
    let [(mline, mtext), (vline, vtext)] = bs.as_slice() else {
        return Err(Error::Dimension(format!(
            "instance needs a matrix block and a supply/demand block, found {} blocks",
            bs.len()
        )));
    };
    let utility = parse_matrix_at(mtext, *mline)?;
    let vlines: Vec<&str> = vtext.lines().collect();
    if vlines.len() != 2 {
        return Err(Error::Dimension(format!(
            "expected a supply row and a demand row, found {} rows",
            vlines.len()
        )));
    }
    let supply = count_row(vlines[0], *vline, 0)?;
    let demand = count_row(vlines[1], vline + 1, 0)?;
    Ok((utility, supply, demand))
}

/// One request line `s1 … sm | d1 … dn`.
pub fn parse_request(line: &str, lineno: usize) -> Result<(Vec<u64>, Vec<u64>)> {
    let Some(bar) = line.find('|') else {
        return Err(syntax(
            lineno,
            1,
            "missing `|` between supplies and demands",
        ));
    };
    let offset = line[..=bar].chars().count();
    let supply = count_row(&line[..bar], lineno, 0)?;
    let demand = count_row(&line[bar + 1..], lineno, offset)?;
    Ok((supply, demand))
}

/// Whitespace-separated scalars in any line layout.
pub fn parse_scalars(text: &str) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for (lineno, line) in lines(text, 1) {
        for (col, tok) in tokens(line) {
            out.push(parse_scalar(tok).map_err(|m| syntax(lineno, col, m))?);
        }
    }
    Ok(out)
}

//! Set files hold one 0/1 string per line; multiset files hold `BITS COUNT`.
//! Blank lines and lines starting with `#` are skipped in both.

use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Read};

use f2bal::{BitVec, BoolMultiset, VectorSet, Weighted};

use crate::error::{CliError, CliResult};

/// A parsed input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Set(VectorSet),
    Multiset(BoolMultiset),
}

impl Input {
    pub fn weighted(&self) -> &dyn Weighted {
        match self {
            Input::Set(s) => s,
            Input::Multiset(m) => m,
        }
    }

    pub fn support(&self) -> VectorSet {
        match self {
            Input::Set(s) => s.clone(),
            Input::Multiset(m) => m.support(),
        }
    }
}

fn content_lines<R: Read>(reader: R) -> impl Iterator<Item = CliResult<(usize, String)>> {
    BufReader::new(reader)
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(CliError::Input(format!("read failed: {e}")))),
            Ok(line) => {
                let trimmed = line.trim();
                (!trimmed.is_empty() && !trimmed.starts_with('#')).then(|| Ok((i + 1, trimmed.to_string())))
            }
        })
}

fn parse_bits(line_no: usize, text: &str, width: &mut Option<u32>) -> CliResult<BitVec> {
    let x: BitVec = text
        .parse()
        .map_err(|e: f2bal::Error| CliError::Input(format!("line {line_no}: {e}")))?;
    match *width {
        Some(w) if w != x.width() => Err(CliError::Input(format!(
            "line {line_no}: length {} differs from {w}",
            x.width()
        ))),
        _ => {
            *width = Some(x.width());
            Ok(x)
        }
    }
}

pub fn parse_set_file<R: Read>(reader: R) -> CliResult<VectorSet> {
    let mut width = None;
    let mut seen = BTreeSet::new();
    for line in content_lines(reader) {
        let (line_no, text) = line?;
        let x = parse_bits(line_no, &text, &mut width)?;
        if !seen.insert(x) {
            return Err(CliError::Input(format!(
                "line {line_no}: duplicate member {x} (use --multiset to count repeats)"
            )));
        }
    }
    let width = width.ok_or_else(|| CliError::Input("no vectors in input".into()))?;
    Ok(VectorSet::new(width, seen.into_iter().collect())?)
}

pub fn parse_multiset_file<R: Read>(reader: R) -> CliResult<BoolMultiset> {
    let mut width = None;
    let mut pairs = Vec::new();
    for line in content_lines(reader) {
        let (line_no, text) = line?;
        let mut fields = text.split_whitespace();
        let (Some(bits), Some(count), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(CliError::Input(format!("line {line_no}: expected `BITS COUNT`")));
        };
        let x = parse_bits(line_no, bits, &mut width)?;
        let count: u64 = count
            .parse()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| CliError::Input(format!("line {line_no}: count {count:?} is not a positive integer")))?;
        pairs.push((x, count));
    }
    let width = width.ok_or_else(|| CliError::Input("no vectors in input".into()))?;
    Ok(BoolMultiset::from_pairs(width, pairs)?)
}

pub fn parse_input<R: Read>(reader: R, multiset: bool) -> CliResult<Input> {
    if multiset {
        parse_multiset_file(reader).map(Input::Multiset)
    } else {
        parse_set_file(reader).map(Input::Set)
    }
}

/// Set file text: members in index order.
pub fn render_set(s: &VectorSet) -> String {
    s.iter().map(|x| format!("{x}\n")).collect()
}

/// Multiset file text: `BITS COUNT` in index order.
pub fn render_multiset(m: &BoolMultiset) -> String {
    m.entries().map(|(x, c)| format!("{x} {c}\n")).collect()
}

//! The `.wsp` text format.
//!
//! ```text
//! wsp 1
//! s=<count> n=<order>
//! 1: <a1> <a2> ...
//! ...
//! <s>: ...
//! ```
//!
//! Blank lines and lines starting with `#` are skipped when parsing and
//! never written. Elements are written ascending, separated by single
//! spaces; the parser accepts any order and any run of whitespace.

use std::fmt::Write as _;

use crate::intset::IntSet;
use crate::partition::Partition;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected header `wsp {FORMAT_VERSION}`")]
    BadHeader,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(String),
    #[error("expected `s=<count> n=<order>` with positive values")]
    BadSizes,
    #[error("malformed subset line: {0}")]
    Malformed(String),
    #[error("expected subset {expected}, found {found}")]
    UnexpectedIndex { expected: usize, found: usize },
    #[error("duplicate integer {0}")]
    DuplicateInteger(u32),
    #[error("integer {value} outside 1..={n}")]
    OutOfRange { value: u32, n: u32 },
    #[error("subset {0} is empty")]
    EmptySubset(usize),
    #[error("integer {0} missing from every subset")]
    Gap(u32),
    #[error("expected {expected} subsets, found {found}")]
    SubsetCount { expected: usize, found: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

pub fn parse_partition(text: &str) -> Result<Partition, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let last_line = text.lines().count().max(1);

    let (line, header) = lines
        .next()
        .ok_or(err(last_line, ParseErrorKind::UnexpectedEnd))?;
    match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["wsp", v] if *v == FORMAT_VERSION.to_string() => {}
        ["wsp", v] => return Err(err(line, ParseErrorKind::UnsupportedVersion(v.to_string()))),
        _ => return Err(err(line, ParseErrorKind::BadHeader)),
    }

    let (sizes_line, sizes) = lines
        .next()
        .ok_or(err(last_line, ParseErrorKind::UnexpectedEnd))?;
    let (s, n) = parse_sizes(sizes).ok_or(err(sizes_line, ParseErrorKind::BadSizes))?;

    // owner[v] = line that first listed v
    let mut owner = vec![0usize; n as usize + 1];
    let mut subsets = Vec::with_capacity(s);
    for (line, body) in lines {
        let expected = subsets.len() + 1;
        let (index, elements) = body
            .split_once(':')
            .ok_or_else(|| err(line, ParseErrorKind::Malformed("missing `:`".into())))?;
        let found: usize = index.trim().parse().map_err(|_| {
            err(
                line,
                ParseErrorKind::Malformed(format!("bad index `{}`", index.trim())),
            )
        })?;
        if found != expected {
            return Err(err(
                line,
                ParseErrorKind::UnexpectedIndex { expected, found },
            ));
        }
        let mut set = IntSet::with_capacity(n);
        for token in elements.split_whitespace() {
            let value: u32 = token.parse().map_err(|_| {
                err(
                    line,
                    ParseErrorKind::Malformed(format!("bad integer `{token}`")),
                )
            })?;
            if value == 0 || value > n {
                return Err(err(line, ParseErrorKind::OutOfRange { value, n }));
            }
            if owner[value as usize] != 0 {
                return Err(err(line, ParseErrorKind::DuplicateInteger(value)));
            }
            owner[value as usize] = line;
            set.insert(value).expect("value checked positive");
        }
        if set.is_empty() {
            return Err(err(line, ParseErrorKind::EmptySubset(expected)));
        }
        if expected > s {
            return Err(err(
                line,
                ParseErrorKind::SubsetCount {
                    expected: s,
                    found: expected,
                },
            ));
        }
        subsets.push(set);
    }
    if subsets.len() != s {
        return Err(err(
            last_line,
            ParseErrorKind::SubsetCount {
                expected: s,
                found: subsets.len(),
            },
        ));
    }
    if let Some(gap) = (1..=n).find(|&v| owner[v as usize] == 0) {
        return Err(err(sizes_line, ParseErrorKind::Gap(gap)));
    }
    Ok(Partition::new(n, subsets).expect("parser checks every partition invariant"))
}

fn parse_sizes(line: &str) -> Option<(usize, u32)> {
    let mut s = None;
    let mut n = None;
    for field in line.split_whitespace() {
        match field.split_once('=')? {
            ("s", v) if s.is_none() => s = Some(v.parse::<usize>().ok()?),
            ("n", v) if n.is_none() => n = Some(v.parse::<u32>().ok()?),
            _ => return None,
        }
    }
    match (s?, n?) {
        (0, _) | (_, 0) => None,
        sizes => Some(sizes),
    }
}

pub fn serialize_partition(p: &Partition) -> String {
    let mut out = String::with_capacity(p.n() as usize * 8 + 32);
    writeln!(out, "wsp {FORMAT_VERSION}").unwrap();
    writeln!(out, "s={} n={}", p.s(), p.n()).unwrap();
    for (i, set) in p.subsets().iter().enumerate() {
        write!(out, "{}:", i + 1).unwrap();
        for v in set {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

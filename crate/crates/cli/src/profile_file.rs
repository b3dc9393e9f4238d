//! The plain-text profile format.
//!
//! ```text
//! m=3
//! # three voters approve a and b
//! 3: 0 1
//! 1: 2
//! ```

use std::fmt::Write;

use seqrules::{Ballot, CandSet, CandidateSet, Profile};

use crate::ParseError;

/// Voters get ids `1..=n` in file order, each line replicated `count` times.
pub fn parse_profile(text: &str) -> Result<Profile, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| ParseError::new(1, "missing header m=<int>"))?;
    let m = parse_header(header_line, header)?;
    let candidates = CandidateSet::new(m).map_err(|e| ParseError::new(header_line, e.to_string()))?;
    let mut ballots = Vec::new();
    for (number, line) in lines {
        let (count, ballot) = parse_ballot_line(number, line, m)?;
        ballots.extend(std::iter::repeat_n(ballot, count));
    }
    if ballots.is_empty() {
        return Err(ParseError::new(header_line, "no ballot lines"));
    }
    Profile::from_ballots(candidates, ballots).map_err(|e| ParseError::new(header_line, e.to_string()))
}

/// Canonical text: ballots in ballot order, equal ballots merged.
pub fn format_profile(a: &Profile) -> String {
    let mut out = format!("m={}\n", a.m());
    for (ballot, count) in a.ballot_counts() {
        let members: Vec<String> = ballot.approved().iter().map(|c| c.to_string()).collect();
        writeln!(out, "{count}: {}", members.join(" ")).expect("writing to a String");
    }
    out
}

/// Non-blank lines with comments stripped, numbered from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_header(number: usize, line: &str) -> Result<usize, ParseError> {
    let bad = || ParseError::new(number, format!("malformed header `{line}`, expected m=<int>"));
    let (key, value) = line.split_once('=').ok_or_else(bad)?;
    if key.trim() != "m" {
        return Err(bad());
    }
    value.trim().parse().map_err(|_| bad())
}

fn parse_ballot_line(number: usize, line: &str, m: usize) -> Result<(usize, Ballot), ParseError> {
    let (count, rest) = line
        .split_once(':')
        .ok_or_else(|| ParseError::new(number, format!("malformed line `{line}`, expected <count>: <cand> ...")))?;
    let count: usize = match count.trim().parse() {
        Ok(n) if n >= 1 => n,
        _ => return Err(ParseError::new(number, format!("count must be a positive integer, got `{}`", count.trim()))),
    };
    let mut approved = CandSet::EMPTY;
    for token in rest.split_whitespace() {
        let c: usize =
            token.parse().map_err(|_| ParseError::new(number, format!("malformed candidate index `{token}`")))?;
        if c >= m {
            return Err(ParseError::new(number, format!("candidate index {c} ≥ m={m}")));
        }
        if approved.contains(c) {
            return Err(ParseError::new(number, format!("duplicate candidate {c}")));
        }
        approved = approved.with(c);
    }
    let ballot = Ballot::new(approved).map_err(|_| ParseError::new(number, "empty ballot"))?;
    Ok((count, ballot))
}

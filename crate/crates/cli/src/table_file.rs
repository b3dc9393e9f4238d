//! Counting tables as config files.
//!
//! ```text
//! m=3
//! h(0)=0
//! h(1)=1
//! h(2)=3/2
//! h(3)=11/6
//! ```
//!
//! Entries take one, two or three arguments (`h(x)`, `h(x,y)`, `h(x,y,z)`);
//! one file uses one arity, and every entry of the table must be present.

use std::collections::BTreeMap;

use seqrules::catalog::{make_seq_thiele, make_step_scoring, make_step_thiele};
use seqrules::{Rational, Rule, StepCounting, StepThieleCounting, ThieleCounting};

use crate::profile_file::{content_lines, parse_header};
use crate::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountingTable {
    Thiele(ThieleCounting),
    StepThiele(StepThieleCounting),
    Step(StepCounting),
}

impl CountingTable {
    pub fn m(&self) -> usize {
        match self {
            CountingTable::Thiele(h) => h.m(),
            CountingTable::StepThiele(h) => h.m(),
            CountingTable::Step(h) => h.m(),
        }
    }

    /// The sequential rule of this table; fails if the table is not a valid
    /// counting function of its kind.
    pub fn rule(&self, name: &str) -> seqrules::Result<Rule> {
        match self {
            CountingTable::Thiele(h) => make_seq_thiele(name, h.clone()),
            CountingTable::StepThiele(h) => make_step_thiele(name, h.clone()),
            CountingTable::Step(h) => make_step_scoring(name, h.clone()),
        }
    }
}

pub fn parse_counting(text: &str) -> Result<CountingTable, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| ParseError::new(1, "missing header m=<int>"))?;
    let m = parse_header(header_line, header)?;
    let mut entries: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    let mut arity = None;
    for (number, line) in lines {
        let (args, value) = parse_entry(number, line)?;
        match arity {
            None => arity = Some(args.len()),
            Some(n) if n != args.len() => {
                return Err(ParseError::new(
                    number,
                    format!("entry has {} arguments, earlier entries have {n}", args.len()),
                ))
            }
            Some(_) => {}
        }
        if entries.insert(args, value).is_some() {
            return Err(ParseError::new(number, "duplicate entry"));
        }
    }
    let at_header = |e: seqrules::Error| ParseError::new(header_line, e.to_string());
    match arity {
        None => Err(ParseError::new(header_line, "no table entries")),
        Some(1) => {
            let map = entries.into_iter().map(|(k, v)| (k[0], v)).collect();
            ThieleCounting::from_entries(m, &map).map(CountingTable::Thiele).map_err(at_header)
        }
        Some(2) => {
            let map = entries.into_iter().map(|(k, v)| ((k[0], k[1]), v)).collect();
            StepThieleCounting::from_entries(m, &map).map(CountingTable::StepThiele).map_err(at_header)
        }
        Some(_) => {
            let map = entries.into_iter().map(|(k, v)| ((k[0], k[1], k[2]), v)).collect();
            StepCounting::from_entries(m, &map).map(CountingTable::Step).map_err(at_header)
        }
    }
}

fn parse_entry(number: usize, line: &str) -> Result<(Vec<usize>, Rational), ParseError> {
    let bad = || ParseError::new(number, format!("malformed entry `{line}`, expected h(x)=p/q"));
    let (lhs, rhs) = line.split_once('=').ok_or_else(bad)?;
    let inner = lhs.trim().strip_prefix("h(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let args = inner.split(',').map(|s| s.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?;
    if args.len() > 3 {
        return Err(bad());
    }
    let value = rhs.trim().parse::<Rational>().map_err(|e| ParseError::new(number, e.to_string()))?;
    Ok((args, value))
}

/// Config text for a Thiele table, readable by [`parse_counting`].
pub fn format_thiele(h: &ThieleCounting) -> String {
    let mut out = format!("m={}\n", h.m());
    for (x, v) in h.values().iter().enumerate() {
        out.push_str(&format!("h({x})={}\n", v.to_pq()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thiele_round_trip() {
        let pav = ThieleCounting::pav(4).unwrap();
        let text = format_thiele(&pav);
        assert!(text.contains("h(3)=11/6"));
        assert_eq!(parse_counting(&text).unwrap(), CountingTable::Thiele(pav));
    }

    #[test]
    fn step_tables() {
        let mut text = String::from("m=2\n");
        for x in 0..=2 {
            for y in 1..=2 {
                text.push_str(&format!("h({x},{y})={}\n", x.min(y)));
            }
        }
        let CountingTable::StepThiele(h) = parse_counting(&text).unwrap() else { panic!("wrong arity") };
        assert_eq!(h.value(2, 1), &Rational::from(1usize));
    }

    #[test]
    fn missing_entries_are_errors() {
        let e = parse_counting("m=2\nh(0)=0\nh(1)=1\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("missing entry h(2)"));
    }

    #[test]
    fn malformed_entries() {
        assert_eq!(parse_counting("m=1\nh(0)=0\nh(1,1)=1").unwrap_err().line, 3);
        assert_eq!(parse_counting("m=1\ng(0)=0").unwrap_err().line, 2);
        assert_eq!(parse_counting("m=1\nh(0)=1/0").unwrap_err().line, 2);
        assert_eq!(parse_counting("m=1\nh(0)=0\nh(0)=0").unwrap_err().message, "duplicate entry");
    }
}

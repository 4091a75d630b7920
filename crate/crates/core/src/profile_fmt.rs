//! Text format for voting situations.
//!
//! ```text
//! # comment
//! m=3 k=1
//! 2: a > b > c
//! 1/2: b > a > c
//! ```
//!
//! The first non-comment line is `m=<int> k=<int>`. Every following
//! non-comment line is `<count>: <name> > <name> > ...`, where `<count>` is
//! an integer or a `p/q` rational, possibly negative, and names are
//! whitespace-free tokens. The candidate universe is the union of names in
//! order of first appearance and must contain exactly `m` names.

use crate::error::{Error, Result};
use crate::model::{default_name, CandidateId, Vote, VotingSituation};
use crate::rational::{format_rational, parse_rational, Rational};

/// Candidate display names; index `id - 1` holds the name of candidate `id`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NameTable {
    names: Vec<String>,
}

impl NameTable {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut sorted = names.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(
                "candidate names must be distinct".into(),
            ));
        }
        Ok(NameTable { names })
    }

    /// Default names `a`, `b`, `c`, ... for candidates `1..=m`.
    pub fn default_for(m: u8) -> Self {
        NameTable {
            names: (1..=m).map(default_name).collect(),
        }
    }

    pub fn m(&self) -> u8 {
        self.names.len() as u8
    }

    pub fn name(&self, id: CandidateId) -> &str {
        &self.names[id as usize - 1]
    }

    pub fn id_of(&self, name: &str) -> Option<CandidateId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as CandidateId + 1)
    }

    /// Resolves a comma-separated list of names to candidate ids.
    pub fn resolve_committee(&self, spec: &str) -> Result<Vec<CandidateId>> {
        spec.split(',')
            .map(|name| {
                let name = name.trim();
                self.id_of(name).ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("unknown candidate name {name:?}"),
                })
            })
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParsedProfile {
    pub situation: VotingSituation,
    pub names: NameTable,
    pub k: u8,
}

pub fn parse_profile(text: &str) -> Result<ParsedProfile> {
    let mut m: Option<u8> = None;
    let mut k: Option<u8> = None;
    let mut names: Vec<String> = Vec::new();
    // raw rankings by name, so ids can be assigned after the universe is known
    let mut rows: Vec<(usize, Rational, Vec<String>)> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };

        if m.is_none() {
            // header: m=<int> k=<int>
            let mut header_m = None;
            let mut header_k = None;
            for field in line.split_whitespace() {
                let (key, value) = field
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected m=<int> k=<int>, got {field:?}")))?;
                let value: u8 = value
                    .parse()
                    .map_err(|_| err(format!("bad integer {value:?}")))?;
                match key {
                    "m" => header_m = Some(value),
                    "k" => header_k = Some(value),
                    _ => return Err(err(format!("unknown header key {key:?}"))),
                }
            }
            let header_m = header_m.ok_or_else(|| err("header is missing m".into()))?;
            let header_k = header_k.ok_or_else(|| err("header is missing k".into()))?;
            if header_m == 0 || header_k == 0 || header_k > header_m {
                return Err(err(format!(
                    "need 1 <= k <= m, got m={header_m} k={header_k}"
                )));
            }
            m = Some(header_m);
            k = Some(header_k);
            continue;
        }

        let (count_text, ranking_text) = line
            .split_once(':')
            .ok_or_else(|| err("expected <count>: <name> > <name> > ...".into()))?;
        let count = parse_rational(count_text.trim()).map_err(|e| match e {
            Error::Parse { msg, .. } => err(msg),
            other => other,
        })?;

        let mut ranking = Vec::new();
        for name in ranking_text.split('>') {
            let name = name.trim();
            if name.is_empty() || name.split_whitespace().count() != 1 {
                return Err(err(format!("bad candidate token {name:?}")));
            }
            if ranking.contains(&name.to_string()) {
                return Err(err(format!("duplicate candidate {name:?} in ranking")));
            }
            if !names.iter().any(|n| n == name) {
                names.push(name.to_string());
            }
            ranking.push(name.to_string());
        }
        rows.push((line_no, count, ranking));
    }

    let m = m.ok_or(Error::Parse {
        line: 0,
        msg: "missing header line m=<int> k=<int>".into(),
    })?;
    let k = k.unwrap();

    if rows.is_empty() {
        // empty situation: only the header; fall back to default names
        return Ok(ParsedProfile {
            situation: VotingSituation::empty(m),
            names: NameTable::default_for(m),
            k,
        });
    }
    if names.len() != m as usize {
        return Err(Error::Parse {
            line: 0,
            msg: format!(
                "header says m={m} but {} candidate names appear",
                names.len()
            ),
        });
    }

    let names = NameTable::new(names)?;
    let mut situation = VotingSituation::empty(m);
    for (line_no, count, ranking) in rows {
        if ranking.len() != m as usize {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("ranking lists {} of {m} candidates", ranking.len()),
            });
        }
        let ids: Vec<CandidateId> = ranking
            .iter()
            .map(|name| names.id_of(name).expect("name registered above"))
            .collect();
        situation.add_vote(&Vote::new(ids)?, &count)?;
    }

    Ok(ParsedProfile {
        situation,
        names,
        k,
    })
}

/// Parses against a fixed candidate universe instead of assigning ids by
/// first appearance. Rankings must use exactly the given names.
pub fn parse_profile_with_names(text: &str, names: &NameTable) -> Result<ParsedProfile> {
    let parsed = parse_profile(text)?;
    if parsed.names.m() != names.m() {
        return Err(Error::Parse {
            line: 0,
            msg: format!(
                "profile has {} candidates, expected {}",
                parsed.names.m(),
                names.m()
            ),
        });
    }
    // remap first-appearance ids onto the fixed universe
    let mut situation = VotingSituation::empty(names.m());
    for (vote, count) in parsed.situation.iter() {
        let ids: Vec<CandidateId> = vote
            .ranking()
            .iter()
            .map(|&id| {
                let name = parsed.names.name(id);
                names.id_of(name).ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("unexpected candidate name {name:?}"),
                })
            })
            .collect::<Result<_>>()?;
        situation.add_vote(&Vote::new(ids)?, count)?;
    }
    Ok(ParsedProfile {
        situation,
        names: names.clone(),
        k: parsed.k,
    })
}

pub fn serialize_profile(situation: &VotingSituation, names: &NameTable, k: u8) -> String {
    let mut out = format!("m={} k={}\n", situation.m(), k);
    for (vote, count) in situation.iter() {
        let ranking: Vec<&str> = vote.ranking().iter().map(|&c| names.name(c)).collect();
        out.push_str(&format!(
            "{}: {}\n",
            format_rational(count),
            ranking.join(" > ")
        ));
    }
    out
}

/// Serializes with default candidate names `a`, `b`, `c`, ...
pub fn serialize_with_default_names(situation: &VotingSituation, k: u8) -> String {
    serialize_profile(situation, &NameTable::default_for(situation.m()), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn parses_basic_profile() {
        let parsed = parse_profile("m=3 k=1\n2: a > b > c\n").unwrap();
        assert_eq!(parsed.k, 1);
        assert_eq!(parsed.situation.m(), 3);
        let v = Vote::new(vec![1, 2, 3]).unwrap();
        assert_eq!(parsed.situation.count(&v), rat(2));
    }

    #[test]
    fn parses_rational_and_negative_counts() {
        let parsed = parse_profile("m=3 k=1\n1/2: b > a > c\n-1: a > b > c\n").unwrap();
        // first-appearance ids: b=1, a=2, c=3
        let b_a_c = Vote::new(vec![1, 2, 3]).unwrap();
        assert_eq!(parsed.situation.count(&b_a_c), frac(1, 2));
        let a_b_c = Vote::new(vec![2, 1, 3]).unwrap();
        assert_eq!(parsed.situation.count(&a_b_c), rat(-1));
    }

    #[test]
    fn rejects_duplicate_candidate() {
        let err = parse_profile("m=3 k=1\n1: a > a > c\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("duplicate"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_profile("m=2 k=1\n1/0: a > b\n").is_err());
    }

    #[test]
    fn rejects_wrong_universe_size() {
        assert!(parse_profile("m=3 k=1\n1: a > b\n").is_err());
        assert!(parse_profile("m=2 k=1\n1: a > b > c\n").is_err());
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_profile("m=2 k=1\n# fine\n1: a > b\nbroken\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn first_appearance_order_defines_ids() {
        let parsed = parse_profile("m=3 k=2\n1: z > y > x\n1: x > z > y\n").unwrap();
        assert_eq!(parsed.names.name(1), "z");
        assert_eq!(parsed.names.name(2), "y");
        assert_eq!(parsed.names.name(3), "x");
        assert_eq!(parsed.names.id_of("x"), Some(3));
    }

    #[test]
    fn round_trip() {
        let text = "m=3 k=2\n2: a > b > c\n1/2: c > a > b\n-3: b > a > c\n";
        let parsed = parse_profile(text).unwrap();
        let out = serialize_profile(&parsed.situation, &parsed.names, parsed.k);
        let reparsed = parse_profile(&out).unwrap();
        assert_eq!(reparsed.situation, parsed.situation);
        assert_eq!(reparsed.k, parsed.k);
    }
}

//! Decision scoring functions: pairwise committee comparison by an
//! antisymmetric score summed over votes.
//!
//! A decision scoring function `d` assigns an exact rational to each ordered
//! pair of committee positions `(I1, I2)` with `|I1 ∩ I2| = s`, with
//! `d(I1, I2) = -d(I2, I1)`. Unlike committee scoring, the induced pairwise
//! relation need not be transitive; the generalized majority relation is the
//! canonical example. A full decision rule is a family of such tables, one
//! per intersection size.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::combinat::enumerate_positions;
use crate::error::{Error, Result};
use crate::model::{Committee, CommitteePosition, VotingSituation};
use crate::rational::{format_rational, parse_rational, rat, sign, Rational};
use crate::scoring::CommitteeScoringFunction;

/// Decision scoring function for pairs of committees sharing exactly `s`
/// members. Only pairs `(I1, I2)` with `I1 < I2` lexicographically are
/// stored; antisymmetry supplies the rest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecisionScoringFunction {
    m: u8,
    k: u8,
    s: u8,
    table: BTreeMap<(CommitteePosition, CommitteePosition), Rational>,
    label: String,
}

/// All ordered position pairs with `|I1 ∩ I2| = s` (the pairs realizable in a
/// single vote by two committees with intersection `s`).
pub fn realizable_pairs(
    m: u8,
    k: u8,
    s: u8,
) -> Result<Vec<(CommitteePosition, CommitteePosition)>> {
    if k == 0 || k > m || s >= k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= m and 0 <= s < k, got m={m} k={k} s={s}"
        )));
    }
    let positions = enumerate_positions(m, k)?;
    let mut pairs = Vec::new();
    for i1 in &positions {
        for i2 in &positions {
            if i1 != i2 && i1.intersection_size(i2) == s {
                pairs.push((i1.clone(), i2.clone()));
            }
        }
    }
    Ok(pairs)
}

impl DecisionScoringFunction {
    /// Builds a table from a value function on canonical (lexicographically
    /// ordered) pairs; the reversed orientation is implied by antisymmetry.
    pub fn from_fn(
        m: u8,
        k: u8,
        s: u8,
        label: impl Into<String>,
        mut value: impl FnMut(&CommitteePosition, &CommitteePosition) -> Rational,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (i1, i2) in realizable_pairs(m, k, s)? {
            if i1 < i2 {
                let v = value(&i1, &i2);
                table.insert((i1, i2), v);
            }
        }
        Ok(DecisionScoringFunction {
            m,
            k,
            s,
            table,
            label: label.into(),
        })
    }

    /// The generalized majority relation for single-winner committees:
    /// `d({i1},{i2}) = +1` when `i1 < i2` and `-1` when `i1 > i2`.
    pub fn majority(m: u8) -> Result<Self> {
        DecisionScoringFunction::from_fn(m, 1, 0, "majority", |i1, i2| {
            // canonical pairs have i1 < i2, so the first committee is ahead
            debug_assert!(i1.positions()[0] < i2.positions()[0]);
            rat(1)
        })
    }

    /// Difference table `g(I1, I2) = lambda(I1) - lambda(I2)` restricted to
    /// pairs with intersection `s`. The induced relation agrees with score
    /// comparison for committees sharing `s` members.
    pub fn from_scoring(lambda: &CommitteeScoringFunction, s: u8) -> Result<Self> {
        if s >= lambda.k() {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= s <= k-1, got s={s} k={}",
                lambda.k()
            )));
        }
        let label = format!("diff:{}", lambda.label());
        DecisionScoringFunction::from_fn(lambda.m(), lambda.k(), s, label, |i1, i2| {
            lambda.value(i1).unwrap() - lambda.value(i2).unwrap()
        })
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (&(CommitteePosition, CommitteePosition), &Rational)> {
        self.table.iter()
    }

    /// `d(I1, I2)`, using antisymmetry for reversed pairs.
    pub fn value(&self, i1: &CommitteePosition, i2: &CommitteePosition) -> Result<Rational> {
        if i1.intersection_size(i2) != self.s || i1 == i2 {
            return Err(Error::InvalidParameter(format!(
                "pair ({i1:?}, {i2:?}) is not realizable with intersection {}",
                self.s
            )));
        }
        if i1 < i2 {
            self.table
                .get(&(i1.clone(), i2.clone()))
                .cloned()
                .ok_or_else(|| Error::InvalidParameter(format!("pair ({i1:?}, {i2:?}) missing")))
        } else {
            Ok(-self.value(i2, i1)?)
        }
    }

    /// Total pair score over a voting situation, antisymmetric in `(c1, c2)`.
    pub fn pair_score(
        &self,
        c1: &Committee,
        c2: &Committee,
        situation: &VotingSituation,
    ) -> Result<Rational> {
        if situation.m() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "decision function over m={} applied to situation over m={}",
                self.m,
                situation.m()
            )));
        }
        if c1.k() != self.k || c2.k() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "decision function for k={} applied to committees of sizes {} and {}",
                self.k,
                c1.k(),
                c2.k()
            )));
        }
        if c1.intersection_size(c2) != self.s {
            return Err(Error::DimensionMismatch(format!(
                "committees share {} members, table is for s={}",
                c1.intersection_size(c2),
                self.s
            )));
        }
        let mut total = Rational::zero();
        for (vote, count) in situation.iter() {
            let i1 = vote.position_of_committee(c1)?;
            let i2 = vote.position_of_committee(c2)?;
            total += count * self.value(&i1, &i2)?;
        }
        Ok(total)
    }

    /// Sign of the pair score: `Greater` means `c1` is preferred.
    pub fn decide(
        &self,
        c1: &Committee,
        c2: &Committee,
        situation: &VotingSituation,
    ) -> Result<Ordering> {
        if c1 == c2 {
            return Ok(Ordering::Equal);
        }
        Ok(sign(&self.pair_score(c1, c2, situation)?))
    }

    /// Decision table TSV: header `m<TAB>k<TAB>s`, rows
    /// `<I1><TAB><I2><TAB><rational>` for canonical pairs only.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("{}\t{}\t{}\n", self.m, self.k, self.s);
        for ((i1, i2), value) in &self.table {
            let render = |p: &CommitteePosition| {
                p.positions()
                    .iter()
                    .map(u8::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                render(i1),
                render(i2),
                format_rational(value)
            ));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "empty table".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: 1,
                msg: "expected header `m<TAB>k<TAB>s`".into(),
            });
        }
        let parse_u8 = |text: &str| -> Result<u8> {
            text.parse().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad header field {text:?}"),
            })
        };
        let (m, k, s) = (
            parse_u8(fields[0])?,
            parse_u8(fields[1])?,
            parse_u8(fields[2])?,
        );
        let mut rows = BTreeMap::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let cells: Vec<&str> = line.split('\t').collect();
            if cells.len() != 3 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "expected <I1>\\t<I2>\\t<rational>".into(),
                });
            }
            let parse_pos = |text: &str| -> Result<CommitteePosition> {
                let values: Vec<u8> = text
                    .split(',')
                    .map(|p| {
                        p.trim().parse().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("bad position {p:?}"),
                        })
                    })
                    .collect::<Result<_>>()?;
                CommitteePosition::from_unsorted(values)
            };
            let i1 = parse_pos(cells[0])?;
            let i2 = parse_pos(cells[1])?;
            if i1 >= i2 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "rows must have I1 < I2 lexicographically".into(),
                });
            }
            rows.insert((i1, i2), parse_rational(cells[2].trim())?);
        }
        // completeness over realizable canonical pairs
        let mut expected = 0usize;
        for (i1, i2) in realizable_pairs(m, k, s)? {
            if i1 < i2 {
                expected += 1;
                if !rows.contains_key(&(i1.clone(), i2.clone())) {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("missing row for pair ({i1:?}, {i2:?})"),
                    });
                }
            }
        }
        if rows.len() != expected {
            return Err(Error::Parse {
                line: 0,
                msg: format!("table has {} rows, expected {expected}", rows.len()),
            });
        }
        Ok(DecisionScoringFunction {
            m,
            k,
            s,
            table: rows,
            label: "table".into(),
        })
    }
}

/// Searches the sampled committees for a strict-preference 3-cycle under `d`.
/// Returns the first witness triple in scan order, or `None`.
pub fn find_intransitivity(
    d: &DecisionScoringFunction,
    situation: &VotingSituation,
    committees: &[Committee],
) -> Result<Option<(Committee, Committee, Committee)>> {
    if !situation.is_nonnegative_integer() {
        return Err(Error::InvalidParameter(
            "intransitivity search expects a nonnegative-integer situation".into(),
        ));
    }
    let applicable = |c1: &Committee, c2: &Committee| c1 != c2 && c1.intersection_size(c2) == d.s();
    for c1 in committees {
        for c2 in committees {
            if !applicable(c1, c2) || d.decide(c1, c2, situation)? != Ordering::Greater {
                continue;
            }
            for c3 in committees {
                if !applicable(c2, c3) || !applicable(c3, c1) {
                    continue;
                }
                if d.decide(c2, c3, situation)? == Ordering::Greater
                    && d.decide(c3, c1, situation)? == Ordering::Greater
                {
                    return Ok(Some((c1.clone(), c2.clone(), c3.clone())));
                }
            }
        }
    }
    Ok(None)
}

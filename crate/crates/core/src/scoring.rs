//! Committee scoring functions, the built-in rule catalog, score evaluation,
//! and transitive committee ranking.
//!
//! A committee scoring function assigns an exact rational to every committee
//! position in `[m]_k` and must respect position dominance: if `I` dominates
//! `J` then the score of `I` is at least the score of `J`. Tables are stored
//! extensionally over all of `[m]_k` so that recovered tables and built-in
//! ones share a representation and compare by exact equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::combinat::{dominates, enumerate_positions};
use crate::error::{Error, Result};
use crate::model::{Committee, CommitteePosition, VotingSituation};
use crate::rational::{format_rational, frac, parse_rational, rat, sign, Rational};

/// Borda points for a single position: `m - i`.
fn borda(m: u8, i: u8) -> Rational {
    rat((m - i) as i64)
}

/// `t`-approval points for a single position: 1 if `i <= t`, else 0.
fn t_approval(t: u8, i: u8) -> Rational {
    if i <= t {
        rat(1)
    } else {
        rat(0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BuiltinRule {
    Sntv,
    Bloc,
    KBorda,
    ChamberlinCourant,
    Pav { t: u8 },
}

impl BuiltinRule {
    /// Parses `sntv`, `bloc`, `k-borda`, `cc`, or `pav` (with `t` given
    /// separately or inline as `pav:<t>`).
    pub fn from_name(name: &str, t: Option<u8>) -> Result<Self> {
        let (base, inline_t) = match name.split_once(':') {
            Some((base, t_text)) => {
                let parsed: u8 = t_text
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad t parameter {t_text:?}")))?;
                (base, Some(parsed))
            }
            None => (name, None),
        };
        let t = inline_t.or(t);
        match base {
            "sntv" => Ok(BuiltinRule::Sntv),
            "bloc" => Ok(BuiltinRule::Bloc),
            "k-borda" | "kborda" => Ok(BuiltinRule::KBorda),
            "cc" => Ok(BuiltinRule::ChamberlinCourant),
            "pav" => {
                let t = t.ok_or_else(|| {
                    Error::InvalidParameter("pav requires a t parameter (pav:<t>)".into())
                })?;
                Ok(BuiltinRule::Pav { t })
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown rule {other:?}; expected sntv, bloc, k-borda, cc, or pav:<t>"
            ))),
        }
    }

    pub fn label(&self) -> String {
        match self {
            BuiltinRule::Sntv => "sntv".into(),
            BuiltinRule::Bloc => "bloc".into(),
            BuiltinRule::KBorda => "k-borda".into(),
            BuiltinRule::ChamberlinCourant => "cc".into(),
            BuiltinRule::Pav { t } => format!("pav:{t}"),
        }
    }

    /// All catalog rules that are defined for a given `m`.
    pub fn catalog(m: u8) -> Vec<BuiltinRule> {
        let mut rules = vec![
            BuiltinRule::Sntv,
            BuiltinRule::Bloc,
            BuiltinRule::KBorda,
            BuiltinRule::ChamberlinCourant,
            BuiltinRule::Pav { t: 1 },
        ];
        if m >= 2 {
            rules.push(BuiltinRule::Pav { t: 2 });
        }
        rules
    }

    /// Value of the scoring function on one sorted committee position.
    fn evaluate(&self, m: u8, position: &CommitteePosition) -> Rational {
        let sorted = position.positions();
        match self {
            BuiltinRule::Sntv => sorted.iter().map(|&i| t_approval(1, i)).sum(),
            BuiltinRule::Bloc => {
                let k = position.k();
                sorted.iter().map(|&i| t_approval(k, i)).sum()
            }
            BuiltinRule::KBorda => sorted.iter().map(|&i| borda(m, i)).sum(),
            BuiltinRule::ChamberlinCourant => borda(m, sorted[0]),
            BuiltinRule::Pav { t } => sorted
                .iter()
                .enumerate()
                .map(|(j, &i)| frac(1, j as i64 + 1) * t_approval(*t, i))
                .sum(),
        }
    }
}

/// An exact-rational committee scoring function over all of `[m]_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct CommitteeScoringFunction {
    m: u8,
    k: u8,
    table: BTreeMap<CommitteePosition, Rational>,
    /// False when the table fails dominance-monotonicity; such tables are
    /// accepted as negative controls but marked non-canonical.
    canonical: bool,
    label: String,
}

impl fmt::Debug for CommitteeScoringFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CommitteeScoringFunction({}, m={}, k={})",
            self.label, self.m, self.k
        )
    }
}

impl CommitteeScoringFunction {
    /// Builds one of the catalog rules.
    pub fn builtin(rule: BuiltinRule, m: u8, k: u8) -> Result<Self> {
        if k == 0 || k > m {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= k <= m, got m={m} k={k}"
            )));
        }
        if let BuiltinRule::Pav { t } = rule {
            if t == 0 || t > m {
                return Err(Error::InvalidParameter(format!(
                    "pav needs 1 <= t <= m, got t={t}"
                )));
            }
        }
        let table = enumerate_positions(m, k)?
            .into_iter()
            .map(|position| {
                let value = rule.evaluate(m, &position);
                (position, value)
            })
            .collect();
        Ok(CommitteeScoringFunction {
            m,
            k,
            table,
            canonical: true,
            label: rule.label(),
        })
    }

    /// Builds a scoring function from an explicit table. The table must cover
    /// all of `[m]_k`; dominance violations are tolerated but flagged.
    pub fn from_table(
        m: u8,
        k: u8,
        table: BTreeMap<CommitteePosition, Rational>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let expected = enumerate_positions(m, k)?;
        if table.len() != expected.len() {
            return Err(Error::InvalidParameter(format!(
                "table has {} entries, expected {}",
                table.len(),
                expected.len()
            )));
        }
        for position in &expected {
            if !table.contains_key(position) {
                return Err(Error::InvalidParameter(format!(
                    "table is missing position {position:?}"
                )));
            }
        }
        let mut function = CommitteeScoringFunction {
            m,
            k,
            table,
            canonical: true,
            label: label.into(),
        };
        function.canonical = function.check_dominance_monotone()?.is_none();
        Ok(function)
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True unless the table violates dominance-monotonicity.
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn value(&self, position: &CommitteePosition) -> Result<&Rational> {
        self.table.get(position).ok_or_else(|| {
            Error::InvalidParameter(format!("position {position:?} is outside [m]_k"))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CommitteePosition, &Rational)> {
        self.table.iter()
    }

    /// First dominance violation `(I, J)` with `I` dominating `J` but scoring
    /// less, or `None` when the table is dominance-monotone.
    pub fn check_dominance_monotone(
        &self,
    ) -> Result<Option<(CommitteePosition, CommitteePosition)>> {
        for (i, vi) in &self.table {
            for (j, vj) in &self.table {
                if dominates(i, j)? && vi < vj {
                    return Ok(Some((i.clone(), j.clone())));
                }
            }
        }
        Ok(None)
    }

    /// Affine image `q * self + c`; for `q > 0` this induces the same rule.
    pub fn affine(&self, q: &Rational, c: &Rational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidParameter("zero scale factor".into()));
        }
        let table = self
            .table
            .iter()
            .map(|(position, value)| (position.clone(), value * q + c))
            .collect();
        CommitteeScoringFunction::from_table(
            self.m,
            self.k,
            table,
            format!(
                "{}*{}+{}",
                format_rational(q),
                self.label,
                format_rational(c)
            ),
        )
    }

    /// Total score the voters of `situation` assign to `committee`.
    pub fn committee_score(
        &self,
        committee: &Committee,
        situation: &VotingSituation,
    ) -> Result<Rational> {
        if situation.m() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "scoring function over m={} applied to situation over m={}",
                self.m,
                situation.m()
            )));
        }
        if committee.k() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "scoring function for k={} applied to committee of size {}",
                self.k,
                committee.k()
            )));
        }
        let mut total = Rational::zero();
        for (vote, count) in situation.iter() {
            let position = vote.position_of_committee(committee)?;
            total += count * self.value(&position)?;
        }
        Ok(total)
    }

    /// Sign of `score(c1) - score(c2)`.
    pub fn compare(
        &self,
        c1: &Committee,
        c2: &Committee,
        situation: &VotingSituation,
    ) -> Result<Ordering> {
        let s1 = self.committee_score(c1, situation)?;
        let s2 = self.committee_score(c2, situation)?;
        Ok(sign(&(s1 - s2)))
    }

    /// All committees ordered by descending score; equal scores share a class.
    pub fn rank_committees(&self, situation: &VotingSituation) -> Result<WeakOrder> {
        let committees: Vec<Committee> = enumerate_positions(self.m, self.k)?
            .into_iter()
            .map(|position| Committee::new(position.positions().to_vec()))
            .collect::<Result<_>>()?;
        let mut scored: Vec<(Rational, Committee)> = committees
            .into_iter()
            .map(|c| Ok((self.committee_score(&c, situation)?, c)))
            .collect::<Result<_>>()?;
        // descending by score, committees within a class in lexicographic order
        scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        let mut classes: Vec<(Rational, Vec<Committee>)> = Vec::new();
        for (score, committee) in scored {
            match classes.last_mut() {
                Some((s, members)) if *s == score => members.push(committee),
                _ => classes.push((score, vec![committee])),
            }
        }
        Ok(WeakOrder { classes })
    }

    /// Serializes the table as TSV: header `m<TAB>k`, then one
    /// `<positions><TAB><rational>` row per committee position.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("{}\t{}\n", self.m, self.k);
        for (position, value) in &self.table {
            let cells: Vec<String> = position.positions().iter().map(u8::to_string).collect();
            out.push_str(&format!(
                "{}\t{}\n",
                cells.join(","),
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
        let header_fields: Vec<&str> = header.split_whitespace().collect();
        if header_fields.len() != 2 {
            return Err(Error::Parse {
                line: 1,
                msg: "expected header `m<TAB>k`".into(),
            });
        }
        let m: u8 = header_fields[0].parse().map_err(|_| Error::Parse {
            line: 1,
            msg: "bad m".into(),
        })?;
        let k: u8 = header_fields[1].parse().map_err(|_| Error::Parse {
            line: 1,
            msg: "bad k".into(),
        })?;
        let mut table = BTreeMap::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let (positions_text, value_text) =
                line.split_once('\t').ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: "expected <positions>\\t<rational>".into(),
                })?;
            let positions: Vec<u8> = positions_text
                .split(',')
                .map(|p| {
                    p.trim().parse().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad position {p:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            let position = CommitteePosition::from_unsorted(positions)?;
            let value = parse_rational(value_text.trim())?;
            if table.insert(position, value).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "duplicate position row".into(),
                });
            }
        }
        CommitteeScoringFunction::from_table(m, k, table, "table")
    }
}

/// Equivalence classes of committees, best class first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeakOrder {
    classes: Vec<(Rational, Vec<Committee>)>,
}

impl WeakOrder {
    pub fn classes(&self) -> &[(Rational, Vec<Committee>)] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Ordering of two committees implied by the classes.
    pub fn compare(&self, c1: &Committee, c2: &Committee) -> Option<Ordering> {
        let find = |c: &Committee| self.classes.iter().position(|(_, cls)| cls.contains(c));
        match (find(c1), find(c2)) {
            (Some(i), Some(j)) => Some(j.cmp(&i)), // earlier class is better
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{null_profile, Vote};

    fn committee(members: &[u8]) -> Committee {
        Committee::new(members.to_vec()).unwrap()
    }

    fn pos(values: &[u8]) -> CommitteePosition {
        CommitteePosition::new(values.to_vec()).unwrap()
    }

    fn vote(ranking: &[u8]) -> Vote {
        Vote::new(ranking.to_vec()).unwrap()
    }

    #[test]
    fn builtin_table_values() {
        let kborda = CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 4, 2).unwrap();
        assert_eq!(*kborda.value(&pos(&[1, 3])).unwrap(), rat(4));

        let pav = CommitteeScoringFunction::builtin(BuiltinRule::Pav { t: 2 }, 4, 2).unwrap();
        assert_eq!(*pav.value(&pos(&[1, 2])).unwrap(), frac(3, 2));

        let cc = CommitteeScoringFunction::builtin(BuiltinRule::ChamberlinCourant, 4, 2).unwrap();
        assert_eq!(*cc.value(&pos(&[2, 4])).unwrap(), rat(2));

        let sntv = CommitteeScoringFunction::builtin(BuiltinRule::Sntv, 4, 2).unwrap();
        assert_eq!(*sntv.value(&pos(&[1, 3])).unwrap(), rat(1));
        assert_eq!(*sntv.value(&pos(&[2, 3])).unwrap(), rat(0));

        let bloc = CommitteeScoringFunction::builtin(BuiltinRule::Bloc, 4, 2).unwrap();
        assert_eq!(*bloc.value(&pos(&[1, 2])).unwrap(), rat(2));
        assert_eq!(*bloc.value(&pos(&[2, 3])).unwrap(), rat(1));
    }

    #[test]
    fn builtin_parameter_validation() {
        assert!(CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 3, 4).is_err());
        assert!(CommitteeScoringFunction::builtin(BuiltinRule::Pav { t: 0 }, 3, 2).is_err());
        assert!(CommitteeScoringFunction::builtin(BuiltinRule::Pav { t: 5 }, 3, 2).is_err());
        assert!(BuiltinRule::from_name("pav", None).is_err());
        assert!(BuiltinRule::from_name("nonsense", None).is_err());
        assert_eq!(
            BuiltinRule::from_name("pav:2", None).unwrap(),
            BuiltinRule::Pav { t: 2 }
        );
    }

    #[test]
    fn committee_score_hand_enumerated() {
        // P = {a>b>c>d, b>a>d>c}: both votes rank {a,b} on {1,2}
        let kborda = CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 4, 2).unwrap();
        let p = VotingSituation::from_counts(
            4,
            [(vote(&[1, 2, 3, 4]), rat(1)), (vote(&[2, 1, 4, 3]), rat(1))],
        )
        .unwrap();
        assert_eq!(
            kborda.committee_score(&committee(&[1, 2]), &p).unwrap(),
            rat(10)
        );
        assert_eq!(
            kborda.committee_score(&committee(&[3, 4]), &p).unwrap(),
            rat(2)
        );
        assert_eq!(
            kborda
                .committee_score(&committee(&[1, 2]), &VotingSituation::empty(4))
                .unwrap(),
            rat(0)
        );

        assert_eq!(
            kborda
                .compare(&committee(&[1, 2]), &committee(&[3, 4]), &p)
                .unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            kborda
                .compare(&committee(&[1, 2]), &committee(&[1, 2]), &p)
                .unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn null_profile_ties_everything() {
        let kborda = CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 4, 2).unwrap();
        let e = null_profile(4).unwrap();
        assert_eq!(
            kborda
                .compare(&committee(&[1, 2]), &committee(&[3, 4]), &e)
                .unwrap(),
            Ordering::Equal
        );
        let order = kborda.rank_committees(&e).unwrap();
        assert_eq!(order.class_count(), 1);
    }

    #[test]
    fn rank_committees_single_winner() {
        let borda = CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 3, 1).unwrap();
        let p = VotingSituation::single(vote(&[1, 2, 3]));
        let order = borda.rank_committees(&p).unwrap();
        let classes = order.classes();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0].1, vec![committee(&[1])]);
        assert_eq!(classes[1].1, vec![committee(&[2])]);
        assert_eq!(classes[2].1, vec![committee(&[3])]);
        assert_eq!(classes[0].0, rat(2));
    }

    #[test]
    fn rank_committees_pairs() {
        // hand enumeration: {a,b} -> 3, {a,c} -> 2, {b,c} -> 1
        let kborda = CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 3, 2).unwrap();
        let p = VotingSituation::single(vote(&[1, 2, 3]));
        let order = kborda.rank_committees(&p).unwrap();
        let classes = order.classes();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0].1, vec![committee(&[1, 2])]);
        assert_eq!(classes[1].1, vec![committee(&[1, 3])]);
        assert_eq!(classes[2].1, vec![committee(&[2, 3])]);
    }

    #[test]
    fn rank_agrees_with_compare_exhaustively() {
        for (m, k) in [(3u8, 1u8), (3, 2), (4, 2), (5, 2)] {
            let rule = CommitteeScoringFunction::builtin(BuiltinRule::KBorda, m, k).unwrap();
            let p = VotingSituation::from_counts(
                m,
                [
                    (Vote::new((1..=m).collect()).unwrap(), rat(2)),
                    (Vote::new((1..=m).rev().collect()).unwrap(), rat(1)),
                ],
            )
            .unwrap();
            let order = rule.rank_committees(&p).unwrap();
            let committees: Vec<Committee> = enumerate_positions(m, k)
                .unwrap()
                .into_iter()
                .map(|i| Committee::new(i.positions().to_vec()).unwrap())
                .collect();
            for c1 in &committees {
                for c2 in &committees {
                    assert_eq!(
                        order.compare(c1, c2).unwrap(),
                        rule.compare(c1, c2, &p).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn dominance_check_catches_bad_table() {
        let mut table = BTreeMap::new();
        table.insert(pos(&[1, 2]), rat(0));
        table.insert(pos(&[1, 3]), rat(1));
        table.insert(pos(&[2, 3]), rat(0));
        let f = CommitteeScoringFunction::from_table(3, 2, table, "bad").unwrap();
        assert!(!f.is_canonical());
        let violation = f.check_dominance_monotone().unwrap().unwrap();
        assert_eq!(violation, (pos(&[1, 2]), pos(&[1, 3])));
    }

    #[test]
    fn constant_table_is_monotone() {
        let table: BTreeMap<_, _> = enumerate_positions(3, 2)
            .unwrap()
            .into_iter()
            .map(|i| (i, rat(5)))
            .collect();
        let f = CommitteeScoringFunction::from_table(3, 2, table, "const").unwrap();
        assert!(f.is_canonical());
    }

    #[test]
    fn builtins_are_dominance_monotone_exhaustive() {
        for m in 2..=6u8 {
            for k in 1..=m {
                for rule in BuiltinRule::catalog(m) {
                    let f = CommitteeScoringFunction::builtin(rule, m, k).unwrap();
                    assert!(f.check_dominance_monotone().unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn tsv_round_trip() {
        let f = CommitteeScoringFunction::builtin(BuiltinRule::Pav { t: 2 }, 4, 2).unwrap();
        let text = f.to_tsv();
        let g = CommitteeScoringFunction::from_tsv(&text).unwrap();
        assert_eq!(g.m(), 4);
        assert_eq!(g.k(), 2);
        for (position, value) in f.iter() {
            assert_eq!(g.value(position).unwrap(), value);
        }
    }

    #[test]
    fn incomplete_table_rejected() {
        let mut table = BTreeMap::new();
        table.insert(pos(&[1, 2]), rat(1));
        assert!(CommitteeScoringFunction::from_table(3, 2, table, "short").is_err());
    }

    // comparisons are invariant under the extended-domain moves that define
    // the unique extension to rational multiplicities: subtracting whole
    // copies of the null profile and dividing by a positive integer
    #[test]
    fn compare_invariant_on_extended_domain() {
        let kborda = CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 3, 2).unwrap();
        let e = null_profile(3).unwrap();
        let p = VotingSituation::from_counts(
            3,
            [(vote(&[1, 2, 3]), rat(4)), (vote(&[3, 1, 2]), rat(2))],
        )
        .unwrap();
        let c1 = committee(&[1, 2]);
        let c2 = committee(&[2, 3]);
        let base = kborda.compare(&c1, &c2, &p).unwrap();
        for ell in 1..=3i64 {
            let shifted = p.combine(&e.scale(&rat(-ell))).unwrap();
            assert_eq!(kborda.compare(&c1, &c2, &shifted).unwrap(), base);
            let divided = p.scale(&frac(1, ell));
            assert_eq!(kborda.compare(&c1, &c2, &divided).unwrap(), base);
        }
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<CommitteeScoringFunction>();
        assert_send_sync::<WeakOrder>();
        assert_send_sync::<VotingSituation>();
        assert_send_sync::<Committee>();
        assert_send_sync::<crate::axioms::RuleOracle>();
        assert_send_sync::<crate::linalg::SymmetricBasisElement>();
    }
}

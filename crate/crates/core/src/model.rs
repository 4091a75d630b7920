//! Candidates, linear orders, voting situations, and permutation actions.
//!
//! Candidates are canonical integer ids `1..=m`; display names exist only at
//! the parse/serialize boundary (see [`crate::profile_fmt`]). The canonical
//! internal representation of an electorate is the [`VotingSituation`]: a map
//! from linear orders to exact rational multiplicities. Multiplicities may be
//! negative or fractional; operations that are only meaningful on
//! nonnegative-integer situations validate and reject otherwise.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

pub type CandidateId = u8;
pub type VoterId = u32;

/// Full vote enumeration is refused above this many candidates (8! = 40320
/// linear orders) unless a caller passes an explicit higher limit.
pub const DEFAULT_ENUM_LIMIT: u8 = 8;

/// Default display name for a candidate id: `a`, `b`, ..., `z`, then `c27`...
pub fn default_name(id: CandidateId) -> String {
    if (1..=26).contains(&id) {
        ((b'a' + id - 1) as char).to_string()
    } else {
        format!("c{id}")
    }
}

/// A strict linear order over candidates `1..=m`; index 0 is the top choice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vote {
    ranking: Vec<CandidateId>,
}

impl Vote {
    /// Builds a vote from a top-to-bottom ranking of all of `1..=m`.
    pub fn new(ranking: Vec<CandidateId>) -> Result<Self> {
        let m = ranking.len() as u8;
        let mut seen = vec![false; m as usize + 1];
        for &c in &ranking {
            if c == 0 || c > m {
                return Err(Error::UnknownCandidate(c));
            }
            if seen[c as usize] {
                return Err(Error::InvalidParameter(format!(
                    "candidate {c} appears twice in ranking"
                )));
            }
            seen[c as usize] = true;
        }
        Ok(Vote { ranking })
    }

    pub fn m(&self) -> u8 {
        self.ranking.len() as u8
    }

    pub fn ranking(&self) -> &[CandidateId] {
        &self.ranking
    }

    /// Position of candidate `a` in this vote; the top choice has position 1.
    pub fn position_of(&self, a: CandidateId) -> Result<u8> {
        self.ranking
            .iter()
            .position(|&c| c == a)
            .map(|i| i as u8 + 1)
            .ok_or(Error::UnknownCandidate(a))
    }

    /// The sorted set of positions the members of `committee` occupy.
    pub fn position_of_committee(&self, committee: &Committee) -> Result<CommitteePosition> {
        let mut positions = Vec::with_capacity(committee.k() as usize);
        for &a in committee.members() {
            positions.push(self.position_of(a)?);
        }
        positions.sort_unstable();
        CommitteePosition::new(positions)
    }

    /// Relabels candidates: the candidate at each rank becomes its image.
    pub fn permute(&self, sigma: &Permutation) -> Result<Vote> {
        if sigma.m() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "permutation over {} candidates applied to vote over {}",
                sigma.m(),
                self.m()
            )));
        }
        let ranking = self.ranking.iter().map(|&c| sigma.image(c)).collect();
        Vote::new(ranking)
    }

    /// The vote with candidates `a` and `b` exchanged.
    pub fn swap(&self, a: CandidateId, b: CandidateId) -> Result<Vote> {
        let mut ranking = self.ranking.clone();
        let ia = self.position_of(a)? as usize - 1;
        let ib = self.position_of(b)? as usize - 1;
        ranking.swap(ia, ib);
        Vote::new(ranking)
    }
}

impl fmt::Debug for Vote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.ranking.iter().map(|&c| default_name(c)).collect();
        write!(f, "{}", names.join(">"))
    }
}

/// A size-`k` committee: a sorted set of candidate ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Committee {
    members: Vec<CandidateId>,
}

impl Committee {
    pub fn new(mut members: Vec<CandidateId>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(
                "committee members must be distinct".into(),
            ));
        }
        if members.contains(&0) {
            return Err(Error::UnknownCandidate(0));
        }
        Ok(Committee { members })
    }

    pub fn k(&self) -> u8 {
        self.members.len() as u8
    }

    pub fn members(&self) -> &[CandidateId] {
        &self.members
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    pub fn intersection_size(&self, other: &Committee) -> u8 {
        self.members.iter().filter(|c| other.contains(**c)).count() as u8
    }

    /// Setwise image under a candidate permutation.
    pub fn permute(&self, sigma: &Permutation) -> Result<Committee> {
        if self.members.iter().any(|&c| c > sigma.m()) {
            return Err(Error::DimensionMismatch(format!(
                "committee member outside the permutation's 1..={} range",
                sigma.m()
            )));
        }
        Committee::new(self.members.iter().map(|&c| sigma.image(c)).collect())
    }
}

impl fmt::Debug for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.members.iter().map(|&c| default_name(c)).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// A sorted set of `k` positions from `1..=m`: where a committee sits in one
/// vote.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommitteePosition {
    positions: Vec<u8>,
}

impl CommitteePosition {
    pub fn new(positions: Vec<u8>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidParameter("empty position set".into()));
        }
        if !positions.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "positions must be strictly increasing".into(),
            ));
        }
        if positions[0] == 0 {
            return Err(Error::InvalidParameter("positions start at 1".into()));
        }
        Ok(CommitteePosition { positions })
    }

    pub fn from_unsorted(mut positions: Vec<u8>) -> Result<Self> {
        positions.sort_unstable();
        Self::new(positions)
    }

    pub fn k(&self) -> u8 {
        self.positions.len() as u8
    }

    pub fn positions(&self) -> &[u8] {
        &self.positions
    }

    pub fn contains(&self, p: u8) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    pub fn intersection_size(&self, other: &CommitteePosition) -> u8 {
        self.positions
            .iter()
            .filter(|p| other.contains(**p))
            .count() as u8
    }

    pub fn max(&self) -> u8 {
        *self.positions.last().unwrap()
    }
}

impl fmt::Debug for CommitteePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A bijection on candidate ids `1..=m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    // mapping[i-1] is the image of candidate i
    mapping: Vec<CandidateId>,
}

impl Permutation {
    pub fn new(mapping: Vec<CandidateId>) -> Result<Self> {
        let m = mapping.len() as u8;
        let mut seen = vec![false; m as usize + 1];
        for &c in &mapping {
            if c == 0 || c > m || seen[c as usize] {
                return Err(Error::InvalidParameter(
                    "mapping is not a bijection on 1..=m".into(),
                ));
            }
            seen[c as usize] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(m: u8) -> Self {
        Permutation {
            mapping: (1..=m).collect(),
        }
    }

    /// The transposition (a b), identity elsewhere.
    pub fn transposition(m: u8, a: CandidateId, b: CandidateId) -> Result<Self> {
        let mut p = Permutation::identity(m);
        if a == 0 || a > m || b == 0 || b > m {
            return Err(Error::UnknownCandidate(a.max(b)));
        }
        p.mapping[a as usize - 1] = b;
        p.mapping[b as usize - 1] = a;
        Ok(p)
    }

    /// The cycle c_1 -> c_2 -> ... -> c_n -> c_1, identity elsewhere.
    pub fn cycle(m: u8, cycle: &[CandidateId]) -> Result<Self> {
        let mut p = Permutation::identity(m);
        for w in cycle.windows(2) {
            p.mapping[w[0] as usize - 1] = w[1];
        }
        if let (Some(&last), Some(&first)) = (cycle.last(), cycle.first()) {
            p.mapping[last as usize - 1] = first;
        }
        Permutation::new(p.mapping)
    }

    pub fn m(&self) -> u8 {
        self.mapping.len() as u8
    }

    pub fn image(&self, c: CandidateId) -> CandidateId {
        self.mapping[c as usize - 1]
    }

    /// `self . other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.m() != other.m() {
            return Err(Error::DimensionMismatch(
                "composing permutations of different sizes".into(),
            ));
        }
        Permutation::new(other.mapping.iter().map(|&c| self.image(c)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut mapping = vec![0; self.mapping.len()];
        for (i, &c) in self.mapping.iter().enumerate() {
            mapping[c as usize - 1] = i as u8 + 1;
        }
        Permutation { mapping }
    }
}

/// An anonymized electorate: exact rational multiplicity per linear order.
/// Only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VotingSituation {
    m: u8,
    counts: BTreeMap<Vote, Rational>,
}

impl VotingSituation {
    pub fn empty(m: u8) -> Self {
        VotingSituation {
            m,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts<I>(m: u8, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vote, Rational)>,
    {
        let mut situation = VotingSituation::empty(m);
        for (vote, count) in entries {
            situation.add_vote(&vote, &count)?;
        }
        Ok(situation)
    }

    /// Single vote with multiplicity 1.
    pub fn single(vote: Vote) -> Self {
        let m = vote.m();
        let mut counts = BTreeMap::new();
        counts.insert(vote, rat(1));
        VotingSituation { m, counts }
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of distinct linear orders with nonzero multiplicity.
    pub fn support_size(&self) -> usize {
        self.counts.len()
    }

    /// Sum of all multiplicities.
    pub fn total_weight(&self) -> Rational {
        self.counts.values().sum()
    }

    pub fn count(&self, vote: &Vote) -> Rational {
        self.counts
            .get(vote)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vote, &Rational)> {
        self.counts.iter()
    }

    pub fn add_vote(&mut self, vote: &Vote, count: &Rational) -> Result<()> {
        if vote.m() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "vote over {} candidates added to situation over {}",
                vote.m(),
                self.m
            )));
        }
        if count.is_zero() {
            return Ok(());
        }
        let entry = self
            .counts
            .entry(vote.clone())
            .or_insert_with(Rational::zero);
        *entry += count;
        if entry.is_zero() {
            self.counts.remove(vote);
        }
        Ok(())
    }

    /// Pointwise sum of multiplicities.
    pub fn combine(&self, other: &VotingSituation) -> Result<VotingSituation> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "combining situations over {} and {} candidates",
                self.m, other.m
            )));
        }
        let mut result = self.clone();
        for (vote, count) in other.iter() {
            result.add_vote(vote, count)?;
        }
        Ok(result)
    }

    /// Pointwise multiplication by an exact rational.
    pub fn scale(&self, q: &Rational) -> VotingSituation {
        if q.is_zero() {
            return VotingSituation::empty(self.m);
        }
        let counts = self
            .counts
            .iter()
            .map(|(vote, count)| (vote.clone(), count * q))
            .collect();
        VotingSituation { m: self.m, counts }
    }

    /// Transports multiplicities along a candidate relabeling.
    pub fn permute(&self, sigma: &Permutation) -> Result<VotingSituation> {
        let mut result = VotingSituation::empty(self.m);
        for (vote, count) in self.iter() {
            result.add_vote(&vote.permute(sigma)?, count)?;
        }
        Ok(result)
    }

    /// True when every multiplicity is a nonnegative integer, i.e. the
    /// situation is an actual anonymized profile.
    pub fn is_nonnegative_integer(&self) -> bool {
        self.counts
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

/// All `m!` votes in lexicographic ranking order, refusing above `limit`.
pub fn all_votes_with_limit(m: u8, limit: u8) -> Result<Vec<Vote>> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if m > limit {
        return Err(Error::ResourceCap(format!(
            "enumerating {m}! linear orders exceeds the limit of {limit} candidates"
        )));
    }
    let mut votes = Vec::new();
    let mut current: Vec<CandidateId> = (1..=m).collect();
    loop {
        votes.push(Vote {
            ranking: current.clone(),
        });
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(votes)
}

pub fn all_votes(m: u8) -> Result<Vec<Vote>> {
    all_votes_with_limit(m, DEFAULT_ENUM_LIMIT)
}

fn next_permutation(seq: &mut [CandidateId]) -> bool {
    let n = seq.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// The null profile: every linear order exactly once. Fixed by every
/// candidate permutation, so all committees tie under any symmetric rule.
pub fn null_profile(m: u8) -> Result<VotingSituation> {
    null_profile_with_limit(m, DEFAULT_ENUM_LIMIT)
}

pub fn null_profile_with_limit(m: u8, limit: u8) -> Result<VotingSituation> {
    let votes = all_votes_with_limit(m, limit)?;
    VotingSituation::from_counts(m, votes.into_iter().map(|v| (v, rat(1))))
}

/// An ordered profile: voters with identities. Exists so that anonymity can
/// be tested as stated; everything else works on [`VotingSituation`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Profile {
    m: u8,
    voters: Vec<(VoterId, Vote)>,
}

impl Profile {
    pub fn new(m: u8, voters: Vec<(VoterId, Vote)>) -> Result<Self> {
        let mut ids: Vec<VoterId> = voters.iter().map(|(id, _)| *id).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("voter ids must be distinct".into()));
        }
        for (_, vote) in &voters {
            if vote.m() != m {
                return Err(Error::DimensionMismatch(
                    "vote size does not match profile".into(),
                ));
            }
        }
        Ok(Profile { m, voters })
    }

    /// Numbers voters 1..=n in the given order.
    pub fn from_votes(m: u8, votes: Vec<Vote>) -> Result<Self> {
        let voters = votes
            .into_iter()
            .enumerate()
            .map(|(i, v)| (i as VoterId + 1, v))
            .collect();
        Profile::new(m, voters)
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn voters(&self) -> &[(VoterId, Vote)] {
        &self.voters
    }

    pub fn len(&self) -> usize {
        self.voters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.voters.is_empty()
    }

    pub fn to_situation(&self) -> VotingSituation {
        let mut situation = VotingSituation::empty(self.m);
        for (_, vote) in &self.voters {
            situation.add_vote(vote, &rat(1)).expect("same m");
        }
        situation
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn vote(ranking: &[u8]) -> Vote {
        Vote::new(ranking.to_vec()).unwrap()
    }

    #[test]
    fn position_of_candidate() {
        // v = a>b>c>d
        let v = vote(&[1, 2, 3, 4]);
        assert_eq!(v.position_of(1).unwrap(), 1);
        assert_eq!(v.position_of(4).unwrap(), 4);
        // v = b>a>d>c
        let v = vote(&[2, 1, 4, 3]);
        assert_eq!(v.position_of(4).unwrap(), 3);
        assert!(v.position_of(5).is_err());
    }

    #[test]
    fn position_of_committee() {
        let v = vote(&[1, 2, 3, 4]); // a>b>c>d
        let c = Committee::new(vec![1, 3]).unwrap();
        assert_eq!(v.position_of_committee(&c).unwrap().positions(), &[1, 3]);
        let v = vote(&[2, 1, 4, 3]); // b>a>d>c
        let ab = Committee::new(vec![1, 2]).unwrap();
        assert_eq!(v.position_of_committee(&ab).unwrap().positions(), &[1, 2]);
        let cd = Committee::new(vec![3, 4]).unwrap();
        assert_eq!(v.position_of_committee(&cd).unwrap().positions(), &[3, 4]);
        let bad = Committee::new(vec![1, 5]).unwrap();
        assert!(v.position_of_committee(&bad).is_err());
    }

    #[test]
    fn permutation_actions() {
        let m = 3;
        let id = Permutation::identity(m);
        let v = vote(&[1, 3, 2]); // a>c>b
        assert_eq!(v.permute(&id).unwrap(), v);

        // (a b) applied to a>c>b gives b>c>a
        let swap = Permutation::transposition(m, 1, 2).unwrap();
        assert_eq!(v.permute(&swap).unwrap(), vote(&[2, 3, 1]));

        // (a b) applied to {a,c} gives {b,c}
        let c = Committee::new(vec![1, 3]).unwrap();
        assert_eq!(
            c.permute(&swap).unwrap(),
            Committee::new(vec![2, 3]).unwrap()
        );

        // sigma(sigma^{-1}(x)) = x
        let sigma = Permutation::new(vec![2, 3, 1]).unwrap();
        let w = v
            .permute(&sigma.inverse())
            .unwrap()
            .permute(&sigma)
            .unwrap();
        assert_eq!(w, v);
    }

    #[test]
    fn combine_and_scale() {
        let v1 = vote(&[1, 2, 3]);
        let p = VotingSituation::single(v1.clone());
        let zero = VotingSituation::empty(3);
        assert_eq!(p.combine(&zero).unwrap(), p);

        let two = p.scale(&rat(2));
        assert_eq!(p.combine(&two).unwrap().count(&v1), rat(3));

        // cancellation in the extended domain
        let neg = p.scale(&rat(-1));
        assert!(p.combine(&neg).unwrap().is_zero());

        assert_eq!(p.scale(&rat(1)), p);
        assert!(p.scale(&rat(0)).is_zero());
        assert_eq!(p.scale(&rat(3)).scale(&frac(1, 2)).count(&v1), frac(3, 2));

        let p4 = VotingSituation::single(vote(&[1, 2, 3, 4]));
        assert!(p.combine(&p4).is_err());
    }

    #[test]
    fn null_profile_small() {
        let e = null_profile(2).unwrap();
        assert_eq!(e.support_size(), 2);
        assert!(e.iter().all(|(_, c)| *c == rat(1)));

        let e = null_profile(3).unwrap();
        assert_eq!(e.support_size(), 6);
        assert!(e.iter().all(|(_, c)| *c == rat(1)));

        let e = null_profile(1).unwrap();
        assert_eq!(e.support_size(), 1);

        assert!(null_profile(9).is_err());
        assert!(null_profile_with_limit(9, 9).is_ok());
    }

    #[test]
    fn null_profile_fixed_by_permutations() {
        let e = null_profile(3).unwrap();
        let sigma = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(e.permute(&sigma).unwrap(), e);
    }

    #[test]
    fn nonnegative_integer_detection() {
        let v = vote(&[1, 2]);
        let p = VotingSituation::single(v.clone());
        assert!(p.is_nonnegative_integer());
        assert!(!p.scale(&frac(1, 2)).is_nonnegative_integer());
        assert!(!p.scale(&rat(-1)).is_nonnegative_integer());
    }

    #[test]
    fn profile_voter_ids_distinct() {
        let v = vote(&[1, 2]);
        assert!(Profile::new(2, vec![(1, v.clone()), (1, v.clone())]).is_err());
        let p = Profile::new(2, vec![(1, v.clone()), (2, v.clone())]).unwrap();
        assert_eq!(p.to_situation().count(&v), rat(2));
    }
}

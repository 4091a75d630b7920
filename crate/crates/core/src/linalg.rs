//! Exact rational linear algebra over vote space and position space.
//!
//! Voting situations live in `Q^{m!}` (coordinates indexed by linear orders);
//! the position-difference function `alpha` maps them linearly into
//! `Q^{C(m,k)}` (coordinates indexed by committee positions). This module
//! provides dense exact Gaussian elimination, the `alpha` map and its range
//! analysis, and a constructive basis of `ker(alpha)` made entirely of
//! symmetric voting situations, each carrying a mechanically checkable
//! witness of its symmetry.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::combinat::{binomial, enumerate_positions, johnson_path, johnson_path_restricted};
use crate::error::{Error, Result};
use crate::model::{
    all_votes_with_limit, CandidateId, Committee, CommitteePosition, Permutation, Vote,
    VotingSituation,
};
use crate::rational::{rat, Rational};
use crate::scoring::CommitteeScoringFunction;

/// Kernel-basis construction is refused above this many candidates unless a
/// caller passes an explicit higher limit (6! = 720-dimensional vote space).
pub const DEFAULT_KERNEL_LIMIT: u8 = 6;

// ---------------------------------------------------------------------------
// dense exact matrices

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let row_count = rows.len();
        let col_count = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != col_count) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: row_count,
            cols: col_count,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = rat(1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.data[row * self.cols + col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut Rational {
        &mut self.data[row * self.cols + col]
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| !self.entry(r, col).is_zero());
            let Some(row) = found else { continue };
            if row != pivot_row {
                for c in 0..self.cols {
                    let a = row * self.cols + c;
                    let b = pivot_row * self.cols + c;
                    self.data.swap(a, b);
                }
            }
            let inv = rat(1) / self.entry(pivot_row, col).clone();
            for c in col..self.cols {
                let value = self.entry(pivot_row, c) * &inv;
                *self.entry_mut(pivot_row, c) = value;
            }
            for r in 0..self.rows {
                if r == pivot_row || self.entry(r, col).is_zero() {
                    continue;
                }
                let factor = self.entry(r, col).clone();
                for c in col..self.cols {
                    let value = self.entry(r, c) - &factor * self.entry(pivot_row, c);
                    *self.entry_mut(r, c) = value;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    /// Exact basis of the right nullspace; rank + nullity = column count.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut work = self.clone();
        let pivots = work.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut vector = vec![Rational::zero(); self.cols];
            vector[free] = rat(1);
            for (row, &pivot_col) in pivots.iter().enumerate() {
                vector[pivot_col] = -work.entry(row, free).clone();
            }
            basis.push(vector);
        }
        basis
    }
}

/// Incremental independence tracker: candidates are reduced against the rows
/// accepted so far, so a vector is kept only if it enlarges the span.
pub struct SpanTracker {
    cols: usize,
    // reduced rows with their leading column, kept sorted by column
    reduced: Vec<(usize, Vec<Rational>)>,
}

impl SpanTracker {
    pub fn new(cols: usize) -> Self {
        SpanTracker {
            cols,
            reduced: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Adds `vector` if independent of the accepted rows; returns whether it
    /// was accepted.
    pub fn try_add(&mut self, mut vector: Vec<Rational>) -> bool {
        assert_eq!(vector.len(), self.cols);
        for (lead, row) in &self.reduced {
            if !vector[*lead].is_zero() {
                let factor = vector[*lead].clone();
                for (v, r) in vector.iter_mut().zip(row) {
                    *v -= &factor * r;
                }
            }
        }
        match vector.iter().position(|v| !v.is_zero()) {
            None => false,
            Some(lead) => {
                let inv = rat(1) / vector[lead].clone();
                for v in vector.iter_mut() {
                    *v *= &inv;
                }
                self.reduced.push((lead, vector));
                self.reduced.sort_by_key(|(l, _)| *l);
                true
            }
        }
    }
}

// ---------------------------------------------------------------------------
// the position-difference function

/// A vector indexed by committee positions in `[m]_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PositionVector {
    m: u8,
    k: u8,
    entries: BTreeMap<CommitteePosition, Rational>,
}

impl PositionVector {
    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn get(&self, position: &CommitteePosition) -> Rational {
        self.entries
            .get(position)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn sum(&self) -> Rational {
        self.entries.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(Rational::is_zero)
    }

    /// Dense coordinates in the lexicographic order of `[m]_k`.
    pub fn to_dense(&self) -> Result<Vec<Rational>> {
        Ok(enumerate_positions(self.m, self.k)?
            .into_iter()
            .map(|position| self.get(&position))
            .collect())
    }
}

/// Total multiplicity of votes in `situation` that rank `committee` exactly
/// on position set `position`.
pub fn pos_weight(
    position: &CommitteePosition,
    committee: &Committee,
    situation: &VotingSituation,
) -> Result<Rational> {
    if committee.k() != position.k() {
        return Err(Error::DimensionMismatch(format!(
            "committee of size {} against position set of size {}",
            committee.k(),
            position.k()
        )));
    }
    let mut total = Rational::zero();
    for (vote, count) in situation.iter() {
        if vote.position_of_committee(committee)? == *position {
            total += count;
        }
    }
    Ok(total)
}

/// The committee position-difference function: entry `I` is
/// `pos_weight(I, c1) - pos_weight(I, c2)`. Linear in the situation, and its
/// entries always sum to zero.
pub fn alpha(
    c1: &Committee,
    c2: &Committee,
    situation: &VotingSituation,
) -> Result<PositionVector> {
    if c1.k() != c2.k() {
        return Err(Error::DimensionMismatch(
            "committees of different sizes".into(),
        ));
    }
    let m = situation.m();
    let k = c1.k();
    let mut entries = BTreeMap::new();
    for (vote, count) in situation.iter() {
        let i1 = vote.position_of_committee(c1)?;
        let i2 = vote.position_of_committee(c2)?;
        *entries.entry(i1).or_insert_with(Rational::zero) += count;
        *entries.entry(i2).or_insert_with(Rational::zero) -= count;
    }
    entries.retain(|_, v| !v.is_zero());
    Ok(PositionVector { m, k, entries })
}

/// A single vote ranking `c1` on `i1` and `c2` on `i2`, with all remaining
/// candidates in ascending id order on the remaining positions. Shared
/// members go to the shared positions, ascending onto ascending.
pub fn vote_with_committees(
    m: u8,
    c1: &Committee,
    i1: &CommitteePosition,
    c2: &Committee,
    i2: &CommitteePosition,
) -> Result<Vote> {
    if c1.k() != i1.k() || c2.k() != i2.k() {
        return Err(Error::Unrealizable(
            "committee and position set sizes differ".into(),
        ));
    }
    let shared_size = c1.intersection_size(c2);
    if i1.intersection_size(i2) != shared_size {
        return Err(Error::Unrealizable(format!(
            "committees share {shared_size} members but position sets share {}",
            i1.intersection_size(i2)
        )));
    }
    if i1.max() > m
        || i2.max() > m
        || *c1.members().last().unwrap() > m
        || *c2.members().last().unwrap() > m
    {
        return Err(Error::Unrealizable(
            "candidate or position outside 1..=m".into(),
        ));
    }
    let mut slots: Vec<CandidateId> = vec![0; m as usize];
    let mut place = |candidates: Vec<CandidateId>, positions: Vec<u8>| {
        for (c, p) in candidates.into_iter().zip(positions) {
            slots[p as usize - 1] = c;
        }
    };

    let shared: Vec<CandidateId> = c1
        .members()
        .iter()
        .copied()
        .filter(|c| c2.contains(*c))
        .collect();
    let only1: Vec<CandidateId> = c1
        .members()
        .iter()
        .copied()
        .filter(|c| !c2.contains(*c))
        .collect();
    let only2: Vec<CandidateId> = c2
        .members()
        .iter()
        .copied()
        .filter(|c| !c1.contains(*c))
        .collect();
    let shared_positions: Vec<u8> = i1
        .positions()
        .iter()
        .copied()
        .filter(|p| i2.contains(*p))
        .collect();
    let i1_only: Vec<u8> = i1
        .positions()
        .iter()
        .copied()
        .filter(|p| !i2.contains(*p))
        .collect();
    let i2_only: Vec<u8> = i2
        .positions()
        .iter()
        .copied()
        .filter(|p| !i1.contains(*p))
        .collect();
    place(shared, shared_positions);
    place(only1, i1_only);
    place(only2, i2_only);

    let mut fillers = (1..=m).filter(|c| !c1.contains(*c) && !c2.contains(*c));
    for slot in slots.iter_mut() {
        if *slot == 0 {
            *slot = fillers.next().ok_or_else(|| {
                Error::Unrealizable("not enough candidates for free positions".into())
            })?;
        }
    }
    Vote::new(slots)
}

/// Single-vote situations whose `alpha` images are linearly independent and
/// span the range: one vote per edge of the Johnson path over `[m]_k`,
/// ranking `c1` on the earlier endpoint and `c2` on the later one. There are
/// `C(m,k) - 1` of them.
pub fn alpha_range_basis(m: u8, c1: &Committee, c2: &Committee) -> Result<Vec<VotingSituation>> {
    let k = c1.k();
    if c1 == c2 {
        return Err(Error::InvalidParameter(
            "range basis needs distinct committees".into(),
        ));
    }
    if c1.intersection_size(c2) != k - 1 {
        return Err(Error::InvalidParameter(
            "committees must share all but one member".into(),
        ));
    }
    let path = johnson_path(k, m)?;
    path.windows(2)
        .map(|edge| {
            let vote = vote_with_committees(m, c1, &edge[0], c2, &edge[1])?;
            Ok(VotingSituation::single(vote))
        })
        .collect()
}

/// The matrix of `alpha` as a linear map `Q^{m!} -> Q^{C(m,k)}`: column `v`
/// is the image of the unit situation at vote `v`.
pub fn alpha_matrix(
    m: u8,
    c1: &Committee,
    c2: &Committee,
    enum_limit: u8,
) -> Result<RationalMatrix> {
    let votes = all_votes_with_limit(m, enum_limit)?;
    let positions = enumerate_positions(m, c1.k())?;
    let index: BTreeMap<&CommitteePosition, usize> = positions.iter().zip(0..).collect();
    let mut matrix = RationalMatrix::zero(positions.len(), votes.len());
    for (col, vote) in votes.iter().enumerate() {
        let i1 = vote.position_of_committee(c1)?;
        let i2 = vote.position_of_committee(c2)?;
        *matrix.entry_mut(index[&i1], col) += rat(1);
        *matrix.entry_mut(index[&i2], col) -= rat(1);
    }
    Ok(matrix)
}

/// Coordinates of a situation in `Q^{m!}` (lexicographic vote order).
pub fn situation_to_dense(situation: &VotingSituation, enum_limit: u8) -> Result<Vec<Rational>> {
    let votes = all_votes_with_limit(situation.m(), enum_limit)?;
    Ok(votes.iter().map(|v| situation.count(v)).collect())
}

// ---------------------------------------------------------------------------
// symmetric kernel basis

/// A kernel element together with the witness that makes its symmetry
/// mechanically checkable: a permutation fixing the situation whose committee
/// orbit walks from `c1` through `c2` back to `c1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricBasisElement {
    pub situation: VotingSituation,
    pub sigma: Permutation,
    /// `F_1, ..., F_x` with `F_1 = F_x = c1`, `F_2 = c2`, `sigma(F_i) = F_{i+1}`.
    pub committees: Vec<Committee>,
}

/// Checks the witness structure only; whether `c1` and `c2` tie on the
/// situation is a statement about rules, not about this element.
pub fn verify_symmetric_situation(
    element: &SymmetricBasisElement,
    c1: &Committee,
    c2: &Committee,
) -> Result<bool> {
    let fs = &element.committees;
    if fs.len() < 3 {
        return Ok(false);
    }
    if fs.first() != Some(c1) || fs.last() != Some(c1) || fs[1] != *c2 {
        return Ok(false);
    }
    for window in fs.windows(2) {
        if window[0].permute(&element.sigma)? != window[1] {
            return Ok(false);
        }
    }
    Ok(element.situation.permute(&element.sigma)? == element.situation)
}

/// Basis of `ker(alpha_{c1,c2})` consisting of symmetric situations.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub elements: Vec<SymmetricBasisElement>,
    /// Elements obtained by inserting the last shared member into the
    /// lower-level basis (`None` for the single-winner base, which has no
    /// such split).
    pub b1_count: Option<usize>,
    /// Elements built from distinctive votes on restricted-graph path edges.
    pub b2_count: Option<usize>,
}

// Internal induction state: votes are rankings over the currently active
// candidate subset, in actual candidate ids. Witness permutations act on the
// full 1..=m universe and fix inactive candidates.
struct RawElement {
    votes: BTreeMap<Vec<CandidateId>, Rational>,
    sigma: Permutation,
    committees: Vec<Vec<CandidateId>>, // sorted id sets
}

fn apply_perm_to_ranking(ranking: &[CandidateId], sigma: &Permutation) -> Vec<CandidateId> {
    ranking.iter().map(|&c| sigma.image(c)).collect()
}

fn sorted_set(mut ids: Vec<CandidateId>) -> Vec<CandidateId> {
    ids.sort_unstable();
    ids
}

fn raw_to_dense(
    votes: &BTreeMap<Vec<CandidateId>, Rational>,
    ranking_index: &BTreeMap<Vec<CandidateId>, usize>,
) -> Vec<Rational> {
    let mut dense = vec![Rational::zero(); ranking_index.len()];
    for (ranking, count) in votes {
        dense[ranking_index[ranking]] = count.clone();
    }
    dense
}

fn all_rankings(active: &[CandidateId]) -> Vec<Vec<CandidateId>> {
    let mut out = Vec::new();
    let mut items: Vec<CandidateId> = active.to_vec();
    items.sort_unstable();
    permute_into(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute_into(items: &mut Vec<CandidateId>, start: usize, out: &mut Vec<Vec<CandidateId>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute_into(items, start + 1, out);
        items.swap(start, i);
    }
}

/// Permutations of the active candidates (identity elsewhere) that map `c`
/// to `c_prime`, ordered by how many candidates they move and then by their
/// mapping. The transposition `(c c')` comes first, then the 3-cycles
/// `(c c' x)`, then the larger supports.
fn witness_permutations(
    m: u8,
    active: &[CandidateId],
    c: CandidateId,
    c_prime: CandidateId,
) -> Result<Vec<Permutation>> {
    let others: Vec<CandidateId> = active.iter().copied().filter(|&x| x != c).collect();
    let targets: Vec<CandidateId> = active.iter().copied().filter(|&x| x != c_prime).collect();
    // c -> c' is fixed; the images of the rest range over all arrangements
    // of the remaining active candidates
    let mut sigmas = Vec::new();
    for arrangement in all_rankings(&targets) {
        let mut mapping: Vec<CandidateId> = (1..=m).collect();
        mapping[c as usize - 1] = c_prime;
        for (&from, &to) in others.iter().zip(&arrangement) {
            mapping[from as usize - 1] = to;
        }
        sigmas.push(Permutation::new(mapping)?);
    }
    let moved = |sigma: &Permutation| (1..=m).filter(|&x| sigma.image(x) != x).count();
    sigmas.sort_by_key(|sigma| {
        let mapping: Vec<CandidateId> = (1..=m).map(|x| sigma.image(x)).collect();
        (moved(sigma), mapping)
    });
    Ok(sigmas)
}

/// The committee walk for a single-winner witness: singletons along the
/// cycle of `c` under `sigma`, from `{c}` back around to `{c}`.
fn singleton_walk(sigma: &Permutation, c: CandidateId) -> Vec<Vec<CandidateId>> {
    let mut walk = vec![vec![c]];
    let mut current = sigma.image(c);
    while current != c {
        walk.push(vec![current]);
        current = sigma.image(current);
    }
    walk.push(vec![c]);
    walk
}

/// Single-winner base: orbit sums `v + s(v) + s^2(v) + ...` over permutations
/// `s` fixing the inactive candidates and mapping `c` to `c'`, greedily
/// selected until they span the `p! - p + 1` dimensional kernel. Pair
/// situations `v + (c c')(v)` and 3-cycle orbits come first; for five or more
/// active candidates some larger supports are needed as well.
fn base_level(
    m: u8,
    active: &[CandidateId],
    c: CandidateId,
    c_prime: CandidateId,
) -> Result<Vec<RawElement>> {
    let rankings = all_rankings(active);
    let ranking_index: BTreeMap<Vec<CandidateId>, usize> =
        rankings.iter().cloned().zip(0..).collect();
    let p = active.len();
    let target = rankings.len() - p + 1;

    let mut tracker = SpanTracker::new(rankings.len());
    let mut elements = Vec::new();

    for sigma in witness_permutations(m, active, c, c_prime)? {
        let committees = singleton_walk(&sigma, c);
        for ranking in &rankings {
            // orbit sum, taken once per orbit at its least representative
            let mut orbit = vec![ranking.clone()];
            loop {
                let next = apply_perm_to_ranking(orbit.last().unwrap(), &sigma);
                if next == *ranking {
                    break;
                }
                orbit.push(next);
            }
            if orbit.iter().any(|image| image < ranking) {
                continue;
            }
            let mut votes = BTreeMap::new();
            for image in orbit {
                *votes.entry(image).or_insert_with(Rational::zero) += rat(1);
            }
            if tracker.try_add(raw_to_dense(&votes, &ranking_index)) {
                elements.push(RawElement {
                    votes,
                    sigma: sigma.clone(),
                    committees: committees.clone(),
                });
            }
            if elements.len() == target {
                return Ok(elements);
            }
        }
    }

    Err(Error::InternalCheck(format!(
        "single-winner kernel base reached rank {} of {target}",
        elements.len()
    )))
}

fn insert_at(ranking: &[CandidateId], r: u8, candidate: CandidateId) -> Vec<CandidateId> {
    let mut out = ranking.to_vec();
    out.insert(r as usize - 1, candidate);
    out
}

/// One inductive step: from the basis for committee size `j-1` over
/// `active \ {a_j}` to the basis for size `j` over `active`. `a_1`
/// distinguishes the first committee, `a1_prime` the second, `mids` are the
/// shared members already present at the lower level.
#[allow(clippy::too_many_arguments)]
fn inductive_step(
    m: u8,
    prev: Vec<RawElement>,
    active: &[CandidateId],
    a_1: CandidateId,
    mids: &[CandidateId],
    a_j: CandidateId,
    a1_prime: CandidateId,
    j: usize,
) -> Result<(Vec<RawElement>, usize, usize)> {
    let p = active.len();
    let prev_len = prev.len();

    // insertion stage: a_j goes to every position of every vote of every
    // lower-level element; the witness permutation fixes a_j, so insertion
    // commutes with it and the extended committee walk is still valid
    let mut elements: Vec<RawElement> = Vec::new();
    for element in &prev {
        for r in 1..=p as u8 {
            let votes: BTreeMap<Vec<CandidateId>, Rational> = element
                .votes
                .iter()
                .map(|(ranking, count)| (insert_at(ranking, r, a_j), count.clone()))
                .collect();
            let committees = element
                .committees
                .iter()
                .map(|f| sorted_set([f.as_slice(), &[a_j]].concat()))
                .collect();
            elements.push(RawElement {
                votes,
                sigma: element.sigma.clone(),
                committees,
            });
        }
    }
    let b1_count = elements.len();
    if b1_count != p * prev_len {
        return Err(Error::InternalCheck(format!(
            "insertion produced {b1_count} elements from {prev_len} over {p} positions"
        )));
    }

    // distinctive-vote stage
    let c1_level = sorted_set([&[a_1], mids, &[a_j]].concat());
    let c2_level = sorted_set([&[a1_prime], mids, &[a_j]].concat());
    let f3_case1 = sorted_set([&[a_1], mids, &[a1_prime]].concat());

    let mut b2_count = 0usize;
    for r in 2..=p as u8 {
        // positions other than r, order-isomorphic with 1..=p-1
        let other_positions: Vec<u8> = (1..=p as u8).filter(|&x| x != r).collect();
        let to_original = |relabeled: u8| other_positions[relabeled as usize - 1];

        // graph over (j-1)-subsets of the other positions having an element
        // below r; at r = p the restriction is vacuous
        let path = if r == p as u8 {
            johnson_path(j as u8 - 1, p as u8 - 1)?
        } else {
            johnson_path_restricted(j as u8 - 1, p as u8 - 1, r)?
        };
        for edge in path.windows(2) {
            let x: Vec<u8> = edge[0]
                .positions()
                .iter()
                .map(|&q| to_original(q))
                .collect();
            let x_next: Vec<u8> = edge[1]
                .positions()
                .iter()
                .map(|&q| to_original(q))
                .collect();
            let shared: Vec<u8> = x.iter().copied().filter(|q| x_next.contains(q)).collect();
            let mut differing: Vec<u8> = x
                .iter()
                .chain(x_next.iter())
                .copied()
                .filter(|q| !shared.contains(q))
                .collect();
            differing.sort_unstable();
            let (b, b_prime) = (differing[0], differing[1]);

            // distinctive vote: a_j at r, mids ascending onto the shared
            // positions ascending, a_1 at b, a_1' at b', fillers ascending
            let mut slots: Vec<CandidateId> = vec![0; p];
            slots[r as usize - 1] = a_j;
            for (&mid, &q) in mids.iter().zip(shared.iter()) {
                slots[q as usize - 1] = mid;
            }
            slots[b as usize - 1] = a_1;
            slots[b_prime as usize - 1] = a1_prime;
            let mut fillers = active
                .iter()
                .copied()
                .filter(|&c| c != a_1 && c != a1_prime && c != a_j && !mids.contains(&c));
            for slot in slots.iter_mut() {
                if *slot == 0 {
                    *slot = fillers.next().ok_or_else(|| {
                        Error::InternalCheck("filler candidates exhausted".into())
                    })?;
                }
            }
            let distinctive = slots;

            let ahead = |candidate: CandidateId| {
                distinctive.iter().position(|&c| c == candidate).unwrap() < r as usize - 1
            };
            let element = if ahead(a_1) && ahead(a1_prime) {
                // both distinguished candidates precede a_j: 3-cycle witness
                let tau = Permutation::cycle(m, &[a_1, a_j, a1_prime])?;
                let v1 = apply_perm_to_ranking(&distinctive, &tau);
                let v2 = apply_perm_to_ranking(&v1, &tau);
                let mut votes = BTreeMap::new();
                for v in [distinctive.clone(), v1, v2] {
                    *votes.entry(v).or_insert_with(Rational::zero) += rat(1);
                }
                RawElement {
                    votes,
                    sigma: tau,
                    committees: vec![
                        c1_level.clone(),
                        c2_level.clone(),
                        f3_case1.clone(),
                        c1_level.clone(),
                    ],
                }
            } else {
                // some shared member precedes a_j; take the highest-ranked one
                let a = *distinctive[..r as usize - 1]
                    .iter()
                    .find(|c| mids.contains(c))
                    .ok_or_else(|| {
                        Error::InternalCheck(
                            "no shared member ahead of the inserted candidate".into(),
                        )
                    })?;
                let rho = Permutation::transposition(m, a_1, a1_prime)?
                    .compose(&Permutation::transposition(m, a, a_j)?)?;
                let image = apply_perm_to_ranking(&distinctive, &rho);
                let mut votes = BTreeMap::new();
                for v in [distinctive.clone(), image] {
                    *votes.entry(v).or_insert_with(Rational::zero) += rat(1);
                }
                RawElement {
                    votes,
                    sigma: rho,
                    committees: vec![c1_level.clone(), c2_level.clone(), c1_level.clone()],
                }
            };
            elements.push(element);
            b2_count += 1;
        }
    }

    // cardinality bookkeeping: edges summed per graph, and the closed form
    let expected_b2: u64 = (2..=p as u64)
        .map(|r| binomial(p as u64 - 1, j as u64 - 1) - binomial(p as u64 - r, j as u64 - 1) - 1)
        .sum();
    if b2_count as u64 != expected_b2 {
        return Err(Error::InternalCheck(format!(
            "distinctive-vote stage produced {b2_count} elements, expected {expected_b2}"
        )));
    }
    let total_expected = factorial(p as u64) - binomial(p as u64, j as u64) + 1;
    if elements.len() as u64 != total_expected {
        return Err(Error::InternalCheck(format!(
            "level {j} basis has {} elements, expected {total_expected}",
            elements.len()
        )));
    }
    Ok((elements, b1_count, b2_count))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// Builds a basis of `ker(alpha_{c1,c2})` made of symmetric situations, for
/// committees sharing all but one member. Every element carries a verified
/// witness; the element count and the rank of the stacked vectors must both
/// equal `m! - C(m,k) + 1` or the construction aborts.
pub fn kernel_basis_symmetric(m: u8, c1: &Committee, c2: &Committee) -> Result<KernelBasis> {
    kernel_basis_symmetric_with_limit(m, c1, c2, DEFAULT_KERNEL_LIMIT)
}

pub fn kernel_basis_symmetric_with_limit(
    m: u8,
    c1: &Committee,
    c2: &Committee,
    limit: u8,
) -> Result<KernelBasis> {
    let k = c1.k();
    if c2.k() != k {
        return Err(Error::DimensionMismatch(
            "committees of different sizes".into(),
        ));
    }
    if c1 == c2 || c1.intersection_size(c2) != k - 1 {
        return Err(Error::InvalidParameter(
            "kernel basis needs committees sharing all but one member".into(),
        ));
    }
    if m > limit {
        return Err(Error::ResourceCap(format!(
            "kernel basis over {m} candidates exceeds the limit of {limit}"
        )));
    }
    if c1.members().iter().chain(c2.members()).any(|&c| c > m) {
        return Err(Error::UnknownCandidate(
            *c1.members().iter().chain(c2.members()).max().unwrap(),
        ));
    }

    // distinguished labeling: a_1 the member only in c1, then the shared
    // members in ascending order, a_1' the member only in c2
    let a_1 = *c1
        .members()
        .iter()
        .find(|c| !c2.contains(**c))
        .expect("c1 has a private member");
    let a1_prime = *c2
        .members()
        .iter()
        .find(|c| !c1.contains(**c))
        .expect("c2 has a private member");
    let shared: Vec<CandidateId> = c1
        .members()
        .iter()
        .copied()
        .filter(|c| c2.contains(*c))
        .collect();
    let outsiders: Vec<CandidateId> = (1..=m)
        .filter(|c| !c1.contains(*c) && !c2.contains(*c))
        .collect();

    // single-winner base over a_1, a_1', and the outsiders
    let mut active: Vec<CandidateId> =
        sorted_set([&[a_1][..], &[a1_prime][..], &outsiders[..]].concat());
    let mut elements = base_level(m, &active, a_1, a1_prime)?;
    let mut split = None;

    for (index, &a_j) in shared.iter().enumerate() {
        let j = index + 2; // committee size after inserting a_j
        active = sorted_set([active.as_slice(), &[a_j]].concat());
        let mids = &shared[..index];
        let (next, b1, b2) = inductive_step(m, elements, &active, a_1, mids, a_j, a1_prime, j)?;
        elements = next;
        split = Some((b1, b2));
    }

    // lift to full voting situations and typed committee witnesses
    let typed: Vec<SymmetricBasisElement> = elements
        .into_iter()
        .map(|raw| {
            let situation = VotingSituation::from_counts(
                m,
                raw.votes
                    .into_iter()
                    .map(|(ranking, count)| (Vote::new(ranking).expect("full ranking"), count)),
            )?;
            let committees = raw
                .committees
                .into_iter()
                .map(Committee::new)
                .collect::<Result<Vec<_>>>()?;
            Ok(SymmetricBasisElement {
                situation,
                sigma: raw.sigma,
                committees,
            })
        })
        .collect::<Result<_>>()?;

    let dimension = factorial(m as u64) - binomial(m as u64, k as u64) + 1;
    if typed.len() as u64 != dimension {
        return Err(Error::InternalCheck(format!(
            "kernel basis has {} elements, expected {dimension}",
            typed.len()
        )));
    }

    // certify: witness structure, kernel membership, and full rank
    let mut tracker = SpanTracker::new(factorial(m as u64) as usize);
    for element in &typed {
        if !verify_symmetric_situation(element, c1, c2)? {
            return Err(Error::InternalCheck(format!(
                "element failed witness verification: {:?}",
                element.situation
            )));
        }
        if !alpha(c1, c2, &element.situation)?.is_zero() {
            return Err(Error::InternalCheck(
                "basis element is outside the kernel".into(),
            ));
        }
        if !tracker.try_add(situation_to_dense(&element.situation, limit)?) {
            return Err(Error::InternalCheck(
                "basis element is linearly dependent".into(),
            ));
        }
    }
    if tracker.rank() as u64 != dimension {
        return Err(Error::InternalCheck(format!(
            "kernel basis rank {} does not match dimension {dimension}",
            tracker.rank()
        )));
    }

    let (b1_count, b2_count) = match split {
        Some((b1, b2)) => (Some(b1), Some(b2)),
        None => (None, None),
    };
    Ok(KernelBasis {
        elements: typed,
        b1_count,
        b2_count,
    })
}

// ---------------------------------------------------------------------------
// score-equality hyperplane

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HyperplaneVerdict {
    /// The score-difference functional is nonzero: the score-equality set is
    /// the kernel of a single linear functional.
    RankOne,
    /// The functional vanishes identically (trivial scoring on this pair):
    /// the equality set is the whole space.
    Degenerate,
}

/// Assembles the score-difference functional of `(c1, c2)` from unit
/// situations and verifies on every sample that the dot-product route and
/// the direct table-evaluation route agree.
pub fn equivalence_hyperplane_check(
    lambda: &CommitteeScoringFunction,
    c1: &Committee,
    c2: &Committee,
    samples: &[VotingSituation],
) -> Result<HyperplaneVerdict> {
    let m = lambda.m();
    let votes = all_votes_with_limit(m, crate::model::DEFAULT_ENUM_LIMIT)?;
    let functional: Vec<Rational> = votes
        .iter()
        .map(|v| {
            let i1 = v.position_of_committee(c1)?;
            let i2 = v.position_of_committee(c2)?;
            Ok(lambda.value(&i1)? - lambda.value(&i2)?)
        })
        .collect::<Result<_>>()?;
    let degenerate = functional.iter().all(Rational::is_zero);

    for sample in samples {
        let dot: Rational = votes
            .iter()
            .zip(&functional)
            .map(|(v, w)| sample.count(v) * w)
            .sum();
        let direct = lambda.committee_score(c1, sample)? - lambda.committee_score(c2, sample)?;
        if dot != direct {
            return Err(Error::InternalCheck(
                "functional route disagrees with direct score evaluation".into(),
            ));
        }
    }
    Ok(if degenerate {
        HyperplaneVerdict::Degenerate
    } else {
        HyperplaneVerdict::RankOne
    })
}

/// Diagnostic count difference: votes placing `a_j` on position `r` with
/// `group` occupying exactly the position set `set_r`, minus the same count
/// for `group_prime`.
pub fn beta_stat(
    situation: &VotingSituation,
    a_j: CandidateId,
    r: u8,
    set_r: &CommitteePosition,
    group: &[CandidateId],
    group_prime: &[CandidateId],
) -> Result<Rational> {
    let count_for = |ids: &[CandidateId]| -> Result<Rational> {
        let committee = Committee::new(ids.to_vec())?;
        let mut total = Rational::zero();
        for (vote, count) in situation.iter() {
            if vote.position_of(a_j)? == r && vote.position_of_committee(&committee)? == *set_r {
                total += count;
            }
        }
        Ok(total)
    };
    Ok(count_for(group)? - count_for(group_prime)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::sample::all_committees;
    use crate::scoring::BuiltinRule;

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
    fn matrix_rank_and_nullspace_basics() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert!(id.nullspace().is_empty());

        let zero = RationalMatrix::zero(2, 3);
        assert_eq!(zero.rank(), 0);
        assert_eq!(zero.nullspace().len(), 3);

        let m = RationalMatrix::from_rows(vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        let nullspace = m.nullspace();
        assert_eq!(nullspace.len(), 1);
        for row in 0..3 {
            let dot: Rational = (0..3).map(|c| m.entry(row, c) * &nullspace[0][c]).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn pos_weight_examples() {
        let p = VotingSituation::single(vote(&[1, 2, 3, 4]));
        let ab = committee(&[1, 2]);
        assert_eq!(pos_weight(&pos(&[1, 2]), &ab, &p).unwrap(), rat(1));
        assert_eq!(pos_weight(&pos(&[1, 3]), &ab, &p).unwrap(), rat(0));

        let e = crate::model::null_profile(3).unwrap();
        assert_eq!(
            pos_weight(&pos(&[1]), &committee(&[1]), &e).unwrap(),
            rat(2)
        );
    }

    #[test]
    fn alpha_single_vote() {
        let p = VotingSituation::single(vote(&[1, 2, 3, 4]));
        let a = alpha(&committee(&[1, 2]), &committee(&[3, 4]), &p).unwrap();
        assert_eq!(a.get(&pos(&[1, 2])), rat(1));
        assert_eq!(a.get(&pos(&[3, 4])), rat(-1));
        assert_eq!(a.get(&pos(&[1, 3])), rat(0));
        assert!(a.sum().is_zero());
    }

    #[test]
    fn alpha_identical_committees_is_zero() {
        let p = VotingSituation::single(vote(&[2, 1, 4, 3]));
        let a = alpha(&committee(&[1, 2]), &committee(&[1, 2]), &p).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn alpha_is_linear() {
        let c1 = committee(&[1, 2]);
        let c2 = committee(&[1, 3]);
        let p = VotingSituation::from_counts(
            4,
            [(vote(&[1, 2, 3, 4]), rat(2)), (vote(&[4, 3, 2, 1]), rat(1))],
        )
        .unwrap();
        let q = VotingSituation::from_counts(
            4,
            [
                (vote(&[2, 4, 1, 3]), frac(1, 2)),
                (vote(&[1, 2, 3, 4]), rat(-1)),
            ],
        )
        .unwrap();
        let combined = p.combine(&q.scale(&frac(3, 2))).unwrap();
        let lhs = alpha(&c1, &c2, &combined).unwrap();
        let ap = alpha(&c1, &c2, &p).unwrap();
        let aq = alpha(&c1, &c2, &q).unwrap();
        for position in enumerate_positions(4, 2).unwrap() {
            assert_eq!(
                lhs.get(&position),
                ap.get(&position) + aq.get(&position) * frac(3, 2)
            );
        }
    }

    #[test]
    fn distinguished_vote_placement() {
        let v = vote_with_committees(
            4,
            &committee(&[1, 2]),
            &pos(&[1, 2]),
            &committee(&[3, 4]),
            &pos(&[3, 4]),
        )
        .unwrap();
        assert_eq!(v.ranking(), &[1, 2, 3, 4]);

        // shared member: committees {a,b} and {a,c} at {1,3} and {1,4}
        let v = vote_with_committees(
            4,
            &committee(&[1, 2]),
            &pos(&[1, 3]),
            &committee(&[1, 3]),
            &pos(&[1, 4]),
        )
        .unwrap();
        // a shared at 1, b at 3, c at 4, filler d at 2
        assert_eq!(v.ranking(), &[1, 4, 2, 3]);

        assert!(vote_with_committees(
            4,
            &committee(&[1, 2]),
            &pos(&[1, 2]),
            &committee(&[1, 3]),
            &pos(&[3, 4]),
        )
        .is_err());
    }

    #[test]
    fn range_basis_counts_and_rank() {
        // m=3, k=1: path {1},{2},{3} has two edges
        let basis = alpha_range_basis(3, &committee(&[1]), &committee(&[2])).unwrap();
        assert_eq!(basis.len(), 2);

        // m=4, k=2: C(4,2)-1 = 5 votes
        let c1 = committee(&[1, 2]);
        let c2 = committee(&[1, 3]);
        let basis = alpha_range_basis(4, &c1, &c2).unwrap();
        assert_eq!(basis.len(), 5);

        let rows: Vec<Vec<Rational>> = basis
            .iter()
            .map(|p| alpha(&c1, &c2, p).unwrap().to_dense().unwrap())
            .collect();
        let matrix = RationalMatrix::from_rows(rows).unwrap();
        assert_eq!(matrix.rank(), 5);
    }

    #[test]
    fn alpha_matrix_rank_and_nullity() {
        let c1 = committee(&[1]);
        let c2 = committee(&[2]);
        let matrix = alpha_matrix(3, &c1, &c2, 8).unwrap();
        assert_eq!(matrix.rows(), 3);
        assert_eq!(matrix.cols(), 6);
        assert_eq!(matrix.rank(), 2);
        assert_eq!(matrix.nullspace().len(), 4);
    }

    #[test]
    fn kernel_basis_m3_k1() {
        let basis = kernel_basis_symmetric(3, &committee(&[1]), &committee(&[2])).unwrap();
        assert_eq!(basis.elements.len(), 4); // 3! - 3 + 1
        assert_eq!(basis.b1_count, None);
        assert_eq!(basis.b2_count, None);
    }

    #[test]
    fn kernel_basis_m4_k2_split_counts() {
        let basis = kernel_basis_symmetric(4, &committee(&[1, 2]), &committee(&[1, 3])).unwrap();
        assert_eq!(basis.elements.len(), 19); // 4! - 6 + 1
        assert_eq!(basis.b1_count, Some(16));
        assert_eq!(basis.b2_count, Some(3));
    }

    #[test]
    fn kernel_basis_rejects_wrong_inputs() {
        assert!(kernel_basis_symmetric(4, &committee(&[1, 2]), &committee(&[3, 4])).is_err());
        assert!(kernel_basis_symmetric(4, &committee(&[1, 2]), &committee(&[1, 2])).is_err());
        assert!(kernel_basis_symmetric(7, &committee(&[1]), &committee(&[2])).is_err());
    }

    #[test]
    fn kernel_matches_nullspace_span() {
        let c1 = committee(&[1]);
        let c2 = committee(&[2]);
        let basis = kernel_basis_symmetric(3, &c1, &c2).unwrap();
        let matrix = alpha_matrix(3, &c1, &c2, 8).unwrap();
        let nullspace = matrix.nullspace();
        assert_eq!(nullspace.len(), basis.elements.len());
        // basis vectors lie inside the nullspace span: adding them to a full
        // nullspace basis must not increase the rank
        let mut all_rows: Vec<Vec<Rational>> = nullspace.clone();
        for e in &basis.elements {
            all_rows.push(situation_to_dense(&e.situation, 8).unwrap());
        }
        let stacked = RationalMatrix::from_rows(all_rows).unwrap();
        assert_eq!(stacked.rank(), nullspace.len());
    }

    #[test]
    fn witness_verification_rejects_perturbed() {
        let c1 = committee(&[1]);
        let c2 = committee(&[2]);
        let basis = kernel_basis_symmetric(3, &c1, &c2).unwrap();
        let mut broken = basis.elements[0].clone();
        // a stray vote so sigma no longer fixes the situation
        broken
            .situation
            .add_vote(&vote(&[1, 2, 3]), &rat(5))
            .unwrap();
        assert!(!verify_symmetric_situation(&broken, &c1, &c2).unwrap());
    }

    #[test]
    fn basis_elements_tie_under_builtins() {
        let c1 = committee(&[1, 2]);
        let c2 = committee(&[1, 3]);
        let basis = kernel_basis_symmetric(4, &c1, &c2).unwrap();
        for rule in BuiltinRule::catalog(4) {
            let lambda = CommitteeScoringFunction::builtin(rule, 4, 2).unwrap();
            for element in &basis.elements {
                let s1 = lambda.committee_score(&c1, &element.situation).unwrap();
                let s2 = lambda.committee_score(&c2, &element.situation).unwrap();
                assert_eq!(s1, s2, "rule {rule:?}");
            }
        }
    }

    #[test]
    fn hyperplane_check_kborda() {
        let lambda = CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 3, 1).unwrap();
        let samples: Vec<VotingSituation> = crate::model::all_votes(3)
            .unwrap()
            .into_iter()
            .map(VotingSituation::single)
            .collect();
        assert_eq!(
            equivalence_hyperplane_check(&lambda, &committee(&[1]), &committee(&[2]), &samples)
                .unwrap(),
            HyperplaneVerdict::RankOne
        );
    }

    #[test]
    fn hyperplane_check_constant_is_degenerate() {
        let table: BTreeMap<_, _> = enumerate_positions(3, 1)
            .unwrap()
            .into_iter()
            .map(|i| (i, rat(1)))
            .collect();
        let constant = CommitteeScoringFunction::from_table(3, 1, table, "const").unwrap();
        let samples = vec![VotingSituation::single(vote(&[1, 2, 3]))];
        assert_eq!(
            equivalence_hyperplane_check(&constant, &committee(&[1]), &committee(&[2]), &samples)
                .unwrap(),
            HyperplaneVerdict::Degenerate
        );
    }

    #[test]
    fn kernel_elements_satisfy_hyperplane() {
        let c1 = committee(&[1, 2]);
        let c2 = committee(&[1, 3]);
        let basis = kernel_basis_symmetric(4, &c1, &c2).unwrap();
        let samples: Vec<VotingSituation> =
            basis.elements.iter().map(|e| e.situation.clone()).collect();
        let lambda = CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 4, 2).unwrap();
        assert_eq!(
            equivalence_hyperplane_check(&lambda, &c1, &c2, &samples).unwrap(),
            HyperplaneVerdict::RankOne
        );
    }

    #[test]
    fn beta_stat_separates_insertion_from_distinctive() {
        let c1 = committee(&[1, 2]);
        let c2 = committee(&[1, 3]);
        let basis = kernel_basis_symmetric(4, &c1, &c2).unwrap();
        // labeling: a_1 = 2 (only in c1), a_1' = 3, inserted shared member a_j = 1
        let b1 = basis.b1_count.unwrap();
        let scan = |situation: &VotingSituation| -> bool {
            let mut nonzero = false;
            for r in 1..=4u8 {
                for set_r in enumerate_positions(4, 1).unwrap() {
                    if !beta_stat(situation, 1, r, &set_r, &[2], &[3])
                        .unwrap()
                        .is_zero()
                    {
                        nonzero = true;
                    }
                }
            }
            nonzero
        };
        for element in &basis.elements[..b1] {
            assert!(!scan(&element.situation));
        }
        for element in &basis.elements[b1..] {
            assert!(scan(&element.situation));
        }
    }

    #[test]
    fn all_committee_positions_reachable() {
        let committees = all_committees(4, 2).unwrap();
        let votes = crate::model::all_votes(4).unwrap();
        for c in &committees {
            for i in enumerate_positions(4, 2).unwrap() {
                let hits = votes
                    .iter()
                    .filter(|v| v.position_of_committee(c).unwrap() == i)
                    .count();
                assert!(hits > 0);
            }
        }
    }
}

//! Deterministic instance generation: exhaustive enumeration when the
//! instance space is small, seeded uniform sampling otherwise.
//!
//! Every sampling entry point takes an explicit seed; there is no hidden
//! entropy anywhere in the crate. Reports produced from these generators are
//! identical across runs and machines for the same (seed, budget).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinat::{binomial, enumerate_positions};
use crate::error::Result;
use crate::model::{all_votes, Committee, Profile, Vote, VotingSituation};
use crate::rational::rat;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// All size-`k` committees over candidates `1..=m`.
pub fn all_committees(m: u8, k: u8) -> Result<Vec<Committee>> {
    enumerate_positions(m, k)?
        .into_iter()
        .map(|position| Committee::new(position.positions().to_vec()))
        .collect()
}

/// All unordered committee pairs, optionally restricted to a fixed
/// intersection size.
pub fn committee_pairs(
    m: u8,
    k: u8,
    intersection: Option<u8>,
) -> Result<Vec<(Committee, Committee)>> {
    let committees = all_committees(m, k)?;
    let mut pairs = Vec::new();
    for (i, c1) in committees.iter().enumerate() {
        for c2 in committees.iter().skip(i + 1) {
            if intersection.is_none_or(|s| c1.intersection_size(c2) == s) {
                pairs.push((c1.clone(), c2.clone()));
            }
        }
    }
    Ok(pairs)
}

/// Number of multisets of size `n` over `d` alternatives.
fn multiset_count(d: u64, n: u64) -> u64 {
    binomial(d + n - 1, n)
}

/// Nonnegative-integer situations with between 1 and `max_voters` voters.
/// Enumerates every vote multiset when there are at most `exhaustive_cap` of
/// them, otherwise draws `budget` seeded uniform samples (by voter count,
/// then independent votes).
pub fn situations(
    m: u8,
    max_voters: u32,
    exhaustive_cap: u64,
    budget: usize,
    seed: u64,
) -> Result<(Vec<VotingSituation>, bool)> {
    let votes = all_votes(m)?;
    let d = votes.len() as u64;
    let total: u64 = (1..=max_voters as u64).map(|n| multiset_count(d, n)).sum();
    if total <= exhaustive_cap {
        let mut out = Vec::new();
        for n in 1..=max_voters as usize {
            enumerate_multisets(&votes, n, &mut out)?;
        }
        return Ok((out, true));
    }
    let mut rng = rng_for(seed, 1);
    let mut out = Vec::with_capacity(budget);
    for _ in 0..budget {
        out.push(random_situation(&votes, m, max_voters, &mut rng)?);
    }
    Ok((out, false))
}

fn random_situation(
    votes: &[Vote],
    m: u8,
    max_voters: u32,
    rng: &mut ChaCha8Rng,
) -> Result<VotingSituation> {
    let n = rng.gen_range(1..=max_voters);
    let mut situation = VotingSituation::empty(m);
    for _ in 0..n {
        let vote = &votes[rng.gen_range(0..votes.len())];
        situation.add_vote(vote, &rat(1))?;
    }
    Ok(situation)
}

/// One seeded random situation with 1..=max_voters voters.
pub fn one_situation(m: u8, max_voters: u32, rng: &mut ChaCha8Rng) -> Result<VotingSituation> {
    let votes = all_votes(m)?;
    random_situation(&votes, m, max_voters, rng)
}

fn enumerate_multisets(votes: &[Vote], n: usize, out: &mut Vec<VotingSituation>) -> Result<()> {
    let m = votes[0].m();
    let mut indices = vec![0usize; n];
    loop {
        let mut situation = VotingSituation::empty(m);
        for &i in &indices {
            situation.add_vote(&votes[i], &rat(1))?;
        }
        out.push(situation);
        // next nondecreasing index sequence
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            if indices[pos] + 1 < votes.len() {
                let value = indices[pos] + 1;
                for slot in indices.iter_mut().skip(pos) {
                    *slot = value;
                }
                break;
            }
        }
    }
}

/// Ordered profiles (voter ids 1..=n) with between 1 and `max_voters` voters.
/// Exhaustive when the count of vote tuples is at most `exhaustive_cap`.
pub fn profiles(
    m: u8,
    max_voters: u32,
    exhaustive_cap: u64,
    budget: usize,
    seed: u64,
) -> Result<(Vec<Profile>, bool)> {
    let votes = all_votes(m)?;
    let d = votes.len() as u64;
    let mut total: u64 = 0;
    let mut power: u64 = 1;
    for _ in 1..=max_voters {
        power = power.saturating_mul(d);
        total = total.saturating_add(power);
    }
    if total <= exhaustive_cap {
        let mut out = Vec::new();
        for n in 1..=max_voters as usize {
            let mut indices = vec![0usize; n];
            'tuples: loop {
                let tuple: Vec<Vote> = indices.iter().map(|&i| votes[i].clone()).collect();
                out.push(Profile::from_votes(m, tuple)?);
                let mut pos = n;
                loop {
                    if pos == 0 {
                        break 'tuples;
                    }
                    pos -= 1;
                    if indices[pos] + 1 < votes.len() {
                        indices[pos] += 1;
                        for slot in indices.iter_mut().skip(pos + 1) {
                            *slot = 0;
                        }
                        break;
                    }
                }
            }
        }
        return Ok((out, true));
    }
    let mut rng = rng_for(seed, 2);
    let mut out = Vec::with_capacity(budget);
    for _ in 0..budget {
        let n = rng.gen_range(1..=max_voters) as usize;
        let tuple: Vec<Vote> = (0..n)
            .map(|_| votes[rng.gen_range(0..votes.len())].clone())
            .collect();
        out.push(Profile::from_votes(m, tuple)?);
    }
    Ok((out, false))
}

/// A uniformly random permutation of `1..=m` as a candidate relabeling.
pub fn random_permutation(m: u8, rng: &mut ChaCha8Rng) -> crate::model::Permutation {
    let mut mapping: Vec<u8> = (1..=m).collect();
    for i in (1..mapping.len()).rev() {
        let j = rng.gen_range(0..=i);
        mapping.swap(i, j);
    }
    crate::model::Permutation::new(mapping).expect("shuffle of 1..=m is a bijection")
}

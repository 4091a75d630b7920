//! Executable checkers for the multiwinner axioms, with counterexample
//! search over bounded instance spaces.
//!
//! Rules are queried through [`RuleOracle`], a black-box pairwise comparator.
//! Each checker enumerates its instance space exhaustively when it is small
//! enough and falls back to seeded uniform sampling otherwise, so verdicts
//! are three-valued: a universally quantified axiom can pass (no violation in
//! the budget), fail (with a re-checkable witness), or come back
//! inconclusive. Continuity is existential and never fails: instances with
//! no witness below the bound are reported as inconclusive. Every fail is
//! confirmed by re-parsing the serialized witness and re-evaluating the
//! axiom condition directly before the report is emitted.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::combinat::dominates;
use crate::decision::DecisionScoringFunction;
use crate::error::{Error, Result};
use crate::model::{
    all_votes, null_profile, CandidateId, Committee, Profile, Vote, VotingSituation,
};
use crate::profile_fmt::{parse_profile_with_names, serialize_with_default_names, NameTable};
use crate::rational::{rat, Rational};
use crate::sample::{self, all_committees, rng_for};
use crate::scoring::CommitteeScoringFunction;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

type SituationCmp =
    Arc<dyn Fn(&VotingSituation, &Committee, &Committee) -> Result<Ordering> + Send + Sync>;
type ProfileCmp = Arc<dyn Fn(&Profile, &Committee, &Committee) -> Result<Ordering> + Send + Sync>;

/// A black-box pairwise committee comparator.
///
/// The comparator is expected to be antisymmetric; [`run_suite`] spot-checks
/// this before running. Profile-level comparison defaults to anonymizing
/// into a voting situation, so only deliberately non-anonymous controls
/// override it.
#[derive(Clone)]
pub struct RuleOracle {
    m: u8,
    k: u8,
    label: String,
    situation_cmp: SituationCmp,
    profile_cmp: Option<ProfileCmp>,
}

impl std::fmt::Debug for RuleOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RuleOracle({}, m={}, k={})", self.label, self.m, self.k)
    }
}

impl RuleOracle {
    pub fn new(m: u8, k: u8, label: impl Into<String>, situation_cmp: SituationCmp) -> Self {
        RuleOracle {
            m,
            k,
            label: label.into(),
            situation_cmp,
            profile_cmp: None,
        }
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

    pub fn compare(
        &self,
        situation: &VotingSituation,
        c1: &Committee,
        c2: &Committee,
    ) -> Result<Ordering> {
        (self.situation_cmp)(situation, c1, c2)
    }

    pub fn compare_profile(
        &self,
        profile: &Profile,
        c1: &Committee,
        c2: &Committee,
    ) -> Result<Ordering> {
        match &self.profile_cmp {
            Some(cmp) => cmp(profile, c1, c2),
            None => self.compare(&profile.to_situation(), c1, c2),
        }
    }

    /// A committee scoring rule as an oracle.
    pub fn from_scoring(lambda: CommitteeScoringFunction) -> Self {
        let m = lambda.m();
        let k = lambda.k();
        let label = lambda.label().to_string();
        RuleOracle::new(
            m,
            k,
            label,
            Arc::new(move |p, c1, c2| lambda.compare(c1, c2, p)),
        )
    }

    /// A family of decision scoring functions, dispatched on the committee
    /// intersection size.
    pub fn from_decision_family(m: u8, k: u8, family: Vec<DecisionScoringFunction>) -> Self {
        let label = family
            .first()
            .map(|d| d.label().to_string())
            .unwrap_or_else(|| "decision".into());
        let by_s: BTreeMap<u8, DecisionScoringFunction> =
            family.into_iter().map(|d| (d.s(), d)).collect();
        RuleOracle::new(
            m,
            k,
            label,
            Arc::new(move |p, c1, c2| {
                if c1 == c2 {
                    return Ok(Ordering::Equal);
                }
                let s = c1.intersection_size(c2);
                let d = by_s.get(&s).ok_or_else(|| {
                    Error::DimensionMismatch(format!("no decision table for intersection {s}"))
                })?;
                d.decide(c1, c2, p)
            }),
        )
    }

    /// The generalized majority relation (single-winner committees).
    pub fn majority(m: u8) -> Result<Self> {
        Ok(RuleOracle::from_decision_family(
            m,
            1,
            vec![DecisionScoringFunction::majority(m)?],
        ))
    }

    /// Negative control: committees compared by their best member's total
    /// Borda score, ties broken by the second-best member's, and so on.
    /// Maxima do not add across electorates, so this is not a scoring rule.
    pub fn leximax(m: u8, k: u8) -> Self {
        RuleOracle::new(
            m,
            k,
            "leximax",
            Arc::new(move |p, c1, c2| {
                let vector = |c: &Committee| -> Result<Vec<Rational>> {
                    let mut scores: Vec<Rational> = c
                        .members()
                        .iter()
                        .map(|&member| {
                            let mut total = Rational::zero();
                            for (vote, count) in p.iter() {
                                total += count * rat((m - vote.position_of(member)?) as i64);
                            }
                            Ok(total)
                        })
                        .collect::<Result<_>>()?;
                    scores.sort_by(|a, b| b.cmp(a));
                    Ok(scores)
                };
                Ok(vector(c1)?.cmp(&vector(c2)?))
            }),
        )
    }

    /// Negative control for anonymity: the lowest-numbered voter dictates
    /// via the Borda scores of their single vote.
    pub fn first_voter_dictates(m: u8, k: u8) -> Result<Self> {
        let lambda = CommitteeScoringFunction::builtin(crate::scoring::BuiltinRule::KBorda, m, k)?;
        let on_situation = lambda.clone();
        let mut oracle = RuleOracle::new(
            m,
            k,
            "first-voter-dictates",
            Arc::new(move |p: &VotingSituation, c1: &Committee, c2: &Committee| {
                // anonymized view: the lexicographically least supported vote
                match p.iter().next() {
                    None => Ok(Ordering::Equal),
                    Some((vote, _)) => {
                        on_situation.compare(c1, c2, &VotingSituation::single(vote.clone()))
                    }
                }
            }),
        );
        oracle.profile_cmp = Some(Arc::new(move |p: &Profile, c1, c2| {
            let dictator = p.voters().iter().min_by_key(|(id, _)| *id);
            match dictator {
                None => Ok(Ordering::Equal),
                Some((_, vote)) => lambda.compare(c1, c2, &VotingSituation::single(vote.clone())),
            }
        }));
        Ok(oracle)
    }

    /// Negative control for neutrality: any committee containing the
    /// favorite candidate beats any committee that does not.
    pub fn favor_candidate(m: u8, k: u8, favorite: CandidateId) -> Result<Self> {
        let lambda = CommitteeScoringFunction::builtin(crate::scoring::BuiltinRule::KBorda, m, k)?;
        Ok(RuleOracle::new(
            m,
            k,
            format!("favor-{favorite}"),
            Arc::new(
                move |p, c1, c2| match (c1.contains(favorite), c2.contains(favorite)) {
                    (true, false) => Ok(Ordering::Greater),
                    (false, true) => Ok(Ordering::Less),
                    _ => lambda.compare(c1, c2, p),
                },
            ),
        ))
    }

    /// Negative control for homogeneity: below the voter-count threshold
    /// everything ties; at or above it, Borda scoring applies.
    pub fn count_threshold(m: u8, k: u8, threshold: i64) -> Result<Self> {
        let lambda = CommitteeScoringFunction::builtin(crate::scoring::BuiltinRule::KBorda, m, k)?;
        Ok(RuleOracle::new(
            m,
            k,
            format!("threshold-{threshold}"),
            Arc::new(move |p, c1, c2| {
                if p.total_weight() < rat(threshold) {
                    Ok(Ordering::Equal)
                } else {
                    lambda.compare(c1, c2, p)
                }
            }),
        ))
    }
}

fn ordering_to_i8(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Anonymity,
    Neutrality,
    Consistency,
    Continuity,
    CommitteeDominance,
    IndependenceOfSymmetricProfiles,
    Homogeneity,
    IrrelevantSwaps,
}

pub const ALL_AXIOMS: [Axiom; 8] = [
    Axiom::Anonymity,
    Axiom::Neutrality,
    Axiom::Consistency,
    Axiom::Continuity,
    Axiom::CommitteeDominance,
    Axiom::IndependenceOfSymmetricProfiles,
    Axiom::Homogeneity,
    Axiom::IrrelevantSwaps,
];

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Serialized, independently re-checkable violation instance. Situations are
/// profile-format strings with default candidate names; committees are
/// comma-separated names.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Counterexample {
    Anonymity {
        /// voter `i+1` casts `votes[i]` (ranking as `a > b > c`)
        votes: Vec<String>,
        /// voter `i+1` maps to `bijection[i]` in the relabeled profile
        bijection: Vec<u32>,
        c1: String,
        c2: String,
        before: i8,
        after: i8,
    },
    Neutrality {
        situation: String,
        /// candidate `i+1` maps to the candidate named `sigma[i]`
        sigma: Vec<String>,
        c1: String,
        c2: String,
        base: i8,
        permuted: i8,
    },
    Consistency {
        p: String,
        q: String,
        c1: String,
        c2: String,
        on_p: i8,
        on_q: i8,
        on_sum: i8,
    },
    CommitteeDominance {
        situation: String,
        c1: String,
        c2: String,
        outcome: i8,
    },
    IndependenceOfSymmetricProfiles {
        situation: String,
        ell: u32,
        c1: String,
        c2: String,
        base: i8,
        shifted: i8,
    },
    Homogeneity {
        situation: String,
        ell: u32,
        c1: String,
        c2: String,
        base: i8,
        scaled: i8,
    },
    IrrelevantSwaps {
        situation: String,
        vote: String,
        a: String,
        b: String,
        c1: String,
        c2: String,
        before: i8,
        after: i8,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub instances_checked: u64,
    pub exhaustive: bool,
    pub notes: Vec<String>,
}

impl AxiomReport {
    fn pass(axiom: Axiom, instances: u64, exhaustive: bool) -> Self {
        // a sampled run that never produced an instance proves nothing
        if instances == 0 && !exhaustive {
            return AxiomReport::inconclusive(
                axiom,
                "search budget exhausted before any instance was generated".into(),
            );
        }
        AxiomReport {
            axiom,
            verdict: Verdict::Pass,
            counterexample: None,
            instances_checked: instances,
            exhaustive,
            notes: Vec::new(),
        }
    }

    fn fail(axiom: Axiom, instances: u64, counterexample: Counterexample) -> Self {
        AxiomReport {
            axiom,
            verdict: Verdict::Fail,
            counterexample: Some(counterexample),
            instances_checked: instances,
            exhaustive: false,
            notes: Vec::new(),
        }
    }

    fn inconclusive(axiom: Axiom, note: String) -> Self {
        AxiomReport {
            axiom,
            verdict: Verdict::Inconclusive,
            counterexample: None,
            instances_checked: 0,
            exhaustive: false,
            notes: vec![note],
        }
    }
}

/// Search budgets and bounds shared by the whole suite. Seeds are mandatory;
/// all sampling is derived deterministically from `seed`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// sampled base instances per checker when the space is too large
    pub budget: usize,
    /// exhaustive enumeration is used while the instance count stays below this
    pub exhaustive_cap: u64,
    pub max_voters: u32,
    /// continuity witness bound for the multiplier `n`
    pub n_max: u32,
    /// largest multiplier checked for homogeneity and null-profile shifts
    pub ell_max: u32,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        SuiteConfig {
            seed,
            budget: 200,
            exhaustive_cap: 100_000,
            max_voters: 3,
            n_max: 1000,
            ell_max: 3,
        }
    }
}

fn serialize_situation(situation: &VotingSituation, k: u8) -> String {
    serialize_with_default_names(situation, k)
}

fn committee_names(c: &Committee) -> String {
    c.members()
        .iter()
        .map(|&id| crate::model::default_name(id))
        .collect::<Vec<_>>()
        .join(",")
}

fn vote_names(vote: &Vote) -> String {
    vote.ranking()
        .iter()
        .map(|&id| crate::model::default_name(id))
        .collect::<Vec<_>>()
        .join(" > ")
}

fn parse_committee(names: &NameTable, spec: &str) -> Result<Committee> {
    Committee::new(names.resolve_committee(spec)?)
}

fn parse_vote(names: &NameTable, text: &str) -> Result<Vote> {
    let ids: Vec<CandidateId> = text
        .split('>')
        .map(|token| {
            let token = token.trim();
            names.id_of(token).ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unknown candidate {token:?}"),
            })
        })
        .collect::<Result<_>>()?;
    Vote::new(ids)
}

// ---------------------------------------------------------------------------
// independent confirmation of counterexamples

/// Re-parses a serialized counterexample and re-evaluates the violated axiom
/// condition with straight-line oracle calls, independent of the search
/// loops. Returns true when the violation is genuine.
pub fn confirm_counterexample(oracle: &RuleOracle, witness: &Counterexample) -> Result<bool> {
    let m = oracle.m();
    let names = NameTable::default_for(m);
    match witness {
        Counterexample::Anonymity {
            votes,
            bijection,
            c1,
            c2,
            ..
        } => {
            let parsed: Vec<Vote> = votes
                .iter()
                .map(|v| parse_vote(&names, v))
                .collect::<Result<_>>()?;
            let original = Profile::from_votes(m, parsed.clone())?;
            let relabeled = Profile::new(
                m,
                parsed
                    .into_iter()
                    .zip(bijection.iter())
                    .map(|(vote, &id)| (id, vote))
                    .collect(),
            )?;
            let c1 = parse_committee(&names, c1)?;
            let c2 = parse_committee(&names, c2)?;
            let before = oracle.compare_profile(&original, &c1, &c2)?;
            let after = oracle.compare_profile(&relabeled, &c1, &c2)?;
            Ok(before != after)
        }
        Counterexample::Neutrality {
            situation,
            sigma,
            c1,
            c2,
            ..
        } => {
            let parsed = parse_profile_with_names(situation, &names)?;
            let mapping: Vec<CandidateId> = sigma
                .iter()
                .map(|name| {
                    names.id_of(name).ok_or_else(|| Error::Parse {
                        line: 0,
                        msg: format!("unknown candidate {name:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            let sigma = crate::model::Permutation::new(mapping)?;
            let c1 = parse_committee(&names, c1)?;
            let c2 = parse_committee(&names, c2)?;
            let base = oracle.compare(&parsed.situation, &c1, &c2)?;
            let permuted = oracle.compare(
                &parsed.situation.permute(&sigma)?,
                &c1.permute(&sigma)?,
                &c2.permute(&sigma)?,
            )?;
            Ok(base != permuted)
        }
        Counterexample::Consistency { p, q, c1, c2, .. } => {
            let p = parse_profile_with_names(p, &names)?.situation;
            let q = parse_profile_with_names(q, &names)?.situation;
            let c1 = parse_committee(&names, c1)?;
            let c2 = parse_committee(&names, c2)?;
            let on_p = oracle.compare(&p, &c1, &c2)?;
            let on_q = oracle.compare(&q, &c1, &c2)?;
            let on_sum = oracle.compare(&p.combine(&q)?, &c1, &c2)?;
            let strict_broken =
                on_p == Ordering::Greater && on_q != Ordering::Less && on_sum != Ordering::Greater;
            let weak_broken =
                on_p != Ordering::Less && on_q != Ordering::Less && on_sum == Ordering::Less;
            Ok(strict_broken || weak_broken)
        }
        Counterexample::CommitteeDominance {
            situation, c1, c2, ..
        } => {
            let parsed = parse_profile_with_names(situation, &names)?;
            let c1 = parse_committee(&names, c1)?;
            let c2 = parse_committee(&names, c2)?;
            for (vote, _) in parsed.situation.iter() {
                let i1 = vote.position_of_committee(&c1)?;
                let i2 = vote.position_of_committee(&c2)?;
                if !dominates(&i1, &i2)? {
                    return Ok(false); // not actually a dominance instance
                }
            }
            Ok(oracle.compare(&parsed.situation, &c1, &c2)? == Ordering::Less)
        }
        Counterexample::IndependenceOfSymmetricProfiles {
            situation,
            ell,
            c1,
            c2,
            ..
        } => {
            let parsed = parse_profile_with_names(situation, &names)?;
            let c1 = parse_committee(&names, c1)?;
            let c2 = parse_committee(&names, c2)?;
            let shifted = parsed
                .situation
                .combine(&null_profile(m)?.scale(&rat(*ell as i64)))?;
            Ok(oracle.compare(&parsed.situation, &c1, &c2)?
                != oracle.compare(&shifted, &c1, &c2)?)
        }
        Counterexample::Homogeneity {
            situation,
            ell,
            c1,
            c2,
            ..
        } => {
            let parsed = parse_profile_with_names(situation, &names)?;
            let c1 = parse_committee(&names, c1)?;
            let c2 = parse_committee(&names, c2)?;
            let scaled = parsed.situation.scale(&rat(*ell as i64));
            Ok(
                oracle.compare(&parsed.situation, &c1, &c2)?
                    != oracle.compare(&scaled, &c1, &c2)?,
            )
        }
        Counterexample::IrrelevantSwaps {
            situation,
            vote,
            a,
            b,
            c1,
            c2,
            ..
        } => {
            let parsed = parse_profile_with_names(situation, &names)?;
            let c1 = parse_committee(&names, c1)?;
            let c2 = parse_committee(&names, c2)?;
            let vote = parse_vote(&names, vote)?;
            let a = names.id_of(a).ok_or(Error::UnknownCandidate(0))?;
            let b = names.id_of(b).ok_or(Error::UnknownCandidate(0))?;
            if parsed.situation.count(&vote) < rat(1) {
                return Ok(false);
            }
            let mut modified = parsed.situation.clone();
            modified.add_vote(&vote, &rat(-1))?;
            modified.add_vote(&vote.swap(a, b)?, &rat(1))?;
            Ok(oracle.compare(&parsed.situation, &c1, &c2)?
                != oracle.compare(&modified, &c1, &c2)?)
        }
    }
}

// ---------------------------------------------------------------------------
// the checkers

fn committee_pair_list(m: u8, k: u8) -> Result<Vec<(Committee, Committee)>> {
    sample::committee_pairs(m, k, None)
}

/// Confirms a candidate fail before reporting it; a witness the confirmer
/// rejects is an internal error, never a silent pass.
fn confirmed_fail(
    oracle: &RuleOracle,
    axiom: Axiom,
    instances: u64,
    witness: Counterexample,
) -> Result<AxiomReport> {
    if !confirm_counterexample(oracle, &witness)? {
        return Err(Error::InternalCheck(format!(
            "search produced a witness that failed confirmation: {witness:?}"
        )));
    }
    Ok(AxiomReport::fail(axiom, instances, witness))
}

/// Voter relabelings leave outcomes unchanged. Operates on ordered profiles;
/// this is the only checker that does, since situations are anonymous by
/// construction.
pub fn check_anonymity(oracle: &RuleOracle, config: &SuiteConfig) -> Result<AxiomReport> {
    let m = oracle.m();
    let pairs = committee_pair_list(m, oracle.k())?;
    let (mut profile_list, base_exhaustive) = sample::profiles(
        m,
        config.max_voters,
        config.exhaustive_cap,
        config.budget,
        config.seed,
    )?;
    if profile_list.is_empty() {
        return Ok(AxiomReport::inconclusive(
            Axiom::Anonymity,
            "search budget exhausted before any instance was generated".into(),
        ));
    }
    let mut rng = rng_for(config.seed, 11);
    // full instance estimate: profiles x voter bijections x committee pairs
    let bijection_bound: u64 = (1..=config.max_voters.min(3) as u64).product();
    let total = (profile_list.len() as u64)
        .saturating_mul(bijection_bound)
        .saturating_mul(pairs.len() as u64);
    let exhaustive = base_exhaustive && total <= config.exhaustive_cap;
    if !exhaustive && profile_list.len() > config.budget {
        let mut picked = Vec::with_capacity(config.budget);
        for _ in 0..config.budget {
            picked.push(profile_list[rng.gen_range(0..profile_list.len())].clone());
        }
        profile_list = picked;
    }
    let mut instances = 0u64;
    for profile in &profile_list {
        let n = profile.len();
        // voter bijections: exhaustive for tiny profiles, one shuffle otherwise
        let bijections: Vec<Vec<u32>> = if n <= 3 {
            all_bijections(n as u32)
        } else {
            let mut ids: Vec<u32> = (1..=n as u32).collect();
            ids.shuffle(&mut rng);
            vec![ids]
        };
        for bijection in bijections {
            instances += 1;
            let relabeled = Profile::new(
                m,
                profile
                    .voters()
                    .iter()
                    .zip(&bijection)
                    .map(|((_, vote), &id)| (id, vote.clone()))
                    .collect(),
            )?;
            for (c1, c2) in &pairs {
                let before = oracle.compare_profile(profile, c1, c2)?;
                let after = oracle.compare_profile(&relabeled, c1, c2)?;
                if before != after {
                    let witness = Counterexample::Anonymity {
                        votes: profile
                            .voters()
                            .iter()
                            .map(|(_, v)| vote_names(v))
                            .collect(),
                        bijection: bijection.clone(),
                        c1: committee_names(c1),
                        c2: committee_names(c2),
                        before: ordering_to_i8(before),
                        after: ordering_to_i8(after),
                    };
                    return confirmed_fail(oracle, Axiom::Anonymity, instances, witness);
                }
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::Anonymity, instances, exhaustive))
}

fn all_bijections(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut ids: Vec<u32> = (1..=n).collect();
    bijections_into(&mut ids, 0, &mut out);
    out
}

fn bijections_into(ids: &mut Vec<u32>, start: usize, out: &mut Vec<Vec<u32>>) {
    if start == ids.len() {
        out.push(ids.clone());
        return;
    }
    for i in start..ids.len() {
        ids.swap(start, i);
        bijections_into(ids, start + 1, out);
        ids.swap(start, i);
    }
}

/// Candidate relabelings commute with the rule.
pub fn check_neutrality(oracle: &RuleOracle, config: &SuiteConfig) -> Result<AxiomReport> {
    let m = oracle.m();
    let pairs = committee_pair_list(m, oracle.k())?;
    let (situations, situations_exhaustive) = sample::situations(
        m,
        config.max_voters,
        config.exhaustive_cap,
        config.budget,
        config.seed,
    )?;
    if situations.is_empty() {
        return Ok(AxiomReport::inconclusive(
            Axiom::Neutrality,
            "search budget exhausted before any instance was generated".into(),
        ));
    }
    let sigmas = all_votes(m)?; // permutations of 1..=m share the encoding
    let exhaustive = situations_exhaustive
        && (situations.len() as u64)
            .saturating_mul(sigmas.len() as u64)
            .saturating_mul(pairs.len() as u64)
            <= config.exhaustive_cap;
    let mut rng = rng_for(config.seed, 12);
    let mut instances = 0u64;

    let check_one = |situation: &VotingSituation,
                     sigma: &crate::model::Permutation,
                     instances: &mut u64|
     -> Result<Option<AxiomReport>> {
        *instances += 1;
        let permuted = situation.permute(sigma)?;
        for (c1, c2) in &pairs {
            let base = oracle.compare(situation, c1, c2)?;
            let image = oracle.compare(&permuted, &c1.permute(sigma)?, &c2.permute(sigma)?)?;
            if base != image {
                let witness = Counterexample::Neutrality {
                    situation: serialize_situation(situation, oracle.k()),
                    sigma: (1..=m)
                        .map(|c| crate::model::default_name(sigma.image(c)))
                        .collect(),
                    c1: committee_names(c1),
                    c2: committee_names(c2),
                    base: ordering_to_i8(base),
                    permuted: ordering_to_i8(image),
                };
                return Ok(Some(confirmed_fail(
                    oracle,
                    Axiom::Neutrality,
                    *instances,
                    witness,
                )?));
            }
        }
        Ok(None)
    };

    if exhaustive {
        for situation in &situations {
            for sigma_votes in &sigmas {
                let sigma = crate::model::Permutation::new(sigma_votes.ranking().to_vec())?;
                if let Some(report) = check_one(situation, &sigma, &mut instances)? {
                    return Ok(report);
                }
            }
        }
    } else {
        for _ in 0..config.budget {
            let situation = &situations[rng.gen_range(0..situations.len())];
            let sigma = sample::random_permutation(m, &mut rng);
            if let Some(report) = check_one(situation, &sigma, &mut instances)? {
                return Ok(report);
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::Neutrality, instances, exhaustive))
}

/// Merging two electorates preserves agreement: strict plus weak stays
/// strict, weak plus weak stays weak.
pub fn check_consistency(oracle: &RuleOracle, config: &SuiteConfig) -> Result<AxiomReport> {
    let m = oracle.m();
    let pairs = committee_pair_list(m, oracle.k())?;
    let (situations, situations_exhaustive) = sample::situations(
        m,
        config.max_voters,
        config.exhaustive_cap,
        config.budget,
        config.seed,
    )?;
    if situations.is_empty() {
        return Ok(AxiomReport::inconclusive(
            Axiom::Consistency,
            "search budget exhausted before any instance was generated".into(),
        ));
    }
    let count = situations.len() as u64;
    let exhaustive = situations_exhaustive
        && count
            .saturating_mul(count)
            .saturating_mul(2 * pairs.len() as u64)
            <= config.exhaustive_cap;
    let mut rng = rng_for(config.seed, 13);
    let mut instances = 0u64;

    let check_one = |p: &VotingSituation,
                     q: &VotingSituation,
                     instances: &mut u64|
     -> Result<Option<AxiomReport>> {
        *instances += 1;
        let merged = p.combine(q)?;
        for (c1, c2) in &pairs {
            for (first, second) in [(c1, c2), (c2, c1)] {
                let on_p = oracle.compare(p, first, second)?;
                let on_q = oracle.compare(q, first, second)?;
                if on_p == Ordering::Less || on_q == Ordering::Less {
                    continue;
                }
                let on_sum = oracle.compare(&merged, first, second)?;
                let strict = on_p == Ordering::Greater || on_q == Ordering::Greater;
                let broken = if strict {
                    on_sum != Ordering::Greater
                } else {
                    on_sum == Ordering::Less
                };
                if broken {
                    let witness = Counterexample::Consistency {
                        p: serialize_situation(p, oracle.k()),
                        q: serialize_situation(q, oracle.k()),
                        c1: committee_names(first),
                        c2: committee_names(second),
                        on_p: ordering_to_i8(on_p),
                        on_q: ordering_to_i8(on_q),
                        on_sum: ordering_to_i8(on_sum),
                    };
                    return Ok(Some(confirmed_fail(
                        oracle,
                        Axiom::Consistency,
                        *instances,
                        witness,
                    )?));
                }
            }
        }
        Ok(None)
    };

    if exhaustive {
        for p in &situations {
            for q in &situations {
                if let Some(report) = check_one(p, q, &mut instances)? {
                    return Ok(report);
                }
            }
        }
    } else {
        for _ in 0..config.budget {
            let p = &situations[rng.gen_range(0..situations.len())];
            let q = &situations[rng.gen_range(0..situations.len())];
            if let Some(report) = check_one(p, q, &mut instances)? {
                return Ok(report);
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::Consistency, instances, exhaustive))
}

/// A large enough majority gets its way: when `c1` wins `p2` outright, some
/// number of copies of `p2` added to `p1` makes `c1` win overall. Existential
/// over `n`, so this checker never fails; instances with no witness below
/// `n_max` make the report inconclusive.
pub fn check_continuity(oracle: &RuleOracle, config: &SuiteConfig) -> Result<AxiomReport> {
    let m = oracle.m();
    let pairs = committee_pair_list(m, oracle.k())?;
    let (situations, situations_exhaustive) = sample::situations(
        m,
        config.max_voters,
        config.exhaustive_cap,
        config.budget,
        config.seed,
    )?;
    if situations.is_empty() {
        return Ok(AxiomReport::inconclusive(
            Axiom::Continuity,
            "search budget exhausted before any instance was generated".into(),
        ));
    }
    let count = situations.len() as u64;
    let exhaustive = situations_exhaustive
        && count
            .saturating_mul(count)
            .saturating_mul(2 * pairs.len() as u64)
            <= config.exhaustive_cap;
    let mut rng = rng_for(config.seed, 14);
    let mut instances = 0u64;
    let mut missing: Vec<String> = Vec::new();

    let check_one = |p1: &VotingSituation,
                     p2: &VotingSituation,
                     instances: &mut u64,
                     missing: &mut Vec<String>|
     -> Result<()> {
        for (c1, c2) in &pairs {
            for (first, second) in [(c1, c2), (c2, c1)] {
                if oracle.compare(p2, first, second)? != Ordering::Greater {
                    continue; // precondition of the axiom
                }
                *instances += 1;
                let mut merged = p1.clone();
                let mut witness_found = false;
                for _ in 1..=config.n_max {
                    merged = merged.combine(p2)?;
                    if oracle.compare(&merged, first, second)? == Ordering::Greater {
                        witness_found = true;
                        break;
                    }
                }
                if !witness_found {
                    if missing.len() < 5 {
                        missing.push(format!(
                            "no n <= {} for ({}, {}) with p1: {} and p2: {}",
                            config.n_max,
                            committee_names(first),
                            committee_names(second),
                            serialize_situation(p1, oracle.k()).replace('\n', "; "),
                            serialize_situation(p2, oracle.k()).replace('\n', "; "),
                        ));
                    } else {
                        missing.push(String::new());
                    }
                }
            }
        }
        Ok(())
    };

    if exhaustive {
        for p1 in &situations {
            for p2 in &situations {
                check_one(p1, p2, &mut instances, &mut missing)?;
            }
        }
    } else {
        for _ in 0..config.budget {
            let p1 = &situations[rng.gen_range(0..situations.len())];
            let p2 = &situations[rng.gen_range(0..situations.len())];
            check_one(p1, p2, &mut instances, &mut missing)?;
        }
    }
    // zero instances is a vacuous pass here: the axiom's premise (a strict
    // winner on p2) never held in the sample, which trivial rules guarantee
    let mut report = AxiomReport {
        axiom: Axiom::Continuity,
        verdict: Verdict::Pass,
        counterexample: None,
        instances_checked: instances,
        exhaustive,
        notes: Vec::new(),
    };
    if !missing.is_empty() {
        report.verdict = Verdict::Inconclusive;
        let hidden = missing.iter().filter(|s| s.is_empty()).count();
        report.notes = missing.into_iter().filter(|s| !s.is_empty()).collect();
        if hidden > 0 {
            report
                .notes
                .push(format!("... and {hidden} more instances"));
        }
    }
    Ok(report)
}

/// When every vote ranks `c1` at positions dominating `c2`'s, the rule must
/// not strictly prefer `c2`.
pub fn check_committee_dominance(oracle: &RuleOracle, config: &SuiteConfig) -> Result<AxiomReport> {
    let m = oracle.m();
    let k = oracle.k();
    let committees = all_committees(m, k)?;
    let votes = all_votes(m)?;
    let mut rng = rng_for(config.seed, 15);
    let mut instances = 0u64;

    for c1 in &committees {
        for c2 in &committees {
            // votes in which c1's positions dominate c2's
            let eligible: Vec<&Vote> = votes
                .iter()
                .filter(|v| {
                    let i1 = v.position_of_committee(c1).expect("valid committee");
                    let i2 = v.position_of_committee(c2).expect("valid committee");
                    dominates(&i1, &i2).expect("same k")
                })
                .collect();
            if eligible.is_empty() {
                continue;
            }
            // single-vote situations exhaustively, then sampled mixtures
            let mut batches: Vec<VotingSituation> = eligible
                .iter()
                .map(|v| VotingSituation::single((*v).clone()))
                .collect();
            for _ in 0..config.budget / 16 {
                let mut mixture = VotingSituation::empty(m);
                for _ in 0..rng.gen_range(2..=config.max_voters.max(2)) {
                    mixture.add_vote(eligible[rng.gen_range(0..eligible.len())], &rat(1))?;
                }
                batches.push(mixture);
            }
            for situation in batches {
                instances += 1;
                if oracle.compare(&situation, c1, c2)? == Ordering::Less {
                    let witness = Counterexample::CommitteeDominance {
                        situation: serialize_situation(&situation, k),
                        c1: committee_names(c1),
                        c2: committee_names(c2),
                        outcome: -1,
                    };
                    return confirmed_fail(oracle, Axiom::CommitteeDominance, instances, witness);
                }
            }
        }
    }
    Ok(AxiomReport::pass(
        Axiom::CommitteeDominance,
        instances,
        true,
    ))
}

/// Adding whole copies of the null profile never changes outcomes.
pub fn check_independence_symmetric_profiles(
    oracle: &RuleOracle,
    config: &SuiteConfig,
) -> Result<AxiomReport> {
    let m = oracle.m();
    let pairs = committee_pair_list(m, oracle.k())?;
    let e = null_profile(m)?;
    let (mut situations, base_exhaustive) = sample::situations(
        m,
        config.max_voters,
        config.exhaustive_cap,
        config.budget,
        config.seed,
    )?;
    let total = (situations.len() as u64)
        .saturating_mul(config.ell_max as u64)
        .saturating_mul(pairs.len() as u64);
    let exhaustive = base_exhaustive && total <= config.exhaustive_cap;
    if !exhaustive && situations.len() > config.budget {
        let mut rng = rng_for(config.seed, 16);
        let mut picked = Vec::with_capacity(config.budget);
        for _ in 0..config.budget {
            picked.push(situations[rng.gen_range(0..situations.len())].clone());
        }
        situations = picked;
    }
    if situations.is_empty() {
        return Ok(AxiomReport::inconclusive(
            Axiom::IndependenceOfSymmetricProfiles,
            "search budget exhausted before any instance was generated".into(),
        ));
    }
    let mut instances = 0u64;
    for situation in &situations {
        let mut shifted = situation.clone();
        for ell in 1..=config.ell_max {
            shifted = shifted.combine(&e)?;
            instances += 1;
            for (c1, c2) in &pairs {
                let base = oracle.compare(situation, c1, c2)?;
                let after = oracle.compare(&shifted, c1, c2)?;
                if base != after {
                    let witness = Counterexample::IndependenceOfSymmetricProfiles {
                        situation: serialize_situation(situation, oracle.k()),
                        ell,
                        c1: committee_names(c1),
                        c2: committee_names(c2),
                        base: ordering_to_i8(base),
                        shifted: ordering_to_i8(after),
                    };
                    return confirmed_fail(
                        oracle,
                        Axiom::IndependenceOfSymmetricProfiles,
                        instances,
                        witness,
                    );
                }
            }
        }
    }
    Ok(AxiomReport::pass(
        Axiom::IndependenceOfSymmetricProfiles,
        instances,
        exhaustive,
    ))
}

/// Replicating the whole electorate never changes outcomes.
pub fn check_homogeneity(oracle: &RuleOracle, config: &SuiteConfig) -> Result<AxiomReport> {
    let m = oracle.m();
    let pairs = committee_pair_list(m, oracle.k())?;
    let (mut situations, base_exhaustive) = sample::situations(
        m,
        config.max_voters,
        config.exhaustive_cap,
        config.budget,
        config.seed,
    )?;
    let total = (situations.len() as u64)
        .saturating_mul(config.ell_max as u64)
        .saturating_mul(pairs.len() as u64);
    let exhaustive = base_exhaustive && total <= config.exhaustive_cap;
    if !exhaustive && situations.len() > config.budget {
        let mut rng = rng_for(config.seed, 17);
        let mut picked = Vec::with_capacity(config.budget);
        for _ in 0..config.budget {
            picked.push(situations[rng.gen_range(0..situations.len())].clone());
        }
        situations = picked;
    }
    if situations.is_empty() {
        return Ok(AxiomReport::inconclusive(
            Axiom::Homogeneity,
            "search budget exhausted before any instance was generated".into(),
        ));
    }
    let mut instances = 0u64;
    for situation in &situations {
        for ell in 1..=config.ell_max {
            instances += 1;
            let scaled = situation.scale(&rat(ell as i64));
            for (c1, c2) in &pairs {
                let base = oracle.compare(situation, c1, c2)?;
                let after = oracle.compare(&scaled, c1, c2)?;
                if base != after {
                    let witness = Counterexample::Homogeneity {
                        situation: serialize_situation(situation, oracle.k()),
                        ell,
                        c1: committee_names(c1),
                        c2: committee_names(c2),
                        base: ordering_to_i8(base),
                        scaled: ordering_to_i8(after),
                    };
                    return confirmed_fail(oracle, Axiom::Homogeneity, instances, witness);
                }
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::Homogeneity, instances, exhaustive))
}

/// Swapping two candidates inside one vote never changes the comparison of
/// `c1` and `c2` when both swapped candidates sit outside `c1 ∪ c2`, inside
/// `c1 ∩ c2`, inside `c1 \ c2`, or inside `c2 \ c1`. A consequence of the
/// axioms rather than an axiom itself, checked the same way.
pub fn check_irrelevant_swaps(oracle: &RuleOracle, config: &SuiteConfig) -> Result<AxiomReport> {
    let m = oracle.m();
    let pairs = committee_pair_list(m, oracle.k())?;
    let (mut situations, base_exhaustive) = sample::situations(
        m,
        config.max_voters,
        config.exhaustive_cap,
        config.budget,
        config.seed,
    )?;
    let candidate_pairs = (m as u64) * (m as u64 - 1) / 2;
    let total = (situations.len() as u64)
        .saturating_mul(config.max_voters as u64)
        .saturating_mul(pairs.len() as u64)
        .saturating_mul(candidate_pairs);
    let exhaustive = base_exhaustive && total <= config.exhaustive_cap;
    if !exhaustive && situations.len() > config.budget {
        let mut rng = rng_for(config.seed, 18);
        let mut picked = Vec::with_capacity(config.budget);
        for _ in 0..config.budget {
            picked.push(situations[rng.gen_range(0..situations.len())].clone());
        }
        situations = picked;
    }
    if situations.is_empty() {
        return Ok(AxiomReport::inconclusive(
            Axiom::IrrelevantSwaps,
            "search budget exhausted before any instance was generated".into(),
        ));
    }
    let mut instances = 0u64;
    for situation in &situations {
        let support: Vec<Vote> = situation.iter().map(|(v, _)| v.clone()).collect();
        for vote in &support {
            for (c1, c2) in &pairs {
                for a in 1..=m {
                    for b in a + 1..=m {
                        let in1 = c1.contains(a) as u8 + c1.contains(b) as u8;
                        let in2 = c2.contains(a) as u8 + c2.contains(b) as u8;
                        let shared = (c1.contains(a) && c2.contains(a)) as u8
                            + (c1.contains(b) && c2.contains(b)) as u8;
                        // both outside, both shared, or both private to one side
                        let eligible = (in1 == 0 && in2 == 0)
                            || shared == 2
                            || (in1 == 2 && in2 == 0)
                            || (in2 == 2 && in1 == 0);
                        if !eligible {
                            continue;
                        }
                        instances += 1;
                        let mut modified = situation.clone();
                        modified.add_vote(vote, &rat(-1))?;
                        modified.add_vote(&vote.swap(a, b)?, &rat(1))?;
                        let before = oracle.compare(situation, c1, c2)?;
                        let after = oracle.compare(&modified, c1, c2)?;
                        if before != after {
                            let witness = Counterexample::IrrelevantSwaps {
                                situation: serialize_situation(situation, oracle.k()),
                                vote: vote_names(vote),
                                a: crate::model::default_name(a),
                                b: crate::model::default_name(b),
                                c1: committee_names(c1),
                                c2: committee_names(c2),
                                before: ordering_to_i8(before),
                                after: ordering_to_i8(after),
                            };
                            return confirmed_fail(
                                oracle,
                                Axiom::IrrelevantSwaps,
                                instances,
                                witness,
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomReport::pass(
        Axiom::IrrelevantSwaps,
        instances,
        exhaustive,
    ))
}

// ---------------------------------------------------------------------------
// the suite

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub rule: String,
    pub m: u8,
    pub k: u8,
    pub config: SuiteConfig,
    pub reports: Vec<AxiomReport>,
}

impl SuiteOutcome {
    pub fn verdict(&self) -> Verdict {
        if self.reports.iter().any(|r| r.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self
            .reports
            .iter()
            .any(|r| r.verdict == Verdict::Inconclusive)
        {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    pub fn failures(&self) -> Vec<&AxiomReport> {
        self.reports
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .collect()
    }
}

/// Runs every checker in canonical order with per-checker derived seeds.
/// The oracle's antisymmetry contract is spot-checked first.
pub fn run_suite(oracle: &RuleOracle, config: &SuiteConfig) -> Result<SuiteOutcome> {
    spot_check_antisymmetry(oracle, config)?;
    let reports = vec![
        check_anonymity(oracle, config)?,
        check_neutrality(oracle, config)?,
        check_consistency(oracle, config)?,
        check_continuity(oracle, config)?,
        check_committee_dominance(oracle, config)?,
        check_independence_symmetric_profiles(oracle, config)?,
        check_homogeneity(oracle, config)?,
        check_irrelevant_swaps(oracle, config)?,
    ];
    Ok(SuiteOutcome {
        rule: oracle.label().to_string(),
        m: oracle.m(),
        k: oracle.k(),
        config: *config,
        reports,
    })
}

fn spot_check_antisymmetry(oracle: &RuleOracle, config: &SuiteConfig) -> Result<()> {
    let pairs = committee_pair_list(oracle.m(), oracle.k())?;
    let mut rng = rng_for(config.seed, 10);
    for _ in 0..16 {
        let situation = sample::one_situation(oracle.m(), config.max_voters, &mut rng)?;
        for (c1, c2) in &pairs {
            let forward = oracle.compare(&situation, c1, c2)?;
            let backward = oracle.compare(&situation, c2, c1)?;
            if forward != backward.reverse() {
                return Err(Error::InvalidParameter(format!(
                    "oracle {} is not antisymmetric on ({:?}, {:?})",
                    oracle.label(),
                    c1,
                    c2
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scoring::BuiltinRule;

    fn scoring_oracle(rule: BuiltinRule, m: u8, k: u8) -> RuleOracle {
        RuleOracle::from_scoring(CommitteeScoringFunction::builtin(rule, m, k).unwrap())
    }

    #[test]
    fn builtins_pass_all_axioms_m3() {
        let config = SuiteConfig::new(7);
        for k in 1..=2u8 {
            for rule in BuiltinRule::catalog(3) {
                let oracle = scoring_oracle(rule, 3, k);
                let outcome = run_suite(&oracle, &config).unwrap();
                assert_eq!(outcome.verdict(), Verdict::Pass, "rule {rule:?} k={k}");
            }
        }
    }

    #[test]
    fn first_voter_dictator_fails_anonymity() {
        let oracle = RuleOracle::first_voter_dictates(3, 1).unwrap();
        let config = SuiteConfig::new(7);
        let report = check_anonymity(&oracle, &config).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let witness = report.counterexample.unwrap();
        assert!(confirm_counterexample(&oracle, &witness).unwrap());
    }

    #[test]
    fn candidate_favoritism_fails_neutrality() {
        let oracle = RuleOracle::favor_candidate(4, 2, 1).unwrap();
        let config = SuiteConfig::new(7);
        let report = check_neutrality(&oracle, &config).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let witness = report.counterexample.unwrap();
        assert!(confirm_counterexample(&oracle, &witness).unwrap());
    }

    #[test]
    fn leximax_fails_consistency_m4() {
        let oracle = RuleOracle::leximax(4, 2);
        let config = SuiteConfig::new(7);
        let report = check_consistency(&oracle, &config).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let witness = report.counterexample.unwrap();
        assert!(confirm_counterexample(&oracle, &witness).unwrap());
    }

    #[test]
    fn continuity_passes_for_scoring() {
        let oracle = scoring_oracle(BuiltinRule::KBorda, 3, 1);
        let config = SuiteConfig::new(7);
        let report = check_continuity(&oracle, &config).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn continuity_hand_instance() {
        // score difference closes after n = 6 copies
        let oracle = scoring_oracle(BuiltinRule::KBorda, 3, 1);
        let p1 = VotingSituation::single(Vote::new(vec![2, 1, 3]).unwrap()).scale(&rat(5));
        let p2 = VotingSituation::single(Vote::new(vec![1, 2, 3]).unwrap());
        let a = Committee::new(vec![1]).unwrap();
        let b = Committee::new(vec![2]).unwrap();
        assert_eq!(oracle.compare(&p2, &a, &b).unwrap(), Ordering::Greater);
        let mut merged = p1.clone();
        let mut witness = None;
        for n in 1..=10 {
            merged = merged.combine(&p2).unwrap();
            if oracle.compare(&merged, &a, &b).unwrap() == Ordering::Greater {
                witness = Some(n);
                break;
            }
        }
        assert_eq!(witness, Some(6));
    }

    #[test]
    fn non_monotone_table_fails_dominance() {
        let mut table = BTreeMap::new();
        table.insert(
            crate::model::CommitteePosition::new(vec![1, 2]).unwrap(),
            rat(0),
        );
        table.insert(
            crate::model::CommitteePosition::new(vec![1, 3]).unwrap(),
            rat(1),
        );
        table.insert(
            crate::model::CommitteePosition::new(vec![2, 3]).unwrap(),
            rat(0),
        );
        let lambda = CommitteeScoringFunction::from_table(3, 2, table, "non-monotone").unwrap();
        assert!(!lambda.is_canonical());
        let oracle = RuleOracle::from_scoring(lambda);
        let config = SuiteConfig::new(7);
        let report = check_committee_dominance(&oracle, &config).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let witness = report.counterexample.unwrap();
        assert!(confirm_counterexample(&oracle, &witness).unwrap());
    }

    #[test]
    fn count_threshold_fails_homogeneity() {
        let oracle = RuleOracle::count_threshold(3, 1, 3).unwrap();
        let config = SuiteConfig::new(7);
        let report = check_homogeneity(&oracle, &config).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let witness = report.counterexample.unwrap();
        assert!(confirm_counterexample(&oracle, &witness).unwrap());
    }

    #[test]
    fn reports_are_deterministic() {
        let oracle = scoring_oracle(BuiltinRule::Sntv, 3, 2);
        let config = SuiteConfig::new(99);
        let a = run_suite(&oracle, &config).unwrap();
        let b = run_suite(&oracle, &config).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn majority_is_symmetric_but_intransitive() {
        // the majority relation passes the symmetry-flavored checks;
        // transitivity is not an axiom here
        let oracle = RuleOracle::majority(3).unwrap();
        let config = SuiteConfig::new(7);
        assert_eq!(
            check_anonymity(&oracle, &config).unwrap().verdict,
            Verdict::Pass
        );
        assert_eq!(
            check_neutrality(&oracle, &config).unwrap().verdict,
            Verdict::Pass
        );
        assert_eq!(
            check_consistency(&oracle, &config).unwrap().verdict,
            Verdict::Pass
        );
    }

    #[test]
    fn antisymmetry_spot_check_rejects_biased_oracle() {
        let oracle = RuleOracle::new(3, 1, "broken", Arc::new(|_, _, _| Ok(Ordering::Greater)));
        let config = SuiteConfig::new(7);
        assert!(run_suite(&oracle, &config).is_err());
    }
}

#[cfg(test)]
mod edge_tests {
    use super::*;
    use crate::scoring::BuiltinRule;

    #[test]
    fn trivial_rule_passes_everything() {
        let table: BTreeMap<_, _> = crate::combinat::enumerate_positions(4, 2)
            .unwrap()
            .into_iter()
            .map(|i| (i, rat(0)))
            .collect();
        let constant = CommitteeScoringFunction::from_table(4, 2, table, "trivial").unwrap();
        let oracle = RuleOracle::from_scoring(constant);
        let outcome = run_suite(&oracle, &SuiteConfig::new(7)).unwrap();
        assert_eq!(outcome.verdict(), Verdict::Pass);
    }

    #[test]
    fn zero_budget_is_inconclusive_not_a_panic() {
        let oracle = RuleOracle::from_scoring(
            CommitteeScoringFunction::builtin(BuiltinRule::KBorda, 4, 2).unwrap(),
        );
        let mut config = SuiteConfig::new(7);
        config.budget = 0;
        let report = check_neutrality(&oracle, &config).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }
}

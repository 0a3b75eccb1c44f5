//! Issue-wise majorities, pairwise comparisons, support tallies, and the
//! Anscombe / Ostrogorski detectors.

use crate::error::{Error, Result};
use crate::exec;
use crate::model::{topic_majority, weighted_hamming, Opinion, Proposal, VotingInstance};
use crate::rational::rat_half;
use crate::scale::ScaledView;

/// Sign of a comparison: +1, 0, or -1.
pub type ComparisonSign = i8;

pub const DEFAULT_IWM_TIE_CAP: u32 = 20;
pub const DEFAULT_SCAN_CAP: usize = 25;

/// How the electorate splits over one proposal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportTally {
    pub supporters: usize,
    pub opposers: usize,
    pub indifferent: usize,
}

impl SupportTally {
    pub fn weakly_supported(&self) -> bool {
        self.supporters >= self.opposers
    }

    pub fn strictly_supported(&self) -> bool {
        self.supporters > self.opposers
    }
}

fn check_len(instance: &VotingInstance, p: &Proposal) -> Result<()> {
    if p.len() != instance.t() {
        return Err(Error::DimensionMismatch {
            expected: instance.t(),
            got: p.len(),
        });
    }
    Ok(())
}

/// sgn(<v_i, p - q>_{w_i}): +1 when voter i strictly prefers p over q.
pub fn voter_compare(
    instance: &VotingInstance,
    i: usize,
    p: &Proposal,
    q: &Proposal,
) -> Result<ComparisonSign> {
    if i >= instance.n() {
        return Err(Error::IndexOutOfRange { index: i, size: instance.n() });
    }
    check_len(instance, p)?;
    check_len(instance, q)?;
    let w = instance.voter_weights(i);
    let v = instance.profile.row(i);
    let dp = weighted_hamming(v, &p.0, &w)?;
    let dq = weighted_hamming(v, &q.0, &w)?;
    Ok(match dp.cmp(&dq) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => -1,
    })
}

/// Sign of the number of voters preferring p minus those preferring q.
pub fn collective_compare(
    instance: &VotingInstance,
    p: &Proposal,
    q: &Proposal,
) -> Result<ComparisonSign> {
    let mut s = 0i64;
    for i in 0..instance.n() {
        s += voter_compare(instance, i, p, q)? as i64;
    }
    Ok(s.signum() as i8)
}

/// Exact supporter / opposer / indifferent counts for p.
pub fn support_tally(instance: &VotingInstance, p: &Proposal) -> Result<SupportTally> {
    check_len(instance, p)?;
    let half = rat_half();
    let mut tally = SupportTally { supporters: 0, opposers: 0, indifferent: 0 };
    for i in 0..instance.n() {
        let w = instance.voter_weights(i);
        let d = weighted_hamming(instance.profile.row(i), &p.0, &w)?;
        match d.cmp(&half) {
            std::cmp::Ordering::Less => tally.supporters += 1,
            std::cmp::Ordering::Equal => tally.indifferent += 1,
            std::cmp::Ordering::Greater => tally.opposers += 1,
        }
    }
    Ok(tally)
}

/// The issue-wise-majority proposals of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IwmSet {
    /// All IWM proposals in lexicographic order (+1 before -1).
    pub proposals: Vec<Proposal>,
    /// The member taking +1 on every tied topic.
    pub canonical: Proposal,
    /// Topics with m_j exactly 1/2.
    pub tied_topics: Vec<usize>,
}

pub fn iwm_proposals(instance: &VotingInstance) -> Result<IwmSet> {
    iwm_proposals_with_cap(instance, DEFAULT_IWM_TIE_CAP)
}

pub fn iwm_proposals_with_cap(instance: &VotingInstance, tie_cap: u32) -> Result<IwmSet> {
    let t = instance.t();
    let half = rat_half();
    let mut fixed = vec![Opinion::Plus; t];
    let mut tied = Vec::new();
    for j in 0..t {
        let m = topic_majority(instance, j)?;
        match m.cmp(&half) {
            std::cmp::Ordering::Greater => fixed[j] = Opinion::Plus,
            std::cmp::Ordering::Less => fixed[j] = Opinion::Minus,
            std::cmp::Ordering::Equal => tied.push(j),
        }
    }
    let k = tied.len() as u32;
    if k > tie_cap {
        return Err(Error::SizeCapExceeded {
            what: "IWM tie enumeration",
            requested: k as u64,
            cap: tie_cap as u64,
        });
    }
    let mut proposals = Vec::with_capacity(1 << k);
    for code in 0u64..(1u64 << k) {
        let mut decisions = fixed.clone();
        for (pos, &j) in tied.iter().enumerate() {
            // Bit k-1-pos keeps ascending codes lexicographic over proposals.
            if code >> (k as usize - 1 - pos) & 1 == 1 {
                decisions[j] = Opinion::Minus;
            }
        }
        proposals.push(Proposal(decisions));
    }
    let canonical = proposals[0].clone();
    Ok(IwmSet { proposals, canonical, tied_topics: tied })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnscombeReport {
    pub occurs: bool,
    pub witness_iwm: Option<Proposal>,
}

/// Anscombe's paradox: some IWM loses head-to-head against its complement.
pub fn detect_anscombe(instance: &VotingInstance) -> Result<AnscombeReport> {
    let iwm = iwm_proposals(instance)?;
    for p in &iwm.proposals {
        if collective_compare(instance, &p.complement(), p)? == 1 {
            return Ok(AnscombeReport { occurs: true, witness_iwm: Some(p.clone()) });
        }
    }
    Ok(AnscombeReport { occurs: false, witness_iwm: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OstrogorskiReport {
    pub occurs: bool,
    pub witness_iwm: Option<Proposal>,
    pub defeater: Option<Proposal>,
}

/// Ostrogorski's paradox: some IWM is not a Condorcet winner.
pub fn detect_ostrogorski(instance: &VotingInstance) -> Result<OstrogorskiReport> {
    detect_ostrogorski_with_cap(instance, DEFAULT_SCAN_CAP)
}

pub fn detect_ostrogorski_with_cap(
    instance: &VotingInstance,
    scan_cap: usize,
) -> Result<OstrogorskiReport> {
    let t = instance.t();
    if t > scan_cap {
        return Err(Error::SizeCapExceeded {
            what: "Ostrogorski proposal scan",
            requested: t as u64,
            cap: scan_cap as u64,
        });
    }
    let iwm = iwm_proposals(instance)?;
    let view = ScaledView::new(instance)?;
    for p in &iwm.proposals {
        let pmask = p.to_mask();
        let hit = exec::find_first(1u64 << t, |code| {
            let q = code as u32;
            q != pmask && view.collective_sign(q, pmask) == 1
        });
        if let Some(code) = hit {
            return Ok(OstrogorskiReport {
                occurs: true,
                witness_iwm: Some(p.clone()),
                defeater: Some(Proposal::from_mask(code as u32, t)),
            });
        }
    }
    Ok(OstrogorskiReport { occurs: false, witness_iwm: None, defeater: None })
}

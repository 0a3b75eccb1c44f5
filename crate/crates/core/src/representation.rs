//! Majority-supported proposals near the issue-wise majority: the partition
//! construction behind the g_l upper bounds, an exhaustive optimum oracle,
//! relevant-topic detection, Wagner's three-fourths checks, the lower-bound
//! instance generators, and the proof-machinery swap maps and expectations.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exec;
use crate::majority::{support_tally, SupportTally};
use crate::model::{
    average_weight_vector, topic_majority, weighted_hamming, weighted_inner, Opinion,
    PreferenceProfile, Proposal, VotingInstance, WeightMode, WeightScheme,
};
use crate::rational::{rat, rat_half, rat_one, rat_zero, Rational};
use crate::scale::{ScaledRow, ScaledView};

pub const DEFAULT_ORACLE_CAP: usize = 22;
/// Largest scaled weight total the subset-sum engine will materialize as a
/// bitset (8 MiB); larger common denominators are refused with a clear error.
pub const KNAPSACK_SUM_BOUND: i64 = 1 << 26;

/// Which g_l case bound applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCase {
    /// l in (0, 1/3): bound 1/2 + l/2.
    SmallEll,
    /// l in [1/3, 1/2]: bound 1 - l.
    MidEll,
    /// l in (1/2, 1): bound l.
    BigEll,
}

impl BoundCase {
    pub fn for_ell(ell: &Rational) -> BoundCase {
        if *ell < rat(1, 3) {
            BoundCase::SmallEll
        } else if *ell <= rat_half() {
            BoundCase::MidEll
        } else {
            BoundCase::BigEll
        }
    }

    pub fn bound(&self, ell: &Rational) -> Rational {
        match self {
            BoundCase::SmallEll => rat_half() + ell / rat(2, 1),
            BoundCase::MidEll => rat_one() - ell,
            BoundCase::BigEll => ell.clone(),
        }
    }
}

/// A weakly majority-supported proposal with its distance from the IWM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationReport {
    pub proposal: Proposal,
    /// Under the average weight vector (w itself in External mode).
    pub distance_to_iwm: Rational,
    pub support: SupportTally,
    /// Set by the partition construction, absent for the oracle.
    pub bound_used: Option<BoundCase>,
}

fn check_p_iwm(instance: &VotingInstance, p_iwm: &Proposal) -> Result<()> {
    if p_iwm.len() != instance.t() {
        return Err(Error::DimensionMismatch {
            expected: instance.t(),
            got: p_iwm.len(),
        });
    }
    Ok(())
}

/// The Thm 5.2 construction: pick a topic set T with weight between 1/2 and
/// the l-case bound, agree with p_iwm exactly on T, and return whichever of
/// the proposal and its complement is weakly supported (the closer one, the
/// agreeing proposal, when both are).
pub fn partition_proposal(
    instance: &VotingInstance,
    p_iwm: &Proposal,
) -> Result<RepresentationReport> {
    check_p_iwm(instance, p_iwm)?;
    let t = instance.t();
    let avg = average_weight_vector(instance);
    let ell = avg.max.clone();
    let case = BoundCase::for_ell(&ell);
    let half = rat_half();
    let in_t: Vec<bool> = match case {
        BoundCase::SmallEll => {
            // Greedily drop topics while the remaining weight stays >= 1/2.
            let mut keep = vec![true; t];
            let mut sum = rat_one();
            for j in 0..t {
                let without = sum.clone() - &avg.weights[j];
                if without >= half {
                    keep[j] = false;
                    sum = without;
                }
            }
            if sum <= &half + &ell / rat(2, 1) {
                keep
            } else {
                // Swap: move one kept topic across; the complement of the
                // rest lands inside [1/2, 1/2 + l/2].
                let j0 = keep.iter().position(|&k| k).expect("sum >= 1/2 > 0");
                let mut t_set: Vec<bool> = keep.iter().map(|&k| !k).collect();
                t_set[j0] = true;
                t_set
            }
        }
        BoundCase::MidEll => {
            let jmax = avg.weights.iter().position(|w| *w == ell).expect("max");
            (0..t).map(|j| j != jmax).collect()
        }
        BoundCase::BigEll => {
            let jmax = avg.weights.iter().position(|w| *w == ell).expect("max");
            (0..t).map(|j| j == jmax).collect()
        }
    };
    let p = Proposal(
        (0..t)
            .map(|j| if in_t[j] { p_iwm.0[j] } else { p_iwm.0[j].flip() })
            .collect(),
    );
    let tally_p = support_tally(instance, &p)?;
    let (chosen, support) = if tally_p.weakly_supported() {
        (p, tally_p)
    } else {
        let pbar = p.complement();
        let tally_bar = support_tally(instance, &pbar)?;
        debug_assert!(tally_bar.weakly_supported());
        (pbar, tally_bar)
    };
    let distance_to_iwm = weighted_hamming(&chosen.0, &p_iwm.0, &avg.weights)?;
    Ok(RepresentationReport {
        proposal: chosen,
        distance_to_iwm,
        support,
        bound_used: Some(case),
    })
}

/// Exhaustive oracle: the exact minimum distance from p_iwm over all weakly
/// majority-supported proposals, with the lexicographically first argmin.
pub fn best_supported_oracle(
    instance: &VotingInstance,
    p_iwm: &Proposal,
) -> Result<RepresentationReport> {
    best_supported_oracle_with_cap(instance, p_iwm, DEFAULT_ORACLE_CAP)
}

pub fn best_supported_oracle_with_cap(
    instance: &VotingInstance,
    p_iwm: &Proposal,
    cap: usize,
) -> Result<RepresentationReport> {
    let (view, wt_row, iwm_mask, t) = oracle_setup(instance, p_iwm, cap)?;
    let best = exec::min_key(1u64 << t, |code| {
        let mask = code as u32;
        (view.support_sign(mask) >= 0).then(|| (wt_row.mask_weight(mask ^ iwm_mask), mask))
    });
    oracle_report(instance, p_iwm, best)
}

/// Sequential variant of the oracle scan, for benchmarks and determinism
/// tests; always returns the same report as `best_supported_oracle`.
pub fn best_supported_oracle_seq(
    instance: &VotingInstance,
    p_iwm: &Proposal,
) -> Result<RepresentationReport> {
    let (view, wt_row, iwm_mask, t) = oracle_setup(instance, p_iwm, DEFAULT_ORACLE_CAP)?;
    let best = exec::min_key_seq(1u64 << t, |code| {
        let mask = code as u32;
        (view.support_sign(mask) >= 0).then(|| (wt_row.mask_weight(mask ^ iwm_mask), mask))
    });
    oracle_report(instance, p_iwm, best)
}

fn oracle_setup(
    instance: &VotingInstance,
    p_iwm: &Proposal,
    cap: usize,
) -> Result<(ScaledView, ScaledRow, u32, usize)> {
    check_p_iwm(instance, p_iwm)?;
    let t = instance.t();
    if t > cap {
        return Err(Error::SizeCapExceeded {
            what: "supported-proposal oracle",
            requested: t as u64,
            cap: cap as u64,
        });
    }
    let view = ScaledView::new(instance)?;
    let avg = average_weight_vector(instance);
    let wt_row = ScaledRow::from_rationals(&avg.weights)?;
    Ok((view, wt_row, p_iwm.to_mask(), t))
}

fn oracle_report(
    instance: &VotingInstance,
    p_iwm: &Proposal,
    best: Option<(i64, u32)>,
) -> Result<RepresentationReport> {
    // For every pair (p, complement) at least one is weakly supported, so the
    // scan always finds a candidate.
    let (_, mask) = best.expect("some proposal is always weakly supported");
    let proposal = Proposal::from_mask(mask, instance.t());
    let avg = average_weight_vector(instance);
    let distance_to_iwm = weighted_hamming(&proposal.0, &p_iwm.0, &avg.weights)?;
    let support = support_tally(instance, &proposal)?;
    Ok(RepresentationReport { proposal, distance_to_iwm, support, bound_used: None })
}

fn validate_weight_vector(w: &[Rational]) -> Result<()> {
    let mut sum = rat_zero();
    for x in w {
        if x.is_negative() {
            return Err(Error::InvalidInstance("negative weight".into()));
        }
        sum += x;
    }
    if sum != rat_one() {
        return Err(Error::InvalidInstance("weights must sum to 1".into()));
    }
    Ok(())
}

fn scaled_weights(w: &[Rational]) -> Result<(Vec<i64>, i64)> {
    let row = ScaledRow::from_rationals(w)?;
    // ScaledRow stores weights in mask-bit order; undo that here.
    let mut topic_order = row.wbits.clone();
    topic_order.reverse();
    Ok((topic_order, row.total))
}

/// Brute-force relevant-topic engine: marks every member of every minimal
/// topic group. Exponential in t.
pub fn relevant_topics_bruteforce(w: &[Rational]) -> Result<BTreeSet<usize>> {
    validate_weight_vector(w)?;
    let t = w.len();
    if t > 20 {
        return Err(Error::SizeCapExceeded {
            what: "relevant-topic brute force",
            requested: t as u64,
            cap: 20,
        });
    }
    let (wi, total) = scaled_weights(w)?;
    let mut relevant = BTreeSet::new();
    for mask in 1u64..(1 << t) {
        let sum: i64 = (0..t).filter(|&j| mask >> j & 1 == 1).map(|j| wi[j]).sum();
        if 2 * sum <= total {
            continue;
        }
        let minimal = (0..t)
            .filter(|&j| mask >> j & 1 == 1)
            .all(|j| 2 * (sum - wi[j]) <= total);
        if minimal {
            for j in 0..t {
                if mask >> j & 1 == 1 {
                    relevant.insert(j);
                }
            }
        }
    }
    Ok(relevant)
}

/// Subset-sum engine: relevance is monotone in weight, so binary search for
/// the lightest relevant topic over the weight-sorted order; each test asks
/// whether the other topics can sum into (1/2 - w_j, 1/2].
pub fn relevant_topics_knapsack(w: &[Rational]) -> Result<BTreeSet<usize>> {
    validate_weight_vector(w)?;
    let t = w.len();
    let (wi, total) = scaled_weights(w)?;
    if total > KNAPSACK_SUM_BOUND {
        return Err(Error::PrecisionOverflow(format!(
            "scaled weight total {total} exceeds subset-sum bound {KNAPSACK_SUM_BOUND}"
        )));
    }
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by_key(|&j| (wi[j], j));
    let is_relevant = |j: usize| -> bool {
        if wi[j] == 0 {
            return false;
        }
        // Bitset of achievable sums r <= floor(total/2) over topics != j.
        let hi = (total / 2) as usize;
        let words = hi / 64 + 1;
        let mut reach = vec![0u64; words];
        reach[0] = 1;
        for k in 0..t {
            if k == j || wi[k] == 0 {
                continue;
            }
            let s = wi[k] as usize;
            if s > hi {
                continue;
            }
            let (word_shift, bit_shift) = (s / 64, s % 64);
            for idx in (word_shift..words).rev() {
                let mut v = reach[idx - word_shift] << bit_shift;
                if bit_shift > 0 && idx > word_shift {
                    v |= reach[idx - word_shift - 1] >> (64 - bit_shift);
                }
                reach[idx] |= v;
            }
            // Mask out bits beyond hi.
            let top = hi % 64;
            if top < 63 {
                reach[words - 1] &= (1u64 << (top + 1)) - 1;
            }
        }
        let lo = std::cmp::max(0, (total - 2 * wi[j]).div_euclid(2) + 1) as usize;
        (lo..=hi).any(|r| reach[r / 64] >> (r % 64) & 1 == 1)
    };
    // Partition point: positions below it are irrelevant, at or above relevant.
    let mut lo = 0usize;
    let mut hi_pos = t;
    while lo < hi_pos {
        let mid = (lo + hi_pos) / 2;
        if is_relevant(order[mid]) {
            hi_pos = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(order[lo..].iter().copied().collect())
}

/// The set of topics belonging to some minimal topic group.
pub fn relevant_topics(w: &[Rational]) -> Result<BTreeSet<usize>> {
    relevant_topics_knapsack(w)
}

/// Wagner-style sufficient conditions plus the quantities behind them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WagnerReport {
    pub anscombe_safe: bool,
    pub ostrogorski_safe: bool,
    /// m-tilde after orienting every column to its majority opinion.
    pub average_majority: Rational,
    /// Total voter weight on majority opinions; equals n times m-tilde.
    pub weight_on_majority: Rational,
    /// Columns flipped by the orientation normalization.
    pub flipped_topics: Vec<usize>,
}

/// Checks m-tilde >= 3/4 (no Anscombe) and, externally, min m_j >= 3/4
/// (no Ostrogorski), after flipping columns so every m_j >= 1/2.
pub fn wagner_check(instance: &VotingInstance) -> Result<WagnerReport> {
    let t = instance.t();
    let half = rat_half();
    let mut flips = vec![false; t];
    let mut flipped_topics = Vec::new();
    for j in 0..t {
        if topic_majority(instance, j)? < half {
            flips[j] = true;
            flipped_topics.push(j);
        }
    }
    let oriented = VotingInstance {
        profile: instance.profile.with_flipped_columns(&flips)?,
        weights: instance.weights.clone(),
    };
    let avg = average_weight_vector(&oriented);
    let mut m_min = rat_one();
    let mut m_tilde = rat_zero();
    for j in 0..t {
        let m_j = topic_majority(&oriented, j)?;
        debug_assert!(m_j >= half);
        if m_j < m_min {
            m_min = m_j.clone();
        }
        m_tilde += &avg.weights[j] * m_j;
    }
    let ones = Proposal::all_ones(t);
    let mut weight_on_majority = rat_zero();
    for i in 0..oriented.n() {
        let w = oriented.voter_weights(i);
        weight_on_majority +=
            rat_one() - weighted_hamming(oriented.profile.row(i), &ones.0, &w)?;
    }
    let threshold = rat(3, 4);
    Ok(WagnerReport {
        anscombe_safe: m_tilde >= threshold,
        ostrogorski_safe: instance.mode() != WeightMode::Internal && m_min >= threshold,
        average_majority: m_tilde,
        weight_on_majority,
        flipped_topics,
    })
}

/// The small-l lower-bound instance: t = 2k+1 topics, 2t-1 single-issue
/// voters per topic plus t+1 all-approving voters, tuned so every proposal
/// within w-tilde distance 1/2 + l/2 of all-ones strictly loses.
pub fn generate_small_ell(k: u32) -> Result<VotingInstance> {
    if k == 0 {
        return Err(Error::DomainError("k must be at least 1".into()));
    }
    if k > 5 {
        return Err(Error::SizeCapExceeded {
            what: "small-l generator (verification is exponential in k)",
            requested: k as u64,
            cap: 5,
        });
    }
    let t = 2 * k as usize + 1;
    let ti = t as i64;
    let mut rows: Vec<Vec<i8>> = Vec::new();
    let mut weights: Vec<Vec<Rational>> = Vec::new();
    for issue in 0..t {
        let vote: Vec<i8> = (0..t).map(|j| if j == issue { -1 } else { 1 }).collect();
        let wrow: Vec<Rational> = (0..t)
            .map(|j| {
                if j == issue {
                    rat(ti, 2 * ti - 1)
                } else {
                    rat(1, 2 * ti - 1)
                }
            })
            .collect();
        for _ in 0..(2 * t - 1) {
            rows.push(vote.clone());
            weights.push(wrow.clone());
        }
    }
    for _ in 0..(t + 1) {
        rows.push(vec![1; t]);
        weights.push(vec![rat(1, ti); t]);
    }
    let instance = VotingInstance::new(
        PreferenceProfile::from_rows(&rows)?,
        WeightScheme::Internal(weights),
    )?;
    // Post-verification: all-ones is the unique IWM and nothing close to it
    // is weakly supported.
    let half = rat_half();
    for j in 0..t {
        assert!(
            topic_majority(&instance, j)? > half,
            "small-l construction lost its strict majorities"
        );
    }
    let avg = average_weight_vector(&instance);
    assert_eq!(avg.max, rat(1, ti));
    // Every proposal within w-tilde distance < 1/2 + l/2 of all-ones (here:
    // fewer than (t+1)/2 flipped topics) must be strictly defeated.
    let view = ScaledView::new(&instance)?;
    for mask in 0u64..(1 << t) {
        if mask.count_ones() as usize * 2 < t + 1 {
            assert!(
                view.support_sign(mask as u32) < 0,
                "proposal {} within the bound is not strictly defeated",
                Proposal::from_mask(mask as u32, t)
            );
        }
    }
    Ok(instance)
}

/// The big-l lower-bound instance: two topics, 2x+1 voters whose first-topic
/// weights straddle 1/2 so that only first-topic rejections win support.
pub fn generate_big_ell(ell: &Rational) -> Result<VotingInstance> {
    if *ell <= rat_half() || *ell >= rat_one() {
        return Err(Error::DomainError(format!(
            "l must lie strictly between 1/2 and 1, got {}",
            crate::rational::format_rational(ell)
        )));
    }
    let bound_a = ell / (rat_one() - ell);
    let bound_b = rat_one() / (rat(2, 1) * ell - rat_one());
    let max = if bound_a > bound_b { bound_a } else { bound_b };
    let x_int: Rational = max.floor() + rat_one();
    let x = Rational::from_integer(x_int.to_integer());
    let one = rat_one();
    let w_plus_1 = (&x + &one) / &x * ell;
    let w_minus_1 = &x / (&x + &one) * ell;
    let xi: u64 = x
        .to_integer()
        .try_into()
        .map_err(|_| Error::PrecisionOverflow("x too large".into()))?;
    if xi > 1_000_000 {
        return Err(Error::SizeCapExceeded {
            what: "big-l generator voter count",
            requested: 2 * xi + 1,
            cap: 2_000_001,
        });
    }
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    for _ in 0..xi {
        rows.push(vec![1i8, 1]);
        weights.push(vec![w_plus_1.clone(), &one - &w_plus_1]);
    }
    for _ in 0..=xi {
        rows.push(vec![-1i8, 1]);
        weights.push(vec![w_minus_1.clone(), &one - &w_minus_1]);
    }
    let instance = VotingInstance::new(
        PreferenceProfile::from_rows(&rows)?,
        WeightScheme::Internal(weights),
    )?;
    // Post-verification per the construction's claims.
    let half = rat_half();
    for i in 0..instance.n() {
        let w1 = &instance.voter_weights(i)[0];
        assert!(*w1 > half && *w1 < one, "first-topic weight out of (1/2, 1)");
    }
    let avg = average_weight_vector(&instance);
    assert_eq!(&avg.weights[0], ell, "w-tilde_1 must equal l exactly");
    assert_eq!(avg.max, *ell);
    for j in 0..2 {
        assert!(topic_majority(&instance, j)? > half, "IWM must be unique all-ones");
    }
    for mask in 0u32..4 {
        let p = Proposal::from_mask(mask, 2);
        let tally = support_tally(&instance, &p)?;
        if tally.weakly_supported() {
            assert_eq!(p.0[0], Opinion::Minus, "supported proposal must reject topic 1");
        }
    }
    Ok(instance)
}

/// The three swap maps of Appendix C.1.2 for one voter, plus p's type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapMaps {
    pub f_plus: Proposal,
    pub f_minus: Proposal,
    /// f_plus when the type is diagonal, f_minus otherwise; self-inverse and
    /// type-preserving.
    pub f: Proposal,
    /// (sgn <p, p_iwm>_w, sgn <v, p>_w).
    pub type_of: (i8, i8),
}

fn rational_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn swap_maps(
    instance: &VotingInstance,
    voter: usize,
    p_iwm: &Proposal,
    p: &Proposal,
) -> Result<SwapMaps> {
    if instance.mode() == WeightMode::Internal {
        return Err(Error::ContractViolation(
            "swap maps are defined for a shared (external) weight vector".into(),
        ));
    }
    if voter >= instance.n() {
        return Err(Error::IndexOutOfRange { index: voter, size: instance.n() });
    }
    check_p_iwm(instance, p_iwm)?;
    check_p_iwm(instance, p)?;
    let w = instance.voter_weights(voter);
    let v = instance.profile.row(voter);
    let ip_iwm = weighted_inner(&p.0, &p_iwm.0, &w)?;
    let iv_p = weighted_inner(v, &p.0, &w)?;
    if ip_iwm.is_zero() || iv_p.is_zero() {
        return Err(Error::DomainError(
            "p lies outside B*: an inner product vanishes".into(),
        ));
    }
    let mask: Vec<Opinion> = (0..instance.t())
        .map(|j| {
            if v[j] == p_iwm.0[j] {
                Opinion::Plus
            } else {
                Opinion::Minus
            }
        })
        .collect();
    let hadamard = |flip_on_plus: bool| -> Proposal {
        Proposal(
            (0..instance.t())
                .map(|j| {
                    let flip = (mask[j] == Opinion::Plus) == flip_on_plus;
                    if flip {
                        p.0[j].flip()
                    } else {
                        p.0[j]
                    }
                })
                .collect(),
        )
    };
    let f_plus = hadamard(false);
    let f_minus = hadamard(true);
    let type_of = (rational_sign(&ip_iwm), rational_sign(&iv_p));
    let f = if type_of.0 == type_of.1 { f_plus.clone() } else { f_minus.clone() };
    Ok(SwapMaps { f_plus, f_minus, f, type_of })
}

/// Exact expectations of the Appendix C.1.2 thought experiments over the
/// majority-leaning proposal set B_m = {p : <p, p_iwm>_w > 0}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeReport {
    pub ex: Rational,
    pub ey: Rational,
    pub b_m_size: u64,
}

pub fn thought_experiment_expectations(
    instance: &VotingInstance,
    p_iwm: &Proposal,
) -> Result<TeReport> {
    thought_experiment_expectations_with_cap(instance, p_iwm, DEFAULT_ORACLE_CAP)
}

pub fn thought_experiment_expectations_with_cap(
    instance: &VotingInstance,
    p_iwm: &Proposal,
    cap: usize,
) -> Result<TeReport> {
    if instance.mode() == WeightMode::Internal {
        return Err(Error::ContractViolation(
            "thought experiments are defined for a shared weight vector".into(),
        ));
    }
    check_p_iwm(instance, p_iwm)?;
    let t = instance.t();
    if t > cap {
        return Err(Error::SizeCapExceeded {
            what: "thought-experiment enumeration",
            requested: t as u64,
            cap: cap as u64,
        });
    }
    let view = ScaledView::new(instance)?;
    let total = view.shared_total().expect("shared weights");
    let wrow = shared_row(instance)?;
    let iwm_mask = p_iwm.to_mask();
    let mut count = 0u64;
    let mut x_sum = 0i128;
    let mut y_sum = 0i128;
    for code in 0u64..(1 << t) {
        let mask = code as u32;
        // Scaled <p, p_iwm>_w.
        let ip = crate::scale::mask_inner(&wrow, mask, iwm_mask);
        if ip <= 0 {
            continue;
        }
        count += 1;
        let mut sup_minus_opp = 0i64;
        for i in 0..view.n {
            let inner = view.inner(i, mask);
            x_sum += inner as i128;
            sup_minus_opp += inner.signum();
        }
        y_sum += ip as i128 * sup_minus_opp as i128;
    }
    if count == 0 {
        return Err(Error::DomainError("B_m is empty".into()));
    }
    let denom = Rational::from_integer((total as i128 * count as i128).into());
    let ex = Rational::from_integer(x_sum.into()) / &denom;
    let ey = Rational::from_integer(y_sum.into()) / &denom;
    Ok(TeReport { ex, ey, b_m_size: count })
}

fn shared_row(instance: &VotingInstance) -> Result<ScaledRow> {
    match &instance.weights {
        WeightScheme::Unweighted => Ok(ScaledRow {
            wbits: vec![1; instance.t()],
            total: instance.t() as i64,
        }),
        WeightScheme::External(w) => ScaledRow::from_rationals(w),
        WeightScheme::Internal(_) => unreachable!("checked above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majority::iwm_proposals;
    use crate::model::PreferenceProfile;

    fn intro() -> VotingInstance {
        VotingInstance::unweighted(
            PreferenceProfile::from_rows(&[
                vec![1, -1, -1],
                vec![-1, 1, -1],
                vec![-1, -1, 1],
                vec![1, 1, 1],
                vec![1, 1, 1],
            ])
            .unwrap(),
        )
    }

    fn p(signs: &[i8]) -> Proposal {
        Proposal::from_signs(signs).unwrap()
    }

    #[test]
    fn oracle_on_intro() {
        let inst = intro();
        let iwm = iwm_proposals(&inst).unwrap().canonical;
        let report = best_supported_oracle(&inst, &iwm).unwrap();
        assert_eq!(report.proposal, p(&[1, 1, -1]));
        assert_eq!(report.distance_to_iwm, rat(1, 3));
        assert!(report.support.weakly_supported());
        assert_eq!(report.support.supporters, 4);
        assert_eq!(report.support.opposers, 1);
        assert_eq!(report.bound_used, None);
        let seq = best_supported_oracle_seq(&inst, &iwm).unwrap();
        assert_eq!(seq, report);
    }

    #[test]
    fn partition_on_intro_respects_the_mid_bound() {
        let inst = intro();
        let iwm = iwm_proposals(&inst).unwrap().canonical;
        let report = partition_proposal(&inst, &iwm).unwrap();
        assert_eq!(report.bound_used, Some(BoundCase::MidEll));
        assert!(report.support.weakly_supported());
        assert_eq!(report.proposal, p(&[-1, 1, 1]));
        assert_eq!(report.distance_to_iwm, rat(1, 3));
        assert!(report.distance_to_iwm <= BoundCase::MidEll.bound(&rat(1, 3)));
    }

    #[test]
    fn partition_stays_within_bound_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let t = rng.gen_range(1..=6);
            let rows: Vec<Vec<i8>> = (0..n)
                .map(|_| (0..t).map(|_| if rng.gen() { 1 } else { -1 }).collect())
                .collect();
            // Random unit-sum external weights with small denominators.
            let parts: Vec<i64> = (0..t).map(|_| rng.gen_range(1..=6)).collect();
            let total: i64 = parts.iter().sum();
            let w: Vec<Rational> = parts.iter().map(|&x| rat(x, total)).collect();
            let inst = VotingInstance::new(
                PreferenceProfile::from_rows(&rows).unwrap(),
                WeightScheme::External(w),
            )
            .unwrap();
            let iwm = iwm_proposals(&inst).unwrap().canonical;
            let report = partition_proposal(&inst, &iwm).unwrap();
            let ell = average_weight_vector(&inst).max;
            let case = report.bound_used.unwrap();
            assert_eq!(case, BoundCase::for_ell(&ell));
            assert!(report.distance_to_iwm <= case.bound(&ell));
            assert!(report.support.weakly_supported());
            // The oracle never does worse than the construction.
            let oracle = best_supported_oracle(&inst, &iwm).unwrap();
            assert!(oracle.distance_to_iwm <= report.distance_to_iwm);
        }
    }

    #[test]
    fn relevant_topic_engines_agree() {
        let w1 = vec![rat(1, 2), rat(1, 4), rat(1, 4)];
        assert_eq!(
            relevant_topics_bruteforce(&w1).unwrap(),
            [0, 1, 2].into_iter().collect::<BTreeSet<_>>()
        );
        let w2 = vec![rat(3, 5), rat(1, 5), rat(1, 5)];
        assert_eq!(
            relevant_topics_bruteforce(&w2).unwrap(),
            [0].into_iter().collect::<BTreeSet<_>>()
        );
        for w in [w1, w2] {
            assert_eq!(
                relevant_topics_knapsack(&w).unwrap(),
                relevant_topics_bruteforce(&w).unwrap()
            );
        }
    }

    #[test]
    fn relevant_topics_random_agreement() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        for _ in 0..200 {
            let t = rng.gen_range(1..=8);
            let parts: Vec<i64> = (0..t).map(|_| rng.gen_range(0..=5)).collect();
            let total: i64 = parts.iter().sum();
            if total == 0 {
                continue;
            }
            let w: Vec<Rational> = parts.iter().map(|&x| rat(x, total)).collect();
            assert_eq!(
                relevant_topics_knapsack(&w).unwrap(),
                relevant_topics_bruteforce(&w).unwrap(),
                "weights {parts:?}"
            );
        }
    }

    #[test]
    fn wagner_identity_and_safety() {
        let inst = intro();
        let report = wagner_check(&inst).unwrap();
        // m-tilde = 3/5 < 3/4: neither condition fires (and indeed the intro
        // instance exhibits both paradoxes).
        assert!(!report.anscombe_safe);
        assert!(!report.ostrogorski_safe);
        assert_eq!(report.average_majority, rat(3, 5));
        assert_eq!(report.weight_on_majority, rat(3, 1));
        assert!(report.flipped_topics.is_empty());

        // A minority-leaning column gets flipped before the check.
        let flipped = VotingInstance::unweighted(
            PreferenceProfile::from_rows(&[vec![1, -1], vec![1, -1], vec![1, -1], vec![1, 1]])
                .unwrap(),
        );
        let r = wagner_check(&flipped).unwrap();
        assert_eq!(r.flipped_topics, vec![1]);
        assert!(r.anscombe_safe);
        assert!(r.ostrogorski_safe);
        assert_eq!(
            r.weight_on_majority,
            Rational::from_integer(4.into()) * r.average_majority
        );
    }

    #[test]
    fn small_ell_generator_builds_and_verifies() {
        let inst = generate_small_ell(1).unwrap();
        assert_eq!(inst.n(), 19);
        assert_eq!(inst.t(), 3);
        assert_eq!(average_weight_vector(&inst).max, rat(1, 3));
        assert!(generate_small_ell(0).is_err());
        assert!(generate_small_ell(6).is_err());
    }

    #[test]
    fn big_ell_generator_builds_and_verifies() {
        let ell = rat(3, 5);
        let inst = generate_big_ell(&ell).unwrap();
        assert_eq!(inst.t(), 2);
        assert_eq!(average_weight_vector(&inst).weights[0], ell);
        assert!(inst.n() % 2 == 1);
        assert!(generate_big_ell(&rat(1, 2)).is_err());
        assert!(generate_big_ell(&rat(1, 1)).is_err());
    }

    #[test]
    fn swap_map_identities() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        for _ in 0..50 {
            let n = rng.gen_range(1..=5);
            let t = rng.gen_range(1..=6);
            let rows: Vec<Vec<i8>> = (0..n)
                .map(|_| (0..t).map(|_| if rng.gen() { 1 } else { -1 }).collect())
                .collect();
            let parts: Vec<i64> = (0..t).map(|_| rng.gen_range(1..=4)).collect();
            let total: i64 = parts.iter().sum();
            let w: Vec<Rational> = parts.iter().map(|&x| rat(x, total)).collect();
            let inst = VotingInstance::new(
                PreferenceProfile::from_rows(&rows).unwrap(),
                WeightScheme::External(w.clone()),
            )
            .unwrap();
            let iwm = iwm_proposals(&inst).unwrap().canonical;
            for mask in 0..(1u32 << t) {
                let prop = Proposal::from_mask(mask, t);
                for i in 0..n {
                    let maps = match swap_maps(&inst, i, &iwm, &prop) {
                        Ok(m) => m,
                        Err(Error::DomainError(_)) => continue,
                        Err(e) => panic!("{e}"),
                    };
                    let v = inst.profile.row(i);
                    let ip = weighted_inner(&prop.0, &iwm.0, &w).unwrap();
                    assert_eq!(weighted_inner(v, &maps.f_plus.0, &w).unwrap(), ip);
                    assert_eq!(weighted_inner(v, &maps.f_minus.0, &w).unwrap(), -&ip);
                    // Self-inverse and type-preserving.
                    let back = swap_maps(&inst, i, &iwm, &maps.f).unwrap();
                    assert_eq!(back.f, prop);
                    assert_eq!(back.type_of, maps.type_of);
                }
            }
        }
    }

    #[test]
    fn swap_maps_reject_internal_and_boundary() {
        let inst = intro();
        let iwm = Proposal::all_ones(3);
        let internal = VotingInstance::new(
            PreferenceProfile::from_rows(&[vec![1, 1]]).unwrap(),
            WeightScheme::Internal(vec![vec![rat(1, 2), rat(1, 2)]]),
        )
        .unwrap();
        assert!(matches!(
            swap_maps(&internal, 0, &Proposal::all_ones(2), &Proposal::all_ones(2)),
            Err(Error::ContractViolation(_))
        ));
        assert!(swap_maps(&inst, 9, &iwm, &iwm).is_err());
        // Uniform weights over 2 topics put mixed proposals on the boundary.
        let even = VotingInstance::unweighted(
            PreferenceProfile::from_rows(&[vec![1, 1]]).unwrap(),
        );
        assert!(matches!(
            swap_maps(&even, 0, &Proposal::all_ones(2), &p(&[1, -1])),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn thought_experiments_match_on_intro() {
        let inst = intro();
        let iwm = Proposal::all_ones(3);
        let report = thought_experiment_expectations(&inst, &iwm).unwrap();
        assert_eq!(report.ex, report.ey);
        assert!(report.ex >= rat_zero());
        assert_eq!(report.b_m_size, 4);
    }

    #[test]
    fn thought_experiments_random_equality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let t = rng.gen_range(1..=7);
            let rows: Vec<Vec<i8>> = (0..n)
                .map(|_| (0..t).map(|_| if rng.gen() { 1 } else { -1 }).collect())
                .collect();
            let parts: Vec<i64> = (0..t).map(|_| rng.gen_range(1..=5)).collect();
            let total: i64 = parts.iter().sum();
            let w: Vec<Rational> = parts.iter().map(|&x| rat(x, total)).collect();
            let inst = VotingInstance::new(
                PreferenceProfile::from_rows(&rows).unwrap(),
                WeightScheme::External(w),
            )
            .unwrap();
            let iwm = iwm_proposals(&inst).unwrap().canonical;
            let report = thought_experiment_expectations(&inst, &iwm).unwrap();
            assert_eq!(report.ex, report.ey);
            assert!(report.ex >= rat_zero());
        }
    }
}

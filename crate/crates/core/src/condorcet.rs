//! Exact, capped solvers for Condorcet checking and the decision problems
//! MAJOR and UNANIM/NSS. All are exponential-time searches with pruning; the
//! caps keep the cost honest.

use crate::error::{Error, Result};
use crate::exec;
use crate::majority::{iwm_proposals, DEFAULT_SCAN_CAP};
use crate::model::{column_balance, Opinion, PreferenceProfile, Proposal, VotingInstance, WeightMode};
use crate::scale::ScaledView;

pub const DEFAULT_NSS_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CondorcetAnswer {
    Yes,
    No { defeater: Proposal },
}

impl CondorcetAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, CondorcetAnswer::Yes)
    }
}

fn check_scan_cap(t: usize, cap: usize) -> Result<()> {
    if t > cap {
        return Err(Error::SizeCapExceeded {
            what: "Condorcet proposal scan",
            requested: t as u64,
            cap: cap as u64,
        });
    }
    Ok(())
}

/// Is p a Condorcet winner? If not, reports the lexicographically first
/// defeater.
pub fn is_condorcet(instance: &VotingInstance, p: &Proposal) -> Result<CondorcetAnswer> {
    is_condorcet_with_cap(instance, p, DEFAULT_SCAN_CAP)
}

pub fn is_condorcet_with_cap(
    instance: &VotingInstance,
    p: &Proposal,
    cap: usize,
) -> Result<CondorcetAnswer> {
    let t = instance.t();
    if p.len() != t {
        return Err(Error::DimensionMismatch { expected: t, got: p.len() });
    }
    check_scan_cap(t, cap)?;
    let view = ScaledView::new(instance)?;
    let pmask = p.to_mask();
    let hit = exec::find_first(1u64 << t, |code| {
        let q = code as u32;
        q != pmask && view.collective_sign(q, pmask) == 1
    });
    Ok(match hit {
        Some(code) => CondorcetAnswer::No { defeater: Proposal::from_mask(code as u32, t) },
        None => CondorcetAnswer::Yes,
    })
}

/// The lexicographically first Condorcet winner, if any. In External or
/// Unweighted mode only IWM proposals can win, so the search is restricted to
/// them; Internal mode scans all of B^t.
pub fn find_condorcet(instance: &VotingInstance) -> Result<Option<Proposal>> {
    find_condorcet_with_cap(instance, DEFAULT_SCAN_CAP)
}

pub fn find_condorcet_with_cap(
    instance: &VotingInstance,
    cap: usize,
) -> Result<Option<Proposal>> {
    let t = instance.t();
    check_scan_cap(t, cap)?;
    match instance.mode() {
        WeightMode::Unweighted | WeightMode::External => {
            let iwm = iwm_proposals(instance)?;
            for p in &iwm.proposals {
                if is_condorcet_with_cap(instance, p, cap)?.is_yes() {
                    return Ok(Some(p.clone()));
                }
            }
            Ok(None)
        }
        WeightMode::Internal => {
            for code in 0u64..(1u64 << t) {
                let p = Proposal::from_mask(code as u32, t);
                if is_condorcet_with_cap(instance, &p, cap)?.is_yes() {
                    return Ok(Some(p));
                }
            }
            Ok(None)
        }
    }
}

/// NSS: find an index subset of the given ±1 columns whose sum is negative in
/// every coordinate. Returns the first hit in subset-lexicographic order
/// (binary counting on the index bitmask, column 1 = least-significant bit).
pub fn solve_nss(columns: &[Vec<Opinion>]) -> Result<Option<Vec<usize>>> {
    solve_nss_with_cap(columns, DEFAULT_NSS_CAP)
}

pub fn solve_nss_with_cap(columns: &[Vec<Opinion>], cap: usize) -> Result<Option<Vec<usize>>> {
    let m = columns.len();
    if m == 0 {
        return Ok(None);
    }
    if m > cap {
        return Err(Error::SizeCapExceeded {
            what: "NSS column subset search",
            requested: m as u64,
            cap: cap as u64,
        });
    }
    let n = columns[0].len();
    for c in columns {
        if c.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: c.len() });
        }
    }
    if n == 0 {
        return Err(Error::InvalidInstance("NSS columns must be non-empty".into()));
    }
    // Depth-first over bits from the most significant (last column) down,
    // taking the 0-branch first: leaves appear in ascending bitmask order.
    let mut partial = vec![0i64; n];
    let mut chosen = 0u64;
    fn dfs(
        columns: &[Vec<Opinion>],
        bit: usize,
        partial: &mut Vec<i64>,
        chosen: &mut u64,
    ) -> Option<u64> {
        let remaining = bit as i64;
        // Prune when some coordinate cannot go negative even if every
        // remaining column contributes -1.
        if partial.iter().any(|&s| s - remaining >= 0) {
            return None;
        }
        if bit == 0 {
            return if partial.iter().all(|&s| s < 0) {
                Some(*chosen)
            } else {
                None
            };
        }
        let b = bit - 1;
        if let Some(hit) = dfs(columns, b, partial, chosen) {
            return Some(hit);
        }
        for (i, o) in columns[b].iter().enumerate() {
            partial[i] += o.to_i8() as i64;
        }
        *chosen |= 1 << b;
        let hit = dfs(columns, b, partial, chosen);
        *chosen &= !(1 << b);
        for (i, o) in columns[b].iter().enumerate() {
            partial[i] -= o.to_i8() as i64;
        }
        hit
    }
    let hit = dfs(columns, m, &mut partial, &mut chosen);
    Ok(hit.map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect()))
}

/// MAJOR: the lexicographically first proposal strictly beating all-ones in a
/// head-to-head vote, or none. Unweighted mode with all-ones an IWM only.
pub fn solve_major(instance: &VotingInstance) -> Result<Option<Proposal>> {
    solve_major_with_cap(instance, DEFAULT_SCAN_CAP)
}

pub fn solve_major_with_cap(instance: &VotingInstance, cap: usize) -> Result<Option<Proposal>> {
    if instance.mode() != WeightMode::Unweighted {
        return Err(Error::ContractViolation(
            "MAJOR is defined for unweighted instances".into(),
        ));
    }
    let t = instance.t();
    check_scan_cap(t, cap)?;
    for j in 0..t {
        if column_balance(&instance.profile, j)? < 0 {
            return Err(Error::ContractViolation(
                "MAJOR requires the all-ones proposal to be an IWM".into(),
            ));
        }
    }
    let view = ScaledView::new(instance)?;
    let hit = exec::find_first(1u64 << t, |code| view.collective_sign(code as u32, 0) == 1);
    Ok(hit.map(|code| Proposal::from_mask(code as u32, t)))
}

/// The "More-Negative-Than-Positive-Sum-Subset" reformulation, exposed as an
/// input adapter: given ±1 columns (odd length, each with positive sum), find
/// a column subset where strictly more coordinates have negative sum than
/// positive sum; equivalently solve MAJOR on the profile with those columns.
pub fn solve_mntpss(columns: &[Vec<Opinion>]) -> Result<Option<Vec<usize>>> {
    if columns.is_empty() {
        return Ok(None);
    }
    let n = columns[0].len();
    let t = columns.len();
    let mut entries = Vec::with_capacity(n * t);
    for i in 0..n {
        for c in columns {
            if c.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: c.len() });
            }
            entries.push(c[i]);
        }
    }
    let profile = PreferenceProfile::new(n, t, entries)?;
    let instance = VotingInstance::unweighted(profile);
    let p = solve_major(&instance)?;
    Ok(p.map(|p| {
        (0..t)
            .filter(|&j| p.0[j] == Opinion::Minus)
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn col(signs: &[i8]) -> Vec<Opinion> {
        signs.iter().map(|&s| Opinion::from_i8(s).unwrap()).collect()
    }

    #[test]
    fn intro_iwm_is_defeated() {
        let ans = is_condorcet(&intro(), &p(&[1, 1, 1])).unwrap();
        assert_eq!(ans, CondorcetAnswer::No { defeater: p(&[-1, -1, -1]) });
    }

    #[test]
    fn single_voter_vote_wins() {
        let inst = VotingInstance::unweighted(
            PreferenceProfile::from_rows(&[vec![1, -1, 1]]).unwrap(),
        );
        assert!(is_condorcet(&inst, &p(&[1, -1, 1])).unwrap().is_yes());
    }

    #[test]
    fn intro_has_no_winner() {
        assert_eq!(find_condorcet(&intro()).unwrap(), None);
    }

    #[test]
    fn unanimous_profile_winner() {
        let inst = VotingInstance::unweighted(
            PreferenceProfile::from_rows(&[vec![-1, 1], vec![-1, 1], vec![-1, 1]]).unwrap(),
        );
        assert_eq!(find_condorcet(&inst).unwrap(), Some(p(&[-1, 1])));
    }

    #[test]
    fn cap_errors() {
        let inst = intro();
        assert!(matches!(
            is_condorcet_with_cap(&inst, &p(&[1, 1, 1]), 2),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn nss_examples() {
        // A single all-minus column is its own witness.
        assert_eq!(
            solve_nss(&[col(&[-1, -1, -1])]).unwrap(),
            Some(vec![0])
        );
        // Intro columns admit no coordinate-wise negative subset.
        let cols = intro().profile.columns();
        assert_eq!(solve_nss(&cols).unwrap(), None);
        // Subset order is binary counting: {1,2} = 011 is tried before
        // {3} = 100, but its sum (0,0) fails, so {3} is the answer.
        let cols = vec![col(&[-1, 1]), col(&[1, -1]), col(&[-1, -1])];
        assert_eq!(solve_nss(&cols).unwrap(), Some(vec![2]));
    }

    #[test]
    fn nss_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=6);
            let cols: Vec<Vec<Opinion>> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| if rng.gen() { Opinion::Plus } else { Opinion::Minus })
                        .collect()
                })
                .collect();
            let mut brute = None;
            'outer: for mask in 1u64..(1 << m) {
                let mut sums = vec![0i64; n];
                for j in 0..m {
                    if mask >> j & 1 == 1 {
                        for i in 0..n {
                            sums[i] += cols[j][i].to_i8() as i64;
                        }
                    }
                }
                if sums.iter().all(|&s| s < 0) {
                    brute = Some((0..m).filter(|&j| mask >> j & 1 == 1).collect::<Vec<_>>());
                    break 'outer;
                }
            }
            assert_eq!(solve_nss(&cols).unwrap(), brute);
        }
    }

    #[test]
    fn major_on_intro() {
        assert_eq!(solve_major(&intro()).unwrap(), Some(p(&[-1, -1, -1])));
    }

    #[test]
    fn major_none_for_unanimous_ones() {
        let inst = VotingInstance::unweighted(
            PreferenceProfile::from_rows(&[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap(),
        );
        assert_eq!(solve_major(&inst).unwrap(), None);
    }

    #[test]
    fn major_preconditions() {
        let inst = VotingInstance::unweighted(
            PreferenceProfile::from_rows(&[vec![-1, 1], vec![-1, 1], vec![1, 1]]).unwrap(),
        );
        assert!(matches!(
            solve_major(&inst),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn mntpss_adapter_matches_major() {
        let cols = intro().profile.columns();
        let subset = solve_mntpss(&cols).unwrap();
        assert_eq!(subset, Some(vec![0, 1, 2]));
    }
}

//! Forbidden-subprofile finders: a quartic brute-force scan used as an oracle
//! and the linear-time group-elimination search.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::PreferenceProfile;

use super::catalogue::{catalogue_lookup, ForbiddenWitness};
use super::recognize_ssw;

/// Scans every 3x4 and 4x3 index choice in lexicographic order and returns
/// the first catalogue match.
pub fn find_forbidden_naive(profile: &PreferenceProfile) -> Option<ForbiddenWitness> {
    let (n, t) = (profile.n(), profile.t());
    for (r, c) in [(3usize, 4usize), (4, 3)] {
        if n < r || t < c {
            continue;
        }
        for rows in (0..n).combinations(r) {
            for cols in (0..t).combinations(c) {
                let sub = profile.submatrix(&rows, &cols).expect("in range");
                if let Some(catalogue_id) = catalogue_lookup(&sub) {
                    return Some(ForbiddenWitness { rows, cols, catalogue_id });
                }
            }
        }
    }
    None
}

fn is_ssw_sub(profile: &PreferenceProfile, rows: &[usize], cols: &[usize]) -> bool {
    if rows.is_empty() || cols.is_empty() {
        return true;
    }
    let sub = profile.submatrix(rows, cols).expect("in range");
    recognize_ssw(&sub).is_some()
}

/// Splits indices into `groups` contiguous chunks of nearly equal size.
fn chunked(indices: &[usize], groups: usize) -> Vec<Vec<usize>> {
    let len = indices.len();
    let base = len / groups;
    let extra = len % groups;
    let mut out = Vec::with_capacity(groups);
    let mut pos = 0;
    for g in 0..groups {
        let size = base + usize::from(g < extra);
        out.push(indices[pos..pos + size].to_vec());
        pos += size;
    }
    out
}

/// One group-elimination pass over one dimension. Returns the surviving
/// index set and the number of recognizer calls spent.
fn eliminate_groups<F>(mut alive: Vec<usize>, groups: usize, still_bad: F) -> (Vec<usize>, usize)
where
    F: Fn(&[usize]) -> bool,
{
    let mut calls = 0;
    while alive.len() >= groups {
        let chunks = chunked(&alive, groups);
        let mut removed = false;
        for g in 0..groups {
            let candidate: Vec<usize> = chunks
                .iter()
                .enumerate()
                .filter(|&(h, _)| h != g)
                .flat_map(|(_, c)| c.iter().copied())
                .collect();
            calls += 1;
            if still_bad(&candidate) {
                alive = candidate;
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    // Single-deletion passes once the dimension is small.
    loop {
        let mut removed = false;
        let mut idx = 0;
        while idx < alive.len() && alive.len() > 1 {
            let mut candidate = alive.clone();
            candidate.remove(idx);
            calls += 1;
            if still_bad(&candidate) {
                alive = candidate;
                removed = true;
            } else {
                idx += 1;
            }
        }
        if !removed {
            break;
        }
    }
    (alive, calls)
}

/// Group-elimination search for a forbidden subprofile of a non-single-switch
/// profile. Uses O(nt) total recognizer work: each round spends at most five
/// recognizer calls to drop at least a fifth of one dimension.
pub fn find_forbidden_fast(profile: &PreferenceProfile) -> Result<ForbiddenWitness> {
    find_forbidden_fast_counted(profile).map(|(w, _)| w)
}

/// Like `find_forbidden_fast`, also reporting the recognizer call count.
pub fn find_forbidden_fast_counted(
    profile: &PreferenceProfile,
) -> Result<(ForbiddenWitness, usize)> {
    if recognize_ssw(profile).is_some() {
        return Err(Error::ContractViolation(
            "profile is single-switch; no forbidden subprofile exists".into(),
        ));
    }
    let mut calls = 1;
    let mut rows: Vec<usize> = (0..profile.n()).collect();
    let mut cols: Vec<usize> = (0..profile.t()).collect();

    // A forbidden subprofile spans at most 4 rows, so among any 5 disjoint
    // row groups at least one avoids it entirely and can be removed.
    let (new_rows, c) = eliminate_groups(rows, 5, |cand| !is_ssw_sub(profile, cand, &cols));
    rows = new_rows;
    calls += c;
    let (new_cols, c) = eliminate_groups(cols, 5, |cand| !is_ssw_sub(profile, &rows, cand));
    cols = new_cols;
    calls += c;

    // Column removals can re-expose removable rows; alternate single-deletion
    // passes until neither dimension shrinks.
    loop {
        let before = (rows.len(), cols.len());
        let (new_rows, c) = eliminate_groups(rows, usize::MAX, |cand| {
            !is_ssw_sub(profile, cand, &cols)
        });
        rows = new_rows;
        calls += c;
        let (new_cols, c) = eliminate_groups(cols, usize::MAX, |cand| {
            !is_ssw_sub(profile, &rows, cand)
        });
        cols = new_cols;
        calls += c;
        if (rows.len(), cols.len()) == before {
            break;
        }
    }

    let sub = profile.submatrix(&rows, &cols)?;
    let catalogue_id = catalogue_lookup(&sub).ok_or_else(|| {
        Error::ContractViolation(format!(
            "minimal non-single-switch submatrix ({}x{}) missing from catalogue",
            rows.len(),
            cols.len()
        ))
    })?;
    Ok((ForbiddenWitness { rows, cols, catalogue_id }, calls))
}

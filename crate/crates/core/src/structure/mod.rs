//! Single-switch machinery: SSWNF/SSW recognition, presentation orbits, and
//! forbidden-subprofile search.

mod catalogue;
mod forbidden;

pub use catalogue::{catalogue_lookup, catalogue_members, ForbiddenWitness};
pub use forbidden::{find_forbidden_fast, find_forbidden_fast_counted, find_forbidden_naive};

use crate::error::{Error, Result};
use crate::model::{Opinion, PackedColumns, PreferenceProfile};

/// A column permutation plus flip mask witnessing single-switch structure.
/// Presented column j is source column `column_order[j]`, negated when
/// `flips[column_order[j]]` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presentation {
    pub column_order: Vec<usize>,
    pub flips: Vec<bool>,
}

impl Presentation {
    pub fn identity(t: usize) -> Self {
        Presentation { column_order: (0..t).collect(), flips: vec![false; t] }
    }

    pub fn t(&self) -> usize {
        self.column_order.len()
    }

    /// The presented matrix: flip the masked columns, then permute.
    pub fn apply(&self, profile: &PreferenceProfile) -> Result<PreferenceProfile> {
        let (n, t) = (profile.n(), profile.t());
        if self.column_order.len() != t || self.flips.len() != t {
            return Err(Error::DimensionMismatch { expected: t, got: self.column_order.len() });
        }
        let mut entries = Vec::with_capacity(n * t);
        for i in 0..n {
            for &src in &self.column_order {
                let o = profile.get(i, src);
                entries.push(if self.flips[src] { o.flip() } else { o });
            }
        }
        PreferenceProfile::new(n, t, entries)
    }

    /// Does applying this presentation produce prefix/suffix rows?
    pub fn is_valid_for(&self, profile: &PreferenceProfile) -> bool {
        let t = profile.t();
        if self.column_order.len() != t || self.flips.len() != t {
            return false;
        }
        let mut seen = vec![false; t];
        for &j in &self.column_order {
            if j >= t || seen[j] {
                return false;
            }
            seen[j] = true;
        }
        match self.apply(profile) {
            Ok(presented) => is_prefix_suffix(&presented),
            Err(_) => false,
        }
    }

    pub fn reversed(&self) -> Presentation {
        let mut order = self.column_order.clone();
        order.reverse();
        Presentation { column_order: order, flips: self.flips.clone() }
    }
}

/// True when on every row the +1 entries form a prefix or a suffix, i.e. each
/// row has at most one adjacent sign change.
pub fn is_prefix_suffix(profile: &PreferenceProfile) -> bool {
    profile.rows().all(|row| {
        row.windows(2).filter(|w| w[0] != w[1]).count() <= 1
    })
}

/// SSWNF recognition in O(nt): pick x maximizing d_H(c_1, c_x), counting-sort
/// all columns by distance from c_x (stable, by original index), and verify
/// the prefix/suffix condition row by row.
pub fn recognize_sswnf(profile: &PreferenceProfile) -> Option<Presentation> {
    let packed = profile.packed_columns();
    let order = sswnf_order(&packed)?;
    let pres = Presentation { column_order: order, flips: vec![false; profile.t()] };
    debug_assert!(pres.is_valid_for(profile));
    Some(pres)
}

fn sswnf_order(packed: &PackedColumns) -> Option<Vec<usize>> {
    let (n, t) = (packed.n(), packed.t());
    let mut x = 0;
    let mut best = 0;
    for j in 0..t {
        let d = packed.col_distance(0, j);
        if d > best {
            best = d;
            x = j;
        }
    }
    // Counting sort by distance from c_x, stable in original column index.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for j in 0..t {
        buckets[packed.col_distance(x, j)].push(j);
    }
    let order: Vec<usize> = buckets.into_iter().flatten().collect();
    // Row verification: at most one adjacent sign change per row.
    for i in 0..n {
        let mut changes = 0;
        for w in order.windows(2) {
            if packed.bit(i, w[0]) != packed.bit(i, w[1]) {
                changes += 1;
                if changes > 1 {
                    return None;
                }
            }
        }
    }
    Some(order)
}

/// SSW recognition: flip every column whose first entry is +1, then run the
/// no-flips recognizer and keep the flip mask.
pub fn recognize_ssw(profile: &PreferenceProfile) -> Option<Presentation> {
    let t = profile.t();
    let flips: Vec<bool> = (0..t).map(|j| profile.get(0, j) == Opinion::Plus).collect();
    let mut packed = profile.packed_columns();
    for (j, &f) in flips.iter().enumerate() {
        if f {
            packed.flip_column(j);
        }
    }
    let order = sswnf_order(&packed)?;
    let pres = Presentation { column_order: order, flips };
    debug_assert!(pres.is_valid_for(profile));
    Some(pres)
}

/// The 2t rotations of one presentation under the rotate-and-negate step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub presentations: Vec<Presentation>,
    /// Index of the unique member whose presented matrix has an all-(-1)
    /// first row.
    pub representative: usize,
}

/// Enumerates the orbit of a presentation: repeatedly move the first
/// presented column to the back, negated.
pub fn enumerate_orbit(presentation: &Presentation, profile: &PreferenceProfile) -> Result<Orbit> {
    if !presentation.is_valid_for(profile) {
        return Err(Error::ContractViolation(
            "presentation is not valid for the profile".into(),
        ));
    }
    let t = profile.t();
    let mut presentations = Vec::with_capacity(2 * t);
    for k in 0..2 * t {
        let mut order = vec![0usize; t];
        let mut flips = presentation.flips.clone();
        for j in 0..t {
            let m = k + j;
            let src = presentation.column_order[m % t];
            order[j] = src;
            if (m / t) % 2 == 1 {
                flips[src] = !flips[src];
            }
        }
        let pres = Presentation { column_order: order, flips };
        debug_assert!(pres.is_valid_for(profile));
        presentations.push(pres);
    }
    // The members present pairwise-distinct matrices, and exactly one of them
    // starts with an all-(-1) row.
    let mut matrices = std::collections::HashSet::with_capacity(2 * t);
    let mut representative = None;
    for (idx, pres) in presentations.iter().enumerate() {
        let m = pres.apply(profile)?;
        if m.row(0).iter().all(|&o| o == Opinion::Minus) {
            if representative.is_some() {
                return Err(Error::ContractViolation(
                    "orbit has two all-(-1)-first-row members".into(),
                ));
            }
            representative = Some(idx);
        }
        if !matrices.insert(m) {
            return Err(Error::ContractViolation("orbit members not distinct".into()));
        }
    }
    let representative = representative.ok_or_else(|| {
        Error::ContractViolation("orbit has no all-(-1)-first-row member".into())
    })?;
    Ok(Orbit { presentations, representative })
}

/// Every SSW presentation of a single-switch profile: the deduplicated union
/// of the found presentation's orbit and its column-reversal's orbit, sorted.
/// Presentations count as equal when they present the same matrix (the paper
/// phrases orbits as sets of presented profiles); each distinct matrix is
/// represented by its lexicographically least (order, flips) pair.
pub fn all_presentations(profile: &PreferenceProfile) -> Result<Option<Vec<Presentation>>> {
    let Some(found) = recognize_ssw(profile) else {
        return Ok(None);
    };
    let mut by_matrix: std::collections::HashMap<PreferenceProfile, Presentation> =
        std::collections::HashMap::new();
    let reversed = found.reversed();
    debug_assert!(reversed.is_valid_for(profile));
    for start in [&found, &reversed] {
        for pres in enumerate_orbit(start, profile)?.presentations {
            let matrix = pres.apply(profile)?;
            match by_matrix.entry(matrix) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(pres);
                }
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    if pres < *e.get() {
                        e.insert(pres);
                    }
                }
            }
        }
    }
    let mut out: Vec<Presentation> = by_matrix.into_values().collect();
    out.sort();
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn profile(rows: &[Vec<i8>]) -> PreferenceProfile {
        PreferenceProfile::from_rows(rows).unwrap()
    }

    fn fig1_profile() -> PreferenceProfile {
        profile(&[
            vec![1, 1, 1, -1, 1, -1],
            vec![1, -1, 1, 1, -1, 1],
            vec![1, 1, -1, -1, 1, -1],
        ])
    }

    /// Fig. 1b: column order 2,1,3,4,5,6 with column 5 flipped (1-based).
    fn fig1b_presentation() -> Presentation {
        Presentation {
            column_order: vec![1, 0, 2, 3, 4, 5],
            flips: vec![false, false, false, false, true, false],
        }
    }

    /// All distinct presented matrices over every (permutation, flip) pair.
    fn brute_force_presented(p: &PreferenceProfile) -> std::collections::HashSet<PreferenceProfile> {
        let t = p.t();
        let mut out = std::collections::HashSet::new();
        for order in (0..t).permutations(t) {
            for fmask in 0u32..(1 << t) {
                let flips: Vec<bool> = (0..t).map(|j| fmask >> j & 1 == 1).collect();
                let pres = Presentation { column_order: order.clone(), flips };
                let m = pres.apply(p).unwrap();
                if is_prefix_suffix(&m) {
                    out.insert(m);
                }
            }
        }
        out
    }

    #[test]
    fn sswnf_restores_scrambled_prefix_rows() {
        // Rows (+1,-1,-1) and (+1,+1,-1) with columns scrambled to 3,1,2.
        let scrambled = profile(&[vec![-1, 1, -1], vec![-1, 1, 1]]);
        let pres = recognize_sswnf(&scrambled).expect("yes-instance");
        assert!(pres.flips.iter().all(|&f| !f));
        assert!(is_prefix_suffix(&pres.apply(&scrambled).unwrap()));
    }

    #[test]
    fn sswnf_rejects_p2() {
        let p2 = profile(&[vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]]);
        assert!(recognize_sswnf(&p2).is_none());
    }

    #[test]
    fn ssw_accepts_fig1() {
        let p = fig1_profile();
        let pres = recognize_ssw(&p).expect("Fig. 1 is single-switch");
        assert!(pres.is_valid_for(&p));
        assert!(fig1b_presentation().is_valid_for(&p));
    }

    #[test]
    fn ssw_rejects_p1a() {
        let p1a = profile(&[
            vec![-1, -1, -1, -1],
            vec![1, 1, -1, -1],
            vec![1, -1, 1, -1],
        ]);
        assert!(recognize_ssw(&p1a).is_none());
    }

    #[test]
    fn single_row_profiles_always_pass() {
        let p = profile(&[vec![1, -1, 1, -1, 1]]);
        assert!(recognize_ssw(&p).is_some());
    }

    #[test]
    fn orbit_of_single_row_two_columns() {
        let p = profile(&[vec![1, -1]]);
        let pres = Presentation::identity(2);
        let orbit = enumerate_orbit(&pres, &p).unwrap();
        let presented: Vec<Vec<i8>> = orbit
            .presentations
            .iter()
            .map(|pr| pr.apply(&p).unwrap().row(0).iter().map(|o| o.to_i8()).collect())
            .collect();
        assert_eq!(
            presented,
            vec![vec![1, -1], vec![-1, -1], vec![-1, 1], vec![1, 1]]
        );
        assert_eq!(orbit.representative, 1);
    }

    #[test]
    fn fig1_orbit_has_twelve_members() {
        let p = fig1_profile();
        let orbit = enumerate_orbit(&fig1b_presentation(), &p).unwrap();
        assert_eq!(orbit.presentations.len(), 12);
        let rep = &orbit.presentations[orbit.representative];
        let first_row = rep.apply(&p).unwrap().row(0).to_vec();
        assert!(first_row.iter().all(|&o| o == Opinion::Minus));
    }

    #[test]
    fn found_presentation_lies_in_fig1b_orbit_union() {
        let p = fig1_profile();
        let found = recognize_ssw(&p).unwrap().apply(&p).unwrap();
        let b = fig1b_presentation();
        let mut union: Vec<PreferenceProfile> = enumerate_orbit(&b, &p)
            .unwrap()
            .presentations
            .iter()
            .map(|pr| pr.apply(&p).unwrap())
            .collect();
        union.extend(
            enumerate_orbit(&b.reversed(), &p)
                .unwrap()
                .presentations
                .iter()
                .map(|pr| pr.apply(&p).unwrap()),
        );
        assert!(union.contains(&found));
    }

    #[test]
    fn all_presentations_matches_brute_force_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        for _ in 0..400 {
            let n = rng.gen_range(1..=3);
            let t = rng.gen_range(1..=3);
            let rows: Vec<Vec<i8>> = (0..n)
                .map(|_| (0..t).map(|_| if rng.gen() { 1 } else { -1 }).collect())
                .collect();
            let p = profile(&rows);
            let brute = brute_force_presented(&p);
            match all_presentations(&p).unwrap() {
                Some(set) => {
                    let matrices: std::collections::HashSet<PreferenceProfile> =
                        set.iter().map(|pr| pr.apply(&p).unwrap()).collect();
                    assert_eq!(matrices.len(), set.len(), "duplicate matrices in set");
                    assert_eq!(matrices, brute);
                    checked += 1;
                }
                None => assert!(brute.is_empty()),
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn one_by_one_profile_has_two_presentations() {
        let p = profile(&[vec![1]]);
        let set = all_presentations(&p).unwrap().unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn orbit_rotation_closes_after_2t() {
        let p = fig1_profile();
        let pres = recognize_ssw(&p).unwrap();
        let orbit = enumerate_orbit(&pres, &p).unwrap();
        // Rotating the last member once more returns the start.
        let again = enumerate_orbit(&orbit.presentations[0], &p).unwrap();
        assert_eq!(again.presentations[0], orbit.presentations[0]);
        assert_eq!(orbit.presentations.len(), 2 * p.t());
    }
}

//! The forbidden-subprofile catalogue: the two base matrices P1a (3x4) and
//! P2a (4x3) closed under negating any set of rows and columns, matched up to
//! row and column permutation via a canonical form.

use std::collections::HashMap;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::model::{Opinion, PreferenceProfile};

pub const P1A_ROWS: [[i8; 4]; 3] = [
    [-1, -1, -1, -1],
    [1, 1, -1, -1],
    [1, -1, 1, -1],
];

pub const P2A_ROWS: [[i8; 3]; 4] = [
    [-1, -1, -1],
    [1, -1, -1],
    [-1, 1, -1],
    [-1, -1, 1],
];

/// A located forbidden subprofile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub catalogue_id: String,
}

/// Canonical form under independent row and column permutations: minimum,
/// over all column orders, of the sorted list of row bit-strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonKey {
    r: usize,
    c: usize,
    rows: Vec<u8>,
}

pub(crate) fn canonicalize(profile: &PreferenceProfile) -> CanonKey {
    let (r, c) = (profile.n(), profile.t());
    debug_assert!(r <= 8 && c <= 8);
    let mut best: Option<Vec<u8>> = None;
    for perm in (0..c).permutations(c) {
        let mut rows: Vec<u8> = (0..r)
            .map(|i| {
                let mut bits = 0u8;
                for (pos, &j) in perm.iter().enumerate() {
                    if profile.get(i, j) == Opinion::Plus {
                        bits |= 1 << (c - 1 - pos);
                    }
                }
                bits
            })
            .collect();
        rows.sort_unstable();
        if best.as_ref().map_or(true, |b| rows < *b) {
            best = Some(rows);
        }
    }
    CanonKey { r, c, rows: best.expect("c >= 1") }
}

fn base_profile(rows: &[&[i8]]) -> PreferenceProfile {
    PreferenceProfile::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn flipped_variant(base: &PreferenceProfile, rmask: u32, cmask: u32) -> PreferenceProfile {
    let (r, c) = (base.n(), base.t());
    let mut entries = Vec::with_capacity(r * c);
    for i in 0..r {
        for j in 0..c {
            let mut o = base.get(i, j);
            if rmask >> i & 1 == 1 {
                o = o.flip();
            }
            if cmask >> j & 1 == 1 {
                o = o.flip();
            }
            entries.push(o);
        }
    }
    PreferenceProfile::new(r, c, entries).unwrap()
}

struct Catalogue {
    by_canon: HashMap<CanonKey, String>,
    members: Vec<(String, PreferenceProfile)>,
}

fn build() -> Catalogue {
    let bases: [(&str, PreferenceProfile); 2] = [
        (
            "P1a",
            base_profile(&[&P1A_ROWS[0], &P1A_ROWS[1], &P1A_ROWS[2]]),
        ),
        (
            "P2a",
            base_profile(&[&P2A_ROWS[0], &P2A_ROWS[1], &P2A_ROWS[2], &P2A_ROWS[3]]),
        ),
    ];
    let mut by_canon = HashMap::new();
    let mut members = Vec::new();
    for (name, base) in &bases {
        let (r, c) = (base.n(), base.t());
        for rmask in 0u32..(1 << r) {
            for cmask in 0u32..(1 << c) {
                let variant = flipped_variant(base, rmask, cmask);
                let key = canonicalize(&variant);
                if !by_canon.contains_key(&key) {
                    let id = format!("{name}[r={rmask:0r$b},c={cmask:0c$b}]");
                    by_canon.insert(key, id.clone());
                    members.push((id, variant));
                }
            }
        }
    }
    Catalogue { by_canon, members }
}

fn catalogue() -> &'static Catalogue {
    static CAT: OnceLock<Catalogue> = OnceLock::new();
    CAT.get_or_init(build)
}

/// All distinct catalogue members (one representative per canonical class).
pub fn catalogue_members() -> Vec<(String, PreferenceProfile)> {
    catalogue().members.clone()
}

/// Matches a candidate submatrix against the catalogue.
pub fn catalogue_lookup(candidate: &PreferenceProfile) -> Option<String> {
    let (r, c) = (candidate.n(), candidate.t());
    if !((r == 3 && c == 4) || (r == 4 && c == 3)) {
        return None;
    }
    catalogue().by_canon.get(&canonicalize(candidate)).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::recognize_ssw;

    #[test]
    fn contains_bases_verbatim() {
        let members = catalogue_members();
        let p1a = base_profile(&[&P1A_ROWS[0], &P1A_ROWS[1], &P1A_ROWS[2]]);
        let p2a = base_profile(&[&P2A_ROWS[0], &P2A_ROWS[1], &P2A_ROWS[2], &P2A_ROWS[3]]);
        assert!(members.iter().any(|(_, m)| *m == p1a));
        assert!(members.iter().any(|(_, m)| *m == p2a));
        assert!(catalogue_lookup(&p1a).is_some());
        assert!(catalogue_lookup(&p2a).is_some());
    }

    #[test]
    fn members_are_3x4_or_4x3_and_not_ssw() {
        for (id, m) in catalogue_members() {
            let shape = (m.n(), m.t());
            assert!(shape == (3, 4) || shape == (4, 3), "{id} has shape {shape:?}");
            assert!(recognize_ssw(&m).is_none(), "{id} is single-switch");
        }
    }

    #[test]
    fn matching_is_permutation_invariant() {
        use itertools::Itertools;
        let p1a = base_profile(&[&P1A_ROWS[0], &P1A_ROWS[1], &P1A_ROWS[2]]);
        for rperm in (0..3).permutations(3) {
            for cperm in (0..4).permutations(4) {
                let perm = p1a
                    .submatrix(&rperm, &cperm)
                    .unwrap();
                assert!(catalogue_lookup(&perm).is_some());
            }
        }
    }

    #[test]
    fn non_members_do_not_match() {
        // An all-plus 3x4 matrix is single-switch, hence not in the catalogue.
        let allplus = PreferenceProfile::from_rows(&[
            vec![1, 1, 1, 1],
            vec![1, 1, 1, 1],
            vec![1, 1, 1, 1],
        ])
        .unwrap();
        assert!(catalogue_lookup(&allplus).is_none());
    }
}

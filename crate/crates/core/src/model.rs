use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rat, rat_half, rat_one, rat_zero, Rational};

/// A single binary opinion, one of +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Opinion {
    /// +1
    Plus,
    /// -1
    Minus,
}

impl Opinion {
    pub fn flip(self) -> Self {
        match self {
            Opinion::Plus => Opinion::Minus,
            Opinion::Minus => Opinion::Plus,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Opinion::Plus => 1,
            Opinion::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Opinion::Plus),
            -1 => Ok(Opinion::Minus),
            _ => Err(Error::Parse(format!("opinion must be +1 or -1, got {v}"))),
        }
    }
}

impl std::ops::Neg for Opinion {
    type Output = Opinion;
    fn neg(self) -> Opinion {
        self.flip()
    }
}

impl fmt::Display for Opinion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Opinion::Plus => write!(f, "+1"),
            Opinion::Minus => write!(f, "-1"),
        }
    }
}

/// A proposed decision on every issue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Proposal(pub Vec<Opinion>);

impl Proposal {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_ones(t: usize) -> Self {
        Proposal(vec![Opinion::Plus; t])
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        Ok(Proposal(
            signs
                .iter()
                .map(|&s| Opinion::from_i8(s))
                .collect::<Result<_>>()?,
        ))
    }

    /// Flips every entry.
    pub fn complement(&self) -> Proposal {
        Proposal(self.0.iter().map(|o| o.flip()).collect())
    }

    /// Bitmask encoding: topic j maps to bit (t-1-j), set iff the opinion is -1.
    /// Ascending mask values enumerate proposals in lexicographic order with
    /// +1 before -1 and topic 0 most significant.
    pub fn to_mask(&self) -> u32 {
        let t = self.0.len();
        let mut mask = 0u32;
        for (j, &o) in self.0.iter().enumerate() {
            if o == Opinion::Minus {
                mask |= 1 << (t - 1 - j);
            }
        }
        mask
    }

    pub fn from_mask(mask: u32, t: usize) -> Proposal {
        Proposal(
            (0..t)
                .map(|j| {
                    if mask >> (t - 1 - j) & 1 == 1 {
                        Opinion::Minus
                    } else {
                        Opinion::Plus
                    }
                })
                .collect(),
        )
    }
}

impl fmt::Display for Proposal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, o) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, ")")
    }
}

/// The n-by-t matrix of voter opinions; rows are voters, columns are issues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreferenceProfile {
    n: usize,
    t: usize,
    entries: Vec<Opinion>,
}

impl PreferenceProfile {
    pub fn new(n: usize, t: usize, entries: Vec<Opinion>) -> Result<Self> {
        if n == 0 || t == 0 {
            return Err(Error::InvalidInstance(
                "profile dimensions must be positive".into(),
            ));
        }
        if entries.len() != n * t {
            return Err(Error::DimensionMismatch {
                expected: n * t,
                got: entries.len(),
            });
        }
        Ok(PreferenceProfile { n, t, entries })
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInstance("profile has no rows".into()));
        }
        let t = rows[0].len();
        let mut entries = Vec::with_capacity(n * t);
        for row in rows {
            if row.len() != t {
                return Err(Error::DimensionMismatch {
                    expected: t,
                    got: row.len(),
                });
            }
            for &v in row {
                entries.push(Opinion::from_i8(v)?);
            }
        }
        PreferenceProfile::new(n, t, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn get(&self, i: usize, j: usize) -> Opinion {
        self.entries[i * self.t + j]
    }

    pub fn row(&self, i: usize) -> &[Opinion] {
        &self.entries[i * self.t..(i + 1) * self.t]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Opinion]> {
        (0..self.n).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Opinion> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Opinion>> {
        (0..self.t).map(|j| self.column(j)).collect()
    }

    /// The submatrix induced by the given row and column indices, in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PreferenceProfile> {
        for &i in rows {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i, size: self.n });
            }
        }
        for &j in cols {
            if j >= self.t {
                return Err(Error::IndexOutOfRange { index: j, size: self.t });
            }
        }
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j));
            }
        }
        PreferenceProfile::new(rows.len(), cols.len(), entries)
    }

    /// Returns a copy with the selected columns negated.
    pub fn with_flipped_columns(&self, flips: &[bool]) -> Result<PreferenceProfile> {
        if flips.len() != self.t {
            return Err(Error::DimensionMismatch {
                expected: self.t,
                got: flips.len(),
            });
        }
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(idx, &o)| if flips[idx % self.t] { o.flip() } else { o })
            .collect();
        PreferenceProfile::new(self.n, self.t, entries)
    }

    /// Bit-packed column views; bit i of column j is set iff v_{i,j} = +1.
    pub fn packed_columns(&self) -> PackedColumns {
        PackedColumns::from_profile(self)
    }
}

/// Column-major bit-packed view of a profile, for popcount-based distances.
#[derive(Debug, Clone)]
pub struct PackedColumns {
    n: usize,
    cols: Vec<Vec<u64>>,
}

impl PackedColumns {
    pub fn from_profile(p: &PreferenceProfile) -> Self {
        let words = p.n().div_ceil(64);
        let mut cols = vec![vec![0u64; words]; p.t()];
        for i in 0..p.n() {
            for (j, col) in cols.iter_mut().enumerate() {
                if p.get(i, j) == Opinion::Plus {
                    col[i / 64] |= 1 << (i % 64);
                }
            }
        }
        PackedColumns { n: p.n(), cols }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.cols.len()
    }

    /// Unweighted Hamming distance between two columns.
    pub fn col_distance(&self, a: usize, b: usize) -> usize {
        self.cols[a]
            .iter()
            .zip(&self.cols[b])
            .map(|(x, y)| (x ^ y).count_ones() as usize)
            .sum()
    }

    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.cols[j][i / 64] >> (i % 64) & 1 == 1
    }

    /// Negates column j in place.
    pub fn flip_column(&mut self, j: usize) {
        let full = self.n / 64;
        for w in 0..full {
            self.cols[j][w] = !self.cols[j][w];
        }
        if self.n % 64 != 0 {
            self.cols[j][full] ^= (1u64 << (self.n % 64)) - 1;
        }
    }
}

/// How issue importance is assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightScheme {
    Unweighted,
    /// One shared unit-sum vector over topics.
    External(Vec<Rational>),
    /// One unit-sum row per voter.
    Internal(Vec<Vec<Rational>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    Unweighted,
    External,
    Internal,
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightMode::Unweighted => write!(f, "unweighted"),
            WeightMode::External => write!(f, "external"),
            WeightMode::Internal => write!(f, "internal"),
        }
    }
}

impl WeightScheme {
    pub fn mode(&self) -> WeightMode {
        match self {
            WeightScheme::Unweighted => WeightMode::Unweighted,
            WeightScheme::External(_) => WeightMode::External,
            WeightScheme::Internal(_) => WeightMode::Internal,
        }
    }
}

fn check_unit_row(row: &[Rational], what: &str) -> Result<()> {
    let mut sum = rat_zero();
    for w in row {
        if *w < rat_zero() {
            return Err(Error::InvalidInstance(format!("{what} has a negative weight")));
        }
        sum += w;
    }
    if sum != rat_one() {
        return Err(Error::InvalidInstance(format!(
            "{what} sums to {} instead of 1",
            crate::rational::format_rational(&sum)
        )));
    }
    Ok(())
}

/// A profile together with its weight scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VotingInstance {
    pub profile: PreferenceProfile,
    pub weights: WeightScheme,
}

impl VotingInstance {
    pub fn new(profile: PreferenceProfile, weights: WeightScheme) -> Result<Self> {
        let inst = VotingInstance { profile, weights };
        inst.validate()?;
        Ok(inst)
    }

    pub fn unweighted(profile: PreferenceProfile) -> Self {
        VotingInstance {
            profile,
            weights: WeightScheme::Unweighted,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (n, t) = (self.profile.n(), self.profile.t());
        match &self.weights {
            WeightScheme::Unweighted => {}
            WeightScheme::External(w) => {
                if w.len() != t {
                    return Err(Error::DimensionMismatch { expected: t, got: w.len() });
                }
                check_unit_row(w, "external weight vector")?;
            }
            WeightScheme::Internal(rows) => {
                if rows.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: rows.len() });
                }
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != t {
                        return Err(Error::DimensionMismatch { expected: t, got: row.len() });
                    }
                    check_unit_row(row, &format!("weight row {}", i + 1))?;
                }
                for j in 0..t {
                    if rows.iter().all(|r| r[j].is_zero()) {
                        return Err(Error::InvalidInstance(format!(
                            "topic {} carries zero weight for every voter",
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    pub fn t(&self) -> usize {
        self.profile.t()
    }

    pub fn mode(&self) -> WeightMode {
        self.weights.mode()
    }

    /// The weight row that voter i compares with.
    pub fn voter_weights(&self, i: usize) -> Vec<Rational> {
        let t = self.t();
        match &self.weights {
            WeightScheme::Unweighted => vec![rat(1, t as i64); t],
            WeightScheme::External(w) => w.clone(),
            WeightScheme::Internal(rows) => rows[i].clone(),
        }
    }
}

/// Unit-sum per-topic averages of the weight rows, with the maximum exposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AverageWeights {
    pub weights: Vec<Rational>,
    pub max: Rational,
}

fn opinions_differ(a: Opinion, b: Opinion) -> bool {
    a != b
}

/// d_H(u, v, w): total weight of coordinates where u and v disagree.
pub fn weighted_hamming(u: &[Opinion], v: &[Opinion], w: &[Rational]) -> Result<Rational> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), got: v.len() });
    }
    if u.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), got: w.len() });
    }
    let mut d = rat_zero();
    for j in 0..u.len() {
        if opinions_differ(u[j], v[j]) {
            d += &w[j];
        }
    }
    Ok(d)
}

/// <u, v>_w = sum of w_j u_j v_j = 1 - 2 d_H(u, v, w) for unit-sum w.
pub fn weighted_inner(u: &[Opinion], v: &[Opinion], w: &[Rational]) -> Result<Rational> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), got: v.len() });
    }
    if u.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), got: w.len() });
    }
    let mut s = rat_zero();
    for j in 0..u.len() {
        if opinions_differ(u[j], v[j]) {
            s -= &w[j];
        } else {
            s += &w[j];
        }
    }
    Ok(s)
}

/// b_j: the sum of the entries of column j.
pub fn column_balance(profile: &PreferenceProfile, j: usize) -> Result<i64> {
    if j >= profile.t() {
        return Err(Error::IndexOutOfRange { index: j, size: profile.t() });
    }
    Ok((0..profile.n())
        .map(|i| profile.get(i, j).to_i8() as i64)
        .sum())
}

/// m_j: the (weight) fraction behind +1 on topic j.
pub fn topic_majority(instance: &VotingInstance, j: usize) -> Result<Rational> {
    let (n, t) = (instance.n(), instance.t());
    if j >= t {
        return Err(Error::IndexOutOfRange { index: j, size: t });
    }
    match &instance.weights {
        WeightScheme::Unweighted | WeightScheme::External(_) => {
            let plus = (0..n)
                .filter(|&i| instance.profile.get(i, j) == Opinion::Plus)
                .count();
            Ok(rat(plus as i64, n as i64))
        }
        WeightScheme::Internal(rows) => {
            let mut total = rat_zero();
            let mut plus = rat_zero();
            for (i, row) in rows.iter().enumerate() {
                total += &row[j];
                if instance.profile.get(i, j) == Opinion::Plus {
                    plus += &row[j];
                }
            }
            if total.is_zero() {
                return Err(Error::InvalidInstance(format!(
                    "topic {} carries zero average weight",
                    j + 1
                )));
            }
            Ok(plus / total)
        }
    }
}

/// w-tilde: per-topic mean of the weight rows (w itself externally, uniform
/// when unweighted), together with its maximum entry.
pub fn average_weight_vector(instance: &VotingInstance) -> AverageWeights {
    let t = instance.t();
    let weights: Vec<Rational> = match &instance.weights {
        WeightScheme::Unweighted => vec![rat(1, t as i64); t],
        WeightScheme::External(w) => w.clone(),
        WeightScheme::Internal(rows) => {
            let n = rat(instance.n() as i64, 1);
            (0..t)
                .map(|j| rows.iter().map(|r| &r[j]).sum::<Rational>() / &n)
                .collect()
        }
    };
    let max = weights.iter().cloned().max().expect("t >= 1");
    AverageWeights { weights, max }
}

/// Convenience: is m_j at least / at most one half.
pub fn majority_opinions(m_j: &Rational) -> (bool, bool) {
    let half = rat_half();
    (*m_j >= half, *m_j <= half)
}

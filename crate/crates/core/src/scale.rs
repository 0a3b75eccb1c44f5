//! Integer-scaled weight rows for enumeration-heavy scans. Every value is an
//! exact rescaling of the rational inputs, so comparisons agree bit-for-bit
//! with the rational definitions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::{VotingInstance, WeightScheme};
use crate::rational::Rational;

/// Largest admissible common-denominator scale.
pub const SCALE_BOUND: i64 = 1 << 40;

/// One weight row rescaled to integers. `wbits[k]` is the weight of the topic
/// encoded at mask bit k (topic t-1-k), and `total` is the scaled unit sum.
#[derive(Debug, Clone)]
pub struct ScaledRow {
    pub wbits: Vec<i64>,
    pub total: i64,
}

impl ScaledRow {
    /// Scales a non-negative rational row by the LCM of its denominators.
    /// Entries keep their topic order here; `into_bit_order` flips them.
    pub fn from_rationals(row: &[Rational]) -> Result<ScaledRow> {
        let mut scale = BigInt::one();
        for w in row {
            scale = scale.lcm(w.denom());
        }
        let bound = BigInt::from(SCALE_BOUND);
        if scale > bound {
            return Err(Error::PrecisionOverflow(format!(
                "common denominator {scale} exceeds bound {SCALE_BOUND}"
            )));
        }
        let mut wbits = Vec::with_capacity(row.len());
        let mut total = BigInt::zero();
        for w in row {
            let scaled = w.numer() * (&scale / w.denom());
            if scaled.abs() > bound {
                return Err(Error::PrecisionOverflow(format!(
                    "scaled weight {scaled} exceeds bound {SCALE_BOUND}"
                )));
            }
            total += &scaled;
            wbits.push(scaled.to_i64().expect("bounded"));
        }
        wbits.reverse();
        Ok(ScaledRow {
            wbits,
            total: total
                .to_i64()
                .ok_or_else(|| Error::PrecisionOverflow("scaled total".into()))?,
        })
    }

    /// Total weight of the coordinates selected by `mask`.
    #[inline]
    pub fn mask_weight(&self, mut mask: u32) -> i64 {
        let mut s = 0i64;
        while mask != 0 {
            let k = mask.trailing_zeros() as usize;
            s += self.wbits[k];
            mask &= mask - 1;
        }
        s
    }
}

enum Rows {
    Shared(ScaledRow),
    PerVoter(Vec<ScaledRow>),
}

/// Precomputed scan state: per-voter opinion masks plus scaled weight rows.
pub struct ScaledView {
    pub n: usize,
    pub t: usize,
    vote_masks: Vec<u32>,
    rows: Rows,
}

impl ScaledView {
    pub fn new(instance: &VotingInstance) -> Result<ScaledView> {
        let (n, t) = (instance.n(), instance.t());
        if t > 32 {
            return Err(Error::SizeCapExceeded {
                what: "scaled scan topics",
                requested: t as u64,
                cap: 32,
            });
        }
        let vote_masks = (0..n)
            .map(|i| {
                crate::model::Proposal(instance.profile.row(i).to_vec()).to_mask()
            })
            .collect();
        let rows = match &instance.weights {
            WeightScheme::Unweighted => Rows::Shared(ScaledRow {
                wbits: vec![1; t],
                total: t as i64,
            }),
            WeightScheme::External(w) => Rows::Shared(ScaledRow::from_rationals(w)?),
            WeightScheme::Internal(rows) => Rows::PerVoter(
                rows.iter()
                    .map(|r| ScaledRow::from_rationals(r))
                    .collect::<Result<_>>()?,
            ),
        };
        Ok(ScaledView { n, t, vote_masks, rows })
    }

    #[inline]
    fn row(&self, i: usize) -> &ScaledRow {
        match &self.rows {
            Rows::Shared(r) => r,
            Rows::PerVoter(rs) => &rs[i],
        }
    }

    /// Scaled disagreement weight between voter i and proposal mask p.
    #[inline]
    pub fn disagreement(&self, i: usize, pmask: u32) -> i64 {
        self.row(i).mask_weight(self.vote_masks[i] ^ pmask)
    }

    /// sgn(d_H(v_i, q) - d_H(v_i, p)): +1 when voter i strictly prefers p.
    #[inline]
    pub fn voter_sign(&self, i: usize, pmask: u32, qmask: u32) -> i8 {
        let row = self.row(i);
        let dp = row.mask_weight(self.vote_masks[i] ^ pmask);
        let dq = row.mask_weight(self.vote_masks[i] ^ qmask);
        (dq - dp).signum() as i8
    }

    /// sgn of the collective comparison of p against q.
    pub fn collective_sign(&self, pmask: u32, qmask: u32) -> i8 {
        let mut s = 0i64;
        for i in 0..self.n {
            s += self.voter_sign(i, pmask, qmask) as i64;
        }
        s.signum() as i8
    }

    /// supporters minus opposers of proposal mask p under the exact
    /// d_H-versus-1/2 trichotomy.
    pub fn support_sign(&self, pmask: u32) -> i64 {
        let mut s = 0i64;
        for i in 0..self.n {
            let row = self.row(i);
            let d2 = 2 * row.mask_weight(self.vote_masks[i] ^ pmask);
            s += (row.total - d2).signum();
        }
        s
    }

    /// Scaled inner product <v_i, p>_w (value total - 2 * disagreement).
    #[inline]
    pub fn inner(&self, i: usize, pmask: u32) -> i64 {
        let row = self.row(i);
        row.total - 2 * row.mask_weight(self.vote_masks[i] ^ pmask)
    }

    /// The shared row total (external / unweighted modes only).
    pub fn shared_total(&self) -> Option<i64> {
        match &self.rows {
            Rows::Shared(r) => Some(r.total),
            Rows::PerVoter(_) => None,
        }
    }
}

/// Inner product of two proposal masks under a scaled row.
#[inline]
pub fn mask_inner(row: &ScaledRow, amask: u32, bmask: u32) -> i64 {
    row.total - 2 * row.mask_weight(amask ^ bmask)
}

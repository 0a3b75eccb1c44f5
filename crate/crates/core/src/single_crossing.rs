//! Single-crossing recognition over lists of linear orders, Kendall-tau
//! machinery, the profile-to-orders reduction, and the forbidden-subinstance
//! finder.

use crate::error::{Error, Result};
use crate::model::{Opinion, PreferenceProfile};

/// One linear order: a permutation of the alternative indices 0..m.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    pub ranking: Vec<u32>,
}

impl LinearOrder {
    pub fn new(ranking: Vec<u32>) -> Result<Self> {
        let m = ranking.len();
        let mut seen = vec![false; m];
        for &a in &ranking {
            let a = a as usize;
            if a >= m || seen[a] {
                return Err(Error::InvalidInstance(
                    "ranking is not a permutation of the alternatives".into(),
                ));
            }
            seen[a] = true;
        }
        Ok(LinearOrder { ranking })
    }

    pub fn m(&self) -> usize {
        self.ranking.len()
    }

    /// positions[a] = rank of alternative a.
    pub fn positions(&self) -> Vec<u32> {
        let mut pos = vec![0u32; self.m()];
        for (rank, &a) in self.ranking.iter().enumerate() {
            pos[a as usize] = rank as u32;
        }
        pos
    }
}

/// A list of linear orders over a shared alternative set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderList {
    pub alternatives: Vec<String>,
    pub orders: Vec<LinearOrder>,
}

impl OrderList {
    pub fn new(alternatives: Vec<String>, orders: Vec<LinearOrder>) -> Result<Self> {
        if alternatives.is_empty() || orders.is_empty() {
            return Err(Error::InvalidInstance(
                "order list needs at least one alternative and one order".into(),
            ));
        }
        let m = alternatives.len();
        for o in &orders {
            if o.m() != m {
                return Err(Error::DimensionMismatch { expected: m, got: o.m() });
            }
        }
        Ok(OrderList { alternatives, orders })
    }

    pub fn from_rankings(m: usize, rankings: Vec<Vec<u32>>) -> Result<Self> {
        let alternatives = (0..m).map(|a| format!("a{a}")).collect();
        let orders = rankings
            .into_iter()
            .map(LinearOrder::new)
            .collect::<Result<_>>()?;
        OrderList::new(alternatives, orders)
    }

    pub fn m(&self) -> usize {
        self.alternatives.len()
    }

    pub fn t(&self) -> usize {
        self.orders.len()
    }

    /// The sub-list induced by the given order and alternative indices, with
    /// alternatives renumbered in selection order.
    pub fn sublist(&self, order_idx: &[usize], alt_idx: &[usize]) -> Result<OrderList> {
        let mut new_id = vec![u32::MAX; self.m()];
        for (new, &old) in alt_idx.iter().enumerate() {
            if old >= self.m() {
                return Err(Error::IndexOutOfRange { index: old, size: self.m() });
            }
            new_id[old] = new as u32;
        }
        let alternatives = alt_idx
            .iter()
            .map(|&a| self.alternatives[a].clone())
            .collect();
        let orders = order_idx
            .iter()
            .map(|&j| {
                if j >= self.t() {
                    return Err(Error::IndexOutOfRange { index: j, size: self.t() });
                }
                let ranking = self.orders[j]
                    .ranking
                    .iter()
                    .filter_map(|&a| {
                        let id = new_id[a as usize];
                        (id != u32::MAX).then_some(id)
                    })
                    .collect();
                Ok(LinearOrder { ranking })
            })
            .collect::<Result<_>>()?;
        OrderList::new(alternatives, orders)
    }
}

fn count_inversions(seq: &mut [u32], buf: &mut [u32]) -> u64 {
    let len = seq.len();
    if len <= 1 {
        return 0;
    }
    let mid = len / 2;
    let (left, right) = seq.split_at_mut(mid);
    let mut inv = count_inversions(left, buf) + count_inversions(right, buf);
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            buf[k] = left[i];
            i += 1;
        } else {
            buf[k] = right[j];
            j += 1;
            inv += (left.len() - i) as u64;
        }
        k += 1;
    }
    buf[k..k + left.len() - i].copy_from_slice(&left[i..]);
    k += left.len() - i;
    buf[k..k + right.len() - j].copy_from_slice(&right[j..]);
    seq.copy_from_slice(&buf[..len]);
    inv
}

/// d_KT(a, b): the number of alternative pairs the two orders rank
/// differently. Merge-based inversion counting, O(m log m).
pub fn kendall_tau(a: &LinearOrder, b: &LinearOrder) -> Result<u64> {
    if a.m() != b.m() {
        return Err(Error::DimensionMismatch { expected: a.m(), got: b.m() });
    }
    let pos_a = a.positions();
    let mut seq: Vec<u32> = b.ranking.iter().map(|&x| pos_a[x as usize]).collect();
    let mut buf = vec![0u32; seq.len()];
    Ok(count_inversions(&mut seq, &mut buf))
}

/// Single-crossing recognition mirroring the SSWNF recognizer: find the order
/// x farthest from the first, sort by distance from x (stable by original
/// index), and verify the telescoping Kendall-tau identity.
pub fn recognize_single_crossing(list: &OrderList) -> Result<Option<Vec<usize>>> {
    let t = list.t();
    let mut x = 0;
    let mut best = 0;
    for j in 0..t {
        let d = kendall_tau(&list.orders[0], &list.orders[j])?;
        if d > best {
            best = d;
            x = j;
        }
    }
    let dx: Vec<u64> = (0..t)
        .map(|j| kendall_tau(&list.orders[x], &list.orders[j]))
        .collect::<Result<_>>()?;
    let mut perm: Vec<usize> = (0..t).collect();
    perm.sort_by_key(|&j| dx[j]);
    // Valid iff d(o'_1, o'_i) + d(o'_i, o'_{i+1}) = d(o'_1, o'_{i+1}) for all
    // interior i.
    for i in 1..t.saturating_sub(1) {
        let first = &list.orders[perm[0]];
        let cur = &list.orders[perm[i]];
        let next = &list.orders[perm[i + 1]];
        let lhs = kendall_tau(first, cur)? + kendall_tau(cur, next)?;
        if lhs != kendall_tau(first, next)? {
            return Ok(None);
        }
    }
    Ok(Some(perm))
}

/// The reduction from SSWNF to single-crossing: two alternatives per voter,
/// ordered within the pair by the voter's opinion. Kendall-tau distances
/// between images equal Hamming distances between source columns.
pub fn profile_to_orders(profile: &PreferenceProfile) -> OrderList {
    let (n, t) = (profile.n(), profile.t());
    let alternatives = (0..n)
        .flat_map(|i| [format!("a{}_0", i + 1), format!("a{}_1", i + 1)])
        .collect();
    let orders = (0..t)
        .map(|j| {
            let mut ranking = Vec::with_capacity(2 * n);
            for i in 0..n {
                let (hi, lo) = if profile.get(i, j) == Opinion::Plus {
                    (2 * i as u32, 2 * i as u32 + 1)
                } else {
                    (2 * i as u32 + 1, 2 * i as u32)
                };
                ranking.push(hi);
                ranking.push(lo);
            }
            LinearOrder { ranking }
        })
        .collect();
    OrderList { alternatives, orders }
}

/// A minimal non-single-crossing subinstance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScWitness {
    pub order_indices: Vec<usize>,
    pub alternative_indices: Vec<usize>,
    pub sublist: OrderList,
}

fn is_sc_sub(list: &OrderList, orders: &[usize], alts: &[usize]) -> Result<bool> {
    if orders.is_empty() || alts.is_empty() {
        return Ok(true);
    }
    let sub = list.sublist(orders, alts)?;
    Ok(recognize_single_crossing(&sub)?.is_some())
}

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

fn eliminate<F>(mut alive: Vec<usize>, groups: usize, still_bad: F) -> Result<Vec<usize>>
where
    F: Fn(&[usize]) -> Result<bool>,
{
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
            if still_bad(&candidate)? {
                alive = candidate;
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    loop {
        let mut removed = false;
        let mut idx = 0;
        while idx < alive.len() && alive.len() > 1 {
            let mut candidate = alive.clone();
            candidate.remove(idx);
            if still_bad(&candidate)? {
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
    Ok(alive)
}

/// Group-elimination search for a minimal non-single-crossing subinstance.
/// A forbidden subinstance spans at most 4 orders and 6 alternatives, so 5
/// order groups and 7 alternative groups guarantee a removable group each
/// round. The witness is certified by recognizer failure plus minimality.
pub fn find_forbidden_sc(list: &OrderList) -> Result<ScWitness> {
    if recognize_single_crossing(list)?.is_some() {
        return Err(Error::ContractViolation(
            "order list is single-crossing; no forbidden subinstance exists".into(),
        ));
    }
    let mut orders: Vec<usize> = (0..list.t()).collect();
    let mut alts: Vec<usize> = (0..list.m()).collect();
    orders = eliminate(orders, 5, |cand| Ok(!is_sc_sub(list, cand, &alts)?))?;
    alts = eliminate(alts, 7, |cand| Ok(!is_sc_sub(list, &orders, cand)?))?;
    loop {
        let before = (orders.len(), alts.len());
        orders = eliminate(orders, usize::MAX, |cand| Ok(!is_sc_sub(list, cand, &alts)?))?;
        alts = eliminate(alts, usize::MAX, |cand| Ok(!is_sc_sub(list, &orders, cand)?))?;
        if (orders.len(), alts.len()) == before {
            break;
        }
    }
    let sublist = list.sublist(&orders, &alts)?;
    if recognize_single_crossing(&sublist)?.is_some() {
        return Err(Error::ContractViolation(
            "eliminated sublist is single-crossing".into(),
        ));
    }
    Ok(ScWitness { order_indices: orders, alternative_indices: alts, sublist })
}

//! Closed forms for torus links and the combinatorics behind them: binomials with the
//! zero convention, zig-zag lines and their reflection, admissible subsets, the
//! cut-off and top-degree rank formulas for `T(2k, 2kn)`, the Poincaré polynomials of
//! `T(3, q)` and the stable limits `P₂`, `P₃`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::homology::LaurentPoly2;
use crate::{Error, Result};

/// `n choose k`, zero unless `0 ≤ k ≤ n`. Pascal's rule then holds everywhere except
/// `binom(0, 0) ≠ binom(−1, −1) + binom(−1, 0)`.
pub fn binom(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn catalan(k: u32) -> u128 {
    let k = k as i64;
    binom(2 * k, k) / (k as u128 + 1)
}

/// A lattice path `a_0, …, a_m` with unit steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZigZag(Vec<i64>);

impl ZigZag {
    pub fn new(values: Vec<i64>) -> Option<Self> {
        if values.is_empty() || values.windows(2).any(|w| (w[1] - w[0]).abs() != 1) {
            return None;
        }
        Some(Self(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn source(&self) -> i64 {
        self.0[0]
    }

    pub fn target(&self) -> i64 {
        *self.0.last().expect("nonempty")
    }

    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lowest(&self) -> i64 {
        *self.0.iter().min().expect("nonempty")
    }
}

/// Number of zig-zag lines of `len` steps from `source` to `target`.
pub fn zigzag_count(source: i64, target: i64, len: usize) -> u128 {
    let len = len as i64;
    let diff = target - source;
    if diff.abs() > len || (len + diff) % 2 != 0 {
        return 0;
    }
    binom(len, (len + diff) / 2)
}

/// All zig-zag lines of `len` steps starting at `source`.
pub fn enumerate_zigzags(source: i64, len: usize) -> Vec<ZigZag> {
    (0u64..1 << len)
        .map(|bits| {
            let mut v = Vec::with_capacity(len + 1);
            v.push(source);
            for s in 0..len {
                let last = *v.last().expect("nonempty");
                v.push(if bits >> s & 1 == 1 { last + 1 } else { last - 1 });
            }
            ZigZag(v)
        })
        .collect()
}

/// Reflects the part of the line up to its first visit to −1 about `y = −1`.
pub fn reflect(z: &ZigZag) -> Result<ZigZag> {
    let first = z.0.iter().position(|&a| a == -1).ok_or(Error::NeverNegative)?;
    let mut v = z.0.clone();
    for a in v.iter_mut().take(first + 1) {
        *a = -2 - *a;
    }
    Ok(ZigZag(v))
}

/// `I ⊆ {1, …, 2k}` with `|I ∩ {1, …, m}| ≤ m/2` for every `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdmissibleSubset {
    pub k: usize,
    pub elements: BTreeSet<usize>,
}

pub fn is_admissible(elements: &BTreeSet<usize>, k: usize) -> bool {
    let mut count = 0;
    for m in 1..=2 * k {
        if elements.contains(&m) {
            count += 1;
        }
        if 2 * count > m {
            return false;
        }
    }
    elements.iter().all(|&e| (1..=2 * k).contains(&e))
}

/// All admissible subsets of `{1, …, 2k}`, by depth-first search over prefixes.
pub fn admissible_subsets(k: usize) -> Vec<AdmissibleSubset> {
    fn go(k: usize, m: usize, taken: usize, cur: &mut Vec<usize>, out: &mut Vec<AdmissibleSubset>) {
        if m > 2 * k {
            out.push(AdmissibleSubset { k, elements: cur.iter().copied().collect() });
            return;
        }
        go(k, m + 1, taken, cur, out);
        if 2 * (taken + 1) <= m {
            cur.push(m);
            go(k, m + 1, taken + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, 1, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Admissible subsets counted by size, testing every one of the `2^{2k}` subsets.
pub fn admissible_counts_brute(k: usize) -> Vec<u128> {
    let mut counts = vec![0u128; k + 1];
    for bits in 0u64..1 << (2 * k) {
        let set: BTreeSet<usize> = (0..2 * k).filter(|b| bits >> b & 1 == 1).map(|b| b + 1).collect();
        if is_admissible(&set, k) {
            counts[set.len()] += 1;
        }
    }
    counts
}

/// For paths of length `2k` from 0 to `2k − 2i`, `i = 0..k`: the number that dip
/// below 0, the size of their image under [`reflect`], and the number of paths from
/// −2 to the same target. The reflection is a bijection iff all three agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionCount {
    pub target: i64,
    pub dipping: usize,
    pub image: usize,
    pub from_minus_two: usize,
    pub round_trip: bool,
}

pub fn reflection_counts(k: usize) -> Vec<ReflectionCount> {
    let all = enumerate_zigzags(0, 2 * k);
    let shifted = enumerate_zigzags(-2, 2 * k);
    (0..=k as i64)
        .map(|i| {
            let target = 2 * k as i64 - 2 * i;
            let dipping: BTreeSet<&ZigZag> = all.iter().filter(|z| z.target() == target && z.lowest() < 0).collect();
            let image: BTreeSet<ZigZag> = dipping.iter().map(|z| reflect(z).expect("dips below 0")).collect();
            let round_trip = image.iter().all(|z| image.len() == dipping.len() && reflect(z).is_ok_and(|w| dipping.contains(&w)));
            ReflectionCount {
                target,
                dipping: dipping.len(),
                image: image.iter().filter(|z| z.source() == -2 && z.target() == target).count(),
                from_minus_two: shifted.iter().filter(|z| z.target() == target).count(),
                round_trip,
            }
        })
        .collect()
}

/// `a_j = j − 2|X ∩ {1, …, j}|`, `j = 0..2k`.
pub fn subset_to_sequence(x: &BTreeSet<usize>, k: usize) -> ZigZag {
    let mut v = vec![0i64];
    let mut taken = 0i64;
    for j in 1..=2 * k {
        if x.contains(&j) {
            taken += 1;
        }
        v.push(j as i64 - 2 * taken);
    }
    ZigZag(v)
}

/// q-degree ↦ rank.
pub type RankProfile = BTreeMap<i64, u128>;

/// `(i_max, j_max)` past which the homology of `T(2k, 2kn)` vanishes.
pub fn theorem1_bounds(k: u32, n: u32) -> (i64, i64) {
    let (k, n) = (k as i64, n as i64);
    (2 * k * k * n, 6 * k * k * n)
}

/// Ranks of `𝓗^{2k²n, *}(T(2k, 2kn))`: `binom(2k, k−i) − binom(2k, k−i−1)` at
/// `q = 6k²n − 2i`, `i = 0..k` (zero beyond).
pub fn theorem2_profile(k: u32, n: u32) -> RankProfile {
    let (k, n) = (k as i64, n as i64);
    let top = 6 * k * k * n;
    (0..=k)
        .map(|i| (top - 2 * i, binom(2 * k, k - i) - binom(2 * k, k - i - 1)))
        .filter(|&(_, r)| r > 0)
        .collect()
}

/// Ranks of `𝓗^{0, *}(T'(2k, 2kn))`, i.e. the profile above moved by the `T'` shift.
pub fn corollary2_profile(k: u32, n: u32) -> RankProfile {
    let (_, dj) = tprime_shift(k, n);
    theorem2_profile(k, n).into_iter().map(|(q, r)| (q - dj, r)).collect()
}

/// `(di, dj)` with `𝓗^{i,j}(T') = 𝓗^{i+di, j+dj}(T)` for `T(2k, 2kn)`, `k` strands reversed.
pub fn tprime_shift(k: u32, n: u32) -> (i64, i64) {
    theorem1_bounds(k, n)
}

/// `(di, dj)` with `𝓗^{i,j}(T'(3, 3n)) = 𝓗^{i+di, j+dj}(T(3, 3n))`, one strand reversed.
pub fn tprime3_shift(n: u32) -> (i64, i64) {
    (4 * n as i64, 12 * n as i64)
}

fn geometric(n_terms: i64, dt: i64, dq: i64) -> LaurentPoly2 {
    LaurentPoly2::from_terms((0..n_terms.max(0)).map(|i| (dt * i, dq * i, 1)))
}

/// Poincaré polynomial of `T(3, q)` from the three closed forms (`n = ⌈q/3⌉`).
pub fn theorem3_poincare(q: i64) -> Result<LaurentPoly2> {
    if q < 1 {
        return Err(Error::TorusRange(format!("T(3, {q}) needs q >= 1")));
    }
    let n = (q + 2) / 3;
    let base = LaurentPoly2::from_terms([(0, -3, 1), (0, -1, 1), (2, 1, 1), (3, 5, 1)]);
    let bracket = LaurentPoly2::from_terms([(4, 3, 1), (4, 5, 1), (5, 7, 1), (5, 9, 1), (6, 7, 1), (7, 11, 1)]);
    let common = &base + &(&bracket * &geometric(n - 1, 4, 6));
    let p = match q - 3 * n {
        0 => {
            let tail = LaurentPoly2::from_terms([(4 * n, 6 * n - 3, 1), (4 * n, 6 * n - 1, 3), (4 * n, 6 * n + 1, 2)]);
            (&common + &tail).shift(0, 6 * n)
        }
        -1 => common.shift(0, 6 * n - 2),
        _ => {
            let drop = LaurentPoly2::from_terms([(4 * n - 2, 6 * n - 5, 1), (4 * n - 1, 6 * n - 1, 1)]);
            (&common - &drop).shift(0, 6 * n - 4)
        }
    };
    Ok(p)
}

/// `P_q − q²·P_{q−1}` as read off the induction step, for `q ≥ 2`: the groups of
/// `D_{3,q}` that differ from those of `D_{3,q−1}`, moved to invariant gradings.
pub fn theorem3_step(q: i64) -> Result<LaurentPoly2> {
    if q < 2 {
        return Err(Error::TorusRange(format!("the step needs q >= 2, got {q}")));
    }
    let p = |t: &[(i64, i64, i64)]| LaurentPoly2::from_terms(t.iter().copied());
    Ok(match q % 3 {
        // q = 3n + 2, from q − 1 = 3n + 1.
        2 => {
            let n = (q - 2) / 3;
            p(&[(4 * n + 2, 12 * n + 5, 1), (4 * n + 3, 12 * n + 9, 1)])
        }
        // q = 3n + 3.
        0 => {
            let n = (q - 3) / 3;
            p(&[(4 * n + 4, 12 * n + 9, 1), (4 * n + 4, 12 * n + 11, 3), (4 * n + 4, 12 * n + 13, 2)])
        }
        // q = 3n + 1, n ≥ 1.
        _ => {
            let n = (q - 1) / 3;
            p(&[(4 * n, 12 * n + 1, -2), (4 * n, 12 * n + 3, -2), (4 * n + 1, 12 * n + 3, 1), (4 * n + 1, 12 * n + 5, 1)])
        }
    })
}

/// `P₂` with the series cut after index `order`.
pub fn stable_p2(order: u32) -> LaurentPoly2 {
    let head = LaurentPoly2::from_terms([(0, 0, 1), (0, -2, 1)]);
    let factor = LaurentPoly2::from_terms([(-1, -2, 1), (-2, -6, 1)]);
    &head + &(&factor * &geometric(order as i64 + 1, -2, -4))
}

/// `P₃` with the series cut after index `order`.
pub fn stable_p3(order: u32) -> LaurentPoly2 {
    let head = LaurentPoly2::from_terms([(0, 1, 2), (0, -1, 3), (0, -3, 1)]);
    let a = LaurentPoly2::from_terms([(-1, -1, 1), (-3, -3, 1), (-3, -5, 1)]);
    let b = LaurentPoly2::from_terms([(0, 0, 1), (-1, -4, 1)]);
    &head + &(&(&a * &b) * &geometric(order as i64 + 1, -4, -6))
}

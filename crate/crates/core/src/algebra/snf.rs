//! Smith normal form, rational rank, homology of a pair of maps and integral kernels.
//!
//! Every routine starts with the machine-integer ±1 elimination and hands whatever is
//! left to a big-integer phase, so results are exact regardless of coefficient growth.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::elim::UnitEliminator;
use super::matrix::SparseIntMatrix;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Positive invariant factors `d_1 | d_2 | … | d_r`.
    pub factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Isomorphism class of a finitely generated abelian group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupIso {
    pub free: usize,
    /// Orders of the cyclic torsion summands, each ≥ 2, in divisibility order.
    pub torsion: Vec<u64>,
}

impl AbelianGroupIso {
    pub fn free(rank: usize) -> Self {
        Self { free: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroupIso {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn snf(m: &SparseIntMatrix) -> SnfResult {
    let mut e = UnitEliminator::new(m.clone());
    e.run();
    let res = e.into_residual();
    let mut factors: Vec<BigInt> = vec![BigInt::one(); res.pivots];
    factors.extend(big_snf_diagonal(&res.matrix));
    SnfResult { factors: normalize_diagonal(factors) }
}

/// Rank over ℚ by fraction-free elimination.
pub fn rank_q(m: &SparseIntMatrix) -> usize {
    let mut e = UnitEliminator::new(m.clone());
    e.run();
    let res = e.into_residual();
    res.pivots + big_rank(&res.matrix)
}

/// `ker(d_out) / im(d_in)` for `C_in --d_in--> C --d_out--> C_out`.
pub fn homology_of_pair(d_in: &SparseIntMatrix, d_out: &SparseIntMatrix) -> Result<AbelianGroupIso> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::Shape(format!("d_in has {} rows but d_out has {} columns", d_in.rows(), d_out.cols())));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NonzeroComposition);
    }
    let s_in = snf(d_in);
    let rank_out = rank_q(d_out);
    let free = d_out.cols() - rank_out - s_in.rank();
    Ok(AbelianGroupIso { free, torsion: torsion_u64(&s_in.torsion()) })
}

pub(crate) fn torsion_u64(t: &[BigInt]) -> Vec<u64> {
    t.iter().map(|d| d.to_u64().expect("torsion order fits in 64 bits")).collect()
}

/// Turns any diagonal into invariant factors: drops zeros, takes absolute values and
/// restores the divisibility chain with gcd/lcm swaps.
pub(crate) fn normalize_diagonal(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut ones = 0usize;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in diag {
        let d = d.abs();
        if d.is_zero() {
            continue;
        }
        if d.is_one() {
            ones += 1;
        } else {
            rest.push(d);
        }
    }
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g != rest[i] {
                let l = &rest[i] / &g * &rest[j];
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    let mut out: Vec<BigInt> = vec![BigInt::one(); ones];
    let (units, others): (Vec<BigInt>, Vec<BigInt>) = rest.into_iter().partition(|d| d.is_one());
    out.extend(units);
    out.extend(others);
    out
}

type BigCols = Vec<BTreeMap<u32, BigInt>>;

fn to_big(m: &SparseIntMatrix) -> (BigCols, Vec<BTreeSet<u32>>) {
    let mut rows: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); m.rows()];
    let cols = m
        .columns()
        .iter()
        .enumerate()
        .map(|(c, col)| {
            col.iter()
                .map(|&(r, v)| {
                    rows[r as usize].insert(c as u32);
                    (r, BigInt::from(v))
                })
                .collect()
        })
        .collect();
    (cols, rows)
}

/// Diagonal reached by Euclidean row and column steps on big integers (not yet a
/// divisor chain).
fn big_snf_diagonal(m: &SparseIntMatrix) -> Vec<BigInt> {
    let (mut cols, mut rows) = to_big(m);
    let mut diag = Vec::new();
    loop {
        // Smallest absolute entry; ties broken toward short rows and columns.
        let mut best: Option<(u32, u32)> = None;
        let mut best_key: Option<(BigInt, usize)> = None;
        for (c, col) in cols.iter().enumerate() {
            for (&r, v) in col {
                let key = (v.abs(), col.len() * rows[r as usize].len());
                if best_key.as_ref().map_or(true, |bk| key < *bk) {
                    best_key = Some(key);
                    best = Some((r, c as u32));
                }
            }
        }
        let Some((r, c)) = best else { break };
        let p = cols[c as usize][&r].clone();

        let mut clean = true;
        // Column steps: clear row r in other columns.
        let others: Vec<u32> = rows[r as usize].iter().copied().filter(|&c2| c2 != c).collect();
        for c2 in others {
            let a = cols[c2 as usize][&r].clone();
            let q = a.div_floor(&p);
            if !q.is_zero() {
                let pivot_col: Vec<(u32, BigInt)> = cols[c as usize].iter().map(|(&k, v)| (k, v.clone())).collect();
                for (row, v) in pivot_col {
                    add_entry(&mut cols, &mut rows, row, c2, -(&q * &v));
                }
            }
            if cols[c2 as usize].contains_key(&r) {
                clean = false;
            }
        }
        // Row steps: clear column c in other rows.
        let other_rows: Vec<u32> = cols[c as usize].keys().copied().filter(|&r2| r2 != r).collect();
        for r2 in other_rows {
            let a = cols[c as usize][&r2].clone();
            let q = a.div_floor(&p);
            if !q.is_zero() {
                let pivot_row: Vec<(u32, BigInt)> =
                    rows[r as usize].iter().map(|&k| (k, cols[k as usize][&r].clone())).collect();
                for (col, v) in pivot_row {
                    add_entry(&mut cols, &mut rows, r2, col, -(&q * &v));
                }
            }
            if cols[c as usize].contains_key(&r2) {
                clean = false;
            }
        }
        if clean {
            let v = cols[c as usize].remove(&r).expect("pivot present");
            rows[r as usize].remove(&c);
            debug_assert!(rows[r as usize].is_empty() && cols[c as usize].is_empty());
            diag.push(v);
        }
    }
    diag
}

fn add_entry(cols: &mut BigCols, rows: &mut [BTreeSet<u32>], r: u32, c: u32, delta: BigInt) {
    if delta.is_zero() {
        return;
    }
    let col = &mut cols[c as usize];
    let entry = col.entry(r).or_insert_with(BigInt::zero);
    *entry += delta;
    if entry.is_zero() {
        col.remove(&r);
        rows[r as usize].remove(&c);
    } else {
        rows[r as usize].insert(c);
    }
}

fn big_rank(m: &SparseIntMatrix) -> usize {
    let (mut cols, mut rows) = to_big(m);
    let mut rank = 0;
    loop {
        let mut best: Option<(u32, u32, usize)> = None;
        for (c, col) in cols.iter().enumerate() {
            if let Some((&r, _)) = col.iter().min_by_key(|(&r, _)| rows[r as usize].len()) {
                let cost = col.len() * rows[r as usize].len();
                if best.map_or(true, |(_, _, bc)| cost < bc) {
                    best = Some((r, c as u32, cost));
                }
            }
        }
        let Some((r, c, _)) = best else { break };
        let p = cols[c as usize][&r].clone();
        let pivot_col: Vec<(u32, BigInt)> = cols[c as usize].iter().map(|(&k, v)| (k, v.clone())).collect();
        let others: Vec<u32> = rows[r as usize].iter().copied().filter(|&c2| c2 != c).collect();
        for c2 in others {
            // col_c2 <- p * col_c2 - a * col_c, then strip the content.
            let a = cols[c2 as usize][&r].clone();
            let old: Vec<(u32, BigInt)> = std::mem::take(&mut cols[c2 as usize]).into_iter().collect();
            for (row, _) in &old {
                rows[*row as usize].remove(&c2);
            }
            let mut merged: BTreeMap<u32, BigInt> = old.into_iter().map(|(k, v)| (k, v * &p)).collect();
            for (k, v) in &pivot_col {
                let e = merged.entry(*k).or_insert_with(BigInt::zero);
                *e -= &a * v;
            }
            merged.retain(|_, v| !v.is_zero());
            let g = merged.values().fold(BigInt::zero(), |g, v| g.gcd(v));
            if !g.is_zero() && !g.is_one() {
                for v in merged.values_mut() {
                    *v /= &g;
                }
            }
            for row in merged.keys() {
                rows[*row as usize].insert(c2);
            }
            cols[c2 as usize] = merged;
        }
        for (row, _) in &pivot_col {
            rows[*row as usize].remove(&c);
        }
        cols[c as usize].clear();
        rank += 1;
    }
    rank
}

/// A ℤ-basis of `{ v : m v = 0 }`, one vector per basis element (length `m.cols()`).
///
/// The kernel lattice is refined one equation at a time: unimodular steps on the current
/// basis leave a single vector with a nonzero value on the equation, which is dropped.
pub fn integer_kernel(m: &SparseIntMatrix) -> Vec<Vec<BigInt>> {
    let mut k = IntegerKernel::new(m.cols());
    for row in m.transpose().columns() {
        if k.is_trivial() {
            break;
        }
        k.constrain(row);
    }
    k.into_basis()
}

/// A ℤ-basis of `{v ∈ ℤⁿ : r·v = 0}` for the equations `r` seen so far, refined one
/// equation at a time so a large system never has to be held in memory.
pub struct IntegerKernel {
    basis: Vec<Vec<BigInt>>,
}

impl IntegerKernel {
    pub fn new(n: usize) -> Self {
        let basis = (0..n)
            .map(|k| {
                let mut v = vec![BigInt::zero(); n];
                v[k] = BigInt::one();
                v
            })
            .collect();
        Self { basis }
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Adds the equation `Σ a·v[c] = 0` for the sparse row `(c, a)`.
    pub fn constrain(&mut self, row: &[(u32, i64)]) {
        let basis = &mut self.basis;
        let mut vals: Vec<BigInt> = basis
            .iter()
            .map(|b| row.iter().fold(BigInt::zero(), |acc, &(c, a)| acc + &b[c as usize] * a))
            .collect();
        // Euclid across the values until at most one is nonzero.
        loop {
            let nz: Vec<usize> = (0..vals.len()).filter(|&k| !vals[k].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&k) = nz.first() {
                    basis.swap_remove(k);
                }
                return;
            }
            let &piv = nz.iter().min_by_key(|&&k| vals[k].abs()).expect("nonempty");
            for &k in &nz {
                if k == piv {
                    continue;
                }
                let q = vals[k].div_floor(&vals[piv]);
                if q.is_zero() {
                    continue;
                }
                let (bp, vp) = (basis[piv].clone(), vals[piv].clone());
                for (x, y) in basis[k].iter_mut().zip(bp.iter()) {
                    *x -= &q * y;
                }
                vals[k] -= &q * vp;
            }
        }
    }

    pub fn into_basis(self) -> Vec<Vec<BigInt>> {
        self.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let d = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(snf(&d).factors, big(&[1, 6]));
        assert_eq!(snf(&SparseIntMatrix::zeros(3, 2)).rank(), 0);
        assert_eq!(snf(&SparseIntMatrix::from_dense(&[vec![2]])).factors, big(&[2]));
        let m = SparseIntMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(snf(&m).factors, big(&[2, 6, 12]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_q(&SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]])), 2);
        assert_eq!(rank_q(&SparseIntMatrix::zeros(2, 2)), 0);
        assert_eq!(rank_q(&SparseIntMatrix::from_dense(&[vec![1, 1], vec![1, 1]])), 1);
        assert_eq!(rank_q(&SparseIntMatrix::from_dense(&[vec![2, 4], vec![3, 6]])), 1);
    }

    #[test]
    fn pair_homology_examples() {
        let z = homology_of_pair(&SparseIntMatrix::zeros(2, 0), &SparseIntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(z, AbelianGroupIso::free(2));

        let two = homology_of_pair(&SparseIntMatrix::from_dense(&[vec![2]]), &SparseIntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(two, AbelianGroupIso { free: 0, torsion: vec![2] });

        // Z --(1,1)--> Z^2 --(1,-1)--> Z is exact in the middle.
        let d_in = SparseIntMatrix::from_dense(&[vec![1], vec![1]]);
        let d_out = SparseIntMatrix::from_dense(&[vec![1, -1]]);
        assert!(homology_of_pair(&d_in, &d_out).unwrap().is_zero());

        let bad = SparseIntMatrix::from_dense(&[vec![1, 1]]);
        assert!(matches!(homology_of_pair(&d_in, &bad), Err(Error::NonzeroComposition)));
    }

    #[test]
    fn kernel_basis() {
        let m = SparseIntMatrix::from_dense(&[vec![2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().zip([2, 4, 6]).map(|(x, a)| x * a).sum();
            assert!(s.is_zero());
        }
        assert_eq!(integer_kernel(&SparseIntMatrix::identity(3)).len(), 0);
    }

    /// Dense Bareiss rank on i128.
    fn dense_rank(mut a: Vec<Vec<i128>>) -> usize {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, p);
            for r in rank + 1..rows {
                for k in c + 1..cols {
                    a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
                }
                a[r][c] = 0;
            }
            prev = a[rank][c];
            rank += 1;
        }
        rank
    }

    fn divides_chain(f: &[BigInt]) -> bool {
        f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()) && f.iter().all(|d| d.is_positive())
    }

    /// A complex `Z^k -> Z^n -> Z^p` conjugated by a random unimodular `U`, whose
    /// homology is read off its construction.
    fn twisted_pair(n: usize, a: &[i64], b: &[i64], ops: &[(usize, usize, i64)]) -> (SparseIntMatrix, SparseIntMatrix) {
        let mut u: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
        let mut uinv = u.clone();
        for &(x, y, f) in ops {
            let (x, y) = (x % n, y % n);
            if x == y {
                continue;
            }
            // U <- U E, E = I + f e_{x,y}: column y += f * column x.
            for row in u.iter_mut() {
                row[y] += f * row[x];
            }
            // U^{-1} <- E^{-1} U^{-1}: row x -= f * row y.
            let ry = uinv[y].clone();
            for (v, w) in uinv[x].iter_mut().zip(ry) {
                *v -= f * w;
            }
        }
        // d_in = U [diag(a); 0], d_out = [0 | diag(b)] U^{-1}.
        let k = a.len();
        let p = b.len();
        let mut din = vec![vec![0i64; k]; n];
        for (c, &av) in a.iter().enumerate() {
            for r in 0..n {
                din[r][c] = u[r][c] * av;
            }
        }
        let mut dout = vec![vec![0i64; n]; p];
        for (r, &bv) in b.iter().enumerate() {
            for c in 0..n {
                dout[r][c] = bv * uinv[n - p + r][c];
            }
        }
        let sparse = |m: &[Vec<i64>], rows: usize, cols: usize| {
            SparseIntMatrix::from_triplets(
                rows,
                cols,
                m.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v))),
            )
        };
        (sparse(&din, n, k), sparse(&dout, p, n))
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(prop_oneof![4 => Just(0i64), 3 => -3i64..=3], c), r)
            })
        }

        proptest! {
            #[test]
            fn rank_agrees_with_snf_and_dense(m in small_matrix()) {
                let s = SparseIntMatrix::from_dense(&m);
                let f = snf(&s);
                prop_assert!(divides_chain(&f.factors));
                prop_assert_eq!(rank_q(&s), f.rank());
                let dense: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
                prop_assert_eq!(dense_rank(dense), f.rank());
            }

            #[test]
            fn pair_homology_matches_construction(
                n in 2usize..=8,
                a in proptest::collection::vec(prop_oneof![Just(0i64), Just(1), Just(-1), 2i64..=6], 0..=4),
                b in proptest::collection::vec(prop_oneof![Just(0i64), Just(1), 2i64..=6], 0..=4),
                ops in proptest::collection::vec((0usize..8, 0usize..8, -2i64..=2), 0..12),
            ) {
                let k = a.len().min(n / 2);
                let p = b.len().min(n - k);
                let (a, b) = (&a[..k], &b[..p]);
                let (din, dout) = twisted_pair(n, a, b, &ops);
                let h = homology_of_pair(&din, &dout).unwrap();
                let rank_a = a.iter().filter(|&&v| v != 0).count();
                let rank_b = b.iter().filter(|&&v| v != 0).count();
                prop_assert_eq!(h.free, n - rank_a - rank_b);
                let mut expected: Vec<BigInt> = a.iter().filter(|&&v| v != 0).map(|&v| BigInt::from(v)).collect();
                expected = normalize_diagonal(expected);
                prop_assert_eq!(h.torsion, torsion_u64(&expected.into_iter().filter(|d| !d.is_one()).collect::<Vec<_>>()));
            }
        }
    }
}

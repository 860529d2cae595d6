//! Homology of one block, either straight from the cube matrices or after cancelling
//! every available ±1 entry of the complex.

use crate::algebra::elim::UnitEliminator;
use crate::algebra::snf::torsion_u64;
use crate::algebra::{rank_q, snf, AbelianGroupIso, FrobeniusSpec, SparseIntMatrix};
use crate::{Error, Result};

use super::complex::Block;
use super::Ring;

/// Rank and (over ℤ) torsion of one differential.
struct MapInvariants {
    rank: usize,
    torsion: Vec<u64>,
}

fn invariants(m: &SparseIntMatrix, ring: Ring) -> MapInvariants {
    if m.is_zero() {
        return MapInvariants { rank: 0, torsion: Vec::new() };
    }
    match ring {
        Ring::Q => MapInvariants { rank: rank_q(m), torsion: Vec::new() },
        Ring::Z => {
            let f = snf(m);
            let t = f.torsion();
            MapInvariants { rank: f.rank(), torsion: torsion_u64(&t) }
        }
    }
}

/// `H^i` of the block for `i = 0..=n`.
pub(crate) fn block_homology_raw(block: &Block, spec: &FrobeniusSpec, ring: Ring) -> Result<Vec<AbelianGroupIso>> {
    let n = block.max_degree();
    let mut out = Vec::with_capacity(n + 1);
    let mut prev: Option<(SparseIntMatrix, MapInvariants)> = None;
    for i in 0..=n {
        let d = block.differential(i, spec, None);
        if let Some((p, _)) = &prev {
            if !d.mul(p)?.is_zero() {
                return Err(Error::NotAComplex(i as isize - 1, i as isize));
            }
        }
        let inv = invariants(&d, ring);
        let (rank_in, torsion) = prev.as_ref().map_or((0, Vec::new()), |(_, pi)| (pi.rank, pi.torsion.clone()));
        let free = block.size(i) - inv.rank - rank_in;
        out.push(AbelianGroupIso { free, torsion });
        prev = Some((d, inv));
    }
    Ok(out)
}

/// Same result as [`block_homology_raw`], via Gaussian cancellation streamed in `i`.
///
/// Cancelling a pair `a ∈ C^i, b ∈ C^{i+1}` with `d(a)_b = ±1` changes only `d_i`
/// (by its Schur complement); `d_{i-1}` loses row `a` and `d_{i+1}` loses column `b`.
/// So each `d_i` is built once, on the columns that survived step `i − 1`.
pub(crate) fn block_homology_reduced(block: &Block, spec: &FrobeniusSpec, ring: Ring) -> Result<Vec<AbelianGroupIso>> {
    let n = block.max_degree();
    struct Step {
        cols: Vec<u32>,
        rows: Vec<u32>,
        matrix: SparseIntMatrix,
    }
    let mut steps: Vec<Step> = Vec::with_capacity(n + 1);
    let mut surv: Vec<u32> = (0..block.size(0) as u32).collect();
    for i in 0..=n {
        let d = block.differential(i, spec, Some(&surv));
        let mut e = UnitEliminator::new(d);
        if block.is_filtered() {
            let all_cols = block.levels(i);
            let col_level: Vec<i32> = surv.iter().map(|&c| all_cols[c as usize]).collect();
            drop(all_cols);
            e.run_by_levels(&col_level, &block.levels(i + 1));
        } else {
            e.run();
        }
        let res = e.into_residual();
        let cols: Vec<u32> = res.cols.iter().map(|&c| surv[c as usize]).collect();
        surv = res.rows.clone();
        steps.push(Step { cols, rows: res.rows, matrix: res.matrix });
    }

    // Final differentials R_i: G_i → G_{i+1}, dropping rows cancelled one step later.
    let mut reduced: Vec<SparseIntMatrix> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let next: &[u32] = if i < n { &steps[i + 1].cols } else { &[] };
        let step = &steps[i];
        // Position in `next` of each local residual row, or None if it was cancelled.
        let mut pos = vec![u32::MAX; step.rows.len()];
        let mut k = 0usize;
        for (local, &g) in step.rows.iter().enumerate() {
            while k < next.len() && next[k] < g {
                k += 1;
            }
            if k < next.len() && next[k] == g {
                pos[local] = k as u32;
            }
        }
        let columns = step
            .matrix
            .columns()
            .iter()
            .map(|col| {
                col.iter()
                    .filter(|&&(r, _)| pos[r as usize] != u32::MAX)
                    .map(|&(r, v)| (pos[r as usize], v))
                    .collect()
            })
            .collect();
        reduced.push(SparseIntMatrix::from_columns(next.len(), columns));
    }
    for i in 1..=n {
        if !reduced[i].mul(&reduced[i - 1])?.is_zero() {
            return Err(Error::NotAComplex(i as isize - 1, i as isize));
        }
    }

    let invs: Vec<MapInvariants> = reduced.iter().map(|m| invariants(m, ring)).collect();
    Ok((0..=n)
        .map(|i| {
            let (rank_in, torsion) = if i > 0 { (invs[i - 1].rank, invs[i - 1].torsion.clone()) } else { (0, Vec::new()) };
            AbelianGroupIso { free: steps[i].cols.len() - invs[i].rank - rank_in, torsion }
        })
        .collect())
}

//! Khovanov and Lee homology of link diagrams.
//!
//! Gradings on the cube: a generator over a state of weight `w` with `#1` circles
//! labeled 1 and `#X` labeled X sits at `(i, j) = (w, w + #1 − #X)`. The link
//! invariant is obtained with [`shift_to_invariant`].

pub(crate) mod complex;
mod engine;
pub mod poly;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{homology_of_pair, AbelianGroupIso, FrobeniusKind, FrobeniusSpec, SparseIntMatrix};
use crate::cube::EnhancedState;
use crate::diagram::{LinkDiagram, Smoothing};
use crate::{Error, Result};

use complex::{Block, CubeTables};
pub use poly::LaurentPoly2;

/// Crossing cap for the unreduced computation.
pub const RAW_CAP: usize = 16;
/// Crossing cap with Gaussian cancellation (bounded by the circle tables in memory).
pub const REDUCED_CAP: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Q,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        })
    }
}

/// `(i, j) ↦ H^{i,j}`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedAbelianGroup {
    pub ring: Ring,
    groups: BTreeMap<(i64, i64), AbelianGroupIso>,
}

#[derive(Serialize, Deserialize)]
struct GroupRecord {
    i: i64,
    j: i64,
    free: usize,
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GroupsRecord {
    ring: Ring,
    groups: Vec<GroupRecord>,
}

impl BigradedAbelianGroup {
    pub fn new(ring: Ring) -> Self {
        Self { ring, groups: BTreeMap::new() }
    }

    /// Adds a summand at `(i, j)`; zero groups are not stored.
    pub fn insert(&mut self, i: i64, j: i64, g: AbelianGroupIso) {
        if g.is_zero() {
            return;
        }
        let e = self.groups.entry((i, j)).or_default();
        e.free += g.free;
        e.torsion.extend(g.torsion);
        e.torsion.sort_unstable();
    }

    pub fn get(&self, i: i64, j: i64) -> AbelianGroupIso {
        self.groups.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn rank(&self, i: i64, j: i64) -> usize {
        self.groups.get(&(i, j)).map_or(0, |g| g.free)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &AbelianGroupIso)> {
        self.groups.iter().map(|(&k, g)| (k, g))
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.free).sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(|g| g.is_free())
    }

    /// `j ↦ rank H^{i,j}` for a fixed `i`.
    pub fn ranks_at_degree(&self, i: i64) -> BTreeMap<i64, usize> {
        self.groups.range((i, i64::MIN)..=(i, i64::MAX)).map(|(&(_, j), g)| (j, g.free)).filter(|&(_, r)| r > 0).collect()
    }

    pub fn shift(&self, di: i64, dj: i64) -> Self {
        Self { ring: self.ring, groups: self.groups.iter().map(|(&(i, j), g)| ((i + di, j + dj), g.clone())).collect() }
    }

    /// Forgets torsion.
    pub fn rationalize(&self) -> Self {
        let mut out = Self::new(Ring::Q);
        for (&(i, j), g) in &self.groups {
            out.insert(i, j, AbelianGroupIso::free(g.free));
        }
        out
    }

    /// `Σ (-1)^i rank H^{i,j} q^j`.
    pub fn euler(&self) -> LaurentPoly2 {
        poincare(self).at_t_minus_one()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.record()).expect("groups serialize")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.record()).expect("groups serialize")
    }

    pub fn from_json_str(s: &str) -> Option<Self> {
        let rec: GroupsRecord = serde_json::from_str(s).ok()?;
        let mut out = Self::new(rec.ring);
        for g in rec.groups {
            out.insert(g.i, g.j, AbelianGroupIso { free: g.free, torsion: g.torsion });
        }
        Some(out)
    }

    fn record(&self) -> GroupsRecord {
        GroupsRecord {
            ring: self.ring,
            groups: self
                .groups
                .iter()
                .map(|(&(i, j), g)| GroupRecord { i, j, free: g.free, torsion: g.torsion.clone() })
                .collect(),
        }
    }
}

impl fmt::Display for BigradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return writeln!(f, "0");
        }
        for (&(i, j), g) in &self.groups {
            writeln!(f, "H^{{{i},{j}}} = {}", g.to_string().replace('Z', &self.ring.to_string()))?;
        }
        Ok(())
    }
}

/// The chain complex held in memory, block by block. For Khovanov's algebra each block
/// is one q-degree; for Lee's, one class of q-degrees mod 4.
pub struct BigradedComplex {
    pub kind: FrobeniusKind,
    pub crossings: usize,
    pub blocks: Vec<ComplexBlock>,
}

pub struct ComplexBlock {
    pub q_degrees: Vec<i64>,
    /// Generators of `C^i`, `i = 0..=crossings`.
    pub generators: Vec<Vec<EnhancedState>>,
    /// `d^i: C^i → C^{i+1}`, `i = 0..=crossings`.
    pub differentials: Vec<SparseIntMatrix>,
}

impl BigradedComplex {
    pub fn total_rank(&self) -> usize {
        self.blocks.iter().flat_map(|b| b.generators.iter()).map(|g| g.len()).sum()
    }

    /// Graded Euler characteristic of the chain groups.
    pub fn euler(&self) -> LaurentPoly2 {
        let mut p = LaurentPoly2::zero();
        for b in &self.blocks {
            for gens in &b.generators {
                for g in gens {
                    let bg = g.bigrading();
                    p.add_term(0, bg.j, if bg.i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        p
    }
}

fn block_sets(t: &CubeTables, kind: FrobeniusKind) -> Vec<Vec<i64>> {
    let js = t.q_degrees();
    match kind {
        FrobeniusKind::Khovanov => js.into_iter().map(|j| vec![j]).collect(),
        FrobeniusKind::Lee => {
            let mut classes: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
            for j in js {
                classes.entry(j.rem_euclid(4)).or_default().push(j);
            }
            classes.into_values().collect()
        }
    }
}

fn check_cap(d: &LinkDiagram, reduce: bool) -> Result<()> {
    let n = d.crossing_count();
    if !reduce && n > RAW_CAP {
        return Err(Error::CrossingCap { crossings: n, cap: RAW_CAP, hint: "; pass --reduce to simplify the complex first" });
    }
    if n > REDUCED_CAP {
        return Err(Error::CrossingCap { crossings: n, cap: REDUCED_CAP, hint: " even with reduction" });
    }
    Ok(())
}

/// Builds the whole complex and verifies `d² = 0`.
pub fn build_complex(d: &LinkDiagram, spec: &FrobeniusSpec) -> Result<BigradedComplex> {
    check_cap(d, false)?;
    let t = CubeTables::new(d)?;
    let n = t.crossings();
    let mut blocks = Vec::new();
    for js in block_sets(&t, spec.kind) {
        let b = Block::new(&t, js.clone());
        let generators = (0..=n).map(|i| b.generators(i)).collect();
        let differentials: Vec<SparseIntMatrix> = (0..=n).map(|i| b.differential(i, spec, None)).collect();
        for i in 1..=n {
            if !differentials[i].mul(&differentials[i - 1])?.is_zero() {
                return Err(Error::NotAComplex(i as isize - 1, i as isize));
            }
        }
        blocks.push(ComplexBlock { q_degrees: js, generators, differentials });
    }
    Ok(BigradedComplex { kind: spec.kind, crossings: n, blocks })
}

/// Homology of a built complex. Khovanov blocks are keyed `(i, j)`; Lee blocks are keyed
/// `(i, r)` with `r` the residue mod 4 of the block's q-degrees.
pub fn homology(c: &BigradedComplex, ring: Ring) -> Result<BigradedAbelianGroup> {
    let mut out = BigradedAbelianGroup::new(ring);
    for b in &c.blocks {
        let key = match c.kind {
            FrobeniusKind::Khovanov => b.q_degrees[0],
            FrobeniusKind::Lee => b.q_degrees[0].rem_euclid(4),
        };
        for i in 0..=c.crossings {
            let rows = b.generators[i].len();
            let d_in = if i > 0 { b.differentials[i - 1].clone() } else { SparseIntMatrix::zeros(rows, 0) };
            let mut g = homology_of_pair(&d_in, &b.differentials[i])?;
            if ring == Ring::Q {
                g.torsion.clear();
            }
            out.insert(i as i64, key, g);
        }
    }
    Ok(out)
}

/// Unshifted Khovanov homology `H^{i,j}(D)`, streamed block by block.
pub fn diagram_homology(d: &LinkDiagram, ring: Ring, reduce: bool) -> Result<BigradedAbelianGroup> {
    check_cap(d, reduce)?;
    let spec = FrobeniusSpec::khovanov();
    let t = CubeTables::new(d)?;
    let mut out = BigradedAbelianGroup::new(ring);
    for js in block_sets(&t, FrobeniusKind::Khovanov) {
        let j = js[0];
        let b = Block::new(&t, js);
        let hs = if reduce {
            engine::block_homology_reduced(&b, &spec, ring)?
        } else {
            engine::block_homology_raw(&b, &spec, ring)?
        };
        for (i, g) in hs.into_iter().enumerate() {
            out.insert(i as i64, j, g);
        }
    }
    Ok(out)
}

/// Khovanov homology of the link: diagram homology with the orientation shift applied.
pub fn invariant_homology(d: &LinkDiagram, ring: Ring, reduce: bool) -> Result<BigradedAbelianGroup> {
    Ok(shift_to_invariant(&diagram_homology(d, ring, reduce)?, d.n_plus(), d.n_minus()))
}

/// Rational Lee homology ranks by unshifted homological degree.
pub fn lee_diagram_ranks(d: &LinkDiagram, reduce: bool) -> Result<BTreeMap<i64, usize>> {
    check_cap(d, reduce)?;
    let spec = FrobeniusSpec::lee();
    let t = CubeTables::new(d)?;
    let mut out: BTreeMap<i64, usize> = BTreeMap::new();
    for js in block_sets(&t, FrobeniusKind::Lee) {
        let b = Block::new(&t, js);
        let hs = if reduce {
            engine::block_homology_reduced(&b, &spec, Ring::Q)?
        } else {
            engine::block_homology_raw(&b, &spec, Ring::Q)?
        };
        for (i, g) in hs.into_iter().enumerate() {
            if g.free > 0 {
                *out.entry(i as i64).or_default() += g.free;
            }
        }
    }
    Ok(out)
}

/// Rational Lee homology ranks by invariant homological degree `i − n₋`.
pub fn lee_degree_ranks(d: &LinkDiagram, reduce: bool) -> Result<BTreeMap<i64, usize>> {
    let shift = d.n_minus() as i64;
    Ok(lee_diagram_ranks(d, reduce)?.into_iter().map(|(i, r)| (i - shift, r)).collect())
}

/// `𝓗^{i − n₋, j + n₊ − 2n₋} = H^{i,j}(D)`.
pub fn shift_to_invariant(h: &BigradedAbelianGroup, n_plus: usize, n_minus: usize) -> BigradedAbelianGroup {
    let (np, nm) = (n_plus as i64, n_minus as i64);
    h.shift(-nm, np - 2 * nm)
}

/// `Σ rank · t^i q^j` (torsion ignored).
pub fn poincare(h: &BigradedAbelianGroup) -> LaurentPoly2 {
    LaurentPoly2::from_terms(h.iter().map(|((i, j), g)| (i, j, g.free as i64)))
}

/// Number of occupied δ-diagonals, `δ = j − 2i`, over nonzero groups (torsion included).
pub fn delta_width(h: &BigradedAbelianGroup) -> Result<i64> {
    let deltas: Vec<i64> = h.iter().map(|((i, j), _)| j - 2 * i).collect();
    let (Some(&lo), Some(&hi)) = (deltas.iter().min(), deltas.iter().max()) else {
        return Err(Error::EmptyHomology);
    };
    Ok((hi - lo) / 2 + 1)
}

/// Outcome of the exact-triangle consistency check at one crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub crossing: usize,
    pub euler_ok: bool,
    pub bound_ok: bool,
    /// Bidegrees where `rank H(D) > rank H(D₀) + rank H(D₁)[1,1]`.
    pub violations: Vec<(i64, i64)>,
}

impl ConeReport {
    pub fn passed(&self) -> bool {
        self.euler_ok && self.bound_ok
    }
}

/// `χ(D) = χ(D₀) − q·χ(D₁)` and `rank H^{i,j}(D) ≤ rank H^{i,j}(D₀) + rank H^{i−1,j−1}(D₁)`,
/// all on unshifted rational diagram homology.
pub fn cone_check(d: &LinkDiagram, crossing: usize, reduce: bool) -> Result<ConeReport> {
    let h = diagram_homology(d, Ring::Q, reduce)?;
    let h0 = diagram_homology(&d.resolve(crossing, Smoothing::Zero)?, Ring::Q, reduce)?;
    let h1 = diagram_homology(&d.resolve(crossing, Smoothing::One)?, Ring::Q, reduce)?;
    let rhs = &h0.euler() - &h1.euler().shift(0, 1);
    let euler_ok = h.euler() == rhs;
    let violations: Vec<(i64, i64)> = h
        .iter()
        .map(|(k, _)| k)
        .filter(|&(i, j)| h.rank(i, j) > h0.rank(i, j) + h1.rank(i - 1, j - 1))
        .collect();
    Ok(ConeReport { crossing, euler_ok, bound_ok: violations.is_empty(), violations })
}

#[cfg(test)]
mod tests;

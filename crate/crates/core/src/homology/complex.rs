//! Generator layout of the cube complex and differentials built one homological degree
//! at a time.
//!
//! A *block* is a set of q-degrees closed under the differential: a single `j` for
//! Khovanov's algebra, a residue class of `j` mod 4 for Lee's. Inside a block the
//! generators of `C^i` are ordered by state, then by `j`, then by the colex rank of the
//! X-mask, so the index of a generator is computable without a lookup table.

use crate::algebra::{FrobeniusSpec, SparseIntMatrix};
use crate::cube::{Cube, EnhancedState, Label, ResolutionState};
use crate::diagram::{LinkDiagram, UnionFind};
use crate::{Error, Result};

/// Circle data for every state of the cube.
pub(crate) struct CubeTables {
    n: usize,
    edges: usize,
    ncirc: Vec<u8>,
    coe: Vec<u8>,
    by_weight: Vec<Vec<u32>>,
    binom: [[u32; 33]; 33],
    arcs: Vec<([usize; 2], [usize; 2])>,
}

/// Most circles any state may have (X-masks are `u32`).
const MAX_CIRCLES: usize = 31;

impl CubeTables {
    pub(crate) fn new(d: &LinkDiagram) -> Result<Self> {
        let cube = Cube::new(d)?;
        let n = cube.crossings();
        let edges = cube.edge_count();
        let states = 1usize << n;
        let mut ncirc = vec![0u8; states];
        let mut coe = vec![0u8; states * edges];
        let mut by_weight: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
        let mut uf = UnionFind::new(edges);
        for s in 0..states {
            let st = ResolutionState::new(s as u32, n);
            let cs = cube.circles_with(st, &mut uf);
            if cs.count() > MAX_CIRCLES {
                return Err(Error::CrossingCap { crossings: n, cap: MAX_CIRCLES, hint: " (too many circles in one state)" });
            }
            ncirc[s] = cs.count() as u8;
            for e in 0..edges {
                coe[s * edges + e] = cs.circle_of_edge(e) as u8;
            }
            by_weight[st.weight()].push(s as u32);
        }
        let mut binom = [[0u32; 33]; 33];
        for p in 0..33 {
            binom[p][0] = 1;
            for k in 1..=p {
                binom[p][k] = binom[p - 1][k - 1] + if k < p { binom[p - 1][k] } else { 0 };
            }
        }
        let arcs = (0..n).map(|c| cube.arc_edges(c)).collect();
        Ok(Self { n, edges, ncirc, coe, by_weight, binom, arcs })
    }

    pub(crate) fn crossings(&self) -> usize {
        self.n
    }

    pub(crate) fn circles(&self, s: u32) -> usize {
        self.ncirc[s as usize] as usize
    }

    fn coe(&self, s: u32) -> &[u8] {
        let s = s as usize;
        &self.coe[s * self.edges..(s + 1) * self.edges]
    }

    /// Every q-degree carried by some generator.
    pub(crate) fn q_degrees(&self) -> Vec<i64> {
        let mut js = std::collections::BTreeSet::new();
        for (w, states) in self.by_weight.iter().enumerate() {
            for &s in states {
                let c = self.circles(s) as i64;
                let w = w as i64;
                let mut j = w - c;
                while j <= w + c {
                    js.insert(j);
                    j += 2;
                }
            }
        }
        js.into_iter().collect()
    }

    /// Number of X labels for q-degree `j` on state `s`, if any generator exists.
    fn x_count(&self, s: u32, j: i64) -> Option<u32> {
        let w = s.count_ones() as i64;
        let c = self.circles(s) as i64;
        let twice = w + c - j;
        if twice < 0 || twice % 2 != 0 || twice / 2 > c {
            None
        } else {
            Some((twice / 2) as u32)
        }
    }

    fn colex(&self, mut mask: u32) -> u32 {
        let mut r = 0;
        let mut k = 1;
        while mask != 0 {
            let p = mask.trailing_zeros() as usize;
            r += self.binom[p][k];
            k += 1;
            mask &= mask - 1;
        }
        r
    }

    fn transitions(&self, s: u32) -> Vec<Transition> {
        let from = self.coe(s);
        let mut out = Vec::new();
        let mut sign = 1i64;
        for c in 0..self.n {
            if s >> c & 1 == 1 {
                sign = -sign;
                continue;
            }
            let t = s | 1 << c;
            let to = self.coe(t);
            let mut map = [0u8; 32];
            for e in 0..self.edges {
                map[from[e] as usize] = to[e];
            }
            let ([a, u], [p, r]) = self.arcs[c];
            let (ca, cu) = (from[a], from[u]);
            let tr = if ca != cu {
                Transition { target: t, sign, merge: true, a: ca, b: cu, n1: to[a], n2: to[a], map }
            } else {
                Transition { target: t, sign, merge: false, a: ca, b: ca, n1: to[p], n2: to[r], map }
            };
            out.push(tr);
        }
        out
    }
}

#[derive(Clone, Copy)]
struct Transition {
    target: u32,
    sign: i64,
    merge: bool,
    a: u8,
    b: u8,
    n1: u8,
    n2: u8,
    map: [u8; 32],
}

fn bit(l: Label, at: u8) -> u32 {
    if l == Label::X { 1 << at } else { 0 }
}

fn label(mask: u32, at: u8) -> Label {
    if mask >> at & 1 == 1 { Label::X } else { Label::One }
}

impl Transition {
    fn apply(&self, mask: u32, spec: &FrobeniusSpec, out: &mut Vec<(u32, i64)>) {
        out.clear();
        let mut rest = 0u32;
        let mut m = mask & !(1 << self.a) & !(1 << self.b);
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            rest |= 1 << self.map[k];
            m &= m - 1;
        }
        if self.merge {
            for &(l, c) in spec.m(label(mask, self.a), label(mask, self.b)) {
                out.push((rest | bit(l, self.n1), c * self.sign));
            }
        } else {
            for &((l1, l2), c) in spec.delta(label(mask, self.a)) {
                out.push((rest | bit(l1, self.n1) | bit(l2, self.n2), c * self.sign));
            }
        }
    }
}

/// One block of the complex: offsets of every state's generators inside its `C^i`.
pub(crate) struct Block<'a> {
    t: &'a CubeTables,
    js: Vec<i64>,
    base: Vec<u32>,
    sizes: Vec<usize>,
}

impl<'a> Block<'a> {
    pub(crate) fn new(t: &'a CubeTables, js: Vec<i64>) -> Self {
        let mut base = vec![0u32; 1 << t.n];
        let mut sizes = vec![0usize; t.n + 1];
        for (w, states) in t.by_weight.iter().enumerate() {
            let mut acc = 0usize;
            for &s in states {
                base[s as usize] = acc as u32;
                let c = t.circles(s);
                for &j in &js {
                    if let Some(x) = t.x_count(s, j) {
                        acc += t.binom[c][x as usize] as usize;
                    }
                }
            }
            assert!(acc <= u32::MAX as usize, "chain group too large");
            sizes[w] = acc;
        }
        Self { t, js, base, sizes }
    }

    pub(crate) fn is_filtered(&self) -> bool {
        self.js.len() > 1
    }

    pub(crate) fn size(&self, i: usize) -> usize {
        self.sizes.get(i).copied().unwrap_or(0)
    }

    pub(crate) fn max_degree(&self) -> usize {
        self.t.n
    }

    fn index(&self, s: u32, j: i64, mask: u32) -> u32 {
        let c = self.t.circles(s);
        let mut off = self.base[s as usize];
        for &j2 in &self.js {
            if j2 == j {
                break;
            }
            if let Some(x) = self.t.x_count(s, j2) {
                off += self.t.binom[c][x as usize];
            }
        }
        off + self.t.colex(mask)
    }

    /// Calls `f(index, state, j, mask)` for every generator of `C^i`, in index order.
    fn for_each_generator(&self, i: usize, mut f: impl FnMut(u32, u32, i64, u32)) {
        let mut idx = 0u32;
        for &s in &self.t.by_weight[i] {
            let c = self.t.circles(s) as u32;
            for &j in &self.js {
                let Some(x) = self.t.x_count(s, j) else { continue };
                let mut mask: u32 = if x == 0 { 0 } else { (1u32 << x) - 1 };
                loop {
                    f(idx, s, j, mask);
                    idx += 1;
                    if x == 0 || x == c {
                        break;
                    }
                    // Next mask with the same popcount (Gosper).
                    let lo = mask & mask.wrapping_neg();
                    let r = mask + lo;
                    mask = (((r ^ mask) >> 2) / lo) | r;
                    if mask >> c != 0 {
                        break;
                    }
                }
            }
        }
    }

    /// q-degree of every generator of `C^i`, in index order.
    pub(crate) fn levels(&self, i: usize) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.size(i));
        if i <= self.t.n {
            self.for_each_generator(i, |_, _, j, _| out.push(j as i32));
        }
        out
    }

    pub(crate) fn generators(&self, i: usize) -> Vec<EnhancedState> {
        let n = self.t.n;
        let mut out = Vec::with_capacity(self.size(i));
        if i <= n {
            self.for_each_generator(i, |_, s, _, mask| {
                out.push(EnhancedState {
                    state: ResolutionState::new(s, n),
                    circles: self.t.circles(s) as u32,
                    x_mask: mask,
                })
            });
        }
        out
    }

    /// `d: C^i → C^{i+1}` on the listed columns (all of `C^i` if `keep` is `None`;
    /// otherwise `keep` must be increasing). Rows are all of `C^{i+1}`.
    pub(crate) fn differential(&self, i: usize, spec: &FrobeniusSpec, keep: Option<&[u32]>) -> SparseIntMatrix {
        let rows = self.size(i + 1);
        let ncols = keep.map_or(self.size(i), |k| k.len());
        if i > self.t.n {
            return SparseIntMatrix::zeros(rows, ncols);
        }
        let mut columns: Vec<Vec<(u32, i64)>> = Vec::with_capacity(ncols);
        let mut cur_state = u32::MAX;
        let mut trs: Vec<Transition> = Vec::new();
        let mut images: Vec<(u32, i64)> = Vec::with_capacity(4);
        let mut next_keep = 0usize;
        self.for_each_generator(i, |idx, s, _j, mask| {
            if let Some(k) = keep {
                if next_keep >= k.len() || k[next_keep] != idx {
                    return;
                }
                next_keep += 1;
            }
            if s != cur_state {
                cur_state = s;
                trs = if i < self.t.n { self.t.transitions(s) } else { Vec::new() };
            }
            let mut col: Vec<(u32, i64)> = Vec::with_capacity(2 * trs.len());
            for tr in &trs {
                tr.apply(mask, spec, &mut images);
                let w2 = (i + 1) as i64;
                let c2 = self.t.circles(tr.target) as i64;
                for &(m2, coeff) in &images {
                    let j2 = w2 + c2 - 2 * m2.count_ones() as i64;
                    debug_assert!(self.js.contains(&j2), "differential leaves its block");
                    col.push((self.index(tr.target, j2, m2), coeff));
                }
            }
            columns.push(col);
        });
        debug_assert_eq!(columns.len(), ncols);
        SparseIntMatrix::from_columns(rows, columns)
    }
}

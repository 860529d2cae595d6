//! The cube of resolutions: states, their circles, enhanced states and the
//! merge/split type of every cube edge.

use crate::diagram::{LinkDiagram, Smoothing, UnionFind};
use crate::{Error, Result};

/// Hard cap on crossings: states are `u32` bitmasks and are streamed, never stored.
pub const MAX_CROSSINGS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionState {
    bits: u32,
    len: u8,
}

impl ResolutionState {
    pub fn new(bits: u32, len: usize) -> Self {
        debug_assert!(len <= MAX_CROSSINGS && (len == 32 || bits >> len == 0));
        Self { bits, len: len as u8 }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, c: usize) -> bool {
        self.bits >> c & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Number of 1-bits strictly before crossing `c`; fixes the edge sign.
    pub fn ones_before(&self, c: usize) -> usize {
        (self.bits & ((1u32 << c) - 1)).count_ones() as usize
    }

    pub fn with_one(&self, c: usize) -> Self {
        Self { bits: self.bits | 1 << c, len: self.len }
    }
}

impl std::fmt::Display for ResolutionState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // Highest crossing first, so the string reads as the binary number.
        for c in (0..self.len()).rev() {
            write!(f, "{}", if self.bit(c) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleSet {
    count: usize,
    circle_of_edge: Vec<usize>,
}

impl CircleSet {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn circle_of_edge(&self, e: usize) -> usize {
        self.circle_of_edge[e]
    }

    /// Lowest edge on each circle.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.count];
        for (e, &c) in self.circle_of_edge.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = e;
            }
        }
        reps
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    One,
    X,
}

impl Label {
    /// q-degree contribution.
    pub fn degree(self) -> i64 {
        match self {
            Label::One => 1,
            Label::X => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigrading {
    pub i: i64,
    pub j: i64,
}

/// A state plus a label per circle; bit `k` of `x_mask` set means circle `k` carries X.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub state: ResolutionState,
    pub circles: u32,
    pub x_mask: u32,
}

impl EnhancedState {
    pub fn label(&self, circle: usize) -> Label {
        if self.x_mask >> circle & 1 == 1 { Label::X } else { Label::One }
    }

    pub fn bigrading(&self) -> Bigrading {
        let w = self.state.weight() as i64;
        let xs = self.x_mask.count_ones() as i64;
        let ones = self.circles as i64 - xs;
        Bigrading { i: w, j: w + ones - xs }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Merge,
    Split,
}

/// How the circles of `s` relate to those of `s + e_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub kind: EdgeKind,
    /// Old circle id → new circle id (for a split, the split circle maps to `to.0`).
    pub map: Vec<usize>,
    /// Merge: the two old circles. Split: the one old circle twice.
    pub from: (usize, usize),
    /// Merge: the new circle twice. Split: the two new circles.
    pub to: (usize, usize),
}

/// Per-diagram precomputation for walking the cube quickly.
#[derive(Clone, Debug)]
pub struct Cube {
    n: usize,
    edges: usize,
    /// `arcs[x][bit]`: the two edge pairs joined by smoothing `bit` at crossing `x`.
    arcs: Vec<[[(usize, usize); 2]; 2]>,
}

impl Cube {
    pub fn new(d: &LinkDiagram) -> Result<Self> {
        let n = d.crossing_count();
        if n > MAX_CROSSINGS {
            return Err(Error::CrossingCap { crossings: n, cap: MAX_CROSSINGS, hint: "" });
        }
        let arcs = d
            .crossings()
            .iter()
            .map(|c| {
                let side = |s: Smoothing| {
                    let [(a, b), (u, v)] = c.arcs(s);
                    [(c.slots[a], c.slots[b]), (c.slots[u], c.slots[v])]
                };
                [side(Smoothing::Zero), side(Smoothing::One)]
            })
            .collect();
        Ok(Self { n, edges: d.edge_count(), arcs })
    }

    pub fn crossings(&self) -> usize {
        self.n
    }

    pub fn state_count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn states(&self) -> impl Iterator<Item = ResolutionState> {
        let n = self.n;
        (0..1u64 << n).map(move |b| ResolutionState::new(b as u32, n))
    }

    pub fn circles(&self, s: ResolutionState) -> CircleSet {
        let mut uf = UnionFind::new(self.edges);
        self.circles_with(s, &mut uf)
    }

    pub(crate) fn circles_with(&self, s: ResolutionState, uf: &mut UnionFind) -> CircleSet {
        uf.reset(self.edges);
        for (x, arcs) in self.arcs.iter().enumerate() {
            for &(a, b) in &arcs[s.bit(x) as usize] {
                uf.union(a, b);
            }
        }
        let mut id_of_root = vec![usize::MAX; self.edges];
        let mut circle_of_edge = vec![0; self.edges];
        let mut count = 0;
        for e in 0..self.edges {
            let r = uf.find(e);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = count;
                count += 1;
            }
            circle_of_edge[e] = id_of_root[r];
        }
        CircleSet { count, circle_of_edge }
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.edges
    }

    /// One edge on each 0-smoothing arc and one edge on each 1-smoothing arc at `c`.
    pub(crate) fn arc_edges(&self, c: usize) -> ([usize; 2], [usize; 2]) {
        let [(a, _), (u, _)] = self.arcs[c][0];
        let [(p, _), (r, _)] = self.arcs[c][1];
        ([a, u], [p, r])
    }

    /// Merge iff the two arcs at `c` lie on different circles of the 0-side state.
    pub fn edge_kind(&self, c: usize, circles: &CircleSet) -> EdgeKind {
        let [(a, _), (u, _)] = self.arcs[c][0];
        if circles.circle_of_edge(a) != circles.circle_of_edge(u) {
            EdgeKind::Merge
        } else {
            EdgeKind::Split
        }
    }

    /// Circle correspondence along the cube edge `s → s + e_c` (`s[c]` must be 0).
    pub fn transition(&self, c: usize, from: &CircleSet, to: &CircleSet) -> Transition {
        let [(a, _), (u, _)] = self.arcs[c][0];
        let reps = from.representatives();
        let mut map: Vec<usize> = reps.iter().map(|&e| to.circle_of_edge(e)).collect();
        let (ca, cu) = (from.circle_of_edge(a), from.circle_of_edge(u));
        if ca != cu {
            let m = to.circle_of_edge(a);
            map[ca] = m;
            map[cu] = m;
            Transition { kind: EdgeKind::Merge, map, from: (ca, cu), to: (m, m) }
        } else {
            let [(p, _), (r, _)] = self.arcs[c][1];
            let (n1, n2) = (to.circle_of_edge(p), to.circle_of_edge(r));
            debug_assert_ne!(n1, n2);
            let (n1, n2) = (n1.min(n2), n1.max(n2));
            map[ca] = n1;
            Transition { kind: EdgeKind::Split, map, from: (ca, ca), to: (n1, n2) }
        }
    }
}

/// All `2^n` states in increasing binary order.
pub fn enumerate_states(d: &LinkDiagram) -> Result<impl Iterator<Item = ResolutionState>> {
    Ok(Cube::new(d)?.states())
}

pub fn circles(d: &LinkDiagram, s: ResolutionState) -> Result<CircleSet> {
    Ok(Cube::new(d)?.circles(s))
}

/// The `2^{#circles}` enhanced states over `s`, in increasing X-mask order.
pub fn basis(d: &LinkDiagram, s: ResolutionState) -> Result<Vec<EnhancedState>> {
    let k = Cube::new(d)?.circles(s).count() as u32;
    Ok((0..1u32 << k).map(|m| EnhancedState { state: s, circles: k, x_mask: m }).collect())
}

pub fn edge_map_kind(d: &LinkDiagram, s: ResolutionState, c: usize) -> Result<EdgeKind> {
    if c >= d.crossing_count() {
        return Err(Error::UnknownCrossing(c));
    }
    if s.bit(c) {
        return Err(Error::NotAZeroEdge(c));
    }
    let cube = Cube::new(d)?;
    let circ = cube.circles(s);
    Ok(cube.edge_kind(c, &circ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BraidWord;

    fn hopf() -> LinkDiagram {
        BraidWord::torus(2, 2).unwrap().close()
    }

    fn st(bits: &str) -> ResolutionState {
        let n = bits.len();
        let b = u32::from_str_radix(bits, 2).unwrap();
        ResolutionState::new(b, n)
    }

    #[test]
    fn state_enumeration() {
        let s: Vec<String> = enumerate_states(&hopf()).unwrap().map(|s| s.to_string()).collect();
        assert_eq!(s, ["00", "01", "10", "11"]);
        assert_eq!(enumerate_states(&LinkDiagram::unknot()).unwrap().count(), 1);
        let t34 = BraidWord::torus(3, 4).unwrap().close();
        assert_eq!(enumerate_states(&t34).unwrap().count(), 256);
    }

    #[test]
    fn crossing_cap() {
        let big = BraidWord::torus(2, 31).unwrap().close();
        assert!(matches!(Cube::new(&big), Err(Error::CrossingCap { .. })));
    }

    #[test]
    fn hopf_circles() {
        let d = hopf();
        assert_eq!(circles(&d, st("00")).unwrap().count(), 2);
        assert_eq!(circles(&d, st("11")).unwrap().count(), 2);
        assert_eq!(circles(&d, st("01")).unwrap().count(), 1);
        assert_eq!(circles(&d, st("10")).unwrap().count(), 1);
    }

    #[test]
    fn basis_gradings() {
        let d = hopf();
        let mut js: Vec<i64> = basis(&d, st("11")).unwrap().iter().map(|e| e.bigrading().j).collect();
        js.sort();
        assert_eq!(js, [0, 2, 2, 4]);

        let u = LinkDiagram::unknot();
        let g: Vec<Bigrading> = basis(&u, ResolutionState::new(0, 0)).unwrap().iter().map(|e| e.bigrading()).collect();
        assert_eq!(g, [Bigrading { i: 0, j: 1 }, Bigrading { i: 0, j: -1 }]);

        let two = basis(&d, st("00")).unwrap();
        let mut degs: Vec<i64> = two.iter().map(|e| e.bigrading().j).collect();
        degs.sort();
        assert_eq!(degs, [-2, 0, 0, 2]);
    }

    #[test]
    fn edge_kinds() {
        let d = hopf();
        assert_eq!(edge_map_kind(&d, st("00"), 0).unwrap(), EdgeKind::Merge);
        assert_eq!(edge_map_kind(&d, st("00"), 1).unwrap(), EdgeKind::Merge);
        assert_eq!(edge_map_kind(&d, st("10"), 0).unwrap(), EdgeKind::Split);
        assert!(matches!(edge_map_kind(&d, st("10"), 1), Err(Error::NotAZeroEdge(1))));

        let kink = BraidWord::parse("1", 2).unwrap().close();
        let a = circles(&kink, st("0")).unwrap().count() as i64;
        let b = circles(&kink, st("1")).unwrap().count() as i64;
        assert_eq!((a - b).abs(), 1);
    }

    #[test]
    fn every_cube_edge_changes_circle_count_by_one() {
        for (p, q) in [(2, 3), (3, 3), (3, 4), (4, 2)] {
            let d = BraidWord::torus(p, q).unwrap().close();
            let cube = Cube::new(&d).unwrap();
            for s in cube.states() {
                let cs = cube.circles(s);
                for c in 0..cube.crossings() {
                    if s.bit(c) {
                        continue;
                    }
                    let ct = cube.circles(s.with_one(c));
                    assert_eq!((cs.count() as i64 - ct.count() as i64).abs(), 1);
                    let t = cube.transition(c, &cs, &ct);
                    match t.kind {
                        EdgeKind::Merge => assert_eq!(ct.count() + 1, cs.count()),
                        EdgeKind::Split => assert_eq!(ct.count(), cs.count() + 1),
                    }
                }
            }
        }
    }
}

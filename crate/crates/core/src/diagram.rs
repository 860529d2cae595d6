//! Braid words, their closures as oriented link diagrams, orientation reversal and
//! single-crossing resolution.
//!
//! A diagram is stored PD-style: every crossing has four slots (bottom-left,
//! bottom-right, top-left, top-right) each holding an edge id, and every edge knows its
//! two ends. Edges without ends are free loops. Crossing order is the letter order of
//! the braid word the diagram came from; resolutions keep the remaining crossings in
//! the same order.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

pub const BL: usize = 0;
pub const BR: usize = 1;
pub const TL: usize = 2;
pub const TR: usize = 3;

/// Slot reached by continuing straight through the crossing.
pub const fn opposite(slot: usize) -> usize {
    3 - slot
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        for &l in &letters {
            if l == 0 {
                return Err(Error::ZeroLetter);
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(Error::LetterOutOfRange { letter: l as i64, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    /// Whitespace-separated signed generators, e.g. `"1 -2 1"`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| tok.parse::<i64>().map_err(|_| Error::BadToken(tok.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        for &l in &letters {
            if l == 0 {
                return Err(Error::ZeroLetter);
            }
            if l.unsigned_abs() >= strands as u64 {
                return Err(Error::LetterOutOfRange { letter: l, strands });
            }
        }
        Ok(Self { strands, letters: letters.into_iter().map(|l| l as i32).collect() })
    }

    /// `(σ_1 σ_2 … σ_{p-1})^q`.
    pub fn torus(p: usize, q: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::TorusRange("p must be at least 1".into()));
        }
        let letters = (0..q).flat_map(|_| 1..p as i32).collect();
        Self::new(p, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Where each starting position ends up after running through the word.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = strand
        for &l in &self.letters {
            let a = l.unsigned_abs() as usize - 1;
            at.swap(a, a + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn cycle_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for s in 0..perm.len() {
            if !seen[s] {
                cycles += 1;
                let mut t = s;
                while !seen[t] {
                    seen[t] = true;
                    t = perm[t];
                }
            }
        }
        cycles
    }

    /// Closure with all strands running upwards; letter order is crossing order.
    pub fn close(&self) -> LinkDiagram {
        let p = self.strands;
        let mut edges: Vec<[Option<End>; 2]> = vec![[None, None]; p];
        let mut cur: Vec<usize> = (0..p).collect();
        let mut crossings = Vec::with_capacity(self.letters.len());
        let mut seen_type = vec![0usize; p];

        for (x, &l) in self.letters.iter().enumerate() {
            let a = l.unsigned_abs() as usize - 1;
            seen_type[a] += 1;
            let (e0, e1) = (cur[a], cur[a + 1]);
            edges[e0][1] = Some(End { crossing: x, slot: BL });
            edges[e1][1] = Some(End { crossing: x, slot: BR });
            let (f0, f1) = (edges.len(), edges.len() + 1);
            edges.push([Some(End { crossing: x, slot: TL }), None]);
            edges.push([Some(End { crossing: x, slot: TR }), None]);
            cur[a] = f0;
            cur[a + 1] = f1;
            crossings.push(Crossing {
                id: x,
                position: Some((a + 1, seen_type[a])),
                slots: [e0, e1, f0, f1],
                over: if l > 0 { Over::Rising } else { Over::Falling },
            });
        }

        // Glue the top of each position back onto its bottom edge.
        let mut alias: Vec<usize> = (0..edges.len()).collect();
        for pos in 0..p {
            let top = cur[pos];
            if top != pos {
                edges[pos][0] = edges[top][0];
                alias[top] = pos;
            }
        }
        let mut renumber = vec![usize::MAX; edges.len()];
        let mut next = 0;
        for e in 0..edges.len() {
            if alias[e] == e {
                renumber[e] = next;
                next += 1;
            }
        }
        let new_id = |e: usize| renumber[alias[e]];
        let mut final_edges = Vec::with_capacity(next);
        for e in 0..edges.len() {
            if alias[e] == e {
                final_edges.push(match edges[e] {
                    [Some(t), Some(h)] => Some([t, h]),
                    [None, None] => None,
                    _ => unreachable!("half-attached edge in braid closure"),
                });
            }
        }
        for c in crossings.iter_mut() {
            for s in c.slots.iter_mut() {
                *s = new_id(*s);
            }
        }
        let strand_edges = (0..p).map(new_id).collect();
        LinkDiagram::assemble(crossings, final_edges, BTreeSet::new(), Some(strand_edges))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "[{} strands] {}", self.strands, s.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub crossing: usize,
    pub slot: usize,
}

/// Which strand passes over: `Rising` runs bottom-left → top-right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Over {
    Rising,
    Falling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    Zero,
    One,
}

impl Smoothing {
    pub fn from_bit(bit: bool) -> Self {
        if bit { Smoothing::One } else { Smoothing::Zero }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Stable id: index of the letter this crossing came from.
    pub id: usize,
    /// `(i, α)`: α-th occurrence of σ_i in letter order, for braid-derived crossings.
    pub position: Option<(usize, usize)>,
    pub slots: [usize; 4],
    pub over: Over,
}

impl Crossing {
    /// Slot pairs joined by the given smoothing. The 0-smoothing of a braid-positive
    /// crossing is the vertical (oriented) one.
    pub fn arcs(&self, s: Smoothing) -> [(usize, usize); 2] {
        let vertical = [(BL, TL), (BR, TR)];
        let horizontal = [(BL, BR), (TL, TR)];
        match (s, self.over) {
            (Smoothing::Zero, Over::Rising) | (Smoothing::One, Over::Falling) => vertical,
            _ => horizontal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    /// `[tail, head]` in the base orientation; `None` marks a free loop.
    edges: Vec<Option<[End; 2]>>,
    reversed: BTreeSet<usize>,
    comp_of_edge: Vec<usize>,
    components: Vec<usize>,
    strand_edges: Option<Vec<usize>>,
}

impl LinkDiagram {
    fn assemble(
        crossings: Vec<Crossing>,
        edges: Vec<Option<[End; 2]>>,
        reversed: BTreeSet<usize>,
        strand_edges: Option<Vec<usize>>,
    ) -> Self {
        let mut uf = UnionFind::new(edges.len());
        for c in &crossings {
            uf.union(c.slots[BL], c.slots[TR]);
            uf.union(c.slots[BR], c.slots[TL]);
        }
        let mut min_of_root = vec![usize::MAX; edges.len()];
        for e in 0..edges.len() {
            let r = uf.find(e);
            min_of_root[r] = min_of_root[r].min(e);
        }
        let comp_of_edge: Vec<usize> = (0..edges.len()).map(|e| min_of_root[uf.find(e)]).collect();
        let components: Vec<usize> = comp_of_edge.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        Self { crossings, edges, reversed, comp_of_edge, components, strand_edges }
    }

    pub fn unknot() -> Self {
        BraidWord::new(1, vec![]).expect("valid").close()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ends(&self, e: usize) -> Option<[End; 2]> {
        self.edges[e]
    }

    /// Component ids, each the minimal edge id of its component.
    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of_edge(&self, e: usize) -> usize {
        self.comp_of_edge[e]
    }

    pub fn reversed(&self) -> &BTreeSet<usize> {
        &self.reversed
    }

    /// Component through braid position `pos` at the closure base, for braid closures.
    pub fn strand_component(&self, pos: usize) -> Option<usize> {
        self.strand_edges.as_ref()?.get(pos).map(|&e| self.comp_of_edge[e])
    }

    pub fn crossing_index(&self, id: usize) -> Option<usize> {
        self.crossings.iter().position(|c| c.id == id)
    }

    /// Id of the crossing at braid position `(i, α)`.
    pub fn crossing_at(&self, i: usize, alpha: usize) -> Option<usize> {
        self.crossings.iter().find(|c| c.position == Some((i, alpha))).map(|c| c.id)
    }

    /// `(tail, head)` of an edge in the effective orientation.
    fn oriented_ends(&self, e: usize) -> Option<(End, End)> {
        let [t, h] = self.edges[e]?;
        if self.reversed.contains(&self.comp_of_edge[e]) {
            Some((h, t))
        } else {
            Some((t, h))
        }
    }

    /// Sign of the crossing at position `x` in crossing order.
    pub fn sign(&self, x: usize) -> i8 {
        let c = &self.crossings[x];
        let enters = |slot: usize| {
            let (_, head) = self.oriented_ends(c.slots[slot]).expect("crossing edge has ends");
            head == End { crossing: x, slot }
        };
        // Direction vectors in the square BL=(-1,-1), BR=(1,-1), TL=(-1,1), TR=(1,1).
        let rising: (i32, i32) = if enters(BL) { (1, 1) } else { (-1, -1) };
        let falling: (i32, i32) = if enters(BR) { (-1, 1) } else { (1, -1) };
        let (over, under) = match c.over {
            Over::Rising => (rising, falling),
            Over::Falling => (falling, rising),
        };
        let cross = over.0 * under.1 - over.1 * under.0;
        if cross > 0 { 1 } else { -1 }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.crossings.len()).map(|x| self.sign(x)).collect()
    }

    pub fn n_plus(&self) -> usize {
        self.signs().iter().filter(|&&s| s > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs().iter().filter(|&&s| s < 0).count()
    }

    /// Toggles the orientation of each listed component.
    pub fn reverse_orientation(&self, comps: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for &c in comps {
            if self.components.binary_search(&c).is_err() {
                return Err(Error::UnknownComponent(c));
            }
            if !out.reversed.remove(&c) {
                out.reversed.insert(c);
            }
        }
        Ok(out)
    }

    /// `T'(2k, 2kn)`: the closure of the `(2k, 2kn)` torus braid with the components
    /// through braid positions `0, 2, …, 2k − 2` reversed.
    pub fn torus_prime(k: usize, n: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::TorusRange("k must be at least 1".into()));
        }
        let d = BraidWord::torus(2 * k, 2 * k * n)?.close();
        let comps: Vec<usize> = (0..k).filter_map(|s| d.strand_component(2 * s)).collect();
        d.reverse_orientation(&comps)
    }

    /// Removes crossing `id` by the given smoothing. Each new component is oriented
    /// like the lowest-numbered old edge it contains.
    pub fn resolve(&self, id: usize, smoothing: Smoothing) -> Result<Self> {
        let x = self.crossing_index(id).ok_or(Error::UnknownCrossing(id))?;
        let cr = &self.crossings[x];
        let arcs = cr.arcs(smoothing);
        let pair = |slot: usize| -> usize {
            arcs.iter()
                .find_map(|&(a, b)| if a == slot { Some(b) } else if b == slot { Some(a) } else { None })
                .expect("every slot is on an arc")
        };

        let n_old = self.edges.len();
        let mut uf = UnionFind::new(n_old);
        for &(a, b) in &arcs {
            uf.union(cr.slots[a], cr.slots[b]);
        }
        let mut class_min = vec![usize::MAX; n_old];
        for e in 0..n_old {
            let r = uf.find(e);
            class_min[r] = class_min[r].min(e);
        }
        let mut mins: Vec<usize> = (0..n_old).filter(|&e| class_min[uf.find(e)] == e).collect();
        mins.sort_unstable();
        let mut new_of_min = vec![usize::MAX; n_old];
        for (i, &m) in mins.iter().enumerate() {
            new_of_min[m] = i;
        }
        let new_edge = |e: usize, uf: &mut UnionFind| new_of_min[class_min[uf.find(e)]];

        let shift = |c: usize| if c > x { c - 1 } else { c };

        // Walk each chain to find its surviving ends and preferred direction.
        let mut new_edges: Vec<Option<[End; 2]>> = vec![None; mins.len()];
        for (ni, &m) in mins.iter().enumerate() {
            let Some([t0, h0]) = self.edges[m] else { continue };
            // Walk from the tail side of the chain through `m`.
            let start = self.chain_end(t0, x, &pair);
            let finish = self.chain_end(h0, x, &pair);
            let (Some(start), Some(finish)) = (start, finish) else { continue };
            // The old edge `m` is traversed start→finish; keep its effective direction.
            let forward = !self.reversed.contains(&self.comp_of_edge[m]);
            let (a, b) = if forward { (start, finish) } else { (finish, start) };
            let a = End { crossing: shift(a.crossing), slot: a.slot };
            let b = End { crossing: shift(b.crossing), slot: b.slot };
            new_edges[ni] = Some([a, b]);
        }

        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != x)
            .map(|(_, c)| {
                let mut c = c.clone();
                for s in c.slots.iter_mut() {
                    *s = new_edge(*s, &mut uf);
                }
                c
            })
            .collect();

        let mut d = LinkDiagram::assemble(crossings, new_edges, BTreeSet::new(), None);
        d.orient_components();
        Ok(d)
    }

    /// Follows the chain of old edges through the removed crossing `x` starting at end
    /// `from`, returning the first end on a surviving crossing (None for a closed loop).
    fn chain_end(&self, from: End, x: usize, pair: &dyn Fn(usize) -> usize) -> Option<End> {
        let mut end = from;
        let mut steps = 0;
        while end.crossing == x {
            let s = pair(end.slot);
            let e = self.crossings[x].slots[s];
            let [a, b] = self.edges[e].expect("crossing edge has ends");
            let here = End { crossing: x, slot: s };
            end = if a == here { b } else { a };
            steps += 1;
            if steps > 4 {
                return None;
            }
        }
        Some(end)
    }

    /// Makes the base orientation consistent along every component, keeping the
    /// direction of the component's lowest edge.
    fn orient_components(&mut self) {
        let mut done = vec![false; self.edges.len()];
        for &comp in &self.components.clone() {
            if self.edges[comp].is_none() || done[comp] {
                continue;
            }
            let mut e = comp;
            loop {
                done[e] = true;
                let [_, head] = self.edges[e].expect("non-loop edge");
                let next_slot = opposite(head.slot);
                let next = self.crossings[head.crossing].slots[next_slot];
                let want_tail = End { crossing: head.crossing, slot: next_slot };
                let [t, h] = self.edges[next].expect("non-loop edge");
                if t != want_tail {
                    debug_assert_eq!(h, want_tail);
                    self.edges[next] = Some([h, t]);
                }
                if next == comp {
                    break;
                }
                e = next;
            }
        }
    }

    /// Deterministic text form used as a cache key.
    pub fn canonical(&self) -> String {
        let mut recs: Vec<String> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(x, c)| {
                let over = if c.over == Over::Rising { 'R' } else { 'F' };
                let sign = if self.sign(x) > 0 { '+' } else { '-' };
                format!("{}:{},{},{},{}:{}{}", c.id, c.slots[0], c.slots[1], c.slots[2], c.slots[3], over, sign)
            })
            .collect();
        recs.sort();
        let loops = self.edges.iter().filter(|e| e.is_none()).count();
        format!("edges={};loops={};{}", self.edges.len(), loops, recs.join(";"))
    }

    /// Internal consistency: every slot's edge has that end, orientation runs through
    /// each crossing.
    pub fn validate(&self) -> bool {
        for (x, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let Some([t, h]) = self.edges[c.slots[s]] else { return false };
                let here = End { crossing: x, slot: s };
                if t != here && h != here {
                    return false;
                }
            }
        }
        for e in 0..self.edges.len() {
            if let Some([t, h]) = self.edges[e] {
                if t == h || self.crossings[t.crossing].slots[t.slot] != e || self.crossings[h.crossing].slots[h.slot] != e {
                    return false;
                }
                let next = self.crossings[h.crossing].slots[opposite(h.slot)];
                match self.edges[next] {
                    Some([nt, _]) if nt == (End { crossing: h.crossing, slot: opposite(h.slot) }) => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n);
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            if ra < rb {
                self.parent[rb] = ra;
            } else {
                self.parent[ra] = rb;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    #[test]
    fn parse_examples() {
        let b = BraidWord::parse("1 2 1 2 1 2", 3).unwrap();
        assert_eq!(b.letters(), &[1, 2, 1, 2, 1, 2]);
        assert_eq!(b.strands(), 3);

        let e = BraidWord::parse("", 2).unwrap();
        assert!(e.letters().is_empty());
        assert_eq!(e.close().component_count(), 2);

        assert!(matches!(BraidWord::parse("3", 3), Err(Error::LetterOutOfRange { .. })));
        assert!(matches!(BraidWord::parse("1 0", 3), Err(Error::ZeroLetter)));
        assert!(matches!(BraidWord::parse("1 x", 3), Err(Error::BadToken(_))));
        assert!(matches!(BraidWord::parse("-3", 3), Err(Error::LetterOutOfRange { .. })));
    }

    #[test]
    fn torus_words() {
        assert_eq!(BraidWord::torus(2, 2).unwrap().letters(), &[1, 1]);
        let t34 = BraidWord::torus(3, 4).unwrap();
        assert_eq!(t34.letters().len(), 8);
        assert_eq!(t34.letters(), &[1, 2, 1, 2, 1, 2, 1, 2]);
        let d44 = BraidWord::torus(4, 4).unwrap().close();
        assert_eq!(d44.crossing_count(), 12);
        assert_eq!(d44.n_plus(), 12);
        assert_eq!(d44.n_minus(), 0);
    }

    #[test]
    fn closure_components_match_gcd() {
        for p in 1..=5 {
            for q in 0..=8 {
                let b = BraidWord::torus(p, q).unwrap();
                let d = b.close();
                assert!(d.validate(), "T({p},{q})");
                let expect = if q == 0 { p } else { gcd(p, q) };
                assert_eq!(d.component_count(), expect, "T({p},{q})");
                assert_eq!(b.cycle_count(), expect);
                assert_eq!(d.crossing_count(), (p - 1) * q);
                assert!(d.signs().iter().all(|&s| s == 1));
            }
        }
    }

    #[test]
    fn reverse_t44_alternating() {
        let d = BraidWord::torus(4, 4).unwrap().close();
        let comps = [d.strand_component(0).unwrap(), d.strand_component(2).unwrap()];
        let r = d.reverse_orientation(&comps).unwrap();
        assert_eq!((r.n_plus(), r.n_minus()), (4, 8));
        assert!(r.validate());

        let none = d.reverse_orientation(&[]).unwrap();
        assert_eq!(none.n_plus(), 12);

        let all = d.reverse_orientation(d.components()).unwrap();
        assert_eq!(all.signs(), d.signs());

        let back = r.reverse_orientation(&comps).unwrap();
        assert_eq!(back, d);

        assert!(matches!(d.reverse_orientation(&[999]), Err(Error::UnknownComponent(999))));
    }

    #[test]
    fn torus_prime_signs() {
        for (k, n) in [(1, 1), (1, 3), (2, 1), (3, 1)] {
            let d = LinkDiagram::torus_prime(k, n).unwrap();
            assert_eq!((d.n_plus(), d.n_minus()), (2 * k * (k - 1) * n, 2 * k * k * n));
        }
    }

    #[test]
    fn negative_letters_have_negative_sign() {
        let d = BraidWord::parse("1 -2 -1 2", 3).unwrap().close();
        assert_eq!(d.signs(), vec![1, -1, -1, 1]);
    }

    #[test]
    fn resolve_hopf() {
        let d = BraidWord::torus(2, 2).unwrap().close();
        let d0 = d.resolve(0, Smoothing::Zero).unwrap();
        assert!(d0.validate());
        assert_eq!(d0.crossing_count(), 1);
        let d00 = d0.resolve(1, Smoothing::Zero).unwrap();
        assert_eq!(d00.crossing_count(), 0);
        assert_eq!(d00.component_count(), 2);

        let d1 = d.resolve(0, Smoothing::One).unwrap();
        assert!(d1.validate());
        assert_eq!(d1.crossing_count(), 1);
        assert_eq!(d1.component_count(), 1);

        assert!(matches!(d.resolve(7, Smoothing::One), Err(Error::UnknownCrossing(7))));
    }

    #[test]
    fn resolutions_stay_valid() {
        let d = BraidWord::torus(3, 4).unwrap().close();
        let mut cur = d.clone();
        for (k, id) in [1usize, 0, 5, 2].iter().enumerate() {
            let s = if k % 2 == 0 { Smoothing::One } else { Smoothing::Zero };
            cur = cur.resolve(*id, s).unwrap();
            assert!(cur.validate());
            assert_eq!(cur.crossing_count(), 7 - k);
        }
    }

    #[test]
    fn zero_resolution_of_positive_crossing_drops_the_letter() {
        let d = BraidWord::torus(3, 4).unwrap().close();
        let id = d.crossing_at(2, 1).unwrap();
        let d1 = d.resolve(id, Smoothing::Zero).unwrap();
        let mut w = BraidWord::torus(3, 4).unwrap().letters().to_vec();
        w.remove(id);
        let direct = BraidWord::new(3, w).unwrap().close();
        assert_eq!(d1.component_count(), direct.component_count());
        assert_eq!(d1.signs(), direct.signs());
    }
}

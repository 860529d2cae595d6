//! Khovanov's arc ring `H^k`: pairs of crossingless matchings with a {1, X} label on each
//! circle of the glued picture, multiplied by saddle cobordisms.
//!
//! Grading: a basis element sits in degree `k + Σ deg(label)` with `deg(1) = −1`,
//! `deg(X) = +1`, so the idempotents are in degree 0 and the top of the centre in `2k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::algebra::{FrobeniusSpec, IntegerKernel};
use crate::checks::CheckReport;
use crate::cube::Label;
use crate::diagram::{LinkDiagram, UnionFind};
use crate::homology::{invariant_homology, Ring};
use crate::torusform::{self, catalan};
use crate::{Error, Result};

/// Largest `k` the ring is built for.
pub const MAX_RING_K: usize = 5;
/// Largest `k` the centre is computed for.
pub const MAX_CENTER_K: usize = 4;

/// A non-crossing perfect matching of the points `0..2k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossinglessMatching {
    partner: Vec<usize>,
}

impl CrossinglessMatching {
    /// Parses a balanced-parenthesis string such as `"(())"`.
    pub fn from_parens(s: &str) -> Option<Self> {
        let mut stack = Vec::new();
        let mut partner = vec![usize::MAX; s.len()];
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '(' => stack.push(i),
                ')' => {
                    let j = stack.pop()?;
                    partner[i] = j;
                    partner[j] = i;
                }
                _ => return None,
            }
        }
        stack.is_empty().then_some(Self { partner })
    }

    pub fn to_parens(&self) -> String {
        self.partner.iter().enumerate().map(|(i, &j)| if i < j { '(' } else { ')' }).collect()
    }

    pub fn k(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    /// Arcs `(p, q)` with `p < q`, by left endpoint.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.partner.iter().enumerate().filter(|&(i, &j)| i < j).map(|(i, &j)| (i, j)).collect()
    }
}

impl fmt::Display for CrossinglessMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_parens())
    }
}

/// All matchings of `2k` points, in lexicographic order of their parenthesis strings.
pub fn enumerate_matchings(k: usize) -> Vec<CrossinglessMatching> {
    fn go(open: usize, close: usize, k: usize, cur: &mut String, out: &mut Vec<String>) {
        if cur.len() == 2 * k {
            out.push(cur.clone());
            return;
        }
        if open < k {
            cur.push('(');
            go(open + 1, close, k, cur, out);
            cur.pop();
        }
        if close < open {
            cur.push(')');
            go(open, close + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, k, &mut String::new(), &mut out);
    out.iter().map(|s| CrossinglessMatching::from_parens(s).expect("balanced")).collect()
}

/// Circles of the closed 1-manifold obtained by gluing `a` (above) to `b` (below).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedCircles {
    pub count: usize,
    /// Circle of each point, numbered by first appearance.
    pub membership: Vec<usize>,
}

pub fn glue_circles(a: &CrossinglessMatching, b: &CrossinglessMatching) -> Result<GluedCircles> {
    if a.k() != b.k() {
        return Err(Error::RankMismatch(a.k(), b.k()));
    }
    let n = a.partner.len();
    let mut uf = UnionFind::new(n);
    for p in 0..n {
        uf.union(p, a.partner[p]);
        uf.union(p, b.partner[p]);
    }
    let (count, membership) = number_components(&mut uf, n);
    Ok(GluedCircles { count, membership })
}

fn number_components(uf: &mut UnionFind, n: usize) -> (usize, Vec<usize>) {
    let mut id: HashMap<usize, usize> = HashMap::new();
    let membership: Vec<usize> = (0..n)
        .map(|p| {
            let r = uf.find(p);
            let next = id.len();
            *id.entry(r).or_insert(next)
        })
        .collect();
    (id.len(), membership)
}

/// `(top, bottom, X-mask)`: matchings by index into the ring's matching list, bit `c`
/// of the mask set when circle `c` of the glued picture carries X.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArcBasisElement {
    pub top: usize,
    pub bottom: usize,
    pub x_mask: u32,
}

/// Integer combination of basis elements, keyed by basis index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArcRingElement {
    pub terms: BTreeMap<usize, i64>,
}

impl ArcRingElement {
    pub fn basis(index: usize) -> Self {
        Self { terms: BTreeMap::from([(index, 1)]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &ArcRingElement, f: i64) {
        for (&b, &c) in &other.terms {
            add_coeff(&mut self.terms, b, c * f);
        }
    }
}

fn add_coeff(terms: &mut BTreeMap<usize, i64>, b: usize, c: i64) {
    if c == 0 {
        return;
    }
    let e = terms.entry(b).or_insert(0);
    *e += c;
    if *e == 0 {
        terms.remove(&b);
    }
}

/// Order in which the middle arcs are contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaddleOrder {
    LeftToRight,
    RightToLeft,
}

pub struct ArcRing {
    k: usize,
    matchings: Vec<CrossinglessMatching>,
    glued: Vec<Vec<GluedCircles>>,
    basis: Vec<ArcBasisElement>,
    index: HashMap<ArcBasisElement, usize>,
    spec: FrobeniusSpec,
}

impl ArcRing {
    pub fn new(k: usize) -> Result<Self> {
        if k > MAX_RING_K {
            return Err(Error::DimensionGuard { k, max: MAX_RING_K });
        }
        let matchings = enumerate_matchings(k);
        let glued: Vec<Vec<GluedCircles>> = matchings
            .iter()
            .map(|a| matchings.iter().map(|b| glue_circles(a, b)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let mut basis = Vec::new();
        for (top, row) in glued.iter().enumerate() {
            for (bottom, g) in row.iter().enumerate() {
                for x_mask in 0..1u32 << g.count {
                    basis.push(ArcBasisElement { top, bottom, x_mask });
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        Ok(Self { k, matchings, glued, basis, index, spec: FrobeniusSpec::khovanov() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matchings(&self) -> &[CrossinglessMatching] {
        &self.matchings
    }

    pub fn basis(&self) -> &[ArcBasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn circles(&self, top: usize, bottom: usize) -> &GluedCircles {
        &self.glued[top][bottom]
    }

    pub fn degree(&self, b: &ArcBasisElement) -> i64 {
        let c = self.glued[b.top][b.bottom].count as i64;
        self.k as i64 - c + 2 * b.x_mask.count_ones() as i64
    }

    pub fn index_of(&self, b: &ArcBasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// `Σ_a 1_a`, the all-1 labelling of every `(a, a)`.
    pub fn unit(&self) -> ArcRingElement {
        let mut u = ArcRingElement::default();
        for a in 0..self.matchings.len() {
            u.terms.insert(self.index[&ArcBasisElement { top: a, bottom: a, x_mask: 0 }], 1);
        }
        u
    }

    pub fn idempotent(&self, a: usize) -> usize {
        self.index[&ArcBasisElement { top: a, bottom: a, x_mask: 0 }]
    }

    pub fn multiply(&self, x: &ArcRingElement, y: &ArcRingElement) -> ArcRingElement {
        let mut out = ArcRingElement::default();
        for (&bx, &cx) in &x.terms {
            for (&by, &cy) in &y.terms {
                for (b, c) in self.multiply_basis(bx, by, SaddleOrder::LeftToRight) {
                    add_coeff(&mut out.terms, b, c * cx * cy);
                }
            }
        }
        out
    }

    /// Product of two basis elements by `k` saddles on the middle arcs.
    pub fn multiply_basis(&self, x: usize, y: usize, order: SaddleOrder) -> Vec<(usize, i64)> {
        let (ex, ey) = (self.basis[x], self.basis[y]);
        if ex.bottom != ey.top {
            return Vec::new();
        }
        let k2 = 2 * self.k;
        let a = &self.matchings[ex.top];
        let b = &self.matchings[ex.bottom];
        let c = &self.matchings[ey.bottom];

        // Points 0..2k are x's lower boundary, 2k..4k are y's upper boundary.
        let mut middle: Vec<(usize, usize)> = Vec::with_capacity(k2);
        let mut arcs = b.arcs();
        if order == SaddleOrder::RightToLeft {
            arcs.reverse();
        }
        for &(p, q) in &arcs {
            middle.push((p, q));
            middle.push((k2 + p, k2 + q));
        }
        let components = |middle: &[(usize, usize)]| {
            let mut uf = UnionFind::new(2 * k2);
            for p in 0..k2 {
                uf.union(p, a.partner[p]);
                uf.union(k2 + p, k2 + c.partner[p]);
            }
            for &(p, q) in middle {
                uf.union(p, q);
            }
            number_components(&mut uf, 2 * k2)
        };

        // Initial labels: x's circles then y's, renumbered by first appearance.
        let (n0, comp0) = components(&middle);
        let mut labels = vec![Label::One; n0];
        let gx = &self.glued[ex.top][ex.bottom];
        let gy = &self.glued[ey.top][ey.bottom];
        for p in 0..k2 {
            if ex.x_mask >> gx.membership[p] & 1 == 1 {
                labels[comp0[p]] = Label::X;
            }
            if ey.x_mask >> gy.membership[p] & 1 == 1 {
                labels[comp0[k2 + p]] = Label::X;
            }
        }
        let mut state: Vec<(Vec<Label>, i64)> = vec![(labels, 1)];
        let mut comp = comp0;

        for &(p, q) in &arcs {
            middle.retain(|&e| e != (p, q) && e != (k2 + p, k2 + q));
            middle.push((p, k2 + p));
            middle.push((q, k2 + q));
            let (n1, comp1) = components(&middle);
            let mut carry = vec![usize::MAX; comp.iter().max().map_or(0, |m| m + 1)];
            for pt in 0..2 * k2 {
                carry[comp[pt]] = comp1[pt];
            }
            let (c1, c2) = (comp[p], comp[k2 + p]);
            let mut next: Vec<(Vec<Label>, i64)> = Vec::new();
            for (lab, coef) in &state {
                let mut base = vec![Label::One; n1];
                for (old, &new) in carry.iter().enumerate() {
                    if old != c1 && old != c2 {
                        base[new] = lab[old];
                    }
                }
                if c1 != c2 {
                    for &(l, f) in self.spec.m(lab[c1], lab[c2]) {
                        let mut v = base.clone();
                        v[comp1[p]] = l;
                        next.push((v, coef * f));
                    }
                } else {
                    for &((l1, l2), f) in self.spec.delta(lab[c1]) {
                        let mut v = base.clone();
                        v[comp1[p]] = l1;
                        v[comp1[q]] = l2;
                        next.push((v, coef * f));
                    }
                }
            }
            state = next;
            comp = comp1;
        }

        let gz = &self.glued[ex.top][ey.bottom];
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for (lab, coef) in state {
            let mut mask = 0u32;
            for p in 0..k2 {
                if lab[comp[p]] == Label::X {
                    mask |= 1 << gz.membership[p];
                }
            }
            let idx = self.index[&ArcBasisElement { top: ex.top, bottom: ey.bottom, x_mask: mask }];
            add_coeff(&mut out, idx, coef);
        }
        out.into_iter().collect()
    }

    /// All products of composable basis pairs.
    pub fn structure_constants(&self) -> HashMap<(usize, usize), Vec<(usize, i64)>> {
        let mut out = HashMap::new();
        for x in 0..self.dim() {
            for y in 0..self.dim() {
                if self.basis[x].bottom == self.basis[y].top {
                    out.insert((x, y), self.multiply_basis(x, y, SaddleOrder::LeftToRight));
                }
            }
        }
        out
    }

    /// Checks associativity on every composable basis triple, the two-sided unit law,
    /// degree additivity and independence of the saddle order.
    pub fn check_axioms(&self) -> bool {
        let sc = self.structure_constants();
        let prod = |x: usize, y: usize| -> &[(usize, i64)] { sc.get(&(x, y)).map_or(&[], |v| v.as_slice()) };
        let unit = self.unit();
        for x in 0..self.dim() {
            let ex = ArcRingElement::basis(x);
            if self.multiply(&unit, &ex) != ex || self.multiply(&ex, &unit) != ex {
                return false;
            }
        }
        for (&(x, y), v) in &sc {
            let d = self.degree(&self.basis[x]) + self.degree(&self.basis[y]);
            if v.iter().any(|&(z, _)| self.degree(&self.basis[z]) != d) {
                return false;
            }
            if self.multiply_basis(x, y, SaddleOrder::RightToLeft) != *v {
                return false;
            }
        }
        for x in 0..self.dim() {
            for y in 0..self.dim() {
                let xy = prod(x, y);
                if xy.is_empty() && self.basis[x].bottom != self.basis[y].top {
                    continue;
                }
                for z in 0..self.dim() {
                    if self.basis[y].bottom != self.basis[z].top {
                        continue;
                    }
                    let mut left: BTreeMap<usize, i64> = BTreeMap::new();
                    for &(w, c) in xy {
                        for &(u, d) in prod(w, z) {
                            add_coeff(&mut left, u, c * d);
                        }
                    }
                    let mut right: BTreeMap<usize, i64> = BTreeMap::new();
                    for &(w, c) in prod(y, z) {
                        for &(u, d) in prod(x, w) {
                            add_coeff(&mut right, u, c * d);
                        }
                    }
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The centre of `H^k`: graded ranks and an integral basis of each graded piece.
#[derive(Clone, Debug, Serialize)]
pub struct Center {
    pub k: usize,
    pub ranks: BTreeMap<i64, usize>,
    /// Per degree, kernel vectors as `(basis index, coefficient)` lists.
    pub basis: BTreeMap<i64, Vec<Vec<(usize, String)>>>,
}

impl Center {
    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }
}

/// Solves `z·x = x·z` for every basis element `x`, one degree of `z` at a time.
///
/// Commutators with the idempotents go first: they confine `z` to the diagonal blocks
/// `(a, a)` early and keep the running kernel small for the remaining equations.
pub fn center(k: usize) -> Result<Center> {
    if k > MAX_CENTER_K {
        return Err(Error::DimensionGuard { k, max: MAX_CENTER_K });
    }
    let ring = ArcRing::new(k)?;
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, b) in ring.basis().iter().enumerate() {
        by_degree.entry(ring.degree(b)).or_default().push(i);
    }
    let idempotents: Vec<usize> = (0..ring.matchings().len()).map(|a| ring.idempotent(a)).collect();
    let others: Vec<usize> = (0..ring.dim()).filter(|x| !idempotents.contains(x)).collect();

    let mut ranks = BTreeMap::new();
    let mut basis = BTreeMap::new();
    for (&deg, cols) in &by_degree {
        let mut kernel = IntegerKernel::new(cols.len());
        for &x in idempotents.iter().chain(&others) {
            if kernel.is_trivial() {
                break;
            }
            // Column j of the commutator map z ↦ z·x − x·z, as (output basis, coeff).
            let mut rows: BTreeMap<usize, Vec<(u32, i64)>> = BTreeMap::new();
            for (j, &z) in cols.iter().enumerate() {
                let mut v: BTreeMap<usize, i64> = BTreeMap::new();
                for (u, c) in ring.multiply_basis(z, x, SaddleOrder::LeftToRight) {
                    add_coeff(&mut v, u, c);
                }
                for (u, c) in ring.multiply_basis(x, z, SaddleOrder::LeftToRight) {
                    add_coeff(&mut v, u, -c);
                }
                for (u, c) in v {
                    rows.entry(u).or_default().push((j as u32, c));
                }
            }
            for row in rows.values() {
                kernel.constrain(row);
            }
        }
        let vectors: Vec<Vec<(usize, String)>> = kernel
            .into_basis()
            .into_iter()
            .map(|v| v.iter().enumerate().filter(|(_, c)| c.sign() != num_bigint::Sign::NoSign).map(|(j, c)| (cols[j], c.to_string())).collect())
            .collect();
        if !vectors.is_empty() {
            ranks.insert(deg, vectors.len());
            basis.insert(deg, vectors);
        }
    }
    Ok(Center { k, ranks, basis })
}

/// Graded ranks of the centre of `H^k` at degree `2k − 2i` against `𝓗^{0,−2i}(T'(2k, 2kn))`,
/// both as computed and as predicted by the closed form.
pub fn compare_center_with_h0(k: usize, n: u32, reduce: bool) -> Result<CheckReport> {
    let c = center(k)?;
    let d = LinkDiagram::torus_prime(k, n as usize)?;
    let h = invariant_homology(&d, Ring::Z, reduce)?;
    let computed = h.ranks_at_degree(0);
    let predicted = torusform::corollary2_profile(k as u32, n);
    let mut r = CheckReport::new(format!("center H^{k} vs H^0(T'({},{}))", 2 * k, 2 * k * n as usize));
    for i in 0..=k as i64 {
        let z = c.ranks.get(&(2 * k as i64 - 2 * i)).copied().unwrap_or(0);
        let hq = computed.get(&(-2 * i)).copied().unwrap_or(0);
        let pq = predicted.get(&(-2 * i)).copied().unwrap_or(0) as usize;
        r.same(format!("degree {} vs q = {}", 2 * k as i64 - 2 * i, -2 * i), (z, z), (hq, pq));
    }
    let extra: Vec<i64> = computed.keys().copied().filter(|&q| q > 0 || q < -2 * k as i64 || q % 2 != 0).collect();
    r.same("H^0 outside the compared range", Vec::new(), extra);
    r.same("rank of H^(0,0)(T') is Catalan", catalan(k as u32) as usize, computed.get(&0).copied().unwrap_or(0));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torusform::{admissible_subsets, binom};

    #[test]
    fn matchings() {
        assert_eq!(enumerate_matchings(1).len(), 1);
        assert_eq!(enumerate_matchings(2).iter().map(|m| m.to_parens()).collect::<Vec<_>>(), vec!["(())", "()()"]);
        for k in 0..7 {
            assert_eq!(enumerate_matchings(k).len() as u128, catalan(k as u32));
        }
        assert!(CrossinglessMatching::from_parens("(()").is_none());
        assert!(CrossinglessMatching::from_parens(")(").is_none());
    }

    #[test]
    fn gluing() {
        let nested = CrossinglessMatching::from_parens("(())").unwrap();
        let flat = CrossinglessMatching::from_parens("()()").unwrap();
        assert_eq!(glue_circles(&nested, &nested).unwrap().count, 2);
        assert_eq!(glue_circles(&nested, &flat).unwrap().count, 1);
        for m in enumerate_matchings(4) {
            assert_eq!(glue_circles(&m, &m).unwrap().count, 4);
        }
        let one = CrossinglessMatching::from_parens("()").unwrap();
        assert!(matches!(glue_circles(&one, &flat), Err(Error::RankMismatch(1, 2))));
    }

    #[test]
    fn h1_is_dual_numbers() {
        let r = ArcRing::new(1).unwrap();
        assert_eq!(r.dim(), 2);
        let one = r.index_of(&ArcBasisElement { top: 0, bottom: 0, x_mask: 0 }).unwrap();
        let x = r.index_of(&ArcBasisElement { top: 0, bottom: 0, x_mask: 1 }).unwrap();
        assert_eq!(r.multiply_basis(one, one, SaddleOrder::LeftToRight), vec![(one, 1)]);
        assert_eq!(r.multiply_basis(one, x, SaddleOrder::LeftToRight), vec![(x, 1)]);
        assert_eq!(r.multiply_basis(x, x, SaddleOrder::LeftToRight), vec![]);
        assert_eq!(r.degree(&r.basis()[x]), 2);
    }

    #[test]
    fn idempotents_and_orthogonality() {
        let r = ArcRing::new(2).unwrap();
        for a in 0..2 {
            let e = r.idempotent(a);
            assert_eq!(r.multiply_basis(e, e, SaddleOrder::LeftToRight), vec![(e, 1)]);
        }
        let mixed = r.index_of(&ArcBasisElement { top: 0, bottom: 1, x_mask: 0 }).unwrap();
        assert!(r.multiply_basis(mixed, mixed, SaddleOrder::LeftToRight).is_empty());
    }

    #[test]
    fn ring_axioms() {
        for k in 0..=3 {
            assert!(ArcRing::new(k).unwrap().check_axioms(), "k = {k}");
        }
    }

    #[test]
    fn centers_small() {
        assert_eq!(center(1).unwrap().ranks, BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(center(2).unwrap().ranks, BTreeMap::from([(0, 1), (2, 3), (4, 2)]));
        let c3 = center(3).unwrap();
        assert_eq!(c3.ranks, BTreeMap::from([(0, 1), (2, 5), (4, 9), (6, 5)]));
        assert_eq!(c3.total(), 20);
        assert!(matches!(center(5), Err(Error::DimensionGuard { k: 5, max: 4 })));
    }

    #[test]
    fn center_matches_admissible_counts() {
        for k in 1..=3usize {
            let c = center(k).unwrap();
            let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
            for s in admissible_subsets(k) {
                *expected.entry(2 * s.elements.len() as i64).or_default() += 1;
            }
            assert_eq!(c.ranks, expected);
            assert_eq!(c.total() as u128, binom(2 * k as i64, k as i64));
        }
    }

    #[test]
    fn center_against_tprime() {
        for k in 1..=2 {
            let r = compare_center_with_h0(k, 1, false).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn center_k4() {
        let c = center(4).unwrap();
        assert_eq!(c.ranks, BTreeMap::from([(0, 1), (2, 7), (4, 20), (6, 28), (8, 14)]));
    }
}

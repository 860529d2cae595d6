//! Verification drivers: each computes something, compares it with a closed form or an
//! identity, and returns a report listing every comparison.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::archring;
use crate::diagram::{BraidWord, LinkDiagram, Smoothing};
use crate::homology::{self, cone_check, invariant_homology, poincare, BigradedAbelianGroup, LaurentPoly2, Ring};
use crate::torusform::{self, binom};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self { check: check.into(), items: Vec::new() }
    }

    pub fn same<T: PartialEq + fmt::Debug>(&mut self, what: impl Into<String>, expected: T, actual: T) {
        let ok = expected == actual;
        self.items.push(CheckItem { what: what.into(), expected: format!("{expected:?}"), actual: format!("{actual:?}"), ok });
    }

    pub fn holds(&mut self, what: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.items.push(CheckItem { what: what.into(), expected: "true".into(), actual: detail.into(), ok });
    }

    pub fn extend(&mut self, other: CheckReport) {
        for mut it in other.items {
            it.what = format!("{}: {}", other.check, it.what);
            self.items.push(it);
        }
    }

    pub fn passed(&self) -> bool {
        !self.items.is_empty() && self.items.iter().all(|i| i.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.ok)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.check, if self.passed() { "pass" } else { "FAIL" })?;
        for it in &self.items {
            if it.ok {
                writeln!(f, "  ok    {}: {}", it.what, it.actual)?;
            } else {
                writeln!(f, "  FAIL  {}: expected {}, got {}", it.what, it.expected, it.actual)?;
            }
        }
        Ok(())
    }
}

pub const CHECKS: [&str; 8] = ["theorem1", "theorem2", "theorem3", "center", "admissible", "cone", "lee", "fixtures"];

fn torus(p: usize, q: usize) -> Result<LinkDiagram> {
    Ok(BraidWord::torus(p, q)?.close())
}

/// Bidegrees of `h` outside the box `i ≤ i_max`, `j ≤ j_max`.
pub fn outside_cutoff(h: &BigradedAbelianGroup, i_max: i64, j_max: i64) -> Vec<(i64, i64)> {
    h.iter().map(|(k, _)| k).filter(|&(i, j)| i > i_max || j > j_max).collect()
}

/// Homology of `T(2k, 2kn)` vanishes past `(2k²n, 6k²n)`.
pub fn theorem1(k: u32, n: u32, reduce: bool) -> Result<CheckReport> {
    let h = invariant_homology(&torus(2 * k as usize, (2 * k * n) as usize)?, Ring::Z, reduce)?;
    Ok(theorem1_on(&h, k, n))
}

pub fn theorem1_on(h: &BigradedAbelianGroup, k: u32, n: u32) -> CheckReport {
    let (i_max, j_max) = torusform::theorem1_bounds(k, n);
    let mut r = CheckReport::new(format!("theorem1 T({},{})", 2 * k, 2 * k * n));
    r.same(format!("support with i > {i_max} or j > {j_max}"), Vec::new(), outside_cutoff(h, i_max, j_max));
    r.same("max homological degree", Some(i_max), h.iter().map(|((i, _), _)| i).max());
    r
}

/// Top group of `T(2k, 2kn)`: torsion-free with the binomial-difference ranks; the same
/// ranks in `𝓗^0(T')`; the `T'` shift on every bidegree; the thickness bound.
pub fn theorem2(k: u32, n: u32, reduce: bool) -> Result<CheckReport> {
    let h = invariant_homology(&torus(2 * k as usize, (2 * k * n) as usize)?, Ring::Z, reduce)?;
    let hp = invariant_homology(&LinkDiagram::torus_prime(k as usize, n as usize)?, Ring::Z, reduce)?;
    Ok(theorem2_on(&h, &hp, k, n))
}

pub fn theorem2_on(h: &BigradedAbelianGroup, h_prime: &BigradedAbelianGroup, k: u32, n: u32) -> CheckReport {
    let mut r = CheckReport::new(format!("theorem2 T({},{})", 2 * k, 2 * k * n));
    let (top, _) = torusform::theorem1_bounds(k, n);
    let ranks = |m: BTreeMap<i64, usize>| m.into_iter().map(|(q, c)| (q, c as u128)).collect::<torusform::RankProfile>();
    r.same(format!("ranks of H^{top}"), torusform::theorem2_profile(k, n), ranks(h.ranks_at_degree(top)));
    let torsion: Vec<(i64, i64)> = h.iter().filter(|((i, _), g)| *i == top && !g.is_free()).map(|(b, _)| b).collect();
    r.same(format!("torsion in H^{top}"), Vec::new(), torsion);
    let total: usize = h.ranks_at_degree(top).values().sum();
    r.same(format!("total rank of H^{top}"), binom(2 * k as i64, k as i64), total as u128);
    r.same("ranks of H^0(T')", torusform::corollary2_profile(k, n), ranks(h_prime.ranks_at_degree(0)));
    r.extend(tprime_shift_on(h, h_prime, k, n));
    let width = homology::delta_width(h).unwrap_or(0);
    let bound = (k * (k - 1) * n + 2) as i64;
    r.holds(format!("delta width >= {bound}"), width >= bound, format!("width {width}"));
    r
}

/// `𝓗^{i,j}(T') = 𝓗^{i+2k²n, j+6k²n}(T)` on every bidegree.
pub fn tprime_shift_on(h: &BigradedAbelianGroup, h_prime: &BigradedAbelianGroup, k: u32, n: u32) -> CheckReport {
    let (di, dj) = torusform::tprime_shift(k, n);
    let mut r = CheckReport::new(format!("T' shift ({di},{dj})"));
    let moved = h_prime.shift(di, dj);
    let mismatched: Vec<(i64, i64)> = moved
        .iter()
        .chain(h.iter())
        .map(|(b, _)| b)
        .filter(|&(i, j)| moved.get(i, j) != h.get(i, j))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    r.same("bidegrees that disagree", Vec::new(), mismatched);
    r.holds("support compared", !h.is_empty(), format!("{} bidegrees", h.iter().count()));
    r
}

/// Rational Poincaré polynomial of `T(3, q)` against the closed form, and (given the
/// previous one) against the induction step.
pub fn theorem3_on(q: i64, p: &LaurentPoly2, prev: Option<&LaurentPoly2>) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("theorem3 T(3,{q})"));
    let expected = torusform::theorem3_poincare(q)?;
    r.same("Poincare polynomial", expected.to_string(), p.to_string());
    if let Some(prev) = prev {
        let step = p - &prev.shift(0, 2);
        r.same("P_q - q^2 P_(q-1)", torusform::theorem3_step(q)?.to_string(), step.to_string());
    }
    Ok(r)
}

pub fn theorem3(q: i64, reduce: bool) -> Result<CheckReport> {
    if q < 1 {
        return Err(Error::TorusRange(format!("T(3, {q}) needs q >= 1")));
    }
    let p = |q: i64| -> Result<LaurentPoly2> { Ok(poincare(&invariant_homology(&torus(3, q as usize)?, Ring::Q, reduce)?)) };
    let cur = p(q)?;
    let prev = if q >= 2 { Some(p(q - 1)?) } else { None };
    theorem3_on(q, &cur, prev.as_ref())
}

/// Centre of `H^k` against the binomial differences and the admissible-subset counts;
/// for small `k` also against `𝓗^0(T'(2k, 2kn))`.
pub fn center(k: usize, n: u32, reduce: bool) -> Result<CheckReport> {
    let c = archring::center(k)?;
    let mut r = CheckReport::new(format!("center H^{k}"));
    let formula: BTreeMap<i64, usize> = (0..=k as i64)
        .map(|i| (2 * i, (binom(2 * k as i64, i) - binom(2 * k as i64, i - 1)) as usize))
        .filter(|&(_, c)| c > 0)
        .collect();
    r.same("graded ranks", formula, c.ranks.clone());
    let mut admissible: BTreeMap<i64, usize> = BTreeMap::new();
    for s in torusform::admissible_subsets(k) {
        *admissible.entry(2 * s.elements.len() as i64).or_default() += 1;
    }
    r.same("admissible subsets by degree", admissible, c.ranks.clone());
    r.same("total rank", binom(2 * k as i64, k as i64), c.total() as u128);
    if k <= 2 && k >= 1 {
        r.extend(archring::compare_center_with_h0(k, n, reduce)?);
    }
    Ok(r)
}

/// Exhaustive admissible-subset counts and the reflection bijection for one `k`.
pub fn admissible(k: usize) -> Result<CheckReport> {
    if k > 12 {
        return Err(Error::DimensionGuard { k, max: 12 });
    }
    let mut r = CheckReport::new(format!("admissible k={k}"));
    let formula: Vec<u128> = (0..=k as i64).map(|i| binom(2 * k as i64, i) - binom(2 * k as i64, i - 1)).collect();
    r.same("counts by size (exhaustive)", formula.clone(), torusform::admissible_counts_brute(k));
    let dfs = torusform::admissible_subsets(k);
    let mut by_size = vec![0u128; k + 1];
    for s in &dfs {
        by_size[s.elements.len()] += 1;
    }
    r.same("counts by size (enumeration)", formula, by_size);
    r.holds("sequences of admissible subsets stay >= 0", dfs.iter().all(|s| torusform::subset_to_sequence(&s.elements, k).lowest() >= 0), format!("{} subsets", dfs.len()));
    for (i, c) in torusform::reflection_counts(k).into_iter().enumerate() {
        let want = binom(2 * k as i64, i as i64 - 1) as usize;
        r.same(format!("reflection onto paths -2 -> {}", c.target), (want, want, want, true), (c.dipping, c.image, c.from_minus_two, c.round_trip));
    }
    Ok(r)
}

/// The exact-triangle checks at every crossing of `d`.
pub fn cone(d: &LinkDiagram, reduce: bool) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("cone {}", d.canonical()));
    for c in d.crossings() {
        let rep = cone_check(d, c.id, reduce)?;
        r.holds(format!("crossing {} euler", c.id), rep.euler_ok, "chi(D) = chi(D0) - q chi(D1)");
        r.same(format!("crossing {} rank bound violations", c.id), Vec::new(), rep.violations);
    }
    Ok(r)
}

/// The tower `D⁰ = T(2k, 2kn)`, `D^l` = 0-resolution of `D^{l−1}` at `(2k − l, 1)`, with the
/// triangle checked at each resolved crossing.
pub fn tower(k: usize, n: usize, reduce: bool) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("tower T({},{})", 2 * k, 2 * k * n));
    let mut d = torus(2 * k, 2 * k * n)?;
    for l in 1..2 * k {
        let id = d.crossing_at(2 * k - l, 1).ok_or(Error::UnknownCrossing(usize::MAX))?;
        let rep = cone_check(&d, id, reduce)?;
        r.holds(format!("D^{} at ({},1) euler", l - 1, 2 * k - l), rep.euler_ok, "chi(D) = chi(D0) - q chi(D1)");
        r.same(format!("D^{} at ({},1) rank bound violations", l - 1, 2 * k - l), Vec::new(), rep.violations);
        d = d.resolve(id, Smoothing::Zero)?;
    }
    Ok(r)
}

/// Total Lee rank `2^{#components}`; for `T(2k, 2kn)` also `binom(2k, k)` in degree `2k²n`.
pub fn lee(d: &LinkDiagram, reduce: bool, top: Option<(i64, usize)>) -> Result<CheckReport> {
    let ranks = homology::lee_degree_ranks(d, reduce)?;
    let mut r = CheckReport::new(format!("lee {}", d.canonical()));
    r.same("total rank", 1usize << d.component_count(), ranks.values().sum());
    if let Some((deg, rank)) = top {
        r.same(format!("rank in degree {deg}"), rank, ranks.get(&deg).copied().unwrap_or(0));
    }
    Ok(r)
}

pub fn lee_torus(p: usize, q: usize, reduce: bool) -> Result<CheckReport> {
    let top = (p % 2 == 0 && p > 0 && q % p == 0 && q > 0).then(|| {
        let (k, n) = ((p / 2) as u32, (q / p) as u32);
        (torusform::theorem1_bounds(k, n).0, binom(2 * k as i64, k as i64) as usize)
    });
    lee(&torus(p, q)?, reduce, top)
}

/// One of the resolved diagrams of `D_{3,m}` with its expected `(n₊, n₋)` and isotopy type.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub diagram: LinkDiagram,
    pub n_plus: usize,
    pub n_minus: usize,
    pub unknots: usize,
}

/// `E¹_{3,m}` is the 1-resolution of `D_{3,m}` at `(2,1)`; `E²_{3,m}` the 1-resolution at
/// `(1,1)` of the 0-resolution at `(2,1)`. Listed for `m = 3n+3, 3n+2, 3n+1`.
pub fn fixtures_for(n: usize) -> Result<Vec<Fixture>> {
    let n_ = n;
    let table = [
        (3 * n_ + 3, (2 * n_ + 2, 4 * n_ + 3, 2), (2 * n_ + 1, 4 * n_ + 3, 1)),
        (3 * n_ + 2, (2 * n_ + 1, 4 * n_ + 2, 1), (2 * n_ + 1, 4 * n_ + 1, 1)),
        (3 * n_ + 1, (2 * n_ + 1, 4 * n_, 1), (2 * n_, 4 * n_, 2)),
    ];
    let mut out = Vec::new();
    for (m, e1, e2) in table {
        let d = torus(3, m)?;
        let c2 = d.crossing_at(2, 1).ok_or(Error::UnknownCrossing(usize::MAX))?;
        let d1 = d.resolve(c2, Smoothing::Zero)?;
        let c1 = d1.crossing_at(1, 1).ok_or(Error::UnknownCrossing(usize::MAX))?;
        out.push(Fixture { name: format!("E1_(3,{m})"), diagram: d.resolve(c2, Smoothing::One)?, n_plus: e1.0, n_minus: e1.1, unknots: e1.2 });
        out.push(Fixture { name: format!("E2_(3,{m})"), diagram: d1.resolve(c1, Smoothing::One)?, n_plus: e2.0, n_minus: e2.1, unknots: e2.2 });
    }
    Ok(out)
}

/// Invariant homology of the `c`-component unlink.
pub fn unlink_homology(c: usize) -> BigradedAbelianGroup {
    let circle = LaurentPoly2::from_terms([(0, 1, 1), (0, -1, 1)]);
    let p = (0..c).fold(LaurentPoly2::one(), |acc, _| &acc * &circle);
    let mut h = BigradedAbelianGroup::new(Ring::Z);
    for t in p.terms() {
        h.insert(t.t, t.q, crate::algebra::AbelianGroupIso::free(t.c as usize));
    }
    h
}

/// Each fixture admits an orientation with the stated crossing counts, and under it
/// the diagram's homology is that of the stated unlink.
pub fn fixtures(family: usize, n: usize, reduce: bool) -> Result<CheckReport> {
    if family != 3 {
        return Err(Error::TorusRange(format!("fixtures exist for the (3, q) family only, got {family}")));
    }
    let mut r = CheckReport::new(format!("fixtures n={n}"));
    for f in fixtures_for(n)? {
        let d = &f.diagram;
        r.same(format!("{} components", f.name), f.unknots, d.component_count());
        let comps = d.components().to_vec();
        let oriented = (0u32..1 << comps.len())
            .map(|bits| {
                let rev: Vec<usize> = comps.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &c)| c).collect();
                d.reverse_orientation(&rev)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|o| (o.n_plus(), o.n_minus()) == (f.n_plus, f.n_minus));
        r.holds(
            format!("{} orientation with (n+, n-) = ({}, {})", f.name, f.n_plus, f.n_minus),
            oriented.is_some(),
            format!("{} crossings", d.crossing_count()),
        );
        if let Some(o) = oriented {
            let h = invariant_homology(&o, Ring::Z, reduce)?;
            r.same(format!("{} homology", f.name), unlink_homology(f.unknots).to_string(), h.to_string());
        }
    }
    Ok(r)
}

/// Truncated `P₂` against `T(2, 2n)` moved to `T'` gradings, on `t ≥ −2(n−1)`.
pub fn stable_p2_on(h: &BigradedAbelianGroup, n: u32) -> CheckReport {
    let (di, dj) = torusform::tprime_shift(1, n);
    let lo = -2 * (n as i64 - 1);
    let computed = poincare(&h.shift(-di, -dj)).filter(|t, _| t >= lo);
    let series = torusform::stable_p2(n.saturating_sub(2)).filter(|t, _| t >= lo);
    let mut r = CheckReport::new(format!("P2 vs T'(2,{})", 2 * n));
    r.same(format!("terms with t >= {lo}"), series.to_string(), computed.to_string());
    r
}

/// Truncated `P₃` against `T(3, 3n)` moved to `T'` gradings, on `t ≥ −4(n−1)`.
pub fn stable_p3_on(h: &BigradedAbelianGroup, n: u32) -> CheckReport {
    let (di, dj) = torusform::tprime3_shift(n);
    let lo = -4 * (n as i64 - 1);
    let computed = poincare(&h.shift(-di, -dj)).filter(|t, _| t >= lo);
    let series = torusform::stable_p3(n.saturating_sub(2)).filter(|t, _| t >= lo);
    let mut r = CheckReport::new(format!("P3 vs T'(3,{})", 3 * n));
    r.same(
        "constant part",
        LaurentPoly2::from_terms([(0, 1, 2), (0, -1, 3), (0, -3, 1)]).to_string(),
        torusform::stable_p3(0).filter(|t, _| t == 0).to_string(),
    );
    r.same(format!("terms with t >= {lo}"), series.to_string(), computed.to_string());
    r
}

/// Dispatch by check name, as used by the command line.
pub struct Params {
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub p: Option<usize>,
    pub q: Option<i64>,
    pub family: Option<usize>,
    pub diagram: Option<LinkDiagram>,
    pub reduce: bool,
}

pub fn run(name: &str, p: &Params) -> Result<CheckReport> {
    let k = p.k.unwrap_or(1);
    let n = p.n.unwrap_or(1);
    match name {
        "theorem1" => theorem1(k, n, p.reduce),
        "theorem2" => theorem2(k, n, p.reduce),
        "theorem3" => theorem3(p.q.unwrap_or(4), p.reduce),
        "center" => center(k as usize, n, p.reduce),
        "admissible" => admissible(k as usize),
        "cone" => match &p.diagram {
            Some(d) => cone(d, p.reduce),
            None => tower(k as usize, n as usize, p.reduce),
        },
        "lee" => match &p.diagram {
            Some(d) => lee(d, p.reduce, None),
            None => lee_torus(p.p.unwrap_or(2 * k as usize), p.q.map_or((2 * k * n) as usize, |q| q as usize), p.reduce),
        },
        "fixtures" => fixtures(p.family.unwrap_or(3), n as usize, p.reduce),
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_drivers_pass() {
        assert!(theorem1(1, 1, false).unwrap().passed());
        assert!(theorem2(1, 2, false).unwrap().passed());
        assert!(theorem3(4, false).unwrap().passed());
        assert!(admissible(3).unwrap().passed());
        assert!(lee_torus(2, 4, false).unwrap().passed());
        assert!(tower(1, 2, false).unwrap().passed());
    }

    #[test]
    fn failures_are_reported() {
        let h = invariant_homology(&torus(2, 2).unwrap(), Ring::Z, false).unwrap();
        let r = theorem1_on(&h, 1, 2);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_string().contains("FAIL"));
        let r = theorem3_on(3, &LaurentPoly2::one(), None).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn unknown_check() {
        let p = Params { k: None, n: None, p: None, q: None, family: None, diagram: None, reduce: false };
        assert!(matches!(run("nope", &p), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn fixture_shapes() {
        let f = fixtures_for(1).unwrap();
        assert_eq!(f.len(), 6);
        for x in &f {
            assert_eq!(x.n_plus + x.n_minus, x.diagram.crossing_count(), "{}", x.name);
        }
    }
}

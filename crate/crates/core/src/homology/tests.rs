use super::*;
use crate::diagram::BraidWord;

fn torus(p: usize, q: usize) -> LinkDiagram {
    BraidWord::torus(p, q).unwrap().close()
}

fn braid(w: &str, s: usize) -> LinkDiagram {
    BraidWord::parse(w, s).unwrap().close()
}

/// Unnormalized bracket by resolving crossings one at a time:
/// `⟨D⟩ = ⟨D₀⟩ − q⟨D₁⟩`, a crossingless diagram with c circles giving `(q + q⁻¹)^c`.
fn skein_bracket(d: &LinkDiagram) -> LaurentPoly2 {
    match d.crossings().first() {
        None => {
            let circle = LaurentPoly2::from_terms([(0, 1, 1), (0, -1, 1)]);
            (0..d.component_count()).fold(LaurentPoly2::one(), |acc, _| &acc * &circle)
        }
        Some(c) => {
            let id = c.id;
            let d0 = skein_bracket(&d.resolve(id, Smoothing::Zero).unwrap());
            let d1 = skein_bracket(&d.resolve(id, Smoothing::One).unwrap());
            &d0 - &d1.shift(0, 1)
        }
    }
}

#[test]
fn unknot_and_kink() {
    let expect = |h: &BigradedAbelianGroup| {
        assert_eq!(h.iter().count(), 2);
        assert_eq!(h.get(0, 1), AbelianGroupIso::free(1));
        assert_eq!(h.get(0, -1), AbelianGroupIso::free(1));
    };
    expect(&invariant_homology(&LinkDiagram::unknot(), Ring::Z, false).unwrap());
    expect(&invariant_homology(&braid("1", 2), Ring::Z, false).unwrap());
    expect(&invariant_homology(&braid("-1", 2), Ring::Z, false).unwrap());
    expect(&invariant_homology(&braid("1 -2", 3), Ring::Z, true).unwrap());
}

#[test]
fn hopf_link() {
    let h = invariant_homology(&torus(2, 2), Ring::Z, false).unwrap();
    let support: Vec<(i64, i64)> = h.iter().map(|(k, _)| k).collect();
    assert_eq!(support, vec![(0, 0), (0, 2), (2, 4), (2, 6)]);
    assert!(h.is_torsion_free());
    assert_eq!(h.total_rank(), 4);
}

#[test]
fn trefoil_has_two_torsion() {
    let h = invariant_homology(&torus(2, 3), Ring::Z, false).unwrap();
    assert_eq!(h.get(3, 7), AbelianGroupIso { free: 0, torsion: vec![2] });
    assert_eq!(poincare(&h), LaurentPoly2::from_terms([(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]));
}

#[test]
fn complex_sizes() {
    let c = build_complex(&LinkDiagram::unknot(), &FrobeniusSpec::khovanov()).unwrap();
    assert_eq!(c.total_rank(), 2);
    let c = build_complex(&torus(2, 2), &FrobeniusSpec::khovanov()).unwrap();
    assert_eq!(c.total_rank(), 12);
    let c = build_complex(&torus(3, 4), &FrobeniusSpec::khovanov()).unwrap();
    assert_eq!(c.total_rank(), 1602);
}

#[test]
fn euler_characteristic_matches_skein() {
    for d in [torus(2, 2), torus(2, 3), torus(3, 3), torus(3, 4), braid("1 -2 1 -2", 3), braid("1 1 -2 3 -2", 4)] {
        let c = build_complex(&d, &FrobeniusSpec::khovanov()).unwrap();
        let h = diagram_homology(&d, Ring::Q, false).unwrap();
        let bracket = skein_bracket(&d);
        assert_eq!(c.euler(), bracket, "{}", d.canonical());
        assert_eq!(h.euler(), bracket, "{}", d.canonical());
    }
}

#[test]
fn t34_jones_closed_form() {
    // V(T(3,4)) = t³ + t⁵ − t⁸, and the normalized bracket is (q + q⁻¹)·V(q²).
    let d = torus(3, 4);
    let h = invariant_homology(&d, Ring::Q, false).unwrap();
    let v = LaurentPoly2::from_terms([(0, 6, 1), (0, 10, 1), (0, 16, -1)]);
    let circle = LaurentPoly2::from_terms([(0, 1, 1), (0, -1, 1)]);
    assert_eq!(h.euler(), &circle * &v);
}

#[test]
fn materialized_and_streamed_agree() {
    for d in [torus(2, 3), torus(3, 3), braid("1 -2 1 -2", 3)] {
        let c = build_complex(&d, &FrobeniusSpec::khovanov()).unwrap();
        assert_eq!(homology(&c, Ring::Z).unwrap(), diagram_homology(&d, Ring::Z, false).unwrap());
    }
}

#[test]
fn reduction_preserves_homology() {
    for d in [torus(2, 4), torus(3, 4), torus(3, 5), braid("1 -2 1 -2 3 -2", 4), braid("-1 -1 -1 2 -1 2", 3)] {
        for ring in [Ring::Z, Ring::Q] {
            assert_eq!(diagram_homology(&d, ring, false).unwrap(), diagram_homology(&d, ring, true).unwrap());
        }
        assert_eq!(lee_diagram_ranks(&d, false).unwrap(), lee_diagram_ranks(&d, true).unwrap());
    }
}

#[test]
fn lee_entries_shift_q_by_zero_or_four() {
    let c = build_complex(&torus(3, 3), &FrobeniusSpec::lee()).unwrap();
    let mut saw_four = false;
    for b in &c.blocks {
        for (i, d) in b.differentials.iter().enumerate().take(c.crossings) {
            for (r, col, _) in d.entries() {
                let dj = b.generators[i + 1][r].bigrading().j - b.generators[i][col].bigrading().j;
                assert!(dj == 0 || dj == 4, "entry changes q by {dj}");
                saw_four |= dj == 4;
            }
        }
    }
    assert!(saw_four);
}

#[test]
fn lee_total_rank_is_two_to_components() {
    for (d, comps) in [(LinkDiagram::unknot(), 1), (torus(2, 2), 2), (torus(3, 3), 3), (torus(2, 3), 1), (braid("1 -2 1 -2", 3), 1)] {
        let ranks = lee_degree_ranks(&d, false).unwrap();
        assert_eq!(ranks.values().sum::<usize>(), 1 << comps);
    }
    let hopf = lee_degree_ranks(&torus(2, 2), false).unwrap();
    assert_eq!(hopf.get(&2), Some(&2));
}

#[test]
fn shift_round_trip() {
    let h = diagram_homology(&torus(3, 3), Ring::Z, false).unwrap();
    let s = shift_to_invariant(&h, 4, 2);
    assert_eq!(s.shift(2, 0), h);
    assert_eq!(shift_to_invariant(&h, 0, 0), h);
}

#[test]
fn delta_widths() {
    let u = invariant_homology(&LinkDiagram::unknot(), Ring::Z, false).unwrap();
    assert_eq!(delta_width(&u).unwrap(), 2);
    let hopf = invariant_homology(&torus(2, 2), Ring::Z, false).unwrap();
    assert_eq!(delta_width(&hopf).unwrap(), 2);
    assert!(matches!(delta_width(&BigradedAbelianGroup::new(Ring::Z)), Err(Error::EmptyHomology)));
}

#[test]
fn cone_checks_on_small_links() {
    for d in [torus(2, 2), torus(2, 4), torus(3, 3)] {
        for c in d.crossings() {
            assert!(cone_check(&d, c.id, false).unwrap().passed());
        }
    }
    assert!(cone_check(&braid("1", 2), 0, false).unwrap().passed());
}

#[test]
fn json_is_stable() {
    let h = invariant_homology(&torus(2, 3), Ring::Z, false).unwrap();
    let s = h.to_json_string();
    assert!(s.starts_with(r#"{"ring":"Z","groups":[{"i":0,"j":1,"free":1,"torsion":[]}"#));
    assert_eq!(BigradedAbelianGroup::from_json_str(&s).unwrap(), h);
}

#[test]
fn raw_cap_suggests_reduction() {
    let err = diagram_homology(&torus(3, 9), Ring::Q, false).unwrap_err();
    assert!(err.to_string().contains("--reduce"));
}
